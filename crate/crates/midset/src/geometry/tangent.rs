//! Exterior common tangents of disjoint convex hulls, and separation angles
//! seen from an external point.
//!
//! Both computations enumerate candidate lines through hull vertices and keep
//! the ones with every vertex on one closed side. That brute-force approach
//! is robust for degenerate hulls (single dots, flat segments) where rotating
//! sweeps need special cases, and hull sizes here are tiny.

use crate::config::GeomConfig;
use crate::error::{Error, Result};
use crate::geometry::hull::ConvexPolygon;
use crate::geometry::point::{Point2, Vec2};

/// An oriented line supporting one or both hulls.
///
/// Orientation convention: both supported sets lie on the right of
/// `direction`, so `inward_normal` (pointing at the sets) is `direction`
/// rotated -90 degrees. Of the two tangency contacts, `right_extreme`
/// belongs to the hull met first when walking along `direction` and is its
/// contact furthest along the walk; `left_extreme` belongs to the second
/// hull and is its contact nearest the first. The two extremes face each
/// other across the gap between the hulls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportLine {
    pub anchor: Point2,
    pub direction: Vec2,
    pub inward_normal: Vec2,
    pub right_extreme: Point2,
    pub left_extreme: Point2,
}

impl SupportLine {
    /// Midpoint of the facing tangency pair; asymptotic rays start here.
    #[inline]
    pub fn tangency_midpoint(&self) -> Point2 {
        self.right_extreme.lerp(self.left_extreme, 0.5)
    }
}

/// The two exterior common tangents of disjoint convex hulls.
///
/// Fails with `HullsIntersect` when the hulls overlap or touch. For two
/// collinear degenerate hulls (for example two dots) both tangents are the
/// same line, reported twice with opposite orientations. Results are sorted
/// by direction angle.
pub fn exterior_common_tangents(
    ha: &ConvexPolygon,
    hb: &ConvexPolygon,
    cfg: &GeomConfig,
) -> Result<(SupportLine, SupportLine)> {
    if ha.distance_to_polygon(hb) <= 0.0 {
        return Err(Error::HullsIntersect);
    }
    let span = ha.coord_span().max(hb.coord_span());
    let tol = cfg.side_tol_for(span);

    // Candidate = oriented line through one vertex of each hull with every
    // vertex of both hulls on the right closed side.
    let mut candidates: Vec<(Vec2, Point2)> = Vec::new();
    for &a in &ha.vertices {
        for &b in &hb.vertices {
            let u = (b - a).unit();
            let mut smin = f64::INFINITY;
            let mut smax = f64::NEG_INFINITY;
            for v in ha.vertices.iter().chain(hb.vertices.iter()) {
                let s = u.cross(*v - a);
                smin = smin.min(s);
                smax = smax.max(s);
            }
            if smax <= tol {
                push_unique(&mut candidates, (u, a), tol);
            }
            if smin >= -tol {
                push_unique(&mut candidates, (-u, a), tol);
            }
        }
    }
    if candidates.len() != 2 {
        return Err(Error::Domain(format!(
            "expected 2 exterior tangents, found {}",
            candidates.len()
        )));
    }
    let mut lines: Vec<SupportLine> = candidates
        .into_iter()
        .map(|(dir, anchor)| orient_support_line(dir, anchor, ha, hb, tol))
        .collect();
    lines.sort_by(|l, r| l.direction.angle().partial_cmp(&r.direction.angle()).unwrap());
    Ok((lines[0], lines[1]))
}

fn push_unique(candidates: &mut Vec<(Vec2, Point2)>, cand: (Vec2, Point2), tol: f64) {
    let (dir, a) = cand;
    for (d0, a0) in candidates.iter() {
        if d0.dot(dir) > 1.0 - 1e-9 && d0.cross(a - *a0).abs() <= tol {
            return;
        }
    }
    candidates.push(cand);
}

fn orient_support_line(
    dir: Vec2,
    anchor: Point2,
    ha: &ConvexPolygon,
    hb: &ConvexPolygon,
    tol: f64,
) -> SupportLine {
    let contacts = |h: &ConvexPolygon| -> Vec<(f64, Point2)> {
        h.vertices
            .iter()
            .filter(|v| dir.cross(**v - anchor).abs() <= tol)
            .map(|v| (dir.dot(*v - anchor), *v))
            .collect()
    };
    let ca = contacts(ha);
    let cb = contacts(hb);
    debug_assert!(!ca.is_empty() && !cb.is_empty());
    let max_of = |c: &[(f64, Point2)]| c.iter().cloned().fold((f64::NEG_INFINITY, ca[0].1), |m, x| if x.0 > m.0 { x } else { m });
    let min_of = |c: &[(f64, Point2)]| c.iter().cloned().fold((f64::INFINITY, ca[0].1), |m, x| if x.0 < m.0 { x } else { m });

    // The hulls are disjoint, so their contact intervals on the line are
    // disjoint and ordered; the facing pair is (first hull's furthest
    // contact, second hull's nearest contact).
    let (right_extreme, left_extreme) = if max_of(&ca).0 <= min_of(&cb).0 {
        (max_of(&ca).1, min_of(&cb).1)
    } else {
        (max_of(&cb).1, min_of(&ca).1)
    };
    SupportLine {
        anchor: right_extreme,
        direction: dir,
        inward_normal: dir.perp_cw(),
        right_extreme,
        left_extreme,
    }
}

/// The angle under which `x` sees hull `ha` separated from hull `hb`.
///
/// A candidate for the first line is any line through `x` and a vertex of
/// `ha` with all of `ha` on one closed side and all of `hb` on the other;
/// symmetrically for the second. The returned angle is measured between the
/// rays from `x` toward the two contact vertices, maximized over valid
/// pairs: a larger angle gives a smaller (sharper) shadowing radius and the
/// widest proven-validity regime for it.
///
/// Errors: `InsideHull` if `x` is not strictly outside both hulls,
/// `NoSeparation` if no valid pair of lines exists.
pub fn separation_angle(
    x: Point2,
    ha: &ConvexPolygon,
    hb: &ConvexPolygon,
    cfg: &GeomConfig,
) -> Result<f64> {
    let span = ha.coord_span().max(hb.coord_span()).max(x.norm());
    let tol = cfg.side_tol_for(span);
    if ha.contains(x, tol) || hb.contains(x, tol) {
        return Err(Error::InsideHull(x));
    }
    let rays_a = separating_rays(x, ha, hb, tol);
    let rays_b = separating_rays(x, hb, ha, tol);
    if rays_a.is_empty() || rays_b.is_empty() {
        return Err(Error::NoSeparation(x));
    }
    let mut best = f64::NEG_INFINITY;
    for ua in &rays_a {
        for ub in &rays_b {
            let ang = ua.dot(*ub).clamp(-1.0, 1.0).acos();
            best = best.max(ang);
        }
    }
    Ok(best)
}

/// Unit rays from `x` toward vertices of `near` whose through-line keeps
/// `near` on one closed side and `far` on the other.
fn separating_rays(x: Point2, near: &ConvexPolygon, far: &ConvexPolygon, tol: f64) -> Vec<Vec2> {
    let mut rays = Vec::new();
    for &a in &near.vertices {
        let u = (a - x).unit();
        let (mut near_min, mut near_max) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in &near.vertices {
            let s = u.cross(*v - x);
            near_min = near_min.min(s);
            near_max = near_max.max(s);
        }
        let (mut far_min, mut far_max) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in &far.vertices {
            let s = u.cross(*v - x);
            far_min = far_min.min(s);
            far_max = far_max.max(s);
        }
        if (near_min >= -tol && far_max <= tol) || (near_max <= tol && far_min >= -tol) {
            rays.push(u);
        }
    }
    rays
}
