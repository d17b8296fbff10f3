//! Shadowing bounds: turning quasi-equidistant observations into certified
//! existence radii for true midset points, plus the certified raster renderer
//! built on them.
//!
//! The certificate for a query point `x` is the quadruple
//! `(eps, d, alpha, radius)` where `eps = |gap(x)|`, `d` is the distance to
//! the nearer focal set, `alpha` the separation angle under which `x` sees the
//! two sets, and
//!
//! ```text
//! radius = (eps / 2) * (eps + 2 d) / (eps + d - d cos(alpha))
//! ```
//!
//! The radius bounds the distance to a true midset point throughout the
//! construction's proven regime `radius * cos(alpha) <= d` — automatic for
//! `alpha >= pi/2`. Past that regime (wide gaps seen under narrow angles)
//! the corner estimate behind the formula can understate the distance when
//! the nearer focal set extends beyond its tangency contact, so raster hit
//! certificates re-check the regime before claiming a midset point. Hulls
//! are circumscribed polygons, which can only shrink the reported angle; the
//! radius grows as the angle shrinks, so polygonization keeps the
//! certificate conservative.

use crate::error::{Error, Result};
use crate::geometry::{hull_of_focal, separation_angle, ConvexPolygon, Point2};
use crate::parallel::parallel_map;
use crate::scene::Scene;

/// A shadowing certificate at one query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertBound {
    /// `|dist(x, A) - dist(x, B)|` at the query point.
    pub eps: f64,
    /// `min(dist(x, A), dist(x, B))`.
    pub d: f64,
    /// Separation angle in `(0, pi]`.
    pub alpha: f64,
    /// Distance within which a true midset point is guaranteed when
    /// `radius * cos(alpha) <= d` (always the case for `alpha >= pi/2`);
    /// outside that regime the formula can undershoot for focal sets that
    /// extend far past their tangency contacts. Always `>= eps / 2`, with
    /// equality exactly at `alpha = pi`.
    pub radius: f64,
}

/// The shadowing radius formula. Errors for `eps < 0`, `d <= 0`, or
/// `alpha` outside `(0, pi]`.
pub fn shadowing_radius(eps: f64, d: f64, alpha: f64) -> Result<f64> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::Domain(format!("eps must be >= 0, got {eps}")));
    }
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::Domain(format!("d must be > 0, got {d}")));
    }
    if !(alpha.is_finite() && alpha > 0.0 && alpha <= std::f64::consts::PI) {
        return Err(Error::Domain(format!(
            "alpha must lie in (0, pi], got {alpha}"
        )));
    }
    // alpha > 0 keeps the denominator strictly positive even at eps = 0.
    Ok((eps / 2.0) * ((eps + 2.0 * d) / (eps + d * (1.0 - alpha.cos()))))
}

/// Certify `x` against a scene, reusing precomputed hulls.
///
/// Hypothesis failures ([`Error::InsideHull`], [`Error::NoSeparation`]) are
/// ordinary outcomes: the theorem does not apply at `x`, nothing more.
pub fn certify_point_with_hulls(
    x: Point2,
    scene: &Scene,
    hull_a: &ConvexPolygon,
    hull_b: &ConvexPolygon,
) -> Result<CertBound> {
    let alpha = separation_angle(x, hull_a, hull_b, &scene.geom)?;
    let da = scene.a.distance(x);
    let db = scene.b.distance(x);
    let eps = (da - db).abs();
    let d = da.min(db);
    let radius = shadowing_radius(eps, d, alpha)?;
    Ok(CertBound {
        eps,
        d,
        alpha,
        radius,
    })
}

/// Certify `x` against a scene (hulls polygonized at
/// `scene.geom.hull_segments`).
pub fn certify_point(x: Point2, scene: &Scene) -> Result<CertBound> {
    let hull_a = hull_of_focal(&scene.a, scene.geom.hull_segments)?;
    let hull_b = hull_of_focal(&scene.b, scene.geom.hull_segments)?;
    certify_point_with_hulls(x, scene, &hull_a, &hull_b)
}

/// Classification of one raster cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RasterClass {
    /// A true midset point provably lies inside the cell's inscribed disk
    /// (certificate radius below the cell half-width and inside the proven
    /// regime, possibly found at a refined subcell center).
    Hit,
    /// `|gap(center)|` exceeds twice the cell circumradius: the midset
    /// provably misses the cell.
    Miss,
    /// Neither proof succeeded within the refinement budget.
    Unresolved,
}

impl RasterClass {
    pub fn as_str(self) -> &'static str {
        match self {
            RasterClass::Hit => "hit",
            RasterClass::Miss => "miss",
            RasterClass::Unresolved => "unresolved",
        }
    }
}

/// One cell of a certified raster. The certificate fields describe the
/// attempt at this cell's own center and are NaN where unavailable (pruned
/// cells skip certification; hypothesis failures yield only `eps`).
#[derive(Debug, Clone, Copy)]
pub struct RasterCell {
    pub ix: u32,
    pub iy: u32,
    pub center: Point2,
    pub half_width: f64,
    pub classification: RasterClass,
    pub eps: f64,
    pub d: f64,
    pub alpha: f64,
    pub radius: f64,
}

/// A `grid_n x grid_n` certified raster over the bounding square, stored
/// row-major from the bottom-left cell (`iy * grid_n + ix`).
#[derive(Debug, Clone)]
pub struct Raster {
    pub grid_n: u32,
    pub radius: f64,
    pub cells: Vec<RasterCell>,
}

impl Raster {
    pub fn cell(&self, ix: u32, iy: u32) -> &RasterCell {
        &self.cells[(iy * self.grid_n + ix) as usize]
    }
}

/// Depth of recursive refinement a cell may receive before staying
/// unresolved.
const RASTER_REFINE_DEPTH: u32 = 3;

/// Certified raster over the bounding square `[-R, R]^2`.
///
/// Each cell is classified independently: certified-miss by the Lipschitz
/// prune at its own center, certified-hit when a shadowing certificate (at
/// the cell center or, after up to three recursive splits, at a subcell
/// center) pins a true midset point inside the cell, unresolved otherwise.
pub fn certified_raster(scene: &Scene, grid_n: u32, threads: usize) -> Result<Raster> {
    if grid_n < 2 {
        return Err(Error::InvalidInput(format!(
            "grid_n must be at least 2, got {grid_n}"
        )));
    }
    if grid_n > 4096 {
        return Err(Error::InvalidInput(format!(
            "grid_n must be at most 4096, got {grid_n}"
        )));
    }
    let hull_a = hull_of_focal(&scene.a, scene.geom.hull_segments)?;
    let hull_b = hull_of_focal(&scene.b, scene.geom.hull_segments)?;

    let r = scene.radius;
    let w = 2.0 * r / grid_n as f64;
    let hw = 0.5 * w;
    let indices: Vec<(u32, u32)> = (0..grid_n)
        .flat_map(|iy| (0..grid_n).map(move |ix| (ix, iy)))
        .collect();

    let cells = parallel_map(&indices, threads, |&(ix, iy)| {
        let center = Point2::new(
            -r + (ix as f64 + 0.5) * w,
            -r + (iy as f64 + 0.5) * w,
        );
        let gap = scene.gap(center);
        let (mut eps, mut d, mut alpha, mut radius) = (gap.abs(), f64::NAN, f64::NAN, f64::NAN);
        let classification = if gap.abs() > prune_threshold(hw) {
            RasterClass::Miss
        } else {
            let base = certify_point_with_hulls(center, scene, &hull_a, &hull_b);
            if let Ok(bound) = &base {
                eps = bound.eps;
                d = bound.d;
                alpha = bound.alpha;
                radius = bound.radius;
            }
            let base_hit = matches!(&base, Ok(b) if pins_within(b, hw));
            if base_hit || hit_witness(scene, &hull_a, &hull_b, center, hw, 0) {
                RasterClass::Hit
            } else {
                RasterClass::Unresolved
            }
        };
        RasterCell {
            ix,
            iy,
            center,
            half_width: hw,
            classification,
            eps,
            d,
            alpha,
            radius,
        }
    });

    Ok(Raster {
        grid_n,
        radius: r,
        cells,
    })
}

#[inline]
fn prune_threshold(half_width: f64) -> f64 {
    2.0 * half_width * std::f64::consts::SQRT_2
}

/// Whether a certificate pins a true midset point within `half_width` of
/// its query point: the radius must beat the half-width and lie in the
/// proven regime `radius * cos(alpha) <= d`, where the corner estimate
/// behind the radius formula is a genuine lower bound.
#[inline]
fn pins_within(bound: &CertBound, half_width: f64) -> bool {
    bound.radius < half_width && bound.radius * bound.alpha.cos().max(0.0) <= bound.d
}

/// Recursive search for a hit certificate at subcell centers. A certificate
/// of radius below the subcell half-width pins a midset point inside the
/// subcell, hence inside the original cell.
fn hit_witness(
    scene: &Scene,
    hull_a: &ConvexPolygon,
    hull_b: &ConvexPolygon,
    center: Point2,
    half_width: f64,
    depth: u32,
) -> bool {
    if depth >= RASTER_REFINE_DEPTH {
        return false;
    }
    let qw = 0.5 * half_width;
    for (sx, sy) in [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)] {
        let sub = Point2::new(center.x + sx * qw, center.y + sy * qw);
        if scene.gap(sub).abs() > prune_threshold(qw) {
            continue; // provably empty subcell: no witness here
        }
        if let Ok(bound) = certify_point_with_hulls(sub, scene, hull_a, hull_b) {
            if pins_within(&bound, qw) {
                return true;
            }
        }
        if hit_witness(scene, hull_a, hull_b, sub, qw, depth + 1) {
            return true;
        }
    }
    false
}
