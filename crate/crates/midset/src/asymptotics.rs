//! Far-field structure of midsets: asymptotic direction rays from exterior
//! common tangents, deviation profiles of extracted chains against those
//! rays, and the perpendicular growth check that separates parabola-like
//! ends (one focal set effectively a line) from hyperbola-like ends.

use crate::config::GeomConfig;
use crate::error::{Error, Result};
use crate::extraction::PolyChain;
use crate::geometry::{exterior_common_tangents, hull_of_focal, FocalSet, Point2, Vec2};

/// An asymptotic direction ray: far ends of the midset approach straight
/// lines parallel to `direction`, anchored near `origin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Point2,
    pub direction: Vec2,
}

impl Ray {
    /// Coordinates of `p` in the ray frame: `t` along the direction,
    /// `s` along its counterclockwise perpendicular.
    #[inline]
    pub fn frame_coords(&self, p: Point2) -> (f64, f64) {
        let v = p - self.origin;
        (self.direction.dot(v), self.direction.perp_ccw().dot(v))
    }
}

/// The two asymptotic rays of a midset, derived from the exterior common
/// tangents of the focal hulls. Each ray starts at the midpoint of the
/// facing tangency pair and points along the tangent's outward normal (away
/// from both sets). Rays are ordered by the underlying tangent directions;
/// swapping the focal sets yields the same rays.
pub fn asymptotic_rays(a: &FocalSet, b: &FocalSet, cfg: &GeomConfig) -> Result<[Ray; 2]> {
    let ha = hull_of_focal(a, cfg.hull_segments)?;
    let hb = hull_of_focal(b, cfg.hull_segments)?;
    let (t1, t2) = exterior_common_tangents(&ha, &hb, cfg)?;
    Ok([t1, t2].map(|t| Ray {
        origin: t.tangency_midpoint(),
        direction: -t.inward_normal,
    }))
}

/// Deviation samples of one chain against one ray, sorted with strictly
/// increasing `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct EndProfile {
    /// `(t, s)` pairs: distance along the ray, signed perpendicular
    /// deviation.
    pub samples: Vec<(f64, f64)>,
}

impl EndProfile {
    /// Largest `|s|` among samples with `t` in `[t_lo, t_hi]`; `None` when
    /// the window holds no samples.
    pub fn max_abs_s(&self, t_lo: f64, t_hi: f64) -> Option<f64> {
        self.samples
            .iter()
            .filter(|(t, _)| *t >= t_lo && *t <= t_hi)
            .map(|(_, s)| s.abs())
            .fold(None, |m, x| Some(m.map_or(x, |m: f64| m.max(x))))
    }
}

/// Project the chain's vertices into the ray frame, keep those with
/// `t >= t_min`, and sort by `t`.
///
/// Samples closer than `tol_x / 4` in `t` are treated as one station: if
/// their deviations differ by more than `4 * tol_x` the chain doubles back
/// over the ray (it is not a graph over the ray) and the call fails with
/// [`Error::NotAGraph`]; otherwise the later duplicate is dropped.
pub fn end_deviation_profile(
    chain: &PolyChain,
    ray: &Ray,
    t_min: f64,
    tol_x: f64,
) -> Result<EndProfile> {
    if chain.vertices.is_empty() {
        return Err(Error::EmptyInput("chain"));
    }
    if !(tol_x.is_finite() && tol_x > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tol_x must be positive, got {tol_x}"
        )));
    }
    let mut raw: Vec<(f64, f64)> = chain
        .vertices
        .iter()
        .map(|&v| ray.frame_coords(v))
        .filter(|(t, _)| *t >= t_min)
        .collect();
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut samples: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
    for (t, s) in raw {
        match samples.last() {
            Some(&(t0, s0)) if t - t0 < tol_x / 4.0 => {
                if (s - s0).abs() > 4.0 * tol_x {
                    return Err(Error::NotAGraph);
                }
                // Same station, consistent deviation: keep the first.
            }
            _ => samples.push((t, s)),
        }
    }
    Ok(EndProfile { samples })
}

/// Result of [`parabola_growth_check`]: heights of the equidistant curve
/// above the directrix line at the requested stations, plus consecutive
/// divided differences. Affine height growth (hyperbola-like end) gives
/// constant differences; parabola-like ends give differences growing without
/// bound.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthCheck {
    pub stations: Vec<f64>,
    pub heights: Vec<f64>,
    /// `(heights[i+1] - heights[i]) / (stations[i+1] - stations[i])`.
    pub divided_differences: Vec<f64>,
}

/// Maximum bracket doublings before giving up on a station.
const MAX_DOUBLINGS: u32 = 40;

/// Heights of the set `{ dist(x, A) = dist(x, directrix line) }` above the
/// line through `p` and `q`, measured on perpendiculars erected at
/// `stations` (signed offsets along the line from the midpoint of `pq`).
///
/// `A` must lie strictly on one side of the line; the perpendiculars point
/// to that side. Each height is found by bracketing and bisecting
/// `g(t) = dist(A) - t` along the perpendicular to within `tol_x / 4`.
pub fn parabola_growth_check(
    a: &FocalSet,
    directrix_p: Point2,
    directrix_q: Point2,
    stations: &[f64],
    tol_x: f64,
) -> Result<GrowthCheck> {
    if !(tol_x.is_finite() && tol_x > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tol_x must be positive, got {tol_x}"
        )));
    }
    if stations.len() < 2 {
        return Err(Error::InvalidInput(
            "need at least 2 stations for divided differences".into(),
        ));
    }
    for w in stations.windows(2) {
        if !(w[0].is_finite() && w[1].is_finite() && w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "stations must be finite and strictly increasing".into(),
            ));
        }
    }
    let chord = directrix_q - directrix_p;
    if !(chord.norm().is_finite() && chord.norm() > 0.0) {
        return Err(Error::InvalidInput(
            "directrix endpoints must be distinct".into(),
        ));
    }
    let along = chord.unit();
    let mid = directrix_p.lerp(directrix_q, 0.5);

    // Orient the perpendicular toward A and insist A avoids the line: hull
    // vertices must sit strictly on one side.
    let cfg = GeomConfig::default();
    let hull = hull_of_focal(a, cfg.hull_segments)?;
    let span = hull.coord_span().max(chord.norm());
    let side_tol = cfg.side_tol_for(span);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in &hull.vertices {
        let s = along.cross(*v - mid);
        lo = lo.min(s);
        hi = hi.max(s);
    }
    let normal = if lo > side_tol {
        along.perp_ccw()
    } else if hi < -side_tol {
        along.perp_cw()
    } else {
        return Err(Error::Domain(
            "focal set must lie strictly on one side of the directrix".into(),
        ));
    };

    let mut heights = Vec::with_capacity(stations.len());
    for &u in stations {
        let base = mid + along * u;
        let g = |t: f64| a.distance(base + normal * t) - t;
        // g(0) = dist(base, A) > 0; far along the perpendicular the line
        // term wins. Double until the sign flips.
        let mut t_hi = a.distance(base).max(tol_x);
        let mut doublings = 0;
        while g(t_hi) >= 0.0 {
            t_hi *= 2.0;
            doublings += 1;
            if doublings > MAX_DOUBLINGS {
                return Err(Error::Domain(format!(
                    "no equidistant height found above station {u}"
                )));
            }
        }
        let mut t_lo = 0.0;
        while t_hi - t_lo > tol_x / 4.0 {
            let m = 0.5 * (t_lo + t_hi);
            if g(m) >= 0.0 {
                t_lo = m;
            } else {
                t_hi = m;
            }
        }
        heights.push(0.5 * (t_lo + t_hi));
    }

    let divided_differences = stations
        .windows(2)
        .zip(heights.windows(2))
        .map(|(u, f)| (f[1] - f[0]) / (u[1] - u[0]))
        .collect();
    Ok(GrowthCheck {
        stations: stations.to_vec(),
        heights,
        divided_differences,
    })
}
