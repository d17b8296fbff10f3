//! Focal-set primitives and the exact distance kernel.
//!
//! Every distance here is closed-form; no iteration is involved. `Circle` is
//! the curve, `Disk` the filled region, so `Disk` reports distance 0 from any
//! interior point while `Circle` does not.

use crate::config::GeomConfig;
use crate::error::{Error, Result};
use crate::geometry::point::{Point2, Vec2};

#[derive(Debug, Clone, PartialEq)]
pub enum Primitive {
    Dot(Point2),
    Segment { p: Point2, q: Point2 },
    Circle { center: Point2, radius: f64 },
    Disk { center: Point2, radius: f64 },
    PolyLine { vertices: Vec<Point2>, closed: bool },
}

/// Minimum distance together with the nearest point(s) that attain it.
#[derive(Debug, Clone, PartialEq)]
pub struct FootResult {
    pub dist: f64,
    /// Nonempty; deduplicated within the configured foot tolerance. When the
    /// nearest point is not unique (polyline corners, equidistant members,
    /// a circle seen from its center) one representative per attaining part
    /// is kept, in construction order.
    pub feet: Vec<Point2>,
}

impl Primitive {
    pub fn dot(p: Point2) -> Result<Self> {
        require_finite(&[p])?;
        Ok(Primitive::Dot(p))
    }

    pub fn segment(p: Point2, q: Point2) -> Result<Self> {
        require_finite(&[p, q])?;
        if p.dist_sq(q) == 0.0 {
            return Err(Error::InvalidInput(format!(
                "segment endpoints coincide at ({},{})",
                p.x, p.y
            )));
        }
        Ok(Primitive::Segment { p, q })
    }

    pub fn circle(center: Point2, radius: f64) -> Result<Self> {
        require_finite(&[center])?;
        require_positive_radius(radius)?;
        Ok(Primitive::Circle { center, radius })
    }

    pub fn disk(center: Point2, radius: f64) -> Result<Self> {
        require_finite(&[center])?;
        require_positive_radius(radius)?;
        Ok(Primitive::Disk { center, radius })
    }

    pub fn polyline(vertices: Vec<Point2>, closed: bool) -> Result<Self> {
        require_finite(&vertices)?;
        if vertices.len() < 2 {
            return Err(Error::InvalidInput(
                "polyline needs at least 2 vertices".into(),
            ));
        }
        for w in vertices.windows(2) {
            if w[0].dist_sq(w[1]) == 0.0 {
                return Err(Error::InvalidInput(format!(
                    "polyline has consecutive duplicate vertex at ({},{})",
                    w[0].x, w[0].y
                )));
            }
        }
        if closed && vertices.first() == vertices.last() && vertices.len() > 2 {
            return Err(Error::InvalidInput(
                "closed polyline must not repeat its first vertex".into(),
            ));
        }
        Ok(Primitive::PolyLine { vertices, closed })
    }

    /// Re-check the construction invariants; used when a primitive arrives
    /// through public fields rather than a constructor.
    pub fn validate(&self) -> Result<()> {
        match self {
            Primitive::Dot(p) => Primitive::dot(*p).map(drop),
            Primitive::Segment { p, q } => Primitive::segment(*p, *q).map(drop),
            Primitive::Circle { center, radius } => Primitive::circle(*center, *radius).map(drop),
            Primitive::Disk { center, radius } => Primitive::disk(*center, *radius).map(drop),
            Primitive::PolyLine { vertices, closed } => {
                Primitive::polyline(vertices.clone(), *closed).map(drop)
            }
        }
    }

    /// Exact minimum distance from `x` to this primitive.
    pub fn distance(&self, x: Point2) -> f64 {
        match self {
            Primitive::Dot(p) => x.dist(*p),
            Primitive::Segment { p, q } => x.dist(segment_nearest(x, *p, *q)),
            Primitive::Circle { center, radius } => (x.dist(*center) - radius).abs(),
            Primitive::Disk { center, radius } => (x.dist(*center) - radius).max(0.0),
            Primitive::PolyLine { vertices, closed } => {
                polyline_edges(vertices, *closed)
                    .map(|(a, b)| x.dist(segment_nearest(x, a, b)))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Minimum distance and the nearest point(s) attaining it.
    pub fn foot_points(&self, x: Point2, cfg: &GeomConfig) -> FootResult {
        match self {
            Primitive::Dot(p) => FootResult {
                dist: x.dist(*p),
                feet: vec![*p],
            },
            Primitive::Segment { p, q } => {
                let foot = segment_nearest(x, *p, *q);
                FootResult {
                    dist: x.dist(foot),
                    feet: vec![foot],
                }
            }
            Primitive::Circle { center, radius } => {
                let d0 = x.dist(*center);
                if d0 == 0.0 {
                    // Every circle point is nearest; keep the deterministic
                    // representative on the +x axis.
                    return FootResult {
                        dist: *radius,
                        feet: vec![Point2::new(center.x + radius, center.y)],
                    };
                }
                let foot = *center + (x - *center) * (radius / d0);
                FootResult {
                    dist: (d0 - radius).abs(),
                    feet: vec![foot],
                }
            }
            Primitive::Disk { center, radius } => {
                let d0 = x.dist(*center);
                if d0 <= *radius {
                    return FootResult { dist: 0.0, feet: vec![x] };
                }
                let foot = *center + (x - *center) * (radius / d0);
                FootResult {
                    dist: d0 - radius,
                    feet: vec![foot],
                }
            }
            Primitive::PolyLine { vertices, closed } => {
                let candidates: Vec<(f64, Point2)> = polyline_edges(vertices, *closed)
                    .map(|(a, b)| {
                        let foot = segment_nearest(x, a, b);
                        (x.dist(foot), foot)
                    })
                    .collect();
                aggregate_feet(candidates, cfg.foot_dedup)
            }
        }
    }

    /// Evenly spaced boundary samples, used when a set-to-set distance is
    /// estimated numerically. Exactly representable primitives (dots,
    /// segment endpoints, polyline vertices) contribute their true vertices.
    pub fn sample_boundary(&self, n: usize) -> Vec<Point2> {
        let n = n.max(1);
        match self {
            Primitive::Dot(p) => vec![*p],
            Primitive::Segment { p, q } => (0..=n).map(|i| p.lerp(*q, i as f64 / n as f64)).collect(),
            Primitive::Circle { center, radius } | Primitive::Disk { center, radius } => (0..n)
                .map(|i| {
                    let th = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                    *center + Vec2::new(th.cos(), th.sin()) * *radius
                })
                .collect(),
            Primitive::PolyLine { vertices, closed } => {
                let mut out = Vec::new();
                for (a, b) in polyline_edges(vertices, *closed) {
                    for i in 0..n {
                        out.push(a.lerp(b, i as f64 / n as f64));
                    }
                }
                if !closed {
                    out.push(*vertices.last().unwrap());
                }
                out
            }
        }
    }

    /// Points whose convex hull contains this primitive. Circles and disks
    /// contribute a circumscribed regular `k`-gon with one vertex on the +x
    /// axis, so the hull over-covers the true set by at most
    /// `radius * (sec(pi/k) - 1)`.
    pub fn hull_points(&self, k: usize, out: &mut Vec<Point2>) {
        match self {
            Primitive::Dot(p) => out.push(*p),
            Primitive::Segment { p, q } => {
                out.push(*p);
                out.push(*q);
            }
            Primitive::Circle { center, radius } | Primitive::Disk { center, radius } => {
                let circum = radius / (std::f64::consts::PI / k as f64).cos();
                for i in 0..k {
                    let th = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                    out.push(*center + Vec2::new(th.cos(), th.sin()) * circum);
                }
            }
            Primitive::PolyLine { vertices, .. } => out.extend_from_slice(vertices),
        }
    }
}

/// A labeled, nonempty union of primitives.
#[derive(Debug, Clone, PartialEq)]
pub struct FocalSet {
    pub label: String,
    pub primitives: Vec<Primitive>,
}

impl FocalSet {
    pub fn new(label: impl Into<String>, primitives: Vec<Primitive>) -> Result<Self> {
        if primitives.is_empty() {
            return Err(Error::EmptyInput("focal set has no primitives"));
        }
        for p in &primitives {
            p.validate()?;
        }
        Ok(Self {
            label: label.into(),
            primitives,
        })
    }

    /// Exact distance from `x` to the union.
    #[inline]
    pub fn distance(&self, x: Point2) -> f64 {
        self.primitives
            .iter()
            .map(|p| p.distance(x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance plus every nearest point across the union, deduplicated.
    pub fn foot_points(&self, x: Point2, cfg: &GeomConfig) -> FootResult {
        let mut candidates: Vec<(f64, Point2)> = Vec::new();
        for p in &self.primitives {
            let fr = p.foot_points(x, cfg);
            candidates.extend(fr.feet.into_iter().map(|f| (fr.dist, f)));
        }
        aggregate_feet(candidates, cfg.foot_dedup)
    }

    pub fn sample_boundary(&self, n_per_primitive: usize) -> Vec<Point2> {
        self.primitives
            .iter()
            .flat_map(|p| p.sample_boundary(n_per_primitive))
            .collect()
    }

    pub fn hull_points(&self, k: usize) -> Vec<Point2> {
        let mut out = Vec::new();
        for p in &self.primitives {
            p.hull_points(k, &mut out);
        }
        out
    }
}

/// Signed difference of distances `dist(x, A) - dist(x, B)`.
///
/// The midset is its zero set. Each term is 1-Lipschitz, so the gap is
/// 2-Lipschitz; that constant drives every pruning bound in extraction.
#[inline]
pub fn gap(x: Point2, a: &FocalSet, b: &FocalSet) -> f64 {
    a.distance(x) - b.distance(x)
}

/// Nearest point to `x` on segment `[a, b]`.
#[inline]
pub fn segment_nearest(x: Point2, a: Point2, b: Point2) -> Point2 {
    let ab = b - a;
    let t = ((x - a).dot(ab) / ab.norm_sq()).clamp(0.0, 1.0);
    a + ab * t
}

fn polyline_edges<'a>(
    vertices: &'a [Point2],
    closed: bool,
) -> impl Iterator<Item = (Point2, Point2)> + 'a {
    let n = vertices.len();
    let wrap = if closed && n > 2 { 1 } else { 0 };
    (0..n - 1 + wrap).map(move |i| (vertices[i], vertices[(i + 1) % n]))
}

fn aggregate_feet(mut candidates: Vec<(f64, Point2)>, dedup: f64) -> FootResult {
    debug_assert!(!candidates.is_empty());
    let min = candidates
        .iter()
        .map(|(d, _)| *d)
        .fold(f64::INFINITY, f64::min);
    candidates.retain(|(d, _)| *d <= min + dedup);
    let mut feet: Vec<Point2> = Vec::with_capacity(candidates.len());
    for (_, f) in candidates {
        if feet.iter().all(|g| g.dist(f) > dedup) {
            feet.push(f);
        }
    }
    FootResult { dist: min, feet }
}

/// Exact minimum distance between two primitives. Used to check that focal
/// sets are disjoint.
pub fn primitive_distance(a: &Primitive, b: &Primitive) -> f64 {
    use Primitive::*;
    match (a, b) {
        (PolyLine { vertices, closed }, other) => polyline_edges(vertices, *closed)
            .map(|(p, q)| primitive_distance(&Segment { p, q }, other))
            .fold(f64::INFINITY, f64::min),
        (other, PolyLine { .. }) => primitive_distance(b, other),

        (Dot(p), other) => other.distance(*p),
        (other, Dot(p)) => other.distance(*p),

        (Segment { p: p1, q: q1 }, Segment { p: p2, q: q2 }) => {
            segment_segment_distance(*p1, *q1, *p2, *q2)
        }
        (Segment { p, q }, Circle { center, radius })
        | (Circle { center, radius }, Segment { p, q }) => {
            let dmin = center.dist(segment_nearest(*center, *p, *q));
            let dmax = center.dist(*p).max(center.dist(*q));
            if *radius < dmin {
                dmin - radius
            } else if *radius > dmax {
                radius - dmax
            } else {
                0.0
            }
        }
        (Segment { p, q }, Disk { center, radius })
        | (Disk { center, radius }, Segment { p, q }) => {
            (center.dist(segment_nearest(*center, *p, *q)) - radius).max(0.0)
        }
        (Circle { center: c1, radius: r1 }, Circle { center: c2, radius: r2 }) => {
            let d = c1.dist(*c2);
            if d > r1 + r2 {
                d - (r1 + r2)
            } else if d < (r1 - r2).abs() {
                (r1 - r2).abs() - d
            } else {
                0.0
            }
        }
        (Circle { center: cc, radius: rc }, Disk { center: cd, radius: rd })
        | (Disk { center: cd, radius: rd }, Circle { center: cc, radius: rc }) => {
            ((cd.dist(*cc) - rc).abs() - rd).max(0.0)
        }
        (Disk { center: c1, radius: r1 }, Disk { center: c2, radius: r2 }) => {
            (c1.dist(*c2) - (r1 + r2)).max(0.0)
        }
    }
}

fn segment_segment_distance(p1: Point2, q1: Point2, p2: Point2, q2: Point2) -> f64 {
    if segments_cross(p1, q1, p2, q2) {
        return 0.0;
    }
    let d1 = p2.dist(segment_nearest(p2, p1, q1));
    let d2 = q2.dist(segment_nearest(q2, p1, q1));
    let d3 = p1.dist(segment_nearest(p1, p2, q2));
    let d4 = q1.dist(segment_nearest(q1, p2, q2));
    d1.min(d2).min(d3).min(d4)
}

/// Whether two closed segments share a point (proper crossing, endpoint
/// touch, or collinear overlap).
pub(crate) fn segments_cross(p1: Point2, q1: Point2, p2: Point2, q2: Point2) -> bool {
    let orient = |a: Point2, b: Point2, c: Point2| (b - a).cross(c - a);
    let on_segment = |a: Point2, b: Point2, c: Point2| {
        c.x >= a.x.min(b.x) && c.x <= a.x.max(b.x) && c.y >= a.y.min(b.y) && c.y <= a.y.max(b.y)
    };
    let d1 = orient(p2, q2, p1);
    let d2 = orient(p2, q2, q1);
    let d3 = orient(p1, q1, p2);
    let d4 = orient(p1, q1, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(p2, q2, p1))
        || (d2 == 0.0 && on_segment(p2, q2, q1))
        || (d3 == 0.0 && on_segment(p1, q1, p2))
        || (d4 == 0.0 && on_segment(p1, q1, q2))
}

fn require_finite(points: &[Point2]) -> Result<()> {
    if points.iter().all(Point2::is_finite) {
        Ok(())
    } else {
        Err(Error::InvalidInput("coordinate is not finite".into()))
    }
}

fn require_positive_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("radius must be positive, got {r}")))
    }
}
