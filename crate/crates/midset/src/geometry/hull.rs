//! Convex hulls of point sets and of focal sets.
//!
//! Hulls may be degenerate: a single vertex (one dot) or two vertices (all
//! points collinear). Every consumer in this crate handles those shapes.

use crate::error::{Error, Result};
use crate::geometry::point::Point2;
use crate::geometry::primitive::{segment_nearest, FocalSet};

/// Counterclockwise convex polygon. Vertices start at the lexicographically
/// smallest point and contain no three collinear points.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    pub vertices: Vec<Point2>,
}

/// Convex hull by monotone chain. Runs in O(n log n); collinear middle
/// points are dropped, exact duplicates are ignored.
pub fn convex_hull(points: &[Point2]) -> Result<ConvexPolygon> {
    if points.is_empty() {
        return Err(Error::EmptyInput("convex hull of no points"));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidInput("coordinate is not finite".into()));
    }
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(Point2::lex_cmp);
    pts.dedup();
    if pts.len() == 1 {
        return Ok(ConvexPolygon { vertices: pts });
    }

    let turn = |a: Point2, b: Point2, c: Point2| (b - a).cross(c - a);
    let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // Collinear input collapses to the two extreme points.
    Ok(ConvexPolygon { vertices: lower })
}

/// Convex hull of a focal set, with circles and disks replaced by
/// circumscribed regular `k`-gons (`k >= 3`). The result contains the true
/// hull and over-covers it by at most `r * (sec(pi/k) - 1)` per circular
/// primitive.
pub fn hull_of_focal(f: &FocalSet, k: usize) -> Result<ConvexPolygon> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "hull polygonization needs k >= 3, got {k}"
        )));
    }
    convex_hull(&f.hull_points(k))
}

impl ConvexPolygon {
    /// Twice the signed area; positive for counterclockwise order.
    pub fn signed_area2(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        let mut s = 0.0;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            s += a.x * b.y - b.x * a.y;
        }
        s
    }

    /// Edge list; empty for a single vertex, one edge for a flat hull.
    pub fn edges(&self) -> Vec<(Point2, Point2)> {
        let n = self.vertices.len();
        match n {
            0 | 1 => Vec::new(),
            2 => vec![(self.vertices[0], self.vertices[1])],
            _ => (0..n)
                .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
                .collect(),
        }
    }

    /// Whether `x` lies in the closed hull, within slack `tol` (a distance
    /// for degenerate hulls, a signed-offset bound for full ones).
    pub fn contains(&self, x: Point2, tol: f64) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0].dist(x) <= tol,
            2 => x.dist(segment_nearest(x, self.vertices[0], self.vertices[1])) <= tol,
            n => (0..n).all(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                let e = b - a;
                // Signed perpendicular offset of x from edge (a, b).
                (e.cross(x - a) / e.norm()) >= -tol
            }),
        }
    }

    /// Distance from `x` to the closed hull (0 inside).
    pub fn distance_to_point(&self, x: Point2) -> f64 {
        match self.vertices.len() {
            0 => f64::INFINITY,
            1 => self.vertices[0].dist(x),
            2 => x.dist(segment_nearest(x, self.vertices[0], self.vertices[1])),
            _ => {
                if self.contains(x, 0.0) {
                    0.0
                } else {
                    self.edges()
                        .iter()
                        .map(|&(a, b)| x.dist(segment_nearest(x, a, b)))
                        .fold(f64::INFINITY, f64::min)
                }
            }
        }
    }

    /// Minimum distance between two closed convex polygons (0 when they
    /// overlap or touch).
    pub fn distance_to_polygon(&self, other: &ConvexPolygon) -> f64 {
        if self.vertices.len() == 1 {
            return other.distance_to_point(self.vertices[0]);
        }
        if other.vertices.len() == 1 {
            return self.distance_to_point(other.vertices[0]);
        }
        // Containment covers the nested case; crossing boundaries are caught
        // by the edge-pair minimum below reaching zero.
        if self.contains(other.vertices[0], 0.0) || other.contains(self.vertices[0], 0.0) {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for &(a1, b1) in &self.edges() {
            for &(a2, b2) in &other.edges() {
                best = best.min(segment_pair_distance(a1, b1, a2, b2));
                if best == 0.0 {
                    return 0.0;
                }
            }
        }
        best
    }

    /// Largest pairwise vertex distance; for a convex set this is the true
    /// diameter.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut best: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max(v[i].dist(v[j]));
            }
        }
        best
    }

    /// Vertex average; used only to pick directions, never as an exact
    /// centroid.
    pub fn vertex_mean(&self) -> Point2 {
        let n = self.vertices.len() as f64;
        let (sx, sy) = self
            .vertices
            .iter()
            .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
        Point2::new(sx / n, sy / n)
    }

    /// Largest coordinate magnitude; feeds scale-aware tolerances.
    pub fn coord_span(&self) -> f64 {
        self.vertices
            .iter()
            .map(|p| p.x.abs().max(p.y.abs()))
            .fold(0.0, f64::max)
    }
}

fn segment_pair_distance(p1: Point2, q1: Point2, p2: Point2, q2: Point2) -> f64 {
    let d1 = p2.dist(segment_nearest(p2, p1, q1));
    let d2 = q2.dist(segment_nearest(q2, p1, q1));
    let d3 = p1.dist(segment_nearest(p1, p2, q2));
    let d4 = q1.dist(segment_nearest(q1, p2, q2));
    // Proper crossings are resolved by the caller reaching zero through
    // endpoint projections only when boundaries touch; check explicitly.
    let endpoint_min = d1.min(d2).min(d3).min(d4);
    if endpoint_min > 0.0 && crate::geometry::segments_cross(p1, q1, p2, q2) {
        0.0
    } else {
        endpoint_min
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::primitive::Primitive;

    #[test]
    fn square_hull_is_ccw_from_lex_min() {
        let pts = [
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.5, 0.5), // interior
            Point2::new(0.5, 0.0), // collinear on the bottom edge
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(
            h.vertices,
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(1.0, 1.0),
                Point2::new(0.0, 1.0),
            ]
        );
        assert!(h.signed_area2() > 0.0);
    }

    #[test]
    fn degenerate_hulls() {
        let one = convex_hull(&[Point2::new(2.0, 3.0), Point2::new(2.0, 3.0)]).unwrap();
        assert_eq!(one.vertices.len(), 1);
        let flat = convex_hull(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(3.0, 3.0),
            Point2::new(2.0, 2.0),
        ])
        .unwrap();
        assert_eq!(
            flat.vertices,
            vec![Point2::new(0.0, 0.0), Point2::new(3.0, 3.0)]
        );
        assert!(convex_hull(&[]).is_err());
    }

    #[test]
    fn circumscribed_square_of_unit_circle() {
        let f = FocalSet::new(
            "A",
            vec![Primitive::circle(Point2::new(0.0, 0.0), 1.0).unwrap()],
        )
        .unwrap();
        let h = hull_of_focal(&f, 4).unwrap();
        assert_eq!(h.vertices.len(), 4);
        let circum = (std::f64::consts::PI / 4.0).cos().recip();
        for v in &h.vertices {
            assert!((v.norm() - circum).abs() < 1e-12);
        }
        assert!((circum - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(hull_of_focal(&f, 2).is_err());
    }

    #[test]
    fn polygon_distance_cases() {
        let a = convex_hull(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        let b = convex_hull(&[
            Point2::new(3.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(4.0, 1.0),
            Point2::new(3.0, 1.0),
        ])
        .unwrap();
        assert_eq!(a.distance_to_polygon(&b), 2.0);
        // Touching corner counts as distance zero.
        let c = convex_hull(&[
            Point2::new(1.0, 1.0),
            Point2::new(2.0, 1.0),
            Point2::new(2.0, 2.0),
        ])
        .unwrap();
        assert_eq!(a.distance_to_polygon(&c), 0.0);
        // Nested.
        let inner = convex_hull(&[
            Point2::new(0.4, 0.4),
            Point2::new(0.6, 0.4),
            Point2::new(0.5, 0.6),
        ])
        .unwrap();
        assert_eq!(a.distance_to_polygon(&inner), 0.0);
        // Degenerate: single dot vs square.
        let dot = convex_hull(&[Point2::new(0.5, 3.0)]).unwrap();
        assert_eq!(a.distance_to_polygon(&dot), 2.0);
    }

    #[test]
    fn hull_contains_samples_of_its_focal_set() {
        let f = FocalSet::new(
            "A",
            vec![
                Primitive::circle(Point2::new(0.5, -0.25), 0.75).unwrap(),
                Primitive::segment(Point2::new(-2.0, 0.0), Point2::new(0.0, 1.5)).unwrap(),
            ],
        )
        .unwrap();
        let h = hull_of_focal(&f, 64).unwrap();
        for p in f.sample_boundary(257) {
            assert!(h.contains(p, 1e-9), "sample ({}, {}) escapes hull", p.x, p.y);
        }
    }
}
