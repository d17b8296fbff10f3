//! A small corpus of ready-made scenes with known midset geometry, shared by
//! tests, examples, and the command-line demos.

use crate::analysis::{ConicKind, ConicSpec};
use crate::geometry::{FocalSet, Point2, Primitive};
use crate::scene::Scene;

fn focal(label: &str, primitives: Vec<Primitive>) -> FocalSet {
    FocalSet::new(label, primitives).expect("demo focal set is valid")
}

/// Dots at (-1, 0) and (1, 0) in a disk of radius 4. Midset: the y axis.
pub fn two_dots() -> Scene {
    Scene::new(
        focal("A", vec![Primitive::dot(Point2::new(-1.0, 0.0)).unwrap()]),
        focal("B", vec![Primitive::dot(Point2::new(1.0, 0.0)).unwrap()]),
        4.0,
    )
    .expect("demo scene is valid")
}

/// Circles of radius 1/2 at the origin and 1/4 at (1, 0) in a disk of
/// radius 16. Midset: the hyperbola branch
/// `dist(x, 0) - dist(x, (1,0)) = 1/4`, crossing the axis at (0.625, 0),
/// asymptote slopes `±sqrt(15)`.
pub fn hyperbola() -> Scene {
    Scene::new(
        focal(
            "A",
            vec![Primitive::circle(Point2::new(0.0, 0.0), 0.5).unwrap()],
        ),
        focal(
            "B",
            vec![Primitive::circle(Point2::new(1.0, 0.0), 0.25).unwrap()],
        ),
        16.0,
    )
    .expect("demo scene is valid")
}

/// A circle of radius 4 at the origin around a circle of radius 1 at (1, 0),
/// in a disk of radius 6. Midset: the ellipse
/// `dist(x, 0) + dist(x, (1,0)) = 5`, crossing the axis at (-2, 0) and
/// (3, 0).
pub fn ellipse() -> Scene {
    Scene::new(
        focal(
            "A",
            vec![Primitive::circle(Point2::new(0.0, 0.0), 4.0).unwrap()],
        ),
        focal(
            "B",
            vec![Primitive::circle(Point2::new(1.0, 0.0), 1.0).unwrap()],
        ),
        6.0,
    )
    .expect("demo scene is valid")
}

/// Congruent circles of radius 1/4 at the origin and (1, 0) in a disk of
/// radius 4. Midset: the vertical line x = 1/2.
pub fn congruent_circles() -> Scene {
    Scene::new(
        focal(
            "A",
            vec![Primitive::circle(Point2::new(0.0, 0.0), 0.25).unwrap()],
        ),
        focal(
            "B",
            vec![Primitive::circle(Point2::new(1.0, 0.0), 0.25).unwrap()],
        ),
        4.0,
    )
    .expect("demo scene is valid")
}

/// A horizontal segment at height 1 against a dot at (0, -1) in a disk of
/// radius 4. Midset: a parabola arc glued to two shifted parabola arcs at
/// the segment's endpoints.
pub fn segment_dot() -> Scene {
    Scene::new(
        focal(
            "A",
            vec![Primitive::segment(Point2::new(-1.0, 1.0), Point2::new(1.0, 1.0)).unwrap()],
        ),
        focal("B", vec![Primitive::dot(Point2::new(0.0, -1.0)).unwrap()]),
        4.0,
    )
    .expect("demo scene is valid")
}

/// All demo scenes with stable names.
pub fn corpus() -> Vec<(&'static str, Scene)> {
    vec![
        ("two_dots", two_dots()),
        ("hyperbola", hyperbola()),
        ("ellipse", ellipse()),
        ("congruent_circles", congruent_circles()),
        ("segment_dot", segment_dot()),
    ]
}

/// The scenes whose midsets reduce to conics, with the conic each one must
/// satisfy.
pub fn conic_suite() -> Vec<(&'static str, Scene, ConicSpec)> {
    let f1 = Point2::new(0.0, 0.0);
    let f2 = Point2::new(1.0, 0.0);
    vec![
        (
            "hyperbola",
            hyperbola(),
            ConicSpec::new(ConicKind::Difference, f1, f2, 0.25).unwrap(),
        ),
        (
            "ellipse",
            ellipse(),
            ConicSpec::new(ConicKind::Sum, f1, f2, 5.0).unwrap(),
        ),
        (
            "congruent_circles",
            congruent_circles(),
            ConicSpec::new(ConicKind::Difference, f1, f2, 0.0).unwrap(),
        ),
    ]
}
