//! Scene (de)serialization: a small JSON schema with a version field, two
//! focal-set primitive lists, the bounding radius, and optional explicit
//! tolerances.
//!
//! ```json
//! {
//!   "version": 1,
//!   "radius": 4.0,
//!   "a": [ { "type": "dot", "p": [-1.0, 0.0] } ],
//!   "b": [ { "type": "circle", "center": [1.0, 0.0], "radius": 0.25 } ],
//!   "tolerances": { "tol_x": 0.001, "tol_gap": 0.004 }
//! }
//! ```
//!
//! Loading runs full scene validation, so a parsed file is already a usable
//! scene. Saving always writes the tolerances, making the file reproducible
//! even if the defaults change.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{FocalSet, Point2, Primitive};
use crate::scene::Scene;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("scene file i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("scene file parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    version: u32,
    radius: f64,
    a: Vec<PrimitiveSpec>,
    b: Vec<PrimitiveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tolerances: Option<Tolerances>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Tolerances {
    tol_x: f64,
    tol_gap: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum PrimitiveSpec {
    Dot { p: [f64; 2] },
    Segment { p: [f64; 2], q: [f64; 2] },
    Circle { center: [f64; 2], radius: f64 },
    Disk { center: [f64; 2], radius: f64 },
    Polyline { vertices: Vec<[f64; 2]>, closed: bool },
}

fn pt(xy: [f64; 2]) -> Point2 {
    Point2::new(xy[0], xy[1])
}

fn xy(p: Point2) -> [f64; 2] {
    [p.x, p.y]
}

impl PrimitiveSpec {
    fn build(&self) -> Result<Primitive, Error> {
        match self {
            PrimitiveSpec::Dot { p } => Primitive::dot(pt(*p)),
            PrimitiveSpec::Segment { p, q } => Primitive::segment(pt(*p), pt(*q)),
            PrimitiveSpec::Circle { center, radius } => Primitive::circle(pt(*center), *radius),
            PrimitiveSpec::Disk { center, radius } => Primitive::disk(pt(*center), *radius),
            PrimitiveSpec::Polyline { vertices, closed } => {
                Primitive::polyline(vertices.iter().copied().map(pt).collect(), *closed)
            }
        }
    }

    fn from_primitive(p: &Primitive) -> Self {
        match p {
            Primitive::Dot(p) => PrimitiveSpec::Dot { p: xy(*p) },
            Primitive::Segment { p, q } => PrimitiveSpec::Segment {
                p: xy(*p),
                q: xy(*q),
            },
            Primitive::Circle { center, radius } => PrimitiveSpec::Circle {
                center: xy(*center),
                radius: *radius,
            },
            Primitive::Disk { center, radius } => PrimitiveSpec::Disk {
                center: xy(*center),
                radius: *radius,
            },
            Primitive::PolyLine { vertices, closed } => PrimitiveSpec::Polyline {
                vertices: vertices.iter().copied().map(xy).collect(),
                closed: *closed,
            },
        }
    }
}

/// Parse and validate a scene from JSON text.
pub fn scene_from_str(text: &str) -> Result<Scene, LoadError> {
    let file: SceneFile = serde_json::from_str(text).map_err(|e| LoadError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.version != 1 {
        return Err(LoadError::Invalid(Error::InvalidInput(format!(
            "unsupported scene file version {}, expected 1",
            file.version
        ))));
    }
    let build = |specs: &[PrimitiveSpec], label: &str| -> Result<FocalSet, Error> {
        let prims = specs.iter().map(PrimitiveSpec::build).collect::<Result<Vec<_>, _>>()?;
        FocalSet::new(label, prims)
    };
    let a = build(&file.a, "A")?;
    let b = build(&file.b, "B")?;
    let scene = match file.tolerances {
        Some(t) => Scene::with_tolerances(a, b, file.radius, t.tol_x, t.tol_gap)?,
        None => Scene::new(a, b, file.radius)?,
    };
    Ok(scene)
}

/// Load a scene from a JSON file.
pub fn load_scene(path: impl AsRef<Path>) -> Result<Scene, LoadError> {
    let text = std::fs::read_to_string(path)?;
    scene_from_str(&text)
}

/// Serialize a scene to pretty JSON (always with explicit tolerances).
pub fn scene_to_string(scene: &Scene) -> String {
    let file = SceneFile {
        version: 1,
        radius: scene.radius,
        a: scene.a.primitives.iter().map(PrimitiveSpec::from_primitive).collect(),
        b: scene.b.primitives.iter().map(PrimitiveSpec::from_primitive).collect(),
        tolerances: Some(Tolerances {
            tol_x: scene.tol_x,
            tol_gap: scene.tol_gap,
        }),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("scene serialization cannot fail");
    s.push('\n');
    s
}

/// Write a scene to a JSON file.
pub fn save_scene(scene: &Scene, path: impl AsRef<Path>) -> Result<(), LoadError> {
    std::fs::write(path, scene_to_string(scene))?;
    Ok(())
}
