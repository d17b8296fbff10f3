//! Exact plane geometry for focal sets: points, primitives with closed-form
//! distances, convex hulls, common tangents, and separation angles.

mod hull;
mod point;
mod primitive;
mod tangent;

pub use hull::{convex_hull, hull_of_focal, ConvexPolygon};
pub use point::{Point2, Vec2};
pub use primitive::{
    gap, primitive_distance, segment_nearest, FocalSet, FootResult, Primitive,
};
pub use tangent::{exterior_common_tangents, separation_angle, SupportLine};

pub(crate) use primitive::segments_cross;
