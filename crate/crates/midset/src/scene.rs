//! A scene is the full input of an extraction: two disjoint focal sets, a
//! bounding disk, and the tolerance record every downstream stage reads.

use crate::config::GeomConfig;
use crate::error::{Error, Result};
use crate::geometry::{gap, hull_of_focal, primitive_distance, FocalSet, Point2};

/// Two disjoint focal sets inside the open disk of radius `radius`,
/// plus tolerances.
///
/// `tol_x` bounds the position error of extracted vertices, `tol_gap` the
/// distance-difference residual at them. The pair must satisfy
/// `tol_gap >= 4 * tol_x`; that relation is what lets boundary clipping and
/// marching keep every vertex residual under `tol_gap` (the gap function is
/// 2-Lipschitz, and clip interpolation can add up to one cell of travel).
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub a: FocalSet,
    pub b: FocalSet,
    pub radius: f64,
    pub tol_x: f64,
    pub tol_gap: f64,
    pub geom: GeomConfig,
}

/// Default `tol_x` for a bounding radius: `R * 2^-12`.
#[inline]
pub fn default_tol_x(radius: f64) -> f64 {
    radius * (0.5f64).powi(12)
}

impl Scene {
    /// Scene with default tolerances (`tol_x = R * 2^-12`,
    /// `tol_gap = 4 * tol_x`).
    pub fn new(a: FocalSet, b: FocalSet, radius: f64) -> Result<Self> {
        let tol_x = default_tol_x(radius);
        Self::with_tolerances(a, b, radius, tol_x, 4.0 * tol_x)
    }

    pub fn with_tolerances(
        a: FocalSet,
        b: FocalSet,
        radius: f64,
        tol_x: f64,
        tol_gap: f64,
    ) -> Result<Self> {
        let scene = Self {
            a,
            b,
            radius,
            tol_x,
            tol_gap,
            geom: GeomConfig::default(),
        };
        scene.validate(true)?;
        Ok(scene)
    }

    /// Like `with_tolerances`, but skips the bounding-disk containment check.
    ///
    /// This exists for scenes whose focal sets deliberately extend past the
    /// disk, such as a straight "directrix" modeled as a long segment.
    /// Extraction results are only meaningful inside the disk.
    pub fn new_allowing_overflow(
        a: FocalSet,
        b: FocalSet,
        radius: f64,
        tol_x: f64,
        tol_gap: f64,
    ) -> Result<Self> {
        let scene = Self {
            a,
            b,
            radius,
            tol_x,
            tol_gap,
            geom: GeomConfig::default(),
        };
        scene.validate(false)?;
        Ok(scene)
    }

    /// Replace the geometry knobs and re-run validation (a coarser hull
    /// polygonization can tip the containment check).
    pub fn with_geom(mut self, geom: GeomConfig) -> Result<Self> {
        self.geom = geom;
        self.validate(true)?;
        Ok(self)
    }

    fn validate(&self, check_containment: bool) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidInput(format!(
                "bounding radius must be positive, got {}",
                self.radius
            )));
        }
        if !(self.tol_x.is_finite() && self.tol_x > 0.0) {
            return Err(Error::InvalidInput(format!(
                "tol_x must be positive, got {}",
                self.tol_x
            )));
        }
        if !(self.tol_gap.is_finite() && self.tol_gap >= 4.0 * self.tol_x) {
            return Err(Error::InvalidInput(format!(
                "tol_gap must be at least 4 * tol_x ({} < {})",
                self.tol_gap,
                4.0 * self.tol_x
            )));
        }
        let mut min_dist = f64::INFINITY;
        for pa in &self.a.primitives {
            for pb in &self.b.primitives {
                min_dist = min_dist.min(primitive_distance(pa, pb));
            }
        }
        if min_dist <= 0.0 {
            return Err(Error::NotDisjoint(min_dist));
        }
        if check_containment {
            for f in [&self.a, &self.b] {
                let hull = hull_of_focal(f, self.geom.hull_segments)?;
                if hull.vertices.iter().any(|v| v.norm() >= self.radius) {
                    return Err(Error::OutsideBoundingDisk {
                        label: f.label.clone(),
                        radius: self.radius,
                    });
                }
            }
        }
        Ok(())
    }

    /// Signed distance difference `dist(x, A) - dist(x, B)`.
    #[inline]
    pub fn gap(&self, x: Point2) -> f64 {
        gap(x, &self.a, &self.b)
    }
}
