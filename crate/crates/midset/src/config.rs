/// Geometric tolerances and discretization knobs, carried in one record so
/// call sites never hard-code constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeomConfig {
    /// Foot points closer than this are treated as one point.
    pub foot_dedup: f64,
    /// Absolute tolerance for sidedness and collinearity tests, scaled by the
    /// coordinate span of the inputs where appropriate.
    pub side_tol: f64,
    /// Vertex count of the circumscribed polygon used when a circle or disk
    /// enters a convex-hull computation. Outward error is
    /// `r * (sec(pi/k) - 1)`.
    pub hull_segments: usize,
}

impl Default for GeomConfig {
    fn default() -> Self {
        Self {
            foot_dedup: 1e-9,
            side_tol: 1e-9,
            hull_segments: 64,
        }
    }
}

impl GeomConfig {
    /// Sidedness tolerance adapted to coordinates of magnitude `span`.
    #[inline]
    pub fn side_tol_for(&self, span: f64) -> f64 {
        self.side_tol * span.abs().max(1.0)
    }
}
