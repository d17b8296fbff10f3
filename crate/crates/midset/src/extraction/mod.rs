//! Certified extraction of midsets and epsilon-boundaries as polylines.
//!
//! The pipeline is: Lipschitz-pruned quadtree over the bounding square,
//! marching squares on the surviving uniform leaves, per-edge bisection roots,
//! exact chain linking on lattice edge keys, clipping to the bounding disk,
//! and a canonical ordering. Every stage is either sequential or an
//! order-preserving parallel map, so output is byte-identical for any thread
//! count.

mod chain;
mod engine;

use crate::error::{Error, Result};
use crate::geometry::{FocalSet, Point2};
use crate::scene::Scene;

use engine::{cell_corner_keys, is_positive, Field, SQRT2};

/// Knobs of one extraction run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Uniform subdivision depth of the quadtree (leaf width `2R * 2^-depth`).
    pub max_depth: usize,
    /// Worker threads for the pure evaluation stages. Any value produces
    /// bit-identical output.
    pub threads: usize,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            max_depth: 14,
            threads: 1,
        }
    }
}

impl ExtractOptions {
    fn validate(&self) -> Result<()> {
        if !(1..=20).contains(&self.max_depth) {
            return Err(Error::InvalidInput(format!(
                "max_depth must be in 1..=20, got {}",
                self.max_depth
            )));
        }
        if self.threads == 0 {
            return Err(Error::InvalidInput("threads must be at least 1".into()));
        }
        Ok(())
    }
}

/// Which focal set an epsilon-boundary query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FocalSide {
    A,
    B,
}

/// Outcome class of a quadtree cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    /// `|gap(center)|` exceeds twice the cell circumradius: provably no zero.
    Pruned,
    /// Leaf whose corner signs differ — it carries marching segments.
    Straddle,
    /// Leaf with all corner values `>= 0`.
    LeafPositive,
    /// Leaf with all corner values `< 0`.
    LeafNegative,
}

/// One quadtree cell as reported by [`build_cells`].
#[derive(Debug, Clone, Copy)]
pub struct Cell {
    pub center: Point2,
    pub half_width: f64,
    pub gap_at_center: f64,
    pub status: CellStatus,
}

/// Ordered vertex list approximating one midset (or level-set) branch.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyChain {
    pub vertices: Vec<Point2>,
    /// `true` for a cycle; the first vertex is not repeated at the end.
    pub closed: bool,
    /// `|field(v)|` per vertex — distance-difference residual for midsets,
    /// `|dist - eps|` for epsilon-boundaries.
    pub residuals: Vec<f64>,
}

impl PolyChain {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Non-fatal diagnostics of an extraction run.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtractionWarning {
    /// Straddling leaves are wider than `tol_x`: the requested spatial
    /// tolerance was not reached at `max_depth`.
    DepthExhausted {
        cell_width: f64,
        straddling_cells: usize,
    },
}

/// Result of an extraction: canonical chains plus warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub chains: Vec<PolyChain>,
    pub warnings: Vec<ExtractionWarning>,
    /// Width of the uniform leaf cells the chains were marched on.
    pub cell_width: f64,
}

impl Extraction {
    /// All chain vertices, pooled (useful for Hausdorff comparisons).
    pub fn all_vertices(&self) -> Vec<Point2> {
        self.chains
            .iter()
            .flat_map(|c| c.vertices.iter().copied())
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.chains.iter().map(|c| c.vertices.len()).sum()
    }
}

fn run_field(
    field: &Field,
    scene_radius: f64,
    tol_x: f64,
    opts: &ExtractOptions,
) -> (Vec<PolyChain>, Vec<ExtractionWarning>, f64) {
    let refined = engine::refine(field, scene_radius, opts.max_depth as u32, opts.threads);
    let stop = tol_x / 4.0;
    let assembled = chain::assemble(&refined, field, stop, opts.threads);

    let mut warnings = Vec::new();
    if refined.lattice.width > tol_x && assembled.straddle_count > 0 {
        warnings.push(ExtractionWarning::DepthExhausted {
            cell_width: refined.lattice.width,
            straddling_cells: assembled.straddle_count,
        });
    }

    let clipped = chain::clip_to_disk(
        assembled.chains,
        scene_radius,
        field,
        refined.lattice.width,
        stop,
    );
    let chains = chain::finish(chain::canonicalize(clipped), field, opts.threads);
    (chains, warnings, refined.lattice.width)
}

/// Extract the midset `{dist(.,A) = dist(.,B)}` restricted to the scene disk.
pub fn extract_midset(scene: &Scene, opts: &ExtractOptions) -> Result<Extraction> {
    opts.validate()?;
    let eval = |p: Point2| scene.gap(p);
    let field = Field {
        eval: &eval,
        lipschitz: 2.0,
    };
    let (chains, warnings, cell_width) = run_field(&field, scene.radius, scene.tol_x, opts);
    Ok(Extraction {
        chains,
        warnings,
        cell_width,
    })
}

/// Extract the epsilon-boundary `{dist(., F) = eps}` of one focal set, within
/// the scene's bounding disk and tolerances. The level field is 1-Lipschitz,
/// so pruning uses constant 1.
pub fn epsilon_boundary(
    scene: &Scene,
    side: FocalSide,
    eps: f64,
    opts: &ExtractOptions,
) -> Result<Extraction> {
    opts.validate()?;
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidInput(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let focal: &FocalSet = match side {
        FocalSide::A => &scene.a,
        FocalSide::B => &scene.b,
    };
    let eval = |p: Point2| focal.distance(p) - eps;
    let field = Field {
        eval: &eval,
        lipschitz: 1.0,
    };
    let (chains, warnings, cell_width) = run_field(&field, scene.radius, scene.tol_x, opts);
    Ok(Extraction {
        chains,
        warnings,
        cell_width,
    })
}

/// Quadtree cell census for the midset field: every pruned cell (at the depth
/// it was discarded) plus every surviving leaf with its sign classification.
pub fn build_cells(scene: &Scene, opts: &ExtractOptions) -> Result<Vec<Cell>> {
    opts.validate()?;
    let eval = |p: Point2| scene.gap(p);
    let field = Field {
        eval: &eval,
        lipschitz: 2.0,
    };
    let refined = engine::refine(&field, scene.radius, opts.max_depth as u32, opts.threads);
    let hw = 0.5 * refined.lattice.width;
    let mut cells: Vec<Cell> = refined
        .pruned
        .iter()
        .map(|p| Cell {
            center: p.center,
            half_width: p.half_width,
            gap_at_center: p.value,
            status: CellStatus::Pruned,
        })
        .collect();
    for leaf in &refined.leaves {
        let keys = cell_corner_keys(leaf.i, leaf.j);
        let vals = keys.map(|k| refined.corner_values[&k]);
        let case = chain::corner_case(vals);
        let status = match case {
            0 => CellStatus::LeafNegative,
            15 => CellStatus::LeafPositive,
            _ => CellStatus::Straddle,
        };
        cells.push(Cell {
            center: refined.lattice.center(leaf.i, leaf.j),
            half_width: hw,
            gap_at_center: leaf.center_value,
            status,
        });
    }
    Ok(cells)
}

/// Root of the gap function on the segment `p..q`, by bisection to an
/// interval no wider than `tol_x / 4`, so the result has `|gap| <= tol_x / 4`.
///
/// Errors with [`Error::SameSign`] unless `gap(p) * gap(q) <= 0`.
pub fn edge_root(p: Point2, q: Point2, scene: &Scene) -> Result<Point2> {
    let eval = |x: Point2| scene.gap(x);
    let (fp, fq) = (eval(p), eval(q));
    if fp == 0.0 {
        return Ok(p);
    }
    if fq == 0.0 {
        return Ok(q);
    }
    if is_positive(fp) == is_positive(fq) {
        return Err(Error::SameSign { p, q });
    }
    let field = Field {
        eval: &eval,
        lipschitz: 2.0,
    };
    Ok(engine::bisect_on_segment(
        &field,
        p,
        q,
        fp,
        fq,
        scene.tol_x / 4.0,
    ))
}

/// The crossing `x(h)` of the midset of `a`, `b` with the horizontal line
/// `y = h`, isolated by bisection on `[x_lo, x_hi]` to width `tol_x / 4`.
///
/// Requires `gap(x_lo, h) < 0 < gap(x_hi, h)` (the side of `a` on the left).
/// In the monotone regime this root is unique; otherwise it is merely *a*
/// root.
pub fn crossing_at_height(
    a: &FocalSet,
    b: &FocalSet,
    h: f64,
    x_lo: f64,
    x_hi: f64,
    tol_x: f64,
) -> Result<f64> {
    if !(tol_x.is_finite() && tol_x > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tol_x must be positive, got {tol_x}"
        )));
    }
    if !(x_lo.is_finite() && x_hi.is_finite() && h.is_finite() && x_lo < x_hi) {
        return Err(Error::InvalidInput(format!(
            "bad bracket [{x_lo}, {x_hi}] at height {h}"
        )));
    }
    let eval = |p: Point2| crate::geometry::gap(p, a, b);
    let p = Point2::new(x_lo, h);
    let q = Point2::new(x_hi, h);
    let (fp, fq) = (eval(p), eval(q));
    if !(fp < 0.0 && fq > 0.0) {
        return Err(Error::SameSign { p, q });
    }
    let field = Field {
        eval: &eval,
        lipschitz: 2.0,
    };
    Ok(engine::bisect_on_segment(&field, p, q, fp, fq, tol_x / 4.0).x)
}

/// Lipschitz constant used by midset pruning; exposed for tests that verify
/// prune certificates directly.
pub fn prune_threshold(half_width: f64) -> f64 {
    2.0 * half_width * SQRT2
}
