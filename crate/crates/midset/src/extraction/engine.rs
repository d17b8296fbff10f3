//! Lipschitz-pruned quadtree refinement over the bounding square.
//!
//! The square `[-R, R]^2` is subdivided breadth-first. A cell is discarded
//! ("pruned") exactly when `|f(center)| > L * circumradius`, where `L` is the
//! field's Lipschitz constant — the field then cannot vanish anywhere in the
//! cell. Surviving cells are carried to a uniform final depth, which keeps the
//! marching lattice crack-free.

use std::collections::HashMap;

use crate::geometry::Point2;
use crate::parallel::parallel_map;

pub(crate) const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Scalar field driving an extraction, with its Lipschitz bound.
pub(crate) struct Field<'a> {
    pub eval: &'a (dyn Fn(Point2) -> f64 + Sync),
    pub lipschitz: f64,
}

impl Field<'_> {
    #[inline]
    pub fn at(&self, p: Point2) -> f64 {
        (self.eval)(p)
    }
}

/// Uniform lattice geometry at one subdivision depth.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Lattice {
    pub radius: f64,
    pub width: f64,
}

impl Lattice {
    pub fn new(radius: f64, depth: u32) -> Self {
        let n = 1u32 << depth;
        Lattice {
            radius,
            width: 2.0 * radius / n as f64,
        }
    }

    /// Lattice corner `(i, j)`, `0 <= i, j <= 2^depth`.
    #[inline]
    pub fn corner(&self, i: u32, j: u32) -> Point2 {
        Point2::new(
            -self.radius + i as f64 * self.width,
            -self.radius + j as f64 * self.width,
        )
    }

    /// Center of cell `(i, j)`, `0 <= i, j < 2^depth`.
    #[inline]
    pub fn center(&self, i: u32, j: u32) -> Point2 {
        Point2::new(
            -self.radius + (i as f64 + 0.5) * self.width,
            -self.radius + (j as f64 + 0.5) * self.width,
        )
    }
}

/// Key for the shared corner lattice of the final depth.
#[inline]
pub(crate) fn corner_key(i: u32, j: u32) -> u64 {
    ((i as u64) << 32) | j as u64
}

#[inline]
pub(crate) fn corner_from_key(key: u64) -> (u32, u32) {
    ((key >> 32) as u32, key as u32)
}

/// Corner keys of cell `(i, j)` in `[SW, SE, NE, NW]` order.
#[inline]
pub(crate) fn cell_corner_keys(i: u32, j: u32) -> [u64; 4] {
    [
        corner_key(i, j),
        corner_key(i + 1, j),
        corner_key(i + 1, j + 1),
        corner_key(i, j + 1),
    ]
}

/// Surviving cell at the final depth, with its center value.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LeafCell {
    pub i: u32,
    pub j: u32,
    pub center_value: f64,
}

/// A cell discarded by the Lipschitz test, at whatever depth that happened.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PrunedCell {
    pub center: Point2,
    pub half_width: f64,
    pub value: f64,
}

pub(crate) struct Refined {
    pub lattice: Lattice,
    pub leaves: Vec<LeafCell>,
    pub pruned: Vec<PrunedCell>,
    /// Field value at every corner touched by a leaf, keyed by `corner_key`.
    pub corner_values: HashMap<u64, f64>,
}

/// Subdivide to `max_depth`, pruning along the way, then evaluate the shared
/// corner lattice of the survivors. Deterministic for every `threads` value.
pub(crate) fn refine(field: &Field, radius: f64, max_depth: u32, threads: usize) -> Refined {
    // The root cell is never pruned: its circumradius spans the whole square.
    let mut frontier: Vec<(u32, u32)> = vec![(0, 0)];
    let mut pruned: Vec<PrunedCell> = Vec::new();
    let mut leaves: Vec<LeafCell> = Vec::new();

    for depth in 1..=max_depth {
        let lat = Lattice::new(radius, depth);
        let hw = 0.5 * lat.width;
        let threshold = field.lipschitz * hw * SQRT2;
        let evals: Vec<[(u32, u32, f64); 4]> = parallel_map(&frontier, threads, |&(i, j)| {
            let mut quad = [(0u32, 0u32, 0.0f64); 4];
            for (slot, (di, dj)) in [(0, 0), (1, 0), (1, 1), (0, 1)].into_iter().enumerate() {
                let (ci, cj) = (2 * i + di, 2 * j + dj);
                quad[slot] = (ci, cj, field.at(lat.center(ci, cj)));
            }
            quad
        });
        let mut next = Vec::with_capacity(2 * frontier.len());
        for quad in &evals {
            for &(ci, cj, v) in quad {
                if v.abs() > threshold {
                    pruned.push(PrunedCell {
                        center: lat.center(ci, cj),
                        half_width: hw,
                        value: v,
                    });
                } else if depth == max_depth {
                    leaves.push(LeafCell {
                        i: ci,
                        j: cj,
                        center_value: v,
                    });
                } else {
                    next.push((ci, cj));
                }
            }
        }
        frontier = next;
    }

    let lattice = Lattice::new(radius, max_depth);
    let mut keys: Vec<u64> = leaves
        .iter()
        .flat_map(|leaf| cell_corner_keys(leaf.i, leaf.j))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let values = parallel_map(&keys, threads, |&key| {
        let (i, j) = corner_from_key(key);
        field.at(lattice.corner(i, j))
    });
    let corner_values: HashMap<u64, f64> = keys.into_iter().zip(values).collect();

    Refined {
        lattice,
        leaves,
        pruned,
        corner_values,
    }
}

/// Sign class used throughout marching: exact zero counts as positive, which
/// is the deterministic tie-break that keeps corner classifications stable.
#[inline]
pub(crate) fn is_positive(v: f64) -> bool {
    v >= 0.0
}

/// Bisection for a sign change of `f` along the segment `p..q`.
///
/// `fp`, `fq` are the endpoint values; callers guarantee that their sign
/// classes differ (one `< 0`, the other `>= 0`). Shrinks the bracket until it
/// is no longer than `stop`, then returns its midpoint, so the result carries
/// `|f| <= lipschitz * stop / 2 + |root residual|` — with `stop = tol_x / 4`
/// and a 2-Lipschitz field that is `tol_x / 4`.
pub(crate) fn bisect_on_segment(
    field: &Field,
    p: Point2,
    q: Point2,
    fp: f64,
    fq: f64,
    stop: f64,
) -> Point2 {
    debug_assert_ne!(is_positive(fp), is_positive(fq));
    let (mut lo, mut hi) = if is_positive(fq) { (p, q) } else { (q, p) };
    let mut len = (q - p).norm();
    while len > stop {
        let mid = lo.lerp(hi, 0.5);
        if is_positive(field.at(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
        len *= 0.5;
    }
    lo.lerp(hi, 0.5)
}
