//! Experimental analysis on extracted midsets: Hausdorff distances, conic
//! reduction residuals, continuity-under-perturbation experiments, and
//! component structure reports.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::extraction::{extract_midset, ExtractOptions, PolyChain};
use crate::geometry::{FocalSet, Point2, Primitive, Vec2};
use crate::scene::Scene;

/// Hausdorff distance between two finite point sets.
pub fn hausdorff_distance(p: &[Point2], q: &[Point2]) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::EmptyInput("first point set"));
    }
    if q.is_empty() {
        return Err(Error::EmptyInput("second point set"));
    }
    Ok(directed_sq(p, q).max(directed_sq(q, p)).sqrt())
}

/// Squared directed Hausdorff distance `max_p min_q |p - q|^2`, with the
/// usual early break once a candidate beats the current maximum.
fn directed_sq(p: &[Point2], q: &[Point2]) -> f64 {
    let mut worst = 0.0f64;
    for &a in p {
        let mut best = f64::INFINITY;
        for &b in q {
            let d = a.dist_sq(b);
            if d < best {
                best = d;
                if best <= worst {
                    break;
                }
            }
        }
        worst = worst.max(best);
    }
    worst
}

/// Which two-focus combination a conic constraint uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    /// `dist(x, f1) + dist(x, f2) = constant` (ellipse).
    Sum,
    /// `dist(x, f1) - dist(x, f2) = constant`, signed (hyperbola branch;
    /// zero gives the perpendicular bisector line).
    Difference,
}

impl ConicKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConicKind::Sum => "sum",
            ConicKind::Difference => "difference",
        }
    }
}

/// A nondegenerate two-focus conic constraint to test extracted chains
/// against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicSpec {
    pub kind: ConicKind,
    pub focus1: Point2,
    pub focus2: Point2,
    pub constant: f64,
}

impl ConicSpec {
    /// Validates nondegeneracy: a sum constant must exceed the focal
    /// distance, a difference constant must be smaller in magnitude.
    pub fn new(kind: ConicKind, focus1: Point2, focus2: Point2, constant: f64) -> Result<Self> {
        if !(focus1.is_finite() && focus2.is_finite() && constant.is_finite()) {
            return Err(Error::InvalidInput("conic spec must be finite".into()));
        }
        let fd = focus1.dist(focus2);
        if fd == 0.0 {
            return Err(Error::InvalidInput("conic foci coincide".into()));
        }
        match kind {
            ConicKind::Sum if constant <= fd => {
                return Err(Error::InvalidInput(format!(
                    "sum constant {constant} must exceed focal distance {fd}"
                )));
            }
            ConicKind::Difference if constant.abs() >= fd => {
                return Err(Error::InvalidInput(format!(
                    "difference constant {constant} must be below focal distance {fd} in magnitude"
                )));
            }
            _ => {}
        }
        Ok(Self {
            kind,
            focus1,
            focus2,
            constant,
        })
    }

    /// Signed constraint value at `x` minus the constant.
    #[inline]
    pub fn defect(&self, x: Point2) -> f64 {
        let d1 = x.dist(self.focus1);
        let d2 = x.dist(self.focus2);
        match self.kind {
            ConicKind::Sum => d1 + d2 - self.constant,
            ConicKind::Difference => d1 - d2 - self.constant,
        }
    }
}

/// Largest absolute constraint defect over the chain's vertices; `0.0` for an
/// empty chain.
pub fn conic_residual(chain: &PolyChain, spec: &ConicSpec) -> f64 {
    chain
        .vertices
        .iter()
        .map(|&v| spec.defect(v).abs())
        .fold(0.0, f64::max)
}

/// How the second focal set is perturbed in a continuity experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbMode {
    /// Rigid translation by `delta` along +x.
    Translate,
    /// Every defining point moves by an independent uniform sample from the
    /// disk of radius `delta` (circle and disk radii are kept).
    Jitter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    /// Perturbed scene validated and was extracted.
    Ok,
    /// Perturbed scene failed validation (overlap or disk overflow);
    /// `dh_midsets` is NaN.
    Rejected,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Rejected => "rejected",
        }
    }
}

/// One perturbation magnitude's outcome.
#[derive(Debug, Clone, Copy)]
pub struct ContinuityRow {
    pub delta: f64,
    /// Hausdorff distance between base and perturbed focal boundaries
    /// (pooled boundary samples of both sets).
    pub dh_focals: f64,
    /// Hausdorff distance between base and perturbed midset vertices.
    pub dh_midsets: f64,
    pub status: RowStatus,
}

/// Boundary samples per primitive used for the focal-distance column.
const FOCAL_SAMPLES: usize = 256;

/// Perturb `scene.b` at each magnitude in `deltas` (nonincreasing, as a
/// convergence schedule), re-extract, and measure how far the midset moved.
///
/// Jitter draws are seeded per row (`seed + row index`), so a row's offsets
/// do not depend on how many rows precede it.
pub fn continuity_experiment(
    scene: &Scene,
    deltas: &[f64],
    mode: PerturbMode,
    seed: u64,
    opts: &ExtractOptions,
) -> Result<Vec<ContinuityRow>> {
    if deltas.is_empty() {
        return Err(Error::EmptyInput("deltas"));
    }
    for w in deltas.windows(2) {
        if !(w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "deltas must be nonincreasing".into(),
            ));
        }
    }
    if !deltas.iter().all(|d| d.is_finite() && *d >= 0.0) {
        return Err(Error::InvalidInput(
            "deltas must be finite and nonnegative".into(),
        ));
    }

    let base_extraction = extract_midset(scene, opts)?;
    let base_vertices = base_extraction.all_vertices();
    let mut base_pool = scene.a.sample_boundary(FOCAL_SAMPLES);
    base_pool.extend(scene.b.sample_boundary(FOCAL_SAMPLES));

    let mut rows = Vec::with_capacity(deltas.len());
    for (row, &delta) in deltas.iter().enumerate() {
        let mut rng = ChaCha12Rng::seed_from_u64(seed.wrapping_add(row as u64));
        let b_pert = perturb_focal(&scene.b, delta, mode, &mut rng)?;

        let mut pert_pool = scene.a.sample_boundary(FOCAL_SAMPLES);
        pert_pool.extend(b_pert.sample_boundary(FOCAL_SAMPLES));
        let dh_focals = hausdorff_distance(&base_pool, &pert_pool)?;

        let pert_scene = Scene::with_tolerances(
            scene.a.clone(),
            b_pert,
            scene.radius,
            scene.tol_x,
            scene.tol_gap,
        )
        .and_then(|s| s.with_geom(scene.geom));
        let (dh_midsets, status) = match pert_scene {
            Ok(s) => {
                let pert_vertices = extract_midset(&s, opts)?.all_vertices();
                if base_vertices.is_empty() || pert_vertices.is_empty() {
                    (f64::NAN, RowStatus::Rejected)
                } else {
                    (
                        hausdorff_distance(&base_vertices, &pert_vertices)?,
                        RowStatus::Ok,
                    )
                }
            }
            Err(_) => (f64::NAN, RowStatus::Rejected),
        };
        rows.push(ContinuityRow {
            delta,
            dh_focals,
            dh_midsets,
            status,
        });
    }
    Ok(rows)
}

fn perturb_focal(
    f: &FocalSet,
    delta: f64,
    mode: PerturbMode,
    rng: &mut ChaCha12Rng,
) -> Result<FocalSet> {
    let primitives = f
        .primitives
        .iter()
        .map(|p| match mode {
            PerturbMode::Translate => translate_primitive(p, Vec2::new(delta, 0.0)),
            PerturbMode::Jitter => jitter_primitive(p, delta, rng),
        })
        .collect::<Result<Vec<_>>>()?;
    FocalSet::new(f.label.clone(), primitives)
}

fn translate_primitive(p: &Primitive, v: Vec2) -> Result<Primitive> {
    Ok(match p {
        Primitive::Dot(a) => Primitive::Dot(*a + v),
        Primitive::Segment { p, q } => Primitive::Segment {
            p: *p + v,
            q: *q + v,
        },
        Primitive::Circle { center, radius } => Primitive::Circle {
            center: *center + v,
            radius: *radius,
        },
        Primitive::Disk { center, radius } => Primitive::Disk {
            center: *center + v,
            radius: *radius,
        },
        Primitive::PolyLine { vertices, closed } => Primitive::PolyLine {
            vertices: vertices.iter().map(|x| *x + v).collect(),
            closed: *closed,
        },
    })
}

/// Uniform sample from the closed disk of radius `delta` (rejection from the
/// square; zero draws when `delta == 0`).
fn disk_offset(delta: f64, rng: &mut ChaCha12Rng) -> Vec2 {
    if delta == 0.0 {
        return Vec2::new(0.0, 0.0);
    }
    loop {
        let x: f64 = rng.random_range(-1.0..=1.0);
        let y: f64 = rng.random_range(-1.0..=1.0);
        if x * x + y * y <= 1.0 {
            return Vec2::new(x * delta, y * delta);
        }
    }
}

fn jitter_primitive(p: &Primitive, delta: f64, rng: &mut ChaCha12Rng) -> Result<Primitive> {
    match p {
        Primitive::Dot(a) => Ok(Primitive::Dot(*a + disk_offset(delta, rng))),
        Primitive::Segment { p, q } => {
            let p2 = *p + disk_offset(delta, rng);
            let q2 = *q + disk_offset(delta, rng);
            Primitive::segment(p2, q2)
        }
        Primitive::Circle { center, radius } => Ok(Primitive::Circle {
            center: *center + disk_offset(delta, rng),
            radius: *radius,
        }),
        Primitive::Disk { center, radius } => Ok(Primitive::Disk {
            center: *center + disk_offset(delta, rng),
            radius: *radius,
        }),
        Primitive::PolyLine { vertices, closed } => {
            let moved = vertices
                .iter()
                .map(|v| *v + disk_offset(delta, rng))
                .collect();
            Primitive::polyline(moved, *closed)
        }
    }
}

/// Summary of one connected component of the extracted midset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentReport {
    pub component_id: usize,
    /// True exactly when the component is a single closed chain.
    pub closed: bool,
    pub vertex_count: usize,
    /// Closest approach of the component to each focal set.
    pub min_dist_a: f64,
    pub min_dist_b: f64,
    /// Vertices whose surrounding ring (radius `8 * tol_x`, 64 probes) fails
    /// to show the gap changing sign — evidence of interior rather than
    /// curve-like structure, or of a vertex pressed against the disk edge.
    pub interior_violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    pub components: Vec<ComponentReport>,
}

/// Probes per ring in the interior check.
const RING_PROBES: usize = 64;

/// Group chains into connected components (open-chain endpoints within
/// `4 * tol_x` are considered joined; closed chains stand alone) and report
/// per-component statistics.
pub fn structure_report(scene: &Scene, chains: &[PolyChain]) -> StructureReport {
    let join_tol = 4.0 * scene.tol_x;
    let n = chains.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        if chains[i].closed || chains[i].vertices.is_empty() {
            continue;
        }
        for j in (i + 1)..n {
            if chains[j].closed || chains[j].vertices.is_empty() {
                continue;
            }
            let ei = [chains[i].vertices[0], *chains[i].vertices.last().unwrap()];
            let ej = [chains[j].vertices[0], *chains[j].vertices.last().unwrap()];
            let touching = ei
                .iter()
                .any(|a| ej.iter().any(|b| a.dist(*b) <= join_tol));
            if touching {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj.max(ri)] = rj.min(ri);
                }
            }
        }
    }

    // Components keyed by root, ordered by smallest member chain index.
    let mut component_of_root: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match component_of_root.iter_mut().find(|(root, _)| *root == r) {
            Some((_, members)) => members.push(i),
            None => component_of_root.push((r, vec![i])),
        }
    }
    component_of_root.sort_by_key(|(root, _)| *root);

    let components = component_of_root
        .iter()
        .enumerate()
        .map(|(component_id, (_, members))| {
            let closed = members.len() == 1 && chains[members[0]].closed;
            let mut vertex_count = 0;
            let mut min_dist_a = f64::INFINITY;
            let mut min_dist_b = f64::INFINITY;
            let mut interior_violations = 0;
            for &m in members {
                for &v in &chains[m].vertices {
                    vertex_count += 1;
                    min_dist_a = min_dist_a.min(scene.a.distance(v));
                    min_dist_b = min_dist_b.min(scene.b.distance(v));
                    if !ring_sees_both_signs(scene, v) {
                        interior_violations += 1;
                    }
                }
            }
            ComponentReport {
                component_id,
                closed,
                vertex_count,
                min_dist_a,
                min_dist_b,
                interior_violations,
            }
        })
        .collect();
    StructureReport { components }
}

/// Probe a ring of radius `8 * tol_x` around `v`: a curve point must have
/// strictly positive and strictly negative gap values nearby.
fn ring_sees_both_signs(scene: &Scene, v: Point2) -> bool {
    let r = 8.0 * scene.tol_x;
    let mut pos = false;
    let mut neg = false;
    for k in 0..RING_PROBES {
        let th = 2.0 * std::f64::consts::PI * (k as f64) / (RING_PROBES as f64);
        let g = scene.gap(Point2::new(v.x + r * th.cos(), v.y + r * th.sin()));
        pos |= g > 0.0;
        neg |= g < 0.0;
        if pos && neg {
            return true;
        }
    }
    false
}
