//! Marching squares over the surviving leaves, chain assembly, disk clipping,
//! and the canonical ordering that makes extraction output byte-reproducible.

use std::collections::{HashMap, HashSet};

use crate::geometry::Point2;
use crate::parallel::parallel_map;

use super::engine::{bisect_on_segment, cell_corner_keys, is_positive, Field, Refined};
use super::PolyChain;

// Edge keys live on the shared corner lattice, so the root of an edge crossed
// by two cells is computed once and the cells link up exactly (by key), never
// by floating-point coordinate matching.
const H_EDGE: u64 = 0;
const V_EDGE: u64 = 1 << 62;

/// Horizontal edge from corner `(i, j)` to `(i + 1, j)`.
#[inline]
fn h_edge(i: u32, j: u32) -> u64 {
    H_EDGE | ((i as u64) << 31) | j as u64
}

/// Vertical edge from corner `(i, j)` to `(i, j + 1)`.
#[inline]
fn v_edge(i: u32, j: u32) -> u64 {
    V_EDGE | ((i as u64) << 31) | j as u64
}

fn edge_endpoints(key: u64) -> ((u32, u32), (u32, u32)) {
    let i = ((key >> 31) & 0x7fff_ffff) as u32;
    let j = (key & 0x7fff_ffff) as u32;
    if key & V_EDGE == 0 {
        ((i, j), (i + 1, j))
    } else {
        ((i, j), (i, j + 1))
    }
}

/// Marching-squares segments of one straddling cell, as pairs of edge keys.
///
/// Corner order is [SW, SE, NE, NW] with sign bits SW=1, SE=2, NE=4, NW=8; a
/// set bit means `value >= 0`. The two ambiguous saddle cases are split by the
/// sign at the cell center, which the quadtree already evaluated.
fn cell_segments(
    i: u32,
    j: u32,
    case: u8,
    center_positive: bool,
    out: &mut Vec<(u64, u64)>,
) {
    let s = h_edge(i, j);
    let n = h_edge(i, j + 1);
    let w = v_edge(i, j);
    let e = v_edge(i + 1, j);
    match case {
        1 | 14 => out.push((w, s)),
        2 | 13 => out.push((s, e)),
        4 | 11 => out.push((e, n)),
        8 | 7 => out.push((n, w)),
        3 | 12 => out.push((w, e)),
        6 | 9 => out.push((s, n)),
        5 => {
            // SW, NE positive. Positive center joins them diagonally,
            // isolating SE and NW; negative center isolates SW and NE.
            if center_positive {
                out.push((s, e));
                out.push((n, w));
            } else {
                out.push((w, s));
                out.push((e, n));
            }
        }
        10 => {
            // SE, NW positive — the mirrored saddle.
            if center_positive {
                out.push((w, s));
                out.push((e, n));
            } else {
                out.push((s, e));
                out.push((n, w));
            }
        }
        0 | 15 => {}
        _ => unreachable!("4-bit marching case"),
    }
}

/// Case bits of a leaf from its corner values in [SW, SE, NE, NW] order.
pub(crate) fn corner_case(values: [f64; 4]) -> u8 {
    let mut case = 0u8;
    for (bit, v) in values.into_iter().enumerate() {
        if is_positive(v) {
            case |= 1 << bit;
        }
    }
    case
}

pub(crate) struct Assembled {
    pub chains: Vec<(Vec<Point2>, bool)>,
    pub straddle_count: usize,
}

/// March all straddling leaves, refine each crossing edge once, and link the
/// segments into maximal chains (`closed = true` for cycles).
pub(crate) fn assemble(refined: &Refined, field: &Field, stop: f64, threads: usize) -> Assembled {
    let cv = |key: u64| -> f64 { refined.corner_values[&key] };

    let mut segments: Vec<(u64, u64)> = Vec::new();
    let mut straddle_count = 0usize;
    for leaf in &refined.leaves {
        let keys = cell_corner_keys(leaf.i, leaf.j);
        let case = corner_case([cv(keys[0]), cv(keys[1]), cv(keys[2]), cv(keys[3])]);
        if case != 0 && case != 15 {
            straddle_count += 1;
            cell_segments(
                leaf.i,
                leaf.j,
                case,
                is_positive(leaf.center_value),
                &mut segments,
            );
        }
    }

    // One root per distinct crossing edge.
    let mut edge_keys: Vec<u64> = segments.iter().flat_map(|&(a, b)| [a, b]).collect();
    edge_keys.sort_unstable();
    edge_keys.dedup();
    let roots: Vec<Point2> = parallel_map(&edge_keys, threads, |&key| {
        let ((i0, j0), (i1, j1)) = edge_endpoints(key);
        let p = refined.lattice.corner(i0, j0);
        let q = refined.lattice.corner(i1, j1);
        bisect_on_segment(
            field,
            p,
            q,
            cv(corner_key_of(i0, j0)),
            cv(corner_key_of(i1, j1)),
            stop,
        )
    });
    let root_of: HashMap<u64, Point2> = edge_keys.iter().copied().zip(roots).collect();

    // Undirected adjacency between edge keys. Marching geometry guarantees
    // degree <= 2: an edge belongs to at most two cells and each straddling
    // cell uses each of its crossing edges exactly once.
    let mut adj: HashMap<u64, Vec<u64>> = HashMap::new();
    for &(a, b) in &segments {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    for (key, neighbors) in &adj {
        assert!(
            neighbors.len() <= 2,
            "marching edge {key:#x} has degree {}",
            neighbors.len()
        );
    }

    let mut nodes: Vec<u64> = adj.keys().copied().collect();
    nodes.sort_unstable();
    let mut visited: HashSet<u64> = HashSet::new();
    let mut chains: Vec<(Vec<Point2>, bool)> = Vec::new();

    let walk = |start: u64, visited: &mut HashSet<u64>| -> (Vec<u64>, bool) {
        let mut path = vec![start];
        visited.insert(start);
        let mut prev: Option<u64> = None;
        let mut cur = start;
        loop {
            let next = adj[&cur]
                .iter()
                .copied()
                .find(|&m| Some(m) != prev && m != cur);
            let Some(next) = next else {
                return (path, false);
            };
            if next == start {
                return (path, true);
            }
            if visited.contains(&next) {
                // Only reachable if the degree <= 2 invariant broke.
                return (path, false);
            }
            path.push(next);
            visited.insert(next);
            prev = Some(cur);
            cur = next;
        }
    };

    // Open chains first (from the degree-1 endpoints)…
    for &node in &nodes {
        if adj[&node].len() == 1 && !visited.contains(&node) {
            let (path, _) = walk(node, &mut visited);
            chains.push((path.iter().map(|k| root_of[k]).collect(), false));
        }
    }
    // …then whatever remains is a cycle.
    for &node in &nodes {
        if !visited.contains(&node) {
            let (path, closed) = walk(node, &mut visited);
            chains.push((path.iter().map(|k| root_of[k]).collect(), closed));
        }
    }

    Assembled {
        chains,
        straddle_count,
    }
}

#[inline]
fn corner_key_of(i: u32, j: u32) -> u64 {
    super::engine::corner_key(i, j)
}

/// Clip chains to the closed disk of radius `R`. Vertices outside are
/// dropped; every boundary crossing gets an interpolated circle vertex that is
/// then re-rooted along the circle so its residual matches interior vertices.
/// Closed chains that cross the boundary are split into open arcs.
pub(crate) fn clip_to_disk(
    chains: Vec<(Vec<Point2>, bool)>,
    radius: f64,
    field: &Field,
    cell_width: f64,
    stop: f64,
) -> Vec<(Vec<Point2>, bool)> {
    let r2 = radius * radius * (1.0 + 1e-12);
    let inside = |p: Point2| p.to_vec().norm_sq() <= r2;

    let mut out = Vec::new();
    for (vertices, closed) in chains {
        if vertices.iter().all(|&v| inside(v)) {
            out.push((vertices, closed));
            continue;
        }
        if vertices.iter().all(|&v| !inside(v)) {
            continue;
        }
        // Mixed: emit maximal inside runs with refined boundary endpoints.
        // For closed chains, rotate so the walk starts outside; the cyclic
        // pass then sees every run exactly once.
        let verts: Vec<Point2> = if closed {
            let first_out = vertices.iter().position(|&v| !inside(v)).unwrap();
            let mut rotated = vertices[first_out..].to_vec();
            rotated.extend_from_slice(&vertices[..first_out]);
            // Re-append the lead vertex so the wrap-around pair is walked.
            rotated.push(rotated[0]);
            rotated
        } else {
            vertices
        };

        let mut run: Vec<Point2> = Vec::new();
        let flush = |run: &mut Vec<Point2>, out: &mut Vec<(Vec<Point2>, bool)>| {
            if run.len() >= 2 {
                out.push((std::mem::take(run), false));
            } else {
                run.clear();
            }
        };
        for w in 0..verts.len() {
            let v = verts[w];
            if inside(v) {
                if run.is_empty() && w > 0 {
                    if let Some(z) = circle_crossing(verts[w - 1], v, radius, field, cell_width, stop)
                    {
                        run.push(z);
                    }
                }
                run.push(v);
            } else {
                if !run.is_empty() {
                    if let Some(z) = circle_crossing(verts[w - 1], v, radius, field, cell_width, stop)
                    {
                        run.push(z);
                    }
                    flush(&mut run, &mut out);
                }
            }
        }
        flush(&mut run, &mut out);
    }
    out
}

/// Intersection of segment `p..q` with the circle `|z| = radius`, refined to a
/// sign change of the field along the circle when one brackets nearby.
fn circle_crossing(
    p: Point2,
    q: Point2,
    radius: f64,
    field: &Field,
    cell_width: f64,
    stop: f64,
) -> Option<Point2> {
    let d = q - p;
    let a = d.norm_sq();
    if a == 0.0 {
        return None;
    }
    let b = 2.0 * p.to_vec().dot(d);
    let c = p.to_vec().norm_sq() - radius * radius;
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let t = [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)]
        .into_iter()
        .find(|t| (0.0..=1.0).contains(t))?;
    let z = p + d * t;

    // Re-root along the circle: the true boundary point of the level set is
    // within a couple of cells of the interpolation.
    let theta = z.y.atan2(z.x);
    let arc = 2.5 * cell_width / radius;
    let at = |t: f64| Point2::new(radius * t.cos(), radius * t.sin());
    let (pa, pb) = (at(theta - arc), at(theta + arc));
    let (fa, fb) = (field.at(pa), field.at(pb));
    if is_positive(fa) != is_positive(fb) {
        Some(bisect_on_segment_on_circle(
            field,
            radius,
            theta - arc,
            theta + arc,
            fa,
            stop,
        ))
    } else {
        Some(z)
    }
}

fn bisect_on_segment_on_circle(
    field: &Field,
    radius: f64,
    mut lo: f64,
    mut hi: f64,
    f_lo: f64,
    stop: f64,
) -> Point2 {
    // Angular bisection; `lo` keeps the sign class of `f_lo`.
    let lo_positive = is_positive(f_lo);
    let at = |t: f64| Point2::new(radius * t.cos(), radius * t.sin());
    while (hi - lo) * radius > stop {
        let mid = 0.5 * (lo + hi);
        if is_positive(field.at(at(mid))) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(0.5 * (lo + hi))
}

/// Angle of a point seen from the origin, mapped to `[0, 2*pi)`.
fn angle_02pi(p: Point2) -> f64 {
    let a = p.y.atan2(p.x);
    if a < 0.0 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

fn signed_area2(vertices: &[Point2]) -> f64 {
    let mut acc = 0.0;
    for k in 0..vertices.len() {
        let a = vertices[k];
        let b = vertices[(k + 1) % vertices.len()];
        acc += a.x * b.y - a.y * b.x;
    }
    acc
}

/// Deterministic presentation: open chains start at the endpoint with the
/// smaller angle from the +x axis (lexicographic tie-break); closed chains
/// start at their lexicographically smallest vertex and run counterclockwise.
/// Chains are then sorted by (y, x) of their first vertex.
pub(crate) fn canonicalize(mut chains: Vec<(Vec<Point2>, bool)>) -> Vec<(Vec<Point2>, bool)> {
    for (vertices, closed) in &mut chains {
        if *closed {
            if signed_area2(vertices) < 0.0 {
                vertices.reverse();
            }
            let min_idx = (0..vertices.len())
                .min_by(|&a, &b| vertices[a].lex_cmp(&vertices[b]))
                .unwrap_or(0);
            vertices.rotate_left(min_idx);
        } else if vertices.len() >= 2 {
            let first = vertices[0];
            let last = *vertices.last().unwrap();
            let (af, al) = (angle_02pi(first), angle_02pi(last));
            let start_from_last = match af.partial_cmp(&al).unwrap() {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => last.lex_cmp(&first) == std::cmp::Ordering::Less,
                std::cmp::Ordering::Less => false,
            };
            if start_from_last {
                vertices.reverse();
            }
        }
    }
    chains.sort_by(|(a, ac), (b, bc)| {
        let (pa, pb) = (a[0], b[0]);
        pa.y
            .total_cmp(&pb.y)
            .then(pa.x.total_cmp(&pb.x))
            .then(ac.cmp(bc))
            .then(a.len().cmp(&b.len()))
    });
    chains
}

/// Attach per-vertex residuals `|field(v)|`.
pub(crate) fn finish(
    chains: Vec<(Vec<Point2>, bool)>,
    field: &Field,
    threads: usize,
) -> Vec<PolyChain> {
    chains
        .into_iter()
        .map(|(vertices, closed)| {
            let residuals = parallel_map(&vertices, threads, |&v| field.at(v).abs());
            PolyChain {
                vertices,
                closed,
                residuals,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marching_case_bits_follow_corner_order() {
        assert_eq!(corner_case([1.0, -1.0, -1.0, -1.0]), 1);
        assert_eq!(corner_case([-1.0, 1.0, -1.0, -1.0]), 2);
        assert_eq!(corner_case([-1.0, -1.0, 1.0, -1.0]), 4);
        assert_eq!(corner_case([-1.0, -1.0, -1.0, 1.0]), 8);
        assert_eq!(corner_case([0.0, 0.0, 0.0, 0.0]), 15); // exact zero is positive
    }

    #[test]
    fn every_crossing_edge_is_used_once_per_cell() {
        // All 14 non-trivial cases: each crossing edge of the cell must appear
        // exactly once among the emitted segment endpoints.
        for case in 1u8..15 {
            for center_positive in [false, true] {
                let mut segs = Vec::new();
                cell_segments(3, 5, case, center_positive, &mut segs);
                let mut used: Vec<u64> = segs.iter().flat_map(|&(a, b)| [a, b]).collect();
                used.sort_unstable();
                let signs = [case & 1 != 0, case & 2 != 0, case & 4 != 0, case & 8 != 0];
                let mut expect = Vec::new();
                // [SW, SE, NE, NW] corners bound edges S, E, N, W.
                let edges = [
                    (signs[0], signs[1], h_edge(3, 5)),
                    (signs[1], signs[2], v_edge(4, 5)),
                    (signs[3], signs[2], h_edge(3, 6)),
                    (signs[0], signs[3], v_edge(3, 5)),
                ];
                for (sa, sb, key) in edges {
                    if sa != sb {
                        expect.push(key);
                    }
                }
                expect.sort_unstable();
                assert_eq!(used, expect, "case {case} center {center_positive}");
            }
        }
    }

    #[test]
    fn canonical_closed_chain_is_ccw_from_lex_min() {
        let square = vec![
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.0, 0.0),
        ];
        let out = canonicalize(vec![(square, true)]);
        let v = &out[0].0;
        assert_eq!(v[0], Point2::new(0.0, 0.0));
        assert!(signed_area2(v) > 0.0);
        assert_eq!(v[1], Point2::new(1.0, 0.0));
    }

    #[test]
    fn canonical_open_chain_starts_at_smaller_angle() {
        // Endpoints at angle pi/2 (0,4) and 3*pi/2 (0,-4): start from (0,4).
        let chain = vec![
            Point2::new(0.0, -4.0),
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 4.0),
        ];
        let out = canonicalize(vec![(chain, false)]);
        assert_eq!(out[0].0[0], Point2::new(0.0, 4.0));
    }

    #[test]
    fn clip_splits_closed_chain_crossing_boundary() {
        // A big square "chain" around a unit disk: crosses the circle 8 times.
        let n = 400;
        let mut verts = Vec::new();
        for side in 0..4 {
            for k in 0..n {
                let t = -0.9 + 1.8 * (k as f64 / n as f64);
                verts.push(match side {
                    0 => Point2::new(t, -0.9),
                    1 => Point2::new(0.9, t),
                    2 => Point2::new(-t, 0.9),
                    _ => Point2::new(-0.9, -t),
                });
            }
        }
        let eval = |_p: Point2| -1.0; // field irrelevant: no sign change on circle
        let field = Field {
            eval: &eval,
            lipschitz: 1.0,
        };
        let clipped = clip_to_disk(vec![(verts, true)], 1.0, &field, 0.01, 1e-6);
        assert_eq!(clipped.len(), 4, "four corner arcs fall outside");
        for (vertices, closed) in &clipped {
            assert!(!closed);
            assert!(vertices.iter().all(|v| v.norm() <= 1.0 + 1e-9));
            // Endpoints got interpolated onto the circle.
            assert!((vertices.first().unwrap().norm() - 1.0).abs() < 1e-9);
            assert!((vertices.last().unwrap().norm() - 1.0).abs() < 1e-9);
        }
    }
}
