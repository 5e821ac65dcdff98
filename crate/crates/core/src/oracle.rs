//! Brute-force references for the main pipeline. Nothing here reuses the
//! assembly code of [`crate::tree`] or [`crate::contour`]; these are slow
//! and meant for cross-checks.

use std::collections::HashMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{ScalarField, SphereMesh};
use crate::pl::PiecewiseLinear;
use crate::profile::{EvenProfile, HALF};
use crate::tree::{MeasuredTree, TreeFunction};

pub const MIN_MC_SAMPLES: usize = 10_000;
pub const MIN_DENSE_GRID: usize = 1001;

/// A main-path value next to its oracle value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub quantity: String,
    pub main_value: f64,
    pub oracle_value: f64,
    pub abs_deviation: f64,
    pub rel_deviation: f64,
    pub tolerance_name: String,
    pub tolerance: f64,
    pub pass: bool,
}

impl OracleReport {
    /// Passes when the absolute deviation is at most `tolerance`.
    pub fn new(quantity: &str, main_value: f64, oracle_value: f64, tolerance_name: &str, tolerance: f64) -> Self {
        let abs_deviation = (main_value - oracle_value).abs();
        let scale = main_value.abs().max(oracle_value.abs());
        let rel_deviation = if scale > 0.0 { abs_deviation / scale } else { 0.0 };
        Self {
            quantity: quantity.to_owned(),
            main_value,
            oracle_value,
            abs_deviation,
            rel_deviation,
            tolerance_name: tolerance_name.to_owned(),
            tolerance,
            pass: abs_deviation <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub area: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Monte Carlo estimate of `Area({H < t})`: triangles are drawn with
/// probability proportional to area, points uniformly inside them, and the
/// field is interpolated barycentrically.
pub fn mc_sublevel_area(mesh: &SphereMesh, field: &ScalarField, t: f64, n_samples: usize, seed: u64) -> Result<McEstimate> {
    if n_samples < MIN_MC_SAMPLES {
        return Err(Error::BadParam(format!("need at least {MIN_MC_SAMPLES} samples, got {n_samples}")));
    }
    let total = mesh.total_area();
    let pick = WeightedIndex::new(mesh.triangle_areas())
        .map_err(|e| Error::Degenerate(format!("triangle weights: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..n_samples {
        let [a, b, c] = mesh.triangles()[pick.sample(&mut rng)];
        let (r1, r2): (f64, f64) = (rng.random(), rng.random());
        let s = r1.sqrt();
        let (wa, wb, wc) = (1.0 - s, s * (1.0 - r2), s * r2);
        let v = wa * field.values[a] + wb * field.values[b] + wc * field.values[c];
        if v < t {
            hits += 1;
        }
    }
    let p = hits as f64 / n_samples as f64;
    Ok(McEstimate {
        area: p * total,
        std_error: total * (p * (1.0 - p) / n_samples as f64).sqrt(),
        samples: n_samples,
    })
}

/// Even part `(h(z) + h(−z))/2` of a function of the height on `[-1/2, 1/2]`.
pub fn analytic_height_symmetrization(h: &PiecewiseLinear) -> Result<EvenProfile> {
    let (a, b) = h.domain();
    if a != -HALF || b != HALF {
        return Err(Error::Domain {
            value: if a != -HALF { a } else { b },
            domain: "height profile must span [-1/2, 1/2]".into(),
        });
    }
    let mut zs = vec![0.0, HALF];
    for &(x, _) in h.points() {
        zs.push(x.abs());
    }
    zs.sort_by(f64::total_cmp);
    zs.dedup();
    let half = zs.iter().map(|&z| (z, 0.5 * (h.eval(z) + h.eval(-z)))).collect();
    EvenProfile::from_half(PiecewiseLinear::new(half)?)
}

/// Measure of the component of `tree − e°` that contains `from`, by a
/// plain graph search.
fn side_measure(tree: &MeasuredTree, edge: usize, from: usize) -> f64 {
    let mut seen = vec![false; tree.node_count()];
    let mut stack = vec![from];
    seen[from] = true;
    let mut total = 0.0;
    while let Some(x) = stack.pop() {
        for (id, e) in tree.edges().iter().enumerate() {
            if id == edge || (e.u != x && e.v != x) {
                continue;
            }
            let y = if e.u == x { e.v } else { e.u };
            if !seen[y] {
                seen[y] = true;
                total += e.measure;
                stack.push(y);
            }
        }
    }
    total
}

fn interpolate(points: &[(f64, f64)], s: f64) -> f64 {
    if s <= points[0].0 {
        return points[0].1;
    }
    for w in points.windows(2) {
        if s <= w[1].0 {
            let t = (s - w[0].0) / (w[1].0 - w[0].0);
            return w[0].1 + t * (w[1].1 - w[0].1);
        }
    }
    points[points.len() - 1].1
}

/// The three-interval formula for one endpoint: constant `near` up to
/// `-1/2 + a`, the profile stretched over `[-1/2 + a, 1/2 − b]`, then `far`.
fn three_interval(z: f64, a: f64, b: f64, points: &[(f64, f64)], mu: f64) -> f64 {
    let (left, right) = (-HALF + a, HALF - b);
    if z <= left {
        points[0].1
    } else if z >= right {
        points[points.len() - 1].1
    } else {
        interpolate(points, (z - left) / (right - left) * mu)
    }
}

/// Samples `Σ(h)` on `n_grid` equally spaced points of `[-1/2, 1/2]` by
/// evaluating, for every edge and point, both endpoint formulas directly.
pub fn dense_grid_symmetrize(tree: &MeasuredTree, h: &TreeFunction, n_grid: usize) -> Result<Vec<(f64, f64)>> {
    if n_grid < MIN_DENSE_GRID {
        return Err(Error::BadParam(format!("dense grid needs at least {MIN_DENSE_GRID} points")));
    }
    // mean of h by trapezoids, recomputed here
    let mean: f64 = h
        .profiles()
        .iter()
        .flat_map(|p| p.points().windows(2).map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1)))
        .sum();
    let grid: Vec<f64> = (0..n_grid)
        .map(|i| if i + 1 == n_grid { HALF } else { -HALF + i as f64 / (n_grid - 1) as f64 })
        .collect();
    let mut out: Vec<(f64, f64)> = grid.iter().map(|&z| (z, 0.0)).collect();
    for (id, e) in tree.edges().iter().enumerate() {
        let a = side_measure(tree, id, e.u);
        let b = side_measure(tree, id, e.v);
        let fwd: Vec<(f64, f64)> = h.profile(id).points().iter().map(|&(s, y)| (s, y - mean)).collect();
        let bwd: Vec<(f64, f64)> = fwd.iter().rev().map(|&(s, y)| (e.measure - s, y)).collect();
        let (hu, hv) = (fwd[0].1, fwd[fwd.len() - 1].1);
        let on_edge: f64 = fwd.windows(2).map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1)).sum();
        let edge_mean = a * hu + on_edge + b * hv;
        for (z, acc) in out.iter_mut() {
            let from_u = three_interval(*z, a, b, &fwd, e.measure);
            let from_v = three_interval(*z, b, a, &bwd, e.measure);
            *acc += 0.5 * (from_u + from_v) - edge_mean;
        }
    }
    Ok(out)
}

/// Connected components of the level set `{H = t}` for a value `t` that is
/// not a vertex value: crossing mesh edges are joined through the triangles
/// that contain them.
pub fn level_set_components(mesh: &SphereMesh, field: &ScalarField, t: f64) -> usize {
    let f = &field.values;
    let crosses = |a: usize, b: usize| (f[a] < t) != (f[b] < t);
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for &[a, b, c] in mesh.triangles() {
        for (x, y) in [(a, b), (b, c), (c, a)] {
            if crosses(x, y) {
                let n = index.len();
                index.entry(key(x, y)).or_insert(n);
            }
        }
    }
    let mut parent: Vec<usize> = (0..index.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &[a, b, c] in mesh.triangles() {
        let hit: Vec<usize> = [(a, b), (b, c), (c, a)]
            .into_iter()
            .filter(|&(x, y)| crosses(x, y))
            .map(|(x, y)| index[&key(x, y)])
            .collect();
        if let [p, q] = hit[..] {
            let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
            parent[rp] = rq;
        }
    }
    (0..parent.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// Number of tree edges whose value span strictly contains `t`.
pub fn edges_spanning(tree: &MeasuredTree, node_values: &[f64], t: f64) -> usize {
    tree.edges()
        .iter()
        .filter(|e| {
            let (a, b) = (node_values[e.u], node_values[e.v]);
            a.min(b) < t && t < a.max(b)
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contour::sublevel_area;
    use crate::mesh::{builtin_field, make_icosphere, FieldSpec};
    use crate::tree::tests::elem_ex;
    use crate::tree::{random_tree, symmetrize_tree, TreeEdge};

    #[test]
    fn report_fields_consistent() {
        let r = OracleReport::new("x", 1.0, 1.5, "tol", 0.1);
        assert_eq!(r.abs_deviation, 0.5);
        assert!((r.rel_deviation - 1.0 / 3.0).abs() < 1e-15);
        assert!(!r.pass);
    }

    #[test]
    fn mc_matches_exact_area() {
        let m = make_icosphere(3).unwrap();
        let f = builtin_field(&m, &FieldSpec::named("double_bump")).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..5 {
            let t = rng.random_range(f.min()..f.max());
            let mc = mc_sublevel_area(&m, &f, t, 40_000, i).unwrap();
            let exact = sublevel_area(&m, &f, t);
            assert!((mc.area - exact).abs() <= 4.0 * mc.std_error + 1e-12, "t={t}");
        }
        assert_eq!(mc_sublevel_area(&m, &f, f.min() - 1.0, 10_000, 1).unwrap().area, 0.0);
    }

    #[test]
    fn analytic_even_parts() {
        let odd = PiecewiseLinear::sample(-HALF, HALF, 100, |z| z);
        assert!(analytic_height_symmetrization(&odd).unwrap().sup_abs() < 1e-16);
        let q = |z: f64| z * z - 1.0 / 12.0;
        let even = PiecewiseLinear::sample(-HALF, HALF, 100, q);
        let u = analytic_height_symmetrization(&even).unwrap();
        assert!(u.breakpoints().iter().all(|&(z, v)| (v - q(z)).abs() < 1e-15));
        let mixed = PiecewiseLinear::sample(-HALF, HALF, 100, |z| z * z * z + q(z));
        let u = analytic_height_symmetrization(&mixed).unwrap();
        assert!(u.breakpoints().iter().all(|&(z, v)| (v - q(z)).abs() < 1e-15));
    }

    #[test]
    fn dense_grid_elem_ex() {
        let (tree, h) = elem_ex();
        let s = dense_grid_symmetrize(&tree, &h, 1001).unwrap();
        assert!(s.iter().all(|&(z, v)| (v - (1.0 - 4.0 * z.abs())).abs() < 1e-10));
    }

    #[test]
    fn dense_grid_matches_main_path() {
        let (tree, h) = random_tree(3, 8);
        let u = symmetrize_tree(&tree, &h).unwrap();
        let s = dense_grid_symmetrize(&tree, &h, 1001).unwrap();
        let dev = s.iter().map(|&(z, v)| (v - u.value_at(z)).abs()).fold(0.0, f64::max);
        assert!(dev < 1e-9, "{dev}");
    }

    #[test]
    fn dense_grid_odd_edge() {
        let tree = MeasuredTree::new(2, vec![TreeEdge { u: 0, v: 1, measure: 1.0 }]).unwrap();
        let h = TreeFunction::linear(&tree, vec![0.3, -0.3]).unwrap();
        let s = dense_grid_symmetrize(&tree, &h, 1001).unwrap();
        assert!(s.iter().all(|&(_, v)| v.abs() < 1e-12));
    }

    #[test]
    fn flood_fill_counts() {
        let m = make_icosphere(3).unwrap();
        let f = builtin_field(&m, &FieldSpec::named("double_bump")).unwrap();
        assert_eq!(level_set_components(&m, &f, f.max() + 1.0), 0);
        let h = builtin_field(&m, &FieldSpec::named("height_z")).unwrap();
        assert_eq!(level_set_components(&m, &h, 0.0123), 1);
    }
}
