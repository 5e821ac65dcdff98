//! The verification suite: twelve numbered checks over the symmetrization
//! calculus, the mesh pipeline and the bound calculators. Used by the
//! `verify` command and by the acceptance test.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    classify, holder_bound, period_profile, profile_hofer_bound, sikorav_estimate, Verdict, DEFAULT_B_GRID,
    DEFAULT_K_MAX, HOFER_BOUND, MESH_TOL_FRACTION,
};
use crate::contour::{build_contour_tree, critical_points, ContourTree};
use crate::error::Result;
use crate::flatten::{check_flattening_bound, make_admissible_flattening, tree_critical_values};
use crate::mesh::{builtin_field, make_icosphere, FieldSpec, BUILTIN_FIELDS};
use crate::contour::sublevel_area;
use crate::oracle::{
    analytic_height_symmetrization, dense_grid_symmetrize, edges_spanning, level_set_components, mc_sublevel_area,
    OracleReport,
};
use crate::pl::PiecewiseLinear;
use crate::profile::{inner_radius, EvenProfile, LinkSpec, HALF};
use crate::tree::{
    count_reeb_edges, path_example, random_function, random_tree, symmetrize_tree, MeasuredTree, NodeKind, TreeEdge,
    TreeFunction,
};

/// Outcome of one check. `measured` is the worst observed value of the
/// checked quantity and `tolerance` its limit; checks with several parts
/// report the part closest to failing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
    pub elapsed_ms: f64,
    /// Wall-clock budget; `None` when the check has no timing requirement.
    pub budget_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub quick: bool,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Sizes of the randomized parts; the quick suite shrinks them.
#[derive(Debug, Clone, Copy)]
struct Sizes {
    trees: u64,
    lipschitz_pairs: u64,
    flattenings: u64,
    profiles: u64,
    levels: &'static [u32],
    structure_level: u32,
}

const FULL: Sizes = Sizes {
    trees: 200,
    lipschitz_pairs: 50,
    flattenings: 100,
    profiles: 20,
    levels: &[3, 4, 5],
    structure_level: 5,
};

const QUICK: Sizes = Sizes {
    trees: 40,
    lipschitz_pairs: 10,
    flattenings: 20,
    profiles: 5,
    levels: &[3, 4, 5],
    structure_level: 4,
};

pub const CHECK_NAMES: [&str; 12] = [
    "worked_examples",
    "oracle_equivalence",
    "mean_zero_and_linearity",
    "lipschitz",
    "oscillation",
    "flattening_control",
    "link_reconstruction",
    "mesh_convergence",
    "dichotomy",
    "contour_tree_structure",
    "period_identity",
    "bound_calculators",
];

type CheckFn = fn(Sizes, u64) -> Result<Part>;

/// Runs every check. `fault` names a check whose result is forced to fail.
pub fn run_suite(quick: bool, seed: u64, fault: Option<&str>) -> SuiteReport {
    let sizes = if quick { QUICK } else { FULL };
    let runs: [(CheckFn, Option<f64>); 12] = [
        (worked_examples, Some(100.0)),
        (oracle_equivalence, Some(30_000.0)),
        (mean_zero_and_linearity, None),
        (lipschitz, None),
        (oscillation, None),
        (flattening_control, None),
        (link_reconstruction, None),
        (mesh_convergence, Some(60_000.0)),
        (dichotomy, None),
        (contour_tree_structure, None),
        (period_identity, None),
        (bound_calculators, Some(1.0)),
    ];
    let checks: Vec<Check> = runs
        .iter()
        .enumerate()
        .map(|(i, &(f, budget_ms))| {
            let name = CHECK_NAMES[i];
            let start = Instant::now();
            let part = f(sizes, seed);
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let mut check = match part {
                Ok(p) => Check {
                    id: i as u8 + 1,
                    name: name.to_owned(),
                    pass: p.pass,
                    measured: p.measured,
                    tolerance: p.tolerance,
                    detail: p.detail,
                    elapsed_ms,
                    budget_ms,
                },
                Err(e) => Check {
                    id: i as u8 + 1,
                    name: name.to_owned(),
                    pass: false,
                    measured: f64::NAN,
                    tolerance: f64::NAN,
                    detail: format!("error: {e}"),
                    elapsed_ms,
                    budget_ms,
                },
            };
            if budget_ms.is_some_and(|b| elapsed_ms > b) {
                check.pass = false;
                check.detail.push_str(&format!("; over time budget ({elapsed_ms:.1} ms)"));
            }
            if fault.is_some_and(|f| f == name || f == "all") {
                check.pass = false;
                check.detail.push_str("; injected fault");
            }
            check
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    SuiteReport { quick, checks, pass }
}

struct Part {
    pass: bool,
    measured: f64,
    tolerance: f64,
    detail: String,
}

impl Part {
    fn le(measured: f64, tolerance: f64, detail: String) -> Self {
        Self {
            pass: measured <= tolerance,
            measured,
            tolerance,
            detail,
        }
    }

    /// Combines parts: passes when all do, reports the worst ratio.
    fn all(parts: Vec<Part>) -> Self {
        let pass = parts.iter().all(|p| p.pass);
        let worst = parts
            .iter()
            .max_by(|a, b| ratio(a).total_cmp(&ratio(b)))
            .expect("at least one part");
        let detail = parts.iter().map(|p| p.detail.as_str()).collect::<Vec<_>>().join("; ");
        Self {
            pass,
            measured: worst.measured,
            tolerance: worst.tolerance,
            detail,
        }
    }
}

fn ratio(p: &Part) -> f64 {
    if !p.pass {
        return f64::INFINITY;
    }
    if p.tolerance > 0.0 {
        p.measured / p.tolerance
    } else {
        0.0
    }
}

/// Sup of `|u − f|` over the breakpoints of `u` and a uniform grid.
fn sup_deviation(u: &EvenProfile, f: impl Fn(f64) -> f64) -> f64 {
    let grid = (0..=2000).map(|i| HALF * i as f64 / 2000.0);
    u.breakpoints()
        .iter()
        .map(|p| p.0)
        .chain(grid)
        .map(|z| (u.value_at(z) - f(z)).abs())
        .fold(0.0, f64::max)
}

/// The single-edge function `s² − 1/3` (sampled densely, then centred exactly).
pub fn single_edge_quadratic() -> (MeasuredTree, TreeFunction) {
    let tree = MeasuredTree::new(2, vec![TreeEdge { u: 0, v: 1, measure: 1.0 }]).expect("one edge");
    let p = PiecewiseLinear::sample(0.0, 1.0, 1 << 18, |s| s * s);
    let p = p.shift(-p.integral());
    let h = TreeFunction::new(&tree, vec![p.first_value(), p.last_value()], vec![p]).expect("consistent");
    (tree, h)
}

fn random_trees(sizes: Sizes, seed: u64) -> impl Iterator<Item = (u64, MeasuredTree, TreeFunction)> {
    (0..sizes.trees).map(move |i| {
        let s = seed.wrapping_mul(1000).wrapping_add(i);
        let (t, h) = random_tree(s, 1 + (i as usize % 15));
        (s, t, h)
    })
}

fn worked_examples(_: Sizes, _: u64) -> Result<Part> {
    let (tree, h) = path_example();
    let tent = sup_deviation(&symmetrize_tree(&tree, &h)?, |z| 1.0 - 4.0 * z);
    let (tree, h) = single_edge_quadratic();
    let quad = sup_deviation(&symmetrize_tree(&tree, &h)?, |z| z * z - 1.0 / 12.0);
    Ok(Part::all(vec![
        Part::le(tent, 1e-11, format!("path example vs 1 − 4|z|: {tent:.2e}")),
        Part::le(quad, 1e-11, format!("s² − 1/3 vs z² − 1/12: {quad:.2e}")),
    ]))
}

fn oracle_equivalence(sizes: Sizes, seed: u64) -> Result<Part> {
    let mut worst: f64 = 0.0;
    for (_, tree, h) in random_trees(sizes, seed) {
        let u = symmetrize_tree(&tree, &h)?;
        for (z, v) in dense_grid_symmetrize(&tree, &h, 1001)? {
            worst = worst.max((u.value_at(z) - v).abs());
        }
    }
    Ok(Part::le(worst, 1e-9, format!("{} trees, worst grid deviation {worst:.2e}", sizes.trees)))
}

fn mean_zero_and_linearity(sizes: Sizes, seed: u64) -> Result<Part> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11);
    let (mut mean, mut lin): (f64, f64) = (0.0, 0.0);
    for (s, tree, h) in random_trees(sizes, seed) {
        let g = random_function(&tree, s);
        let (a, b) = (rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let uh = symmetrize_tree(&tree, &h)?;
        let ug = symmetrize_tree(&tree, &g)?;
        mean = mean.max(uh.integral().abs());
        let lhs = symmetrize_tree(&tree, &h.combine(a, &g, b))?;
        lin = lin.max(lhs.sup_distance(&uh.scale(a).add(&ug.scale(b))));
    }
    Ok(Part::all(vec![
        Part::le(mean, 1e-10, format!("max |∫Σ| {mean:.2e}")),
        Part::le(lin, 1e-11, format!("max linearity deviation {lin:.2e}")),
    ]))
}

fn lipschitz(sizes: Sizes, seed: u64) -> Result<Part> {
    let mut violations = 0usize;
    let mut worst_excess = f64::NEG_INFINITY;
    for i in 0..sizes.lipschitz_pairs {
        let s = seed.wrapping_mul(7919).wrapping_add(i);
        let (tree, h) = random_tree(s, 1 + (i as usize % 15));
        let g = random_function(&tree, s + 1);
        let d = symmetrize_tree(&tree, &h)?.sub(&symmetrize_tree(&tree, &g)?);
        let dist = h.sup_distance(&g);
        for k in 2..=10usize {
            let lhs = d.half().sup_abs_on(0.0, inner_radius(k));
            let excess = lhs - (k as f64 - 1.0) * dist;
            worst_excess = worst_excess.max(excess);
            if excess > 1e-10 {
                violations += 1;
            }
        }
    }
    Ok(Part {
        pass: violations == 0,
        measured: violations as f64,
        tolerance: 0.0,
        detail: format!(
            "{} pairs × k = 2..10: {violations} violations, worst lhs − rhs {worst_excess:.3e}",
            sizes.lipschitz_pairs
        ),
    })
}

fn oscillation(sizes: Sizes, seed: u64) -> Result<Part> {
    let mut worst = f64::NEG_INFINITY;
    for (_, tree, h) in random_trees(sizes, seed) {
        let u = symmetrize_tree(&tree, &h)?;
        worst = worst.max(u.osc() - count_reeb_edges(&tree) as f64 * h.osc());
    }
    Ok(Part::le(worst, 1e-10, format!("max osc(Σ) − e·osc(h) = {worst:.3e}")))
}

/// Starting deviation of the halving sequence, relative to `osc(h)`.
pub const FLATTENING_DELTA0: f64 = 0.02;

fn flattening_control(sizes: Sizes, seed: u64) -> Result<Part> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x66);
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for i in 0..sizes.flattenings {
        let s = seed.wrapping_mul(31).wrapping_add(i);
        let (tree, h) = random_tree(s, 1 + (i as usize % 15));
        let delta = rng.random_range(0.01..0.5);
        let r = make_admissible_flattening(&tree_critical_values(&h), delta)?;
        let b = check_flattening_bound(&tree, &h, &r)?;
        if !b.pass || !r.admissibility().holds() {
            failures += 1;
        }
        if b.rhs > 0.0 {
            worst = worst.max(b.lhs / b.rhs);
        }
    }
    let bounds = Part {
        pass: failures == 0,
        measured: failures as f64,
        tolerance: 0.0,
        detail: format!("{} flattenings, {failures} failures, max lhs/rhs {worst:.3}", sizes.flattenings),
    };

    // halving δ: deviations must not grow and must end small
    let (tree, h) = random_tree(seed.wrapping_add(4242), 6);
    let ks = tree_critical_values(&h);
    let mut devs = Vec::new();
    for j in 0..=5 {
        let delta = FLATTENING_DELTA0 * h.osc() / f64::from(1u32 << j);
        let r = make_admissible_flattening(&ks, delta)?;
        devs.push(check_flattening_bound(&tree, &h, &r)?.lhs);
    }
    let growth = devs.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    let target = 1e-3 * h.osc();
    let last = *devs.last().expect("six values");
    let monotone = Part::le(growth, 1e-12, format!("max step increase {growth:.2e}"));
    let converged = Part::le(last, target, format!("final deviation {last:.3e} (target {target:.3e})"));
    Ok(Part::all(vec![bounds, monotone, converged]))
}

fn random_profile(rng: &mut ChaCha8Rng) -> EvenProfile {
    let n = rng.random_range(2..10);
    let mut zs: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..HALF)).collect();
    zs.push(0.0);
    zs.push(HALF);
    zs.sort_by(f64::total_cmp);
    zs.dedup();
    let pts = zs.into_iter().map(|z| (z, rng.random_range(-1.0..1.0))).collect();
    EvenProfile::from_half(PiecewiseLinear::new(pts).expect("sorted")).expect("spans [0, 1/2]")
}

fn link_reconstruction(sizes: Sizes, seed: u64) -> Result<Part> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x77);
    let (mut recon, mut comb): (f64, f64) = (0.0, 0.0);
    let mut multiset_ok = true;
    for _ in 0..sizes.profiles {
        let u = random_profile(&mut rng);
        for _ in 0..50 {
            let k = rng.random_range(3..=12usize);
            let r = inner_radius(k);
            let z = rng.random_range(-r..r) * 0.999;
            recon = recon.max((u.reconstruct_via_links(z, k)? - u.value_at(z)).abs());

            let b = rng.random_range(1.0 / 3.0..HALF);
            let (Ok(l3), Ok(l2)) = (LinkSpec::new(3, b), LinkSpec::new(2, b)) else { continue };
            let l1 = LinkSpec::equator();
            let v = 3.0 * u.link_average(&l3) - 2.0 * u.link_average(&l2) - u.link_average(&l1);
            comb = comb.max(v.abs());
            let mut lhs = l3.points();
            let mut rhs = l2.points();
            rhs.extend(l1.points());
            lhs.sort_by(f64::total_cmp);
            rhs.sort_by(f64::total_cmp);
            multiset_ok &= lhs.iter().zip(&rhs).all(|(a, b)| (a - b).abs() < 1e-15);
        }
    }
    Ok(Part::all(vec![
        Part::le(recon, 1e-10, format!("max reconstruction error {recon:.2e}")),
        Part::le(comb, 1e-10, format!("max |3·L3 − 2·L2 − L1| {comb:.2e}")),
        Part {
            pass: multiset_ok,
            measured: 0.0,
            tolerance: 0.0,
            detail: format!("point multisets match: {multiset_ok}"),
        },
    ]))
}

/// `‖Σ‖∞/osc(H)` for an odd field, or the deviation from the even answer.
fn mesh_error(n: u32, name: &str) -> Result<f64> {
    let mesh = make_icosphere(n)?;
    let field = builtin_field(&mesh, &FieldSpec::named(name))?;
    let ct = build_contour_tree(&mesh, &field)?;
    let u = ct.symmetrize()?;
    let err = if name == "quadratic_z" {
        let h = PiecewiseLinear::sample(-HALF, HALF, 4096, |z| z * z - 1.0 / 12.0);
        let exact = analytic_height_symmetrization(&h)?;
        sup_deviation(&u, |z| exact.value_at(z))
    } else {
        u.sup_abs()
    };
    Ok(err / field.osc())
}

/// Relative error allowed at the finest mesh.
pub const MESH_TOL: f64 = 0.02;
/// Slack on "decreases with n" for odd fields, whose error is at rounding level.
pub const MONOTONE_SLACK: f64 = 1e-12;

fn mesh_convergence(sizes: Sizes, _: u64) -> Result<Part> {
    let mut parts = Vec::new();
    let finest = *sizes.levels.last().expect("levels");
    for name in ["height_z", "height_x", "cubic_z"] {
        let errs = sizes.levels.iter().map(|&n| mesh_error(n, name)).collect::<Result<Vec<_>>>()?;
        let growth = errs.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
        let shown: Vec<String> = errs.iter().map(|e| format!("{e:.2e}")).collect();
        parts.push(Part::le(growth, MONOTONE_SLACK, format!("{name} errors [{}]", shown.join(", "))));
        parts.push(Part::le(errs[errs.len() - 1], MESH_TOL, format!("{name} at n = {finest}")));
    }
    let q = mesh_error(finest, "quadratic_z")?;
    parts.push(Part::le(q, MESH_TOL, format!("quadratic_z deviation/osc at n = {finest}: {q:.4}")));
    Ok(Part::all(parts))
}

fn dichotomy(_: Sizes, _: u64) -> Result<Part> {
    let mesh = make_icosphere(5)?;
    let mut parts = Vec::new();
    for (name, linear) in [("height_x", false), ("quadratic_z", true)] {
        let field = builtin_field(&mesh, &FieldSpec::named(name))?;
        let ct = build_contour_tree(&mesh, &field)?;
        let u = ct.symmetrize()?;
        let c = classify(&u, MESH_TOL_FRACTION * field.osc(), DEFAULT_K_MAX, DEFAULT_B_GRID)?;
        if linear {
            let rho = c.rho_lower.unwrap_or(f64::NAN);
            let dev = (rho - 1.0 / 12.0).abs();
            let mut p = Part::le(dev, 0.01, format!("{name}: {:?}, rho_lower {rho:.5}", c.verdict));
            p.pass &= c.verdict == Verdict::Linear;
            parts.push(p);
        } else {
            parts.push(Part {
                pass: c.verdict == Verdict::Bounded && c.hofer_bound == Some(HOFER_BOUND),
                measured: c.scanned_sup,
                tolerance: c.tolerance,
                detail: format!("{name}: {:?}, bound {:?}", c.verdict, c.hofer_bound),
            });
        }
    }
    Ok(Part::all(parts))
}

/// Structural consistency of one contour tree against link classification
/// and flood fill. Returns a description of the first mismatch.
pub fn structure_mismatch(n: u32, name: &str, seed: u64) -> Result<Option<String>> {
    let mesh = make_icosphere(n)?;
    let field = builtin_field(&mesh, &FieldSpec::named(name))?;
    let ct = build_contour_tree(&mesh, &field)?;
    Ok(tree_mismatch(&mesh, &field, &ct, seed)?.map(|m| format!("{name}: {m}")))
}

fn tree_mismatch(
    mesh: &crate::mesh::SphereMesh,
    field: &crate::mesh::ScalarField,
    ct: &ContourTree,
    seed: u64,
) -> Result<Option<String>> {
    let links = critical_points(mesh, field)?;
    let nodes = ct.critical.len();
    if ct.skeleton.len() + 1 != nodes {
        return Ok(Some(format!("{} edges for {nodes} nodes", ct.skeleton.len())));
    }
    // connectivity of the unmerged tree
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in &ct.skeleton {
        let (a, b) = (find(&mut parent, e.lower), find(&mut parent, e.upper));
        parent[a] = b;
    }
    let roots = (0..nodes).filter(|&i| find(&mut parent, i) == i).count();
    if roots != 1 {
        return Ok(Some(format!("{roots} components")));
    }
    let raw: f64 = ct.skeleton.iter().map(|e| e.area).sum();
    if (raw - 1.0).abs() > 1e-9 || (ct.tree.total_measure() - 1.0).abs() > 1e-9 {
        return Ok(Some(format!("measures sum to {raw}")));
    }
    let mut degree = vec![0usize; nodes];
    for e in &ct.skeleton {
        degree[e.lower] += 1;
        degree[e.upper] += 1;
    }
    let leaves = degree.iter().filter(|&&d| d == 1).count();
    let extrema = links.iter().filter(|c| c.kind != NodeKind::Saddle).count();
    if leaves != extrema {
        return Ok(Some(format!("{leaves} leaves, {extrema} extrema")));
    }
    if ct.skeleton.len() + 1 != links.len() {
        return Ok(Some(format!("{} edges, {} critical points", ct.skeleton.len(), links.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    while tested < 10 {
        let t = rng.random_range(field.min()..field.max());
        if field.values.contains(&t) {
            continue;
        }
        tested += 1;
        let fill = level_set_components(mesh, field, t);
        let spans = edges_spanning(&ct.tree, ct.function.node_values(), t);
        if fill != spans {
            return Ok(Some(format!("level {t}: {fill} components, {spans} spanning edges")));
        }
    }
    Ok(None)
}

fn contour_tree_structure(sizes: Sizes, seed: u64) -> Result<Part> {
    let mut mismatches = Vec::new();
    for (i, name) in BUILTIN_FIELDS.iter().enumerate() {
        if let Some(m) = structure_mismatch(sizes.structure_level, name, seed.wrapping_add(i as u64))? {
            mismatches.push(m);
        }
    }
    Ok(Part {
        pass: mismatches.is_empty(),
        measured: mismatches.len() as f64,
        tolerance: 0.0,
        detail: if mismatches.is_empty() {
            format!("{} builtin fields consistent at n = {}", BUILTIN_FIELDS.len(), sizes.structure_level)
        } else {
            mismatches.join("; ")
        },
    })
}

/// Number of equal value bins over which periods are averaged.
pub const PERIOD_BINS: usize = 32;
pub const PERIOD_REL_TOL: f64 = 0.05;

fn period_identity(_: Sizes, _: u64) -> Result<Part> {
    let mesh = make_icosphere(5)?;
    let field = builtin_field(&mesh, &FieldSpec::named("height_z"))?;
    let mut parts = Vec::new();
    for (scale, target) in [(1.0, 1.0), (2.0, 0.5)] {
        let ct = build_contour_tree(&mesh, &field.scaled(scale))?;
        let t = period_profile(ct.profile(0))?;
        let dev = t
            .binned(PERIOD_BINS)
            .iter()
            .map(|s| (s.period - target).abs() / target)
            .fold(0.0, f64::max);
        parts.push(Part::le(
            dev,
            PERIOD_REL_TOL,
            format!("scale {scale}: max relative deviation of binned T from {target} is {dev:.2e}"),
        ));
    }
    Ok(Part::all(parts))
}

fn bound_calculators(_: Sizes, _: u64) -> Result<Part> {
    let s = sikorav_estimate(1.0, 4)?;
    let p = profile_hofer_bound(&EvenProfile::zero(), 1000)?;
    let h = holder_bound(0.0, 3.0, 6.0)?;
    let exact = s == 1.0 && p == 0.006 && h == 0.0;
    Ok(Part {
        pass: exact,
        measured: (s - 1.0).abs().max((p - 0.006).abs()).max(h.abs()),
        tolerance: 0.0,
        detail: format!("sikorav {s}, profile bound {p}, holder {h}"),
    })
}

/// Main-path values next to their brute-force references: Monte Carlo
/// sublevel areas, the dense-grid symmetrization of the path example, and
/// the even part of the quadratic height against the mesh pipeline.
pub fn oracle_reports(seed: u64, quick: bool) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    let n = if quick { 3 } else { 5 };
    let samples = if quick { 20_000 } else { 400_000 };
    let mesh = make_icosphere(n)?;
    let field = builtin_field(&mesh, &FieldSpec::named("double_bump"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0c);
    for i in 0..5 {
        let t = rng.random_range(field.min()..field.max());
        let mc = mc_sublevel_area(&mesh, &field, t, samples, seed.wrapping_add(i))?;
        out.push(OracleReport::new(
            &format!("sublevel_area(double_bump, {t:.4})"),
            sublevel_area(&mesh, &field, t),
            mc.area,
            "4 standard errors",
            4.0 * mc.std_error,
        ));
    }

    let (tree, h) = path_example();
    let u = symmetrize_tree(&tree, &h)?;
    let dev = dense_grid_symmetrize(&tree, &h, 1001)?
        .into_iter()
        .map(|(z, v)| (u.value_at(z) - v).abs())
        .fold(0.0, f64::max);
    out.push(OracleReport::new("path example grid deviation", dev, 0.0, "1e-10", 1e-10));

    let rel = mesh_error(n, "quadratic_z")?;
    out.push(OracleReport::new(
        &format!("quadratic_z deviation/osc at n = {n}"),
        rel,
        0.0,
        "0.02 (n = 5) or 0.06 (n = 3)",
        if quick { 0.06 } else { MESH_TOL },
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injected_fault_fails_named_check() {
        let r = run_suite(true, 1, Some("bound_calculators"));
        let failed: Vec<_> = r.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"bound_calculators"));
        assert!(!r.pass);
    }
}
