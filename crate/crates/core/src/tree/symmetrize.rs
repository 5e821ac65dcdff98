use log::warn;

use super::{elementary_decompose, ElementaryFunction, MeasuredTree, TreeFunction};
use crate::contour::build_contour_tree;
use crate::error::Result;
use crate::mesh::{ScalarField, SphereMesh};
use crate::pl::PiecewiseLinear;
use crate::profile::{EvenProfile, HALF};

/// Tree functions whose mean exceeds this are re-centred before symmetrizing.
pub const MEAN_TOL: f64 = 1e-10;

/// The edge-wise step/ramp function `Σ_{h,u}` of an elementary function on
/// `[-1/2, 1/2]`: `value_u` up to `-1/2 + μ(T_{e,u})`, the edge profile
/// reparametrized by measure, then `value_v`.
struct Ramp<'a> {
    left: f64,
    right: f64,
    xs: Vec<f64>,
    part: &'a ElementaryFunction,
}

impl<'a> Ramp<'a> {
    fn new(tree: &MeasuredTree, part: &'a ElementaryFunction) -> Result<Self> {
        let (a, b) = tree.side_measures(part.edge)?;
        let left = -HALF + a;
        let right = HALF - b;
        let mu = tree.edge(part.edge)?.measure;
        let span = right - left;
        let pts = part.profile.points();
        let last = pts.len() - 1;
        let xs = pts
            .iter()
            .enumerate()
            .map(|(i, &(s, _))| match i {
                0 => left,
                i if i == last => right,
                _ => left + s / mu * span,
            })
            .collect();
        Ok(Self { left, right, xs, part })
    }

    fn value(&self, i: usize) -> f64 {
        self.part.profile.points()[i].1
    }

    /// Full breakpoint list on `[-1/2, 1/2]`.
    fn to_pl(&self) -> PiecewiseLinear {
        let mut pts = Vec::with_capacity(self.xs.len() + 2);
        if self.left > -HALF {
            pts.push((-HALF, self.part.value_u));
        }
        for (i, &x) in self.xs.iter().enumerate() {
            if pts.last().is_none_or(|p: &(f64, f64)| x > p.0) {
                pts.push((x, self.value(i)));
            }
        }
        if self.right < HALF {
            pts.push((HALF, self.part.value_v));
        }
        PiecewiseLinear::new(pts).expect("ramp breakpoints are increasing")
    }
}

/// Even part `(f(z) + f(−z))/2` of a PL function on `[-1/2, 1/2]`.
fn even_part(f: &PiecewiseLinear) -> EvenProfile {
    let mut zs: Vec<f64> = f.points().iter().map(|p| p.0.abs()).collect();
    zs.push(0.0);
    zs.push(HALF);
    zs.sort_by(f64::total_cmp);
    zs.dedup();
    let half = zs
        .into_iter()
        .map(|z| (z, 0.5 * (f.eval(z) + f.eval(-z))))
        .collect();
    EvenProfile::from_half(PiecewiseLinear::new(half).expect("sorted grid")).expect("spans [0, 1/2]")
}

/// `Σ_h = (Σ_{h,u} + Σ_{h,v})/2` for an elementary function; since
/// `Σ_{h,v}(z) = Σ_{h,u}(−z)` this is the even part of the ramp.
pub fn symmetrize_elementary(tree: &MeasuredTree, part: &ElementaryFunction) -> Result<EvenProfile> {
    Ok(even_part(&Ramp::new(tree, part)?.to_pl()))
}

/// The combinatorial symmetrization: the sum of [`symmetrize_elementary`]
/// over the elementary decomposition of `h`. Edges are summed in id order.
pub fn symmetrize_tree(tree: &MeasuredTree, h: &TreeFunction) -> Result<EvenProfile> {
    let mean = h.mean();
    let parts = if mean.abs() > MEAN_TOL {
        warn!("tree function has mean {mean:e}; re-centring before symmetrization");
        elementary_decompose(tree, &h.mean_zero())?
    } else {
        elementary_decompose(tree, h)?
    };
    let ramps = parts
        .iter()
        .map(|p| Ramp::new(tree, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(&ramps))
}

/// Sums the even parts of all ramps on one merged grid over `[0, 1/2]`.
/// Outside `[left, right]` every ramp is constant, which is accumulated with
/// a difference array; only grid points inside the ramp are interpolated.
fn assemble(ramps: &[Ramp<'_>]) -> EvenProfile {
    if ramps.is_empty() {
        return EvenProfile::zero();
    }
    let mut grid: Vec<f64> = ramps
        .iter()
        .flat_map(|r| r.xs.iter().map(|x| x.abs()))
        .filter(|&z| z < HALF)
        .collect();
    grid.push(0.0);
    grid.push(HALF);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let n = grid.len();

    let mut acc = vec![0.0; n];
    let mut steps = vec![0.0; n + 1];
    let add_const = |from: usize, to: usize, c: f64, steps: &mut Vec<f64>| {
        if from < to {
            steps[from] += c;
            steps[to] -= c;
        }
    };

    for r in ramps {
        let (cu, cv) = (r.part.value_u, r.part.value_v);

        // f(z) for z ≥ 0
        let lo = grid.partition_point(|&z| z <= r.left);
        let hi = grid.partition_point(|&z| z < r.right).max(lo);
        add_const(0, lo, cu, &mut steps);
        add_const(hi, n, cv, &mut steps);
        let mut seg = 0;
        for i in lo..hi {
            acc[i] += interpolate(r, grid[i], &mut seg);
        }

        // f(−z): −z ≤ left ⇔ z ≥ −left, −z ≥ right ⇔ z ≤ −right
        let lo = grid.partition_point(|&z| z <= -r.right);
        let hi = grid.partition_point(|&z| z < -r.left).max(lo);
        add_const(0, lo, cv, &mut steps);
        add_const(hi, n, cu, &mut steps);
        let mut seg = 0;
        for i in (lo..hi).rev() {
            acc[i] += interpolate(r, -grid[i], &mut seg);
        }
    }

    let mut running = 0.0;
    let half = grid
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            running += steps[i];
            (z, 0.5 * (acc[i] + running))
        })
        .collect();
    EvenProfile::from_half(PiecewiseLinear::new(half).expect("sorted grid")).expect("spans [0, 1/2]")
}

/// Ramp value at `x ∈ [left, right]`; `seg` is a forward-only cursor, so
/// calls must come with non-decreasing `x`.
fn interpolate(r: &Ramp<'_>, x: f64, seg: &mut usize) -> f64 {
    let xs = &r.xs;
    let last = xs.len() - 1;
    while *seg + 1 < last && xs[*seg + 1] <= x {
        *seg += 1;
    }
    let (x0, x1) = (xs[*seg], xs[*seg + 1]);
    let (y0, y1) = (r.value(*seg), r.value(*seg + 1));
    if x <= x0 {
        return y0;
    }
    if x >= x1 {
        return y1;
    }
    y0 + (x - x0) / (x1 - x0) * (y1 - y0)
}

/// Builds the measured Reeb tree of a mesh field and symmetrizes it
/// (see [`crate::contour::ContourTree::symmetrize`]).
pub fn symmetrize_field(mesh: &SphereMesh, field: &ScalarField) -> Result<EvenProfile> {
    build_contour_tree(mesh, field)?.symmetrize()
}
