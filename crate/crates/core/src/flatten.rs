//! Admissible flattenings: monotone PL maps that are locally constant near
//! a finite set of critical values and stay within `δ` of the identity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pl::PiecewiseLinear;
use crate::tree::{count_reeb_edges, symmetrize_tree, MeasuredTree, TreeFunction};

/// Slack allowed in [`check_flattening_bound`].
pub const BOUND_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatteningMap {
    /// `None` is the identity (no critical values to flatten).
    pub map: Option<PiecewiseLinear>,
    pub delta: f64,
    pub critical_values: Vec<f64>,
    /// Closed intervals on which the map is constant.
    pub plateaus: Vec<(f64, f64)>,
}

/// Which admissibility conditions hold, read off the breakpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Admissibility {
    pub slopes_in_unit_interval: bool,
    pub fixes_minimum: bool,
    pub deviation: f64,
    pub deviation_below_delta: bool,
    pub constant_near_critical_values: bool,
}

impl Admissibility {
    pub fn holds(&self) -> bool {
        self.slopes_in_unit_interval
            && self.fixes_minimum
            && self.deviation_below_delta
            && self.constant_near_critical_values
    }
}

impl FlatteningMap {
    pub fn identity() -> Self {
        Self {
            map: None,
            delta: 0.0,
            critical_values: Vec::new(),
            plateaus: Vec::new(),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.map.as_ref().map_or(t, |m| m.eval(t))
    }

    /// `sup |r(t) − t|`, attained at a breakpoint.
    pub fn epsilon(&self) -> f64 {
        self.map.as_ref().map_or(0.0, |m| {
            m.points().iter().map(|&(t, r)| (r - t).abs()).fold(0.0, f64::max)
        })
    }

    pub fn domain(&self) -> Option<(f64, f64)> {
        self.map.as_ref().map(PiecewiseLinear::domain)
    }

    pub fn admissibility(&self) -> Admissibility {
        let Some(map) = &self.map else {
            return Admissibility {
                slopes_in_unit_interval: true,
                fixes_minimum: true,
                deviation: 0.0,
                deviation_below_delta: true,
                constant_near_critical_values: self.critical_values.is_empty(),
            };
        };
        let pts = map.points();
        let slopes_ok = pts.windows(2).all(|w| {
            let s = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
            (-1e-12..=1.0 + 1e-12).contains(&s)
        });
        let (lo, hi) = map.domain();
        // every critical value sits inside (or at the domain end of) a flat segment
        let flat_near = self.critical_values.iter().all(|&k| {
            pts.windows(2).any(|w| {
                let flat = w[0].1 == w[1].1;
                let inside = (w[0].0 < k && k < w[1].0)
                    || (k == lo && w[0].0 == lo)
                    || (k == hi && w[1].0 == hi);
                flat && inside
            })
        });
        let deviation = self.epsilon();
        Admissibility {
            slopes_in_unit_interval: slopes_ok,
            fixes_minimum: pts[0].1 == lo,
            deviation,
            deviation_below_delta: deviation < self.delta,
            constant_near_critical_values: flat_near,
        }
    }
}

/// Builds `r(t) = min K + ∫_{min K}^t (1 − χ_P)`, where `P` is the union of
/// plateaus of half-width `w = min(δ/(2|K|), gap/6)` around each value of
/// `K` (half-plateaus at the two ends) and `gap` is the smallest distance
/// between consecutive values. The domain is `[min K, max K]`.
pub fn make_admissible_flattening(critical_values: &[f64], delta: f64) -> Result<FlatteningMap> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::BadParam(format!("flattening deviation must be positive, got {delta}")));
    }
    let mut ks: Vec<f64> = critical_values.to_vec();
    if ks.iter().any(|k| !k.is_finite()) {
        return Err(Error::BadParam("non-finite critical value".into()));
    }
    ks.sort_by(f64::total_cmp);
    ks.dedup();
    if ks.len() < 2 {
        // nothing between two distinct values to flatten
        return Ok(FlatteningMap {
            delta,
            critical_values: ks,
            ..FlatteningMap::identity()
        });
    }
    let gap = ks.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let w = (delta / (2.0 * ks.len() as f64)).min(gap / 6.0);
    let last = ks.len() - 1;
    if !(w > 0.0) || ks.iter().any(|&k| k + w <= k) {
        return Err(Error::Gap(format!("plateau half-width {w:e} underflows at gap {gap:e}")));
    }

    let mut plateaus = Vec::with_capacity(ks.len());
    for (i, &k) in ks.iter().enumerate() {
        let a = if i == 0 { k } else { k - w };
        let b = if i == last { k } else { k + w };
        plateaus.push((a, b));
    }
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(2 * ks.len());
    let mut flat_total = 0.0;
    for &(a, b) in &plateaus {
        let level = a - flat_total;
        pts.push((a, level));
        pts.push((b, level));
        flat_total += b - a;
    }
    // the end half-plateaus are a single point at the boundary values; drop
    // the duplicate abscissae they create
    pts.dedup_by(|b, a| b.0 == a.0);
    Ok(FlatteningMap {
        map: Some(PiecewiseLinear::new(pts)?),
        delta,
        critical_values: ks,
        plateaus,
    })
}

/// [`make_admissible_flattening`] with an additional plateau at `median`.
pub fn make_flattening_with_median(critical_values: &[f64], delta: f64, median: f64) -> Result<FlatteningMap> {
    let mut ks = critical_values.to_vec();
    ks.push(median);
    make_admissible_flattening(&ks, delta)
}

/// Critical values of a tree function: its node values and global extrema.
pub fn tree_critical_values(h: &TreeFunction) -> Vec<f64> {
    let mut ks: Vec<f64> = h.node_values().to_vec();
    ks.push(h.min());
    ks.push(h.max());
    ks.sort_by(f64::total_cmp);
    ks.dedup();
    ks
}

/// `r ∘ h`, composed exactly on every edge profile.
pub fn apply_flattening(r: &FlatteningMap, tree: &MeasuredTree, h: &TreeFunction) -> Result<TreeFunction> {
    let Some(map) = &r.map else {
        return Ok(h.clone());
    };
    let (lo, hi) = map.domain();
    for v in [h.min(), h.max()] {
        if v < lo || v > hi {
            return Err(Error::Domain {
                value: v,
                domain: format!("[{lo}, {hi}]"),
            });
        }
    }
    let node_values = h.node_values().iter().map(|&v| map.eval(v)).collect();
    let profiles = h.profiles().iter().map(|p| p.compose_outer(map)).collect();
    TreeFunction::new(tree, node_values, profiles)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatteningBound {
    pub lhs: f64,
    pub rhs: f64,
    pub epsilon: f64,
    pub edges: usize,
    pub pass: bool,
}

/// Compares `‖Σ(r∘h) − Σ(h)‖` against `(1 + 2e)·ε` with `ε = sup|r − id|`.
pub fn check_flattening_bound(tree: &MeasuredTree, h: &TreeFunction, r: &FlatteningMap) -> Result<FlatteningBound> {
    let epsilon = r.epsilon();
    let edges = count_reeb_edges(tree);
    let flat = apply_flattening(r, tree, h)?.mean_zero();
    let lhs = symmetrize_tree(tree, &flat)?.sup_distance(&symmetrize_tree(tree, h)?);
    let rhs = (1.0 + 2.0 * edges as f64) * epsilon;
    Ok(FlatteningBound {
        lhs,
        rhs,
        epsilon,
        edges,
        pass: lhs <= rhs + BOUND_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::tests::elem_ex;
    use crate::tree::random_tree;

    #[test]
    fn two_values() {
        let r = make_admissible_flattening(&[0.0, 1.0], 0.1).unwrap();
        assert_eq!(r.plateaus, vec![(0.0, 0.025), (0.975, 1.0)]);
        assert!(r.admissibility().holds());
        assert!((r.epsilon() - 0.05).abs() < 1e-15);
        assert_eq!(r.eval(0.01), 0.0);
        assert!((r.eval(0.5) - 0.475).abs() < 1e-15);
    }

    #[test]
    fn empty_set_is_identity() {
        let r = make_admissible_flattening(&[], 0.3).unwrap();
        assert!(r.map.is_none());
        assert_eq!(r.eval(7.0), 7.0);
    }

    #[test]
    fn zero_delta_rejected() {
        assert!(make_admissible_flattening(&[0.0, 1.0], 0.0).is_err());
    }

    #[test]
    fn many_values_stay_admissible() {
        let ks = [-1.0, -0.2, -0.19, 0.4, 2.0];
        let r = make_admissible_flattening(&ks, 0.05).unwrap();
        let a = r.admissibility();
        assert!(a.holds(), "{a:?}");
        let m = make_flattening_with_median(&ks, 0.05, 0.1).unwrap();
        assert!(m.admissibility().holds());
        assert_eq!(m.eval(0.1), m.eval(0.1 + 1e-4));
    }

    #[test]
    fn identity_leaves_function_unchanged() {
        let (tree, h) = elem_ex();
        let out = apply_flattening(&FlatteningMap::identity(), &tree, &h).unwrap();
        assert_eq!(out, h);
        let b = check_flattening_bound(&tree, &h, &FlatteningMap::identity()).unwrap();
        assert_eq!((b.lhs, b.rhs), (0.0, 0.0));
    }

    #[test]
    fn elem_ex_profiles_flat_near_ends() {
        let (tree, h) = elem_ex();
        let r = make_admissible_flattening(&tree_critical_values(&h), 0.1).unwrap();
        let out = apply_flattening(&r, &tree, &h).unwrap();
        let p = out.profile(0);
        assert_eq!(p.eval(0.0), p.eval(1e-3));
        assert_eq!(p.eval(0.5), p.eval(0.5 - 1e-3));
        let b = check_flattening_bound(&tree, &h, &r).unwrap();
        assert_eq!(b.edges, 2);
        assert!(b.pass, "{b:?}");
        assert!(b.rhs <= 0.5);
    }

    #[test]
    fn out_of_range_is_domain_error() {
        let (tree, h) = elem_ex();
        let r = make_admissible_flattening(&[0.0, 1.0], 0.1).unwrap();
        assert!(matches!(apply_flattening(&r, &tree, &h), Err(Error::Domain { .. })));
    }

    #[test]
    fn random_bounds_hold() {
        for seed in 0..30 {
            let (tree, h) = random_tree(seed, 1 + seed as usize % 8);
            let r = make_admissible_flattening(&tree_critical_values(&h), 0.2).unwrap();
            let b = check_flattening_bound(&tree, &h, &r).unwrap();
            assert!(b.pass, "seed {seed}: {b:?}");
        }
    }
}
