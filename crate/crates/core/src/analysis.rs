//! Growth classification of symmetrized profiles and the closed-form
//! bound calculators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pl::PiecewiseLinear;
use crate::profile::{EvenProfile, LinkSpec, HALF};
use crate::tree::MeasuredTree;

/// Bound on the bounded-growth distance under unit total area.
pub const HOFER_BOUND: f64 = 19.0;
pub const DEFAULT_K_MAX: usize = 20;
pub const DEFAULT_B_GRID: usize = 256;
pub const MIN_B_GRID: usize = 64;
/// Classification tolerance for exact tree inputs.
pub const EXACT_TOL: f64 = 1e-9;
/// Mesh tolerance as a fraction of `osc(H)`.
pub const MESH_TOL_FRACTION: f64 = 0.05;
/// Default `C″` of the Hölder estimate.
pub const DEFAULT_C_DOUBLE_PRIME: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Linear,
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthClassification {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hofer_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LinkSpec>,
    pub tolerance: f64,
    /// Largest scanned `|link average|`, reported for either verdict.
    pub scanned_sup: f64,
    pub profile_sup: f64,
    pub profile_osc: f64,
}

/// Largest `|avg_{L_{k,B}} u|` over `k = 1` (the point 0) and, for each
/// `2 ≤ k ≤ k_max`, `b_grid` values of `B` evenly spaced strictly inside
/// `(1/(k+1), 1/2)`. Ties keep the first maximum in scan order.
pub fn growth_lower_bound(u: &EvenProfile, k_max: usize, b_grid: usize) -> Result<(f64, LinkSpec)> {
    if k_max < 1 {
        return Err(Error::BadK(k_max));
    }
    if b_grid < MIN_B_GRID {
        return Err(Error::BadParam(format!("B grid needs at least {MIN_B_GRID} points, got {b_grid}")));
    }
    let mut best = (u.value_at(0.0).abs(), LinkSpec::equator());
    for k in 2..=k_max {
        let lo = 1.0 / (k as f64 + 1.0);
        for j in 1..=b_grid {
            let b = lo + (HALF - lo) * j as f64 / (b_grid + 1) as f64;
            let Ok(link) = LinkSpec::new(k, b) else { continue };
            let a = u.link_average(&link).abs();
            if a > best.0 {
                best = (a, link);
            }
        }
    }
    Ok(best)
}

/// Linear growth when the scanned link averages exceed `tau`, bounded
/// otherwise.
pub fn classify(u: &EvenProfile, tau: f64, k_max: usize, b_grid: usize) -> Result<GrowthClassification> {
    if !(tau > 0.0) {
        return Err(Error::BadParam(format!("tolerance must be positive, got {tau}")));
    }
    let (rho, witness) = growth_lower_bound(u, k_max, b_grid)?;
    let linear = rho > tau;
    Ok(GrowthClassification {
        verdict: if linear { Verdict::Linear } else { Verdict::Bounded },
        rho_lower: linear.then_some(rho),
        hofer_bound: (!linear).then_some(HOFER_BOUND),
        witness: linear.then_some(witness),
        tolerance: tau,
        scanned_sup: rho,
        profile_sup: u.sup_abs(),
        profile_osc: u.osc(),
    })
}

/// `(‖F‖ + 3)/k`, for `F` supported in a disk of area below `1/k`.
pub fn sikorav_estimate(sup_norm_f: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::BadK(k));
    }
    Ok((sup_norm_f + 3.0) / k as f64)
}

/// `min_{2 ≤ k ≤ k_max} ‖u‖_k + 6/k`.
pub fn profile_hofer_bound(u: &EvenProfile, k_max: usize) -> Result<f64> {
    if k_max < 2 {
        return Err(Error::BadK(k_max));
    }
    let mut best = f64::INFINITY;
    for k in 2..=k_max {
        best = best.min(u.norm_k(k)? + 6.0 / k as f64);
    }
    Ok(best)
}

/// `3·√C″·√ε·√(1 + E)` for `ε = ‖H − H′‖_{C⁰} < 1`, `E = ‖H‖_{C²} + ‖H′‖_{C²}`.
pub fn holder_bound(eps_c0: f64, e_sum_c2: f64, c_double_prime: f64) -> Result<f64> {
    if eps_c0 >= 1.0 {
        return Err(Error::EpsTooLarge(eps_c0));
    }
    if eps_c0 < 0.0 || e_sum_c2 < 0.0 || c_double_prime < 0.0 {
        return Err(Error::BadParam("holder_bound arguments must be non-negative".into()));
    }
    Ok(3.0 * c_double_prime.sqrt() * eps_c0.sqrt() * (1.0 + e_sum_c2).sqrt())
}

/// One constant piece of a period profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodSegment {
    pub x0: f64,
    pub x1: f64,
    pub period: f64,
}

/// `T(x) = dB/dx` along one edge, piecewise constant in the value `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodProfile {
    pub segments: Vec<PeriodSegment>,
}

impl PeriodProfile {
    pub fn eval(&self, x: f64) -> Option<f64> {
        self.segments
            .iter()
            .find(|s| s.x0 <= x && x <= s.x1)
            .map(|s| s.period)
    }

    /// Value-length-weighted mean of `T`, i.e. total area over value span.
    pub fn mean(&self) -> f64 {
        let (num, den) = self.segments.iter().fold((0.0, 0.0), |(n, d), s| {
            let l = s.x1 - s.x0;
            (n + s.period * l, d + l)
        });
        num / den
    }

    /// Periods averaged over `bins` equal value intervals: the secant slope
    /// of `B` across each bin. Single mesh segments are noisy; bins are not.
    pub fn binned(&self, bins: usize) -> Vec<PeriodSegment> {
        let (Some(first), Some(last)) = (self.segments.first(), self.segments.last()) else {
            return Vec::new();
        };
        let (lo, hi) = (first.x0, last.x1);
        let width = (hi - lo) / bins as f64;
        let area_below = |x: f64| -> f64 {
            self.segments
                .iter()
                .map(|s| s.period * (x.min(s.x1) - s.x0).max(0.0))
                .sum()
        };
        (0..bins)
            .map(|i| {
                let x0 = lo + i as f64 * width;
                let x1 = if i + 1 == bins { hi } else { x0 + width };
                PeriodSegment {
                    x0,
                    x1,
                    period: (area_below(x1) - area_below(x0)) / (x1 - x0),
                }
            })
            .collect()
    }

    /// Fraction of the value span on which `|T − target| > rel·target`.
    pub fn fraction_outside(&self, target: f64, rel: f64) -> f64 {
        let total: f64 = self.segments.iter().map(|s| s.x1 - s.x0).sum();
        let bad: f64 = self
            .segments
            .iter()
            .filter(|s| (s.period - target).abs() > rel * target)
            .map(|s| s.x1 - s.x0)
            .sum();
        bad / total
    }
}

/// Derivative of the area coordinate with respect to the value on `profile`,
/// which must be strictly monotone in value.
pub fn period_profile(profile: &PiecewiseLinear) -> Result<PeriodProfile> {
    let pts = profile.points();
    let increasing = pts[pts.len() - 1].1 > pts[0].1;
    let mut segments = Vec::with_capacity(pts.len() - 1);
    for (i, w) in pts.windows(2).enumerate() {
        let (ds, dx) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        if dx == 0.0 || (dx > 0.0) != increasing {
            return Err(Error::NonMonotoneProfile(i));
        }
        let (x0, x1) = if increasing { (w[0].1, w[1].1) } else { (w[1].1, w[0].1) };
        segments.push(PeriodSegment {
            x0,
            x1,
            period: (ds / dx).abs(),
        });
    }
    if !increasing {
        segments.reverse();
    }
    Ok(PeriodProfile { segments })
}

/// `Σ_j m_j·ℓ(I_j)`: the value range is cut at the node values and each
/// piece is weighted by the number of edges whose value span covers it.
pub fn banach_indicatrix_sum(tree: &MeasuredTree, node_values: &[f64]) -> f64 {
    let mut cuts: Vec<f64> = node_values.to_vec();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let spans: Vec<(f64, f64)> = tree
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (node_values[e.u], node_values[e.v]);
            (a.min(b), a.max(b))
        })
        .collect();
    cuts.windows(2)
        .map(|w| {
            let m = spans.iter().filter(|&&(lo, hi)| lo <= w[0] && w[1] <= hi).count();
            m as f64 * (w[1] - w[0])
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::tests::elem_ex;

    fn quad() -> EvenProfile {
        EvenProfile::sample(4097, |z| z * z - 1.0 / 12.0)
    }

    fn tent() -> EvenProfile {
        EvenProfile::sample(3, |z| 1.0 - 4.0 * z)
    }

    #[test]
    fn growth_of_examples() {
        let (r, w) = growth_lower_bound(&EvenProfile::zero(), 20, 256).unwrap();
        assert_eq!(r, 0.0);
        assert_eq!(w, LinkSpec::equator());
        let (r, w) = growth_lower_bound(&quad(), 20, 256).unwrap();
        assert!((r - 1.0 / 12.0).abs() < 1e-6);
        assert_eq!(w.k, 1);
        let (r, w) = growth_lower_bound(&tent(), 20, 256).unwrap();
        assert_eq!((r, w.k), (1.0, 1));
    }

    #[test]
    fn coarse_grid_rejected() {
        assert!(growth_lower_bound(&quad(), 20, 10).is_err());
    }

    #[test]
    fn classification() {
        let c = classify(&quad(), 1e-9, 20, 256).unwrap();
        assert_eq!(c.verdict, Verdict::Linear);
        let c = classify(&EvenProfile::zero(), 1e-9, 20, 256).unwrap();
        assert_eq!((c.verdict, c.hofer_bound), (Verdict::Bounded, Some(19.0)));
        let json = serde_json::to_value(&c).unwrap();
        assert!(json.get("rho_lower").is_none());
    }

    #[test]
    fn scale_consistency() {
        let u = quad();
        let base = classify(&u, 1e-9, 10, 64).unwrap();
        for t in [-3.0, 0.5, 2.0] {
            let c = classify(&u.scale(t), 1e-9, 10, 64).unwrap();
            assert_eq!(c.verdict, base.verdict);
            let ratio = c.rho_lower.unwrap() / base.rho_lower.unwrap();
            assert!((ratio - f64::abs(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn calculators() {
        assert_eq!(sikorav_estimate(1.0, 4).unwrap(), 1.0);
        assert_eq!(sikorav_estimate(0.0, 3).unwrap(), 1.0);
        assert_eq!(sikorav_estimate(5.0, 1).unwrap(), 8.0);
        assert!(sikorav_estimate(1.0, 0).is_err());
        assert_eq!(profile_hofer_bound(&EvenProfile::zero(), 1000).unwrap(), 0.006);
        assert_eq!(profile_hofer_bound(&EvenProfile::zero(), 2).unwrap(), 3.0);
        assert_eq!(holder_bound(0.0, 5.0, 6.0).unwrap(), 0.0);
        let h = holder_bound(0.01, 10.0, 6.0).unwrap();
        assert!((h - 3.0 * 6f64.sqrt() * 0.1 * 11f64.sqrt()).abs() < 1e-14);
        assert!(matches!(holder_bound(1.5, 0.0, 6.0), Err(Error::EpsTooLarge(_))));
    }

    #[test]
    fn tent_hofer_bound_scans_k() {
        let b = profile_hofer_bound(&tent(), 10).unwrap();
        let direct = (2..=10)
            .map(|k| tent().norm_k(k).unwrap() + 6.0 / k as f64)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(b, direct);
    }

    #[test]
    fn periods() {
        let p = PiecewiseLinear::new(vec![(0.0, -0.5), (0.5, 0.0), (1.0, 0.5)]).unwrap();
        let t = period_profile(&p).unwrap();
        assert_eq!(t.mean(), 1.0);
        let t2 = period_profile(&p.scale(2.0)).unwrap();
        assert_eq!(t2.eval(0.3), Some(0.5));
        let flat = PiecewiseLinear::new(vec![(0.0, 0.0), (0.5, 0.0), (1.0, 1.0)]).unwrap();
        assert!(matches!(period_profile(&flat), Err(Error::NonMonotoneProfile(0))));
    }

    #[test]
    fn indicatrix_of_elem_ex() {
        let (tree, h) = elem_ex();
        assert_eq!(banach_indicatrix_sum(&tree, h.node_values()), 4.0);
    }
}
