//! Even, mean-zero piecewise-linear profiles on `I = (-1/2, 1/2)`.
//!
//! A profile is stored by its restriction to `[0, 1/2]`; negative arguments
//! are reflected, so evenness holds by representation.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pl::PiecewiseLinear;

pub const HALF: f64 = 0.5;

/// Default number of samples in the CSV export.
pub const DEFAULT_CSV_POINTS: usize = 1001;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvenProfile {
    /// Breakpoints on `[0, 1/2]`.
    breakpoints: PiecewiseLinear,
}

impl EvenProfile {
    pub fn from_half(half: PiecewiseLinear) -> Result<Self> {
        let (a, b) = half.domain();
        if a != 0.0 || b != HALF {
            return Err(Error::Domain {
                value: if a != 0.0 { a } else { b },
                domain: "half-profile must span exactly [0, 1/2]".into(),
            });
        }
        Ok(Self { breakpoints: half })
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// Constant profile. Not mean-zero unless `c == 0`.
    pub fn constant(c: f64) -> Self {
        Self {
            breakpoints: PiecewiseLinear::constant(0.0, HALF, c),
        }
    }

    /// Samples an even function at `n + 1` equally spaced points of `[0, 1/2]`.
    pub fn sample(n: usize, f: impl Fn(f64) -> f64) -> Self {
        Self {
            breakpoints: PiecewiseLinear::sample(0.0, HALF, n, f),
        }
    }

    pub fn half(&self) -> &PiecewiseLinear {
        &self.breakpoints
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        self.breakpoints.points()
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        if !(z.abs() <= HALF) {
            return Err(Error::Domain {
                value: z,
                domain: "[-1/2, 1/2]".into(),
            });
        }
        Ok(self.breakpoints.eval(z.abs()))
    }

    /// Evaluation with arguments clamped into `[-1/2, 1/2]`.
    pub fn value_at(&self, z: f64) -> f64 {
        self.breakpoints.eval(z.abs())
    }

    pub fn integral(&self) -> f64 {
        2.0 * self.breakpoints.integral()
    }

    pub fn osc(&self) -> f64 {
        self.breakpoints.osc()
    }

    pub fn sup_abs(&self) -> f64 {
        self.breakpoints.sup_abs()
    }

    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.breakpoints.sup_distance(&other.breakpoints)
    }

    /// `sup |u − u′|` over `|z| ≤ r`.
    pub fn sup_distance_within(&self, other: &Self, r: f64) -> f64 {
        let d = self.breakpoints.zip_with(&other.breakpoints, |a, b| a - b);
        d.sup_abs_on(0.0, r)
    }

    pub fn scale(&self, t: f64) -> Self {
        Self {
            breakpoints: self.breakpoints.scale(t),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            breakpoints: self.breakpoints.add(&other.breakpoints),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            breakpoints: self.breakpoints.zip_with(&other.breakpoints, |a, b| a - b),
        }
    }

    /// `‖u‖_k = max_{I_k}|u| + (2/k)·max_{I∖I_k}|u|` with
    /// `I_k = [-1/2 + 1/(k+1), 1/2 − 1/(k+1)]`; both maxima over closures.
    pub fn norm_k(&self, k: usize) -> Result<f64> {
        if k < 2 {
            return Err(Error::BadK(k));
        }
        let r = inner_radius(k);
        let inner = self.breakpoints.sup_abs_on(0.0, r);
        let tail = self.breakpoints.sup_abs_on(r, HALF);
        Ok(inner + 2.0 / k as f64 * tail)
    }

    /// Mean of the profile over the points of a link.
    pub fn link_average(&self, link: &LinkSpec) -> f64 {
        mean_over(self, &link_points(link.k, link.b))
    }

    /// Recovers `u(z)` from two link averages:
    /// `(k/2)·avg(L_{k,B}) − ((k−2)/2)·avg(L_{k−2,B+C})` with `B = 1/2 − |z|`.
    /// The two links differ only by the points `±z`.
    pub fn reconstruct_via_links(&self, z: f64, k: usize) -> Result<f64> {
        if k < 3 {
            return Err(Error::BadK(k));
        }
        let r = inner_radius(k);
        if !(z.abs() < r) {
            return Err(Error::Domain {
                value: z,
                domain: format!("|z| < {r} for k = {k}"),
            });
        }
        let b = HALF - z.abs();
        let c = (1.0 - 2.0 * b) / (k as f64 - 1.0);
        let outer = mean_over(self, &link_points(k, b));
        let inner = mean_over(self, &link_points(k - 2, b + c));
        Ok(k as f64 / 2.0 * outer - (k as f64 - 2.0) / 2.0 * inner)
    }

    /// `z,value` lines on a uniform grid of `n` points over `[-1/2, 1/2]`.
    pub fn to_csv(&self, n: usize) -> String {
        let n = n.max(2);
        let mut s = String::from("z,value\n");
        for i in 0..n {
            let z = if i == n - 1 {
                HALF
            } else {
                -HALF + i as f64 / (n - 1) as f64
            };
            let _ = writeln!(s, "{z},{}", self.value_at(z));
        }
        s
    }
}

/// Half-width of `I_k`.
pub fn inner_radius(k: usize) -> f64 {
    HALF - 1.0 / (k as f64 + 1.0)
}

fn mean_over(u: &EvenProfile, points: &[f64]) -> f64 {
    points.iter().map(|&z| u.value_at(z)).sum::<f64>() / points.len() as f64
}

/// Points `-1/2 + B + jC`, `j = 0..k`, `C = (1 − 2B)/(k − 1)`; no admissibility check.
fn link_points(k: usize, b: f64) -> Vec<f64> {
    if k == 1 {
        return vec![-HALF + b];
    }
    let c = (1.0 - 2.0 * b) / (k as f64 - 1.0);
    (0..k)
        .map(|j| {
            if j == k - 1 {
                HALF - b
            } else {
                -HALF + b + j as f64 * c
            }
        })
        .collect()
}

/// An admissible link `L_{k,B}`: `k ≥ 1` points, symmetric about 0.
///
/// For `k = 1` only `B = 1/2` (the single point 0) is admissible; for
/// `k ≥ 2`, `1/(k+1) < B < 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkSpec {
    pub k: usize,
    #[serde(rename = "B")]
    pub b: f64,
}

impl LinkSpec {
    pub fn new(k: usize, b: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadK(k));
        }
        let ok = if k == 1 {
            b == HALF
        } else {
            b > 1.0 / (k as f64 + 1.0) && b < HALF
        };
        if !ok {
            return Err(Error::BadLink(format!("B = {b} is not admissible for k = {k}")));
        }
        Ok(Self { k, b })
    }

    /// The single-point link at the equator, `L_{1,1/2} = {0}`.
    pub fn equator() -> Self {
        Self { k: 1, b: HALF }
    }

    /// Spacing `C`; zero for `k = 1`.
    pub fn spacing(&self) -> f64 {
        if self.k == 1 {
            0.0
        } else {
            (1.0 - 2.0 * self.b) / (self.k as f64 - 1.0)
        }
    }

    pub fn points(&self) -> Vec<f64> {
        link_points(self.k, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tent() -> EvenProfile {
        // 1 − 4|z|
        EvenProfile::from_half(PiecewiseLinear::linear(0.0, HALF, 1.0, -1.0)).unwrap()
    }

    fn parabola(n: usize) -> EvenProfile {
        EvenProfile::sample(n, |z| z * z - 1.0 / 12.0)
    }

    #[test]
    fn eval_reflects_and_checks_domain() {
        let u = tent();
        assert_eq!(u.eval(0.25).unwrap(), 0.0);
        assert_eq!(u.eval(-0.1).unwrap(), u.eval(0.1).unwrap());
        assert!(matches!(u.eval(0.51), Err(Error::Domain { .. })));
        assert_eq!(EvenProfile::zero().eval(0.3).unwrap(), 0.0);
    }

    #[test]
    fn norm_k_values() {
        assert_eq!(tent().norm_k(4).unwrap(), 1.5);
        assert_eq!(EvenProfile::zero().norm_k(7).unwrap(), 0.0);
        let c = 0.7;
        for k in 2..10 {
            let n = EvenProfile::constant(c).norm_k(k).unwrap();
            assert!((n - (c + 2.0 / k as f64 * c)).abs() < 1e-15);
        }
        assert!(matches!(tent().norm_k(1), Err(Error::BadK(1))));
    }

    #[test]
    fn link_averages() {
        let u = tent();
        assert_eq!(u.link_average(&LinkSpec::equator()), 1.0);
        let l = LinkSpec::new(2, 3.0 / 8.0).unwrap();
        assert!((u.link_average(&l) - 0.5).abs() < 1e-15);
        let p = EvenProfile::from_half(PiecewiseLinear::linear(0.0, HALF, -1.0 / 12.0, 1.0 / 6.0)).unwrap();
        assert_eq!(p.link_average(&LinkSpec::equator()), -1.0 / 12.0);
    }

    #[test]
    fn link_admissibility() {
        assert!(LinkSpec::new(1, 0.4).is_err());
        assert!(LinkSpec::new(2, 1.0 / 3.0).is_err());
        assert!(LinkSpec::new(2, HALF).is_err());
        assert!(LinkSpec::new(0, 0.4).is_err());
        let l = LinkSpec::new(5, 0.3).unwrap();
        let pts = l.points();
        assert_eq!(pts.len(), 5);
        for (a, b) in pts.iter().zip(pts.iter().rev()) {
            assert!((a + b).abs() < 1e-15);
        }
        assert!(pts.iter().all(|z| z.abs() < HALF));
    }

    #[test]
    fn reconstruction_examples() {
        let u = tent();
        assert!(u.reconstruct_via_links(0.25, 4).unwrap().abs() < 1e-15);
        assert!((u.reconstruct_via_links(0.0, 3).unwrap() - 1.0).abs() < 1e-15);
        let p = parabola(1000);
        let got = p.reconstruct_via_links(0.2, 6).unwrap();
        assert!((got - (0.04 - 1.0 / 12.0)).abs() < 1e-10);
        assert!(matches!(u.reconstruct_via_links(0.1, 2), Err(Error::BadK(2))));
        assert!(matches!(u.reconstruct_via_links(0.3, 3), Err(Error::Domain { .. })));
    }

    #[test]
    fn osc_integral_scale() {
        let u = tent();
        assert_eq!(u.osc(), 2.0);
        assert_eq!(u.integral(), 0.0);
        assert_eq!(u.scale(0.0).sup_abs(), 0.0);
        assert_eq!(u.add(&u.scale(-1.0)).sup_abs(), 0.0);
    }

    #[test]
    fn csv_grid() {
        let csv = tent().to_csv(DEFAULT_CSV_POINTS);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), DEFAULT_CSV_POINTS + 1);
        assert_eq!(lines[1], "-0.5,-1");
        assert_eq!(lines[501], "0,1");
    }
}
