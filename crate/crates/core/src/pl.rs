//! Continuous piecewise-linear functions on a closed interval.
//!
//! Every operation works on the breakpoint list directly: integrals are
//! trapezoid sums (exact for PL data), suprema are taken over breakpoints,
//! and binary operations evaluate both operands on the union of their grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct PiecewiseLinear {
    points: Vec<(f64, f64)>,
}

impl TryFrom<Vec<(f64, f64)>> for PiecewiseLinear {
    type Error = Error;

    fn try_from(points: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(points)
    }
}

impl From<PiecewiseLinear> for Vec<(f64, f64)> {
    fn from(f: PiecewiseLinear) -> Self {
        f.points
    }
}

impl PiecewiseLinear {
    /// Builds a function from `(x, y)` breakpoints with strictly increasing `x`.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::MalformedTree(format!(
                "piecewise-linear function needs at least 2 breakpoints, got {}",
                points.len()
            )));
        }
        for (i, &(x, y)) in points.iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::MalformedTree(format!("non-finite breakpoint {i}")));
            }
            if i > 0 && x <= points[i - 1].0 {
                return Err(Error::MalformedTree(format!(
                    "breakpoints not strictly increasing at index {i} ({} then {x})",
                    points[i - 1].0
                )));
            }
        }
        Ok(Self { points })
    }

    pub fn constant(x0: f64, x1: f64, value: f64) -> Self {
        Self::linear(x0, x1, value, value)
    }

    pub fn linear(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        assert!(x0 < x1, "empty interval [{x0}, {x1}]");
        Self {
            points: vec![(x0, y0), (x1, y1)],
        }
    }

    /// Samples `f` at `n + 1` equally spaced points of `[x0, x1]`.
    pub fn sample(x0: f64, x1: f64, n: usize, f: impl Fn(f64) -> f64) -> Self {
        assert!(n >= 1 && x0 < x1);
        let points = (0..=n)
            .map(|i| {
                let x = if i == n {
                    x1
                } else {
                    x0 + (x1 - x0) * i as f64 / n as f64
                };
                (x, f(x))
            })
            .collect();
        Self { points }
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.points[0].0, self.points[self.points.len() - 1].0)
    }

    pub fn first_value(&self) -> f64 {
        self.points[0].1
    }

    pub fn last_value(&self) -> f64 {
        self.points[self.points.len() - 1].1
    }

    /// Evaluates by linear interpolation; arguments outside the domain are
    /// clamped to the nearest endpoint.
    pub fn eval(&self, x: f64) -> f64 {
        let pts = &self.points;
        if x <= pts[0].0 {
            return pts[0].1;
        }
        let last = pts.len() - 1;
        if x >= pts[last].0 {
            return pts[last].1;
        }
        // first index with pts[i].0 > x; guaranteed in 1..=last
        let i = pts.partition_point(|p| p.0 <= x);
        let (x0, y0) = pts[i - 1];
        let (x1, y1) = pts[i];
        if x == x0 {
            return y0;
        }
        let t = (x - x0) / (x1 - x0);
        y0 + t * (y1 - y0)
    }

    pub fn integral(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
            .sum()
    }

    pub fn min_value(&self) -> f64 {
        self.points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.1)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn osc(&self) -> f64 {
        self.max_value() - self.min_value()
    }

    pub fn sup_abs(&self) -> f64 {
        self.points.iter().map(|p| p.1.abs()).fold(0.0, f64::max)
    }

    /// Maximum of `|f|` over `[a, b] ∩ domain`, exact for PL data.
    pub fn sup_abs_on(&self, a: f64, b: f64) -> f64 {
        let (lo, hi) = self.domain();
        let a = a.max(lo);
        let b = b.min(hi);
        if a > b {
            return 0.0;
        }
        let mut m = self.eval(a).abs().max(self.eval(b).abs());
        for &(x, y) in &self.points {
            if x > a && x < b {
                m = m.max(y.abs());
            }
        }
        m
    }

    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            points: self.points.iter().map(|&(x, y)| (x, f(y))).collect(),
        }
    }

    pub fn shift(&self, c: f64) -> Self {
        self.map_values(|y| y + c)
    }

    pub fn scale(&self, t: f64) -> Self {
        self.map_values(|y| t * y)
    }

    /// Reverses orientation: `x ↦ x0 + x1 − x`.
    pub fn reversed(&self) -> Self {
        let (x0, x1) = self.domain();
        let points = self
            .points
            .iter()
            .rev()
            .map(|&(x, y)| (x0 + x1 - x, y))
            .collect();
        Self { points }
    }

    /// Union of the two breakpoint grids restricted to the common domain.
    pub fn merged_grid(&self, other: &Self) -> Vec<f64> {
        let (a0, a1) = self.domain();
        let (b0, b1) = other.domain();
        let lo = a0.max(b0);
        let hi = a1.min(b1);
        let mut xs: Vec<f64> = self
            .points
            .iter()
            .chain(other.points.iter())
            .map(|p| p.0)
            .filter(|&x| x > lo && x < hi)
            .collect();
        xs.push(lo);
        xs.push(hi);
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs
    }

    /// Pointwise `f(self, other)` on the merged grid; exact whenever `f` is affine.
    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let points = self
            .merged_grid(other)
            .into_iter()
            .map(|x| (x, f(self.eval(x), other.eval(x))))
            .collect();
        Self { points }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.merged_grid(other)
            .into_iter()
            .map(|x| (self.eval(x) - other.eval(x)).abs())
            .fold(0.0, f64::max)
    }

    /// The composition `outer ∘ self`. Breakpoints are inserted wherever a
    /// segment of `self` crosses a breakpoint value of `outer`, so the result
    /// is exact.
    pub fn compose_outer(&self, outer: &Self) -> Self {
        let knots: Vec<f64> = outer.points.iter().map(|p| p.0).collect();
        let mut points = Vec::with_capacity(self.points.len());
        points.push((self.points[0].0, outer.eval(self.points[0].1)));
        for w in self.points.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            if y0 != y1 {
                let (lo, hi) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
                let start = knots.partition_point(|&k| k <= lo);
                let end = knots.partition_point(|&k| k < hi);
                let mut crossings: Vec<f64> = knots[start..end]
                    .iter()
                    .map(|&k| x0 + (k - y0) / (y1 - y0) * (x1 - x0))
                    .collect();
                if y0 > y1 {
                    crossings.reverse();
                }
                for x in crossings {
                    let last = points.last().map_or(f64::NEG_INFINITY, |p: &(f64, f64)| p.0);
                    if x > last && x < x1 {
                        let y = y0 + (x - x0) / (x1 - x0) * (y1 - y0);
                        points.push((x, outer.eval(y)));
                    }
                }
            }
            points.push((x1, outer.eval(y1)));
        }
        Self { points }
    }

    /// Drops interior breakpoints that are collinear with their neighbours.
    pub fn simplified(&self, tol: f64) -> Self {
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(self.points.len());
        for &p in &self.points {
            while out.len() >= 2 {
                let (xa, ya) = out[out.len() - 2];
                let (xb, yb) = out[out.len() - 1];
                let pred = ya + (xb - xa) / (p.0 - xa) * (p.1 - ya);
                if (pred - yb).abs() <= tol {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        Self { points: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tent() -> PiecewiseLinear {
        PiecewiseLinear::new(vec![(0.0, 0.0), (1.0, 2.0), (2.0, 0.0)]).unwrap()
    }

    #[test]
    fn rejects_bad_breakpoints() {
        assert!(PiecewiseLinear::new(vec![(0.0, 1.0)]).is_err());
        assert!(PiecewiseLinear::new(vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
        assert!(PiecewiseLinear::new(vec![(0.0, f64::NAN), (1.0, 2.0)]).is_err());
    }

    #[test]
    fn eval_and_integral() {
        let f = tent();
        assert_eq!(f.eval(0.5), 1.0);
        assert_eq!(f.eval(1.0), 2.0);
        assert_eq!(f.eval(-3.0), 0.0);
        assert_eq!(f.integral(), 2.0);
        assert_eq!(f.osc(), 2.0);
    }

    #[test]
    fn sup_on_subinterval_uses_endpoints() {
        let f = tent();
        assert_eq!(f.sup_abs_on(0.0, 0.5), 1.0);
        assert_eq!(f.sup_abs_on(0.5, 1.5), 2.0);
    }

    #[test]
    fn compose_inserts_crossings() {
        // clamp at 1: r(t) = min(t, 1) on [0, 2]
        let r = PiecewiseLinear::new(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 1.0)]).unwrap();
        let g = tent().compose_outer(&r);
        assert_eq!(g.points(), &[(0.0, 0.0), (0.5, 1.0), (1.0, 1.0), (1.5, 1.0), (2.0, 0.0)]);
    }

    #[test]
    fn zip_merges_grids() {
        let a = PiecewiseLinear::linear(0.0, 1.0, 0.0, 1.0);
        let b = PiecewiseLinear::new(vec![(0.0, 0.0), (0.25, 1.0), (1.0, 1.0)]).unwrap();
        let d = a.zip_with(&b, |x, y| x - y);
        assert_eq!(d.len(), 3);
        assert_eq!(a.sup_distance(&b), 0.75);
    }

    #[test]
    fn simplify_drops_collinear() {
        let f = PiecewiseLinear::sample(0.0, 1.0, 10, |x| 3.0 * x);
        assert_eq!(f.simplified(1e-12).len(), 2);
        assert_eq!(tent().simplified(1e-12).len(), 3);
    }
}
