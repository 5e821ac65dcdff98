use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{norm, ScalarField, SphereMesh, Vec3};
use crate::error::{Error, Result};

pub const BUILTIN_FIELDS: &[&str] = &["height_z", "height_x", "quadratic_z", "cubic_z", "double_bump"];

/// A builtin field name with optional `key=value` parameters,
/// written `name` or `name:key=value,key=value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
}

impl FieldSpec {
    pub fn named(name: &str) -> Self {
        Self {
            name: name.to_owned(),
            params: BTreeMap::new(),
        }
    }

    fn param(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::BadParam(format!("`{}` takes no parameter `{k}`", self.name))),
            None => Ok(()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, Some(r)),
            None => (s, None),
        };
        let mut params = BTreeMap::new();
        for kv in rest.into_iter().flat_map(|r| r.split(',')).filter(|kv| !kv.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::BadParam(format!("expected key=value, found `{kv}`")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::BadParam(format!("parameter `{k}` is not a number")))?;
            params.insert(k.trim().to_owned(), v);
        }
        Ok(Self {
            name: name.trim().to_owned(),
            params,
        })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}

/// Affine height in `[-1/2, 1/2]` along `axis`, mapping the extreme vertex
/// coordinates to the endpoints.
fn height(mesh: &SphereMesh, axis: usize) -> Vec<f64> {
    let (lo, hi) = mesh
        .vertices()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p[axis]), hi.max(p[axis]))
        });
    mesh.vertices()
        .iter()
        .map(|p| (p[axis] - lo) / (hi - lo) - 0.5)
        .collect()
}

fn gaussian(p: Vec3, c: Vec3, sigma: f64) -> f64 {
    let d = [p[0] - c[0], p[1] - c[1], p[2] - c[2]];
    (-(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) / (2.0 * sigma * sigma)).exp()
}

/// Samples a named analytic field at the vertices and removes its mean.
///
/// * `height_z`, `height_x`: the coordinate, rescaled to `[-1/2, 1/2]`.
/// * `quadratic_z`: `z² − 1/12` in the rescaled height.
/// * `cubic_z`: `z³ + z` in the rescaled height (odd).
/// * `double_bump`: two Gaussian bumps on the unit directions
///   `(±sin θ, 0, cos θ)` plus `tilt·z`. Parameters `a1`, `a2`, `sigma`,
///   `theta`, `tilt`.
pub fn builtin_field(mesh: &SphereMesh, spec: &FieldSpec) -> Result<ScalarField> {
    if (mesh.total_area() - 1.0).abs() > 1e-9 {
        return Err(Error::BadParam(format!(
            "builtin fields need an area-normalized mesh (total area {})",
            mesh.total_area()
        )));
    }
    let values = match spec.name.as_str() {
        "height_z" => {
            spec.check_keys(&[])?;
            height(mesh, 2)
        }
        "height_x" => {
            spec.check_keys(&[])?;
            height(mesh, 0)
        }
        "quadratic_z" => {
            spec.check_keys(&[])?;
            height(mesh, 2).into_iter().map(|z| z * z - 1.0 / 12.0).collect()
        }
        "cubic_z" => {
            spec.check_keys(&[])?;
            height(mesh, 2).into_iter().map(|z| z * z * z + z).collect()
        }
        "double_bump" => {
            spec.check_keys(&["a1", "a2", "sigma", "theta", "tilt"])?;
            let a1 = spec.param("a1", 1.0);
            let a2 = spec.param("a2", 0.7);
            let sigma = spec.param("sigma", 0.35);
            let theta = spec.param("theta", 0.9);
            let tilt = spec.param("tilt", 0.3);
            if !(sigma > 0.0) {
                return Err(Error::BadParam("sigma must be positive".into()));
            }
            let c1 = [theta.sin(), 0.0, theta.cos()];
            let c2 = [-theta.sin(), 0.0, theta.cos()];
            mesh.vertices()
                .iter()
                .map(|&p| {
                    let r = norm(p);
                    let u = [p[0] / r, p[1] / r, p[2] / r];
                    a1 * gaussian(u, c1, sigma) + a2 * gaussian(u, c2, sigma) + tilt * u[2]
                })
                .collect()
        }
        other => return Err(Error::UnknownField(other.to_owned())),
    };
    Ok(ScalarField::new(mesh, values)?.normalize_mean_zero(mesh))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::make_icosphere;

    #[test]
    fn parse_spec() {
        let s: FieldSpec = "double_bump:a1=2,sigma=0.3".parse().unwrap();
        assert_eq!(s.name, "double_bump");
        assert_eq!(s.params["a1"], 2.0);
        assert_eq!(s.to_string(), "double_bump:a1=2,sigma=0.3");
        assert!("x:a".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn unknown_field() {
        let m = make_icosphere(1).unwrap();
        assert!(matches!(
            builtin_field(&m, &FieldSpec::named("foo")),
            Err(Error::UnknownField(_))
        ));
        let bad: FieldSpec = "height_z:a1=1".parse().unwrap();
        assert!(matches!(builtin_field(&m, &bad), Err(Error::BadParam(_))));
    }

    #[test]
    fn height_z_range_and_mean() {
        let m = make_icosphere(5).unwrap();
        let f = builtin_field(&m, &FieldSpec::named("height_z")).unwrap();
        assert!(f.min() >= -0.5 - 1e-12 && f.max() <= 0.5 + 1e-12);
        assert!((f.osc() - 1.0).abs() < 1e-12);
        assert!(f.mean(&m).abs() < 1e-10);
    }

    #[test]
    fn quadratic_mean_matches_quadrature() {
        // before normalization the mesh mean of z² − 1/12 is a quadrature error
        let m = make_icosphere(5).unwrap();
        let z = height(&m, 2);
        let raw = ScalarField::new(&m, z.iter().map(|z| z * z - 1.0 / 12.0).collect()).unwrap();
        assert!(raw.mean(&m).abs() < 1e-3);
        let f = builtin_field(&m, &FieldSpec::named("quadratic_z")).unwrap();
        assert!(f.mean(&m).abs() < 1e-10);
    }

    #[test]
    fn shifted_height_loses_its_mean() {
        let m = make_icosphere(5).unwrap();
        let z = height(&m, 2);
        let shifted = ScalarField::new(&m, z.iter().map(|z| z + 0.3).collect()).unwrap();
        let f = shifted.normalize_mean_zero(&m);
        let dev = f.values.iter().zip(&z).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(dev < 1e-3, "{dev}");
    }
}
