//! Run configuration shared by the binary and the examples, and the JSON
//! envelope that records it next to every result.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::{DEFAULT_B_GRID, DEFAULT_K_MAX, MIN_B_GRID};
use crate::error::{Error, Result};
use crate::mesh::{builtin_field, load_field_csv, load_mesh, make_icosphere, FieldSpec, MeshFormat, ScalarField, SphereMesh, MAX_SUBDIVISIONS};
use crate::tree::{MeasuredTree, TreeDocument, TreeFunction};

pub const FORMAT_VERSION: &str = "reeb-symm/1";
pub const MAX_K: usize = 10_000;
pub const MAX_B_GRID: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mesh: Option<PathBuf>,
    /// Per-vertex values for `mesh`, as `vertex_index,value` lines.
    pub field_csv: Option<PathBuf>,
    pub tree: Option<PathBuf>,
    pub icosphere: Option<u32>,
    /// Builtin field as `name[:key=value,…]`.
    pub field: Option<String>,
    pub tol: Option<f64>,
    pub k_max: usize,
    pub b_grid: usize,
    pub out: PathBuf,
    pub seed: u64,
    pub quick: bool,
    /// Name of a verification check to force into failure (test hook).
    pub inject_fault: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mesh: None,
            field_csv: None,
            tree: None,
            icosphere: None,
            field: None,
            tol: None,
            k_max: DEFAULT_K_MAX,
            b_grid: DEFAULT_B_GRID,
            out: PathBuf::from("out"),
            seed: 1,
            quick: false,
            inject_fault: None,
        }
    }
}

/// What a command runs on.
pub enum Input {
    Mesh { mesh: SphereMesh, field: ScalarField },
    Tree { tree: MeasuredTree, function: TreeFunction },
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if let Some(tol) = self.tol {
            if !(tol > 0.0 && tol.is_finite()) {
                return bad(format!("--tol must be positive and finite, got {tol}"));
            }
        }
        if !(1..=MAX_K).contains(&self.k_max) {
            return bad(format!("--kmax must be in 1..={MAX_K}, got {}", self.k_max));
        }
        if !(MIN_B_GRID..=MAX_B_GRID).contains(&self.b_grid) {
            return bad(format!("--bgrid must be in {MIN_B_GRID}..={MAX_B_GRID}, got {}", self.b_grid));
        }
        if let Some(n) = self.icosphere {
            if n > MAX_SUBDIVISIONS {
                return bad(format!("--icosphere must be at most {MAX_SUBDIVISIONS}, got {n}"));
            }
        }
        let sources = [self.mesh.is_some(), self.icosphere.is_some(), self.tree.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
        if sources > 1 {
            return bad("give only one of --mesh, --icosphere, --tree".into());
        }
        if self.tree.is_some() && (self.field.is_some() || self.field_csv.is_some()) {
            return bad("--tree already carries its function; drop --field".into());
        }
        if self.field.is_some() && self.field_csv.is_some() {
            return bad("give either --field or --field-csv".into());
        }
        if let Some(f) = &self.field {
            f.parse::<FieldSpec>()?;
        }
        Ok(())
    }

    pub fn field_spec(&self) -> Result<Option<FieldSpec>> {
        self.field.as_deref().map(str::parse).transpose()
    }

    /// Loads the mesh (area-normalized) and its mean-zero field, or a tree.
    pub fn load_input(&self) -> Result<Input> {
        self.validate()?;
        if let Some(path) = &self.tree {
            let text = fs::read_to_string(path)?;
            let (tree, function) = TreeDocument::from_json(&text)?.to_tree()?;
            return Ok(Input::Tree { tree, function });
        }
        let mesh = if let Some(path) = &self.mesh {
            let format = MeshFormat::from_path(path)
                .ok_or_else(|| Error::Config(format!("cannot tell mesh format of {}", path.display())))?;
            load_mesh(path, format)?.normalize_total_area()?
        } else if let Some(n) = self.icosphere {
            make_icosphere(n)?
        } else {
            return Err(Error::Config("no input: give --mesh, --icosphere or --tree".into()));
        };
        let field = if let Some(path) = &self.field_csv {
            load_field_csv(&mesh, &fs::read_to_string(path)?)?.normalize_mean_zero(&mesh)
        } else if let Some(spec) = self.field_spec()? {
            builtin_field(&mesh, &spec)?
        } else {
            return Err(Error::Config("no field: give --field or --field-csv".into()));
        };
        Ok(Input::Mesh { mesh, field })
    }

    /// Writes `payload` wrapped in an [`Envelope`] to `out/name`.
    pub fn write_json<T: Serialize>(&self, name: &str, payload: T) -> Result<PathBuf> {
        let text = serde_json::to_string_pretty(&Envelope::new(self, payload))?;
        self.write_text(name, &text)
    }

    pub fn write_text(&self, name: &str, text: &str) -> Result<PathBuf> {
        fs::create_dir_all(&self.out)?;
        let path = self.out.join(name);
        fs::write(&path, text)?;
        Ok(path)
    }

    pub fn out_dir(&self) -> &Path {
        &self.out
    }
}

/// Provenance wrapper: format version, the full run configuration, and the
/// payload fields at top level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub format_version: String,
    pub config: RunConfig,
    #[serde(flatten)]
    pub payload: T,
}

impl<T> Envelope<T> {
    pub fn new(config: &RunConfig, payload: T) -> Self {
        Self {
            format_version: FORMAT_VERSION.to_owned(),
            config: config.clone(),
            payload,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_values() {
        let cases = [
            RunConfig { tol: Some(-1.0), ..Default::default() },
            RunConfig { b_grid: 8, ..Default::default() },
            RunConfig { k_max: 0, ..Default::default() },
            RunConfig { icosphere: Some(40), ..Default::default() },
            RunConfig { icosphere: Some(2), tree: Some("t.json".into()), ..Default::default() },
            RunConfig { field: Some("height_z:".into()), field_csv: Some("f.csv".into()), ..Default::default() },
        ];
        for c in cases {
            assert!(matches!(c.validate(), Err(Error::Config(_))), "{c:?}");
        }
    }

    #[test]
    fn envelope_carries_config() {
        let cfg = RunConfig { icosphere: Some(3), field: Some("height_z".into()), ..Default::default() };
        let v = serde_json::to_value(Envelope::new(&cfg, serde_json::json!({"answer": 1}))).unwrap();
        assert_eq!(v["format_version"], FORMAT_VERSION);
        assert_eq!(v["config"]["icosphere"], 3);
        assert_eq!(v["answer"], 1);
    }
}
