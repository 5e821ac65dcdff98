//! Independent checks of the main pipeline: Monte Carlo areas, level-set
//! component counts, and the dense-grid rearrangement.
//!
//! ```text
//! cargo run --release --example oracles [SEED]
//! ```

use reeb_symm::contour::{build_contour_tree, sublevel_area};
use reeb_symm::mesh::{builtin_field, make_icosphere, FieldSpec};
use reeb_symm::oracle::{edges_spanning, level_set_components, mc_sublevel_area};
use reeb_symm::verify::oracle_reports;

fn main() -> reeb_symm::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mesh = make_icosphere(4)?;
    let field = builtin_field(&mesh, &FieldSpec::named("double_bump"))?;
    let ct = build_contour_tree(&mesh, &field)?;
    let values: Vec<f64> = ct.function.node_values().to_vec();

    for q in [0.2, 0.5, 0.8] {
        let t = field.min() + q * field.osc();
        let mc = mc_sublevel_area(&mesh, &field, t, 100_000, seed)?;
        println!(
            "t = {t:+.4}: area {:.5}  MC {:.5} ± {:.5}  components {} / tree edges {}",
            sublevel_area(&mesh, &field, t),
            mc.area,
            mc.std_error,
            level_set_components(&mesh, &field, t),
            edges_spanning(&ct.tree, &values, t)
        );
    }

    for r in oracle_reports(seed, true)? {
        println!("[{}] {}: |Δ| = {:.2e} (tol {})", if r.pass { "ok" } else { "FAIL" }, r.quantity, r.abs_deviation, r.tolerance_name);
    }
    Ok(())
}
