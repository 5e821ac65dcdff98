//! Growth-type classification of symmetrized fields.
//!
//! ```text
//! cargo run --release --example classify [SUBDIVISIONS]
//! ```

use reeb_symm::analysis::{classify, growth_lower_bound, DEFAULT_B_GRID, DEFAULT_K_MAX, MESH_TOL_FRACTION};
use reeb_symm::mesh::{builtin_field, make_icosphere, FieldSpec, BUILTIN_FIELDS};
use reeb_symm::profile::EvenProfile;
use reeb_symm::tree::symmetrize_field;

fn main() -> reeb_symm::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let mesh = make_icosphere(n)?;
    for name in BUILTIN_FIELDS {
        let field = builtin_field(&mesh, &FieldSpec::named(name))?;
        let u = symmetrize_field(&mesh, &field)?;
        let c = classify(&u, MESH_TOL_FRACTION * field.osc(), DEFAULT_K_MAX, DEFAULT_B_GRID)?;
        match (c.rho_lower, c.witness) {
            (Some(rho), Some(w)) => println!("{name:12} {:?} rho >= {rho:.5} at k = {}, B = {:.4}", c.verdict, w.k, w.b),
            _ => println!("{name:12} {:?} bound {} (scanned sup {:.1e})", c.verdict, c.hofer_bound.unwrap_or_default(), c.scanned_sup),
        }
    }

    // z² − 1/12 exactly: the equator value is the whole story
    let u = EvenProfile::sample(1025, |z| z * z - 1.0 / 12.0);
    let (rho, link) = growth_lower_bound(&u, DEFAULT_K_MAX, DEFAULT_B_GRID)?;
    println!("exact z² − 1/12: rho = {rho:.6} (1/12 = {:.6}) at k = {}", 1.0 / 12.0, link.k);
    Ok(())
}
