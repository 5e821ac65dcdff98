//! Critical points and the measured Reeb tree of a few builtin fields.
//!
//! ```text
//! cargo run --release --example contour_tree [SUBDIVISIONS]
//! ```

use reeb_symm::contour::{build_contour_tree, critical_points, sublevel_area};
use reeb_symm::mesh::{builtin_field, make_icosphere, FieldSpec};

fn main() -> reeb_symm::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let mesh = make_icosphere(n)?;
    println!("icosphere {n}: {} vertices", mesh.vertex_count());

    for name in ["height_z", "double_bump", "quadratic_z"] {
        let field = builtin_field(&mesh, &FieldSpec::named(name))?;
        let crit = critical_points(&mesh, &field)?;
        let ct = build_contour_tree(&mesh, &field)?;
        println!(
            "{name:12} critical={:4} skeleton={:4} tree edges={:4} measure={:.12}",
            crit.len(),
            ct.skeleton.len(),
            ct.edge_count(),
            ct.tree.total_measure()
        );
        if ct.edge_count() <= 3 {
            for (i, e) in ct.tree.edges().iter().enumerate() {
                let p = ct.profile(i);
                println!(
                    "    edge {i}: nodes {}-{} area {:.6} values {:.4} .. {:.4} ({} breakpoints)",
                    e.u,
                    e.v,
                    e.measure,
                    p.first_value(),
                    p.last_value(),
                    p.len()
                );
            }
        }
    }

    // the sublevel area of the height is linear in t on the round sphere
    let field = builtin_field(&mesh, &FieldSpec::named("height_z"))?;
    for t in [-0.5, 0.0, 0.25] {
        println!("Area(z < {t:5}) = {:.6}   exact {:.6}", sublevel_area(&mesh, &field, t), t + 0.5);
    }
    Ok(())
}
