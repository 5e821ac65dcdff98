//! Load a mesh from OFF text, validate it as a sphere, and attach a field.
//!
//! ```text
//! cargo run --example mesh_ingest
//! ```

use reeb_symm::mesh::{builtin_field, make_icosphere, parse_off, write_off, FieldSpec, SphereMesh};

fn main() -> reeb_symm::Result<()> {
    // round-trip an icosphere through OFF text
    let ico = make_icosphere(2)?;
    let (vertices, triangles) = parse_off(&write_off(&ico))?;
    let mesh = SphereMesh::new(vertices, triangles)?.normalize_total_area()?;
    println!(
        "V={} E={} F={} chi={} area={:.12}",
        mesh.vertex_count(),
        mesh.edge_count(),
        mesh.face_count(),
        mesh.euler_characteristic(),
        mesh.total_area()
    );

    let spec: FieldSpec = "double_bump".parse()?;
    let field = builtin_field(&mesh, &spec)?;
    println!("{spec}: min {:.4} max {:.4} mean {:.2e}", field.min(), field.max(), field.mean(&mesh));

    // a tetrahedron is a sphere too; a lone triangle is not
    let tet = "OFF\n4 4 0\n1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n3 0 1 2\n3 0 3 1\n3 0 2 3\n3 1 3 2\n";
    let (v, t) = parse_off(tet)?;
    println!("tetrahedron chi = {}", SphereMesh::new(v, t)?.euler_characteristic());
    let (v, t) = parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n")?;
    match SphereMesh::new(v, t) {
        Ok(_) => println!("open triangle accepted?"),
        Err(e) => println!("open triangle rejected: {e} (exit code {})", e.exit_code()),
    }
    Ok(())
}
