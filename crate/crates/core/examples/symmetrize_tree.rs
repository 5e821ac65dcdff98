//! Symmetrize a hand-built measured tree and compare with a dense-grid
//! rearrangement of the same function.
//!
//! ```text
//! cargo run --example symmetrize_tree
//! ```

use reeb_symm::oracle::dense_grid_symmetrize;
use reeb_symm::tree::{elementary_decompose, path_example, symmetrize_tree, MeasuredTree, TreeDocument, TreeEdge, TreeFunction};

fn main() -> reeb_symm::Result<()> {
    // path 0 - 1 - 2 with values -3, 1, 1 and half the mass on each edge
    let (tree, h) = path_example();
    let u = symmetrize_tree(&tree, &h)?;
    println!("path example, mean {:.1e}", h.mean());
    for z in [-0.5, -0.25, 0.0, 0.25, 0.5] {
        println!("  Σ({z:5}) = {:.6}", u.value_at(z));
    }
    let grid = dense_grid_symmetrize(&tree, &h, 2001)?;
    let worst = grid.iter().map(|&(z, v)| (u.value_at(z) - v).abs()).fold(0.0, f64::max);
    println!("  dense-grid deviation {worst:.2e}");

    // a tripod: one saddle, three leaves, unequal masses
    let edges = vec![
        TreeEdge { u: 0, v: 3, measure: 0.5 },
        TreeEdge { u: 1, v: 3, measure: 0.3 },
        TreeEdge { u: 2, v: 3, measure: 0.2 },
    ];
    let tripod = MeasuredTree::new(4, edges)?;
    let h = TreeFunction::linear(&tripod, vec![-1.0, 0.8, 1.2, 0.0])?.mean_zero();
    let parts = elementary_decompose(&tripod, &h)?;
    println!("tripod: {} elementary parts, sup |h| = {:.4}", parts.len(), h.sup_abs());
    let u = symmetrize_tree(&tripod, &h)?;
    println!("  Σ(0) = {:.6}, ∫Σ = {:.2e}, osc {:.4}", u.value_at(0.0), u.integral(), u.osc());

    // trees round-trip through JSON
    let json = TreeDocument::new(&tripod, &h, None).to_json()?;
    let (back, h2) = TreeDocument::from_json(&json)?.to_tree()?;
    println!("  JSON round trip: {} bytes, same Σ: {}", json.len(), symmetrize_tree(&back, &h2)?.sup_distance(&u) == 0.0);
    Ok(())
}
