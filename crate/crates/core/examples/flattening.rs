//! Admissible flattenings and the bound on how far they move the
//! symmetrization.
//!
//! ```text
//! cargo run --release --example flattening
//! ```

use reeb_symm::flatten::{apply_flattening, check_flattening_bound, make_admissible_flattening, tree_critical_values};
use reeb_symm::tree::{path_example, random_tree};

fn main() -> reeb_symm::Result<()> {
    let (tree, h) = path_example();
    let ks = tree_critical_values(&h);
    println!("critical values {ks:?}");
    for delta in [0.4, 0.1, 0.025] {
        let r = make_admissible_flattening(&ks, delta)?;
        let adm = r.admissibility();
        let b = check_flattening_bound(&tree, &h, &r)?;
        println!(
            "δ = {delta:<5} plateaus {:?}\n         admissible {} ε = {:.4}  ‖ΔΣ‖ = {:.4} ≤ {:.4}",
            r.plateaus,
            adm.holds(),
            b.epsilon,
            b.lhs,
            b.rhs
        );
    }

    // the flattened function is constant near every node value
    let r = make_admissible_flattening(&ks, 0.1)?;
    let flat = apply_flattening(&r, &tree, &h)?;
    let p = flat.profile(0);
    println!("near the minimum: {:.4} {:.4} {:.4}", p.eval(0.0), p.eval(0.001), p.eval(0.002));

    let mut worst: f64 = 0.0;
    for seed in 0..200 {
        let (tree, h) = random_tree(seed, 1 + seed as usize % 12);
        let r = make_admissible_flattening(&tree_critical_values(&h), 0.05 * h.osc())?;
        let b = check_flattening_bound(&tree, &h, &r)?;
        assert!(b.pass, "seed {seed}: {b:?}");
        worst = worst.max(b.lhs / b.rhs);
    }
    println!("200 random trees: largest lhs/rhs = {worst:.4}");
    Ok(())
}
