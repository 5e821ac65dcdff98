//! The closed-form estimates: disk displacement, the profile bound,
//! the Hölder-type bound, and the Banach indicatrix of a tree.
//!
//! ```text
//! cargo run --example bounds
//! ```

use reeb_symm::analysis::{banach_indicatrix_sum, holder_bound, profile_hofer_bound, sikorav_estimate, DEFAULT_C_DOUBLE_PRIME};
use reeb_symm::profile::EvenProfile;
use reeb_symm::tree::path_example;

fn main() -> reeb_symm::Result<()> {
    for k in [1, 4, 16] {
        println!("disk estimate ‖F‖ = 1, k = {k:2}: {:.4}", sikorav_estimate(1.0, k)?);
    }

    let u = EvenProfile::sample(513, |z| 0.1 * (std::f64::consts::TAU * z).cos());
    for k_max in [2, 10, 100] {
        println!("profile bound, k ≤ {k_max:3}: {:.5}", profile_hofer_bound(&u, k_max)?);
    }

    for eps in [1e-2, 1e-4, 1e-6] {
        println!("Hölder bound ε = {eps:.0e}, E = 2: {:.5}", holder_bound(eps, 2.0, DEFAULT_C_DOUBLE_PRIME)?);
    }
    if let Err(e) = holder_bound(1.5, 0.0, DEFAULT_C_DOUBLE_PRIME) {
        println!("ε = 1.5: {e}");
    }

    let (tree, h) = path_example();
    println!(
        "path example: Σ m_j ℓ(I_j) = {} over a value range of {}",
        banach_indicatrix_sum(&tree, h.node_values()),
        h.osc()
    );
    Ok(())
}
