//! Even profiles on `[-1/2, 1/2]`: admissible links, link averages,
//! the `‖·‖_k` norms, and reconstruction of a value from two links.
//!
//! ```text
//! cargo run --example profile_links
//! ```

use reeb_symm::profile::{inner_radius, EvenProfile, LinkSpec};

fn main() -> reeb_symm::Result<()> {
    let u = EvenProfile::sample(513, |z| z * z - 1.0 / 12.0);
    println!("u(z) = z² − 1/12: ∫u = {:.2e}, sup|u| = {:.6}", u.integral(), u.sup_abs());

    for (k, b) in [(1, 0.5), (2, 0.4), (5, 0.2), (9, 0.15)] {
        let link = LinkSpec::new(k, b)?;
        let pts: Vec<String> = link.points().iter().map(|p| format!("{p:.3}")).collect();
        println!("L({k}, {b}) spacing {:.4} points [{}] avg {:+.6}", link.spacing(), pts.join(", "), u.link_average(&link));
    }
    for (k, b) in [(1, 0.3), (3, 0.2), (3, 0.5)] {
        if let Err(e) = LinkSpec::new(k, b) {
            println!("L({k}, {b}) rejected: {e}");
        }
    }

    for k in [2, 4, 16, 64] {
        println!("‖u‖_{k:<2} = {:.6}  (I_k radius {:.4})", u.norm_k(k)?, inner_radius(k));
    }

    // the two links differ by ±z, so u(z) drops out of a linear combination
    for z in [0.0, 0.1, 0.3] {
        println!("u({z}) = {:.6}  via links (k = 9): {:.6}", u.value_at(z), u.reconstruct_via_links(z, 9)?);
    }
    Ok(())
}
