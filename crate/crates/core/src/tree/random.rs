//! Deterministic pseudorandom measured trees for tests and sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MeasuredTree, TreeEdge, TreeFunction};
use crate::pl::PiecewiseLinear;

/// A random tree with `n_edges` edges and a random mean-zero PL function.
///
/// Node `i > 0` hangs off a uniformly chosen earlier node; measures are a
/// normalized vector of exponential draws (a flat Dirichlet sample).
pub fn random_tree(seed: u64, n_edges: usize) -> (MeasuredTree, TreeFunction) {
    assert!(n_edges >= 1, "random_tree needs at least one edge");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..n_edges)
        .map(|_| -(1.0 - rng.random::<f64>()).ln() + 1e-3)
        .collect();
    let total: f64 = weights.iter().sum();
    let edges = (0..n_edges)
        .map(|i| TreeEdge {
            u: rng.random_range(0..=i),
            v: i + 1,
            measure: weights[i] / total,
        })
        .collect();
    let tree = MeasuredTree::new(n_edges + 1, edges).expect("construction yields a tree");
    let h = function_from_rng(&tree, &mut rng);
    (tree, h)
}

/// Another random mean-zero function on an existing tree.
pub fn random_function(tree: &MeasuredTree, seed: u64) -> TreeFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    function_from_rng(tree, &mut rng)
}

fn function_from_rng(tree: &MeasuredTree, rng: &mut ChaCha8Rng) -> TreeFunction {
    let node_values: Vec<f64> = (0..tree.node_count())
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    let profiles = tree
        .edges()
        .iter()
        .map(|e| {
            let interior = rng.random_range(0..=3usize);
            let mut ss: Vec<f64> = (0..interior)
                .map(|_| rng.random_range(0.05..0.95) * e.measure)
                .collect();
            ss.sort_by(f64::total_cmp);
            ss.dedup();
            let mut pts = Vec::with_capacity(ss.len() + 2);
            pts.push((0.0, node_values[e.u]));
            pts.extend(ss.into_iter().map(|s| (s, rng.random_range(-1.5..1.5))));
            pts.push((e.measure, node_values[e.v]));
            PiecewiseLinear::new(pts).expect("increasing breakpoints")
        })
        .collect();
    TreeFunction::new(tree, node_values, profiles)
        .expect("consistent by construction")
        .mean_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let (tree, h) = random_tree(1, 1);
        assert_eq!(tree.edge_count(), 1);
        assert_eq!(tree.edges()[0].measure, 1.0);
        assert!(h.mean().abs() < 1e-15);
    }

    #[test]
    fn ten_edges() {
        let (tree, h) = random_tree(7, 10);
        assert_eq!((tree.edge_count(), tree.node_count()), (10, 11));
        assert!((tree.total_measure() - 1.0).abs() < 1e-12);
        assert!(h.mean().abs() < 1e-12);
    }

    #[test]
    fn deterministic() {
        let (t1, h1) = random_tree(42, 8);
        let (t2, h2) = random_tree(42, 8);
        assert_eq!(t1.edges(), t2.edges());
        assert_eq!(h1, h2);
        let (t3, _) = random_tree(43, 8);
        assert_ne!(t1.edges(), t3.edges());
    }
}
