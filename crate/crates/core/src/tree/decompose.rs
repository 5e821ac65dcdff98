use super::{MeasuredTree, TreeFunction};
use crate::error::{Error, Result};
use crate::pl::PiecewiseLinear;
use crate::tree::MEAN_TOL;

/// Bound on the decomposition residual, relative to `max(1, sup|h|)`.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// A mean-zero function that varies only on `edge` and is constant on both
/// complementary subtrees. Values are stored after the mean shift.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementaryFunction {
    pub edge: usize,
    /// Profile on `[0, μ(edge)]`, oriented from `u` to `v`.
    pub profile: PiecewiseLinear,
    /// Value on the component containing `u`.
    pub value_u: f64,
    /// Value on the component containing `v`.
    pub value_v: f64,
}

impl ElementaryFunction {
    /// Builds the elementary function equal to `profile` on `edge`,
    /// extended by constants and shifted to mean zero.
    pub fn from_edge_profile(tree: &MeasuredTree, edge: usize, profile: PiecewiseLinear) -> Result<Self> {
        let (a, b) = tree.side_measures(edge)?;
        let mean = a * profile.first_value() + profile.integral() + b * profile.last_value();
        Ok(Self {
            edge,
            value_u: profile.first_value() - mean,
            value_v: profile.last_value() - mean,
            profile: profile.shift(-mean),
        })
    }

    pub fn mean(&self, tree: &MeasuredTree) -> f64 {
        let (a, b) = tree.side_measures(self.edge).expect("edge exists");
        a * self.value_u + self.profile.integral() + b * self.value_v
    }

    pub fn sup_abs(&self) -> f64 {
        self.profile.sup_abs()
    }

    /// Value at `node` (constant on each side of the edge).
    pub fn value_at_node(&self, tree: &MeasuredTree, node: usize) -> f64 {
        let e = tree.edges()[self.edge];
        if node == e.u {
            return self.value_u;
        }
        if node == e.v {
            return self.value_v;
        }
        // walk from `node` towards the root; crossing the edge decides the side
        let child = if tree.parent_edge(e.v) == Some(self.edge) { e.v } else { e.u };
        let mut n = node;
        while let Some(pe) = tree.parent_edge(n) {
            if pe == self.edge {
                break;
            }
            n = tree.edges()[pe].other(n);
        }
        let in_child_subtree = tree.parent_edge(n) == Some(self.edge) && n == child;
        let child_value = if child == e.v { self.value_v } else { self.value_u };
        let parent_value = if child == e.v { self.value_u } else { self.value_v };
        if in_child_subtree {
            child_value
        } else {
            parent_value
        }
    }

    /// As a [`TreeFunction`] on the whole tree.
    pub fn to_tree_function(&self, tree: &MeasuredTree) -> Result<TreeFunction> {
        let node_values: Vec<f64> = (0..tree.node_count()).map(|n| self.value_at_node(tree, n)).collect();
        let profiles = tree
            .edges()
            .iter()
            .enumerate()
            .map(|(id, e)| {
                if id == self.edge {
                    self.profile.clone()
                } else {
                    PiecewiseLinear::constant(0.0, e.measure, node_values[e.u])
                }
            })
            .collect();
        TreeFunction::new(tree, node_values, profiles)
    }
}

/// Splits a mean-zero `h` into one elementary function per edge:
/// `h_e = h̃_e − ∫h̃_e dμ`, where `h̃_e` equals `h` on `e` and the endpoint
/// values on the two complementary subtrees. The residual `h − Σ h_e` is
/// constant and mean-zero, hence zero; it is measured and checked.
pub fn elementary_decompose(tree: &MeasuredTree, h: &TreeFunction) -> Result<Vec<ElementaryFunction>> {
    let mean = h.mean();
    if mean.abs() > MEAN_TOL {
        return Err(Error::MeanNotZero(mean));
    }
    let parts = (0..tree.edge_count())
        .map(|e| ElementaryFunction::from_edge_profile(tree, e, h.profile(e).clone()))
        .collect::<Result<Vec<_>>>()?;

    let residual = residual_at_nodes(tree, h, &parts);
    if residual > RESIDUAL_TOL * h.sup_abs().max(1.0) {
        return Err(Error::Residual(residual));
    }
    Ok(parts)
}

/// `max_n |h(n) − Σ_e h_e(n)|`. The residual is constant on every edge, so
/// its values at the nodes determine it.
fn residual_at_nodes(tree: &MeasuredTree, h: &TreeFunction, parts: &[ElementaryFunction]) -> f64 {
    // rooted at node 0: a node below edge e sees the child-side constant,
    // every other node the parent-side one
    let mut sum = vec![0.0; tree.node_count()];
    let mut base = 0.0;
    let mut delta = vec![0.0; tree.edge_count()];
    for (id, part) in parts.iter().enumerate() {
        let e = tree.edges()[id];
        let (parent_value, child_value) = if tree.parent_edge(e.v) == Some(id) {
            (part.value_u, part.value_v)
        } else {
            (part.value_v, part.value_u)
        };
        base += parent_value;
        delta[id] = child_value - parent_value;
    }
    for &n in tree.preorder() {
        sum[n] = match tree.parent_edge(n) {
            None => base,
            Some(pe) => sum[tree.edges()[pe].other(n)] + delta[pe],
        };
    }
    h.node_values()
        .iter()
        .zip(&sum)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::tests::elem_ex;
    use crate::tree::{random_tree, TreeEdge};

    #[test]
    fn elementary_input_has_one_component() {
        let (tree, h) = elem_ex();
        let parts = elementary_decompose(&tree, &h).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].profile, *h.profile(0));
        assert_eq!((parts[0].value_u, parts[0].value_v), (-3.0, 1.0));
        assert!(parts[1].sup_abs() < 1e-12);
    }

    #[test]
    fn random_decomposition_sums_back() {
        let (tree, h) = random_tree(11, 5);
        let parts = elementary_decompose(&tree, &h).unwrap();
        assert_eq!(parts.len(), 5);
        let mut total: Option<TreeFunction> = None;
        for p in &parts {
            assert!(p.mean(&tree).abs() < 1e-12);
            let f = p.to_tree_function(&tree).unwrap();
            assert!(f.mean().abs() < 1e-12);
            total = Some(match total {
                None => f,
                Some(t) => t.combine(1.0, &f, 1.0),
            });
        }
        assert!(total.unwrap().sup_distance(&h) < 1e-10);
    }

    #[test]
    fn nonzero_mean_is_rejected() {
        let (tree, h) = elem_ex();
        assert!(matches!(
            elementary_decompose(&tree, &h.shift(0.1)),
            Err(Error::MeanNotZero(_))
        ));
    }

    #[test]
    fn node_values_respect_sides() {
        // star with centre 0: the elementary function of edge 0 is value_u on
        // the centre and on the other two leaves
        let tree = MeasuredTree::new(
            4,
            (1..4).map(|v| TreeEdge { u: 0, v, measure: 1.0 / 3.0 }).collect(),
        )
        .unwrap();
        let p = PiecewiseLinear::linear(0.0, 1.0 / 3.0, 0.0, 3.0);
        let el = ElementaryFunction::from_edge_profile(&tree, 0, p).unwrap();
        assert_eq!(el.value_at_node(&tree, 2), el.value_u);
        assert_eq!(el.value_at_node(&tree, 3), el.value_u);
        assert_eq!(el.value_at_node(&tree, 1), el.value_v);
    }
}
