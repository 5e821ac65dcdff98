//! Measured trees, functions on them, and their symmetrization.
//!
//! A [`MeasuredTree`] carries a probability measure that is Lebesgue on
//! each edge and has no atoms at nodes. A [`TreeFunction`] assigns every
//! edge a continuous piecewise-linear profile in the measure coordinate,
//! agreeing with the node values at both ends.

mod decompose;
mod json;
mod random;
mod symmetrize;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pl::PiecewiseLinear;

pub use decompose::{elementary_decompose, ElementaryFunction, RESIDUAL_TOL};
pub use json::{NodeRecord, EdgeRecord, TreeDocument};
pub use random::{random_function, random_tree};
pub use symmetrize::{symmetrize_elementary, symmetrize_field, symmetrize_tree, MEAN_TOL};

/// Tolerance on `Σ μ(e) = 1` accepted at construction.
pub const MEASURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Minimum,
    Maximum,
    Saddle,
    Regular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub u: usize,
    pub v: usize,
    pub measure: f64,
}

impl TreeEdge {
    pub fn other(&self, node: usize) -> usize {
        if node == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Which end of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    U,
    V,
}

#[derive(Debug, Clone)]
pub struct MeasuredTree {
    node_count: usize,
    edges: Vec<TreeEdge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    /// Rooted at node 0: the edge to the parent, or `None` for the root.
    parent_edge: Vec<Option<usize>>,
    /// Nodes in DFS preorder from the root.
    order: Vec<usize>,
    /// Measure of the subtree hanging below each node.
    below: Vec<f64>,
    total: f64,
}

impl MeasuredTree {
    /// Nodes are `0..node_count`, edges are numbered by position.
    pub fn new(node_count: usize, edges: Vec<TreeEdge>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::MalformedTree("tree has no nodes".into()));
        }
        if edges.len() + 1 != node_count {
            return Err(Error::MalformedTree(format!(
                "{} nodes and {} edges cannot form a tree",
                node_count,
                edges.len()
            )));
        }
        let mut adjacency = vec![Vec::new(); node_count];
        for (id, e) in edges.iter().enumerate() {
            if e.u >= node_count || e.v >= node_count || e.u == e.v {
                return Err(Error::MalformedTree(format!("edge {id} has bad endpoints")));
            }
            if !(e.measure > 0.0) || !e.measure.is_finite() {
                return Err(Error::MalformedTree(format!(
                    "edge {id} has non-positive measure {}",
                    e.measure
                )));
            }
            adjacency[e.u].push((id, e.v));
            adjacency[e.v].push((id, e.u));
        }
        let total: f64 = edges.iter().map(|e| e.measure).sum();
        if edges.is_empty() {
            // a single node carries no measure at all
        } else if (total - 1.0).abs() > MEASURE_TOL {
            return Err(Error::MalformedTree(format!("total measure {total} is not 1")));
        }

        let mut parent_edge = vec![None; node_count];
        let mut seen = vec![false; node_count];
        let mut order = Vec::with_capacity(node_count);
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(n) = stack.pop() {
            order.push(n);
            for &(e, m) in adjacency[n].iter().rev() {
                if !seen[m] {
                    seen[m] = true;
                    parent_edge[m] = Some(e);
                    stack.push(m);
                }
            }
        }
        if order.len() != node_count {
            return Err(Error::MalformedTree("tree is not connected".into()));
        }
        let mut below = vec![0.0; node_count];
        for &n in order.iter().rev() {
            if let Some(e) = parent_edge[n] {
                let p = edges[e].other(n);
                below[p] += below[n] + edges[e].measure;
            }
        }
        Ok(Self {
            node_count,
            edges,
            adjacency,
            parent_edge,
            order,
            below,
            total,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<&TreeEdge> {
        self.edges.get(id).ok_or(Error::UnknownEdge(id))
    }

    /// `(edge id, neighbour)` pairs incident to `node`.
    pub fn neighbors(&self, node: usize) -> &[(usize, usize)] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.node_count).filter(|&n| self.degree(n) == 1)
    }

    pub fn total_measure(&self) -> f64 {
        self.total
    }

    pub(crate) fn preorder(&self) -> &[usize] {
        &self.order
    }

    pub(crate) fn parent_edge(&self, node: usize) -> Option<usize> {
        self.parent_edge[node]
    }

    /// `μ(T_{e,endpoint})`: the measure of the component of the tree minus
    /// the open edge `e` that contains the given endpoint.
    pub fn subtree_measure(&self, edge: usize, endpoint: Endpoint) -> Result<f64> {
        let e = self.edge(edge)?;
        let node = match endpoint {
            Endpoint::U => e.u,
            Endpoint::V => e.v,
        };
        // `child` is the endpoint further from the root
        let child = if self.parent_edge[e.v] == Some(edge) { e.v } else { e.u };
        let child_side = self.below[child];
        Ok(if node == child {
            child_side
        } else {
            (self.total - e.measure - child_side).max(0.0)
        })
    }

    /// Both complementary measures `(μ(T_{e,u}), μ(T_{e,v}))`.
    pub fn side_measures(&self, edge: usize) -> Result<(f64, f64)> {
        Ok((
            self.subtree_measure(edge, Endpoint::U)?,
            self.subtree_measure(edge, Endpoint::V)?,
        ))
    }
}

/// Number of edges of the tree, `e(H)` for a Reeb tree.
pub fn count_reeb_edges(tree: &MeasuredTree) -> usize {
    tree.edge_count()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeFunction {
    node_values: Vec<f64>,
    /// One profile per edge on `[0, μ(e)]`, oriented from `u` to `v`.
    profiles: Vec<PiecewiseLinear>,
}

impl TreeFunction {
    /// Validates profile domains against the edge measures and continuity at
    /// the nodes. Profile endpoints must equal the node values exactly.
    pub fn new(tree: &MeasuredTree, node_values: Vec<f64>, profiles: Vec<PiecewiseLinear>) -> Result<Self> {
        if node_values.len() != tree.node_count() || profiles.len() != tree.edge_count() {
            return Err(Error::MalformedTree("function does not match the tree shape".into()));
        }
        for (id, (e, p)) in tree.edges().iter().zip(&profiles).enumerate() {
            let (a, b) = p.domain();
            if a != 0.0 || (b - e.measure).abs() > 1e-12 * e.measure.max(1.0) {
                return Err(Error::MalformedTree(format!(
                    "profile of edge {id} spans [{a}, {b}], expected [0, {}]",
                    e.measure
                )));
            }
            if p.first_value() != node_values[e.u] || p.last_value() != node_values[e.v] {
                return Err(Error::MalformedTree(format!("profile of edge {id} is discontinuous at a node")));
            }
        }
        Ok(Self { node_values, profiles })
    }

    /// A function that is linear on every edge.
    pub fn linear(tree: &MeasuredTree, node_values: Vec<f64>) -> Result<Self> {
        if node_values.len() != tree.node_count() {
            return Err(Error::MalformedTree("function does not match the tree shape".into()));
        }
        let profiles = tree
            .edges()
            .iter()
            .map(|e| PiecewiseLinear::linear(0.0, e.measure, node_values[e.u], node_values[e.v]))
            .collect();
        Self::new(tree, node_values, profiles)
    }

    pub fn node_values(&self) -> &[f64] {
        &self.node_values
    }

    pub fn profiles(&self) -> &[PiecewiseLinear] {
        &self.profiles
    }

    pub fn profile(&self, edge: usize) -> &PiecewiseLinear {
        &self.profiles[edge]
    }

    /// `∫ h dμ`, exact for PL profiles.
    pub fn mean(&self) -> f64 {
        self.profiles.iter().map(PiecewiseLinear::integral).sum()
    }

    pub fn min(&self) -> f64 {
        self.profiles.iter().map(PiecewiseLinear::min_value).fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.profiles.iter().map(PiecewiseLinear::max_value).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn osc(&self) -> f64 {
        if self.profiles.is_empty() {
            return 0.0;
        }
        self.max() - self.min()
    }

    pub fn sup_abs(&self) -> f64 {
        self.profiles.iter().map(PiecewiseLinear::sup_abs).fold(0.0, f64::max)
    }

    pub fn map_values(&self, f: impl Fn(f64) -> f64 + Copy) -> Self {
        Self {
            node_values: self.node_values.iter().map(|&v| f(v)).collect(),
            profiles: self.profiles.iter().map(|p| p.map_values(f)).collect(),
        }
    }

    pub fn shift(&self, c: f64) -> Self {
        self.map_values(|v| v + c)
    }

    pub fn scale(&self, t: f64) -> Self {
        self.map_values(|v| t * v)
    }

    /// Subtracts the mean.
    pub fn mean_zero(&self) -> Self {
        let m = self.mean();
        self.shift(-m)
    }

    /// `a·self + b·other` on the same tree, exact on the merged breakpoints.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        let node_values = self
            .node_values
            .iter()
            .zip(&other.node_values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        let profiles = self
            .profiles
            .iter()
            .zip(&other.profiles)
            .map(|(p, q)| p.zip_with(q, |x, y| a * x + b * y))
            .collect();
        Self { node_values, profiles }
    }

    /// `sup |self − other|` over the whole tree.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.profiles
            .iter()
            .zip(&other.profiles)
            .map(|(p, q)| p.sup_distance(q))
            .fold(0.0, f64::max)
    }

    /// Node kind inferred from the directions in which the function leaves it.
    pub fn node_kind(&self, tree: &MeasuredTree, node: usize) -> NodeKind {
        let mut up = 0;
        let mut down = 0;
        for &(e, _) in tree.neighbors(node) {
            let p = &self.profiles[e];
            let pts = p.points();
            let here = self.node_values[node];
            // first breakpoint away from the node with a different value
            let leaving: Box<dyn Iterator<Item = &(f64, f64)>> = if tree.edges()[e].u == node {
                Box::new(pts.iter())
            } else {
                Box::new(pts.iter().rev())
            };
            match leaving.map(|q| q.1).find(|&y| y != here) {
                Some(y) if y > here => up += 1,
                Some(_) => down += 1,
                None => {}
            }
        }
        match (down, up) {
            (0, _) => NodeKind::Minimum,
            (_, 0) => NodeKind::Maximum,
            (1, 1) => NodeKind::Regular,
            _ => NodeKind::Saddle,
        }
    }
}

/// The path `0 - 1 - 2` with both edges of measure 1/2 and `h` rising
/// linearly from −3 to 1 on the first edge, constant 1 on the second. It is
/// mean-zero and elementary; its symmetrization is `1 − 4|z|`.
pub fn path_example() -> (MeasuredTree, TreeFunction) {
    let tree = MeasuredTree::new(
        3,
        vec![
            TreeEdge { u: 0, v: 1, measure: 0.5 },
            TreeEdge { u: 1, v: 2, measure: 0.5 },
        ],
    )
    .expect("valid path");
    let h = TreeFunction::linear(&tree, vec![-3.0, 1.0, 1.0]).expect("consistent values");
    (tree, h)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Path v - w - u with two edges of measure 1/2; `h` rises linearly from −3
    /// to 1 on the first edge and is constant 1 on the second.
    pub(crate) fn elem_ex() -> (MeasuredTree, TreeFunction) {
        super::path_example()
    }

    pub(crate) fn star3() -> MeasuredTree {
        let third = 1.0 / 3.0;
        MeasuredTree::new(
            4,
            (1..4).map(|v| TreeEdge { u: 0, v, measure: third }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn rejects_non_trees() {
        let e = |u, v| TreeEdge { u, v, measure: 0.5 };
        assert!(MeasuredTree::new(3, vec![e(0, 1)]).is_err());
        assert!(MeasuredTree::new(4, vec![e(0, 1), e(1, 0), e(2, 3)]).is_err());
        assert!(MeasuredTree::new(3, vec![e(0, 1), TreeEdge { u: 1, v: 2, measure: 0.0 }]).is_err());
        assert!(MeasuredTree::new(3, vec![e(0, 1), TreeEdge { u: 1, v: 2, measure: 0.4 }]).is_err());
    }

    #[test]
    fn subtree_measures() {
        let single = MeasuredTree::new(2, vec![TreeEdge { u: 0, v: 1, measure: 1.0 }]).unwrap();
        assert_eq!(single.side_measures(0).unwrap(), (0.0, 0.0));

        let (path, _) = elem_ex();
        assert_eq!(path.subtree_measure(0, Endpoint::V).unwrap(), 0.5);
        assert_eq!(path.subtree_measure(0, Endpoint::U).unwrap(), 0.0);

        let star = star3();
        for e in 0..3 {
            let centre = star.subtree_measure(e, Endpoint::U).unwrap();
            assert!((centre - 2.0 / 3.0).abs() < 1e-15);
            assert_eq!(star.subtree_measure(e, Endpoint::V).unwrap(), 0.0);
        }
        assert!(matches!(star.subtree_measure(7, Endpoint::U), Err(Error::UnknownEdge(7))));
    }

    #[test]
    fn function_continuity_is_checked() {
        let (tree, _) = elem_ex();
        let bad = vec![
            PiecewiseLinear::linear(0.0, 0.5, -3.0, 1.0),
            PiecewiseLinear::linear(0.0, 0.5, 1.5, 1.0),
        ];
        assert!(TreeFunction::new(&tree, vec![-3.0, 1.0, 1.0], bad).is_err());
    }

    #[test]
    fn elem_ex_mean_and_kinds() {
        let (tree, h) = elem_ex();
        assert_eq!(h.mean(), 0.0);
        assert_eq!(h.node_kind(&tree, 0), NodeKind::Minimum);
        assert_eq!(count_reeb_edges(&tree), 2);
    }
}
