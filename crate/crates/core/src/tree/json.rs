//! JSON form of a measured tree with its function:
//! `{nodes: [{id, value, kind}], edges: [{id, u, v, measure, profile: [[s, value], …]}]}`.

use serde::{Deserialize, Serialize};

use super::{MeasuredTree, NodeKind, TreeEdge, TreeFunction};
use crate::error::{Error, Result};
use crate::pl::PiecewiseLinear;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: usize,
    pub value: f64,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub measure: f64,
    /// `[measure coordinate from u, value]` pairs.
    pub profile: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeDocument {
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl TreeDocument {
    /// Node kinds default to the ones inferred from `h`.
    pub fn new(tree: &MeasuredTree, h: &TreeFunction, kinds: Option<&[NodeKind]>) -> Self {
        let nodes = (0..tree.node_count())
            .map(|id| NodeRecord {
                id,
                value: h.node_values()[id],
                kind: kinds.map_or_else(|| h.node_kind(tree, id), |k| k[id]),
            })
            .collect();
        let edges = tree
            .edges()
            .iter()
            .enumerate()
            .map(|(id, e)| EdgeRecord {
                id,
                u: e.u,
                v: e.v,
                measure: e.measure,
                profile: h.profile(id).points().to_vec(),
            })
            .collect();
        Self { nodes, edges }
    }

    /// Rebuilds the tree and function. Ids must be `0..n` (in any order).
    pub fn to_tree(&self) -> Result<(MeasuredTree, TreeFunction)> {
        let mut node_values = vec![None; self.nodes.len()];
        for n in &self.nodes {
            let slot = node_values
                .get_mut(n.id)
                .ok_or_else(|| Error::MalformedTree(format!("node id {} out of range", n.id)))?;
            if slot.replace(n.value).is_some() {
                return Err(Error::MalformedTree(format!("duplicate node id {}", n.id)));
            }
        }
        let node_values: Vec<f64> = node_values.into_iter().map(|v| v.expect("all ids seen")).collect();

        let mut edges: Vec<Option<&EdgeRecord>> = vec![None; self.edges.len()];
        for e in &self.edges {
            let slot = edges
                .get_mut(e.id)
                .ok_or_else(|| Error::MalformedTree(format!("edge id {} out of range", e.id)))?;
            if slot.replace(e).is_some() {
                return Err(Error::MalformedTree(format!("duplicate edge id {}", e.id)));
            }
        }
        let edges: Vec<&EdgeRecord> = edges.into_iter().map(|e| e.expect("all ids seen")).collect();
        let tree = MeasuredTree::new(
            node_values.len(),
            edges
                .iter()
                .map(|e| TreeEdge { u: e.u, v: e.v, measure: e.measure })
                .collect(),
        )?;
        let profiles = edges
            .iter()
            .map(|e| PiecewiseLinear::new(e.profile.clone()))
            .collect::<Result<Vec<_>>>()?;
        let h = TreeFunction::new(&tree, node_values, profiles)?;
        Ok((tree, h))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::random_tree;

    #[test]
    fn roundtrip_is_exact() {
        let (tree, h) = random_tree(3, 6);
        let text = TreeDocument::new(&tree, &h, None).to_json().unwrap();
        let (t2, h2) = TreeDocument::from_json(&text).unwrap().to_tree().unwrap();
        assert_eq!(t2.edges(), tree.edges());
        assert_eq!(h2, h);
    }

    #[test]
    fn schema_field_names() {
        let (tree, h) = random_tree(1, 1);
        let v: serde_json::Value = serde_json::to_value(TreeDocument::new(&tree, &h, None)).unwrap();
        let e = &v["edges"][0];
        for key in ["id", "u", "v", "measure", "profile"] {
            assert!(e.get(key).is_some(), "missing {key}");
        }
        assert!(v["nodes"][0]["kind"].is_string());
        assert!(e["profile"][0].is_array());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let (tree, h) = random_tree(1, 2);
        let mut doc = TreeDocument::new(&tree, &h, None);
        doc.nodes[1].id = 0;
        assert!(doc.to_tree().is_err());
    }
}
