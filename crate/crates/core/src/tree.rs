//! Weighted rooted trees ("tree diagrams") and the node sets derived from them.
//!
//! Nodes are numbered `1..=n` in every public API. Every edge points from a
//! smaller index to a larger one, so node 1 is the root and the path from the
//! root to any node is strictly increasing.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree must have at least one node (got n = {0})")]
    Empty(usize),
    #[error("child {child} out of range 2..={n}")]
    ChildOutOfRange { child: usize, n: usize },
    #[error("parent out of range: edge ({parent}, {child}) needs 1 <= parent < child")]
    ParentOutOfRange { parent: usize, child: usize },
    #[error("node {0} appears as a child more than once")]
    DuplicateChild(usize),
    #[error("node {0} has no incoming edge")]
    MissingNode(usize),
    #[error("edge into node {child} has weight {weight}; weights must be >= 1")]
    BadWeight { child: usize, weight: u64 },
    #[error("node {0} out of range")]
    NodeOutOfRange(usize),
    #[error("edge weight products overflow 64-bit integers")]
    WeightOverflow,
}

/// One edge of the on-disk tree format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub parent: usize,
    pub child: usize,
    pub weight: u64,
}

/// The JSON tree file format: `{"n": 3, "edges": [{"parent": 1, "child": 2, "weight": 1}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSpec {
    pub n: usize,
    pub edges: Vec<EdgeSpec>,
}

impl TreeSpec {
    pub fn new(n: usize, edges: &[(usize, usize, u64)]) -> Self {
        TreeSpec {
            n,
            edges: edges
                .iter()
                .map(|&(parent, child, weight)| EdgeSpec { parent, child, weight })
                .collect(),
        }
    }
}

/// A validated tree diagram, stored parent-pointer style.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeDiagram {
    // index k holds data for node k + 1; entries for the root are unused (0)
    parent: Vec<usize>,
    weight: Vec<u64>,
}

/// Validate an edge list and build the tree.
pub fn build_tree(spec: &TreeSpec) -> Result<TreeDiagram, TreeError> {
    let n = spec.n;
    if n < 1 {
        return Err(TreeError::Empty(n));
    }
    let mut parent = vec![0usize; n];
    let mut weight = vec![0u64; n];
    for e in &spec.edges {
        if e.child < 2 || e.child > n {
            return Err(TreeError::ChildOutOfRange { child: e.child, n });
        }
        if e.parent < 1 || e.parent >= e.child {
            return Err(TreeError::ParentOutOfRange { parent: e.parent, child: e.child });
        }
        if e.weight < 1 {
            return Err(TreeError::BadWeight { child: e.child, weight: e.weight });
        }
        if parent[e.child - 1] != 0 {
            return Err(TreeError::DuplicateChild(e.child));
        }
        parent[e.child - 1] = e.parent;
        weight[e.child - 1] = e.weight;
    }
    if let Some(k) = (1..n).find(|&k| parent[k] == 0) {
        return Err(TreeError::MissingNode(k + 1));
    }
    // every path product divides the product of all weights; keep headroom
    // for the sums of products used by the nilpotence indices
    let mut total: u64 = 1;
    for &w in &weight[1..] {
        total = total.checked_mul(w).ok_or(TreeError::WeightOverflow)?;
    }
    total
        .checked_mul(n as u64 + 1)
        .ok_or(TreeError::WeightOverflow)?;
    Ok(TreeDiagram { parent, weight })
}

impl TreeDiagram {
    /// The chain `1 - 2 - ... - n` with the given edge weights (`n = weights.len() + 1`).
    pub fn chain(weights: &[u64]) -> Result<Self, TreeError> {
        let edges: Vec<_> = weights
            .iter()
            .enumerate()
            .map(|(k, &w)| (k + 1, k + 2, w))
            .collect();
        build_tree(&TreeSpec::new(weights.len() + 1, &edges))
    }

    /// The branching tree with a stem `1..=n0` and two arms of `n1` and `n2`
    /// nodes hanging off node `n0`, all weights 1.
    ///
    /// Labels are contiguous: the first arm is `n0+1..=n0+n1`, the second arm
    /// `n0+n1+1..=n0+n1+n2`.
    pub fn e_tree(n0: usize, n1: usize, n2: usize) -> Result<Self, TreeError> {
        let mut edges = Vec::new();
        for i in 1..n0 {
            edges.push((i, i + 1, 1));
        }
        let mut prev = n0;
        for c in n0 + 1..=n0 + n1 {
            edges.push((prev, c, 1));
            prev = c;
        }
        prev = n0;
        for c in n0 + n1 + 1..=n0 + n1 + n2 {
            edges.push((prev, c, 1));
            prev = c;
        }
        build_tree(&TreeSpec::new(n0 + n1 + n2, &edges))
    }

    /// Copy of this tree with the edge into `child` reweighted.
    pub fn with_weight(&self, child: usize, weight: u64) -> Result<Self, TreeError> {
        let mut spec = self.to_spec();
        let e = spec
            .edges
            .iter_mut()
            .find(|e| e.child == child)
            .ok_or(TreeError::NodeOutOfRange(child))?;
        e.weight = weight;
        build_tree(&spec)
    }

    pub fn to_spec(&self) -> TreeSpec {
        TreeSpec {
            n: self.n(),
            edges: (2..=self.n())
                .map(|c| EdgeSpec {
                    parent: self.parent[c - 1],
                    child: c,
                    weight: self.weight[c - 1],
                })
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n()
    }

    pub fn check_node(&self, i: usize) -> Result<(), TreeError> {
        if i >= 1 && i <= self.n() {
            Ok(())
        } else {
            Err(TreeError::NodeOutOfRange(i))
        }
    }

    /// Parent of `i`, `None` for the root.
    pub fn parent(&self, i: usize) -> Option<usize> {
        (i >= 2 && i <= self.n()).then(|| self.parent[i - 1])
    }

    /// Weight of the edge `(parent(i), i)`, `None` for the root.
    pub fn weight(&self, i: usize) -> Option<u64> {
        (i >= 2 && i <= self.n()).then(|| self.weight[i - 1])
    }

    /// Edges as `(parent, child, weight)`, ordered by child.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (2..=self.n()).map(move |c| (self.parent[c - 1], c, self.weight[c - 1]))
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        (i + 1..=self.n()).filter(|&c| self.parent[c - 1] == i).collect()
    }

    pub fn is_tip(&self, i: usize) -> bool {
        !(i + 1..=self.n()).any(|c| self.parent[c - 1] == i)
    }

    pub fn tips(&self) -> Vec<usize> {
        self.nodes().filter(|&i| self.is_tip(i)).collect()
    }

    /// `true` if `j` lies strictly below `i`.
    pub fn is_descendant(&self, j: usize, i: usize) -> bool {
        let mut k = j;
        while k > i {
            k = self.parent[k - 1];
        }
        k == i && j != i
    }

    pub fn descendants(&self, i: usize) -> Vec<usize> {
        (i + 1..=self.n()).filter(|&j| self.is_descendant(j, i)).collect()
    }

    /// Root-to-`i` path, starting at 1 and ending at `i`.
    pub fn clan(&self, i: usize) -> Result<Vec<usize>, TreeError> {
        self.check_node(i)?;
        Ok(self.clan_unchecked(i))
    }

    pub(crate) fn clan_unchecked(&self, i: usize) -> Vec<usize> {
        let mut path = vec![i];
        let mut k = i;
        while k != 1 {
            k = self.parent[k - 1];
            path.push(k);
        }
        path.reverse();
        path
    }

    /// Weights along the clan of `i`: `d[(i_1,i_2)], ..., d[(i_{r-1}, i)]`.
    pub fn clan_weights(&self, i: usize) -> Vec<u64> {
        self.clan_unchecked(i)[1..]
            .iter()
            .map(|&c| self.weight[c - 1])
            .collect()
    }

    /// Product of the edge weights on the path from ancestor `i` down to `j`
    /// (1 when `i == j`).
    pub fn path_product(&self, i: usize, j: usize) -> u64 {
        let mut p = 1;
        let mut k = j;
        while k > i {
            p *= self.weight[k - 1];
            k = self.parent[k - 1];
        }
        debug_assert_eq!(k, i, "{i} is not an ancestor of {j}");
        p
    }

    /// Product of all edge weights inside the subtree rooted at `i`.
    pub fn kappa(&self, i: usize) -> u64 {
        self.descendants(i).iter().map(|&j| self.weight[j - 1]).product()
    }

    pub fn classify_nodes(&self) -> NodeClassification {
        classify_nodes(self)
    }

    pub fn weights(&self, i: usize) -> Result<NodeWeights, TreeError> {
        weights(self, i)
    }
}

/// The node sets that the basis, ideal, and solver formulas consume.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeClassification {
    /// Nodes without children.
    pub tips: Vec<usize>,
    /// Nodes all of whose descendants enter through weight-1 edges.
    pub upsilon: Vec<usize>,
    /// The root plus every node reached from the root through weight-1 edges only.
    pub phi: Vec<usize>,
    /// Children of the root.
    pub omega: Vec<usize>,
    pub descendants: BTreeMap<usize, Vec<usize>>,
    pub children: BTreeMap<usize, Vec<usize>>,
    pub clans: BTreeMap<usize, Vec<usize>>,
}

pub fn clan(tree: &TreeDiagram, i: usize) -> Result<Vec<usize>, TreeError> {
    tree.clan(i)
}

pub fn classify_nodes(tree: &TreeDiagram) -> NodeClassification {
    let descendants: BTreeMap<_, _> = tree.nodes().map(|i| (i, tree.descendants(i))).collect();
    let upsilon = tree
        .nodes()
        .filter(|i| descendants[i].iter().all(|&j| tree.weight(j) == Some(1)))
        .collect();
    let phi = tree
        .nodes()
        .filter(|&i| tree.clan_weights(i).iter().all(|&w| w == 1))
        .collect();
    NodeClassification {
        tips: tree.tips(),
        upsilon,
        phi,
        omega: tree.children(1),
        children: tree.nodes().map(|i| (i, tree.children(i))).collect(),
        clans: tree.nodes().map(|i| (i, tree.clan_unchecked(i))).collect(),
        descendants,
    }
}

/// Weight data attached to a node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeWeights {
    /// Length of the lower central series contributed by a tip at this node:
    /// `1 + sum over s of d_{r-1} d_{r-2} ... d_s` (products taken from the
    /// node back towards the root).
    pub nilpotence: u64,
    /// `1 + sum over s of d_1 d_2 ... d_{s-1}` (products taken from the root
    /// outwards). Agrees with `nilpotence` whenever the clan weights read the
    /// same in both directions, e.g. on unweighted chains.
    pub nilpotence_root_products: u64,
    /// Product of all weights in the subtree rooted at the node.
    pub kappa: u64,
    /// `kappa / path_product(i, s)` for every descendant `s`.
    pub kappa_map: BTreeMap<usize, u64>,
}

pub fn weights(tree: &TreeDiagram, i: usize) -> Result<NodeWeights, TreeError> {
    tree.check_node(i)?;
    let w = tree.clan_weights(i);
    let mut from_root = 1;
    let mut acc = 1;
    for &d in &w {
        acc *= d;
        from_root += acc;
    }
    let mut from_node = 1;
    acc = 1;
    for &d in w.iter().rev() {
        acc *= d;
        from_node += acc;
    }
    let kappa = tree.kappa(i);
    let kappa_map = tree
        .descendants(i)
        .into_iter()
        .map(|s| (s, kappa / tree.path_product(i, s)))
        .collect();
    Ok(NodeWeights {
        nilpotence: from_node,
        nilpotence_root_products: from_root,
        kappa,
        kappa_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3_12() -> TreeDiagram {
        build_tree(&TreeSpec::new(3, &[(1, 2, 1), (2, 3, 2)])).unwrap()
    }

    #[test]
    fn minimal_chain_and_single_node() {
        let t = a3_12();
        assert_eq!(t.n(), 3);
        assert_eq!(t.weight(3), Some(2));
        let single = build_tree(&TreeSpec::new(1, &[])).unwrap();
        let c = single.classify_nodes();
        assert_eq!(c.tips, vec![1]);
        assert_eq!(c.upsilon, vec![1]);
        assert_eq!(c.phi, vec![1]);
        assert!(c.omega.is_empty());
    }

    #[test]
    fn validation_errors_name_the_node() {
        let e = build_tree(&TreeSpec::new(3, &[(1, 2, 1), (4, 3, 1)])).unwrap_err();
        assert_eq!(e, TreeError::ParentOutOfRange { parent: 4, child: 3 });
        assert!(e.to_string().contains("parent out of range"));
        assert_eq!(
            build_tree(&TreeSpec::new(3, &[(1, 2, 1), (1, 2, 1)])).unwrap_err(),
            TreeError::DuplicateChild(2)
        );
        assert_eq!(
            build_tree(&TreeSpec::new(3, &[(1, 2, 1)])).unwrap_err(),
            TreeError::MissingNode(3)
        );
        assert_eq!(
            build_tree(&TreeSpec::new(2, &[(1, 2, 0)])).unwrap_err(),
            TreeError::BadWeight { child: 2, weight: 0 }
        );
        assert_eq!(build_tree(&TreeSpec::new(0, &[])).unwrap_err(), TreeError::Empty(0));
        assert_eq!(
            build_tree(&TreeSpec::new(2, &[(2, 2, 1)])).unwrap_err(),
            TreeError::ParentOutOfRange { parent: 2, child: 2 }
        );
    }

    #[test]
    fn clans() {
        let a4 = TreeDiagram::chain(&[1, 1, 1]).unwrap();
        assert_eq!(a4.clan(4).unwrap(), vec![1, 2, 3, 4]);
        let e = build_tree(&TreeSpec::new(5, &[(1, 2, 1), (2, 3, 1), (3, 4, 1), (3, 5, 1)])).unwrap();
        assert_eq!(e.clan(5).unwrap(), vec![1, 2, 3, 5]);
        assert_eq!(e.clan(1).unwrap(), vec![1]);
        assert_eq!(e.clan(6), Err(TreeError::NodeOutOfRange(6)));
    }

    #[test]
    fn classification_of_weighted_chain() {
        let c = a3_12().classify_nodes();
        assert_eq!(c.upsilon, vec![3]);
        assert_eq!(c.phi, vec![1, 2]);
        assert_eq!(c.omega, vec![2]);
        assert_eq!(c.tips, vec![3]);
        let flat = TreeDiagram::chain(&[1, 1, 1, 1]).unwrap().classify_nodes();
        assert_eq!(flat.upsilon, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn weight_data() {
        let t = a3_12();
        let w3 = t.weights(3).unwrap();
        assert_eq!(w3.nilpotence_root_products, 4);
        assert_eq!(w3.nilpotence, 5);
        let w1 = t.weights(1).unwrap();
        assert_eq!(w1.kappa, 2);
        assert_eq!(w1.kappa_map[&2], 2);
        assert_eq!(w1.kappa_map[&3], 1);
        assert_eq!(w1.nilpotence, 1);
        assert_eq!(w1.nilpotence_root_products, 1);
    }

    #[test]
    fn spec_round_trip_through_json() {
        let t = TreeDiagram::e_tree(2, 2, 1).unwrap().with_weight(4, 2).unwrap();
        let text = serde_json::to_string(&t.to_spec()).unwrap();
        let back: TreeSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(build_tree(&back).unwrap(), t);
    }
}
