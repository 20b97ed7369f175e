use std::collections::HashMap;

use serde::Serialize;

use super::linalg::{Echelon, SparseVec};
use super::{basis_keys, bracket_monomials, Direction, LieElement, OpKey};
use crate::tree::TreeDiagram;

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    /// Every bracket of two basis elements lies in the span of the basis.
    pub closure: bool,
    /// Dimensions of the lower central series, stopping before zero.
    pub central_series_dims: Vec<usize>,
    /// A basis of the center, from the common kernel of all `ad` maps.
    #[serde(skip)]
    pub center_basis: Vec<LieElement>,
    /// `d_i` for tips `i` (up) or `d_1` (down).
    #[serde(skip)]
    pub expected_center: Vec<OpKey>,
    pub center_matches: bool,
}

struct Indexed {
    keys: Vec<OpKey>,
    index: HashMap<OpKey, usize>,
}

impl Indexed {
    fn to_vec(&self, e: &LieElement) -> Option<SparseVec> {
        e.terms()
            .map(|(k, c)| self.index.get(k).map(|&i| (i, c.clone())))
            .collect()
    }

    fn to_element(&self, n: usize, v: &SparseVec) -> LieElement {
        LieElement::from_terms(n, v.iter().map(|(&i, c)| (self.keys[i].clone(), c.clone())))
    }
}

pub fn verify_structure(tree: &TreeDiagram, direction: Direction) -> StructureReport {
    let n = tree.n();
    let keys = basis_keys(tree, direction);
    let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let ix = Indexed { keys, index };
    let size = ix.keys.len();

    let table: Vec<Vec<LieElement>> = ix
        .keys
        .iter()
        .map(|a| ix.keys.iter().map(|b| bracket_monomials(a, b)).collect())
        .collect();
    let closure = table.iter().flatten().all(|e| ix.to_vec(e).is_some());

    let mut central_series_dims = Vec::new();
    let mut current: Vec<SparseVec> = (0..size)
        .map(|i| SparseVec::from([(i, num_traits::One::one())]))
        .collect();
    while !current.is_empty() && central_series_dims.len() <= size {
        central_series_dims.push(current.len());
        let mut next = Echelon::new();
        for g in &current {
            let g = ix.to_element(n, g);
            for a in &ix.keys {
                let mut b = LieElement::zero(n);
                for (k, c) in g.terms() {
                    b = b.add(&bracket_monomials(a, k).scale(c));
                }
                if let Some(v) = ix.to_vec(&b) {
                    next.insert(v);
                }
            }
        }
        current = next.rows().cloned().collect();
    }

    // v is central iff [b_a, v] = 0 for every basis element b_a: one equation
    // per (a, output monomial), unknowns indexed by basis position
    let mut eqs: HashMap<(usize, OpKey), SparseVec> = HashMap::new();
    for (a, row) in table.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            for (k, c) in e.terms() {
                eqs.entry((a, k.clone())).or_default().insert(j, c.clone());
            }
        }
    }
    let mut system = Echelon::new();
    for v in eqs.into_values() {
        system.insert(v);
    }
    let center_basis: Vec<LieElement> = system
        .nullspace(size)
        .iter()
        .map(|v| ix.to_element(n, v))
        .collect();

    let expected_center: Vec<OpKey> = match direction {
        Direction::Up => tree.tips().into_iter().map(|i| OpKey::partial(n, i)).collect(),
        Direction::Down => vec![OpKey::partial(n, 1)],
    };
    let mut span = Echelon::new();
    for e in &center_basis {
        span.insert(ix.to_vec(e).expect("center lies in the algebra"));
    }
    let center_matches = center_basis.len() == expected_center.len()
        && expected_center.iter().all(|k| {
            ix.index
                .get(k)
                .is_some_and(|&i| span.contains(&SparseVec::from([(i, num_traits::One::one())])))
        });

    StructureReport { closure, central_series_dims, center_basis, expected_center, center_matches }
}
