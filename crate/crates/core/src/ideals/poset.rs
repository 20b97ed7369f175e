use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::lie::{down_simplex, simplex_exponents, up_simplex, Direction};
use crate::tree::TreeDiagram;

/// Exponent tuples attached to an anchor node, with their partial order.
///
/// Up: tuples over the clan of the anchor (anchor excluded), ordered by the
/// suffix sums `j_s + sum_{e > s} j_e * (weights from s to e)`.
/// Down: tuples over the descendants of the anchor, ordered by the
/// kappa-weighted mass of every ancestor-closed set of descendants.
#[derive(Debug, Clone, Serialize)]
pub struct RootPoset {
    pub node: usize,
    pub direction: Direction,
    /// Tree nodes indexing the tuple coordinates.
    pub vars: Vec<usize>,
    pub elements: Vec<Vec<u32>>,
    /// `below[a]` holds every `b` with `elements[a] <= elements[b]`.
    #[serde(skip)]
    below: Vec<FixedBitSet>,
}

impl RootPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `elements[a] <= elements[b]` (reflexive).
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.below[a].contains(b)
    }

    pub fn position(&self, tuple: &[u32]) -> Option<usize> {
        self.elements.iter().position(|e| e == tuple)
    }

    /// Embed a tuple as a full exponent vector of length `n`.
    pub fn exponents(&self, n: usize, a: usize) -> Vec<u32> {
        let mut e = vec![0; n];
        for (&v, &j) in self.vars.iter().zip(&self.elements[a]) {
            e[v - 1] = j;
        }
        e
    }

    /// Restrict a full exponent vector to the poset coordinates, if it is
    /// supported there.
    pub fn tuple_of(&self, exps: &[u32]) -> Option<Vec<u32>> {
        let supported = exps
            .iter()
            .enumerate()
            .all(|(k, &e)| e == 0 || self.vars.contains(&(k + 1)));
        supported.then(|| self.vars.iter().map(|&v| exps[v - 1]).collect())
    }

    /// Indices of all elements `<=` some element of `gens`.
    pub fn downset(&self, gens: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&l| gens.iter().any(|&g| self.le(l, g)))
            .collect()
    }

    /// Maximal elements of a set of indices.
    pub fn maximal(&self, set: &[usize]) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&a| !set.iter().any(|&b| b != a && self.le(a, b)))
            .collect()
    }

    /// Every antichain, including the empty one, in lexicographic index order.
    pub fn antichains(&self) -> Vec<Vec<usize>> {
        fn go(p: &RootPoset, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            for k in start..p.len() {
                if cur.iter().all(|&c| !p.le(c, k) && !p.le(k, c)) {
                    cur.push(k);
                    out.push(cur.clone());
                    go(p, k + 1, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = vec![Vec::new()];
        go(self, 0, &mut Vec::new(), &mut out);
        out
    }
}

/// Ancestor-closed subsets of the descendants of `i` (nonempty), as index
/// lists into `vars`.
fn ancestor_closed(tree: &TreeDiagram, i: usize, vars: &[usize]) -> Vec<Vec<usize>> {
    fn go(tree: &TreeDiagram, i: usize, vars: &[usize], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == vars.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        go(tree, i, vars, k + 1, cur, out);
        let p = tree.parent(vars[k]).expect("descendant has a parent");
        if p == i || cur.iter().any(|&c| vars[c] == p) {
            cur.push(k);
            go(tree, i, vars, k + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(tree, i, vars, 0, &mut Vec::new(), &mut out);
    out
}

pub fn root_poset(tree: &TreeDiagram, i: usize, direction: Direction) -> RootPoset {
    let (vars, w, bound) = match direction {
        Direction::Up => up_simplex(tree, i),
        Direction::Down => down_simplex(tree, i),
    };
    let elements: Vec<Vec<u32>> = simplex_exponents(vars.len(), &(1..=vars.len()).collect::<Vec<_>>(), &w, bound);
    // one linear functional per defining inequality; a <= b iff every
    // functional is no larger on a
    let functionals: Vec<Vec<u64>> = match direction {
        Direction::Up => {
            let clan = tree.clan_unchecked(i);
            (0..vars.len())
                .map(|s| {
                    let mut f = vec![0u64; vars.len()];
                    let mut p = 1u64;
                    for e in s..vars.len() {
                        if e > s {
                            p *= tree.weight(clan[e]).unwrap_or(1);
                        }
                        f[e] = p;
                    }
                    f
                })
                .collect()
        }
        Direction::Down => ancestor_closed(tree, i, &vars)
            .into_iter()
            .map(|u| {
                let mut f = vec![0u64; vars.len()];
                for k in u {
                    f[k] = w[k];
                }
                f
            })
            .collect(),
    };
    let values: Vec<Vec<u64>> = elements
        .iter()
        .map(|e| {
            functionals
                .iter()
                .map(|f| f.iter().zip(e).map(|(a, &b)| a * b as u64).sum())
                .collect()
        })
        .collect();
    let m = elements.len();
    let below = (0..m)
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(m);
            for b in 0..m {
                if values[a].iter().zip(&values[b]).all(|(x, y)| x <= y) {
                    row.insert(b);
                }
            }
            row
        })
        .collect();
    RootPoset { node: i, direction, vars, elements, below }
}
