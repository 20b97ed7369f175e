//! Abelian ideals of the solvable extensions `L_0 + H` of the tree algebras,
//! where `H` is the diagonal torus `span{x_k d_k}`.
//!
//! All root spaces are one-dimensional with distinct roots, so an
//! `H`-stable subspace is a span of basis monomials and an ideal is a set of
//! basis indices closed under bracketing with the basis.

mod brute;
mod poset;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lie::{basis_keys, bracket_monomials, Direction, LieElement, OpKey, Root};
use crate::tree::TreeDiagram;

pub use brute::brute_force_ideals;
pub use poset::{root_poset, RootPoset};

/// Largest root set for which ideals are listed.
pub const LIST_GUARD: usize = 24;
/// Largest root set for the exhaustive subset oracle.
pub const BRUTE_FORCE_GUARD: usize = 20;
/// Largest root set for counting by closed-set search (down direction).
pub const COUNT_GUARD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("root set has {size} elements, above the limit of {limit}; use count mode or a smaller tree")]
    SizeGuard { size: usize, limit: usize },
    #[error("node {node} is not a valid anchor for the {direction} direction")]
    NotAnchor { node: usize, direction: Direction },
    #[error("{0:?} is not an element of the root poset")]
    NotInPoset(Vec<u32>),
    #[error("{0} is not a root of this algebra")]
    UnknownRoot(Root),
}

/// Bracket data of one algebra, indexed by basis position.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub direction: Direction,
    pub keys: Vec<OpKey>,
    index: HashMap<OpKey, usize>,
    /// `succ[b]`: every basis index reached as `[b_a, b_b]` for some `a`.
    succ: Vec<FixedBitSet>,
    /// `comm[b]`: every `a` with `[b_a, b_b] != 0`.
    comm: Vec<FixedBitSet>,
    /// Smallest ideal containing `b`.
    closure: Vec<FixedBitSet>,
}

impl RootSystem {
    pub fn new(tree: &TreeDiagram, direction: Direction) -> Self {
        let keys = basis_keys(tree, direction);
        let size = keys.len();
        let index: HashMap<OpKey, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut succ = vec![FixedBitSet::with_capacity(size); size];
        let mut comm = vec![FixedBitSet::with_capacity(size); size];
        for (a, ka) in keys.iter().enumerate() {
            for (b, kb) in keys.iter().enumerate() {
                let e = bracket_monomials(ka, kb);
                for (k, _) in e.terms() {
                    succ[b].insert(index[k]);
                }
                if !e.is_zero() {
                    comm[b].insert(a);
                }
            }
        }
        let closure = (0..size)
            .map(|s| {
                let mut seen = FixedBitSet::with_capacity(size);
                seen.insert(s);
                let mut stack = vec![s];
                while let Some(x) = stack.pop() {
                    for y in succ[x].ones() {
                        if !seen.put(y) {
                            stack.push(y);
                        }
                    }
                }
                seen
            })
            .collect();
        RootSystem { direction, keys, index, succ, comm, closure }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn index_of(&self, k: &OpKey) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn index_of_root(&self, r: &Root) -> Option<usize> {
        self.keys.iter().position(|k| k.root() == *r)
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub(crate) fn succ(&self, b: usize) -> &FixedBitSet {
        &self.succ[b]
    }

    pub(crate) fn comm(&self, b: usize) -> &FixedBitSet {
        &self.comm[b]
    }

    /// Smallest ideal containing the given elements.
    pub fn ideal_closure(&self, gens: &FixedBitSet) -> FixedBitSet {
        let mut m = self.empty_set();
        for g in gens.ones() {
            m.union_with(&self.closure[g]);
        }
        m
    }

    pub fn is_closed(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|b| self.succ[b].is_subset(set))
    }

    pub fn is_commutative(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|b| self.comm[b].is_disjoint(set))
    }

    pub fn ideal(&self, members: FixedBitSet) -> AbelianIdeal {
        let keys: Vec<OpKey> = members.ones().map(|i| self.keys[i].clone()).collect();
        let mut roots: Vec<Root> = keys.iter().map(OpKey::root).collect();
        roots.sort();
        AbelianIdeal { roots, keys, members, generator_pair: None }
    }
}

/// Generator data of an ideal: anchors `s` and, for every node `r` in the
/// subtrees (up) or clans (down) of the anchors, an antichain of tuples in
/// the anchor's root poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissiblePair {
    pub s: Vec<usize>,
    pub k: BTreeMap<usize, Vec<Vec<u32>>>,
}

/// Two ideals are equal when they have the same roots.
#[derive(Debug, Clone)]
pub struct AbelianIdeal {
    /// Roots in ascending order; the canonical form used for comparison.
    pub roots: Vec<Root>,
    /// Spanning monomials in basis order.
    pub keys: Vec<OpKey>,
    /// Basis indices.
    pub members: FixedBitSet,
    pub generator_pair: Option<AdmissiblePair>,
}

impl PartialEq for AbelianIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.roots == other.roots
    }
}

impl Eq for AbelianIdeal {}

impl AbelianIdeal {
    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    pub fn contains(&self, other: &AbelianIdeal) -> bool {
        other.members.is_subset(&self.members)
    }
}

fn canonical_sort(v: &mut [AbelianIdeal]) {
    v.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.roots.cmp(&b.roots)));
}

/// Nonempty sets of pairwise unrelated nodes (no member below another).
fn independent_sets(tree: &TreeDiagram, base: &[usize]) -> Vec<Vec<usize>> {
    fn go(tree: &TreeDiagram, base: &[usize], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == base.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        go(tree, base, k + 1, cur, out);
        let v = base[k];
        if cur.iter().all(|&c| !tree.is_descendant(v, c) && !tree.is_descendant(c, v)) {
            cur.push(v);
            go(tree, base, k + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(tree, base, 0, &mut Vec::new(), &mut out);
    out
}

fn maximal_independent_sets(tree: &TreeDiagram, base: &[usize]) -> Vec<Vec<usize>> {
    let all = independent_sets(tree, base);
    all.iter()
        .filter(|s| {
            !all.iter()
                .any(|t| t.len() > s.len() && s.iter().all(|x| t.contains(x)))
        })
        .cloned()
        .collect()
}

fn anchors(tree: &TreeDiagram, direction: Direction) -> Vec<usize> {
    let c = tree.classify_nodes();
    match direction {
        Direction::Up => c.upsilon,
        Direction::Down => c.phi,
    }
}

/// Nodes whose derivative appears in ideals anchored at `i`.
fn reach(tree: &TreeDiagram, i: usize, direction: Direction) -> Vec<usize> {
    match direction {
        Direction::Up => std::iter::once(i).chain(tree.descendants(i)).collect(),
        Direction::Down => tree.clan_unchecked(i),
    }
}

/// Span of `x^l d_r` for every `l <= j` in the root poset of `i` and every
/// `r` in `{i}` plus the descendants of `i` (up) or the clan of `i` (down).
pub fn principal_ideal(
    tree: &TreeDiagram,
    i: usize,
    j: &[u32],
    direction: Direction,
) -> Result<AbelianIdeal, IdealError> {
    if !anchors(tree, direction).contains(&i) {
        return Err(IdealError::NotAnchor { node: i, direction });
    }
    let rs = RootSystem::new(tree, direction);
    let p = root_poset(tree, i, direction);
    let g = p.position(j).ok_or_else(|| IdealError::NotInPoset(j.to_vec()))?;
    let mut m = rs.empty_set();
    for l in p.downset(&[g]) {
        let e = p.exponents(tree.n(), l);
        for r in reach(tree, i, direction) {
            m.insert(rs.index_of(&OpKey::new(e.clone(), r)).expect("principal ideal monomial lies in the basis"));
        }
    }
    Ok(rs.ideal(m))
}

/// `x^e d_q` for `q` reachable from an anchor in `s` and `e` supported on
/// the poset coordinates of that anchor.
fn ideal_of_anchor_set(tree: &TreeDiagram, rs: &RootSystem, s: &[usize]) -> FixedBitSet {
    let mut m = rs.empty_set();
    for &i in s {
        let p = root_poset(tree, i, rs.direction);
        let targets = reach(tree, i, rs.direction);
        for (b, k) in rs.keys.iter().enumerate() {
            if targets.contains(&k.dvar) && p.tuple_of(&k.exps).is_some() {
                m.insert(b);
            }
        }
    }
    m
}

/// One ideal per maximal independent anchor set: the largest ideal whose
/// monomials use only the poset coordinates of those anchors.
///
/// For the up direction these are exactly the maximal abelian ideals. For the
/// down direction they are abelian ideals but need not be maximal, and on
/// branching trees some maximal ideals are missing; e.g. with edges `(1,2)`
/// of weight 1 and `(1,3)` of weight 3 the anchor set `{2}` gives
/// `span{d1, d2}`, which lies inside `span{d1, x3 d1, x3^2 d1, x3^3 d1, d2}`.
/// See [`maximal_ideals_by_enumeration`].
pub fn maximal_ideals(tree: &TreeDiagram, direction: Direction) -> Vec<AbelianIdeal> {
    let rs = RootSystem::new(tree, direction);
    let mut out: Vec<AbelianIdeal> = maximal_independent_sets(tree, &anchors(tree, direction))
        .into_iter()
        .map(|s| {
            let mut ideal = rs.ideal(ideal_of_anchor_set(tree, &rs, &s));
            ideal.generator_pair = Some(AdmissiblePair { s, k: BTreeMap::new() });
            ideal
        })
        .collect();
    canonical_sort(&mut out);
    out
}

/// Inclusion-maximal members of the full ideal list.
pub fn maximal_ideals_by_enumeration(
    tree: &TreeDiagram,
    direction: Direction,
) -> Result<Vec<AbelianIdeal>, IdealError> {
    let all = enumerate_ideals(tree, direction)?;
    Ok(maximal_among(&all))
}

pub fn maximal_among(all: &[AbelianIdeal]) -> Vec<AbelianIdeal> {
    all.iter()
        .filter(|a| !all.iter().any(|b| b.dim() > a.dim() && b.contains(a)))
        .cloned()
        .collect()
}

/// Configurations of one up anchor: antichains for `i` and each descendant.
fn up_configurations(tree: &TreeDiagram, rs: &RootSystem, i: usize) -> Vec<(BTreeMap<usize, Vec<Vec<u32>>>, FixedBitSet)> {
    let p = root_poset(tree, i, Direction::Up);
    let nodes = reach(tree, i, Direction::Up);
    let antichains = p.antichains();
    let n = tree.n();
    let mut out = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        tree: &TreeDiagram,
        rs: &RootSystem,
        p: &RootPoset,
        n: usize,
        nodes: &[usize],
        antichains: &[Vec<usize>],
        k: usize,
        chosen: &mut BTreeMap<usize, Vec<usize>>,
        out: &mut Vec<(BTreeMap<usize, Vec<Vec<u32>>>, FixedBitSet)>,
    ) {
        if k == nodes.len() {
            let mut m = rs.empty_set();
            for &q in nodes {
                let gens: Vec<usize> = tree
                    .clan_unchecked(q)
                    .iter()
                    .filter_map(|a| chosen.get(a))
                    .flatten()
                    .copied()
                    .collect();
                for l in p.downset(&gens) {
                    let key = OpKey::new(p.exponents(n, l), q);
                    m.insert(rs.index_of(&key).expect("admissible monomial lies in the basis"));
                }
            }
            let k = chosen
                .iter()
                .filter(|(_, a)| !a.is_empty())
                .map(|(&q, a)| (q, a.iter().map(|&x| p.elements[x].clone()).collect()))
                .collect();
            out.push((k, m));
            return;
        }
        let q = nodes[k];
        let ancestors = tree.clan_unchecked(q);
        for a in antichains {
            if k == 0 && a.is_empty() {
                continue;
            }
            // no new generator may already lie below a generator at an ancestor
            let redundant = ancestors[..ancestors.len() - 1]
                .iter()
                .filter_map(|x| chosen.get(x))
                .flatten()
                .any(|&g| a.iter().any(|&l| p.le(l, g)));
            if redundant {
                continue;
            }
            chosen.insert(q, a.clone());
            go(tree, rs, p, n, nodes, antichains, k + 1, chosen, out);
            chosen.remove(&q);
        }
    }

    go(tree, rs, &p, n, &nodes, &antichains, 0, &mut BTreeMap::new(), &mut out);
    out
}

/// Up ideals from admissible pairs; each carries its generator pair.
fn up_ideals(tree: &TreeDiagram, rs: &RootSystem) -> Vec<AbelianIdeal> {
    let mut cache: BTreeMap<usize, Vec<(BTreeMap<usize, Vec<Vec<u32>>>, FixedBitSet)>> = BTreeMap::new();
    let mut out = vec![rs.ideal(rs.empty_set())];
    out[0].generator_pair = Some(AdmissiblePair { s: Vec::new(), k: BTreeMap::new() });
    for s in independent_sets(tree, &anchors(tree, Direction::Up)) {
        for &i in &s {
            cache.entry(i).or_insert_with(|| up_configurations(tree, rs, i));
        }
        let parts: Vec<_> = s.iter().map(|i| &cache[i]).collect();
        let mut idx = vec![0usize; parts.len()];
        'outer: loop {
            let mut m = rs.empty_set();
            let mut k = BTreeMap::new();
            for (part, &x) in parts.iter().zip(&idx) {
                m.union_with(&part[x].1);
                k.extend(part[x].0.clone());
            }
            let mut ideal = rs.ideal(m);
            ideal.generator_pair = Some(AdmissiblePair { s: s.clone(), k });
            out.push(ideal);
            for d in (0..idx.len()).rev() {
                idx[d] += 1;
                if idx[d] < parts[d].len() {
                    continue 'outer;
                }
                idx[d] = 0;
            }
            break;
        }
    }
    out
}

/// Number of up ideals: one for zero plus, for every independent anchor set,
/// the product of the configuration counts of its anchors.
fn up_count(tree: &TreeDiagram, rs: &RootSystem) -> BigUint {
    let mut per: BTreeMap<usize, BigUint> = BTreeMap::new();
    let mut total = BigUint::one();
    for s in independent_sets(tree, &anchors(tree, Direction::Up)) {
        let mut prod = BigUint::one();
        for &i in &s {
            let c = per
                .entry(i)
                .or_insert_with(|| BigUint::from(up_configurations(tree, rs, i).len()));
            prod *= &*c;
        }
        total += prod;
    }
    total
}

/// Closed abelian sets by include/exclude search over basis indices.
///
/// Excluding `e` forbids it; including `e` adds its ideal closure, which must
/// avoid every forbidden index and stay commutative.
fn closed_abelian_sets(rs: &RootSystem, mut visit: impl FnMut(&FixedBitSet)) {
    fn go(rs: &RootSystem, k: usize, set: &mut FixedBitSet, forbidden: &mut FixedBitSet, visit: &mut dyn FnMut(&FixedBitSet)) {
        if k == rs.len() {
            visit(set);
            return;
        }
        if set.contains(k) {
            go(rs, k + 1, set, forbidden, visit);
            return;
        }
        forbidden.insert(k);
        go(rs, k + 1, set, forbidden, visit);
        forbidden.set(k, false);
        let mut grown = set.clone();
        grown.union_with(&rs.closure[k]);
        if grown.is_disjoint(forbidden) && rs.is_commutative(&grown) {
            go(rs, k + 1, &mut grown, forbidden, visit);
        }
    }
    let mut set = rs.empty_set();
    let mut forbidden = rs.empty_set();
    go(rs, 0, &mut set, &mut forbidden, &mut visit);
}

/// Every abelian ideal, zero included, in canonical order (dimension, then
/// sorted roots).
///
/// Up ideals come from admissible pairs; down ideals from a closed-set search
/// on the bracket relation.
pub fn enumerate_ideals(tree: &TreeDiagram, direction: Direction) -> Result<Vec<AbelianIdeal>, IdealError> {
    let rs = RootSystem::new(tree, direction);
    if rs.len() > LIST_GUARD {
        return Err(IdealError::SizeGuard { size: rs.len(), limit: LIST_GUARD });
    }
    let mut out = match direction {
        Direction::Up => up_ideals(tree, &rs),
        Direction::Down => {
            let mut v = Vec::new();
            closed_abelian_sets(&rs, |m| v.push(rs.ideal(m.clone())));
            v
        }
    };
    debug_assert!(out.iter().all(|i| rs.is_closed(&i.members) && rs.is_commutative(&i.members)));
    canonical_sort(&mut out);
    Ok(out)
}

/// Number of abelian ideals, zero included.
pub fn count_ideals(tree: &TreeDiagram, direction: Direction) -> Result<BigUint, IdealError> {
    let rs = RootSystem::new(tree, direction);
    match direction {
        Direction::Up => Ok(up_count(tree, &rs)),
        Direction::Down => {
            if rs.len() > COUNT_GUARD {
                return Err(IdealError::SizeGuard { size: rs.len(), limit: COUNT_GUARD });
            }
            let mut c = BigUint::zero();
            closed_abelian_sets(&rs, |_| c += 1u32);
            Ok(c)
        }
    }
}

/// Why a set of roots fails to span an abelian ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `[generator, member]` leaves the span.
    NotStable { generator: OpKey, member: OpKey, bracket: LieElement },
    /// Two members do not commute.
    NotAbelian { a: OpKey, b: OpKey, bracket: LieElement },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealCheck {
    pub is_ideal: bool,
    pub certificate: Option<Certificate>,
}

/// Check stability under the basis and the torus, and commutativity.
pub fn is_abelian_ideal(tree: &TreeDiagram, direction: Direction, roots: &[Root]) -> Result<IdealCheck, IdealError> {
    let rs = RootSystem::new(tree, direction);
    let mut members = BTreeSet::new();
    for r in roots {
        members.insert(rs.index_of_root(r).ok_or_else(|| IdealError::UnknownRoot(r.clone()))?);
    }
    let fail = |c| Ok(IdealCheck { is_ideal: false, certificate: Some(c) });
    let n = tree.n();
    for &b in &members {
        let kb = &rs.keys[b];
        let torus = (1..=n).map(|k| {
            let mut e = vec![0; n];
            e[k - 1] = 1;
            OpKey::new(e, k)
        });
        for g in rs.keys.iter().cloned().chain(torus) {
            let e = bracket_monomials(&g, kb);
            let inside = e.terms().all(|(k, _)| rs.index_of(k).is_some_and(|i| members.contains(&i)));
            if !inside {
                return fail(Certificate::NotStable { generator: g, member: kb.clone(), bracket: e });
            }
        }
        for &a in members.range(b..) {
            let e = bracket_monomials(&rs.keys[a], kb);
            if !e.is_zero() {
                return fail(Certificate::NotAbelian { a: rs.keys[a].clone(), b: kb.clone(), bracket: e });
            }
        }
    }
    Ok(IdealCheck { is_ideal: true, certificate: None })
}

/// Recover generator antichains of an up ideal from its monomials.
///
/// Anchors are the highest nodes carrying a monomial; the antichain at `q` is
/// the set of maximal exponent tuples at `q` not already present at the
/// parent of `q`.
pub fn recover_admissible_pair(tree: &TreeDiagram, ideal: &AbelianIdeal) -> Option<AdmissiblePair> {
    let mut at: BTreeMap<usize, Vec<&OpKey>> = BTreeMap::new();
    for k in &ideal.keys {
        at.entry(k.dvar).or_default().push(k);
    }
    let s: Vec<usize> = at
        .keys()
        .copied()
        .filter(|&q| tree.clan_unchecked(q)[..tree.clan_unchecked(q).len() - 1].iter().all(|a| !at.contains_key(a)))
        .collect();
    let mut k = BTreeMap::new();
    for &i in &s {
        let p = root_poset(tree, i, Direction::Up);
        let tuples = |q: usize| -> Option<Vec<usize>> {
            at.get(&q)
                .map(|ks| ks.iter().map(|key| p.tuple_of(&key.exps).and_then(|t| p.position(&t))).collect::<Option<Vec<_>>>())
                .unwrap_or(Some(Vec::new()))
        };
        for q in reach(tree, i, Direction::Up) {
            let here = tuples(q)?;
            let parent: Vec<usize> = if q == i { Vec::new() } else { tuples(tree.parent(q)?)? };
            let fresh: Vec<usize> = p.maximal(&here).into_iter().filter(|x| !parent.contains(x)).collect();
            if !fresh.is_empty() {
                k.insert(q, fresh.iter().map(|&x| p.elements[x].clone()).collect());
            }
        }
    }
    Some(AdmissiblePair { s, k })
}

/// The up ideal generated by an admissible pair.
pub fn ideal_from_pair(tree: &TreeDiagram, pair: &AdmissiblePair) -> Result<AbelianIdeal, IdealError> {
    let rs = RootSystem::new(tree, Direction::Up);
    let mut m = rs.empty_set();
    for &i in &pair.s {
        let p = root_poset(tree, i, Direction::Up);
        for (&q, gens) in pair.k.iter().filter(|(&q, _)| q == i || tree.is_descendant(q, i)) {
            let mut g = Vec::new();
            for t in gens {
                g.push(p.position(t).ok_or_else(|| IdealError::NotInPoset(t.clone()))?);
            }
            for l in p.downset(&g) {
                let e = p.exponents(tree.n(), l);
                for r in std::iter::once(q).chain(tree.descendants(q)) {
                    m.insert(rs.index_of(&OpKey::new(e.clone(), r)).expect("admissible monomial lies in the basis"));
                }
            }
        }
    }
    Ok(rs.ideal(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{build_tree, TreeSpec};

    fn count(t: &TreeDiagram, d: Direction) -> usize {
        enumerate_ideals(t, d).unwrap().len()
    }

    #[test]
    fn unit_chains_have_power_of_two_ideals() {
        for n in 2..=5 {
            let t = TreeDiagram::chain(&vec![1; n - 1]).unwrap();
            assert_eq!(count(&t, Direction::Up), 1 << n);
            assert_eq!(count_ideals(&t, Direction::Up).unwrap(), BigUint::from(1u32 << n));
            assert_eq!(maximal_ideals(&t, Direction::Up).len(), n);
        }
    }

    #[test]
    fn principal_examples() {
        let a2 = TreeDiagram::chain(&[1]).unwrap();
        let i = principal_ideal(&a2, 2, &[1], Direction::Up).unwrap();
        assert_eq!(i.keys, vec![OpKey::new(vec![0, 0], 2), OpKey::new(vec![1, 0], 2)]);
        let t = TreeDiagram::chain(&[1, 2]).unwrap();
        let i = principal_ideal(&t, 3, &[0, 2], Direction::Up).unwrap();
        let tuples: Vec<Vec<u32>> = i.keys.iter().map(|k| k.exps[..2].to_vec()).collect();
        assert_eq!(tuples, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        let roots: Vec<Root> = i.roots.clone();
        assert!(is_abelian_ideal(&t, Direction::Up, &roots).unwrap().is_ideal);
        assert_eq!(
            principal_ideal(&t, 2, &[0], Direction::Up).unwrap_err(),
            IdealError::NotAnchor { node: 2, direction: Direction::Up }
        );
    }

    #[test]
    fn certificates() {
        let a2 = TreeDiagram::chain(&[1]).unwrap();
        let all: Vec<Root> = basis_keys(&a2, Direction::Up).iter().map(OpKey::root).collect();
        let r = is_abelian_ideal(&a2, Direction::Up, &all).unwrap();
        assert!(!r.is_ideal);
        assert!(matches!(r.certificate, Some(Certificate::NotAbelian { .. })));
        assert!(is_abelian_ideal(&a2, Direction::Up, &[]).unwrap().is_ideal);
        assert!(is_abelian_ideal(&a2, Direction::Up, &[Root { alpha: vec![0, -1] }]).unwrap().is_ideal);
        let x1d2 = Root { alpha: vec![1, -1] };
        let r = is_abelian_ideal(&a2, Direction::Up, std::slice::from_ref(&x1d2)).unwrap();
        assert!(matches!(r.certificate, Some(Certificate::NotStable { .. })));
        assert_eq!(
            is_abelian_ideal(&a2, Direction::Up, &[Root { alpha: vec![5, -1] }]).unwrap_err(),
            IdealError::UnknownRoot(Root { alpha: vec![5, -1] })
        );
    }

    #[test]
    fn down_maximal_family_on_small_e_tree() {
        let e = TreeDiagram::e_tree(2, 1, 1).unwrap();
        assert_eq!(maximal_ideals(&e, Direction::Down).len(), 3);
        assert_eq!(maximal_ideals_by_enumeration(&e, Direction::Down).unwrap().len(), 5);
    }

    #[test]
    fn list_guard() {
        let t = build_tree(&TreeSpec::new(3, &[(1, 2, 3), (2, 3, 3)])).unwrap();
        assert!(matches!(enumerate_ideals(&t, Direction::Up), Err(IdealError::SizeGuard { .. })));
        assert!(count_ideals(&t, Direction::Up).is_ok());
    }

    #[test]
    fn down_anchor_ideal_can_be_submaximal() {
        let t = build_tree(&TreeSpec::new(3, &[(1, 2, 1), (1, 3, 3)])).unwrap();
        let family = maximal_ideals(&t, Direction::Down);
        let all = enumerate_ideals(&t, Direction::Down).unwrap();
        let maximal = maximal_among(&all);
        let small = family.iter().find(|i| i.dim() == 2).unwrap();
        assert!(!maximal.contains(small));
        assert!(maximal.iter().any(|m| m.dim() == 5 && m.contains(small)));
    }
}
