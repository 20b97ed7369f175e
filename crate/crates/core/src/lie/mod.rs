//! The upward and downward nilpotent Lie algebras of a tree diagram.
//!
//! Both are spanned by monomial operators `x^a d_j`. The upward algebra is
//! generated by `d_1` and `x_i^{d} d_j` along every edge `(i, j)`; the
//! downward one by `d_r` for every tip `r` and `x_j^{d} d_i` along every edge.

pub mod linalg;
mod structure;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{fmt_rational, rat, beta_coefficient, ell, Rational};
use crate::tree::TreeDiagram;

pub use structure::{verify_structure, StructureReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("operands live in different variable counts ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("unknown direction {0:?} (expected up or down)")]
    UnknownDirection(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl FromStr for Direction {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, LieError> {
        match s {
            "up" => Ok(Direction::Up),
            "down" => Ok(Direction::Down),
            _ => Err(LieError::UnknownDirection(s.to_string())),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Up => "up",
            Direction::Down => "down",
        })
    }
}

/// `x^exps d_{dvar}` without coefficient. `dvar` is 1-based.
///
/// Ordered by derivative node, then by total degree, then with larger
/// exponents of earlier variables first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpKey {
    pub exps: Vec<u32>,
    pub dvar: usize,
}

fn graded_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

impl Ord for OpKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dvar
            .cmp(&other.dvar)
            .then_with(|| graded_cmp(&self.exps, &other.exps))
    }
}

impl PartialOrd for OpKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OpKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "x{}*", k + 1)?,
                _ => write!(f, "x{}^{}*", k + 1, e)?,
            }
        }
        write!(f, "d{}", self.dvar)
    }
}

impl OpKey {
    pub fn new(exps: Vec<u32>, dvar: usize) -> Self {
        OpKey { exps, dvar }
    }

    pub fn partial(n: usize, dvar: usize) -> Self {
        OpKey { exps: vec![0; n], dvar }
    }

    pub fn root(&self) -> Root {
        let mut alpha: Vec<i64> = self.exps.iter().map(|&e| e as i64).collect();
        alpha[self.dvar - 1] -= 1;
        Root { alpha }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }
}

/// `coeff * x^exps d_{dvar}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffOpMonomial {
    #[serde(serialize_with = "ser_rational")]
    pub coeff: Rational,
    pub exps: Vec<u32>,
    #[serde(rename = "d")]
    pub dvar: usize,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

impl DiffOpMonomial {
    pub fn unit(key: OpKey) -> Self {
        DiffOpMonomial { coeff: Rational::one(), exps: key.exps, dvar: key.dvar }
    }

    pub fn key(&self) -> OpKey {
        OpKey::new(self.exps.clone(), self.dvar)
    }

    pub fn root(&self) -> Root {
        self.key().root()
    }

    pub fn to_element(&self) -> LieElement {
        LieElement::from_terms(self.exps.len(), [(self.key(), self.coeff.clone())])
    }
}

impl fmt::Display for DiffOpMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.coeff.is_one() {
            write!(f, "{}*", fmt_rational(&self.coeff))?;
        }
        write!(f, "{}", self.key())
    }
}

/// A weight of the diagonal torus `span{x_k d_k}`: the operator `x^a d_j`
/// is scaled by `a_k - [k = j]` under `ad(x_k d_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Root {
    pub alpha: Vec<i64>,
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &a) in self.alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sign = if a < 0 { "-" } else if first { "" } else { "+" };
            let mag = a.unsigned_abs();
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{sign}")?;
            if !first {
                write!(f, " ")?;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "e{}", k + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Finite rational combination of monomial operators in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    n: usize,
    terms: BTreeMap<OpKey, Rational>,
}

impl LieElement {
    pub fn zero(n: usize) -> Self {
        LieElement { n, terms: BTreeMap::new() }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (OpKey, Rational)>) -> Self {
        let mut e = LieElement::zero(n);
        for (k, c) in terms {
            assert_eq!(k.n(), n, "exponent vector length");
            e.add_term(k, c);
        }
        e
    }

    /// `x^exps d_dvar` with coefficient 1.
    pub fn monomial(exps: &[u32], dvar: usize) -> Self {
        LieElement::from_terms(exps.len(), [(OpKey::new(exps.to_vec(), dvar), Rational::one())])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, k: OpKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, f: &Rational) -> LieElement {
        LieElement::from_terms(self.n, self.terms.iter().map(|(k, c)| (k.clone(), c * f)))
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{}*", fmt_rational(&mag))?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

fn bracket_keys(a: &OpKey, b: &OpKey, out: &mut LieElement, scale: &Rational) {
    let (i, j) = (a.dvar, b.dvar);
    let bi = b.exps[i - 1];
    if bi > 0 {
        let mut e: Vec<u32> = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
        e[i - 1] -= 1;
        out.add_term(OpKey::new(e, j), scale * rat(bi as i64, 1));
    }
    let aj = a.exps[j - 1];
    if aj > 0 {
        let mut e: Vec<u32> = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
        e[j - 1] -= 1;
        out.add_term(OpKey::new(e, i), -(scale * rat(aj as i64, 1)));
    }
}

/// `[a, b]`, using `[x^a d_i, x^b d_j] = b_i x^{a+b-e_i} d_j - a_j x^{a+b-e_j} d_i`.
pub fn bracket(a: &LieElement, b: &LieElement) -> Result<LieElement, LieError> {
    if a.n != b.n {
        return Err(LieError::DimensionMismatch(a.n, b.n));
    }
    let mut out = LieElement::zero(a.n);
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            bracket_keys(ka, kb, &mut out, &(ca * cb));
        }
    }
    Ok(out)
}

/// Bracket of two unit monomials.
pub fn bracket_monomials(a: &OpKey, b: &OpKey) -> LieElement {
    let mut out = LieElement::zero(a.n());
    bracket_keys(a, b, &mut out, &Rational::one());
    out
}

/// All integer vectors `j >= 0` with `sum_s j_s * w_s <= bound`.
fn simplex_points(w: &[u64], bound: u64) -> Vec<Vec<u32>> {
    fn go(w: &[u64], left: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match w.split_first() {
            None => out.push(cur.clone()),
            Some((&ws, rest)) => {
                for j in 0..=left / ws {
                    cur.push(j as u32);
                    go(rest, left - j * ws, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(w, bound, &mut Vec::new(), &mut out);
    out
}

/// Clan variables of `i` (excluding `i`) with their prefix weight products,
/// and the total clan product.
pub(crate) fn up_simplex(tree: &TreeDiagram, i: usize) -> (Vec<usize>, Vec<u64>, u64) {
    let clan = tree.clan_unchecked(i);
    let vars = clan[..clan.len() - 1].to_vec();
    let mut wts = Vec::with_capacity(vars.len());
    let mut acc = 1u64;
    for &node in &clan[1..] {
        wts.push(acc);
        acc *= tree.weight(node).unwrap_or(1);
    }
    (vars, wts, acc)
}

/// Descendants of `i` with `kappa_{i,s}`, and `kappa_i`.
pub(crate) fn down_simplex(tree: &TreeDiagram, i: usize) -> (Vec<usize>, Vec<u64>, u64) {
    let vars = tree.descendants(i);
    let kappa = tree.kappa(i);
    let ks = vars.iter().map(|&s| kappa / tree.path_product(i, s)).collect();
    (vars, ks, kappa)
}

/// Exponent vectors (length `n`) supported on `vars` for the lattice points
/// of the given simplex.
pub(crate) fn simplex_exponents(n: usize, vars: &[usize], w: &[u64], bound: u64) -> Vec<Vec<u32>> {
    simplex_points(w, bound)
        .into_iter()
        .map(|js| {
            let mut e = vec![0u32; n];
            for (&v, j) in vars.iter().zip(js) {
                e[v - 1] = j;
            }
            e
        })
        .collect()
}

/// Basis of unit monomials, ordered by derivative node, then graded on
/// exponents.
pub fn enumerate_basis(tree: &TreeDiagram, direction: Direction) -> Vec<DiffOpMonomial> {
    let n = tree.n();
    let mut keys = Vec::new();
    match direction {
        Direction::Up => {
            keys.push(OpKey::partial(n, 1));
            for i in 2..=n {
                let (vars, w, bound) = up_simplex(tree, i);
                keys.extend(simplex_exponents(n, &vars, &w, bound).into_iter().map(|e| OpKey::new(e, i)));
            }
        }
        Direction::Down => {
            for i in tree.nodes() {
                if tree.is_tip(i) {
                    keys.push(OpKey::partial(n, i));
                } else {
                    let (vars, w, bound) = down_simplex(tree, i);
                    keys.extend(simplex_exponents(n, &vars, &w, bound).into_iter().map(|e| OpKey::new(e, i)));
                }
            }
        }
    }
    keys.sort();
    keys.into_iter().map(DiffOpMonomial::unit).collect()
}

/// Basis keys only.
pub fn basis_keys(tree: &TreeDiagram, direction: Direction) -> Vec<OpKey> {
    enumerate_basis(tree, direction).into_iter().map(|m| m.key()).collect()
}

/// Closed-form dimension and nilpotence index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimNilpotence {
    pub dim: u64,
    /// Number of nonzero terms of the lower central series.
    pub nilpotence: u64,
    /// The index obtained by summing weight products taken outward from the
    /// root (up) or over all descendants of the root (down). Equal to
    /// `nilpotence` on chains with palindromic weights; it can differ on
    /// other trees.
    pub nilpotence_printed: u64,
}

pub fn dim_and_nilpotence(tree: &TreeDiagram, direction: Direction) -> DimNilpotence {
    let tips = tree.tips();
    let to_u64 = |b: num_bigint::BigUint| b.to_u64().expect("dimension fits in u64");
    match direction {
        Direction::Up => {
            let dim = 1 + (2..=tree.n()).map(|i| to_u64(ell(&tree.clan_weights(i)))).sum::<u64>();
            let w: Vec<_> = tips.iter().map(|&r| tree.weights(r).expect("tip is a node")).collect();
            DimNilpotence {
                dim,
                nilpotence: w.iter().map(|x| x.nilpotence).max().unwrap_or(1),
                nilpotence_printed: w.iter().map(|x| x.nilpotence_root_products).max().unwrap_or(1),
            }
        }
        Direction::Down => {
            let mut dim = tips.len() as u64;
            for i in tree.nodes().filter(|&i| !tree.is_tip(i)) {
                let (_, ks, kappa) = down_simplex(tree, i);
                dim += to_u64(beta_coefficient(kappa, &ks));
            }
            let nilpotence = tips
                .iter()
                .map(|&r| 1 + tree.clan_unchecked(r)[1..].iter().map(|&j| tree.path_product(1, j)).sum::<u64>())
                .max()
                .unwrap_or(1);
            let printed = 1 + tree.descendants(1).iter().map(|&j| tree.path_product(1, j)).sum::<u64>();
            DimNilpotence { dim, nilpotence, nilpotence_printed: printed }
        }
    }
}

/// Each basis monomial with its root.
pub fn roots(tree: &TreeDiagram, direction: Direction) -> Vec<(Root, DiffOpMonomial)> {
    enumerate_basis(tree, direction)
        .into_iter()
        .map(|m| (m.root(), m))
        .collect()
}
