//! Sparse multivariate polynomials with exact coefficients.

mod gauss;
mod series;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use gauss::GaussianRational;
pub use series::{beta_coefficient, ell, series_coeff};

pub type Rational = num_rational::BigRational;

/// Build a rational from a small numerator and denominator.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// `p` or `p/q` in lowest terms.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("cannot integrate {0} from 0 to itself while it occurs in the integrand")]
    SameBound(Var),
    #[error("no value assigned to {0}")]
    Unassigned(Var),
}

/// Polynomial indeterminates.
///
/// `X(i)` are the space variables, `Z(i)` the commuting symbol standing for
/// `d/dx_i`, `K(i)` a wave number, `T`/`S` times and `Y(l)` integration
/// temporaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(u32),
    Z(u32),
    K(u32),
    T,
    S,
    Y(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::Z(i) => write!(f, "z{i}"),
            Var::K(i) => write!(f, "k{i}"),
            Var::T => write!(f, "t"),
            Var::S => write!(f, "s"),
            Var::Y(i) => write!(f, "y{i}"),
        }
    }
}

/// A power product, stored as `(var, exponent)` pairs sorted by variable with
/// no zero exponents.
///
/// Ordered by total degree, then lexicographically with larger exponents of
/// earlier variables first, so `1 < x1 < x2 < t < x1^2 < x1*t < t^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (v, e) in pairs {
            *m.entry(v).or_insert(0) += e;
        }
        Monomial(m.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Split off the power of `v`.
    fn without(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        (e, Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a.0 != b.0 {
                    return a.0.cmp(&b.0);
                }
                if a.1 != b.1 {
                    return b.1.cmp(&a.1);
                }
            }
            other.0.len().cmp(&self.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact coefficient fields usable in [`MultiPoly`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_rational(r: Rational) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn to_complex(&self) -> Complex64;
    fn render(&self) -> String;
    /// True when the rendered form is a sum and needs parentheses as a factor.
    fn is_compound(&self) -> bool {
        false
    }
}

impl Coeff for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn render(&self) -> String {
        fmt_rational(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<C = Rational> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for MultiPoly<C> {
    fn default() -> Self {
        MultiPoly::zero()
    }
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(C::one(), Monomial::var(v, 1))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(C::from_rational(r))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Every variable that occurs with positive exponent, ascending.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.vars().map(|(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.clone() * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn checked_pow(&self, k: i64) -> Result<Self, PolyError> {
        u32::try_from(k)
            .map(|k| self.pow(k))
            .map_err(|_| PolyError::NegativeExponent(k))
    }

    /// Replace `v` by `q` everywhere.
    pub fn substitute(&self, v: Var, q: &MultiPoly<C>) -> Self {
        let mut map = BTreeMap::new();
        map.insert(v, q.clone());
        self.substitute_all(&map)
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_all(&self, map: &BTreeMap<Var, MultiPoly<C>>) -> Self {
        let mut powers: HashMap<(Var, u32), MultiPoly<C>> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut acc = Self::one();
            for (v, e) in m.vars() {
                match map.get(&v) {
                    Some(q) => {
                        let p = powers.entry((v, e)).or_insert_with(|| q.pow(e));
                        acc = &acc * p;
                    }
                    None => rest.push((v, e)),
                }
            }
            let factor = Self::term(c.clone(), Monomial(rest));
            out = out + &(&acc * &factor);
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            if e > 0 {
                let m2 = rest.mul(&Monomial::var(v, e - 1));
                out.add_term(m2, c.scale(&rat(e as i64, 1)));
            }
        }
        out
    }

    /// `int_0^upper p d(var)`.
    pub fn integrate_from_zero(&self, var: Var, upper: Var) -> Result<Self, PolyError> {
        if var == upper {
            if self.contains_var(var) {
                return Err(PolyError::SameBound(var));
            }
            return Ok(self * &Self::var(var));
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(var);
            let m2 = rest.mul(&Monomial::var(upper, e + 1));
            out.add_term(m2, c.scale(&rat(1, e as i64 + 1)));
        }
        Ok(out)
    }

    /// Coefficient of `v^e` as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, e: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (k, rest) = m.without(v);
            if k == e {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn eval_complex(&self, assignment: &HashMap<Var, Complex64>) -> Result<Complex64, PolyError> {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_complex();
            for (x, e) in m.vars() {
                let a = assignment.get(&x).ok_or(PolyError::Unassigned(x))?;
                v *= a.powu(e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Evaluate with real values supplied by `value`; imaginary parts of
    /// coefficients are ignored.
    pub fn eval_real(&self, value: impl Fn(Var) -> Option<f64>) -> Result<f64, PolyError> {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut v = c.to_complex().re;
            for (x, e) in m.vars() {
                v *= value(x).ok_or(PolyError::Unassigned(x))?.powi(e as i32);
            }
            total += v;
        }
        Ok(total)
    }

    pub fn eval_rational(&self, assignment: &BTreeMap<Var, Rational>) -> Result<C, PolyError> {
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut f = Rational::one();
            for (x, e) in m.vars() {
                let a = assignment.get(&x).ok_or(PolyError::Unassigned(x))?;
                f *= num_traits::pow(a.clone(), e as usize);
            }
            total = total + &c.scale(&f);
        }
        Ok(total)
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut text = c.render();
            let negative = !c.is_compound() && text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let coeff = if c.is_compound() { format!("({text})") } else { text };
            match (m.is_one(), coeff.as_str()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, "1") => write!(f, "{m}")?,
                (false, _) => write!(f, "{coeff}*{m}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> Add<&MultiPoly<C>> for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(mut self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
        self
    }
}

impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        self.clone() + rhs
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = MultiPoly::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(ma.mul(mb), a.clone() * b);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = MultiPoly<Rational>;

    fn x(i: u32) -> P {
        P::var(Var::X(i))
    }
    fn t() -> P {
        P::var(Var::T)
    }
    fn c(p: i64, q: i64) -> P {
        P::from_rational(rat(p, q))
    }

    #[test]
    fn binomial_and_display_order() {
        let p = (&x(1) + &t()).pow(2);
        assert_eq!(p.to_string(), "x1^2 + 2*x1*t + t^2");
        let q = &(&x(1) * &t()) + &(&t().pow(2) * &c(1, 2));
        assert_eq!(q.to_string(), "x1*t + 1/2*t^2");
        assert_eq!((&c(-1, 3) + &x(2)).to_string(), "-1/3 + x2");
        assert_eq!((&x(1) - &c(1, 1)).to_string(), "-1 + x1");
    }

    #[test]
    fn difference_of_squares() {
        let y = P::var(Var::Y(0));
        let p = &(&x(1) + &y) * &(&x(1) - &y);
        assert_eq!(p, &x(1).pow(2) - &y.pow(2));
    }

    #[test]
    fn substitute_time_zero() {
        let q = &(&x(1) * &t()) + &(&t().pow(2) * &c(1, 2));
        assert!(q.substitute(Var::T, &P::zero()).is_zero());
    }

    #[test]
    fn integration_examples() {
        let y = Var::Y(0);
        let p = &x(1) + &P::var(y);
        let got = p.integrate_from_zero(y, Var::T).unwrap();
        assert_eq!(got, &(&x(1) * &t()) + &(&t().pow(2) * &c(1, 2)));
        assert_eq!(P::one().integrate_from_zero(y, Var::T).unwrap(), t());
        let sq = p.pow(2).integrate_from_zero(y, Var::T).unwrap();
        let want = &(&(&x(1).pow(2) * &t()) + &(&x(1) * &t().pow(2))) + &(&t().pow(3) * &c(1, 3));
        assert_eq!(sq, want);
        assert_eq!(t().integrate_from_zero(Var::T, Var::T), Err(PolyError::SameBound(Var::T)));
    }

    #[test]
    fn negative_power_is_an_error() {
        assert_eq!(x(1).checked_pow(-1), Err(PolyError::NegativeExponent(-1)));
        assert_eq!(x(1).checked_pow(3).unwrap(), x(1).pow(3));
    }

    #[test]
    fn complex_evaluation() {
        let p = &t() * &P::var(Var::Z(1)).pow(2);
        let mut a = HashMap::new();
        a.insert(Var::T, Complex64::new(1.0, 0.0));
        a.insert(Var::Z(1), Complex64::new(0.0, 1.0));
        assert_eq!(p.eval_complex(&a).unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(P::zero().eval_complex(&HashMap::new()).unwrap(), Complex64::new(0.0, 0.0));
        let q = &(&x(1) * &t()) + &(&t().pow(2) * &c(1, 2));
        let mut b = HashMap::new();
        b.insert(Var::X(1), Complex64::new(2.0, 0.0));
        b.insert(Var::T, Complex64::new(3.0, 0.0));
        assert_eq!(q.eval_complex(&b).unwrap().re, 10.5);
        b.remove(&Var::T);
        assert_eq!(q.eval_complex(&b), Err(PolyError::Unassigned(Var::T)));
    }

    #[test]
    fn monomial_order() {
        let ms = [
            Monomial::one(),
            Monomial::var(Var::X(1), 1),
            Monomial::var(Var::X(2), 1),
            Monomial::var(Var::T, 1),
            Monomial::var(Var::X(1), 2),
            Monomial::from_pairs([(Var::X(1), 1), (Var::T, 1)]),
            Monomial::var(Var::T, 2),
        ];
        for w in ms.windows(2) {
            assert!(w[0] < w[1], "{} < {}", w[0], w[1]);
        }
    }
}
