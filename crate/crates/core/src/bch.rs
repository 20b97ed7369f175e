//! Coefficients of `x / (1 - e^{-x})` and of its reciprocal.
//!
//! `a_k` is the coefficient of `x^k` in `x / (1 - e^{-x})`; these are the
//! weights of `ad(A)^k B` in the linear-in-`B` part of the Campbell-Hausdorff
//! series. `theta_i` is the coefficient of `x^{i-1}` in `(1 - e^{-x}) / x`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::poly::{fmt_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BchCoefficients {
    /// `a_0..=a_K`.
    pub a: Vec<Rational>,
    /// `theta_1..=theta_{K+1}`, i.e. `(-1)^{i-1}/i!`.
    pub theta: Vec<Rational>,
}

#[derive(Serialize)]
struct Json {
    a: Vec<String>,
    theta: Vec<String>,
}

impl BchCoefficients {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(Json {
            a: self.a.iter().map(fmt_rational).collect(),
            theta: self.theta.iter().map(fmt_rational).collect(),
        })
        .expect("plain strings serialize")
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn inv_factorial(k: usize) -> Rational {
    Rational::new(BigInt::one(), factorial(k))
}

/// `theta_1..=theta_m`.
pub fn theta_series(m: usize) -> Vec<Rational> {
    (1..=m)
        .map(|i| {
            let s = if i % 2 == 1 { Rational::one() } else { -Rational::one() };
            s * inv_factorial(i)
        })
        .collect()
}

/// `a_0..=a_k` by inverting the power series of `(1 - e^{-x}) / x`.
pub fn bch_coefficients(k: usize) -> BchCoefficients {
    let theta = theta_series(k + 1);
    let mut a: Vec<Rational> = Vec::with_capacity(k + 1);
    for m in 0..=k {
        // sum_{j<=m} a_j theta_{m-j+1} = [m == 0]
        let mut s = if m == 0 { Rational::one() } else { Rational::zero() };
        for (j, aj) in a.iter().enumerate() {
            s -= aj * &theta[m - j];
        }
        a.push(s / &theta[0]);
    }
    BchCoefficients { a, theta }
}

/// `a_k` from the expansion of `x / (1 - e^{-x}) = 1 / (1 - (1 - (1 - e^{-x})/x))`
/// as a geometric series, written out as a sum over compositions:
///
/// `a_k = sum_{m=1}^{k+1} (-1)^{m-1}/m * sum_{p_1+...+p_m = k+1-m}
///        1 / ((p_1+1)! ... (p_{m-1}+1)! p_m!)`.
pub fn bch_coefficient_double_sum(k: usize) -> Rational {
    fn compositions(parts: usize, total: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if parts == 1 {
            cur.push(total);
            f(cur);
            cur.pop();
            return;
        }
        for p in 0..=total {
            cur.push(p);
            compositions(parts - 1, total - p, cur, f);
            cur.pop();
        }
    }
    let mut sum = Rational::zero();
    for m in 1..=k + 1 {
        let mut inner = Rational::zero();
        compositions(m, k + 1 - m, &mut Vec::new(), &mut |p| {
            let mut term = inv_factorial(p[m - 1]);
            for &pi in &p[..m - 1] {
                term *= inv_factorial(pi + 1);
            }
            inner += term;
        });
        let sign = if m % 2 == 1 { Rational::one() } else { -Rational::one() };
        sum += sign * inner / Rational::from_integer(BigInt::from(m));
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn first_coefficients() {
        let b = bch_coefficients(4);
        assert_eq!(b.a, vec![rat(1, 1), rat(1, 2), rat(1, 12), rat(0, 1), rat(-1, 720)]);
        assert_eq!(b.theta[..4], [rat(1, 1), rat(-1, 2), rat(1, 6), rat(-1, 24)]);
    }

    #[test]
    fn double_sum_agrees() {
        let b = bch_coefficients(8);
        for (k, a) in b.a.iter().enumerate() {
            assert_eq!(bch_coefficient_double_sum(k), *a, "k = {k}");
        }
    }

    #[test]
    fn product_is_one() {
        let k = 10;
        let b = bch_coefficients(k);
        for m in 0..=k {
            let s: Rational = (0..=m).map(|j| &b.a[j] * &b.theta[m - j]).sum();
            assert_eq!(s, if m == 0 { rat(1, 1) } else { rat(0, 1) });
        }
    }
}
