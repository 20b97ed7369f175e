use num_bigint::BigUint;
use num_traits::Zero;

/// Coefficient of `t^k` in `prod_j 1/(1 - t^{m_j})^{mult_j}`.
///
/// `factors` holds `(m_j, mult_j)` pairs. Computed by truncated convolution.
pub fn series_coeff(factors: &[(u64, u32)], k: u64) -> BigUint {
    let k = k as usize;
    let mut c = vec![BigUint::zero(); k + 1];
    c[0] = BigUint::from(1u32);
    for &(m, mult) in factors {
        assert!(m >= 1, "factor exponent must be positive");
        let m = m as usize;
        for _ in 0..mult {
            // multiply by 1/(1 - t^m): c[d] += c[d - m], ascending
            for d in m..=k {
                let prev = c[d - m].clone();
                c[d] += prev;
            }
        }
    }
    c.swap_remove(k)
}

/// Lattice-point count attached to a clan with edge weights `w_1..w_q`:
/// the coefficient of `t^{w_1...w_q}` in `1/((1-t)^2 prod_{j<q} (1 - t^{w_1...w_j}))`.
///
/// `ell(&[])` is 1 (the root contributes `d/dx_1` alone).
pub fn ell(weights: &[u64]) -> BigUint {
    if weights.is_empty() {
        return BigUint::from(1u32);
    }
    let mut factors = vec![(1u64, 2u32)];
    let mut prefix = 1u64;
    for &w in &weights[..weights.len() - 1] {
        prefix *= w;
        factors.push((prefix, 1));
    }
    let total = prefix * weights[weights.len() - 1];
    series_coeff(&factors, total)
}

/// Coefficient of `t^kappa` in `1/((1-t) prod_s (1 - t^{kappa_s}))`.
pub fn beta_coefficient(kappa: u64, kappa_s: &[u64]) -> BigUint {
    let mut factors = vec![(1u64, 1u32)];
    factors.extend(kappa_s.iter().map(|&m| (m, 1)));
    series_coeff(&factors, kappa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    #[test]
    fn small_values() {
        assert_eq!(ell(&[1, 1, 2]), BigUint::from(10u32));
        assert_eq!(ell(&[3]), BigUint::from(4u32));
        assert_eq!(ell(&[2, 2]), BigUint::from(9u32));
        assert_eq!(series_coeff(&[], 0), BigUint::from(1u32));
        assert_eq!(series_coeff(&[], 3), BigUint::zero());
    }

    #[test]
    fn all_ones_gives_binomials() {
        for r in 0..=5u64 {
            for m in 0..=8u64 {
                let mut w = vec![1u64; r as usize];
                w.push(m.max(1));
                let m = m.max(1);
                assert_eq!(ell(&w), BigUint::from(binomial(r + 1 + m, m)));
            }
        }
    }
}
