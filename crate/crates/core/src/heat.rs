//! The higher-order heat-type equation
//! `u_t = d_1^{m_1} u + sum_{edges (i,j)} x_i d_j^{m_j} u` on a periodic box.
//!
//! A plane wave `exp(i kappa.x)` evolves into `exp(i kappa.x + E(t, x, kappa))`
//! with `E = sum_i xi_i(t, i kappa)` affine in `x`. Here `xi_1 = xi~_1`,
//! `xi_i = x_{p(i)} xi~_i`, tips carry `xi~_r = t z_r^{m_r}` and an inner node
//! `xi~_i = int_0^t (z_i + sum_{children s} xi~_s(y))^{m_i} dy`, with `z_r`
//! standing for `d_r`.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::expr::{Expr, ExprError};
use crate::poly::{GaussianRational, MultiPoly, Var};
use crate::tree::TreeDiagram;

/// Modes whose coefficients are both below this are dropped from solutions.
pub const MODE_CUTOFF: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeatError {
    #[error("expected {expected} values for {what}, got {got}")]
    Dimension { what: &'static str, expected: usize, got: usize },
    #[error("derivative order of node {0} must be at least 1")]
    ZeroOrder(usize),
    #[error("box half-width {0} must be positive")]
    BadBox(f64),
    #[error("{samples} samples per axis cannot resolve {modes} modes; use a power of two of at least {min}")]
    Samples { samples: usize, modes: usize, min: usize },
    #[error(transparent)]
    Expr(#[from] ExprError),
}

type GPoly = MultiPoly<GaussianRational>;

#[derive(Debug, Clone, PartialEq)]
pub struct XiFamily {
    pub orders: Vec<u32>,
    /// `xi_tilde[i - 1]`, a polynomial in `t` and `z_s` for `s` in the subtree of `i`.
    pub xi_tilde: Vec<MultiPoly>,
    /// `parent[i - 1]`.
    pub parent: Vec<Option<usize>>,
}

fn check_orders(tree: &TreeDiagram, orders: &[u32]) -> Result<(), HeatError> {
    if orders.len() != tree.n() {
        return Err(HeatError::Dimension { what: "orders", expected: tree.n(), got: orders.len() });
    }
    if let Some(k) = orders.iter().position(|&m| m == 0) {
        return Err(HeatError::ZeroOrder(k + 1));
    }
    Ok(())
}

pub fn xi_family(tree: &TreeDiagram, orders: &[u32]) -> Result<XiFamily, HeatError> {
    check_orders(tree, orders)?;
    let n = tree.n();
    let t = MultiPoly::var(Var::T);
    let y = Var::Y(0);
    let mut xi_tilde = vec![MultiPoly::zero(); n];
    for i in (1..=n).rev() {
        let z = MultiPoly::var(Var::Z(i as u32));
        let children = tree.children(i);
        xi_tilde[i - 1] = if children.is_empty() {
            &t * &z.pow(orders[i - 1])
        } else {
            let mut inner = z;
            for s in children {
                inner = inner + &xi_tilde[s - 1].substitute(Var::T, &MultiPoly::var(y));
            }
            inner
                .pow(orders[i - 1])
                .integrate_from_zero(y, Var::T)
                .expect("integration variable differs from the bound")
        };
    }
    Ok(XiFamily {
        orders: orders.to_vec(),
        xi_tilde,
        parent: tree.nodes().map(|i| tree.parent(i)).collect(),
    })
}

impl XiFamily {
    pub fn n(&self) -> usize {
        self.orders.len()
    }

    /// `xi_i`.
    pub fn xi(&self, i: usize) -> MultiPoly {
        match self.parent[i - 1] {
            None => self.xi_tilde[i - 1].clone(),
            Some(p) => &MultiPoly::var(Var::X(p as u32)) * &self.xi_tilde[i - 1],
        }
    }

    /// `E(t, x, kappa) = sum_i xi_i` with `z_r -> i kappa_r` (`kappa_r` is `k{r}`).
    pub fn exponent(&self) -> GPoly {
        let subs: BTreeMap<Var, GPoly> = (1..=self.n() as u32)
            .map(|r| (Var::Z(r), MultiPoly::var(Var::K(r)).scale(&GaussianRational::i())))
            .collect();
        let mut e = GPoly::zero();
        for i in 1..=self.n() {
            let xi = self.xi(i).map_coeffs(|c| GaussianRational::from(c.clone()));
            e = e + &xi.substitute_all(&subs);
        }
        e
    }
}

/// Real and imaginary parts of `E` as exact polynomials in `t`, `x`, `kappa`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicExponent {
    pub a: MultiPoly,
    pub b: MultiPoly,
}

pub fn mode_exponent_symbolic(xi: &XiFamily) -> SymbolicExponent {
    let e = xi.exponent();
    SymbolicExponent {
        a: e.map_coeffs(|c| c.re.clone()),
        b: e.map_coeffs(|c| c.im.clone()),
    }
}

/// `constant + sum_j coeffs[j] x_{j+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineForm {
    pub constant: f64,
    pub coeffs: Vec<f64>,
}

impl AffineForm {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.constant + self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum::<f64>()
    }
}

/// Growth `A` and phase shift `B` of one mode at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeExponent {
    pub a: AffineForm,
    pub b: AffineForm,
}

fn wave_numbers(k: &[i64], half_widths: &[f64]) -> Vec<f64> {
    k.iter().zip(half_widths).map(|(&kr, &a)| 2.0 * PI * kr as f64 / a).collect()
}

fn check_box(n: usize, half_widths: &[f64]) -> Result<(), HeatError> {
    if half_widths.len() != n {
        return Err(HeatError::Dimension { what: "box half-widths", expected: n, got: half_widths.len() });
    }
    if let Some(&a) = half_widths.iter().find(|&&a| !(a > 0.0 && a.is_finite())) {
        return Err(HeatError::BadBox(a));
    }
    Ok(())
}

/// Coefficients of `E` in `x`, evaluated at `t` and `kappa`.
fn exponent_coefficients(e: &GPoly, n: usize, t: f64, kappa: &[f64]) -> Vec<Complex64> {
    let mut assign: HashMap<Var, Complex64> = HashMap::new();
    assign.insert(Var::T, Complex64::new(t, 0.0));
    for (r, &k) in kappa.iter().enumerate() {
        assign.insert(Var::K(r as u32 + 1), Complex64::new(k, 0.0));
    }
    let eval = |p: &GPoly| p.eval_complex(&assign).expect("exponent uses only t and k");
    let mut out = vec![eval(&{
        let mut c = e.clone();
        for j in 1..=n {
            c = c.coeff_of(Var::X(j as u32), 0);
        }
        c
    })];
    for j in 1..=n {
        let mut c = e.coeff_of(Var::X(j as u32), 1);
        for l in (1..=n).filter(|&l| l != j) {
            c = c.coeff_of(Var::X(l as u32), 0);
        }
        out.push(eval(&c));
    }
    out
}

pub fn mode_exponent(xi: &XiFamily, k: &[i64], half_widths: &[f64], t: f64) -> Result<ModeExponent, HeatError> {
    let n = xi.n();
    if k.len() != n {
        return Err(HeatError::Dimension { what: "mode indices", expected: n, got: k.len() });
    }
    check_box(n, half_widths)?;
    let c = exponent_coefficients(&xi.exponent(), n, t, &wave_numbers(k, half_widths));
    Ok(ModeExponent {
        a: AffineForm { constant: c[0].re, coeffs: c[1..].iter().map(|z| z.re).collect() },
        b: AffineForm { constant: c[0].im, coeffs: c[1..].iter().map(|z| z.im).collect() },
    })
}

/// Outcome of the exact plane-wave identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeCheck {
    pub holds: bool,
    /// `E_t - (c_1 + i kappa_1)^{m_1} - sum_{edges (i,j)} x_i (c_j + i kappa_j)^{m_j}`,
    /// where `c_j` is the coefficient of `x_j` in `E`.
    pub residual: GPoly,
}

/// Exact check that every plane wave `exp(i kappa.x + E)` solves the equation.
pub fn verify_modes(tree: &TreeDiagram, orders: &[u32]) -> Result<ModeCheck, HeatError> {
    let xi = xi_family(tree, orders)?;
    let e = xi.exponent();
    let affine = (1..=tree.n()).all(|j| e.degree_in(Var::X(j as u32)) <= 1)
        && e.terms().all(|(m, _)| m.vars().filter(|(v, _)| matches!(v, Var::X(_))).count() <= 1);
    let slope = |j: usize| {
        let ik = MultiPoly::var(Var::K(j as u32)).scale(&GaussianRational::i());
        &e.coeff_of(Var::X(j as u32), 1) + &ik
    };
    let mut rhs = slope(1).pow(orders[0]);
    for (i, j, _) in tree.edges() {
        rhs = rhs + &(&MultiPoly::var(Var::X(i as u32)) * &slope(j).pow(orders[j - 1]));
    }
    let residual = &e.derivative(Var::T) - &rhs;
    Ok(ModeCheck { holds: affine && residual.is_zero(), residual })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeSet {
    /// `k` in `{0..K}^n`, weighted by `2^{-(number of zero entries)}`. Exact
    /// for sums of functions of one variable; misses couplings such as
    /// `sin(x_1 - x_2)`.
    NonNegative,
    /// One representative of each pair `{k, -k}` with `|k|_inf <= K`: the zero
    /// mode weighted by `2^{-n}`, the rest by `2^{1-n}`. A complete real basis.
    #[default]
    HalfLattice,
}

impl std::str::FromStr for ModeSet {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "nonnegative" => Ok(ModeSet::NonNegative),
            "half-lattice" => Ok(ModeSet::HalfLattice),
            _ => Err(format!("unknown mode set {s:?} (expected nonnegative or half-lattice)")),
        }
    }
}

impl ModeSet {
    /// Mode indices in lexicographic order.
    pub fn modes(self, n: usize, cutoff: usize) -> Vec<Vec<i64>> {
        let k = cutoff as i64;
        let lo = match self {
            ModeSet::NonNegative => 0,
            ModeSet::HalfLattice => -k,
        };
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| (lo..=k).map(move |x| [v.clone(), vec![x]].concat()))
                .collect();
        }
        if self == ModeSet::HalfLattice {
            out.retain(|v| v.iter().find(|&&x| x != 0).is_none_or(|&x| x > 0));
        }
        out
    }

    fn weight(self, k: &[i64]) -> f64 {
        let n = k.len() as i32;
        match self {
            ModeSet::NonNegative => 0.5f64.powi(k.iter().filter(|&&x| x == 0).count() as i32),
            ModeSet::HalfLattice if k.iter().all(|&x| x == 0) => 0.5f64.powi(n),
            ModeSet::HalfLattice => 0.5f64.powi(n - 1),
        }
    }
}

/// One term `b cos(2 pi k.x/a + B) e^A + c sin(2 pi k.x/a + B) e^A`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierMode {
    pub k: Vec<i64>,
    /// Cosine coefficient, weight included.
    pub b: f64,
    /// Sine coefficient, weight included.
    pub c: f64,
    pub weight: f64,
}

/// Smallest admissible sample count per axis for `modes`: a power of two
/// above `4 * modes`, so that mode `modes` stays below the Nyquist index.
pub fn min_samples(modes: usize) -> usize {
    (4 * modes + 1).max(4).next_power_of_two()
}

/// Cosine and sine coefficients on `prod [-a_j, a_j]` from samples at
/// `x_j = -a_j + 2 a_j s / N`, `s = 0..N`, stored row-major with `x_1`
/// slowest.
pub fn fourier_coefficients_from_samples(
    samples: &[f64],
    half_widths: &[f64],
    cutoff: usize,
    per_axis: usize,
    set: ModeSet,
) -> Result<Vec<FourierMode>, HeatError> {
    let n = half_widths.len();
    check_box(n, half_widths)?;
    if !per_axis.is_power_of_two() || per_axis <= 4 * cutoff || per_axis < 4 {
        return Err(HeatError::Samples { samples: per_axis, modes: cutoff, min: min_samples(cutoff) });
    }
    let total = per_axis.pow(n as u32);
    if samples.len() != total {
        return Err(HeatError::Dimension { what: "samples", expected: total, got: samples.len() });
    }
    let mut data: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let fft = FftPlanner::new().plan_fft_forward(per_axis);
    let mut line = vec![Complex64::zero(); per_axis];
    for axis in 0..n {
        let stride = per_axis.pow((n - 1 - axis) as u32);
        for start in 0..total {
            if !(start / stride).is_multiple_of(per_axis) {
                continue;
            }
            for (s, v) in line.iter_mut().enumerate() {
                *v = data[start + s * stride];
            }
            fft.process(&mut line);
            for (s, v) in line.iter().enumerate() {
                data[start + s * stride] = *v;
            }
        }
    }
    let scale = 2f64.powi(n as i32) / total as f64;
    Ok(set
        .modes(n, cutoff)
        .into_iter()
        .map(|k| {
            // period a_j is half the box, so k_j sits at DFT index 2 k_j
            let idx = k.iter().fold(0usize, |acc, &kj| {
                acc * per_axis + (2 * kj).rem_euclid(per_axis as i64) as usize
            });
            let w = set.weight(&k);
            let f = data[idx] * scale;
            FourierMode { b: w * f.re, c: -w * f.im, weight: w, k }
        })
        .collect())
}

/// Sample `f` on the box grid and compute its coefficients.
pub fn fourier_coefficients(
    f: &Expr,
    half_widths: &[f64],
    cutoff: usize,
    per_axis: usize,
    set: ModeSet,
) -> Result<Vec<FourierMode>, HeatError> {
    let n = half_widths.len();
    check_box(n, half_widths)?;
    if !per_axis.is_power_of_two() || per_axis <= 4 * cutoff || per_axis < 4 {
        return Err(HeatError::Samples { samples: per_axis, modes: cutoff, min: min_samples(cutoff) });
    }
    let total = per_axis.pow(n as u32);
    let mut samples = Vec::with_capacity(total);
    let mut x = vec![0.0; n];
    for flat in 0..total {
        let mut rest = flat;
        for j in (0..n).rev() {
            let s = rest % per_axis;
            rest /= per_axis;
            x[j] = -half_widths[j] + 2.0 * half_widths[j] * s as f64 / per_axis as f64;
        }
        samples.push(f.eval(&x)?);
    }
    fourier_coefficients_from_samples(&samples, half_widths, cutoff, per_axis, set)
}

/// Truncated mode sum solving the heat-type equation with `u(0) = f`.
#[derive(Debug, Clone)]
pub struct HeatSolution {
    pub orders: Vec<u32>,
    pub half_widths: Vec<f64>,
    /// Modes with a coefficient above [`MODE_CUTOFF`].
    pub modes: Vec<FourierMode>,
    exponent: GPoly,
}

impl HeatSolution {
    pub fn n(&self) -> usize {
        self.orders.len()
    }

    pub fn eval(&self, t: f64, x: &[f64]) -> Result<f64, HeatError> {
        let n = self.n();
        if x.len() != n {
            return Err(HeatError::Dimension { what: "coordinates", expected: n, got: x.len() });
        }
        let mut assign: HashMap<Var, Complex64> = HashMap::new();
        assign.insert(Var::T, Complex64::new(t, 0.0));
        for (j, &v) in x.iter().enumerate() {
            assign.insert(Var::X(j as u32 + 1), Complex64::new(v, 0.0));
        }
        let mut u = 0.0;
        for m in &self.modes {
            let kappa = wave_numbers(&m.k, &self.half_widths);
            for (r, &k) in kappa.iter().enumerate() {
                assign.insert(Var::K(r as u32 + 1), Complex64::new(k, 0.0));
            }
            let e = self.exponent.eval_complex(&assign).expect("all variables assigned");
            let phase: f64 = kappa.iter().zip(x).map(|(k, v)| k * v).sum::<f64>() + e.im;
            u += e.re.exp() * (m.b * phase.cos() + m.c * phase.sin());
        }
        Ok(u)
    }
}

pub fn solve_heat(
    tree: &TreeDiagram,
    orders: &[u32],
    f: &Expr,
    half_widths: &[f64],
    cutoff: usize,
    per_axis: usize,
    set: ModeSet,
) -> Result<HeatSolution, HeatError> {
    let xi = xi_family(tree, orders)?;
    check_box(tree.n(), half_widths)?;
    let modes = fourier_coefficients(f, half_widths, cutoff, per_axis, set)?
        .into_iter()
        .filter(|m| m.b.abs().max(m.c.abs()) > MODE_CUTOFF)
        .collect();
    Ok(HeatSolution {
        orders: orders.to_vec(),
        half_widths: half_widths.to_vec(),
        modes,
        exponent: xi.exponent(),
    })
}
