//! The first-order equation `u_t = d_1 u + sum_{edges (i,j)} x_i^{d} d_j u`
//! with `u(0, x) = f(x)`.
//!
//! Its solution is `u(t, x) = f(x + eta(t, x))` where `eta_1 = t` and
//! `eta_j = int_0^t (x_i + eta_i(y, x))^{d} dy` for each edge `(i, j)`.
//! `x + eta(t, x)` is the flow of the vector field `d_1 + sum x_i^{d} d_j`.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{Expr, ExprError};
use crate::poly::{MultiPoly, PolyError, Var};
use crate::tree::TreeDiagram;

pub const RK4_STEPS: usize = 1000;
pub const FLOW_TOLERANCE: f64 = 1e-6;
pub const FLOW_SAMPLES: usize = 100;
pub const QUADRATURE_TOLERANCE: f64 = 1e-9;
const QUADRATURE_MAX_DEPTH: u32 = 40;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FirstOrderError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("no integrand given for node {0}")]
    MissingIntegrand(usize),
    #[error("quadrature did not converge at nesting level {level}")]
    Quadrature { level: usize },
}

/// The shifts `eta_i` and their mirror images `xi_i(t) = -eta_i(-t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaFamily {
    /// `eta[i - 1]` is `eta_i`, a polynomial in `t` and the clan variables of `i`.
    pub eta: Vec<MultiPoly>,
    pub xi: Vec<MultiPoly>,
}

pub fn eta_family(tree: &TreeDiagram) -> EtaFamily {
    let y = Var::Y(0);
    let mut eta: Vec<MultiPoly> = Vec::with_capacity(tree.n());
    eta.push(MultiPoly::var(Var::T));
    for j in 2..=tree.n() {
        let i = tree.parent(j).expect("non-root node");
        let d = tree.weight(j).expect("non-root node") as u32;
        let inner = &MultiPoly::var(Var::X(i as u32)) + &eta[i - 1].substitute(Var::T, &MultiPoly::var(y));
        let e = inner
            .pow(d)
            .integrate_from_zero(y, Var::T)
            .expect("integration variable differs from the bound");
        eta.push(e);
    }
    let minus_t = -&MultiPoly::var(Var::T);
    let xi = eta.iter().map(|e| -&e.substitute(Var::T, &minus_t)).collect();
    EtaFamily { eta, xi }
}

impl EtaFamily {
    /// `x_i -> x_i + eta_i` for every node.
    pub fn shift_map(&self) -> BTreeMap<Var, MultiPoly> {
        self.eta
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let v = Var::X(k as u32 + 1);
                (v, &MultiPoly::var(v) + e)
            })
            .collect()
    }

    pub fn eval(&self, t: f64, x: &[f64]) -> Result<Vec<f64>, FirstOrderError> {
        if x.len() != self.eta.len() {
            return Err(FirstOrderError::Dimension { expected: self.eta.len(), got: x.len() });
        }
        let value = |v: Var| match v {
            Var::T => Some(t),
            Var::X(i) => x.get(i as usize - 1).copied(),
            _ => None,
        };
        self.eta.iter().map(|e| Ok(e.eval_real(value)?)).collect()
    }
}

/// `u(t, x) = f(x + eta(t, x))`.
#[derive(Debug, Clone)]
pub struct FirstOrderSolution {
    pub f: Expr,
    pub family: EtaFamily,
}

impl FirstOrderSolution {
    pub fn eval(&self, t: f64, x: &[f64]) -> Result<f64, FirstOrderError> {
        let eta = self.family.eval(t, x)?;
        let shifted: Vec<f64> = x.iter().zip(&eta).map(|(a, b)| a + b).collect();
        Ok(self.f.eval(&shifted)?)
    }

    /// `f(x + eta)` as an exact polynomial; `f` must be polynomial.
    pub fn to_poly(&self) -> Result<MultiPoly, FirstOrderError> {
        Ok(self.f.to_poly()?.substitute_all(&self.family.shift_map()))
    }
}

pub fn solve_first_order(tree: &TreeDiagram, f: &Expr) -> FirstOrderSolution {
    FirstOrderSolution { f: f.clone(), family: eta_family(tree) }
}

/// `u_t - d_1 u - sum_{edges (i,j)} x_i^{d} d_j u`.
pub fn residual(tree: &TreeDiagram, u: &MultiPoly) -> MultiPoly {
    let mut r = &u.derivative(Var::T) - &u.derivative(Var::X(1));
    for (i, j, d) in tree.edges() {
        let coef = MultiPoly::var(Var::X(i as u32)).pow(d as u32);
        r = &r - &(&coef * &u.derivative(Var::X(j as u32)));
    }
    r
}

/// Flow of `d_1 + sum x_i^{d} d_j` from `x` for time `t`, by classical
/// fourth-order Runge-Kutta with `steps` equal steps.
pub fn rk4_flow(tree: &TreeDiagram, x: &[f64], t: f64, steps: usize) -> Vec<f64> {
    let edges: Vec<(usize, usize, i32)> = tree.edges().map(|(i, j, d)| (i - 1, j - 1, d as i32)).collect();
    let field = |y: &[f64]| {
        let mut dy = vec![0.0; y.len()];
        dy[0] = 1.0;
        for &(i, j, d) in &edges {
            dy[j] = y[i].powi(d);
        }
        dy
    };
    let h = t / steps as f64;
    let mut y = x.to_vec();
    let axpy = |y: &[f64], k: &[f64], a: f64| -> Vec<f64> { y.iter().zip(k).map(|(p, q)| p + a * q).collect() };
    for _ in 0..steps {
        let k1 = field(&y);
        let k2 = field(&axpy(&y, &k1, h / 2.0));
        let k3 = field(&axpy(&y, &k2, h / 2.0));
        let k4 = field(&axpy(&y, &k3, h));
        for k in 0..y.len() {
            y[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        }
    }
    y
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Exact,
    Numeric,
}

impl std::str::FromStr for VerifyMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(VerifyMode::Exact),
            "numeric" => Ok(VerifyMode::Numeric),
            _ => Err(format!("unknown verification mode {s:?} (expected exact or numeric)")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FirstOrderReport {
    pub mode: VerifyMode,
    pub passed: bool,
    /// Exact mode: the residual polynomial (empty string when zero).
    pub residual: Option<String>,
    /// Numeric mode: largest coordinate gap between the Runge-Kutta flow and
    /// `x + eta`.
    pub max_flow_error: Option<f64>,
    pub samples: usize,
}

/// Check the solution formula for `f`.
///
/// Exact mode forms `f(x + eta)` symbolically and requires the residual of
/// the equation to vanish identically. Numeric mode compares `x + eta(t, x)`
/// with the Runge-Kutta flow at `samples` seeded random points,
/// `x` in `[-1, 1]^n`, `t` in `[-1, 1]`.
pub fn verify_first_order(
    tree: &TreeDiagram,
    f: &Expr,
    mode: VerifyMode,
    seed: u64,
) -> Result<FirstOrderReport, FirstOrderError> {
    let sol = solve_first_order(tree, f);
    match mode {
        VerifyMode::Exact => {
            let u = sol.to_poly()?;
            let r = residual(tree, &u);
            Ok(FirstOrderReport {
                mode,
                passed: r.is_zero(),
                residual: Some(if r.is_zero() { String::new() } else { r.to_string() }),
                max_flow_error: None,
                samples: 0,
            })
        }
        VerifyMode::Numeric => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = tree.n();
            let mut worst: f64 = 0.0;
            for _ in 0..FLOW_SAMPLES {
                let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
                let t = rng.gen_range(-1.0..=1.0);
                let eta = sol.family.eval(t, &x)?;
                let flow = rk4_flow(tree, &x, t, RK4_STEPS);
                for k in 0..n {
                    worst = worst.max((flow[k] - (x[k] + eta[k])).abs());
                }
            }
            Ok(FirstOrderReport {
                mode,
                passed: worst <= FLOW_TOLERANCE,
                residual: None,
                max_flow_error: Some(worst),
                samples: FLOW_SAMPLES,
            })
        }
    }
}

/// `eta(t + s, x) == eta(t, x) + eta(s, x + eta(t, x))` exactly.
pub fn semigroup_holds(tree: &TreeDiagram) -> bool {
    let fam = eta_family(tree);
    let t_plus_s = &MultiPoly::var(Var::T) + &MultiPoly::var(Var::S);
    let mut shift = fam.shift_map();
    shift.insert(Var::T, MultiPoly::var(Var::S));
    fam.eta.iter().all(|e| {
        let lhs = e.substitute(Var::T, &t_plus_s);
        let rhs = e + &e.substitute_all(&shift);
        lhs == rhs
    })
}

pub type Integrand = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Shifts for the field `d_1 + sum_{edges (i,j)} g_i(x_i) d_j`, evaluated by
/// nested adaptive Simpson quadrature:
/// `eta_j(t, x) = int_0^t g_i(x_i + eta_i(y, x)) dy`.
pub struct GeneralEta<'a> {
    tree: &'a TreeDiagram,
    g: HashMap<usize, Integrand>,
}

/// Build the evaluator; `g` maps every node with children to its integrand.
pub fn eta_general_numeric(
    tree: &TreeDiagram,
    g: HashMap<usize, Integrand>,
) -> Result<GeneralEta<'_>, FirstOrderError> {
    if let Some(i) = tree.nodes().find(|&i| !tree.is_tip(i) && !g.contains_key(&i)) {
        return Err(FirstOrderError::MissingIntegrand(i));
    }
    Ok(GeneralEta { tree, g })
}

fn adaptive_simpson(f: &mut dyn FnMut(f64) -> Result<f64, FirstOrderError>, a: f64, b: f64, tol: f64, level: usize) -> Result<f64, FirstOrderError> {
    #[allow(clippy::too_many_arguments)]
    fn step(
        f: &mut dyn FnMut(f64) -> Result<f64, FirstOrderError>,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
        level: usize,
    ) -> Result<f64, FirstOrderError> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm)?, f(rm)?);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(FirstOrderError::Quadrature { level });
        }
        Ok(step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, level)?
            + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, level)?)
    }
    if a == b {
        return Ok(0.0);
    }
    let (fa, fb) = (f(a)?, f(b)?);
    let fm = f(0.5 * (a + b))?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, QUADRATURE_MAX_DEPTH, level)
}

impl GeneralEta<'_> {
    /// `eta_i(t, x)`.
    pub fn eval(&self, i: usize, t: f64, x: &[f64]) -> Result<f64, FirstOrderError> {
        if x.len() != self.tree.n() {
            return Err(FirstOrderError::Dimension { expected: self.tree.n(), got: x.len() });
        }
        let Some(p) = self.tree.parent(i) else {
            return Ok(t);
        };
        let g = &self.g[&p];
        let level = self.tree.clan_unchecked(i).len() - 1;
        let mut integrand = |y: f64| -> Result<f64, FirstOrderError> { Ok(g(x[p - 1] + self.eval(p, y, x)?)) };
        adaptive_simpson(&mut integrand, 0.0, t, QUADRATURE_TOLERANCE, level)
    }
}
