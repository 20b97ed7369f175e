//! The `treelie` command line: argument parsing, tree files, and JSON/CSV
//! reports.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use crate::bch::bch_coefficients;
use crate::expr::parse_expression;
use crate::first_order::{solve_first_order, verify_first_order, VerifyMode};
use crate::heat::{min_samples, solve_heat, verify_modes, HeatError, ModeSet};
use crate::ideals::{
    brute_force_ideals, count_ideals, enumerate_ideals, maximal_among, maximal_ideals, AbelianIdeal, IdealError,
    RootSystem, BRUTE_FORCE_GUARD, LIST_GUARD,
};
use crate::lie::{dim_and_nilpotence, enumerate_basis, verify_structure, Direction};
use crate::tree::{build_tree, TreeDiagram, TreeSpec};

/// Largest algebra for which `info` computes the central series and center.
pub const INFO_GUARD: u64 = 1500;
/// Largest basis listed by `basis`.
pub const BASIS_GUARD: u64 = 100_000;
/// Largest number of sample points for `solve-heat`.
pub const SAMPLE_GUARD: usize = 1 << 22;
/// Largest CSV grid for `solve-heat`.
pub const GRID_GUARD: usize = 1 << 20;
/// Largest `k` for `bch`.
pub const BCH_GUARD: usize = 500;
/// Seed for the numeric first-order check.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Guard(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Validation(_) => 1,
            CliError::Guard(_) => 2,
        }
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::SizeGuard { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<HeatError> for CliError {
    fn from(e: HeatError) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "treelie", version, about = "Tree diagram Lie algebras, abelian ideals, and evolution equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension, nilpotence, central series, center, and node classification.
    Info {
        tree: PathBuf,
        #[arg(long, default_value = "up")]
        direction: Direction,
    },
    /// The monomial basis.
    Basis {
        tree: PathBuf,
        #[arg(long, default_value = "up")]
        direction: Direction,
    },
    /// Abelian ideals of the solvable extension.
    Ideals {
        tree: PathBuf,
        #[arg(long, default_value = "up")]
        direction: Direction,
        #[arg(long)]
        count_only: bool,
        /// Skip the exhaustive subset comparison.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Coefficients a_0..a_k and theta_1..theta_{k+1}.
    Bch {
        #[arg(long)]
        k: usize,
    },
    /// Evaluate the solution of u_t = d_1 u + sum x_i^d d_j u, u(0) = f.
    SolveFirst {
        tree: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        emit_eta: bool,
        /// Defaults to exact for polynomial f, numeric otherwise.
        #[arg(long)]
        verify: Option<VerifyMode>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Evaluate the mode-sum solution of u_t = d_1^{m_1} u + sum x_i d_j^{m_j} u, u(0) = f.
    SolveHeat {
        tree: PathBuf,
        #[arg(long)]
        orders: String,
        #[arg(long)]
        f: String,
        /// Half-widths a_1..a_n of the box prod [-a_j, a_j].
        #[arg(long = "box")]
        half_widths: String,
        #[arg(long)]
        modes: usize,
        /// Samples per axis; a power of two above 4 * modes.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        eval: String,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Points per axis in the CSV grid.
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[arg(long, default_value = "half-lattice")]
        mode_set: ModeSet,
    },
}

/// Run the command line on `args` (program name first), writing the report
/// to standard output and diagnostics to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            let _ = writeln!(err, "{}", line.trim());
            return 1;
        }
    };
    match execute(cli.command) {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("report serializes");
            if writeln!(out, "{text}").is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let msg = e.to_string();
            let _ = writeln!(err, "error: {}", msg.replace('\n', " "));
            e.exit_code()
        }
    }
}

/// A float with 17 significant digits; `null` when not finite.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(format!("{x:.16e}").parse::<Number>().expect("scientific notation is a JSON number"))
}

fn big(n: &num_bigint::BigUint) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer is a JSON number"))
}

pub fn read_tree(path: &Path) -> Result<TreeDiagram, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let spec: TreeSpec =
        serde_json::from_str(&text).map_err(|e| invalid(format!("malformed tree file {}: {e}", path.display())))?;
    build_tree(&spec).map_err(invalid)
}

fn parse_csv<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(|s| s.trim().parse::<T>().map_err(|e| invalid(format!("bad {what} entry {:?}: {e}", s.trim()))))
        .collect()
}

fn expect_len<T>(v: &[T], n: usize, what: &str) -> Result<(), CliError> {
    if v.len() != n {
        return Err(invalid(format!("expected {n} values for {what}, got {}", v.len())));
    }
    Ok(())
}

fn execute(cmd: Command) -> Result<Value, CliError> {
    match cmd {
        Command::Info { tree, direction } => info(&read_tree(&tree)?, direction),
        Command::Basis { tree, direction } => basis(&read_tree(&tree)?, direction),
        Command::Ideals { tree, direction, count_only, no_oracle } => {
            ideals(&read_tree(&tree)?, direction, count_only, !no_oracle)
        }
        Command::Bch { k } => {
            if k > BCH_GUARD {
                return Err(CliError::Guard(format!("k = {k} is above the limit of {BCH_GUARD}")));
            }
            Ok(bch_coefficients(k).to_json())
        }
        Command::SolveFirst { tree, f, t, x, emit_eta, verify, seed } => {
            let tree = read_tree(&tree)?;
            solve_first(&tree, &f, t, &x, emit_eta, verify, seed)
        }
        Command::SolveHeat { tree, orders, f, half_widths, modes, samples, eval, csv, grid, mode_set } => {
            let tree = read_tree(&tree)?;
            let args = HeatArgs { orders, f, half_widths, modes, samples, eval, csv, grid, mode_set };
            solve_heat_cmd(&tree, args)
        }
    }
}

fn info(tree: &TreeDiagram, direction: Direction) -> Result<Value, CliError> {
    let dn = dim_and_nilpotence(tree, direction);
    if dn.dim > INFO_GUARD {
        return Err(CliError::Guard(format!(
            "algebra has dimension {}, above the limit of {INFO_GUARD} for structure checks",
            dn.dim
        )));
    }
    let s = verify_structure(tree, direction);
    Ok(json!({
        "direction": direction,
        "n": tree.n(),
        "dim": dn.dim,
        "basis_size": enumerate_basis(tree, direction).len(),
        "nilpotence": dn.nilpotence,
        "nilpotence_printed": dn.nilpotence_printed,
        "central_series_dims": s.central_series_dims,
        "center": s.center_basis.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "center_matches": s.center_matches,
        "closure": s.closure,
        "classification": tree.classify_nodes(),
    }))
}

fn basis(tree: &TreeDiagram, direction: Direction) -> Result<Value, CliError> {
    let dn = dim_and_nilpotence(tree, direction);
    if dn.dim > BASIS_GUARD {
        return Err(CliError::Guard(format!("basis has {} elements, above the limit of {BASIS_GUARD}", dn.dim)));
    }
    let b = enumerate_basis(tree, direction);
    Ok(json!({
        "direction": direction,
        "n": tree.n(),
        "dim": b.len(),
        "basis": b,
    }))
}

fn ideal_json(ideal: &AbelianIdeal, maximal: bool) -> Value {
    json!({ "roots": ideal.roots, "dim": ideal.dim(), "maximal": maximal })
}

fn ideals(tree: &TreeDiagram, direction: Direction, count_only: bool, oracle: bool) -> Result<Value, CliError> {
    let size = RootSystem::new(tree, direction).len();
    let oracle = oracle && size <= BRUTE_FORCE_GUARD;
    let mut report = Map::new();
    report.insert("direction".into(), json!(direction));
    if count_only {
        let count = count_ideals(tree, direction)?;
        let maximal_count = match direction {
            Direction::Up => Some(maximal_ideals(tree, direction).len()),
            Direction::Down if size <= LIST_GUARD => Some(maximal_among(&enumerate_ideals(tree, direction)?).len()),
            Direction::Down => None,
        };
        if oracle {
            let brute = brute_force_ideals(tree, direction)?;
            if num_bigint::BigUint::from(brute.len()) != count {
                return Err(invalid(format!("oracle disagrees: {} ideals by exhaustion, {count} counted", brute.len())));
            }
        }
        report.insert("count".into(), big(&count));
        report.insert("maximal_count".into(), json!(maximal_count));
        report.insert("oracle_checked".into(), json!(oracle));
        return Ok(Value::Object(report));
    }
    let all = enumerate_ideals(tree, direction)?;
    if oracle && brute_force_ideals(tree, direction)? != all {
        return Err(invalid("oracle disagrees with the ideal enumeration"));
    }
    let maximal = maximal_among(&all);
    let list: Vec<Value> = all.iter().map(|i| ideal_json(i, maximal.contains(i))).collect();
    report.insert("count".into(), json!(all.len()));
    report.insert("maximal_count".into(), json!(maximal.len()));
    report.insert("oracle_checked".into(), json!(oracle));
    report.insert("ideals".into(), Value::Array(list));
    Ok(Value::Object(report))
}

fn solve_first(
    tree: &TreeDiagram,
    f: &str,
    t: f64,
    x: &str,
    emit_eta: bool,
    verify: Option<VerifyMode>,
    seed: u64,
) -> Result<Value, CliError> {
    let f = parse_expression(f, tree.n()).map_err(invalid)?;
    let x: Vec<f64> = parse_csv(x, "x")?;
    expect_len(&x, tree.n(), "x")?;
    let mode = verify.unwrap_or(if f.is_polynomial() { VerifyMode::Exact } else { VerifyMode::Numeric });
    if mode == VerifyMode::Exact && !f.is_polynomial() {
        return Err(invalid("exact verification needs a polynomial f"));
    }
    let sol = solve_first_order(tree, &f);
    let u = sol.eval(t, &x).map_err(invalid)?;
    let report = verify_first_order(tree, &f, mode, seed).map_err(invalid)?;
    let mut out = Map::new();
    out.insert("u".into(), float(u));
    if emit_eta {
        out.insert("eta".into(), json!(sol.family.eta.iter().map(|e| e.to_string()).collect::<Vec<_>>()));
    }
    out.insert("verified".into(), json!(report.passed));
    Ok(Value::Object(out))
}

struct HeatArgs {
    orders: String,
    f: String,
    half_widths: String,
    modes: usize,
    samples: Option<usize>,
    eval: String,
    csv: Option<PathBuf>,
    grid: usize,
    mode_set: ModeSet,
}

fn solve_heat_cmd(tree: &TreeDiagram, a: HeatArgs) -> Result<Value, CliError> {
    let n = tree.n();
    let orders: Vec<u32> = parse_csv(&a.orders, "orders")?;
    expect_len(&orders, n, "orders")?;
    let half_widths: Vec<f64> = parse_csv(&a.half_widths, "box")?;
    expect_len(&half_widths, n, "box")?;
    let point: Vec<f64> = parse_csv(&a.eval, "eval")?;
    expect_len(&point, n + 1, "eval (t then x_1..x_n)")?;
    let f = parse_expression(&a.f, n).map_err(invalid)?;
    let samples = a.samples.unwrap_or_else(|| min_samples(a.modes));
    let total = u32::try_from(n).ok().and_then(|e| samples.checked_pow(e));
    if total.is_none_or(|s| s > SAMPLE_GUARD) {
        return Err(CliError::Guard(format!("{samples}^{n} samples is above the limit of {SAMPLE_GUARD}")));
    }
    let sol = solve_heat(tree, &orders, &f, &half_widths, a.modes, samples, a.mode_set)?;
    let u = sol.eval(point[0], &point[1..])?;
    let check = verify_modes(tree, &orders)?;
    if let Some(path) = &a.csv {
        write_grid(&sol, point[0], &half_widths, a.grid, path)?;
    }
    Ok(json!({
        "u": float(u),
        "modes_used": sol.modes.len(),
        "verify_modes": check.holds,
    }))
}

fn write_grid(
    sol: &crate::heat::HeatSolution,
    t: f64,
    half_widths: &[f64],
    grid: usize,
    path: &Path,
) -> Result<(), CliError> {
    let n = half_widths.len();
    let total = u32::try_from(n).ok().and_then(|e| grid.checked_pow(e));
    if grid == 0 || total.is_none_or(|g| g > GRID_GUARD) {
        return Err(CliError::Guard(format!("grid {grid}^{n} is empty or above the limit of {GRID_GUARD}")));
    }
    let mut text = String::from("t");
    for j in 1..=n {
        text.push_str(&format!(",x_{j}"));
    }
    text.push_str(",u\n");
    let mut x = vec![0.0; n];
    for flat in 0..total.unwrap_or(0) {
        let mut rest = flat;
        for j in (0..n).rev() {
            let s = rest % grid;
            rest /= grid;
            x[j] = -half_widths[j] + 2.0 * half_widths[j] * s as f64 / grid as f64;
        }
        let u = sol.eval(t, &x)?;
        text.push_str(&format!("{t:.16e}"));
        for v in &x {
            text.push_str(&format!(",{v:.16e}"));
        }
        text.push_str(&format!(",{u:.16e}\n"));
    }
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(std::iter::once("treelie").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bch_report() {
        let (code, out, _) = run_str(&["bch", "--k", "3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["a"], json!(["1", "1/2", "1/12", "0"]));
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = run_str(&["frobnicate"]);
        assert_eq!(code, 1);
        assert_eq!(err.lines().count(), 1);
        let (code, _, err) = run_str(&["info", "/nonexistent/tree.json"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: cannot read"));
    }

    #[test]
    fn floats_keep_seventeen_digits() {
        assert_eq!(float(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(float(f64::NAN), Value::Null);
    }
}
