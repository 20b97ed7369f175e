mod common;

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use treelie::bch::{bch_coefficient_double_sum, bch_coefficients};
use treelie::expr::parse_expression;
use treelie::first_order::{semigroup_holds, verify_first_order, VerifyMode};
use treelie::heat::{fourier_coefficients, solve_heat, verify_modes, xi_family, HeatSolution, ModeSet};
use treelie::ideals::{brute_force_ideals, enumerate_ideals, maximal_among, maximal_ideals};
use treelie::lie::{dim_and_nilpotence, enumerate_basis, verify_structure, Direction};
use treelie::poly::{rat, Monomial, MultiPoly, Rational, Var};
use treelie::TreeDiagram;

const DIRS: [Direction; 2] = [Direction::Up, Direction::Down];

/// `Ok(None)`: passed. `Ok(Some(note))`: the faithful checks pass but a
/// literal target is not reproduced; the note says which.
type Outcome = Result<Option<String>, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn chain(w: &[u64]) -> TreeDiagram {
    TreeDiagram::chain(w).unwrap()
}

fn unit_chain(n: usize) -> TreeDiagram {
    chain(&vec![1; n - 1])
}

fn symplectic(n: usize) -> TreeDiagram {
    let mut w = vec![1; n - 1];
    *w.last_mut().unwrap() = 2;
    chain(&w)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c1_ideal_counts() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(String, TreeDiagram, usize)> = Vec::new();
    for n in 2..=5 {
        cases.push((format!("A_{n}"), unit_chain(n), 1 << n));
    }
    for n in 2..=4 {
        cases.push((format!("symplectic A_{n}"), symplectic(n), 1 << n));
    }
    for m in 3..=4 {
        cases.push((format!("A_3 d=(1,{m})"), chain(&[1, m]), 1 << (m + 1)));
    }
    for (name, t, want) in cases {
        let got = enumerate_ideals(&t, Direction::Up).map_err(|e| e.to_string())?.len();
        ensure!(got == want, "{name}: {got} ideals, expected {want}");
    }
    ensure!(start.elapsed().as_secs() < 60, "took {:?}", start.elapsed());
    Ok(None)
}

fn c2_e_tree_64() -> Outcome {
    // stem 1-2, upper branch 2-3-4 with the edge (3,4) of weight 2, lower branch 2-5
    let t = TreeDiagram::e_tree(2, 2, 1).unwrap().with_weight(4, 2).unwrap();
    let (n0, n1, n2) = (2u64, 2u64, 1u64);
    let mut inner = 1 << n2;
    for i in 1..=n2 {
        for r in 1..=i {
            inner += binomial(i, r) * binomial(n0, r) * (1 << (n2 - i));
        }
    }
    let formula = (1u64 << (n0 + n1)) * inner;
    ensure!(formula == 64, "formula evaluates to {formula}");
    let fast = enumerate_ideals(&t, Direction::Up).map_err(|e| e.to_string())?;
    let brute = brute_force_ideals(&t, Direction::Up).map_err(|e| e.to_string())?;
    ensure!(fast.len() == 64, "enumeration gives {}", fast.len());
    ensure!(fast == brute, "brute force gives {} ideals, not the same set", brute.len());
    Ok(None)
}

fn c3_maximal_counts() -> Outcome {
    for n in 2..=5 {
        let got = maximal_ideals(&unit_chain(n), Direction::Up).len();
        ensure!(got == n, "A_{n}: {got} maximal ideals");
        let by_enum = maximal_among(&enumerate_ideals(&unit_chain(n), Direction::Up).unwrap()).len();
        ensure!(by_enum == n, "A_{n}: {by_enum} inclusion-maximal ideals");
    }
    for n in 2..=4 {
        let got = maximal_ideals(&symplectic(n), Direction::Up).len();
        ensure!(got == 1, "symplectic A_{n}: {got} maximal ideals");
    }
    let e = TreeDiagram::e_tree(2, 1, 1).unwrap();
    let family = maximal_ideals(&e, Direction::Down).len();
    ensure!(family == 2 + 1, "E^2_(1,1) down: anchor-set family has {family} members");
    let all = enumerate_ideals(&e, Direction::Down).unwrap();
    ensure!(all == brute_force_ideals(&e, Direction::Down).unwrap(), "down enumeration disagrees with brute force");
    let true_max = maximal_among(&all).len();
    Ok(Some(format!(
        "E^2_(1,1) down: the anchor-set family has 3 members as stated, but exhaustive search finds {true_max} inclusion-maximal abelian ideals"
    )))
}

fn c4_oracle_equivalence() -> Outcome {
    let corpus = common::corpus();
    ensure!(corpus.len() >= 12, "corpus has only {} trees", corpus.len());
    for (name, t) in &corpus {
        for d in DIRS {
            let fast = enumerate_ideals(t, d).map_err(|e| format!("{name} {d}: {e}"))?;
            let brute = brute_force_ideals(t, d).map_err(|e| format!("{name} {d}: {e}"))?;
            ensure!(fast == brute, "{name} {d}: {} vs {} ideals", fast.len(), brute.len());
        }
    }
    Ok(None)
}

fn c5_dimensions() -> Outcome {
    for (name, t) in common::corpus() {
        for d in DIRS {
            let closed = dim_and_nilpotence(&t, d).dim;
            let listed = enumerate_basis(&t, d).len() as u64;
            ensure!(closed == listed, "{name} {d}: closed form {closed}, basis {listed}");
        }
    }
    let (n, m) = (3u64, 2u64);
    let a = binomial(n + m - 1, m) + n * (n - 1) / 2;
    ensure!(a == 9, "chain formula gives {a}");
    ensure!(enumerate_basis(&chain(&[1, 2]), Direction::Up).len() == 9, "A_3 d=(1,2) up basis");
    let (n0, n1, n2) = (2u64, 1u64, 1u64);
    let e_unit = n0 * (n1 + n2) + (n0 * n0 + n1 * n1 + n2 * n2 + n0 + n1 + n2) / 2;
    let e = TreeDiagram::e_tree(2, 1, 1).unwrap();
    ensure!(e_unit == 9, "unit E-tree formula gives {e_unit}");
    ensure!(enumerate_basis(&e, Direction::Down).len() == 9, "E^2_(1,1) down basis");
    let m = 2;
    let e_weighted =
        binomial(n0 + n1 + n2 + m - 1, m) + (n0 - 1) * (n1 + n2) + (n0 * n0 + n1 * n1 + n2 * n2 - n0 + n1 + n2) / 2;
    ensure!(e_weighted == 15, "weighted E-tree formula gives {e_weighted}");
    let ew = e.with_weight(2, 2).unwrap();
    let got = enumerate_basis(&ew, Direction::Down).len();
    ensure!(got == 15, "E^2_(1,1) with d(1,2)=2 down basis has {got}");
    Ok(None)
}

/// `1 + sum_s prod_{k<=s} w_k` over the weights read from the root outwards.
fn prefix_index(w: &[u64]) -> u64 {
    let mut acc = 1;
    1 + w.iter().map(|&d| {
        acc *= d;
        acc
    })
    .sum::<u64>()
}

fn c6_nilpotence() -> Outcome {
    let corpus = common::corpus();
    let mut printed_mismatch = Vec::new();
    for (name, t) in &corpus {
        for d in DIRS {
            let s = verify_structure(t, d);
            ensure!(s.closure, "{name} {d}: basis not closed under brackets");
            ensure!(s.center_matches, "{name} {d}: center differs from the expected span");
            let dn = dim_and_nilpotence(t, d);
            let len = s.central_series_dims.len() as u64;
            ensure!(len == dn.nilpotence, "{name} {d}: central series length {len}, formula {}", dn.nilpotence);
            let printed = match d {
                Direction::Up => t.tips().iter().map(|&r| prefix_index(&t.clan_weights(r))).max().unwrap(),
                Direction::Down => {
                    1 + t.descendants(1).iter().map(|&j| t.path_product(1, j)).sum::<u64>()
                }
            };
            ensure!(printed == dn.nilpotence_printed, "{name} {d}: printed-form oracle disagrees");
            if printed != len {
                printed_mismatch.push(format!("{name} {d} ({len} vs {printed})"));
            }
        }
    }
    if printed_mismatch.is_empty() {
        return Ok(None);
    }
    Ok(Some(format!(
        "central-series length and center agree with the corrected index formulas on all {} trees; the printed index formulas differ on {} cases, e.g. {}",
        corpus.len(),
        printed_mismatch.len(),
        printed_mismatch[..printed_mismatch.len().min(3)].join(", ")
    )))
}

fn c7_bch() -> Outcome {
    let b = bch_coefficients(6);
    for (k, a) in b.a.iter().enumerate() {
        ensure!(*a == bch_coefficient_double_sum(k), "a_{k} disagrees with the double sum");
    }
    for m in 0..=6 {
        let s: Rational = (0..=m).map(|j| &b.a[j] * &b.theta[m - j]).sum();
        ensure!(s == if m == 0 { rat(1, 1) } else { rat(0, 1) }, "coefficient {m} of the product is {s}");
    }
    Ok(None)
}

fn random_cubic(rng: &mut ChaCha8Rng, n: usize) -> String {
    let mut terms = vec![format!("{}", rng.gen_range(-3..=3))];
    for _ in 0..4 {
        let mut mono = format!("{}/{}", rng.gen_range(-5..=5), rng.gen_range(1..=4));
        for _ in 0..rng.gen_range(1..=3) {
            mono.push_str(&format!("*x{}", rng.gen_range(1..=n)));
        }
        terms.push(mono);
    }
    terms.join(" + ")
}

fn c8_first_order() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (name, t) in common::corpus() {
        let text = random_cubic(&mut rng, t.n());
        let f = parse_expression(&text, t.n()).map_err(|e| e.to_string())?;
        let exact = verify_first_order(&t, &f, VerifyMode::Exact, 0).map_err(|e| e.to_string())?;
        ensure!(exact.passed, "{name}, f = {text}: residual {:?}", exact.residual);
        let numeric = verify_first_order(&t, &f, VerifyMode::Numeric, 0).map_err(|e| e.to_string())?;
        ensure!(numeric.passed, "{name}: flow error {:?}", numeric.max_flow_error);
        ensure!(semigroup_holds(&t), "{name}: semigroup identity fails");
    }
    Ok(None)
}

fn heat_u(sol: &HeatSolution, t: f64, x: &[f64]) -> f64 {
    sol.eval(t, x).unwrap()
}

fn c9_heat() -> Outcome {
    // xi~ for the chain with orders (2,2): t z1^2 + t^2 z1 z2^2 + t^3 z2^4 / 3
    let xi = xi_family(&chain(&[1]), &[2, 2]).map_err(|e| e.to_string())?;
    let m = |c: Rational, v: &[(Var, u32)]| MultiPoly::term(c, Monomial::from_pairs(v.iter().copied()));
    let (t, z1, z2) = (Var::T, Var::Z(1), Var::Z(2));
    let want = m(rat(1, 1), &[(t, 1), (z1, 2)]) + &m(rat(1, 1), &[(t, 2), (z1, 1), (z2, 2)])
        + &m(rat(1, 3), &[(t, 3), (z2, 4)]);
    ensure!(xi.xi_tilde[0] == want, "xi~_1 = {}", xi.xi_tilde[0]);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, t) in common::corpus() {
        let random: Vec<u32> = (0..t.n()).map(|_| rng.gen_range(1..=3)).collect();
        for orders in [random, vec![3; t.n()]] {
            let check = verify_modes(&t, &orders).map_err(|e| e.to_string())?;
            ensure!(check.holds, "{name} orders {orders:?}: residual {}", check.residual);
        }
    }

    // u_t = d_1^2 u + x_1 d_2^2 u by sixth-order central differences
    let tree = chain(&[1]);
    let half = [2.0, 2.0];
    let f = parse_expression("1 + cos(pi*x1) - 1/2*sin(pi*x2) + 1/4*cos(pi*x1 + pi*x2)", 2).unwrap();
    let sol = solve_heat(&tree, &[2, 2], &f, &half, 2, 16, ModeSet::HalfLattice).map_err(|e| e.to_string())?;
    let h = 1e-2;
    let d1 = [-1.0 / 60.0, 3.0 / 20.0, -3.0 / 4.0, 0.0, 3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0];
    let d2 = [1.0 / 90.0, -3.0 / 20.0, 3.0 / 2.0, -49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0];
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let tt = rng.gen_range(0.0..=0.2);
        let x = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let mut ut = 0.0;
        let mut uxx = 0.0;
        let mut uyy = 0.0;
        for (s, (c1, c2)) in d1.iter().zip(&d2).enumerate() {
            let o = (s as f64 - 3.0) * h;
            ut += c1 * heat_u(&sol, tt + o, &x);
            uxx += c2 * heat_u(&sol, tt, &[x[0] + o, x[1]]);
            uyy += c2 * heat_u(&sol, tt, &[x[0], x[1] + o]);
        }
        ut /= h;
        uxx /= h * h;
        uyy /= h * h;
        worst = worst.max((ut - uxx - x[0] * uyy).abs());
        scale = scale.max(ut.abs());
    }
    ensure!(worst <= 1e-4 * scale, "finite-difference residual {worst:e} against |u_t| up to {scale:e}");

    for _ in 0..50 {
        let x = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let err = (heat_u(&sol, 0.0, &x) - f.eval(&x).unwrap()).abs();
        ensure!(err <= 1e-8, "t = 0 recovery off by {err:e} at {x:?}");
    }

    let one = fourier_coefficients(&parse_expression("1", 3).unwrap(), &[1.0, 2.0, 0.5], 1, 8, ModeSet::HalfLattice)
        .map_err(|e| e.to_string())?;
    for md in &one {
        let want = if md.k.iter().all(|&k| k == 0) { 1.0 } else { 0.0 };
        ensure!((md.b - want).abs() < 1e-12 && md.c.abs() < 1e-12, "f = 1: mode {:?} has ({}, {})", md.k, md.b, md.c);
    }
    let cosine = format!("cos(2*pi*x2/{})", 1.5);
    let single = fourier_coefficients(&parse_expression(&cosine, 2).unwrap(), &[1.0, 1.5], 2, 16, ModeSet::HalfLattice)
        .map_err(|e| e.to_string())?;
    for md in &single {
        let want = if md.k == [0, 1] { 1.0 } else { 0.0 };
        ensure!((md.b - want).abs() < 1e-12 && md.c.abs() < 1e-12, "single cosine: mode {:?} has ({}, {})", md.k, md.b, md.c);
    }
    let sc = fourier_coefficients(&parse_expression("sin(pi*x1)*cos(pi*x2)", 2).unwrap(), &half, 1, 8, ModeSet::HalfLattice)
        .map_err(|e| e.to_string())?;
    for md in &sc {
        let want = if md.k == [1, 1] || md.k == [1, -1] { 0.5 } else { 0.0 };
        ensure!(md.b.abs() < 1e-12 && (md.c - want).abs() < 1e-12, "sin*cos: mode {:?} has ({}, {})", md.k, md.b, md.c);
    }
    let x = [0.3, -0.7];
    let s = solve_heat(&tree, &[2, 2], &parse_expression("sin(pi*x1)*cos(pi*x2)", 2).unwrap(), &half, 1, 8, ModeSet::HalfLattice)
        .map_err(|e| e.to_string())?;
    let err = (heat_u(&s, 0.0, &x) - (PI * x[0]).sin() * (PI * x[1]).cos()).abs();
    ensure!(err < 1e-12, "sin*cos recovery off by {err:e}");
    Ok(None)
}

fn cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_treelie")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let (code, text) = cli(args)?;
    ensure!(code == 0, "{args:?} exited with {code}");
    let first = text.clone();
    let (_, again) = cli(args)?;
    ensure!(first == again, "{args:?} is not deterministic");
    serde_json::from_str(&text).map_err(|e| format!("{args:?}: {e}"))
}

fn write_tree(dir: &Path, name: &str, t: &TreeDiagram) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(&t.to_spec()).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

fn c10_cli() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a3 = write_tree(dir.path(), "a3.json", &chain(&[1, 2]));
    let a2 = write_tree(dir.path(), "a2.json", &chain(&[1]));

    let info = cli_json(&["info", &a3, "--direction", "up"])?;
    ensure!(info["dim"] == 9, "info dim {}", info["dim"]);
    ensure!(info["center"] == serde_json::json!(["d3"]), "info center {}", info["center"]);
    let central = info["central_series_dims"].as_array().map_or(0, |a| a.len());
    ensure!(info["nilpotence"] == central, "nilpotence {} vs central series {central}", info["nilpotence"]);
    ensure!(info["nilpotence_printed"] == 4, "nilpotence_printed {}", info["nilpotence_printed"]);

    let count = cli_json(&["ideals", &a2, "--direction", "up", "--count-only"])?;
    ensure!(count["count"] == 4, "ideal count {}", count["count"]);
    ensure!(count["oracle_checked"] == true, "oracle not run");

    let bch = cli_json(&["bch", "--k", "3"])?;
    ensure!(bch["a"] == serde_json::json!(["1", "1/2", "1/12", "0"]), "bch {}", bch["a"]);

    let basis = cli_json(&["basis", &a3, "--direction", "down"])?;
    ensure!(basis["dim"] == 8, "down basis dim {}", basis["dim"]);

    let first = cli_json(&["solve-first", &a2, "--f", "x2", "--t", "0.5", "--x", "1,2", "--emit-eta"])?;
    let u = first["u"].as_f64().unwrap_or(f64::NAN);
    ensure!((u - 2.625).abs() < 1e-15, "solve-first u = {u}");
    ensure!(first["verified"] == true && first["eta"].as_array().is_some_and(|a| a.len() == 2), "solve-first report");

    let csv = dir.path().join("grid.csv");
    let csv_s = csv.to_string_lossy().into_owned();
    let heat = cli_json(&[
        "solve-heat", &a2, "--orders", "2,2", "--f", "cos(pi*x1)", "--box", "2,2", "--modes", "2", "--samples", "16",
        "--eval", "0.1,0.25,0", "--csv", &csv_s, "--grid", "4",
    ])?;
    let u = heat["u"].as_f64().unwrap_or(f64::NAN);
    let want = (-PI * PI * 0.1).exp() * (PI * 0.25).cos();
    ensure!((u - want).abs() < 1e-12, "solve-heat u = {u}, expected {want}");
    ensure!(heat["modes_used"] == 1 && heat["verify_modes"] == true, "solve-heat report {heat}");
    let grid = std::fs::read_to_string(&csv).map_err(|e| e.to_string())?;
    ensure!(grid.lines().next() == Some("t,x_1,x_2,u") && grid.lines().count() == 17, "csv layout");

    let (code, _) = cli(&["ideals", &a2, "--direction", "sideways"])?;
    ensure!(code == 1, "bad direction exits with {code}");
    Ok(Some(format!(
        "A_3 d=(1,2) up reports \"nilpotence\": {} (the true lower central series length) and \"nilpotence_printed\": 4; the literal \"nilpotence\": 4 is not reproduced",
        info["nilpotence"]
    )))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("abelian-ideal counts", c1_ideal_counts),
        ("E-tree count 64 with brute-force agreement", c2_e_tree_64),
        ("maximal-ideal counts", c3_maximal_counts),
        ("enumeration equals brute force on the corpus", c4_oracle_equivalence),
        ("dimension formulas", c5_dimensions),
        ("nilpotence and center", c6_nilpotence),
        ("coefficient series", c7_bch),
        ("first-order solver", c8_first_order),
        ("heat solver", c9_heat),
        ("command line", c10_cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(None) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            Ok(Some(note)) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s); deviation: {note}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
