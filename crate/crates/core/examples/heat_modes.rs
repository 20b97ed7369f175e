//! Mode-sum solution of `u_t = d_1^{m_1} u + sum_{edges (i,j)} x_i d_j^{m_j} u`
//! on a periodic box.
//!
//! ```bash
//! cargo run --example heat_modes
//! ```

use treelie::expr::parse_expression;
use treelie::heat::{mode_exponent, mode_exponent_symbolic, solve_heat, verify_modes, xi_family, ModeSet};
use treelie::TreeDiagram;

fn main() {
    let tree = TreeDiagram::chain(&[1]).unwrap();
    let orders = [2, 2];
    let xi = xi_family(&tree, &orders).unwrap();
    println!("xi~_1 = {}", xi.xi_tilde[0]);
    let s = mode_exponent_symbolic(&xi);
    println!("growth A = {}\nphase  B = {}", s.a, s.b);
    println!("plane waves solve the equation exactly: {}", verify_modes(&tree, &orders).unwrap().holds);

    let half_widths = [2.0, 2.0];
    let m = mode_exponent(&xi, &[1, 1], &half_widths, 0.1).unwrap();
    println!("mode (1,1) at t = 0.1: A = {:?}, B = {:?}", m.a, m.b);

    let f = parse_expression("1 + cos(pi*x1) + 1/2*sin(pi*x1)*cos(pi*x2)", 2).unwrap();
    let sol = solve_heat(&tree, &orders, &f, &half_widths, 2, 16, ModeSet::HalfLattice).unwrap();
    for md in &sol.modes {
        println!("k = {:?}: b = {:.6}, c = {:.6}", md.k, md.b, md.c);
    }
    let x = [0.3, -0.4];
    for t in [0.0, 0.05, 0.1] {
        println!("u({t}, {x:?}) = {:.10}", sol.eval(t, &x).unwrap());
    }
    println!("f{x:?} = {:.10}", f.eval(&x).unwrap());
}
