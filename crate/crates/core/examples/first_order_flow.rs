//! Solve `u_t = d_1 u + sum_{edges (i,j)} x_i^d d_j u` with `u(0) = f` and
//! check the answer three ways.
//!
//! ```bash
//! cargo run --example first_order_flow
//! ```

use std::collections::HashMap;

use treelie::expr::parse_expression;
use treelie::first_order::{
    eta_family, eta_general_numeric, rk4_flow, semigroup_holds, solve_first_order, verify_first_order, Integrand,
    VerifyMode, RK4_STEPS,
};
use treelie::TreeDiagram;

fn main() {
    let tree = TreeDiagram::chain(&[1, 2]).unwrap();
    let fam = eta_family(&tree);
    for (i, e) in fam.eta.iter().enumerate() {
        println!("eta_{} = {e}", i + 1);
    }

    let f = parse_expression("x3^2 - x1*x2", 3).unwrap();
    let sol = solve_first_order(&tree, &f);
    println!("u = {}", sol.to_poly().unwrap());
    let (t, x) = (0.7, [0.2, -0.5, 1.0]);
    println!("u({t}, {x:?}) = {}", sol.eval(t, &x).unwrap());

    let exact = verify_first_order(&tree, &f, VerifyMode::Exact, 1).unwrap();
    let numeric = verify_first_order(&tree, &f, VerifyMode::Numeric, 1).unwrap();
    println!("exact residual vanishes: {}", exact.passed);
    println!("largest gap to the Runge-Kutta flow: {:e}", numeric.max_flow_error.unwrap());
    println!("semigroup identity: {}", semigroup_holds(&tree));

    let flow = rk4_flow(&tree, &x, t, RK4_STEPS);
    println!("characteristic through {x:?} at t = {t}: {flow:?}");

    // the same shifts with x_2^2 replaced by sin(x_2); keys are parent nodes
    let mut g: HashMap<usize, Integrand> = HashMap::new();
    g.insert(1, Box::new(|y: f64| y));
    g.insert(2, Box::new(|y: f64| y.sin()));
    let general = eta_general_numeric(&tree, g).unwrap();
    println!("eta_3 with g = sin: {}", general.eval(3, t, &x).unwrap());
}
