//! Parse initial data, differentiate symbolically, and convert polynomial
//! expressions to exact polynomials.
//!
//! ```bash
//! cargo run --example expressions
//! ```

use treelie::expr::{diff_expr, parse_expression};

fn main() {
    for text in ["x1^2*x2 + 1/3", "sin(2*pi*x1)", "exp(x1)/(1 + x2^2)"] {
        let e = parse_expression(text, 2).unwrap();
        println!("{text}");
        println!("  d/dx1 = {}", diff_expr(&e, 1));
        println!("  d/dx2 = {}", diff_expr(&e, 2));
        println!("  at (0.5, 2) = {}", e.eval(&[0.5, 2.0]).unwrap());
        match e.to_poly() {
            Ok(p) => println!("  exact polynomial {p}"),
            Err(err) => println!("  not a polynomial: {err}"),
        }
    }
    println!("{}", parse_expression("x3", 2).unwrap_err());
    println!("{}", parse_expression("x1 + * 2", 2).unwrap_err());
}
