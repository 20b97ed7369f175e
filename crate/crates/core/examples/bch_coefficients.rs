//! Coefficients of `x / (1 - e^{-x})` two ways, and their reciprocal series.
//!
//! ```bash
//! cargo run --example bch_coefficients
//! ```

use treelie::bch::{bch_coefficient_double_sum, bch_coefficients};
use treelie::poly::fmt_rational;

fn main() {
    let b = bch_coefficients(8);
    for (k, a) in b.a.iter().enumerate() {
        let check = bch_coefficient_double_sum(k);
        println!("a_{k} = {:>8}   double sum {:>8}", fmt_rational(a), fmt_rational(&check));
    }
    println!("{}", b.to_json());
}
