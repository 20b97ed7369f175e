//! Monomial bases of the up and down algebras, brackets, closed-form
//! dimensions, and the lower central series.
//!
//! ```bash
//! cargo run --example lie_structure
//! ```

use treelie::lie::{bracket, dim_and_nilpotence, enumerate_basis, roots, verify_structure, Direction, LieElement};
use treelie::TreeDiagram;

fn main() {
    let tree = TreeDiagram::chain(&[1, 2]).unwrap();
    for dir in [Direction::Up, Direction::Down] {
        let basis = enumerate_basis(&tree, dir);
        let shown: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
        println!("{dir}: {}", shown.join(", "));
        let dn = dim_and_nilpotence(&tree, dir);
        let s = verify_structure(&tree, dir);
        println!(
            "  dim {} (basis {}), central series {:?}, nilpotence {} (root-outward form {})",
            dn.dim,
            basis.len(),
            s.central_series_dims,
            dn.nilpotence,
            dn.nilpotence_printed
        );
        let center: Vec<String> = s.center_basis.iter().map(|e| e.to_string()).collect();
        println!("  center {center:?}, closed under brackets: {}", s.closure);
    }

    let a = LieElement::monomial(&[0, 1, 0], 3);
    let b = LieElement::monomial(&[1, 0, 0], 2);
    println!("[x2*d3, x1*d2] = {}", bracket(&a, &b).unwrap());

    for (root, m) in roots(&tree, Direction::Up).into_iter().take(4) {
        println!("root {root}: {m}");
    }
}
