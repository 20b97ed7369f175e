//! Build a weighted tree, round-trip it through JSON, and print its node sets
//! and weight data.
//!
//! ```bash
//! cargo run --example tree_classification
//! ```

use treelie::{build_tree, TreeDiagram, TreeSpec};

fn main() {
    // 1 - 2 - 3 with the edge (2,3) of weight 2
    let spec = TreeSpec::new(3, &[(1, 2, 1), (2, 3, 2)]);
    let tree = build_tree(&spec).expect("valid tree");
    let json = serde_json::to_string(&tree.to_spec()).unwrap();
    println!("tree file: {json}");
    assert_eq!(build_tree(&serde_json::from_str(&json).unwrap()).unwrap(), tree);

    let c = tree.classify_nodes();
    println!("tips {:?}  upsilon {:?}  phi {:?}  omega {:?}", c.tips, c.upsilon, c.phi, c.omega);
    for i in tree.nodes() {
        let w = tree.weights(i).unwrap();
        println!(
            "node {i}: clan {:?}  kappa {}  tip index {} (root-outward form {})",
            tree.clan(i).unwrap(),
            w.kappa,
            w.nilpotence,
            w.nilpotence_root_products
        );
    }

    let e = TreeDiagram::e_tree(2, 2, 1).unwrap();
    println!("E-tree edges: {:?}", e.edges().collect::<Vec<_>>());

    let bad = TreeSpec::new(3, &[(1, 2, 1), (3, 3, 1)]);
    println!("invalid: {}", build_tree(&bad).unwrap_err());
}
