//! Count, list, and certify abelian ideals; compare the fast enumeration with
//! the exhaustive oracle.
//!
//! ```bash
//! cargo run --example abelian_ideals
//! ```

use treelie::ideals::{
    brute_force_ideals, count_ideals, enumerate_ideals, is_abelian_ideal, maximal_among, maximal_ideals,
    recover_admissible_pair, root_poset,
};
use treelie::lie::{Direction, Root};
use treelie::TreeDiagram;

fn main() {
    for n in 2..=5 {
        let chain = TreeDiagram::chain(&vec![1; n - 1]).unwrap();
        println!("A_{n}: {} ideals", count_ideals(&chain, Direction::Up).unwrap());
    }

    let e = TreeDiagram::e_tree(2, 2, 1).unwrap().with_weight(4, 2).unwrap();
    let fast = enumerate_ideals(&e, Direction::Up).unwrap();
    let brute = brute_force_ideals(&e, Direction::Up).unwrap();
    println!("E(2,2,1), d(3,4) = 2: {} ideals, oracle agrees: {}", fast.len(), fast == brute);

    let e = TreeDiagram::e_tree(2, 1, 1).unwrap();
    let all = enumerate_ideals(&e, Direction::Down).unwrap();
    println!(
        "E(2,1,1) down: {} ideals, {} inclusion-maximal, {} from anchor sets",
        all.len(),
        maximal_among(&all).len(),
        maximal_ideals(&e, Direction::Down).len()
    );

    let a3 = TreeDiagram::chain(&[1, 1]).unwrap();
    let biggest = enumerate_ideals(&a3, Direction::Up).unwrap().pop().unwrap();
    println!("largest A_3 ideal: {:?}", biggest.keys.iter().map(|k| k.to_string()).collect::<Vec<_>>());
    println!("its admissible pair: {:?}", recover_admissible_pair(&a3, &biggest).unwrap());

    let not_ideal = [Root { alpha: vec![0, 0, -1] }, Root { alpha: vec![0, 1, -1] }];
    let check = is_abelian_ideal(&a3, Direction::Up, &not_ideal).unwrap();
    println!("{{d3, x2*d3}} is an ideal: {}, because {:?}", check.is_ideal, check.certificate);

    let p = root_poset(&TreeDiagram::chain(&[1, 2]).unwrap(), 3, Direction::Up);
    println!("root poset at node 3: {:?}, {} antichains", p.elements, p.antichains().len());
}
