#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treelie::ideals::RootSystem;
use treelie::lie::Direction;
use treelie::{build_tree, TreeDiagram, TreeSpec};

pub const CORPUS_ROOT_LIMIT: usize = 16;
const RANDOM_TREES: usize = 8;
const SEED: u64 = 20_240_611;

pub fn root_count(t: &TreeDiagram, d: Direction) -> usize {
    RootSystem::new(t, d).len()
}

fn small(t: &TreeDiagram) -> bool {
    [Direction::Up, Direction::Down].iter().all(|&d| root_count(t, d) <= CORPUS_ROOT_LIMIT)
}

/// Random tree with `n` nodes, parent of `c` uniform below `c`, weights in `1..=max_weight`.
pub fn random_tree(rng: &mut impl Rng, n: usize, max_weight: u64) -> TreeDiagram {
    let edges: Vec<_> = (2..=n)
        .map(|c| (rng.gen_range(1..c), c, rng.gen_range(1..=max_weight)))
        .collect();
    build_tree(&TreeSpec::new(n, &edges)).unwrap()
}

/// Named trees with at most 6 nodes, weights at most 3, and at most 16 roots
/// in each direction.
pub fn corpus() -> Vec<(String, TreeDiagram)> {
    let mut out: Vec<(String, TreeDiagram)> = Vec::new();
    for w in [&[][..], &[1], &[2], &[3], &[1, 1], &[1, 2], &[2, 1], &[1, 3], &[1, 1, 1], &[1, 1, 2], &[1, 1, 1, 1]] {
        out.push((format!("chain{w:?}"), TreeDiagram::chain(w).unwrap()));
    }
    for (n0, n1, n2) in [(1, 1, 1), (2, 1, 1), (1, 2, 1)] {
        out.push((format!("E({n0},{n1},{n2})"), TreeDiagram::e_tree(n0, n1, n2).unwrap()));
    }
    let e = TreeDiagram::e_tree(2, 1, 1).unwrap().with_weight(2, 2).unwrap();
    out.push(("E(2,1,1) d(1,2)=2".into(), e));
    let star = build_tree(&TreeSpec::new(4, &[(1, 2, 1), (1, 3, 2), (1, 4, 1)])).unwrap();
    out.push(("star(1,2,1)".into(), star));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut found = 0;
    while found < RANDOM_TREES {
        let n = rng.gen_range(3..=6);
        let t = random_tree(&mut rng, n, 3);
        if small(&t) && !out.iter().any(|(_, u)| *u == t) {
            out.push((format!("random{:?}", t.edges().collect::<Vec<_>>()), t));
            found += 1;
        }
    }
    out.retain(|(_, t)| small(t));
    out
}
