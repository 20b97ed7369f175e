use fixedbitset::FixedBitSet;

use super::{canonical_sort, AbelianIdeal, IdealError, RootSystem, BRUTE_FORCE_GUARD};
use crate::lie::Direction;
use crate::tree::TreeDiagram;

/// Every subset of basis monomials that is closed under bracketing with the
/// basis and commutative, by scanning all `2^N` subsets.
pub fn brute_force_ideals(tree: &TreeDiagram, direction: Direction) -> Result<Vec<AbelianIdeal>, IdealError> {
    let rs = RootSystem::new(tree, direction);
    let size = rs.len();
    if size > BRUTE_FORCE_GUARD {
        return Err(IdealError::SizeGuard { size, limit: BRUTE_FORCE_GUARD });
    }
    let mask = |s: &FixedBitSet| s.ones().fold(0u32, |m, i| m | 1 << i);
    let succ: Vec<u32> = (0..size).map(|b| mask(rs.succ(b))).collect();
    let comm: Vec<u32> = (0..size).map(|b| mask(rs.comm(b))).collect();
    let mut out = Vec::new();
    for set in 0u32..(1u32 << size) {
        let ok = (0..size)
            .filter(|&b| set >> b & 1 == 1)
            .all(|b| succ[b] & !set == 0 && comm[b] & set == 0);
        if ok {
            let mut m = rs.empty_set();
            m.extend((0..size).filter(|&b| set >> b & 1 == 1));
            out.push(rs.ideal(m));
        }
    }
    canonical_sort(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::OpKey;

    #[test]
    fn single_edge() {
        let a2 = TreeDiagram::chain(&[1]).unwrap();
        let got: Vec<Vec<OpKey>> = brute_force_ideals(&a2, Direction::Up)
            .unwrap()
            .into_iter()
            .map(|i| i.keys)
            .collect();
        let d1 = OpKey::new(vec![0, 0], 1);
        let d2 = OpKey::new(vec![0, 0], 2);
        let x1d2 = OpKey::new(vec![1, 0], 2);
        assert_eq!(got.len(), 4);
        for want in [vec![], vec![d2.clone()], vec![d2.clone(), x1d2], vec![d1, d2]] {
            assert!(got.contains(&want), "{want:?}");
        }
    }

    #[test]
    fn single_node_and_symplectic_chain() {
        let one = TreeDiagram::chain(&[]).unwrap();
        assert_eq!(brute_force_ideals(&one, Direction::Up).unwrap().len(), 2);
        let t = TreeDiagram::chain(&[1, 2]).unwrap();
        assert_eq!(brute_force_ideals(&t, Direction::Up).unwrap().len(), 8);
    }
}
