use std::collections::HashSet;

use hpfold::fold::Fold;
use hpfold::lattice::{neighbors, LatticeKind, Move, Site};
use hpfold::word::Word;

pub const KINDS: [LatticeKind; 4] = [LatticeKind::Rect2d, LatticeKind::Rect3d, LatticeKind::Tri, LatticeKind::Hex];

/// Self-avoiding walk from choice indices: each step takes the `c`-th free
/// direction (mod the number free), stopping early if stuck.
pub fn walk(kind: LatticeKind, choices: &[usize]) -> Fold {
    let alpha = kind.alphabet();
    let mut at = Site::ORIGIN;
    let mut seen = HashSet::from([at]);
    let mut moves = Vec::new();
    for &c in choices {
        let around = neighbors(kind, at).unwrap();
        let free: Vec<usize> = (0..around.len()).filter(|&d| !seen.contains(&around[d])).collect();
        if free.is_empty() {
            break;
        }
        let d = free[c % free.len()];
        at = around[d];
        seen.insert(at);
        moves.push(Move::new(kind, alpha[d]).unwrap());
    }
    Fold::new(kind, moves, false)
}

pub fn word_for(f: &Fold, bits: &[bool]) -> Word {
    let n = f.site_count();
    Word::new((0..n).map(|i| if bits[i % bits.len()] { 0 } else { 1 }).collect(), false).unwrap()
}
