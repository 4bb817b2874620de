//! Contact counting.

use std::collections::{HashMap, HashSet};

use crate::fold::{validate, Fold, Violation};
use crate::lattice::{step, LatticeKind, Site};
use crate::word::{i00, Word};

/// Word-index pairs `(i, j)`, `i < j`, sorted.
pub type ContactList = Vec<(usize, usize)>;

fn chain_neighbours(i: usize, j: usize, n: usize, cyclic: bool) -> bool {
    j == i + 1 || (cyclic && i == 0 && j + 1 == n)
}

pub fn contacts(f: &Fold, w: &Word) -> Result<ContactList, Violation> {
    let sites = validate(f, w)?;
    Ok(contacts_of_sites(f.kind, &sites, w))
}

/// Contacts of an already-validated site list.
pub fn contacts_of_sites(kind: LatticeKind, sites: &[Site], w: &Word) -> ContactList {
    let letters = w.letters();
    let index: HashMap<Site, usize> = sites
        .iter()
        .enumerate()
        .filter(|(i, _)| letters[*i] == 0)
        .map(|(i, &s)| (s, i))
        .collect();
    let mut out = Vec::new();
    for (i, &s) in sites.iter().enumerate() {
        if letters[i] != 0 {
            continue;
        }
        for d in 0..kind.coordination() {
            if let Some(&j) = index.get(&step(kind, s, d)) {
                if j > i && !chain_neighbours(i, j, sites.len(), w.is_cyclic()) {
                    out.push((i, j));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn score(f: &Fold, w: &Word) -> Result<usize, Violation> {
    contacts(f, w).map(|c| c.len())
}

/// `I_00(w) + score(f, w)`.
pub fn induced_edge_sum(f: &Fold, w: &Word) -> Result<usize, Violation> {
    Ok(i00(w) + score(f, w)?)
}

/// Lattice edges with both ends in `set`.
pub fn internal_edges(kind: LatticeKind, set: &[Site]) -> usize {
    let members: HashSet<Site> = set.iter().copied().collect();
    let twice: usize = members
        .iter()
        .map(|&s| (0..kind.coordination()).filter(|&d| members.contains(&step(kind, s, d))).count())
        .sum();
    twice / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fold::letter_sites;
    use crate::lattice::point_group;
    use crate::word::{rect_family, reverse};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn small_examples() {
        let sq = Fold::parse(LatticeKind::Rect2d, "urdl", true).unwrap();
        assert_eq!(score(&sq, &w("cyc:0000")).unwrap(), 0);
        let u = Fold::parse(LatticeKind::Rect2d, "urd", false).unwrap();
        assert_eq!(contacts(&u, &w("0000")).unwrap(), vec![(0, 3)]);
        let (word, m) = rect_family(0);
        let f = Fold::parse(LatticeKind::Rect2d, &m, false).unwrap();
        assert_eq!(score(&f, &word).unwrap(), 7);
        assert_eq!(score(&f, &w(&"1".repeat(26))).unwrap(), 0);
        assert!(score(&u, &w("00")).is_err());
    }

    #[test]
    fn brute_force_four_zeros() {
        // every open rect2d walk of 3 moves, contact found by hand-rolled scan
        let mut best = 0;
        let mut walks = 0;
        for code in 0..64 {
            let m: String = (0..3).map(|i| ['u', 'l', 'd', 'r'][(code >> (2 * i)) & 3]).collect();
            let f = Fold::parse(LatticeKind::Rect2d, &m, false).unwrap();
            let Ok(sites) = f.check() else { continue };
            walks += 1;
            let touching = sites[0].l1(sites[3]) == 1;
            assert_eq!(score(&f, &w("0000")).unwrap(), touching as usize);
            best = best.max(touching as usize);
        }
        assert_eq!(walks, 36);
        assert_eq!(best, 1);
    }

    #[test]
    fn invariances_on_rect_family() {
        let (word, m) = rect_family(2);
        let f = Fold::parse(LatticeKind::Rect2d, &m, false).unwrap();
        let s = score(&f, &word).unwrap();
        assert_eq!(score(&f.reversed(), &reverse(&word)).unwrap(), s);
        assert_eq!(score(&f.translate(Site::planar(5, -3)), &word).unwrap(), s);
        for g in point_group(LatticeKind::Rect2d) {
            assert_eq!(score(&f.transform(&g), &word).unwrap(), s);
        }
        let zs = letter_sites(&f, &word, 0).unwrap();
        assert_eq!(induced_edge_sum(&f, &word).unwrap(), internal_edges(LatticeKind::Rect2d, &zs));
    }

    #[test]
    fn internal_edge_counts() {
        let sq: Vec<Site> = (0..9).map(|i| Site::planar(i % 3, i / 3)).collect();
        assert_eq!(internal_edges(LatticeKind::Rect2d, &sq), 12);
        let cube: Vec<Site> = (0..27).map(|i| Site::new(i % 3, (i / 3) % 3, i / 9)).collect();
        assert_eq!(internal_edges(LatticeKind::Rect3d, &cube), 54);
    }
}
