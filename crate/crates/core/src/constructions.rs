//! Folds transcribed from the figures, and the two keyboard-encoded 3D folds.
//!
//! Every fold starts at the origin. Rect2d uses u = +y, r = +x.

use crate::fold::{decode_keyboard_moves, is_box, letter_sites, validate, DecodeError, Decoded, Fold, KeyConstraints};
use crate::lattice::LatticeKind;
use crate::scoring::score;
use crate::word::{hex_family, special_word, tri_family, Word};

/// A word with a fold of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub name: &'static str,
    pub word: Word,
    pub fold: Fold,
}

fn make(name: &'static str, kind: LatticeKind, word: Word, moves: &str, closed: bool) -> Construction {
    let fold = Fold::parse(kind, moves, closed).expect("transcribed moves");
    Construction { name, word, fold }
}

fn lit(text: &str) -> Word {
    Word::parse(text).expect("literal word")
}

/// Hex fold of `hex_family(4)` reaching `Z/2 + 1 = 6`.
pub fn platypus() -> Construction {
    let w = hex_family(4).expect("k = 4");
    make("platypus", LatticeKind::Hex, w, "rrvllllvlvlvlvlvrrvrvrvrv", false)
}

/// Tri pair with the zeros of `0(01)^6` in a daisy.
pub fn whiskers_left() -> Construction {
    make("whiskers_left", LatticeKind::Tri, lit("0(01)^6"), "wqenpempwmqw", false)
}

/// Tri pair with the zeros of `0^7` in a daisy.
pub fn whiskers_right() -> Construction {
    make("whiskers_right", LatticeKind::Tri, lit("0^7"), "wnepmw", false)
}

/// Folds of `tri_family(n)` with the zeros in the radius-`n` daisy.
pub fn tri_witness(n: usize) -> Option<Construction> {
    let moves = match n {
        1 => "wqeeemmmq",
        2 => "wwqeeqnppnemmepwwpmqqmwn",
        3 => "wwmqqeeeqwnnpppnqeemmmenppwwwpemmqqqmpwwnn",
        4 => "wwmmwnnwqeeeeqwwqeeqnppppnqqnppnemmmmennemmepwwwwpeepwwpmqqqqmppmqqmwnnn",
        _ => return None,
    };
    Some(make("tri_witness", LatticeKind::Tri, tri_family(n).ok()?, moves, false))
}

/// `0^25` filling a 5-square.
pub fn square_p2_plain() -> Construction {
    make("p2_plain", LatticeKind::Rect2d, lit("0^25"), "llddrurdrruluruuldlulldr", false)
}

/// The 5-square again, with whiskers of 1s so no `0^5` remains.
pub fn square_p2() -> Construction {
    let w = lit("00011001100001100110000110011000011001100");
    make("p2", LatticeKind::Rect2d, w, "llldrddruurddrurrullurruluulddluuldlldrr", false)
}

/// The 7-square construction with no `0^7`.
pub fn square_p3() -> Construction {
    let w = lit("00001100000011000000110000001100000011000000110000001100000011000");
    let moves = "lllldrrdldrdruuurdddruurdrurulllurrrullurululdddluuulddluldldrrr";
    make("p3", LatticeKind::Rect2d, w, moves, false)
}

/// A 6-square of zeros inside an 8x8 frame of ones (corners removed).
pub fn berger_leighton() -> Construction {
    let w = special_word("berger_leighton").expect("catalog");
    let moves = "urddlluuurrrdddddrurulurulurululdluldluldldrdldrdldrdrurdru";
    make("berger_leighton", LatticeKind::Rect2d, w, moves, false)
}

pub const CUBE54_KEYS: &str = "aasddsdwwdwaawasewdsddsassawaawdeasddsdwwdwaawasedsff";
pub const TREFOIL24_KEYS: &str = "eddfwwffssaeeweddffaaaes";

fn zeros_form_box(f: &Fold, w: &Word, side: i32) -> bool {
    letter_sites(f, w, 0).is_ok_and(|z| is_box(&z, [side; 3]))
}

/// Key mappings under which the cube54 string folds `(0011)^12 011100` with
/// the zeros in a 3-cube.
pub fn decode_cube54() -> Result<Decoded, DecodeError> {
    let word = special_word("cube54").expect("catalog");
    let c = KeyConstraints { word, extra: Box::new(|f, w| zeros_form_box(f, w, 3)) };
    decode_keyboard_moves(CUBE54_KEYS, &c)
}

/// Key mappings under which the trefoil string is a closed fold of
/// `1^2 (0^4 1^7)^2` with the zeros in a 2-cube.
pub fn decode_trefoil24() -> Result<Decoded, DecodeError> {
    let word = special_word("trefoil24").expect("catalog");
    let c = KeyConstraints { word, extra: Box::new(|f, w| zeros_form_box(f, w, 2)) };
    decode_keyboard_moves(TREFOIL24_KEYS, &c)
}

/// Every transcription that ships with the crate, checked or not.
pub fn all() -> Vec<Construction> {
    let mut v = vec![platypus(), whiskers_left(), whiskers_right()];
    v.extend((1..=4).filter_map(tri_witness));
    v.extend([square_p2_plain(), square_p2(), square_p3(), berger_leighton()]);
    v
}

/// Score of a construction, or `None` if the fold is invalid.
pub fn checked_score(c: &Construction) -> Option<usize> {
    validate(&c.fold, &c.word).ok()?;
    score(&c.fold, &c.word).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{distance_lower_bound, Site};
    use crate::scoring::{induced_edge_sum, internal_edges};
    use crate::word::{has_zero_run, i00, zeros};
    use std::collections::BTreeSet;

    fn zero_set(c: &Construction) -> Vec<Site> {
        letter_sites(&c.fold, &c.word, 0).unwrap()
    }

    // radius-r tri ball around some site, checked against every candidate centre
    fn is_tri_ball(set: &[Site], r: u32) -> bool {
        let want = 1 + 3 * r * (r + 1);
        set.len() as u32 == want
            && set.iter().any(|&c| set.iter().all(|&s| distance_lower_bound(LatticeKind::Tri, c, s) <= r))
    }

    #[test]
    fn every_transcription_validates() {
        for c in all() {
            assert!(checked_score(&c).is_some(), "{}", c.name);
        }
    }

    #[test]
    fn platypus_scores_six() {
        let c = platypus();
        assert_eq!(c.word, lit("01111011010101011110101010"));
        assert_eq!(zeros(&c.word), 10);
        assert_eq!(checked_score(&c), Some(6));
    }

    #[test]
    fn whiskers_identity() {
        let l = whiskers_left();
        assert_eq!((i00(&l.word), checked_score(&l).unwrap()), (1, 11));
        let r = whiskers_right();
        assert_eq!((i00(&r.word), checked_score(&r).unwrap()), (6, 6));
        for c in [l, r] {
            let z = zero_set(&c);
            assert!(is_tri_ball(&z, 1));
            assert_eq!(induced_edge_sum(&c.fold, &c.word).unwrap(), 12);
            assert_eq!(internal_edges(LatticeKind::Tri, &z), 12);
        }
    }

    #[test]
    fn tri_witnesses_fill_daisies() {
        for n in 1..=4 {
            let c = tri_witness(n).unwrap();
            let z = zero_set(&c);
            assert!(is_tri_ball(&z, n as u32), "n={n}");
            assert!(!has_zero_run(&c.word, 2 * n + 1));
            assert_eq!(induced_edge_sum(&c.fold, &c.word).unwrap(), internal_edges(LatticeKind::Tri, &z));
        }
        assert!(tri_witness(5).is_none());
    }

    #[test]
    fn squares_of_zeros() {
        for (c, side) in [(square_p2_plain(), 5), (square_p2(), 5), (square_p3(), 7)] {
            let z = zero_set(&c);
            assert!(is_box(&z, [side, side, 1]), "{}", c.name);
            assert_eq!(induced_edge_sum(&c.fold, &c.word).unwrap(), (2 * side * (side - 1)) as usize);
        }
        assert!(has_zero_run(&square_p2_plain().word, 5));
        assert!(!has_zero_run(&square_p2().word, 5));
        assert!(!has_zero_run(&square_p3().word, 7));
        assert!(square_p3().word.digits().starts_with("00001"));
    }

    #[test]
    fn berger_leighton_agrees_with_word() {
        let c = berger_leighton();
        assert_eq!(c.word.len(), 60);
        let sites: BTreeSet<Site> = c.fold.sites().unwrap().into_iter().collect();
        let lo = sites.iter().map(|s| s.x).min().unwrap();
        let bottom = sites.iter().map(|s| s.y).min().unwrap();
        let frame: BTreeSet<Site> = (0..8)
            .flat_map(|x| (0..8).map(move |y| (x, y)))
            .filter(|&(x, y)| !((x == 0 || x == 7) && (y == 0 || y == 7)))
            .map(|(x, y)| Site::planar(lo + x, bottom + y))
            .collect();
        assert_eq!(sites, frame);
        let z = zero_set(&c);
        assert!(is_box(&z, [6, 6, 1]));
        assert!(z.iter().all(|s| s.x > lo && s.x < lo + 7 && s.y > bottom && s.y < bottom + 7));
        assert_eq!(checked_score(&c).unwrap(), 60 - i00(&c.word));
    }

    #[test]
    fn cube54_decodes() {
        let d = decode_cube54().unwrap();
        let w = special_word("cube54").unwrap();
        assert_eq!(score(&d.fold, &w).unwrap(), 41);
        assert_eq!(i00(&w), 13);
        assert!(zeros_form_box(&d.fold, &w, 3));
        assert!(!d.fold.closed);
    }

    #[test]
    fn trefoil24_decodes() {
        let d = decode_trefoil24().unwrap();
        let w = special_word("trefoil24").unwrap();
        assert!(d.fold.closed);
        assert_eq!(d.fold.moves.len(), 24);
        assert_eq!(score(&d.fold, &w).unwrap(), 6);
    }
}
