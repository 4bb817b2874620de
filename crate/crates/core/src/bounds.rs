//! Upper bounds on J and replayable certificates built on them.
//!
//! Each zero can gain contacts only through lattice directions not used by
//! its chain neighbours: `coordination - 2` for an internal zero and
//! `coordination - 1` for a terminal one. Halving that total (every contact
//! has two ends) gives the handshake bound; on bipartite lattices a contact
//! always joins an even and an odd word index, so the smaller of the two
//! per-parity totals is also a bound.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fold::{Fold, Violation};
use crate::lattice::{LatticeKind, Site};
use crate::scoring::score;
use crate::search::{self, SearchError, SearchLimits};
use crate::word::{zeros, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    /// `Z + 1` on the square lattice, `Z` for a word wrapped as `1w1`.
    RectZeros,
    /// `floor(Z/2) + 1` on the hexagonal lattice, `floor(Z/2)` wrapped.
    HexHalfZeros,
    /// Halved free-direction total (tri and rect3d).
    Generic,
    /// Per-parity free-direction total (bipartite lattices).
    Parity,
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundName::RectZeros => "rect-zeros",
            BoundName::HexHalfZeros => "hex-half-zeros",
            BoundName::Generic => "generic",
            BoundName::Parity => "parity",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub name: BoundName,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("word contains the letter 2, which has no HP bound")]
    LetterTwo,
}

/// Free-direction capacity of every index (0 for non-zero letters).
pub(crate) fn caps(kind: LatticeKind, letters: &[u8], cyclic: bool) -> Vec<usize> {
    let c = kind.coordination();
    let n = letters.len();
    letters
        .iter()
        .enumerate()
        .map(|(i, &l)| match l {
            0 if n == 1 => c,
            0 if !cyclic && (i == 0 || i + 1 == n) => c - 1,
            0 => c - 2,
            _ => 0,
        })
        .collect()
}

fn check_letters(w: &Word) -> Result<(), BoundError> {
    if w.has_twos() {
        Err(BoundError::LetterTwo)
    } else {
        Ok(())
    }
}

/// Bound from the paper's zero counts (rect2d, hex) or the generic handshake.
/// `wrapped` bounds `1w1` instead of `w`.
pub fn upper_bound(kind: LatticeKind, w: &Word, wrapped: bool) -> Result<Bound, BoundError> {
    check_letters(w)?;
    let z = zeros(w);
    let inner = wrapped || w.is_cyclic();
    Ok(match kind {
        LatticeKind::Rect2d => Bound { name: BoundName::RectZeros, value: if inner { z } else { z + 1 } },
        LatticeKind::Hex => Bound { name: BoundName::HexHalfZeros, value: if inner { z / 2 } else { z / 2 + 1 } },
        LatticeKind::Rect3d | LatticeKind::Tri => {
            let total: usize = caps(kind, w.letters(), inner).iter().sum();
            Bound { name: BoundName::Generic, value: total / 2 }
        }
    })
}

/// The per-parity bound on bipartite lattices, the generic one otherwise.
pub fn parity_bound(kind: LatticeKind, w: &Word) -> Result<Bound, BoundError> {
    check_letters(w)?;
    let cap = caps(kind, w.letters(), w.is_cyclic());
    if !kind.is_bipartite() || (w.is_cyclic() && w.len() % 2 == 1) {
        return Ok(Bound { name: BoundName::Generic, value: cap.iter().sum::<usize>() / 2 });
    }
    let even: usize = cap.iter().step_by(2).sum();
    let odd: usize = cap.iter().skip(1).step_by(2).sum();
    Ok(Bound { name: BoundName::Parity, value: even.min(odd) })
}

/// The smaller of [`upper_bound`] and [`parity_bound`].
pub fn best_bound(kind: LatticeKind, w: &Word) -> Result<Bound, BoundError> {
    let a = upper_bound(kind, w, false)?;
    let b = parity_bound(kind, w)?;
    Ok(if b.value < a.value { b } else { a })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Claim {
    /// `J(word) = value`.
    Equality { value: usize },
    /// `J(1 word 1) <= wrapped < value = J(word)`.
    WrapDrop { value: usize, wrapped: usize },
    /// `J(1^prefix_ones x suffix) <= bound(x suffix) < value <= J(word)` where
    /// `word = 1^prefix_ones x`.
    StrictDrop { value: usize, suffix: Word, prefix_ones: usize, extended_bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub word: Word,
    pub fold: Fold,
    pub bound_used: BoundName,
    pub claim: Claim,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("invalid fold: {0}")]
    Invalid(#[from] Violation),
    #[error("{0}")]
    Bound(#[from] BoundError),
    #[error("score {score} is below the bound {bound} (gap {})", bound - score)]
    Gap { score: usize, bound: usize },
    #[error("bound {bound} on the extended word is not below the score {score}")]
    NotStrict { score: usize, bound: usize },
    #[error("certificates need an open word")]
    Closed,
    #[error("no placement of the 1-prefix extends the fold")]
    NoExtension,
    #[error("certificate does not replay: {0}")]
    Replay(String),
}

fn scored(kind: LatticeKind, w: &Word, fold: &Fold) -> Result<usize, CertError> {
    if w.is_cyclic() || fold.closed {
        return Err(CertError::Closed);
    }
    if fold.kind != kind {
        return Err(CertError::Replay(format!("fold lattice {} differs from {kind}", fold.kind)));
    }
    Ok(score(fold, w)?)
}

/// Accepts iff the fold meets the lattice's upper bound, proving `J(w)` exactly.
pub fn certify_equality(kind: LatticeKind, w: &Word, fold: &Fold) -> Result<Certificate, CertError> {
    let s = scored(kind, w, fold)?;
    let b = upper_bound(kind, w, false)?;
    if s < b.value {
        return Err(CertError::Gap { score: s, bound: b.value });
    }
    Ok(Certificate { word: w.clone(), fold: fold.clone(), bound_used: b.name, claim: Claim::Equality { value: s } })
}

/// Accepts iff the wrapped bound is strictly below the fold's exact score,
/// proving `J(1w1) < J(w)`.
pub fn certify_wrap_drop(kind: LatticeKind, w: &Word, fold: &Fold) -> Result<Certificate, CertError> {
    let eq = certify_equality(kind, w, fold)?;
    let Claim::Equality { value } = eq.claim else { unreachable!() };
    let wrapped = upper_bound(kind, w, true)?;
    if wrapped.value >= value {
        return Err(CertError::NotStrict { score: value, bound: wrapped.value });
    }
    Ok(Certificate { claim: Claim::WrapDrop { value, wrapped: wrapped.value }, ..eq })
}

/// Accepts iff the best available bound on `w·suffix` is below the fold's
/// score, proving `J(w·suffix) < J(w)`.
pub fn certify_suffix_drop(kind: LatticeKind, w: &Word, fold: &Fold, suffix: &Word) -> Result<Certificate, CertError> {
    let s = scored(kind, w, fold)?;
    let ext = best_bound(kind, &w.concat(suffix))?;
    if ext.value >= s {
        return Err(CertError::NotStrict { score: s, bound: ext.value });
    }
    Ok(Certificate {
        word: w.clone(),
        fold: fold.clone(),
        bound_used: ext.name,
        claim: Claim::StrictDrop { value: s, suffix: suffix.clone(), prefix_ones: 0, extended_bound: ext.value },
    })
}

/// Re-derives every number in a certificate from its word and fold.
pub fn replay(cert: &Certificate) -> Result<(), CertError> {
    let kind = cert.fold.kind;
    let s = scored(kind, &cert.word, &cert.fold)?;
    let mismatch = |what: &str| Err(CertError::Replay(what.to_string()));
    match &cert.claim {
        Claim::Equality { value } => {
            let b = upper_bound(kind, &cert.word, false)?;
            if *value != s || s < b.value || b.name != cert.bound_used {
                return mismatch("equality");
            }
        }
        Claim::WrapDrop { value, wrapped } => {
            let b = upper_bound(kind, &cert.word, false)?;
            let wb = upper_bound(kind, &cert.word, true)?;
            if *value != s || s < b.value || wb.value != *wrapped || *wrapped >= s {
                return mismatch("wrap drop");
            }
        }
        Claim::StrictDrop { value, suffix, prefix_ones, extended_bound } => {
            let letters = cert.word.letters();
            if letters.len() <= *prefix_ones || letters[..*prefix_ones].iter().any(|&l| l != 1) {
                return mismatch("prefix is not all ones");
            }
            let core = cert.word.slice(*prefix_ones, letters.len());
            let b = best_bound(kind, &core.concat(suffix))?;
            if *value != s || b.value != *extended_bound || b.name != cert.bound_used || b.value >= s {
                return mismatch("strict drop");
            }
        }
    }
    Ok(())
}

/// One word's monotonicity facts, from exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneReport {
    pub word: Word,
    pub j: usize,
    pub j_append: usize,
    pub j_prepend: usize,
}

impl MonotoneReport {
    pub fn holds(&self) -> bool {
        self.j_append <= self.j && self.j_prepend <= self.j
    }
}

/// Checks `J(x1) <= J(x)` and `J(1x) <= J(x)` by exact search.
pub fn suffix_monotone_check(kind: LatticeKind, x: &Word, limits: &SearchLimits) -> Result<MonotoneReport, SearchError> {
    let one = Word::parse("1").expect("literal");
    let exact = |w: &Word| -> Result<usize, SearchError> {
        let r = search::optimal(kind, w, false, limits)?;
        if !r.exact {
            return Err(SearchError::Budget { best: r.value, nodes: r.nodes });
        }
        Ok(r.value)
    };
    Ok(MonotoneReport {
        word: x.clone(),
        j: exact(x)?,
        j_append: exact(&x.concat(&one))?,
        j_prepend: exact(&one.concat(x))?,
    })
}

/// Lifts a strict-drop certificate for `x` to one for `1^m x` by finding a
/// self-avoiding placement of `m` ones in front of the witness fold.
pub fn lift_counterexample(cert: &Certificate, m: usize, max_nodes: u64) -> Result<Certificate, CertError> {
    replay(cert)?;
    let Claim::StrictDrop { value, suffix, prefix_ones, extended_bound } = &cert.claim else {
        return Err(CertError::Replay("lift needs a strict-drop certificate".into()));
    };
    if m == 0 {
        return Ok(cert.clone());
    }
    let kind = cert.fold.kind;
    let sites = cert.fold.sites().map_err(Violation::from)?;
    let occupied: std::collections::HashSet<Site> = sites.iter().copied().collect();
    let mut path = Vec::with_capacity(m);
    let mut nodes = 0u64;
    if !extend(kind, sites[0], m, &occupied, &mut path, &mut nodes, max_nodes) {
        return Err(CertError::NoExtension);
    }
    // path runs outward from the old start; the new fold starts at its far end
    let mut all: Vec<Site> = path.iter().rev().copied().collect();
    all.extend_from_slice(&sites);
    let fold = Fold::from_sites(kind, &all, false).map_err(|e| CertError::Replay(e.to_string()))?;
    let ones = Word::new(vec![1; m], false).expect("m > 0");
    let word = ones.concat(&cert.word);
    let lifted = Certificate {
        word,
        fold,
        bound_used: cert.bound_used,
        claim: Claim::StrictDrop {
            value: *value,
            suffix: suffix.clone(),
            prefix_ones: prefix_ones + m,
            extended_bound: *extended_bound,
        },
    };
    replay(&lifted)?;
    Ok(lifted)
}

fn extend(
    kind: LatticeKind,
    from: Site,
    left: usize,
    occupied: &std::collections::HashSet<Site>,
    path: &mut Vec<Site>,
    nodes: &mut u64,
    max_nodes: u64,
) -> bool {
    if left == 0 {
        return true;
    }
    *nodes += 1;
    if *nodes > max_nodes {
        return false;
    }
    for d in 0..kind.coordination() {
        let t = crate::lattice::step(kind, from, d);
        if occupied.contains(&t) || path.contains(&t) {
            continue;
        }
        path.push(t);
        if extend(kind, t, left - 1, occupied, path, nodes, max_nodes) {
            return true;
        }
        path.pop();
    }
    false
}
