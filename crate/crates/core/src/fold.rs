//! Open and closed self-avoiding walks labelled by words.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, direction_between, step, Isometry, LatticeError, LatticeKind, Move, Site};
use crate::word::{Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fold {
    pub kind: LatticeKind,
    pub start: Site,
    pub moves: Vec<Move>,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("sites {0} and {1} coincide")]
    Revisit(usize, usize),
    #[error("word has {word} letters but the fold has {sites} sites")]
    LengthMismatch { word: usize, sites: usize },
    #[error("closed fold does not return to its start")]
    NotClosed,
    #[error("closed fold needs at least 3 moves, got {0}")]
    TooShortCycle(usize),
    #[error("word cyclic flag ({word}) disagrees with fold closed flag ({fold})")]
    CyclicMismatch { word: bool, fold: bool },
    #[error("{0}")]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldError {
    #[error("invalid fold: {0}")]
    Invalid(#[from] Violation),
    #[error("cannot drop {front}+{back} letters from a word of length {len}")]
    DropTooMany { front: usize, back: usize, len: usize },
    #[error("drop_ends needs an open fold")]
    DropClosed,
    #[error("consecutive sites {0} and {1} are not adjacent")]
    NotAdjacent(Site, Site),
    #[error("{0}")]
    Lattice(#[from] LatticeError),
}

impl Fold {
    pub fn new(kind: LatticeKind, moves: Vec<Move>, closed: bool) -> Fold {
        Fold { kind, start: Site::ORIGIN, moves, closed }
    }

    pub fn parse(kind: LatticeKind, moves: &str, closed: bool) -> Result<Fold, LatticeError> {
        Ok(Fold::new(kind, lattice::parse_moves(kind, moves)?, closed))
    }

    /// Builds a fold through the given sites. For a closed fold the start is
    /// not repeated at the end.
    pub fn from_sites(kind: LatticeKind, sites: &[Site], closed: bool) -> Result<Fold, FoldError> {
        let mut moves = Vec::with_capacity(sites.len());
        let n = sites.len();
        let edges = if closed { n } else { n.saturating_sub(1) };
        for i in 0..edges {
            let (a, b) = (sites[i], sites[(i + 1) % n]);
            let d = direction_between(kind, a, b).ok_or(FoldError::NotAdjacent(a, b))?;
            moves.push(Move::from_index(kind, d));
        }
        Ok(Fold { kind, start: sites.first().copied().unwrap_or_default(), moves, closed })
    }

    /// Number of labelled sites.
    pub fn site_count(&self) -> usize {
        if self.closed {
            self.moves.len()
        } else {
            self.moves.len() + 1
        }
    }

    /// Every site visited, including the return to the start of a closed fold.
    pub fn trace(&self) -> Result<Vec<Site>, LatticeError> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        let mut cur = self.start;
        self.kind.check_site(cur)?;
        out.push(cur);
        for &m in &self.moves {
            cur = step(self.kind, cur, m.index(self.kind)?);
            out.push(cur);
        }
        Ok(out)
    }

    /// Labelled sites: `moves + 1` for an open fold, `moves` for a closed one.
    pub fn sites(&self) -> Result<Vec<Site>, LatticeError> {
        let mut t = self.trace()?;
        if self.closed {
            t.pop();
        }
        Ok(t)
    }

    /// Geometric checks that do not involve a word.
    pub fn check(&self) -> Result<Vec<Site>, Violation> {
        let trace = self.trace()?;
        if self.closed {
            if self.moves.len() < 3 {
                return Err(Violation::TooShortCycle(self.moves.len()));
            }
            if trace.last() != Some(&self.start) {
                return Err(Violation::NotClosed);
            }
        }
        let sites = &trace[..self.site_count()];
        let mut seen: HashMap<Site, usize> = HashMap::with_capacity(sites.len());
        for (j, &s) in sites.iter().enumerate() {
            if let Some(&i) = seen.get(&s) {
                return Err(Violation::Revisit(i, j));
            }
            seen.insert(s, j);
        }
        Ok(sites.to_vec())
    }

    /// Same walk traversed backwards, starting at the old final site.
    pub fn reversed(&self) -> Fold {
        let sites = self.sites().expect("reversed() on a fold with invalid moves");
        let mut rev: Vec<Site> = sites.into_iter().rev().collect();
        if self.closed {
            // keep word index 0 on the start site: sites 0, n-1, n-2, ...
            rev.rotate_right(1);
        }
        Fold::from_sites(self.kind, &rev, self.closed).expect("reversal keeps adjacency")
    }

    /// Image under a point-group element.
    pub fn transform(&self, g: &Isometry) -> Fold {
        let sites: Vec<Site> = self.sites().expect("valid moves").into_iter().map(|s| g.apply(s)).collect();
        Fold::from_sites(self.kind, &sites, self.closed).expect("isometries preserve adjacency")
    }

    pub fn translate(&self, by: Site) -> Fold {
        Fold { start: self.start + by, ..self.clone() }
    }

    pub fn move_string(&self) -> String {
        self.moves.iter().map(|m| m.symbol()).collect()
    }
}

pub fn sites(f: &Fold) -> Result<Vec<Site>, LatticeError> {
    f.sites()
}

/// Full check of a fold against its word. Returns the labelled sites.
pub fn validate(f: &Fold, w: &Word) -> Result<Vec<Site>, Violation> {
    if w.len() != f.site_count() {
        return Err(Violation::LengthMismatch { word: w.len(), sites: f.site_count() });
    }
    if w.is_cyclic() != f.closed {
        return Err(Violation::CyclicMismatch { word: w.is_cyclic(), fold: f.closed });
    }
    f.check()
}

/// Removes `front` letters from the start and `back` from the end.
pub fn drop_ends(f: &Fold, w: &Word, front: usize, back: usize) -> Result<(Fold, Word), FoldError> {
    if f.closed {
        return Err(FoldError::DropClosed);
    }
    let sites = validate(f, w)?;
    if front + back >= w.len() {
        return Err(FoldError::DropTooMany { front, back, len: w.len() });
    }
    let end = sites.len() - back;
    let fold = Fold {
        kind: f.kind,
        start: sites[front],
        moves: f.moves[front..end - 1].to_vec(),
        closed: false,
    };
    Ok((fold, w.slice(front, end)))
}

/// True if `sites` is exactly an axis-aligned box with the given side lengths
/// (in any order).
pub fn is_box(sites: &[Site], sides: [i32; 3]) -> bool {
    if sites.is_empty() {
        return false;
    }
    let lo = |f: fn(&Site) -> i32| sites.iter().map(f).min().unwrap();
    let hi = |f: fn(&Site) -> i32| sites.iter().map(f).max().unwrap();
    let mut dims = [
        hi(|s| s.x) - lo(|s| s.x) + 1,
        hi(|s| s.y) - lo(|s| s.y) + 1,
        hi(|s| s.z) - lo(|s| s.z) + 1,
    ];
    let mut want = sides;
    dims.sort_unstable();
    want.sort_unstable();
    let distinct: std::collections::HashSet<&Site> = sites.iter().collect();
    dims == want && distinct.len() == sites.len() && sites.len() as i32 == want.iter().product::<i32>()
}

/// Sites of `f` carrying letter `letter`.
pub fn letter_sites(f: &Fold, w: &Word, letter: u8) -> Result<Vec<Site>, Violation> {
    let sites = validate(f, w)?;
    Ok(sites
        .into_iter()
        .zip(w.letters())
        .filter(|(_, &l)| l == letter)
        .map(|(s, _)| s)
        .collect())
}

pub const KEYBOARD: [char; 6] = ['a', 's', 'd', 'w', 'e', 'f'];

/// Assignment of the six keyboard letters to rect3d moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KeyMapping(pub [char; 6]);

impl KeyMapping {
    pub fn get(&self, key: char) -> Option<char> {
        KEYBOARD.iter().position(|&k| k == key).map(|i| self.0[i])
    }

    fn rank(&self) -> [usize; 6] {
        let alpha = LatticeKind::Rect3d.alphabet();
        self.0.map(|c| alpha.iter().position(|&a| a == c).unwrap())
    }
}

impl fmt::Display for KeyMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = KEYBOARD.iter().zip(self.0).map(|(k, m)| format!("{k}={m}")).collect();
        f.write_str(&parts.join(" "))
    }
}

pub struct KeyConstraints<'a> {
    pub word: Word,
    pub extra: Box<dyn Fn(&Fold, &Word) -> bool + 'a>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    /// Every accepted mapping, least first (by the move alphabet order of the
    /// images of `a s d w e f`).
    pub mappings: Vec<KeyMapping>,
    pub canonical: KeyMapping,
    pub fold: Fold,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("empty keyboard string")]
    Empty,
    #[error("character {0:?} is not a keyboard move key")]
    BadKey(char),
    #[error("no key mapping satisfies the constraints")]
    NoMapping,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Tries every bijection from the keyboard letters to the rect3d moves.
pub fn decode_keyboard_moves(text: &str, constraints: &KeyConstraints) -> Result<Decoded, DecodeError> {
    let keys: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if keys.is_empty() {
        return Err(DecodeError::Empty);
    }
    if let Some(&c) = keys.iter().find(|c| !KEYBOARD.contains(c)) {
        return Err(DecodeError::BadKey(c));
    }
    let alpha = LatticeKind::Rect3d.alphabet();
    let mut found: Vec<(KeyMapping, Fold)> = Vec::new();
    for p in permutations(6) {
        let map = KeyMapping([0, 1, 2, 3, 4, 5].map(|i| alpha[p[i]]));
        let moves: Vec<Move> = keys
            .iter()
            .map(|&k| Move::new(LatticeKind::Rect3d, map.get(k).unwrap()).unwrap())
            .collect();
        let fold = Fold::new(LatticeKind::Rect3d, moves, constraints.word.is_cyclic());
        if validate(&fold, &constraints.word).is_ok() && (constraints.extra)(&fold, &constraints.word) {
            found.push((map, fold));
        }
    }
    found.sort_by_key(|(m, _)| m.rank());
    let (canonical, fold) = found.first().cloned().ok_or(DecodeError::NoMapping)?;
    Ok(Decoded { mappings: found.into_iter().map(|(m, _)| m).collect(), canonical, fold })
}

/// The parsed content of a fold file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldFile {
    pub word: Word,
    pub fold: Fold,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldFileError {
    #[error("line {line}: expected `key: value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key {key:?}")]
    Duplicate { line: usize, key: String },
    #[error("missing key {0:?}")]
    Missing(&'static str),
    #[error("bad value for {key}: {msg}")]
    Value { key: &'static str, msg: String },
}

impl FoldFile {
    pub fn parse(text: &str) -> Result<FoldFile, FoldFileError> {
        let mut fields: HashMap<&'static str, String> = HashMap::new();
        const KEYS: [&str; 5] = ["lattice", "word", "moves", "closed", "start"];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once(':').ok_or(FoldFileError::Syntax { line: i + 1 })?;
            let k = k.trim();
            let key = *KEYS
                .iter()
                .find(|&&x| x == k)
                .ok_or_else(|| FoldFileError::UnknownKey { line: i + 1, key: k.to_string() })?;
            if fields.insert(key, v.trim().to_string()).is_some() {
                return Err(FoldFileError::Duplicate { line: i + 1, key: k.to_string() });
            }
        }
        let get = |k: &'static str| fields.get(k).ok_or(FoldFileError::Missing(k));
        let value = |key: &'static str, e: &dyn fmt::Display| FoldFileError::Value { key, msg: e.to_string() };

        let kind: LatticeKind = get("lattice")?.parse().map_err(|e: LatticeError| value("lattice", &e))?;
        let word = Word::parse(get("word")?).map_err(|e: WordError| value("word", &e))?;
        let moves = lattice::parse_moves(kind, get("moves")?).map_err(|e| value("moves", &e))?;
        let closed = match get("closed")?.as_str() {
            "true" => true,
            "false" => false,
            other => return Err(value("closed", &format!("expected true or false, got {other:?}"))),
        };
        let start = match fields.get("start") {
            None => Site::ORIGIN,
            Some(s) => parse_site(s).map_err(|e| value("start", &e))?,
        };
        Ok(FoldFile { word, fold: Fold { kind, start, moves, closed } })
    }

    /// Canonical text; [`FoldFile::parse`] inverts it exactly.
    pub fn render(&self) -> String {
        let mut out = format!(
            "lattice: {}\nword: {}\nmoves: {}\nclosed: {}\n",
            self.fold.kind,
            self.word,
            lattice::format_moves(&self.fold.moves),
            self.fold.closed
        );
        if self.fold.start != Site::ORIGIN {
            let s = self.fold.start;
            out.push_str(&format!("start: {},{},{}\n", s.x, s.y, s.z));
        }
        out
    }
}

pub fn parse_site(text: &str) -> Result<Site, String> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Result<Vec<i32>, _> = inner.split(',').map(|p| p.trim().parse::<i32>()).collect();
    match parts.map_err(|e| e.to_string())?.as_slice() {
        &[x, y] => Ok(Site::planar(x, y)),
        &[x, y, z] => Ok(Site::new(x, y, z)),
        _ => Err(format!("expected 2 or 3 coordinates in {text:?}")),
    }
}
