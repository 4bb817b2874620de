//! The levels-of-hydrophobicity model on closed chains in the cubic lattice.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::fold::parse_site;
use crate::lattice::{neighbors, LatticeKind, Site};
use crate::notation;
use crate::word::{multiset_m, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultichainError {
    #[error("chain {chain}: word has {word} letters but {sites} sites are given")]
    LengthMismatch { chain: usize, word: usize, sites: usize },
    #[error("chain {chain}: indices {i} and {j} share site {site}")]
    NotInjective { chain: usize, i: usize, j: usize, site: Site },
    #[error("chain {chain}: step {i} -> {} is not a unit step", (i + 1) % len)]
    BadStep { chain: usize, i: usize, len: usize },
    #[error("chains {a} and {b} both occupy {site}")]
    Overlap { a: usize, b: usize, site: Site },
    #[error("symbol {0} has no hydrophobicity level")]
    UnknownSymbol(u8),
    #[error("sites do not form a unit-step triple")]
    NotTriple,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub word: Word,
    pub sites: Vec<Site>,
}

/// A closed-chain embedding: every chain is cyclic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Embedding {
    pub chains: Vec<Chain>,
}

impl Embedding {
    /// Parses lines of the form `chain <word>: (x,y,z);(x,y,z);...`.
    pub fn parse(text: &str) -> Result<Embedding, MultichainError> {
        let mut chains = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: String| MultichainError::Syntax { line: n + 1, msg };
            let body = line.strip_prefix("chain").ok_or_else(|| syntax("expected `chain`".into()))?;
            let colon = body.rfind(':').ok_or_else(|| syntax("missing `:`".into()))?;
            let word_text = body[..colon].trim();
            let word_text = word_text.strip_prefix("cyc:").unwrap_or(word_text);
            let word = Word::parse(word_text).map_err(|e| syntax(e.to_string()))?.as_cyclic(true);
            let sites = body[colon + 1..]
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(parse_site)
                .collect::<Result<Vec<_>, _>>()
                .map_err(syntax)?;
            chains.push(Chain { word, sites });
        }
        Ok(Embedding { chains })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.chains {
            let digits: Vec<char> = c.word.digits().chars().collect();
            let sites: Vec<String> = c.sites.iter().map(Site::to_string).collect();
            out.push_str(&format!("chain {}: {}\n", notation::compress(&digits), sites.join(";")));
        }
        out
    }

    /// Letter at each occupied site.
    pub fn contents(&self) -> HashMap<Site, u8> {
        let mut m = HashMap::new();
        for c in &self.chains {
            for (i, &s) in c.sites.iter().enumerate() {
                m.insert(s, c.word.letters()[i]);
            }
        }
        m
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn validate_embedding(e: &Embedding) -> Result<(), MultichainError> {
    let mut owner: HashMap<Site, usize> = HashMap::new();
    for (ci, c) in e.chains.iter().enumerate() {
        let n = c.sites.len();
        if n != c.word.len() {
            return Err(MultichainError::LengthMismatch { chain: ci, word: c.word.len(), sites: n });
        }
        let mut first: HashMap<Site, usize> = HashMap::new();
        for (i, &s) in c.sites.iter().enumerate() {
            if let Some(&j) = first.get(&s) {
                return Err(MultichainError::NotInjective { chain: ci, i: j, j: i, site: s });
            }
            first.insert(s, i);
            if s.l1(c.sites[(i + 1) % n]) != 1 {
                return Err(MultichainError::BadStep { chain: ci, i, len: n });
            }
        }
        for &s in &c.sites {
            if let Some(&a) = owner.get(&s) {
                return Err(MultichainError::Overlap { a, b: ci, site: s });
            }
            owner.insert(s, ci);
        }
    }
    Ok(())
}

/// Unordered adjacent occupied pairs that are not chain edges, as `(min, max)`.
pub fn potential_contacts(e: &Embedding) -> Result<BTreeSet<(Site, Site)>, MultichainError> {
    validate_embedding(e)?;
    let mut edges = BTreeSet::new();
    for c in &e.chains {
        let n = c.sites.len();
        for i in 0..n {
            let (a, b) = (c.sites[i], c.sites[(i + 1) % n]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let occupied = e.contents();
    let mut out = BTreeSet::new();
    for &s in occupied.keys() {
        for t in neighbors(LatticeKind::Rect3d, s).expect("cubic sites are valid") {
            let p = (s.min(t), s.max(t));
            if s < t && occupied.contains_key(&t) && !edges.contains(&p) {
                out.insert(p);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HydroLevels {
    pub h: BTreeMap<u8, u64>,
}

impl HydroLevels {
    /// `h(1) = 0`, `h(0) = 1`, `h(2) = c`.
    pub fn h_c(c: u64) -> HydroLevels {
        HydroLevels { h: BTreeMap::from([(0, 1), (1, 0), (2, c)]) }
    }

    pub fn level(&self, a: u8) -> Result<u64, MultichainError> {
        self.h.get(&a).copied().ok_or(MultichainError::UnknownSymbol(a))
    }
}

pub fn pair_value(h: &HydroLevels, a: u8, b: u8) -> Result<u64, MultichainError> {
    let (x, y) = (h.level(a)?, h.level(b)?);
    Ok(if x != 0 && y != 0 { x + y } else { 0 })
}

pub fn embedding_score(e: &Embedding, h: &HydroLevels) -> Result<u64, MultichainError> {
    let contents = e.contents();
    potential_contacts(e)?
        .iter()
        .map(|(a, b)| pair_value(h, contents[a], contents[b]))
        .sum()
}

/// Ring `k` of the intended embedding: the square with corners `(k,±1,±1)`,
/// corners at odd indices.
fn ring(k: i32) -> Vec<Site> {
    [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
        .iter()
        .map(|&(y, z)| Site::new(k, y, z))
        .collect()
}

/// The long chain: `2 2 2` at `(-1..1, 0, 0)`, then round the rectangle with
/// corners `(±2, 0, 0)`, `(±2, 0, -2-m)`.
fn long_chain(m: usize) -> Vec<Site> {
    let depth = 2 + m as i32;
    let mut s = vec![Site::new(-1, 0, 0), Site::new(0, 0, 0), Site::new(1, 0, 0), Site::new(2, 0, 0)];
    s.extend((1..=depth).map(|z| Site::new(2, 0, -z)));
    s.extend((-2..=1).rev().map(|x| Site::new(x, 0, -depth)));
    s.extend((0..depth).rev().map(|z| Site::new(-2, 0, -z)));
    s
}

pub fn intended_embedding(m: usize) -> Embedding {
    let words = multiset_m(m);
    let mut chains: Vec<Chain> =
        (-1..=1).zip(&words[..3]).map(|(k, w)| Chain { word: w.clone(), sites: ring(k) }).collect();
    chains.push(Chain { word: words[3].clone(), sites: long_chain(m) });
    Embedding { chains }
}

/// Sites at distance exactly 1 from `a`.
pub fn vertex_boundary(a: &[Site]) -> BTreeSet<Site> {
    let inside: BTreeSet<Site> = a.iter().copied().collect();
    a.iter()
        .flat_map(|&s| neighbors(LatticeKind::Rect3d, s).expect("cubic sites are valid"))
        .filter(|t| !inside.contains(t))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triple {
    Straight,
    Bent,
}

pub fn classify_triple(x: Site, y: Site, z: Site) -> Result<Triple, MultichainError> {
    if x.l1(y) != 1 || y.l1(z) != 1 || x == z {
        return Err(MultichainError::NotTriple);
    }
    Ok(if x + z == y + y { Triple::Straight } else { Triple::Bent })
}

fn straight_triple() -> [Site; 3] {
    [Site::new(-1, 0, 0), Site::ORIGIN, Site::new(1, 0, 0)]
}

/// The eight sites around the middle of the straight triple.
pub fn ring_image() -> BTreeSet<Site> {
    ring(0).into_iter().collect()
}

/// Which adjacency-to-origin hypothesis a ring placement must meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingHypothesis {
    /// No adjacency requirement.
    None,
    /// Some image site, at any index, is adjacent to the origin.
    AnyIndex,
    /// Some even-index site (a `0` of `(01)^4`) is adjacent to the origin.
    EvenIndex,
}

/// All injective unit-step maps `Z/8 -> Z^3 \ A` (A the straight triple) with
/// even indices on the boundary of A, filtered by `hyp`.
pub fn enumerate_ring_placements(hyp: RingHypothesis) -> Vec<[Site; 8]> {
    let a = straight_triple();
    let boundary = vertex_boundary(&a);
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(8);
    for &s in &boundary {
        path.push(s);
        ring_dfs(&a, &boundary, &mut path, &mut out);
        path.pop();
    }
    let near = |s: &Site| s.l1(Site::ORIGIN) == 1;
    match hyp {
        RingHypothesis::None => {}
        RingHypothesis::AnyIndex => out.retain(|f| f.iter().any(near)),
        RingHypothesis::EvenIndex => out.retain(|f| f.iter().step_by(2).any(near)),
    }
    out
}

/// Placements under `hyp` whose image is not the ring.
pub fn off_ring_placements(hyp: RingHypothesis) -> Vec<[Site; 8]> {
    let ring = ring_image();
    enumerate_ring_placements(hyp)
        .into_iter()
        .filter(|f| f.iter().copied().collect::<BTreeSet<_>>() != ring)
        .collect()
}

fn ring_dfs(a: &[Site; 3], boundary: &BTreeSet<Site>, path: &mut Vec<Site>, out: &mut Vec<[Site; 8]>) {
    let last = *path.last().unwrap();
    if path.len() == 8 {
        if last.l1(path[0]) == 1 {
            out.push(path[..].try_into().unwrap());
        }
        return;
    }
    for t in neighbors(LatticeKind::Rect3d, last).unwrap() {
        let even = path.len() % 2 == 0;
        if a.contains(&t) || path.contains(&t) || (even && !boundary.contains(&t)) {
            continue;
        }
        // the walk must be able to return to path[0] in the remaining steps
        if t.l1(path[0]) as usize > 8 - path.len() {
            continue;
        }
        path.push(t);
        ring_dfs(a, boundary, path, out);
        path.pop();
    }
}

/// Arithmetic of the c-contribution argument for `x` missing c-contacts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelsAudit {
    pub x: u64,
    pub c: u64,
    /// zeros in the lucky chain
    pub z: u64,
    /// points per 1-contribution
    pub s: u64,
    /// free neighbours of a chain zero
    pub n: u64,
    /// score from c-contributions
    pub t: u64,
    pub s0: u64,
    pub s1: u64,
    pub s2: u64,
    pub straight_bound: u64,
    pub bent_bound: u64,
    pub intended: u64,
    pub straight_strict: bool,
    pub bent_strict: bool,
    /// `c + 1 > 8/x + 2`, as `x(c+1) > 8 + 2x`
    pub threshold: bool,
}

impl LevelsAudit {
    pub fn strict(&self) -> bool {
        self.straight_strict && self.bent_strict
    }
}

pub fn levels_bound_audit(x: u64, c: u64) -> LevelsAudit {
    let (z, s, n) = (4u64, 2u64, 4u64);
    let intended = 12 * (c + 1) + z * s * 2;
    let (t, s0, s1, s2, straight_bound, bent_bound);
    if x <= 4 {
        t = 12u64.saturating_sub(x) * (c + 1);
        s1 = (4 - x) * s * 3;
        s0 = x * s * n;
        s2 = s * 2;
        straight_bound = t + s1 + s0;
        // one zero may take two c-contacts; the s1 count cannot go negative
        bent_bound = 11u64.saturating_sub(x) * (c + 1) + s2 + 3u64.saturating_sub(x) * s * 3 + s0;
    } else {
        t = 12u64.saturating_sub(x) * (c + 1);
        s0 = z * s * n;
        s1 = 0;
        s2 = 0;
        straight_bound = t + s0;
        bent_bound = 11u64.saturating_sub(x) * (c + 1) + s0;
    }
    LevelsAudit {
        x,
        c,
        z,
        s,
        n,
        t,
        s0,
        s1,
        s2,
        straight_bound,
        bent_bound,
        intended,
        straight_strict: straight_bound < intended,
        bent_strict: bent_bound < intended,
        threshold: x * (c + 1) > 8 + 2 * x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::point_group;

    fn s(x: i32, y: i32, z: i32) -> Site {
        Site::new(x, y, z)
    }

    #[test]
    fn intended_is_valid() {
        for m in 0..=3 {
            let e = intended_embedding(m);
            validate_embedding(&e).unwrap();
            let lens: Vec<usize> = e.chains.iter().map(|c| c.sites.len()).collect();
            assert_eq!(lens, vec![8, 8, 8, 12 + 2 * m]);
        }
        let e = intended_embedding(0);
        let zeros: BTreeSet<Site> =
            e.chains[1].sites.iter().zip(e.chains[1].word.letters()).filter(|(_, &l)| l == 0).map(|(&p, _)| p).collect();
        assert_eq!(zeros, BTreeSet::from([s(0, 1, 0), s(0, -1, 0), s(0, 0, 1), s(0, 0, -1)]));
        let corners: Vec<Site> = e.chains[3].sites.iter().copied().filter(|p| p.x.abs() == 2 && p.z != -1).collect();
        assert_eq!(corners.len(), 4);
    }

    #[test]
    fn contacts_and_scores() {
        let e = intended_embedding(0);
        let pc = potential_contacts(&e).unwrap();
        assert!(pc.contains(&(s(0, 0, 0), s(0, 1, 0))));
        // chain edge between two 2s
        assert!(!pc.contains(&(s(-1, 0, 0), s(0, 0, 0))));
        let contents = e.contents();
        let c_contacts = pc.iter().filter(|(a, b)| contents[a].max(contents[b]) == 2 && contents[a].min(contents[b]) == 0).count();
        assert_eq!(c_contacts, 12);
        assert_eq!(embedding_score(&e, &HydroLevels::h_c(10)).unwrap(), 148);
        assert_eq!(embedding_score(&e, &HydroLevels::h_c(4)).unwrap(), 76);
        for m in 0..=3 {
            for c in [4, 10, 100] {
                assert_eq!(embedding_score(&intended_embedding(m), &HydroLevels::h_c(c)).unwrap(), 12 * (c + 1) + 16);
            }
        }
    }

    #[test]
    fn pair_values() {
        let h = HydroLevels::h_c(10);
        assert_eq!(pair_value(&h, 0, 2).unwrap(), 11);
        assert_eq!(pair_value(&h, 0, 0).unwrap(), 2);
        assert_eq!(pair_value(&h, 0, 1).unwrap(), 0);
        assert_eq!(pair_value(&h, 3, 0), Err(MultichainError::UnknownSymbol(3)));
    }

    #[test]
    fn violations() {
        let mut e = intended_embedding(0);
        e.chains[0].sites[0] = e.chains[1].sites[0];
        assert!(matches!(validate_embedding(&e), Err(MultichainError::BadStep { .. })));

        let sq = |dx: i32| vec![s(dx, 0, 0), s(dx + 1, 0, 0), s(dx + 1, 1, 0), s(dx, 1, 0)];
        let w = Word::parse("cyc:0101").unwrap();
        let overlap = Embedding {
            chains: vec![Chain { word: w.clone(), sites: sq(0) }, Chain { word: w.clone(), sites: sq(1) }],
        };
        assert!(matches!(validate_embedding(&overlap), Err(MultichainError::Overlap { .. })));

        let diag = Embedding { chains: vec![Chain { word: w.clone(), sites: vec![s(0, 0, 0), s(1, 1, 0), s(1, 0, 0), s(0, 1, 0)] }] };
        assert!(matches!(validate_embedding(&diag), Err(MultichainError::BadStep { chain: 0, i: 0, .. })));

        let far = Embedding {
            chains: vec![Chain { word: w.clone(), sites: sq(0) }, Chain { word: w.clone(), sites: sq(10) }],
        };
        assert!(potential_contacts(&far).unwrap().is_empty());
        let ones = Word::parse("cyc:1111").unwrap();
        let near = Embedding {
            chains: vec![Chain { word: ones.clone(), sites: sq(0) }, Chain { word: ones, sites: sq(2) }],
        };
        assert!(!potential_contacts(&near).unwrap().is_empty());
        assert_eq!(embedding_score(&near, &HydroLevels::h_c(10)).unwrap(), 0);
    }

    #[test]
    fn file_round_trip() {
        let e = intended_embedding(1);
        let text = e.render();
        assert!(text.starts_with("chain 01010101: (-1,1,0);"));
        assert_eq!(Embedding::parse(&text).unwrap(), e);
        assert!(Embedding::parse("chain 0101 (0,0,0)").is_err());
        assert!(Embedding::parse("# nothing\n\n").unwrap().chains.is_empty());
    }

    #[test]
    fn boundaries() {
        let straight = [s(-1, 0, 0), s(0, 0, 0), s(1, 0, 0)];
        let bent = [s(0, 1, 0), s(0, 0, 0), s(1, 0, 0)];
        assert_eq!(vertex_boundary(&straight).len(), 14);
        assert_eq!(vertex_boundary(&bent).len(), 13);
        assert_eq!(vertex_boundary(&[Site::ORIGIN]).len(), 6);
        for g in point_group(LatticeKind::Rect3d) {
            let st: Vec<Site> = straight.iter().map(|&p| g.apply(p)).collect();
            let be: Vec<Site> = bent.iter().map(|&p| g.apply(p)).collect();
            assert_eq!(vertex_boundary(&st).len(), 14);
            assert_eq!(vertex_boundary(&be).len(), 13);
            assert_eq!(classify_triple(st[0], st[1], st[2]), Ok(Triple::Straight));
            assert_eq!(classify_triple(be[0], be[1], be[2]), Ok(Triple::Bent));
        }
        assert_eq!(classify_triple(s(1, 0, 0), s(0, 0, 0), s(1, 0, 0)), Err(MultichainError::NotTriple));
    }

    #[test]
    fn ring_placements() {
        let even = enumerate_ring_placements(RingHypothesis::EvenIndex);
        // 4 starting midpoints times 2 directions
        assert_eq!(even.len(), 8);
        assert!(off_ring_placements(RingHypothesis::EvenIndex).is_empty());

        // only 1s touch the origin in these: the loop runs along the triple
        let any = enumerate_ring_placements(RingHypothesis::AnyIndex);
        assert_eq!(any.len(), 40);
        let off = off_ring_placements(RingHypothesis::AnyIndex);
        assert_eq!(off.len(), 32);
        let witness = [s(-1, -1, 0), s(0, -1, 0), s(1, -1, 0), s(1, -1, 1), s(1, 0, 1), s(0, 0, 1), s(-1, 0, 1), s(-1, -1, 1)];
        assert!(off.contains(&witness));
        assert!(off.iter().all(|f| f.iter().step_by(2).all(|p| p.l1(Site::ORIGIN) != 1)));

        let loose = enumerate_ring_placements(RingHypothesis::None);
        let images: BTreeSet<BTreeSet<Site>> = loose.iter().map(|f| f.iter().copied().collect()).collect();
        assert!(loose.len() > any.len());
        assert!(images.contains(&ring_image()));
    }

    #[test]
    fn audit() {
        let a = levels_bound_audit(1, 10);
        assert_eq!((a.straight_bound, a.intended), (147, 148));
        assert!(a.strict() && a.threshold);
        let a = levels_bound_audit(1, 9);
        assert_eq!(a.straight_bound, a.intended);
        assert!(!a.straight_strict && !a.threshold);
        assert!(levels_bound_audit(4, 4).straight_strict);
        for x in 1..=4 {
            for c in 10..40 {
                assert!(levels_bound_audit(x, c).strict(), "x={x} c={c}");
            }
        }
        // x > 4 needs only c >= 4
        assert!(levels_bound_audit(5, 4).strict());
    }
}
