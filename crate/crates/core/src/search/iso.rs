//! Maximum internal edges over connected site sets (fixed polyforms), by
//! Redelmeier's enumeration.

use std::collections::BTreeSet;

use super::{SearchError, SearchLimits};
use crate::lattice::{point_group, root_offset, step, LatticeKind, Site};
use crate::scoring::internal_edges;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoResult {
    pub n: usize,
    pub max_internal_edges: usize,
    /// One canonical site set per isometry class attaining the maximum.
    pub witnesses: Vec<Vec<Site>>,
    pub unique: bool,
}

fn limit(kind: LatticeKind) -> usize {
    match kind {
        LatticeKind::Rect2d => 12,
        LatticeKind::Tri => 10,
        LatticeKind::Rect3d => 9,
        LatticeKind::Hex => 14,
    }
}

/// Least normalised image of `set` under the point group.
pub fn canonical_set(kind: LatticeKind, set: &[Site]) -> Vec<Site> {
    point_group(kind)
        .iter()
        .map(|g| {
            let mut img: Vec<Site> = set.iter().map(|&s| g.apply(s)).collect();
            img.sort_unstable_by_key(|s| (s.z, s.y, s.x));
            let off = root_offset(kind, img[0]);
            img.into_iter().map(|s| s - off).collect::<Vec<Site>>()
        })
        .min()
        .unwrap()
}

struct Enumerator {
    kind: LatticeKind,
    n: usize,
    root: Site,
    width: i32,
    offset: i32,
    planar: bool,
    seen: Vec<bool>,
    inset: Vec<bool>,
    cells: Vec<Site>,
    edges: usize,
    best: usize,
    witnesses: BTreeSet<Vec<Site>>,
    nodes: u64,
    max_nodes: u64,
}

impl Enumerator {
    fn index(&self, s: Site) -> usize {
        let w = self.width;
        let z = if self.planar { 0 } else { s.z + self.offset };
        ((s.x + self.offset) + w * ((s.y + self.offset) + w * z)) as usize
    }

    /// Cells that may join a set whose least cell (in z, y, x order) is the root.
    fn allowed(&self, s: Site) -> bool {
        (s.z, s.y, s.x) > (self.root.z, self.root.y, self.root.x)
    }

    fn run(&mut self) {
        let r = self.root;
        let i = self.index(r);
        self.seen[i] = true;
        self.grow(vec![r]);
        self.seen[i] = false;
    }

    fn grow(&mut self, mut untried: Vec<Site>) {
        while let Some(c) = untried.pop() {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return;
            }
            let ci = self.index(c);
            let gained = (0..self.kind.coordination())
                .filter(|&d| self.inset[self.index(step(self.kind, c, d))])
                .count();
            self.inset[ci] = true;
            self.cells.push(c);
            self.edges += gained;
            if self.cells.len() == self.n {
                if self.edges >= self.best {
                    if self.edges > self.best {
                        self.best = self.edges;
                        self.witnesses.clear();
                    }
                    self.witnesses.insert(canonical_set(self.kind, &self.cells));
                }
            } else {
                let mut fresh = Vec::new();
                for d in 0..self.kind.coordination() {
                    let t = step(self.kind, c, d);
                    let ti = self.index(t);
                    if self.allowed(t) && !self.seen[ti] {
                        self.seen[ti] = true;
                        fresh.push(t);
                    }
                }
                let mut next = untried.clone();
                next.extend_from_slice(&fresh);
                self.grow(next);
                for t in fresh {
                    let ti = self.index(t);
                    self.seen[ti] = false;
                }
            }
            self.edges -= gained;
            self.cells.pop();
            self.inset[ci] = false;
        }
    }
}

/// Exhaustive maximum of internal edges over connected `n`-site sets.
pub fn max_internal_edges(kind: LatticeKind, n: usize, limits: &SearchLimits) -> Result<IsoResult, SearchError> {
    if n > limit(kind) {
        return Err(SearchError::TooLarge { kind, n, limit: limit(kind) });
    }
    if n == 0 {
        return Ok(IsoResult { n, max_internal_edges: 0, witnesses: vec![vec![]], unique: true });
    }
    let width = 2 * n as i32 + 3;
    let planar = kind.is_planar();
    let cells = if planar { width * width } else { width * width * width } as usize;
    let roots: &[Site] = if kind == LatticeKind::Hex { &[Site::ORIGIN, Site::planar(1, 0)] } else { &[Site::ORIGIN] };
    let mut best = 0;
    let mut witnesses = BTreeSet::new();
    let mut nodes = 0;
    for &root in roots {
        let mut e = Enumerator {
            kind,
            n,
            root,
            width,
            offset: n as i32 + 1,
            planar,
            seen: vec![false; cells],
            inset: vec![false; cells],
            cells: Vec::with_capacity(n),
            edges: 0,
            best: 0,
            witnesses: BTreeSet::new(),
            nodes,
            max_nodes: limits.max_nodes,
        };
        e.run();
        nodes = e.nodes;
        if nodes > limits.max_nodes {
            return Err(SearchError::Budget { best: best.max(e.best), nodes });
        }
        if e.best > best {
            best = e.best;
            witnesses.clear();
        }
        if e.best == best {
            witnesses.extend(e.witnesses);
        }
    }
    let witnesses: Vec<Vec<Site>> = witnesses.into_iter().collect();
    Ok(IsoResult { n, max_internal_edges: best, unique: witnesses.len() == 1, witnesses })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallSquare {
    pub radius: i32,
    pub ball_sites: usize,
    pub ball_edges: usize,
    pub square_side: i32,
    pub square_sites: usize,
    pub square_edges: usize,
}

/// Square-lattice L1 ball of radius `r` against the square of equal size.
pub fn ball_vs_square(r: i32) -> BallSquare {
    let ball: Vec<Site> = (-r..=r)
        .flat_map(|x| (-r..=r).map(move |y| Site::planar(x, y)))
        .filter(|s| s.x.abs() + s.y.abs() <= r)
        .collect();
    let side = (ball.len() as f64).sqrt().round() as i32;
    let square: Vec<Site> = (0..side).flat_map(|x| (0..side).map(move |y| Site::planar(x, y))).collect();
    BallSquare {
        radius: r,
        ball_sites: ball.len(),
        ball_edges: internal_edges(LatticeKind::Rect2d, &ball),
        square_side: side,
        square_sites: square.len(),
        square_edges: internal_edges(LatticeKind::Rect2d, &square),
    }
}

/// The radius-3 comparison: 25 sites each, 36 against 40 internal edges.
pub fn ball_vs_square_report() -> BallSquare {
    ball_vs_square(3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    fn square(k: i32) -> Vec<Site> {
        (0..k).flat_map(|x| (0..k).map(move |y| Site::planar(x, y))).collect()
    }

    // fixed polyomino counts (OEIS A001168) as an oracle for the enumerator
    #[test]
    fn counts_fixed_polyominoes() {
        let want = [1u64, 2, 6, 19, 63, 216, 760];
        for (i, &c) in want.iter().enumerate() {
            let n = i + 1;
            let mut e = Enumerator {
                kind: LatticeKind::Rect2d,
                n,
                root: Site::ORIGIN,
                width: 2 * n as i32 + 3,
                offset: n as i32 + 1,
                planar: true,
                seen: vec![false; (2 * n + 3).pow(2)],
                inset: vec![false; (2 * n + 3).pow(2)],
                cells: vec![],
                edges: 0,
                best: 0,
                witnesses: BTreeSet::new(),
                nodes: 0,
                max_nodes: u64::MAX,
            };
            // count leaves of size n: every node at depth n is one polyomino
            let mut leaves = 0u64;
            fn walk(e: &mut Enumerator, untried: Vec<Site>, leaves: &mut u64) {
                let mut untried = untried;
                while let Some(c) = untried.pop() {
                    let ci = e.index(c);
                    e.inset[ci] = true;
                    e.cells.push(c);
                    if e.cells.len() == e.n {
                        *leaves += 1;
                    } else {
                        let mut fresh = vec![];
                        for d in 0..4 {
                            let t = step(e.kind, c, d);
                            let ti = e.index(t);
                            if e.allowed(t) && !e.seen[ti] {
                                e.seen[ti] = true;
                                fresh.push(t);
                            }
                        }
                        let mut next = untried.clone();
                        next.extend_from_slice(&fresh);
                        walk(e, next, leaves);
                        for t in fresh {
                            let ti = e.index(t);
                            e.seen[ti] = false;
                        }
                    }
                    e.cells.pop();
                    e.inset[ci] = false;
                }
            }
            let ri = e.index(Site::ORIGIN);
            e.seen[ri] = true;
            walk(&mut e, vec![Site::ORIGIN], &mut leaves);
            assert_eq!(leaves, c, "n={n}");
        }
    }

    #[test]
    fn small_maxima() {
        let r = max_internal_edges(LatticeKind::Rect2d, 4, &lim()).unwrap();
        assert_eq!((r.max_internal_edges, r.unique), (4, true));
        assert_eq!(r.witnesses[0], canonical_set(LatticeKind::Rect2d, &square(2)));
        let r = max_internal_edges(LatticeKind::Tri, 3, &lim()).unwrap();
        assert_eq!((r.max_internal_edges, r.unique), (3, true));
        let r = max_internal_edges(LatticeKind::Hex, 6, &lim()).unwrap();
        assert_eq!((r.max_internal_edges, r.unique), (6, true));
        let r = max_internal_edges(LatticeKind::Rect2d, 5, &lim()).unwrap();
        assert_eq!(r.max_internal_edges, 5);
        assert!(max_internal_edges(LatticeKind::Rect2d, 13, &lim()).is_err());
    }

    #[test]
    fn ball_and_square() {
        let r = ball_vs_square_report();
        assert_eq!((r.ball_sites, r.ball_edges), (25, 36));
        assert_eq!((r.square_sites, r.square_edges), (25, 40));
        assert_eq!(ball_vs_square(0).ball_edges, 0);
    }

    #[test]
    fn strict_maximisers() {
        let cube: Vec<Site> = (0..8).map(|i| Site::new(i & 1, (i >> 1) & 1, i >> 2)).collect();
        let daisy: Vec<Site> = std::iter::once(Site::ORIGIN)
            .chain((0..6).map(|d| step(LatticeKind::Tri, Site::ORIGIN, d)))
            .collect();
        let cases = [
            (LatticeKind::Rect2d, square(3)),
            (LatticeKind::Tri, daisy),
            (LatticeKind::Rect3d, cube),
        ];
        for (kind, want) in cases {
            let r = max_internal_edges(kind, want.len(), &lim()).unwrap();
            assert_eq!(r.max_internal_edges, 12, "{kind}");
            assert!(r.unique, "{kind}");
            assert_eq!(r.witnesses[0], canonical_set(kind, &want));
        }
    }

    #[test]
    fn edge_count_sizes() {
        // 1x1, 2x2 squares and the 1-cube are also unique
        for (kind, n, e) in [(LatticeKind::Rect2d, 1, 0), (LatticeKind::Rect3d, 1, 0), (LatticeKind::Tri, 1, 0)] {
            let r = max_internal_edges(kind, n, &lim()).unwrap();
            assert_eq!((r.max_internal_edges, r.unique), (e, true));
        }
        let r = max_internal_edges(LatticeKind::Rect2d, 3, &lim()).unwrap();
        // straight and bent trominoes tie
        assert_eq!((r.max_internal_edges, r.witnesses.len()), (2, 2));
    }
}
