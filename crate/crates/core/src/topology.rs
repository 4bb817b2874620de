//! Knot diagrams of polygonal lattice curves: crossings, linking numbers and
//! Fox 3-colourings.
//!
//! Curves are projected along `v = (1, N, N^2)` with `N` larger than the
//! bounding box, so no vertex projects onto another edge and crossings lie in
//! edge interiors. All arithmetic is exact.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::constructions::decode_trefoil24;
use crate::fold::{letter_sites, Fold};
use crate::lattice::{LatticeKind, Site};
use crate::scoring::{contacts, internal_edges, score};
use crate::word::{i00, special_word, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("a closed curve needs at least 4 vertices, got {0}")]
    TooShort(usize),
    #[error("step {0} is not a unit step")]
    BadStep(usize),
    #[error("vertex {0} is revisited")]
    Revisit(Site),
    #[error("the curves share vertex {0}")]
    Intersect(Site),
    #[error("fold is not a closed rect3d fold")]
    NotClosedCubic,
    #[error("{0}")]
    Check(String),
}

/// A self-avoiding lattice polygon; the last vertex joins the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedCurve {
    vertices: Vec<Site>,
}

impl ClosedCurve {
    pub fn new(vertices: Vec<Site>) -> Result<ClosedCurve, TopologyError> {
        let n = vertices.len();
        if n < 4 {
            return Err(TopologyError::TooShort(n));
        }
        let mut seen = HashSet::new();
        for (i, &v) in vertices.iter().enumerate() {
            if !seen.insert(v) {
                return Err(TopologyError::Revisit(v));
            }
            if v.l1(vertices[(i + 1) % n]) != 1 {
                return Err(TopologyError::BadStep(i));
            }
        }
        Ok(ClosedCurve { vertices })
    }

    pub fn from_fold(f: &Fold) -> Result<ClosedCurve, TopologyError> {
        if !f.closed || f.kind != LatticeKind::Rect3d {
            return Err(TopologyError::NotClosedCubic);
        }
        let sites = f.sites().map_err(|e| TopologyError::Check(e.to_string()))?;
        ClosedCurve::new(sites)
    }

    pub fn vertices(&self) -> &[Site] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn edge(&self, i: usize) -> (Site, Site) {
        (self.vertices[i], self.vertices[(i + 1) % self.vertices.len()])
    }

    pub fn map(&self, f: impl Fn(Site) -> Site) -> ClosedCurve {
        ClosedCurve { vertices: self.vertices.iter().map(|&s| f(s)).collect() }
    }
}

/// Exact position along a curve: edge index plus a parameter `num/den` in (0,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    curve: usize,
    edge: usize,
    num: i128,
    den: i128,
}

impl Ord for Pos {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.curve, self.edge)
            .cmp(&(o.curve, o.edge))
            .then_with(|| (self.num * o.den).cmp(&(o.num * self.den)))
    }
}

impl PartialOrd for Pos {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub over_curve: usize,
    pub under_curve: usize,
    pub over_arc: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    pub arcs: usize,
    /// The `N` of the projection direction.
    pub n: i64,
}

impl Diagram {
    pub fn between(&self, a: usize, b: usize) -> impl Iterator<Item = &Crossing> {
        self.crossings
            .iter()
            .filter(move |c| (c.over_curve, c.under_curve) == (a, b) || (c.over_curve, c.under_curve) == (b, a))
    }
}

fn v3(s: Site) -> [i128; 3] {
    [s.x as i128, s.y as i128, s.z as i128]
}

fn sub(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn det(a: [i128; 3], b: [i128; 3], c: [i128; 3]) -> i128 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Smallest safe `N` for the given curves.
pub fn generic_n(curves: &[&ClosedCurve]) -> i64 {
    let all = curves.iter().flat_map(|c| c.vertices.iter());
    let mut span = 0;
    for k in 0..3 {
        let vals: Vec<i32> = all.clone().map(|s| s.coords()[k]).collect();
        span = span.max(vals.iter().max().unwrap() - vals.iter().min().unwrap());
    }
    span as i64 + 2
}

struct RawCrossing {
    over: Pos,
    under: Pos,
    sign: i8,
}

fn raw_crossings(curves: &[&ClosedCurve], n: i64) -> Vec<RawCrossing> {
    let n = n as i128;
    let v = [1, n, n * n];
    let mut out = Vec::new();
    let edges: Vec<(usize, usize)> =
        curves.iter().enumerate().flat_map(|(ci, c)| (0..c.len()).map(move |e| (ci, e))).collect();
    for (a, &(ca, ea)) in edges.iter().enumerate() {
        for &(cb, eb) in &edges[a + 1..] {
            let (p1, p2) = curves[ca].edge(ea);
            let (q1, q2) = curves[cb].edge(eb);
            let (dp, dq) = (sub(v3(p2), v3(p1)), sub(v3(q2), v3(q1)));
            // p1 + s dp = q1 + t dq + lambda v
            let d = det(dp, [-dq[0], -dq[1], -dq[2]], [-v[0], -v[1], -v[2]]);
            if d == 0 {
                continue;
            }
            let r = sub(v3(q1), v3(p1));
            let ds = det(r, [-dq[0], -dq[1], -dq[2]], [-v[0], -v[1], -v[2]]);
            let dt = det(dp, r, [-v[0], -v[1], -v[2]]);
            let dl = det(dp, [-dq[0], -dq[1], -dq[2]], r);
            let (sgn, d) = (d.signum(), d.abs());
            let (ds, dt, dl) = (ds * sgn, dt * sgn, dl * sgn);
            if ds <= 0 || ds >= d || dt <= 0 || dt >= d {
                continue;
            }
            assert!(dl != 0, "degenerate projection");
            let pa = Pos { curve: ca, edge: ea, num: ds, den: d };
            let pb = Pos { curve: cb, edge: eb, num: dt, den: d };
            // lambda > 0: the point on edge a is further along v, so it is over
            let (over, under, d_over, d_under) = if dl > 0 { (pa, pb, dp, dq) } else { (pb, pa, dq, dp) };
            let sign = det(d_over, d_under, v).signum() as i8;
            out.push(RawCrossing { over, under, sign });
        }
    }
    out
}

/// Projects one or two disjoint curves to a diagram, with arcs numbered per
/// under-crossing along each curve in order.
pub fn project(curves: &[&ClosedCurve], n: i64) -> Result<Diagram, TopologyError> {
    let mut seen = HashSet::new();
    for c in curves {
        for &v in &c.vertices {
            if !seen.insert(v) {
                return Err(TopologyError::Intersect(v));
            }
        }
    }
    let raw = raw_crossings(curves, n);
    let unders: BTreeSet<Pos> = raw.iter().map(|r| r.under).collect();
    assert_eq!(unders.len(), raw.len(), "two crossings at one point");
    // arc ids: for each curve, arcs start at each under-crossing; a curve with
    // none is one arc. Arc k of a curve ends at its k-th under-crossing.
    let mut base = Vec::new();
    let mut arcs = 0;
    for ci in 0..curves.len() {
        base.push(arcs);
        arcs += unders.iter().filter(|p| p.curve == ci).count().max(1);
    }
    let count_on = |ci: usize| unders.iter().filter(|p| p.curve == ci).count();
    // arc containing a non-under position: index of the first under-crossing
    // after it, wrapping to 0
    let arc_at = |p: &Pos| {
        let k = unders.iter().filter(|u| u.curve == p.curve && *u < p).count();
        let m = count_on(p.curve);
        base[p.curve] + if m == 0 { 0 } else { k % m }
    };
    let crossings = raw
        .iter()
        .map(|r| {
            let k = unders.iter().filter(|u| u.curve == r.under.curve && *u < &r.under).count();
            let m = count_on(r.under.curve);
            Crossing {
                over_curve: r.over.curve,
                under_curve: r.under.curve,
                over_arc: arc_at(&r.over),
                under_in: base[r.under.curve] + k,
                under_out: base[r.under.curve] + (k + 1) % m,
                sign: r.sign,
            }
        })
        .collect();
    Ok(Diagram { crossings, arcs, n })
}

fn linking_at(a: &ClosedCurve, b: &ClosedCurve, n: i64) -> Result<i64, TopologyError> {
    let d = project(&[a, b], n)?;
    let sum: i64 = d.between(0, 1).filter(|c| c.over_curve != c.under_curve).map(|c| c.sign as i64).sum();
    assert!(sum % 2 == 0, "odd inter-curve crossing sum");
    Ok(sum / 2)
}

/// Half the signed count of crossings between the two curves, computed for
/// two projection directions that must agree.
pub fn linking_number(a: &ClosedCurve, b: &ClosedCurve) -> Result<i64, TopologyError> {
    let n = generic_n(&[a, b]);
    let l = linking_at(a, b, n)?;
    let l2 = linking_at(a, b, 2 * n + 1)?;
    assert_eq!(l, l2, "linking number depends on projection");
    Ok(l)
}

fn rank_mod3(rows: &mut [Vec<u8>], cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = if rows[rank][c] == 1 { 1 } else { 2 };
        for x in rows[rank].iter_mut() {
            *x = (*x * inv) % 3;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + 3 * 3 - f * rows[rank][k]) % 3;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Arc colourings with `2 over = in + out (mod 3)` at every crossing:
/// `3^(arcs - rank)`.
pub fn fox3_count(d: &Diagram) -> u64 {
    let mut rows: Vec<Vec<u8>> = d
        .crossings
        .iter()
        .map(|c| {
            let mut row = vec![0u8; d.arcs];
            row[c.over_arc] = (row[c.over_arc] + 2) % 3;
            row[c.under_in] = (row[c.under_in] + 2) % 3;
            row[c.under_out] = (row[c.under_out] + 2) % 3;
            row
        })
        .collect();
    let r = rank_mod3(&mut rows, d.arcs);
    3u64.pow((d.arcs - r) as u32)
}

/// Fox count of a single curve, checked for two projection directions.
pub fn knot_fox3(c: &ClosedCurve) -> u64 {
    let n = generic_n(&[c]);
    let a = fox3_count(&project(&[c], n).expect("one curve"));
    let b = fox3_count(&project(&[c], 2 * n + 1).expect("one curve"));
    assert_eq!(a, b, "coloring count depends on projection");
    a
}

pub(crate) fn cube_sites(side: i32) -> BTreeSet<Site> {
    (0..side)
        .flat_map(|x| (0..side).flat_map(move |y| (0..side).map(move |z| Site::new(x, y, z))))
        .collect()
}

/// Unused free sites together with `head` and `home` form one component.
fn connected(free: &BTreeSet<Site>, used: &HashSet<Site>, head: Site, home: Site) -> bool {
    let open = |p: &Site| (free.contains(p) && !used.contains(p)) || *p == home;
    let total = free.iter().filter(|p| !used.contains(p)).count() + 1;
    let mut seen = HashSet::from([head]);
    let mut stack = vec![head];
    let mut reached = 0;
    while let Some(p) = stack.pop() {
        for q in crate::lattice::neighbors(LatticeKind::Rect3d, p).unwrap() {
            if open(&q) && seen.insert(q) {
                reached += 1;
                stack.push(q);
            }
        }
    }
    reached == total
}

/// DFS for a cycle through `free` that reads `word` from `start`: index `i`
/// lies in `zone` exactly when `word[i] == 0`.
pub(crate) fn patterned_cycle(
    free: &BTreeSet<Site>,
    zone: &BTreeSet<Site>,
    word: &[u8],
    start: Site,
    first: Site,
    budget: &mut u64,
) -> Option<Vec<Site>> {
    fn go(
        free: &BTreeSet<Site>,
        zone: &BTreeSet<Site>,
        word: &[u8],
        path: &mut Vec<Site>,
        used: &mut HashSet<Site>,
        budget: &mut u64,
    ) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let n = word.len();
        let cur = *path.last().unwrap();
        if path.len() == n {
            return cur.l1(path[0]) == 1;
        }
        let i = path.len();
        let mut options: Vec<Site> = crate::lattice::neighbors(LatticeKind::Rect3d, cur)
            .unwrap()
            .into_iter()
            .filter(|t| free.contains(t) && !used.contains(t) && zone.contains(t) == (word[i] == 0))
            .filter(|t| t.l1(path[0]) as usize <= n - i)
            .collect();
        // fewest onward exits first
        options.sort_by_key(|t| {
            crate::lattice::neighbors(LatticeKind::Rect3d, *t)
                .unwrap()
                .iter()
                .filter(|u| free.contains(u) && !used.contains(u))
                .count()
        });
        for t in options {
            // a free site with fewer than two free neighbours would be stranded
            used.insert(t);
            path.push(t);
            let stranded = crate::lattice::neighbors(LatticeKind::Rect3d, t).unwrap().into_iter().any(|u| {
                free.contains(&u)
                    && !used.contains(&u)
                    && crate::lattice::neighbors(LatticeKind::Rect3d, u)
                        .unwrap()
                        .iter()
                        .filter(|x| (free.contains(x) && !used.contains(x)) || **x == t || **x == path[0])
                        .count()
                        < 2
            });
            if !stranded && connected(free, used, t, path[0]) && go(free, zone, word, path, used, budget) {
                return true;
            }
            path.pop();
            used.remove(&t);
        }
        false
    }
    let mut path = vec![start, first];
    let mut used: HashSet<Site> = path.iter().copied().collect();
    if zone.contains(&start) != (word[0] == 0) || zone.contains(&first) != (word[1] == 0) {
        return None;
    }
    go(free, zone, word, &mut path, &mut used, budget).then_some(path)
}

/// The 8-loop and 56-loop filling the 4-cube, with the words `0^8` and the
/// long word placed so every zero lies in the 3-subcube at the origin.
#[derive(Debug, Clone)]
pub struct CubePair {
    pub short: ClosedCurve,
    pub long: ClosedCurve,
    pub short_word: Word,
    pub long_word: Word,
}

impl CubePair {
    pub fn linking(&self) -> i64 {
        linking_number(&self.short, &self.long).expect("disjoint by construction")
    }

    /// Combined HP score of both loops, counting contacts between them.
    pub fn score(&self) -> usize {
        let mut occ = std::collections::HashMap::new();
        for (ci, (c, w)) in [(&self.short, &self.short_word), (&self.long, &self.long_word)].into_iter().enumerate() {
            for (i, &p) in c.vertices.iter().enumerate() {
                occ.insert(p, (w.letters()[i], ci, i, c.len()));
            }
        }
        let mut total = 0;
        for (&p, &(l, ci, i, n)) in &occ {
            for t in crate::lattice::neighbors(LatticeKind::Rect3d, p).unwrap() {
                let Some(&(l2, cj, j, _)) = occ.get(&t) else { continue };
                let chained = ci == cj && ((i + 1) % n == j || (j + 1) % n == i);
                if p < t && l == 0 && l2 == 0 && !chained {
                    total += 1;
                }
            }
        }
        total
    }
}

fn build_pair(short: Vec<Site>, start: Site, first: Site) -> CubePair {
    let short_word = special_word("link8").expect("catalog");
    let long_word = special_word("link56").expect("catalog");
    let occupied: BTreeSet<Site> = short.iter().copied().collect();
    let free: BTreeSet<Site> = cube_sites(4).difference(&occupied).copied().collect();
    let zone: BTreeSet<Site> = cube_sites(3).difference(&occupied).copied().collect();
    let mut budget = 10_000_000;
    let long = patterned_cycle(&free, &zone, long_word.letters(), start, first, &mut budget).expect("cube pair search");
    CubePair {
        short: ClosedCurve::new(short).expect("ring"),
        long: ClosedCurve::new(long).expect("search returns a cycle"),
        short_word,
        long_word,
    }
}

/// The 8-loop rings the centre `(1,1,1)` of the 3-subcube in the plane `x = 1`;
/// the long loop starts at that centre, so it threads the ring once.
pub fn build_linked_cube_embedding() -> CubePair {
    let ring: Vec<Site> = [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0)]
        .iter()
        .map(|&(y, z)| Site::new(1, y, z))
        .collect();
    build_pair(ring, Site::new(1, 1, 1), Site::new(0, 1, 1))
}

/// The 8-loop is a Hamiltonian cycle of the 2-cube at the origin, which no
/// lattice edge can thread.
pub fn build_unlinked_cube_embedding() -> CubePair {
    let ring = vec![
        Site::new(0, 0, 0),
        Site::new(1, 0, 0),
        Site::new(1, 1, 0),
        Site::new(0, 1, 0),
        Site::new(0, 1, 1),
        Site::new(1, 1, 1),
        Site::new(1, 0, 1),
        Site::new(0, 0, 1),
    ];
    build_pair(ring, Site::new(0, 2, 1), Site::new(0, 2, 2))
}

/// Word-index gaps between the two strands at each crossing and the contacts
/// that fall between them, as a description of how crossings are separated
/// by scored points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingGap {
    pub over_edge: usize,
    pub under_edge: usize,
    /// Contacts with one index strictly inside each cyclic interval between
    /// the two strands.
    pub contacts_between: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrefoilReport {
    pub fold: Fold,
    pub closed: bool,
    pub length: usize,
    pub score: usize,
    pub zeros_cube: bool,
    pub zero_internal_edges: usize,
    pub chain_00_edges: usize,
    pub crossings: usize,
    pub fox3: u64,
    pub gaps: Vec<CrossingGap>,
}

impl TrefoilReport {
    pub fn holds(&self) -> bool {
        self.closed
            && self.length == 24
            && self.score == 6
            && self.zeros_cube
            && self.zero_internal_edges - self.chain_00_edges == self.score
            && self.fox3 == 9
    }
}

/// Separation report for a closed cubic fold.
pub fn crossing_gaps(f: &Fold, w: &Word) -> Result<Vec<CrossingGap>, TopologyError> {
    let curve = ClosedCurve::from_fold(f)?;
    let n = generic_n(&[&curve]);
    let raw = raw_crossings(&[&curve], n);
    let cs = contacts(f, w).map_err(|e| TopologyError::Check(e.to_string()))?;
    let len = curve.len();
    // position strictly between edges a and b going forward from a
    let inside = |a: usize, b: usize, i: usize| (i + len - a) % len > 0 && (i + len - a) % len <= (b + len - a) % len;
    Ok(raw
        .iter()
        .map(|r| {
            let (a, b) = (r.over.edge, r.under.edge);
            let between = cs.iter().filter(|&&(i, j)| inside(a, b, i) != inside(a, b, j)).count();
            CrossingGap { over_edge: a, under_edge: b, contacts_between: between }
        })
        .collect())
}

pub fn verify_trefoil24() -> Result<TrefoilReport, TopologyError> {
    let d = decode_trefoil24().map_err(|e| TopologyError::Check(e.to_string()))?;
    let w = special_word("trefoil24").expect("catalog");
    let f = d.fold;
    let curve = ClosedCurve::from_fold(&f)?;
    let zeros = letter_sites(&f, &w, 0).map_err(|e| TopologyError::Check(e.to_string()))?;
    let diagram = project(&[&curve], generic_n(&[&curve]))?;
    Ok(TrefoilReport {
        closed: f.closed,
        length: curve.len(),
        score: score(&f, &w).map_err(|e| TopologyError::Check(e.to_string()))?,
        zeros_cube: crate::fold::is_box(&zeros, [2, 2, 2]),
        zero_internal_edges: internal_edges(LatticeKind::Rect3d, &zeros),
        chain_00_edges: i00(&w),
        crossings: diagram.crossings.len(),
        fox3: knot_fox3(&curve),
        gaps: crossing_gaps(&f, &w)?,
        fold: f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::point_group;

    fn s(x: i32, y: i32, z: i32) -> Site {
        Site::new(x, y, z)
    }

    fn curve(v: &[(i32, i32, i32)]) -> ClosedCurve {
        ClosedCurve::new(v.iter().map(|&(x, y, z)| s(x, y, z)).collect()).unwrap()
    }

    // 2x2 rectangles: one in the xy-plane around (1,1,0), one in the xz-plane
    // through (1,1,0)'s neighbourhood
    fn hopf() -> (ClosedCurve, ClosedCurve) {
        let a = curve(&[(0, 0, 0), (1, 0, 0), (2, 0, 0), (2, 1, 0), (2, 2, 0), (1, 2, 0), (0, 2, 0), (0, 1, 0)]);
        let b = curve(&[(1, 1, -1), (1, 1, 0), (1, 1, 1), (2, 1, 1), (3, 1, 1), (3, 1, 0), (3, 1, -1), (2, 1, -1)]);
        (a, b)
    }

    fn square(dx: i32) -> ClosedCurve {
        curve(&[(dx, 0, 0), (dx + 1, 0, 0), (dx + 1, 1, 0), (dx, 1, 0)])
    }

    // independent oracle: try every colouring
    fn fox3_brute(d: &Diagram) -> u64 {
        let mut count = 0;
        let mut col = vec![0u8; d.arcs];
        loop {
            if d.crossings.iter().all(|c| (2 * col[c.over_arc] + 6 - col[c.under_in] - col[c.under_out]) % 3 == 0) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == d.arcs {
                    return count;
                }
                col[i] += 1;
                if col[i] < 3 {
                    break;
                }
                col[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn curve_checks() {
        assert!(matches!(ClosedCurve::new(vec![s(0, 0, 0), s(1, 0, 0)]), Err(TopologyError::TooShort(2))));
        assert!(matches!(
            ClosedCurve::new(vec![s(0, 0, 0), s(1, 0, 0), s(1, 1, 0), s(1, 2, 0)]),
            Err(TopologyError::BadStep(3))
        ));
    }

    #[test]
    fn planar_square_is_trivial() {
        let sq = square(0);
        let d = project(&[&sq], generic_n(&[&sq])).unwrap();
        assert_eq!((d.crossings.len(), d.arcs), (0, 1));
        assert_eq!(fox3_count(&d), 3);
        assert_eq!(linking_number(&square(0), &square(5)).unwrap(), 0);
        let d = project(&[&square(0), &square(5)], 9).unwrap();
        assert_eq!(d.between(0, 1).count(), 0);
    }

    #[test]
    fn hopf_link() {
        let (a, b) = hopf();
        let l = linking_number(&a, &b).unwrap();
        assert_eq!(l.abs(), 1);
        assert_eq!(linking_number(&b, &a).unwrap(), l);
        // reversing one curve flips the sign
        let rev = ClosedCurve::new(b.vertices().iter().rev().copied().collect()).unwrap();
        assert_eq!(linking_number(&a, &rev).unwrap(), -l);
        for g in point_group(LatticeKind::Rect3d) {
            let (ga, gb) = (a.map(|p| g.apply(p)), b.map(|p| g.apply(p)));
            assert_eq!(linking_number(&ga, &gb).unwrap().abs(), 1);
        }
        let shift = |p: Site| p + s(3, -7, 2);
        assert_eq!(linking_number(&a.map(shift), &b.map(shift)).unwrap(), l);
    }

    #[test]
    fn intersecting_curves_rejected() {
        assert!(matches!(linking_number(&square(0), &square(1)), Err(TopologyError::Intersect(_))));
    }

    #[test]
    fn fox_rank_matches_brute_force() {
        let (a, b) = hopf();
        let t = verify_trefoil24().unwrap();
        let tc = ClosedCurve::from_fold(&t.fold).unwrap();
        for d in [
            project(&[&tc], generic_n(&[&tc])).unwrap(),
            project(&[&tc], 3 * generic_n(&[&tc])).unwrap(),
            project(&[&a, &b], generic_n(&[&a, &b])).unwrap(),
        ] {
            assert!(d.arcs <= 14);
            assert_eq!(fox3_count(&d), fox3_brute(&d));
        }
    }

    #[test]
    fn trefoil() {
        let t = verify_trefoil24().unwrap();
        assert!(t.holds(), "{t:?}");
        assert!(t.crossings >= 3);
        assert_eq!((t.zero_internal_edges, t.chain_00_edges), (12, 6));
        assert_eq!(t.gaps.len(), t.crossings);
    }

    #[test]
    fn cube_pairs() {
        for (pair, want) in [(build_linked_cube_embedding(), 1), (build_unlinked_cube_embedding(), 0)] {
            assert_eq!((pair.short.len(), pair.long.len()), (8, 56));
            let all: BTreeSet<Site> = pair.short.vertices().iter().chain(pair.long.vertices()).copied().collect();
            assert_eq!(all, cube_sites(4));
            assert_eq!(pair.linking().abs(), want);
            let zeros: BTreeSet<Site> = pair
                .short
                .vertices()
                .iter()
                .zip(pair.short_word.letters())
                .chain(pair.long.vertices().iter().zip(pair.long_word.letters()))
                .filter(|(_, &l)| l == 0)
                .map(|(&p, _)| p)
                .collect();
            assert_eq!(zeros, cube_sites(3));
        }
    }

    #[test]
    fn separated_pairs_do_not_link() {
        let (a, b) = hopf();
        let far = b.map(|p| p + s(10, 0, 0));
        assert_eq!(linking_number(&a, &far).unwrap(), 0);
        let above = a.map(|p| p + s(0, 0, 5));
        assert_eq!(linking_number(&a, &above).unwrap(), 0);
    }
}
