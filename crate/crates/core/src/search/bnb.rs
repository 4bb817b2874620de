//! Depth-first branch and bound over self-avoiding walks.
//!
//! Moves are tried in alphabet order, so the first fold reaching a value is
//! the lexicographically least one with that value. Parallel runs split the
//! tree into prefixes (also in alphabet order) and merge by
//! (value, prefix index), which makes the result independent of scheduling.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicI64, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{SearchError, SearchLimits};
use crate::bounds::caps;
use crate::fold::Fold;
use crate::lattice::{distance_lower_bound, point_group, root_offset, step, LatticeKind, Move, Site};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Exact J when `exact`, otherwise the best score found.
    pub value: usize,
    pub witness: Option<Fold>,
    pub exact: bool,
    pub nodes: u64,
    /// Bound evaluated at the root.
    pub upper_bound: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Start,
    Straight,
    Plane,
    Free,
}

fn allowed(kind: LatticeKind, phase: Phase) -> &'static [u8] {
    use LatticeKind::*;
    match (kind, phase) {
        (_, Phase::Start) => &[0],
        (Rect2d | Rect3d, Phase::Straight) => &[0, 1],
        (Tri, Phase::Straight) => &[0, 2, 3],
        (Rect3d, Phase::Plane) => &[0, 1, 2, 3, 4],
        (Hex, _) => &[0, 1, 2],
        (Rect2d, _) => &[0, 1, 2, 3],
        _ => &[0, 1, 2, 3, 4, 5],
    }
}

fn advance(kind: LatticeKind, phase: Phase, d: u8) -> Phase {
    use LatticeKind::*;
    match (kind, phase) {
        (Hex, _) => Phase::Free,
        (_, Phase::Start) => Phase::Straight,
        (Rect2d, Phase::Straight) if d == 1 => Phase::Free,
        (Rect3d, Phase::Straight) if d == 1 => Phase::Plane,
        (Tri, Phase::Straight) if d == 2 || d == 3 => Phase::Free,
        (Rect3d, Phase::Plane) if d == 4 => Phase::Free,
        (_, p) => p,
    }
}

struct Problem {
    kind: LatticeKind,
    n: usize,
    letters: Vec<u8>,
    closed: bool,
    bipartite: bool,
    /// `suffix[c][i]`: capacity of zeros of class `c` at index `>= i`.
    suffix: [Vec<usize>; 2],
    /// Largest zero index of each class.
    last: [Option<usize>; 2],
    width: i32,
    offset: i32,
    cells: usize,
}

impl Problem {
    fn new(kind: LatticeKind, w: &Word, closed: bool) -> Problem {
        let n = w.len();
        let letters = w.letters().to_vec();
        let bipartite = kind.is_bipartite();
        let cap = caps(kind, &letters, closed);
        let class = |i: usize| if bipartite { i & 1 } else { 0 };
        let mut suffix = [vec![0; n + 1], vec![0; n + 1]];
        for i in (0..n).rev() {
            for (c, s) in suffix.iter_mut().enumerate() {
                s[i] = s[i + 1] + if class(i) == c { cap[i] } else { 0 };
            }
        }
        let mut last = [None, None];
        for (i, &l) in letters.iter().enumerate() {
            if l == 0 {
                last[class(i)] = Some(i);
            }
        }
        let width = 2 * n as i32 + 3;
        let cells = if kind.is_planar() { width * width } else { width * width * width } as usize;
        Problem { kind, n, letters, closed, bipartite, suffix, last, width, offset: n as i32 + 1, cells }
    }

    fn class(&self, i: usize) -> usize {
        if self.bipartite {
            i & 1
        } else {
            0
        }
    }

    #[inline]
    fn cell(&self, s: Site) -> usize {
        let w = self.width;
        ((s.x + self.offset) + w * ((s.y + self.offset) + w * (s.z + if self.kind.is_planar() { 0 } else { self.offset })))
            as usize
    }
}

struct Shared {
    best: AtomicI64,
    /// Lowest task index that reached `stop_at`.
    stop_task: AtomicUsize,
    aborted: AtomicBool,
    nodes: AtomicU64,
    started: Instant,
    limits: SearchLimits,
}

struct State<'a> {
    p: &'a Problem,
    grid: Vec<u32>,
    pos: Vec<Site>,
    dirs: Vec<u8>,
    zeros: Vec<usize>,
    score: usize,
    phase: Phase,
    task: usize,
    local_best: i64,
    best_dirs: Option<Vec<u8>>,
    stop_at: i64,
    pending_nodes: u64,
    collect: Option<Vec<Vec<u8>>>,
}

enum Flow {
    Go,
    Stop,
}

impl<'a> State<'a> {
    fn new(p: &'a Problem, task: usize, floor: i64, stop_at: i64) -> State<'a> {
        let mut s = State {
            p,
            grid: vec![0; p.cells],
            pos: Vec::with_capacity(p.n),
            dirs: Vec::with_capacity(p.n),
            zeros: Vec::new(),
            score: 0,
            phase: Phase::Start,
            task,
            local_best: floor - 1,
            best_dirs: None,
            stop_at,
            pending_nodes: 0,
            collect: None,
        };
        s.place(Site::ORIGIN);
        s
    }

    fn free(&self, t: Site) -> bool {
        self.grid[self.p.cell(t)] == 0
    }

    fn place(&mut self, t: Site) {
        let i = self.pos.len();
        let p = self.p;
        if p.letters[i] == 0 {
            for d in 0..p.kind.coordination() {
                let j = self.grid[p.cell(step(p.kind, t, d))];
                if j == 0 {
                    continue;
                }
                let j = j as usize - 1;
                if p.letters[j] == 0 && j + 1 < i && !(p.closed && j == 0 && i + 1 == p.n) {
                    self.score += 1;
                }
            }
            self.zeros.push(i);
        }
        self.grid[p.cell(t)] = i as u32 + 1;
        self.pos.push(t);
    }

    fn unplace(&mut self) {
        let p = self.p;
        let t = self.pos.pop().unwrap();
        let i = self.pos.len();
        self.grid[p.cell(t)] = 0;
        if p.letters[i] == 0 {
            self.zeros.pop();
            for d in 0..p.kind.coordination() {
                let j = self.grid[p.cell(step(p.kind, t, d))];
                if j == 0 {
                    continue;
                }
                let j = j as usize - 1;
                if p.letters[j] == 0 && j + 1 < i && !(p.closed && j == 0 && i + 1 == p.n) {
                    self.score -= 1;
                }
            }
        }
    }

    fn push(&mut self, d: u8) -> bool {
        let end = *self.pos.last().unwrap();
        let t = step(self.p.kind, end, d as usize);
        if !self.free(t) {
            return false;
        }
        if self.p.closed {
            let remaining = (self.p.n - self.pos.len()) as u32;
            if distance_lower_bound(self.p.kind, t, Site::ORIGIN) > remaining {
                return false;
            }
        }
        self.place(t);
        self.dirs.push(d);
        self.phase = advance(self.p.kind, self.phase, d);
        true
    }

    fn pop(&mut self, phase: Phase) {
        self.unplace();
        self.dirs.pop();
        self.phase = phase;
    }

    /// Admissible bound on contacts still to come.
    fn future(&self) -> usize {
        let p = self.p;
        let cur = self.pos.len();
        if cur == p.n {
            return 0;
        }
        let end = self.pos[cur - 1];
        let cap = [p.suffix[0][cur], p.suffix[1][cur]];
        let mut open = [0usize; 2];
        for &z in &self.zeros {
            let c = p.class(z);
            let filler = if p.bipartite { 1 - c } else { 0 };
            let reach = match p.last[filler] {
                Some(j) if j >= cur => (j + 1 - cur) as u32,
                _ => continue,
            };
            let s = self.pos[z];
            let mut k = 0usize;
            for d in 0..p.kind.coordination() {
                let t = step(p.kind, s, d);
                if self.free(t) && distance_lower_bound(p.kind, end, t) <= reach {
                    k += 1;
                }
            }
            if z + 1 == cur {
                k = k.saturating_sub(1);
            }
            open[c] += k;
        }
        if p.bipartite {
            (cap[1] + open[1].min(cap[0])).min(cap[0] + open[0].min(cap[1]))
        } else {
            (cap[0] + open[0].min(cap[0])) / 2
        }
    }

    fn prunable(&self, shared: &Shared) -> bool {
        let bound = (self.score + self.future()) as i64;
        bound <= self.local_best || bound < shared.best.load(Ordering::Relaxed)
    }

    fn count_node(&mut self, shared: &Shared) -> bool {
        self.pending_nodes += 1;
        if self.pending_nodes >= 1 << 12 {
            let total = shared.nodes.fetch_add(self.pending_nodes, Ordering::Relaxed) + self.pending_nodes;
            self.pending_nodes = 0;
            if total > shared.limits.max_nodes || shared.started.elapsed() > shared.limits.max_time {
                shared.aborted.store(true, Ordering::Relaxed);
            }
        }
        !shared.aborted.load(Ordering::Relaxed) && shared.stop_task.load(Ordering::Relaxed) >= self.task
    }

    fn leaf(&mut self, shared: &Shared) -> Flow {
        if self.p.closed && !crate::lattice::is_adjacent(self.p.kind, *self.pos.last().unwrap(), Site::ORIGIN) {
            return Flow::Go;
        }
        let v = self.score as i64;
        if let Some(all) = self.collect.as_mut() {
            if v > self.local_best {
                all.push(self.dirs.clone());
            }
            return Flow::Go;
        }
        if v > self.local_best {
            self.local_best = v;
            self.best_dirs = Some(self.dirs.clone());
            shared.best.fetch_max(v, Ordering::Relaxed);
            if v >= self.stop_at {
                shared.stop_task.fetch_min(self.task, Ordering::Relaxed);
                return Flow::Stop;
            }
        }
        Flow::Go
    }

    fn dfs(&mut self, shared: &Shared) -> Flow {
        if self.pos.len() == self.p.n {
            return self.leaf(shared);
        }
        if !self.count_node(shared) {
            return Flow::Stop;
        }
        let phase = self.phase;
        for &d in allowed(self.p.kind, phase) {
            if !self.push(d) {
                continue;
            }
            let flow = if self.prunable(shared) { Flow::Go } else { self.dfs(shared) };
            self.pop(phase);
            if let Flow::Stop = flow {
                return Flow::Stop;
            }
        }
        Flow::Go
    }
}

/// Move prefixes of a fixed depth in alphabet order.
fn frontier(p: &Problem, want: usize) -> Vec<Vec<u8>> {
    let mut level: Vec<Vec<u8>> = vec![vec![]];
    let max_depth = p.n.saturating_sub(1).min(12);
    let mut depth = 0;
    while level.len() < want && depth < max_depth {
        let mut next = Vec::new();
        for prefix in &level {
            let mut st = State::new(p, 0, 0, i64::MAX);
            for &d in prefix {
                assert!(st.push(d));
            }
            for &d in allowed(p.kind, st.phase) {
                let phase = st.phase;
                if st.push(d) {
                    next.push(st.dirs.clone());
                    st.pop(phase);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
        depth += 1;
    }
    level
}

struct PassResult {
    best: Option<(i64, Vec<u8>)>,
    aborted: bool,
}

fn run_pass(p: &Problem, limits: &SearchLimits, nodes: &AtomicU64, started: Instant, floor: i64, stop_at: i64) -> PassResult {
    let shared = Shared {
        best: AtomicI64::new(floor - 1),
        stop_task: AtomicUsize::new(usize::MAX),
        aborted: AtomicBool::new(false),
        nodes: AtomicU64::new(nodes.load(Ordering::Relaxed)),
        started,
        limits: *limits,
    };
    let run_task = |task: usize, prefix: &[u8]| -> Option<(i64, usize, Vec<u8>)> {
        let mut st = State::new(p, task, floor, stop_at);
        for &d in prefix {
            if !st.push(d) {
                return None;
            }
        }
        if st.prunable(&shared) {
            return None;
        }
        st.dfs(&shared);
        shared.nodes.fetch_add(st.pending_nodes, Ordering::Relaxed);
        st.best_dirs.map(|d| (st.local_best, task, d))
    };
    let results: Vec<(i64, usize, Vec<u8>)> = if limits.workers <= 1 {
        run_task(0, &[]).into_iter().collect()
    } else {
        let tasks = frontier(p, 16 * limits.workers);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(limits.workers).build().expect("thread pool");
        pool.install(|| tasks.par_iter().enumerate().filter_map(|(i, pre)| run_task(i, pre)).collect())
    };
    nodes.store(shared.nodes.load(Ordering::Relaxed), Ordering::Relaxed);
    let best = results
        .into_iter()
        .min_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)))
        .map(|(v, _, d)| (v, d));
    PassResult { best, aborted: shared.aborted.load(Ordering::Relaxed) }
}

fn check_word(kind: LatticeKind, w: &Word, closed: bool) -> Result<(), SearchError> {
    if w.has_twos() {
        return Err(SearchError::LetterTwo);
    }
    let n = w.len();
    if closed && (n < 3 || (kind.is_bipartite() && n % 2 == 1) || (kind == LatticeKind::Hex && n < 6)) {
        return Err(SearchError::NoClosedFold(n));
    }
    Ok(())
}

fn to_fold(p: &Problem, dirs: &[u8]) -> Fold {
    let mut moves: Vec<Move> = dirs.iter().map(|&d| Move::from_index(p.kind, d as usize)).collect();
    if p.closed {
        let mut end = Site::ORIGIN;
        for &d in dirs {
            end = step(p.kind, end, d as usize);
        }
        let back = crate::lattice::direction_between(p.kind, end, Site::ORIGIN).expect("closing step");
        moves.push(Move::from_index(p.kind, back));
    }
    Fold::new(p.kind, moves, p.closed)
}

/// Exact maximum score of `w` over all open (or closed) folds.
pub fn optimal(kind: LatticeKind, w: &Word, closed: bool, limits: &SearchLimits) -> Result<SearchOutcome, SearchError> {
    check_word(kind, w, closed)?;
    let p = Problem::new(kind, w, closed);
    let root = State::new(&p, 0, 0, 0);
    let ub = (root.score + root.future()) as i64;
    let nodes = AtomicU64::new(0);
    let started = Instant::now();
    let mut known_ub = ub;
    let mut floors = vec![ub];
    if ub >= 1 {
        floors.push(ub - 1);
    }
    if ub >= 2 {
        floors.push(0);
    }
    for floor in floors {
        let r = run_pass(&p, limits, &nodes, started, floor, known_ub);
        let total = nodes.load(Ordering::Relaxed);
        if r.aborted {
            return Ok(SearchOutcome {
                value: r.best.as_ref().map_or(0, |b| b.0 as usize),
                witness: r.best.map(|(_, d)| to_fold(&p, &d)),
                exact: false,
                nodes: total,
                upper_bound: ub as usize,
            });
        }
        if let Some((v, d)) = r.best {
            return Ok(SearchOutcome {
                value: v as usize,
                witness: Some(to_fold(&p, &d)),
                exact: true,
                nodes: total,
                upper_bound: ub as usize,
            });
        }
        known_ub = floor - 1;
    }
    Err(SearchError::NoClosedFold(w.len()))
}

/// Key of a fold's isometry class: least normalised site sequence over the
/// point group.
pub(crate) fn fold_key(f: &Fold) -> Vec<Site> {
    let sites = f.sites().expect("valid fold");
    point_group(f.kind)
        .iter()
        .map(|g| {
            let img: Vec<Site> = sites.iter().map(|&s| g.apply(s)).collect();
            let off = root_offset(f.kind, img[0]);
            img.into_iter().map(|s| s - off).collect::<Vec<Site>>()
        })
        .min()
        .unwrap()
}

/// All optimal folds, one per isometry class, ordered by move string.
pub fn enumerate_optima(kind: LatticeKind, w: &Word, closed: bool, limits: &SearchLimits) -> Result<Vec<Fold>, SearchError> {
    let best = optimal(kind, w, closed, limits)?;
    if !best.exact {
        return Err(SearchError::Budget { best: best.value, nodes: best.nodes });
    }
    let p = Problem::new(kind, w, closed);
    let shared = Shared {
        best: AtomicI64::new(best.value as i64 - 1),
        stop_task: AtomicUsize::new(usize::MAX),
        aborted: AtomicBool::new(false),
        nodes: AtomicU64::new(best.nodes),
        started: Instant::now(),
        limits: *limits,
    };
    let mut st = State::new(&p, 0, best.value as i64, i64::MAX);
    st.collect = Some(Vec::new());
    if !st.prunable(&shared) {
        st.dfs(&shared);
    }
    if shared.aborted.load(Ordering::Relaxed) {
        return Err(SearchError::Budget { best: best.value, nodes: shared.nodes.load(Ordering::Relaxed) });
    }
    let mut classes: BTreeMap<Vec<Site>, Fold> = BTreeMap::new();
    for dirs in st.collect.take().unwrap() {
        let f = to_fold(&p, &dirs);
        classes.entry(fold_key(&f)).or_insert(f);
    }
    let mut out: Vec<Fold> = classes.into_values().collect();
    out.sort_by_key(|f| f.moves.iter().map(|m| m.index(kind).unwrap()).collect::<Vec<_>>());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fold::validate;
    use crate::scoring::score;
    use crate::word::rect_family;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    /// Plain enumeration of every walk, no pruning or symmetry.
    fn brute(kind: LatticeKind, word: &Word) -> usize {
        fn go(kind: LatticeKind, word: &Word, path: &mut Vec<Site>, best: &mut usize) {
            if path.len() == word.len() {
                let f = Fold::from_sites(kind, path, false).unwrap();
                *best = (*best).max(score(&f, word).unwrap());
                return;
            }
            for d in 0..kind.coordination() {
                let t = step(kind, *path.last().unwrap(), d);
                if !path.contains(&t) {
                    path.push(t);
                    go(kind, word, path, best);
                    path.pop();
                }
            }
        }
        let mut best = 0;
        go(kind, word, &mut vec![Site::ORIGIN], &mut best);
        best
    }

    #[test]
    fn small_values() {
        let r = optimal(LatticeKind::Rect2d, &w("0000"), false, &lim()).unwrap();
        assert_eq!((r.value, r.exact), (1, true));
        assert_eq!(r.witness.unwrap().move_string(), "uld");
        let r = optimal(LatticeKind::Rect2d, &w("1111111"), false, &lim()).unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(r.witness.unwrap().move_string(), "uuuuuu");
        let r = optimal(LatticeKind::Tri, &w("0"), false, &lim()).unwrap();
        assert_eq!(r.value, 0);
        assert!(optimal(LatticeKind::Rect2d, &w("012"), false, &lim()).is_err());
    }

    #[test]
    fn agrees_with_brute_force() {
        let words = ["00100", "010010", "0000000", "0110100", "1001001", "00110"];
        for kind in LatticeKind::ALL {
            for s in words {
                let word = w(s);
                let r = optimal(kind, &word, false, &lim()).unwrap();
                assert_eq!(r.value, brute(kind, &word), "{kind} {s}");
                let f = r.witness.unwrap();
                assert_eq!(score(&f, &word).unwrap(), r.value);
                assert!(validate(&f, &word).is_ok());
            }
        }
    }

    #[test]
    fn closed_search() {
        let r = optimal(LatticeKind::Rect2d, &w("cyc:0000"), true, &lim()).unwrap();
        assert_eq!(r.value, 0);
        let r = optimal(LatticeKind::Rect2d, &w("cyc:000000"), true, &lim()).unwrap();
        assert_eq!(r.value, 1);
        let f = r.witness.unwrap();
        assert!(validate(&f, &w("cyc:000000")).is_ok());
        let r = optimal(LatticeKind::Hex, &w("cyc:000000"), true, &lim()).unwrap();
        assert_eq!(r.value, 0);
        let r = optimal(LatticeKind::Tri, &w("cyc:0000"), true, &lim()).unwrap();
        assert_eq!(r.value, 1);
        assert!(matches!(optimal(LatticeKind::Rect2d, &w("cyc:000"), true, &lim()), Err(SearchError::NoClosedFold(3))));
        assert!(optimal(LatticeKind::Hex, &w("cyc:0000"), true, &lim()).is_err());
    }

    #[test]
    fn workers_do_not_change_results() {
        for s in ["0010010100", "0101001010", "000110000"] {
            for kind in LatticeKind::ALL {
                let a = optimal(kind, &w(s), false, &lim()).unwrap();
                let b = optimal(kind, &w(s), false, &lim().with_workers(4)).unwrap();
                assert_eq!((a.value, a.witness), (b.value, b.witness), "{kind} {s}");
            }
        }
    }

    #[test]
    fn budget_flags_inexact() {
        let (x, _) = rect_family(0);
        let r = optimal(LatticeKind::Rect2d, &x.slice(0, 20), false, &lim().with_nodes(10)).unwrap();
        assert!(!r.exact);
    }

    #[test]
    fn optima_lists() {
        let four = enumerate_optima(LatticeKind::Rect2d, &w("0000"), false, &lim()).unwrap();
        assert_eq!(four.len(), 1);
        assert_eq!(score(&four[0], &w("0000")).unwrap(), 1);
        let ones = enumerate_optima(LatticeKind::Rect2d, &w("111"), false, &lim()).unwrap();
        let shapes: Vec<String> = ones.iter().map(Fold::move_string).collect();
        assert_eq!(shapes, vec!["uu", "ul"]);
        let hex = crate::word::hex_family(1).unwrap();
        let ub = crate::bounds::upper_bound(LatticeKind::Hex, &hex, false).unwrap().value;
        let opt = enumerate_optima(LatticeKind::Hex, &hex, false, &lim()).unwrap();
        assert!(!opt.is_empty());
        for f in &opt {
            assert!(score(f, &hex).unwrap() <= ub);
        }
    }
}
