//! The four lattice graphs: coordinates, move alphabets, adjacency and
//! point groups.
//!
//! Coordinates are integer triples. Planar lattices keep `z = 0`.
//!
//! * `rect2d`: the square grid, moves `u l d r` (`u = +y`, `r = +x`).
//! * `rect3d`: the cubic grid, moves `u l d r f b` (`f = +z`).
//! * `tri`: axial coordinates `(q, r)`; moves `e w p q m n` are the steps
//!   `(1,0) (-1,0) (0,1) (0,-1) (-1,1) (1,-1)`.
//! * `hex`: brick-wall coordinates. Every site has horizontal neighbours
//!   `x ± 1`; the vertical move `v` goes up when `x + y` is even and down
//!   otherwise, giving a 3-regular graph isomorphic to the honeycomb.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::notation::{self, NotationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("unknown lattice {0:?} (expected rect2d, rect3d, tri or hex)")]
    UnknownLattice(String),
    #[error("site {site} is not a vertex of the {kind} lattice")]
    InvalidSite { kind: LatticeKind, site: Site },
    #[error("move {symbol:?} is not in the {kind} alphabet")]
    UnknownMove { kind: LatticeKind, symbol: char },
    #[error("{0}")]
    Notation(#[from] NotationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Rect2d,
    Rect3d,
    Tri,
    Hex,
}

impl LatticeKind {
    pub const ALL: [LatticeKind; 4] = [
        LatticeKind::Rect2d,
        LatticeKind::Rect3d,
        LatticeKind::Tri,
        LatticeKind::Hex,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            LatticeKind::Rect2d => "rect2d",
            LatticeKind::Rect3d => "rect3d",
            LatticeKind::Tri => "tri",
            LatticeKind::Hex => "hex",
        }
    }

    pub fn coordination(self) -> usize {
        match self {
            LatticeKind::Rect2d => 4,
            LatticeKind::Rect3d | LatticeKind::Tri => 6,
            LatticeKind::Hex => 3,
        }
    }

    pub fn is_bipartite(self) -> bool {
        !matches!(self, LatticeKind::Tri)
    }

    pub fn is_planar(self) -> bool {
        !matches!(self, LatticeKind::Rect3d)
    }

    /// Move symbols in their fixed tie-break order.
    pub fn alphabet(self) -> &'static [char] {
        match self {
            LatticeKind::Rect2d => &['u', 'l', 'd', 'r'],
            LatticeKind::Rect3d => &['u', 'l', 'd', 'r', 'f', 'b'],
            LatticeKind::Tri => &['e', 'w', 'p', 'q', 'm', 'n'],
            LatticeKind::Hex => &['l', 'r', 'v'],
        }
    }

    pub fn is_valid(self, s: Site) -> bool {
        self.is_planar() <= (s.z == 0)
    }

    pub fn check_site(self, s: Site) -> Result<(), LatticeError> {
        if self.is_valid(s) {
            Ok(())
        } else {
            Err(LatticeError::InvalidSite { kind: self, site: s })
        }
    }

    /// Parity class of a bipartite lattice site; `None` for `tri`.
    pub fn parity(self, s: Site) -> Option<usize> {
        self.is_bipartite()
            .then(|| (s.x + s.y + s.z).rem_euclid(2) as usize)
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for LatticeKind {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LatticeKind::ALL
            .into_iter()
            .find(|k| k.tag() == s.trim())
            .ok_or_else(|| LatticeError::UnknownLattice(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Site {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl Site {
    pub const ORIGIN: Site = Site { x: 0, y: 0, z: 0 };

    pub const fn new(x: i32, y: i32, z: i32) -> Site {
        Site { x, y, z }
    }

    pub const fn planar(x: i32, y: i32) -> Site {
        Site { x, y, z: 0 }
    }

    pub fn l1(self, other: Site) -> u32 {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y) + self.z.abs_diff(other.z)
    }

    pub fn coords(self) -> [i32; 3] {
        [self.x, self.y, self.z]
    }
}

impl std::ops::Add for Site {
    type Output = Site;
    fn add(self, o: Site) -> Site {
        Site::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl std::ops::Sub for Site {
    type Output = Site;
    fn sub(self, o: Site) -> Site {
        Site::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// A single move symbol. Which lattice it belongs to is carried by the fold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move(char);

impl Move {
    pub fn new(kind: LatticeKind, symbol: char) -> Result<Move, LatticeError> {
        if kind.alphabet().contains(&symbol) {
            Ok(Move(symbol))
        } else {
            Err(LatticeError::UnknownMove { kind, symbol })
        }
    }

    pub fn symbol(self) -> char {
        self.0
    }

    /// Position in the alphabet of `kind`.
    pub fn index(self, kind: LatticeKind) -> Result<usize, LatticeError> {
        kind.alphabet()
            .iter()
            .position(|&c| c == self.0)
            .ok_or(LatticeError::UnknownMove { kind, symbol: self.0 })
    }

    pub(crate) fn from_index(kind: LatticeKind, i: usize) -> Move {
        Move(kind.alphabet()[i])
    }
}

const RECT_STEPS: [(i32, i32, i32); 6] = [
    (0, 1, 0),
    (-1, 0, 0),
    (0, -1, 0),
    (1, 0, 0),
    (0, 0, 1),
    (0, 0, -1),
];

const TRI_STEPS: [(i32, i32); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (-1, 1), (1, -1)];

/// Site reached from `s` by the move with alphabet index `dir`. No validation.
#[inline]
pub(crate) fn step(kind: LatticeKind, s: Site, dir: usize) -> Site {
    match kind {
        LatticeKind::Rect2d | LatticeKind::Rect3d => {
            let (dx, dy, dz) = RECT_STEPS[dir];
            Site::new(s.x + dx, s.y + dy, s.z + dz)
        }
        LatticeKind::Tri => {
            let (dq, dr) = TRI_STEPS[dir];
            Site::new(s.x + dq, s.y + dr, 0)
        }
        LatticeKind::Hex => match dir {
            0 => Site::new(s.x - 1, s.y, 0),
            1 => Site::new(s.x + 1, s.y, 0),
            _ => Site::new(s.x, s.y + hex_vertical(s), 0),
        },
    }
}

#[inline]
fn hex_vertical(s: Site) -> i32 {
    if (s.x + s.y).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Alphabet index of the move taking `a` to `b`, if they are adjacent.
pub(crate) fn direction_between(kind: LatticeKind, a: Site, b: Site) -> Option<usize> {
    (0..kind.coordination()).find(|&d| step(kind, a, d) == b)
}

pub fn neighbors(kind: LatticeKind, s: Site) -> Result<Vec<Site>, LatticeError> {
    kind.check_site(s)?;
    Ok((0..kind.coordination()).map(|d| step(kind, s, d)).collect())
}

pub fn is_adjacent(kind: LatticeKind, a: Site, b: Site) -> bool {
    direction_between(kind, a, b).is_some()
}

pub fn apply_move(kind: LatticeKind, s: Site, m: Move) -> Result<Site, LatticeError> {
    kind.check_site(s)?;
    Ok(step(kind, s, m.index(kind)?))
}

/// Lower bound on graph distance; exact on `rect2d`, `rect3d` and `tri`.
pub fn distance_lower_bound(kind: LatticeKind, a: Site, b: Site) -> u32 {
    match kind {
        LatticeKind::Tri => {
            let dq = b.x - a.x;
            let dr = b.y - a.y;
            (dq.unsigned_abs() + dr.unsigned_abs() + (dq + dr).unsigned_abs()) / 2
        }
        _ => a.l1(b),
    }
}

/// Translation taking `anchor` to its root: the origin, or `(1,0,0)` for odd
/// hex sites (hex translations must preserve the parity of `x + y`).
pub fn root_offset(kind: LatticeKind, anchor: Site) -> Site {
    match kind {
        LatticeKind::Hex if (anchor.x + anchor.y).rem_euclid(2) == 1 => anchor - Site::planar(1, 0),
        _ => anchor,
    }
}

/// Parses a move string such as `"u^4 l^4 dd"` or `"(luld)^2 ldr"`.
pub fn parse_moves(kind: LatticeKind, text: &str) -> Result<Vec<Move>, LatticeError> {
    let alphabet = kind.alphabet();
    let symbols = notation::expand(text, |c| alphabet.contains(&c) || c.is_ascii_alphabetic())?;
    symbols.into_iter().map(|c| Move::new(kind, c)).collect()
}

pub fn format_moves(moves: &[Move]) -> String {
    let symbols: Vec<char> = moves.iter().map(|m| m.symbol()).collect();
    notation::compress(&symbols)
}

/// An isometry of a lattice fixing the origin (for `hex`, a representative
/// of each coset of the translation subgroup).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Isometry {
    Linear([[i32; 3]; 3]),
    Hex { rotation: u8, reflect: bool, invert: bool },
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry::Linear([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    pub fn apply(&self, s: Site) -> Site {
        match *self {
            Isometry::Linear(m) => {
                let v = s.coords();
                let row = |r: [i32; 3]| r[0] * v[0] + r[1] * v[1] + r[2] * v[2];
                Site::new(row(m[0]), row(m[1]), row(m[2]))
            }
            Isometry::Hex { rotation, reflect, invert } => {
                let mut t = s;
                for _ in 0..rotation {
                    t = hex_rotate(t);
                }
                if reflect {
                    t = Site::planar(-t.x, t.y);
                }
                if invert {
                    t = Site::planar(1 - t.x, -t.y);
                }
                t
            }
        }
    }
}

/// Rotation by a third of a turn about the origin of the brick wall.
///
/// Even sites form a triangular sublattice with basis `(2,0)`, `(1,1)`; the
/// rotation acts linearly there, and an odd site `b` is carried along with
/// its even neighbour `b - (1,0)`.
fn hex_rotate(s: Site) -> Site {
    let rot_even = |p: Site| {
        let b = p.y;
        let a = (p.x - p.y) / 2;
        Site::planar(-a - 2 * b, a)
    };
    if (s.x + s.y).rem_euclid(2) == 0 {
        rot_even(s)
    } else {
        let r = rot_even(Site::planar(s.x - 1, s.y));
        Site::planar(r.x, r.y + 1)
    }
}

fn signed_permutations(dim: usize) -> Vec<[[i32; 3]; 3]> {
    let perms: &[[usize; 3]] = if dim == 2 {
        &[[0, 1, 2], [1, 0, 2]]
    } else {
        &[[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
    };
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..(1 << dim) {
            let mut m = [[0; 3]; 3];
            for (row, &col) in p.iter().enumerate() {
                let sign = if row < dim && signs & (1 << row) != 0 { -1 } else { 1 };
                m[row][col] = sign;
            }
            out.push(m);
        }
    }
    out
}

fn mat_mul(a: [[i32; 3]; 3], b: [[i32; 3]; 3]) -> [[i32; 3]; 3] {
    let mut m = [[0; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

const TRI_ROTATE: [[i32; 3]; 3] = [[0, -1, 0], [1, 1, 0], [0, 0, 1]];
const TRI_REFLECT: [[i32; 3]; 3] = [[1, 1, 0], [0, -1, 0], [0, 0, 1]];

/// All point-group elements: 8 (`rect2d`), 48 (`rect3d`), 12 (`tri`, `hex`).
pub fn point_group(kind: LatticeKind) -> Vec<Isometry> {
    match kind {
        LatticeKind::Rect2d => signed_permutations(2).into_iter().map(Isometry::Linear).collect(),
        LatticeKind::Rect3d => signed_permutations(3).into_iter().map(Isometry::Linear).collect(),
        LatticeKind::Tri => {
            let mut out = Vec::new();
            let mut rot = Isometry::IDENTITY;
            for _ in 0..6 {
                let Isometry::Linear(r) = rot else { unreachable!() };
                out.push(Isometry::Linear(r));
                out.push(Isometry::Linear(mat_mul(r, TRI_REFLECT)));
                rot = Isometry::Linear(mat_mul(TRI_ROTATE, r));
            }
            out
        }
        LatticeKind::Hex => {
            let mut out = Vec::new();
            for rotation in 0..3 {
                for reflect in [false, true] {
                    for invert in [false, true] {
                        out.push(Isometry::Hex { rotation, reflect, invert });
                    }
                }
            }
            out
        }
    }
}

/// A generating set for the point group.
pub fn generators(kind: LatticeKind) -> Vec<Isometry> {
    match kind {
        LatticeKind::Rect2d => vec![
            Isometry::Linear([[0, -1, 0], [1, 0, 0], [0, 0, 1]]),
            Isometry::Linear([[-1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ],
        LatticeKind::Rect3d => vec![
            Isometry::Linear([[0, -1, 0], [1, 0, 0], [0, 0, 1]]),
            Isometry::Linear([[1, 0, 0], [0, 0, -1], [0, 1, 0]]),
            Isometry::Linear([[-1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ],
        LatticeKind::Tri => vec![Isometry::Linear(TRI_ROTATE), Isometry::Linear(TRI_REFLECT)],
        LatticeKind::Hex => vec![
            Isometry::Hex { rotation: 1, reflect: false, invert: false },
            Isometry::Hex { rotation: 0, reflect: true, invert: false },
            Isometry::Hex { rotation: 0, reflect: false, invert: true },
        ],
    }
}
