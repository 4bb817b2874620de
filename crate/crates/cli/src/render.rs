//! SVG and ASCII drawings of folds and embeddings.
//!
//! Planar lattices are drawn flat; rect3d uses an isometric projection with
//! far bonds drawn first and every bond over-painted by a white halo, so
//! crossings show as gaps in the under strand.

use std::fmt::Write;

use hpfold::fold::FoldFile;
use hpfold::lattice::{is_adjacent, LatticeKind, Site};
use hpfold::multichain::{potential_contacts, Embedding};
use hpfold::scoring::contacts;

/// Lattice pitch in SVG user units.
pub const PITCH: f64 = 24.0;
const MARGIN: f64 = 24.0;
const CHAIN_COLOURS: [&str; 6] = ["#444444", "#8c564b", "#2ca02c", "#9467bd", "#e377c2", "#7f7f7f"];

pub struct Chain {
    pub letters: Vec<u8>,
    pub sites: Vec<Site>,
    pub closed: bool,
}

pub struct Scene {
    pub kind: LatticeKind,
    pub chains: Vec<Chain>,
    pub contacts: Vec<(Site, Site)>,
}

impl Scene {
    pub fn from_fold(ff: &FoldFile) -> Scene {
        let sites = ff.fold.sites().expect("validated fold");
        let cs = contacts(&ff.fold, &ff.word).expect("validated fold");
        Scene {
            kind: ff.fold.kind,
            contacts: cs.iter().map(|&(i, j)| (sites[i], sites[j])).collect(),
            chains: vec![Chain { letters: ff.word.letters().to_vec(), sites, closed: ff.fold.closed }],
        }
    }

    pub fn from_embedding(e: &Embedding) -> Scene {
        let contents = e.contents();
        let contacts = potential_contacts(e)
            .expect("validated embedding")
            .into_iter()
            .filter(|(a, b)| contents[a] != 1 && contents[b] != 1)
            .collect();
        Scene {
            kind: LatticeKind::Rect3d,
            chains: e
                .chains
                .iter()
                .map(|c| Chain { letters: c.word.letters().to_vec(), sites: c.sites.clone(), closed: true })
                .collect(),
            contacts,
        }
    }

    fn bonds(&self) -> Vec<(usize, Site, Site)> {
        let mut out = Vec::new();
        for (ci, c) in self.chains.iter().enumerate() {
            for w in c.sites.windows(2) {
                out.push((ci, w[0], w[1]));
            }
            if c.closed && c.sites.len() > 2 {
                out.push((ci, *c.sites.last().unwrap(), c.sites[0]));
            }
        }
        out
    }
}

/// Screen position in lattice units (y grows downwards).
fn project(kind: LatticeKind, s: Site) -> (f64, f64) {
    let (x, y, z) = (s.x as f64, s.y as f64, s.z as f64);
    let root3 = 3f64.sqrt();
    match kind {
        LatticeKind::Rect2d | LatticeKind::Hex => (x, -y),
        LatticeKind::Tri => (x + y / 2.0, -y * root3 / 2.0),
        LatticeKind::Rect3d => ((x - y) * root3 / 2.0, (x + y) / 2.0 - z),
    }
}

/// Draw order key: larger is nearer the viewer.
fn nearness(kind: LatticeKind, s: Site) -> i64 {
    match kind {
        LatticeKind::Rect3d => -(s.x as i64 + s.y as i64 + s.z as i64),
        _ => 0,
    }
}

fn colour_class(letter: u8) -> &'static str {
    // red for 0 and 2, blue for 1
    if letter == 1 {
        "p"
    } else {
        "h"
    }
}

enum Item {
    Bond(usize, Site, Site),
    Site(Site, u8),
}

pub fn svg(scene: &Scene, show_contacts: bool) -> String {
    let kind = scene.kind;
    let all: Vec<Site> = scene.chains.iter().flat_map(|c| c.sites.iter().copied()).collect();
    let pts: Vec<(f64, f64)> = all.iter().map(|&s| project(kind, s)).collect();
    let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let width = (max_x - min_x) * PITCH + 2.0 * MARGIN;
    let height = (max_y - min_y) * PITCH + 2.0 * MARGIN;
    let at = |s: Site| {
        let (x, y) = project(kind, s);
        ((x - min_x) * PITCH + MARGIN, (y - min_y) * PITCH + MARGIN)
    };

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    )
    .unwrap();
    out.push_str("<style>line{stroke-linecap:round}.gap{stroke:#fff;stroke-width:9}");
    out.push_str(".contact{stroke:#999;stroke-width:1.5;stroke-dasharray:4 3}");
    out.push_str(".h{fill:#d62728}.p{fill:#1f77b4}");
    out.push_str("text{font:9px sans-serif;fill:#fff;text-anchor:middle;dominant-baseline:central}");
    for (i, c) in CHAIN_COLOURS.iter().enumerate() {
        write!(out, ".chain{i}{{stroke:{c};stroke-width:3}}").unwrap();
    }
    out.push_str("</style>\n");
    writeln!(out, r##"<rect width="100%" height="100%" fill="#fff"/>"##).unwrap();

    if show_contacts {
        for &(a, b) in &scene.contacts {
            let (p, q) = (at(a), at(b));
            writeln!(out, r#"<line class="contact" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, p.0, p.1, q.0, q.1)
                .unwrap();
        }
    }

    let mut items: Vec<(i64, u8, usize, Item)> = Vec::new();
    for (n, (ci, a, b)) in scene.bonds().into_iter().enumerate() {
        items.push((nearness(kind, a) + nearness(kind, b), 0, n, Item::Bond(ci, a, b)));
    }
    let mut n = 0;
    for c in &scene.chains {
        for (&s, &l) in c.sites.iter().zip(&c.letters) {
            items.push((2 * nearness(kind, s), 1, n, Item::Site(s, l)));
            n += 1;
        }
    }
    items.sort_by_key(|&(d, layer, n, _)| (d, layer, n));

    let halo = kind == LatticeKind::Rect3d;
    for (_, _, _, item) in &items {
        match *item {
            Item::Bond(ci, a, b) => {
                let (p, q) = (at(a), at(b));
                let coords = format!(r#"x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}""#, p.0, p.1, q.0, q.1);
                if halo {
                    writeln!(out, r#"<line class="gap" {coords}/>"#).unwrap();
                }
                writeln!(out, r#"<line class="chain{}" {coords}/>"#, ci % CHAIN_COLOURS.len()).unwrap();
            }
            Item::Site(s, l) => {
                let p = at(s);
                writeln!(out, r#"<circle class="{}" cx="{:.2}" cy="{:.2}" r="7"/>"#, colour_class(l), p.0, p.1).unwrap();
                writeln!(out, r#"<text x="{:.2}" y="{:.2}">{l}</text>"#, p.0, p.1).unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Character grid position of a planar site.
fn cell(kind: LatticeKind, s: Site) -> (i64, i64) {
    let (x, y) = (s.x as i64, s.y as i64);
    match kind {
        LatticeKind::Tri => (2 * (2 * x + y), -2 * y),
        _ => (2 * x, -2 * y),
    }
}

fn grid(kind: LatticeKind, sites: &[(Site, u8)], bonds: &[(Site, Site)], bounds: (i64, i64, i64, i64)) -> String {
    let (c0, c1, r0, r1) = bounds;
    let w = (c1 - c0 + 1) as usize;
    let h = (r1 - r0 + 1) as usize;
    let mut g = vec![vec![' '; w]; h];
    for &(a, b) in bonds {
        let (ca, ra) = cell(kind, a);
        let (cb, rb) = cell(kind, b);
        let (dc, dr) = (cb - ca, rb - ra);
        let ch = match (dc.signum(), dr.signum()) {
            (_, 0) => '-',
            (0, _) => '|',
            (x, y) if x == -y => '/',
            _ => '\\',
        };
        let steps = dc.abs().max(dr.abs());
        for k in 1..steps {
            g[(ra + dr * k / steps - r0) as usize][(ca + dc * k / steps - c0) as usize] = ch;
        }
    }
    for &(s, l) in sites {
        let (c, r) = cell(kind, s);
        g[(r - r0) as usize][(c - c0) as usize] = char::from(b'0' + l);
    }
    let mut out = String::new();
    for row in g {
        out.push_str(row.iter().collect::<String>().trim_end());
        out.push('\n');
    }
    out
}

/// Letters on a character grid with bonds between them; rect3d is shown as
/// one grid per z-layer (top first) with in-layer bonds only.
pub fn ascii(scene: &Scene) -> String {
    let sites: Vec<(Site, u8)> = scene
        .chains
        .iter()
        .flat_map(|c| c.sites.iter().copied().zip(c.letters.iter().copied()))
        .collect();
    let bonds: Vec<(Site, Site)> = scene.bonds().into_iter().map(|(_, a, b)| (a, b)).collect();
    let flat = |s: Site| Site::planar(s.x, s.y);
    let cells: Vec<(i64, i64)> = sites.iter().map(|&(s, _)| cell(scene.kind, flat(s))).collect();
    let bounds = (
        cells.iter().map(|c| c.0).min().unwrap_or(0),
        cells.iter().map(|c| c.0).max().unwrap_or(0),
        cells.iter().map(|c| c.1).min().unwrap_or(0),
        cells.iter().map(|c| c.1).max().unwrap_or(0),
    );
    if scene.kind != LatticeKind::Rect3d {
        return grid(scene.kind, &sites, &bonds, bounds);
    }
    let mut layers: Vec<i32> = sites.iter().map(|(s, _)| s.z).collect();
    layers.sort_unstable();
    layers.dedup();
    let mut out = String::new();
    for &z in layers.iter().rev() {
        let layer: Vec<(Site, u8)> = sites.iter().filter(|(s, _)| s.z == z).map(|&(s, l)| (flat(s), l)).collect();
        let in_layer: Vec<(Site, Site)> = bonds
            .iter()
            .filter(|(a, b)| a.z == z && b.z == z && is_adjacent(LatticeKind::Rect3d, *a, *b))
            .map(|&(a, b)| (flat(a), flat(b)))
            .collect();
        writeln!(out, "z={z}").unwrap();
        out.push_str(&grid(LatticeKind::Rect2d, &layer, &in_layer, bounds));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hpfold::constructions::platypus;
    use hpfold::fold::Fold;
    use hpfold::word::{rect_family, Word};

    fn rect0() -> FoldFile {
        let (word, moves) = rect_family(0);
        FoldFile { word, fold: Fold::parse(LatticeKind::Rect2d, &moves, false).unwrap() }
    }

    #[test]
    fn svg_labels_every_site() {
        let s = svg(&Scene::from_fold(&rect0()), false);
        assert_eq!(s.matches("<text").count(), 26);
        assert_eq!(s.matches("<circle").count(), 26);
        assert_eq!(s, svg(&Scene::from_fold(&rect0()), false));
    }

    #[test]
    fn contacts_are_dashed() {
        let s = svg(&Scene::from_fold(&rect0()), true);
        assert_eq!(s.matches(r#"class="contact""#).count(), 7);
    }

    #[test]
    fn platypus_brick_grid() {
        let c = platypus();
        let text = ascii(&Scene::from_fold(&FoldFile { word: c.word.clone(), fold: c.fold }));
        let letters: String = text.chars().filter(|c| c.is_ascii_digit()).collect();
        assert_eq!(letters.len(), c.word.len());
        // brick wall: no site has two vertical bonds
        let rows: Vec<Vec<char>> = text.lines().map(|l| l.chars().collect()).collect();
        for (r, row) in rows.iter().enumerate() {
            for (col, ch) in row.iter().enumerate() {
                if !ch.is_ascii_digit() {
                    continue;
                }
                let up = r > 0 && rows[r - 1].get(col) == Some(&'|');
                let down = rows.get(r + 1).and_then(|x| x.get(col)) == Some(&'|');
                assert!(!(up && down), "row {r} col {col}");
            }
        }
    }

    #[test]
    fn ascii_square() {
        let ff = FoldFile { word: Word::parse("0000").unwrap(), fold: Fold::parse(LatticeKind::Rect2d, "urd", false).unwrap() };
        assert_eq!(ascii(&Scene::from_fold(&ff)), "0-0\n| |\n0 0\n");
    }
}
