//! The verification corpus: a `manifest.toml` naming fold and embedding
//! files together with the values each must reproduce.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use hpfold::fold::{is_box, letter_sites};
use hpfold::lattice::{LatticeKind, Site};
use hpfold::multichain::{embedding_score, HydroLevels};
use hpfold::scoring::{internal_edges, score};
use hpfold::topology::{knot_fox3, linking_number, ClosedCurve};
use serde::Deserialize;

use crate::commands::{curves, make_certificate, parse_embedding, parse_fold};
use crate::{ClaimKind, CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    #[serde(default)]
    entry: Vec<Entry>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Verdict {
    Equality,
    WrapDrop,
    SuffixDrop,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    id: String,
    #[serde(default, rename = "note")]
    _note: String,
    fold: Option<String>,
    embedding: Option<String>,
    score: Option<usize>,
    certify: Option<Verdict>,
    suffix: Option<String>,
    closed: Option<bool>,
    length: Option<usize>,
    zeros_box: Option<[i32; 3]>,
    covers_box: Option<[i32; 3]>,
    zero_internal_edges: Option<usize>,
    fox3: Option<u64>,
    linking: Option<i64>,
    levels_c: Option<u64>,
    levels_score: Option<u64>,
}

struct Checker {
    failures: Vec<String>,
}

impl Checker {
    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, want: Option<T>, got: impl FnOnce() -> Result<T, String>) {
        let Some(want) = want else { return };
        match got() {
            Ok(g) if g == want => {}
            Ok(g) => self.failures.push(format!("{what}: expected {want:?}, got {g:?}")),
            Err(e) => self.failures.push(format!("{what}: {e}")),
        }
    }
}

fn sorted_box(sites: &[Site], sides: [i32; 3]) -> bool {
    let mut s = sides;
    s.sort_unstable();
    // is_box takes sides in axis order; try every axis assignment
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    perms.iter().any(|p| is_box(sites, [s[p[0]], s[p[1]], s[p[2]]]))
}

fn check_fold(e: &Entry, text: &str, c: &mut Checker) -> Result<(), CliError> {
    let ff = parse_fold(text)?;
    let (f, w) = (&ff.fold, &ff.word);
    let zeros = letter_sites(f, w, 0).map_err(|e| CliError::Input(e.to_string()))?;
    let sites = f.sites().map_err(|e| CliError::Input(e.to_string()))?;
    c.expect("score", e.score, || score(f, w).map_err(|e| e.to_string()));
    c.expect("closed", e.closed, || Ok(f.closed));
    c.expect("length", e.length, || Ok(sites.len()));
    c.expect("zeros_box", e.zeros_box.map(|_| true), || Ok(sorted_box(&zeros, e.zeros_box.unwrap())));
    c.expect("covers_box", e.covers_box.map(|_| true), || Ok(sorted_box(&sites, e.covers_box.unwrap())));
    c.expect("zero_internal_edges", e.zero_internal_edges, || Ok(internal_edges(f.kind, &zeros)));
    if let Some(v) = e.certify {
        let claim = match v {
            Verdict::Equality => ClaimKind::Equality,
            Verdict::WrapDrop => ClaimKind::WrapDrop,
            Verdict::SuffixDrop => ClaimKind::SuffixDrop,
        };
        let suffix = e.suffix.as_deref().unwrap_or("1");
        if let Err(err) = make_certificate(&ff, claim, suffix).and_then(|cert| {
            hpfold::bounds::replay(&cert).map_err(|x| CliError::Verify(x.to_string()))
        }) {
            c.failures.push(format!("certify: {err}"));
        }
    }
    c.expect("fox3", e.fox3, || {
        if f.kind != LatticeKind::Rect3d || !f.closed {
            return Err("fox3 needs a closed rect3d fold".into());
        }
        ClosedCurve::from_fold(f).map(|k| knot_fox3(&k)).map_err(|e| e.to_string())
    });
    Ok(())
}

fn check_embedding(e: &Entry, text: &str, c: &mut Checker) -> Result<(), CliError> {
    let emb = parse_embedding(text)?;
    let cs = curves(&emb)?;
    let all: Vec<Site> = emb.chains.iter().flat_map(|ch| ch.sites.iter().copied()).collect();
    let contents = emb.contents();
    let zeros: Vec<Site> = all.iter().copied().filter(|s| contents[s] == 0).collect();
    c.expect("length", e.length, || Ok(all.len()));
    c.expect("zeros_box", e.zeros_box.map(|_| true), || Ok(sorted_box(&zeros, e.zeros_box.unwrap())));
    c.expect("covers_box", e.covers_box.map(|_| true), || Ok(sorted_box(&all, e.covers_box.unwrap())));
    c.expect("linking", e.linking, || {
        if cs.len() < 2 {
            return Err("needs two chains".into());
        }
        linking_number(&cs[0], &cs[1]).map_err(|e| e.to_string())
    });
    c.expect("fox3", e.fox3, || Ok(knot_fox3(&cs[0])));
    if e.levels_score.is_some() {
        let h = HydroLevels::h_c(e.levels_c.unwrap_or(10));
        c.expect("levels_score", e.levels_score, || embedding_score(&emb, &h).map_err(|e| e.to_string()));
    }
    Ok(())
}

fn check(dir: &Path, e: &Entry) -> Vec<String> {
    let mut c = Checker { failures: Vec::new() };
    let (file, is_fold) = match (&e.fold, &e.embedding) {
        (Some(f), None) => (f, true),
        (None, Some(f)) => (f, false),
        _ => return vec!["exactly one of `fold` and `embedding` is required".into()],
    };
    let text = match fs::read_to_string(dir.join(file)) {
        Ok(t) => t,
        Err(err) => return vec![format!("{file}: {err}")],
    };
    let r = if is_fold { check_fold(e, &text, &mut c) } else { check_embedding(e, &text, &mut c) };
    if let Err(err) = r {
        c.failures.push(err.to_string());
    }
    c.failures
}

pub fn verify(dir: &Path) -> CliResult {
    let path = dir.join("manifest.toml");
    let text = fs::read_to_string(&path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let manifest: Manifest = toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if manifest.entry.is_empty() {
        return Err(CliError::Input(format!("{}: no entries", path.display())));
    }
    let mut ids = BTreeSet::new();
    let mut files = BTreeSet::new();
    let mut failed = Vec::new();
    for e in &manifest.entry {
        let mut problems = check(dir, e);
        if !ids.insert(e.id.as_str()) {
            problems.push("duplicate id".into());
        }
        if let Some(f) = e.fold.as_ref().or(e.embedding.as_ref()) {
            if !files.insert(f.as_str()) {
                problems.push(format!("{f} is listed twice"));
            }
        }
        if problems.is_empty() {
            println!("PASS {}", e.id);
        } else {
            println!("FAIL {}: {}", e.id, problems.join("; "));
            failed.push(e.id.clone());
        }
    }
    println!("{} entries, {} failed", manifest.entry.len(), failed.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verify(format!("failing entries: {}", failed.join(", "))))
    }
}
