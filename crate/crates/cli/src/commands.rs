use std::fs;
use std::path::Path;
use std::time::Duration;

use hpfold::bounds::{self, Bound, CertError, Certificate, Claim};
use hpfold::constructions::{CUBE54_KEYS, TREFOIL24_KEYS};
use hpfold::fold::{decode_keyboard_moves, is_box, letter_sites, validate, FoldFile, KeyConstraints};
use hpfold::lattice::LatticeKind;
use hpfold::multichain::{self, Embedding, HydroLevels};
use hpfold::scoring::contacts;
use hpfold::search::{self, SearchError, SearchLimits};
use hpfold::topology::{self, ClosedCurve};
use hpfold::word::{special_word, Word};

use crate::{render as draw, ClaimKind, CliError, CliResult, Format, Preset};

pub enum Loaded {
    Fold(FoldFile),
    Embedding(Embedding),
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn looks_like_embedding(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("chain"))
}

/// A validated fold file.
pub fn parse_fold(text: &str) -> Result<FoldFile, CliError> {
    let ff = FoldFile::parse(text).map_err(input)?;
    validate(&ff.fold, &ff.word).map_err(input)?;
    Ok(ff)
}

/// A validated embedding file.
pub fn parse_embedding(text: &str) -> Result<Embedding, CliError> {
    let e = Embedding::parse(text).map_err(input)?;
    multichain::validate_embedding(&e).map_err(input)?;
    Ok(e)
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = read(path)?;
    if looks_like_embedding(&text) {
        parse_embedding(&text).map(Loaded::Embedding)
    } else {
        parse_fold(&text).map(Loaded::Fold)
    }
}

fn load_fold(path: &Path) -> Result<FoldFile, CliError> {
    parse_fold(&read(path)?)
}

fn load_embedding(path: &Path) -> Result<Embedding, CliError> {
    parse_embedding(&read(path)?)
}

fn lattice(text: &str) -> Result<LatticeKind, CliError> {
    text.parse().map_err(input)
}

fn word(text: &str) -> Result<Word, CliError> {
    Word::parse(text).map_err(input)
}

fn search_error(e: SearchError) -> CliError {
    match e {
        SearchError::Budget { .. } => CliError::Budget(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

pub fn score(path: &Path) -> CliResult {
    let ff = load_fold(path)?;
    let cs = contacts(&ff.fold, &ff.word).map_err(input)?;
    println!("score: {}", cs.len());
    for (i, j) in cs {
        println!("{i} {j}");
    }
    Ok(())
}

pub fn search(lat: &str, w: &str, closed: bool, max_nodes: u64, max_secs: u64, workers: usize) -> CliResult {
    let kind = lattice(lat)?;
    let w = word(w)?;
    let limits = SearchLimits { max_nodes, max_time: Duration::from_secs(max_secs), workers: workers.max(1) };
    let r = search::optimal(kind, &w, closed, &limits).map_err(search_error)?;
    println!("J: {}", r.value);
    println!("exact: {}", r.exact);
    println!("witness: {}", r.witness.as_ref().map_or("-".to_string(), |f| f.move_string()));
    println!("upper_bound: {}", r.upper_bound);
    // node counts vary with scheduling, so they stay off stdout
    eprintln!("nodes: {}", r.nodes);
    if !r.exact {
        return Err(CliError::Budget(format!("search stopped after {} nodes; {} is a lower bound", r.nodes, r.value)));
    }
    Ok(())
}

fn show(b: Bound) -> String {
    format!("{} ({})", b.value, b.name)
}

pub fn bound(lat: &str, w: &str) -> CliResult {
    let kind = lattice(lat)?;
    let w = word(w)?;
    let upper = bounds::upper_bound(kind, &w, false).map_err(input)?;
    println!("upper: {}", show(upper));
    if !w.is_cyclic() {
        println!("wrapped: {}", show(bounds::upper_bound(kind, &w, true).map_err(input)?));
    }
    println!("parity: {}", show(bounds::parity_bound(kind, &w).map_err(input)?));
    println!("best: {}", show(bounds::best_bound(kind, &w).map_err(input)?));
    Ok(())
}

fn cert_error(e: CertError) -> CliError {
    match e {
        CertError::Invalid(_) | CertError::Bound(_) | CertError::Closed => CliError::Input(e.to_string()),
        _ => CliError::Verify(format!("rejected: {e}")),
    }
}

pub fn describe(cert: &Certificate) -> String {
    match &cert.claim {
        Claim::Equality { value } => format!("accepted: J(w)={value} ({})", cert.bound_used),
        Claim::WrapDrop { value, wrapped } => {
            format!("accepted: J(w)={value} ({}), J(1w1)<={wrapped}<{value}", cert.bound_used)
        }
        Claim::StrictDrop { value, suffix, extended_bound, .. } => {
            format!("accepted: J(w{})<={extended_bound}<{value}<=J(w) ({})", suffix.digits(), cert.bound_used)
        }
    }
}

pub fn make_certificate(ff: &FoldFile, claim: ClaimKind, suffix: &str) -> Result<Certificate, CliError> {
    let kind = ff.fold.kind;
    match claim {
        ClaimKind::Equality => bounds::certify_equality(kind, &ff.word, &ff.fold),
        ClaimKind::WrapDrop => bounds::certify_wrap_drop(kind, &ff.word, &ff.fold),
        ClaimKind::SuffixDrop => bounds::certify_suffix_drop(kind, &ff.word, &ff.fold, &word(suffix)?),
    }
    .map_err(cert_error)
}

pub fn certify(path: &Path, claim: ClaimKind, suffix: &str, json: Option<&Path>) -> CliResult {
    let ff = load_fold(path)?;
    let cert = make_certificate(&ff, claim, suffix)?;
    bounds::replay(&cert).map_err(cert_error)?;
    println!("{}", describe(&cert));
    if let Some(out) = json {
        let text = serde_json::to_string_pretty(&cert).expect("certificates serialize");
        fs::write(out, text + "\n").map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
    }
    Ok(())
}

pub fn iso(lat: &str, n: usize, max_nodes: u64) -> CliResult {
    let kind = lattice(lat)?;
    let limits = SearchLimits::default().with_nodes(max_nodes);
    let r = search::max_internal_edges(kind, n, &limits).map_err(search_error)?;
    println!("max={} unique={}", r.max_internal_edges, r.unique);
    println!("witnesses={}", r.witnesses.len());
    for w in &r.witnesses {
        let sites: Vec<String> = w.iter().map(|s| s.to_string()).collect();
        println!("witness: {}", sites.join(";"));
    }
    Ok(())
}

pub fn multichain(path: Option<&Path>, c: u64, intended: Option<usize>, print: bool) -> CliResult {
    let e = match (path, intended) {
        (Some(p), None) => load_embedding(p)?,
        (None, Some(m)) => multichain::intended_embedding(m),
        _ => return Err(CliError::Input("give either an embedding file or --intended".into())),
    };
    multichain::validate_embedding(&e).map_err(input)?;
    let s = multichain::embedding_score(&e, &HydroLevels::h_c(c)).map_err(input)?;
    if print {
        print!("{e}");
    }
    println!("score: {s}");
    Ok(())
}

pub fn curves(e: &Embedding) -> Result<Vec<ClosedCurve>, CliError> {
    e.chains.iter().map(|c| ClosedCurve::new(c.sites.clone()).map_err(input)).collect()
}

pub fn link(path: &Path) -> CliResult {
    let e = load_embedding(path)?;
    let cs = curves(&e)?;
    if cs.len() < 2 {
        return Err(CliError::Input("linking needs at least two chains".into()));
    }
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let lk = topology::linking_number(&cs[i], &cs[j]).map_err(input)?;
            println!("lk({i},{j}) = {lk}");
        }
    }
    Ok(())
}

pub fn knot(path: &Path) -> CliResult {
    match load(path)? {
        Loaded::Fold(ff) => {
            let c = ClosedCurve::from_fold(&ff.fold).map_err(input)?;
            let d = topology::project(&[&c], topology::generic_n(&[&c])).map_err(input)?;
            println!("crossings: {}", d.crossings.len());
            println!("fox3: {}", topology::knot_fox3(&c));
        }
        Loaded::Embedding(e) => {
            for (i, c) in curves(&e)?.iter().enumerate() {
                println!("chain {i}: fox3 {}", topology::knot_fox3(c));
            }
        }
    }
    Ok(())
}

pub fn decode(preset: Option<Preset>, keys: Option<String>, w: Option<String>, side: Option<i32>, all: bool) -> CliResult {
    let (keys, w, side) = match preset {
        Some(Preset::Cube54) => (CUBE54_KEYS.to_string(), special_word("cube54").expect("catalog"), Some(3)),
        Some(Preset::Trefoil24) => (TREFOIL24_KEYS.to_string(), special_word("trefoil24").expect("catalog"), Some(2)),
        None => match (keys, w) {
            (Some(k), Some(w)) => (k, word(&w)?, side),
            _ => return Err(CliError::Input("give --preset or both --keys and --word".into())),
        },
    };
    let extra = move |f: &hpfold::fold::Fold, w: &Word| {
        side.is_none_or(|s| letter_sites(f, w, 0).is_ok_and(|z| is_box(&z, [s; 3])))
    };
    let c = KeyConstraints { word: w.clone(), extra: Box::new(extra) };
    let d = decode_keyboard_moves(&keys, &c).map_err(|e| match e {
        hpfold::fold::DecodeError::NoMapping => CliError::Verify(e.to_string()),
        _ => CliError::Input(e.to_string()),
    })?;
    println!("mappings: {}", d.mappings.len());
    println!("canonical: {}", d.canonical);
    if all {
        for m in &d.mappings {
            println!("mapping: {m}");
        }
    }
    print!("{}", FoldFile { word: w, fold: d.fold }.render());
    Ok(())
}

pub fn render(path: &Path, format: Format, out: Option<&Path>, show_contacts: bool) -> CliResult {
    let scene = match load(path)? {
        Loaded::Fold(ff) => draw::Scene::from_fold(&ff),
        Loaded::Embedding(e) => draw::Scene::from_embedding(&e),
    };
    let text = match format {
        Format::Svg => draw::svg(&scene, show_contacts),
        Format::Ascii => draw::ascii(&scene),
    };
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
