//! Words over `{0, 1, 2}` and the named families used throughout the crate.
//!
//! `0` is hydrophobic, `1` polar, `2` strongly hydrophobic (multichain
//! model only). Cyclic words are written with a `cyc:` prefix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::notation::{self, NotationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("{0}")]
    Notation(#[from] NotationError),
    #[error("tri_family index {0} out of range (1..=4)")]
    TriIndex(usize),
    #[error("hex_family needs k >= 1")]
    HexIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word {
    letters: Vec<u8>,
    cyclic: bool,
}

impl Word {
    pub fn new(letters: Vec<u8>, cyclic: bool) -> Result<Word, WordError> {
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        assert!(letters.iter().all(|&l| l <= 2), "letters must be 0, 1 or 2");
        Ok(Word { letters, cyclic })
    }

    /// Parses digits in exponent notation, e.g. `"(0011)^12 011100"`.
    pub fn parse(text: &str) -> Result<Word, WordError> {
        let text = text.trim();
        let (cyclic, body) = match text.strip_prefix("cyc:") {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let chars = notation::expand(body, |c| matches!(c, '0' | '1' | '2'))?;
        Word::new(chars.into_iter().map(|c| c as u8 - b'0').collect(), cyclic)
    }

    fn lit(text: &str) -> Word {
        Word::parse(text).expect("literal word")
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn as_cyclic(&self, cyclic: bool) -> Word {
        Word { letters: self.letters.clone(), cyclic }
    }

    pub fn has_twos(&self) -> bool {
        self.letters.contains(&2)
    }

    pub fn digits(&self) -> String {
        self.letters.iter().map(|&l| (b'0' + l) as char).collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters, cyclic: false }
    }

    /// Subword `[from, to)` as an open word. Panics on an empty range.
    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word::new(self.letters[from..to].to_vec(), false).expect("nonempty slice")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic {
            f.write_str("cyc:")?;
        }
        f.write_str(&self.digits())
    }
}

impl FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl TryFrom<String> for Word {
    type Error = WordError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Word::parse(&s)
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

pub fn zeros(w: &Word) -> usize {
    w.letters.iter().filter(|&&l| l == 0).count()
}

/// Overlapping occurrences of `pattern` in `w`; windows wrap when `w` is cyclic.
pub fn occurrences(pattern: &Word, w: &Word) -> usize {
    let p = &pattern.letters;
    let n = w.len();
    let starts = if w.cyclic { n } else { (n + 1).saturating_sub(p.len()) };
    (0..starts)
        .filter(|&i| {
            (w.cyclic || i + p.len() <= n)
                && p.iter().enumerate().all(|(j, &c)| w.letters[(i + j) % n] == c)
        })
        .count()
}

/// `I_00`: number of `00` factors.
pub fn i00(w: &Word) -> usize {
    occurrences(&Word::lit("00"), w)
}

pub fn reverse(w: &Word) -> Word {
    let mut letters = w.letters.clone();
    letters.reverse();
    Word { letters, cyclic: w.cyclic }
}

/// True if `w` (read linearly) contains a run of at least `n` zeros.
pub fn has_zero_run(w: &Word, n: usize) -> bool {
    let mut run = 0;
    for &l in &w.letters {
        run = if l == 0 { run + 1 } else { 0 };
        if run >= n {
            return true;
        }
    }
    false
}

/// `(011)^3 1^10 (0011)^k 0110 (1100)^k 110` with its rect2d fold.
pub fn rect_family(k: usize) -> (Word, String) {
    let word = Word::lit(&format!("(011)^3 1^10 (0011)^{k} 0110 (1100)^{k} 110"));
    let moves = format!("urdrdldrr u^4 l^4 dd (luld)^{k} ldr (drur)^{k} dru");
    (word, moves)
}

/// `0 1^4 011 (01)^k 11 (10)^k`.
pub fn hex_family(k: usize) -> Result<Word, WordError> {
    if k == 0 {
        return Err(WordError::HexIndex);
    }
    Ok(Word::lit(&format!("0 1^4 011 (01)^{k} 11 (10)^{k}")))
}

pub fn tri_family(n: usize) -> Result<Word, WordError> {
    let text = match n {
        1 => "(001)^3 0",
        2 => "(0001)^6 0",
        3 => "0^5 1 (0^6 1)^5 00",
        4 => "0^5 1 0^3 1 (0^7 1 0^3 1)^5 0^3",
        _ => return Err(WordError::TriIndex(n)),
    };
    Ok(Word::lit(text))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedWord {
    pub name: &'static str,
    pub word: Word,
}

pub fn special_words() -> Vec<NamedWord> {
    let table: [(&str, &str); 6] = [
        ("cube54", "(0011)^12 011100"),
        ("berger_leighton", "0^16 0110 ((1100)^2 110)^3 1100110"),
        ("trefoil24", "cyc:1^2 (0^4 1^7)^2"),
        ("link8", "cyc:0^8"),
        ("link56", "cyc:0^6 1^20 0^2 1^2 0^2 1^9 0^2 1^4 0^2 1^2 0^5"),
        ("trefoil70", "cyc:1^3 0^22 1^3 0^42"),
    ];
    table
        .into_iter()
        .map(|(name, text)| NamedWord { name, word: Word::lit(text) })
        .collect()
}

pub fn special_word(name: &str) -> Option<Word> {
    special_words().into_iter().find(|n| n.name == name).map(|n| n.word)
}

/// Three cyclic `(01)^4` rings and one cyclic `2^3 1^(9+2m)`.
pub fn multiset_m(m: usize) -> Vec<Word> {
    let ring = Word::lit("cyc:(01)^4");
    let long = Word::lit(&format!("cyc:2^3 1^{}", 9 + 2 * m));
    vec![ring.clone(), ring.clone(), ring, long]
}
