//! Compact exponent notation shared by move strings and words.
//!
//! A sequence is a list of items; an item is a single symbol or a
//! parenthesised group, optionally followed by `^n` or `^{n}`. Whitespace
//! only separates items (it ends an exponent), so `"(011)^3 1^{10}"` and
//! `"0110110111111111111"` expand to the same letters.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("unknown symbol {symbol:?} at offset {offset}")]
    UnknownSymbol { symbol: char, offset: usize },
    #[error("malformed exponent at offset {offset}")]
    MalformedExponent { offset: usize },
    #[error("unbalanced parenthesis at offset {offset}")]
    Unbalanced { offset: usize },
    #[error("expansion exceeds {limit} symbols")]
    TooLong { limit: usize },
}

/// Upper bound on expanded length; guards against `0^999999999`.
pub const MAX_EXPANDED: usize = 1 << 22;

pub fn expand(text: &str, is_symbol: impl Fn(char) -> bool) -> Result<Vec<char>, NotationError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut parser = Parser { chars: &chars, pos: 0, is_symbol: &is_symbol };
    let out = parser.sequence()?;
    parser.skip_space();
    if let Some(&(offset, _)) = chars.get(parser.pos) {
        return Err(NotationError::Unbalanced { offset });
    }
    Ok(out)
}

struct Parser<'a, F: Fn(char) -> bool> {
    chars: &'a [(usize, char)],
    pos: usize,
    is_symbol: &'a F,
}

impl<F: Fn(char) -> bool> Parser<'_, F> {
    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.pos).copied()
    }

    fn offset(&self) -> usize {
        self.peek().map(|(o, _)| o).unwrap_or_else(|| {
            self.chars.last().map(|(o, c)| o + c.len_utf8()).unwrap_or(0)
        })
    }

    fn skip_space(&mut self) {
        while matches!(self.peek(), Some((_, c)) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn sequence(&mut self) -> Result<Vec<char>, NotationError> {
        let mut out = Vec::new();
        loop {
            self.skip_space();
            let Some((offset, c)) = self.peek() else { break };
            let item = match c {
                ')' => break,
                '(' => {
                    self.pos += 1;
                    let inner = self.sequence()?;
                    self.skip_space();
                    match self.peek() {
                        Some((_, ')')) => self.pos += 1,
                        _ => return Err(NotationError::Unbalanced { offset }),
                    }
                    inner
                }
                c if (self.is_symbol)(c) => {
                    self.pos += 1;
                    vec![c]
                }
                '^' => return Err(NotationError::MalformedExponent { offset }),
                symbol => return Err(NotationError::UnknownSymbol { symbol, offset }),
            };
            let reps = self.exponent()?;
            if out.len() + item.len().saturating_mul(reps) > MAX_EXPANDED {
                return Err(NotationError::TooLong { limit: MAX_EXPANDED });
            }
            for _ in 0..reps {
                out.extend_from_slice(&item);
            }
        }
        Ok(out)
    }

    fn exponent(&mut self) -> Result<usize, NotationError> {
        if !matches!(self.peek(), Some((_, '^'))) {
            return Ok(1);
        }
        let offset = self.offset();
        self.pos += 1;
        let braced = matches!(self.peek(), Some((_, '{')));
        if braced {
            self.pos += 1;
        }
        let mut digits = String::new();
        while let Some((_, c)) = self.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if braced {
            match self.peek() {
                Some((_, '}')) => self.pos += 1,
                _ => return Err(NotationError::MalformedExponent { offset }),
            }
        }
        digits
            .parse::<usize>()
            .map_err(|_| NotationError::MalformedExponent { offset })
    }
}

/// Run-length form: runs of three or more become `c^n`, or `c^{n}` when a
/// digit follows.
pub fn compress(symbols: &[char]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < symbols.len() {
        let c = symbols[i];
        let mut j = i;
        while j < symbols.len() && symbols[j] == c {
            j += 1;
        }
        let run = j - i;
        if run >= 3 {
            out.push(c);
            if symbols.get(j).is_some_and(char::is_ascii_digit) {
                out.push_str(&format!("^{{{run}}}"));
            } else {
                out.push('^');
                out.push_str(&run.to_string());
            }
        } else {
            for _ in 0..run {
                out.push(c);
            }
        }
        i = j;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits(c: char) -> bool {
        matches!(c, '0' | '1' | '2')
    }

    #[test]
    fn expands_groups_and_braces() {
        let got: String = expand("(011)^3 1^{10}", digits).unwrap().into_iter().collect();
        assert_eq!(got, "0110110111111111111");
        let got: String = expand("((1100)^2 110)^2", digits).unwrap().into_iter().collect();
        assert_eq!(got, "1100110011011001100110");
    }

    #[test]
    fn zero_exponent_drops_item() {
        let got: String = expand("0(01)^0 1", digits).unwrap().into_iter().collect();
        assert_eq!(got, "01");
    }

    #[test]
    fn errors() {
        assert!(matches!(expand("0x", digits), Err(NotationError::UnknownSymbol { symbol: 'x', .. })));
        assert!(matches!(expand("0^", digits), Err(NotationError::MalformedExponent { .. })));
        assert!(matches!(expand("0^{3", digits), Err(NotationError::MalformedExponent { .. })));
        assert!(matches!(expand("^3", digits), Err(NotationError::MalformedExponent { .. })));
        assert!(matches!(expand("(01", digits), Err(NotationError::Unbalanced { .. })));
        assert!(matches!(expand("01)", digits), Err(NotationError::Unbalanced { .. })));
        assert!(matches!(expand("0^99999999999", digits), Err(NotationError::TooLong { .. })));
    }

    #[test]
    fn compress_round_trips() {
        let s: Vec<char> = "uuuullllddrrr".chars().collect();
        assert_eq!(compress(&s), "u^4l^4ddr^3");
        assert_eq!(expand(&compress(&s), |c| "uldr".contains(c)).unwrap(), s);
        let d: Vec<char> = "222111111111110000".chars().collect();
        assert_eq!(compress(&d), "2^{3}1^{11}0^4");
        assert_eq!(expand(&compress(&d), digits).unwrap(), d);
    }
}
