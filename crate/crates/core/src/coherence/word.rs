use std::fmt;

use crate::error::{Error, Result};

/// An ordered set of letter names; the order is list order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || !valid_name(s) {
                return Err(Error::invalid(format!("invalid letter name {s:?}")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::invalid(format!("letter {s:?} listed twice")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Parses `a,b,c`.
    pub fn parse(list: &str) -> Result<Self> {
        Self::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    /// The given names sorted lexicographically.
    pub fn lexicographic<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut v: Vec<String> = symbols.into_iter().map(Into::into).collect();
        v.sort();
        v.dedup();
        Self::new(v)
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::invalid(format!("unknown letter {name:?}")))
    }

    pub fn name(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    /// Parses a signed sum such as `2a+b-c-a-2b`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(self, text)
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// A letter occurrence with its sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverted: bool,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter { index, inverted: false }
    }

    pub fn neg(index: usize) -> Self {
        Letter { index, inverted: true }
    }

    pub fn sign(&self) -> i64 {
        if self.inverted {
            -1
        } else {
            1
        }
    }
}

/// A word of `Z(E)`, a sequence of signed letters; unreduced words are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    /// Word with the given net coefficient for each letter index.
    pub fn from_coefficients(coeffs: &[i64]) -> Self {
        let mut letters = Vec::new();
        for (i, &c) in coeffs.iter().enumerate() {
            let l = if c < 0 { Letter::neg(i) } else { Letter::pos(i) };
            letters.extend(std::iter::repeat_n(l, c.unsigned_abs() as usize));
        }
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverted)
    }

    /// Concatenation, the sum in `Z(E)` before simplification.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn negate(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter {
                    index: l.index,
                    inverted: !l.inverted,
                })
                .collect(),
        }
    }

    /// Net coefficient of every letter up to `n` letters.
    pub fn coefficients(&self, n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n.max(self.letters.iter().map(|l| l.index + 1).max().unwrap_or(0))];
        for l in &self.letters {
            c[l.index] += l.sign();
        }
        c
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.letters.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, l) in self.letters.iter().enumerate() {
            if l.inverted {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            out.push_str(alphabet.name(l.index));
        }
        out
    }

    /// Checks that every letter belongs to the alphabet.
    pub fn check(&self, alphabet: &Alphabet) -> Result<()> {
        match self.letters.iter().find(|l| l.index >= alphabet.len()) {
            Some(l) => Err(Error::invalid(format!("letter index {} outside the alphabet", l.index))),
            None => Ok(()),
        }
    }
}

/// Cancels, drops zero coefficients and sorts letters by the alphabet order.
pub fn normalize_word(w: &Word) -> Word {
    let n = w.letters.iter().map(|l| l.index + 1).max().unwrap_or(0);
    Word::from_coefficients(&w.coefficients(n))
}

/// Sorts all letters of `w1 + w2` without cancelling: by letter, positive
/// copies before inverses, `w1`'s copies before `w2`'s. Returns the merged
/// letters with their origin (`false` for `w1`).
pub(crate) fn merge_ordered(w1: &Word, w2: &Word) -> Vec<(Letter, bool)> {
    let mut all: Vec<(Letter, bool, usize)> = Vec::new();
    for (k, l) in w1.letters.iter().enumerate() {
        all.push((*l, false, k));
    }
    for (k, l) in w2.letters.iter().enumerate() {
        all.push((*l, true, k));
    }
    all.sort_by_key(|&(l, origin, k)| (l.index, l.inverted, origin, k));
    all.into_iter().map(|(l, o, _)| (l, o)).collect()
}

fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word> {
    let s: Vec<char> = text.trim().chars().collect();
    if s.is_empty() || s == ['0'] {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    let mut i = 0;
    let bad = |msg: &str| Error::invalid(format!("cannot parse word {text:?}: {msg}"));
    let skip_space = |i: &mut usize| {
        while *i < s.len() && s[*i].is_whitespace() {
            *i += 1;
        }
    };
    while i < s.len() {
        let mut sign = 1i64;
        if s[i] == '+' || s[i] == '-' {
            if s[i] == '-' {
                sign = -1;
            }
            i += 1;
            skip_space(&mut i);
        } else if i > 0 {
            return Err(bad("expected + or -"));
        }
        let start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: i64 = if i > start {
            s[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| bad("coefficient too large"))?
        } else {
            1
        };
        let name_start = i;
        while i < s.len() && (s[i].is_alphanumeric() || s[i] == '_') {
            if i == name_start && s[i].is_ascii_digit() {
                break;
            }
            i += 1;
        }
        if i == name_start {
            return Err(bad("expected a letter"));
        }
        let name: String = s[name_start..i].iter().collect();
        let index = alphabet.index_of(&name)?;
        let l = if sign < 0 { Letter::neg(index) } else { Letter::pos(index) };
        letters.extend(std::iter::repeat_n(l, coeff as usize));
        skip_space(&mut i);
    }
    Ok(Word { letters })
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.inverted { "-" } else { "+" }, self.index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::parse("a,b,c").unwrap()
    }

    #[test]
    fn normalizes_the_worked_example() {
        let al = abc();
        let w = al.parse_word("2a+b-c-a-2b").unwrap();
        assert_eq!(normalize_word(&w).render(&al), "a-b-c");
        assert!(normalize_word(&Word::empty()).is_empty());
        let aa = al.parse_word("a+a").unwrap();
        assert_eq!(normalize_word(&aa), aa);
    }

    #[test]
    fn rejects_bad_input() {
        let al = abc();
        assert!(al.parse_word("a+d").is_err());
        assert!(al.parse_word("a b").is_err());
        assert_eq!(al.parse_word(" 2a - b ").unwrap().len(), 3);
        assert!(al.parse_word("a*b").is_err());
        assert!(Alphabet::parse("a,a").is_err());
    }

    #[test]
    fn merge_is_stable() {
        let al = abc();
        let (w1, w2) = (al.parse_word("b+c").unwrap(), al.parse_word("a-b").unwrap());
        let m: Vec<Letter> = merge_ordered(&w1, &w2).into_iter().map(|x| x.0).collect();
        assert_eq!(m, vec![Letter::pos(0), Letter::pos(1), Letter::neg(1), Letter::pos(2)]);
    }
}
