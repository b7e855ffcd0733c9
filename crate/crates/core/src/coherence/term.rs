use std::fmt;

use super::word::{normalize_word, Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// A parenthesization tree; `Prod(x, y)` is the monoidal product `x·y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Unit,
    Leaf(Letter),
    Prod(Box<Term>, Box<Term>),
}

/// A tree address, read from the root; `false` is left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Position(pub Vec<bool>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    /// `L` repeated `n` times.
    pub fn lefts(n: usize) -> Self {
        Position(vec![false; n])
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'L' => Ok(false),
                'R' => Ok(true),
                _ => Err(Error::invalid(format!("bad position {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Position)
    }

    pub fn child(&self, right: bool) -> Self {
        let mut p = self.0.clone();
        p.push(right);
        Position(p)
    }

    pub fn left(&self) -> Self {
        self.child(false)
    }

    pub fn right(&self) -> Self {
        self.child(true)
    }

    /// `prefix` followed by `self`.
    pub fn under(&self, prefix: &Position) -> Self {
        let mut p = prefix.0.clone();
        p.extend_from_slice(&self.0);
        Position(p)
    }

    pub fn starts_with(&self, prefix: &Position) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &r in &self.0 {
            f.write_str(if r { "R" } else { "L" })?;
        }
        Ok(())
    }
}

impl Term {
    pub fn leaf(index: usize) -> Self {
        Term::Leaf(Letter::pos(index))
    }

    pub fn inv(index: usize) -> Self {
        Term::Leaf(Letter::neg(index))
    }

    pub fn prod(x: Term, y: Term) -> Self {
        Term::Prod(Box::new(x), Box::new(y))
    }

    /// Left-bracketed product of the letters; `I` for none.
    pub fn left_bracketed(letters: &[Letter]) -> Self {
        let mut it = letters.iter();
        match it.next() {
            None => Term::Unit,
            Some(&first) => it.fold(Term::Leaf(first), |acc, &l| Term::prod(acc, Term::Leaf(l))),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Term::Leaf(_))
    }

    pub fn letter(&self) -> Option<Letter> {
        match self {
            Term::Leaf(l) => Some(*l),
            _ => None,
        }
    }

    pub fn children(&self) -> Option<(&Term, &Term)> {
        match self {
            Term::Prod(x, y) => Some((x, y)),
            _ => None,
        }
    }

    /// Letters read left to right; units are skipped.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<Letter>) {
        match self {
            Term::Unit => {}
            Term::Leaf(l) => out.push(*l),
            Term::Prod(x, y) => {
                x.collect_letters(out);
                y.collect_letters(out);
            }
        }
    }

    /// The underlying signed word.
    pub fn word(&self) -> Word {
        Word::new(self.letters())
    }

    /// Number of letter leaves.
    pub fn size(&self) -> usize {
        match self {
            Term::Unit => 0,
            Term::Leaf(_) => 1,
            Term::Prod(x, y) => x.size() + y.size(),
        }
    }

    pub fn contains_unit(&self) -> bool {
        match self {
            Term::Unit => true,
            Term::Leaf(_) => false,
            Term::Prod(x, y) => x.contains_unit() || y.contains_unit(),
        }
    }

    pub fn subterm(&self, pos: &Position) -> Option<&Term> {
        let mut t = self;
        for &r in &pos.0 {
            let (x, y) = t.children()?;
            t = if r { y } else { x };
        }
        Some(t)
    }

    /// Replaces the subterm at `pos` by `f` of it.
    pub fn replace_at(&self, pos: &Position, f: impl FnOnce(&Term) -> Option<Term>) -> Option<Term> {
        self.replace_rec(&pos.0, f)
    }

    fn replace_rec(&self, path: &[bool], f: impl FnOnce(&Term) -> Option<Term>) -> Option<Term> {
        match path.split_first() {
            None => f(self),
            Some((&r, rest)) => {
                let (x, y) = self.children()?;
                if r {
                    Some(Term::prod(x.clone(), y.replace_rec(rest, f)?))
                } else {
                    Some(Term::prod(x.replace_rec(rest, f)?, y.clone()))
                }
            }
        }
    }

    /// Positions of all internal nodes, preorder.
    pub fn internal_positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        fn walk(t: &Term, p: &mut Vec<bool>, out: &mut Vec<Position>) {
            if let Term::Prod(x, y) = t {
                out.push(Position(p.clone()));
                p.push(false);
                walk(x, p, out);
                p.pop();
                p.push(true);
                walk(y, p, out);
                p.pop();
            }
        }
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Fully parenthesized rendering such as `((Fa*(Fb)^-)*Fc)`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        match self {
            Term::Unit => "I".to_string(),
            Term::Leaf(l) if l.inverted => format!("(F{})^-", alphabet.name(l.index)),
            Term::Leaf(l) => format!("F{}", alphabet.name(l.index)),
            Term::Prod(x, y) => format!("({}*{})", x.render(alphabet), y.render(alphabet)),
        }
    }

    /// Parses the rendering produced by [`Term::render`].
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Term> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        let t = parse_term(&chars, &mut i, alphabet)?;
        if i != chars.len() {
            return Err(Error::invalid(format!("trailing input in term {text:?}")));
        }
        Ok(t)
    }
}

fn parse_term(s: &[char], i: &mut usize, al: &Alphabet) -> Result<Term> {
    let bad = || Error::invalid("malformed term".to_string());
    match s.get(*i) {
        Some('I') => {
            *i += 1;
            Ok(Term::Unit)
        }
        Some('F') => {
            *i += 1;
            let start = *i;
            while *i < s.len() && (s[*i].is_alphanumeric() || s[*i] == '_') {
                *i += 1;
            }
            let name: String = s[start..*i].iter().collect();
            Ok(Term::leaf(al.index_of(&name)?))
        }
        Some('(') => {
            *i += 1;
            let x = parse_term(s, i, al)?;
            match s.get(*i) {
                Some('*') => {
                    *i += 1;
                    let y = parse_term(s, i, al)?;
                    if s.get(*i) != Some(&')') {
                        return Err(bad());
                    }
                    *i += 1;
                    Ok(Term::prod(x, y))
                }
                Some(')') => {
                    *i += 1;
                    if s.get(*i) == Some(&'^') && s.get(*i + 1) == Some(&'-') {
                        *i += 2;
                        match x {
                            Term::Leaf(l) if !l.inverted => Ok(Term::inv(l.index)),
                            _ => Err(bad()),
                        }
                    } else {
                        Err(bad())
                    }
                }
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

/// `F(w)`: the left-bracketed product over the normalized word.
pub fn interpret(w: &Word) -> Term {
    Term::left_bracketed(&normalize_word(w).letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interprets_the_worked_example() {
        let al = Alphabet::parse("a,b,c").unwrap();
        let w = al.parse_word("2a+b-c-a-2b").unwrap();
        let t = interpret(&w);
        assert_eq!(t.render(&al), "((Fa*(Fb)^-)*(Fc)^-)");
        assert_eq!(Term::parse(&t.render(&al), &al).unwrap(), t);
        assert_eq!(interpret(&Word::empty()), Term::Unit);
        assert_eq!(interpret(&al.parse_word("-a").unwrap()), Term::inv(0));
        assert_eq!(interpret(&al.parse_word("a").unwrap()), Term::leaf(0));
    }

    #[test]
    fn subterm_replacement() {
        let t = Term::prod(Term::prod(Term::leaf(0), Term::leaf(1)), Term::leaf(2));
        let p = Position::parse("LR").unwrap();
        assert_eq!(t.subterm(&p), Some(&Term::leaf(1)));
        let u = t.replace_at(&p, |_| Some(Term::Unit)).unwrap();
        assert_eq!(u.letters().len(), 2);
        assert_eq!(t.internal_positions().len(), 2);
        assert_eq!(p.to_string(), "LR");
    }
}
