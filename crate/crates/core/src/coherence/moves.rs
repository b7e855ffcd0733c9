use std::fmt;

use super::term::{Position, Term};
use super::word::{Alphabet, Letter};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    /// `X·(Y·Z) → (X·Y)·Z`
    AssocLeft,
    /// `(X·Y)·Z → X·(Y·Z)`
    AssocRight,
    /// `x·y → y·x` for two letters.
    SwapAdjacent,
    /// `X·Y → Y·X` for arbitrary operands.
    Braid,
    /// `x·x^* → I`; the inverse move needs the letter.
    PairInverse,
    /// `X·I → X`
    UnitElimRight,
    /// `I·X → X`
    UnitElimLeft,
}

impl MoveKind {
    pub const ALL: [MoveKind; 7] = [
        MoveKind::AssocLeft,
        MoveKind::AssocRight,
        MoveKind::SwapAdjacent,
        MoveKind::Braid,
        MoveKind::PairInverse,
        MoveKind::UnitElimRight,
        MoveKind::UnitElimLeft,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::AssocLeft => "assoc_left",
            MoveKind::AssocRight => "assoc_right",
            MoveKind::SwapAdjacent => "swap_adjacent",
            MoveKind::Braid => "braid",
            MoveKind::PairInverse => "pair_inverse",
            MoveKind::UnitElimRight => "unit_elim_right",
            MoveKind::UnitElimLeft => "unit_elim_left",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::invalid(format!("unknown move kind {name:?}")))
    }

    /// Single parenthesis shifts and adjacent swaps.
    pub fn is_skeletal(self) -> bool {
        matches!(self, MoveKind::AssocLeft | MoveKind::AssocRight | MoveKind::SwapAdjacent)
    }
}

/// An elementary move applied at a tree address.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub kind: MoveKind,
    pub position: Position,
    /// Formal inverse of `kind`.
    pub inverse: bool,
    /// The letter created by an inverse `pair_inverse`.
    pub letter: Option<Letter>,
}

impl Move {
    pub fn new(kind: MoveKind, position: Position) -> Self {
        Move {
            kind,
            position,
            inverse: false,
            letter: None,
        }
    }

    pub fn at(kind: MoveKind, position: &str) -> Self {
        Move::new(kind, Position::parse(position).expect("valid position literal"))
    }

    pub fn assoc_left(p: Position) -> Self {
        Move::new(MoveKind::AssocLeft, p)
    }

    pub fn assoc_right(p: Position) -> Self {
        Move::new(MoveKind::AssocRight, p)
    }

    pub fn swap(p: Position) -> Self {
        Move::new(MoveKind::SwapAdjacent, p)
    }

    pub fn braid(p: Position) -> Self {
        Move::new(MoveKind::Braid, p)
    }

    pub fn under(&self, prefix: &Position) -> Self {
        Move {
            position: self.position.under(prefix),
            ..self.clone()
        }
    }

    /// True for shifts and swaps of two letters, whatever the direction.
    pub fn is_skeletal(&self) -> bool {
        self.kind.is_skeletal()
    }

    /// Wire name: the kind, suffixed by `_inv` for formal inverses.
    pub fn name(&self) -> String {
        if self.inverse {
            format!("{}_inv", self.kind.name())
        } else {
            self.kind.name().to_string()
        }
    }

    /// The move undoing `self` when applied to `self.apply(source)`.
    pub fn inverse_from(&self, source: &Term) -> Result<Move> {
        let p = self.position.clone();
        Ok(match (self.kind, self.inverse) {
            (MoveKind::AssocLeft, false) | (MoveKind::AssocRight, true) => Move::assoc_right(p),
            (MoveKind::AssocRight, false) | (MoveKind::AssocLeft, true) => Move::assoc_left(p),
            (MoveKind::SwapAdjacent, _) | (MoveKind::Braid, _) => Move::new(self.kind, p),
            (MoveKind::PairInverse, false) => {
                let l = source
                    .subterm(&p)
                    .and_then(|t| t.children())
                    .and_then(|(x, _)| x.letter())
                    .ok_or_else(|| Error::invalid("pair_inverse not applicable".to_string()))?;
                Move {
                    kind: MoveKind::PairInverse,
                    position: p,
                    inverse: true,
                    letter: Some(l),
                }
            }
            (kind, inv) => Move {
                kind,
                position: p,
                inverse: !inv,
                letter: None,
            },
        })
    }

    /// Applies the move; `None` when its precondition fails.
    pub fn try_apply(&self, t: &Term) -> Option<Term> {
        t.replace_at(&self.position, |s| self.apply_here(s))
    }

    pub fn apply(&self, t: &Term) -> Result<Term> {
        self.try_apply(t).ok_or_else(|| {
            Error::invalid(format!("move {} not applicable at {:?}", self.name(), self.position.to_string()))
        })
    }

    fn apply_here(&self, s: &Term) -> Option<Term> {
        use MoveKind::*;
        let kids = s.children();
        match (self.kind, self.inverse) {
            (AssocLeft, false) | (AssocRight, true) => {
                let (x, yz) = kids?;
                let (y, z) = yz.children()?;
                Some(Term::prod(Term::prod(x.clone(), y.clone()), z.clone()))
            }
            (AssocRight, false) | (AssocLeft, true) => {
                let (xy, z) = kids?;
                let (x, y) = xy.children()?;
                Some(Term::prod(x.clone(), Term::prod(y.clone(), z.clone())))
            }
            (SwapAdjacent, _) => {
                let (x, y) = kids?;
                (x.is_leaf() && y.is_leaf()).then(|| Term::prod(y.clone(), x.clone()))
            }
            (Braid, _) => {
                let (x, y) = kids?;
                Some(Term::prod(y.clone(), x.clone()))
            }
            (PairInverse, false) => {
                let (x, y) = kids?;
                let (a, b) = (x.letter()?, y.letter()?);
                (a.index == b.index && !a.inverted && b.inverted).then_some(Term::Unit)
            }
            (PairInverse, true) => {
                let l = self.letter?;
                (*s == Term::Unit).then(|| Term::prod(Term::leaf(l.index), Term::inv(l.index)))
            }
            (UnitElimRight, false) => {
                let (x, y) = kids?;
                (*y == Term::Unit).then(|| x.clone())
            }
            (UnitElimRight, true) => Some(Term::prod(s.clone(), Term::Unit)),
            (UnitElimLeft, false) => {
                let (x, y) = kids?;
                (*x == Term::Unit).then(|| y.clone())
            }
            (UnitElimLeft, true) => Some(Term::prod(Term::Unit, s.clone())),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.name(), self.position)
    }
}

/// A source term with a list of moves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: Term,
    moves: Vec<Move>,
    target: Term,
}

impl Path {
    pub fn identity(t: Term) -> Self {
        Path {
            source: t.clone(),
            moves: Vec::new(),
            target: t,
        }
    }

    /// Replays the moves, failing on the first one that does not apply.
    pub fn new(source: Term, moves: Vec<Move>) -> Result<Self> {
        let mut t = source.clone();
        for (k, m) in moves.iter().enumerate() {
            t = m
                .try_apply(&t)
                .ok_or_else(|| Error::invalid(format!("move {k} ({m}) does not apply")))?;
        }
        Ok(Path {
            source,
            moves,
            target: t,
        })
    }

    /// Builds the path and checks the declared endpoint.
    pub fn with_target(source: Term, moves: Vec<Move>, target: &Term) -> Result<Self> {
        let p = Path::new(source, moves)?;
        if &p.target != target {
            return Err(Error::invalid("path does not end at the declared target"));
        }
        Ok(p)
    }

    pub fn source(&self) -> &Term {
        &self.source
    }

    pub fn target(&self) -> &Term {
        &self.target
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, m: Move) -> Result<()> {
        self.target = m.apply(&self.target)?;
        self.moves.push(m);
        Ok(())
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn then(&self, other: &Path) -> Result<Path> {
        if self.target != other.source {
            return Err(Error::invalid("paths do not compose"));
        }
        let mut moves = self.moves.clone();
        moves.extend_from_slice(&other.moves);
        Ok(Path {
            source: self.source.clone(),
            moves,
            target: other.target.clone(),
        })
    }

    /// The same moves acting on the subterm at `prefix` of `context`.
    pub fn whisker(&self, context: &Term, prefix: &Position) -> Result<Path> {
        if context.subterm(prefix) != Some(&self.source) {
            return Err(Error::invalid("whiskering context does not contain the source"));
        }
        Path::new(context.clone(), self.moves.iter().map(|m| m.under(prefix)).collect())
    }

    pub fn reversed(&self) -> Result<Path> {
        let terms = self.vertices();
        let mut moves = Vec::with_capacity(self.moves.len());
        for k in (0..self.moves.len()).rev() {
            moves.push(self.moves[k].inverse_from(&terms[k])?);
        }
        Path::new(self.target.clone(), moves)
    }

    /// The running terms, `len() + 1` of them.
    pub fn vertices(&self) -> Vec<Term> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        let mut t = self.source.clone();
        out.push(t.clone());
        for m in &self.moves {
            t = m.try_apply(&t).expect("path moves were checked on construction");
            out.push(t.clone());
        }
        out
    }

    /// Moves paired with the term they act on.
    pub fn steps(&self) -> Vec<(Term, Move, Term)> {
        let v = self.vertices();
        self.moves
            .iter()
            .enumerate()
            .map(|(k, m)| (v[k].clone(), m.clone(), v[k + 1].clone()))
            .collect()
    }

    pub fn count(&self, kind: MoveKind) -> usize {
        self.moves.iter().filter(|m| m.kind == kind).count()
    }

    pub fn is_skeletal(&self) -> bool {
        self.moves.iter().all(Move::is_skeletal)
    }

    pub fn slice(&self, from: usize, to: usize) -> Path {
        let v = self.vertices();
        Path {
            source: v[from].clone(),
            moves: self.moves[from..to].to_vec(),
            target: v[to].clone(),
        }
    }

    pub fn render_moves(&self) -> Vec<String> {
        self.moves.iter().map(ToString::to_string).collect()
    }

    pub fn describe(&self, alphabet: &Alphabet) -> String {
        format!(
            "{} -> {} via [{}]",
            self.source.render(alphabet),
            self.target.render(alphabet),
            self.render_moves().join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moves_apply_and_invert() {
        let t = Term::prod(Term::leaf(0), Term::prod(Term::leaf(1), Term::leaf(2)));
        let m = Move::at(MoveKind::AssocLeft, "");
        let u = m.apply(&t).unwrap();
        assert_eq!(u, Term::prod(Term::prod(Term::leaf(0), Term::leaf(1)), Term::leaf(2)));
        assert_eq!(m.inverse_from(&t).unwrap().apply(&u).unwrap(), t);
        assert!(Move::at(MoveKind::SwapAdjacent, "").try_apply(&t).is_none());
        assert!(Move::at(MoveKind::Braid, "").try_apply(&t).is_some());

        let pair = Term::prod(Term::leaf(1), Term::inv(1));
        let cancel = Move::at(MoveKind::PairInverse, "");
        assert_eq!(cancel.apply(&pair).unwrap(), Term::Unit);
        assert_eq!(cancel.inverse_from(&pair).unwrap().apply(&Term::Unit).unwrap(), pair);
        assert!(cancel.try_apply(&Term::prod(Term::inv(1), Term::leaf(1))).is_none());
    }

    #[test]
    fn paths_reverse() {
        let t = Term::prod(Term::prod(Term::leaf(1), Term::leaf(0)), Term::Unit);
        let p = Path::new(
            t.clone(),
            vec![Move::at(MoveKind::UnitElimRight, ""), Move::at(MoveKind::SwapAdjacent, "")],
        )
        .unwrap();
        assert_eq!(p.target(), &Term::prod(Term::leaf(0), Term::leaf(1)));
        let r = p.reversed().unwrap();
        assert_eq!(r.target(), &t);
        assert_eq!(p.then(&r).unwrap().target(), &t);
        assert!(Path::new(t, vec![Move::at(MoveKind::AssocLeft, "")]).is_err());
    }
}
