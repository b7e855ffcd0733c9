use super::lambda::{order_and_bracket, tau_path};
use super::moves::{Move, MoveKind, Path};
use super::psi::classify;
use super::term::{interpret, Position, Term};
use super::witness::{Case, Cell, CellKind, TwoCellWitness};
use super::word::{normalize_word, Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// One replacement of a braiding by five edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub depth: usize,
    pub position: Position,
    /// Leaf counts of the two braided operands.
    pub sizes: (usize, usize),
    /// Leaf counts of the two braidings that replace it.
    pub replaced_by: [(usize, usize); 2],
}

/// A braiding of two letters left after substitution: `first` comes from
/// the second word and passes `second`, which comes from the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residual {
    pub first: Letter,
    pub second: Letter,
}

impl Residual {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let name = |l: Letter| {
            let n = alphabet.name(l.index);
            if l.inverted {
                format!("{n}^*")
            } else {
                n.to_string()
            }
        };
        format!("c_{{({}|{})}}", name(self.first), name(self.second))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiCell {
    /// `c` followed by λ with the braiding replaced by skeletal moves.
    pub substituted: Path,
    pub witness: TwoCellWitness,
    pub log: Vec<Substitution>,
    pub residual: Vec<Residual>,
}

struct Expansion {
    hexagons: Vec<Cell>,
    log: Vec<Substitution>,
    residual: Vec<Residual>,
}

impl Expansion {
    /// Skeletal moves equivalent to `braid` at `p` of `t`.
    fn expand(&mut self, t: &Term, p: &Position, depth: usize) -> Result<Vec<Move>> {
        let (x, y) = t
            .subterm(p)
            .and_then(Term::children)
            .ok_or_else(|| Error::internal("braiding at a non-product"))?;
        if let (Some(a), Some(b)) = (x.letter(), y.letter()) {
            self.residual.push(Residual { first: b, second: a });
            return Ok(vec![Move::swap(p.clone())]);
        }
        let (five, inner) = if let Some((x1, x2)) = x.children() {
            let five = vec![
                Move::assoc_right(p.clone()),
                Move::braid(p.right()),
                Move::assoc_left(p.clone()),
                Move::braid(p.left()),
                Move::assoc_right(p.clone()),
            ];
            (five, [(x2.size(), y.size()), (x1.size(), y.size())])
        } else {
            let (y1, y2) = y.children().ok_or_else(|| Error::internal("braiding with a unit operand"))?;
            let five = vec![
                Move::assoc_left(p.clone()),
                Move::braid(p.left()),
                Move::assoc_right(p.clone()),
                Move::braid(p.right()),
                Move::assoc_left(p.clone()),
            ];
            (five, [(x.size(), y1.size()), (x.size(), y2.size())])
        };
        let mut boundary = five.clone();
        boundary.push(Move::braid(p.clone()));
        self.hexagons.push(Cell {
            kind: CellKind::Hexagon,
            label: "hexagon".to_string(),
            coefficient: 1,
            boundary: letter_braids_as_swaps(&Path::new(t.clone(), boundary)?)?,
        });
        if x == y {
            // the closing braiding is a loop, traversed forward instead of
            // backward; c_{x,x}^2 = id turns it around
            self.hexagons.push(Cell {
                kind: CellKind::Structural,
                label: "c_{x,x}^2 => id".to_string(),
                coefficient: -1,
                boundary: Path::new(t.clone(), vec![Move::braid(p.clone()), Move::braid(p.clone())])?,
            });
        }
        self.log.push(Substitution {
            depth,
            position: p.clone(),
            sizes: (x.size(), y.size()),
            replaced_by: inner,
        });
        let mut out = Vec::new();
        let mut cur = t.clone();
        for m in five {
            let ms = if m.kind == MoveKind::Braid {
                self.expand(&cur, &m.position, depth + 1)?
            } else {
                vec![m]
            };
            for m in ms {
                cur = m.apply(&cur)?;
                out.push(m);
            }
        }
        Ok(out)
    }
}

/// A braiding of two letters is the swap edge itself.
fn letter_braids_as_swaps(p: &Path) -> Result<Path> {
    let moves = p
        .steps()
        .into_iter()
        .map(|(u, m, _)| {
            let letters = u
                .subterm(&m.position)
                .and_then(Term::children)
                .is_some_and(|(x, y)| x.is_leaf() && y.is_leaf());
            if m.kind == MoveKind::Braid && letters {
                Move::swap(m.position)
            } else {
                m
            }
        })
        .collect();
    Path::new(p.source().clone(), moves)
}

/// Whether `x` precedes `y` in the stable merge of two one-letter words.
fn precedes(x: Letter, y: Letter) -> bool {
    (x.index, x.inverted) < (y.index, y.inverted)
}

/// φ′: compares λ with the braiding followed by λ in the other order; both
/// end at the ordered product. Letters may carry signs.
fn phi_prime(w1: &Word, w2: &Word) -> Result<PhiCell> {
    let (a, b) = (normalize_word(w1), normalize_word(w2));
    if a.len() + b.len() == 0 {
        return Err(Error::invalid("φ needs at least one letter"));
    }
    let start = Term::prod(interpret(&a), interpret(&b));
    let top = order_and_bracket(&a, &b)?.path;
    let after = order_and_bracket(&b, &a)?.path;
    let braid = Path::new(start.clone(), vec![Move::braid(Position::root())])?;
    if &braid.target().clone() != after.source() {
        return Err(Error::internal("braiding does not reach the swapped product"));
    }
    let bottom = braid.then(&after)?;
    if a.len() == 1 && b.len() == 1 {
        let (x, y) = (a.letters[0], b.letters[0]);
        let swap = Path::new(start.clone(), vec![Move::swap(Position::root())])?;
        let bottom_sub = swap.then(&after)?;
        let residual = vec![Residual { first: y, second: x }];
        // a swap of equal letters is a loop, so its reversal is itself
        let (boundary, coefficient) = if x == y {
            (bottom_sub.clone(), -1)
        } else {
            (top.then(&bottom_sub.reversed()?)?, 1)
        };
        let loop_cell = |label: &str| -> Result<Cell> {
            Ok(Cell {
                kind: CellKind::Structural,
                label: label.to_string(),
                coefficient,
                boundary: boundary.clone(),
            })
        };
        let witness = if x == y {
            TwoCellWitness::simple(Case::Tiling, "id", top, bottom_sub.clone(), vec![loop_cell("c_{a,a} => id")?])
        } else if precedes(x, y) {
            TwoCellWitness::simple(Case::StrictInclusion, "id => c^2", top, bottom_sub.clone(), vec![loop_cell("id => c^2")?])
        } else {
            classify(top, bottom_sub.clone())?
        };
        witness.verify()?;
        return Ok(PhiCell {
            substituted: bottom_sub,
            witness,
            log: Vec::new(),
            residual,
        });
    }
    if a.is_empty() || b.is_empty() {
        let cell = Cell {
            kind: CellKind::Structural,
            label: "unit symmetry".to_string(),
            coefficient: 1,
            boundary: top.then(&bottom.reversed()?)?,
        };
        let witness = TwoCellWitness::simple(Case::Tiling, "unit symmetry", top, bottom.clone(), vec![cell]);
        witness.verify()?;
        return Ok(PhiCell {
            substituted: bottom,
            witness,
            log: Vec::new(),
            residual: Vec::new(),
        });
    }
    let mut ex = Expansion {
        hexagons: Vec::new(),
        log: Vec::new(),
        residual: Vec::new(),
    };
    let moves = ex.expand(&start, &Position::root(), 0)?;
    let substituted = Path::with_target(start, moves, after.source())?.then(&after)?;
    let inner = classify(top.clone(), substituted.clone())?;
    let mut cells = ex.hexagons;
    cells.extend(inner.cells);
    let witness = TwoCellWitness::simple(Case::Tiling, "phi", top, bottom, cells);
    witness.verify()?;
    Ok(PhiCell {
        substituted,
        witness,
        log: ex.log,
        residual: ex.residual,
    })
}

/// φ for positive words.
pub fn phi_cell(w1: &Word, w2: &Word) -> Result<PhiCell> {
    if !w1.is_positive() || !w2.is_positive() {
        return Err(Error::invalid("negative letter in a monoid-case word; use phi_tilde"));
    }
    phi_prime(w1, w2)
}

/// φ̃ for signed words: φ′ up to the ordered product, then the common τ.
pub fn phi_tilde(w1: &Word, w2: &Word) -> Result<PhiCell> {
    let mut cell = phi_prime(w1, w2)?;
    let mid = cell.witness.top.target().clone();
    let (tau12, _) = tau_path(&mid)?;
    let (tau21, _) = tau_path(cell.witness.bottom.target())?;
    if tau12 != tau21 {
        return Err(Error::internal("the two cancelations differ"));
    }
    if tau12.is_empty() {
        return Ok(cell);
    }
    let left = cell.witness;
    let right = TwoCellWitness::simple(Case::EqualPaths, "id", tau12.clone(), tau21, Vec::new());
    let witness = TwoCellWitness {
        case: left.case,
        label: "phi~".to_string(),
        top: left.top.then(&tau12)?,
        bottom: left.bottom.then(&right.bottom)?,
        cells: Vec::new(),
        segments: vec![left, right],
        split: Some(mid),
    };
    witness.verify()?;
    cell.substituted = cell.substituted.then(&tau12)?;
    cell.witness = witness;
    Ok(cell)
}
