use super::moves::{Move, MoveKind, Path};
use super::term::{interpret, Position, Term};
use super::word::{merge_ordered, normalize_word, Letter, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// A letter of the first word.
    Right,
    /// A letter of the second word.
    Up,
}

/// A monotone staircase from `(0,0)` to `(m,n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    pub steps: Vec<Step>,
}

impl LatticePath {
    /// All right steps, then all up steps: the plain concatenation.
    pub fn concatenation(m: usize, n: usize) -> Self {
        let mut steps = vec![Step::Right; m];
        steps.extend(std::iter::repeat_n(Step::Up, n));
        LatticePath { steps }
    }

    pub fn rights(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::Right).count()
    }

    pub fn ups(&self) -> usize {
        self.steps.len() - self.rights()
    }

    /// Lattice points visited, starting at the origin.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut p = (0, 0);
        let mut out = vec![p];
        for s in &self.steps {
            match s {
                Step::Right => p.0 += 1,
                Step::Up => p.1 += 1,
            }
            out.push(p);
        }
        out
    }

    /// Points entered by a right step and left by an up step, with the
    /// index of that right step.
    pub fn corners(&self) -> Vec<((usize, usize), usize)> {
        let pts = self.points();
        (0..self.steps.len().saturating_sub(1))
            .filter(|&k| self.steps[k] == Step::Right && self.steps[k + 1] == Step::Up)
            .map(|k| (pts[k + 1], k))
            .collect()
    }
}

fn positive_normal(w: &Word) -> Result<Word> {
    let n = normalize_word(w);
    if !w.is_positive() {
        return Err(Error::invalid("negative letter in a monoid-case word; use lambda_tilde"));
    }
    Ok(n)
}

/// The staircase of the stable merge of `w1` and `w2`.
pub fn shuffle_of(w1: &Word, w2: &Word) -> Result<LatticePath> {
    let (a, b) = (positive_normal(w1)?, positive_normal(w2)?);
    Ok(merge_path(&a, &b))
}

fn merge_path(a: &Word, b: &Word) -> LatticePath {
    LatticePath {
        steps: merge_ordered(a, b)
            .into_iter()
            .map(|(_, second)| if second { Step::Up } else { Step::Right })
            .collect(),
    }
}

/// Pairs `(a_i, b_j)` with `b_j` strictly before `a_i`.
pub fn inversion_count(w1: &Word, w2: &Word) -> Result<usize> {
    let (a, b) = (positive_normal(w1)?, positive_normal(w2)?);
    Ok(a.letters
        .iter()
        .map(|x| b.letters.iter().filter(|y| y.index < x.index).count())
        .sum())
}

/// Corner points replaced while turning the concatenation into the merge
/// staircase, least `y` first. Pure lattice geometry.
pub fn corner_schedule(w1: &Word, w2: &Word) -> Result<Vec<(usize, usize)>> {
    let (a, b) = (positive_normal(w1)?, positive_normal(w2)?);
    let target = merge_path(&a, &b);
    let on_target: std::collections::HashSet<_> = target.points().into_iter().collect();
    let mut cur = LatticePath::concatenation(a.len(), b.len());
    let mut out = Vec::new();
    while cur != target {
        let (pt, k) = cur
            .corners()
            .into_iter()
            .filter(|(pt, _)| !on_target.contains(pt))
            .min_by_key(|((_, y), _)| *y)
            .ok_or_else(|| Error::internal("no corner point off the target staircase"))?;
        cur.steps.swap(k, k + 1);
        out.push(pt);
    }
    Ok(out)
}

/// A λ path with its phases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaPath {
    pub path: Path,
    /// Parenthesis shifts bringing everything to the left.
    pub step1: usize,
    /// Unit eliminations after the shifts; at most one.
    pub units: usize,
    /// Moves of the ordering phase.
    pub step2: usize,
    /// Corner points, in lattice coordinates, in the order they were used.
    pub corners: Vec<(usize, usize)>,
}

impl LambdaPath {
    pub fn swaps(&self) -> usize {
        self.path.count(MoveKind::SwapAdjacent)
    }
}

/// Moves exchanging letters `k` and `k+1` (zero based) of a left-bracketed
/// product of `n` letters.
pub(crate) fn adjacent_exchange(k: usize, n: usize) -> Vec<Move> {
    if k == 0 {
        return vec![Move::swap(Position::lefts(n - 2))];
    }
    let p = Position::lefts(n - k - 2);
    vec![Move::assoc_right(p.clone()), Move::swap(p.right()), Move::assoc_left(p)]
}

/// Builds λ from `F(w1)·F(w2)` to the product over the stable merge of the
/// two letter lists, without cancelling anything.
pub(crate) fn order_and_bracket(w1: &Word, w2: &Word) -> Result<LambdaPath> {
    let (a, b) = (normalize_word(w1), normalize_word(w2));
    let source = Term::prod(interpret(&a), interpret(&b));
    let mut path = Path::identity(source);
    let (m, n) = (a.len(), b.len());
    for k in 0..n.saturating_sub(1) {
        path.push(Move::assoc_left(Position::lefts(k)))?;
    }
    let step1 = n.saturating_sub(1);
    let mut units = 0;
    if n == 0 {
        path.push(Move::new(MoveKind::UnitElimRight, Position::root()))?;
        units = 1;
    } else if m == 0 {
        path.push(Move::new(MoveKind::UnitElimLeft, Position::lefts(n - 1)))?;
        units = 1;
    }
    let before = path.len();
    let mut corners = Vec::new();
    if m > 0 && n > 0 {
        let merged = merge_ordered(&a, &b);
        // target rank of every letter, first word then second
        let mut rank_a = Vec::with_capacity(m);
        let mut rank_b = Vec::with_capacity(n);
        {
            let (mut ia, mut ib) = (0usize, 0usize);
            let mut order: Vec<(bool, usize)> = Vec::new();
            for (_, second) in &merged {
                if *second {
                    order.push((true, ib));
                    ib += 1;
                } else {
                    order.push((false, ia));
                    ia += 1;
                }
            }
            rank_a.resize(m, 0);
            rank_b.resize(n, 0);
            for (r, (second, i)) in order.into_iter().enumerate() {
                if second {
                    rank_b[i] = r;
                } else {
                    rank_a[i] = r;
                }
            }
        }
        // current sequence: (second word?, index within its word)
        let mut seq: Vec<(bool, usize)> = (0..m).map(|i| (false, i)).chain((0..n).map(|j| (true, j))).collect();
        let rank = |e: (bool, usize)| if e.0 { rank_b[e.1] } else { rank_a[e.1] };
        loop {
            let mut pick = None;
            for k in 1..seq.len() {
                let (left, right) = (seq[k - 1], seq[k]);
                if right.0 && !left.0 && rank(left) > rank(right) {
                    let better = match pick {
                        None => true,
                        Some((_, j)) => right.1 < j,
                    };
                    if better {
                        pick = Some((k - 1, right.1));
                    }
                }
            }
            let Some((k, j)) = pick else { break };
            let i = seq[..=k].iter().filter(|e| !e.0).count();
            corners.push((i, j));
            for mv in adjacent_exchange(k, m + n) {
                path.push(mv)?;
            }
            seq.swap(k, k + 1);
        }
    }
    let step2 = path.len() - before;
    let expected = Term::left_bracketed(&merge_ordered(&a, &b).into_iter().map(|x| x.0).collect::<Vec<_>>());
    if path.target() != &expected {
        return Err(Error::internal("λ did not reach the ordered product"));
    }
    Ok(LambdaPath {
        path,
        step1,
        units,
        step2,
        corners,
    })
}

/// λ for positive words: from `F(w1)·F(w2)` to `F(w1+w2)`.
pub fn lambda_path(w1: &Word, w2: &Word) -> Result<Path> {
    Ok(lambda_detailed(w1, w2)?.path)
}

pub fn lambda_detailed(w1: &Word, w2: &Word) -> Result<LambdaPath> {
    positive_normal(w1)?;
    positive_normal(w2)?;
    order_and_bracket(w1, w2)
}

/// First adjacent `x·x^*` pair in a letter list.
fn first_pair(seq: &[Letter]) -> Option<usize> {
    (0..seq.len().saturating_sub(1))
        .find(|&k| seq[k].index == seq[k + 1].index && !seq[k].inverted && seq[k + 1].inverted)
}

/// τ: cancels adjacent pairs of a left-bracketed product, least letter
/// first. Returns the path and the number of cancelation blocks.
pub fn tau_path(start: &Term) -> Result<(Path, usize)> {
    let mut seq = start.letters();
    if Term::left_bracketed(&seq) != *start {
        return Err(Error::invalid("τ needs a left-bracketed product"));
    }
    let mut path = Path::identity(start.clone());
    let mut blocks = 0;
    while let Some(k) = first_pair(&seq) {
        let n = seq.len();
        if k == 0 {
            path.push(Move::new(MoveKind::PairInverse, Position::lefts(n - 2)))?;
            if n > 2 {
                path.push(Move::new(MoveKind::UnitElimLeft, Position::lefts(n - 3)))?;
            }
        } else {
            let p = Position::lefts(n - k - 2);
            path.push(Move::assoc_right(p.clone()))?;
            path.push(Move::new(MoveKind::PairInverse, p.right()))?;
            path.push(Move::new(MoveKind::UnitElimRight, p))?;
        }
        seq.drain(k..k + 2);
        blocks += 1;
    }
    Ok((path, blocks))
}

/// λ̃ with its midpoint `F(w_{1,2})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaTilde {
    pub path: Path,
    pub lambda: LambdaPath,
    pub tau: Path,
    pub blocks: usize,
}

impl LambdaTilde {
    pub fn midpoint(&self) -> &Term {
        self.lambda.path.target()
    }
}

pub fn lambda_tilde_detailed(w1: &Word, w2: &Word) -> Result<LambdaTilde> {
    let lambda = order_and_bracket(w1, w2)?;
    let (tau, blocks) = tau_path(lambda.path.target())?;
    let path = lambda.path.then(&tau)?;
    let expected = interpret(&w1.concat(w2));
    if path.target() != &expected {
        return Err(Error::internal("λ̃ did not reach F(w1+w2)"));
    }
    Ok(LambdaTilde {
        path,
        lambda,
        tau,
        blocks,
    })
}

/// λ̃ for signed words: order and bracket, then cancel.
pub fn lambda_tilde(w1: &Word, w2: &Word) -> Result<Path> {
    Ok(lambda_tilde_detailed(w1, w2)?.path)
}

/// The midpoint `F(w_{1,2})` of λ̃.
pub fn ordered_product(w1: &Word, w2: &Word) -> Term {
    let (a, b) = (normalize_word(w1), normalize_word(w2));
    Term::left_bracketed(&merge_ordered(&a, &b).into_iter().map(|x| x.0).collect::<Vec<_>>())
}
