use super::lambda::{lambda_detailed, lambda_tilde_detailed};
use super::moves::{Move, Path};
use super::term::{interpret, Position, Term};
use super::tiling::tile;
use super::witness::{Case, Cell, CellKind, TwoCellWitness};
use super::word::Word;
use crate::error::{Error, Result};

/// Removes immediate back-and-forth pairs; returns the reduced path and the
/// removed detours as closed loops.
fn free_reduce(p: &Path) -> Result<(Path, Vec<Path>)> {
    let mut stack: Vec<(Term, Move, Term)> = Vec::new();
    let mut detours = Vec::new();
    for (u, m, v) in p.steps() {
        if let Some((pu, pm, _)) = stack.last() {
            if *pu == v && pm.inverse_from(pu)? == m {
                let (pu, pm, _) = stack.pop().expect("nonempty");
                detours.push(Path::new(pu, vec![pm, m])?);
                continue;
            }
        }
        stack.push((u, m, v));
    }
    let reduced = Path::new(p.source().clone(), stack.into_iter().map(|s| s.1).collect())?;
    Ok((reduced, detours))
}

/// Compares two skeletal paths with common endpoints.
pub(crate) fn classify(top: Path, bottom: Path) -> Result<TwoCellWitness> {
    if top.source() != bottom.source() || top.target() != bottom.target() {
        return Err(Error::internal("compared paths do not share endpoints"));
    }
    if top.vertices() == bottom.vertices() {
        return Ok(TwoCellWitness::simple(Case::EqualPaths, "id", top, bottom, Vec::new()));
    }
    let (rt, dt) = free_reduce(&top)?;
    let (rb, db) = free_reduce(&bottom)?;
    let strict = (dt.is_empty() && !db.is_empty() && rb.vertices() == top.vertices())
        || (db.is_empty() && !dt.is_empty() && rt.vertices() == bottom.vertices());
    if strict {
        let cells = dt
            .into_iter()
            .map(|b| (b, 1))
            .chain(db.into_iter().map(|b| (b, -1)))
            .map(|(boundary, coefficient)| Cell {
                kind: CellKind::Structural,
                label: "a a^{-1} => id".to_string(),
                coefficient,
                boundary,
            })
            .collect();
        return Ok(TwoCellWitness::simple(
            Case::StrictInclusion,
            "a a^{-1} => id",
            top,
            bottom,
            cells,
        ));
    }
    let cells = tile(&top, &bottom)?;
    Ok(TwoCellWitness::simple(Case::Tiling, "psi", top, bottom, cells))
}

/// The two boundaries of the ψ square, built from a λ builder.
fn psi_boundaries(
    w1: &Word,
    w2: &Word,
    w3: &Word,
    lambda: impl Fn(&Word, &Word) -> Result<Path>,
) -> Result<(Path, Path)> {
    let (f1, f2, f3) = (interpret(w1), interpret(w2), interpret(w3));
    let start = Term::prod(Term::prod(f1.clone(), f2.clone()), f3.clone());
    let w12 = w1.concat(w2);
    let top = lambda(w1, w2)?
        .whisker(&start, &Position::root().left())?
        .then(&lambda(&w12, w3)?)?;
    let shifted = Path::new(start, vec![Move::assoc_right(Position::root())])?;
    let inner = lambda(w2, w3)?.whisker(shifted.target(), &Position::root().right())?;
    let bottom = shifted.then(&inner)?.then(&lambda(w1, &w2.concat(w3))?)?;
    Ok((top, bottom))
}

/// ψ for positive words.
pub fn psi_cell(w1: &Word, w2: &Word, w3: &Word) -> Result<TwoCellWitness> {
    let (top, bottom) = psi_boundaries(w1, w2, w3, |a, b| Ok(lambda_detailed(a, b)?.path))?;
    let w = classify(top, bottom)?;
    w.verify()?;
    Ok(w)
}

fn skeletal_prefix(p: &Path) -> usize {
    p.moves().iter().position(|m| !m.is_skeletal()).unwrap_or(p.len())
}

/// ψ̃ for signed words, split at the last common vertex of the skeletal
/// prefixes of its two boundaries.
pub fn psi_tilde(w1: &Word, w2: &Word, w3: &Word) -> Result<TwoCellWitness> {
    let (top, bottom) = psi_boundaries(w1, w2, w3, |a, b| Ok(lambda_tilde_detailed(a, b)?.path))?;
    if top.is_skeletal() && bottom.is_skeletal() {
        let w = classify(top, bottom)?;
        w.verify()?;
        return Ok(w);
    }
    let (tv, bv) = (top.vertices(), bottom.vertices());
    let (tp, bp) = (skeletal_prefix(&top), skeletal_prefix(&bottom));
    let (i, j) = (0..=tp)
        .rev()
        .find_map(|i| (0..=bp).rev().find(|&j| bv[j] == tv[i]).map(|j| (i, j)))
        .ok_or_else(|| Error::internal("boundaries share no vertex"))?;
    let pre = classify(top.slice(0, i), bottom.slice(0, j))?;
    let (t2, b2) = (top.slice(i, top.len()), bottom.slice(j, bottom.len()));
    let post = if t2.vertices() == b2.vertices() {
        TwoCellWitness::simple(Case::EqualPaths, "id", t2, b2, Vec::new())
    } else {
        let boundary = t2.then(&b2.reversed()?)?;
        let cell = Cell {
            kind: CellKind::Structural,
            label: "rho".to_string(),
            coefficient: 1,
            boundary,
        };
        TwoCellWitness::simple(Case::Tiling, "rho", t2, b2, vec![cell])
    };
    let case = if post.case == Case::EqualPaths { pre.case } else { Case::Tiling };
    let w = TwoCellWitness {
        case,
        label: "psi~".to_string(),
        top,
        bottom,
        cells: Vec::new(),
        segments: vec![pre, post],
        split: Some(tv[i].clone()),
    };
    w.verify()?;
    Ok(w)
}
