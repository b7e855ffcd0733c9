//! Filling a closed loop of the move graph with 2-cells.
//!
//! The loop `top - bottom` is written as an integer combination of squares,
//! pentagons and dodecagons found in a growing neighbourhood of the loop.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::moves::{Move, Path};
use super::term::{Position, Term};
use super::witness::{add_path, path_chain, Cell, CellKind, Chain, EdgeKey};
use crate::error::{Error, Result};
use crate::matrix::{solve_left, IntegerMatrix};

/// Shifts and swaps of two different letters available at `t`.
pub fn skeleton_neighbors(t: &Term) -> Vec<(Move, Term)> {
    let mut out = Vec::new();
    for p in t.internal_positions() {
        let (x, y) = t.subterm(&p).and_then(Term::children).expect("internal position");
        let mut cands = Vec::new();
        if matches!(x, Term::Prod(..)) {
            cands.push(Move::assoc_right(p.clone()));
        }
        if matches!(y, Term::Prod(..)) {
            cands.push(Move::assoc_left(p.clone()));
        }
        if let (Some(a), Some(b)) = (x.letter(), y.letter()) {
            if a != b {
                cands.push(Move::swap(p.clone()));
            }
        }
        for m in cands {
            let u = m.try_apply(t).expect("candidate move applies");
            out.push((m, u));
        }
    }
    out
}

/// The twelve moves around the face permuting the letters of `((x·y)·z)` at `p`.
fn dodecagon_moves(p: &Position) -> Vec<Move> {
    let mut out = Vec::with_capacity(12);
    for _ in 0..3 {
        out.push(Move::swap(p.left()));
        out.push(Move::assoc_right(p.clone()));
        out.push(Move::swap(p.right()));
        out.push(Move::assoc_left(p.clone()));
    }
    out
}

struct Region {
    terms: Vec<Term>,
    index: HashMap<Term, usize>,
    adj: Vec<Vec<(usize, Move)>>,
}

impl Region {
    fn grow(seeds: &[Term], radius: usize) -> Region {
        let mut terms: Vec<Term> = Vec::new();
        let mut index = HashMap::new();
        for s in seeds {
            if !index.contains_key(s) {
                index.insert(s.clone(), terms.len());
                terms.push(s.clone());
            }
        }
        let mut frontier: Vec<usize> = (0..terms.len()).collect();
        for _ in 0..radius {
            let mut next = Vec::new();
            for &v in &frontier {
                for (_, u) in skeleton_neighbors(&terms[v].clone()) {
                    if !index.contains_key(&u) {
                        index.insert(u.clone(), terms.len());
                        next.push(terms.len());
                        terms.push(u);
                    }
                }
            }
            frontier = next;
        }
        let adj = terms
            .iter()
            .map(|t| {
                skeleton_neighbors(t)
                    .into_iter()
                    .filter_map(|(m, u)| index.get(&u).map(|&j| (j, m)))
                    .collect()
            })
            .collect();
        Region { terms, index, adj }
    }

    fn edge(&self, from: usize, to: usize) -> Option<&Move> {
        self.adj[from].iter().find(|(j, _)| *j == to).map(|(_, m)| m)
    }

    fn loop_path(&self, cycle: &[usize]) -> Option<Path> {
        let mut moves = Vec::with_capacity(cycle.len());
        for k in 0..cycle.len() {
            moves.push(self.edge(cycle[k], cycle[(k + 1) % cycle.len()])?.clone());
        }
        Path::new(self.terms[cycle[0]].clone(), moves).ok()
    }

    /// Simple cycles of length four and five, each once, least vertex first.
    fn short_cycles(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for v in 0..self.terms.len() {
            let nv: Vec<usize> = self.adj[v].iter().map(|e| e.0).filter(|&a| a > v).collect();
            for (ia, &a) in nv.iter().enumerate() {
                for &b in &nv[ia + 1..] {
                    if a == b {
                        continue;
                    }
                    for &(c, _) in &self.adj[a] {
                        if c <= v || c == b {
                            continue;
                        }
                        if self.edge(c, b).is_some() {
                            out.push(vec![v, a, c, b]);
                        }
                        for &(d, _) in &self.adj[c] {
                            if d <= v || d == a || d == b {
                                continue;
                            }
                            if self.edge(d, b).is_some() {
                                out.push(vec![v, a, c, d, b]);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn dodecagons(&self) -> Vec<Path> {
        let mut out = Vec::new();
        for t in &self.terms {
            for p in t.internal_positions() {
                let s = t.subterm(&p).expect("internal position");
                let Some((xy, z)) = s.children() else { continue };
                let Some((x, y)) = xy.children() else { continue };
                if !(x.is_leaf() && y.is_leaf() && z.is_leaf()) {
                    continue;
                }
                let Ok(path) = Path::new(t.clone(), dodecagon_moves(&p)) else { continue };
                if path.target() == t && path.vertices().iter().all(|u| self.index.contains_key(u)) {
                    out.push(path);
                }
            }
        }
        out
    }
}

fn canonical(chain: &Chain) -> Vec<(EdgeKey, i64)> {
    let mut v: Vec<(EdgeKey, i64)> = chain.iter().map(|(k, c)| (k.clone(), *c)).collect();
    if v.first().map(|x| x.1 < 0).unwrap_or(false) {
        for x in &mut v {
            x.1 = -x.1;
        }
    }
    v
}

/// Integer solution of `sum_c x_c * cols[c] = rhs`; columns are sparse.
fn solve_sparse(cols: &[BTreeMap<usize, i64>], rhs: &BTreeMap<usize, i64>, nrows: usize) -> Option<Vec<i64>> {
    // rows as sparse maps over columns
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); nrows];
    for (c, col) in cols.iter().enumerate() {
        for (&r, &v) in col {
            rows[r].insert(c, v);
        }
    }
    let mut b: Vec<i64> = (0..nrows).map(|r| rhs.get(&r).copied().unwrap_or(0)).collect();
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); cols.len()];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r);
        }
    }
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; nrows];
    let mut pivoted = vec![false; cols.len()];
    for c in 0..cols.len() {
        let mut cand: Vec<usize> = col_rows[c]
            .iter()
            .copied()
            .filter(|&r| pivot_of_row[r].is_none() && rows[r][&c].abs() == 1)
            .collect();
        cand.sort_by_key(|&r| (rows[r].len(), r));
        let Some(&pr) = cand.first() else { continue };
        pivot_of_row[pr] = Some(c);
        pivoted[c] = true;
        let prow = rows[pr].clone();
        let pv = prow[&c];
        let others: Vec<usize> = col_rows[c].iter().copied().filter(|&r| r != pr).collect();
        for r in others {
            let f = rows[r][&c].checked_mul(pv)?;
            for (&j, &v) in &prow {
                let e = rows[r].entry(j).or_insert(0);
                *e = e.checked_sub(f.checked_mul(v)?)?;
                if *e == 0 {
                    rows[r].remove(&j);
                    col_rows[j].remove(&r);
                } else {
                    col_rows[j].insert(r);
                }
            }
            b[r] = b[r].checked_sub(f.checked_mul(b[pr])?)?;
        }
    }
    let free_rows: Vec<usize> = (0..nrows).filter(|&r| pivot_of_row[r].is_none()).collect();
    // columns left without a unit pivot that still meet the remaining rows
    let deferred: Vec<usize> = (0..cols.len())
        .filter(|&c| !pivoted[c] && col_rows[c].iter().any(|&r| pivot_of_row[r].is_none()))
        .collect();
    let mut x = vec![0i64; cols.len()];
    let mut dvals: HashMap<usize, i64> = HashMap::new();
    let live: Vec<usize> = free_rows.iter().copied().filter(|&r| !rows[r].is_empty() || b[r] != 0).collect();
    if !live.is_empty() {
        if deferred.is_empty() {
            return None;
        }
        // residual system by exact Smith normal form
        let mut a = IntegerMatrix::zeros(deferred.len(), live.len());
        for (i, &c) in deferred.iter().enumerate() {
            for (j, &r) in live.iter().enumerate() {
                if let Some(&v) = rows[r].get(&c) {
                    a.set(i, j, BigInt::from(v));
                }
            }
        }
        let rhs: Vec<BigInt> = live.iter().map(|&r| BigInt::from(b[r])).collect();
        let sol = solve_left(&a, &rhs)?;
        for (i, &c) in deferred.iter().enumerate() {
            let v = sol[i].to_i64()?;
            dvals.insert(c, v);
            x[c] = v;
        }
    }
    for r in 0..nrows {
        if let Some(c) = pivot_of_row[r] {
            let mut acc = b[r];
            for (&j, &v) in &rows[r] {
                if j != c {
                    acc -= v * dvals.get(&j).copied().unwrap_or(0);
                }
            }
            x[c] = acc * rows[r][&c];
        }
    }
    Some(x)
}

fn kind_for(len: usize) -> CellKind {
    match len {
        4 => CellKind::Rectangle,
        5 => CellKind::Pentagon,
        _ => CellKind::Dodecagon,
    }
}

fn structural_loop(k: &EdgeKey, coefficient: i64) -> Result<Cell> {
    Ok(Cell {
        kind: CellKind::Structural,
        label: "c_{x,x} => id".to_string(),
        coefficient,
        boundary: Path::new(k.0.clone(), vec![k.2.clone()])?,
    })
}

/// Cells whose boundaries add up to `top - bottom`. Both paths must use
/// shifts and swaps only; swaps of equal letters become structural cells.
pub fn tile(top: &Path, bottom: &Path) -> Result<Vec<Cell>> {
    let mut diff = path_chain(top)?;
    add_path(&mut diff, bottom, -1)?;
    let mut cells = Vec::new();
    let loops: Vec<(EdgeKey, i64)> = diff.iter().filter(|(k, _)| k.0 == k.1).map(|(k, c)| (k.clone(), *c)).collect();
    for (k, c) in loops {
        diff.remove(&k);
        cells.push(structural_loop(&k, c)?);
    }
    if diff.is_empty() {
        return Ok(cells);
    }
    let mut seeds = top.vertices();
    seeds.extend(bottom.vertices());
    // grow until the whole connected component is covered
    let mut last_size = 0;
    for radius in 0.. {
        let region = Region::grow(&seeds, radius);
        if radius > 0 && region.terms.len() == last_size {
            break;
        }
        last_size = region.terms.len();
        let mut found: Vec<(CellKind, Path, Chain, Vec<(EdgeKey, i64)>)> = Vec::new();
        let mut seen = HashSet::new();
        let mut candidates: Vec<(CellKind, Path)> = region
            .short_cycles()
            .into_iter()
            .filter_map(|cy| region.loop_path(&cy).map(|p| (kind_for(cy.len()), p)))
            .collect();
        candidates.extend(region.dodecagons().into_iter().map(|p| (CellKind::Dodecagon, p)));
        for (kind, p) in candidates {
            let mut ch = path_chain(&p)?;
            let loops: Vec<(EdgeKey, i64)> = ch.iter().filter(|(k, _)| k.0 == k.1).map(|(k, c)| (k.clone(), *c)).collect();
            for (k, _) in &loops {
                ch.remove(k);
            }
            if ch.is_empty() || !seen.insert(canonical(&ch)) {
                continue;
            }
            found.push((kind, p, ch, loops));
        }
        let mut edge_ix: BTreeMap<EdgeKey, usize> = BTreeMap::new();
        for k in found.iter().flat_map(|f| f.2.keys()).chain(diff.keys()) {
            let n = edge_ix.len();
            edge_ix.entry(k.clone()).or_insert(n);
        }
        let cols: Vec<BTreeMap<usize, i64>> = found
            .iter()
            .map(|f| f.2.iter().map(|(k, c)| (edge_ix[k], *c)).collect())
            .collect();
        let rhs: BTreeMap<usize, i64> = diff.iter().map(|(k, c)| (edge_ix[k], *c)).collect();
        if let Some(x) = solve_sparse(&cols, &rhs, edge_ix.len()) {
            for ((kind, p, _, loops), c) in found.into_iter().zip(x) {
                if c == 0 {
                    continue;
                }
                cells.push(Cell {
                    kind,
                    label: kind.name().to_string(),
                    coefficient: c,
                    boundary: p,
                });
                for (k, l) in loops {
                    cells.push(structural_loop(&k, -c * l)?);
                }
            }
            return Ok(cells);
        }
    }
    Err(Error::internal("no tiling found near the loop"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherence::moves::MoveKind;

    fn t3(a: usize, b: usize, c: usize) -> Term {
        Term::prod(Term::prod(Term::leaf(a), Term::leaf(b)), Term::leaf(c))
    }

    #[test]
    fn dodecagon_closes() {
        let p = Path::new(t3(0, 1, 2), dodecagon_moves(&Position::root())).unwrap();
        assert_eq!(p.target(), p.source());
        assert_eq!(p.vertices().iter().collect::<HashSet<_>>().len(), 12);
    }

    #[test]
    fn tiles_a_pentagon() {
        let w = Term::prod(Term::prod(Term::prod(Term::leaf(0), Term::leaf(1)), Term::leaf(2)), Term::leaf(3));
        let top = Path::new(w.clone(), vec![Move::at(MoveKind::AssocRight, ""); 2]).unwrap();
        let bottom = Path::new(
            w,
            vec![
                Move::at(MoveKind::AssocRight, "L"),
                Move::at(MoveKind::AssocRight, ""),
                Move::at(MoveKind::AssocRight, "R"),
            ],
        )
        .unwrap();
        assert_eq!(top.target(), bottom.target());
        let cells = tile(&top, &bottom).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].kind, CellKind::Pentagon);
        assert_eq!(cells[0].coefficient.abs(), 1);
    }
}
