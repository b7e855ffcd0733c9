use std::collections::BTreeMap;

use super::moves::{Move, Path};
use super::term::Term;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    EqualPaths,
    StrictInclusion,
    Tiling,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::EqualPaths => "equal_paths",
            Case::StrictInclusion => "strict_inclusion",
            Case::Tiling => "tiling",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "equal_paths" => Ok(Case::EqualPaths),
            "strict_inclusion" => Ok(Case::StrictInclusion),
            "tiling" => Ok(Case::Tiling),
            _ => Err(Error::invalid(format!("unknown case {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellKind {
    Pentagon,
    Rectangle,
    Hexagon,
    /// The twelve-sided face where three letters are permuted.
    Dodecagon,
    /// Opaque unit, inverse or symmetry cell.
    Structural,
}

impl CellKind {
    pub fn name(self) -> &'static str {
        match self {
            CellKind::Pentagon => "pentagon",
            CellKind::Rectangle => "rectangle",
            CellKind::Hexagon => "hexagon",
            CellKind::Dodecagon => "dodecagon",
            CellKind::Structural => "structural",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        [
            CellKind::Pentagon,
            CellKind::Rectangle,
            CellKind::Hexagon,
            CellKind::Dodecagon,
            CellKind::Structural,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::invalid(format!("unknown cell kind {s:?}")))
    }
}

/// A 2-cell given by its closed boundary loop, counted `coefficient` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub kind: CellKind,
    pub label: String,
    pub coefficient: i64,
    pub boundary: Path,
}

/// An oriented edge of the move graph, stored from its smaller end.
pub type EdgeKey = (Term, Term, Move);

/// Formal sums of oriented edges.
pub type Chain = BTreeMap<EdgeKey, i64>;

pub(crate) fn edge_key(from: &Term, m: &Move, to: &Term) -> Result<(EdgeKey, i64)> {
    if from <= to {
        Ok(((from.clone(), to.clone(), m.clone()), 1))
    } else {
        Ok(((to.clone(), from.clone(), m.inverse_from(from)?), -1))
    }
}

pub(crate) fn add_path(chain: &mut Chain, p: &Path, coeff: i64) -> Result<()> {
    for (u, m, v) in p.steps() {
        let (k, s) = edge_key(&u, &m, &v)?;
        let e = chain.entry(k.clone()).or_insert(0);
        *e += s * coeff;
        if *e == 0 {
            chain.remove(&k);
        }
    }
    Ok(())
}

pub fn path_chain(p: &Path) -> Result<Chain> {
    let mut c = Chain::new();
    add_path(&mut c, p, 1)?;
    Ok(c)
}

/// The comparison of two paths with a common source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCellWitness {
    pub case: Case,
    /// Free-form name of the composite 2-cell, such as `id` or `id => c^2`.
    pub label: String,
    pub top: Path,
    pub bottom: Path,
    pub cells: Vec<Cell>,
    /// Pieces of a composite witness, glued in order along both boundaries.
    pub segments: Vec<TwoCellWitness>,
    /// The vertex where a composite witness is split.
    pub split: Option<Term>,
}

impl TwoCellWitness {
    pub fn simple(case: Case, label: impl Into<String>, top: Path, bottom: Path, cells: Vec<Cell>) -> Self {
        TwoCellWitness {
            case,
            label: label.into(),
            top,
            bottom,
            cells,
            segments: Vec::new(),
            split: None,
        }
    }

    /// Checks shared endpoints, closed cell boundaries and that the cells
    /// add up to the difference of the two boundary paths.
    pub fn verify(&self) -> Result<()> {
        if self.top.source() != self.bottom.source() || self.top.target() != self.bottom.target() {
            return Err(Error::internal("witness boundaries do not share endpoints"));
        }
        let mut diff = path_chain(&self.top)?;
        add_path(&mut diff, &self.bottom, -1)?;
        if self.segments.is_empty() {
            let mut sum = Chain::new();
            for c in &self.cells {
                if c.boundary.source() != c.boundary.target() {
                    return Err(Error::internal(format!("{} cell boundary is not closed", c.kind.name())));
                }
                add_path(&mut sum, &c.boundary, c.coefficient)?;
            }
            if sum != diff {
                return Err(Error::internal("cell boundaries do not add up to the two paths"));
            }
            match self.case {
                Case::EqualPaths if self.top.vertices() != self.bottom.vertices() => {
                    Err(Error::internal("paths tagged equal differ"))
                }
                _ => Ok(()),
            }
        } else {
            let mut top = Path::identity(self.top.source().clone());
            let mut bottom = top.clone();
            for s in &self.segments {
                s.verify()?;
                top = top.then(&s.top)?;
                bottom = bottom.then(&s.bottom)?;
            }
            if top != self.top || bottom != self.bottom {
                return Err(Error::internal("segments do not glue to the boundary paths"));
            }
            Ok(())
        }
    }

    pub fn cell_count(&self, kind: CellKind) -> usize {
        self.cells.iter().filter(|c| c.kind == kind).count()
            + self.segments.iter().map(|s| s.cell_count(kind)).sum::<usize>()
    }
}
