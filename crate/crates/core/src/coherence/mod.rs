//! Words over an ordered alphabet, their parenthesized products and the
//! paths and 2-cells relating them.

mod lambda;
mod moves;
mod phi;
mod psi;
mod term;
mod tiling;
mod witness;
mod word;

pub use lambda::{
    corner_schedule, inversion_count, lambda_detailed, lambda_path, lambda_tilde, lambda_tilde_detailed,
    ordered_product, shuffle_of, tau_path, LambdaPath, LambdaTilde, LatticePath, Step,
};
pub use moves::{Move, MoveKind, Path};
pub use phi::{phi_cell, phi_tilde, PhiCell, Residual, Substitution};
pub use psi::{psi_cell, psi_tilde};
pub use term::{interpret, Position, Term};
pub use tiling::{skeleton_neighbors, tile};
pub use witness::{path_chain, Case, Cell, CellKind, Chain, EdgeKey, TwoCellWitness};
pub use word::{normalize_word, Alphabet, Letter, Word};
