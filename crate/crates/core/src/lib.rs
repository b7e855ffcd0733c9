pub mod butterflies;
pub mod coherence;
pub mod doc;
pub mod complexes;
pub mod error;
pub mod fractions;
pub mod group;
pub mod matrix;
pub mod random;

pub use error::{Error, Result};
pub use group::{FGAbelianGroup, GroupElement, GroupHom, HomSpace, Invariants};
pub use matrix::{smith_normal_form, IntegerMatrix, Smith};
pub use butterflies::Butterfly;
pub use complexes::{ChainMap, ChainMap2, Complex2, Complex3};
pub use doc::Document;
pub use fractions::{Diamond, Fraction, Roof};
pub use random::Sampler;
