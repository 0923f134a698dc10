//! Discrete Morse theory for order complexes of bounded posets, driven by
//! lexicographic facet orders.

#![no_std]

extern crate alloc;

pub mod complex;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod labeling;
pub mod lex_morse;
pub mod mobius;
pub mod morse;
pub mod multiset;
pub mod poset;
pub mod shelling;

pub use complex::{Face, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::BettiVector;
pub use labeling::{ChainLabeling, EdgeLabeling, FacetOrder, LabelToken, LexAxiomReport};
pub use lex_morse::{IntervalSystem, LexMorse, OverlapType, RankInterval};
pub use morse::{AcyclicMatching, GradientPath, MorseVector};
pub use poset::{Facet, Poset};
