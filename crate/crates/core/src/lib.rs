//! Exact computation in power-set semidirect products, free inverse monoids
//! and free (left) Ehresmann monoids, with finite certificate checkers for
//! coherence obstructions.

pub mod coherence;
pub mod error;
pub mod expansions;
pub mod normalform;
pub mod psdp;
pub mod scheiblich;
pub mod theta;
pub mod words;
pub mod xtree;

pub use error::Error;
pub use psdp::{BaseMonoid, Group, PSetElement, Sdp};
pub use scheiblich::MunnElement;
pub use words::{Alphabet, GroupWord, Letter, Sym, Word};
pub use xtree::{RawXTree, XTree};
