//! Computations in finitely generated free groups.
//!
//! Words and cyclic words live in [`word`], with text syntax in [`text`].
//! Whitehead automorphisms are in [`automorphism`]; [`whitehead`] runs
//! Whitehead's algorithm (length minimization, primitivity, orbit
//! equivalence). [`basis`] decides whether a tuple of words is a basis by
//! graph folding and completes primitive elements to bases. Results can be
//! exported as re-checkable [`certificate`]s, and [`verifier`] checks the
//! claims made about a few explicit families of words.

pub mod automorphism;
pub mod basis;
pub mod certificate;
pub mod error;
pub mod text;
pub mod verifier;
pub mod whitehead;
pub mod word;

pub use automorphism::{
    compose, enumerate_all, enumerate_type1, enumerate_type2, random_chain, Action,
    AutomorphismChain, MultiplierMove, SignedPermutation, WhiteheadAut,
};
pub use basis::{
    abelian_det_filter, complete_to_basis, fold, is_basis, is_generating, FoldedGraph, WordTuple,
};
pub use certificate::{Certificate, Checked};
pub use error::{Error, Result};
pub use text::{format_word, parse_tuple, parse_word, Syntax};
pub use whitehead::{
    enumerate_primitives, is_primitive, minimize, orbit_equivalent, MinimizationResult,
    OrbitEquivalence, PrimitivityVerdict, SearchLimits, Whitehead,
};
pub use word::{canonical_rotation, free_reduce, AbelianVector, CyclicWord, Letter, Rank, Word};
