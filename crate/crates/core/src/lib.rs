//! Perfect 1-factorisations of complete graphs: orderly enumeration, canonical labelling,
//! isomorphism invariants and the associated Latin squares.

pub mod canon;
pub mod catalogue;
pub mod develop;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod latin;
pub mod matching;
pub mod perm;
pub mod search;

pub use canon::{are_isomorphic, automorphism_group, canonical_form, canonicalize, AutGroup, Canonical};
pub use catalogue::{emit_line, parse_line};
pub use develop::{develop, parse_permutation, DevelopmentSpec};
pub use error::{Error, Result};
pub use graph::{
    factor_union_cycles, is_compatible, make_f1_f2, validate_p1f, CycleStructure, Edge,
    Factorisation, OneFactor, Order, ValidationReport, Vertex,
};
pub use latin::{fold, species_count, unipotent_square, LatinSquare};
pub use perm::{CycleType, Relabelling};
