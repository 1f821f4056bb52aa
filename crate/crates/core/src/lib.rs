//! Exact computation of cycle types, Green types and generalized types of
//! matrices over `Q` and finite fields, decision procedures (with explicit
//! certificates) for conjugacy of centralizer algebras, and the analogous
//! centralizer-equality procedures for symmetric and alternating groups.

pub mod cent;
pub mod error;
pub mod field;
pub mod json;
pub mod matrix;
pub mod perm;
pub mod poly;
pub mod sample;
pub mod types;
pub mod verify;

pub use error::{Error, Result};
pub use field::{ArithOp, Field, FieldElem, FieldKind};
pub use matrix::{FrobeniusForm, Matrix};
pub use poly::{ExtRoot, Factorization, Poly};
pub use types::{
    cent_dim_formula, cycle_type, dominance_leq, f_of_partition, generalized_type, gentype_equal,
    gentype_matching, green_type, poly_equivalent, CycleType, GeneralizedType, GreenType, Partition,
};
pub use cent::{
    cent_conjugate_bruteforce, centralizer_basis, centralizers_conjugate, jordan_chevalley,
    primary_decomposition, witness_polynomials, CentralizerBasis, ConjugacyCertificate,
    JCDecomposition, PrimaryComponent,
};
pub use perm::{
    an_cent_equal, an_cent_equal_with, cycle_layers, AnRules, locally_equivalent, perm_centralizer_bruteforce, perm_equivalent,
    sn_cent_equal, CycleLayers, Group, Permutation, VariationKind, VariationReport,
};
