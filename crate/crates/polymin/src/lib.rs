//! Exact construction and verification of the E6- and E7-polyminuscule
//! lattices and type-A skew-tabular lattices.
//!
//! The crate builds each lattice as a set of integer arrays, attaches
//! Gelfand–Tsetlin-style edge coefficients, assembles the representing
//! matrices of the Chevalley generators over the field generated by square
//! roots of integers, and checks every identity needed to certify that the
//! result is an irreducible module: Φ-structure, diamond and crossing
//! relations, the commutator and Serre relations, weight generating
//! functions against Freudenthal's formula, and rank generating functions
//! against closed product formulas.
//!
//! All arithmetic is exact.

pub mod exact_algebra;
pub mod gtcoeff;
pub mod lattices;
pub mod poset_core;
pub mod root_data;
pub mod skew_tabular;
pub mod verification;

pub use exact_algebra::{sqrt_of, GeneratorMatrices, SparseMatrix, SqrtScalar};
pub use gtcoeff::{e6_via_e7, E6Embedding, E7Coefficients, GtError};
pub use lattices::{
    build_e6_lattice, build_e7_lattice, build_lattice, distinguished_max, ArrayLattice, Distinguished,
    E6Variant, Family, Position,
};
pub use num::BigRational;
pub use poset_core::{Color, ColoredRankedPoset, Edge, VertexColoredPoset};
pub use root_data::{freudenthal_char, weyl_dim, RootSystem, Weight};
pub use skew_tabular::{build_skew_lattice, gt_coefficient, GtParallelogram, Partition, SkewLattice};
pub use verification::{certify_module, verify, Certificate, Check, Subject, SubjectSpec, VerifyOptions};
