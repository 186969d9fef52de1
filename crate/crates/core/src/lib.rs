//! Integral lattices and monodromy groups of elliptic surfaces.
//!
//! The crate builds the intersection lattices that occur in degenerations of
//! elliptic surfaces (E8, hyperbolic blocks, annulus pieces, Milnor lattices
//! of `J_{2χ}`), certifies complete vanishing lattices, evaluates real spinor
//! norms, checks symplectic generation on finite quotients and probes the
//! branch values of an explicit j-function family.
//!
//! All lattice arithmetic is exact. Only [`jfamily`] and [`poly`] use floating
//! point.

#![allow(clippy::needless_range_loop)]

pub mod builders;
pub mod certify;
pub mod error;
pub mod exact;
pub mod format;
pub mod jfamily;
pub mod lattice;
pub mod monodromy;
pub mod poly;
pub mod spinor;
pub mod symplectic;

pub use builders::{
    annulus_pair, bp_signature, diagonal_lattice, e8, milnor_j, torus_block, witness_six, AnnulusPair, WitnessTuple,
};
pub use certify::{
    certify_cvl, diagram_paper, find_witness, matches_diagram, IntersectionDiagram, VanishingCertificate,
};
pub use error::{Error, Result};
pub use lattice::{Lattice, LatticeVector, Signature, SpanReport};
pub use monodromy::{chain_connectivity, orbit_closure, reflect, Connectivity, OrbitBudget, OrbitResult};
pub use spinor::{
    cartan_dieudonne, in_o_prime_f, is_isometry_fixing, real_spinor_norm, Isometry, ReflectionFactorization, SpinorNorm,
};
pub use symplectic::{closure_mod_p, standard_symplectic, transvection, SymplecticSpace};
