//! Quasi-Clifford algebras realized as multi-qubit Pauli strings.
//!
//! The crate decomposes an algebra with prescribed (anti-)commutation structure into
//! central and two-generator factors and maps each factor onto qubits. The same machinery
//! block-diagonalizes Pauli groups, reproduces the Jordan-Wigner transformation, builds
//! maximal anti-commuting sets, and certifies block structure for semidefinite programs.

pub mod error;
pub mod gf2;
pub mod maxacomm;
pub mod pauli;
pub mod qca;
pub mod qubit_map;
pub mod schema;
pub mod verify;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use maxacomm::{completion_monomial, max_anticommuting_set, AnticommutingSet};
pub use pauli::{
    format_pauli, frustration_graph, parse_pauli, FrustrationGraph, Letter, PauliString,
};
pub use qca::{
    monomial_chi, monomial_mul, monomial_square_sign, run_splitting, split_step, validate_spec,
    CentralFactor, Monomial, PairFactor, PivotPolicy, QcaSpec, WedderburnDecomposition,
};
pub use qubit_map::{
    assign_irreps, invert_relations, jordan_wigner, mapping_from_decomposition, pauli_to_pauli,
    qca_to_qubits, Mode, QubitMapping, StarIsomorphism,
};
pub use verify::{
    block_structure, check_anticommuting_set, check_block_certificate, check_decomposition,
    check_qca_relations, check_star_isomorphism, dense_generators, hamiltonian_terms,
    BlockCertificate, DenseRep, ExactMatrix, Report, Violation, ViolationKind,
};
