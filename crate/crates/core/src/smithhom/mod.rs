//! Smith theory on finite simplicial complexes with a cyclic group action:
//! integral and mod-p homology, orbit complexes and the transfer, the
//! operators `σ = Σ t^j` and `τ = 1 - t`, special Smith homology, and a
//! degree-by-degree check of the Smith exact sequences.

mod chain;
mod complex;
mod orbit;
mod smith;

use thiserror::Error;

pub use chain::{ChainComplex, Coefficients};
pub use complex::{
    barycentric_subdivide, fixed_subcomplex, ActionJson, ComplexJson, CyclicAction,
    SimplicialComplex,
};
pub use orbit::{orbit_complex, transfer_check, OrbitComplex, TransferDegree, TransferReport};
pub use smith::{
    prop4_check, sample_instance, sample_instances, smith_operators, special_smith_homology,
    verify_smith_sequences, Prop4Check, SequenceCheck, SmithInstance, SmithOperators, SmithReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmithError {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("the action is not regular: {0}")]
    NotRegular(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{q} divides the group order {s}")]
    BadPrime { q: u64, s: u64 },
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
    #[error("unknown sample instance {0:?}")]
    UnknownInstance(String),
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}
