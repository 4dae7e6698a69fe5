//! Exact computations with modules over diagrams of arithmetic rings.
//!
//! The engine works over the ring class `Z[S^-1]/(n)` (localizations of the
//! integers at a finite set of primes, possibly modulo an integer coprime to
//! the inverted set, plus the rationals). Everything downstream is exact:
//! Smith normal forms, finitely presented modules, bounded chain complexes,
//! diagrams of complexes over diagrams of rings, latching/matching objects,
//! Kan extensions along subcategory inclusions, totalization-style homotopy
//! inverse limits, and the arithmetic fracture-square reconstruction of a
//! module from its localizations.

pub mod matrix;
pub mod ring;

pub use matrix::{Matrix, Snf};
pub use ring::{Inverted, Ring, RingMap};

use thiserror::Error;

/// Engine-wide error type. Variants carry enough context to diagnose the
/// offending input without re-running the computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("missing composite: arrows {0} -> {1} and {1} -> {2} have no composite")]
    MissingComposite(String, String, String),
    #[error("parallel morphisms {0} -> {1} are not supported")]
    ParallelMorphisms(String, String),
    #[error("non-identity endomorphism at {0}")]
    NonIdentityEndomorphism(String),
    #[error("cycle detected while computing a linear extension")]
    CycleDetected,
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("no canonical ring map {src} -> {dst}: {reason}")]
    NoCanonicalMap {
        src: String,
        dst: String,
        reason: String,
    },
    #[error("ring map {src} -> {dst} is not module-finite{}", arrow.as_ref().map(|(a, b)| format!(" (arrow {a} -> {b})")).unwrap_or_default())]
    NotModuleFinite {
        src: String,
        dst: String,
        arrow: Option<(String, String)>,
    },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("transitivity violation on arrows {0} -> {1} -> {2}")]
    TransitivityViolation(String, String, String),
    #[error("invalid localization square: {0}")]
    InvalidSquare(String),
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
