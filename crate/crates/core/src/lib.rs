//! Exact census of integral Lamé equations with dihedral projective
//! monodromy.
//!
//! For an index `n` and a dihedral projective monodromy group of order
//! `2N`, the number of Lamé equations up to scalar equivalence, `L(n, N)`,
//! and the number of underlying dessins d'enfants, `D(n, N)`, are given by
//! closed totient formulas. This crate evaluates those formulas exactly
//! ([`census`]), materializes the admissible ramification data behind them
//! ([`ramification`]), and independently re-counts the dessins at small
//! degree by enumerating transitive permutation triples up to simultaneous
//! conjugation ([`constellation`]).
//!
//! All arithmetic is exact. Overflow and broken internal invariants are
//! reported as errors, never silently wrapped or truncated, and the
//! enumeration refuses degrees beyond its configured bound instead of
//! running unbounded searches.

pub mod arith;
pub mod census;
pub mod constellation;
pub mod ramification;

pub use census::{census_table, dessin_count, lame_count, lame_count_via_inversion, CensusEntry};
pub use constellation::{
    count_dessins, enumerate_representatives, total_dessins_bruteforce, Constellation,
    ConstellationRecord, EnumerationConfig, Perm,
};
pub use ramification::{
    build_profile, normalized_index, profiles_for, riemann_hurwitz_check, CaseLabel, CycleType,
    RamificationProfile,
};
