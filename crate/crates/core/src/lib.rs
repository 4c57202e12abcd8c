//! Exact partition counts with restricted parts and multiplicities.
//!
//! For sets `A` (parts) and `M` (multiplicities) of positive integers,
//! `p_{A,M}(n)` counts the ways to write `n = sum m_a * a` with `a` in `A`
//! and every nonzero `m_a` in `M`. This crate computes these counts exactly
//! and measures their growth.

pub mod analysis;
pub mod constructions;
pub mod decimal;
pub mod engine;
mod limbs;
pub mod sets;

pub use analysis::{
    be_condition, bounds_from_table, bounds_report, growth_exponents, iterated_witness_search, ln_biguint,
    monotonicity_scan, schur_ratio, superpoly_witnesses, AnalysisError, BeVerdict, BoundsReport,
    GrowthReport, SchurPoint, WitnessRound, WitnessSearch,
};
pub use constructions::{
    thm_am_pair, verify_power_uniqueness, AmReport, ConstructionError, StaircaseSequence,
};
pub use engine::{
    enumerate_partitions, CountTable, Engine, EngineError, EnginePath, Enumeration, PartitionWitness,
};
pub use sets::{Decomposition, Progression, SetDescriptor, SetError, SetKind};
