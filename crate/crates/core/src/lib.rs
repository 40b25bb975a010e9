//! Chermak-Delgado measures over explicitly constructed finite groups.
//!
//! Groups are Cayley tables ([`Group`]); subgroups are membership bitsets
//! ([`Subgroup`]). [`all_subgroups`] enumerates the full subgroup lattice,
//! [`spectrum`] computes `m_G(H) = |H|·|C_G(H)|` for every subgroup, and
//! [`harness`] checks closed-form predictions for `|Im(m_G)|` against
//! brute force over a built-in catalog.

pub mod arith;
pub mod bitset;
pub mod cache;
pub mod catalog;
pub mod dsl;
pub mod engine;
mod error;
pub mod families;
pub mod group;
pub mod harness;
pub mod lattice;
pub mod measure;
pub mod report;
pub mod structure;

pub use bitset::Bitset;
pub use catalog::{catalog, CatalogEntry};
pub use dsl::{parse_spec, GroupSpec};
pub use engine::{Analysis, Engine};
pub use error::{Error, Result};
pub use group::{Elem, Group, GroupHash};
pub use harness::VerificationReport;

pub use lattice::{all_subgroups, Subgroup, SubgroupLattice};
pub use measure::{spectrum, MeasureRecord, SpectrumReport};

/// Resource guards for group construction and lattice enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub max_subgroups: usize,
}

pub const DEFAULT_MAX_SUBGROUPS: usize = 250_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: families::DEFAULT_MAX_ORDER,
            max_subgroups: DEFAULT_MAX_SUBGROUPS,
        }
    }
}

/// Builds the lattice and spectrum of `g` in one step.
pub fn analyze(g: &Group, limits: &Limits) -> Result<(SubgroupLattice, SpectrumReport)> {
    let lattice = all_subgroups(g, limits)?;
    let report = spectrum(g, &lattice)?;
    Ok((lattice, report))
}
