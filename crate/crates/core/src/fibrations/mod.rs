//! The four Jacobian elliptic fibrations on the family: builders in raw
//! sextuple coordinates and in modular coordinates J₂ … J₆ (with 𝔞), the
//! quartic surface with its four coordinate changes, locus constructions,
//! and the identity-verification suite.

mod builders;
mod loci;
mod report;
mod sampling;
mod verify;

use std::fmt;
use std::str::FromStr;

use exactalg::AlgError;
use serde::Serialize;
use thiserror::Error;

use crate::moduli::ModuliError;
use crate::weierstrass::WeierstrassError;

pub use builders::{
    build_modular, build_raw, modular_symbolic, quartic, raw_homogeneous, raw_symbolic,
    reduce_sqrt, standard_chart, Branch, RawHomogeneous, StdChart, DEFAULT_BUDGET,
};
pub use loci::{
    construct_locus_point, expected_table, locus_resultant, reproduce_table, Locus, TableRow,
    TableRowResult,
};
pub use report::{IdentityReport, Status};
pub use sampling::{random_params, random_rat, Sampler};
pub use verify::{
    j30_value, reduction_scale, run_suite, verify_convergence, verify_fplus_fminus,
    verify_generic_classification, verify_j30_identity, verify_reductions, verify_substitution,
    verify_substitution_as_printed_bfd, SuiteConfig,
};

#[derive(Debug, Error)]
pub enum FibrationError {
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("the standard fibration with J6 != 0 needs a square root a of J5^2 - 4 J4 J6")]
    MissingSqrt,
    #[error("the maximal fibration in modular coordinates needs J6 != 0")]
    NeedsNonzeroJ6,
    #[error("parameters are degenerate for the {0} fibration")]
    Degenerate(FibrationClass),
    #[error("no rational point on the locus {locus} for the {class} fibration after {attempts} attempts")]
    LocusConstruction {
        class: FibrationClass,
        locus: Locus,
        attempts: usize,
    },
    #[error("the {class} fibration has no `{locus}` row")]
    NoSuchRow { class: FibrationClass, locus: Locus },
    #[error("unknown fibration class `{0}` (expected standard | alternate | bfd | maximal)")]
    UnknownClass(String),
}

/// The four inequivalent Jacobian elliptic fibrations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FibrationClass {
    Standard,
    Alternate,
    Bfd,
    Maximal,
}

impl FibrationClass {
    pub const ALL: [FibrationClass; 4] = [
        FibrationClass::Standard,
        FibrationClass::Alternate,
        FibrationClass::Bfd,
        FibrationClass::Maximal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FibrationClass::Standard => "standard",
            FibrationClass::Alternate => "alternate",
            FibrationClass::Bfd => "bfd",
            FibrationClass::Maximal => "maximal",
        }
    }

    /// Table letter in the lattice-extension tables.
    pub fn table_letter(&self) -> char {
        match self {
            FibrationClass::Standard => 'a',
            FibrationClass::Alternate => 'b',
            FibrationClass::Bfd => 'c',
            FibrationClass::Maximal => 'd',
        }
    }
}

impl fmt::Display for FibrationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FibrationClass {
    type Err = FibrationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "standard" | "std" => Ok(FibrationClass::Standard),
            "alternate" | "alt" => Ok(FibrationClass::Alternate),
            "bfd" | "base-fiber-dual" => Ok(FibrationClass::Bfd),
            "maximal" | "max" => Ok(FibrationClass::Maximal),
            other => Err(FibrationError::UnknownClass(other.to_string())),
        }
    }
}
