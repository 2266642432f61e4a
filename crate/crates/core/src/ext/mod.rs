//! Commutative algebra over Λ routed through Z[t]: syzygies, resolutions,
//! Ext, finite modules and the search-based predicates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::modules::ModuleError;

pub mod finite;
pub mod groebner;
pub mod parts;
pub mod resolution;
pub mod search;

pub use finite::{finite_structure, FiniteBattery, FiniteModuleData};
pub use parts::{dm, dm_embedded, torsion_parts, TorsionParts};
pub use resolution::{ext, free_resolution, syzygy, Ext, Resolution, Subquotient};
pub use finite::Submodule;
pub use search::{enumerate_submodules, is_isomorphic, is_nearly_symmetric, is_symmetric, NearSymmetry};

/// Search and size bounds shared by the engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest t-degree allowed in a Gröbner basis element.
    pub degree_cap: usize,
    /// Largest finite-module order handled by element enumeration.
    pub max_order: u64,
    /// Element pairs the symmetry search may explore.
    pub symmetry_pairs: u64,
    /// Submodules an enumeration may produce.
    pub max_submodules: usize,
    /// Largest t-power tried when lifting across the localization.
    pub lift_shift: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { degree_cap: 64, max_order: 100_000, symmetry_pairs: 1_000_000, max_submodules: 20_000, lift_shift: 64 }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExtError {
    #[error("Gröbner basis exceeded the degree cap {cap}")]
    DegreeCap { cap: usize },
    #[error("module is not finite")]
    NotFinite,
    #[error("finiteness certification failed for a module that must be finite")]
    FinitenessCertificationFailed,
    #[error("bound exceeded: {what} (limit {limit})")]
    BoundExceeded { what: &'static str, limit: u64 },
    #[error("could not lift a vector that should lie in the image")]
    LiftFailed,
    #[error("finite module data too large for machine integers")]
    Overflow,
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Three-valued verdict of a bounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }
}
