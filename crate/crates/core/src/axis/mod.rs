//! Pseudoaxes, integer characters from central loxodromic elements, their
//! extension over finite index, the character map of abelian actions on
//! products, and the quasigeodesic and coset-cover probes.

mod abelian;
mod character;
mod extend;
mod probes;
mod pseudoaxis;

use thiserror::Error;

use crate::action::ActionError;
use crate::induction::InductionError;
use crate::space::SpaceError;

pub use abelian::{abelian_character_map, check_commuting, integer_rank, is_pick, search_picks, AbelianCharacterMap, PickSearch};
pub use character::{
    check_centrality, eval_sym, kernel_law, phi_from_central, CentralCharacter, CharacterOptions, KernelRow, SymElem, ZCharacter,
};
pub use extend::{check_composition_law, extend_character, theta_violations, Extension, Factorization};
pub use probes::{coset_cover_check, stability_probe, CoverCheck, CoverRow, StabilityProbe};
pub use pseudoaxis::{pseudoaxis, Pseudoaxis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AxisError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("expected an action on a single graph, got {0} factors")]
    NotSingleFactor(usize),
    #[error("{0} has minimal displacement 0 in the search region")]
    NotLoxodromic(String),
    #[error("generator {generator} does not commute with the central element at {at}")]
    NotCentral { generator: String, at: String },
    #[error("orbit escapes the labelled region: {0}")]
    OrbitEscapesRegion(String),
    #[error("a power of {generator} translates the copies unequally: {r:?}")]
    UnequalTranslations { generator: String, r: Vec<i64> },
    #[error("generators {0} and {1} do not commute")]
    NotCommuting(String, String),
    #[error("{word} is not loxodromic on factor {factor} and elliptic elsewhere")]
    BadPick { word: String, factor: usize },
    #[error("character map has rank {achieved}, below the requested {target}")]
    RankDeficient { target: usize, achieved: usize },
    #[error("character rejected: it takes value {value} on {relator}")]
    RejectedCharacter { relator: String, value: i64 },
    #[error("bad factorization: {0}")]
    BadFactorization(String),
    #[error("{0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl From<SpaceError> for AxisError {
    fn from(e: SpaceError) -> Self {
        AxisError::Action(e.into())
    }
}

impl From<InductionError> for AxisError {
    fn from(e: InductionError) -> Self {
        match e {
            InductionError::Action(a) => AxisError::Action(a),
            InductionError::InconsistentFactorMap(s) => AxisError::Invariant(s),
        }
    }
}
