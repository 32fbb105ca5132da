//! Words over generators, actions by graph automorphisms on products,
//! displacement sequences, the classifier, graphification and censuses.

mod census;
mod classify;
mod graphify;
mod maps;
mod marked;
mod metric;
mod word;

use thiserror::Error;

use crate::ff::FfError;
use crate::space::{SpaceError, VertexKey};

pub use census::{census_series, enumerate_elements, proper_census, qie_probe, CensusWitness, Element, ProperCensus, QieProbe, QieRow};
pub use classify::{
    classify, displacement_seq, tree_tau, tree_translation_length, Certainty, Classification, ClassifyOptions, DisplacementSeq, Kind,
};
pub use graphify::{abs_sqrt2_le_one, graphified_zsqrt2, graphify, sign_sqrt2, IntegerPoints, PointOracle, ZSqrt2Points};
pub use maps::{
    compose, ComposedMap, GenAction, IdentityMap, LetterMultiply, LetterPermutation, LineReflection, LineShift, MatrixVertexMap, SharedMap,
    TableMap, VertexMap, ZSqrt2Translation,
};
pub use marked::{AutomorphismReport, Declaration, MarkedAction};
pub use metric::{root_sum_ge, BaseMetric, RootRatio};
pub use word::{inverse_letter, reduced_words, GenSet, GroupWord, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Field(#[from] FfError),
    #[error("vertex {0} lies outside the region where the map is defined")]
    OutOfExploredRegion(VertexKey),
    #[error("{0}")]
    Parse(String),
    #[error("point has {found} coordinates, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("generator {letter} is not an automorphism: {detail}")]
    NotAutomorphism { letter: String, detail: String },
    #[error("{letter} does not preserve factor {factor}")]
    NotFactorPreserving { letter: String, factor: usize },
    #[error("space {0} is not a verified tree")]
    NotTree(String),
    #[error("edge inversion at {0}; refine to the barycentric subdivision")]
    EdgeInversion(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}
