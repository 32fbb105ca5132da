//! JSON descriptions of actions, for files and experiment configs.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{
    graphified_zsqrt2, ActionError, GenAction, GenSet, IdentityMap, LetterMultiply, LetterPermutation, LineReflection, LineShift, MarkedAction,
    MatrixVertexMap, RootRatio, SharedMap, TableMap, ZSqrt2Translation,
};
use crate::ff::{bt_tree, FfError, Mat2, Uniformizer};
use crate::gallery::{self, GalleryError};
use crate::induction::{induce_action, InductionData, InductionError};
use crate::space::{line, line_vertex, tree_regular, LazySpace, Point, ProductSpace, VertexKey};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid description: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Induction(#[from] InductionError),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SpaceSpec {
    Line,
    TreeRegular { d: u8 },
    BtTree { q: u32, v: String },
    Zsqrt2 { m: i64 },
}

/// A vertex: an integer on the line, or a hex-encoded key.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum VertexRef {
    Int(i64),
    Hex(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MapSpec {
    Identity,
    Shift { k: i64 },
    Reflection { k: i64 },
    Matrix { q: u32, v: String, rows: [[String; 2]; 2] },
    LetterPermutation { perm: Vec<u8> },
    LetterMultiply { letter: u8 },
    Zsqrt2Translation { a: i64, b: i64 },
    Table { pairs: Vec<(VertexRef, VertexRef)> },
}

/// One generator: an optional inverse label, an optional factor
/// permutation (factor j goes to `perm[j]`) and a map per factor.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GeneratorSpec {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
    pub maps: Vec<MapSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DeclarationSpec {
    pub word: String,
    /// tau = sqrt(tau_sq) / den.
    pub tau_sq: u64,
    #[serde(default = "one")]
    pub den: u64,
    #[serde(default)]
    pub note: String,
}

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ActionSpec {
    pub name: String,
    pub space: Vec<SpaceSpec>,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub declared: Vec<DeclarationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<VertexRef>>,
}

/// Where an action comes from.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum ActionSource {
    Gallery { entry: String },
    Inline { action: ActionSpec },
    Induced { from: Box<ActionSource>, generators: Vec<String>, data: InductionData },
}

fn uniformizer(v: &str) -> Result<Uniformizer, IoError> {
    Uniformizer::parse(v).ok_or_else(|| IoError::Invalid(format!("unknown valuation {v:?}")))
}

impl SpaceSpec {
    pub fn build(&self) -> Result<LazySpace, IoError> {
        Ok(match self {
            SpaceSpec::Line => line(),
            SpaceSpec::TreeRegular { d } => tree_regular(*d).map_err(IoError::Invalid)?,
            SpaceSpec::BtTree { q, v } => bt_tree(*q, uniformizer(v)?)?,
            SpaceSpec::Zsqrt2 { m } => {
                if *m < 2 {
                    return Err(IoError::Invalid(format!("truncation must be at least 2, got {m}")));
                }
                graphified_zsqrt2(*m)
            }
        })
    }
}

impl VertexRef {
    pub fn key(&self) -> Result<VertexKey, IoError> {
        match self {
            VertexRef::Int(n) => Ok(line_vertex(*n)),
            VertexRef::Hex(h) => VertexKey::from_hex(h).map_err(|e| IoError::Invalid(format!("vertex {h:?}: {e}"))),
        }
    }
}

impl MapSpec {
    pub fn build(&self) -> Result<SharedMap, IoError> {
        Ok(match self {
            MapSpec::Identity => Arc::new(IdentityMap),
            MapSpec::Shift { k } => Arc::new(LineShift(*k)),
            MapSpec::Reflection { k } => Arc::new(LineReflection(*k)),
            MapSpec::Matrix { q, v, rows } => {
                let m = Mat2::parse([[&rows[0][0], &rows[0][1]], [&rows[1][0], &rows[1][1]]], *q)?;
                Arc::new(MatrixVertexMap::new(m, uniformizer(v)?))
            }
            MapSpec::LetterPermutation { perm } => Arc::new(LetterPermutation(perm.clone())),
            MapSpec::LetterMultiply { letter } => Arc::new(LetterMultiply(*letter)),
            MapSpec::Zsqrt2Translation { a, b } => Arc::new(ZSqrt2Translation { a: *a, b: *b }),
            MapSpec::Table { pairs } => {
                let pairs = pairs.iter().map(|(a, b)| Ok((a.key()?, b.key()?))).collect::<Result<Vec<_>, IoError>>()?;
                Arc::new(TableMap::new(pairs)?)
            }
        })
    }
}

impl ActionSpec {
    pub fn build(&self) -> Result<(MarkedAction, Option<Point>), IoError> {
        let space = ProductSpace::new(self.space.iter().map(SpaceSpec::build).collect::<Result<_, _>>()?);
        let gens = if self.generators.iter().any(|g| g.inverse.is_some()) {
            let pairs: Vec<(String, String)> =
                self.generators.iter().map(|g| (g.label.clone(), g.inverse.clone().unwrap_or_else(|| format!("{}^-1", g.label)))).collect();
            GenSet::with_inverses(&pairs)?
        } else {
            let labels: Vec<&str> = self.generators.iter().map(|g| g.label.as_str()).collect();
            GenSet::simple(&labels)?
        };
        let mut acts = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            if g.maps.len() != space.arity() {
                return Err(IoError::Invalid(format!("generator {} has {} maps for {} factors", g.label, g.maps.len(), space.arity())));
            }
            let maps = g.maps.iter().map(MapSpec::build).collect::<Result<Vec<_>, _>>()?;
            let perm = g.perm.clone().unwrap_or_else(|| (0..maps.len()).collect());
            acts.push(GenAction { perm, maps });
        }
        let mut action = MarkedAction::new(self.name.clone(), space, gens, acts)?;
        for d in &self.declared {
            if d.den == 0 {
                return Err(IoError::Invalid(format!("declaration for {} has zero denominator", d.word)));
            }
            let w = action.parse(&d.word)?;
            action = action.with_declaration(w, RootRatio::new(d.tau_sq, d.den), d.note.clone());
        }
        let base = match &self.base {
            Some(b) => {
                if b.len() != action.arity() {
                    return Err(IoError::Invalid(format!("base has {} coordinates for {} factors", b.len(), action.arity())));
                }
                Some(b.iter().map(VertexRef::key).collect::<Result<Vec<_>, _>>()?)
            }
            None => None,
        };
        Ok((action, base))
    }
}

impl ActionSource {
    /// The action with its preferred base point.
    pub fn build(&self) -> Result<(MarkedAction, Point), IoError> {
        match self {
            ActionSource::Gallery { entry } => {
                let e = gallery::build(entry)?;
                let base = e.base_point();
                match (e.action(), base) {
                    (Some(a), Some(b)) => Ok((a.clone(), b)),
                    _ => Err(IoError::Invalid(format!("gallery entry {entry} is not a graph action"))),
                }
            }
            ActionSource::Inline { action } => {
                let (a, base) = action.build()?;
                let base = base.unwrap_or_else(|| a.basepoint());
                Ok((a, base))
            }
            ActionSource::Induced { from, generators, data } => {
                let (h, _) = from.build()?;
                let labels: Vec<&str> = generators.iter().map(String::as_str).collect();
                let g = induce_action(&h, &GenSet::simple(&labels)?, data)?;
                let base = g.basepoint();
                Ok((g, base))
            }
        }
    }
}

pub fn parse_action_source(text: &str) -> Result<ActionSource, IoError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_line_shift() {
        let text = r#"{"source":"inline","action":{"name":"shift2","space":[{"type":"line"}],
            "generators":[{"label":"x","maps":[{"type":"shift","k":2}]}]}}"#;
        let (a, base) = parse_action_source(text).unwrap().build().unwrap();
        let x = a.parse("x x").unwrap();
        assert_eq!(a.apply(&x, &base).unwrap(), vec![line_vertex(4)]);
    }

    #[test]
    fn table_must_be_bijective() {
        let m = MapSpec::Table { pairs: vec![(VertexRef::Int(0), VertexRef::Int(1)), (VertexRef::Int(2), VertexRef::Int(1))] };
        assert!(m.build().is_err());
    }
}
