use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::space::{Point, VertexKey, DEFAULT_DISTANCE_CAP};

use super::marked::MarkedAction;
use super::metric::{BaseMetric, RootRatio};
use super::word::{inverse_letter, GroupWord};
use super::ActionError;

/// A group element found by breadth-first search in the Cayley graph,
/// identified by its images of the probe set.
#[derive(Clone, Debug)]
pub struct Element {
    pub word: GroupWord,
    pub images: Vec<Point>,
}

impl Element {
    pub fn base_image(&self) -> &Point {
        &self.images[0]
    }
}

/// Elements of word length at most `max_len`, grouped by length. Two words
/// are the same element when they agree on the probe set, so nothing
/// beyond action equality is assumed about the group. Spheres are built by
/// left multiplication, which only needs the stored probe images; the
/// order of the output is independent of the worker count.
pub fn enumerate_elements(action: &MarkedAction, base: &[VertexKey], max_len: usize) -> Result<Vec<Vec<Element>>, ActionError> {
    let probes = action.probe_set(base)?;
    let mut seen: HashSet<Vec<Point>> = HashSet::new();
    seen.insert(probes.clone());
    let mut spheres = vec![vec![Element { word: GroupWord::identity(), images: probes }]];
    let letters: Vec<_> = action.gens.letters().collect();
    for _ in 0..max_len {
        let last = spheres.last().unwrap();
        let candidates: Vec<Result<Vec<Element>, ActionError>> = last
            .par_iter()
            .map(|e| {
                let mut out = Vec::with_capacity(letters.len());
                for &l in &letters {
                    if e.word.letters().first() == Some(&inverse_letter(l)) {
                        continue;
                    }
                    let images = e.images.iter().map(|p| action.apply_letter(l, p)).collect::<Result<Vec<_>, _>>()?;
                    let mut word = vec![l];
                    word.extend_from_slice(e.word.letters());
                    out.push(Element { word: GroupWord(word), images });
                }
                Ok(out)
            })
            .collect();
        let mut next = Vec::new();
        for batch in candidates {
            for e in batch? {
                if seen.insert(e.images.clone()) {
                    next.push(e);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        spheres.push(next);
    }
    Ok(spheres)
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusWitness {
    pub word: String,
    pub length: usize,
    pub displacement_sq: u64,
}

/// Distinct elements of word length at most `word_bound` moving the base
/// by at most `radius`.
#[derive(Clone, Debug, Serialize)]
pub struct ProperCensus {
    pub word_bound: usize,
    pub radius: u32,
    pub count: usize,
    pub witnesses: Vec<CensusWitness>,
}

pub fn proper_census(action: &MarkedAction, base: &[VertexKey], word_bound: usize, radius: u32) -> Result<ProperCensus, ActionError> {
    Ok(census_series(action, base, &[word_bound], radius)?.remove(0))
}

/// Censuses for several word bounds from one enumeration.
pub fn census_series(action: &MarkedAction, base: &[VertexKey], word_bounds: &[usize], radius: u32) -> Result<Vec<ProperCensus>, ActionError> {
    let max = word_bounds.iter().copied().max().unwrap_or(0);
    let spheres = enumerate_elements(action, base, max)?;
    let mut metric = BaseMetric::new(&action.space, &base.to_vec());
    let mut close = Vec::new();
    for (len, sphere) in spheres.iter().enumerate() {
        for e in sphere {
            if let Some(d) = metric.distance_sq_within(e.base_image(), radius)? {
                close.push(CensusWitness { word: action.display(&e.word), length: len, displacement_sq: d });
            }
        }
    }
    Ok(word_bounds
        .iter()
        .map(|&w| {
            let witnesses: Vec<CensusWitness> = close.iter().filter(|c| c.length <= w).cloned().collect();
            ProperCensus { word_bound: w, radius, count: witnesses.len(), witnesses }
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct QieRow {
    pub length: usize,
    pub elements: usize,
    pub min_displacement_sq: u64,
    pub max_displacement_sq: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct QieProbe {
    pub rows: Vec<QieRow>,
    /// min over lengths n >= 1 of (minimal displacement on the sphere) / n.
    pub lower_slope: RootRatio,
}

/// Minimal and maximal displacement over each sphere of the word metric.
pub fn qie_probe(action: &MarkedAction, base: &[VertexKey], max_len: usize) -> Result<QieProbe, ActionError> {
    let spheres = enumerate_elements(action, base, max_len)?;
    let mut metric = BaseMetric::new(&action.space, &base.to_vec());
    let mut rows = Vec::new();
    let mut slope: Option<RootRatio> = None;
    for (len, sphere) in spheres.iter().enumerate().skip(1) {
        let mut lo = u64::MAX;
        let mut hi = 0;
        for e in sphere {
            let d = metric.distance_sq(e.base_image(), DEFAULT_DISTANCE_CAP)?;
            lo = lo.min(d);
            hi = hi.max(d);
        }
        let r = RootRatio::new(lo, len as u64);
        slope = Some(slope.map_or(r, |s| s.min(r)));
        rows.push(QieRow { length: len, elements: sphere.len(), min_displacement_sq: lo, max_displacement_sq: hi });
    }
    Ok(QieProbe { rows, lower_slope: slope.unwrap_or_else(RootRatio::zero) })
}
