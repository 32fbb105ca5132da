use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::action::{GroupWord, MarkedAction, SharedMap};
use crate::space::{grow_ball, LazySpace, VertexKey, DEFAULT_DISTANCE_CAP};

use super::AxisError;

/// Vertices of minimal displacement for a loxodromic element, found in a
/// ball, split into orbits of the cyclic group it generates.
#[derive(Clone, Debug, Serialize)]
pub struct Pseudoaxis {
    pub g: String,
    /// l = d(v0, g v0), the minimal displacement over the region.
    pub min_disp: u64,
    pub members: Vec<VertexKey>,
    /// One representative per orbit; the first is v0.
    pub orbit_reps: Vec<VertexKey>,
    pub orbit_count: usize,
    pub search_radius: u32,
    pub horizon: usize,
}

impl Pseudoaxis {
    pub fn v0(&self) -> &VertexKey {
        &self.orbit_reps[0]
    }
}

/// Single-factor space and composite map of a word, for actions on one graph.
pub(crate) fn single_factor<'a>(action: &'a MarkedAction, w: &GroupWord) -> Result<(&'a LazySpace, SharedMap), AxisError> {
    if action.arity() != 1 {
        return Err(AxisError::NotSingleFactor(action.arity()));
    }
    Ok((&action.space.factors[0], action.word_action(w).maps[0].clone()))
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// The pseudoaxis of `g` within the ball of radius `radius` about the
/// basepoint of a single-graph action. Members are linked when one is
/// g^m of the other for 0 < m <= `horizon`.
pub fn pseudoaxis(action: &MarkedAction, g: &GroupWord, radius: u32, horizon: usize) -> Result<Pseudoaxis, AxisError> {
    let (space, map) = single_factor(action, g)?;
    let ball = grow_ball(space, &space.basepoint, radius)?;
    let mut disp: Vec<(VertexKey, u64)> = Vec::with_capacity(ball.len());
    for v in ball.members() {
        let gv = map.apply(v)?;
        disp.push((v.clone(), space.distance(v, &gv, DEFAULT_DISTANCE_CAP)?));
    }
    let l = disp.iter().map(|p| p.1).min().unwrap_or(0);
    if l == 0 {
        return Err(AxisError::NotLoxodromic(action.display(g)));
    }
    let mut members: Vec<VertexKey> = disp.into_iter().filter(|p| p.1 == l).map(|p| p.0).collect();
    members.sort();
    let index: HashMap<&VertexKey, usize> = members.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..members.len()).collect();
    for (i, v) in members.iter().enumerate() {
        let mut x = v.clone();
        for _ in 0..horizon {
            x = map.apply(&x)?;
            if let Some(&j) = index.get(&x) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    // members are sorted, so the least index of each class is its least key
    let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..members.len() {
        let r = find(&mut parent, i);
        classes.entry(r).or_insert(i);
    }
    let orbit_reps: Vec<VertexKey> = classes.values().map(|&i| members[i].clone()).collect();
    Ok(Pseudoaxis {
        g: action.display(g),
        min_disp: l,
        orbit_count: orbit_reps.len(),
        orbit_reps,
        members,
        search_radius: radius,
        horizon,
    })
}
