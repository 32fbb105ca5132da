use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use super::key::VertexKey;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("neighbor relation not symmetric: {from} lists {to} but not conversely")]
    OracleAsymmetry { from: VertexKey, to: VertexKey },
    #[error("vertex {vertex} has {found} neighbors, above the declared bound {bound}")]
    ValenceExceeded { vertex: VertexKey, found: usize, bound: usize },
    #[error("oracle returned a self-loop or duplicate neighbor at {0}")]
    MalformedNeighbors(VertexKey),
    #[error("key {0} does not decode as a vertex of this space")]
    BadKey(VertexKey),
    #[error("vertex {0} is not in the ball")]
    NotInBall(VertexKey),
    #[error("distance between {u} and {v} not certified within search cap {cap}")]
    Uncertified { u: VertexKey, v: VertexKey, cap: u32 },
    #[error("four-point scan needs {needed} tuples, above budget {budget}, and sampling is disabled")]
    TooLarge { needed: u128, budget: u128 },
    #[error("product point has {found} coordinates, expected {expected}")]
    Arity { expected: usize, found: usize },
}

/// Neighbor oracle of a locally finite graph.
pub trait NeighborOracle: Send + Sync {
    fn neighbors(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError>;

    /// Exact graph distance from a closed form, when the space has one.
    /// Implementations must agree with breadth-first search.
    fn distance_hint(&self, _u: &VertexKey, _v: &VertexKey) -> Option<u64> {
        None
    }

    fn describe(&self, v: &VertexKey) -> String {
        v.to_hex()
    }
}

/// A lazily explored locally finite graph with a basepoint and declared
/// structural flags.
#[derive(Clone)]
pub struct LazySpace {
    pub name: String,
    pub basepoint: VertexKey,
    oracle: Arc<dyn NeighborOracle>,
    pub valence_bound: Option<usize>,
    pub quasitree_claim: bool,
    pub line_factor: bool,
    tree_check: Arc<OnceLock<bool>>,
}

impl fmt::Debug for LazySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazySpace")
            .field("name", &self.name)
            .field("basepoint", &self.basepoint)
            .field("valence_bound", &self.valence_bound)
            .field("quasitree_claim", &self.quasitree_claim)
            .field("line_factor", &self.line_factor)
            .finish()
    }
}

impl LazySpace {
    pub fn new(name: impl Into<String>, basepoint: VertexKey, oracle: Arc<dyn NeighborOracle>) -> Self {
        LazySpace {
            name: name.into(),
            basepoint,
            oracle,
            valence_bound: None,
            quasitree_claim: false,
            line_factor: false,
            tree_check: Arc::new(OnceLock::new()),
        }
    }

    pub fn with_valence_bound(mut self, bound: usize) -> Self {
        self.valence_bound = Some(bound);
        self
    }

    pub fn with_quasitree_claim(mut self, claim: bool) -> Self {
        self.quasitree_claim = claim;
        self
    }

    pub fn with_line_factor(mut self, line: bool) -> Self {
        self.line_factor = line;
        self
    }

    pub fn oracle(&self) -> &Arc<dyn NeighborOracle> {
        &self.oracle
    }

    pub fn neighbors(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        self.oracle.neighbors(v)
    }

    /// Neighbors with the structural invariants checked: no self-loops, no
    /// duplicates, valence bound respected.
    pub fn checked_neighbors(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        let ns = self.oracle.neighbors(v)?;
        if let Some(bound) = self.valence_bound {
            if ns.len() > bound {
                return Err(SpaceError::ValenceExceeded { vertex: v.clone(), found: ns.len(), bound });
            }
        }
        let mut sorted: Vec<&VertexKey> = ns.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.binary_search(&v).is_ok() {
            return Err(SpaceError::MalformedNeighbors(v.clone()));
        }
        Ok(ns)
    }

    pub fn describe(&self, v: &VertexKey) -> String {
        self.oracle.describe(v)
    }

    /// Exact distance in the whole graph. Uses the closed form when the
    /// oracle provides one, otherwise bidirectional breadth-first search
    /// that gives up once the two radii sum past `cap`.
    pub fn distance(&self, u: &VertexKey, v: &VertexKey, cap: u32) -> Result<u64, SpaceError> {
        if let Some(d) = self.oracle.distance_hint(u, v) {
            return if d <= cap as u64 {
                Ok(d)
            } else {
                Err(SpaceError::Uncertified { u: u.clone(), v: v.clone(), cap })
            };
        }
        self.bfs_distance(u, v, cap)?
            .ok_or_else(|| SpaceError::Uncertified { u: u.clone(), v: v.clone(), cap })
    }

    /// `Some(d)` when the distance is at most `cap`, `None` when it is
    /// provably larger.
    pub fn distance_within(&self, u: &VertexKey, v: &VertexKey, cap: u32) -> Result<Option<u64>, SpaceError> {
        if let Some(d) = self.oracle.distance_hint(u, v) {
            return Ok((d <= cap as u64).then_some(d));
        }
        self.bfs_distance(u, v, cap)
    }

    /// Bidirectional breadth-first search, ignoring any closed form.
    pub fn bfs_distance(&self, u: &VertexKey, v: &VertexKey, cap: u32) -> Result<Option<u64>, SpaceError> {
        if u == v {
            return Ok(Some(0));
        }
        let mut seen = [HashMap::new(), HashMap::new()];
        seen[0].insert(u.clone(), 0u32);
        seen[1].insert(v.clone(), 0u32);
        let mut frontier = [vec![u.clone()], vec![v.clone()]];
        let mut radius = [0u32, 0u32];
        let mut best: Option<u32> = None;
        loop {
            if let Some(b) = best {
                if b <= radius[0] + radius[1] {
                    return Ok(Some(b as u64));
                }
            }
            if radius[0] + radius[1] >= cap {
                return Ok(None);
            }
            let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
            if frontier[side].is_empty() {
                // component exhausted; any meeting already found is exact
                return Ok(best.map(|b| b as u64));
            }
            let next_r = radius[side] + 1;
            let mut next = Vec::new();
            for x in std::mem::take(&mut frontier[side]) {
                for y in self.oracle.neighbors(&x)? {
                    if seen[side].contains_key(&y) {
                        continue;
                    }
                    if let Some(&dy) = seen[1 - side].get(&y) {
                        let total = next_r + dy;
                        best = Some(best.map_or(total, |b| b.min(total)));
                    }
                    seen[side].insert(y.clone(), next_r);
                    next.push(y);
                }
            }
            frontier[side] = next;
            radius[side] = next_r;
        }
    }

    /// Cached result of a local tree test (four-point defect zero on a
    /// small ball around the basepoint). Only meaningful for spaces with a
    /// quasitree claim.
    pub fn is_verified_tree(&self) -> bool {
        *self.tree_check.get_or_init(|| {
            if !self.quasitree_claim {
                return false;
            }
            let zero_defect = |radius: u32| -> bool {
                let Ok(ball) = super::ball::grow_ball(self, &self.basepoint, radius) else {
                    return false;
                };
                if ball.len() > 2000 {
                    return false;
                }
                super::delta::four_point_delta(&ball, self, &Default::default())
                    .map(|d| d.delta_twice == 0 && d.exhaustive)
                    .unwrap_or(false)
            };
            zero_defect(1) && zero_defect(2)
        })
    }
}
