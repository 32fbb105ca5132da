use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::key::VertexKey;
use super::lazy::{LazySpace, SpaceError};

/// A finite metric ball explored by breadth-first search.
///
/// Members are stored in BFS order, so `members[0]` is the center and
/// distances from the center are non-decreasing along the list.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: VertexKey,
    pub radius: u32,
    members: Vec<VertexKey>,
    index: HashMap<VertexKey, usize>,
    dist: Vec<u32>,
    adjacency: Vec<Vec<usize>>,
}

/// Grows the ball of radius `radius` around `center`.
///
/// Every member's neighbor list is fetched (boundary included) so that the
/// induced subgraph is complete and symmetry can be checked on every edge
/// with both ends inside.
pub fn grow_ball(space: &LazySpace, center: &VertexKey, radius: u32) -> Result<Ball, SpaceError> {
    let mut members = vec![center.clone()];
    let mut index = HashMap::from([(center.clone(), 0usize)]);
    let mut dist = vec![0u32];
    let mut raw: Vec<Vec<VertexKey>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let ns = space.checked_neighbors(&members[i])?;
        if dist[i] < radius {
            for n in &ns {
                if !index.contains_key(n) {
                    index.insert(n.clone(), members.len());
                    members.push(n.clone());
                    dist.push(dist[i] + 1);
                    queue.push_back(members.len() - 1);
                }
            }
        }
        raw.push(ns);
    }
    // `raw` is in pop order, which equals member order.
    let mut adjacency = vec![Vec::new(); members.len()];
    for (i, ns) in raw.iter().enumerate() {
        for n in ns {
            if let Some(&j) = index.get(n) {
                adjacency[i].push(j);
            }
        }
    }
    for (i, adj) in adjacency.iter().enumerate() {
        for &j in adj {
            if !adjacency[j].contains(&i) {
                return Err(SpaceError::OracleAsymmetry { from: members[i].clone(), to: members[j].clone() });
            }
        }
    }
    Ok(Ball { center: center.clone(), radius, members, index, dist, adjacency })
}

impl Ball {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[VertexKey] {
        &self.members
    }

    pub fn contains(&self, v: &VertexKey) -> bool {
        self.index.contains_key(v)
    }

    pub fn index_of(&self, v: &VertexKey) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn dist_from_center(&self, v: &VertexKey) -> Result<u32, SpaceError> {
        self.index
            .get(v)
            .map(|&i| self.dist[i])
            .ok_or_else(|| SpaceError::NotInBall(v.clone()))
    }

    pub(crate) fn dist_at(&self, i: usize) -> u32 {
        self.dist[i]
    }

    pub fn adjacency(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// BFS distances inside the induced subgraph from member `source`.
    pub(crate) fn induced_distances(&self, source: usize) -> Vec<u32> {
        let mut d = vec![u32::MAX; self.members.len()];
        d[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(i) = queue.pop_front() {
            for &j in &self.adjacency[i] {
                if d[j] == u32::MAX {
                    d[j] = d[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        d
    }

    /// Distance in the induced subgraph, with the certification flag: the
    /// value is known to be the true graph distance when
    /// `dist_from_center(u) + d <= radius` (or the same with `v`), since
    /// then every path of that length from `u` stays inside the ball.
    pub fn certified_distance(&self, u: &VertexKey, v: &VertexKey) -> Result<(u32, bool), SpaceError> {
        let iu = self.index_of(u).ok_or_else(|| SpaceError::NotInBall(u.clone()))?;
        let iv = self.index_of(v).ok_or_else(|| SpaceError::NotInBall(v.clone()))?;
        let d = self.induced_distances(iu)[iv];
        let certified = d != u32::MAX && self.dist[iu].min(self.dist[iv]) + d <= self.radius;
        Ok((d, certified))
    }

    /// The sub-ball of a smaller radius around the same center.
    pub fn restrict(&self, radius: u32) -> Ball {
        let keep: Vec<usize> = (0..self.members.len()).filter(|&i| self.dist[i] <= radius).collect();
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let members: Vec<VertexKey> = keep.iter().map(|&i| self.members[i].clone()).collect();
        let index = members.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let dist = keep.iter().map(|&i| self.dist[i]).collect();
        let adjacency = keep
            .iter()
            .map(|&i| self.adjacency[i].iter().filter_map(|j| remap.get(j).copied()).collect())
            .collect();
        Ball { center: self.center.clone(), radius, members, index, dist, adjacency }
    }

    pub fn dump(&self, space_name: &str) -> BallDump {
        let mut edges = Vec::new();
        for (i, adj) in self.adjacency.iter().enumerate() {
            for &j in adj {
                if i < j {
                    edges.push([i, j]);
                }
            }
        }
        BallDump {
            space: space_name.to_string(),
            center: self.center.to_hex(),
            radius: self.radius,
            vertices: self.members.iter().map(VertexKey::to_hex).collect(),
            edges,
        }
    }
}

/// JSON form of a ball: vertices as hex-encoded canonical keys, edges as
/// index pairs into the vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallDump {
    pub space: String,
    pub center: String,
    pub radius: u32,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}
