use std::collections::HashMap;
use std::sync::Arc;

use crate::ff::{BTVertex, Mat2, MatrixMap, Uniformizer};
use crate::space::{decode_line, line_vertex, VertexKey};

use super::ActionError;

/// A bijection on the vertices of one factor, expected to be a graph
/// automorphism.
pub trait VertexMap: Send + Sync {
    fn apply(&self, v: &VertexKey) -> Result<VertexKey, ActionError>;
    fn inverse(&self) -> Arc<dyn VertexMap>;
    fn describe(&self) -> String;
    /// True when the map is known to be the identity without evaluation.
    fn is_identity(&self) -> bool {
        false
    }
}

pub type SharedMap = Arc<dyn VertexMap>;

pub struct IdentityMap;

impl VertexMap for IdentityMap {
    fn apply(&self, v: &VertexKey) -> Result<VertexKey, ActionError> {
        Ok(v.clone())
    }
    fn inverse(&self) -> SharedMap {
        Arc::new(IdentityMap)
    }
    fn describe(&self) -> String {
        "id".into()
    }
    fn is_identity(&self) -> bool {
        true
    }
}

/// n -> n + by on the simplicial line.
pub struct LineShift(pub i64);

impl VertexMap for LineShift {
    fn apply(&self, v: &VertexKey) -> Result<VertexKey, ActionError> {
        Ok(line_vertex(decode_line(v)? + self.0))
    }
    fn inverse(&self) -> SharedMap {
        Arc::new(LineShift(-self.0))
    }
    fn describe(&self) -> String {
        format!("shift({})", self.0)
    }
    fn is_identity(&self) -> bool {
        self.0 == 0
    }
}

/// n -> c - n on the simplicial line.
pub struct LineReflection(pub i64);

impl VertexMap for LineReflection {
    fn apply(&self, v: &VertexKey) -> Result<VertexKey, ActionError> {
        Ok(line_vertex(self.0 - decode_line(v)?))
    }
    fn inverse(&self) -> SharedMap {
        Arc::new(LineReflection(self.0))
    }
    fn describe(&self) -> String {
        format!("reflect({})", self.0)
    }
}

/// A matrix acting on a Bruhat–Tits tree.
pub struct MatrixVertexMap {
    map: MatrixMap,
}

impl MatrixVertexMap {
    pub fn new(m: Mat2, u: Uniformizer) -> Self {
        MatrixVertexMap { map: MatrixMap::new(m, u) }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.map.matrix
    }
}

impl VertexMap for MatrixVertexMap {
    fn apply(&self, v: &VertexKey) -> Result<VertexKey, ActionError> {
        let q = self.map.modulus();
        let x = BTVertex::from_key(v, q, self.map.uniformizer)?;
        Ok(self.map.apply(&x).key(self.map.uniformizer))
    }
    fn inverse(&self) -> SharedMap {
        Arc::new(MatrixVertexMap { map: self.map.inverse() })
    }
    fn describe(&self) -> String {
        format!("{:?}@{}", self.map.matrix, self.map.uniformizer.label())
    }
}

/// Letter relabelling on the regular tree of reduced words over a
/// d-letter alphabet (all letters involutions); fixes the root.
pub struct LetterPermutation(pub Vec<u8>);

impl VertexMap for LetterPermutation {
    fn apply(&self, v: &VertexKey) -> Result<VertexKey, ActionError> {
        let mut out = Vec::with_capacity(v.as_bytes().len());
        for &c in v.as_bytes() {
            out.push(*self.0.get(c as usize).ok_or_else(|| ActionError::OutOfExploredRegion(v.clone()))?);
        }
        Ok(VertexKey::from_bytes(&out))
    }
    fn inverse(&self) -> SharedMap {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        Arc::new(LetterPermutation(inv))
    }
    fn describe(&self) -> String {
        format!("relabel{:?}", self.0)
    }
    fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p as usize)
    }
}

/// Left multiplication by one involutive letter on the regular tree: an
/// inversion of the edge between the root and that letter.
pub struct LetterMultiply(pub u8);

impl VertexMap for LetterMultiply {
    fn apply(&self, v: &VertexKey) -> Result<VertexKey, ActionError> {
        let w = v.as_bytes();
        Ok(if w.first() == Some(&self.0) {
            VertexKey::from_bytes(&w[1..])
        } else {
            let mut out = vec![self.0];
            out.extend_from_slice(w);
            VertexKey::from_bytes(&out)
        })
    }
    fn inverse(&self) -> SharedMap {
        Arc::new(LetterMultiply(self.0))
    }
    fn describe(&self) -> String {
        format!("mul({})", self.0)
    }
}

/// Translation of the points a + b sqrt2, keyed as integer pairs.
pub struct ZSqrt2Translation {
    pub a: i64,
    pub b: i64,
}

impl VertexMap for ZSqrt2Translation {
    fn apply(&self, v: &VertexKey) -> Result<VertexKey, ActionError> {
        let p = v.to_ints(2).ok_or_else(|| ActionError::OutOfExploredRegion(v.clone()))?;
        Ok(VertexKey::from_ints(&[p[0] + self.a, p[1] + self.b]))
    }
    fn inverse(&self) -> SharedMap {
        Arc::new(ZSqrt2Translation { a: -self.a, b: -self.b })
    }
    fn describe(&self) -> String {
        format!("translate({}+{}r2)", self.a, self.b)
    }
    fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

/// Explicit finite bijection; vertices outside the table are reported as
/// out of the explored region.
pub struct TableMap {
    forward: Arc<HashMap<VertexKey, VertexKey>>,
    backward: Arc<HashMap<VertexKey, VertexKey>>,
}

impl TableMap {
    pub fn new(pairs: Vec<(VertexKey, VertexKey)>) -> Result<Self, ActionError> {
        let mut forward = HashMap::new();
        let mut backward = HashMap::new();
        for (a, b) in pairs {
            if forward.insert(a.clone(), b.clone()).is_some() || backward.insert(b.clone(), a.clone()).is_some() {
                return Err(ActionError::Parse(format!("vertex table is not a bijection at {a} -> {b}")));
            }
        }
        Ok(TableMap { forward: Arc::new(forward), backward: Arc::new(backward) })
    }
}

impl VertexMap for TableMap {
    fn apply(&self, v: &VertexKey) -> Result<VertexKey, ActionError> {
        self.forward.get(v).cloned().ok_or_else(|| ActionError::OutOfExploredRegion(v.clone()))
    }
    fn inverse(&self) -> SharedMap {
        Arc::new(TableMap { forward: self.backward.clone(), backward: self.forward.clone() })
    }
    fn describe(&self) -> String {
        format!("table({} entries)", self.forward.len())
    }
}

/// Composite applying `maps[0]` first.
pub struct ComposedMap(pub Vec<SharedMap>);

impl VertexMap for ComposedMap {
    fn apply(&self, v: &VertexKey) -> Result<VertexKey, ActionError> {
        let mut x = v.clone();
        for m in &self.0 {
            x = m.apply(&x)?;
        }
        Ok(x)
    }
    fn inverse(&self) -> SharedMap {
        Arc::new(ComposedMap(self.0.iter().rev().map(|m| m.inverse()).collect()))
    }
    fn describe(&self) -> String {
        self.0.iter().rev().map(|m| m.describe()).collect::<Vec<_>>().join(" o ")
    }
    fn is_identity(&self) -> bool {
        self.0.iter().all(|m| m.is_identity())
    }
}

/// `second` after `first`, dropping identities.
pub fn compose(first: &SharedMap, second: &SharedMap) -> SharedMap {
    if first.is_identity() {
        return second.clone();
    }
    if second.is_identity() {
        return first.clone();
    }
    Arc::new(ComposedMap(vec![first.clone(), second.clone()]))
}

/// Action of one generator on a product: coordinate `j` is mapped by
/// `maps[j]` into coordinate `perm[j]`.
#[derive(Clone)]
pub struct GenAction {
    pub perm: Vec<usize>,
    pub maps: Vec<SharedMap>,
}

impl std::fmt::Debug for GenAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let maps: Vec<String> = self.maps.iter().map(|m| m.describe()).collect();
        f.debug_struct("GenAction").field("perm", &self.perm).field("maps", &maps).finish()
    }
}

impl GenAction {
    pub fn factorwise(maps: Vec<SharedMap>) -> Self {
        GenAction { perm: (0..maps.len()).collect(), maps }
    }

    pub fn identity(arity: usize) -> Self {
        GenAction::factorwise((0..arity).map(|_| Arc::new(IdentityMap) as SharedMap).collect())
    }

    pub fn arity(&self) -> usize {
        self.perm.len()
    }

    pub fn preserves_factors(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn apply(&self, x: &[VertexKey]) -> Result<Vec<VertexKey>, ActionError> {
        if x.len() != self.arity() {
            return Err(ActionError::Arity { expected: self.arity(), found: x.len() });
        }
        let mut out = vec![VertexKey::default(); x.len()];
        for (j, v) in x.iter().enumerate() {
            out[self.perm[j]] = self.maps[j].apply(v)?;
        }
        Ok(out)
    }

    /// `self` after `first`.
    pub fn after(&self, first: &GenAction) -> GenAction {
        let n = self.arity();
        let perm = (0..n).map(|j| self.perm[first.perm[j]]).collect();
        let maps = (0..n).map(|j| compose(&first.maps[j], &self.maps[first.perm[j]])).collect();
        GenAction { perm, maps }
    }

    pub fn inverse(&self) -> GenAction {
        let n = self.arity();
        let mut pinv = vec![0; n];
        for (j, &p) in self.perm.iter().enumerate() {
            pinv[p] = j;
        }
        let maps = (0..n).map(|k| self.maps[pinv[k]].inverse()).collect();
        GenAction { perm: pinv, maps }
    }

    /// Order of the coordinate permutation.
    pub fn perm_order(&self) -> usize {
        let n = self.arity();
        let mut seen = vec![false; n];
        let mut order = 1usize;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_inverse_with_swap() {
        let swap = GenAction { perm: vec![1, 0], maps: vec![Arc::new(LineShift(1)), Arc::new(LineShift(5))] };
        let x = vec![line_vertex(0), line_vertex(10)];
        let y = swap.apply(&x).unwrap();
        assert_eq!(y, vec![line_vertex(15), line_vertex(1)]);
        assert_eq!(swap.inverse().apply(&y).unwrap(), x);
        let sq = swap.after(&swap);
        assert!(sq.preserves_factors());
        assert_eq!(sq.apply(&x).unwrap(), vec![line_vertex(6), line_vertex(16)]);
        assert_eq!(swap.perm_order(), 2);
    }

    #[test]
    fn letter_maps_on_words() {
        let m = LetterMultiply(1);
        let w = VertexKey::from_bytes(&[0, 2]);
        let img = m.apply(&w).unwrap();
        assert_eq!(img.as_bytes(), &[1, 0, 2]);
        assert_eq!(m.apply(&img).unwrap(), w);
        let p = LetterPermutation(vec![1, 2, 0]);
        assert_eq!(p.inverse().apply(&p.apply(&w).unwrap()).unwrap(), w);
    }
}
