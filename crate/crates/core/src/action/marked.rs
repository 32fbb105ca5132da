use serde::Serialize;

use crate::space::{grow_ball, Point, ProductSpace, VertexKey};

use super::maps::GenAction;
use super::metric::RootRatio;
use super::word::{GenSet, GroupWord, Letter};
use super::ActionError;

/// A declared exact stable translation length for a word, used as a
/// certification source by the classifier.
#[derive(Clone, Debug, Serialize)]
pub struct Declaration {
    pub word: GroupWord,
    pub tau: RootRatio,
    pub note: String,
}

/// A group given by generators acting on a product of lazy graphs.
#[derive(Clone)]
pub struct MarkedAction {
    pub name: String,
    pub space: ProductSpace,
    pub gens: GenSet,
    atoms: Vec<GenAction>,
    pub declared: Vec<Declaration>,
}

impl std::fmt::Debug for MarkedAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MarkedAction")
            .field("name", &self.name)
            .field("space", &self.space.name())
            .field("gens", &self.gens)
            .finish()
    }
}

/// Counts from a successful automorphism check.
#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismReport {
    pub vertices_checked: usize,
    pub edges_checked: usize,
}

impl MarkedAction {
    /// `gen_actions[i]` is the action of generator `i`; inverses are derived.
    pub fn new(name: impl Into<String>, space: ProductSpace, gens: GenSet, gen_actions: Vec<GenAction>) -> Result<Self, ActionError> {
        if gen_actions.len() != gens.rank() {
            return Err(ActionError::Parse(format!("{} generators but {} generator actions", gens.rank(), gen_actions.len())));
        }
        let mut atoms = Vec::with_capacity(2 * gen_actions.len());
        for g in gen_actions {
            if g.arity() != space.arity() || g.maps.len() != g.perm.len() {
                return Err(ActionError::Arity { expected: space.arity(), found: g.arity() });
            }
            let mut sorted = g.perm.clone();
            sorted.sort_unstable();
            if sorted.iter().enumerate().any(|(i, &p)| i != p) {
                return Err(ActionError::Parse(format!("coordinate map {:?} is not a permutation", g.perm)));
            }
            let inv = g.inverse();
            atoms.push(g);
            atoms.push(inv);
        }
        Ok(MarkedAction { name: name.into(), space, gens, atoms, declared: Vec::new() })
    }

    pub fn with_declaration(mut self, word: GroupWord, tau: RootRatio, note: impl Into<String>) -> Self {
        self.declared.push(Declaration { word: word.reduced(), tau, note: note.into() });
        self
    }

    pub fn arity(&self) -> usize {
        self.space.arity()
    }

    pub fn basepoint(&self) -> Point {
        self.space.basepoint()
    }

    pub fn atom(&self, l: Letter) -> &GenAction {
        &self.atoms[l as usize]
    }

    pub fn parse(&self, text: &str) -> Result<GroupWord, ActionError> {
        self.gens.parse(text)
    }

    pub fn display(&self, w: &GroupWord) -> String {
        self.gens.display(w)
    }

    /// Applies the rightmost letter first, so apply(uv, x) = apply(u, apply(v, x)).
    pub fn apply(&self, w: &GroupWord, x: &[VertexKey]) -> Result<Point, ActionError> {
        let mut p = x.to_vec();
        for &l in w.letters().iter().rev() {
            p = self.atoms[l as usize].apply(&p)?;
        }
        Ok(p)
    }

    pub fn apply_letter(&self, l: Letter, x: &[VertexKey]) -> Result<Point, ActionError> {
        self.atoms[l as usize].apply(x)
    }

    /// Composite coordinate action of a word.
    pub fn word_action(&self, w: &GroupWord) -> GenAction {
        let mut acc = GenAction::identity(self.arity());
        for &l in w.letters().iter().rev() {
            acc = self.atoms[l as usize].after(&acc);
        }
        acc
    }

    pub fn factor_preserving(&self) -> bool {
        self.atoms.iter().all(|a| a.preserves_factors())
    }

    /// The action on factor `i` alone; every generator must preserve it.
    pub fn factor_action(&self, i: usize) -> Result<MarkedAction, ActionError> {
        if i >= self.arity() {
            return Err(ActionError::Arity { expected: self.arity(), found: i + 1 });
        }
        let mut gen_actions = Vec::with_capacity(self.gens.rank());
        for g in 0..self.gens.rank() {
            let a = &self.atoms[2 * g];
            if a.perm[i] != i {
                return Err(ActionError::NotFactorPreserving { letter: self.gens.label(2 * g as Letter).to_string(), factor: i });
            }
            gen_actions.push(GenAction::factorwise(vec![a.maps[i].clone()]));
        }
        let space = ProductSpace::single(self.space.factors[i].clone());
        MarkedAction::new(format!("{}[{i}]", self.name), space, self.gens.clone(), gen_actions)
    }

    /// The base point together with every point differing from it by one
    /// edge in one factor. Action equality on this set is the element
    /// fingerprint used throughout.
    pub fn probe_set(&self, base: &[VertexKey]) -> Result<Vec<Point>, ActionError> {
        let mut out = vec![base.to_vec()];
        for (i, f) in self.space.factors.iter().enumerate() {
            for n in f.neighbors(&base[i])? {
                let mut p = base.to_vec();
                p[i] = n;
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Images of the probe set under `w`.
    pub fn fingerprint(&self, w: &GroupWord, probes: &[Point]) -> Result<Vec<Point>, ActionError> {
        probes.iter().map(|p| self.apply(w, p)).collect()
    }

    /// True when `u` and `v` agree on the probe set.
    pub fn agree_on(&self, u: &GroupWord, v: &GroupWord, probes: &[Point]) -> Result<bool, ActionError> {
        for p in probes {
            if self.apply(u, p)? != self.apply(v, p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks every generator and inverse on the radius-`radius` ball of each
    /// factor around the base: edges go to edges in the target factor, the
    /// formal inverse undoes the map.
    pub fn check_automorphisms(&self, base: &[VertexKey], radius: u32) -> Result<AutomorphismReport, ActionError> {
        let mut report = AutomorphismReport { vertices_checked: 0, edges_checked: 0 };
        for (i, factor) in self.space.factors.iter().enumerate() {
            let ball = grow_ball(factor, &base[i], radius)?;
            for l in self.gens.letters() {
                let atom = &self.atoms[l as usize];
                let inv = &self.atoms[(l ^ 1) as usize];
                let target = &self.space.factors[atom.perm[i]];
                let back = atom.perm[i];
                let label = self.gens.label(l).to_string();
                for (idx, v) in ball.members().iter().enumerate() {
                    let img = atom.maps[i].apply(v)?;
                    if inv.maps[back].apply(&img)? != *v {
                        return Err(ActionError::NotAutomorphism { letter: label, detail: format!("inverse does not undo the map at {}", factor.describe(v)) });
                    }
                    let img_neighbors = target.neighbors(&img)?;
                    for &j in ball.adjacency(idx) {
                        let w = &ball.members()[j];
                        let wi = atom.maps[i].apply(w)?;
                        if !img_neighbors.contains(&wi) {
                            return Err(ActionError::NotAutomorphism {
                                letter: label,
                                detail: format!("edge {} - {} not sent to an edge", factor.describe(v), factor.describe(w)),
                            });
                        }
                        report.edges_checked += 1;
                    }
                    if img_neighbors.len() != factor.neighbors(v)?.len() {
                        return Err(ActionError::NotAutomorphism { letter: label, detail: format!("valence changes at {}", factor.describe(v)) });
                    }
                    report.vertices_checked += 1;
                }
            }
        }
        Ok(report)
    }
}
