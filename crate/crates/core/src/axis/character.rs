use std::collections::HashMap;

use serde::Serialize;

use crate::action::{GenSet, GroupWord, MarkedAction, SharedMap};
use crate::space::{grow_ball, VertexKey, DEFAULT_DISTANCE_CAP};

use super::pseudoaxis::{pseudoaxis, single_factor, Pseudoaxis};
use super::AxisError;

/// A homomorphism to the integers, given by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZCharacter {
    pub gens: GenSet,
    pub values: Vec<i64>,
}

impl ZCharacter {
    pub fn new(gens: GenSet, values: Vec<i64>) -> Result<Self, AxisError> {
        if values.len() != gens.rank() {
            return Err(AxisError::Parse(format!("{} values for {} generators", values.len(), gens.rank())));
        }
        Ok(ZCharacter { gens, values })
    }

    pub fn eval(&self, w: &GroupWord) -> i64 {
        w.exponent_sums(self.gens.rank()).iter().zip(&self.values).map(|(e, v)| e * v).sum()
    }

    pub fn value_of(&self, label: &str) -> Option<i64> {
        let l = self.gens.find(label)?;
        (l % 2 == 0).then(|| self.values[l as usize / 2])
    }
}

/// An element (r, pi) of Z^l x| Sym(l), acting on l labelled copies of Z by
/// (i, n) -> (pi(i), n + r[pi(i)]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SymElem {
    pub r: Vec<i64>,
    pub pi: Vec<usize>,
}

impl SymElem {
    pub fn identity(l: usize) -> Self {
        SymElem { r: vec![0; l], pi: (0..l).collect() }
    }

    /// The translation e_i by one on copy i.
    pub fn unit(l: usize, i: usize) -> Self {
        let mut e = SymElem::identity(l);
        e.r[i] = 1;
        e
    }

    pub fn perm(pi: Vec<usize>) -> Self {
        SymElem { r: vec![0; pi.len()], pi }
    }

    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    pub fn apply(&self, (i, n): (usize, i64)) -> (usize, i64) {
        let j = self.pi[i];
        (j, n + self.r[j])
    }

    /// self after `first`: (r, pi)(r', pi') = (r + pi.r', pi pi'), where
    /// (pi.r')[pi(i)] = r'[i].
    pub fn compose(&self, first: &SymElem) -> SymElem {
        let l = self.len();
        let mut r = self.r.clone();
        for i in 0..l {
            r[self.pi[i]] += first.r[i];
        }
        let pi = (0..l).map(|i| self.pi[first.pi[i]]).collect();
        SymElem { r, pi }
    }

    pub fn inverse(&self) -> SymElem {
        let l = self.len();
        let mut pi = vec![0; l];
        let mut r = vec![0; l];
        for i in 0..l {
            pi[self.pi[i]] = i;
            r[i] = -self.r[self.pi[i]];
        }
        SymElem { r, pi }
    }

    pub fn pow(&self, k: i64) -> SymElem {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(SymElem::identity(self.len()), |acc, _| base.compose(&acc))
    }

    pub fn is_identity(&self) -> bool {
        *self == SymElem::identity(self.len())
    }

    pub fn perm_order(&self) -> usize {
        let mut p = self.pi.clone();
        let id: Vec<usize> = (0..self.len()).collect();
        let mut k = 1;
        while p != id {
            p = p.iter().map(|&i| self.pi[i]).collect();
            k += 1;
        }
        k
    }

    /// The coordinate-sum homomorphism to Z.
    pub fn sum(&self) -> i64 {
        self.r.iter().sum()
    }
}

/// Image of a word given images of the generators.
pub fn eval_sym(images: &[SymElem], l: usize, w: &GroupWord) -> SymElem {
    let inverses: Vec<SymElem> = images.iter().map(SymElem::inverse).collect();
    let mut acc = SymElem::identity(l);
    for &letter in w.letters().iter().rev() {
        let i = letter as usize / 2;
        let x = if letter % 2 == 0 { &images[i] } else { &inverses[i] };
        acc = x.compose(&acc);
    }
    acc
}

/// The character phi attached to a central loxodromic element, together
/// with the bookkeeping that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct CentralCharacter {
    pub phi: ZCharacter,
    /// Number of copies of Z in the orbit of v0.
    pub l: usize,
    pub model: Vec<SymElem>,
    /// Representatives v_0, ..., v_(l-1) of the copies.
    pub copy_reps: Vec<VertexKey>,
    pub pseudoaxis: Pseudoaxis,
    pub central: String,
    pub centrality_probes: usize,
}

/// Options for the orbit bookkeeping.
#[derive(Clone, Debug)]
pub struct CharacterOptions {
    pub search_radius: u32,
    /// Orbit labelling window |m| <= horizon.
    pub horizon: usize,
    pub centrality_radius: u32,
    pub max_copies: usize,
}

impl Default for CharacterOptions {
    fn default() -> Self {
        CharacterOptions { search_radius: 5, horizon: 24, centrality_radius: 3, max_copies: 64 }
    }
}

struct Window {
    index: HashMap<VertexKey, i64>,
}

impl Window {
    fn new(v: &VertexKey, g: &SharedMap, ginv: &SharedMap, horizon: usize) -> Result<Self, AxisError> {
        let mut index = HashMap::new();
        index.insert(v.clone(), 0);
        let (mut up, mut down) = (v.clone(), v.clone());
        for m in 1..=horizon as i64 {
            up = g.apply(&up)?;
            down = ginv.apply(&down)?;
            index.entry(up.clone()).or_insert(m);
            index.entry(down.clone()).or_insert(-m);
        }
        Ok(Window { index })
    }
}

/// Checks x g = g x on the ball of the given radius about `center` for
/// every generator, returning the number of probe vertices.
pub fn check_centrality(action: &MarkedAction, g: &GroupWord, center: &VertexKey, radius: u32) -> Result<usize, AxisError> {
    let (space, gmap) = single_factor(action, g)?;
    let ball = grow_ball(space, center, radius)?;
    for i in 0..action.gens.rank() {
        let x = GroupWord::letter(action.gens.generator(i));
        let (_, xmap) = single_factor(action, &x)?;
        for v in ball.members() {
            if xmap.apply(&gmap.apply(v)?)? != gmap.apply(&xmap.apply(v)?)? {
                return Err(AxisError::NotCentral { generator: action.gens.label(action.gens.generator(i)).to_string(), at: space.describe(v) });
            }
        }
    }
    Ok(ball.len())
}

/// Labels the orbit of v0 under the generated group as l copies of Z via
/// g^m(v_j) -> (j, m), records each generator as an element of
/// Z^l x| Sym(l), and sums coordinates to get phi. The action must be on a
/// single graph.
pub fn phi_from_central(action: &MarkedAction, g: &GroupWord, opts: &CharacterOptions) -> Result<CentralCharacter, AxisError> {
    let pa = pseudoaxis(action, g, opts.search_radius, opts.horizon)?;
    let (space, gmap) = single_factor(action, g)?;
    let ginv = gmap.inverse();
    let v0 = pa.v0().clone();
    let probes = check_centrality(action, g, &v0, opts.centrality_radius)?;

    let rank = action.gens.rank();
    let gen_maps: Vec<SharedMap> =
        (0..rank).map(|i| single_factor(action, &GroupWord::letter(action.gens.generator(i))).map(|p| p.1)).collect::<Result<_, _>>()?;

    let mut reps = vec![v0.clone()];
    let mut windows = vec![Window::new(&v0, &gmap, &ginv, opts.horizon)?];
    // steps[x][j] = (target copy, translation)
    let mut steps: Vec<Vec<(usize, i64)>> = vec![Vec::new(); rank];
    let mut j = 0;
    while j < reps.len() {
        for x in 0..rank {
            let p = gen_maps[x].apply(&reps[j])?;
            let hit = windows.iter().enumerate().find_map(|(k, w)| w.index.get(&p).map(|&m| (k, m)));
            let step = match hit {
                Some(s) => s,
                None => {
                    if reps.len() >= opts.max_copies {
                        return Err(AxisError::OrbitEscapesRegion(format!("more than {} copies of Z", opts.max_copies)));
                    }
                    let d0 = space.distance(&v0, &p, DEFAULT_DISTANCE_CAP)?;
                    if d0 > opts.search_radius as u64 {
                        return Err(AxisError::OrbitEscapesRegion(format!(
                            "{} is at distance {d0} from v0, outside the labelled window",
                            space.describe(&p)
                        )));
                    }
                    let disp = space.distance(&p, &gmap.apply(&p)?, DEFAULT_DISTANCE_CAP)?;
                    if disp != pa.min_disp {
                        return Err(AxisError::Invariant(format!("orbit point {} is off the pseudoaxis", space.describe(&p))));
                    }
                    windows.push(Window::new(&p, &gmap, &ginv, opts.horizon)?);
                    reps.push(p);
                    (reps.len() - 1, 0)
                }
            };
            steps[x].push(step);
        }
        j += 1;
    }

    let l = reps.len();
    let mut model = Vec::with_capacity(rank);
    for (x, row) in steps.iter().enumerate() {
        let mut e = SymElem::identity(l);
        for (i, &(k, m)) in row.iter().enumerate() {
            e.pi[i] = k;
            e.r[k] = m;
        }
        let mut seen = e.pi.clone();
        seen.sort_unstable();
        if seen.iter().enumerate().any(|(i, &k)| i != k) {
            return Err(AxisError::Invariant(format!("generator {} does not permute the copies", action.gens.label(action.gens.generator(x)))));
        }
        let power = e.pow(e.perm_order() as i64);
        if power.r.iter().any(|&r| r != power.r[0]) {
            return Err(AxisError::UnequalTranslations { generator: action.gens.label(action.gens.generator(x)).to_string(), r: power.r });
        }
        model.push(e);
    }
    let gimage = eval_sym(&model, l, g);
    if gimage != (SymElem { r: vec![1; l], pi: (0..l).collect() }) {
        return Err(AxisError::Invariant(format!("the central element acts as {gimage:?} instead of the unit shift")));
    }
    let phi = ZCharacter::new(action.gens.clone(), model.iter().map(SymElem::sum).collect())?;
    Ok(CentralCharacter { phi, l, model, copy_reps: reps, pseudoaxis: pa, central: action.display(g), centrality_probes: probes })
}

/// One sampled word for the kernel law: phi(w) = 0 exactly when the orbit
/// of v0 under w stays bounded.
#[derive(Clone, Debug, Serialize)]
pub struct KernelRow {
    pub word: String,
    pub phi: i64,
    /// Some n <= horizon with w^n v0 = v0.
    pub cycle: Option<usize>,
    pub bounded: bool,
    pub holds: bool,
}

/// Kernel law on sampled words. An orbit counts as bounded when it cycles
/// within the horizon, or when its displacement over the second half of the
/// horizon never exceeds the maximum over the first half.
pub fn kernel_law(action: &MarkedAction, ch: &CentralCharacter, words: &[GroupWord], horizon: usize) -> Result<Vec<KernelRow>, AxisError> {
    let v0 = ch.copy_reps[0].clone();
    let space = &action.space.factors[0];
    let mut rows = Vec::with_capacity(words.len());
    for w in words {
        let (_, map) = single_factor(action, w)?;
        let mut x = v0.clone();
        let mut disp = Vec::with_capacity(horizon);
        let mut cycle = None;
        for n in 1..=horizon {
            x = map.apply(&x)?;
            if x == v0 && cycle.is_none() {
                cycle = Some(n);
            }
            disp.push(space.distance(&v0, &x, DEFAULT_DISTANCE_CAP)?);
        }
        let half = horizon / 2;
        let early = disp[..half].iter().copied().max().unwrap_or(0);
        let late = disp[half..].iter().copied().max().unwrap_or(0);
        let bounded = cycle.is_some() || late <= early;
        let phi = ch.phi.eval(w);
        rows.push(KernelRow { word: action.display(w), phi, cycle, bounded, holds: (phi == 0) == bounded });
    }
    Ok(rows)
}
