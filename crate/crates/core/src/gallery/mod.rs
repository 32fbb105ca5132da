//! Named, parameterised example actions with their expected behaviour.
//!
//! Entries are addressed as `name` or `name:key=value,key=value`.

mod actions;
mod euclid;
mod presented;
mod semidirect;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::action::{ActionError, MarkedAction};
use crate::ff::{FfError, Uniformizer};
use crate::space::Point;

pub use actions::{
    bt_tree_action, dihedral_line, induced_dihedral, induced_z_over_2z, irrational_z2, lamplighter, line_action, regular_tree_action, wobble,
    wobble_base, z2_on_lines, z3_on_lines, z_diag_on_lines, z_times_c2,
};
pub use euclid::{EuclideanType, EuclideanWreath, WreathElem};
pub use presented::{display_powers, example_shear, example_swap, CyclicExtension};
pub use semidirect::{
    char_poly, eigen_report, irreducible_over_q, is_palindromic, lambda_closed_form, roots, z4_semidirect_probe, EigenReport, IntMatrix, Z4Row,
    MAX_N, PHI,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GalleryError {
    #[error("unknown gallery entry {0:?}")]
    Unknown(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Action(ActionError),
    #[error(transparent)]
    Field(#[from] FfError),
    #[error("integer overflow")]
    Overflow,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// How an expected value is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Basis {
    /// Stated with the construction in the source literature.
    Published,
    /// Immediate from the definitions.
    Elementary,
    /// Recomputed in the test suite by the named independent method.
    Oracle(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct Annotation {
    pub claim: String,
    pub basis: Basis,
}

fn note(claim: &str, basis: Basis) -> Annotation {
    Annotation { claim: claim.into(), basis }
}

fn oracle(s: &str) -> Basis {
    Basis::Oracle(s.into())
}

#[derive(Clone, Debug)]
pub enum Content {
    Action(MarkedAction),
    Semidirect { n_max: usize },
    Extension(CyclicExtension),
    Euclidean(EuclideanWreath),
}

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub summary: String,
    pub content: Content,
    pub annotations: Vec<Annotation>,
    /// Base point to use instead of the product basepoint.
    pub base: Option<Point>,
    /// Commuting elements with the factor each is loxodromic on.
    pub picks: Vec<(String, usize)>,
    /// A central loxodromic element, with the factor it is used on.
    pub central: Option<(String, usize)>,
    pub default_element: Option<String>,
}

impl GalleryEntry {
    fn new(name: &str, params: BTreeMap<String, String>, summary: &str, content: Content) -> Self {
        GalleryEntry {
            name: name.into(),
            params,
            summary: summary.into(),
            content,
            annotations: Vec::new(),
            base: None,
            picks: Vec::new(),
            central: None,
            default_element: None,
        }
    }

    fn note(mut self, a: Annotation) -> Self {
        self.annotations.push(a);
        self
    }

    pub fn action(&self) -> Option<&MarkedAction> {
        match &self.content {
            Content::Action(a) => Some(a),
            _ => None,
        }
    }

    pub fn base_point(&self) -> Option<Point> {
        self.base.clone().or_else(|| self.action().map(MarkedAction::basepoint))
    }

    /// Full address with parameters, e.g. `lamplighter:p=2`.
    pub fn address(&self) -> String {
        if self.params.is_empty() {
            self.name.clone()
        } else {
            let kv: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{}:{}", self.name, kv.join(","))
        }
    }
}

/// Names with a one-line description and the accepted parameters.
pub const ENTRIES: &[(&str, &str, &str)] = &[
    ("line", "Z acting on the simplicial line by the unit shift", ""),
    ("dihedral_line", "infinite dihedral group on the line; r inverts an edge", ""),
    ("tree_regular", "free product of d copies of C2 on its Cayley tree", "d (default 3)"),
    ("bt_tree", "<[[1,1],[0,1]], [[t,0],[0,1]]> on one Bruhat-Tits tree", "q (prime, default 2), v (t | inf, default t)"),
    ("lamplighter", "C_p wr Z in PGL2(F_p(t)) on the trees at t and at infinity", "p (prime, default 2)"),
    ("irrational_z2", "Z^2 by x+1 and x+sqrt2 on graphified Z+Z sqrt2", "M (step truncation, default 24)"),
    ("z2_on_lines", "Z^2 on line x line by coordinate shifts", ""),
    ("z_diag_on_lines", "Z on line x line by the diagonal shift", ""),
    ("z3_on_lines", "Z^3 on line x line: two coordinate shifts and the diagonal", ""),
    ("z_times_c2", "Z x C2 on line x tree_regular(3)", ""),
    ("induced_z_over_2z", "Z induced from 2Z acting on the line", ""),
    ("induced_dihedral", "infinite dihedral group induced from Z acting on the line", ""),
    ("wobble", "commuting pair on line x bt_tree(2, inf) with a periodic cross orbit", ""),
    ("z4_semidirect", "Z^4 x| Z with a -> b -> c -> d -> a^-1 b^2 c^-1 d^2", "n_max (default 40, at most 60)"),
    ("example_i", "index-2 extension with g k g^-1 = h k^-1, g^2 = 1", ""),
    ("example_ii", "extension with g k g^-1 = h k and g^2 in H", ""),
    ("wreath_euclidean", "Z wr Z on R^2 x R by a rotation and a translation", "theta (radians, default 1)"),
];

/// Splits `name:key=value,...` into the name and its parameters.
pub fn parse_address(spec: &str) -> Result<(String, BTreeMap<String, String>), GalleryError> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut params = BTreeMap::new();
    for kv in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| GalleryError::BadParameter(format!("expected key=value, got {kv:?}")))?;
        params.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok((name.trim().to_string(), params))
}

fn take<T: std::str::FromStr>(params: &mut BTreeMap<String, String>, key: &str, default: T, all: &mut BTreeMap<String, String>) -> Result<T, GalleryError> {
    match params.remove(key) {
        Some(v) => {
            let parsed = v.parse().map_err(|_| GalleryError::BadParameter(format!("{key}={v}")))?;
            all.insert(key.into(), v);
            Ok(parsed)
        }
        None => Ok(default),
    }
}

/// Builds a gallery entry from its address.
pub fn build(spec: &str) -> Result<GalleryEntry, GalleryError> {
    let (name, mut params) = parse_address(spec)?;
    let mut used = BTreeMap::new();
    let entry = build_named(&name, &mut params, &mut used)?;
    if let Some(k) = params.keys().next() {
        return Err(GalleryError::BadParameter(format!("{name} does not take parameter {k:?}")));
    }
    Ok(entry)
}

fn build_named(name: &str, p: &mut BTreeMap<String, String>, used: &mut BTreeMap<String, String>) -> Result<GalleryEntry, GalleryError> {
    let summary = ENTRIES.iter().find(|e| e.0 == name).map(|e| e.1).ok_or_else(|| GalleryError::Unknown(name.into()))?;
    let entry = match name {
        "line" => GalleryEntry::new(name, BTreeMap::new(), summary, Content::Action(line_action()))
            .note(note("x is loxodromic with tau = 1", Basis::Elementary))
            .note(note("census at R = 2 counts 5 elements for every W >= 2", Basis::Elementary)),
        "dihedral_line" => GalleryEntry::new(name, BTreeMap::new(), summary, Content::Action(dihedral_line()))
            .note(note("r is elliptic of period 2 and inverts the edge {0, 1}", Basis::Elementary)),
        "tree_regular" => {
            let d: u8 = take(p, "d", 3, used)?;
            GalleryEntry::new(name, used.clone(), summary, Content::Action(regular_tree_action(d)?))
                .note(note("valence d; four-point delta 0", Basis::Elementary))
                .note(note("s0 s1 is loxodromic with tau = 2", oracle("tree translation length")))
        }
        "bt_tree" => {
            let q: u32 = take(p, "q", 2, used)?;
            let v: String = take(p, "v", "t".to_string(), used)?;
            let u = Uniformizer::parse(&v).ok_or_else(|| GalleryError::BadParameter(format!("v={v}")))?;
            let mut e = GalleryEntry::new(name, used.clone(), summary, Content::Action(bt_tree_action(q, u)?))
                .note(note("regular of valence q + 1", Basis::Published))
                .note(note("s = diag(t, 1) is loxodromic with tau = 1", oracle("tree translation length and BFS")))
                .note(note("a = [[1,1],[0,1]] has order q and fixes the standard vertex", oracle("Iwasawa reduction")));
            e.default_element = Some("s".into());
            e
        }
        "lamplighter" => {
            let prime: u32 = take(p, "p", 2, used)?;
            let mut e = GalleryEntry::new(name, used.clone(), summary, Content::Action(lamplighter(prime)?))
                .note(note("generators [[1,1],[0,1]] and [[t,0],[0,1]]", Basis::Published))
                .note(note("a^p acts as the identity", Basis::Published))
                .note(note("s has tau = 1 on each tree", oracle("tree translation length")))
                .note(note("stabiliser of the base pair within word length 8 is contained in <a>", oracle("word enumeration")));
            e.default_element = Some("s".into());
            e
        }
        "irrational_z2" => {
            let m: i64 = take(p, "M", 24, used)?;
            let mut e = GalleryEntry::new(name, used.clone(), summary, Content::Action(irrational_z2(m)?))
                .note(note("generated by x -> x + 1 and x -> x + sqrt2", Basis::Published))
                .note(note("+1 moves 0 by 1", Basis::Elementary))
                .note(note("census at R = 1 grows with W", oracle("word enumeration with exact a + b sqrt2 comparison")));
            e.default_element = Some("+1".into());
            e
        }
        "z2_on_lines" => {
            let mut e = GalleryEntry::new(name, BTreeMap::new(), summary, Content::Action(z2_on_lines()))
                .note(note("phi(x) = 1, phi(y) = 0 for the central element x on factor 0", Basis::Elementary))
                .note(note("undistortion constants K = 1, epsilon = 0, m = 2", Basis::Elementary));
            e.picks = vec![("x".into(), 0), ("y".into(), 1)];
            e.central = Some(("x".into(), 0));
            e.default_element = Some("x".into());
            e
        }
        "z_diag_on_lines" => GalleryEntry::new(name, BTreeMap::new(), summary, Content::Action(z_diag_on_lines()))
            .note(note("d is loxodromic on both factors, tau = sqrt2", Basis::Elementary)),
        "z3_on_lines" => GalleryEntry::new(name, BTreeMap::new(), summary, Content::Action(z3_on_lines()))
            .note(note("no character map of rank 3 exists on two factors", oracle("exhaustive pick search"))),
        "z_times_c2" => {
            let mut e = GalleryEntry::new(name, BTreeMap::new(), summary, Content::Action(z_times_c2()))
                .note(note("coset cover of the centraliser of g has k = 2", oracle("orbit bookkeeping")));
            e.central = Some(("g".into(), 0));
            e
        }
        "induced_z_over_2z" => GalleryEntry::new(name, BTreeMap::new(), summary, Content::Action(induced_z_over_2z()))
            .note(note("x swaps the copies; x^2 is loxodromic on each", oracle("direct construction"))),
        "induced_dihedral" => GalleryEntry::new(name, BTreeMap::new(), summary, Content::Action(induced_dihedral()))
            .note(note("every infinite-order element is loxodromic on the product", oracle("case enumeration of short words"))),
        "wobble" => {
            let mut e = GalleryEntry::new(name, BTreeMap::new(), summary, Content::Action(wobble()?))
                .note(note("a1 has period 2 on the tree factor at the base, moving it by 2", oracle("BFS distances")))
                .note(note("undistortion constants K = 1, epsilon = 2, m = 2", oracle("periodic orbit maximum")));
            e.base = Some(wobble_base());
            e.picks = vec![("a1".into(), 0), ("a2".into(), 1)];
            e
        }
        "z4_semidirect" => {
            let n_max: usize = take(p, "n_max", 40, used)?;
            if n_max > MAX_N {
                return Err(GalleryError::BadParameter(format!("n_max {n_max} exceeds {MAX_N}")));
            }
            GalleryEntry::new(name, used.clone(), summary, Content::Semidirect { n_max })
                .note(note("two complex conjugate eigenvalues on the unit circle, one real inside, one real lambda > 1", Basis::Published))
                .note(note("t^n a t^-n has word length 2n + 1 while its Z^4 norm grows like lambda^n", Basis::Published))
                .note(note("characteristic polynomial x^4 - 2x^3 + x^2 - 2x + 1", oracle("Faddeev-LeVerrier")))
                .note(note("lambda = 1.8832", oracle("closed form through y = x + 1/x")))
        }
        "example_i" => {
            let mut e = GalleryEntry::new(name, BTreeMap::new(), summary, Content::Extension(example_swap()))
                .note(note("theta(h) = 1, theta(k) = 0 extends to phi(h) = 2, phi(k) = 1", Basis::Published));
            e.central = Some(("h".into(), 0));
            e
        }
        "example_ii" => {
            let mut e = GalleryEntry::new(name, BTreeMap::new(), summary, Content::Extension(example_shear()))
                .note(note("theta(h) = 1 is impossible: g^2 k g^-2 = h^2 k", oracle("word computation")));
            e.central = Some(("h".into(), 0));
            e
        }
        "wreath_euclidean" => {
            let theta: f64 = take(p, "theta", 1.0, used)?;
            GalleryEntry::new(name, used.clone(), summary, Content::Euclidean(EuclideanWreath::new(theta)))
                .note(note("rotation by theta with e^(i theta) transcendental and the unit translation", Basis::Published))
                .note(note("a is loxodromic on R^2 with tau = 1", Basis::Elementary))
        }
        _ => return Err(GalleryError::Unknown(name.into())),
    };
    Ok(entry)
}

/// Every entry at its default parameters.
pub fn all_entries() -> Vec<GalleryEntry> {
    ENTRIES.iter().map(|e| build(e.0).expect("defaults build")).collect()
}
