use std::sync::Arc;

use crate::action::{
    graphified_zsqrt2, ActionError, GenAction, GenSet, IdentityMap, LetterMultiply, LetterPermutation, LineReflection, LineShift, MarkedAction,
    MatrixVertexMap, SharedMap, ZSqrt2Translation,
};
use crate::ff::{bt_tree, BTVertex, Laurent, Mat2, Uniformizer};
use crate::induction::{induce_action, InductionData};
use crate::space::{line, tree_regular, Point, ProductSpace};

use super::GalleryError;

fn id() -> SharedMap {
    Arc::new(IdentityMap)
}

fn shift(k: i64) -> SharedMap {
    Arc::new(LineShift(k))
}

fn matrix(m: Mat2, u: Uniformizer) -> SharedMap {
    Arc::new(MatrixVertexMap::new(m, u))
}

fn fw(maps: Vec<SharedMap>) -> GenAction {
    GenAction::factorwise(maps)
}

/// Z acting on the line by the unit shift.
pub fn line_action() -> MarkedAction {
    MarkedAction::new("line", ProductSpace::single(line()), GenSet::simple(&["x"]).unwrap(), vec![fw(vec![shift(1)])]).unwrap()
}

/// The infinite dihedral group on the line: x the unit shift and r the
/// reflection n -> 1 - n, which inverts the edge {0, 1}.
pub fn dihedral_line() -> MarkedAction {
    let gens = GenSet::simple(&["x", "r"]).unwrap();
    MarkedAction::new("dihedral_line", ProductSpace::single(line()), gens, vec![fw(vec![shift(1)]), fw(vec![Arc::new(LineReflection(1))])]).unwrap()
}

/// The free product of d copies of C2 on its Cayley tree, each generator
/// s_i inverting the edge from the root to i.
pub fn regular_tree_action(d: u8) -> Result<MarkedAction, GalleryError> {
    let space = tree_regular(d).map_err(GalleryError::BadParameter)?;
    let labels: Vec<String> = (0..d).map(|i| format!("s{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let gens = GenSet::simple(&refs)?;
    let acts = (0..d).map(|i| fw(vec![Arc::new(LetterMultiply(i))])).collect();
    Ok(MarkedAction::new(format!("tree_regular(d={d})"), ProductSpace::single(space), gens, acts)?)
}

fn unipotent_and_diagonal(q: u32) -> Result<(Mat2, Mat2), GalleryError> {
    Ok((Mat2::parse([["1", "1"], ["0", "1"]], q)?, Mat2::parse([["t", "0"], ["0", "1"]], q)?))
}

/// a = [[1,1],[0,1]] and s = [[t,0],[0,1]] on one Bruhat–Tits tree.
pub fn bt_tree_action(q: u32, u: Uniformizer) -> Result<MarkedAction, GalleryError> {
    let (a, s) = unipotent_and_diagonal(q)?;
    let space = bt_tree(q, u)?;
    let gens = GenSet::simple(&["a", "s"])?;
    Ok(MarkedAction::new(format!("bt_tree(q={q},v={})", u.label()), ProductSpace::single(space), gens, vec![fw(vec![matrix(a, u)]), fw(vec![matrix(s, u)])])?)
}

/// The lamplighter C_p wr Z generated by a = [[1,1],[0,1]] and
/// s = [[t,0],[0,1]] in PGL2(F_p(t)), on the product of the trees at t and
/// at infinity.
pub fn lamplighter(p: u32) -> Result<MarkedAction, GalleryError> {
    let (a, s) = unipotent_and_diagonal(p)?;
    let space = ProductSpace::new(vec![bt_tree(p, Uniformizer::T)?, bt_tree(p, Uniformizer::Inf)?]);
    let gens = GenSet::simple(&["a", "s"])?;
    let acts = vec![
        fw(vec![matrix(a.clone(), Uniformizer::T), matrix(a, Uniformizer::Inf)]),
        fw(vec![matrix(s.clone(), Uniformizer::T), matrix(s, Uniformizer::Inf)]),
    ];
    Ok(MarkedAction::new(format!("lamplighter(p={p})"), space, gens, acts)?)
}

/// Z^2 acting on graphified Z + Z sqrt2 by x -> x + 1 and x -> x + sqrt2.
pub fn irrational_z2(m: i64) -> Result<MarkedAction, GalleryError> {
    if m < 2 {
        return Err(GalleryError::BadParameter(format!("truncation M must be at least 2, got {m}")));
    }
    let gens = GenSet::with_inverses(&[("+1".into(), "-1".into()), ("+r2".into(), "-r2".into())])?;
    let acts = vec![fw(vec![Arc::new(ZSqrt2Translation { a: 1, b: 0 })]), fw(vec![Arc::new(ZSqrt2Translation { a: 0, b: 1 })])];
    Ok(MarkedAction::new(format!("irrational_z2(M={m})"), ProductSpace::single(graphified_zsqrt2(m)), gens, acts)?)
}

fn lines(n: usize) -> ProductSpace {
    ProductSpace::new((0..n).map(|_| line()).collect())
}

/// Z^2 on line x line by unit shifts in each coordinate.
pub fn z2_on_lines() -> MarkedAction {
    let gens = GenSet::simple(&["x", "y"]).unwrap();
    MarkedAction::new("z2_on_lines", lines(2), gens, vec![fw(vec![shift(1), id()]), fw(vec![id(), shift(1)])]).unwrap()
}

/// Z on line x line by the diagonal shift.
pub fn z_diag_on_lines() -> MarkedAction {
    MarkedAction::new("z_diag_on_lines", lines(2), GenSet::simple(&["d"]).unwrap(), vec![fw(vec![shift(1), shift(1)])]).unwrap()
}

/// Z^3 on line x line: x and y the coordinate shifts and z the diagonal.
pub fn z3_on_lines() -> MarkedAction {
    let gens = GenSet::simple(&["x", "y", "z"]).unwrap();
    let acts = vec![fw(vec![shift(1), id()]), fw(vec![id(), shift(1)]), fw(vec![shift(1), shift(1)])];
    MarkedAction::new("z3_on_lines", lines(2), gens, acts).unwrap()
}

/// Z x C2 on line x tree_regular(3): g shifts the line, c swaps two
/// branches at the root of the tree and fixes the root.
pub fn z_times_c2() -> MarkedAction {
    let space = ProductSpace::new(vec![line(), tree_regular(3).unwrap()]);
    let gens = GenSet::simple(&["g", "c"]).unwrap();
    let acts = vec![fw(vec![shift(1), id()]), fw(vec![id(), Arc::new(LetterPermutation(vec![1, 0, 2]))])];
    MarkedAction::new("z_times_c2", space, gens, acts).unwrap()
}

/// Z = <x> induced from 2Z = <y> acting on the line by shift 2.
pub fn induced_z_over_2z() -> MarkedAction {
    let h = MarkedAction::new("2Z on line", ProductSpace::single(line()), GenSet::simple(&["y"]).unwrap(), vec![fw(vec![shift(2)])]).unwrap();
    let data = InductionData { reps: vec!["e".into(), "x".into()], table: vec![vec![(1, "e".into()), (0, "y".into())]] };
    let mut g = induce_action(&h, &GenSet::simple(&["x"]).unwrap(), &data).expect("fixed data");
    g.name = "induced_z_over_2z".into();
    g
}

/// The infinite dihedral group <r, f | f^2, f r f^-1 = r^-1> induced from
/// <r> acting on the line by the unit shift.
pub fn induced_dihedral() -> MarkedAction {
    let h = MarkedAction::new("Z on line", ProductSpace::single(line()), GenSet::simple(&["r"]).unwrap(), vec![fw(vec![shift(1)])]).unwrap();
    let data = InductionData {
        reps: vec!["e".into(), "f".into()],
        table: vec![vec![(0, "r".into()), (1, "r^-1".into())], vec![(1, "e".into()), (0, "e".into())]],
    };
    let mut g = induce_action(&h, &GenSet::simple(&["r", "f"]).unwrap(), &data).expect("fixed data");
    g.name = "induced_dihedral".into();
    g
}

/// Commuting a1 = (shift, diag(1 + 1/t, 1)) and a2 = (id, diag(t, 1)) on
/// line x bt_tree(2, inf). On the tree factor a1 fixes the standard vertex
/// and moves the base [2; 1] around a short cycle.
pub fn wobble() -> Result<MarkedAction, GalleryError> {
    let q = 2;
    let w = Mat2::parse([["(t+1)/t", "0"], ["0", "1"]], q)?;
    let s = Mat2::parse([["t", "0"], ["0", "1"]], q)?;
    let space = ProductSpace::new(vec![line(), bt_tree(q, Uniformizer::Inf)?]);
    let gens = GenSet::simple(&["a1", "a2"])?;
    let acts = vec![fw(vec![shift(1), matrix(w, Uniformizer::Inf)]), fw(vec![id(), matrix(s, Uniformizer::Inf)])];
    Ok(MarkedAction::new("wobble", space, gens, acts)?)
}

/// Base point (0, [2; 1]) for the wobble pair.
pub fn wobble_base() -> Point {
    let v = BTVertex::new(2, Laurent::monomial(2, 0, 1));
    vec![crate::space::line_vertex(0), v.key(Uniformizer::Inf)]
}

impl From<ActionError> for GalleryError {
    fn from(e: ActionError) -> Self {
        GalleryError::Action(e)
    }
}
