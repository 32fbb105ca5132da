use loxodrome::action::{classify, Certainty, ClassifyOptions, GenAction, GenSet, GroupWord, Kind, Letter, LineShift, MarkedAction, RootRatio};
use loxodrome::gallery::{induced_dihedral, induced_z_over_2z};
use loxodrome::induction::{combine_types, factor_types, induce_action, l2_combine, FactorType, InductionData, InductionError};
use loxodrome::space::{line, line_vertex, ProductSpace};
use proptest::prelude::*;
use std::sync::Arc;

fn shift_action(label: &str, k: i64) -> MarkedAction {
    MarkedAction::new("shift", ProductSpace::single(line()), GenSet::simple(&[label]).unwrap(), vec![GenAction::factorwise(vec![Arc::new(LineShift(k))])]).unwrap()
}

fn z_over_3z() -> MarkedAction {
    let data = InductionData {
        reps: vec!["e".into(), "x".into(), "x^2".into()],
        table: vec![vec![(1, "e".into()), (2, "e".into()), (0, "y".into())]],
    };
    induce_action(&shift_action("y", 1), &GenSet::simple(&["x"]).unwrap(), &data).unwrap()
}

fn lox(t: RootRatio) -> FactorType {
    FactorType { kind: Kind::Loxodromic { tau_upper: t, tau_lower: Some(t) }, certainty: Certainty::Certified }
}

fn ell(p: u64) -> FactorType {
    FactorType { kind: Kind::Elliptic { period: Some(p) }, certainty: Certainty::Certified }
}

#[test]
fn cyclic_permutation_of_three_lines() {
    let g = z_over_3z();
    let x = g.parse("x").unwrap();
    let c = classify(&g, &x, &g.basepoint(), &ClassifyOptions::default()).unwrap();
    assert_eq!(c.perm_order, 3);
    let tau = c.tau().expect("exact");
    assert!((tau.value() - 3f64.sqrt() / 3.0).abs() < 1e-12);
    let (o, types) = factor_types(&g, &x, &g.basepoint(), &ClassifyOptions::default()).unwrap();
    assert_eq!(o, 3);
    assert!(types.iter().all(|t| t.kind.is_loxodromic()));
    assert_eq!(combine_types(&types).kind, Kind::Loxodromic { tau_upper: RootRatio::new(3, 1), tau_lower: Some(RootRatio::new(3, 1)) });
    let p = vec![line_vertex(0), line_vertex(10), line_vertex(20)];
    assert_eq!(g.apply(&x, &p).unwrap(), vec![line_vertex(21), line_vertex(0), line_vertex(10)]);
}

#[test]
fn induced_dihedral_types() {
    let g = induced_dihedral();
    let base = g.basepoint();
    let opts = ClassifyOptions::default();
    let f = classify(&g, &g.parse("f").unwrap(), &base, &opts).unwrap();
    assert_eq!(f.kind, Kind::Elliptic { period: Some(2) });
    let r = classify(&g, &g.parse("r").unwrap(), &base, &opts).unwrap();
    assert_eq!(r.tau(), Some(RootRatio::new(2, 1)));
    let fr = classify(&g, &g.parse("f r").unwrap(), &base, &opts).unwrap();
    assert!(fr.kind.is_elliptic());
}

#[test]
fn induced_subgroup_of_index_two() {
    let g = induced_z_over_2z();
    let x2 = g.parse("x^2").unwrap();
    let p = vec![line_vertex(3), line_vertex(-1)];
    assert_eq!(g.apply(&x2, &p).unwrap(), vec![line_vertex(5), line_vertex(1)]);
}

#[test]
fn bad_tables_are_rejected() {
    let h = shift_action("y", 1);
    let g = GenSet::simple(&["x"]).unwrap();
    let twice = InductionData { reps: vec!["e".into(), "x".into()], table: vec![vec![(1, "e".into()), (1, "y".into())]] };
    assert!(matches!(induce_action(&h, &g, &twice), Err(InductionError::InconsistentFactorMap(_))));
    let short = InductionData { reps: vec!["e".into(), "x".into()], table: vec![vec![(1, "e".into())]] };
    assert!(matches!(induce_action(&h, &g, &short), Err(InductionError::InconsistentFactorMap(_))));
    let unknown = InductionData { reps: vec!["e".into(), "x".into()], table: vec![vec![(1, "e".into()), (0, "z".into())]] };
    assert!(matches!(induce_action(&h, &g, &unknown), Err(InductionError::Action(_))));
    let rows = InductionData { reps: vec!["e".into()], table: vec![] };
    assert!(induce_action(&h, &g, &rows).is_err());
}

#[test]
fn combination_rules() {
    let c = combine_types(&[ell(2), ell(3)]);
    assert_eq!(c.kind, Kind::Elliptic { period: Some(6) });
    let c = combine_types(&[ell(2), lox(RootRatio::integer(1)), lox(RootRatio::integer(2))]);
    assert_eq!(c.kind, Kind::Loxodromic { tau_upper: RootRatio::new(5, 1), tau_lower: Some(RootRatio::new(5, 1)) });
    assert_eq!(c.certainty, Certainty::Certified);
    let und = FactorType { kind: Kind::Undetermined, certainty: Certainty::Heuristic };
    assert_eq!(combine_types(&[ell(1), und.clone()]).kind, Kind::Undetermined);
    let c = combine_types(&[und, lox(RootRatio::integer(1))]);
    assert_eq!(c.kind, Kind::Loxodromic { tau_upper: RootRatio::integer(1), tau_lower: Some(RootRatio::integer(1)) });
}

/// r -> n + 1 and f -> -n on the integers, as (sign, offset).
fn dihedral_image(w: &GroupWord) -> (i64, i64) {
    let mut e = (1i64, 0i64);
    for &l in w.letters().iter().rev() {
        let g = match l {
            0 => (1, 1),
            1 => (1, -1),
            _ => (-1, 0),
        };
        e = (g.0 * e.0, g.0 * e.1 + g.1);
    }
    e
}

proptest! {
    #[test]
    fn l2_combination_is_exact(parts in prop::collection::vec((0u64..50, 1u64..6), 0..4)) {
        let rs: Vec<RootRatio> = parts.iter().map(|&(n, d)| RootRatio::new(n, d)).collect();
        let expect = rs.iter().map(|r| r.value().powi(2)).sum::<f64>().sqrt();
        prop_assert!((l2_combine(&rs).value() - expect).abs() < 1e-9);
    }

    #[test]
    fn induced_dihedral_restricts_to_the_subgroup(letters in prop::collection::vec(0 as Letter..4, 0..10), a in -5i64..5, b in -5i64..5) {
        let g = induced_dihedral();
        let w = GroupWord(letters);
        let (s, k) = dihedral_image(&w);
        let img = g.apply(&w, &[line_vertex(a), line_vertex(b)]).unwrap();
        let perm = g.word_action(&w).perm;
        if s == 1 {
            prop_assert_eq!(perm, vec![0, 1]);
            prop_assert_eq!(img, vec![line_vertex(a + k), line_vertex(b - k)]);
        } else {
            prop_assert_eq!(perm, vec![1, 0]);
        }
    }
}
