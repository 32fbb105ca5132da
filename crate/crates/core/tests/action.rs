use std::collections::HashSet;

use loxodrome::action::{
    classify, displacement_seq, enumerate_elements, proper_census, qie_probe, reduced_words, root_sum_ge, tree_tau, ActionError, Certainty,
    ClassifyOptions, GenAction, GenSet, GroupWord, Kind, Letter, LineShift, MarkedAction, RootRatio, TableMap,
};
use loxodrome::ff::Uniformizer;
use loxodrome::gallery::{bt_tree_action, dihedral_line, line_action, regular_tree_action, z2_on_lines, z3_on_lines, z_diag_on_lines, z_times_c2};
use loxodrome::space::{line, line_vertex, ProductSpace, VertexKey};
use proptest::prelude::*;

fn opts() -> ClassifyOptions {
    ClassifyOptions::default()
}

fn sphere_sizes(a: &MarkedAction, n: usize) -> Vec<usize> {
    enumerate_elements(a, &a.basepoint(), n).unwrap().iter().map(Vec::len).collect()
}

/// Sphere sizes of the infinite dihedral group for {x, r}, computed on
/// affine maps n -> s n + k of the integers.
fn dihedral_spheres(n: usize) -> Vec<usize> {
    let gens = [(1i64, 1i64), (1, -1), (-1, 1)];
    let mut seen = HashSet::from([(1i64, 0i64)]);
    let mut sphere = vec![(1i64, 0i64)];
    let mut out = vec![1];
    for _ in 0..n {
        let mut next = Vec::new();
        for &(s, k) in &sphere {
            for &(gs, gk) in &gens {
                let e = (gs * s, gs * k + gk);
                if seen.insert(e) {
                    next.push(e);
                }
            }
        }
        out.push(next.len());
        sphere = next;
    }
    out
}

#[test]
fn reduced_word_counts_match_free_group() {
    for rank in 1..=3usize {
        let labels: Vec<String> = (0..rank).map(|i| format!("g{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let gens = GenSet::simple(&refs).unwrap();
        for len in 0..=4usize {
            let k = 2 * rank as u64;
            let expected: u64 = 1 + (1..=len as u32).map(|i| k * (k - 1).pow(i - 1)).sum::<u64>();
            assert_eq!(reduced_words(&gens, len).len() as u64, expected, "rank {rank}, length {len}");
        }
    }
}

#[test]
fn word_parsing() {
    let gens = GenSet::simple(&["x", "y"]).unwrap();
    let w = gens.parse("x^3 y^-2 x").unwrap();
    assert_eq!(w.len(), 6);
    assert_eq!(w.exponent_sums(2), vec![4, -2]);
    assert_eq!(gens.parse(&gens.display(&w)).unwrap(), w);
    assert!(w.concat(&w.inverse()).reduced().is_empty());
    assert!(matches!(gens.parse("z"), Err(ActionError::Parse(_))));
    let named = GenSet::with_inverses(&[("+1".into(), "-1".into())]).unwrap();
    assert_eq!(named.parse("+1 +1 -1").unwrap().reduced().len(), 1);
}

#[test]
fn growth_matches_independent_counts() {
    assert_eq!(sphere_sizes(&z2_on_lines(), 5), vec![1, 4, 8, 12, 16, 20]);
    assert_eq!(sphere_sizes(&z3_on_lines(), 5), vec![1, 6, 12, 18, 24, 30]);
    assert_eq!(sphere_sizes(&regular_tree_action(3).unwrap(), 5), vec![1, 3, 6, 12, 24, 48]);
    assert_eq!(sphere_sizes(&dihedral_line(), 6), dihedral_spheres(6));
}

#[test]
fn classification_of_basic_elements() {
    let l = line_action();
    let x = l.parse("x").unwrap();
    let c = classify(&l, &x, &l.basepoint(), &opts()).unwrap();
    assert_eq!(c.certainty, Certainty::Certified);
    assert_eq!(c.tau(), Some(RootRatio::integer(1)));

    let d = dihedral_line();
    let r = d.parse("r").unwrap();
    let c = classify(&d, &r, &d.basepoint(), &opts()).unwrap();
    assert_eq!(c.kind, Kind::Elliptic { period: Some(2) });
    let xr = d.parse("x r").unwrap();
    assert!(classify(&d, &xr, &d.basepoint(), &opts()).unwrap().kind.is_elliptic());

    let zd = z_diag_on_lines();
    let c = classify(&zd, &zd.parse("d^3").unwrap(), &zd.basepoint(), &opts()).unwrap();
    assert_eq!(c.tau(), Some(RootRatio::new(18, 1)));
    assert!((c.tau().unwrap().value() - 3.0 * 2f64.sqrt()).abs() < 1e-12);

    let zc = z_times_c2();
    let c = classify(&zc, &zc.parse("c").unwrap(), &zc.basepoint(), &opts()).unwrap();
    assert_eq!(c.kind, Kind::Elliptic { period: Some(2) });
    let c = classify(&zc, &zc.parse("g c").unwrap(), &zc.basepoint(), &opts()).unwrap();
    assert_eq!(c.tau(), Some(RootRatio::integer(1)));
}

#[test]
fn tree_translation_lengths() {
    for q in [2, 3] {
        for u in [Uniformizer::T, Uniformizer::Inf] {
            let a = bt_tree_action(q, u).unwrap();
            let base = a.basepoint();
            assert_eq!(tree_tau(&a, &a.parse("s").unwrap(), 0, &base[0]).unwrap(), 1);
            assert_eq!(tree_tau(&a, &a.parse("s^3 a").unwrap(), 0, &base[0]).unwrap(), 3);
            assert_eq!(tree_tau(&a, &a.parse("a").unwrap(), 0, &base[0]).unwrap(), 0);
        }
    }
}

#[test]
fn census_counts_lattice_points() {
    let z2 = z2_on_lines();
    let base = z2.basepoint();
    let lattice = |r: i64| (-r..=r).flat_map(|a| (-r..=r).map(move |b| (a, b))).filter(|(a, b)| a * a + b * b <= r * r).count();
    for r in 0..=3u32 {
        assert_eq!(proper_census(&z2, &base, 2 * r as usize, r).unwrap().count, lattice(r as i64));
    }
    assert_eq!(proper_census(&z2, &base, 1, 2).unwrap().count, 5);
}

#[test]
fn qie_slope_on_z2() {
    let z2 = z2_on_lines();
    let probe = qie_probe(&z2, &z2.basepoint(), 6).unwrap();
    for row in &probe.rows {
        let n = row.length as u64;
        assert_eq!(row.min_displacement_sq, (n * n).div_ceil(2));
        assert_eq!(row.max_displacement_sq, n * n);
    }
    assert_eq!(probe.lower_slope, RootRatio::new(2, 2));
}

#[test]
fn broken_maps_fail_the_automorphism_check() {
    let pairs = [(-1, -1), (0, 0), (1, 5), (5, 1)].map(|(a, b)| (line_vertex(a), line_vertex(b)));
    let table = TableMap::new(pairs.to_vec()).unwrap();
    let space = ProductSpace::single(line());
    let a = MarkedAction::new("broken", space, GenSet::simple(&["b"]).unwrap(), vec![GenAction::factorwise(vec![std::sync::Arc::new(table)])]).unwrap();
    assert!(matches!(a.check_automorphisms(&a.basepoint(), 1), Err(ActionError::NotAutomorphism { .. })));
    assert!(matches!(a.apply(&a.parse("b").unwrap(), &[line_vertex(7)]), Err(ActionError::OutOfExploredRegion(_))));
    assert!(line_action().check_automorphisms(&[line_vertex(0)], 3).is_ok());
}

#[test]
fn factor_actions() {
    let zc = z_times_c2();
    assert!(zc.factor_preserving());
    let f0 = zc.factor_action(0).unwrap();
    assert_eq!(f0.apply(&f0.parse("g^3").unwrap(), &[line_vertex(0)]).unwrap(), vec![line_vertex(3)]);
    assert!(zc.factor_action(2).is_err());
    let shift = MarkedAction::new("s", ProductSpace::single(line()), GenSet::simple(&["s"]).unwrap(), vec![GenAction::factorwise(vec![std::sync::Arc::new(LineShift(4))])]).unwrap();
    assert_eq!(shift.apply(&shift.parse("s^-2").unwrap(), &[VertexKey::from_int(1)]).unwrap(), vec![line_vertex(-7)]);
}

fn word(rank: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(0..(2 * rank) as Letter, 0..7).prop_map(GroupWord)
}

proptest! {
    #[test]
    fn root_sum_matches_floats(a in 0u64..1_000_000, b in 0u64..1_000_000, c in 0u64..1_000_000) {
        let gap = (b as f64).sqrt() + (c as f64).sqrt() - (a as f64).sqrt();
        if gap.abs() > 1e-6 {
            prop_assert_eq!(root_sum_ge(a, b, c), gap > 0.0);
        }
        prop_assert!(root_sum_ge(b * b, b * b, 0));
        prop_assert!(root_sum_ge((b + c) * (b + c), b * b, c * c));
    }

    #[test]
    fn root_ratio_normalises(n in 0u64..10_000, d in 1u64..200, k in 1u64..20) {
        let r = RootRatio::new(n, d);
        prop_assert!((r.value() - (n as f64).sqrt() / d as f64).abs() < 1e-9);
        prop_assert_eq!(RootRatio::new(n * k * k, d * k), r);
        prop_assert_eq!(r.scale(k).divide(k), r);
    }

    #[test]
    fn action_is_a_homomorphism(u in word(2), v in word(2), a in -5i64..5, b in -5i64..5) {
        let z2 = z2_on_lines();
        let p = vec![line_vertex(a), line_vertex(b)];
        prop_assert_eq!(z2.apply(&u.concat(&v), &p).unwrap(), z2.apply(&u, &z2.apply(&v, &p).unwrap()).unwrap());
        prop_assert_eq!(z2.apply(&u.inverse(), &z2.apply(&u, &p).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(z2.apply(&u.reduced(), &p).unwrap(), z2.apply(&u, &p).unwrap());
        let sums = u.exponent_sums(2);
        prop_assert_eq!(z2.apply(&u, &p).unwrap(), vec![line_vertex(a + sums[0]), line_vertex(b + sums[1])]);
    }

    #[test]
    fn displacement_is_subadditive_on_trees(w in word(2).prop_filter("nonempty", |w| !w.is_empty())) {
        let a = bt_tree_action(3, Uniformizer::T).unwrap();
        let seq = displacement_seq(&a, &w, &a.basepoint(), 12).unwrap();
        prop_assert!(seq.subadditivity_violation().is_none());
        let c = classify(&a, &w, &a.basepoint(), &opts()).unwrap();
        if let Some(t) = c.tau() {
            prop_assert!(t.value() * 12.0 <= seq.a(12) + 1e-9);
        }
    }
}
