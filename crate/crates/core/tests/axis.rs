use loxodrome::action::{reduced_words, tree_tau, GroupWord};
use loxodrome::axis::{
    abelian_character_map, check_composition_law, coset_cover_check, eval_sym, extend_character, integer_rank, phi_from_central, pseudoaxis,
    search_picks, stability_probe, theta_violations, AxisError, CharacterOptions, SymElem, ZCharacter,
};
use loxodrome::ff::Uniformizer;
use loxodrome::gallery::{bt_tree_action, dihedral_line, lamplighter, line_action, regular_tree_action, z2_on_lines, z_times_c2, CyclicExtension};
use proptest::prelude::*;

/// The Klein bottle group: H = <a, c> = Z^2 with c = g^2 and g a g^-1 = a^-1.
fn klein() -> CyclicExtension {
    CyclicExtension::new("klein", &["a", "c"], &["a^-1", "c"], 2, "c", &[(0, 1)], "c").unwrap()
}

/// Z = <g> over 3Z = <c>.
fn cyclic3() -> CyclicExtension {
    CyclicExtension::new("z_over_3z", &["c"], &["c"], 3, "c", &[], "c").unwrap()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn extension_over_cyclic_index_three() {
    let ex = cyclic3();
    let theta = ZCharacter::new(ex.h_gens.clone(), vec![1]).unwrap();
    let x = extend_character(&ex, &theta, &ex.central).unwrap();
    assert_eq!(x.l, 3);
    assert_eq!((x.phi.value_of("g"), x.phi.value_of("c")), (Some(1), Some(3)));
    assert_eq!(x.phi_central, 3);
    let g = ex.g_gens.parse("g").unwrap();
    assert_eq!(eval_sym(&x.model, 3, &g.pow(3)), SymElem { r: vec![1, 1, 1], pi: vec![0, 1, 2] });
}

#[test]
fn zero_theta_on_the_central_element_is_refused() {
    let ex = klein();
    let theta = ZCharacter::new(ex.h_gens.clone(), vec![1, 0]).unwrap();
    assert!(matches!(extend_character(&ex, &theta, &ex.central), Err(AxisError::RejectedCharacter { value: 0, .. })));
    let wrong = ZCharacter::new(cyclic3().h_gens, vec![1]).unwrap();
    assert!(extend_character(&ex, &wrong, &ex.central).is_err());
}

#[test]
fn central_character_on_the_line() {
    let l = line_action();
    let ch = phi_from_central(&l, &l.parse("x").unwrap(), &CharacterOptions::default()).unwrap();
    assert_eq!((ch.l, ch.phi.values.clone()), (1, vec![1]));
    let ch = phi_from_central(&l, &l.parse("x^2").unwrap(), &CharacterOptions::default()).unwrap();
    assert_eq!(ch.l, 2);
    assert_eq!(ch.phi.eval(&l.parse("x^2").unwrap()), 2);
    let d = dihedral_line();
    assert!(matches!(phi_from_central(&d, &d.parse("x").unwrap(), &CharacterOptions::default()), Err(AxisError::NotCentral { .. })));
    let zc = z_times_c2();
    assert!(matches!(phi_from_central(&zc, &zc.parse("g").unwrap(), &CharacterOptions::default()), Err(AxisError::NotSingleFactor(2))));
}

#[test]
fn pseudoaxis_of_tree_translations() {
    let tree = regular_tree_action(3).unwrap();
    let base = tree.basepoint();
    for w in ["s0 s1", "s0 s1 s2", "s0 s1 s0 s2", "s1 s2 s1 s0 s2"] {
        let g = tree.parse(w).unwrap();
        let tau = tree_tau(&tree, &g, 0, &base[0]).unwrap();
        let pa = pseudoaxis(&tree, &g, 6, 24).unwrap();
        assert_eq!(pa.min_disp, tau, "{w}");
        assert_eq!(pa.orbit_count as u64, tau, "{w}");
    }
    let bt = bt_tree_action(3, Uniformizer::Inf).unwrap();
    let a = bt.parse("a").unwrap();
    assert!(matches!(pseudoaxis(&bt, &a, 3, 8), Err(AxisError::NotLoxodromic(_))));
}

#[test]
fn quasigeodesic_orbits_fellow_travel() {
    let bt = bt_tree_action(2, Uniformizer::T).unwrap();
    let s = bt.parse("s").unwrap();
    let x = bt.basepoint()[0].clone();
    let y = bt.apply(&bt.parse("a").unwrap(), &[bt.space.factors[0].neighbors(&x).unwrap()[1].clone()]).unwrap()[0].clone();
    let p = stability_probe(&bt, &s, &x, &y, 12).unwrap();
    assert_eq!((p.quasi_k, p.quasi_c), (1, 3));
    assert!(p.hausdorff_bound <= 2);
}

#[test]
fn picks_and_character_maps() {
    let z2 = z2_on_lines();
    let found = search_picks(&z2, 2, 2, &CharacterOptions::default()).unwrap();
    let map = found.map.unwrap();
    assert_eq!((map.rank, map.pick_rank), (2, 2));
    assert_eq!(map.matrix, vec![vec![1, 0], vec![0, 1]]);
    let xy = z2.parse("x y").unwrap();
    assert!(matches!(abelian_character_map(&z2, &[(xy, 0)], &CharacterOptions::default()), Err(AxisError::BadPick { .. })));
    let lamp = lamplighter(2).unwrap();
    assert!(matches!(search_picks(&lamp, 1, 2, &CharacterOptions::default()), Err(AxisError::NotCommuting(..))));
}

#[test]
fn cosets_of_the_central_shift() {
    let zc = z_times_c2();
    let cover = coset_cover_check(&zc, &zc.parse("g").unwrap(), 4, 8).unwrap();
    assert_eq!(cover.k, 2);
    assert!(cover.covered);
    let l = line_action();
    let cover = coset_cover_check(&l, &l.parse("x^3").unwrap(), 6, 8).unwrap();
    assert_eq!(cover.k, 3);
}

fn sym(l: usize) -> impl Strategy<Value = SymElem> {
    (prop::collection::vec(-4i64..=4, l), Just((0..l).collect::<Vec<usize>>()).prop_shuffle()).prop_map(|(r, pi)| SymElem { r, pi })
}

fn sym_triple() -> impl Strategy<Value = (SymElem, SymElem, SymElem)> {
    (1usize..5).prop_flat_map(|l| (sym(l), sym(l), sym(l)))
}

proptest! {
    #[test]
    fn semidirect_law_matches_pointwise_composition((a, b, c) in sym_triple(), n in -6i64..6) {
        let l = a.len();
        for i in 0..l {
            prop_assert_eq!(a.compose(&b).apply((i, n)), a.apply(b.apply((i, n))));
            prop_assert_eq!(a.inverse().apply(a.apply((i, n))), (i, n));
            prop_assert_eq!(a.pow(3).apply((i, n)), a.apply(a.apply(a.apply((i, n)))));
            prop_assert_eq!(a.pow(-2).apply((i, n)), a.inverse().apply(a.inverse().apply((i, n))));
        }
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&b).sum(), a.sum() + b.sum());
        prop_assert_eq!(a.inverse().sum(), -a.sum());
        let mut p = a.pi.clone();
        for _ in 1..a.perm_order() {
            prop_assert!(p != (0..l).collect::<Vec<_>>());
            p = p.iter().map(|&i| a.pi[i]).collect();
        }
        prop_assert_eq!(p, (0..l).collect::<Vec<_>>());
        prop_assert!(check_composition_law(&[a, b, c], 3).is_ok());
    }

    #[test]
    fn model_images_are_homomorphic((a, b, _c) in sym_triple(), u in prop::collection::vec(0u32..4, 0..6), v in prop::collection::vec(0u32..4, 0..6)) {
        let l = a.len();
        let model = [a, b];
        let (u, v) = (GroupWord(u), GroupWord(v));
        prop_assert_eq!(eval_sym(&model, l, &u.concat(&v)), eval_sym(&model, l, &u).compose(&eval_sym(&model, l, &v)));
        prop_assert!(eval_sym(&model, l, &u.concat(&u.inverse())).is_identity());
    }

    #[test]
    fn klein_bottle_characters(ta in -6i64..6, tc in (-6i64..6).prop_filter("nonzero", |t| *t != 0)) {
        let ex = klein();
        let theta = ZCharacter::new(ex.h_gens.clone(), vec![ta, tc]).unwrap();
        prop_assert!(theta_violations(&ex, &theta).is_empty());
        let x = extend_character(&ex, &theta, &ex.central).unwrap();
        let s = gcd(ta, tc);
        prop_assert_eq!(x.scale, s);
        prop_assert_eq!(x.phi.value_of("a"), Some(0));
        prop_assert_eq!(x.phi.value_of("g"), Some(tc / s));
        prop_assert_eq!(x.phi.value_of("c"), Some(2 * tc / s));
        for w in reduced_words(&ex.g_gens, 3) {
            prop_assert_eq!(eval_sym(&x.model, x.l, &w).sum(), x.phi.eval(&w));
        }
    }

    #[test]
    fn integer_rank_matches_rational_elimination(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 0..5)) {
        let mut m: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let mut rank = 0;
        for c in 0..3 {
            let Some(p) = (rank..m.len()).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())) else { break };
            if m[p][c].abs() < 1e-9 {
                continue;
            }
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank {
                    let f = m[r][c] / m[rank][c];
                    for k in 0..3 {
                        m[r][k] -= f * m[rank][k];
                    }
                }
            }
            rank += 1;
        }
        prop_assert_eq!(integer_rank(&rows), rank);
    }
}
