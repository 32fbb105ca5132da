use loxodrome::gallery::{
    all_entries, build, char_poly, eigen_report, irreducible_over_q, is_palindromic, parse_address, roots, z4_semidirect_probe, Content,
    EuclideanWreath, GalleryError, IntMatrix, ENTRIES, MAX_N,
};
use loxodrome::io::parse_action_source;
use loxodrome::space::line_vertex;
use proptest::prelude::*;

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[test]
fn every_entry_builds_and_round_trips() {
    let entries = all_entries();
    assert_eq!(entries.len(), ENTRIES.len());
    assert_eq!(entries.len(), 17);
    for e in &entries {
        assert!(!e.annotations.is_empty(), "{}", e.name);
        let again = build(&e.address()).unwrap();
        assert_eq!(again.address(), e.address());
        if let Some(a) = e.action() {
            let base = e.base_point().unwrap();
            assert_eq!(base.len(), a.space.factors.len());
            assert!(a.check_automorphisms(&base, 1).is_ok(), "{}", e.name);
        }
    }
}

#[test]
fn addresses_and_parameters() {
    let (name, params) = parse_address("bt_tree: q=3, v=inf").unwrap();
    assert_eq!(name, "bt_tree");
    assert_eq!(params.get("q").map(String::as_str), Some("3"));
    assert_eq!(build("bt_tree:q=3,v=inf").unwrap().address(), "bt_tree:q=3,v=inf");
    assert!(matches!(build("nowhere"), Err(GalleryError::Unknown(_))));
    assert!(matches!(parse_address("line:k"), Err(GalleryError::BadParameter(_))));
    assert!(matches!(build("line:k=1"), Err(GalleryError::BadParameter(_))));
    assert!(matches!(build("tree_regular:d=x"), Err(GalleryError::BadParameter(_))));
    assert!(matches!(build("bt_tree:v=w"), Err(GalleryError::BadParameter(_))));
    assert!(matches!(build(&format!("z4_semidirect:n_max={}", MAX_N + 1)), Err(GalleryError::BadParameter(_))));
    assert!(build("lamplighter:p=4").is_err());
    assert!(matches!(build("z4_semidirect:n_max=10").unwrap().content, Content::Semidirect { n_max: 10 }));
}

#[test]
fn eigenvalues_of_the_automorphism() {
    let r = eigen_report().unwrap();
    assert_eq!(r.char_poly, vec![1, -2, 1, -2, 1]);
    assert!(r.palindromic);
    assert_eq!(r.irreducible, Some(true));
    assert!((r.lambda - r.lambda_closed_form).abs() < 1e-9);
    assert!((r.lambda * r.inner_real - 1.0).abs() < 1e-9);
    assert!(r.lambda > 1.0 && r.inner_real.abs() < 1.0);
    assert_eq!(r.unit_pair_moduli.len(), 2);
    assert!(r.unit_pair_moduli.iter().all(|m| (m - 1.0).abs() < 1e-9));
    let prod = r.eigenvalues.iter().fold((1.0, 0.0), |acc, &(re, im)| (acc.0 * re - acc.1 * im, acc.0 * im + acc.1 * re));
    assert!((prod.0 - 1.0).abs() < 1e-9 && prod.1.abs() < 1e-9);
}

#[test]
fn irreducibility_on_known_polynomials() {
    assert_eq!(irreducible_over_q(&[-1, 0, 1]), Some(false));
    assert_eq!(irreducible_over_q(&[1, 0, 0, 0, 1]), Some(true));
    assert_eq!(irreducible_over_q(&[1, 0, 2, 0, 1]), Some(false));
    assert_eq!(irreducible_over_q(&[2, 0, 0, 0, 1]), Some(true));
    assert_eq!(irreducible_over_q(&[-2, 1]), Some(true));
    assert_eq!(irreducible_over_q(&[1, 0, 0, 0, 0, 0, 1]), None);
    assert_eq!(irreducible_over_q(&[1, 2]), None);
    assert!(is_palindromic(&[1, 3, 1]) && !is_palindromic(&[1, 3, 2]));
}

#[test]
fn orbit_of_a_satisfies_the_characteristic_recurrence() {
    let rows = z4_semidirect_probe(MAX_N).unwrap();
    assert_eq!(rows[4].coords, [-1, 2, -1, 2]);
    assert_eq!(rows[4].norm, 6);
    for w in rows.windows(5) {
        for i in 0..4 {
            let v: Vec<i128> = w.iter().map(|r| r.coords[i]).collect();
            assert_eq!(v[4], 2 * v[3] - v[2] + 2 * v[1] - v[0]);
        }
    }
    assert!(rows.iter().all(|r| r.ambient == 2 * r.n + 1));
    assert!(z4_semidirect_probe(MAX_N + 1).is_err());
}

#[test]
fn euclidean_wreath_types() {
    let g = EuclideanWreath::new(0.5);
    let c = g.classify(&g.gens.parse("t a t^-1 a^-1").unwrap());
    assert!(c.loxodromic);
    assert!((c.tau - 2.0 * 0.25f64.sin()).abs() < 1e-12);
    let c = g.classify(&g.gens.parse("t^2 a").unwrap());
    assert_eq!(c.line_translation, 2);
    assert!((c.tau - 2.0).abs() < 1e-12);
    let c = g.classify(&g.gens.parse("t a t^-1 a t a^-1 t^-1 a^-1").unwrap());
    assert!(!c.loxodromic);
}

#[test]
fn action_sources() {
    let (a, base) = parse_action_source(r#"{"source":"gallery","entry":"z2_on_lines"}"#).unwrap().build().unwrap();
    assert_eq!(a.apply(&a.parse("x y^2").unwrap(), &base).unwrap(), vec![line_vertex(1), line_vertex(2)]);
    let induced = r#"{"source":"induced","from":{"source":"inline","action":{"name":"h","space":[{"type":"line"}],
        "generators":[{"label":"y","maps":[{"type":"shift","k":1}]}]}},
        "generators":["x"],"data":{"reps":["e","x"],"table":[[[1,"e"],[0,"y"]]]}}"#;
    let (a, base) = parse_action_source(induced).unwrap().build().unwrap();
    assert_eq!(base.len(), 2);
    assert_eq!(a.apply(&a.parse("x^3").unwrap(), &base).unwrap(), vec![line_vertex(2), line_vertex(1)]);
    assert!(parse_action_source(r#"{"source":"gallery","entry":"nowhere"}"#).unwrap().build().is_err());
    assert!(parse_action_source("{").is_err());
}

fn small_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-4i128..=4, n), n)
}

proptest! {
    #[test]
    fn characteristic_polynomial_of_3x3(m in small_matrix(3)) {
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        let tr = m[0][0] + m[1][1] + m[2][2];
        let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] + m[1][1] * m[2][2] - m[1][2] * m[2][1];
        prop_assert_eq!(char_poly(&m).unwrap(), vec![-det, minors, -tr, 1]);
    }

    #[test]
    fn products_of_monic_quadratics_are_reducible(a in -5i128..5, b in -5i128..5, c in -5i128..5, d in -5i128..5) {
        let p = poly_mul(&[b, a, 1], &[d, c, 1]);
        prop_assert_eq!(irreducible_over_q(&p), Some(false));
        for z in roots(&p) {
            let v = p.iter().rev().fold((0.0f64, 0.0f64), |acc, &k| (acc.0 * z.re - acc.1 * z.im + k as f64, acc.0 * z.im + acc.1 * z.re));
            prop_assert!(v.0.hypot(v.1) < 1e-5 * (1.0 + z.norm().powi(4)));
        }
    }
}
