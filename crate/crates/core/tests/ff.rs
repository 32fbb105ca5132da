use loxodrome::ff::{bt_distance, bt_neighbors, bt_tree, laurent_expand, BTVertex, Laurent, Mat2, MatrixMap, PolyFq, RatFq, Uniformizer};
use proptest::prelude::*;

const PRIMES: [u32; 3] = [2, 3, 5];
const PLACES: [Uniformizer; 2] = [Uniformizer::T, Uniformizer::Inf];

fn poly(q: u32, max_len: usize) -> impl Strategy<Value = PolyFq> {
    prop::collection::vec(0..q, 0..=max_len).prop_map(move |c| PolyFq::new(q, c))
}

fn nonzero_poly(q: u32, max_len: usize) -> impl Strategy<Value = PolyFq> {
    poly(q, max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn rat(q: u32) -> impl Strategy<Value = RatFq> {
    (poly(q, 4), nonzero_poly(q, 3)).prop_map(|(n, d)| RatFq::new(n, d).unwrap())
}

fn field() -> impl Strategy<Value = (u32, RatFq, RatFq, RatFq)> {
    prop::sample::select(PRIMES.to_vec()).prop_flat_map(|q| (Just(q), rat(q), rat(q), rat(q)))
}

fn vertex(q: u32) -> impl Strategy<Value = BTVertex> {
    prop::collection::vec(0..=q as usize, 0..8).prop_map(move |steps| {
        let mut v = BTVertex::standard(q);
        for s in steps {
            v = bt_neighbors(&v, q)[s].clone();
        }
        v
    })
}

fn matrix(q: u32) -> impl Strategy<Value = Mat2> {
    (rat(q), rat(q), rat(q), rat(q)).prop_filter_map("singular", |(a, b, c, d)| Mat2::new(a, b, c, d).ok())
}

/// The matrix [[pi^n, u], [0, 1]] carrying the standard vertex to `v`.
fn vertex_matrix(v: &BTVertex, u: Uniformizer) -> Mat2 {
    let q = v.modulus();
    let pi_n = Laurent::monomial(q, v.n, 1).to_ratfq(u);
    Mat2::new(pi_n, v.u.to_ratfq(u), RatFq::zero(q), RatFq::one(q)).unwrap()
}

/// Elementary divisors: d(o, g o) = v(det g) - 2 min v(g_ij).
fn displacement_of_standard(g: &Mat2, u: Uniformizer) -> u64 {
    let min = [&g.a, &g.b, &g.c, &g.d].iter().filter_map(|x| x.valuation(u)).min().unwrap();
    (g.det().valuation(u).unwrap() - 2 * min) as u64
}

#[test]
fn valuations_of_t() {
    for q in PRIMES {
        let t = RatFq::t(q);
        assert_eq!(t.valuation(Uniformizer::T), Some(1));
        assert_eq!(t.valuation(Uniformizer::Inf), Some(-1));
        assert_eq!(RatFq::zero(q).valuation(Uniformizer::T), None);
    }
}

#[test]
fn parse_round_trips_display() {
    let f = RatFq::parse("(t^2+1)/(t-1)", 3).unwrap();
    assert_eq!(RatFq::parse(&f.to_string(), 3).unwrap(), f);
    assert!(RatFq::parse("1/0", 3).is_err());
    assert!(RatFq::parse("t", 4).is_err());
}

#[test]
fn geometric_series_at_t() {
    let f = RatFq::parse("1/(1-t)", 2).unwrap();
    let e = laurent_expand(&f, Uniformizer::T, 6);
    assert_eq!((0..8).map(|d| e.coeff(d)).collect::<Vec<_>>(), vec![1, 1, 1, 1, 1, 1, 0, 0]);
}

#[test]
fn tree_valence_and_distance_to_neighbors() {
    for q in PRIMES {
        let v = BTVertex::new(3, Laurent::from_terms(q, &[(-2, 1), (1, q - 1)]));
        let ns = bt_neighbors(&v, q);
        assert_eq!(ns.len(), q as usize + 1);
        for (i, a) in ns.iter().enumerate() {
            assert_eq!(bt_distance(&v, a), 1);
            for b in &ns[i + 1..] {
                assert_eq!(bt_distance(a, b), 2);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn polynomial_ring_laws((a, b, c) in prop::sample::select(PRIMES.to_vec()).prop_flat_map(|q| (poly(q, 6), poly(q, 6), poly(q, 6)))) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !b.is_zero() {
            let (quo, rem) = a.div_rem(&b);
            prop_assert_eq!(quo.mul(&b).add(&rem), a.clone());
            prop_assert!(rem.is_zero() || rem.degree() < b.degree());
        }
    }

    #[test]
    fn rational_field_laws((q, a, b, c) in field()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&a.neg()), RatFq::zero(q));
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), RatFq::one(q));
            prop_assert_eq!(b.mul(&a).div(&a).unwrap(), b.clone());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn valuations_are_valuations((_q, a, b, _c) in field()) {
        for u in PLACES {
            match (a.valuation(u), b.valuation(u)) {
                (Some(va), Some(vb)) => {
                    prop_assert_eq!(a.mul(&b).valuation(u), Some(va + vb));
                    if let Some(vs) = a.add(&b).valuation(u) {
                        prop_assert!(vs >= va.min(vb));
                        if va != vb {
                            prop_assert_eq!(vs, va.min(vb));
                        }
                    }
                }
                _ => prop_assert_eq!(a.mul(&b).valuation(u), None),
            }
        }
    }

    #[test]
    fn laurent_expansion_approximates((_q, a, _b, _c) in field(), cutoff in -3i64..6) {
        for u in PLACES {
            let e = laurent_expand(&a, u, cutoff);
            let err = e.to_ratfq(u).sub(&a);
            prop_assert!(err.valuation(u).map_or(true, |v| v >= cutoff), "{} at {:?}", a, u);
            prop_assert_eq!(a.to_local(u).valuation(Uniformizer::T), a.valuation(u));
        }
    }

    #[test]
    fn matrix_action_is_an_isometric_homomorphism(
        (q, m, n, v, w) in prop::sample::select(PRIMES.to_vec()).prop_flat_map(|q| (Just(q), matrix(q), matrix(q), vertex(q), vertex(q)))
    ) {
        for u in PLACES {
            let (mm, nm) = (MatrixMap::new(m.clone(), u), MatrixMap::new(n.clone(), u));
            let mn = MatrixMap::new(m.mul(&n), u);
            prop_assert_eq!(mn.apply(&v), mm.apply(&nm.apply(&v)));
            prop_assert_eq!(bt_distance(&mm.apply(&v), &mm.apply(&w)), bt_distance(&v, &w));
            prop_assert_eq!(mm.inverse().apply(&mm.apply(&v)), v.clone());
            prop_assert_eq!(MatrixMap::new(Mat2::identity(q), u).apply(&v), v.clone());
        }
    }

    #[test]
    fn displacement_matches_elementary_divisors(
        (m, v) in prop::sample::select(PRIMES.to_vec()).prop_flat_map(|q| (matrix(q), vertex(q)))
    ) {
        for u in PLACES {
            let g = vertex_matrix(&v, u);
            prop_assert_eq!(MatrixMap::new(g.clone(), u).apply(&BTVertex::standard(v.modulus())), v.clone());
            let conj = g.inverse().mul(&m).mul(&g);
            prop_assert_eq!(bt_distance(&v, &MatrixMap::new(m.clone(), u).apply(&v)), displacement_of_standard(&conj, u));
        }
    }

    #[test]
    fn closed_form_distance_matches_search(
        (q, v, w) in prop::sample::select(PRIMES.to_vec()).prop_flat_map(|q| (Just(q), vertex(q), vertex(q)))
    ) {
        for u in PLACES {
            let space = bt_tree(q, u).unwrap();
            let d = space.bfs_distance(&v.key(u), &w.key(u), 20).unwrap();
            prop_assert_eq!(d, Some(bt_distance(&v, &w)));
            prop_assert_eq!(BTVertex::from_key(&v.key(u), q, u).unwrap(), v.clone());
        }
    }
}
