use std::sync::Arc;

use loxodrome::space::{
    four_point_defect_twice, four_point_delta, grow_ball, line, line_vertex, product_distance, tree_regular, tree_word, DeltaOptions, LazySpace,
    NeighborOracle, ProductSpace, SpaceError, VertexKey,
};
use proptest::prelude::*;

struct Cycle(i64);

impl NeighborOracle for Cycle {
    fn neighbors(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        let i = v.to_int().ok_or_else(|| SpaceError::BadKey(v.clone()))?;
        Ok(vec![VertexKey::from_int((i + 1).rem_euclid(self.0)), VertexKey::from_int((i - 1).rem_euclid(self.0))])
    }
}

/// The square grid Z^2 with unit steps.
struct Grid;

impl NeighborOracle for Grid {
    fn neighbors(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        let p = v.to_ints(2).ok_or_else(|| SpaceError::BadKey(v.clone()))?;
        Ok([(1, 0), (-1, 0), (0, 1), (0, -1)].iter().map(|(a, b)| VertexKey::from_ints(&[p[0] + a, p[1] + b])).collect())
    }
}

/// Lists 1 as a neighbor of 0 but not conversely.
struct OneWay;

impl NeighborOracle for OneWay {
    fn neighbors(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        Ok(match v.to_int() {
            Some(0) => vec![VertexKey::from_int(1)],
            _ => vec![],
        })
    }
}

struct Loop;

impl NeighborOracle for Loop {
    fn neighbors(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        Ok(vec![v.clone()])
    }
}

fn brute_delta_twice(n: usize, d: impl Fn(usize, usize) -> u64) -> u64 {
    let mut best = 0;
    for w in 0..n {
        for x in w + 1..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    best = best.max(four_point_defect_twice(d(w, x), d(y, z), d(w, y), d(x, z), d(w, z), d(x, y)));
                }
            }
        }
    }
    best
}

#[test]
fn cycle_delta_matches_brute_force() {
    for n in [4i64, 5, 6, 9, 12] {
        let space = LazySpace::new(format!("C{n}"), VertexKey::from_int(0), Arc::new(Cycle(n)));
        let ball = grow_ball(&space, &space.basepoint, (n / 2) as u32).unwrap();
        assert_eq!(ball.len(), n as usize);
        let idx: Vec<i64> = ball.members().iter().map(|v| v.to_int().unwrap()).collect();
        let cyc = |a: usize, b: usize| {
            let k = (idx[a] - idx[b]).unsigned_abs();
            k.min(n as u64 - k)
        };
        let est = four_point_delta(&ball, &space, &DeltaOptions::default()).unwrap();
        assert!(est.exhaustive);
        assert_eq!(est.delta_twice, brute_delta_twice(ball.len(), cyc), "C{n}");
    }
}

#[test]
fn grid_delta_grows_with_radius() {
    let space = LazySpace::new("grid", VertexKey::from_ints(&[0, 0]), Arc::new(Grid));
    let mut last = 0;
    for r in 1..=4u32 {
        let ball = grow_ball(&space, &space.basepoint, r).unwrap();
        let pts: Vec<Vec<i64>> = ball.members().iter().map(|v| v.to_ints(2).unwrap()).collect();
        let l1 = |a: usize, b: usize| ((pts[a][0] - pts[b][0]).abs() + (pts[a][1] - pts[b][1]).abs()) as u64;
        let est = four_point_delta(&ball, &space, &DeltaOptions::default()).unwrap();
        assert_eq!(est.delta_twice, brute_delta_twice(ball.len(), l1), "radius {r}");
        assert!(est.delta_twice >= last);
        last = est.delta_twice;
    }
    assert_eq!(last, 8);
}

#[test]
fn sampling_is_seeded_and_disabling_it_errors() {
    let space = tree_regular(4).unwrap();
    let ball = grow_ball(&space, &space.basepoint, 4).unwrap();
    let opts = DeltaOptions { exhaustive_budget: 1000, samples: 5000, seed: 7 };
    let a = four_point_delta(&ball, &space, &opts).unwrap();
    let b = four_point_delta(&ball, &space, &opts).unwrap();
    assert!(!a.exhaustive);
    assert_eq!((a.delta_twice, &a.witness), (b.delta_twice, &b.witness));
    let strict = DeltaOptions { samples: 0, ..opts };
    assert!(matches!(four_point_delta(&ball, &space, &strict), Err(SpaceError::TooLarge { .. })));
}

#[test]
fn malformed_oracles_are_rejected() {
    let one_way = LazySpace::new("one_way", VertexKey::from_int(0), Arc::new(OneWay));
    assert!(matches!(grow_ball(&one_way, &one_way.basepoint, 2), Err(SpaceError::OracleAsymmetry { .. })));
    let looped = LazySpace::new("loop", VertexKey::from_int(0), Arc::new(Loop));
    assert!(matches!(grow_ball(&looped, &looped.basepoint, 1), Err(SpaceError::MalformedNeighbors(_))));
    let capped = LazySpace::new("grid", VertexKey::from_ints(&[0, 0]), Arc::new(Grid)).with_valence_bound(3);
    assert!(matches!(grow_ball(&capped, &capped.basepoint, 1), Err(SpaceError::ValenceExceeded { found: 4, .. })));
    assert!(matches!(tree_regular(3).unwrap().neighbors(&tree_word(&[1, 1])), Err(SpaceError::BadKey(_))));
}

#[test]
fn restricted_ball_equals_smaller_ball() {
    let space = tree_regular(3).unwrap();
    let big = grow_ball(&space, &space.basepoint, 5).unwrap();
    for r in 0..5 {
        let small = grow_ball(&space, &space.basepoint, r).unwrap();
        let mut a = big.restrict(r).members().to_vec();
        let mut b = small.members().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(big.restrict(r).edge_count(), small.edge_count());
    }
}

#[test]
fn product_distance_certificates() {
    let p = ProductSpace::new(vec![line(), tree_regular(3).unwrap()]);
    let x = vec![line_vertex(-2), tree_word(&[0, 1])];
    let y = vec![line_vertex(3), tree_word(&[2])];
    assert_eq!(p.distance_sq(&x, &y, 64).unwrap(), 25 + 9);
    let balls: Vec<_> = p.factors.iter().map(|f| grow_ball(f, &f.basepoint, 3).unwrap()).collect();
    assert!(matches!(product_distance(&p, &x, &y, &balls), Err(SpaceError::Uncertified { .. })));
    let balls: Vec<_> = p.factors.iter().map(|f| grow_ball(f, &f.basepoint, 8).unwrap()).collect();
    assert_eq!(product_distance(&p, &x, &y, &balls).unwrap(), 34);
    assert_eq!(p.distance_sq_within(&x, &y, 5).unwrap(), None);
    assert_eq!(p.distance_sq_within(&x, &y, 6).unwrap(), Some(34));
    assert!(matches!(p.distance_sq(&x, &y[..1], 64), Err(SpaceError::Arity { .. })));
}

fn tree_vertex(valence: u8) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..valence, 0..10).prop_map(|mut w| {
        w.dedup();
        w
    })
}

proptest! {
    #[test]
    fn key_encodings_round_trip(ns in prop::collection::vec(any::<i64>(), 0..6), n in any::<i64>()) {
        prop_assert_eq!(VertexKey::from_int(n).to_int(), Some(n));
        prop_assert_eq!(VertexKey::from_ints(&ns).to_ints(ns.len()), Some(ns.clone()));
        let key = VertexKey::from_ints(&ns);
        prop_assert_eq!(VertexKey::from_hex(&key.to_hex()).unwrap(), key.clone());
        let parts: Vec<VertexKey> = ns.iter().map(|&n| VertexKey::from_int(n)).collect();
        prop_assert_eq!(VertexKey::tuple(&parts).untuple(), Some(parts));
    }

    #[test]
    fn integer_keys_sort_like_integers(a in any::<i64>(), b in any::<i64>()) {
        prop_assert_eq!(VertexKey::from_int(a).cmp(&VertexKey::from_int(b)), a.cmp(&b));
    }

    #[test]
    fn closed_forms_agree_with_search(a in -30i64..30, b in -30i64..30, u in tree_vertex(3), v in tree_vertex(3)) {
        let l = line();
        prop_assert_eq!(l.distance(&line_vertex(a), &line_vertex(b), 100).unwrap(), a.abs_diff(b));
        prop_assert_eq!(l.bfs_distance(&line_vertex(a), &line_vertex(b), 100).unwrap(), Some(a.abs_diff(b)));
        let t = tree_regular(3).unwrap();
        let (u, v) = (tree_word(&u), tree_word(&v));
        prop_assert_eq!(t.bfs_distance(&u, &v, 30).unwrap(), Some(t.distance(&u, &v, 30).unwrap()));
    }

    #[test]
    fn skeleton_distance_is_l1(a in -5i64..5, u in tree_vertex(3), b in -5i64..5, v in tree_vertex(3)) {
        let p = ProductSpace::new(vec![line(), tree_regular(3).unwrap()]);
        let x = vec![line_vertex(a), tree_word(&u)];
        let y = vec![line_vertex(b), tree_word(&v)];
        let l1: u64 = p.factor_distances(&x, &y, 64).unwrap().iter().sum();
        let sk = p.skeleton();
        prop_assert_eq!(sk.bfs_distance(&VertexKey::tuple(&x), &VertexKey::tuple(&y), 40).unwrap(), Some(l1));
        prop_assert_eq!(sk.distance(&VertexKey::tuple(&x), &VertexKey::tuple(&y), 40).unwrap(), l1);
    }
}
