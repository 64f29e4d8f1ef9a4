use aperiodic::group::{Group, GroupElement};
use aperiodic::metric::WordMetric;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Every element of the radius-12 ball: closed form vs breadth-first search.
#[test]
fn heisenberg_closed_form_matches_bfs() {
    let h = Group::heisenberg();
    let bfs = WordMetric::bfs_only(&h).unwrap();
    let fast = WordMetric::new(&h).unwrap();
    let ball = bfs.ball(&h.identity(), 12).unwrap();
    for g in ball.elements() {
        assert_eq!(fast.length(g).unwrap(), bfs.bfs_length(g).unwrap(), "at {g}");
    }
    // and a shell just outside the ball: closed form must exceed 12 there
    for a in -8i64..=8 {
        for b in -8i64..=8 {
            for c in -40i64..=40 {
                let g = GroupElement::heis(a, b, c);
                if !ball.contains(&h, &g) {
                    assert!(fast.length(&g).unwrap() > 12, "at {g}");
                }
            }
        }
    }
}

#[test]
fn closed_forms_match_bfs_on_menu() {
    let groups = vec![
        Group::integers(),
        Group::lattice(2).unwrap(),
        Group::lattice(3).unwrap(),
        Group::cyclic(7).unwrap(),
        Group::cyclic(2).unwrap(),
        Group::free2(),
    ];
    for g in groups {
        let bfs = WordMetric::bfs_only(&g).unwrap();
        let fast = WordMetric::new(&g).unwrap();
        for x in bfs.ball(&g.identity(), 6).unwrap().elements() {
            assert_eq!(fast.length(x).unwrap(), bfs.bfs_length(x).unwrap(), "{} at {x}", g.name());
        }
    }
}

#[test]
fn lattice_ball_sizes_match_l1_count() {
    // |{v in Z^d : |v|_1 <= r}| = sum_k 2^k C(d,k) C(r,k)
    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for d in 1..=3u64 {
        let g = Group::lattice(d as usize).unwrap();
        let m = WordMetric::new(&g).unwrap();
        let mut prev = 0;
        for r in 0..=6u64 {
            let count: u64 = (0..=d).map(|k| (1 << k) * binom(d, k) * binom(r, k)).sum();
            let size = m.ball(&g.identity(), r).unwrap().len() as u64;
            assert_eq!(size, count, "d={d} r={r}");
            assert!(size >= prev);
            prev = size;
        }
    }
}

#[test]
fn ball_sizes_nondecreasing() {
    for g in [Group::free2(), Group::heisenberg(), Group::cyclic(9).unwrap()] {
        let m = WordMetric::new(&g).unwrap();
        let mut prev = 0;
        for r in 0..=5 {
            let s = m.ball(&g.identity(), r).unwrap().len();
            assert!(s >= prev, "{}", g.name());
            prev = s;
        }
    }
}

#[test]
fn right_invariance_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in [Group::integers(), Group::lattice(2).unwrap(), Group::free2(), Group::heisenberg(), Group::cyclic(10).unwrap()] {
        let m = WordMetric::new(&g).unwrap();
        for _ in 0..1000 {
            let x = g.random_element(&mut rng, 12);
            let y = g.random_element(&mut rng, 12);
            let s = g.random_element(&mut rng, 12);
            let d = m.distance(&x, &y).unwrap();
            let xs = g.mul(&x, &s).unwrap();
            let ys = g.mul(&y, &s).unwrap();
            assert_eq!(m.distance(&xs, &ys).unwrap(), d, "{}", g.name());
        }
    }
}

#[test]
fn ball_right_translation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in [Group::lattice(2).unwrap(), Group::free2(), Group::heisenberg()] {
        let m = WordMetric::new(&g).unwrap();
        for _ in 0..5 {
            let x = g.random_element(&mut rng, 5);
            let a = g.random_element(&mut rng, 5);
            let lhs = m.ball(&g.mul(&x, &a).unwrap(), 3).unwrap();
            let rhs = m.ball(&x, 3).unwrap().translate(&g, &a).unwrap();
            let mut l = lhs.elements().to_vec();
            let mut r = rhs.elements().to_vec();
            l.sort();
            r.sort();
            assert_eq!(l, r);
        }
    }
}

proptest! {
    #[test]
    fn heisenberg_length_is_symmetric_and_subadditive(a in -30i64..30, b in -30i64..30, c in -200i64..200,
                                                      a2 in -30i64..30, b2 in -30i64..30, c2 in -200i64..200) {
        let h = Group::heisenberg();
        let m = WordMetric::new(&h).unwrap();
        let g = GroupElement::heis(a, b, c);
        let k = GroupElement::heis(a2, b2, c2);
        let lg = m.length(&g).unwrap();
        prop_assert_eq!(lg, m.length(&h.inv(&g).unwrap()).unwrap());
        prop_assert!(m.length(&h.mul(&g, &k).unwrap()).unwrap() <= lg + m.length(&k).unwrap());
        prop_assert!(lg >= a.unsigned_abs() + b.unsigned_abs());
    }
}
