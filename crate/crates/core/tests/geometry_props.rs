//! Brute-force pair oracles for the counting inequalities, and intervals.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use shellmax::cayley::{enumerate, LayeredBall};
use shellmax::geometry::{
    coarse_median_count, coarse_median_scan, correlation_count, correlation_rd_ratio, interval, interval_sphere_count,
    median_candidates, minsum_bound_check, Lhs,
};
use shellmax::{parse_spec, Element, GroupModel};

const SPECS: [&str; 5] = [
    "free rank=2",
    "raag vertices=a,b,c edges=a-b,b-c",
    "cyclicfreeproduct orders=2,3",
    "product (free rank=2) (free rank=2)",
    "zd dim=2",
];

fn ball(m: usize, radius: usize) -> LayeredBall {
    enumerate(&parse_spec(SPECS[m]).unwrap(), radius).unwrap()
}

fn pick(ball: &LayeredBall, picks: &[usize]) -> Vec<Element> {
    let set: BTreeSet<Element> = picks
        .iter()
        .map(|&i| ball.element((i % ball.len()) as u32).clone())
        .collect();
    set.into_iter().collect()
}

fn brute_pairs(model: &GroupModel, a: &[Element], b: &[Element], keep: impl Fn(usize) -> bool) -> u64 {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| (x, y)))
        .filter(|(x, y)| keep(model.distance(x, y)))
        .count() as u64
}

#[test]
fn correlation_examples() {
    let f2 = ball(0, 3);
    let s1 = f2.sphere(1).to_vec();
    let rep = correlation_rd_ratio(&f2, &s1, &s1, 2, 0.0, 1).unwrap();
    assert_eq!(rep.lhs, Lhs::Count(12));
    assert!((rep.rhs - 4.0 * 12f64.sqrt()).abs() < 1e-12);
    assert!((rep.ratio - 0.866).abs() < 1e-3);

    let prod = ball(3, 2);
    let s1 = prod.sphere(1).to_vec();
    assert_eq!(s1.len(), 8);
    let rep = correlation_rd_ratio(&prod, &s1, &s1, 2, 1.5, 1).unwrap();
    assert_eq!(rep.lhs.count(), Some(brute_pairs(prod.model(), &s1, &s1, |d| d == 2)));
    assert!(rep.ratio.is_finite() && rep.ratio > 0.0);
}

#[test]
fn coarse_median_examples() {
    let f2 = ball(0, 2);
    let s1 = f2.sphere(1).to_vec();
    let rep = coarse_median_count(&f2, &s1, 1, &s1, 1, 2).unwrap();
    assert_eq!((rep.lhs, rep.rhs, rep.ratio), (Lhs::Count(12), 16.0, 0.75));

    let z2 = enumerate(&parse_spec("raag vertices=a,b edges=a-b").unwrap(), 2).unwrap();
    let s1 = z2.sphere(1).to_vec();
    let rep = coarse_median_count(&z2, &s1, 1, &s1, 1, 2).unwrap();
    assert_eq!(rep.lhs.count(), Some(brute_pairs(z2.model(), &s1, &s1, |d| d == 2)));
    assert_eq!(rep.rhs, 16.0);
}

#[test]
fn scan_constant_shrinks_as_d2_grows() {
    let raag = ball(1, 5);
    let c0: Vec<f64> = [0.0, 1.0, 2.0]
        .iter()
        .map(|&d2| coarse_median_scan(&raag, 5, 3, d2).unwrap().c0)
        .collect();
    assert!(c0.iter().all(|c| c.is_finite()));
    assert!(c0.windows(2).all(|w| w[1] <= w[0]), "{c0:?}");
}

#[test]
fn free_group_full_spheres_have_constant_one() {
    let f2 = ball(0, 6);
    let scan = coarse_median_scan(&f2, 6, 0, 0.0).unwrap();
    assert!(scan.c0 <= 1.0, "C0 = {}", scan.c0);
}

#[test]
fn scan_refuses_the_lattice() {
    let err = coarse_median_scan(&ball(4, 3), 3, 0, 0.0).unwrap_err();
    assert!(err.to_string().contains("polynomial"));
}

#[test]
fn lattice_interval_sphere() {
    let z2 = ball(4, 6);
    let p = |s: &str| z2.model().parse_element(s).unwrap();
    assert_eq!(interval_sphere_count(&z2, &p("e"), &p("a^3.b^3"), 3).unwrap(), 4);
}

#[test]
fn min_sum_single_term() {
    let four = BTreeMap::from([(1usize, 4u64)]);
    let rep = minsum_bound_check(3.0, &four, &four, 2).unwrap();
    assert_eq!((rep.lhs, rep.rhs, rep.ratio), (Lhs::Real(12.0), 24.0, 0.5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn correlation_matches_pair_loop_and_is_symmetric(
        m in 0usize..5,
        a in prop::collection::vec(0usize..5000, 1..25),
        b in prop::collection::vec(0usize..5000, 1..25),
        r in 0usize..4,
        width in 1usize..3,
    ) {
        let ball = ball(m, 3 + width);
        let (a, b) = (pick(&ball, &a), pick(&ball, &b));
        let ab = correlation_count(&ball, &a, &b, r, width).unwrap();
        prop_assert_eq!(ab, correlation_count(&ball, &b, &a, r, width).unwrap());
        prop_assert_eq!(ab, brute_pairs(ball.model(), &a, &b, |d| (r..r + width).contains(&d)));
    }

    #[test]
    fn coarse_median_matches_pair_loop(
        m in 0usize..4,
        j in 0usize..4,
        i in 0usize..4,
        e in prop::collection::vec(0usize..5000, 0..20),
        f in prop::collection::vec(0usize..5000, 0..20),
        t in 0usize..8,
    ) {
        let ball = ball(m, 6);
        let layer = |n: usize, picks: &[usize]| -> Vec<Element> {
            let s = ball.sphere(n);
            picks.iter().map(|&p| s[p % s.len()].clone()).collect::<BTreeSet<_>>().into_iter().collect()
        };
        let (e, f) = (layer(j, &e), layer(i, &f));
        let r = j.abs_diff(i) + t % (j + i - j.abs_diff(i) + 1);
        let rep = coarse_median_count(&ball, &e, j, &f, i, r).unwrap();
        prop_assert_eq!(rep.lhs.count(), Some(brute_pairs(ball.model(), &e, &f, |d| d == r)));
        prop_assert_eq!(rep.digest.size_a, e.len());
    }

    #[test]
    fn min_sum_ratio_bounds(
        q in 1.01f64..12.0,
        e in prop::collection::btree_map(0usize..8, 1u64..200, 1..5),
        f in prop::collection::btree_map(0usize..8, 1u64..200, 1..5),
        r in 0usize..8,
    ) {
        let rep = minsum_bound_check(q, &e, &f, r).unwrap();
        prop_assert!(rep.ratio <= q / (q - 1.0) * (1.0 + 1e-12), "ratio {} q {q}", rep.ratio);
        if q >= 3.0 {
            prop_assert!(rep.ratio <= 1.0 + 1e-12, "ratio {} q {q}", rep.ratio);
        }
    }

    #[test]
    fn intervals_are_exactly_the_between_points(m in 0usize..5, x in 0usize..5000, y in 0usize..5000) {
        let small = ball(m, 2);
        let big = ball(m, 4);
        let model = big.model();
        let (x, y) = (small.element((x % small.len()) as u32).clone(), small.element((y % small.len()) as u32).clone());
        let d = model.distance(&x, &y);
        let brute: BTreeSet<Element> = big
            .elements()
            .iter()
            .filter(|z| model.distance(&x, z) + model.distance(z, &y) == d)
            .cloned()
            .collect();
        prop_assert_eq!(interval(&big, &x, &y).unwrap(), brute);
    }

    #[test]
    fn median_candidates_are_between_each_pair(m in 0usize..5, pts in prop::collection::vec(0usize..5000, 3)) {
        let small = ball(m, 2);
        let big = ball(m, 4);
        let model = big.model();
        let p: Vec<Element> = pts.iter().map(|&i| small.element((i % small.len()) as u32).clone()).collect();
        let between = |u: &Element, v: &Element, w: &Element| model.distance(u, w) + model.distance(w, v) == model.distance(u, v);
        for c in median_candidates(&big, &p[0], &p[1], &p[2]).unwrap() {
            prop_assert!(between(&p[0], &p[1], &c) && between(&p[0], &p[2], &c) && between(&p[1], &p[2], &c));
        }
    }
}
