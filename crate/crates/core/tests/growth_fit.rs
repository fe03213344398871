//! Growth fits on synthetic sequences with known recurrences.

use num_bigint::BigInt;
use proptest::prelude::*;
use shellmax::cayley::{enumerate, fit_growth};
use shellmax::rng::Lcg;
use shellmax::GroupModel;

proptest! {
    #[test]
    fn pure_exponential_is_recovered(c in 1u64..50, q in 2u64..9, len in 8usize..14) {
        let sizes: Vec<u64> = (0..len).map(|n| if n == 0 { 1 } else { c * q.pow(n as u32) }).collect();
        let fit = fit_growth(&sizes).unwrap();
        prop_assert_eq!((fit.d, fit.q_integer), (0, Some(q)));
        let rec = fit.recurrence.as_ref().unwrap();
        prop_assert!(rec.order() <= 2 && rec.holds_on(&sizes));
        prop_assert!(fit.bound_holds(&sizes));
        prop_assert!((fit.c_gr - (c as f64).max(1.0 / c as f64)).abs() < 1e-9 * fit.c_gr);
    }

    #[test]
    fn polynomial_factor_raises_d(a in 1u64..20, b in 0u64..20, q in 2u64..6) {
        let sizes: Vec<u64> = (0..14).map(|n| (a * n as u64 + b).max(1) * q.pow(n as u32)).collect();
        let fit = fit_growth(&sizes).unwrap();
        prop_assert_eq!((fit.d, fit.q_integer), (1, Some(q)));
        prop_assert!(fit.bound_holds(&sizes));
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recurrence_predicts_held_out_terms(k in 2usize..4, depth in 12usize..15) {
        let model = GroupModel::free(k);
        let sizes = enumerate(&model, 7).unwrap().sphere_sizes();
        let fit = fit_growth(&sizes).unwrap();
        let longer: Vec<BigInt> = fit.recurrence.as_ref().unwrap().extend(&sizes, depth);
        for (n, s) in longer.iter().enumerate().skip(1) {
            prop_assert_eq!(s, &(BigInt::from(2 * k) * BigInt::from(2 * k - 1).pow(n as u32 - 1)));
        }
    }
}

#[test]
fn distinct_seeds_diverge_within_four_draws() {
    let seeds = [0u64, 1, 2, 3, 7, 42, 1 << 32, u64::MAX, 12345, 6364136223846793005];
    for (i, &s) in seeds.iter().enumerate() {
        for &t in &seeds[i + 1..] {
            let (mut a, mut b) = (Lcg::new(s), Lcg::new(t));
            assert!((0..4).any(|_| a.next_u32() != b.next_u32()), "seeds {s} and {t}");
        }
    }
}
