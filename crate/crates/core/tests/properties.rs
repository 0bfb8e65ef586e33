use cotsum::{
    c0, c0_series_partial, floor_via_exponential_sum, sum_strategy, PrecisionConfig, ReducedFraction,
    Summation,
};
use num_integer::Integer;
use proptest::prelude::*;

fn reduced() -> impl Strategy<Value = ReducedFraction> {
    (2u64..2_000)
        .prop_flat_map(|k| (1..k, Just(k)))
        .prop_filter("coprime", |(h, k)| h.gcd(k) == 1)
        .prop_map(|(h, k)| ReducedFraction::new(h, k).unwrap())
}

proptest! {
    #[test]
    fn complement_negates(f in reduced()) {
        let cfg = PrecisionConfig::double();
        let a: f64 = c0(f, &cfg).unwrap();
        let b: f64 = c0(f.complement().unwrap(), &cfg).unwrap();
        prop_assert!((a + b).abs() <= 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn summation_strategies_agree(f in reduced(), chunk in 1usize..300) {
        let base: f64 = c0(f, &PrecisionConfig::double()).unwrap();
        let tol = 1e-12 * (1.0 + base.abs());
        for s in [Summation::Naive, Summation::Pairwise] {
            for chunk in [None, Some(chunk)] {
                let cfg = PrecisionConfig::double().with_summation(s).with_parallel_chunk(chunk);
                let v: f64 = c0(f, &cfg).unwrap();
                prop_assert!((v - base).abs() <= tol);
            }
        }
    }

    #[test]
    fn floor_identity(a in 0u64..100_000, b in 2u64..300) {
        let r = floor_via_exponential_sum::<f64>(a, b, &PrecisionConfig::double()).unwrap();
        prop_assert_eq!(r.value, a / b);
        prop_assert!(r.imag_residue.abs() <= 1e-9);
    }

    #[test]
    fn series_partial_approaches_exact(b in 3u64..30) {
        let cfg = PrecisionConfig::double();
        let exact: f64 = c0(ReducedFraction::unit(b).unwrap(), &cfg).unwrap();
        let coarse: f64 = c0_series_partial(b, 100 * b, &cfg).unwrap();
        let fine: f64 = c0_series_partial(b, 10_000 * b, &cfg).unwrap();
        prop_assert!((fine - exact).abs() <= (coarse - exact).abs() + 1e-12);
    }

    #[test]
    fn compensated_sum_is_exact_on_cancelling_input(xs in prop::collection::vec(-1e12f64..1e12, 1..200)) {
        let mut values = xs.clone();
        values.extend(xs.iter().map(|x| -x));
        values.push(1.0);
        prop_assert!((sum_strategy(&values, &PrecisionConfig::double()) - 1.0).abs() <= 1e-12);
    }
}
