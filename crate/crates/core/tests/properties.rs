use proptest::prelude::*;

use superwl::density::DensityModel;
use superwl::eigen::{symmetric_eigenvalues, SymmetricMatrix, DEFAULT_TOL};
use superwl::empirical::trim_top;
use superwl::ensembles::{rescale_to_unit_mean, sample, EnsembleConfig, Family};
use superwl::harness::{ks_statistic, Histogram};
use superwl::rng::RandomStream;
use superwl::spacing::{individual_spacing, wd_surmise, wl2_exact_spacing};
use superwl::specfun::{ln_bessel_k, ln_gamma};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ln_gamma_recurrence(x in 0.05f64..80.0) {
        let lhs = ln_gamma(x + 1.0).unwrap() - ln_gamma(x).unwrap();
        prop_assert!((lhs - x.ln()).abs() < 1e-11 * (1.0 + x.ln().abs()));
    }

    #[test]
    fn bessel_k_decreases_in_x(nu in 0.0f64..10.0, x in 0.05f64..30.0) {
        prop_assert!(ln_bessel_k(nu, x * 1.1).unwrap() < ln_bessel_k(nu, x).unwrap());
    }

    #[test]
    fn histogram_with_full_range_has_unit_mass(values in prop::collection::vec(-5.0f64..5.0, 1..400), bins in 1usize..50) {
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min) - 1e-9;
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 1e-9;
        let h = Histogram::new(&values, lo, hi, bins).unwrap();
        prop_assert_eq!(h.counts.iter().sum::<u64>(), values.len() as u64);
        prop_assert!((h.mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ks_is_a_probability(values in prop::collection::vec(-3.0f64..3.0, 2..200)) {
        let d = ks_statistic(&values, |x| 1.0 / (1.0 + (-x).exp())).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
    }

    #[test]
    fn unit_mean_rescaling(values in prop::collection::vec(1e-3f64..1e3, 1..100)) {
        let r = rescale_to_unit_mean(&values).unwrap();
        let mean = r.iter().sum::<f64>() / r.len() as f64;
        prop_assert!((mean - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trimmed_set_has_unit_mean(values in prop::collection::vec(1e-3f64..1e3, 2..100), k in 1usize..10) {
        prop_assume!(k < values.len());
        let (kept, removed) = trim_top(&values, k).unwrap();
        prop_assert_eq!(removed.len(), k);
        let mean = kept.iter().sum::<f64>() / kept.len() as f64;
        prop_assert!((mean - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_preserve_trace(entries in prop::collection::vec(-2.0f64..2.0, 21)) {
        let mut k = 0;
        let a = SymmetricMatrix::from_fn(6, |_, _| { k += 1; entries[k - 1] });
        let ev = symmetric_eigenvalues(&a, DEFAULT_TOL).unwrap();
        prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!((ev.iter().sum::<f64>() - a.trace()).abs() < 1e-10);
        prop_assert!((ev.iter().map(|x| x * x).sum::<f64>() - a.frobenius_sq()).abs() < 1e-9);
    }

    #[test]
    fn wd_is_nonnegative(s in 0.0f64..10.0, beta in prop::sample::select(vec![1u32, 2, 4])) {
        prop_assert!(wd_surmise(s, beta).unwrap() >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn wl2_curve_ignores_n_scale(s in 0.05f64..4.0, m in 2usize..8, n_scale in 0.2f64..5.0) {
        let a = wl2_exact_spacing(s, 1, m, 0.5).unwrap();
        let b = wl2_exact_spacing(s, 1, m, n_scale).unwrap();
        prop_assert!((a / b - 1.0).abs() < 1e-9);
    }

    #[test]
    fn density_is_nonnegative(x in 0.0f64..30.0, gamma in 0.2f64..50.0, c in 0.1f64..1.0) {
        prop_assert!(DensityModel::gen(gamma, c).unwrap().pdf(x).unwrap() >= 0.0);
    }

    #[test]
    fn individual_spacings_have_unit_mean(seed in any::<u64>(), k in 2usize..5) {
        let config = EnsembleConfig::new(1, 4, 6, Some(2.0), Family::InvChi2).unwrap();
        let samples: Vec<_> = (0..100).map(|i| sample(&mut RandomStream::new(seed, i), &config).unwrap()).collect();
        let s = individual_spacing(&samples, k).unwrap();
        prop_assert!((s.iter().sum::<f64>() / s.len() as f64 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_reproducible(seed in any::<u64>(), id in any::<u64>()) {
        let config = EnsembleConfig::new(2, 3, 5, Some(1.5), Family::Chi2).unwrap();
        let a = sample(&mut RandomStream::new(seed, id), &config).unwrap();
        let b = sample(&mut RandomStream::new(seed, id), &config).unwrap();
        prop_assert_eq!(a, b);
    }
}
