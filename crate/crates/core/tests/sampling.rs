use std::collections::HashMap;

use lamcount::counting::count_family;
use lamcount::radicals::{find_rho, RadicalChain};
use lamcount::sampling::*;
use lamcount::terms::enumerate::{closed_terms, family_members};
use lamcount::terms::{stats, validate};
use lamcount::{Family, Term};
use rug::{Float, Integer};
use statrs::distribution::{ChiSquared, ContinuousCDF};

// p-value of Pearson's statistic for uniformity over `pool`
fn uniformity_p(pool: &[Term], draws: impl Iterator<Item = Term>) -> f64 {
    let index: HashMap<&Term, usize> = pool.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut counts = vec![0u64; pool.len()];
    let mut total = 0u64;
    for t in draws {
        let i = *index.get(&t).unwrap_or_else(|| panic!("drew a term outside the class: {t}"));
        counts[i] += 1;
        total += 1;
    }
    let e = total as f64 / pool.len() as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
    if pool.len() == 1 {
        return 1.0;
    }
    1.0 - ChiSquared::new((pool.len() - 1) as f64).unwrap().cdf(stat)
}

#[test]
fn unique_term_of_size_two() {
    let s = RecursiveSampler::new(Family::LambdaAll, 2).unwrap();
    for i in 0..50 {
        assert_eq!(s.sample(&mut stream(3, i)).to_string(), "\\ 1");
    }
}

#[test]
fn closed_terms_of_size_eight_are_uniform() {
    let pool = closed_terms(8);
    assert_eq!(pool.len(), 506);
    let s = RecursiveSampler::new(Family::LambdaAll, 8).unwrap();
    let p = uniformity_p(&pool, (0..50_000).map(|i| s.sample(&mut stream(2024, i))));
    assert!(p > 0.001, "p = {p}");
}

#[test]
fn every_family_is_uniform_at_small_sizes() {
    let cases = [
        (Family::LambdaUnaryHeight(2), 8),
        (Family::LambdaBindingLength(1), 8),
        (Family::LambdaExactUnary(2), 7),
        (Family::LambdaAtMostUnary(2), 8),
        (Family::Motzkin, 7),
        (Family::MotzkinExactUnary(2), 7),
        (Family::MotzkinHeightExact(1), 8),
        (Family::MotzkinHeightAtMost(2), 8),
    ];
    for (fam, n) in cases {
        let pool = family_members(fam, n);
        let s = RecursiveSampler::new(fam, n).unwrap();
        assert_eq!(Integer::from(pool.len()), *s.population(), "{fam}");
        let p = uniformity_p(&pool, (0..50_000).map(|i| s.sample(&mut stream(77, i))));
        assert!(p > 0.001, "{fam} n={n}: p = {p}");
    }
}

#[test]
fn sampled_terms_validate() {
    let fams = [
        Family::LambdaAll,
        Family::LambdaUnaryHeight(3),
        Family::LambdaBindingLength(2),
        Family::LambdaExactUnary(3),
        Family::LambdaAtMostUnary(4),
        Family::Motzkin,
        Family::MotzkinExactUnary(3),
        Family::MotzkinHeightExact(2),
        Family::MotzkinHeightAtMost(3),
    ];
    let mut drawn = 0;
    for fam in fams {
        for n in [12usize, 21, 30] {
            let Ok(s) = RecursiveSampler::new(fam, n) else { continue };
            for i in 0..400 {
                let t = s.sample(&mut stream(n as u64, i));
                assert_eq!(t.size(), n);
                assert!(validate(&t, fam), "{fam}: {t}");
                drawn += 1;
            }
        }
    }
    assert!(drawn >= 10_000, "{drawn}");
}

#[test]
fn zero_count_sizes_are_reported() {
    assert!(matches!(RecursiveSampler::new(Family::LambdaExactUnary(2), 8), Err(SampleError::ZeroCount { .. })));
    assert!(matches!(RecursiveSampler::new(Family::LambdaAll, 1), Err(SampleError::ZeroCount { .. })));
}

#[test]
fn batches_are_deterministic() {
    let spec = SamplerSpec::recursive(Family::LambdaUnaryHeight(3), 40, 11);
    let a = sample_batch(&spec, 30).unwrap();
    let b = sample_batch(&spec, 30).unwrap();
    assert_eq!(a, b);
    let other = sample_batch(&SamplerSpec { seed: 12, ..spec.clone() }, 30).unwrap();
    assert_ne!(a, other);
    let bz = SamplerSpec::boltzmann(Family::LambdaUnaryHeight(2), Tuning::Singular, 20, 60, 5);
    assert_eq!(sample_batch(&bz, 10).unwrap(), sample_batch(&bz, 10).unwrap());
}

#[test]
fn boltzmann_conditioned_on_size_is_uniform() {
    let fam = Family::LambdaUnaryHeight(3);
    let s = BoltzmannSampler::new(fam, &Tuning::Singular, 256).unwrap();
    let pool = family_members(fam, 4);
    assert_eq!(pool.len(), 4);
    let mut rng = stream(99, 0);
    let draws = (0..20_000).map(|_| s.sample_window(&mut rng, 4, 4, 1000, 1_000_000).unwrap().0);
    let p = uniformity_p(&pool, draws);
    assert!(p > 0.001, "p = {p}");
}

#[test]
fn boltzmann_draws_validate() {
    for fam in [
        Family::LambdaUnaryHeight(4),
        Family::LambdaBindingLength(3),
        Family::MotzkinHeightAtMost(3),
        Family::MotzkinHeightExact(2),
    ] {
        let s = BoltzmannSampler::new(fam, &Tuning::Singular, 256).unwrap();
        let mut rng = stream(5, 5);
        for _ in 0..300 {
            if let Ok(t) = s.sample_once(&mut rng, 100_000) {
                assert!(validate(&t, fam), "{fam}: {t}");
            }
        }
    }
}

#[test]
fn branch_probabilities_sum_to_one() {
    let tol = Float::with_val(256, 1) >> PROBABILITY_TOLERANCE_BITS;
    for fam in [
        Family::LambdaUnaryHeight(1),
        Family::LambdaUnaryHeight(8),
        Family::LambdaUnaryHeight(20),
        Family::LambdaBindingLength(1),
        Family::LambdaBindingLength(7),
        Family::MotzkinHeightAtMost(4),
        Family::MotzkinHeightExact(3),
    ] {
        let xs = [singular_tuning(fam, 256).unwrap(), Float::with_val(256, 0.05)];
        for x in &xs {
            for r in boltzmann_probabilities(fam, x).unwrap() {
                assert!(Float::with_val(256, r.sum() - 1u32).abs() <= tol, "{fam} level {}", r.level);
                for p in [&r.p_stop, &r.p_unary, &r.p_binary] {
                    assert!(*p >= 0 && *p <= 1);
                }
            }
        }
    }
}

#[test]
fn tuning_above_the_singularity_is_rejected() {
    let fam = Family::LambdaUnaryHeight(2);
    let rho = find_rho(&RadicalChain::new(fam).unwrap(), 128).unwrap();
    let x = Float::with_val(128, &rho * 1.01f64);
    assert!(matches!(boltzmann_probabilities(fam, &x), Err(SampleError::Tuning { .. })));
    assert!(matches!(
        BoltzmannSampler::new(Family::LambdaAll, &Tuning::Singular, 128),
        Err(SampleError::Unsupported(_))
    ));
}

#[test]
fn stop_probability_at_the_root_is_zero() {
    let fam = Family::LambdaUnaryHeight(8);
    let rows = boltzmann_probabilities(fam, &singular_tuning(fam, 256).unwrap()).unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows[0].p_stop.is_zero());
    // the top state has no unary branch
    assert!(rows[8].p_unary.is_zero());
    let mut csv = Vec::new();
    write_probability_csv(&rows, 10, &mut csv).unwrap();
    let csv = String::from_utf8(csv).unwrap();
    assert!(csv.starts_with("level,p_stop,p_unary,p_binary\n0,0,"));
    assert_eq!(csv.lines().count(), 10);
}

#[test]
fn boltzmann_mean_size_matches_the_derivative() {
    for fam in [Family::LambdaUnaryHeight(2), Family::LambdaBindingLength(2), Family::MotzkinHeightAtMost(2)] {
        let rho = find_rho(&RadicalChain::new(fam).unwrap(), 256).unwrap();
        let x = Float::with_val(256, &rho * 0.9f64);
        let expect = mean_size(fam, &x).unwrap().to_f64();
        let s = BoltzmannSampler::at(fam, x).unwrap();
        let mut rng = stream(31, 0);
        let total: usize = (0..10_000).map(|_| s.sample_once(&mut rng, usize::MAX).unwrap().size()).sum();
        let mean = total as f64 / 10_000.0;
        assert!((mean / expect - 1.0).abs() < 0.1, "{fam}: mean {mean}, expected {expect}");
    }
}

#[test]
fn rejection_statistics_are_reported() {
    let s = BoltzmannSampler::new(Family::LambdaUnaryHeight(2), &Tuning::Singular, 128).unwrap();
    match s.sample_window(&mut stream(0, 0), 5000, 5000, 10, 50) {
        Err(SampleError::Rejected(st)) => {
            assert_eq!(st.attempts, 50);
            assert_eq!(st.too_small + st.too_large + st.guard_aborts, 50);
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(s.sample_window(&mut stream(0, 0), 9, 3, 10, 5), Err(SampleError::EmptyWindow { .. })));
}

#[test]
fn histogram_small_sizes() {
    let h = unary_height_histogram(2).unwrap();
    assert_eq!(h.probability(1), 1);
    for n in 2..=60 {
        let h = unary_height_histogram(n).unwrap();
        let sum: Integer = h.exact.iter().sum();
        assert_eq!(sum, h.total, "n={n}");
        assert_eq!(h.total, *count_family(Family::LambdaAll, n).unwrap().count(n));
    }
}

#[test]
fn histogram_matches_enumeration() {
    for n in 2..=9 {
        let h = unary_height_histogram(n).unwrap();
        let mut by_height = vec![0u64; n];
        for t in closed_terms(n) {
            by_height[stats(&t).unary_height] += 1;
        }
        let got: Vec<u64> = h.exact.iter().map(|v| v.to_u64().unwrap()).collect();
        assert_eq!(got, by_height, "n={n}");
    }
}

#[test]
fn histogram_at_198_concentrates_between_25_and_50() {
    let h = unary_height_histogram(198).unwrap();
    let mass: f64 = (25..=50).map(|k| h.probability(k).to_f64()).sum();
    assert!(mass > 0.5, "{mass}");
    let sum: Integer = h.exact.iter().sum();
    assert_eq!(sum, h.total);
}

#[test]
fn profiles_conserve_nodes() {
    let spec = SamplerSpec::recursive(Family::LambdaAll, 200, 8);
    let agg = aggregate_profiles(&spec, 500).unwrap();
    for kind in [ProfileKind::Depth, ProfileKind::UnaryLevel] {
        assert_eq!(agg.totals(kind).iter().sum::<u64>(), 500 * 200);
        let mean: f64 = agg.mean(kind).iter().sum();
        assert!((mean - 200.0).abs() < 1e-9);
    }
    assert_eq!(agg, aggregate_profiles(&spec, 500).unwrap());
    let mut csv = Vec::new();
    write_profile_csv(&agg, ProfileKind::Depth, &mut csv).unwrap();
    assert!(String::from_utf8(csv).unwrap().starts_with("level,mean_nodes\n0,1.0000000000\n"));
}
