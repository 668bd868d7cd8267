use discrete_ensemble::kernel::density_exact;
use discrete_ensemble::oracle::{
    enumerate_measure, estimate_density, estimate_pair, mcmc_sample, mcmc_sample_many, EnumerationConfig, McmcConfig,
};
use discrete_ensemble::Alphas;

/// Largest z-score over entries whose exact value exceeds the 1e-3 floor used by the
/// acceptance suite; entries below it are seen too rarely for a Gaussian error bar.
fn max_z(mean: &[f64], stderr: &[f64], usable: &[bool], exact: impl Fn(usize) -> f64) -> f64 {
    let mut worst = 0.0f64;
    for p in 0..mean.len() {
        if usable[p] && exact(p).abs() > 1e-3 {
            worst = worst.max((mean[p] - exact(p)).abs() / stderr[p]);
        }
    }
    worst
}

#[test]
fn single_level_is_geometric() {
    let alpha = 0.6;
    let chain = mcmc_sample(&Alphas::new(vec![alpha]).unwrap(), &McmcConfig::new(1_000_000, 11)).unwrap();
    let est = estimate_density(&chain);
    assert!(est.usable);
    let z = max_z(&est.mean, &est.stderr, &est.entry_usable, |p| (1.0 - alpha) * alpha.powi(p as i32));
    assert!(z <= 3.0, "max z {z}");
}

#[test]
fn two_levels_match_enumeration() {
    let alphas = Alphas::new(vec![0.5, 0.25]).unwrap();
    let oracle = enumerate_measure(&alphas, &EnumerationConfig::default()).unwrap();
    let chain = mcmc_sample(&alphas, &McmcConfig::new(1_000_000, 12)).unwrap();
    let est = estimate_density(&chain);
    let z = max_z(&est.mean, &est.stderr, &est.entry_usable, |p| oracle.density_at(p));
    assert!(z <= 3.0, "max z {z}");
}

#[test]
fn error_bars_shrink_like_inverse_root_steps() {
    let alphas = Alphas::equal(0.4, 3).unwrap();
    let lengths = [50_000u64, 200_000, 800_000, 3_200_000];
    let errs: Vec<f64> = lengths
        .iter()
        .map(|&s| {
            let est = estimate_density(&mcmc_sample(&alphas, &McmcConfig::new(s, 13)).unwrap());
            // Average over the well-sampled sites to damp jackknife noise.
            est.stderr[..6].iter().sum::<f64>() / 6.0
        })
        .collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((1.4..=2.9).contains(&ratio), "ratio {ratio} for errors {errs:?}");
    }
}

#[test]
fn pair_estimator_matches_enumeration() {
    let alphas = Alphas::new(vec![0.5, 0.25]).unwrap();
    let oracle = enumerate_measure(&alphas, &EnumerationConfig::default()).unwrap();
    let mut cfg = McmcConfig::new(1_000_000, 14);
    cfg.pair_window = Some((0, 4));
    let chain = mcmc_sample(&alphas, &cfg).unwrap();
    let est = estimate_pair(&chain).unwrap();
    let z = max_z(&est.mean, &est.stderr, &est.entry_usable, |i| oracle.connected(i / 5, i % 5));
    assert!(z <= 3.0, "max z {z}");
}

#[test]
fn seeded_chains_are_reproducible() {
    let alphas = Alphas::equal(0.3, 4).unwrap();
    let cfg = McmcConfig::new(20_000, 99);
    let a = mcmc_sample(&alphas, &cfg).unwrap();
    let b = mcmc_sample_many(&alphas, &cfg, &[99, 100]).unwrap();
    assert_eq!(a.block_occ, b[0].block_occ);
    assert_ne!(b[0].block_occ, b[1].block_occ);
    let est = estimate_density(&a);
    assert!((est.mean.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    assert!((est.mean[0] - density_exact(0, &alphas)).abs() < 0.02);
}
