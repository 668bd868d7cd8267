//! Ground-truth engines that use nothing but the measure itself.
//!
//! [`enumerate_measure`] sums `Δ(h)·χ_h(α)` over every strictly decreasing
//! level tuple below a cutoff; [`mcmc_sample`] runs a Metropolis chain on the
//! same weights. Neither touches the series or kernel formulas they validate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::charpoly::{log_measure_weight, measure_weight_with, AlphaSpec, CharacterBackend, LevelConfig};
use crate::error::{EnsembleError, Result};

/// Default cap on the number of configurations a single enumeration may visit.
pub const DEFAULT_BUDGET: f64 = 2.0e7;
/// Multiplier applied to the shell-ratio tail extrapolation.
pub const TAIL_PADDING: f64 = 10.0;
const SHELL_BATCH: usize = 16;

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    /// Fixed cutoff on the largest level; `None` grows it until `tail_target` is met.
    pub h_max: Option<usize>,
    pub tail_target: f64,
    pub budget: f64,
    pub backend: CharacterBackend,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self { h_max: None, tail_target: 1e-12, budget: DEFAULT_BUDGET, backend: CharacterBackend::Auto }
    }
}

impl EnumerationConfig {
    pub fn fixed(h_max: usize) -> Self {
        Self { h_max: Some(h_max), ..Self::default() }
    }
}

/// Truncated sums over all configurations with every level `<= h_max`.
#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub n: usize,
    pub h_max: usize,
    /// Truncated partition function.
    pub z: f64,
    /// `ρ(p) = ⟨#levels at p⟩ / N` for `p = 0..=h_max`.
    pub density: Vec<f64>,
    /// `⟨Σ_{k≠l} δ_{p,h_k} δ_{q,h_l}⟩`, row-major over `0..=h_max` squared.
    pub pair_moment: Vec<f64>,
    /// Extrapolated probability mass of configurations above the cutoff.
    pub tail_estimate: f64,
    /// Unnormalized mass of configurations whose top level equals `h`.
    pub shell_mass: Vec<f64>,
    pub configs: u64,
}

impl EnumerationResult {
    pub fn sites(&self) -> usize {
        self.h_max + 1
    }

    pub fn density_at(&self, p: usize) -> f64 {
        self.density.get(p).copied().unwrap_or(0.0)
    }

    pub fn pair_moment_at(&self, p: usize, q: usize) -> f64 {
        if p > self.h_max || q > self.h_max {
            0.0
        } else {
            self.pair_moment[p * self.sites() + q]
        }
    }

    /// Connected correlator `⟨Σ_{k≠l} δ δ⟩ − ⟨n_p⟩⟨n_q⟩` in occupation counts.
    pub fn connected(&self, p: usize, q: usize) -> f64 {
        let n = self.n as f64;
        self.pair_moment_at(p, q) - n * n * self.density_at(p) * self.density_at(q)
    }
}

#[derive(Clone)]
struct Shell {
    mass: f64,
    occ: Vec<f64>,
    pair: Vec<f64>,
    configs: u64,
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Sums every configuration whose top level is exactly `top`.
fn enumerate_shell(top: usize, alphas: &AlphaSpec<f64>, backend: CharacterBackend) -> Result<Shell> {
    let n = alphas.count();
    let sites = top + 1;
    let mut shell = Shell { mass: 0.0, occ: vec![0.0; sites], pair: vec![0.0; sites * sites], configs: 0 };
    if top + 1 < n {
        return Ok(shell);
    }
    // rest[i] are the remaining N-1 levels, strictly decreasing below `top`.
    let mut rest: Vec<usize> = (0..n - 1).rev().collect();
    let mut levels = vec![0i64; n];
    loop {
        levels[0] = top as i64;
        for (slot, &r) in levels[1..].iter_mut().zip(&rest) {
            *slot = r as i64;
        }
        let w = measure_weight_with(&LevelConfig::new(levels.clone())?, alphas, backend)?;
        shell.mass += w;
        shell.configs += 1;
        for (i, &hi) in levels.iter().enumerate() {
            shell.occ[hi as usize] += w;
            for &hj in &levels[i + 1..] {
                shell.pair[hi as usize * sites + hj as usize] += w;
                shell.pair[hj as usize * sites + hi as usize] += w;
            }
        }
        if !advance_combination(&mut rest, top) {
            break;
        }
    }
    Ok(shell)
}

/// Next strictly decreasing tuple with entries `< bound`, in colex order.
fn advance_combination(c: &mut [usize], bound: usize) -> bool {
    let m = c.len();
    // c[m-1] < c[m-2] < ... < c[0] < bound; increment the smallest slot that can move.
    for i in (0..m).rev() {
        let cap = if i == 0 { bound } else { c[i - 1] };
        if c[i] + 1 < cap {
            c[i] += 1;
            for (j, slot) in c[i + 1..].iter_mut().enumerate() {
                *slot = m - i - 2 - j;
            }
            return true;
        }
    }
    false
}

fn tail_from_shells(shells: &[f64], z: f64, alpha_max: f64) -> f64 {
    let h = shells.len() - 1;
    if h == 0 || shells[h] == 0.0 {
        return if shells[h] == 0.0 && h > 0 { 0.0 } else { f64::INFINITY };
    }
    if shells[h - 1] == 0.0 {
        return f64::INFINITY;
    }
    let r = (shells[h] / shells[h - 1]).max(alpha_max);
    if r >= 1.0 {
        return f64::INFINITY;
    }
    TAIL_PADDING * shells[h] * r / (1.0 - r) / z
}

/// Exact truncated enumeration of the measure for small `N`.
pub fn enumerate_measure(alphas: &AlphaSpec<f64>, config: &EnumerationConfig) -> Result<EnumerationResult> {
    let n = alphas.count();
    if let Some(h) = config.h_max {
        if h + 1 < n {
            return Err(EnsembleError::Domain {
                value: h as f64,
                reason: format!("cutoff must leave room for {n} distinct levels"),
            });
        }
        let cost = binomial(h + 1, n);
        if cost > config.budget {
            return Err(EnsembleError::BudgetExceeded { configs: cost, budget: config.budget });
        }
    }
    let alpha_max = alphas.max_value();
    let mut shells: Vec<f64> = Vec::new();
    let mut occ: Vec<f64> = Vec::new();
    let mut pair: Vec<f64> = Vec::new();
    let mut z = 0.0;
    let mut configs = 0u64;
    let mut next = 0usize;
    loop {
        let stop = match config.h_max {
            Some(h) => h + 1,
            None => next + SHELL_BATCH,
        };
        let batch: Vec<Shell> = (next..stop)
            .into_par_iter()
            .map(|top| enumerate_shell(top, alphas, config.backend))
            .collect::<Result<_>>()?;
        for shell in batch {
            let sites = shell.occ.len();
            resize_square(&mut pair, occ.len(), sites);
            occ.resize(sites, 0.0);
            for (a, b) in occ.iter_mut().zip(&shell.occ) {
                *a += b;
            }
            for (a, b) in pair.iter_mut().zip(&shell.pair) {
                *a += b;
            }
            z += shell.mass;
            configs += shell.configs;
            shells.push(shell.mass);
        }
        next = stop;
        let tail = tail_from_shells(&shells, z, alpha_max);
        if config.h_max.is_some() || tail < config.tail_target {
            break;
        }
        let projected = binomial(next + SHELL_BATCH, n);
        if projected > config.budget {
            return Err(EnsembleError::BudgetExceeded { configs: projected, budget: config.budget });
        }
    }
    let h_max = next - 1;
    let nf = n as f64;
    Ok(EnumerationResult {
        n,
        h_max,
        z,
        density: occ.iter().map(|o| o / z / nf).collect(),
        pair_moment: pair.iter().map(|v| v / z).collect(),
        tail_estimate: tail_from_shells(&shells, z, alpha_max),
        shell_mass: shells,
        configs,
    })
}

/// Grows a row-major `old × old` matrix to `new × new`, keeping entries in place.
fn resize_square(m: &mut Vec<f64>, old: usize, new: usize) {
    if new <= old {
        return;
    }
    let mut out = vec![0.0; new * new];
    for i in 0..old {
        out[i * new..i * new + old].copy_from_slice(&m[i * old..(i + 1) * old]);
    }
    *m = out;
}

#[derive(Clone, Debug)]
pub struct McmcConfig {
    pub steps: u64,
    pub seed: u64,
    pub burn_in_fraction: f64,
    /// Number of equal-length blocks used by the jackknife.
    pub blocks: usize,
    /// Inclusive site range over which pair counts are recorded.
    pub pair_window: Option<(usize, usize)>,
    /// Starting configuration; defaults to the packed state `N-1, ..., 0`.
    pub initial: Option<LevelConfig>,
}

impl McmcConfig {
    pub fn new(steps: u64, seed: u64) -> Self {
        Self { steps, seed, burn_in_fraction: 0.1, blocks: 20, pair_window: None, initial: None }
    }
}

/// State and accumulated histograms of a Metropolis chain.
#[derive(Clone, Debug)]
pub struct McmcChain {
    pub seed: u64,
    pub steps: u64,
    pub burn_in: u64,
    pub accepted: u64,
    pub current: LevelConfig,
    pub n: usize,
    /// Occupation counts per block: `block_occ[b][p]`, one count per recorded step.
    pub block_occ: Vec<Vec<u64>>,
    pub block_len: Vec<u64>,
    pub pair_window: Option<(usize, usize)>,
    /// Ordered-pair counts `k≠l` per block over the window, row-major.
    pub block_pair: Vec<Vec<u64>>,
}

impl McmcChain {
    pub fn recorded(&self) -> u64 {
        self.block_len.iter().sum()
    }

    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.steps.max(1) as f64
    }
}

/// `ln(w(h + δ e_k) / w(h))` for equal alphas, in O(N).
pub fn equal_alpha_log_ratio(levels: &[i64], k: usize, delta: i64, alpha: f64) -> f64 {
    let hk = levels[k];
    let mut acc = delta as f64 * alpha.ln();
    for (j, &hj) in levels.iter().enumerate() {
        if j != k {
            acc += 2.0 * (((hk + delta - hj) as f64) / ((hk - hj) as f64)).abs().ln();
        }
    }
    acc
}

/// Runs a Metropolis chain with uniform single-level ±1 proposals.
pub fn mcmc_sample(alphas: &AlphaSpec<f64>, config: &McmcConfig) -> Result<McmcChain> {
    let n = alphas.count();
    let mut cur = match &config.initial {
        Some(c) if c.count() == n => c.clone(),
        Some(c) => return Err(EnsembleError::DimensionMismatch { expected: n, got: c.count() }),
        None => LevelConfig::packed(n),
    };
    if config.blocks == 0 || !(0.0..1.0).contains(&config.burn_in_fraction) {
        return Err(EnsembleError::Config("need at least one block and burn-in fraction in [0, 1)".into()));
    }
    let equal = alphas.common_value().copied();
    let mut h: Vec<i64> = cur.levels().to_vec();
    let mut log_w = if equal.is_none() { log_measure_weight(&cur, alphas)? } else { 0.0 };
    let burn_in = (config.steps as f64 * config.burn_in_fraction).round() as u64;
    let recorded = config.steps - burn_in;
    let block_size = recorded.div_ceil(config.blocks as u64).max(1);
    let window_sites = config.pair_window.map(|(a, b)| b + 1 - a).unwrap_or(0);
    let mut block_occ: Vec<Vec<u64>> = Vec::new();
    let mut block_len: Vec<u64> = Vec::new();
    let mut block_pair: Vec<Vec<u64>> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut accepted = 0u64;
    for step in 0..config.steps {
        let k = rng.random_range(0..n);
        let delta: i64 = if rng.random::<bool>() { 1 } else { -1 };
        let target = h[k] + delta;
        let ordered = target >= 0
            && (k == 0 || target < h[k - 1])
            && (k + 1 == n || target > h[k + 1]);
        if ordered {
            let log_ratio = match equal {
                Some(a) => equal_alpha_log_ratio(&h, k, delta, a),
                None => {
                    let mut trial = h.clone();
                    trial[k] = target;
                    log_measure_weight(&LevelConfig::new(trial)?, alphas)? - log_w
                }
            };
            let u: f64 = rng.random();
            if log_ratio >= 0.0 || u.ln() < log_ratio {
                h[k] = target;
                if equal.is_none() {
                    log_w += log_ratio;
                }
                accepted += 1;
            }
        }
        if step >= burn_in {
            let b = ((step - burn_in) / block_size) as usize;
            if b == block_occ.len() {
                block_occ.push(Vec::new());
                block_len.push(0);
                block_pair.push(vec![0; window_sites * window_sites]);
            }
            block_len[b] += 1;
            let occ = &mut block_occ[b];
            let top = h[0] as usize;
            if occ.len() <= top {
                occ.resize(top + 1, 0);
            }
            for &x in &h {
                occ[x as usize] += 1;
            }
            if let Some((lo, hi)) = config.pair_window {
                let inside: Vec<usize> =
                    h.iter().map(|&x| x as usize).filter(|&x| x >= lo && x <= hi).collect();
                let pb = &mut block_pair[b];
                for (i, &x) in inside.iter().enumerate() {
                    for &y in &inside[i + 1..] {
                        pb[(x - lo) * window_sites + (y - lo)] += 1;
                        pb[(y - lo) * window_sites + (x - lo)] += 1;
                    }
                }
            }
        }
    }
    cur = LevelConfig::new(h)?;
    Ok(McmcChain {
        seed: config.seed,
        steps: config.steps,
        burn_in,
        accepted,
        current: cur,
        n,
        block_occ,
        block_len,
        pair_window: config.pair_window,
        block_pair,
    })
}

/// Runs independent chains with the given seeds concurrently.
pub fn mcmc_sample_many(alphas: &AlphaSpec<f64>, config: &McmcConfig, seeds: &[u64]) -> Result<Vec<McmcChain>> {
    seeds
        .par_iter()
        .map(|&seed| mcmc_sample(alphas, &McmcConfig { seed, ..config.clone() }))
        .collect()
}

/// Point estimates with block-jackknife standard errors.
#[derive(Clone, Debug)]
pub struct Estimate {
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
    /// False when too few blocks were recorded for the error bars to mean anything.
    pub usable: bool,
    /// Per entry: the value varied between blocks, so its error bar carries information.
    /// A site that was occupied (or empty) in every recorded state has a zero jackknife
    /// variance that says nothing about how rare the other outcome is.
    pub entry_usable: Vec<bool>,
}

/// Fewest jackknife blocks for which error bars are reported as usable.
pub const MIN_USABLE_BLOCKS: usize = 8;

/// Delete-one-block jackknife for ratio estimators `num / den`.
fn jackknife(block_num: &[Vec<f64>], block_den: &[f64], width: usize) -> Estimate {
    let b = block_den.len();
    let mut total = vec![0.0; width];
    for row in block_num {
        for (t, v) in total.iter_mut().zip(row) {
            *t += v;
        }
    }
    let den_total: f64 = block_den.iter().sum();
    let mean: Vec<f64> = total.iter().map(|t| t / den_total).collect();
    let mut var = vec![0.0; width];
    if b > 1 {
        let mut loo = vec![vec![0.0; width]; b];
        for (i, row) in block_num.iter().enumerate() {
            let d = den_total - block_den[i];
            for p in 0..width {
                loo[i][p] = (total[p] - row.get(p).copied().unwrap_or(0.0)) / d;
            }
        }
        for p in 0..width {
            let avg = loo.iter().map(|r| r[p]).sum::<f64>() / b as f64;
            var[p] = (b as f64 - 1.0) / b as f64 * loo.iter().map(|r| (r[p] - avg).powi(2)).sum::<f64>();
        }
    }
    finish(mean, var, b)
}

fn finish(mean: Vec<f64>, var: Vec<f64>, blocks: usize) -> Estimate {
    let usable = blocks >= MIN_USABLE_BLOCKS;
    Estimate {
        mean,
        stderr: var.iter().map(|v| v.sqrt()).collect(),
        usable,
        entry_usable: var.iter().map(|&v| usable && v > 0.0).collect(),
    }
}

/// Density `ρ(p)` from the occupation histogram; the means sum to one exactly.
pub fn estimate_density(chain: &McmcChain) -> Estimate {
    estimate_density_pooled(std::slice::from_ref(chain))
}

/// Density from several independent chains, pooling all their blocks in one jackknife.
pub fn estimate_density_pooled(chains: &[McmcChain]) -> Estimate {
    let blocks = || chains.iter().flat_map(|c| c.block_occ.iter().map(move |row| (c.n, row)));
    let width = blocks().map(|(_, r)| r.len()).max().unwrap_or(0);
    let num: Vec<Vec<f64>> = blocks()
        .map(|(n, row)| {
            let mut r: Vec<f64> = row.iter().map(|&c| c as f64 / n as f64).collect();
            r.resize(width, 0.0);
            r
        })
        .collect();
    let den: Vec<f64> = chains.iter().flat_map(|c| c.block_len.iter().map(|&l| l as f64)).collect();
    jackknife(&num, &den, width)
}

/// Smallest density difference a histogram over `samples` recorded states can resolve.
pub fn histogram_resolution(n: usize, samples: u64) -> f64 {
    1.0 / (n as f64 * samples.max(1) as f64)
}

/// Connected pair correlator over the recorded window, row-major.
pub fn estimate_pair(chain: &McmcChain) -> Result<Estimate> {
    let (lo, hi) = chain
        .pair_window
        .ok_or_else(|| EnsembleError::Config("chain was run without a pair window".into()))?;
    let w = hi + 1 - lo;
    let den: Vec<f64> = chain.block_len.iter().map(|&l| l as f64).collect();
    let den_total: f64 = den.iter().sum();
    let b = den.len();
    // Per-block moments: pair counts and single occupations within the window.
    let occ = |row: &Vec<u64>, p: usize| row.get(p).copied().unwrap_or(0) as f64;
    let connected = |pair: &[f64], single: &[f64], d: f64| -> Vec<f64> {
        let mut out = vec![0.0; w * w];
        for i in 0..w {
            for j in 0..w {
                out[i * w + j] = pair[i * w + j] / d - single[i] * single[j] / (d * d);
            }
        }
        out
    };
    let mut pair_tot = vec![0.0; w * w];
    let mut single_tot = vec![0.0; w];
    for (bp, bo) in chain.block_pair.iter().zip(&chain.block_occ) {
        for (t, &v) in pair_tot.iter_mut().zip(bp) {
            *t += v as f64;
        }
        for (i, s) in single_tot.iter_mut().enumerate() {
            *s += occ(bo, lo + i);
        }
    }
    let mean = connected(&pair_tot, &single_tot, den_total);
    let mut var = vec![0.0; w * w];
    if b > 1 {
        let loo: Vec<Vec<f64>> = (0..b)
            .map(|k| {
                let pair: Vec<f64> =
                    pair_tot.iter().zip(&chain.block_pair[k]).map(|(t, &v)| t - v as f64).collect();
                let single: Vec<f64> =
                    (0..w).map(|i| single_tot[i] - occ(&chain.block_occ[k], lo + i)).collect();
                connected(&pair, &single, den_total - den[k])
            })
            .collect();
        for c in 0..w * w {
            let avg = loo.iter().map(|r| r[c]).sum::<f64>() / b as f64;
            var[c] = (b as f64 - 1.0) / b as f64 * loo.iter().map(|r| (r[c] - avg).powi(2)).sum::<f64>();
        }
    }
    Ok(finish(mean, var, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_walk_visits_every_combination() {
        let mut c = vec![1, 0];
        let mut seen = vec![c.clone()];
        while advance_combination(&mut c, 5) {
            assert!(c[0] > c[1] && c[0] < 5);
            seen.push(c.clone());
        }
        assert_eq!(seen.len(), 10);
        let mut dedup = seen.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 10);
    }

    #[test]
    fn single_level_is_geometric() {
        let a = AlphaSpec::new(vec![0.5]).unwrap();
        let r = enumerate_measure(&a, &EnumerationConfig::fixed(60)).unwrap();
        for p in 0..=60 {
            let want = 0.5 * 0.5f64.powi(p as i32);
            // Truncation renormalizes by 1 - 2^-61.
            assert!((r.density[p] - want).abs() < 1e-15, "p={p}");
        }
        assert!(r.connected(3, 5) + r.density[3] * r.density[5] < 1e-18);
    }

    #[test]
    fn backends_agree() {
        let a = AlphaSpec::new(vec![0.5, 0.25, 0.4]).unwrap();
        let det = enumerate_measure(
            &a,
            &EnumerationConfig { backend: CharacterBackend::Determinant, ..EnumerationConfig::fixed(12) },
        )
        .unwrap();
        let gt = enumerate_measure(&a, &EnumerationConfig { backend: CharacterBackend::Gt, ..EnumerationConfig::fixed(12) })
            .unwrap();
        assert!((det.z - gt.z).abs() < 1e-12 * det.z);
        for p in 0..=12 {
            assert!((det.density[p] - gt.density[p]).abs() < 1e-13);
            for q in 0..=12 {
                assert!((det.pair_moment_at(p, q) - gt.pair_moment_at(p, q)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn adaptive_cutoff_meets_target_and_normalizes() {
        let a = AlphaSpec::new(vec![0.2, 0.4, 0.6]).unwrap();
        let r = enumerate_measure(&a, &EnumerationConfig::default()).unwrap();
        assert!(r.tail_estimate < 1e-12);
        let total: f64 = r.density.iter().sum();
        assert!((total - 1.0).abs() < 1e-13);
        let pair_total: f64 = r.pair_moment.iter().sum();
        assert!((pair_total - 6.0).abs() < 1e-12);
    }

    #[test]
    fn tail_estimate_shrinks_geometrically() {
        let a = AlphaSpec::new(vec![0.5, 0.25]).unwrap();
        let mut prev = f64::INFINITY;
        for h in [20usize, 21, 30, 31, 60, 61] {
            let t = enumerate_measure(&a, &EnumerationConfig::fixed(h)).unwrap().tail_estimate;
            assert!(t < prev);
            prev = t;
        }
        let t60 = enumerate_measure(&a, &EnumerationConfig::fixed(60)).unwrap();
        let t61 = enumerate_measure(&a, &EnumerationConfig::fixed(61)).unwrap();
        let ratio = t61.tail_estimate / t60.tail_estimate;
        assert!(ratio <= 0.5 * 1.05, "ratio {ratio}");
        // The padded estimate must dominate the actual mass beyond the cutoff.
        let far = enumerate_measure(&a, &EnumerationConfig::fixed(120)).unwrap();
        let beyond: f64 = far.shell_mass[41..].iter().sum::<f64>() / far.z;
        let at40 = enumerate_measure(&a, &EnumerationConfig::fixed(40)).unwrap();
        assert!(at40.tail_estimate > beyond);
    }

    #[test]
    fn budget_is_enforced() {
        let a = AlphaSpec::equal(0.5, 4).unwrap();
        let cfg = EnumerationConfig { budget: 1e3, ..EnumerationConfig::fixed(40) };
        assert!(matches!(enumerate_measure(&a, &cfg), Err(EnsembleError::BudgetExceeded { .. })));
    }

    #[test]
    fn incremental_ratio_matches_full_weight() {
        let alpha = 0.3;
        let a = AlphaSpec::equal(alpha, 6).unwrap();
        let levels = vec![20i64, 14, 9, 8, 3, 0];
        let base = log_measure_weight(&LevelConfig::new(levels.clone()).unwrap(), &a).unwrap();
        for k in 0..6 {
            for delta in [-1i64, 1] {
                let mut t = levels.clone();
                t[k] += delta;
                let Ok(cfg) = LevelConfig::new(t) else { continue };
                let full = log_measure_weight(&cfg, &a).unwrap() - base;
                let inc = equal_alpha_log_ratio(&levels, k, delta, alpha);
                assert!((full - inc).abs() < 1e-12, "k={k} d={delta}");
            }
        }
    }

    #[test]
    fn chains_are_reproducible() {
        let a = AlphaSpec::new(vec![0.5, 0.25]).unwrap();
        let cfg = McmcConfig { pair_window: Some((0, 5)), ..McmcConfig::new(20_000, 7) };
        let c1 = mcmc_sample(&a, &cfg).unwrap();
        let c2 = mcmc_sample(&a, &cfg).unwrap();
        assert_eq!(c1.block_occ, c2.block_occ);
        assert_eq!(c1.block_pair, c2.block_pair);
        let d = estimate_density(&c1);
        assert!((d.mean.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
