//! GL(N) characters of diagonal elements and the measure weight `Δ(h)·χ_h(α)`.
//!
//! Three independent evaluations are provided: a sum over Gelfand–Tsetlin
//! patterns, the Weyl determinant ratio, and the equal-α dimension formula.

use crate::error::{EnsembleError, Result};
use crate::scalar::{from_i64, powu, to_f64, Scalar};

/// Pairs of alphas closer than this are treated as coincident by the
/// determinant route.
pub const DEGENERACY_THRESHOLD: f64 = 1e-8;

/// Ensemble parameters `α_1..α_N`, each in the open interval (0, 1).
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaSpec<T = f64> {
    values: Vec<T>,
    equal: bool,
}

impl<T: Scalar> AlphaSpec<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(EnsembleError::EmptyEnsemble);
        }
        for v in &values {
            if *v <= T::zero() || *v >= T::one() {
                return Err(EnsembleError::AlphaOutOfRange(to_f64(v)));
            }
        }
        let equal = values.iter().all(|v| *v == values[0]);
        Ok(Self { values, equal })
    }

    /// Shorthand for `n` copies of a single `alpha`.
    pub fn equal(alpha: T, n: usize) -> Result<Self> {
        Self::new(vec![alpha; n])
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn count(&self) -> usize {
        self.values.len()
    }

    pub fn is_equal(&self) -> bool {
        self.equal
    }

    /// The common value when all alphas coincide.
    pub fn common_value(&self) -> Option<&T> {
        self.equal.then(|| &self.values[0])
    }

    pub fn max_value(&self) -> T {
        self.values
            .iter()
            .skip(1)
            .fold(self.values[0].clone(), |m, v| if *v > m { v.clone() } else { m })
    }

    /// First pair `(i, j)` closer than `threshold`, if any.
    pub fn near_coincident_pair(&self, threshold: f64) -> Option<(usize, usize)> {
        let n = self.values.len();
        for i in 0..n {
            for j in i + 1..n {
                if to_f64(&(self.values[i].clone() - self.values[j].clone())).abs() < threshold {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn require_distinct(&self) -> Result<()> {
        match self.near_coincident_pair(DEGENERACY_THRESHOLD) {
            Some((i, j)) => {
                Err(EnsembleError::DegenerateAlphas { i, j, threshold: DEGENERACY_THRESHOLD })
            }
            None => Ok(()),
        }
    }

    /// Re-expresses the parameters in another scalar type via `f64`.
    pub fn convert<U: Scalar>(&self) -> AlphaSpec<U> {
        AlphaSpec {
            values: self
                .values
                .iter()
                .map(|v| U::from_f64(to_f64(v)).expect("finite alpha"))
                .collect(),
            equal: self.equal,
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.values.iter().map(to_f64).collect()
    }
}

/// Highest weights `m_k` to levels `h_k = m_k + N - k` (k is 1-based).
pub fn weights_to_levels(weights: &[i64]) -> Vec<i64> {
    let n = weights.len() as i64;
    weights.iter().enumerate().map(|(i, m)| m + n - 1 - i as i64).collect()
}

/// Levels `h_k` to highest weights `m_k = h_k + k - N`.
pub fn levels_to_weights(levels: &[i64]) -> Vec<i64> {
    let n = levels.len() as i64;
    levels.iter().enumerate().map(|(i, h)| h + i as i64 + 1 - n).collect()
}

fn check_weights(weights: &[i64]) -> Result<()> {
    if weights.is_empty() {
        return Err(EnsembleError::EmptyEnsemble);
    }
    let sorted = weights.windows(2).all(|w| w[0] >= w[1]);
    if !sorted || weights.iter().any(|&m| m < 0) {
        return Err(EnsembleError::InvalidWeights(weights.to_vec()));
    }
    Ok(())
}

/// Strictly decreasing non-negative integer levels `h_1 > ... > h_N >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelConfig {
    h: Vec<i64>,
}

impl LevelConfig {
    pub fn new(h: Vec<i64>) -> Result<Self> {
        if h.is_empty() {
            return Err(EnsembleError::EmptyEnsemble);
        }
        let strict = h.windows(2).all(|w| w[0] > w[1]);
        if !strict || h.iter().any(|&x| x < 0) {
            return Err(EnsembleError::InvalidLevels(h));
        }
        Ok(Self { h })
    }

    pub fn from_weights(weights: &[i64]) -> Result<Self> {
        check_weights(weights)?;
        Ok(Self { h: weights_to_levels(weights) })
    }

    /// Densely packed ground state `(N-1, ..., 1, 0)`.
    pub fn packed(n: usize) -> Self {
        Self { h: (0..n as i64).rev().collect() }
    }

    pub fn levels(&self) -> &[i64] {
        &self.h
    }

    pub fn count(&self) -> usize {
        self.h.len()
    }

    pub fn weights(&self) -> Vec<i64> {
        levels_to_weights(&self.h)
    }

    /// `Π_{i<j} (h_i - h_j)`, positive for the stored ordering.
    pub fn vandermonde<T: Scalar>(&self) -> T {
        let mut acc = T::one();
        for i in 0..self.h.len() {
            for j in i + 1..self.h.len() {
                acc = acc * from_i64::<T>(self.h[i] - self.h[j]);
            }
        }
        acc
    }
}

/// Triangular Gelfand–Tsetlin array; `rows()[j-1]` holds the `j` entries of row `j`
/// and the last row is the highest weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtPattern {
    rows: Vec<Vec<i64>>,
}

impl GtPattern {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != r + 1 {
                return Err(EnsembleError::DimensionMismatch { expected: r + 1, got: row.len() });
            }
        }
        if n == 0 {
            return Err(EnsembleError::EmptyEnsemble);
        }
        check_weights(&rows[n - 1])?;
        for r in 0..n - 1 {
            let (lower, upper) = (&rows[r], &rows[r + 1]);
            for i in 0..lower.len() {
                if !(upper[i] >= lower[i] && lower[i] >= upper[i + 1]) {
                    return Err(EnsembleError::InvalidWeights(lower.clone()));
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn top(&self) -> &[i64] {
        &self.rows[self.rows.len() - 1]
    }

    pub fn weight_vector(&self) -> Vec<i64> {
        weight_vector_of_rows(&self.rows)
    }
}

fn weight_vector_of_rows(rows: &[Vec<i64>]) -> Vec<i64> {
    let mut prev = 0i64;
    rows.iter()
        .map(|row| {
            let s: i64 = row.iter().sum();
            let l = s - prev;
            prev = s;
            l
        })
        .collect()
}

/// `l_j = Σ_i m_{j,i} - Σ_i m_{j-1,i}`.
pub fn gt_weight_vector(pattern: &GtPattern) -> Vec<i64> {
    pattern.weight_vector()
}

/// Odometer over the free entries of a GT pattern. Holds O(N²) state.
struct GtCursor {
    rows: Vec<Vec<i64>>,
    // (row, column) of every free entry, upper rows first.
    digits: Vec<(usize, usize)>,
    done: bool,
}

impl GtCursor {
    fn new(weights: &[i64]) -> Self {
        let n = weights.len();
        let mut rows: Vec<Vec<i64>> = (0..n).map(|r| vec![0; r + 1]).collect();
        rows[n - 1] = weights.to_vec();
        let mut digits = Vec::with_capacity(n * (n - 1) / 2);
        for r in (0..n - 1).rev() {
            for i in 0..=r {
                digits.push((r, i));
            }
        }
        let mut cursor = Self { rows, digits, done: false };
        cursor.reset_from(0);
        cursor
    }

    fn bounds(&self, (r, i): (usize, usize)) -> (i64, i64) {
        let up = &self.rows[r + 1];
        (up[i + 1], up[i])
    }

    fn reset_from(&mut self, start: usize) {
        for d in start..self.digits.len() {
            let (r, i) = self.digits[d];
            self.rows[r][i] = self.bounds((r, i)).0;
        }
    }

    fn advance(&mut self) -> bool {
        for d in (0..self.digits.len()).rev() {
            let (r, i) = self.digits[d];
            if self.rows[r][i] < self.bounds((r, i)).1 {
                self.rows[r][i] += 1;
                self.reset_from(d + 1);
                return true;
            }
        }
        self.done = true;
        false
    }
}

/// Streaming iterator over every GT pattern with the given top row.
pub struct GtPatterns {
    cursor: GtCursor,
    started: bool,
}

impl Iterator for GtPatterns {
    type Item = GtPattern;

    fn next(&mut self) -> Option<GtPattern> {
        if self.started && (self.cursor.done || !self.cursor.advance()) {
            return None;
        }
        self.started = true;
        Some(GtPattern { rows: self.cursor.rows.clone() })
    }
}

pub fn enumerate_gt_patterns(weights: &[i64]) -> Result<GtPatterns> {
    check_weights(weights)?;
    Ok(GtPatterns { cursor: GtCursor::new(weights), started: false })
}

/// Visits the weight vector of every pattern without materializing patterns.
fn for_each_weight_vector(weights: &[i64], mut f: impl FnMut(&[i64])) {
    let mut cursor = GtCursor::new(weights);
    let mut l = vec![0i64; weights.len()];
    loop {
        let mut prev = 0;
        for (j, row) in cursor.rows.iter().enumerate() {
            let s: i64 = row.iter().sum();
            l[j] = s - prev;
            prev = s;
        }
        f(&l);
        if !cursor.advance() {
            break;
        }
    }
}

/// Number of GT patterns, i.e. the dimension of the representation.
pub fn gt_pattern_count(weights: &[i64]) -> Result<u64> {
    check_weights(weights)?;
    let mut count = 0u64;
    for_each_weight_vector(weights, |_| count += 1);
    Ok(count)
}

/// Weyl dimension formula `Π_{i<j} (h_i - h_j)/(j - i)`.
pub fn representation_dimension<T: Scalar>(weights: &[i64]) -> Result<T> {
    let config = LevelConfig::from_weights(weights)?;
    Ok(dimension_ratio(config.levels()))
}

fn dimension_ratio<T: Scalar>(h: &[i64]) -> T {
    let mut acc = T::one();
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            acc = acc * from_i64::<T>(h[i] - h[j]) / from_i64::<T>((j - i) as i64);
        }
    }
    acc
}

fn power_table<T: Scalar>(alpha: &T, max_exp: usize) -> Vec<T> {
    let mut table = Vec::with_capacity(max_exp + 1);
    let mut cur = T::one();
    for _ in 0..=max_exp {
        table.push(cur.clone());
        cur = cur * alpha.clone();
    }
    table
}

/// Character as a sum over GT patterns of `Π_j α_j^{l_j}`.
pub fn character_gt<T: Scalar>(weights: &[i64], alphas: &AlphaSpec<T>) -> Result<T> {
    check_weights(weights)?;
    if weights.len() != alphas.count() {
        return Err(EnsembleError::DimensionMismatch { expected: alphas.count(), got: weights.len() });
    }
    let max_exp = weights[0] as usize;
    let tables: Vec<Vec<T>> = alphas.values().iter().map(|a| power_table(a, max_exp)).collect();
    let mut total = T::zero();
    for_each_weight_vector(weights, |l| {
        let mut term = T::one();
        for (j, &lj) in l.iter().enumerate() {
            term = term * tables[j][lj as usize].clone();
        }
        total = total.clone() + term;
    });
    Ok(total)
}

/// Determinant by Gaussian elimination with partial pivoting; consumes `m`.
pub(crate) fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| {
                m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty column");
        if m[pivot][col].is_zero() {
            return T::zero();
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            let factor = m[r][col].clone() / p.clone();
            if factor.is_zero() {
                continue;
            }
            let (upper, lower) = m.split_at_mut(r);
            for (dst, src) in lower[0][col + 1..].iter_mut().zip(&upper[col][col + 1..]) {
                *dst = dst.clone() - src.clone() * factor.clone();
            }
        }
    }
    det
}

/// Row-scaled Weyl matrix `α_k^{h_j - h_N}`; the scale `Π_k α_k^{h_N}` is returned separately.
fn scaled_weyl_matrix<T: Scalar>(h: &[i64], alphas: &[T]) -> Vec<Vec<T>> {
    let floor = h[h.len() - 1];
    alphas
        .iter()
        .map(|a| h.iter().map(|&hj| powu(a, (hj - floor) as u64)).collect())
        .collect()
}

fn alpha_vandermonde<T: Scalar>(alphas: &[T]) -> T {
    let mut acc = T::one();
    for i in 0..alphas.len() {
        for j in i + 1..alphas.len() {
            acc = acc * (alphas[i].clone() - alphas[j].clone());
        }
    }
    acc
}

/// Weyl character `det_{k,j} α_k^{h_j} / Δ(α)`; refuses near-coincident alphas.
pub fn character_det<T: Scalar>(config: &LevelConfig, alphas: &AlphaSpec<T>) -> Result<T> {
    if config.count() != alphas.count() {
        return Err(EnsembleError::DimensionMismatch { expected: alphas.count(), got: config.count() });
    }
    alphas.require_distinct()?;
    let h = config.levels();
    let a = alphas.values();
    let floor = h[h.len() - 1] as u64;
    let scale = a.iter().fold(T::one(), |acc, ak| acc * powu(ak, floor));
    let det = determinant(scaled_weyl_matrix(h, a));
    Ok(scale * det / alpha_vandermonde(a))
}

/// Confluent limit `Δ(h)/Π_{k<N} k! · α^{Σ m_k}` for all alphas equal to `alpha`.
pub fn character_equal<T: Scalar>(config: &LevelConfig, alpha: &T) -> T {
    let total: i64 = config.weights().iter().sum();
    dimension_ratio::<T>(config.levels()) * powu(alpha, total as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacterBackend {
    /// Equal formula when applicable, determinant when well separated, GT otherwise.
    Auto,
    Gt,
    Determinant,
    Equal,
}

pub fn character<T: Scalar>(
    config: &LevelConfig,
    alphas: &AlphaSpec<T>,
    backend: CharacterBackend,
) -> Result<T> {
    match backend {
        CharacterBackend::Gt => character_gt(&config.weights(), alphas),
        CharacterBackend::Determinant => character_det(config, alphas),
        CharacterBackend::Equal => match alphas.common_value() {
            Some(a) => Ok(character_equal(config, a)),
            None => Err(EnsembleError::Config("equal backend needs identical alphas".into())),
        },
        CharacterBackend::Auto => {
            if let Some(a) = alphas.common_value() {
                Ok(character_equal(config, a))
            } else if alphas.require_distinct().is_ok() {
                character_det(config, alphas)
            } else {
                character_gt(&config.weights(), alphas)
            }
        }
    }
}

/// Unnormalized probability `Δ(h)·χ_h(α)` of an ordered configuration.
pub fn measure_weight<T: Scalar>(config: &LevelConfig, alphas: &AlphaSpec<T>) -> Result<T> {
    measure_weight_with(config, alphas, CharacterBackend::Auto)
}

pub fn measure_weight_with<T: Scalar>(
    config: &LevelConfig,
    alphas: &AlphaSpec<T>,
    backend: CharacterBackend,
) -> Result<T> {
    Ok(config.vandermonde::<T>() * character(config, alphas, backend)?)
}

/// Weight of an arbitrary (unordered) level tuple; zero when two levels coincide.
pub fn measure_weight_levels<T: Scalar>(levels: &[i64], alphas: &AlphaSpec<T>) -> Result<T> {
    if levels.iter().any(|&h| h < 0) {
        return Err(EnsembleError::InvalidLevels(levels.to_vec()));
    }
    let mut sorted = levels.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(T::zero());
    }
    measure_weight(&LevelConfig::new(sorted)?, alphas)
}

/// `ln(Δ(h)·χ_h(α))` in double precision, stable for large levels.
pub fn log_measure_weight(config: &LevelConfig, alphas: &AlphaSpec<f64>) -> Result<f64> {
    if config.count() != alphas.count() {
        return Err(EnsembleError::DimensionMismatch { expected: alphas.count(), got: config.count() });
    }
    let h = config.levels();
    let log_vdm: f64 = pairs(h.len()).map(|(i, j)| ((h[i] - h[j]) as f64).ln()).sum();
    if let Some(&a) = alphas.common_value() {
        let log_dim: f64 = pairs(h.len())
            .map(|(i, j)| ((h[i] - h[j]) as f64 / (j - i) as f64).ln())
            .sum();
        let total: i64 = config.weights().iter().sum();
        return Ok(log_vdm + log_dim + total as f64 * a.ln());
    }
    alphas.require_distinct()?;
    let a = alphas.values();
    let floor = h[h.len() - 1] as f64;
    let log_scale: f64 = a.iter().map(|ak| floor * ak.ln()).sum();
    let det = determinant(scaled_weyl_matrix(h, a)) / alpha_vandermonde(a);
    Ok(log_vdm + log_scale + det.ln())
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gt_counts_small_cases() {
        assert_eq!(enumerate_gt_patterns(&[3]).unwrap().count(), 1);
        let pats: Vec<_> = enumerate_gt_patterns(&[2, 0]).unwrap().collect();
        let bottoms: Vec<i64> = pats.iter().map(|p| p.rows()[0][0]).collect();
        assert_eq!(bottoms, vec![0, 1, 2]);
        assert_eq!(enumerate_gt_patterns(&[2, 1, 0]).unwrap().count(), 8);
    }

    #[test]
    fn gt_patterns_are_distinct_and_valid() {
        let pats: Vec<_> = enumerate_gt_patterns(&[3, 1, 1, 0]).unwrap().collect();
        for p in &pats {
            GtPattern::new(p.rows().to_vec()).unwrap();
        }
        let mut sorted = pats.iter().map(|p| p.rows().to_vec()).collect::<Vec<_>>();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), pats.len());
        let dim: f64 = representation_dimension(&[3, 1, 1, 0]).unwrap();
        assert_eq!(pats.len() as f64, dim);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(enumerate_gt_patterns(&[0, 2]).is_err());
        assert!(enumerate_gt_patterns(&[2, -1]).is_err());
        assert!(LevelConfig::new(vec![1, 1]).is_err());
        assert!(LevelConfig::new(vec![0, 1]).is_err());
    }

    #[test]
    fn weight_vectors() {
        let p = GtPattern::new(vec![vec![1], vec![2, 0]]).unwrap();
        assert_eq!(gt_weight_vector(&p), vec![1, 1]);
        let p = GtPattern::new(vec![vec![2], vec![2, 0]]).unwrap();
        assert_eq!(gt_weight_vector(&p), vec![2, 0]);
    }

    #[test]
    fn two_by_two_character_termwise() {
        let alphas = AlphaSpec::new(vec![0.5, 0.25]).unwrap();
        let chi = character_gt(&[2, 0], &alphas).unwrap();
        assert!((chi - 0.4375f64).abs() < 1e-15);
        let config = LevelConfig::from_weights(&[2, 0]).unwrap();
        assert_eq!(config.levels(), &[3, 0]);
        let det = character_det(&config, &alphas).unwrap();
        assert!((det - 0.4375).abs() < 1e-15);
    }

    #[test]
    fn exact_rational_routes_agree() {
        let alphas = AlphaSpec::new(vec![rat(1, 2), rat(1, 3), rat(1, 5)]).unwrap();
        for w in [[4, 2, 0], [3, 3, 1], [5, 0, 0], [2, 2, 2]] {
            let gt = character_gt(&w, &alphas).unwrap();
            let det = character_det(&LevelConfig::from_weights(&w).unwrap(), &alphas).unwrap();
            assert_eq!(gt, det, "weights {w:?}");
        }
    }

    #[test]
    fn unit_alphas_give_dimension() {
        // alpha = 1 is outside the ensemble domain but valid for the character itself.
        let ones = AlphaSpec { values: vec![1.0; 3], equal: true };
        let chi = character_gt(&[2, 1, 0], &ones).unwrap();
        assert_eq!(chi, 8.0);
    }

    #[test]
    fn single_level() {
        let alphas = AlphaSpec::new(vec![0.3]).unwrap();
        let c = LevelConfig::new(vec![4]).unwrap();
        let want = 0.3f64.powi(4);
        assert!((character_gt(&[4], &alphas).unwrap() - want).abs() < 1e-16);
        assert!((character_det(&c, &alphas).unwrap() - want).abs() < 1e-16);
        assert!((character_equal(&c, &0.3) - want).abs() < 1e-16);
        assert!((measure_weight(&c, &alphas).unwrap() - want).abs() < 1e-16);
    }

    #[test]
    fn equal_rows_factorize() {
        let alphas = AlphaSpec::new(vec![0.7, 0.2]).unwrap();
        for m in 0..6 {
            let c = LevelConfig::from_weights(&[m, m]).unwrap();
            let want = (0.7f64 * 0.2).powi(m as i32);
            let got = character_det(&c, &alphas).unwrap();
            assert!((got - want).abs() <= 1e-14 * want);
        }
    }

    #[test]
    fn equal_formula_dimension_and_confluence() {
        let c = LevelConfig::new(vec![3, 0]).unwrap();
        assert_eq!(character_equal(&c, &1.0f64), 3.0);
        let a = 0.4;
        let eps = 1e-6;
        for w in [[2, 0], [5, 3], [4, 1]] {
            let c = LevelConfig::from_weights(&w).unwrap();
            let near = AlphaSpec::new(vec![a, a + eps]).unwrap();
            let det: f64 = character_det(&c, &near).unwrap();
            let eq = character_equal(&c, &a);
            assert!(((det - eq) / eq).abs() < 1e-4, "{w:?}: {det} vs {eq}");
        }
    }

    #[test]
    fn degenerate_alphas_are_refused() {
        let alphas = AlphaSpec::new(vec![0.3, 0.3 + 1e-10]).unwrap();
        let c = LevelConfig::new(vec![2, 0]).unwrap();
        assert!(matches!(character_det(&c, &alphas), Err(EnsembleError::DegenerateAlphas { .. })));
        // Auto falls back to GT, which is exact for any alphas.
        let w = measure_weight(&c, &alphas).unwrap();
        assert!(w > 0.0);
    }

    #[test]
    fn coincident_levels_weigh_zero() {
        let alphas = AlphaSpec::new(vec![0.5, 0.25]).unwrap();
        assert_eq!(measure_weight_levels(&[2, 2], &alphas).unwrap(), 0.0);
        let w: f64 = measure_weight_levels(&[0, 1], &alphas).unwrap();
        let chi: f64 = character_det(&LevelConfig::new(vec![1, 0]).unwrap(), &alphas).unwrap();
        assert!((w - chi).abs() < 1e-16);
        assert!((chi - 1.0).abs() < 1e-16);
    }

    #[test]
    fn equal_weight_reduces_to_vandermonde_squared() {
        let a = 0.35f64;
        let alphas = AlphaSpec::equal(a, 3).unwrap();
        let configs = [vec![5, 2, 0], vec![7, 6, 1], vec![2, 1, 0]];
        let ratios: Vec<f64> = configs
            .iter()
            .map(|h| {
                let c = LevelConfig::new(h.clone()).unwrap();
                let v: f64 = c.vandermonde();
                let s: i64 = h.iter().sum();
                measure_weight(&c, &alphas).unwrap() / (v * v * a.powi(s as i32))
            })
            .collect();
        for r in &ratios {
            assert!((r / ratios[0] - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn log_weight_matches_direct() {
        let alphas = AlphaSpec::new(vec![0.2, 0.45, 0.7]).unwrap();
        let c = LevelConfig::new(vec![9, 4, 2]).unwrap();
        let direct = measure_weight(&c, &alphas).unwrap();
        assert!((log_measure_weight(&c, &alphas).unwrap() - direct.ln()).abs() < 1e-12);
        let eq = AlphaSpec::equal(0.3, 3).unwrap();
        let direct = measure_weight(&c, &eq).unwrap();
        assert!((log_measure_weight(&c, &eq).unwrap() - direct.ln()).abs() < 1e-12);
    }

    fn weights_strategy() -> impl Strategy<Value = Vec<i64>> {
        (1usize..=4).prop_flat_map(|n| proptest::collection::vec(0i64..=6, n)).prop_map(|mut w| {
            w.sort_unstable_by(|a, b| b.cmp(a));
            w
        })
    }

    proptest! {
        #[test]
        fn gt_and_det_agree(w in weights_strategy(), seed in proptest::collection::vec(0.05f64..0.95, 4)) {
            let n = w.len();
            let mut a: Vec<f64> = seed[..n].to_vec();
            a.sort_by(|x, y| x.partial_cmp(y).unwrap());
            prop_assume!(a.windows(2).all(|p| p[1] - p[0] > 0.05));
            let alphas = AlphaSpec::new(a).unwrap();
            let gt = character_gt(&w, &alphas).unwrap();
            let det = character_det(&LevelConfig::from_weights(&w).unwrap(), &alphas).unwrap();
            prop_assert!(((gt - det) / gt).abs() < 1e-10, "{} vs {}", gt, det);
        }

        #[test]
        fn weight_sum_is_constant(w in weights_strategy()) {
            let total: i64 = w.iter().sum();
            for p in enumerate_gt_patterns(&w).unwrap() {
                prop_assert_eq!(gt_weight_vector(&p).iter().sum::<i64>(), total);
            }
        }

        #[test]
        fn measure_is_non_negative(h in proptest::collection::btree_set(0i64..30, 1..5),
                                   seed in proptest::collection::vec(0.01f64..0.99, 5)) {
            let levels: Vec<i64> = h.into_iter().rev().collect();
            let n = levels.len();
            let alphas = AlphaSpec::new(seed[..n].to_vec()).unwrap();
            let w = measure_weight_levels(&levels, &alphas).unwrap();
            prop_assert!(w >= 0.0);
        }
    }
}
