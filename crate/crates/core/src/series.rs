//! Truncated power series and the coefficient families built from them.
//!
//! `ℒ^q` is the coefficient of `x^q` in `Π_j (α_j - x)/(1 - x)` and `ℒ̂^q` the
//! coefficient of `x^q` in `Π_j (1 - x)/(1 - α_j x)`. Both are produced by
//! streaming one degree-1 factor at a time through a series capped at the
//! highest degree needed, so no coefficient above the cap is ever touched.

use std::ops::{Add, Mul, Neg, Sub};

use crate::charpoly::AlphaSpec;
use crate::error::{EnsembleError, Result};
use crate::scalar::{from_usize, pairwise_sum, to_f64, DoubleDouble, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    /// Pads with zeros or truncates so the series holds degrees `0..=cap`.
    pub fn new(mut coeffs: Vec<T>, cap: usize) -> Self {
        coeffs.resize(cap + 1, T::zero());
        Self { coeffs }
    }

    pub fn zero(cap: usize) -> Self {
        Self { coeffs: vec![T::zero(); cap + 1] }
    }

    pub fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.coeffs[0] = T::one();
        s
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k`; `None` above the cap.
    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    /// Product with `c0 + c1·x`.
    pub fn mul_linear(&self, c0: &T, c1: &T) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(self.coeffs[0].clone() * c0.clone());
        for k in 1..self.coeffs.len() {
            out.push(self.coeffs[k].clone() * c0.clone() + self.coeffs[k - 1].clone() * c1.clone());
        }
        Self { coeffs: out }
    }

    /// Quotient by `1 - c·x` through the forward recurrence `b_k = a_k + c·b_{k-1}`.
    pub fn div_one_minus(&self, c: &T) -> Self {
        let mut out: Vec<T> = Vec::with_capacity(self.coeffs.len());
        for (k, a) in self.coeffs.iter().enumerate() {
            let b = if k == 0 { a.clone() } else { a.clone() + c.clone() * out[k - 1].clone() };
            out.push(b);
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse of a series with non-zero constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(EnsembleError::Domain {
                value: 0.0,
                reason: "series reciprocal needs a non-zero constant term".into(),
            });
        }
        let mut out: Vec<T> = Vec::with_capacity(self.coeffs.len());
        out.push(T::one() / c0.clone());
        for k in 1..self.coeffs.len() {
            let terms: Vec<T> =
                (1..=k).map(|j| self.coeffs[j].clone() * out[k - j].clone()).collect();
            out.push(-pairwise_sum(&terms) / c0.clone());
        }
        Ok(Self { coeffs: out })
    }

    fn check_caps(&self, other: &Self) {
        assert_eq!(self.cap(), other.cap(), "series caps differ");
    }
}

impl<T: Scalar> Add for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn add(self, rhs: Self) -> TruncatedSeries<T> {
        self.check_caps(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        TruncatedSeries { coeffs }
    }
}

impl<T: Scalar> Sub for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn sub(self, rhs: Self) -> TruncatedSeries<T> {
        self.check_caps(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        TruncatedSeries { coeffs }
    }
}

impl<T: Scalar> Neg for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn neg(self) -> TruncatedSeries<T> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

/// Truncated Cauchy product; each output coefficient is a pairwise sum.
impl<T: Scalar> Mul for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn mul(self, rhs: Self) -> TruncatedSeries<T> {
        self.check_caps(rhs);
        let n = self.coeffs.len();
        let mut terms = Vec::with_capacity(n);
        let coeffs = (0..n)
            .map(|k| {
                terms.clear();
                terms.extend((0..=k).map(|j| self.coeffs[j].clone() * rhs.coeffs[k - j].clone()));
                pairwise_sum(&terms)
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `Π_j (α_j - x) · (1 - x)^{-N}`
    Ell,
    /// `(1 - x)^N · Π_j (1 - α_j x)^{-1}`
    EllHat,
}

/// Generating series for raw parameter values (no range check).
pub fn series_from_values<T: Scalar>(values: &[T], kind: SeriesKind, cap: usize) -> TruncatedSeries<T> {
    let mut s = TruncatedSeries::one(cap);
    let one = T::one();
    let minus_one = -T::one();
    for a in values {
        s = match kind {
            SeriesKind::Ell => s.mul_linear(a, &minus_one).div_one_minus(&one),
            SeriesKind::EllHat => s.mul_linear(&one, &minus_one).div_one_minus(a),
        };
    }
    s
}

pub fn series_from_product<T: Scalar>(
    alphas: &AlphaSpec<T>,
    kind: SeriesKind,
    cap: usize,
) -> TruncatedSeries<T> {
    series_from_values(alphas.values(), kind, cap)
}

pub fn ell<T: Scalar>(q: usize, alphas: &AlphaSpec<T>) -> T {
    series_from_product(alphas, SeriesKind::Ell, q).coeffs[q].clone()
}

pub fn ell_hat<T: Scalar>(q: usize, alphas: &AlphaSpec<T>) -> T {
    series_from_product(alphas, SeriesKind::EllHat, q).coeffs[q].clone()
}

/// Arithmetic used to build the coefficient tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precision {
    /// Double-double for ensembles with more than [`AUTO_DD_THRESHOLD`] distinct-valued
    /// levels, plain double otherwise.
    #[default]
    Auto,
    Double,
    DoubleDouble,
}

/// Above this many levels with unequal alphas, `Precision::Auto` switches to double-double.
pub const AUTO_DD_THRESHOLD: usize = 60;

impl Precision {
    pub fn resolve(self, alphas: &AlphaSpec<f64>) -> Precision {
        match self {
            Precision::Auto if !alphas.is_equal() && alphas.count() > AUTO_DD_THRESHOLD => {
                Precision::DoubleDouble
            }
            Precision::Auto => Precision::Double,
            p => p,
        }
    }
}

/// `ℒ^q` and `ℒ̂^q` for `q = 0..=q_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct EllTable<T> {
    ell: Vec<T>,
    ell_hat: Vec<T>,
}

impl<T: Scalar> EllTable<T> {
    pub fn new(alphas: &AlphaSpec<T>, q_max: usize) -> Self {
        Self {
            ell: series_from_product(alphas, SeriesKind::Ell, q_max).into_coeffs(),
            ell_hat: series_from_product(alphas, SeriesKind::EllHat, q_max).into_coeffs(),
        }
    }

    pub fn q_max(&self) -> usize {
        self.ell.len() - 1
    }

    /// `ℒ^q`, zero for negative `q`.
    pub fn ell(&self, q: i64) -> T {
        if q < 0 {
            T::zero()
        } else {
            self.ell[q as usize].clone()
        }
    }

    /// `ℒ̂^q`, zero for negative `q`.
    pub fn ell_hat(&self, q: i64) -> T {
        if q < 0 {
            T::zero()
        } else {
            self.ell_hat[q as usize].clone()
        }
    }

    pub fn ell_values(&self) -> &[T] {
        &self.ell
    }

    pub fn ell_hat_values(&self) -> &[T] {
        &self.ell_hat
    }
}

impl EllTable<f64> {
    /// Double-precision table, optionally computed in double-double and rounded.
    pub fn with_precision(alphas: &AlphaSpec<f64>, q_max: usize, precision: Precision) -> Self {
        match precision.resolve(alphas) {
            Precision::DoubleDouble => {
                let wide = EllTable::<DoubleDouble>::new(&alphas.convert(), q_max);
                Self {
                    ell: wide.ell.iter().map(to_f64).collect(),
                    ell_hat: wide.ell_hat.iter().map(to_f64).collect(),
                }
            }
            _ => Self::new(alphas, q_max),
        }
    }
}

/// `L_0..=L_{n_max}` at `rho` by the upward three-term recurrence.
pub fn laguerre_values<T: Scalar>(n_max: usize, rho: &T) -> Vec<T> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(T::one());
    if n_max == 0 {
        return out;
    }
    out.push(T::one() - rho.clone());
    for n in 1..n_max {
        let nn: T = from_usize(n);
        let next = ((from_usize::<T>(2 * n + 1) - rho.clone()) * out[n].clone()
            - nn * out[n - 1].clone())
            / from_usize::<T>(n + 1);
        out.push(next);
    }
    out
}

/// Laguerre polynomial `L_n(ρ)` normalized to `L_n(0) = 1`.
pub fn laguerre_l<T: Scalar>(n: usize, rho: &T) -> T {
    laguerre_values(n, rho).pop().expect("non-empty")
}

/// `M_p = L_p - L_{p-1}` with `L_{-1} = 0`, so `M_0 = 1`.
pub fn laguerre_m<T: Scalar>(p: usize, rho: &T) -> T {
    let l = laguerre_values(p, rho);
    if p == 0 {
        T::one()
    } else {
        l[p].clone() - l[p - 1].clone()
    }
}

/// `M_0..=M_{p_max}` in one recurrence pass.
pub fn laguerre_m_values<T: Scalar>(p_max: usize, rho: &T) -> Vec<T> {
    let l = laguerre_values(p_max, rho);
    (0..=p_max)
        .map(|p| if p == 0 { T::one() } else { l[p].clone() - l[p - 1].clone() })
        .collect()
}

/// `(ℒ^p_N, e^{-ρ} M_p(ρ))` at `α_k = 1 - ρ/N`; the gap closes as O(1/N).
pub fn ell_laguerre_limit_check(p: usize, rho: f64, n: usize) -> Result<(f64, f64)> {
    let alphas = small_weight_alphas(rho, n)?;
    Ok((ell(p, &alphas), (-rho).exp() * laguerre_m(p, &rho)))
}

/// `(ℒ̂^p_N, M_p(ρ))` at `α_k = 1 - ρ/N`.
pub fn ell_hat_laguerre_limit_check(p: usize, rho: f64, n: usize) -> Result<(f64, f64)> {
    let alphas = small_weight_alphas(rho, n)?;
    Ok((ell_hat(p, &alphas), laguerre_m(p, &rho)))
}

fn small_weight_alphas(rho: f64, n: usize) -> Result<AlphaSpec<f64>> {
    if rho <= 0.0 || n == 0 || rho >= n as f64 {
        return Err(EnsembleError::Domain { value: rho, reason: "need 0 < rho < n".into() });
    }
    AlphaSpec::equal(1.0 - rho / n as f64, n)
}
