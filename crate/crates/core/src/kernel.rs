//! Exact finite-N observables from the `ℒ`/`ℒ̂` coefficient tables.
//!
//! Everything is expressed through one kernel,
//!
//! `K(p,q) = δ_pq − Σ_{k=0}^{min(p,q)} ℒ^{p−k} ℒ̂^{q−k} = Σ_{k≥1} ℒ^{p+k} ℒ̂^{q+k}`,
//!
//! with `N·ρ(p) = K(p,p)` and connected pair correlator `−K(p,q)·K(q,p)`.
//! The two sums agree because `Σ_j ℒ^{j+m} ℒ̂^j = δ_{m0}`; the second keeps
//! full relative accuracy deep in the empty region where the first one has
//! cancelled down to round-off.

use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::charpoly::AlphaSpec;
use crate::error::{EnsembleError, Result};
use crate::oracle::{enumerate_measure, EnumerationConfig, EnumerationResult};
use crate::scalar::{from_usize, pairwise_sum, powu, to_f64, DoubleDouble, Scalar};
use crate::series::{EllTable, Precision};

/// Sign, index shifts and identity term of the finite-sum kernel
/// `[δ_pq] + sign · Σ_{k=0}^{min(p,q)} ℒ^{p−k+shift_ell} ℒ̂^{q−k+shift_ell_hat}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KernelConvention {
    pub sign: i8,
    pub shift_ell: i64,
    pub shift_ell_hat: i64,
    pub identity_term: bool,
}

/// Convention selected by [`calibrate`] against the enumeration oracle.
pub const CALIBRATED: KernelConvention =
    KernelConvention { sign: -1, shift_ell: 0, shift_ell_hat: 0, identity_term: true };

impl KernelConvention {
    /// Every convention the calibration search considers.
    pub fn candidates() -> Vec<KernelConvention> {
        let mut out = Vec::new();
        for identity_term in [false, true] {
            for sign in [-1i8, 1] {
                for shift_ell in -1..=2 {
                    for shift_ell_hat in -1..=2 {
                        out.push(KernelConvention { sign, shift_ell, shift_ell_hat, identity_term });
                    }
                }
            }
        }
        out
    }

    /// Largest table index touched when evaluating `K(p,q)` through the finite sum.
    pub fn reach(&self, p: usize, q: usize) -> usize {
        p.max(q) + self.shift_ell.max(self.shift_ell_hat).max(0) as usize
    }

    pub fn finite_sum<T: Scalar>(&self, table: &EllTable<T>, p: usize, q: usize) -> T {
        let terms: Vec<T> = (0..=p.min(q) as i64)
            .map(|k| {
                table.ell(p as i64 - k + self.shift_ell) * table.ell_hat(q as i64 - k + self.shift_ell_hat)
            })
            .collect();
        let s = pairwise_sum(&terms);
        let s = if self.sign < 0 { -s } else { s };
        if self.identity_term && p == q {
            T::one() + s
        } else {
            s
        }
    }
}

/// Scalars the kernel can run on; decides how tables are built.
pub trait KernelScalar: Scalar {
    /// Exact arithmetic never needs the tail-sum rewrite.
    const EXACT: bool = false;

    fn build_table(alphas: &AlphaSpec<Self>, q_max: usize, _precision: Precision) -> EllTable<Self> {
        EllTable::new(alphas, q_max)
    }
}

impl KernelScalar for f32 {}
impl KernelScalar for DoubleDouble {}
impl KernelScalar for BigRational {
    const EXACT: bool = true;
}
impl KernelScalar for f64 {
    fn build_table(alphas: &AlphaSpec<f64>, q_max: usize, precision: Precision) -> EllTable<f64> {
        EllTable::with_precision(alphas, q_max, precision)
    }
}

/// Below this value of the finite-sum occupation the tail-sum form is used instead.
pub const TAIL_SWITCH: f64 = 1e-6;
/// Tail sums stop once terms fall below this fraction of the largest term seen.
const TAIL_RELATIVE_CUTOFF: f64 = 1e-40;
const TAIL_MAX_TERMS: usize = 1 << 20;

#[derive(Clone, Debug, Serialize)]
pub struct DensityProfile {
    pub n: usize,
    /// `ρ(p)` for `p = 0..=p_max`.
    pub values: Vec<f64>,
    /// Estimated `Σ_{p>p_max} ρ(p)`.
    pub tail_mass: f64,
}

impl DensityProfile {
    pub fn p_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn occupations(&self) -> Vec<f64> {
        self.values.iter().map(|v| v * self.n as f64).collect()
    }

    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum::<f64>() + self.tail_mass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelTable {
    pub p_range: (usize, usize),
    pub q_range: (usize, usize),
    /// `K(p,q)` row-major over the window.
    pub entries: Vec<f64>,
    pub alphas: Vec<f64>,
}

impl KernelTable {
    pub fn width(&self) -> usize {
        self.q_range.1 + 1 - self.q_range.0
    }

    pub fn get(&self, p: usize, q: usize) -> f64 {
        self.entries[(p - self.p_range.0) * self.width() + (q - self.q_range.0)]
    }
}

/// Finite-N ensemble with a shared, lazily grown coefficient table.
pub struct ExactEnsemble<T: KernelScalar = f64> {
    alphas: AlphaSpec<T>,
    convention: KernelConvention,
    precision: Precision,
    table: RwLock<Arc<EllTable<T>>>,
}

impl<T: KernelScalar> ExactEnsemble<T> {
    pub fn new(alphas: AlphaSpec<T>) -> Self {
        Self::with_options(alphas, CALIBRATED, Precision::Auto)
    }

    pub fn with_options(alphas: AlphaSpec<T>, convention: KernelConvention, precision: Precision) -> Self {
        let initial = T::build_table(&alphas, 2 * alphas.count() + 16, precision);
        Self { alphas, convention, precision, table: RwLock::new(Arc::new(initial)) }
    }

    pub fn alphas(&self) -> &AlphaSpec<T> {
        &self.alphas
    }

    pub fn n(&self) -> usize {
        self.alphas.count()
    }

    pub fn convention(&self) -> KernelConvention {
        self.convention
    }

    /// Table covering at least `q_max`; grows geometrically and is shared between threads.
    pub fn table(&self, q_max: usize) -> Arc<EllTable<T>> {
        {
            let t = self.table.read().expect("table lock");
            if t.q_max() >= q_max {
                return Arc::clone(&t);
            }
        }
        let mut guard = self.table.write().expect("table lock");
        if guard.q_max() < q_max {
            let size = q_max.max(2 * guard.q_max());
            *guard = Arc::new(T::build_table(&self.alphas, size, self.precision));
        }
        Arc::clone(&guard)
    }

    fn finite_kernel(&self, p: usize, q: usize) -> T {
        let table = self.table(self.convention.reach(p, q));
        self.convention.finite_sum(&table, p, q)
    }

    /// `Σ_{k≥1} ℒ^{p+k} ℒ̂^{q+k}`, summed until the terms are negligible.
    fn tail_kernel(&self, p: usize, q: usize) -> T {
        let mut acc: Vec<T> = Vec::new();
        let mut biggest = 0.0f64;
        let mut k = 1usize;
        let mut chunk = 64usize.max(self.n());
        while k < TAIL_MAX_TERMS {
            let table = self.table(p.max(q) + k + chunk);
            let mut quiet = true;
            for kk in k..k + chunk {
                let t = table.ell((p + kk) as i64) * table.ell_hat((q + kk) as i64);
                let mag = to_f64(&t).abs();
                biggest = biggest.max(mag);
                if mag > TAIL_RELATIVE_CUTOFF * biggest {
                    quiet = false;
                }
                acc.push(t);
            }
            k += chunk;
            if quiet {
                break;
            }
            chunk *= 2;
        }
        pairwise_sum(&acc)
    }

    /// `K(p,q)`; the calibrated convention switches to the tail sum where it is more accurate.
    pub fn kernel(&self, p: usize, q: usize) -> T {
        let head = self.finite_kernel(p, q);
        if T::EXACT || self.convention != CALIBRATED {
            return head;
        }
        let m = p.min(q);
        let diag = if p == q { head.clone() } else { self.finite_kernel(m, m) };
        if to_f64(&diag).abs() < TAIL_SWITCH {
            self.tail_kernel(p, q)
        } else {
            head
        }
    }

    /// Mean occupation `N·ρ(p)`.
    pub fn occupation(&self, p: usize) -> T {
        self.kernel(p, p)
    }

    pub fn density(&self, p: usize) -> T {
        self.occupation(p) / from_usize(self.n())
    }

    /// `⟨Σ_{k≠l} δ_{p,h_k} δ_{q,h_l}⟩ − ⟨n_p⟩⟨n_q⟩`, in occupation counts.
    pub fn pair_correlator(&self, p: usize, q: usize) -> T {
        -(self.kernel(p, q) * self.kernel(q, p))
    }

    /// `N·ρ(p)` for `p = 0..=p_max` in one pass over the table.
    pub fn occupations(&self, p_max: usize) -> Vec<T> {
        let table = self.table(self.convention.reach(p_max, p_max));
        let mut out = Vec::with_capacity(p_max + 1);
        if self.convention != CALIBRATED {
            return (0..=p_max).map(|p| self.convention.finite_sum(&table, p, p)).collect();
        }
        let mut partial = T::zero();
        let mut comp = T::zero();
        for p in 0..=p_max {
            // Compensated running sum of ℒ^j ℒ̂^j.
            let term = table.ell(p as i64) * table.ell_hat(p as i64);
            let y = term - comp.clone();
            let t = partial.clone() + y.clone();
            comp = (t.clone() - partial) - y;
            partial = t;
            let head = T::one() - partial.clone();
            if !T::EXACT && to_f64(&head).abs() < TAIL_SWITCH {
                let first = p;
                out.extend((first..=p_max).map(|r| self.tail_kernel(r, r)));
                return out;
            }
            out.push(head);
        }
        out
    }

    pub fn density_values(&self, p_max: usize) -> Vec<T> {
        let n: T = from_usize(self.n());
        self.occupations(p_max).into_iter().map(|o| o / n.clone()).collect()
    }
}

/// Occupation below which the automatic profile cutoff stops.
pub const PROFILE_CUTOFF: f64 = 1e-16;
/// Hard ceiling on automatically chosen profile lengths.
pub const PROFILE_MAX_SITES: usize = 1 << 18;

impl ExactEnsemble<f64> {
    /// Density over `0..=p_max`; `None` picks the first `p ≥ N` whose occupation is below
    /// [`PROFILE_CUTOFF`]. The tail mass is summed from the same kernel until negligible.
    pub fn density_profile(&self, p_max: Option<usize>) -> Result<DensityProfile> {
        let n = self.n();
        let p_max = match p_max {
            Some(p) => p,
            None => self.auto_p_max()?,
        };
        let values = self.density_values(p_max);
        let mut tail = Vec::new();
        let mut p = p_max + 1;
        let mut biggest = 0.0f64;
        loop {
            let v = self.density(p);
            biggest = biggest.max(v.abs());
            tail.push(v);
            p += 1;
            if v.abs() <= TAIL_RELATIVE_CUTOFF * biggest.max(f64::MIN_POSITIVE) || tail.len() > PROFILE_MAX_SITES {
                break;
            }
            if tail.len() > 8 && v.abs() < 1e-30 {
                break;
            }
        }
        Ok(DensityProfile { n, values, tail_mass: pairwise_sum(&tail) })
    }

    fn auto_p_max(&self) -> Result<usize> {
        let n = self.n();
        let mut hi = 4 * n + 64;
        while hi <= PROFILE_MAX_SITES {
            let occ = self.occupations(hi);
            if let Some(p) = (n..=hi).find(|&p| occ[p].abs() < PROFILE_CUTOFF) {
                return Ok(p);
            }
            hi *= 2;
        }
        Err(EnsembleError::Domain {
            value: PROFILE_MAX_SITES as f64,
            reason: "density did not decay below the profile cutoff".into(),
        })
    }

    /// `K(p,q)` over a window, filled in parallel from the shared table.
    pub fn kernel_table(&self, p_range: (usize, usize), q_range: (usize, usize)) -> Result<KernelTable> {
        if p_range.0 > p_range.1 || q_range.0 > q_range.1 {
            return Err(EnsembleError::Config("window bounds must be ordered".into()));
        }
        self.table(self.convention.reach(p_range.1, q_range.1));
        let width = q_range.1 + 1 - q_range.0;
        let entries: Vec<f64> = (p_range.0..=p_range.1)
            .into_par_iter()
            .flat_map_iter(|p| (q_range.0..=q_range.1).map(move |q| (p, q)))
            .map(|(p, q)| self.kernel(p, q))
            .collect();
        debug_assert_eq!(entries.len(), width * (p_range.1 + 1 - p_range.0));
        Ok(KernelTable { p_range, q_range, entries, alphas: self.alphas.to_f64_vec() })
    }
}

pub fn density_exact(p: usize, alphas: &AlphaSpec<f64>) -> f64 {
    ExactEnsemble::new(alphas.clone()).density(p)
}

pub fn kernel_r(p: usize, q: usize, alphas: &AlphaSpec<f64>) -> f64 {
    ExactEnsemble::new(alphas.clone()).kernel(p, q)
}

pub fn pair_correlator(p: usize, q: usize, alphas: &AlphaSpec<f64>) -> f64 {
    ExactEnsemble::new(alphas.clone()).pair_correlator(p, q)
}

/// `M(t)_{kl} = ((1−α_k)/(1−tα_l))^N Π_{j≠k} (tα_l − α_j)/(α_k − α_j)`.
fn moment_matrix<T: Scalar>(t: &T, alphas: &AlphaSpec<T>) -> Result<Vec<Vec<T>>> {
    alphas.require_distinct()?;
    let a = alphas.values();
    let n = a.len();
    let tf = to_f64(t);
    if tf.abs() * to_f64(&alphas.max_value()) >= 1.0 {
        return Err(EnsembleError::Domain {
            value: tf,
            reason: "need |t|·max(α) < 1".into(),
        });
    }
    let mut m = vec![vec![T::zero(); n]; n];
    for (k, row) in m.iter_mut().enumerate() {
        for (l, entry) in row.iter_mut().enumerate() {
            let tal = t.clone() * a[l].clone();
            let base = (T::one() - a[k].clone()) / (T::one() - tal.clone());
            let mut v = powu(&base, n as u64);
            for (j, aj) in a.iter().enumerate() {
                if j != k {
                    v = v * (tal.clone() - aj.clone()) / (a[k].clone() - aj.clone());
                }
            }
            *entry = v;
        }
    }
    Ok(m)
}

/// `U_1(t) = (1/N) ⟨Σ_k t^{h_k}⟩`, normalized so `U_1(1) = 1`.
pub fn u1_moment<T: Scalar>(t: &T, alphas: &AlphaSpec<T>) -> Result<T> {
    let m = moment_matrix(t, alphas)?;
    let diag: Vec<T> = (0..m.len()).map(|k| m[k][k].clone()).collect();
    Ok(pairwise_sum(&diag) / from_usize(m.len()))
}

/// `K_2(t1,t2) = U_2(t1,t2) − U_1(t1)U_1(t2)` with `U_2 = N^{-2} ⟨Σ_{k≠l} t1^{h_k} t2^{h_l}⟩`.
pub fn connected_k2<T: Scalar>(t1: &T, t2: &T, alphas: &AlphaSpec<T>) -> Result<T> {
    let m1 = moment_matrix(t1, alphas)?;
    let m2 = moment_matrix(t2, alphas)?;
    let n = m1.len();
    let terms: Vec<T> = (0..n)
        .flat_map(|k| (0..n).map(move |l| (k, l)))
        .map(|(k, l)| m1[k][l].clone() * m2[l][k].clone())
        .collect();
    let nn: T = from_usize(n * n);
    Ok(-pairwise_sum(&terms) / nn)
}

/// An oracle enumeration used as calibration ground truth.
pub struct CalibrationCase {
    pub alphas: AlphaSpec<f64>,
    pub oracle: EnumerationResult,
}

impl CalibrationCase {
    pub fn new(alphas: AlphaSpec<f64>) -> Result<Self> {
        let oracle = enumerate_measure(&alphas, &EnumerationConfig::default())?;
        Ok(Self { alphas, oracle })
    }
}

/// The single-level and two-level ensembles the convention is fitted on.
pub fn standard_calibration_cases() -> Result<Vec<CalibrationCase>> {
    [vec![0.5], vec![0.5, 0.25]]
        .into_iter()
        .map(|a| CalibrationCase::new(AlphaSpec::new(a)?))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CalibrationReport {
    pub convention: KernelConvention,
    /// Largest absolute deviation from the oracle for the chosen convention.
    pub residual: f64,
    /// Residual of the runner-up, to show the choice is not marginal.
    pub runner_up: f64,
}

/// Worst deviation of a convention from the oracle density and pair table on `[0, window]`.
pub fn convention_residual(conv: KernelConvention, case: &CalibrationCase, window: usize) -> f64 {
    let table = EllTable::new(&case.alphas, conv.reach(window, window) + 1);
    let n = case.alphas.count() as f64;
    let mut worst = 0.0f64;
    for p in 0..=window {
        let occ = conv.finite_sum(&table, p, p);
        worst = worst.max((occ - n * case.oracle.density_at(p)).abs());
        for q in 0..=window {
            let pair = -conv.finite_sum(&table, p, q) * conv.finite_sum(&table, q, p);
            worst = worst.max((pair - case.oracle.connected(p, q)).abs());
        }
    }
    worst
}

/// Searches [`KernelConvention::candidates`] for the one that reproduces the oracle.
pub fn calibrate(cases: &[CalibrationCase], window: usize, tolerance: f64) -> Result<CalibrationReport> {
    let mut scored: Vec<(f64, KernelConvention)> = KernelConvention::candidates()
        .into_iter()
        .map(|c| {
            let r = cases.iter().map(|case| convention_residual(c, case, window)).fold(0.0, f64::max);
            (r, c)
        })
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (residual, convention) = scored[0];
    if residual > tolerance {
        return Err(EnsembleError::Calibration(format!(
            "best convention {convention:?} misses the oracle by {residual:e}"
        )));
    }
    Ok(CalibrationReport { convention, residual, runner_up: scored[1].0 })
}
