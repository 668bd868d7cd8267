//! Large-N limits: resolvent, equal-alpha limit shape, edge scaling, bulk sine
//! kernel and the small-weight Laguerre regime, each with a finite-N check.

use num_complex::{Complex, Complex64};
use num_traits::{Float, FloatConst};
use rayon::prelude::*;
use serde::Serialize;

use crate::charpoly::AlphaSpec;
use crate::error::{EnsembleError, Result};
use crate::kernel::ExactEnsemble;
use crate::quad;
use crate::scalar::Scalar;
use crate::series::laguerre_m_values;

/// `(a, b) = ((1+s)/(1−s), (1−s)/(1+s))` for `s = √α`.
pub fn endpoints_from_sqrt<T: Scalar>(s: &T) -> (T, T) {
    let one = T::one();
    let a = (one.clone() + s.clone()) / (one.clone() - s.clone());
    let b = (one.clone() - s.clone()) / (one + s.clone());
    (a, b)
}

/// Equal-alpha limit shape: plateau on `(0, b)`, arctan law on `(b, a)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LimitShape<T = f64> {
    alpha: T,
    a: T,
    b: T,
}

impl<T: Float + FloatConst + Scalar> LimitShape<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::one()) {
            return Err(EnsembleError::AlphaOutOfRange(alpha.to_f64().unwrap_or(f64::NAN)));
        }
        let (a, b) = endpoints_from_sqrt(&alpha.sqrt());
        Ok(Self { alpha, a, b })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// `ρ(σ) = (2/π) arctan √(b(a−σ) / (a(σ−b)))` on `(b, a)`; exactly 1 on `[0, b]`.
    pub fn density(&self, sigma: T) -> T {
        if sigma < T::zero() || sigma >= self.a {
            T::zero()
        } else if sigma <= self.b {
            T::one()
        } else {
            let ratio = self.b * (self.a - sigma) / (self.a * (sigma - self.b));
            (T::one() + T::one()) / T::PI() * ratio.sqrt().atan()
        }
    }

    /// Physical root `u(z)` of `z = u/(1−u) + u/(u−α)`, with `u → 1` as `z → ∞`.
    pub fn resolvent_u(&self, z: Complex<T>) -> Complex<T> {
        let one = T::one();
        let two = one + one;
        let root = (z - self.a).sqrt() * (z - self.b).sqrt();
        (z * (one + self.alpha) - (one - self.alpha) + root * (one - self.alpha)) / (z * two)
    }

    /// `arg u(σ + i0) / π`, the density read off the closed-form resolvent.
    pub fn density_log_form(&self, sigma: T) -> T {
        if sigma <= T::zero() {
            return T::zero();
        }
        let u = self.resolvent_u(Complex::new(sigma, T::zero()));
        u.im.atan2(u.re).abs() / T::PI()
    }
}

impl LimitShape<f64> {
    /// `∫_0^a ρ(σ) dσ` by adaptive quadrature.
    pub fn mass(&self, tol: f64) -> Result<f64> {
        let r = quad::integrate(|s| self.density(s), self.b, self.a, tol, 20_000)?;
        Ok(self.b + r.value)
    }
}

pub fn limit_shape_equal(alpha: f64) -> Result<LimitShape<f64>> {
    LimitShape::new(alpha)
}

/// Normalized distribution of the alphas, `G₀(u) = Σ_j w_j / (u − α_j)`.
#[derive(Clone, Debug, Serialize)]
pub struct AtomicMeasure {
    atoms: Vec<(f64, f64)>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(EnsembleError::EmptyEnsemble);
        }
        for &(a, w) in &atoms {
            if !(a > 0.0 && a < 1.0) {
                return Err(EnsembleError::AlphaOutOfRange(a));
            }
            if w.is_nan() || w <= 0.0 {
                return Err(EnsembleError::Domain { value: w, reason: "atom weights must be positive".into() });
            }
        }
        let total: f64 = atoms.iter().map(|x| x.1).sum();
        Ok(Self { atoms: atoms.into_iter().map(|(a, w)| (a, w / total)).collect() })
    }

    /// Empirical measure of an alpha set, merging identical values.
    pub fn from_alphas(alphas: &AlphaSpec<f64>) -> Self {
        let mut v = alphas.values().to_vec();
        v.sort_by(f64::total_cmp);
        let w = 1.0 / v.len() as f64;
        let mut atoms: Vec<(f64, f64)> = Vec::new();
        for a in v {
            match atoms.last_mut() {
                Some(last) if last.0 == a => last.1 += w,
                _ => atoms.push((a, w)),
            }
        }
        Self { atoms }
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn max_alpha(&self) -> f64 {
        self.atoms.iter().map(|x| x.0).fold(0.0, f64::max)
    }

    pub fn g0(&self, u: Complex64) -> Complex64 {
        self.atoms.iter().map(|&(a, w)| w / (u - a)).sum()
    }

    fn g0_prime(&self, u: Complex64) -> Complex64 {
        self.atoms.iter().map(|&(a, w)| -w / ((u - a) * (u - a))).sum()
    }

    /// `u/(1−u) + u·G₀(u)`; the resolvent root solves `root_map(u) = z`.
    pub fn root_map(&self, u: Complex64) -> Complex64 {
        u / (1.0 - u) + u * self.g0(u)
    }

    fn root_map_prime(&self, u: Complex64) -> Complex64 {
        let d = 1.0 - u;
        1.0 / (d * d) + self.g0(u) + u * self.g0_prime(u)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Continued from `u ≈ 1` at large `|z|` down to the real axis from above.
    Physical,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ResolventSolution {
    pub sigma: f64,
    /// Imaginary offset at which the root was accepted.
    pub eta: f64,
    pub u: Complex64,
    /// `G(σ) = log u`.
    pub g: Complex64,
    /// `Im G / π`.
    pub density: f64,
    pub residual: f64,
    pub branch: Branch,
}

#[derive(Clone, Debug)]
pub struct ResolventOptions {
    /// Final offset above the real axis, relative to `max(1, σ)`.
    pub eta: f64,
    /// Starting height of the vertical continuation path.
    pub start_height: f64,
    pub path_steps: usize,
    pub max_newton: usize,
    pub residual_tol: f64,
}

impl Default for ResolventOptions {
    fn default() -> Self {
        Self { eta: 1e-14, start_height: 1e4, path_steps: 400, max_newton: 60, residual_tol: 1e-10 }
    }
}

/// Solves `σ + iη = u/(1−u) + u·G₀(u)` by Newton steps along the vertical path
/// from `σ + i·start_height` down to `σ + iη`, so the root never leaves the physical branch.
pub fn solve_resolvent(sigma: f64, measure: &AtomicMeasure, opts: &ResolventOptions) -> Result<ResolventSolution> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(EnsembleError::Domain { value: sigma, reason: "resolvent needs sigma > 0".into() });
    }
    let eta = opts.eta * sigma.max(1.0);
    let top = opts.start_height.max(10.0 * sigma);
    let mut z = Complex64::new(sigma, top);
    let mut u = 1.0 - 1.0 / z;
    let ratio = (eta / top).powf(1.0 / opts.path_steps as f64);
    let mut h = top;
    for step in 0..=opts.path_steps {
        if step > 0 {
            h = if step == opts.path_steps { eta } else { h * ratio };
        }
        z = Complex64::new(sigma, h);
        for _ in 0..opts.max_newton {
            let du = (measure.root_map(u) - z) / measure.root_map_prime(u);
            u -= du;
            if !u.is_finite() {
                break;
            }
            if du.norm() <= 1e-15 * u.norm().max(1e-300) {
                break;
            }
        }
    }
    let residual = (measure.root_map(u) - z).norm() / z.norm().max(1.0);
    if !u.is_finite() || residual > opts.residual_tol || u.im < -1e-12 {
        return Err(EnsembleError::NonConvergence { sigma, re: u.re, im: u.im, residual });
    }
    let g = u.ln();
    Ok(ResolventSolution {
        sigma,
        eta,
        u,
        g,
        density: (g.im / std::f64::consts::PI).clamp(0.0, 1.0),
        residual,
        branch: Branch::Physical,
    })
}

/// Independent solves over a grid, in parallel.
pub fn solve_resolvent_grid(sigmas: &[f64], measure: &AtomicMeasure, opts: &ResolventOptions) -> Result<Vec<ResolventSolution>> {
    sigmas.par_iter().map(|&s| solve_resolvent(s, measure, opts)).collect()
}

/// Upper bound on the support: the right endpoint for the largest alpha.
pub fn support_bound(measure: &AtomicMeasure) -> f64 {
    endpoints_from_sqrt(&measure.max_alpha().sqrt()).0
}

/// `∫ ρ(σ) dσ` of the solver's density over `(0, support_bound]`.
pub fn resolvent_mass(measure: &AtomicMeasure, opts: &ResolventOptions, tol: f64) -> Result<f64> {
    let upper = support_bound(measure) * 1.001;
    let f = |s: f64| {
        if s <= 0.0 {
            1.0
        } else {
            solve_resolvent(s, measure, opts).map(|r| r.density).unwrap_or(f64::NAN)
        }
    };
    let r = quad::integrate(f, 0.0, upper, tol, 50_000)?;
    if !r.value.is_finite() {
        return Err(EnsembleError::NonConvergence { sigma: f64::NAN, re: f64::NAN, im: f64::NAN, residual: f64::NAN });
    }
    Ok(r.value)
}

#[derive(Clone, Debug, Serialize)]
pub struct BulkComparison {
    pub n: usize,
    pub sup_norm: f64,
    pub argmax_p: usize,
    pub sites: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitConvergenceReport {
    pub alpha: f64,
    pub margin: f64,
    /// Bulk window in `σ = p/N`, shared by every size.
    pub window: (f64, f64),
    pub rows: Vec<BulkComparison>,
    /// Sup-norm at the smallest size over the sup-norm at the largest.
    pub improvement: f64,
}

/// Bulk sup-norm between `N·ρ(p)` and the limit shape at `p/N`.
///
/// The window keeps `margin · n_min^{-2/3}` away from both endpoints and is the same for
/// every size, so the numbers measure convergence rather than a shrinking edge layer.
pub fn finite_n_vs_limit(alpha: f64, ns: &[usize], margin: f64) -> Result<LimitConvergenceReport> {
    let shape = LimitShape::new(alpha)?;
    let n_min = *ns.iter().min().ok_or(EnsembleError::EmptyEnsemble)?;
    if n_min < 16 {
        return Err(EnsembleError::Domain { value: n_min as f64, reason: "bulk comparison needs n >= 16".into() });
    }
    let gap = margin * (n_min as f64).powf(-2.0 / 3.0);
    let window = (shape.b() + gap, shape.a() - gap);
    if window.0 >= window.1 {
        return Err(EnsembleError::Domain { value: margin, reason: "margin leaves an empty bulk window".into() });
    }
    let rows = ns
        .par_iter()
        .map(|&n| -> Result<BulkComparison> {
            let e = ExactEnsemble::new(AlphaSpec::equal(alpha, n)?);
            let p_hi = (window.1 * n as f64).floor() as usize;
            let occ = e.occupations(p_hi);
            let mut best = (0.0f64, 0usize);
            let mut sites = 0;
            for (p, o) in occ.iter().enumerate() {
                let s = p as f64 / n as f64;
                if s > window.0 && s < window.1 {
                    sites += 1;
                    let d = (o - shape.density(s)).abs();
                    if d > best.0 {
                        best = (d, p);
                    }
                }
            }
            Ok(BulkComparison { n, sup_norm: best.0, argmax_p: best.1, sites })
        })
        .collect::<Result<Vec<_>>>()?;
    let first = rows.iter().min_by_key(|r| r.n).expect("non-empty");
    let last = rows.iter().max_by_key(|r| r.n).expect("non-empty");
    let improvement = first.sup_norm / last.sup_norm;
    Ok(LimitConvergenceReport { alpha, margin, window, rows, improvement })
}

/// One row of the two-curve comparison: finite-N occupation and the limit shape.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ShapePoint {
    pub p: usize,
    pub sigma: f64,
    pub finite: f64,
    pub limit: f64,
}

pub fn limit_curves(alpha: f64, n: usize, p_max: usize) -> Result<Vec<ShapePoint>> {
    let shape = LimitShape::new(alpha)?;
    let e = ExactEnsemble::new(AlphaSpec::equal(alpha, n)?);
    Ok(e.occupations(p_max)
        .into_iter()
        .enumerate()
        .map(|(p, finite)| {
            let sigma = p as f64 / n as f64;
            ShapePoint { p, sigma, finite, limit: shape.density(sigma) }
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct PlateauReport {
    pub n: usize,
    /// Sites with `p/N` at or below this value are checked.
    pub sigma_max: f64,
    pub sites: usize,
    pub min_occupation: f64,
    pub max_occupation: f64,
}

/// Occupation range on the saturated region `p/N ≤ b − margin·N^{-2/3}`.
pub fn plateau_check(alpha: f64, n: usize, margin: f64) -> Result<PlateauReport> {
    let shape = LimitShape::new(alpha)?;
    let sigma_max = shape.b() - margin * (n as f64).powf(-2.0 / 3.0);
    if sigma_max < 0.0 {
        return Err(EnsembleError::Domain { value: sigma_max, reason: "no saturated sites at this size".into() });
    }
    let p_hi = (sigma_max * n as f64).floor() as usize;
    let occ = ExactEnsemble::new(AlphaSpec::equal(alpha, n)?).occupations(p_hi);
    Ok(PlateauReport {
        n,
        sigma_max,
        sites: occ.len(),
        min_occupation: occ.iter().copied().fold(f64::INFINITY, f64::min),
        max_occupation: occ.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentFit {
    pub exponent: f64,
    pub intercept: f64,
    /// Range of `a − σ` used in the fit.
    pub window: (f64, f64),
    pub points: usize,
}

/// Log-log least-squares slope of `ρ(a − δ)` against `δ`.
pub fn fit_edge_exponent(shape: &LimitShape<f64>, window: (f64, f64), points: usize) -> Result<ExponentFit> {
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo && hi < shape.a() - shape.b()) || points < 2 {
        return Err(EnsembleError::Domain { value: lo, reason: "degenerate edge fit window".into() });
    }
    let (ll, lh) = (lo.ln(), hi.ln());
    let xs: Vec<f64> = (0..points).map(|i| ll + (lh - ll) * i as f64 / (points - 1) as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| shape.density(shape.a() - x.exp()).ln()).collect();
    let n = points as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let exponent = sxy / sxx;
    Ok(ExponentFit { exponent, intercept: my - exponent * mx, window, points })
}

/// Finite-N edge profile `g = N^{1/3}·N·ρ(p)` against `x = (p/N − a)·N^{2/3}`.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeProfile {
    pub n: usize,
    pub xs: Vec<f64>,
    pub gs: Vec<f64>,
}

pub fn edge_profile(alpha: f64, n: usize, x_half_width: f64) -> Result<EdgeProfile> {
    let shape = LimitShape::new(alpha)?;
    let nf = n as f64;
    let scale = nf.powf(2.0 / 3.0);
    let p_hi = ((shape.a() + x_half_width / scale) * nf).ceil() as usize + 1;
    let occ = ExactEnsemble::new(AlphaSpec::equal(alpha, n)?).occupations(p_hi);
    let (mut xs, mut gs) = (Vec::new(), Vec::new());
    for (p, o) in occ.iter().enumerate() {
        let x = (p as f64 / nf - shape.a()) * scale;
        if x.abs() <= x_half_width {
            xs.push(x);
            gs.push(nf.cbrt() * o);
        }
    }
    Ok(EdgeProfile { n, xs, gs })
}

fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let i = xs.partition_point(|&v| v <= x).clamp(1, xs.len() - 1);
    let t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    ys[i - 1] + t * (ys[i] - ys[i - 1])
}

/// Sup of `|g_1 − g_2|` on the common `x` range, relative to `max |g_2|`.
pub fn collapse_distance(first: &EdgeProfile, second: &EdgeProfile) -> Result<f64> {
    if first.xs.len() < 2 || second.xs.len() < 2 {
        return Err(EnsembleError::Domain { value: 0.0, reason: "edge profiles need at least two points".into() });
    }
    let lo = first.xs[0].max(second.xs[0]);
    let hi = first.xs[first.xs.len() - 1].min(second.xs[second.xs.len() - 1]);
    let grid = 400;
    let mut worst = 0.0f64;
    for i in 0..=grid {
        let x = lo + (hi - lo) * i as f64 / grid as f64;
        worst = worst.max((interpolate(&first.xs, &first.gs, x) - interpolate(&second.xs, &second.gs, x)).abs());
    }
    let scale = second.gs.iter().fold(0.0f64, |m, g| m.max(g.abs()));
    Ok(worst / scale)
}

/// `∫_0^∞ θ^{-1/2} e^{−xθ − Bθ³} dθ`, split at `θ = 1` with `θ = s²` on both pieces.
pub fn scaling_integral(x: f64, b: f64) -> Result<f64> {
    if b.is_nan() || b <= 0.0 {
        return Err(EnsembleError::Domain { value: b, reason: "cubic coefficient must be positive".into() });
    }
    let f = |s: f64| 2.0 * (-x * s * s - b * s.powi(6)).exp();
    let head = quad::integrate(f, 0.0, 1.0, 1e-13, 10_000)?;
    // Past s_end the exponent is below -745 and the integrand underflows.
    let mut s_end = 1.0f64;
    while x * s_end * s_end + b * s_end.powi(6) < 745.0 {
        s_end *= 1.25;
    }
    let tail = quad::integrate(f, 1.0, s_end, 1e-13, 10_000)?;
    Ok(head.value + tail.value)
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeReport {
    pub alpha: f64,
    pub fit: ExponentFit,
    pub profiles: Vec<EdgeProfile>,
    /// Relative collapse distance between consecutive sizes.
    pub collapse: Vec<(usize, usize, f64)>,
    pub max_collapse: f64,
    /// `(x, I(x))` samples of the scaling integral.
    pub scaling: Vec<(f64, f64)>,
}

#[derive(Clone, Debug)]
pub struct EdgeOptions {
    pub fit_window: (f64, f64),
    pub fit_points: usize,
    pub x_half_width: f64,
    pub cubic: f64,
    pub scaling_xs: Vec<f64>,
}

impl Default for EdgeOptions {
    fn default() -> Self {
        Self {
            fit_window: (1e-4, 1e-2),
            fit_points: 41,
            x_half_width: 3.0,
            cubic: 1.0,
            scaling_xs: (0..=12).map(|i| -3.0 + 0.5 * i as f64).collect(),
        }
    }
}

pub fn edge_scaling_check(alpha: f64, ns: &[usize], opts: &EdgeOptions) -> Result<EdgeReport> {
    if ns.len() < 2 {
        return Err(EnsembleError::Config("edge collapse needs at least two sizes".into()));
    }
    let shape = LimitShape::new(alpha)?;
    let fit = fit_edge_exponent(&shape, opts.fit_window, opts.fit_points)?;
    let mut sizes = ns.to_vec();
    sizes.sort_unstable();
    let profiles = sizes
        .par_iter()
        .map(|&n| edge_profile(alpha, n, opts.x_half_width))
        .collect::<Result<Vec<_>>>()?;
    let collapse = profiles
        .windows(2)
        .map(|w| Ok((w[0].n, w[1].n, collapse_distance(&w[0], &w[1])?)))
        .collect::<Result<Vec<_>>>()?;
    let max_collapse = collapse.iter().map(|c| c.2).fold(0.0, f64::max);
    let scaling = opts
        .scaling_xs
        .iter()
        .map(|&x| Ok((x, scaling_integral(x, opts.cubic)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EdgeReport { alpha, fit, profiles, collapse, max_collapse, scaling })
}

/// Bulk pair correlation magnitude `sin²(πρ̄s) / (πs)²`.
pub fn sine_kernel_prediction(rho_bar: f64, s: usize) -> f64 {
    let x = std::f64::consts::PI * s as f64;
    (x * rho_bar).sin().powi(2) / (x * x)
}

#[derive(Clone, Debug, Serialize)]
pub struct SineRow {
    pub separation: usize,
    /// Connected correlator `ρ(p, p+s)` from the exact kernel (occupation units).
    pub exact: f64,
    pub prediction: f64,
    /// `|exact| / prediction`.
    pub ratio: f64,
    /// `| |C(s)| − |C(s₀)|·S(s)/S(s₀) | / |C(s₀)|` with `s₀` the reference separation.
    pub shape_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SineReport {
    pub alpha: f64,
    pub n: usize,
    pub center: usize,
    pub rho_bar: f64,
    pub reference_separation: usize,
    pub rows: Vec<SineRow>,
    pub max_shape_deviation: f64,
}

/// Default bulk center: the midpoint of the support in `p`.
pub fn bulk_center(alpha: f64, n: usize) -> Result<usize> {
    let s = LimitShape::new(alpha)?;
    Ok((n as f64 * 0.5 * (s.a() + s.b())).round() as usize)
}

/// Compares exact connected correlators at `(c, c+s)` with the sine-kernel shape,
/// using the exact local occupation at `c` as `ρ̄`.
pub fn sine_kernel_check(alpha: f64, n: usize, center: Option<usize>, separations: &[usize]) -> Result<SineReport> {
    let shape = LimitShape::new(alpha)?;
    let center = match center {
        Some(c) => c,
        None => bulk_center(alpha, n)?,
    };
    let sigma = center as f64 / n as f64;
    if !(sigma > shape.b() && sigma < shape.a()) {
        return Err(EnsembleError::Domain { value: sigma, reason: "center lies outside the bulk (b, a)".into() });
    }
    let e = ExactEnsemble::new(AlphaSpec::equal(alpha, n)?);
    let rho_bar = e.occupation(center);
    let s0 = *separations
        .iter()
        .find(|&&s| s > 0 && sine_kernel_prediction(rho_bar, s) > 1e-6)
        .ok_or_else(|| EnsembleError::Config("no separation with a non-vanishing prediction".into()))?;
    let c0 = e.pair_correlator(center, center + s0).abs();
    let p0 = sine_kernel_prediction(rho_bar, s0);
    let rows: Vec<SineRow> = separations
        .iter()
        .map(|&s| {
            let exact = e.pair_correlator(center, center + s);
            let prediction = sine_kernel_prediction(rho_bar, s);
            SineRow {
                separation: s,
                exact,
                prediction,
                ratio: exact.abs() / prediction,
                shape_deviation: (exact.abs() - c0 * prediction / p0).abs() / c0,
            }
        })
        .collect();
    let max_shape_deviation = rows.iter().map(|r| r.shape_deviation).fold(0.0, f64::max);
    Ok(SineReport { alpha, n, center, rho_bar, reference_separation: s0, rows, max_shape_deviation })
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturatedReport {
    pub n: usize,
    pub sites: Vec<usize>,
    pub max_abs_correlation: f64,
}

/// Largest `|ρ(p, p+s)|` over saturated sites `p` (below `b·N` by `margin·N^{1/3}`).
pub fn saturated_check(alpha: f64, n: usize, separations: &[usize], margin: f64) -> Result<SaturatedReport> {
    let shape = LimitShape::new(alpha)?;
    let nf = n as f64;
    let limit = shape.b() * nf - margin * nf.cbrt();
    let top_sep = separations.iter().copied().max().unwrap_or(0) as f64;
    if limit - top_sep < 1.0 {
        return Err(EnsembleError::Domain { value: limit, reason: "no saturated sites at this size".into() });
    }
    let last = (limit - top_sep).floor() as usize;
    let e = ExactEnsemble::new(AlphaSpec::equal(alpha, n)?);
    let sites: Vec<usize> = (0..=last).collect();
    let max_abs_correlation = sites
        .par_iter()
        .map(|&p| separations.iter().map(|&s| e.pair_correlator(p, p + s).abs()).fold(0.0, f64::max))
        .reduce(|| 0.0, f64::max);
    Ok(SaturatedReport { n, sites, max_abs_correlation })
}

/// Small-weight occupation `P_∞(p) = 1 − e^{−ρ} Σ_{j≤p} M_j(ρ)²`, the limit of `N·ρ(p)` at
/// `α = 1 − ρ/N`. Evaluated as `−expm1(−ρ) − e^{−ρ} Σ_{1≤j≤p} M_j²` to keep small `ρ` accurate.
pub fn small_weight_density(p: usize, rho: f64) -> f64 {
    let m = laguerre_m_values(p, &rho);
    let s: f64 = m[1..].iter().map(|x| x * x).sum();
    -(-rho).exp_m1() - (-rho).exp() * s
}

/// The adjacent-product form `−e^{−ρ} Σ_{k≤p} M_k M_{k+1}`. Its small-`ρ` expansion is
/// `ρ − (p+1)ρ²`, but it does not match finite-N occupations; kept for comparison.
pub fn small_weight_density_adjacent(p: usize, rho: f64) -> f64 {
    let m = laguerre_m_values(p + 1, &rho);
    -(-rho).exp() * (0..=p).map(|k| m[k] * m[k + 1]).sum::<f64>()
}

/// `R_∞(p, q) = Σ_{k=0}^{min(p,q)} M_{p−k} M_{q−k}`.
pub fn small_weight_correlator(p: usize, q: usize, rho: f64) -> f64 {
    let m = laguerre_m_values(p.max(q), &rho);
    (0..=p.min(q)).map(|k| m[p - k] * m[q - k]).sum()
}

/// Small-weight kernel `δ_pq − e^{−ρ} R_∞(p,q)`.
pub fn small_weight_kernel(p: usize, q: usize, rho: f64) -> f64 {
    let delta = if p == q { 1.0 } else { 0.0 };
    delta - (-rho).exp() * small_weight_correlator(p, q, rho)
}

/// Connected pair correlator `−K(p,q)K(q,p)` in the small-weight limit.
pub fn small_weight_pair(p: usize, q: usize, rho: f64) -> f64 {
    -small_weight_kernel(p, q, rho) * small_weight_kernel(q, p, rho)
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallWeightRow {
    pub p: usize,
    pub finite: f64,
    pub limit: f64,
    pub difference: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallWeightBridge {
    pub rho: f64,
    pub n: usize,
    pub rows: Vec<SmallWeightRow>,
    pub max_difference: f64,
}

/// Exact `N·ρ(p)` at `α = 1 − ρ/N` against `P_∞(p)`.
pub fn small_weight_bridge(rho: f64, n: usize, p_max: usize) -> Result<SmallWeightBridge> {
    if !(rho > 0.0 && rho < n as f64) {
        return Err(EnsembleError::Domain { value: rho, reason: "need 0 < rho < n".into() });
    }
    let e = ExactEnsemble::new(AlphaSpec::equal(1.0 - rho / n as f64, n)?);
    let rows: Vec<SmallWeightRow> = e
        .occupations(p_max)
        .into_iter()
        .enumerate()
        .map(|(p, finite)| {
            let limit = small_weight_density(p, rho);
            SmallWeightRow { p, finite, limit, difference: (finite - limit).abs() }
        })
        .collect();
    let max_difference = rows.iter().map(|r| r.difference).fold(0.0, f64::max);
    Ok(SmallWeightBridge { rho, n, rows, max_difference })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionRow {
    pub p: usize,
    pub computed: f64,
    /// `ρ − (p+1)ρ²`.
    pub expansion: f64,
    pub difference: f64,
}

/// `P_∞(p)` against the two-term expansion `ρ − (p+1)ρ²`.
pub fn small_weight_expansion_check(rho: f64, p_max: usize) -> Vec<ExpansionRow> {
    (0..=p_max)
        .map(|p| {
            let computed = small_weight_density(p, rho);
            let expansion = rho - (p as f64 + 1.0) * rho * rho;
            ExpansionRow { p, computed, expansion, difference: (computed - expansion).abs() }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn endpoints_exact_for_quarter() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let (a, b) = endpoints_from_sqrt(&half);
        assert_eq!(a, BigRational::from_integer(BigInt::from(3)));
        assert_eq!(b, BigRational::new(BigInt::from(1), BigInt::from(3)));
        let s = LimitShape::new(0.25).unwrap();
        assert_eq!(s.a(), 3.0);
        assert!((s.b() - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn endpoint_identities() {
        for alpha in [0.01, 0.1, 0.5, 0.9, 0.999] {
            let s = LimitShape::new(alpha).unwrap();
            assert!((s.a() * s.b() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn density_limits_and_plateau() {
        let s = LimitShape::new(0.3).unwrap();
        assert_eq!(s.density(0.5 * s.b()), 1.0);
        assert_eq!(s.density(s.b()), 1.0);
        assert!((s.density(s.b() + 1e-12) - 1.0).abs() < 1e-5);
        assert!(s.density(s.a() - 1e-12) < 1e-5);
        assert_eq!(s.density(s.a()), 0.0);
        assert!((s.mass(1e-10).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn f32_shape() {
        let s = LimitShape::<f32>::new(0.25).unwrap();
        assert!((s.a() - 3.0).abs() < 1e-6);
        assert!((s.density(1.0) - LimitShape::new(0.25).unwrap().density(1.0) as f32).abs() < 1e-5);
    }

    #[test]
    fn log_and_arctan_forms_agree() {
        let s = LimitShape::new(0.25).unwrap();
        for i in 1..1000 {
            let x = s.b() + (s.a() - s.b()) * i as f64 / 1000.0;
            assert!((s.density(x) - s.density_log_form(x)).abs() < 1e-12);
        }
        assert!((s.density_log_form(0.2) - 1.0).abs() < 1e-12);
        assert!(s.density_log_form(3.5) < 1e-12);
    }

    #[test]
    fn solver_matches_closed_form() {
        let alpha = 0.25;
        let shape = LimitShape::new(alpha).unwrap();
        let m = AtomicMeasure::from_alphas(&AlphaSpec::equal(alpha, 5).unwrap());
        let opts = ResolventOptions::default();
        for i in 1..200 {
            let x = shape.b() + (shape.a() - shape.b()) * i as f64 / 200.0;
            let r = solve_resolvent(x, &m, &opts).unwrap();
            assert!((r.density - shape.density(x)).abs() < 1e-10, "x={x}");
            let u = shape.resolvent_u(Complex64::new(x, 0.0));
            assert!((r.u - u).norm() < 1e-9);
        }
        let far = solve_resolvent(1e6, &m, &opts).unwrap();
        assert!((far.u - 1.0).norm() < 1e-5 && far.g.norm() < 1e-5);
        assert!(solve_resolvent(-1.0, &m, &opts).is_err());
    }

    #[test]
    fn two_atom_mass() {
        let m = AtomicMeasure::new(vec![(0.2, 0.5), (0.6, 0.5)]).unwrap();
        let mass = resolvent_mass(&m, &ResolventOptions::default(), 1e-7).unwrap();
        assert!((mass - 1.0).abs() < 1e-5, "mass {mass}");
    }

    #[test]
    fn edge_exponent_is_half() {
        let s = LimitShape::new(0.25).unwrap();
        let fit = fit_edge_exponent(&s, (1e-4, 1e-2), 41).unwrap();
        assert!((fit.exponent - 0.5).abs() < 0.02);
        assert!(fit_edge_exponent(&s, (1e-2, 1e-4), 41).is_err());
    }

    #[test]
    fn scaling_integral_decays() {
        let mut prev = f64::INFINITY;
        for i in 0..20 {
            let v = scaling_integral(i as f64, 1.0).unwrap();
            assert!(v < prev && v > 0.0);
            prev = v;
        }
        // B → 0 reduces to √(π/x).
        let v = scaling_integral(4.0, 1e-12).unwrap();
        assert!((v - (std::f64::consts::PI / 4.0).sqrt()).abs() < 1e-8);
    }

    #[test]
    fn sine_prediction_zeros() {
        assert!(sine_kernel_prediction(0.5, 2) < 1e-30);
        assert!(sine_kernel_prediction(0.5, 4) < 1e-30);
        assert!(sine_kernel_prediction(1.0, 3) < 1e-30);
    }

    #[test]
    fn small_weight_low_orders() {
        let rho = 0.3;
        assert!((small_weight_density(0, rho) - (1.0 - (-rho).exp())).abs() < 1e-16);
        let mut prev = f64::INFINITY;
        for p in 0..=20 {
            let v = small_weight_density(p, 0.05);
            assert!(v < prev && v > 0.0);
            prev = v;
        }
        assert!((small_weight_correlator(0, 0, rho) - 1.0).abs() < 1e-16);
        assert!((small_weight_correlator(3, 0, rho) - crate::series::laguerre_m(3, &rho)).abs() < 1e-15);
        assert_eq!(small_weight_kernel(2, 5, rho), small_weight_kernel(2, 5, rho));
        assert!(small_weight_pair(2, 5, rho) <= 0.0);
    }

    #[test]
    fn small_weight_correlator_expansion() {
        let rho = 1e-4;
        for (p, q) in [(0usize, 1usize), (1, 2), (3, 4), (2, 5), (5, 1)] {
            let want = -rho + (p.min(q) as f64 + (p.abs_diff(q) as f64 - 1.0) / 2.0) * rho * rho;
            assert!((small_weight_correlator(p, q, rho) - want).abs() < 50.0 * rho.powi(3));
        }
    }
}
