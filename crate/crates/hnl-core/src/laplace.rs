//! Band-partitioned Fourier-series inverse Laplace transform.
//!
//! The inversion discretizes the Bromwich integral on the vertical contour
//! `Re(s) = gamma` with the trapezoid rule:
//!
//! ```text
//! f(t) ≈ (e^{γt}/T) · [ f̄(γ)/2 + Σ_{k=1}^{N} Re{ f̄(γ + ikπ/T) · e^{ikπt/T} } ]
//! ```
//!
//! valid for `t ∈ [0, 2T)` (the series is 2T-periodic). Term `k`
//! contributes a cosine at `k/2T` cycles per time unit, so truncating at
//! `N` caps spectral content at `N/2T`. Choosing `N_i = T·f_r^i` for each
//! sampling resolution `f_r^i` therefore makes the coefficient indices
//! `(N_{i-1}, N_i]` a frequency band: summing bands `1..=i` reconstructs
//! exactly the content representable at resolution `f_r^i`.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

/// Tolerance for `T·f_r` landing on an integer anchor in strict mode.
pub const ANCHOR_ROUNDING_TOL: f64 = 1e-9;

/// Number of trailing complex partial sums fed to the convergence
/// accelerator in [`ilt_evaluate_accelerated`].
const ACCEL_TAIL: usize = 13;
const ACCEL_ROUNDS: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum LaplaceError {
    EmptyResolutions,
    NonPositiveResolution { value: f64 },
    NonAscendingResolutions { index: usize },
    NonPositiveHorizon { value: f64 },
    /// `T·f_r` further than [`ANCHOR_ROUNDING_TOL`] from an integer.
    NonIntegerAnchor { product: f64 },
    /// Rounded anchors collided or were zero.
    DegenerateAnchor { band: usize },
    BandOutOfRange { band: usize, bands: usize },
    /// Evaluation time outside `[0, 2T)`.
    TimeOutOfWindow { time: f64, period: f64 },
    NonFiniteCoefficient { index: usize },
    CoefficientCountMismatch { expected: usize, got: usize },
    NonUniformSampling { index: usize },
    TooFewSamples { got: usize },
    SamplesNotFromZero { start: f64 },
}

impl fmt::Display for LaplaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyResolutions => write!(f, "resolution ladder is empty"),
            Self::NonPositiveResolution { value } => {
                write!(f, "resolution {value} is not positive")
            }
            Self::NonAscendingResolutions { index } => {
                write!(f, "resolutions must be strictly ascending (violated at index {index})")
            }
            Self::NonPositiveHorizon { value } => write!(f, "horizon {value} is not positive"),
            Self::NonIntegerAnchor { product } => {
                write!(f, "T·f_r = {product} is not an integer within {ANCHOR_ROUNDING_TOL:e}")
            }
            Self::DegenerateAnchor { band } => {
                write!(f, "anchor for band {band} is zero or not above the previous anchor")
            }
            Self::BandOutOfRange { band, bands } => {
                write!(f, "band {band} out of range (partition has {bands})")
            }
            Self::TimeOutOfWindow { time, period } => {
                write!(f, "time {time} outside the reconstruction window [0, {period})")
            }
            Self::NonFiniteCoefficient { index } => {
                write!(f, "coefficient at index {index} is not finite")
            }
            Self::CoefficientCountMismatch { expected, got } => {
                write!(f, "expected {expected} coefficients, got {got}")
            }
            Self::NonUniformSampling { index } => {
                write!(f, "sample spacing is not uniform at index {index}")
            }
            Self::TooFewSamples { got } => write!(f, "need at least 2 samples, got {got}"),
            Self::SamplesNotFromZero { start } => {
                write!(f, "samples must start at t = 0, got {start}")
            }
        }
    }
}

impl core::error::Error for LaplaceError {}

/// Frequency-band layout for a resolution ladder.
///
/// Holds the reconstruction period parameter `T` (the forecast horizon),
/// the contour abscissa `gamma`, the ascending resolutions
/// `f_r^1 < … < f_r^m` (samples per time unit), and the integer anchors
/// `N_i = T·f_r^i`. Band `i` owns coefficient indices `(N_{i-1}, N_i]`
/// with `N_0 = 0`; band 1 additionally owns the `k = 0` (DC) term.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BandPartition {
    horizon: f64,
    gamma: f64,
    resolutions: Vec<f64>,
    anchors: Vec<usize>,
}

impl BandPartition {
    /// Builds the partition with strict anchor rounding: `T·f_r` must be
    /// within [`ANCHOR_ROUNDING_TOL`] of an integer.
    pub fn new(resolutions: &[f64], horizon: f64, gamma: f64) -> Result<Self, LaplaceError> {
        Self::with_rounding(resolutions, horizon, gamma, true)
    }

    /// Like [`BandPartition::new`] but `strict = false` accepts any
    /// positive ladder, rounding `T·f_r` to the nearest integer.
    pub fn with_rounding(
        resolutions: &[f64],
        horizon: f64,
        gamma: f64,
        strict: bool,
    ) -> Result<Self, LaplaceError> {
        if resolutions.is_empty() {
            return Err(LaplaceError::EmptyResolutions);
        }
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(LaplaceError::NonPositiveHorizon { value: horizon });
        }
        let mut anchors = Vec::with_capacity(resolutions.len());
        let mut prev = 0usize;
        for (i, &r) in resolutions.iter().enumerate() {
            if !(r > 0.0) || !r.is_finite() {
                return Err(LaplaceError::NonPositiveResolution { value: r });
            }
            if i > 0 && r <= resolutions[i - 1] {
                return Err(LaplaceError::NonAscendingResolutions { index: i });
            }
            let product = horizon * r;
            let rounded = product.round();
            if strict && (product - rounded).abs() > ANCHOR_ROUNDING_TOL {
                return Err(LaplaceError::NonIntegerAnchor { product });
            }
            let anchor = rounded as usize;
            if anchor == 0 || anchor <= prev {
                return Err(LaplaceError::DegenerateAnchor { band: i + 1 });
            }
            anchors.push(anchor);
            prev = anchor;
        }
        Ok(Self { horizon, gamma, resolutions: resolutions.to_vec(), anchors })
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn resolutions(&self) -> &[f64] {
        &self.resolutions
    }

    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    /// Number of bands `m`.
    pub fn band_count(&self) -> usize {
        self.anchors.len()
    }

    /// Total coefficient count `N_m + 1` (the DC term plus `k = 1..=N_m`).
    pub fn coefficient_len(&self) -> usize {
        self.anchors[self.anchors.len() - 1] + 1
    }

    /// Inclusive index range `(first_k, last_k)` owned by 1-based `band`.
    /// Band 1 starts at `k = 0`, band `i > 1` at `N_{i-1} + 1`.
    pub fn band_bounds(&self, band: usize) -> Result<(usize, usize), LaplaceError> {
        if band == 0 || band > self.anchors.len() {
            return Err(LaplaceError::BandOutOfRange { band, bands: self.anchors.len() });
        }
        let first = if band == 1 { 0 } else { self.anchors[band - 2] + 1 };
        Ok((first, self.anchors[band - 1]))
    }

    /// Number of contour points in 1-based `band`.
    pub fn band_len(&self, band: usize) -> Result<usize, LaplaceError> {
        let (first, last) = self.band_bounds(band)?;
        Ok(last - first + 1)
    }

    /// Contour point `s_k = γ + ikπ/T`.
    pub fn s_point(&self, k: usize) -> Complex64 {
        Complex64::new(self.gamma, k as f64 * PI / self.horizon)
    }

    /// Nyquist-style cutoff `N_i/2T` of 1-based `band`, in cycles per
    /// time unit.
    pub fn band_cutoff(&self, band: usize) -> Result<f64, LaplaceError> {
        let (_, last) = self.band_bounds(band)?;
        Ok(last as f64 / (2.0 * self.horizon))
    }
}

/// Contour points for one band of a [`BandPartition`].
#[derive(Debug, Clone, PartialEq)]
pub struct SGrid {
    band: usize,
    first_k: usize,
    points: Vec<Complex64>,
}

impl SGrid {
    pub fn band(&self) -> usize {
        self.band
    }

    /// Coefficient index of `points()[0]`.
    pub fn first_k(&self) -> usize {
        self.first_k
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Builds the contour grid `s_k = γ + ikπ/T` for 1-based `band`.
pub fn make_s_grid(partition: &BandPartition, band: usize) -> Result<SGrid, LaplaceError> {
    let (first, last) = partition.band_bounds(band)?;
    let points = (first..=last).map(|k| partition.s_point(k)).collect();
    Ok(SGrid { band, first_k: first, points })
}

/// Complex Laplace-domain values `f̄(s_k)` for `k = 0..=N_m`, stored flat
/// so that the coefficients needed for resolution `i` are exactly the
/// prefix `0..=N_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    values: Vec<Complex64>,
}

impl CoefficientSet {
    pub fn zeros(partition: &BandPartition) -> Self {
        Self { values: alloc::vec![Complex64::new(0.0, 0.0); partition.coefficient_len()] }
    }

    /// Wraps explicit values; the length must match the partition and all
    /// values must be finite.
    pub fn from_values(
        partition: &BandPartition,
        values: Vec<Complex64>,
    ) -> Result<Self, LaplaceError> {
        if values.len() != partition.coefficient_len() {
            return Err(LaplaceError::CoefficientCountMismatch {
                expected: partition.coefficient_len(),
                got: values.len(),
            });
        }
        let set = Self { values };
        set.ensure_finite_through(partition, partition.band_count())?;
        Ok(set)
    }

    /// Samples an analytic Laplace function on the partition's full grid.
    pub fn from_laplace_fn<F>(partition: &BandPartition, f: F) -> Self
    where
        F: Fn(Complex64) -> Complex64,
    {
        let values = (0..partition.coefficient_len()).map(|k| f(partition.s_point(k))).collect();
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, k: usize) -> Complex64 {
        self.values[k]
    }

    pub fn set(&mut self, k: usize, v: Complex64) {
        self.values[k] = v;
    }

    /// The values owned by 1-based `band` (band 1 includes the DC term).
    pub fn band_slice(
        &self,
        partition: &BandPartition,
        band: usize,
    ) -> Result<&[Complex64], LaplaceError> {
        let (first, last) = partition.band_bounds(band)?;
        Ok(&self.values[first..=last])
    }

    fn ensure_finite_through(
        &self,
        partition: &BandPartition,
        max_band: usize,
    ) -> Result<(), LaplaceError> {
        let (_, last) = partition.band_bounds(max_band)?;
        for (k, v) in self.values.iter().enumerate().take(last + 1) {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(LaplaceError::NonFiniteCoefficient { index: k });
            }
        }
        Ok(())
    }
}

/// Per-band temporal contributions at a common set of evaluation times.
/// The components sum (band 1 first, ascending) to the full
/// reconstruction bit-for-bit; see [`temporal_components`].
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalComponentSet {
    times: Vec<f64>,
    components: Vec<Vec<f64>>,
}

impl TemporalComponentSet {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn band_count(&self) -> usize {
        self.components.len()
    }

    /// Contribution of 1-based `band` at each time.
    pub fn component(&self, band: usize) -> &[f64] {
        &self.components[band - 1]
    }

    /// Sum over bands, in ascending band order (the same order in which
    /// [`ilt_evaluate`] accumulates, so the totals match exactly).
    pub fn total(&self) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.times.len()];
        for comp in &self.components {
            for (o, c) in out.iter_mut().zip(comp) {
                *o += *c;
            }
        }
        out
    }
}

fn check_times(partition: &BandPartition, times: &[f64]) -> Result<(), LaplaceError> {
    let period = 2.0 * partition.horizon;
    for &t in times {
        if !t.is_finite() || t < 0.0 || t >= period {
            return Err(LaplaceError::TimeOutOfWindow { time: t, period });
        }
    }
    Ok(())
}

/// Trapezoid-rule series sum for one band at one time, excluding the
/// `e^{γt}/T` scale. Ascending `k`; band 1 starts with the `f̄(γ)/2` term.
/// Both [`ilt_evaluate`] and [`temporal_components`] go through here,
/// which is what makes band additivity exact.
fn band_series_sum(
    partition: &BandPartition,
    coeffs: &CoefficientSet,
    band: usize,
    t: f64,
) -> f64 {
    let (first, last) = partition.band_bounds(band).expect("validated band");
    let omega = PI * t / partition.horizon;
    let mut sum = 0.0;
    let mut k = first;
    if band == 1 {
        sum += coeffs.values[0].re * 0.5;
        k = 1;
    }
    while k <= last {
        let theta = k as f64 * omega;
        let c = coeffs.values[k];
        sum += c.re * theta.cos() - c.im * theta.sin();
        k += 1;
    }
    sum
}

/// Evaluates the truncated Fourier-series inversion over bands
/// `1..=max_band` at the given times.
///
/// Accumulation order is fixed: ascending `k` within each band, then
/// ascending bands, each band scaled by `e^{γt}/T` before adding.
pub fn ilt_evaluate(
    partition: &BandPartition,
    coeffs: &CoefficientSet,
    max_band: usize,
    times: &[f64],
) -> Result<Vec<f64>, LaplaceError> {
    if coeffs.len() != partition.coefficient_len() {
        return Err(LaplaceError::CoefficientCountMismatch {
            expected: partition.coefficient_len(),
            got: coeffs.len(),
        });
    }
    coeffs.ensure_finite_through(partition, max_band)?;
    check_times(partition, times)?;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let scale = (partition.gamma * t).exp() / partition.horizon;
        let mut total = 0.0;
        for band in 1..=max_band {
            total += scale * band_series_sum(partition, coeffs, band, t);
        }
        out.push(total);
    }
    Ok(out)
}

/// Splits the full reconstruction into per-band temporal components
/// `TC_1..TC_m`. Summing them (see [`TemporalComponentSet::total`])
/// reproduces [`ilt_evaluate`] over all bands exactly.
pub fn temporal_components(
    partition: &BandPartition,
    coeffs: &CoefficientSet,
    times: &[f64],
) -> Result<TemporalComponentSet, LaplaceError> {
    if coeffs.len() != partition.coefficient_len() {
        return Err(LaplaceError::CoefficientCountMismatch {
            expected: partition.coefficient_len(),
            got: coeffs.len(),
        });
    }
    let m = partition.band_count();
    coeffs.ensure_finite_through(partition, m)?;
    check_times(partition, times)?;
    let mut components = Vec::with_capacity(m);
    for band in 1..=m {
        let mut comp = Vec::with_capacity(times.len());
        for &t in times {
            let scale = (partition.gamma * t).exp() / partition.horizon;
            comp.push(scale * band_series_sum(partition, coeffs, band, t));
        }
        components.push(comp);
    }
    Ok(TemporalComponentSet { times: times.to_vec(), components })
}

/// Iterated Aitken Δ² extrapolation on complex partial sums. The series
/// tail behaves like `c_k·ρ^k` with `ρ = e^{iπt/T}`, a geometric mode
/// that Δ² removes; a few sweeps handle the slow variation of `c_k`.
fn aitken_accelerate(mut sums: Vec<Complex64>, rounds: usize) -> Complex64 {
    for _ in 0..rounds {
        if sums.len() < 3 {
            break;
        }
        let mut next = Vec::with_capacity(sums.len() - 2);
        for i in 0..sums.len() - 2 {
            let d1 = sums[i + 2] - sums[i + 1];
            let d2 = sums[i + 2] - sums[i + 1] * 2.0 + sums[i];
            if d2.norm_sqr() > 1e-280 {
                next.push(sums[i + 2] - d1 * d1 / d2);
            } else {
                next.push(sums[i + 2]);
            }
        }
        sums = next;
    }
    sums[sums.len() - 1]
}

/// Like [`ilt_evaluate`], with convergence acceleration on the series
/// tail. The plain partial sum converges slowly for Laplace functions
/// whose time signal does not decay (poles on the imaginary axis), where
/// the periodization discontinuity at `t = 2T` makes pointwise error
/// decay only like `e^{γt}/N`. Extrapolating the complex partial sums
/// restores the accuracy the contour choice was designed for. Use this
/// for analytic reference inversions; the banded model path keeps the
/// plain sum so components stay additive.
pub fn ilt_evaluate_accelerated(
    partition: &BandPartition,
    coeffs: &CoefficientSet,
    max_band: usize,
    times: &[f64],
) -> Result<Vec<f64>, LaplaceError> {
    if coeffs.len() != partition.coefficient_len() {
        return Err(LaplaceError::CoefficientCountMismatch {
            expected: partition.coefficient_len(),
            got: coeffs.len(),
        });
    }
    coeffs.ensure_finite_through(partition, max_band)?;
    check_times(partition, times)?;
    let (_, last) = partition.band_bounds(max_band)?;
    if last < ACCEL_TAIL + 2 {
        return ilt_evaluate(partition, coeffs, max_band, times);
    }
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let omega = PI * t / partition.horizon;
        let mut running = Complex64::new(0.0, 0.0);
        let mut tail = Vec::with_capacity(ACCEL_TAIL);
        for k in 1..=last {
            let theta = k as f64 * omega;
            let phase = Complex64::new(theta.cos(), theta.sin());
            running += coeffs.values[k] * phase;
            if k + ACCEL_TAIL > last {
                tail.push(running);
            }
        }
        let accelerated = aitken_accelerate(tail, ACCEL_ROUNDS);
        let scale = (partition.gamma * t).exp() / partition.horizon;
        out.push(scale * (coeffs.values[0].re * 0.5 + accelerated.re));
    }
    Ok(out)
}

/// Contour abscissa rule for analytic inversions: `α_max + ln(10^6)/2T`,
/// placing the aliasing error of the 2T-periodization near `10^{-6}`.
/// `alpha_max` is the largest real part over the poles of `f̄`.
pub fn crump_gamma(alpha_max: f64, horizon: f64) -> f64 {
    alpha_max + (1e6f64).ln() / (2.0 * horizon)
}

/// Result of the trapezoid forward transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForwardLaplace {
    pub value: Complex64,
    /// Set when `Re(s) ≤ 0` and the samples do not visibly decay, in
    /// which case the truncated integral is not trustworthy.
    pub non_decaying: bool,
}

/// Trapezoid approximation of `∫_0^{T_max} e^{-st} f(t) dt` from uniform
/// samples `(t_i, f(t_i))` starting at `t = 0`. Intended as a numerical
/// cross-check against analytically known transforms; truncation error is
/// `O(h²)` in the spacing plus the neglected tail beyond `T_max`.
pub fn numeric_forward_laplace(
    samples: &[(f64, f64)],
    s: Complex64,
) -> Result<ForwardLaplace, LaplaceError> {
    if samples.len() < 2 {
        return Err(LaplaceError::TooFewSamples { got: samples.len() });
    }
    if samples[0].0.abs() > 1e-12 {
        return Err(LaplaceError::SamplesNotFromZero { start: samples[0].0 });
    }
    let h = samples[1].0 - samples[0].0;
    for i in 1..samples.len() {
        let dt = samples[i].0 - samples[i - 1].0;
        if !((dt - h).abs() <= 1e-9 * h.max(1.0)) {
            return Err(LaplaceError::NonUniformSampling { index: i });
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev = integrand(samples[0], s);
    for &sample in &samples[1..] {
        let cur = integrand(sample, s);
        acc += (prev + cur) * (h * 0.5);
        prev = cur;
    }
    let quarter = (samples.len() / 4).max(1);
    let head: f64 =
        samples[..quarter].iter().map(|&(_, f)| f.abs()).sum::<f64>() / quarter as f64;
    let tail: f64 = samples[samples.len() - quarter..].iter().map(|&(_, f)| f.abs()).sum::<f64>()
        / quarter as f64;
    let non_decaying = s.re <= 0.0 && tail >= 0.5 * head && tail > 1e-12;
    Ok(ForwardLaplace { value: acc, non_decaying })
}

fn integrand((t, f): (f64, f64), s: Complex64) -> Complex64 {
    (-s * t).exp() * f
}
