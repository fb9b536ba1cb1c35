//! Periodic grid, Fourier transforms, spectral differentiation and the
//! fractional Helmholtz multipliers.
//!
//! Conventions used everywhere in the crate:
//! * samples live at `x_j = j L / N`, `j = 0..N`;
//! * spectra are stored in FFT order, index `i` holding the signed mode
//!   `n = i` for `i < N/2` and `n = i - N` otherwise, with angular
//!   wavenumber `k_n = 2 pi n / L`;
//! * the forward transform is normalized so that coefficient 0 is the mean
//!   of the samples, and spectra of real fields are kept exactly
//!   Hermitian-symmetric by construction.

use crate::error::{Error, Result};
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::fmt;
use std::sync::Arc;

pub struct PeriodicGrid {
    n: usize,
    length: f64,
    x: Vec<f64>,
    k: Vec<f64>,
    fft_fwd: Arc<dyn Fft<f64>>,
    fft_inv: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for PeriodicGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicGrid")
            .field("n", &self.n)
            .field("length", &self.length)
            .finish()
    }
}

impl PartialEq for PeriodicGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.length == other.length
    }
}

impl PeriodicGrid {
    pub fn new(n: usize, length: f64) -> Result<Arc<Self>> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGridSize(n));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidPeriod(length));
        }
        let dx = length / n as f64;
        let x: Vec<f64> = (0..n).map(|j| j as f64 * dx).collect();
        let k: Vec<f64> = (0..n)
            .map(|i| {
                let m = if i < n / 2 {
                    i as i64
                } else {
                    i as i64 - n as i64
                };
                2.0 * std::f64::consts::PI * m as f64 / length
            })
            .collect();
        let mut planner = FftPlanner::new();
        let fft_fwd = planner.plan_fft_forward(n);
        let fft_inv = planner.plan_fft_inverse(n);
        Ok(Arc::new(Self {
            n,
            length,
            x,
            k,
            fft_fwd,
            fft_inv,
        }))
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> f64 {
        self.length
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// Angular wavenumbers in FFT storage order.
    pub fn k(&self) -> &[f64] {
        &self.k
    }

    /// Signed mode number held at storage index `i`.
    pub fn mode_at(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Storage index of a signed mode in `[-N/2, N/2)`.
    pub fn index_of_mode(&self, m: i64) -> usize {
        if m >= 0 {
            m as usize
        } else {
            (m + self.n as i64) as usize
        }
    }

    pub fn nyquist_index(&self) -> usize {
        self.n / 2
    }

    /// Largest angular wavenumber magnitude on the grid.
    pub fn k_max(&self) -> f64 {
        std::f64::consts::PI * self.n as f64 / self.length
    }

    /// Wrap a coordinate into `[-L/2, L/2)`.
    pub fn wrap(&self, x: f64) -> f64 {
        let l = self.length;
        let mut s = x % l;
        if s >= l / 2.0 {
            s -= l;
        } else if s < -l / 2.0 {
            s += l;
        }
        s
    }
}

fn same_grid(a: &Field, b: &Field) -> Result<()> {
    if Arc::ptr_eq(&a.grid, &b.grid) || *a.grid == *b.grid {
        Ok(())
    } else {
        Err(Error::GridMismatch(a.grid.len(), b.grid.len()))
    }
}

/// Real-valued grid function carrying both sample and spectral views.
///
/// The spectrum is computed eagerly at construction, so values are immutable
/// afterwards and safe to share across threads.
#[derive(Debug, Clone)]
pub struct Field {
    grid: Arc<PeriodicGrid>,
    samples: Vec<f64>,
    spectrum: Vec<Complex64>,
}

impl Field {
    pub fn from_samples(grid: Arc<PeriodicGrid>, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::GridMismatch(grid.len(), samples.len()));
        }
        for (index, &value) in samples.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteSample { index, value });
            }
        }
        let spectrum = forward_transform(&grid, &samples);
        Ok(Self {
            grid,
            samples,
            spectrum,
        })
    }

    /// Build a field from spectral coefficients (FFT storage order). The
    /// coefficients are Hermitian-symmetrized first so the synthesized
    /// samples are exactly real.
    pub fn from_spectrum(grid: Arc<PeriodicGrid>, mut spectrum: Vec<Complex64>) -> Result<Self> {
        if spectrum.len() != grid.len() {
            return Err(Error::GridMismatch(grid.len(), spectrum.len()));
        }
        hermitian_symmetrize(&mut spectrum);
        let samples = inverse_transform(&grid, &spectrum);
        for (index, &value) in samples.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteSample { index, value });
            }
        }
        Ok(Self {
            grid,
            samples,
            spectrum,
        })
    }

    pub fn from_fn(grid: Arc<PeriodicGrid>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let samples = grid.x().iter().map(|&x| f(x)).collect();
        Self::from_samples(grid, samples)
    }

    pub fn zeros(grid: Arc<PeriodicGrid>) -> Self {
        let n = grid.len();
        Self {
            grid,
            samples: vec![0.0; n],
            spectrum: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn constant(grid: Arc<PeriodicGrid>, c: f64) -> Result<Self> {
        Self::from_samples(grid.clone(), vec![c; grid.len()])
    }

    pub fn grid(&self) -> &Arc<PeriodicGrid> {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn spectrum(&self) -> &[Complex64] {
        &self.spectrum
    }

    /// Apply a function to each spectral coefficient. If the new spectrum is
    /// bit-identical to the old one the original samples are kept, so that
    /// identity multipliers are exact.
    pub fn map_spectrum(&self, f: impl Fn(f64, Complex64) -> Complex64) -> Self {
        let mut spectrum: Vec<Complex64> = self
            .grid
            .k()
            .iter()
            .zip(self.spectrum.iter())
            .map(|(&k, &c)| f(k, c))
            .collect();
        if spectrum == self.spectrum {
            return self.clone();
        }
        hermitian_symmetrize(&mut spectrum);
        let samples = inverse_transform(&self.grid, &spectrum);
        Self {
            grid: self.grid.clone(),
            samples,
            spectrum,
        }
    }

    /// Spectral derivative of the given order. The Nyquist mode is zeroed
    /// for odd orders to keep the result a well-defined real field.
    pub fn derivative(&self, order: u32) -> Self {
        assert!(order >= 1, "derivative order must be >= 1");
        let ny = self.grid.nyquist_index();
        let mut spectrum: Vec<Complex64> = Vec::with_capacity(self.grid.len());
        for (i, (&k, &c)) in self.grid.k().iter().zip(self.spectrum.iter()).enumerate() {
            if i == ny && order % 2 == 1 {
                spectrum.push(Complex64::new(0.0, 0.0));
                continue;
            }
            let ik = Complex64::new(0.0, k);
            spectrum.push(ik.powi(order as i32) * c);
        }
        hermitian_symmetrize(&mut spectrum);
        let samples = inverse_transform(&self.grid, &spectrum);
        Self {
            grid: self.grid.clone(),
            samples,
            spectrum,
        }
    }

    pub fn add(&self, other: &Field) -> Result<Self> {
        self.add_scaled(other, 1.0)
    }

    pub fn sub(&self, other: &Field) -> Result<Self> {
        self.add_scaled(other, -1.0)
    }

    /// self + c * other, computed on samples (spectra re-derived linearly).
    pub fn add_scaled(&self, other: &Field, c: f64) -> Result<Self> {
        same_grid(self, other)?;
        let samples: Vec<f64> = self
            .samples
            .iter()
            .zip(other.samples.iter())
            .map(|(&a, &b)| a + c * b)
            .collect();
        let spectrum: Vec<Complex64> = self
            .spectrum
            .iter()
            .zip(other.spectrum.iter())
            .map(|(&a, &b)| a + b.scale(c))
            .collect();
        Ok(Self {
            grid: self.grid.clone(),
            samples,
            spectrum,
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|&a| c * a).collect(),
            spectrum: self.spectrum.iter().map(|&a| a.scale(c)).collect(),
        }
    }

    /// Pointwise product of the sample values.
    pub fn mul_pointwise(&self, other: &Field) -> Result<Self> {
        same_grid(self, other)?;
        let samples: Vec<f64> = self
            .samples
            .iter()
            .zip(other.samples.iter())
            .map(|(&a, &b)| a * b)
            .collect();
        Self::from_samples(self.grid.clone(), samples)
    }

    /// Zero all modes with |n| > N/3 (2/3-rule dealiasing).
    pub fn dealias(&self) -> Self {
        let cutoff = (self.grid.len() / 3) as i64;
        let grid = self.grid.clone();
        let mut changed = false;
        let spectrum: Vec<Complex64> = self
            .spectrum
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if grid.mode_at(i).abs() > cutoff {
                    if c != Complex64::new(0.0, 0.0) {
                        changed = true;
                    }
                    Complex64::new(0.0, 0.0)
                } else {
                    c
                }
            })
            .collect();
        if !changed {
            return self.clone();
        }
        let samples = inverse_transform(&grid, &spectrum);
        Self {
            grid,
            samples,
            spectrum,
        }
    }

    pub fn mean(&self) -> f64 {
        self.spectrum[0].re
    }

    /// Trapezoid/rectangle integral over one period (exact for trigonometric
    /// polynomials).
    pub fn integral(&self) -> f64 {
        self.grid.period() * self.mean()
    }

    pub fn l1_norm(&self) -> f64 {
        self.grid.dx() * self.samples.iter().map(|v| v.abs()).sum::<f64>()
    }

    pub fn l2_norm(&self) -> f64 {
        (self.grid.dx() * self.samples.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    pub fn linf_norm(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }

    /// Rectangle-rule L^p norm; `p = inf` is handled by `linf_norm`.
    pub fn lp_norm(&self, p: f64) -> f64 {
        assert!(p >= 1.0);
        (self.grid.dx()
            * self
                .samples
                .iter()
                .map(|v| v.abs().powf(p))
                .sum::<f64>())
        .powf(1.0 / p)
    }

    pub fn min(&self) -> (f64, usize) {
        let mut best = (f64::INFINITY, 0);
        for (i, &v) in self.samples.iter().enumerate() {
            if v < best.0 {
                best = (v, i);
            }
        }
        best
    }

    pub fn max(&self) -> (f64, usize) {
        let mut best = (f64::NEG_INFINITY, 0);
        for (i, &v) in self.samples.iter().enumerate() {
            if v > best.0 {
                best = (v, i);
            }
        }
        best
    }

    /// max_j |f(x_j) + f(-x_j)|, the deviation from oddness about x = 0.
    pub fn odd_defect(&self) -> f64 {
        let n = self.grid.len();
        let mut worst = 0.0f64;
        for j in 0..n {
            let jr = (n - j) % n;
            worst = worst.max((self.samples[j] + self.samples[jr]).abs());
        }
        worst
    }

    /// Evaluate the trigonometric interpolant at an arbitrary point.
    /// Direct O(N) summation; the Nyquist mode contributes a cosine.
    pub fn eval_at(&self, x: f64) -> f64 {
        let ny = self.grid.nyquist_index();
        let mut acc = self.spectrum[0].re;
        for i in 1..ny {
            let k = self.grid.k()[i];
            let c = self.spectrum[i];
            let (s, cv) = (k * x).sin_cos();
            acc += 2.0 * (c.re * cv - c.im * s);
        }
        let k_ny = self.grid.k()[ny].abs();
        acc += self.spectrum[ny].re * (k_ny * x).cos();
        acc
    }

    /// Derivative values of the interpolant at an arbitrary point.
    pub fn eval_derivative_at(&self, x: f64) -> f64 {
        let ny = self.grid.nyquist_index();
        let mut acc = 0.0;
        for i in 1..ny {
            let k = self.grid.k()[i];
            let c = self.spectrum[i];
            let (s, cv) = (k * x).sin_cos();
            // d/dx of 2(re cos(kx) - im sin(kx))
            acc += 2.0 * k * (-c.re * s - c.im * cv);
        }
        // Nyquist zeroed, consistent with `derivative`.
        acc
    }

    /// Translate by `shift` using the spectral phase factor.
    pub fn translate(&self, shift: f64) -> Self {
        let f = self.map_spectrum(|k, c| {
            let (s, cv) = (k * shift).sin_cos();
            c * Complex64::new(cv, -s)
        });
        f
    }

    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|v| v.is_finite())
    }
}

/// Forward DFT normalized so coefficient 0 is the sample mean, with the
/// result forced exactly Hermitian-symmetric.
pub fn forward_transform(grid: &PeriodicGrid, samples: &[f64]) -> Vec<Complex64> {
    let n = grid.len();
    let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    grid.fft_fwd.process(&mut buf);
    let scale = 1.0 / n as f64;
    for c in buf.iter_mut() {
        *c = c.scale(scale);
    }
    hermitian_symmetrize(&mut buf);
    buf
}

/// Inverse DFT (synthesis); real parts of the synthesized samples.
pub fn inverse_transform(grid: &PeriodicGrid, spectrum: &[Complex64]) -> Vec<f64> {
    let mut buf = spectrum.to_vec();
    grid.fft_inv.process(&mut buf);
    buf.iter().map(|c| c.re).collect()
}

/// Force exact Hermitian symmetry: c[-n] = conj(c[n]), real mean and
/// Nyquist coefficients.
pub fn hermitian_symmetrize(spectrum: &mut [Complex64]) {
    let n = spectrum.len();
    spectrum[0] = Complex64::new(spectrum[0].re, 0.0);
    if n % 2 == 0 {
        let ny = n / 2;
        spectrum[ny] = Complex64::new(spectrum[ny].re, 0.0);
    }
    for i in 1..n / 2 {
        let j = n - i;
        let avg = 0.5 * (spectrum[i] + spectrum[j].conj());
        spectrum[i] = avg;
        spectrum[j] = avg.conj();
    }
}

/// Fourier multiplier operator defined by a real symbol of the wavenumber.
pub struct Multiplier {
    label: String,
    symbol: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multiplier({})", self.label)
    }
}

impl Multiplier {
    pub fn new(label: impl Into<String>, symbol: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            symbol: Box::new(symbol),
        }
    }

    /// Symbol (1 + k^2)^a of the fractional Helmholtz operator.
    pub fn helmholtz(a: f64) -> Self {
        Self::new(format!("(1 - d_xx)^{a}"), move |k| (1.0 + k * k).powf(a))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, k: f64) -> f64 {
        (self.symbol)(k)
    }

    pub fn apply(&self, f: &Field) -> Field {
        f.map_spectrum(|k, c| c.scale((self.symbol)(k)))
    }
}

/// (1 - d_xx)^a f, as a spectral multiplier.
pub fn helmholtz_apply(f: &Field, a: f64) -> Field {
    Multiplier::helmholtz(a).apply(f)
}

/// (1 - d_xx)^{-a} f.
pub fn helmholtz_invert(f: &Field, a: f64) -> Field {
    Multiplier::helmholtz(-a).apply(f)
}

/// Seeded band-limited pseudo-random field. Coefficients for modes
/// 1..=band are uniform in the unit square scaled by (1+k^2)^{-decay/2};
/// the mean mode is a uniform real unless a parity is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Any,
    Even,
    Odd,
}

pub fn random_field(
    grid: &Arc<PeriodicGrid>,
    seed: u64,
    band: usize,
    decay: f64,
    parity: Parity,
) -> Field {
    let mut rng = crate::rng::SplitMix64::new(seed);
    let n = grid.len();
    let band = band.min(n / 2 - 1);
    let mut spectrum = vec![Complex64::new(0.0, 0.0); n];
    spectrum[0] = match parity {
        Parity::Odd => Complex64::new(0.0, 0.0),
        _ => Complex64::new(rng.next_signed(), 0.0),
    };
    for m in 1..=band {
        let k = grid.k()[m];
        let w = (1.0 + k * k).powf(-decay / 2.0);
        let (re, im) = (rng.next_signed(), rng.next_signed());
        let c = match parity {
            Parity::Any => Complex64::new(re, im),
            // real even coefficients give an even field, purely imaginary give odd
            Parity::Even => Complex64::new(re, 0.0),
            Parity::Odd => Complex64::new(0.0, im),
        };
        spectrum[m] = c.scale(w);
        spectrum[n - m] = spectrum[m].conj();
    }
    Field::from_spectrum(grid.clone(), spectrum).expect("random field is finite")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, l: f64) -> Arc<PeriodicGrid> {
        PeriodicGrid::new(n, l).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(PeriodicGrid::new(7, 1.0).is_err());
        assert!(PeriodicGrid::new(12, 1.0).is_err());
        assert!(PeriodicGrid::new(8, 0.0).is_err());
        assert!(PeriodicGrid::new(8, -2.0).is_err());
        assert!(PeriodicGrid::new(8, f64::NAN).is_err());
        let g = grid(16, 4.0);
        assert_eq!(g.len(), 16);
        // strictly increasing, equispaced samples
        for j in 1..16 {
            assert!(g.x()[j] > g.x()[j - 1]);
            assert!((g.x()[j] - g.x()[j - 1] - g.dx()).abs() < 1e-15);
        }
    }

    #[test]
    fn constant_field_spectrum() {
        let g = grid(32, 5.0);
        let f = Field::constant(g, 1.0).unwrap();
        assert!((f.spectrum()[0].re - 1.0).abs() < 1e-14);
        for i in 1..32 {
            assert!(f.spectrum()[i].norm() < 1e-14);
        }
    }

    #[test]
    fn cosine_mode_coefficients() {
        let l = 2.0 * std::f64::consts::PI;
        let g = grid(64, l);
        let f = Field::from_fn(g, |x| (2.0 * std::f64::consts::PI * x / l).cos()).unwrap();
        assert!((f.spectrum()[1].re - 0.5).abs() < 1e-13);
        assert!((f.spectrum()[63].re - 0.5).abs() < 1e-13);
        for i in 0..64 {
            if i != 1 && i != 63 {
                assert!(f.spectrum()[i].norm() < 1e-13, "mode {i}");
            }
        }
    }

    #[test]
    fn hermitian_symmetry_is_exact() {
        let g = grid(128, 11.0);
        let f = random_field(&g, 99, 50, 0.4, Parity::Any);
        let n = g.len();
        for i in 1..n / 2 {
            assert_eq!(f.spectrum()[i], f.spectrum()[n - i].conj());
        }
        assert_eq!(f.spectrum()[0].im, 0.0);
        assert_eq!(f.spectrum()[n / 2].im, 0.0);
    }

    #[test]
    fn round_trip_identity() {
        let g = grid(256, 17.0);
        let f = random_field(&g, 3, 100, 0.2, Parity::Any);
        let back = Field::from_samples(g.clone(), f.samples().to_vec()).unwrap();
        let diff = f.sub(&back).unwrap().l2_norm();
        assert!(diff <= 1e-12 * f.l2_norm().max(1.0));
    }

    #[test]
    fn parseval_many_fields() {
        let g = grid(128, 9.0);
        for seed in 0..100u64 {
            let f = random_field(&g, seed, 60, 0.1, Parity::Any);
            let phys = (f.samples().iter().map(|v| v * v).sum::<f64>() / 128.0).sqrt();
            let spec = f
                .spectrum()
                .iter()
                .map(|c| c.norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!((phys - spec).abs() <= 1e-12 * phys.max(1e-300));
        }
    }

    #[test]
    fn non_finite_sample_named() {
        let g = grid(8, 1.0);
        let mut v = vec![0.0; 8];
        v[5] = f64::NAN;
        match Field::from_samples(g, v) {
            Err(Error::NonFiniteSample { index, .. }) => assert_eq!(index, 5),
            other => panic!("expected NonFiniteSample, got {other:?}"),
        }
    }

    #[test]
    fn derivative_of_sine() {
        let l = 2.0 * std::f64::consts::PI;
        let g = grid(64, l);
        let k = 3.0;
        let f = Field::from_fn(g.clone(), |x| (k * x).sin()).unwrap();
        let df = f.derivative(1);
        let exact = Field::from_fn(g, |x| k * (k * x).cos()).unwrap();
        let err = df.sub(&exact).unwrap().linf_norm();
        assert!(err <= 1e-10 * exact.linf_norm());
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let g = grid(32, 3.0);
        let f = Field::constant(g, 4.2).unwrap();
        assert!(f.derivative(1).linf_norm() < 1e-14);
    }

    #[test]
    fn second_derivative_matches_finite_differences() {
        // Gaussian bump; centered FD with h = L/N is the independent check.
        let l = 40.0;
        let n = 512;
        let g = grid(n, l);
        let f = Field::from_fn(g.clone(), |x| (-(x - l / 2.0) * (x - l / 2.0)).exp()).unwrap();
        let d2 = f.derivative(2);
        let h = g.dx();
        let s = f.samples();
        let mut worst = 0.0f64;
        for j in 0..n {
            let fd = (s[(j + 1) % n] - 2.0 * s[j] + s[(j + n - 1) % n]) / (h * h);
            worst = worst.max((d2.samples()[j] - fd).abs());
        }
        // FD error is O(h^2) * |f''''|; h ~ 0.078, |f''''| <= 12 for this bump
        assert!(worst < 12.0 * h * h, "worst={worst}");
        assert!(worst > 1e-6, "spectral and FD should differ at O(h^2)");
    }

    #[test]
    fn helmholtz_invert_cosine() {
        let l = 2.0 * std::f64::consts::PI;
        let g = grid(64, l);
        let f = Field::from_fn(g.clone(), |x| x.cos()).unwrap();
        let u = helmholtz_invert(&f, 1.0);
        let exact = Field::from_fn(g, |x| 0.5 * x.cos()).unwrap();
        assert!(u.sub(&exact).unwrap().linf_norm() < 1e-13);
    }

    #[test]
    fn helmholtz_invert_half_order() {
        let l = 2.0 * std::f64::consts::PI;
        let g = grid(64, l);
        let f = Field::from_fn(g.clone(), |x| (2.0 * x).cos()).unwrap();
        let u = helmholtz_invert(&f, 0.5);
        let factor = (5.0f64).powf(-0.5);
        assert!((factor - 0.447_213_595_499_957_94).abs() < 1e-12);
        let exact = Field::from_fn(g, |x| factor * (2.0 * x).cos()).unwrap();
        assert!(u.sub(&exact).unwrap().linf_norm() < 1e-13);
    }

    #[test]
    fn helmholtz_constant_any_order() {
        let g = grid(32, 7.0);
        let f = Field::constant(g, 3.5).unwrap();
        for a in [0.5, 1.0, 1.7, 2.5] {
            let u = helmholtz_invert(&f, a);
            assert!(u.sub(&f).unwrap().linf_norm() < 1e-13);
        }
    }

    #[test]
    fn helmholtz_round_trip() {
        let g = grid(256, 21.0);
        for (i, a) in [0.5, 0.75, 1.0, 1.5, 2.0, 2.5].iter().enumerate() {
            let f = random_field(&g, 1000 + i as u64, 80, 1.0, Parity::Any);
            let back = helmholtz_invert(&helmholtz_apply(&f, *a), *a);
            let rel = back.sub(&f).unwrap().l2_norm() / f.l2_norm();
            assert!(rel <= 1e-11, "a={a} rel={rel}");
        }
    }

    #[test]
    fn multiplier_symbols_are_even() {
        let g = grid(64, 13.0);
        for a in [0.5, 1.0, 2.0] {
            let m = Multiplier::helmholtz(a);
            for i in 1..32 {
                let k = g.k()[i];
                assert_eq!(m.eval(k), m.eval(-k));
                assert!(m.eval(k).is_finite());
            }
        }
    }

    #[test]
    fn eval_at_matches_samples() {
        let g = grid(64, 10.0);
        let f = random_field(&g, 5, 20, 0.5, Parity::Any);
        for j in [0usize, 7, 31, 63] {
            let x = g.x()[j];
            assert!((f.eval_at(x) - f.samples()[j]).abs() < 1e-11);
        }
    }

    #[test]
    fn translate_shifts_samples() {
        let g = grid(64, 10.0);
        let f = random_field(&g, 8, 20, 0.8, Parity::Any);
        let shifted = f.translate(3.0 * g.dx());
        for j in 0..64 {
            let js = (j + 64 - 3) % 64;
            assert!((shifted.samples()[j] - f.samples()[js]).abs() < 1e-11);
        }
    }

    #[test]
    fn parity_of_random_fields() {
        let g = grid(128, 12.0);
        let odd = random_field(&g, 10, 40, 0.5, Parity::Odd);
        assert!(odd.odd_defect() <= 1e-13 * odd.linf_norm().max(1e-300));
        let even = random_field(&g, 11, 40, 0.5, Parity::Even);
        let n = 128;
        let mut worst = 0.0f64;
        for j in 0..n {
            worst = worst.max((even.samples()[j] - even.samples()[(n - j) % n]).abs());
        }
        assert!(worst <= 1e-13 * even.linf_norm());
    }

    #[test]
    fn dealias_zeros_top_third() {
        let g = grid(128, 7.0);
        let f = random_field(&g, 21, 63, 0.0, Parity::Any);
        let d = f.dealias();
        for i in 0..128 {
            if g.mode_at(i).abs() > 42 {
                assert_eq!(d.spectrum()[i], Complex64::new(0.0, 0.0));
            } else {
                assert_eq!(d.spectrum()[i], f.spectrum()[i]);
            }
        }
    }
}
