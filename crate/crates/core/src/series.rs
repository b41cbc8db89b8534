//! Truncated Taylor series with complex `f64` coefficients.
//!
//! A [`TruncatedSeries`] stores the coefficients of an analytic function
//! through a fixed degree; index `k` holds the coefficient of `z^k`. Every
//! value in the crate is one of these, and every operation is a pure
//! function of its inputs, so values can be shared freely across threads.
//!
//! Degree policy: `add`, `sub` and [`TruncatedSeries::cauchy_mul`] truncate
//! to the minimum of the input degrees, which keeps iterated products from
//! silently inflating their storage. [`TruncatedSeries::compose`] is the
//! documented exception: it returns the maximum of the two degrees, since
//! the interesting coefficients of `f∘φ` usually live above `deg φ`.
//! Explicit-degree variants (`mul_to_degree`, `compose_to`) are provided
//! for callers that need control.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default truncation degree used by the CLI and the verification suite.
pub const DEFAULT_WORKING_DEGREE: usize = 64;
/// Largest truncation degree the CLI accepts.
pub const MAX_WORKING_DEGREE: usize = 1024;

/// An analytic function represented by its Taylor coefficients through a
/// fixed truncation degree.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from coefficients (`coeffs[k]` multiplies `z^k`).
    /// Rejects empty input and non-finite components.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        for (index, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index });
            }
        }
        Ok(Self { coeffs })
    }

    pub fn from_real_coeffs(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The zero series of the given degree.
    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![Complex64::ZERO; degree + 1],
        }
    }

    /// The constant series `c` of the given degree.
    pub fn constant(c: Complex64, degree: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; degree + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The constant series `1`.
    pub fn one(degree: usize) -> Self {
        Self::constant(Complex64::ONE, degree)
    }

    /// The monomial `z^k` stored at the given degree (`degree >= k`).
    pub fn monomial(k: usize, degree: usize) -> Self {
        assert!(k <= degree, "monomial exponent above storage degree");
        let mut coeffs = vec![Complex64::ZERO; degree + 1];
        coeffs[k] = Complex64::ONE;
        Self { coeffs }
    }

    /// Coefficients `a_k = scale · decay^k · ζ_k` with `ζ_k` independent
    /// standard complex Gaussians drawn from a ChaCha8 stream, so the same
    /// seed always produces the same series. Requires `0 < decay < 1`.
    pub fn random(seed: u64, degree: usize, decay: f64, scale: f64) -> Result<Self> {
        if !(decay > 0.0 && decay < 1.0) {
            return Err(Error::Domain {
                what: "decay",
                constraint: "0 < decay < 1",
                value: decay,
            });
        }
        if !scale.is_finite() || scale < 0.0 {
            return Err(Error::Domain {
                what: "scale",
                constraint: "finite and >= 0",
                value: scale,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut weight = scale;
        for _ in 0..=degree {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            coeffs.push(Complex64::new(re, im) * inv_sqrt2 * weight);
            weight *= decay;
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Index of the highest nonzero coefficient (0 for the zero series).
    pub fn effective_degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.re != 0.0 || c.im != 0.0)
            .unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// Same function, stored at a (usually larger) degree.
    pub fn pad_to(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, Complex64::ZERO);
        Self { coeffs }
    }

    /// Drops coefficients above `degree`.
    pub fn truncate_to(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(degree + 1);
        coeffs.resize(degree + 1, Complex64::ZERO);
        Self { coeffs }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Coefficientwise sum, truncated to the minimum of the two degrees.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|k| self.coeffs[k] + other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|k| self.coeffs[k] - other.coeffs[k]).collect(),
        }
    }

    /// Cauchy product `c_k = Σ_{i+j=k} a_i b_j`, truncated to the minimum
    /// of the two degrees. Exact whenever `deg f + deg g` fits below the
    /// result degree.
    pub fn cauchy_mul(&self, other: &Self) -> Self {
        let out = self.degree().min(other.degree());
        self.mul_to_degree(other, out)
    }

    /// Cauchy product carried to an explicit output degree; coefficients
    /// beyond either factor's storage are treated as zero.
    pub fn mul_to_degree(&self, other: &Self, out_degree: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; out_degree + 1];
        let a = &self.coeffs;
        let b = &other.coeffs;
        for (i, &ai) in a.iter().enumerate() {
            if i > out_degree || (ai.re == 0.0 && ai.im == 0.0) {
                continue;
            }
            let jmax = (out_degree - i).min(b.len() - 1);
            for (j, &bj) in b[..=jmax].iter().enumerate() {
                coeffs[i + j] += ai * bj;
            }
        }
        Self { coeffs }
    }

    /// Termwise derivative. The degree drops by one; differentiating a
    /// constant yields the zero series of degree 0.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        Self {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (i + 1) as f64)
                .collect(),
        }
    }

    /// Termwise antiderivative with constant term 0; the degree rises by one.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::ZERO);
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / (i + 1) as f64);
        }
        Self { coeffs }
    }

    /// Horner evaluation of the stored polynomial at `z`.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Taylor coefficients of `f∘φ` through `max(deg f, deg φ)`.
    ///
    /// See [`TruncatedSeries::compose_to`] for the two evaluation paths and
    /// their error behaviour.
    pub fn compose(&self, inner: &Self) -> Self {
        self.compose_to(inner, self.degree().max(inner.degree()))
    }

    /// Taylor coefficients of `f∘φ` through `out_degree`.
    ///
    /// When `φ(0) = 0` a triangular Horner recursion is used; it produces
    /// the exact (to rounding) leading coefficients of the full polynomial
    /// composition. Otherwise `f∘φ` is sampled on the unit circle at enough
    /// points to avoid aliasing and the coefficients are recovered by a
    /// discrete transform, which is again exact to rounding because the
    /// stored series are genuine polynomials. A caller that instead regards
    /// `f` as the truncation of an infinite series should only trust the
    /// resampled coefficients when `sup_{|z|=1} |φ(z)| = ρ < 1`; the
    /// neglected tail is then geometric, `O(ρ^{deg f + 1} / (1 − ρ))`.
    pub fn compose_to(&self, inner: &Self, out_degree: usize) -> Self {
        let c0 = inner.coeff(0);
        if inner.effective_degree() == 0 {
            // Constant inner function: the composition is the constant f(c).
            return Self::constant(self.evaluate(c0), out_degree);
        }
        if c0 == Complex64::ZERO {
            return self.compose_triangular(inner, out_degree);
        }
        self.compose_resampled(inner, out_degree)
    }

    fn compose_triangular(&self, inner: &Self, out_degree: usize) -> Self {
        let deg_f = self.effective_degree();
        let mut acc = Self::constant(self.coeff(deg_f), out_degree);
        for k in (0..deg_f).rev() {
            acc = acc.mul_to_degree(inner, out_degree);
            acc.coeffs[0] += self.coeff(k);
        }
        acc
    }

    fn compose_resampled(&self, inner: &Self, out_degree: usize) -> Self {
        let true_degree = self.effective_degree() * inner.effective_degree();
        let m = (true_degree.max(out_degree) + 1).next_power_of_two();
        let points = unit_roots(m);
        let mut values: Vec<Complex64> = points
            .iter()
            .map(|&z| self.evaluate(inner.evaluate(z)))
            .collect();
        forward_dft(&mut values);
        let scale = 1.0 / m as f64;
        let coeffs = (0..=out_degree)
            .map(|k| values[k] * scale)
            .collect();
        Self { coeffs }
    }

    /// Synthetic division: returns `g` with `(z − w)·g(z) = f(z) − f(w)`
    /// exactly; the degree drops by one. Deflating a constant yields the
    /// zero series of degree 0.
    pub fn deflate_at(&self, w: Complex64) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self::zero(0);
        }
        let mut coeffs = vec![Complex64::ZERO; n];
        coeffs[n - 1] = self.coeffs[n];
        for k in (1..n).rev() {
            coeffs[k - 1] = self.coeffs[k] + w * coeffs[k];
        }
        Self { coeffs }
    }

    /// `exp(f)` through the stored degree via the recurrence `g' = f'·g`.
    pub fn exp(&self) -> Self {
        let n = self.degree();
        let mut g = vec![Complex64::ZERO; n + 1];
        g[0] = self.coeffs[0].exp();
        for k in 1..=n {
            let mut acc = Complex64::ZERO;
            for j in 1..=k {
                acc += self.coeffs[j] * j as f64 * g[k - j];
            }
            g[k] = acc / k as f64;
        }
        Self { coeffs: g }
    }

    /// Principal-branch `log(f)` through the stored degree via `f·g' = f'`.
    /// Requires `f(0) ≠ 0`.
    pub fn log(&self) -> Result<Self> {
        let f0 = self.coeffs[0];
        if f0 == Complex64::ZERO {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.degree();
        let mut g = vec![Complex64::ZERO; n + 1];
        g[0] = f0.ln();
        #[allow(clippy::needless_range_loop)]
        for k in 1..=n {
            let mut acc = self.coeffs[k] * k as f64;
            for m in 1..k {
                acc -= g[m] * m as f64 * self.coeffs[k - m];
            }
            g[k] = acc / (k as f64 * f0);
        }
        Self::new(g)
    }

    /// Principal-branch `f^gamma` through the stored degree via
    /// `f·g' = γ·f'·g`. Requires `f(0) ≠ 0` and finite `gamma`.
    pub fn pow(&self, gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::Domain {
                what: "gamma",
                constraint: "finite",
                value: gamma,
            });
        }
        let f0 = self.coeffs[0];
        if f0 == Complex64::ZERO {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.degree();
        let mut g = vec![Complex64::ZERO; n + 1];
        g[0] = f0.powf(gamma);
        #[allow(clippy::needless_range_loop)]
        for k in 1..=n {
            let mut acc = Complex64::ZERO;
            for j in 0..k {
                let factor = gamma * (k - j) as f64 - j as f64;
                acc += self.coeffs[k - j] * factor * g[j];
            }
            g[k] = acc / (k as f64 * f0);
        }
        Self::new(g)
    }

    /// Values of `f` at `m` equispaced points on the circle `|z| = r`.
    /// Requires `0 < r <= 1` and `m >= degree + 1`.
    pub fn sample_circle(&self, r: f64, m: usize) -> Result<Vec<Complex64>> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::Domain {
                what: "radius",
                constraint: "0 < r <= 1",
                value: r,
            });
        }
        if m < self.coeffs.len() {
            return Err(Error::TooFewSamples {
                m,
                degree: self.degree(),
            });
        }
        let mut buf = vec![Complex64::ZERO; m];
        let mut weight = 1.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            buf[k] = c * weight;
            weight *= r;
        }
        inverse_dft(&mut buf);
        Ok(buf)
    }

    /// Maps `exp`-scaled coefficients back from circle samples: recovers
    /// `a_k = DFT_k / (m · r^k)` and returns a series of degree `m − 1`.
    /// Exact to rounding for polynomials of degree below `m`.
    pub fn from_circle_samples(values: &[Complex64], r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::Domain {
                what: "radius",
                constraint: "0 < r <= 1",
                value: r,
            });
        }
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        let m = values.len();
        let mut buf = values.to_vec();
        forward_dft(&mut buf);
        let scale = 1.0 / m as f64;
        let mut weight = 1.0;
        for c in buf.iter_mut() {
            *c *= scale / weight;
            weight *= r;
        }
        Self::new(buf)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({},{})", c.re, c.im)?;
            }
            match k {
                0 => {}
                1 => write!(f, "·z")?,
                _ => write!(f, "·z^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.cauchy_mul(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// `m` equispaced points on the unit circle, starting at 1.
pub fn unit_roots(m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / m as f64))
        .collect()
}

/// Deterministic per-index seed stream (splitmix64 over the base seed).
pub fn derived_seed(seed: u64, index: u64) -> u64 {
    let mut x = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn fft_for(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    let mut planner = PLANNER
        .get_or_init(|| Mutex::new(FftPlanner::new()))
        .lock()
        .expect("fft planner lock");
    if inverse {
        planner.plan_fft_inverse(len)
    } else {
        planner.plan_fft_forward(len)
    }
}

/// In-place unnormalized forward transform `X_k = Σ_j x_j e^{-2πi jk/m}`.
pub(crate) fn forward_dft(buf: &mut [Complex64]) {
    fft_for(buf.len(), false).process(buf);
}

/// In-place unnormalized inverse transform `x_j = Σ_k X_k e^{+2πi jk/m}`.
pub(crate) fn inverse_dft(buf: &mut [Complex64]) {
    fft_for(buf.len(), true).process(buf);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(coeffs: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real_coeffs(coeffs).unwrap()
    }

    fn max_coeff_dist(a: &TruncatedSeries, b: &TruncatedSeries) -> f64 {
        assert_eq!(a.degree(), b.degree());
        (0..=a.degree())
            .map(|k| (a.coeff(k) - b.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn rejects_bad_input() {
        assert!(TruncatedSeries::new(vec![]).is_err());
        assert!(TruncatedSeries::new(vec![c(f64::NAN, 0.0)]).is_err());
        assert!(TruncatedSeries::new(vec![c(0.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn add_cancellation_and_identity() {
        let one_plus = real(&[1.0, 1.0]);
        let one_minus = real(&[1.0, -1.0]);
        let sum = &one_plus + &one_minus;
        assert_eq!(sum.coeff(0), c(2.0, 0.0));
        assert_eq!(sum.coeff(1), Complex64::ZERO);

        let f = real(&[0.3, -0.7, 2.0]);
        let z = TruncatedSeries::zero(2);
        assert_eq!(&f + &z, f);

        let a = real(&[0.0, 0.0, 1.0]);
        let b = real(&[0.0, 0.0, 3.0]);
        assert_eq!((&a + &b).coeff(2), c(4.0, 0.0));
    }

    #[test]
    fn cauchy_mul_basics() {
        let z = TruncatedSeries::monomial(1, 4);
        let z2 = &z * &z;
        assert_eq!(z2.coeff(2), Complex64::ONE);
        assert!(z2.coeff(1).norm() == 0.0 && z2.coeff(3).norm() == 0.0);

        // (1 - z) * (1 + z + ... + z^N) telescopes to 1 below the truncation.
        let n = 12;
        let geom = real(&vec![1.0; n + 1]);
        let one_minus_z = real(&[1.0, -1.0]).pad_to(n);
        let prod = &one_minus_z * &geom;
        assert_eq!(prod.coeff(0), Complex64::ONE);
        for k in 1..=n {
            assert_eq!(prod.coeff(k), Complex64::ZERO);
        }
    }

    #[test]
    fn min_degree_policy() {
        let short = real(&[1.0, 2.0]);
        let long = real(&[1.0, 0.0, 0.0, 5.0]);
        assert_eq!((&short + &long).degree(), 1);
        assert_eq!((&short * &long).degree(), 1);
    }

    #[test]
    fn derivative_and_antiderivative() {
        let zn = TruncatedSeries::monomial(5, 5);
        let d = zn.derivative();
        assert_eq!(d.degree(), 4);
        assert_eq!(d.coeff(4), c(5.0, 0.0));

        let one = TruncatedSeries::one(0);
        let anti = one.antiderivative();
        assert_eq!(anti.degree(), 1);
        assert_eq!(anti.coeff(1), Complex64::ONE);

        let g = real(&[0.5, -1.0, 3.0, 0.25]);
        assert_eq!(g.antiderivative().derivative(), g);

        // antiderivative(derivative(f)) = f - f(0)
        let mut expect = g.clone();
        expect = expect.sub(&TruncatedSeries::constant(g.coeff(0), g.degree()));
        assert!(max_coeff_dist(&g.derivative().antiderivative(), &expect) < 1e-15);
    }

    #[test]
    fn evaluate_matches_closed_forms() {
        let z2 = TruncatedSeries::monomial(2, 2);
        assert!((z2.evaluate(c(0.5, 0.0)) - c(0.25, 0.0)).norm() < 1e-15);

        // Σ_{k=1}^{10} z^k / k at z = 1 is the tenth harmonic number.
        let mut coeffs = vec![0.0];
        coeffs.extend((1..=10).map(|k| 1.0 / k as f64));
        let f = real(&coeffs);
        let h10 = 2.928_968_253_968_254;
        assert!((f.evaluate(Complex64::ONE).re - h10).abs() < 1e-14);

        let g = real(&[0.7, 1.0, -2.0]);
        assert_eq!(g.evaluate(Complex64::ZERO), c(0.7, 0.0));
    }

    #[test]
    fn compose_monomial_scaling() {
        // (f ∘ az)_k = a^k f_k
        let f = real(&[0.5, -1.0, 2.0, 0.125]);
        let a = c(0.3, 0.4);
        let mut az = TruncatedSeries::zero(3);
        az.coeffs[1] = a;
        let g = f.compose(&az);
        for k in 0..=3 {
            let expect = f.coeff(k) * a.powu(k as u32);
            assert!((g.coeff(k) - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn compose_square_with_square() {
        let z2 = TruncatedSeries::monomial(2, 4);
        let out = z2.compose(&z2);
        assert_eq!(out.coeff(4), Complex64::ONE);
        assert_eq!(out.effective_degree(), 4);
    }

    #[test]
    fn compose_resampled_matches_triangular_shift() {
        // Composing with z + b equals composing with z after a Taylor shift;
        // compare the resampled path against direct expansion of (z+b)^k.
        let f = real(&[1.0, -0.5, 0.25, 2.0, -1.5]);
        let b = c(0.4, -0.2);
        let mut inner = TruncatedSeries::zero(4);
        inner.coeffs[0] = b;
        inner.coeffs[1] = Complex64::ONE;
        let composed = f.compose(&inner); // resampled: inner(0) != 0

        let mut expect = TruncatedSeries::zero(4);
        let mut power = TruncatedSeries::one(4);
        for k in 0..=4 {
            expect = expect.add(&power.scale(f.coeff(k)));
            power = power.mul_to_degree(&inner, 4);
        }
        assert!(max_coeff_dist(&composed, &expect) < 1e-13);
    }

    #[test]
    fn compose_constant_inner() {
        let f = real(&[1.0, 2.0, 3.0]);
        let inner = TruncatedSeries::constant(c(0.5, 0.0), 2);
        let out = f.compose(&inner);
        assert!((out.coeff(0) - c(2.75, 0.0)).norm() < 1e-15);
        assert_eq!(out.effective_degree(), 0);
    }

    #[test]
    fn deflate_examples() {
        // (z^2 - w^2)/(z - w) = z + w
        let z2 = TruncatedSeries::monomial(2, 2);
        let w = c(0.3, -0.1);
        let g = z2.deflate_at(w);
        assert_eq!(g.degree(), 1);
        assert!((g.coeff(0) - w).norm() < 1e-15);
        assert!((g.coeff(1) - Complex64::ONE).norm() < 1e-15);

        // Deflation at 0 is a coefficient shift.
        let f = real(&[3.0, 1.0, -2.0, 0.5]);
        let shifted = f.deflate_at(Complex64::ZERO);
        for k in 0..3 {
            assert_eq!(shifted.coeff(k), f.coeff(k + 1));
        }
    }

    #[test]
    fn deflate_roundtrip() {
        let f = TruncatedSeries::random(11, 16, 0.8, 1.0).unwrap();
        let w = c(0.35, 0.2);
        let g = f.deflate_at(w);
        // (z - w)·g + f(w) should reproduce f coefficientwise.
        let mut z_minus_w = TruncatedSeries::zero(16);
        z_minus_w.coeffs[0] = -w;
        z_minus_w.coeffs[1] = Complex64::ONE;
        let mut back = z_minus_w.mul_to_degree(&g, 16);
        back.coeffs[0] += f.evaluate(w);
        assert!(max_coeff_dist(&back, &f) < 1e-12);
    }

    #[test]
    fn exp_log_pow_basics() {
        let zero = TruncatedSeries::zero(8);
        let e = zero.exp();
        assert_eq!(e.coeff(0), Complex64::ONE);
        assert!(e.coeffs[1..].iter().all(|c| c.norm() == 0.0));

        // log of the geometric series recovers Σ z^k / k.
        let geom = real(&[1.0; 17]);
        let lg = geom.log().unwrap();
        assert!(lg.coeff(0).norm() < 1e-15);
        for k in 1..=16 {
            assert!((lg.coeff(k).re - 1.0 / k as f64).abs() < 1e-13);
            assert!(lg.coeff(k).im.abs() < 1e-15);
        }

        let f = real(&[2.0, 0.3, -0.2, 0.05]);
        let p1 = f.pow(1.0).unwrap();
        assert!(max_coeff_dist(&p1, &f) < 1e-13);

        assert!(TruncatedSeries::monomial(1, 3).log().is_err());
        assert!(TruncatedSeries::monomial(1, 3).pow(0.5).is_err());
        assert!(f.pow(f64::NAN).is_err());
    }

    #[test]
    fn exp_log_inverse() {
        let f = TruncatedSeries::random(5, 24, 0.6, 0.8).unwrap();
        let back = f.exp().log().unwrap();
        assert!(max_coeff_dist(&back, &f) < 1e-11);
    }

    #[test]
    fn circle_sampling_roundtrip() {
        let f = TruncatedSeries::random(17, 63, 0.9, 1.0).unwrap();
        let samples = f.sample_circle(1.0, 64).unwrap();
        let back = TruncatedSeries::from_circle_samples(&samples, 1.0).unwrap();
        assert!(max_coeff_dist(&back, &f.pad_to(63)) < 1e-12);

        let ones = TruncatedSeries::one(0).sample_circle(1.0, 8).unwrap();
        assert!(ones.iter().all(|v| (v - Complex64::ONE).norm() < 1e-14));

        let z3 = TruncatedSeries::monomial(3, 3);
        let back = TruncatedSeries::from_circle_samples(
            &z3.sample_circle(0.5, 16).unwrap(),
            0.5,
        )
        .unwrap();
        for k in 0..16 {
            let expect = if k == 3 { 1.0 } else { 0.0 };
            assert!((back.coeff(k) - c(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn sampling_rejects_bad_parameters() {
        let f = TruncatedSeries::monomial(3, 3);
        assert!(f.sample_circle(0.0, 8).is_err());
        assert!(f.sample_circle(1.5, 8).is_err());
        assert!(f.sample_circle(1.0, 3).is_err());
        assert!(TruncatedSeries::from_circle_samples(&[], 1.0).is_err());
    }

    #[test]
    fn random_series_determinism_and_bound() {
        let a = TruncatedSeries::random(42, 64, 0.5, 1.0).unwrap();
        let b = TruncatedSeries::random(42, 64, 0.5, 1.0).unwrap();
        assert_eq!(a, b);

        let zero = TruncatedSeries::random(42, 16, 0.5, 0.0).unwrap();
        assert!(zero.is_zero());

        // Sampled sup on |z| = 1 is below scale · max|ζ| · Σ decay^k.
        let decay: f64 = 0.5;
        let max_zeta = (0..=64)
            .map(|k| a.coeff(k).norm() / decay.powi(k as i32))
            .fold(0.0, f64::max);
        let geom = (1.0 - decay.powi(65)) / (1.0 - decay);
        let bound = max_zeta * geom;
        let samples = a.sample_circle(1.0, 256).unwrap();
        let sup = samples.iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(sup <= bound + 1e-12);

        assert!(TruncatedSeries::random(1, 4, 1.0, 1.0).is_err());
        assert!(TruncatedSeries::random(1, 4, 0.5, f64::NAN).is_err());
    }

    #[test]
    fn display_is_compact() {
        let f = real(&[0.0, 0.0, 0.5]);
        assert_eq!(format!("{f}"), "0.5·z^2");
        assert_eq!(format!("{}", TruncatedSeries::zero(3)), "0");
    }
}
