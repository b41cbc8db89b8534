//! The Duhamel product `(f⊛g)(z) = d/dz ∫₀^z f(z−t)g(t)dt`, its
//! coefficient rule, a quadrature oracle for the defining integral, and the
//! classifier for composition operators that respect the product.
//!
//! On coefficients the product is the factorially weighted convolution
//! `c_k = Σ_{i+j=k} (i!·j!/k!)·a_i·b_j`; the constant 1 is its identity,
//! and reweighting coefficients by `k!` carries it to the ordinary Cauchy
//! product.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::operators::{is_self_map, SELF_MAP_TOL};
use crate::quadrature::gauss_legendre_01;
use crate::series::TruncatedSeries;
use crate::spaces::{self, SpaceSpec};
use crate::special::log_gamma;

/// Default verdict tolerance, taken relative to the coefficient scale of
/// the symbol under test.
pub const DUHAMEL_TOL: f64 = 1e-9;

/// Largest `k` with `k!` representable in an `f64`.
const FACTORIAL_LIMIT: usize = 170;

/// The weights `i!·j!/(i+j)!`: direct factorial ratios while `(i+j)!` is
/// representable (the ratio never overflows since `i!·j! <= (i+j)!`), and
/// log-factorial differences past `k = 170` where the factorials would.
struct DuhamelWeights {
    fact: Vec<f64>,
    log_fact: Vec<f64>,
}

impl DuhamelWeights {
    fn new(max_sum: usize) -> Self {
        let direct = max_sum.min(FACTORIAL_LIMIT);
        let mut fact = Vec::with_capacity(direct + 1);
        fact.push(1.0f64);
        for k in 1..=direct {
            let next = fact[k - 1] * k as f64;
            fact.push(next);
        }
        let log_fact = if max_sum > FACTORIAL_LIMIT {
            (0..=max_sum)
                .map(|k| log_gamma(k as f64 + 1.0).expect("positive argument"))
                .collect()
        } else {
            Vec::new()
        };
        Self { fact, log_fact }
    }

    /// Exactly 1 whenever either index is 0, which keeps the identity
    /// `1 ⊛ g = g` exact.
    fn weight(&self, i: usize, j: usize) -> f64 {
        if i == 0 || j == 0 {
            return 1.0;
        }
        let k = i + j;
        if k < self.fact.len() {
            self.fact[i] * self.fact[j] / self.fact[k]
        } else {
            (self.log_fact[i] + self.log_fact[j] - self.log_fact[k]).exp()
        }
    }
}

/// Duhamel product truncated to the minimum of the input degrees.
pub fn duhamel(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    duhamel_to_degree(f, g, f.degree().min(g.degree()))
}

/// Duhamel product carried to an explicit output degree.
///
/// The weight `i!·j!/(i+j)!` is carried along each row by the ratio
/// recurrence `w(i,j) = w(i,j−1)·j/(i+j)`: every factor lies in `(0, 1]`,
/// so the rule cannot overflow at any degree and drifts by at most a few
/// ulps per step. For `i = 0` the running weight stays exactly 1, which
/// keeps the identity `1 ⊛ g = g` exact.
pub fn duhamel_to_degree(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    out_degree: usize,
) -> TruncatedSeries {
    let mut coeffs = vec![Complex64::ZERO; out_degree + 1];
    for (i, &ai) in f.coeffs().iter().enumerate() {
        if i > out_degree || (ai.re == 0.0 && ai.im == 0.0) {
            continue;
        }
        let jmax = (out_degree - i).min(g.degree());
        let mut weight = 1.0f64;
        for (j, &bj) in g.coeffs()[..=jmax].iter().enumerate() {
            if j > 0 {
                weight *= j as f64 / (i + j) as f64;
            }
            coeffs[i + j] += ai * bj * weight;
        }
    }
    TruncatedSeries::new(coeffs).expect("finite by construction")
}

/// Coefficient reweighting `a_k ↦ a_k·k!`, which turns the Duhamel product
/// into the Cauchy product. Limited to degrees below 171 where the
/// factorial stays representable.
pub fn borel_transform(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.degree() > FACTORIAL_LIMIT {
        return Err(Error::Domain {
            what: "series degree",
            constraint: "<= 170 (factorial overflow)",
            value: f.degree() as f64,
        });
    }
    let weights = DuhamelWeights::new(f.degree());
    TruncatedSeries::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(k, &c)| c * weights.fact[k])
            .collect(),
    )
}

/// Evaluates `(f⊛g)(z) = ∫₀^z f'(z−t)g(t)dt + f(0)g(z)` by adaptive
/// Gauss–Legendre quadrature along the segment `[0, z]`, independently of
/// the coefficient rule. Requires `|z| < 1`.
pub fn duhamel_oracle(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    z: Complex64,
) -> Result<Complex64> {
    let radius = z.norm();
    if radius >= 1.0 || radius.is_nan() {
        return Err(Error::Domain {
            what: "|z|",
            constraint: "< 1",
            value: radius,
        });
    }
    let fd = f.derivative();
    let integral_with = |nodes: usize| -> Complex64 {
        gauss_legendre_01(nodes)
            .iter()
            .map(|&(s, w)| fd.evaluate(z * (1.0 - s)) * g.evaluate(z * s) * w)
            .sum::<Complex64>()
            * z
    };
    let mut prev = integral_with(32);
    let mut delta = f64::INFINITY;
    for nodes in [64usize, 128, 256, 512] {
        let cur = integral_with(nodes);
        delta = (cur - prev).norm();
        if delta <= 1e-13 * (1.0 + cur.norm()) {
            return Ok(cur + f.coeff(0) * g.evaluate(z));
        }
        prev = cur;
    }
    Err(Error::QuadratureNoConvergence { nodes: 512, delta })
}

/// The worst Duhamel-multiplicativity defect of a composition operator
/// over the monomial basis, with the pair attaining it.
#[derive(Debug, Clone)]
pub struct DuhamelResidual {
    pub max_residual: f64,
    /// Exponents `(i, j)` of the basis pair `(z^i, z^j)` attaining the max.
    pub witness_pair: (usize, usize),
    pub verdict: bool,
    pub tolerance: f64,
    pub space: SpaceSpec,
    pub basis_degree: usize,
}

fn symbol_powers(phi: &TruncatedSeries, count: usize) -> Vec<TruncatedSeries> {
    let degree = phi.degree();
    let mut powers = Vec::with_capacity(count + 1);
    powers.push(TruncatedSeries::one(degree));
    for _ in 0..count {
        let next = powers.last().expect("non-empty").mul_to_degree(phi, degree);
        powers.push(next);
    }
    powers
}

/// `‖C_φ(z^i ⊛ z^j) − C_φ z^i ⊛ C_φ z^j‖` for a single basis pair.
pub fn duhamel_pair_residual(
    phi: &TruncatedSeries,
    i: usize,
    j: usize,
    space: &SpaceSpec,
) -> Result<f64> {
    if i + j > phi.degree() {
        return Err(Error::Domain {
            what: "basis exponent sum",
            constraint: "<= storage degree of the symbol",
            value: (i + j) as f64,
        });
    }
    let powers = symbol_powers(phi, i + j);
    let weights = DuhamelWeights::new(i + j);
    pair_residual_from_powers(&powers, &weights, i, j, space)
}

fn pair_residual_from_powers(
    powers: &[TruncatedSeries],
    weights: &DuhamelWeights,
    i: usize,
    j: usize,
    space: &SpaceSpec,
) -> Result<f64> {
    let lhs = powers[i + j].scale(Complex64::new(weights.weight(i, j), 0.0));
    let rhs = duhamel(&powers[i], &powers[j]);
    Ok(spaces::norm(&lhs.sub(&rhs), space)?.value)
}

/// Max over monomial pairs `(z^i, z^j)`, `i, j <= basis_degree`, of the
/// Duhamel-multiplicativity defect of `C_φ`. Bilinearity of both products
/// makes the monomial pairs a complete test at fixed degree, and keeps the
/// witnesses readable. The symbol must classify as a self-map and store
/// degree at least `2·basis_degree`.
pub fn duhamel_residual(
    phi: &TruncatedSeries,
    space: &SpaceSpec,
    basis_degree: usize,
    tolerance: f64,
) -> Result<DuhamelResidual> {
    let class = is_self_map(phi, SELF_MAP_TOL);
    if !class.is_self_map() {
        return Err(Error::NotASelfMap(class.describe()));
    }
    if 2 * basis_degree > phi.degree() {
        return Err(Error::Domain {
            what: "basis degree",
            constraint: "2·basis <= storage degree of the symbol",
            value: basis_degree as f64,
        });
    }
    let powers = symbol_powers(phi, 2 * basis_degree);
    let weights = DuhamelWeights::new(2 * basis_degree.max(1));
    let pairs: Vec<(usize, usize)> = (0..=basis_degree)
        .flat_map(|i| (0..=basis_degree).map(move |j| (i, j)))
        .collect();
    let residuals: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| pair_residual_from_powers(&powers, &weights, i, j, space))
        .collect::<Result<_>>()?;
    let mut max_residual = f64::NEG_INFINITY;
    let mut witness_pair = (0, 0);
    for (&pair, &r) in pairs.iter().zip(&residuals) {
        if r > max_residual {
            max_residual = r;
            witness_pair = pair;
        }
    }
    let scale = phi
        .coeffs()
        .iter()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    Ok(DuhamelResidual {
        max_residual,
        witness_pair,
        verdict: max_residual < tolerance * scale,
        tolerance,
        space: *space,
        basis_degree,
    })
}

/// Whether the linear-symbol classifier and the residual instrument reach
/// the same verdict on `phi`. The residual's own threshold sits inside the
/// dichotomy gap (defects are either at rounding level or above 1e-4), so
/// the two verdicts must coincide for any symbol away from the tolerance
/// boundary.
pub fn classifier_matches_residual(phi: &TruncatedSeries, tol: f64) -> Result<bool> {
    let cls = classify_duhamel_multiplicative(phi, tol);
    let basis = (phi.degree() / 2).clamp(1, 4);
    let residual = duhamel_residual(phi, &SpaceSpec::Sup, basis, tol)?;
    Ok(cls.multiplicative == residual.verdict)
}

/// Verdict of the linear-symbol test.
#[derive(Debug, Clone)]
pub struct DuhamelClassification {
    pub multiplicative: bool,
    /// Index of the worst offending coefficient when not multiplicative.
    pub witness_index: Option<usize>,
    pub explanation: String,
}

/// A composition operator is Duhamel multiplicative exactly when its
/// symbol is `a·z` with `|a| <= 1`: every coefficient other than the
/// linear one must vanish. `tol` is read relative to the coefficient scale
/// of `φ`.
pub fn classify_duhamel_multiplicative(phi: &TruncatedSeries, tol: f64) -> DuhamelClassification {
    let scale = phi
        .coeffs()
        .iter()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max);
    let threshold = tol * scale.max(1.0);
    let mut witness_index = None;
    let mut worst = 0.0;
    for (k, c) in phi.coeffs().iter().enumerate() {
        if k == 1 {
            continue;
        }
        let mag = c.norm();
        if mag >= threshold && mag > worst {
            worst = mag;
            witness_index = Some(k);
        }
    }
    let result = match witness_index {
        None => DuhamelClassification {
            multiplicative: true,
            witness_index: None,
            explanation: format!(
                "symbol is linear within tolerance {threshold:.3e}: Duhamel multiplicative"
            ),
        },
        Some(k) => DuhamelClassification {
            multiplicative: false,
            witness_index: Some(k),
            explanation: format!(
                "coefficient {worst:.3e} at z^{k} breaks linearity (tolerance {threshold:.3e})"
            ),
        },
    };
    #[cfg(debug_assertions)]
    cross_validate(phi, &result, scale);
    result
}

/// Debug-build consistency check of the classifier against the residual
/// instrument, with wide margins on either side of the dichotomy.
#[cfg(debug_assertions)]
fn cross_validate(phi: &TruncatedSeries, result: &DuhamelClassification, scale: f64) {
    let basis = 2usize;
    if 2 * basis > phi.degree() || !is_self_map(phi, SELF_MAP_TOL).is_self_map() {
        return;
    }
    let residual = duhamel_residual(phi, &SpaceSpec::Sup, basis, DUHAMEL_TOL)
        .expect("validated symbol");
    if result.multiplicative {
        debug_assert!(
            residual.max_residual <= 1e-6 * (1.0 + scale),
            "classifier says multiplicative but residual is {}",
            residual.max_residual
        );
    } else if let Some(k) = result.witness_index {
        let offender = phi.coeff(k).norm();
        if offender >= 1e-2 * scale.max(1e-2) {
            debug_assert!(
                residual.max_residual > 1e-9 * offender * offender,
                "robust offender {offender:.3e} at z^{k} left residual {}",
                residual.max_residual
            );
        }
    }
}
