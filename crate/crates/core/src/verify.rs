//! The verification suite: every concrete identity, bound, and
//! counterexample the library is built around becomes a named check with a
//! pinned tolerance, a measured value, and a machine-readable report.
//!
//! Checks are deterministic given the seed and working degree; wall-clock
//! fields are the only part of the report that varies between runs.

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::duhamel::{
    borel_transform, classify_duhamel_multiplicative, duhamel, duhamel_oracle,
    duhamel_pair_residual, duhamel_residual, DUHAMEL_TOL,
};
use crate::error::Result;
use crate::operators::{
    almost_mult_residual, apply, artanh_series_partial_sum, is_self_map, log_series_partial_sum,
    matrix_of, random_self_map, rescale_to_boundary_sup, residual_values, symbol_of, OperatorSpec,
    SelfMapClass, SELF_MAP_TOL,
};
use crate::series::{derived_seed, TruncatedSeries};
use crate::spaces::{
    besov_mass, bloch_growth_check, monomial_norm_closed_form, norm, SpaceSpec,
};
use crate::special::{beta_asymptotic_ratio, log_gamma};

/// Euler–Mascheroni constant at the precision the harmonic check pins.
const EULER_GAMMA: f64 = 0.577_215_664_9;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub working_degree: usize,
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            working_degree: crate::series::DEFAULT_WORKING_DEGREE,
            tol: DUHAMEL_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: &'static str,
    /// Self-contained statement of what is being checked.
    pub claim: &'static str,
    pub status: CheckStatus,
    pub measured: Option<f64>,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: String,
    pub wall_ms: f64,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub seed: u64,
    pub working_degree: usize,
    pub tol: f64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "meta": {
                "seed": self.seed,
                "working_degree": self.working_degree,
                "tol": self.tol,
                "version": env!("CARGO_PKG_VERSION"),
            },
            "checks": self.checks.iter().map(|c| {
                let (status, reason) = match &c.status {
                    CheckStatus::Pass => ("pass", Value::Null),
                    CheckStatus::Fail => ("fail", Value::Null),
                    CheckStatus::Skipped(r) => ("skipped", Value::String(r.clone())),
                };
                json!({
                    "id": c.id,
                    "claim": c.claim,
                    "status": status,
                    "skip_reason": reason,
                    "measured": c.measured,
                    "expected": c.expected,
                    "tolerance": c.tolerance,
                    "detail": c.detail,
                    "wall_ms": c.wall_ms,
                })
            }).collect::<Vec<_>>(),
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# Verification report\n\nseed {} · working degree {} · tol {:.1e}\n\n",
            self.seed, self.working_degree, self.tol
        ));
        out.push_str("| check | status | measured | expected | tolerance | detail |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for c in &self.checks {
            let status = match &c.status {
                CheckStatus::Pass => "pass".to_string(),
                CheckStatus::Fail => "**FAIL**".to_string(),
                CheckStatus::Skipped(r) => format!("skipped ({r})"),
            };
            let fmt = |v: Option<f64>| v.map_or("—".to_string(), |x| format!("{x:.3e}"));
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} |\n",
                c.id,
                status,
                fmt(c.measured),
                fmt(c.expected),
                fmt(c.tolerance),
                c.detail.replace('|', "\\|"),
            ));
        }
        let skipped = self
            .checks
            .iter()
            .filter(|c| matches!(c.status, CheckStatus::Skipped(_)))
            .count();
        out.push_str(&format!(
            "\n{} passed, {} failed, {} skipped.\n",
            self.checks.len() - self.failures() - skipped,
            self.failures(),
            skipped
        ));
        out
    }
}

struct Outcome {
    status: CheckStatus,
    measured: Option<f64>,
    expected: Option<f64>,
    tolerance: Option<f64>,
    detail: String,
}

impl Outcome {
    fn measured_vs(measured: f64, expected: f64, tolerance: f64, detail: String) -> Self {
        let status = if (measured - expected).abs() <= tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            status,
            measured: Some(measured),
            expected: Some(expected),
            tolerance: Some(tolerance),
            detail,
        }
    }

    fn bounded(measured: f64, bound: f64, detail: String) -> Self {
        let status = if measured <= bound {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            status,
            measured: Some(measured),
            expected: None,
            tolerance: Some(bound),
            detail,
        }
    }

    fn predicate(holds: bool, measured: f64, detail: String) -> Self {
        Self {
            status: if holds { CheckStatus::Pass } else { CheckStatus::Fail },
            measured: Some(measured),
            expected: None,
            tolerance: None,
            detail,
        }
    }

    fn skipped(reason: String) -> Self {
        Self {
            status: CheckStatus::Skipped(reason),
            measured: None,
            expected: None,
            tolerance: None,
            detail: String::new(),
        }
    }

    fn error(e: crate::Error) -> Self {
        Self {
            status: CheckStatus::Fail,
            measured: None,
            expected: None,
            tolerance: None,
            detail: format!("errored: {e}"),
        }
    }
}

fn run_timed(
    id: &'static str,
    claim: &'static str,
    cfg: &VerifyConfig,
    body: fn(&VerifyConfig) -> Result<Outcome>,
) -> CheckResult {
    let start = std::time::Instant::now();
    let outcome = body(cfg).unwrap_or_else(Outcome::error);
    CheckResult {
        id,
        claim,
        status: outcome.status,
        measured: outcome.measured,
        expected: outcome.expected,
        tolerance: outcome.tolerance,
        detail: outcome.detail,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Runs the full suite. Checks run in id order; failures are collected,
/// never short-circuited.
pub fn run_verification(cfg: &VerifyConfig) -> VerificationReport {
    type Check = (&'static str, &'static str, fn(&VerifyConfig) -> Result<Outcome>);
    let checks: [Check; 19] = [
        (
            "adjoint-evaluation",
            "(C_phi f)(x) = f(phi(x)) for self-maps phi, sampled over probe functions and a grid of x",
            check_adjoint_evaluation,
        ),
        (
            "beta-asymptotic",
            "B(x,y)·x^y/Gamma(y) approaches 1 monotonically as x grows (y = 1.5)",
            check_beta_asymptotic,
        ),
        (
            "bergman-monomial-oracle",
            "quadrature norm of z^n in the weighted Bergman spaces matches ((a+1)·B(np/2+1, a+1))^{1/p}, and the closed form decays in n",
            check_bergman_oracle,
        ),
        (
            "besov-monomial-oracle",
            "quadrature norm of z^n/n in the Besov spaces matches B((n-1)p/2+1, p-1)^{1/p}",
            check_besov_oracle,
        ),
        (
            "bloch-duhamel-algebra",
            "the Bloch norm is near-submultiplicative under the Duhamel product: ratio below the majorant-derived bound 4.0",
            check_bloch_duhamel_algebra,
        ),
        (
            "bloch-partial-sums",
            "odd logarithmic partial sums keep Bloch norm <= 1 while their boundary values grow at least like (1/2)·log n",
            check_bloch_partial_sums,
        ),
        (
            "borel-homomorphism",
            "reweighting coefficients by k! carries the Duhamel product to the Cauchy product",
            check_borel_homomorphism,
        ),
        (
            "boundary-eval-dichotomy",
            "boundary evaluation passes the multiplicativity residual yet its symbol is a unimodular constant, not a self-map",
            check_boundary_eval_dichotomy,
        ),
        (
            "deflation-roundtrip",
            "(z-w)·deflate(f, w) + f(w) reproduces f coefficientwise",
            check_deflation_roundtrip,
        ),
        (
            "duhamel-center-necessity",
            "symbols with phi(0) = b force a Duhamel defect of at least |b|^2/4 on the pair (z, z)",
            check_center_necessity,
        ),
        (
            "duhamel-composition-counterexample",
            "composing with z^2 sends z ⊛ z to z^4/2 but (z∘z^2) ⊛ (z∘z^2) to z^4/6; the defect is exactly 1/3 at z^4",
            check_composition_counterexample,
        ),
        (
            "duhamel-linear-symbols",
            "composition by a·z with |a| <= 1 is Duhamel multiplicative to machine precision",
            check_linear_symbols,
        ),
        (
            "duhamel-monomial-rule",
            "z^m ⊛ z^n = (m!·n!/(m+n)!)·z^{m+n}, cross-checked against quadrature of the defining integral",
            check_monomial_rule,
        ),
        (
            "duhamel-nonlinear-symbols",
            "self-maps with a non-linear coefficient of size >= 0.05 leave a Duhamel residual above 1e-4",
            check_nonlinear_symbols,
        ),
        (
            "growth-bounds",
            "no violations of the Bloch growth inequality, and the Besov mass integral stays finite, over seeded samples and a radial grid",
            check_growth_bounds,
        ),
        (
            "hardy-partial-sums",
            "logarithmic partial sums converge in the Hardy 2-norm with tail energy sum_{k>n} 1/k^2 while their boundary values grow like log n",
            check_hardy_partial_sums,
        ),
        (
            "matrix-roundtrip",
            "the monomial-basis matrix of an operator reproduces its direct action on coefficients",
            check_matrix_roundtrip,
        ),
        (
            "parallel-determinism",
            "parallel and serial residual batches aggregate bit-identically from per-trial seeds",
            check_parallel_determinism,
        ),
        (
            "ring-axioms",
            "truncated polynomials satisfy the commutative-ring axioms coefficientwise at the working degree",
            check_ring_axioms,
        ),
    ];
    let mut results: Vec<CheckResult> = checks
        .into_iter()
        .map(|(id, claim, body)| run_timed(id, claim, cfg, body))
        .collect();
    // Report assembly is order-stable by id.
    results.sort_by_key(|c| c.id);
    VerificationReport {
        seed: cfg.seed,
        working_degree: cfg.working_degree,
        tol: cfg.tol,
        checks: results,
    }
}

fn unimodular_grid(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / count as f64))
        .collect()
}

// --- duhamel checks ---------------------------------------------------

fn check_monomial_rule(cfg: &VerifyConfig) -> Result<Outcome> {
    if cfg.working_degree < 2 {
        return Ok(Outcome::skipped("needs working degree >= 2".into()));
    }
    let mr = 20.min(cfg.working_degree / 2);
    let degree = 2 * mr;
    // Independent route for m!·n!/(m+n)!: Lanczos log-gamma, sharing no
    // arithmetic with the ratio recurrence inside the product.
    let closed_weight = |m: usize, n: usize| -> Result<f64> {
        Ok((log_gamma(m as f64 + 1.0)? + log_gamma(n as f64 + 1.0)?
            - log_gamma((m + n) as f64 + 1.0)?)
        .exp())
    };
    let mut max_rel = 0.0f64;
    for m in 0..=mr {
        for n in 0..=mr {
            let f = TruncatedSeries::monomial(m, degree);
            let g = TruncatedSeries::monomial(n, degree);
            let got = duhamel(&f, &g).coeff(m + n);
            let expect = closed_weight(m, n)?;
            max_rel = max_rel.max((got - Complex64::new(expect, 0.0)).norm() / expect);
        }
    }
    // Quadrature oracle for the defining integral on an 8-point grid.
    let grid: Vec<Complex64> = (0..8)
        .map(|j| {
            let r = if j < 4 { 0.35 } else { 0.75 };
            Complex64::from_polar(r, 0.4 + std::f64::consts::FRAC_PI_2 * (j % 4) as f64)
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..=mr).flat_map(|m| (0..=mr).map(move |n| (m, n))).collect();
    let oracle_max = pairs
        .par_iter()
        .map(|&(m, n)| {
            let f = TruncatedSeries::monomial(m, degree);
            let g = TruncatedSeries::monomial(n, degree);
            let weight = closed_weight(m, n)?;
            let mut worst = 0.0f64;
            for &z in &grid {
                let via_integral = duhamel_oracle(&f, &g, z)?;
                let closed = z.powu((m + n) as u32) * weight;
                worst = worst.max((via_integral - closed).norm());
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let pass = max_rel <= 1e-12 && oracle_max <= 1e-8;
    Ok(Outcome {
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        measured: Some(max_rel),
        expected: Some(0.0),
        tolerance: Some(1e-12),
        detail: format!(
            "coefficient rule off by {max_rel:.3e} relative over m,n <= {mr}; integral oracle off by {oracle_max:.3e} (bound 1e-8) on 8 points"
        ),
    })
}

fn check_composition_counterexample(cfg: &VerifyConfig) -> Result<Outcome> {
    if cfg.working_degree < 4 {
        return Ok(Outcome::skipped("needs working degree >= 4".into()));
    }
    let degree = cfg.working_degree;
    let z = TruncatedSeries::monomial(1, degree);
    let z2 = TruncatedSeries::monomial(2, degree);
    let lhs = duhamel(&z, &z).compose(&z2);
    let rhs = duhamel(&z.compose(&z2), &z.compose(&z2));
    let diff = lhs.sub(&rhs);
    let at_four = (diff.coeff(4) - Complex64::new(1.0 / 3.0, 0.0)).norm();
    let elsewhere = (0..=degree)
        .filter(|&k| k != 4)
        .map(|k| diff.coeff(k).norm())
        .fold(0.0, f64::max);
    let pass = at_four <= 1e-14 && elsewhere < 1e-14;
    Ok(Outcome {
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        measured: Some(at_four),
        expected: Some(0.0),
        tolerance: Some(1e-14),
        detail: format!(
            "z^4 coefficient 1/2 - 1/6 off by {at_four:.3e}; largest stray coefficient {elsewhere:.3e}"
        ),
    })
}

fn seeded_self_map_where(
    cfg: &VerifyConfig,
    stream: u64,
    index: usize,
    accept: impl Fn(&TruncatedSeries) -> bool,
) -> Result<TruncatedSeries> {
    let mut attempt = 0u64;
    loop {
        let seed = derived_seed(cfg.seed, stream ^ (index as u64) << 16 ^ attempt);
        let phi = random_self_map(seed, cfg.working_degree, 0.9)?;
        if accept(&phi) {
            return Ok(phi);
        }
        attempt += 1;
    }
}

fn check_center_necessity(cfg: &VerifyConfig) -> Result<Outcome> {
    if cfg.working_degree < 4 {
        return Ok(Outcome::skipped("needs working degree >= 4".into()));
    }
    let ratios = (0..50usize)
        .into_par_iter()
        .map(|i| {
            let phi = seeded_self_map_where(cfg, 0x11, i, |phi| phi.coeff(0).norm() >= 0.05)?;
            let b = phi.coeff(0).norm();
            let residual = duhamel_pair_residual(&phi, 1, 1, &SpaceSpec::Sup)?;
            Ok(residual / (b * b / 4.0))
        })
        .collect::<Result<Vec<f64>>>()?;
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(Outcome::predicate(
        min_ratio >= 1.0,
        min_ratio,
        format!(
            "min residual / (|phi(0)|^2/4) = {min_ratio:.3} over 50 seeded self-maps with |phi(0)| >= 0.05 (pass iff >= 1)"
        ),
    ))
}

fn verify_basis_degree(cfg: &VerifyConfig) -> usize {
    8.min(cfg.working_degree / 2)
}

fn check_linear_symbols(cfg: &VerifyConfig) -> Result<Outcome> {
    if cfg.working_degree < 2 {
        return Ok(Outcome::skipped("needs working degree >= 2".into()));
    }
    let basis = verify_basis_degree(cfg);
    let worst = (0..100usize)
        .into_par_iter()
        .map(|i| {
            // Radii biased toward 1, with the first few exactly unimodular.
            let seed = derived_seed(cfg.seed, 0x22 ^ (i as u64) << 8);
            let angle = (seed % 0xffff) as f64 / 65535.0 * std::f64::consts::TAU;
            let radius = if i < 8 {
                1.0
            } else {
                (((seed >> 16) % 0xffff) as f64 / 65535.0).sqrt()
            };
            let a = Complex64::from_polar(radius, angle);
            let phi = TruncatedSeries::monomial(1, cfg.working_degree).scale(a);
            let r = duhamel_residual(&phi, &SpaceSpec::Sup, basis, cfg.tol)?;
            Ok(r.max_residual)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(Outcome::bounded(
        worst,
        1e-12,
        format!("largest residual over 100 seeded |a| <= 1, basis degree {basis}"),
    ))
}

fn check_nonlinear_symbols(cfg: &VerifyConfig) -> Result<Outcome> {
    if cfg.working_degree < 4 {
        return Ok(Outcome::skipped("needs working degree >= 4".into()));
    }
    let basis = verify_basis_degree(cfg);
    let results = (0..200usize)
        .into_par_iter()
        .map(|i| {
            let offender = |phi: &TruncatedSeries| {
                phi.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != 1)
                    .map(|(_, c)| c.norm())
                    .fold(0.0f64, f64::max)
            };
            let phi = if i % 2 == 0 {
                // Centered variant: force phi(0) = 0 so the defect comes
                // from genuinely non-linear coefficients. Centering at most
                // doubles the boundary max, so a pre-center coefficient of
                // 0.12 survives the rescale back to sup 0.9 above 0.05.
                let raw = seeded_self_map_where(cfg, 0x33, i, |raw| {
                    raw.coeffs()
                        .iter()
                        .skip(2)
                        .map(|c| c.norm())
                        .fold(0.0f64, f64::max)
                        >= 0.12
                })?;
                let centered = raw.sub(&TruncatedSeries::constant(raw.coeff(0), raw.degree()));
                rescale_to_boundary_sup(&centered, 0.9)?
            } else {
                seeded_self_map_where(cfg, 0x34, i, |phi| offender(phi) >= 0.05)?
            };
            if offender(&phi) < 0.05 {
                return Ok(f64::INFINITY);
            }
            let r = duhamel_residual(&phi, &SpaceSpec::Sup, basis, cfg.tol)?;
            let cls = classify_duhamel_multiplicative(&phi, cfg.tol);
            if cls.multiplicative {
                return Ok(0.0);
            }
            Ok(r.max_residual)
        })
        .collect::<Result<Vec<f64>>>()?;
    let usable: Vec<f64> = results.into_iter().filter(|r| r.is_finite()).collect();
    let min_res = usable.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(Outcome::predicate(
        min_res > 1e-4 && usable.len() >= 190,
        min_res,
        format!(
            "min residual {min_res:.3e} over {} seeded non-linear self-maps (pass iff > 1e-4); classifier agreed on every map",
            usable.len()
        ),
    ))
}

// --- norm oracles ------------------------------------------------------

fn check_bergman_oracle(_cfg: &VerifyConfig) -> Result<Outcome> {
    let ps = [1.0, 2.0, 4.0];
    let alphas = [-0.5, 0.0, 1.0, 2.0];
    let combos: Vec<(f64, f64, usize)> = ps
        .iter()
        .flat_map(|&p| {
            alphas
                .iter()
                .flat_map(move |&alpha| (1..=32usize).map(move |n| (p, alpha, n)))
        })
        .collect();
    let max_rel = combos
        .par_iter()
        .map(|&(p, alpha, n)| {
            let space = SpaceSpec::Bergman { p, alpha };
            let quad = norm(&TruncatedSeries::monomial(n, n), &space)?.value;
            let closed = monomial_norm_closed_form(&space, n)?;
            Ok((quad - closed).abs() / closed)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    // Decay of the closed form at the canonical parameters p = 2, a = 0,
    // where ‖z^n‖ = 1/sqrt(n+1).
    let space = SpaceSpec::Bergman { p: 2.0, alpha: 0.0 };
    let mut decreasing = true;
    let mut last = f64::INFINITY;
    for n in 1..=100 {
        let v = monomial_norm_closed_form(&space, n)?;
        decreasing &= v < last;
        last = v;
    }
    let pass = max_rel <= 1e-10 && decreasing && last < 0.3;
    Ok(Outcome {
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        measured: Some(max_rel),
        expected: Some(0.0),
        tolerance: Some(1e-10),
        detail: format!(
            "max relative gap {max_rel:.3e} over n <= 32, p in {{1,2,4}}, a in {{-0.5,0,1,2}}; closed form at p=2,a=0 decreasing with value {last:.4} at n = 100 (< 0.3)"
        ),
    })
}

fn check_besov_oracle(_cfg: &VerifyConfig) -> Result<Outcome> {
    let ps = [1.5, 2.0, 3.0];
    let combos: Vec<(f64, usize)> = ps
        .iter()
        .flat_map(|&p| (1..=32usize).map(move |n| (p, n)))
        .collect();
    let max_rel = combos
        .par_iter()
        .map(|&(p, n)| {
            let space = SpaceSpec::Besov { p };
            let f = TruncatedSeries::monomial(n, n).scale(Complex64::new(1.0 / n as f64, 0.0));
            let quad = norm(&f, &space)?.value;
            let closed = monomial_norm_closed_form(&space, n)?;
            Ok((quad - closed).abs() / closed)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(Outcome::measured_vs(
        max_rel,
        0.0,
        1e-9,
        "max relative gap between quadrature and the beta closed form over n <= 32, p in {1.5, 2, 3}".into(),
    ))
}

fn check_beta_asymptotic(_cfg: &VerifyConfig) -> Result<Outcome> {
    let xs = [10.0, 100.0, 1000.0];
    let mut gaps = Vec::new();
    for &x in &xs {
        gaps.push((beta_asymptotic_ratio(x, 1.5)? - 1.0).abs());
    }
    let monotone = gaps.windows(2).all(|w| w[1] < w[0]);
    let at_100 = gaps[1];
    let pass = monotone && at_100 <= 0.02;
    Ok(Outcome {
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        measured: Some(at_100),
        expected: Some(0.0),
        tolerance: Some(0.02),
        detail: format!(
            "|ratio - 1| at x = 10, 100, 1000: {:.4}, {:.4}, {:.5} (monotone decreasing: {monotone})",
            gaps[0], gaps[1], gaps[2]
        ),
    })
}

// --- partial-sum instruments -------------------------------------------

fn check_hardy_partial_sums(_cfg: &VerifyConfig) -> Result<Outcome> {
    let n_max = 1000usize;
    let c = Complex64::from_polar(1.0, 0.37 * std::f64::consts::PI);
    let full = log_series_partial_sum(c, n_max);
    let space = SpaceSpec::Hardy { p: 2.0 };
    let ns: Vec<usize> = (1..=10).chain([20, 50, 100, 200, 500, 1000]).collect();
    let rows = ns
        .par_iter()
        .map(|&n| {
            let partial = log_series_partial_sum(c, n);
            let tail = norm(&full.sub(&partial.pad_to(n_max)), &space)?.value;
            let bounded = norm(&partial, &space)?.value;
            // Tail oracle summed smallest-first.
            let oracle: f64 = (n + 1..=n_max).rev().map(|k| 1.0 / (k * k) as f64).sum();
            Ok((n, tail * tail, oracle, bounded))
        })
        .collect::<Result<Vec<_>>>()?;
    let max_gap = rows
        .iter()
        .map(|&(_, t, o, _)| (t - o).abs())
        .fold(0.0, f64::max);
    let strictly_decreasing = rows.windows(2).all(|w| w[1].1 < w[0].1);
    let norm_bound = (std::f64::consts::PI.powi(2) / 6.0).sqrt() + 1e-9;
    let norms_bounded = rows.iter().all(|&(_, _, _, b)| b <= norm_bound);
    let h_1000 = full.evaluate(c).norm();
    let gamma_gap = (h_1000 - (n_max as f64).ln() - EULER_GAMMA).abs();
    let pass = max_gap <= 1e-12 && strictly_decreasing && norms_bounded && gamma_gap < 0.05;
    Ok(Outcome {
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        measured: Some(max_gap),
        expected: Some(0.0),
        tolerance: Some(1e-12),
        detail: format!(
            "tail energies match sum_{{k>n}} 1/k^2 to {max_gap:.3e}, strictly decreasing: {strictly_decreasing}; partial norms <= pi/sqrt(6); |H_1000 - ln 1000 - gamma| = {gamma_gap:.2e} (< 0.05)"
        ),
    })
}

fn check_bloch_partial_sums(_cfg: &VerifyConfig) -> Result<Outcome> {
    let cs = unimodular_grid(8);
    let cases: Vec<(usize, usize)> = (1..=200usize)
        .flat_map(|n| (0..cs.len()).map(move |ci| (n, ci)))
        .collect();
    let rows = cases
        .par_iter()
        .map(|&(n, ci)| {
            let p = artanh_series_partial_sum(cs[ci], n);
            let b = norm(&p, &SpaceSpec::Bloch)?.value;
            let at_c = p.evaluate(cs[ci]).norm();
            Ok((n, b, at_c))
        })
        .collect::<Result<Vec<_>>>()?;
    let max_norm = rows.iter().map(|&(_, b, _)| b).fold(0.0, f64::max);
    let min_margin = rows
        .iter()
        .map(|&(n, _, v)| v - 0.5 * (n as f64).ln())
        .fold(f64::INFINITY, f64::min);
    let pass = max_norm <= 1.0 + 1e-9 && min_margin >= 0.0;
    Ok(Outcome {
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        measured: Some(max_norm),
        expected: Some(1.0),
        tolerance: Some(1e-9),
        detail: format!(
            "max Bloch norm {max_norm:.12} over n <= 200 and 8 unimodular points; boundary values exceed (1/2)·log n by at least {min_margin:.3}"
        ),
    })
}

// --- algebra bound -----------------------------------------------------

fn golden_max(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
        if b - a < 1e-12 {
            break;
        }
    }
    f1.max(f2)
}

/// Maximum over the disc radii of the convolution majorant
/// `[2(1+r)/(2−r)]·(1−r)·log(1/(1−r))`, plus the three unit terms of the
/// derivative split; the empirical Duhamel ratio must stay below it.
pub fn bloch_duhamel_bound() -> f64 {
    let majorant =
        golden_max(1e-9, 1.0 - 1e-12, |r| {
            2.0 * (1.0 + r) / (2.0 - r) * (1.0 - r) * (1.0 / (1.0 - r)).ln()
        });
    debug_assert!(majorant < 1.0);
    majorant + 3.0
}

fn check_bloch_duhamel_algebra(cfg: &VerifyConfig) -> Result<Outcome> {
    let bound = bloch_duhamel_bound();
    let degree = cfg.working_degree;
    let budget = (3 * degree) / 4;
    let ratios = (0..500usize)
        .into_par_iter()
        .map(|i| {
            let f = TruncatedSeries::random(derived_seed(cfg.seed, 0x55 ^ (i as u64) << 8), budget, 0.7, 1.0)?
                .pad_to(degree);
            let g = TruncatedSeries::random(derived_seed(cfg.seed, 0x56 ^ (i as u64) << 8), budget, 0.7, 1.0)?
                .pad_to(degree);
            let nf = norm(&f, &SpaceSpec::Bloch)?.value;
            let ng = norm(&g, &SpaceSpec::Bloch)?.value;
            if nf == 0.0 || ng == 0.0 {
                return Ok(0.0);
            }
            let np = norm(&duhamel(&f, &g), &SpaceSpec::Bloch)?.value;
            Ok(np / (nf * ng))
        })
        .collect::<Result<Vec<f64>>>()?;
    let empirical = ratios.into_iter().fold(0.0, f64::max);
    Ok(Outcome::bounded(
        empirical,
        4.0,
        format!(
            "empirical max ratio ‖f⊛g‖/(‖f‖·‖g‖) over 500 seeded pairs; derived bound {bound:.4} (majorant max {:.4} < 1 plus three unit terms)",
            bound - 3.0
        ),
    ))
}

// --- operator instruments ----------------------------------------------

fn adjoint_grid() -> Vec<Complex64> {
    let mut grid = Vec::with_capacity(32);
    for &r in &[0.15, 0.3, 0.45, 0.6] {
        for j in 0..8 {
            grid.push(Complex64::from_polar(
                r,
                0.1 + std::f64::consts::TAU * j as f64 / 8.0,
            ));
        }
    }
    grid
}

/// Tolerance for the adjoint identity: at small working degrees the
/// truncated composition keeps a geometric tail on the |x| <= 0.6 grid,
/// so the budget widens accordingly.
fn adjoint_tolerance(working_degree: usize) -> f64 {
    (40.0 * 0.6f64.powi(working_degree as i32 + 1)).max(1e-11)
}

fn check_adjoint_evaluation(cfg: &VerifyConfig) -> Result<Outcome> {
    let grid = adjoint_grid();
    // The identity is degree-independent once the truncation tail is below
    // tolerance, so cap the sampling degree; past ~128 the exact resampled
    // compositions only get slower, not sharper.
    let degree = cfg.working_degree.min(128);
    let tol = adjoint_tolerance(degree);
    let worst = (0..20usize)
        .into_par_iter()
        .map(|i| {
            let phi = random_self_map(
                derived_seed(cfg.seed, 0x66 ^ (i as u64) << 8),
                degree,
                0.85,
            )?;
            let op = OperatorSpec::composition(phi.clone())?;
            let mut worst = 0.0f64;
            for probe_idx in 0..10usize {
                let probe = if probe_idx == 0 {
                    TruncatedSeries::one(degree)
                } else {
                    TruncatedSeries::random(
                        derived_seed(cfg.seed, 0x67 ^ ((i * 16 + probe_idx) as u64)),
                        degree,
                        0.7,
                        1.0,
                    )?
                };
                let image = apply(&op, &probe)?;
                for &x in &grid {
                    let dev = (image.evaluate(x) - probe.evaluate(phi.evaluate(x))).norm();
                    worst = worst.max(dev);
                }
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(Outcome::bounded(
        worst,
        tol,
        "max |(C_phi f)(x) - f(phi(x))| over 20 seeded self-maps, 10 probes, 32 grid points with |x| <= 0.6 (tolerance widens below degree 40 for the truncation tail)".into(),
    ))
}

fn check_boundary_eval_dichotomy(cfg: &VerifyConfig) -> Result<Outcome> {
    let budget = 20.min(cfg.working_degree / 2).max(1);
    let mut worst = 0.0f64;
    let mut symbols_constant = true;
    for (i, c) in [
        Complex64::new(1.0, 0.0),
        Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
    ]
    .iter()
    .enumerate()
    {
        let op = OperatorSpec::boundary_eval(*c)?;
        let report = almost_mult_residual(
            &op,
            &SpaceSpec::Sup,
            100,
            derived_seed(cfg.seed, 0x77 + i as u64),
            budget,
        )?;
        worst = worst.max(report.max_residual);
        let class = is_self_map(&symbol_of(&op)?, SELF_MAP_TOL);
        symbols_constant &= matches!(class, SelfMapClass::UnimodularConstant(_));
    }
    let pass = worst < 1e-11 && symbols_constant;
    Ok(Outcome {
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        measured: Some(worst),
        expected: Some(0.0),
        tolerance: Some(1e-11),
        detail: format!(
            "boundary evaluation is almost multiplicative (max residual {worst:.3e} over 100 trials) AND its symbol classifies as a unimodular constant rather than a self-map: both facts hold together"
        ),
    })
}

fn check_growth_bounds(cfg: &VerifyConfig) -> Result<Outcome> {
    let budget = (3 * cfg.working_degree / 4).max(2);
    let radii: Vec<f64> = (0..11).map(|k| 0.095 * k as f64).collect();
    let stats = (0..500usize)
        .into_par_iter()
        .map(|i| {
            let f = TruncatedSeries::random(
                derived_seed(cfg.seed, 0x88 ^ (i as u64) << 8),
                budget,
                0.7,
                1.0,
            )?;
            let mut violations = 0usize;
            for &r in &radii {
                let a = Complex64::from_polar(r, 0.25 + i as f64);
                if !bloch_growth_check(&f, a)?.holds {
                    violations += 1;
                }
            }
            let mass = besov_mass(&f, 2.0)?.value;
            let mass_ok = mass.is_finite() && mass >= 0.0;
            // Empirical growth-constant calibration on the same samples.
            let bp = norm(&f, &SpaceSpec::Besov { p: 2.0 })?.value;
            let mut ratio = 0.0f64;
            if bp > 0.0 {
                for &r in &radii {
                    let z = Complex64::from_polar(r, 0.25 + i as f64);
                    let weight = (2.0 / (1.0 - r * r)).ln().powf(0.5);
                    ratio = ratio.max(f.evaluate(z).norm() / (bp * weight));
                }
            }
            Ok((violations, mass_ok, ratio))
        })
        .collect::<Result<Vec<_>>>()?;
    let violations: usize = stats.iter().map(|s| s.0).sum();
    let masses_finite = stats.iter().all(|s| s.1);
    let c_emp = stats.iter().map(|s| s.2).fold(0.0, f64::max);
    Ok(Outcome::predicate(
        violations == 0 && masses_finite,
        violations as f64,
        format!(
            "0 growth-inequality violations expected over 500 samples x 11 radii (got {violations}); all Besov mass integrals finite: {masses_finite}; empirically calibrated growth constant {c_emp:.3}"
        ),
    ))
}

fn check_matrix_roundtrip(cfg: &VerifyConfig) -> Result<Outcome> {
    let degree = cfg.working_degree.min(64);
    let phi = random_self_map(derived_seed(cfg.seed, 0x99), degree, 0.85)?;
    let ops = [
        OperatorSpec::composition(phi)?,
        OperatorSpec::multiplication(TruncatedSeries::random(
            derived_seed(cfg.seed, 0x9a),
            degree,
            0.7,
            1.0,
        )?),
        OperatorSpec::boundary_eval(Complex64::from_polar(1.0, 1.3))?,
    ];
    let mut worst = 0.0f64;
    for (i, op) in ops.iter().enumerate() {
        let m = OperatorSpec::matrix(matrix_of(op, degree)?);
        for t in 0..8 {
            let f = TruncatedSeries::random(
                derived_seed(cfg.seed, 0xa0 + (i * 8 + t) as u64),
                degree,
                0.7,
                1.0,
            )?;
            let direct = apply(op, &f)?;
            let via = apply(&m, &f)?;
            let dist = (0..=degree)
                .map(|k| (direct.coeff(k) - via.coeff(k)).norm())
                .fold(0.0, f64::max);
            worst = worst.max(dist);
        }
    }
    Ok(Outcome::bounded(
        worst,
        1e-12,
        "max coefficient gap between matrix action and direct action over three operator kinds".into(),
    ))
}

fn check_parallel_determinism(cfg: &VerifyConfig) -> Result<Outcome> {
    let phi = random_self_map(derived_seed(cfg.seed, 0xb0), cfg.working_degree, 0.85)?;
    let comp = OperatorSpec::composition(phi.clone())?;
    let bdry = OperatorSpec::boundary_eval(Complex64::new(1.0, 0.0))?;
    let budget = 8.min(cfg.working_degree / 2).max(1);
    let mut mismatches = 0usize;
    for op in [&comp, &bdry] {
        let par = residual_values(op, &SpaceSpec::Sup, 32, cfg.seed, budget, true)?;
        let ser = residual_values(op, &SpaceSpec::Sup, 32, cfg.seed, budget, false)?;
        mismatches += par
            .iter()
            .zip(&ser)
            .filter(|(a, b)| a.to_bits() != b.to_bits())
            .count();
    }
    // The residual scan is itself parallel; two runs must agree bitwise.
    if cfg.working_degree >= 4 {
        let r1 = duhamel_residual(&phi.scale(Complex64::new(0.5, 0.0)), &SpaceSpec::Sup, 2, cfg.tol)?;
        let r2 = duhamel_residual(&phi.scale(Complex64::new(0.5, 0.0)), &SpaceSpec::Sup, 2, cfg.tol)?;
        if r1.max_residual.to_bits() != r2.max_residual.to_bits() {
            mismatches += 1;
        }
    }
    Ok(Outcome::predicate(
        mismatches == 0,
        mismatches as f64,
        format!("{mismatches} bitwise mismatches between parallel and serial residual batches (64 trials compared)"),
    ))
}

fn check_ring_axioms(cfg: &VerifyConfig) -> Result<Outcome> {
    let degree = cfg.working_degree.min(24);
    let dist = |a: &TruncatedSeries, b: &TruncatedSeries| {
        (0..=a.degree().min(b.degree()))
            .map(|k| (a.coeff(k) - b.coeff(k)).norm())
            .fold(0.0f64, f64::max)
    };
    let worst = (0..64usize)
        .into_par_iter()
        .map(|i| {
            let s = |j: u64| {
                TruncatedSeries::random(derived_seed(cfg.seed, 0xc0 ^ (i as u64) << 8 ^ j), degree, 0.8, 0.5)
            };
            let (f, g, h) = (s(0)?, s(1)?, s(2)?);
            let one = TruncatedSeries::one(degree);
            let mut worst = dist(&f.cauchy_mul(&g), &g.cauchy_mul(&f));
            worst = worst.max(dist(&f.add(&g), &g.add(&f)));
            worst = worst.max(dist(
                &f.cauchy_mul(&g).cauchy_mul(&h),
                &f.cauchy_mul(&g.cauchy_mul(&h)),
            ));
            worst = worst.max(dist(&f.add(&g).add(&h), &f.add(&g.add(&h))));
            worst = worst.max(dist(
                &f.cauchy_mul(&g.add(&h)),
                &f.cauchy_mul(&g).add(&f.cauchy_mul(&h)),
            ));
            worst = worst.max(dist(&one.cauchy_mul(&f), &f));
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(Outcome::bounded(
        worst,
        1e-13,
        "worst coefficientwise defect of commutativity, associativity, distributivity, and the unit over 64 seeded triples".into(),
    ))
}

fn check_deflation_roundtrip(cfg: &VerifyConfig) -> Result<Outcome> {
    let degree = cfg.working_degree.min(24);
    let worst = (0..64usize)
        .into_par_iter()
        .map(|i| {
            let f = TruncatedSeries::random(derived_seed(cfg.seed, 0xd0 ^ (i as u64) << 8), degree, 0.8, 1.0)?;
            let s = derived_seed(cfg.seed, 0xd1 ^ (i as u64) << 8);
            let w = Complex64::from_polar(
                0.9 * ((s % 1024) as f64 / 1024.0),
                ((s >> 10) % 1024) as f64 / 1024.0 * std::f64::consts::TAU,
            );
            let g = f.deflate_at(w);
            let mut coeffs = vec![Complex64::ZERO; degree + 1];
            coeffs[0] = -w;
            coeffs[1] = Complex64::ONE;
            let z_minus_w = TruncatedSeries::new(coeffs)?;
            let product = z_minus_w.mul_to_degree(&g, degree);
            let mut cs = product.coeffs().to_vec();
            cs[0] += f.evaluate(w);
            let back = TruncatedSeries::new(cs)?;
            Ok((0..=degree)
                .map(|k| (back.coeff(k) - f.coeff(k)).norm())
                .fold(0.0f64, f64::max))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(Outcome::bounded(
        worst,
        1e-12,
        "worst coefficientwise gap of (z-w)·deflate(f,w) + f(w) against f over 64 seeded pairs".into(),
    ))
}

fn check_borel_homomorphism(cfg: &VerifyConfig) -> Result<Outcome> {
    let degree = cfg.working_degree.min(64);
    let worst = (0..32usize)
        .into_par_iter()
        .map(|i| {
            let f = TruncatedSeries::random(derived_seed(cfg.seed, 0xe0 ^ (i as u64) << 8), degree, 0.7, 1.0)?;
            let g = TruncatedSeries::random(derived_seed(cfg.seed, 0xe1 ^ (i as u64) << 8), degree, 0.7, 1.0)?;
            let lhs = borel_transform(&duhamel(&f, &g))?;
            let rhs = borel_transform(&f)?.cauchy_mul(&borel_transform(&g)?);
            Ok((0..=degree)
                .map(|k| {
                    let denom = lhs.coeff(k).norm().max(1.0);
                    (lhs.coeff(k) - rhs.coeff(k)).norm() / denom
                })
                .fold(0.0f64, f64::max))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(Outcome::bounded(
        worst,
        1e-12,
        "worst relative coefficient gap of Borel(f⊛g) against Borel(f)·Borel(g) over 32 seeded pairs".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duhamel_bound_is_just_under_four() {
        let bound = bloch_duhamel_bound();
        assert!((bound - 3.972_858_253_1).abs() < 1e-6, "{bound}");
        assert!(bound < 4.0);
    }

    #[test]
    fn adjoint_tolerance_widens_at_small_degree() {
        assert_eq!(adjoint_tolerance(64), 1e-11);
        assert!(adjoint_tolerance(16) > 1e-4);
    }

    #[test]
    fn report_serialization_shapes() {
        let report = VerificationReport {
            seed: 1,
            working_degree: 8,
            tol: 1e-9,
            checks: vec![CheckResult {
                id: "x",
                claim: "y",
                status: CheckStatus::Skipped("small".into()),
                measured: None,
                expected: None,
                tolerance: None,
                detail: "d".into(),
                wall_ms: 0.0,
            }],
        };
        let v = report.to_json();
        assert_eq!(v["checks"][0]["status"], "skipped");
        assert_eq!(v["checks"][0]["skip_reason"], "small");
        assert!(report.to_markdown().contains("skipped"));
        assert!(report.all_passed());
    }
}
