//! Linear operators on the truncated-series space: construction,
//! application, monomial-basis matrices, and the multiplicativity
//! instruments.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::series::{derived_seed, TruncatedSeries};
use crate::spaces::{self, angular_count, circle_max_abs, SpaceSpec};

/// Tolerance for the unimodularity constraint on boundary evaluation.
pub const UNIMODULAR_TOL: f64 = 1e-12;
/// Default classification tolerance for self-map tests.
pub const SELF_MAP_TOL: f64 = 1e-9;

/// A dense matrix acting on coefficient vectors of a fixed length.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl CoeffMatrix {
    /// Row-major entries, `dim × dim`.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                dim,
                len: entries.len(),
            });
        }
        for (index, e) in entries.iter().enumerate() {
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index });
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::ONE;
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    /// Matrix–vector product on the coefficient vector of `f`, which must
    /// have exactly `dim` coefficients.
    pub fn apply_to(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        if f.coeffs().len() != self.dim {
            return Err(Error::DimensionMismatch {
                dim: self.dim,
                len: f.coeffs().len(),
            });
        }
        let coeffs = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.get(i, j) * f.coeff(j))
                    .sum::<Complex64>()
            })
            .collect();
        TruncatedSeries::new(coeffs)
    }
}

/// A tagged description of a linear operator on the series space.
#[derive(Debug, Clone)]
pub enum OperatorSpec {
    /// `f ↦ f∘φ` for a polynomial self-map `φ`.
    Composition(TruncatedSeries),
    /// `f ↦ h·f`, truncated to the degree of `f`.
    Multiplication(TruncatedSeries),
    /// `f ↦ f(c)·1` for a unimodular constant `c`.
    BoundaryEval(Complex64),
    /// `f ↦ f(a)·1` for `|a| < 1`.
    PointEval(Complex64),
    /// Explicit matrix on the monomial coefficient basis.
    Matrix(CoeffMatrix),
}

impl OperatorSpec {
    /// Builds a composition operator, rejecting symbols that the boundary
    /// test does not classify as self-maps.
    pub fn composition(phi: TruncatedSeries) -> Result<Self> {
        match is_self_map(&phi, SELF_MAP_TOL) {
            SelfMapClass::SelfMap { .. } => Ok(Self::Composition(phi)),
            other => Err(Error::NotASelfMap(other.describe())),
        }
    }

    pub fn multiplication(h: TruncatedSeries) -> Self {
        Self::Multiplication(h)
    }

    pub fn boundary_eval(c: Complex64) -> Result<Self> {
        if (c.norm() - 1.0).abs() >= UNIMODULAR_TOL {
            return Err(Error::Domain {
                what: "boundary evaluation point |c|",
                constraint: "= 1 (within 1e-12)",
                value: c.norm(),
            });
        }
        Ok(Self::BoundaryEval(c))
    }

    pub fn point_eval(a: Complex64) -> Result<Self> {
        let radius = a.norm();
        if radius >= 1.0 || radius.is_nan() {
            return Err(Error::Domain {
                what: "evaluation point |a|",
                constraint: "< 1",
                value: radius,
            });
        }
        Ok(Self::PointEval(a))
    }

    pub fn matrix(m: CoeffMatrix) -> Self {
        Self::Matrix(m)
    }

    /// The degree at which the operator naturally acts (symbol degree,
    /// matrix dimension, or 1 for evaluation functionals).
    pub fn natural_degree(&self) -> usize {
        match self {
            OperatorSpec::Composition(phi) => phi.degree(),
            OperatorSpec::Multiplication(h) => h.degree(),
            OperatorSpec::Matrix(m) => m.dim() - 1,
            OperatorSpec::BoundaryEval(_) | OperatorSpec::PointEval(_) => 1,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            OperatorSpec::Composition(phi) => format!("composition by {phi}"),
            OperatorSpec::Multiplication(h) => format!("multiplication by {h}"),
            OperatorSpec::BoundaryEval(c) => format!("boundary evaluation at ({},{})", c.re, c.im),
            OperatorSpec::PointEval(a) => format!("point evaluation at ({},{})", a.re, a.im),
            OperatorSpec::Matrix(m) => format!("{0}x{0} coefficient matrix", m.dim()),
        }
    }
}

/// Applies the operator; the result carries the degree of `f`.
pub fn apply(op: &OperatorSpec, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    match op {
        OperatorSpec::Composition(phi) => Ok(f.compose_to(phi, f.degree())),
        OperatorSpec::Multiplication(h) => Ok(h.mul_to_degree(f, f.degree())),
        OperatorSpec::BoundaryEval(c) => {
            Ok(TruncatedSeries::constant(f.evaluate(*c), f.degree()))
        }
        OperatorSpec::PointEval(a) => Ok(TruncatedSeries::constant(f.evaluate(*a), f.degree())),
        OperatorSpec::Matrix(m) => m.apply_to(f),
    }
}

/// The operator's symbol `T z`.
pub fn symbol_of(op: &OperatorSpec) -> Result<TruncatedSeries> {
    let z = TruncatedSeries::monomial(1, op.natural_degree().max(1));
    apply(op, &z)
}

/// Outcome of the boundary dichotomy test: a bounded-by-one symbol is
/// either a self-map of the disc or a unimodular constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelfMapClass {
    SelfMap {
        boundary_max: f64,
        /// Set when the sampled boundary maximum touches 1 within the
        /// tolerance band; rotations `az` with `|a| = 1` land here.
        boundary_contact: bool,
    },
    UnimodularConstant(Complex64),
    Neither {
        boundary_max: f64,
    },
}

impl SelfMapClass {
    pub fn is_self_map(&self) -> bool {
        matches!(self, SelfMapClass::SelfMap { .. })
    }

    pub fn describe(&self) -> String {
        match self {
            SelfMapClass::SelfMap {
                boundary_max,
                boundary_contact,
            } => {
                if *boundary_contact {
                    format!("self-map with boundary contact (max |φ| = {boundary_max})")
                } else {
                    format!("self-map (boundary max {boundary_max})")
                }
            }
            SelfMapClass::UnimodularConstant(c) => {
                format!("unimodular constant ({},{})", c.re, c.im)
            }
            SelfMapClass::Neither { boundary_max } => {
                format!("not a self-map (boundary max {boundary_max})")
            }
        }
    }
}

/// Classifies `φ` by its sampled maximum on `|z| = 1`; the maximum
/// principle reduces the disc-image test to the boundary. Constants inside
/// the disc count as (degenerate) self-maps.
pub fn is_self_map(phi: &TruncatedSeries, tol: f64) -> SelfMapClass {
    let scale = phi
        .coeffs()
        .iter()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let constant = phi
        .coeffs()
        .iter()
        .skip(1)
        .all(|c| c.norm() <= tol * scale);
    if constant {
        let c = phi.coeff(0);
        let r = c.norm();
        if (r - 1.0).abs() <= tol {
            return SelfMapClass::UnimodularConstant(c);
        }
        if r < 1.0 {
            return SelfMapClass::SelfMap {
                boundary_max: r,
                boundary_contact: false,
            };
        }
        return SelfMapClass::Neither { boundary_max: r };
    }
    let trimmed = phi.truncate_to(phi.effective_degree());
    let m = (8 * (trimmed.effective_degree() + 1))
        .next_power_of_two()
        .max(512);
    let boundary_max = circle_max_abs(&trimmed, 1.0, m);
    if boundary_max <= 1.0 + tol {
        SelfMapClass::SelfMap {
            boundary_max,
            boundary_contact: boundary_max >= 1.0 - tol,
        }
    } else {
        SelfMapClass::Neither { boundary_max }
    }
}

/// Rescales `f` so its sampled boundary maximum equals `target`; with
/// `target < 1` the result is a strict self-map. Rejects the zero series.
pub fn rescale_to_boundary_sup(f: &TruncatedSeries, target: f64) -> Result<TruncatedSeries> {
    if !(target > 0.0 && target <= 1.0) {
        return Err(Error::Domain {
            what: "boundary sup target",
            constraint: "0 < s <= 1",
            value: target,
        });
    }
    let trimmed = f.truncate_to(f.effective_degree());
    let m = angular_count(trimmed.effective_degree());
    let max = circle_max_abs(&trimmed, 1.0, m);
    if max == 0.0 {
        return Err(Error::Domain {
            what: "boundary max",
            constraint: "> 0 (nonzero series)",
            value: 0.0,
        });
    }
    Ok(f.scale(Complex64::new(target / max, 0.0)))
}

/// A seeded polynomial with its boundary maximum rescaled to
/// `boundary_sup`, giving a strict self-map for `boundary_sup < 1`.
pub fn random_self_map(seed: u64, degree: usize, boundary_sup: f64) -> Result<TruncatedSeries> {
    let mut seed = seed;
    loop {
        let raw = TruncatedSeries::random(seed, degree, 0.6, 1.0)?;
        match rescale_to_boundary_sup(&raw, boundary_sup) {
            Ok(phi) => return Ok(phi),
            Err(Error::Domain {
                what: "boundary max",
                ..
            }) => {
                seed = derived_seed(seed, 0x5e1f);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Residual statistics of `T(fg) − (Tf)(Tg)` over seeded random pairs.
#[derive(Debug, Clone)]
pub struct MultiplicativityReport {
    pub max_residual: f64,
    pub mean_residual: f64,
    pub trials: usize,
    pub space: SpaceSpec,
    pub seed: u64,
    pub degree_budget: usize,
    pub working_degree: usize,
    pub witness_trial: usize,
    pub witness: (TruncatedSeries, TruncatedSeries),
}

/// `‖T(fg) − (Tf)(Tg)‖` in the given space for one explicit pair.
pub fn mult_residual_pair(
    op: &OperatorSpec,
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    space: &SpaceSpec,
) -> Result<f64> {
    let out = f.degree().min(g.degree());
    let product = f.mul_to_degree(g, out);
    let lhs = apply(op, &product)?;
    let rhs = apply(op, f)?.mul_to_degree(&apply(op, g)?, out);
    Ok(spaces::norm(&lhs.sub(&rhs), space)?.value)
}

fn working_degree_for(op: &OperatorSpec, degree_budget: usize) -> Result<usize> {
    let natural = op.natural_degree();
    match op {
        OperatorSpec::Matrix(_) => {
            if 2 * degree_budget > natural {
                Err(Error::Domain {
                    what: "degree budget",
                    constraint: "2·budget <= matrix degree",
                    value: degree_budget as f64,
                })
            } else {
                Ok(natural)
            }
        }
        _ => Ok(natural.max(2 * degree_budget)),
    }
}

fn trial_pair(
    seed: u64,
    trial: usize,
    budget: usize,
    working_degree: usize,
) -> (TruncatedSeries, TruncatedSeries) {
    let f = TruncatedSeries::random(derived_seed(seed, 2 * trial as u64), budget, 0.7, 1.0)
        .expect("valid generator parameters")
        .pad_to(working_degree);
    let g = TruncatedSeries::random(derived_seed(seed, 2 * trial as u64 + 1), budget, 0.7, 1.0)
        .expect("valid generator parameters")
        .pad_to(working_degree);
    (f, g)
}

/// Per-trial residuals, indexed by trial so parallel and serial execution
/// aggregate bit-identically.
pub(crate) fn residual_values(
    op: &OperatorSpec,
    space: &SpaceSpec,
    trials: usize,
    seed: u64,
    degree_budget: usize,
    parallel: bool,
) -> Result<Vec<f64>> {
    let wd = working_degree_for(op, degree_budget)?;
    let run = |t: usize| -> Result<f64> {
        let (f, g) = trial_pair(seed, t, degree_budget, wd);
        mult_residual_pair(op, &f, &g, space)
    };
    if parallel {
        (0..trials).into_par_iter().map(run).collect()
    } else {
        (0..trials).map(run).collect()
    }
}

/// Samples `‖T(fg) − (Tf)(Tg)‖` over seeded random pairs of degree at most
/// `degree_budget`. The budget is kept at half the working degree so the
/// product `fg` is exact and truncation cannot masquerade as a
/// multiplicativity defect.
pub fn almost_mult_residual(
    op: &OperatorSpec,
    space: &SpaceSpec,
    trials: usize,
    seed: u64,
    degree_budget: usize,
) -> Result<MultiplicativityReport> {
    if trials == 0 {
        return Err(Error::Domain {
            what: "trials",
            constraint: ">= 1",
            value: 0.0,
        });
    }
    let wd = working_degree_for(op, degree_budget)?;
    let residuals = residual_values(op, space, trials, seed, degree_budget, true)?;
    let mut max_residual = f64::NEG_INFINITY;
    let mut witness_trial = 0;
    let mut sum = 0.0;
    for (t, &r) in residuals.iter().enumerate() {
        sum += r;
        if r > max_residual {
            max_residual = r;
            witness_trial = t;
        }
    }
    let witness = trial_pair(seed, witness_trial, degree_budget, wd);
    Ok(MultiplicativityReport {
        max_residual,
        mean_residual: sum / trials as f64,
        trials,
        space: *space,
        seed,
        degree_budget,
        working_degree: wd,
        witness_trial,
        witness,
    })
}

/// Outcome of the `T1 = 1` check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnitPreservation {
    Holds { deviation: f64 },
    Violated { deviation: f64 },
    /// Guard case: the operator failed the multiplicativity gate, so the
    /// identity is not expected and the check is skipped.
    NotMultiplicative { max_residual: f64 },
}

/// For an operator passing the multiplicativity residual at `tol`, asserts
/// `‖T1 − 1‖_sup < tol`.
pub fn unit_preservation_check(op: &OperatorSpec, tol: f64) -> Result<UnitPreservation> {
    let budget = match op {
        OperatorSpec::Matrix(m) => ((m.dim() - 1) / 2).min(8),
        _ => 8,
    };
    let gate = almost_mult_residual(op, &SpaceSpec::Sup, 16, 0xd15c, budget)?;
    if gate.max_residual >= tol {
        return Ok(UnitPreservation::NotMultiplicative {
            max_residual: gate.max_residual,
        });
    }
    let degree = op.natural_degree();
    let one = TruncatedSeries::one(degree);
    let image = apply(op, &one)?;
    let deviation = spaces::norm(&image.sub(&one), &SpaceSpec::Sup)?.value;
    Ok(if deviation < tol {
        UnitPreservation::Holds { deviation }
    } else {
        UnitPreservation::Violated { deviation }
    })
}

/// Max over probe functions of `|(Tf)(x) − f(φ(x))|` with `φ = Tz`; a
/// vanishing deviation certifies that `T` acts as composition by its
/// symbol at `x`. Probe 0 is the constant 1, the rest are seeded samples.
pub fn adjoint_eval_check(
    op: &OperatorSpec,
    x: Complex64,
    probe_count: usize,
    seed: u64,
) -> Result<f64> {
    let phi = symbol_of(op)?;
    let target = phi.evaluate(x);
    let degree = op.natural_degree();
    let mut worst = 0.0f64;
    for i in 0..probe_count {
        let probe = if i == 0 {
            TruncatedSeries::one(degree)
        } else {
            TruncatedSeries::random(derived_seed(seed, i as u64), degree, 0.7, 1.0)?
        };
        let image = apply(op, &probe)?;
        let deviation = (image.evaluate(x) - probe.evaluate(target)).norm();
        worst = worst.max(deviation);
    }
    Ok(worst)
}

/// Monomial-basis matrix of the operator at degree `n`: column `k` holds
/// the coefficients of `T z^k`.
pub fn matrix_of(op: &OperatorSpec, n: usize) -> Result<CoeffMatrix> {
    let dim = n + 1;
    let mut out = CoeffMatrix::new(dim, vec![Complex64::ZERO; dim * dim])?;
    match op {
        OperatorSpec::Composition(phi) => {
            // Iterated powers of the symbol, truncated at n.
            let phi = phi.pad_to(n.max(phi.degree()));
            let mut power = TruncatedSeries::one(n);
            for col in 0..dim {
                for row in 0..dim {
                    out.set(row, col, power.coeff(row));
                }
                if col + 1 < dim {
                    power = power.mul_to_degree(&phi, n);
                }
            }
        }
        _ => {
            for col in 0..dim {
                let image = apply(op, &TruncatedSeries::monomial(col, n))?;
                for row in 0..dim {
                    out.set(row, col, image.coeff(row));
                }
            }
        }
    }
    Ok(out)
}

/// Sampled lower bound for the operator norm: `max ‖Tf‖/‖f‖` over a
/// seeded batch. Never an upper bound.
pub fn operator_norm_lower_bound(
    op: &OperatorSpec,
    space: &SpaceSpec,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    let degree = op.natural_degree();
    let mut best = 0.0f64;
    for t in 0..trials {
        let f = TruncatedSeries::random(derived_seed(seed, t as u64), degree, 0.7, 1.0)?;
        let denom = spaces::norm(&f, space)?.value;
        if denom == 0.0 {
            continue;
        }
        let numer = spaces::norm(&apply(op, &f)?, space)?.value;
        best = best.max(numer / denom);
    }
    Ok(best)
}

/// Partial sum `Σ_{k=1}^{n} (conj(c)·z)^k / k` of the logarithmic series
/// with boundary singularity at `c`.
pub fn log_series_partial_sum(c: Complex64, n: usize) -> TruncatedSeries {
    let cbar = c.conj();
    let mut coeffs = vec![Complex64::ZERO; n + 1];
    let mut power = Complex64::ONE;
    for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
        power *= cbar;
        *slot = power / k as f64;
    }
    TruncatedSeries::new(coeffs).expect("finite by construction")
}

/// Partial sum `Σ_{k=0}^{n-1} (conj(c)·z)^{2k+1} / (2k+1)` of the inverse
/// hyperbolic tangent series; its Bloch norm stays at most 1 while its
/// boundary values at `c` grow like `(1/2)·log n`.
pub fn artanh_series_partial_sum(c: Complex64, n: usize) -> TruncatedSeries {
    assert!(n >= 1, "partial sum needs at least one term");
    let cbar = c.conj();
    let degree = 2 * n - 1;
    let mut coeffs = vec![Complex64::ZERO; degree + 1];
    let mut power = cbar;
    let cbar_sq = cbar * cbar;
    for k in 0..n {
        coeffs[2 * k + 1] = power / (2 * k + 1) as f64;
        power *= cbar_sq;
    }
    TruncatedSeries::new(coeffs).expect("finite by construction")
}

fn check_unimodular(c: Complex64) -> Result<()> {
    if (c.norm() - 1.0).abs() >= UNIMODULAR_TOL {
        return Err(Error::Domain {
            what: "|c|",
            constraint: "= 1 (within 1e-12)",
            value: c.norm(),
        });
    }
    Ok(())
}

fn demo_grid(n_max: usize) -> Vec<usize> {
    let mut grid: Vec<usize> = (1..=n_max.min(10)).collect();
    for n in [20, 50, 100, 200, 500, 1000, 2000, 5000] {
        if n < n_max {
            grid.push(n);
        }
    }
    if n_max > 10 {
        grid.push(n_max);
    }
    grid
}

#[derive(Debug, Clone, Copy)]
pub struct HardyDivergenceRow {
    pub n: usize,
    /// `‖f_n‖` in the Hardy 2-norm; bounded by π/√6 for every `n`.
    pub partial_norm: f64,
    /// `|f_n(c)|`, the `n`-th harmonic number; divergent.
    pub value_at_c: f64,
    /// `‖f − f_n‖²` against the degree-`n_max` truncation.
    pub tail_norm_sq: f64,
}

/// Tabulates the bounded-norm / divergent-boundary-value behaviour of the
/// logarithmic partial sums in the Hardy 2-norm.
pub fn divergence_demo_hardy(c: Complex64, n_max: usize) -> Result<Vec<HardyDivergenceRow>> {
    check_unimodular(c)?;
    if n_max == 0 {
        return Err(Error::Domain {
            what: "n_max",
            constraint: ">= 1",
            value: 0.0,
        });
    }
    let full = log_series_partial_sum(c, n_max);
    let space = SpaceSpec::Hardy { p: 2.0 };
    demo_grid(n_max)
        .into_par_iter()
        .map(|n| {
            let partial = log_series_partial_sum(c, n);
            let partial_norm = spaces::norm(&partial, &space)?.value;
            let value_at_c = partial.evaluate(c).norm();
            let tail = full.sub(&partial.pad_to(n_max));
            let tail_norm = spaces::norm(&tail, &space)?.value;
            Ok(HardyDivergenceRow {
                n,
                partial_norm,
                value_at_c,
                tail_norm_sq: tail_norm * tail_norm,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct BlochDivergenceRow {
    pub n: usize,
    /// Bloch norm of the odd partial sum; at most 1.
    pub bloch_norm: f64,
    /// `|p_n(c)|`, the odd harmonic sum; divergent like `(1/2)·log n`.
    pub value_at_c: f64,
}

/// The Bloch-space counterpart of [`divergence_demo_hardy`] built on the
/// odd logarithmic partial sums.
pub fn divergence_demo_bloch(c: Complex64, n_max: usize) -> Result<Vec<BlochDivergenceRow>> {
    check_unimodular(c)?;
    if n_max == 0 {
        return Err(Error::Domain {
            what: "n_max",
            constraint: ">= 1",
            value: 0.0,
        });
    }
    demo_grid(n_max)
        .into_par_iter()
        .map(|n| {
            let p = artanh_series_partial_sum(c, n);
            let bloch_norm = spaces::norm(&p, &SpaceSpec::Bloch)?.value;
            let value_at_c = p.evaluate(c).norm();
            Ok(BlochDivergenceRow {
                n,
                bloch_norm,
                value_at_c,
            })
        })
        .collect()
}
