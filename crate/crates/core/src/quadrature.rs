//! Gauss–Legendre rules and the radial rule for the weighted disc measures
//! `(1 − r²)^w · 2r dr` that the Bergman and Besov norms integrate against.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

type RuleCache = Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// cached per `n`.
pub fn gauss_legendre(n: usize) -> Arc<Vec<(f64, f64)>> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    let mut cache = CACHE
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .expect("quadrature cache lock");
    cache
        .entry(n)
        .or_insert_with(|| Arc::new(compute_gauss_legendre(n)))
        .clone()
}

/// Newton iteration on the Legendre polynomial, seeded with the Chebyshev
/// angle estimate. Produces nodes accurate to a few ulps for n up to a few
/// thousand.
fn compute_gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1, "quadrature rule needs at least one node");
    let mut rule = Vec::with_capacity(n);
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (p2, d2) = legendre_with_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((-x, w));
    }
    // Mirror onto the positive half; odd n shares the center node.
    for i in (0..n - m).rev() {
        let (x, w) = rule[i];
        rule.push((-x, w));
    }
    rule
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped to `[0, 1]`.
pub fn gauss_legendre_01(n: usize) -> Vec<(f64, f64)> {
    gauss_legendre(n)
        .iter()
        .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect()
}

/// Radial rule for `∫₀¹ h(r) (1 − r²)^w · 2r dr` with `w > -1`.
///
/// Built by substituting `r = sin θ` and applying Gauss–Legendre on
/// `[0, π/2]`: the weight becomes `cos^{2w+1} θ`, which is analytic for the
/// half-integer exponents the monomial oracles produce, so the rule reaches
/// the closed forms at full double precision. Nodes stay strictly inside
/// `(0, 1)` and all weights are positive for any `w > -1`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    radii: Vec<f64>,
    weights: Vec<f64>,
    weight_exponent: f64,
    angular_samples: usize,
}

impl QuadratureRule {
    pub fn radial(weight_exponent: f64, radial_nodes: usize, angular_samples: usize) -> Result<Self> {
        if !(weight_exponent.is_finite() && weight_exponent > -1.0) {
            return Err(Error::Domain {
                what: "radial weight exponent",
                constraint: "> -1",
                value: weight_exponent,
            });
        }
        if radial_nodes == 0 {
            return Err(Error::Domain {
                what: "radial node count",
                constraint: ">= 1",
                value: 0.0,
            });
        }
        let base = gauss_legendre(radial_nodes);
        let quarter_pi = std::f64::consts::FRAC_PI_4;
        let mut radii = Vec::with_capacity(radial_nodes);
        let mut weights = Vec::with_capacity(radial_nodes);
        for &(x, w) in base.iter() {
            let theta = (x + 1.0) * quarter_pi;
            let (sin_t, cos_t) = theta.sin_cos();
            radii.push(sin_t);
            weights.push(w * quarter_pi * 2.0 * sin_t * cos_t.powf(2.0 * weight_exponent + 1.0));
        }
        Ok(Self {
            radii,
            weights,
            weight_exponent,
            angular_samples,
        })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight_exponent(&self) -> f64 {
        self.weight_exponent
    }

    pub fn angular_samples(&self) -> usize {
        self.angular_samples
    }

    /// `Σ_i W_i h(r_i)`, approximating `∫₀¹ h(r)(1−r²)^w 2r dr`.
    pub fn integrate_radial(&self, mut h: impl FnMut(f64) -> f64) -> f64 {
        self.radii
            .iter()
            .zip(&self.weights)
            .map(|(&r, &w)| w * h(r))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::beta;

    #[test]
    fn legendre_rule_integrates_polynomials_exactly() {
        let rule = gauss_legendre(8);
        // Exact through degree 15.
        for k in [0usize, 2, 6, 14] {
            let got: f64 = rule.iter().map(|&(x, w)| w * x.powi(k as i32)).sum();
            let want = 2.0 / (k as f64 + 1.0);
            assert!((got - want).abs() < 1e-14, "x^{k}: {got} vs {want}");
        }
        for k in [1usize, 3, 9] {
            let got: f64 = rule.iter().map(|&(x, w)| w * x.powi(k as i32)).sum();
            assert!(got.abs() < 1e-15);
        }
    }

    #[test]
    fn unit_interval_rule_reproduces_dr() {
        let total: f64 = gauss_legendre_01(16).iter().map(|&(_, w)| w).sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn weights_positive_nodes_interior() {
        for &w_exp in &[-0.9, -0.5, 0.0, 1.0, 2.5] {
            let rule = QuadratureRule::radial(w_exp, 64, 256).unwrap();
            assert!(rule.radii().iter().all(|&r| r > 0.0 && r < 1.0));
            assert!(rule.weights().iter().all(|&w| w > 0.0));
        }
        assert!(QuadratureRule::radial(-1.0, 8, 8).is_err());
        assert!(QuadratureRule::radial(0.0, 0, 8).is_err());
    }

    #[test]
    fn radial_rule_mass_matches_beta() {
        // ∫₀¹ (1−r²)^w 2r dr = B(1, w+1) = 1/(w+1); with monomials r^{2k}
        // the mass is B(k+1, w+1).
        for &w_exp in &[-0.5, 0.0, 1.0, 2.0] {
            let rule = QuadratureRule::radial(w_exp, 128, 256).unwrap();
            let mass = rule.integrate_radial(|_| 1.0);
            assert!((mass - 1.0 / (w_exp + 1.0)).abs() < 1e-13);
            for k in [1usize, 3, 10] {
                let got = rule.integrate_radial(|r| r.powi(2 * k as i32));
                let want = beta(k as f64 + 1.0, w_exp + 1.0).unwrap();
                assert!(
                    (got - want).abs() < 1e-12 * want.max(1e-30),
                    "w={w_exp} k={k}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn radial_rule_handles_half_integer_means() {
        // Angular means of |z^n|^p are r^{np}; odd n·p exercises the
        // half-integer exponents the sine substitution is there for.
        let rule = QuadratureRule::radial(-0.5, 256, 256).unwrap();
        let got = rule.integrate_radial(|r| r.powf(3.0));
        let want = beta(2.5, 0.5).unwrap();
        assert!((got - want).abs() < 1e-13 * want);
    }
}
