use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule on [lo, hi].
    pub fn apply<F: Fn(f64) -> f64>(&self, f: &F, lo: f64, hi: f64) -> Result<f64> {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut sum = 0.0;
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            let x = mid + half * t;
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::NonFiniteIntegrand { x });
            }
            sum += w * v;
        }
        Ok(sum * half)
    }
}

// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    Lower,
    Upper,
}

/// Geometric subdivision of the panel touching a singular endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grading {
    pub endpoint: Endpoint,
    /// Number of geometric levels at the coarsest refinement.
    pub depth: u32,
    /// Ratio between consecutive graded panel widths, in (0, 1).
    pub ratio: f64,
}

impl Grading {
    pub fn lower() -> Self {
        Grading {
            endpoint: Endpoint::Lower,
            depth: 12,
            ratio: 0.125,
        }
    }

    pub fn upper() -> Self {
        Grading {
            endpoint: Endpoint::Upper,
            ..Grading::lower()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub order: usize,
    pub base_panels: usize,
    pub grading: Option<Grading>,
    pub rel_tol: f64,
    pub max_refinements: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            order: 16,
            base_panels: 4,
            grading: None,
            rel_tol: 1e-9,
            max_refinements: 8,
        }
    }
}

impl QuadratureSpec {
    pub fn graded(grading: Grading) -> Self {
        QuadratureSpec {
            grading: Some(grading),
            ..QuadratureSpec::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.order < 2 {
            return Err(Error::Config(format!("quadrature order {} < 2", self.order)));
        }
        if self.base_panels == 0 {
            return Err(Error::Config("quadrature needs at least one panel".into()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::Config(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if let Some(g) = self.grading {
            if !(g.ratio > 0.0 && g.ratio < 1.0) {
                return Err(Error::Config(format!("grading ratio {} outside (0, 1)", g.ratio)));
            }
        }
        Ok(())
    }
}

/// A converged quadrature estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Relative change between the last two refinements.
    pub achieved: f64,
    pub refinements: u32,
}

/// Composite Gauss–Legendre integrator with cached nodes.
#[derive(Debug, Clone)]
pub struct Integrator {
    spec: QuadratureSpec,
    rule: GaussLegendre,
}

impl Integrator {
    pub fn new(spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        let rule = GaussLegendre::new(spec.order);
        Ok(Integrator { spec, rule })
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    /// Estimate at one refinement level: `base_panels * 2^level` panels, the
    /// graded one split into `depth + level * depth / 2` geometric pieces.
    pub fn estimate<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, level: u32) -> Result<f64> {
        let panels = self.spec.base_panels << level;
        let h = (b - a) / panels as f64;
        let mut total = 0.0;
        let (graded, first) = match self.spec.grading {
            Some(g) => {
                let depth = g.depth + level * (g.depth / 2).max(1);
                let (lo, hi) = match g.endpoint {
                    Endpoint::Lower => (a, a + h),
                    Endpoint::Upper => (b - h, b),
                };
                total += self.graded_panel(f, lo, hi, g.endpoint, depth, g.ratio)?;
                (true, if g.endpoint == Endpoint::Lower { 1 } else { 0 })
            }
            None => (false, 0),
        };
        let count = if graded { panels - 1 } else { panels };
        for k in first..first + count {
            let lo = a + h * k as f64;
            let hi = if k + 1 == panels { b } else { a + h * (k + 1) as f64 };
            total += self.rule.apply(f, lo, hi)?;
        }
        Ok(total)
    }

    fn graded_panel<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        lo: f64,
        hi: f64,
        endpoint: Endpoint,
        depth: u32,
        ratio: f64,
    ) -> Result<f64> {
        let width = hi - lo;
        let anchor = match endpoint {
            Endpoint::Lower => lo,
            Endpoint::Upper => hi,
        };
        // Panels narrower than this cannot be resolved next to a nonzero
        // endpoint in double precision.
        let floor = anchor.abs() * 1e-11;
        // Offsets from the anchor; the innermost cut never goes below the
        // floor, so deeper refinements leave the last sliver unchanged.
        let piece = |near: f64, far: f64| match endpoint {
            Endpoint::Lower => self.rule.apply(f, lo + near, lo + far),
            Endpoint::Upper => self.rule.apply(f, hi - far, hi - near),
        };
        let mut total = 0.0;
        let mut outer = width;
        for _ in 0..depth {
            let inner = (outer * ratio).max(floor);
            if inner >= outer {
                break;
            }
            total += piece(inner, outer)?;
            outer = inner;
        }
        total += piece(0.0, outer)?;
        Ok(total)
    }

    /// Refines until successive estimates agree to `rel_tol` (or 1e-14
    /// absolute).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<Integral> {
        if !(a < b) {
            return Err(Error::Domain(format!("integration bounds [{a}, {b}] are not increasing")));
        }
        let mut prev = self.estimate(&f, a, b, 0)?;
        let mut achieved = f64::INFINITY;
        for level in 1..=self.spec.max_refinements {
            let next = self.estimate(&f, a, b, level)?;
            let diff = (next - prev).abs();
            achieved = if next != 0.0 { diff / next.abs() } else { diff };
            if diff <= self.spec.rel_tol * next.abs() || diff <= 1e-14 {
                return Ok(Integral {
                    value: next,
                    achieved,
                    refinements: level,
                });
            }
            prev = next;
        }
        Err(Error::ToleranceNotMet {
            estimate: prev,
            achieved,
            refinements: self.spec.max_refinements,
        })
    }
}

/// One-shot integration; builds the rule on each call.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    Integrator::new(spec.clone())?.integrate(f, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [2, 3, 5, 16, 20] {
            let gl = GaussLegendre::new(n);
            let s: f64 = gl.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "order {n}: {s}");
        }
    }

    #[test]
    fn constant_and_quadratic() {
        let spec = QuadratureSpec::default();
        let one = integrate(|_| 1.0, 0.0, 1.0, &spec).unwrap();
        assert!((one.value - 1.0).abs() < 1e-15);
        let sq = integrate(|x| x * x, 0.0, 1.0, &spec).unwrap();
        assert!((sq.value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn exact_on_one_panel_up_to_degree_31() {
        let gl = GaussLegendre::new(16);
        for deg in [0, 7, 15, 31] {
            let v = gl.apply(&|x: f64| x.powi(deg), 0.0, 1.0).unwrap();
            assert!((v - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "degree {deg}");
        }
    }

    #[test]
    fn inverse_square_root_with_grading() {
        let spec = QuadratureSpec::graded(Grading::lower());
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &spec).unwrap();
        assert!((r.value - 2.0).abs() < 1e-8, "{}", r.value);
        // Away from zero the grading depth is limited by the spacing of
        // doubles next to the endpoint.
        let spec = QuadratureSpec::graded(Grading::upper());
        let r = integrate(|x: f64| 1.0 / (1.0 - x).sqrt(), 0.0, 1.0, &spec).unwrap();
        assert!((r.value - 2.0).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn reports_non_convergence() {
        let spec = QuadratureSpec {
            max_refinements: 1,
            ..QuadratureSpec::default()
        };
        let err = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &spec).unwrap_err();
        assert!(matches!(err, Error::ToleranceNotMet { .. }));
    }

    #[test]
    fn rejects_non_finite_values() {
        let err = integrate(|x: f64| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, &QuadratureSpec::default())
            .unwrap_err();
        assert!(matches!(err, Error::NonFiniteIntegrand { .. }));
    }
}
