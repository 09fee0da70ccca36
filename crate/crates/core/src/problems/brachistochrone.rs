//! Fastest frictionless descent from (0, 2) to (π, 0).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::Problem;
use crate::error::{Error, Result};
use crate::numerics::{
    coefficient_bounds, ChebyshevTable, Curve, Endpoint, Grading, Integrator, LagrangeBasis, Polynomial,
    QuadratureSpec,
};
use crate::oracle::{Cost, Infeasibility, ValueCost};
use crate::space::{LevelSet, MixedRadixSpace};

/// How the speed at a point of the path is obtained from its height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyConvention {
    /// v² = 2g(y0 − y): released from rest at the start point.
    #[default]
    FallenHeight,
    /// v² = 2g·y: the height itself is the energy head; the integrand is
    /// singular at the end point instead.
    Literal,
}

/// End points, gravity and numerical settings shared by both
/// parameterizations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BrachPhysics {
    pub y0: f64,
    pub x_end: f64,
    pub y_end: f64,
    pub g: f64,
    pub convention: EnergyConvention,
    pub feasibility_samples: usize,
    /// Paths must satisfy |y| ≤ envelope when set.
    pub envelope: Option<f64>,
    pub quadrature: QuadratureSpec,
}

impl Default for BrachPhysics {
    fn default() -> Self {
        BrachPhysics {
            y0: 2.0,
            x_end: PI,
            y_end: 0.0,
            g: 9.8,
            convention: EnergyConvention::FallenHeight,
            feasibility_samples: 512,
            envelope: Some(2.0),
            quadrature: QuadratureSpec::graded(Grading::lower()),
        }
    }
}

impl BrachPhysics {
    fn validate(&self) -> Result<()> {
        if !(self.g > 0.0) {
            return Err(Error::Config(format!("gravity must be positive, got {}", self.g)));
        }
        if !(self.x_end > 0.0) {
            return Err(Error::Config("the end point must lie right of the start".into()));
        }
        if self.feasibility_samples == 0 {
            return Err(Error::Config("feasibility_samples must be positive".into()));
        }
        Ok(())
    }
}

/// Travel-time functional with its feasibility rules.
#[derive(Debug, Clone)]
pub struct TravelTime {
    physics: BrachPhysics,
    integrator: Integrator,
}

impl TravelTime {
    /// The grading endpoint of the quadrature follows the convention: the
    /// start point for the fallen-height form, the end point otherwise.
    pub fn new(physics: BrachPhysics) -> Result<Self> {
        physics.validate()?;
        let mut spec = physics.quadrature.clone();
        if let Some(g) = spec.grading.as_mut() {
            g.endpoint = match physics.convention {
                EnergyConvention::FallenHeight => Endpoint::Lower,
                EnergyConvention::Literal => Endpoint::Upper,
            };
        }
        let integrator = Integrator::new(spec)?;
        Ok(TravelTime { physics, integrator })
    }

    pub fn physics(&self) -> &BrachPhysics {
        &self.physics
    }

    /// Descent time along `path`, or the first violated constraint.
    pub fn time<C: Curve + ?Sized>(&self, path: &C) -> std::result::Result<f64, Infeasibility> {
        let p = &self.physics;
        let n = p.feasibility_samples;
        for i in 1..=n {
            let x = p.x_end * i as f64 / n as f64;
            let y = path.value(x);
            if !y.is_finite() {
                return Err(Infeasibility::Numerical(format!("path is not finite at x = {x}")));
            }
            if let Some(env) = p.envelope {
                if y.abs() > env + 1e-9 {
                    return Err(Infeasibility::Constraint {
                        constraint: "|y| within envelope",
                        at: x,
                    });
                }
            }
            let head = match p.convention {
                EnergyConvention::FallenHeight => p.y0 - y,
                EnergyConvention::Literal if i < n => y,
                EnergyConvention::Literal => 1.0,
            };
            if head <= 0.0 {
                return Err(Infeasibility::Constraint {
                    constraint: "positive speed",
                    at: x,
                });
            }
        }
        let two_g = 2.0 * p.g;
        let convention = p.convention;
        // Measured from the path's own start so the head stays accurate as
        // x → 0.
        let start_gap = p.y0 - path.value(0.0);
        let integrand = |x: f64| {
            let s = path.slope(x);
            let head = match convention {
                EnergyConvention::FallenHeight => start_gap - path.rise(x),
                EnergyConvention::Literal => path.value(x),
            };
            ((1.0 + s * s) / (two_g * head)).sqrt()
        };
        match self.integrator.integrate(integrand, 0.0, p.x_end) {
            Ok(r) => Ok(r.value),
            Err(Error::NonFiniteIntegrand { x }) => Err(Infeasibility::Constraint {
                constraint: "positive speed",
                at: x,
            }),
            Err(e) => Err(Infeasibility::Numerical(e.to_string())),
        }
    }

    /// Time along the cycloid through both end points (the analytic optimum
    /// when the end point is at φ = π, as for the default configuration).
    pub fn analytic_optimum(&self) -> f64 {
        let p = &self.physics;
        // Under the literal convention the optimum is the mirrored cycloid,
        // with the same time.
        let a = 0.5 * (p.y0 - p.y_end);
        PI * (a / p.g).sqrt()
    }
}

/// Physical-space discretization: node heights at x_k = kπ/ζ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BrachConfig {
    #[serde(flatten)]
    pub physics: BrachPhysics,
    pub zeta: usize,
    /// L: each interior node takes L + 1 equidistant heights in [0, 2].
    pub levels: usize,
}

impl Default for BrachConfig {
    fn default() -> Self {
        BrachConfig {
            physics: BrachPhysics::default(),
            zeta: 5,
            levels: 40,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Brachistochrone {
    time: TravelTime,
    basis: LagrangeBasis,
    space: MixedRadixSpace,
    zeta: usize,
}

impl Brachistochrone {
    pub fn new(cfg: BrachConfig) -> Result<Self> {
        if cfg.zeta < 2 || cfg.levels < 1 {
            return Err(Error::Config(format!(
                "brachistochrone needs zeta >= 2 and L >= 1, got zeta {} and L {}",
                cfg.zeta, cfg.levels
            )));
        }
        let hi = cfg.physics.envelope.unwrap_or(cfg.physics.y0);
        let space = MixedRadixSpace::equidistant(&vec![(0.0, hi, cfg.levels + 1); cfg.zeta - 1])?;
        Self::with_space(cfg.physics, cfg.zeta, space)
    }

    /// Uniform nodes with an explicit space of interior heights.
    pub fn with_space(physics: BrachPhysics, zeta: usize, space: MixedRadixSpace) -> Result<Self> {
        if space.rank() + 1 != zeta {
            return Err(Error::Config(format!(
                "space of rank {} does not match zeta = {zeta}",
                space.rank()
            )));
        }
        let nodes = (0..=zeta).map(|k| physics.x_end * k as f64 / zeta as f64).collect();
        let basis = LagrangeBasis::new(nodes)?;
        Ok(Brachistochrone {
            time: TravelTime::new(physics)?,
            basis,
            space,
            zeta,
        })
    }

    pub fn zeta(&self) -> usize {
        self.zeta
    }

    pub fn travel_time(&self) -> &TravelTime {
        &self.time
    }

    pub fn nodes(&self) -> &[f64] {
        self.basis.nodes()
    }

    /// Interpolating polynomial through the pinned end points and the given
    /// interior heights.
    pub fn path(&self, interior: &[f64]) -> Result<Polynomial> {
        if interior.len() + 1 != self.zeta {
            return Err(Error::LengthMismatch {
                expected: self.zeta - 1,
                actual: interior.len(),
            });
        }
        let p = self.time.physics();
        let mut values = Vec::with_capacity(self.zeta + 1);
        values.push(p.y0);
        values.extend_from_slice(interior);
        values.push(p.y_end);
        self.basis.interpolate(&values)
    }

    pub fn time_of(&self, interior: &[f64]) -> std::result::Result<f64, Infeasibility> {
        let path = self
            .path(interior)
            .map_err(|e| Infeasibility::Numerical(e.to_string()))?;
        self.time.time(&path)
    }
}

impl ValueCost for Brachistochrone {
    fn cost_of(&self, values: &[f64]) -> Cost {
        self.evaluate(values).into()
    }
}

impl Problem for Brachistochrone {
    fn name(&self) -> &str {
        "brachistochrone"
    }

    fn space(&self) -> &MixedRadixSpace {
        &self.space
    }

    fn evaluate(&self, values: &[f64]) -> std::result::Result<f64, Infeasibility> {
        self.time_of(values)
    }

    fn reference_optimum(&self) -> Option<f64> {
        Some(self.time.analytic_optimum())
    }
}

/// The refined grid searched after the random phase in the hybrid example:
/// y(x1) ∈ {0.80..0.95 step 0.05}, y(x2) ∈ {0.45..0.60 step 0.05},
/// y(x3) ∈ {0.20..0.39 step 0.01}, y(x4) ∈ {0.00..0.19 step 0.01}.
pub fn example_f_space() -> MixedRadixSpace {
    let dims = [(0.80, 0.95, 4), (0.45, 0.60, 4), (0.20, 0.39, 20), (0.00, 0.19, 20)];
    MixedRadixSpace::new(
        dims.iter()
            .map(|&(lo, hi, n)| {
                let step = (hi - lo) / (n - 1) as f64;
                LevelSet::new((0..n).map(|k| round_to(lo + step * k as f64, 1e-12)).collect())
                    .expect("static level set")
            })
            .collect(),
    )
    .expect("static space")
}

fn round_to(x: f64, q: f64) -> f64 {
    (x / q).round() * q
}

/// Coefficient-space discretization: y(x) = Σ a_n xⁿ with the scaled
/// coefficients b_2..b_{ζ−1} of ½·y(L/2·(s + 1)) on Chebyshev bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BrachCoeffConfig {
    #[serde(flatten)]
    pub physics: BrachPhysics,
    pub zeta: usize,
    /// Level count for each of b_2..b_{ζ−1}.
    pub levels: Vec<usize>,
}

impl Default for BrachCoeffConfig {
    fn default() -> Self {
        BrachCoeffConfig::cubic()
    }
}

impl BrachCoeffConfig {
    /// ζ = 4 on a 40 × 40 grid (1600 states).
    pub fn cubic() -> Self {
        BrachCoeffConfig {
            physics: BrachPhysics::default(),
            zeta: 4,
            levels: vec![40, 40],
        }
    }

    /// ζ = 6 with 81 · 81 · 81 · 161 = 85 562 001 states.
    pub fn quintic() -> Self {
        BrachCoeffConfig {
            physics: BrachPhysics::default(),
            zeta: 6,
            levels: vec![81, 81, 81, 161],
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoefficientBrachistochrone {
    time: TravelTime,
    space: MixedRadixSpace,
    bounds: Vec<u64>,
    zeta: usize,
    scale: f64,
}

impl CoefficientBrachistochrone {
    pub fn new(cfg: BrachCoeffConfig) -> Result<Self> {
        if cfg.zeta < 3 {
            return Err(Error::Config(format!("coefficient space needs zeta >= 3, got {}", cfg.zeta)));
        }
        if cfg.levels.len() + 2 != cfg.zeta {
            return Err(Error::LengthMismatch {
                expected: cfg.zeta - 2,
                actual: cfg.levels.len(),
            });
        }
        let table = ChebyshevTable::new(cfg.zeta - 1);
        let bounds = coefficient_bounds(&table, cfg.zeta)?;
        let dims = cfg.levels.iter().enumerate().map(|(i, &n)| {
            let b = bounds[i + 1] as f64;
            (-b, b, n)
        });
        let space = MixedRadixSpace::equidistant(&dims.collect::<Vec<_>>())?;
        let scale = cfg.physics.envelope.unwrap_or(cfg.physics.y0);
        Ok(CoefficientBrachistochrone {
            time: TravelTime::new(cfg.physics)?,
            space,
            bounds,
            zeta: cfg.zeta,
            scale,
        })
    }

    /// Bounds B_1..B_{ζ−1}; the space uses B_2 onwards.
    pub fn bounds(&self) -> &[u64] {
        &self.bounds
    }

    pub fn travel_time(&self) -> &TravelTime {
        &self.time
    }

    /// Monomial path for b_2..b_{ζ−1}. a_0 and a_1 come from the end points.
    pub fn path(&self, b: &[f64]) -> Result<Polynomial> {
        let n = self.zeta;
        if b.len() + 2 != n {
            return Err(Error::LengthMismatch {
                expected: n - 2,
                actual: b.len(),
            });
        }
        let p = self.time.physics();
        let h = 2.0 / p.x_end;
        let mut a = vec![0.0; n];
        for k in 2..n {
            let mut acc = 0.0;
            for m in k..n {
                let sign = if (m - k) % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * binomial(m, k) * b[m - 2];
            }
            a[k] = self.scale * h.powi(k as i32) * acc;
        }
        a[0] = p.y0;
        let tail: f64 = (2..n).map(|k| a[k] * p.x_end.powi(k as i32)).sum();
        a[1] = (p.y_end - a[0] - tail) / p.x_end;
        Ok(Polynomial::new(a))
    }

    pub fn time_of(&self, b: &[f64]) -> std::result::Result<f64, Infeasibility> {
        let path = self.path(b).map_err(|e| Infeasibility::Numerical(e.to_string()))?;
        self.time.time(&path)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl ValueCost for CoefficientBrachistochrone {
    fn cost_of(&self, values: &[f64]) -> Cost {
        self.evaluate(values).into()
    }
}

impl Problem for CoefficientBrachistochrone {
    fn name(&self) -> &str {
        "brachistochrone-coefficients"
    }

    fn space(&self) -> &MixedRadixSpace {
        &self.space
    }

    fn evaluate(&self, values: &[f64]) -> std::result::Result<f64, Infeasibility> {
        self.time_of(values)
    }

    fn reference_optimum(&self) -> Option<f64> {
        Some(self.time.analytic_optimum())
    }
}

/// Root-mean-square difference over 1000 uniform samples of [a, b].
pub fn path_rmse<A: Curve + ?Sized, B: Curve + ?Sized>(candidate: &A, reference: &B, domain: (f64, f64)) -> f64 {
    const SAMPLES: usize = 1000;
    let (a, b) = domain;
    let sum: f64 = (0..SAMPLES)
        .map(|i| {
            let x = a + (b - a) * i as f64 / (SAMPLES - 1) as f64;
            let d = candidate.value(x) - reference.value(x);
            d * d
        })
        .sum();
    (sum / SAMPLES as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::curves::{Cycloid, Line};

    fn example_a() -> Polynomial {
        Polynomial::new(vec![
            2.0,
            -2.72552840044871,
            2.37999238659866,
            -1.34381393471665,
            0.387647767429487,
            -0.0425490057689243,
        ])
    }

    #[test]
    fn cycloid_time() {
        let t = TravelTime::new(BrachPhysics::default()).unwrap();
        let v = t.time(&Cycloid::new(1.0, 2.0)).unwrap();
        assert!((v - 1.0035449615773016).abs() < 1e-6, "{v}");
        assert_eq!(t.analytic_optimum(), PI / 9.8f64.sqrt());
    }

    #[test]
    fn straight_line_time() {
        // Closed form for a chord released from rest:
        // T = sqrt(2(Δx² + Δy²)/(g Δy)).
        let t = TravelTime::new(BrachPhysics::default()).unwrap();
        let line = Line::through((0.0, 2.0), (PI, 0.0));
        let expect = (2.0 * (PI * PI + 4.0) / (9.8 * 2.0)).sqrt();
        assert!((t.time(&line).unwrap() - expect).abs() < 1e-9);
    }

    #[test]
    fn node_grid_shapes() {
        let small = Brachistochrone::new(BrachConfig {
            zeta: 2,
            levels: 1,
            ..BrachConfig::default()
        })
        .unwrap();
        assert_eq!(small.space().cardinality(), 2);
        let b = Brachistochrone::new(BrachConfig {
            zeta: 3,
            levels: 4,
            ..BrachConfig::default()
        })
        .unwrap();
        assert_eq!(b.space().cardinality(), 25);
        assert_eq!(b.space().dims()[0].values(), &[0.0, 0.5, 1.0, 1.5, 2.0]);
        let a = Brachistochrone::new(BrachConfig::default()).unwrap();
        assert_eq!(a.space().cardinality(), 2_825_761);
    }

    #[test]
    fn table_path_interpolates() {
        let a = Brachistochrone::new(BrachConfig::default()).unwrap();
        let p = a.path(&[0.95, 0.50, 0.20, 0.05]).unwrap();
        for (c, e) in p.coeffs().iter().zip(example_a().coeffs()) {
            assert!((c - e).abs() < 1e-9);
        }
    }

    #[test]
    fn overshooting_path_is_infeasible() {
        let a = Brachistochrone::new(BrachConfig::default()).unwrap();
        assert!(a.time_of(&[2.0, 2.0, 2.0, 2.0]).is_err());
        assert!(!a.cost_of(&[2.0, 0.0, 2.0, 0.0]).is_feasible());
    }

    #[test]
    fn zero_coefficients_give_the_chord() {
        let c = CoefficientBrachistochrone::new(BrachCoeffConfig::quintic()).unwrap();
        let p = c.path(&[0.0; 4]).unwrap();
        assert!((p.coeffs()[0] - 2.0).abs() < 1e-15);
        assert!((p.coeffs()[1] + 2.0 / PI).abs() < 1e-15);
        assert!(p.coeffs()[2..].iter().all(|&a| a == 0.0));
        assert_eq!(c.space().cardinality(), 85_562_001);
        assert_eq!(c.bounds(), &[5, 8, 20, 8, 16]);
    }

    #[test]
    fn coefficient_map_matches_closed_form() {
        // a5 = 64 b5/π⁵, a4 = 32(b4 − 5b5)/π⁴, a3 = 16(b3 − 4b4 + 10b5)/π³,
        // a2 = 8(b2 − 3b3 + 6b4 − 10b5)/π².
        let c = CoefficientBrachistochrone::new(BrachCoeffConfig::quintic()).unwrap();
        let (b2, b3, b4, b5) = (0.7, -1.3, 2.1, 0.4);
        let p = c.path(&[b2, b3, b4, b5]).unwrap();
        let a = p.coeffs();
        assert!((a[5] - 64.0 * b5 / PI.powi(5)).abs() < 1e-12);
        assert!((a[4] - 32.0 * (b4 - 5.0 * b5) / PI.powi(4)).abs() < 1e-12);
        assert!((a[3] - 16.0 * (b3 - 4.0 * b4 + 10.0 * b5) / PI.powi(3)).abs() < 1e-12);
        assert!((a[2] - 8.0 * (b2 - 3.0 * b3 + 6.0 * b4 - 10.0 * b5) / PI.powi(2)).abs() < 1e-12);
        assert!(p.eval(PI).abs() < 1e-12);
        // The substitution reproduces the scaled polynomial: ½y(π/2(s+1)).
        for &s in &[-1.0, -0.3, 0.5, 1.0] {
            let lhs = 0.5 * p.eval(PI / 2.0 * (s + 1.0));
            let b0_b1 = lhs - (b2 * s * s + b3 * s.powi(3) + b4 * s.powi(4) + b5 * s.powi(5));
            let at = |s: f64| 0.5 * p.eval(PI / 2.0 * (s + 1.0)) - (b2 * s * s + b3 * s.powi(3) + b4 * s.powi(4) + b5 * s.powi(5));
            // The remainder is affine in s.
            let slope = at(1.0) - at(0.0);
            assert!((b0_b1 - (at(0.0) + slope * s)).abs() < 1e-10);
        }
    }

    #[test]
    fn example_f_grid() {
        let s = example_f_space();
        assert_eq!(s.cardinality(), 6400);
        assert_eq!(s.dims()[2].values()[19], 0.39);
        assert_eq!(s.dims()[3].values()[0], 0.0);
    }

    #[test]
    fn rmse_of_offset() {
        let a = Line { intercept: 1.0, slope: 0.5 };
        let b = Line { intercept: 1.25, slope: 0.5 };
        assert!((path_rmse(&a, &b, (0.0, PI)) - 0.25).abs() < 1e-12);
        assert_eq!(path_rmse(&a, &a, (0.0, PI)), 0.0);
    }
}
