//! Largest area enclosed by a curve of fixed length against the ray θ = π.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::Problem;
use crate::error::{Error, Result};
use crate::numerics::{Curve, Integrator, LagrangeBasis, Polynomial, QuadratureSpec};
use crate::oracle::{Cost, Infeasibility, ValueCost};
use crate::space::MixedRadixSpace;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IsoConfig {
    pub theta_start: f64,
    pub theta_end: f64,
    /// Required curve length.
    pub length: f64,
    /// Node radii take values b·i/L for i = 0..=L.
    pub bound: f64,
    pub levels: usize,
    /// Interpolation nodes; the first one carries the pinned radius 0.
    pub nodes: Vec<f64>,
    pub feasibility_samples: usize,
    pub quadrature: QuadratureSpec,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig::with_node_count(4)
    }
}

impl IsoConfig {
    /// `count` nodes π/2 + kπ/(2·count), k = 0..count, the first pinned.
    pub fn with_node_count(count: usize) -> Self {
        IsoConfig {
            theta_start: FRAC_PI_2,
            theta_end: PI,
            length: PI / 3.0,
            bound: 1.0,
            levels: 100,
            nodes: (0..count)
                .map(|k| FRAC_PI_2 + k as f64 * PI / (2 * count) as f64)
                .collect(),
            feasibility_samples: 512,
            quadrature: QuadratureSpec::default(),
        }
    }

    /// Three free nodes at 5π/8, 3π/4, 7π/8.
    pub fn example_g() -> Self {
        IsoConfig::with_node_count(4)
    }

    /// Five free nodes at 7π/12 .. 11π/12.
    pub fn example_h() -> Self {
        IsoConfig::with_node_count(6)
    }

    /// Seven free nodes at 9π/16 .. 15π/16.
    pub fn example_i() -> Self {
        IsoConfig::with_node_count(8)
    }
}

/// Area and normalization of a curve scaled to the required length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedArea {
    pub area: f64,
    /// Scale factor c applied to the raw curve.
    pub scale: f64,
    /// Length of the raw curve.
    pub raw_length: f64,
}

#[derive(Debug, Clone)]
pub struct Isoperimetric {
    cfg: IsoConfig,
    basis: LagrangeBasis,
    space: MixedRadixSpace,
    integrator: Integrator,
}

impl Isoperimetric {
    pub fn new(cfg: IsoConfig) -> Result<Self> {
        if cfg.nodes.len() < 2 {
            return Err(Error::Config("isoperimetric grid needs at least one free node".into()));
        }
        if !cfg.nodes.windows(2).all(|w| w[0] < w[1])
            || cfg.nodes[0] < cfg.theta_start
            || *cfg.nodes.last().unwrap() > cfg.theta_end
        {
            return Err(Error::Config(
                "nodes must increase strictly inside [theta_start, theta_end]".into(),
            ));
        }
        if cfg.levels == 0 || !(cfg.bound > 0.0) || !(cfg.length > 0.0) || cfg.feasibility_samples == 0 {
            return Err(Error::Config("levels, bound, length and samples must be positive".into()));
        }
        let basis = LagrangeBasis::new(cfg.nodes.clone())?;
        let space = MixedRadixSpace::equidistant(&vec![(0.0, cfg.bound, cfg.levels + 1); cfg.nodes.len() - 1])?;
        let integrator = Integrator::new(cfg.quadrature.clone())?;
        Ok(Isoperimetric {
            cfg,
            basis,
            space,
            integrator,
        })
    }

    pub fn config(&self) -> &IsoConfig {
        &self.cfg
    }

    /// Raw interpolant through r = 0 at the first node and the free radii.
    pub fn curve(&self, radii: &[f64]) -> Result<Polynomial> {
        let mut values = Vec::with_capacity(radii.len() + 1);
        values.push(0.0);
        values.extend_from_slice(radii);
        self.basis.interpolate(&values)
    }

    fn raw_length<C: Curve + ?Sized>(&self, f: &C) -> std::result::Result<f64, Infeasibility> {
        let len = self
            .integrator
            .integrate(
                |t| {
                    let r = f.value(t);
                    let d = f.slope(t);
                    (r * r + d * d).sqrt()
                },
                self.cfg.theta_start,
                self.cfg.theta_end,
            )
            .map_err(|e| Infeasibility::Numerical(e.to_string()))?
            .value;
        if !(len > 0.0) {
            return Err(Infeasibility::Degenerate("curve has zero length"));
        }
        Ok(len)
    }

    fn check_sign<C: Curve + ?Sized>(&self, f: &C) -> std::result::Result<(), Infeasibility> {
        let (a, b) = (self.cfg.theta_start, self.cfg.theta_end);
        let n = self.cfg.feasibility_samples;
        for i in 1..=n {
            let t = a + (b - a) * i as f64 / n as f64;
            let r = f.value(t);
            if !(r >= 0.0) {
                return Err(Infeasibility::Constraint {
                    constraint: "non-negative radius",
                    at: t,
                });
            }
        }
        Ok(())
    }

    /// Normalized area of a polynomial curve; the area integral is exact.
    pub fn area_of_polynomial(&self, f: &Polynomial) -> std::result::Result<NormalizedArea, Infeasibility> {
        let raw_length = self.raw_length(f)?;
        let scale = self.cfg.length / raw_length;
        self.check_sign(f)?;
        let raw_area = 0.5 * f.mul(f).integral(self.cfg.theta_start, self.cfg.theta_end);
        Ok(NormalizedArea {
            area: scale * scale * raw_area,
            scale,
            raw_length,
        })
    }

    /// Normalized area of any curve, both integrals by quadrature.
    pub fn area_of<C: Curve + ?Sized>(&self, f: &C) -> std::result::Result<NormalizedArea, Infeasibility> {
        let raw_length = self.raw_length(f)?;
        let scale = self.cfg.length / raw_length;
        self.check_sign(f)?;
        let raw_area = self
            .integrator
            .integrate(
                |t| {
                    let r = f.value(t);
                    0.5 * r * r
                },
                self.cfg.theta_start,
                self.cfg.theta_end,
            )
            .map_err(|e| Infeasibility::Numerical(e.to_string()))?
            .value;
        Ok(NormalizedArea {
            area: scale * scale * raw_area,
            scale,
            raw_length,
        })
    }

    pub fn area_of_radii(&self, radii: &[f64]) -> std::result::Result<NormalizedArea, Infeasibility> {
        if radii.iter().all(|&r| r == 0.0) {
            return Err(Infeasibility::Degenerate("all node radii are zero"));
        }
        let f = self.curve(radii).map_err(|e| Infeasibility::Numerical(e.to_string()))?;
        self.area_of_polynomial(&f)
    }

    /// Semicircle area for the configured length, ℓ²/(2π).
    pub fn analytic_optimum(&self) -> f64 {
        self.cfg.length * self.cfg.length / (2.0 * PI)
    }
}

impl ValueCost for Isoperimetric {
    fn cost_of(&self, values: &[f64]) -> Cost {
        self.evaluate(values).into()
    }
}

impl Problem for Isoperimetric {
    fn name(&self) -> &str {
        "isoperimetric"
    }

    fn space(&self) -> &MixedRadixSpace {
        &self.space
    }

    fn evaluate(&self, values: &[f64]) -> std::result::Result<f64, Infeasibility> {
        self.area_of_radii(values).map(|a| -a.area)
    }

    fn objective(&self, cost: f64) -> f64 {
        -cost
    }

    fn reference_optimum(&self) -> Option<f64> {
        Some(self.analytic_optimum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::curves::Semicircle;

    #[test]
    fn semicircle_area() {
        let iso = Isoperimetric::new(IsoConfig::example_g()).unwrap();
        let a = iso.area_of(&Semicircle { diameter: 2.0 / 3.0 }).unwrap();
        assert!((a.area - PI / 18.0).abs() < 1e-9);
        assert!((a.raw_length - PI / 3.0).abs() < 1e-12);
        // Scaling the raw curve leaves the normalized area unchanged.
        let b = iso.area_of(&Semicircle { diameter: 5.0 }).unwrap();
        assert!((b.area - PI / 18.0).abs() < 1e-9);
        assert!((b.scale * 5.0 - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn normalized_length_is_fixed() {
        let iso = Isoperimetric::new(IsoConfig::example_g()).unwrap();
        let f = iso.curve(&[0.26, 0.47, 0.62]).unwrap();
        let a = iso.area_of_polynomial(&f).unwrap();
        let scaled = f.scale(a.scale);
        let len = iso.raw_length(&scaled).unwrap();
        assert!((len - PI / 3.0).abs() < 1e-9);
        assert!(a.area <= PI / 18.0 + 1e-9);
    }

    #[test]
    fn grid_sizes_and_nodes() {
        let g = Isoperimetric::new(IsoConfig::example_g()).unwrap();
        assert_eq!(g.space().cardinality(), 101u64.pow(3));
        let h = IsoConfig::example_h();
        assert!((h.nodes[1] - 7.0 * PI / 12.0).abs() < 1e-15);
        let i = IsoConfig::example_i();
        assert!((i.nodes[7] - 15.0 * PI / 16.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_and_negative_curves() {
        let g = Isoperimetric::new(IsoConfig::example_g()).unwrap();
        assert!(matches!(g.area_of_radii(&[0.0, 0.0, 0.0]), Err(Infeasibility::Degenerate(_))));
        assert!(!g.cost_of(&[1.0, 0.0, 1.0]).is_feasible());
    }
}
