//! Closed-form reference curves.

use crate::numerics::Curve;

/// Cycloid through (0, y0) with generating radius `a`:
/// x = a(φ − sin φ), y = y0 − a(1 − cos φ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cycloid {
    pub a: f64,
    pub y0: f64,
}

impl Cycloid {
    pub fn new(a: f64, y0: f64) -> Self {
        Cycloid { a, y0 }
    }

    /// Parameter φ ∈ [0, 2π] with x(φ) = x.
    pub fn phi_at(&self, x: f64) -> f64 {
        let target = (x / self.a).clamp(0.0, 2.0 * std::f64::consts::PI);
        if target == 0.0 {
            return 0.0;
        }
        let mut phi = if target < 1.0 {
            (6.0 * target).cbrt()
        } else {
            target.clamp(1.0, 2.0 * std::f64::consts::PI - 1e-9)
        };
        for _ in 0..60 {
            let f = phi_minus_sin(phi) - target;
            let s = (0.5 * phi).sin();
            let df = 2.0 * s * s;
            if df == 0.0 {
                break;
            }
            let step = f / df;
            let next = (phi - step).clamp(0.5 * phi, 2.0 * std::f64::consts::PI);
            if (next - phi).abs() <= 1e-16 * phi.max(1e-300) {
                phi = next;
                break;
            }
            phi = next;
        }
        phi
    }

    pub fn point(&self, phi: f64) -> (f64, f64) {
        (self.a * phi_minus_sin(phi), self.y0 - self.drop_at_phi(phi))
    }

    /// Height fallen below y0, a(1 − cos φ), without cancellation.
    pub fn drop_at_phi(&self, phi: f64) -> f64 {
        let s = (0.5 * phi).sin();
        2.0 * self.a * s * s
    }
}

// φ − sin φ with a series near zero to avoid cancellation.
fn phi_minus_sin(phi: f64) -> f64 {
    if phi.abs() < 0.1 {
        let p2 = phi * phi;
        phi * p2 / 6.0 * (1.0 - p2 / 20.0 * (1.0 - p2 / 42.0 * (1.0 - p2 / 72.0)))
    } else {
        phi - phi.sin()
    }
}

impl Curve for Cycloid {
    fn value(&self, x: f64) -> f64 {
        self.y0 - self.drop_at_phi(self.phi_at(x))
    }

    fn slope(&self, x: f64) -> f64 {
        let phi = self.phi_at(x);
        -1.0 / (0.5 * phi).tan()
    }

    fn rise(&self, x: f64) -> f64 {
        -self.drop_at_phi(self.phi_at(x))
    }
}

/// Polar semicircle r(θ) = −d·cos θ, which sits on the line θ = π/2 and has
/// diameter d on the ray θ = π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Semicircle {
    pub diameter: f64,
}

impl Curve for Semicircle {
    fn value(&self, theta: f64) -> f64 {
        -self.diameter * theta.cos()
    }

    fn slope(&self, theta: f64) -> f64 {
        self.diameter * theta.sin()
    }
}

/// Straight line through two points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub intercept: f64,
    pub slope: f64,
}

impl Line {
    pub fn through(p: (f64, f64), q: (f64, f64)) -> Self {
        let slope = (q.1 - p.1) / (q.0 - p.0);
        Line {
            intercept: p.1 - slope * p.0,
            slope,
        }
    }
}

impl Curve for Line {
    fn value(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }

    fn slope(&self, _x: f64) -> f64 {
        self.slope
    }

    fn rise(&self, x: f64) -> f64 {
        self.slope * x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cycloid_inversion() {
        let c = Cycloid::new(1.0, 2.0);
        for &phi in &[1e-6, 1e-3, 0.05, 0.3, 1.0, 2.0, 3.0, PI] {
            let (x, y) = c.point(phi);
            assert!((c.phi_at(x) - phi).abs() < 1e-10 * phi.max(1.0), "phi {phi}");
            assert!((c.value(x) - y).abs() < 1e-12);
        }
        let (x, y) = c.point(PI);
        assert!((x - PI).abs() < 1e-15 && y.abs() < 1e-15);
    }

    #[test]
    fn cycloid_slope_matches_difference() {
        let c = Cycloid::new(1.0, 2.0);
        for &x in &[0.1, 1.0, 2.5] {
            let h = 1e-6;
            let fd = (c.value(x + h) - c.value(x - h)) / (2.0 * h);
            assert!((fd - c.slope(x)).abs() < 1e-6);
        }
    }
}
