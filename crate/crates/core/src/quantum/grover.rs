use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rotation geometry of Grover's operator for M marked states out of N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroverModel {
    pub n: u64,
    pub m: u64,
    /// Rotation per iteration; sin(θ/2) = √(M/N).
    pub theta: f64,
}

impl GroverModel {
    pub fn new(n: u64, m: u64) -> Result<Self> {
        if n == 0 || m > n {
            return Err(Error::Domain(format!("marked count {m} outside 0..={n}")));
        }
        let theta = 2.0 * (m as f64 / n as f64).sqrt().asin();
        Ok(GroverModel { n, m, theta })
    }

    /// Probability of measuring a marked state after r iterations.
    pub fn success_probability(&self, r: u64) -> f64 {
        if self.m == self.n {
            return 1.0;
        }
        let s = ((2 * r + 1) as f64 * 0.5 * self.theta).sin();
        s * s
    }

    /// Amplitudes (each marked, each unmarked) after r iterations.
    pub fn amplitudes(&self, r: u64) -> (f64, f64) {
        let angle = (2 * r + 1) as f64 * 0.5 * self.theta;
        let marked = if self.m == 0 { 0.0 } else { angle.sin() / (self.m as f64).sqrt() };
        let unmarked = if self.m == self.n {
            0.0
        } else {
            angle.cos() / ((self.n - self.m) as f64).sqrt()
        };
        (marked, unmarked)
    }
}

pub fn grover_success_probability(n: u64, m: u64, r: u64) -> Result<f64> {
    Ok(GroverModel::new(n, m)?.success_probability(r))
}

/// Iteration count that maximizes the success probability over
/// 0..=⌊2√N⌋ (extended to cover the first peak). The first peak sits at
/// (π/θ − 1)/2; when M/N is large a later peak can come closer to one.
/// Ties go to the smaller count.
pub fn optimal_rotations(n: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::Domain("no marked states".into()));
    }
    let model = GroverModel::new(n, m)?;
    if m == n {
        return Ok(0);
    }
    let first_peak = ((PI / model.theta - 1.0) / 2.0).round().max(0.0) as u64;
    let limit = ((2.0 * (n as f64).sqrt()).floor() as u64).max(first_peak + 1);
    let mut best = 0;
    let mut p_best = model.success_probability(0);
    for r in 1..=limit {
        let p = model.success_probability(r);
        if p > p_best {
            best = r;
            p_best = p;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry() {
        for n in [1u64, 2, 7, 64, 1000] {
            for m in 0..=n.min(70) {
                let g = GroverModel::new(n, m).unwrap();
                assert!(((g.theta / 2.0).sin().powi(2) * n as f64 - m as f64).abs() < 1e-12);
                assert!((g.success_probability(0) - m as f64 / n as f64).abs() < 1e-15);
            }
        }
        assert_eq!(grover_success_probability(4, 1, 1).unwrap(), 1.0);
        assert_eq!(grover_success_probability(9, 9, 5).unwrap(), 1.0);
        assert!(GroverModel::new(4, 5).is_err());
    }

    #[test]
    fn optimal_matches_brute_force() {
        for n in 1..=64u64 {
            for m in 1..=n {
                let model = GroverModel::new(n, m).unwrap();
                let r_max = (2.0 * (n as f64).sqrt()).floor() as u64;
                let p_best = (0..=r_max)
                    .map(|r| model.success_probability(r))
                    .fold(0.0, f64::max);
                let r = optimal_rotations(n, m).unwrap();
                assert!((model.success_probability(r) - p_best).abs() < 1e-12, "n {n} m {m}");
            }
        }
        assert_eq!(optimal_rotations(5, 5).unwrap(), 0);
        assert!(optimal_rotations(5, 0).is_err());
    }

    #[test]
    fn million_state_rotation_count() {
        let r = optimal_rotations(1 << 20, 1).unwrap();
        assert_eq!(r, 804);
    }
}
