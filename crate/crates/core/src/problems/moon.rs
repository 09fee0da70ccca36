//! Vertical lunar soft landing with piecewise-constant mass flow.
//!
//! The control u(t) = a_i on segment i is the (non-positive) rate of change
//! of mass. Mass is piecewise linear, the velocity follows the rocket
//! equation v = v0 − g·t − k·ln(m/m0), and the height is its closed-form
//! antiderivative.

use serde::{Deserialize, Serialize};

use super::Problem;
use crate::error::{Error, Result};
use crate::numerics::{bisect_root, DEFAULT_ROOT_TOL};
use crate::oracle::{Cost, Infeasibility, ValueCost};
use crate::space::{LevelSet, MixedRadixSpace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MoonConfig {
    pub h0: f64,
    pub v0: f64,
    pub m0: f64,
    pub g: f64,
    /// Exhaust constant k.
    pub k: f64,
    /// Controls lie in [−u_max, 0].
    pub u_max: f64,
    pub m_dry: f64,
    /// Segment ends t1..t4.
    pub times: [f64; 4],
    /// Candidate values for a2, a3 and a4.
    pub control_levels: LevelSet,
    /// Number of equispaced a1 values scanned for a sign change.
    pub a1_scan: usize,
}

impl Default for MoonConfig {
    fn default() -> Self {
        MoonConfig {
            h0: 50002.65,
            v0: -178.0,
            m0: 2500.0,
            g: 1.63,
            k: 585.0,
            u_max: 15.0,
            m_dry: 800.0,
            times: [25.0, 75.0, 200.0, 400.0],
            control_levels: LevelSet::new(vec![-6.35, -6.30, -6.25]).expect("static levels"),
            a1_scan: 200,
        }
    }
}

impl MoonConfig {
    /// The full control grid −15, −14.99, …, −0.01 (1500 levels, 1500³ states).
    pub fn full_grid() -> Self {
        MoonConfig {
            control_levels: LevelSet::new((0..1500).map(|i| (i as f64 - 1500.0) / 100.0).collect())
                .expect("static levels"),
            ..MoonConfig::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let t = self.times;
        if !(0.0 < t[0] && t[0] < t[1] && t[1] < t[2] && t[2] < t[3]) {
            return Err(Error::Config(format!("segment times must increase from zero: {t:?}")));
        }
        if !(self.m0 > self.m_dry && self.m_dry >= 0.0) {
            return Err(Error::Config("initial mass must exceed the dry mass".into()));
        }
        if !(self.g > 0.0 && self.k > 0.0 && self.u_max > 0.0) {
            return Err(Error::Config("g, k and u_max must be positive".into()));
        }
        if self.control_levels.min() < -self.u_max || self.control_levels.max() > 0.0 {
            return Err(Error::Config(format!(
                "control levels must lie in [-{}, 0]",
                self.u_max
            )));
        }
        if self.a1_scan < 2 {
            return Err(Error::Config("a1_scan needs at least two points".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoonState {
    pub m: f64,
    pub v: f64,
    pub h: f64,
}

#[derive(Debug, Clone)]
pub struct MoonLanding {
    cfg: MoonConfig,
    space: MixedRadixSpace,
}

// ((1+u)ln(1+u) − u)/u, the mean of ln(1 + w) over w ∈ [0, u].
fn mean_log1p(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        u * (0.5 - u * (1.0 / 6.0 - u * (1.0 / 12.0 - u / 20.0)))
    } else {
        ((1.0 + u) * u.ln_1p() - u) / u
    }
}

impl MoonLanding {
    pub fn new(cfg: MoonConfig) -> Result<Self> {
        cfg.validate()?;
        let space = MixedRadixSpace::new(vec![cfg.control_levels.clone(); 3])?;
        Ok(MoonLanding { cfg, space })
    }

    pub fn config(&self) -> &MoonConfig {
        &self.cfg
    }

    fn segment_start(&self, i: usize) -> f64 {
        if i == 0 {
            0.0
        } else {
            self.cfg.times[i - 1]
        }
    }

    /// Mass, velocity and height at time t under controls a1..a4.
    pub fn state(&self, controls: &[f64; 4], t: f64) -> Result<MoonState> {
        let c = &self.cfg;
        if !(0.0..=c.times[3]).contains(&t) {
            return Err(Error::Domain(format!("time {t} outside [0, {}]", c.times[3])));
        }
        let ln_m0 = c.m0.ln();
        let mut m = c.m0;
        // ∫ ln(m(s)/m0) ds accumulated over completed segments.
        let mut log_integral = 0.0;
        for (i, &a) in controls.iter().enumerate() {
            let start = self.segment_start(i);
            let end = c.times[i].min(t);
            let dt = end - start;
            if dt > 0.0 {
                let u = a * dt / m;
                if !(u > -1.0) {
                    return Err(Error::Domain(format!("mass exhausted before t = {end}")));
                }
                log_integral += dt * (m.ln() - ln_m0 + mean_log1p(u));
                m += a * dt;
            }
            if t <= c.times[i] {
                break;
            }
        }
        let v = c.v0 - c.g * t - c.k * (m.ln() - ln_m0);
        let h = c.h0 + c.v0 * t - 0.5 * c.g * t * t - c.k * log_integral;
        Ok(MoonState { m, v, h })
    }

    /// First time in (0, t4] at which the velocity reaches zero. v is convex
    /// on each segment, so a negative start and non-negative end bracket
    /// exactly one root.
    pub fn first_velocity_zero(&self, controls: &[f64; 4]) -> Option<f64> {
        let c = &self.cfg;
        if c.v0 >= 0.0 {
            return Some(0.0);
        }
        let mut m = c.m0;
        for (i, &a) in controls.iter().enumerate() {
            let start = self.segment_start(i);
            let mut end = c.times[i];
            if m + a * (end - start) <= 0.0 {
                // v → +∞ as the mass vanishes; stop just short of that.
                end = start + m * (1.0 - 1e-12) / -a;
            }
            let v_end = self.state(controls, end).ok()?.v;
            if v_end >= 0.0 {
                let f = |t: f64| self.state(controls, t).map(|s| s.v).unwrap_or(f64::NAN);
                return bisect_root(f, start, end, DEFAULT_ROOT_TOL * end.max(1.0)).ok();
            }
            if end < c.times[i] {
                return None;
            }
            m += a * (end - start);
        }
        None
    }

    /// Height at the first velocity zero, as a function of a1.
    fn touchdown_height(&self, a1: f64, rest: [f64; 3]) -> Option<(f64, f64)> {
        let controls = [a1, rest[0], rest[1], rest[2]];
        let tau = self.first_velocity_zero(&controls)?;
        let s = self.state(&controls, tau).ok()?;
        Some((s.h, tau))
    }

    /// Finds a1 and τ with v(τ) = h(τ) = 0. Every sign change of h(τ(a1))
    /// on the a1 scan is refined; the feasible landing with the smallest τ
    /// wins.
    pub fn solve_soft_landing(&self, a2: f64, a3: f64, a4: f64) -> std::result::Result<MoonSolution, Infeasibility> {
        let c = &self.cfg;
        let rest = [a2, a3, a4];
        if rest.iter().any(|&a| !(-c.u_max..=0.0).contains(&a)) {
            return Err(Infeasibility::Constraint {
                constraint: "control range",
                at: 0.0,
            });
        }
        let n = c.a1_scan;
        let scan: Vec<(f64, Option<f64>)> = (0..n)
            .map(|j| {
                let a1 = -c.u_max + c.u_max * j as f64 / (n - 1) as f64;
                (a1, self.touchdown_height(a1, rest).map(|(h, _)| h))
            })
            .collect();
        if scan.iter().all(|(_, h)| h.is_none()) {
            return Err(Infeasibility::Landing("velocity never reaches zero"));
        }
        let mut best: Option<MoonSolution> = None;
        let mut last_reason = Infeasibility::Landing("touchdown height never changes sign");
        for w in scan.windows(2) {
            let ((lo, Some(h_lo)), (hi, Some(h_hi))) = (w[0], w[1]) else {
                continue;
            };
            if h_lo * h_hi > 0.0 {
                continue;
            }
            let f = |a1: f64| self.touchdown_height(a1, rest).map(|(h, _)| h).unwrap_or(f64::NAN);
            let Ok(a1) = bisect_root(f, lo, hi, 1e-13) else {
                continue;
            };
            match self.validate(a1, rest) {
                Ok(sol) => {
                    if best.as_ref().is_none_or(|b| sol.tau < b.tau) {
                        best = Some(sol);
                    }
                }
                Err(reason) => last_reason = reason,
            }
        }
        best.ok_or(last_reason)
    }

    fn validate(&self, a1: f64, rest: [f64; 3]) -> std::result::Result<MoonSolution, Infeasibility> {
        let controls = [a1, rest[0], rest[1], rest[2]];
        let tau = self
            .first_velocity_zero(&controls)
            .ok_or(Infeasibility::Landing("velocity never reaches zero"))?;
        let end = self
            .state(&controls, tau)
            .map_err(|e| Infeasibility::Numerical(e.to_string()))?;
        if end.v.abs() > 1e-6 {
            return Err(Infeasibility::Landing("touchdown velocity not zero"));
        }
        if end.h.abs() > 1e-4 {
            return Err(Infeasibility::Landing("touchdown height not zero"));
        }
        const SAMPLES: usize = 1000;
        for i in 0..SAMPLES {
            let t = tau * i as f64 / SAMPLES as f64;
            let s = self
                .state(&controls, t)
                .map_err(|e| Infeasibility::Numerical(e.to_string()))?;
            if s.h <= 0.0 {
                return Err(Infeasibility::Landing("height reaches zero before touchdown"));
            }
        }
        if end.m < self.cfg.m_dry {
            return Err(Infeasibility::Landing("mass below dry mass"));
        }
        Ok(MoonSolution {
            a1,
            controls,
            tau,
            m_final: end.m,
            problem: self.clone(),
        })
    }

    /// m0·exp((v0 − g·τ)/k), the mass implied by v(τ) = 0.
    pub fn mass_at_rest(&self, tau: f64) -> f64 {
        let c = &self.cfg;
        c.m0 * ((c.v0 - c.g * tau) / c.k).exp()
    }
}

impl ValueCost for MoonLanding {
    /// Landing time; smaller τ leaves more mass, so this also maximizes the
    /// final mass.
    fn cost_of(&self, values: &[f64]) -> Cost {
        self.evaluate(values).into()
    }
}

impl Problem for MoonLanding {
    fn name(&self) -> &str {
        "moon-landing"
    }

    fn space(&self) -> &MixedRadixSpace {
        &self.space
    }

    fn evaluate(&self, values: &[f64]) -> std::result::Result<f64, Infeasibility> {
        match values {
            [a2, a3, a4] => self.solve_soft_landing(*a2, *a3, *a4).map(|s| s.tau),
            _ => Err(Infeasibility::Degenerate("expected three controls (a2, a3, a4)")),
        }
    }

    /// Final mass m(τ), from the landing time.
    fn objective(&self, cost: f64) -> f64 {
        self.mass_at_rest(cost)
    }

    fn reference_optimum(&self) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone)]
pub struct MoonSolution {
    pub a1: f64,
    pub controls: [f64; 4],
    pub tau: f64,
    pub m_final: f64,
    problem: MoonLanding,
}

impl MoonSolution {
    pub fn state(&self, t: f64) -> Result<MoonState> {
        self.problem.state(&self.controls, t)
    }

    /// `count` evenly spaced states on [0, τ].
    pub fn trajectory(&self, count: usize) -> Result<Vec<(f64, MoonState)>> {
        let count = count.max(2);
        (0..count)
            .map(|i| {
                let t = self.tau * i as f64 / (count - 1) as f64;
                self.state(t).map(|s| (t, s))
            })
            .collect()
    }
}
