//! Sampled trajectories and single-state probes.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use super::{Format, ProblemKind, RunConfig};
use crate::error::{Error, Result};
use crate::numerics::Curve;
use crate::oracle::Infeasibility;
use crate::problems::{
    Brachistochrone, CoefficientBrachistochrone, Cycloid, EnergyConvention, Isoperimetric, MoonLanding, Problem,
    Semicircle, TravelTime,
};

/// Picks a state either by index in the problem's space or by its decoded
/// values.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSelector {
    Index(u64),
    Values(Vec<f64>),
}

impl StateSelector {
    fn resolve(&self, problem: &dyn Problem) -> Result<(Option<u64>, Vec<f64>)> {
        match self {
            StateSelector::Index(i) => Ok((Some(*i), problem.space().decode(*i)?)),
            StateSelector::Values(v) => Ok((None, v.clone())),
        }
    }
}

/// Column-oriented samples of a trajectory. Missing entries (a reference
/// curve that is not registered) are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathRow {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

/// Samples the trajectory of one state at `samples` uniform points.
///
/// Brachistochrone paths get `x,y,ref_x,ref_y` with the cycloid sampled
/// uniformly in its parameter; isoperimetric curves get `theta,r,ref_r`
/// with the radius scaled to the required length; the landing gets
/// `t,h,v,m`.
pub fn emit_path(cfg: &RunConfig, values: &[f64], samples: usize) -> Result<PathRow> {
    let samples = samples.max(2);
    let at = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (samples - 1) as f64;
    match cfg.problem {
        ProblemKind::BrachPhysical => {
            let p = Brachistochrone::new(cfg.brach.clone())?;
            let path = p.path(values)?;
            Ok(brach_rows(&path, p.travel_time(), samples))
        }
        ProblemKind::BrachCoeff => {
            let p = CoefficientBrachistochrone::new(cfg.brach_coeff.clone())?;
            let path = p.path(values)?;
            Ok(brach_rows(&path, p.travel_time(), samples))
        }
        ProblemKind::Isoperimetric => {
            let p = Isoperimetric::new(cfg.iso.clone())?;
            let curve = p.curve(values)?;
            let scale = p.area_of_radii(values).map_err(infeasible)?.scale;
            let c = p.config();
            let reference = Semicircle {
                diameter: 2.0 * c.length / PI,
            };
            let rows = (0..samples)
                .map(|i| {
                    let t = at(c.theta_start, c.theta_end, i);
                    vec![Some(t), Some(scale * curve.value(t)), Some(reference.value(t))]
                })
                .collect();
            Ok(PathRow {
                columns: vec!["theta", "r", "ref_r"],
                rows,
            })
        }
        ProblemKind::Moon => {
            let p = MoonLanding::new(cfg.moon.clone())?;
            let [a2, a3, a4] = values else {
                return Err(Error::LengthMismatch {
                    expected: 3,
                    actual: values.len(),
                });
            };
            let sol = p.solve_soft_landing(*a2, *a3, *a4).map_err(infeasible)?;
            let rows = sol
                .trajectory(samples)?
                .into_iter()
                .map(|(t, s)| vec![Some(t), Some(s.h), Some(s.v), Some(s.m)])
                .collect();
            Ok(PathRow {
                columns: vec!["t", "h", "v", "m"],
                rows,
            })
        }
    }
}

fn infeasible(reason: Infeasibility) -> Error {
    Error::Domain(format!("state has no trajectory: {reason}"))
}

/// Reference cycloid when the end point sits at its first cusp-free
/// minimum (x_end = π·a), which is the case for the standard set-up.
pub(crate) fn reference_cycloid(time: &TravelTime) -> Option<Cycloid> {
    let p = time.physics();
    let a = 0.5 * (p.y0 - p.y_end);
    let lands = (p.x_end - PI * a).abs() <= 1e-9 * p.x_end.abs().max(1.0);
    (p.convention == EnergyConvention::FallenHeight && a > 0.0 && lands).then(|| Cycloid::new(a, p.y0))
}

fn brach_rows<C: Curve>(path: &C, time: &TravelTime, samples: usize) -> PathRow {
    let x_end = time.physics().x_end;
    let cycloid = reference_cycloid(time);
    let rows = (0..samples)
        .map(|i| {
            let f = i as f64 / (samples - 1) as f64;
            let x = x_end * f;
            let (rx, ry) = match cycloid {
                Some(c) => {
                    let (rx, ry) = c.point(PI * f);
                    (Some(rx), Some(ry))
                }
                None => (None, None),
            };
            vec![Some(x), Some(path.value(x)), rx, ry]
        })
        .collect();
    PathRow {
        columns: vec!["x", "y", "ref_x", "ref_y"],
        rows,
    }
}

pub fn write_path<W: Write>(path: &PathRow, format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&path.columns)?;
            for row in &path.rows {
                w.write_record(row.iter().map(|v| v.map(|v| v.to_string()).unwrap_or_default()))?;
            }
            w.flush().map_err(|e| Error::io("<output>", e))?;
        }
        Format::Json => {
            let records: Vec<serde_json::Map<String, serde_json::Value>> = path
                .rows
                .iter()
                .map(|row| {
                    path.columns
                        .iter()
                        .zip(row)
                        .map(|(k, v)| (k.to_string(), serde_json::json!(v)))
                        .collect()
                })
                .collect();
            serde_json::to_writer_pretty(&mut out, &records)?;
            out.write_all(b"\n").map_err(|e| Error::io("<output>", e))?;
        }
    }
    Ok(())
}

/// Cost of one state, with the reason when it is infeasible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub problem: String,
    pub index: Option<u64>,
    pub parameters: Vec<f64>,
    pub feasible: bool,
    pub cost: Option<f64>,
    pub objective: Option<f64>,
    pub error_pct: Option<f64>,
    pub reason: Option<String>,
}

pub fn probe(cfg: &RunConfig, selector: &StateSelector) -> Result<ProbeReport> {
    let problem = cfg.build_problem()?;
    let problem = problem.as_ref();
    let (index, parameters) = selector.resolve(problem)?;
    let verdict = problem.evaluate(&parameters);
    let cost = verdict.as_ref().ok().copied();
    let objective = cost.map(|c| problem.objective(c));
    Ok(ProbeReport {
        problem: cfg.problem.name().to_string(),
        index,
        parameters,
        feasible: cost.is_some(),
        cost,
        objective,
        error_pct: objective.and_then(|o| problem.error_pct(o)),
        reason: verdict.err().map(|r| r.to_string()),
    })
}

/// Decoded values of the state a selector names.
pub fn selected_values(cfg: &RunConfig, selector: &StateSelector) -> Result<Vec<f64>> {
    let problem = cfg.build_problem()?;
    Ok(selector.resolve(problem.as_ref())?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cycloid_reference_points() {
        let cfg = RunConfig::default();
        let path = emit_path(&cfg, &[0.95, 0.5, 0.2, 0.05], 3).unwrap();
        let expect = [(0.0, 2.0), (PI / 2.0 - 1.0, 1.0), (PI, 0.0)];
        for (row, (x, y)) in path.rows.iter().zip(expect) {
            assert_abs_diff_eq!(row[2].unwrap(), x, epsilon = 1e-12);
            assert_abs_diff_eq!(row[3].unwrap(), y, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(path.rows[0][1].unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(path.rows[2][1].unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn moon_path_starts_at_altitude() {
        let cfg = RunConfig {
            problem: ProblemKind::Moon,
            ..RunConfig::default()
        };
        let path = emit_path(&cfg, &[-6.30, -6.30, -6.35], 50).unwrap();
        assert_eq!(path.rows[0][1], Some(50002.65));
        assert!(path.rows.windows(2).all(|w| w[1][0] > w[0][0]));
        assert!(path.rows.last().unwrap()[1].unwrap().abs() < 1e-3);
    }

    #[test]
    fn probe_reports_reason() {
        let cfg = RunConfig::default();
        let bad = probe(&cfg, &StateSelector::Values(vec![3.0, 0.5, 0.2, 0.05])).unwrap();
        assert!(!bad.feasible);
        assert!(bad.reason.is_some());
        let good = probe(&cfg, &StateSelector::Index(0)).unwrap();
        assert_eq!(good.index, Some(0));
        assert_eq!(good.parameters.len(), 4);
    }

    #[test]
    fn csv_leaves_missing_reference_blank() {
        let path = PathRow {
            columns: vec!["x", "y"],
            rows: vec![vec![Some(1.0), None]],
        };
        let mut buf = Vec::new();
        write_path(&path, Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,y\n1,\n");
    }
}
