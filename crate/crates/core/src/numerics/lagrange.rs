use nalgebra::DMatrix;

use super::Polynomial;
use crate::error::{Error, Result};

/// Lagrange basis on a fixed set of distinct nodes.
///
/// The inverse Vandermonde matrix is computed once, so converting node
/// values to monomial coefficients is a matrix-vector product.
#[derive(Debug, Clone)]
pub struct LagrangeBasis {
    nodes: Vec<f64>,
    bary: Vec<f64>,
    inv_vandermonde: DMatrix<f64>,
}

impl LagrangeBasis {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Config("Lagrange basis needs at least one node".into()));
        }
        for (i, a) in nodes.iter().enumerate() {
            if !a.is_finite() {
                return Err(Error::Config(format!("node {a} is not finite")));
            }
            if nodes[i + 1..].iter().any(|b| b == a) {
                return Err(Error::DuplicateNodes);
            }
        }
        let n = nodes.len();
        let bary = (0..n)
            .map(|k| {
                1.0 / (0..n)
                    .filter(|&j| j != k)
                    .map(|j| nodes[k] - nodes[j])
                    .product::<f64>()
            })
            .collect();
        let vandermonde = DMatrix::from_fn(n, n, |j, k| nodes[j].powi(k as i32));
        let inv_vandermonde = vandermonde
            .lu()
            .try_inverse()
            .ok_or(Error::DuplicateNodes)?;
        Ok(LagrangeBasis {
            nodes,
            bary,
            inv_vandermonde,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// k-th cardinal function at x.
    pub fn basis(&self, k: usize, x: f64) -> f64 {
        self.nodes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &xj)| (x - xj) / (self.nodes[k] - xj))
            .product()
    }

    /// Interpolant in monomial form.
    pub fn interpolate(&self, values: &[f64]) -> Result<Polynomial> {
        let mut coeffs = vec![0.0; self.nodes.len()];
        self.interpolate_into(values, &mut coeffs)?;
        Ok(Polynomial::new(coeffs))
    }

    /// Writes monomial coefficients into `out` without allocating.
    pub fn interpolate_into(&self, values: &[f64], out: &mut [f64]) -> Result<()> {
        self.check_len(values)?;
        self.check_len(out)?;
        self.apply_inverse(values, out);
        // One step of iterative refinement against the nodal residual.
        let mut residual = vec![0.0; values.len()];
        for ((r, &x), &v) in residual.iter_mut().zip(&self.nodes).zip(values) {
            *r = v - out.iter().rev().fold(0.0, |acc, &c| acc * x + c);
        }
        let mut correction = vec![0.0; values.len()];
        self.apply_inverse(&residual, &mut correction);
        for (o, c) in out.iter_mut().zip(correction) {
            *o += c;
        }
        Ok(())
    }

    fn apply_inverse(&self, values: &[f64], out: &mut [f64]) {
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (j, &v) in values.iter().enumerate() {
                acc += self.inv_vandermonde[(i, j)] * v;
            }
            *slot = acc;
        }
    }

    /// Barycentric evaluation of the interpolant through `values`.
    pub fn eval(&self, values: &[f64], x: f64) -> Result<f64> {
        self.check_len(values)?;
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&xk, &wk), &yk) in self.nodes.iter().zip(&self.bary).zip(values) {
            let d = x - xk;
            if d == 0.0 {
                return Ok(yk);
            }
            let t = wk / d;
            num += t * yk;
            den += t;
        }
        Ok(num / den)
    }

    fn check_len(&self, values: &[f64]) -> Result<()> {
        if values.len() != self.nodes.len() {
            return Err(Error::LengthMismatch {
                expected: self.nodes.len(),
                actual: values.len(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn cardinal_property() {
        let b = LagrangeBasis::new(vec![0.0, 0.4, 1.1, 2.0, 3.0]).unwrap();
        for k in 0..5 {
            for j in 0..5 {
                let expect = if j == k { 1.0 } else { 0.0 };
                assert!((b.basis(k, b.nodes()[j]) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn constant_values() {
        let b = LagrangeBasis::new(vec![-1.0, 0.3, 2.5]).unwrap();
        let p = b.interpolate(&[4.0, 4.0, 4.0]).unwrap();
        assert!((p.coeffs()[0] - 4.0).abs() < 1e-12);
        assert!(p.coeffs()[1..].iter().all(|c| c.abs() < 1e-12));
    }

    #[test]
    fn duplicate_nodes_rejected() {
        assert!(matches!(
            LagrangeBasis::new(vec![0.0, 1.0, 1.0]),
            Err(Error::DuplicateNodes)
        ));
    }

    #[test]
    fn five_node_brachistochrone_fit() {
        let nodes = (0..6).map(|k| k as f64 * PI / 5.0).collect();
        let b = LagrangeBasis::new(nodes).unwrap();
        let p = b.interpolate(&[2.0, 0.95, 0.50, 0.20, 0.05, 0.0]).unwrap();
        let expect = [
            2.0,
            -2.72552840044871,
            2.37999238659866,
            -1.34381393471665,
            0.387647767429487,
            -0.0425490057689243,
        ];
        for (a, e) in p.coeffs().iter().zip(expect) {
            assert!((a - e).abs() < 1e-9, "{a} vs {e}");
        }
    }

    proptest! {
        #[test]
        fn round_trip(values in proptest::collection::vec(-5.0f64..5.0, 2..=9), shift in -0.5f64..0.5) {
            let n = values.len();
            // Nodes centred near zero keep the monomial form well conditioned.
            let nodes: Vec<f64> = (0..n).map(|k| shift + k as f64 * 4.0 / (n - 1) as f64 - 2.0).collect();
            let b = LagrangeBasis::new(nodes.clone()).unwrap();
            let p = b.interpolate(&values).unwrap();
            let mut buf = vec![0.0; n];
            b.interpolate_into(&values, &mut buf).unwrap();
            for (k, &x) in nodes.iter().enumerate() {
                prop_assert!((p.eval(x) - values[k]).abs() < 1e-9);
                prop_assert!((b.eval(&values, x + 1e-3).unwrap() - p.eval(x + 1e-3)).abs() < 1e-8);
            }
            prop_assert_eq!(p.coeffs(), &buf[..]);
        }
    }
}
