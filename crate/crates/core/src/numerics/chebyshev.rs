use crate::error::{Error, Result};

/// Integer monomial coefficients of the Chebyshev polynomials T_0..T_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebyshevTable {
    rows: Vec<Vec<i64>>,
}

impl ChebyshevTable {
    /// Panics if `max_degree` is large enough to overflow i64 (above 62).
    pub fn new(max_degree: usize) -> Self {
        assert!(max_degree <= 62, "Chebyshev coefficients overflow i64 past degree 62");
        let mut rows: Vec<Vec<i64>> = vec![vec![1]];
        if max_degree >= 1 {
            rows.push(vec![0, 1]);
        }
        for n in 2..=max_degree {
            let mut next = vec![0i64; n + 1];
            for (k, &c) in rows[n - 1].iter().enumerate() {
                next[k + 1] += 2 * c;
            }
            for (k, &c) in rows[n - 2].iter().enumerate() {
                next[k] -= c;
            }
            rows.push(next);
        }
        ChebyshevTable { rows }
    }

    pub fn max_degree(&self) -> usize {
        self.rows.len() - 1
    }

    /// Coefficients of T_n, ascending degree.
    pub fn row(&self, n: usize) -> Option<&[i64]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn coefficient(&self, n: usize, k: usize) -> i64 {
        self.rows.get(n).and_then(|r| r.get(k)).copied().unwrap_or(0)
    }

    pub fn eval(&self, n: usize, x: f64) -> Option<f64> {
        self.row(n)
            .map(|r| r.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64))
    }
}

/// Bounds B_1..B_{zeta-1} on the scaled monomial coefficients of a polynomial
/// bounded by one on [-1, 1]. With n = zeta - 1, indices of the same parity
/// as n read T_n, the others T_{n-1}.
pub fn coefficient_bounds(table: &ChebyshevTable, zeta: usize) -> Result<Vec<u64>> {
    if zeta < 2 {
        return Err(Error::Config(format!("coefficient bounds need zeta >= 2, got {zeta}")));
    }
    let n = zeta - 1;
    if table.max_degree() < n {
        return Err(Error::TableTooSmall {
            required: n,
            available: table.max_degree(),
        });
    }
    Ok((1..=n)
        .map(|j| {
            let source = if (n - j).is_multiple_of(2) { n } else { n - 1 };
            table.coefficient(source, j).unsigned_abs()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_rows() {
        let t = ChebyshevTable::new(6);
        assert_eq!(t.row(4).unwrap(), &[1, 0, -8, 0, 8]);
        assert_eq!(t.row(5).unwrap(), &[0, 5, 0, -20, 0, 16]);
    }

    #[test]
    fn recurrence_holds() {
        let t = ChebyshevTable::new(30);
        for n in 1..30 {
            for k in 0..=n + 1 {
                let shifted = if k == 0 { 0 } else { 2 * t.coefficient(n, k - 1) };
                assert_eq!(t.coefficient(n + 1, k), shifted - t.coefficient(n - 1, k));
            }
        }
    }

    #[test]
    fn cosine_identity() {
        let t = ChebyshevTable::new(12);
        for n in 0..=12 {
            for &x in &[-0.9, -0.3, 0.1, 0.77] {
                let expect = (n as f64 * f64::acos(x)).cos();
                assert!((t.eval(n, x).unwrap() - expect).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn bounds() {
        let t = ChebyshevTable::new(8);
        assert_eq!(coefficient_bounds(&t, 6).unwrap()[1..], [8, 20, 8, 16]);
        assert_eq!(coefficient_bounds(&t, 2).unwrap(), vec![1]);
        assert_eq!(coefficient_bounds(&t, 4).unwrap(), vec![3, 2, 4]);
        assert!(matches!(
            coefficient_bounds(&ChebyshevTable::new(3), 6),
            Err(Error::TableTooSmall { .. })
        ));
    }
}
