//! Polynomials, Lagrange interpolation, composite Gauss–Legendre quadrature,
//! Chebyshev coefficient tables and bracketed root finding.

mod chebyshev;
mod lagrange;
mod polynomial;
mod quadrature;
mod roots;

pub use chebyshev::{coefficient_bounds, ChebyshevTable};
pub use lagrange::LagrangeBasis;
pub use polynomial::{Curve, Polynomial};
pub use quadrature::{integrate, Endpoint, GaussLegendre, Grading, Integral, Integrator, QuadratureSpec};
pub use roots::{bisect_root, DEFAULT_ROOT_TOL};
