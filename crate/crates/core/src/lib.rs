//! Sturm sequences of finite orthogonal polynomials on classical grids.
//!
//! Given a grid, build the Sturmian pair `(P_{N+1}, P'_{N+1}/(N+1))`, run
//! the Euclidean algorithm to get the full chain and its Jacobi matrix, then
//! compare the result against closed-form Hahn, Racah, q-Hahn and Chebyshev
//! data computed independently.

pub mod error;
pub mod families;
pub mod grids;
pub mod harness;
pub mod poly;
pub mod scalar;
pub mod spectral;
pub mod sturm;
pub mod transforms;

pub use error::{Error, Result};
pub use families::FamilySpec;
pub use grids::{GridKind, GridSpec};
pub use poly::Polynomial;
pub use scalar::{Float, Scalar, DEFAULT_PRECISION};
pub use spectral::{JacobiMatrix, SpectralData};
pub use sturm::{build_chain, count_roots, sturmian_pair, SturmChain};
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
