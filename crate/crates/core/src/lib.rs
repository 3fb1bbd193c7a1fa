//! Arithmetic of `f(a, b) = gcd(a + b, ab) / gcd(a, b)`.
//!
//! * [`arith`]: `f`, `f_r`, gcd decompositions and surjectivity witnesses.
//! * [`sieve`]: linear sieve tables for φ, σ, μ and smallest prime factors.
//! * [`density`]: exhaustive counts of `f = 1` on `[1, n]²`, heat maps and
//!   per-prime local events.
//! * [`analytic`]: Euler products with certified tail enclosures and the mean
//!   of `φ(n)σ(n)/n²`.
//! * [`gl2`]: brute-force conjugacy classes of GL(2, ℤ/nℤ).
//! * [`summatory`]: `Σ φ(n)` by sieve and by the hyperbola method.

pub mod analytic;
pub mod arith;
pub mod density;
pub mod error;
pub mod extended;
pub mod fraction;
pub mod gl2;
pub mod sieve;
pub mod summatory;

pub use analytic::{EulerProductEstimate, MeanValueSeries, ProductKind};
pub use arith::{f, f_r, gcd, GcdDecomposition, Pair};
pub use density::{DensityReport, HeatmapGrid, Histogram, LocalEventEstimate};
pub use error::{Error, Result};
pub use extended::DoubleDouble;
pub use fraction::Fraction;
pub use gl2::{ConjugacyCount, Mat2};
pub use sieve::{build_tables, SieveTables};
pub use summatory::{MertensCache, Method, SummatoryResult};
