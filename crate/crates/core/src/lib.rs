//! Kerov character polynomials computed from cycle factorizations, together
//! with the machinery used to cross-check them: exact series calculus for
//! free cumulants, generalized Young diagrams, a Murnaghan–Nakayama oracle and
//! Stanley polynomials.

pub mod combinat;
pub mod diagram;
pub mod error;
pub mod kerov;
pub mod marriage;
pub mod oracle;
pub mod perm;
pub mod poly;
pub mod series;
pub mod stanley;

pub use diagram::{MultiRectangular, Partition};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use poly::{CumulantPolynomial, Monomial};
pub use series::{SeriesRole, TruncatedSeries};
