//! Share benchmarks and fair-allocation search for indivisible goods, plus
//! the extremal set-family machinery behind them: exact distributions of
//! randomly thinned bundle values, quantile and maximin style shares, an
//! exact allocation search over minimal accepted bundles, down-set product
//! measures, shadow bounds, and cross-dependent family search.

pub mod allocator;
pub mod dist;
pub mod error;
pub mod extremal;
pub mod instance;
pub mod oracle;
pub mod random;
pub mod set;
pub mod shares;
pub mod valuation;
pub mod zero_one;

pub use allocator::{Allocation, FeasibilityReport, SearchOutcome};
pub use dist::ValueDistribution;
pub use error::{Error, Result};
pub use instance::{parse_instance, Instance};
pub use set::Subset;
pub use shares::{ShareSpec, ShareValue};
pub use valuation::{Valuation, ValuationKind};
pub use zero_one::ZeroOneValuation;
