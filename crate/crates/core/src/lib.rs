//! Loops with abelian inner mapping groups of nilpotency class three,
//! constructed as central extensions of groups of order 128.

pub mod error;
pub mod formats;
pub mod group;
pub mod loops;
pub mod pcgroup;
pub mod perm;
pub mod pipeline;
pub mod report;
pub mod bundled;
pub mod construct;
pub mod setup;

pub use error::{Error, Result};
pub use group::{GroupTable, Nilpotency, QuotientMap, Subgroup};
pub use pcgroup::{build_group, parse_pc, ExponentVector, PcPresentation};
pub use report::{Check, Report};
