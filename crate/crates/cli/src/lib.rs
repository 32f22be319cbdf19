//! Library side of the `causaldiff` command: graph loading and alignment,
//! metric dispatch, report rendering, dataset directories and the CED
//! timing benchmark.

pub mod bench;
pub mod dataset;
pub mod load;
pub mod metrics;
pub mod report;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
