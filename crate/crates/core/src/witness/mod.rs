//! Constructive versions of the edge bounds: each routine takes a colored
//! graph above a bound and returns the substructure the bound guarantees.

pub mod chain;
pub mod double_star;
pub mod extract;
pub mod tree_embed;

pub use chain::{scan_forced_chain, ForcedChain};
pub use double_star::{find_double_star_bichromatic, DoubleStarOutcome, DoubleStarRoute};
pub use extract::{extract_bichromatic_path, CycleCase, ExtractionTrace, TraceStep};
pub use tree_embed::{embed_tree_bichromatic, TreeEmbedding};
