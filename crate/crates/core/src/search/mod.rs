//! Exact searches for paths, cycles, tree copies and double stars.

pub mod cycles;
pub mod double_star;
pub mod embed;
pub mod paths;
pub mod tree;
pub mod validate;

pub use cycles::{smallest_long_cycle, CycleWitness};
pub use double_star::{find_double_star, DoubleStarWitness};
pub use embed::{
    contains_tree, enumerate_leaf_image_sets, find_embedding, leaf_image_sets_with, CopyMode,
    LeafImageSet,
};
pub use paths::{all_path_endpoint_pairs, find_bichromatic_path, PathWitness};
pub use tree::{classify_tree, odd_leaf_path, LeafProfile, TreePattern};
