//! Exhaustive extremal numbers over all graphs on at most eight vertices,
//! the extremal families, and the conjecture scan.

pub mod conjecture;
pub mod construct;
pub mod enumerate;
pub mod report;

pub use conjecture::{conjecture_scan, trees_with_edges, ConjectureRow, ConjectureScan};
pub use construct::{construct, Avoids, Construction, GraphClassSpec};
pub use enumerate::{enumerate_canonical, enumerate_nonisomorphic, labeled_filter};
pub use report::{
    check_path_theorem, compute_ex_c, compute_ex_classic, BoundComparison, Characterization,
    ExtremalReport, Forbidden,
};
