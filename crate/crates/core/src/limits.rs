//! Size guards. Every guard can be raised through the `CHROMA_MAX_N`
//! environment variable, up to the hard width of a vertex mask.

use std::sync::Once;

use crate::error::{Error, Result};
use crate::graph::MASK_BITS;

pub const ENV_OVERRIDE: &str = "CHROMA_MAX_N";

/// General graph operations.
pub const MAX_N: usize = 16;
/// Exact canonical labeling.
pub const MAX_N_CANONICAL: usize = 10;
/// Largest canonical code that fits a `u64` (n(n-1)/2 <= 64).
pub const HARD_MAX_N_CANONICAL: usize = 11;
/// Exhaustive set-partition oracle for feasibility.
pub const MAX_N_BRUTE_FORCE: usize = 7;
/// Isomorphism-class enumeration and everything built on it.
pub const MAX_N_ENUMERATE: usize = 8;

static WARN: Once = Once::new();

fn env_override() -> Option<usize> {
    let raw = std::env::var(ENV_OVERRIDE).ok()?;
    let value = raw.trim().parse::<usize>().ok()?;
    WARN.call_once(|| {
        eprintln!(
            "WARNING: {ENV_OVERRIDE}={value} overrides every size guard. \
             Exhaustive searches beyond the default limits may run for a very long time."
        );
    });
    Some(value)
}

/// Effective limit for a guard whose default is `default` and whose
/// representation cannot go past `hard`.
pub fn effective(default: usize, hard: usize) -> usize {
    env_override().unwrap_or(default).min(hard)
}

pub fn check(what: &'static str, n: usize, default: usize) -> Result<()> {
    check_with_hard(what, n, default, MASK_BITS)
}

pub fn check_with_hard(what: &'static str, n: usize, default: usize, hard: usize) -> Result<()> {
    let limit = effective(default, hard);
    if n > limit {
        return Err(Error::UnsupportedSize { what, n, limit });
    }
    Ok(())
}
