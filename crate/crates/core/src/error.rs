//! Error types shared by the measure operations.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("invalid scale {scale} for pattern of length {len} (want 1 ≤ r ≤ N)")]
    InvalidScale { scale: usize, len: usize },

    #[error("declared alphabet size {declared} is smaller than the {observed} observed symbols")]
    DeclaredAlphabetTooSmall { declared: usize, observed: usize },
}
