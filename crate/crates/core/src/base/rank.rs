use std::cmp::Ordering;

use super::real::Real;
use crate::error::NoahError;

/// Ascending ranks `1..=N`: the smallest value gets 1, ties go to the lower index first.
pub fn rank_ascending<T: Real>(values: &[T]) -> Result<Vec<usize>, NoahError> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(NoahError::InvalidFitness);
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut ranks = vec![0; values.len()];
    for (pos, &idx) in order.iter().enumerate() {
        ranks[idx] = pos + 1;
    }
    Ok(ranks)
}

/// All ranks mapped to `[0, 1]` as `(rank - 1) / (N - 1)`; a singleton maps to 0.5.
pub fn normalized_ranks<T: Real>(values: &[T]) -> Result<Vec<T>, NoahError> {
    let ranks = rank_ascending(values)?;
    let n = values.len();
    if n == 1 {
        return Ok(vec![T::lit(0.5)]);
    }
    let denom = T::from_usize_lossy(n - 1);
    Ok(ranks
        .into_iter()
        .map(|r| T::from_usize_lossy(r - 1) / denom)
        .collect())
}

pub fn normalized_rank<T: Real>(values: &[T], i: usize) -> Result<T, NoahError> {
    if i >= values.len() {
        return Err(NoahError::IndexOutOfRange {
            index: i,
            len: values.len(),
        });
    }
    Ok(normalized_ranks(values)?[i])
}
