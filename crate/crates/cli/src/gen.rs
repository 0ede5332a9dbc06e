// SPDX-License-Identifier: Apache-2.0

//! Dense grid point sets.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};

/// `r` distinct points drawn uniformly from `[0, n)^d`, in draw order.
pub fn dense_points(d: usize, n: usize, r: usize, seed: u64) -> CliResult<Vec<Vec<i64>>> {
    if d == 0 || n == 0 {
        return Err(CliError::Input("d and n must be positive".into()));
    }
    let cells = (0..d)
        .try_fold(1usize, |acc, _| acc.checked_mul(n))
        .ok_or_else(|| CliError::Input(format!("grid {n}^{d} is too large")))?;
    if r > cells {
        return Err(CliError::Input(format!("r = {r} exceeds the {cells} grid cells")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample(&mut rng, cells, r)
        .into_iter()
        .map(|mut c| {
            let mut p = Vec::with_capacity(d);
            for _ in 0..d {
                p.push((c % n) as i64);
                c /= n;
            }
            p
        })
        .collect())
}

/// Distinct coordinate values per dimension.
pub fn distinct_counts(d: usize, rows: &[Vec<i64>]) -> Vec<usize> {
    (0..d)
        .map(|i| {
            let mut v: Vec<i64> = rows.iter().map(|r| r[i]).collect();
            v.sort_unstable();
            v.dedup();
            v.len()
        })
        .collect()
}
