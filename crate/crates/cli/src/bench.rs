// SPDX-License-Identifier: Apache-2.0

//! Running-time comparison of the four covering variants on dense 3-D sets.

use std::time::Instant;

use mdkit::cover::{hrcover, Cost, CoverProblem, GroupConfig, Variant};
use mdkit::{normalize_pointset, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::gen::dense_points;

/// Arithmetic used for lengths and costs. Dense integer grids with unit
/// factors produce integer volumes, which `f64` holds exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arith {
    Float,
    Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub variant: String,
    pub n: usize,
    pub trial: usize,
    pub r: usize,
    pub millis: f64,
    pub cost: String,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    /// Summed seconds per variant, in the order requested.
    pub totals: Vec<(Variant, f64)>,
}

impl BenchReport {
    pub fn total(&self, v: Variant) -> Option<f64> {
        self.totals.iter().find(|(w, _)| *w == v).map(|(_, t)| *t)
    }
}

#[derive(Debug, Clone)]
pub struct Table1 {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub variants: Vec<Variant>,
    pub arith: Arith,
}

/// Point counts spread log-uniformly over `[0.001, 0.1] * n^3`.
pub fn trial_sizes(n: usize, trials: usize, seed: u64) -> Vec<usize> {
    let cube = (n * n * n) as f64;
    let (lo, hi) = ((0.001 * cube).ln(), (0.1 * cube).ln());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| (rng.gen_range(lo..=hi).exp().round() as usize).clamp(1, n * n * n))
        .collect()
}

fn timed<S: Scalar>(ps: &mdkit::PointSet, variant: Variant) -> CliResult<(f64, Cost<S>)> {
    let problem = CoverProblem::new(ps, GroupConfig::<S>::separate(3), 2)?.with_variant(variant);
    let start = Instant::now();
    let cost = hrcover(&problem).aggregate;
    Ok((start.elapsed().as_secs_f64(), cost))
}

pub fn run_table1(cfg: &Table1) -> CliResult<BenchReport> {
    let sizes = trial_sizes(cfg.n, cfg.trials, cfg.seed);
    let mut records = Vec::with_capacity(cfg.trials * cfg.variants.len());
    let mut totals: Vec<(Variant, f64)> = cfg.variants.iter().map(|&v| (v, 0.0)).collect();
    for (trial, &r) in sizes.iter().enumerate() {
        let rows = dense_points(3, cfg.n, r, cfg.seed.wrapping_add(1 + trial as u64))?;
        let ps = normalize_pointset(3, &rows)?;
        let mut first: Option<String> = None;
        for (slot, &v) in cfg.variants.iter().enumerate() {
            let (secs, cost) = match cfg.arith {
                Arith::Float => timed::<f64>(&ps, v).map(|(t, c)| (t, c.to_string()))?,
                Arith::Rational => timed::<Rational>(&ps, v).map(|(t, c)| (t, c.to_string()))?,
            };
            match &first {
                None => first = Some(cost.clone()),
                Some(c) if *c != cost => {
                    return Err(CliError::Internal(format!(
                        "trial {trial}: variant {v} cost {cost} differs from {c}"
                    )))
                }
                Some(_) => {}
            }
            totals[slot].1 += secs;
            records.push(BenchRecord {
                variant: v.to_string(),
                n: cfg.n,
                trial,
                r,
                millis: secs * 1e3,
                cost,
            });
        }
    }
    Ok(BenchReport { records, totals })
}

pub fn write_csv<W: std::io::Write>(records: &[BenchRecord], out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(|e| CliError::Input(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
