// SPDX-License-Identifier: Apache-2.0

//! Covering a point set with at most `kh` group-constrained hyper-rectangles
//! at minimum aggregate cost.

mod candidates;
mod complement;
mod model;
mod solver;

pub use candidates::pinned_count;
pub use complement::{
    complement_mbr, complement_of_rect, ComplementStrategy, HalfspaceSet, MbrStrategy, RankWindow, RegionIndex,
};
pub use model::{volume_cost, AggModel, Cost, CostModel, Covered, GeoRect, GroupConfig, Max, Sum, Volume};
pub use solver::{
    base_cover_cost, finalize_anchor_rect, gen_candidates_naive, gen_candidates_pigeonhole, hrcover, CoverProblem,
    CoverSolution, Variant,
};

#[cfg(test)]
mod tests;
