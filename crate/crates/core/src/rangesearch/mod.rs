// SPDX-License-Identifier: Apache-2.0

//! Search structures shared by the covering and diameter algorithms.

mod ext;
mod halfspace;
mod range_tree;

pub use ext::{Ext, Interval};
pub use halfspace::{build_halfspace_index, HalfspaceIndex, KeySpace, PosLookup, Side};
pub(crate) use halfspace::{build_presorted, membership};
pub use range_tree::{QueryAnswer, QueryKind, RangeTree};
