//! Sliced diagrams, colored networks, and the fast evaluators.
//!
//! Everything here lives in Morse position: a diagram or network is a word
//! of horizontal slices read bottom to top, each slice acting at a strand
//! (or cable) position. [`sliced`] handles user-facing diagrams — links and
//! embedded graphs with arbitrary-valence vertices — including the text and
//! JSON formats. [`net`] handles colored networks: cables of a fixed color
//! joined by trivalent nodes, the common currency between the brute-force
//! oracle in [`crate::tl`] and the fast evaluators in [`eval`].

mod eval;
mod net;
mod sliced;

pub use eval::{eval_pair, eval_planar, eval_single, eval_single_oriented, FactorOrientation};
pub use net::{ColoredNetwork, CrossingInfo, EdgeEnd, NetSlice, NodeInfo};
pub use sliced::{DiagramCrossing, DiagramKind, Slice, SlicedDiagram, VertexInfo};

use serde::{Deserialize, Serialize};

/// Over/under sense of a crossing. `Pos` is the Kauffman positive crossing,
/// expanding as `A·id + A⁻¹·hook`; `Neg` is its mirror.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CrossingSign {
    Pos,
    Neg,
}

impl CrossingSign {
    pub fn flipped(self) -> Self {
        match self {
            CrossingSign::Pos => CrossingSign::Neg,
            CrossingSign::Neg => CrossingSign::Pos,
        }
    }
}
