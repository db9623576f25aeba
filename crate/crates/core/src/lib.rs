//! Totally umbilical leaf families in the hyperbolic upper half-plane.
//!
//! Leaves orthogonal to a geodesic or hypercycle transversal are encoded by
//! their boundary angle `β` (mean curvature `h = −cos β`). A route
//! `t ↦ h(t)` along the transversal is checked for whether its leaves form
//! a foliation, the leaf family is synthesized, audited for pairwise
//! disjointness, and rendered to SVG.

// `!(x < b)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod exec;
pub mod foliation;
pub mod halfplane;
pub mod io;
pub mod leaf;
pub mod lemma_check;
pub mod render;
pub mod route;

pub use error::{Error, Result};
pub use exec::Exec;
pub use halfplane::{HPoint, Transversal};
pub use leaf::{Leaf, LeafKind};
pub use route::{Route, Sample, Verdict};
