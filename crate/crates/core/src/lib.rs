//! Strong structural controllability (SSC) of diffusively-coupled networks.
//!
//! - [`graph`]: validated structured networks and subsets.
//! - [`ssc`]: the exact dedicated-node checker and SSC-node sets.
//! - [`forcing`]: the same questions answered by forcing closure.
//! - [`oracle`]: numeric sampling of weighted realizations.
//! - [`pactus`]: path/cycle decompositions and structural shortcuts.
//! - [`composer`]: stage-wise minimum input placement.
//! - [`document`], [`dot`]: JSON documents and DOT rendering.

pub mod composer;
pub mod document;
pub mod dot;
pub mod forcing;
pub mod graph;
pub mod oracle;
pub mod pactus;
pub mod ssc;
pub mod treecover;

pub use composer::{
    min_inputs, minimality_audit, verify_placement, ComposerConfig, ComposerError, InputPlacement,
    OrderPolicy, StageRecord, StageType, TieBreak,
};
pub use graph::{
    build_network, GraphError, InputAttachment, NodeId, StructuredNetwork, SubsetAlpha,
};
pub use pactus::{decompose, ComponentKind, ComponentSeed, PactusDecomposition, PactusError};
pub use ssc::{evaluate_ssc, is_ssc_exact, ssc_nodes, SscError, SscReport};
