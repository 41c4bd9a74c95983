//! Local moves on tangles and their application to knots.

pub(crate) mod net;
mod tangle;
mod template;
mod tree;

pub(crate) use tangle::twist_ports;
pub use tangle::{delete_component, link_bracket, linking_matrix, unlink_bracket, TangleDiagram};
pub use template::{c1_template, closure_match, double_template, move_from_tree, planar_closures, LocalMoveTemplate, Match};
pub use tree::{enumerate_trees, UniTrivalentTree};
