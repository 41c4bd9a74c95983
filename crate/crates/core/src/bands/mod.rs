//! Link models, chords and band descriptions.

mod description;
mod model;
mod random;
mod skeleton;

pub use description::{Attach, BandDescription, BandSpec, Chord, CrossingKind, Step, DEFAULT_SUBSET_GUARD};
pub use model::{double_link_model, link_model_c1, link_model_from_tree, LinkModel};
pub use random::{random_chord, RouteOptions};
