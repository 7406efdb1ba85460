//! Class recognition: outerplanar peeling, planar 3-tree elimination,
//! planarity checks and class tags.

pub mod augment;
pub mod classify;
pub mod outerplanar;
pub mod planarity;
pub mod three_tree;

pub use augment::{augment_outerplanar, AugmentError};
pub use classify::{classify, find_base, is_maximal_outerplanar, ClassTags, OdagClass};
pub use outerplanar::{
    outer_edges, peel_outerplanar, ConstructionSequence, PeelError, StellationKind, StellationOp,
};
pub use planarity::{st_upward_check, upward_planar_small, UpwardCheckError};
pub use three_tree::{peel_3tree, Insertion, OrientedTriangle, ThreeTreeDecomposition, ThreeTreeError};
