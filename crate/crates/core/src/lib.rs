//! Stack layouts of directed acyclic graphs.
//!
//! A stack layout is a linear extension of the DAG together with an
//! assignment of edges to pages such that no two edges on the same page
//! cross. The crate provides recognition of outerplanar and planar 3-tree
//! DAG classes, constructive orders with bounded twist, page assignment,
//! exact stack numbers through a SAT encoding, and graph generators.

pub mod constructive;
pub mod extensions;
pub mod generators;
pub mod graph;
pub mod layout;
pub mod order;
pub mod pages;
pub mod recognition;
pub mod sat;
pub mod search;
pub mod twist;

pub use graph::{Dag, DagViolation, Edge, ParseError};
pub use layout::{validate_layout, LayoutViolation, StackLayout};
pub use order::{LinearOrder, PartLabel, PartitionedOrder};
pub use twist::{max_twist, max_twist_bruteforce, TwistCertificate};
