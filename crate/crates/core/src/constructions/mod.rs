//! The extremal families as explicit graphs, and the path-merging
//! transformation on linear forests.

mod family;
mod partition;

pub use family::{construct, FamilySpec, GraphClass};
pub use partition::{
    h_op, h_p, transform, transform_moves, transformation_chain_to, PathPartition, TransformStep,
};
