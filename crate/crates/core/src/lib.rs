//! Edge deletion to {claw, diamond}-free graphs: exact solvers, a
//! polynomial compression to an annotated instance, the CNF and 3-SAT legs
//! that turn it back into a plain instance, and the 3-SAT hardness gadgets.

pub mod domino;
pub mod format;
pub mod generators;
pub mod graph;
pub mod kernelizer;
pub mod obstructions;
pub mod reductions;
pub mod sat;
pub mod solvers;

pub use graph::{Edge, EdgeSet, Graph, GraphError, Vertex};
pub use obstructions::{Obstruction, ObstructionKind};
