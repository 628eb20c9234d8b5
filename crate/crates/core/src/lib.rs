//! Hall sets, Hilton-Milnor decompositions and Cech homotopy groups of
//! shrinking wedges of spheres.

pub mod elements;
pub mod groups;
pub mod hall;
pub mod hilton_milnor;
pub mod infinite_sum;
pub mod random;
pub mod registry;
pub mod sphere_table;
pub mod tensor;
pub mod whitehead;

pub use groups::{FGAbelianGroup, GroupElement, GroupError, GroupExpr};
pub use hall::{GradingSequence, HallError, HallSet, HallWord};
pub use sphere_table::{Lookup, SphereGroupTable};
