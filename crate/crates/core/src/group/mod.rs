//! Finite groups: matrix groups listed in full, subgroup calculus over
//! element indices, coset extensions and subgroup classes.

mod classes;
mod enumerate;
mod extension;
pub mod finite;
mod mat;

use thiserror::Error;

pub use classes::{subgroup_classes, SubgroupClass, SubgroupLattice};
pub use enumerate::{enumerate, EnumeratedGroup, DEFAULT_GROUP_BOUND};
pub use extension::{Extension, QuotientView};
pub use finite::{FiniteGroup, Subgroup, TableGroup};
pub use mat::{GMat, MatSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group too large: more than {bound} elements (reached {reached})")]
    TooLarge { bound: usize, reached: usize },
    #[error("generator is not invertible")]
    NotInvertible,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("too many subgroup classes (more than {0})")]
    TooManyClasses(usize),
    #[error("group of order {0} too large for full subgroup enumeration")]
    LatticeTooLarge(usize),
}
