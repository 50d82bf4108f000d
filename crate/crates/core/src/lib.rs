//! Unit groups of F₂G for finite 2-groups of order at most 64, with
//! constructive decompositions of their unitary subgroups.

pub mod algebra;
pub mod complement;
pub mod group;
pub mod groupspec;
pub mod involution;
pub mod linalg;
pub mod report;
pub mod theorems;
pub mod unitgroup;

pub use algebra::{AlgebraElement, AlgebraError, Augmentation, GroupAlgebra};
pub use group::{GroupError, GroupId, GroupTable, SubgroupSet};
pub use involution::{AntiAutomorphism, HypothesisError, InvolutionKind, Theorem1Instance, Theorem2Instance};
pub use unitgroup::{ExhaustiveBound, UnitError, UnitSet};
pub use groupspec::{parse_group_spec, GroupSpec, GroupSpecError};
pub use report::{DecompositionReport, VerifyOptions};
pub use theorems::{verify_theorem1, verify_theorem2, TheoremError};
