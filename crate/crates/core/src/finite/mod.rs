//! Finite groups, their group algebras, and the fixed-vector tower `H_q^0`.

pub mod group;
pub mod rep;
pub mod tower;

pub use group::FiniteGroup;
pub use rep::{Matrix, ModuleRep};
pub use tower::{
    augmentation_ideal, augmentation_powers, commutator_in_square, hq0, hq0_direct, hq0_tower, ideal_tower,
    perfect_check, sigma_ideal, stabilization_report, StabilizationReport, Verdict,
};
