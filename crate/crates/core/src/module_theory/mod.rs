//! Modules over truncated vertex operator algebras: adjoint, Fock and
//! contragredient modules, semidirect products and intertwining operators.

mod adjoint;
mod axioms;
mod contragredient;
mod fock_module;
mod intertwiner;
mod ops;
mod semidirect;
mod traits;

pub use adjoint::AdjointModule;
pub use axioms::{verify_contragredient, verify_module_axioms};
pub use contragredient::ContragredientModule;
pub use fock_module::FockModule;
pub use intertwiner::Intertwiners;
pub use ops::{integer_weight, module_mode_action, module_primed_action, module_virasoro, module_virasoro_power, skew_mode_action};
pub use semidirect::SemidirectVOA;
pub use traits::VoaModule;
