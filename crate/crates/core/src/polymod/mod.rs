//! Polynomial functors evaluated on `k^n`, realised as modules over `S(n,d)`.

mod functors;
mod hom;
mod module;
mod tensor;

pub use functors::{
    assemble, coords_in, general_costandard, general_standard, restrict_map, simple_dim_sym, simple_general,
    DeRhamKoszul,
};
pub use hom::{dual_regular, hom_dim, hom_space, iso_test, regular_module, IsoResult, ISO_ENUM_BOUND};
pub use module::{CochainComplex, Label, LabelKind, Module, ModuleMap};
pub use tensor::{
    canonical, de_rham, koszul, omega_module, slot_quotient, tensor_power_module, SlotKind, TensorModule,
};
