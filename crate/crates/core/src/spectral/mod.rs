//! Källén–Lehmann data: the tensor kernel, mass measures, Hodge duality
//! and the reduction of spectral integrals to mass shells.

mod model;
mod shell;
mod tensor;
mod threeform;

pub use model::{FieldPairModel, MassComponent, ShellTerm};
pub use shell::{
    mass_shell_reduce, reduce_two_level, reduce_two_level_scaled, shell_sum, shell_sum_scaled, Reduced, ShellGrid, ShellReduction, ShellSum,
    DEFAULT_CUTOFF_TOLERANCE, TAIL_TOLERANCE,
};
pub use tensor::{
    contract_full, contract_momentum, hodge_dual, hodge_dual_complex, levi_civita,
    levi_civita_mixed, minkowski_dot_c, q_tensor, structure_contractions, Rank4,
    TensorStructure,
};
pub use threeform::{three_form_divergence, BlobThreeForm, ThreeFormDivergence};
