//! Smeared commutators and two-point functions of generalized free field
//! pairs, and the experiments built on them.

mod engine;
mod experiments;
mod identity;
mod report;
mod wightman;

pub use engine::{
    alternate_apex, check_loop_pair, intrinsic_commutator, smeared_field_commutator,
    CommutatorOptions,
};
pub use experiments::{
    auto_width, extract_z, gaussian_pair, homology_invariance, kappa_profile, mass_gap_sweep,
    normalization_scaling_check, standard_deformations, verify_linking_proportionality,
    DeformationRow, LinkingRow, LinkingTable, MassGapTable, MassRow, ScalingReport,
    TorusGeometry, MARGIN_PER_WIDTH,
};
pub use identity::{dalembert_curl_identity_check, IdentityReport};
pub use report::{CommutatorReport, Ratio};
pub use wightman::{
    check_wightman_positivity, cross_model, two_point_function, PositivityReport,
    TrialSmearings, TwoPointValue,
};
