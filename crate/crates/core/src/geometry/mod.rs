//! Minkowski-space vectors, closed loops, surfaces and causal predicates.

mod builders;
mod causal;
mod loops;
mod surface;
mod vector;

pub use builders::{hopf_pair, torus_link_pair};
pub use causal::{
    causal_homotopy, causal_projection, is_spatial, is_time_zero, loop_separation_margin,
    separation_margin, spacelike_separated, spatial_distance, CAUSAL_SAMPLES,
};
pub use loops::{ParamLoop, Reparam, PANEL_ORDER};
pub use surface::{ParamSurface, SurfaceNode};
pub use vector::{
    cross3, det3, dot3, minkowski_inner, norm3, sub3, wedge, Bivector, FourVector, METRIC,
};
