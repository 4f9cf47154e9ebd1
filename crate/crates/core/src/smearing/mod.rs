//! Test functions: mollifiers, loop and surface functions, their
//! co-primitives, finite-difference operators and Fourier transforms.

mod blob;
mod coprimitive;
mod derived;
mod fd;
mod fields;
mod loopfn;
mod mollifier;
mod oracle;
mod profile;
mod surface;

pub use blob::{Blob, BlobOneForm, BlobTwoForm};
pub use coprimitive::{
    scalar_coprimitive, LoopTransportCoprimitive, ScalarCoprimitive, Translated,
    TranslationCoprimitive,
};
pub use derived::{
    co_derivative_spectrum, AlgebraicCoprimitive, CurlSpectrum, DalembertSpectrum, HodgeDualSpectrum,
    ScaledOneForm, ScaledTwoForm,
};
pub use fd::{co_derivative_fd, curl_fd, dalembert_fd, divergence_fd};
pub use fields::{
    CBivector, OneFormField, OneFormSpectrum, Reach, TwoFormField, TwoFormSpectrum,
    CZERO_BIVECTOR,
};
pub use loopfn::{LoopSampler, LoopSmearing, LoopSpectrum};
pub use mollifier::{erf, Mollifier, GAUSSIAN_REACH};
pub use oracle::{fourier_grid_oracle, FourierGridOracle, OracleBox, OracleValue};
pub use profile::Profile;
pub use surface::{
    boundary_loop_function, centroid, cone_surface, ConeSpectrum, SurfaceSampler,
    SurfaceSmearing, SurfaceSpectrum,
};

