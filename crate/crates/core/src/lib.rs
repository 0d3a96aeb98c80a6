//! Two-mode squeezed Gaussian states decohering in squeezed thermal reservoirs.
//!
//! States are zero-mean and Gaussian, so everything is carried by 4×4
//! variance matrices in the `(η_i, η_r, ξ_i, ξ_r)` quadrature ordering with
//! the vacuum normalised to the identity.
//!
//! - [`gaussian`]: state and reservoir constructors, physicality, local reduction.
//! - [`decoherence`]: the beam-splitter channel `V ↦ t²V + r²(R_a ⊕ R_b)`.
//! - [`separability`]: Simon's functional, its closed forms, the PPT oracle and
//!   entanglement lifetimes.
//! - [`sweep`] and [`cli`]: grids over normalised time and tabular output.

pub mod cli;
pub mod decoherence;
pub mod error;
pub mod gaussian;
pub mod separability;
pub mod sweep;

pub use decoherence::{evolve, evolve_from, normalized_time, ChannelScenario, ChannelTime};
pub use error::{Error, Result};
pub use gaussian::{
    eval_characteristic, is_physical, mean_excitation, reduce_to_symmetric,
    squeezed_thermal_variance, tmss_variance, EnvironmentModeSpec, SingleModeVariance,
    SymmetricBlockForm, TwoModeSqueezedSpec, VarianceMatrix,
};
pub use separability::{
    block_delta, e_factor, lemma1_separable, monotonicity_gap, ppt_oracle, separation_time,
    simon_delta, symmetric_closed_form_product, symmetric_closed_form_separable,
    symmetric_lhs_rhs, verdict, Lifetime, MonotonicityGap, SeparabilityVerdict, SimonSides,
};
pub use sweep::{
    figure1_scenarios, run_sweep, uniform_grid, Figure1Table, SweepRequest, SweepResult,
    SweepRow, TableFormat,
};
