//! Spin entanglement of two ballistic electrons generated by exchange
//! scattering off a localized magnetic impurity at a four-rail junction.
//!
//! Two spin-up electrons enter through rails 1 and 2, scatter off the
//! impurity spin to first order in the exchange coupling, and leave through
//! rails 3 and 4. The crate computes
//!
//! - the scattered three-spin state and the reduced two-electron states for
//!   a definite or a random impurity ([`scattering`]),
//! - their concurrence and entanglement of formation ([`entanglement`]),
//! - the outcome of interfering the pair at a second beam splitter: the
//!   bunching (noise) probability and the `⟨Sz(5)Sz(6)⟩` correlation
//!   ([`detection`]),
//! - coupling sweeps and CSV output ([`sweep`]),
//! - independent brute-force reconstructions of all of the above ([`oracle`]).
//!
//! ```
//! use kondo_core::{scatter_full, concurrence, Coupling, ImpurityPreparation};
//!
//! let out = scatter_full(Coupling::new(1.0)?, &ImpurityPreparation::Down)?;
//! assert!((out.flip_probability.unwrap() - 0.8).abs() < 1e-12);
//! assert!((concurrence(&out.unconditional)? - 0.8).abs() < 1e-10);
//! # Ok::<(), kondo_core::Error>(())
//! ```

pub mod detection;
pub mod entanglement;
pub mod error;
pub mod oracle;
pub mod scattering;
pub mod spinspace;
pub mod sweep;

pub use detection::{
    bunching_probability, noiseless_witness, separable_noiseless_witness, spin_correlation_z,
    two_fermion_transform, BeamSplitter, OutcomeDistribution, ProductComponent, SeparableEnsemble,
    WitnessResult, WitnessVerdict,
};
pub use entanglement::{concurrence, entanglement_of_formation, spin_flip, EntanglementReport};
pub use error::{Error, Result};
pub use scattering::{
    born_kernel, coupling_from_parameters, scatter, scatter_full, unitary_probe, Coupling,
    ImpurityPreparation, ScatterOutcome,
};
pub use spinspace::{
    partial_trace_impurity, partial_trace_impurity_mixed, ComplexMatrix, ComplexVector, JointState,
    QubitDensity, Spin, TwoQubitDensity,
};
pub use sweep::{run_sweep, write_csv, SweepConfig, SweepRow};
