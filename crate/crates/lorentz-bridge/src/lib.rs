//! Relativistic wave-particle kinematics with a property-based
//! verification harness.
//!
//! The library works in natural units (c = 1) and is organized in four
//! layers:
//!
//!   * [`minkowski`]: four-vectors, the (+,-,-,-) inner product and
//!     numerically stable axis-aligned Lorentz boosts stored as rapidity.
//!   * [`kinematics`]: particle and plane-wave states with every derived
//!     quantity: energy, momentum, Doppler factor, phase/group velocity,
//!     rest-frame frequency, the rest-wave frame and the four-case
//!     classification of the (rest mass, rest frequency) plane.
//!   * [`theorems`]: executable verifiers that hold the proportionality
//!     laws E = C omega and p = C k against sampled frame changes and
//!     report residuals, witnesses and pass/fail verdicts.
//!   * [`harness`]: deterministic seeded sampling, the tolerance policy
//!     and aggregation of verdicts into a JSON [`VerificationReport`].
//!
//! Everything is a pure function over immutable values; the whole API is
//! safe for unrestricted concurrent use.
//!
//! ```
//! use lorentz_bridge::{Axis, Boost, FourVector};
//!
//! // A rest four-momentum viewed from a frame moving at 0.6 c.
//! let p = FourVector::new(1.0, 0.0, 0.0, 0.0);
//! let boost = Boost::along(Axis::X, 0.6)?;
//! let moving = boost.apply(&p);
//! assert!((moving.t() - 1.25).abs() < 1e-12);
//! assert!((moving.norm_sq() - p.norm_sq()).abs() < 1e-12);
//! # Ok::<(), lorentz_bridge::Error>(())
//! ```

pub mod error;
pub mod harness;
pub mod kinematics;
pub mod minkowski;
pub mod report;
pub mod theorems;

pub use error::Error;
pub use harness::{
    run_all, run_suites, BetaSampling, RunOptions, Sampler, SamplingSpec, SuiteKey,
    VerificationReport,
};
pub use kinematics::{
    classify_case, de_broglie_wavelength, derive_invariant_c, doppler_factor,
    frequency_transform, massless_four_momentum, phase_harmony_check, CaseClass, ParticleState,
    WaveState,
};
pub use minkowski::{Axis, Boost, FourVector, METRIC_SIGNATURE};
pub use theorems::{
    ashby_miller_residual, relative_residual, verify_ashby_miller, verify_direction_lemma,
    verify_einstein_energy, verify_proportionality, verify_theorem_a, verify_theorem_b,
    TheoremVerdict, Witness,
};
