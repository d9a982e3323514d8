use crate::minkowski::Axis;

/// Error type shared by every fallible operation in the crate.
///
/// All variants describe rejected inputs; no operation fails after its
/// arguments have been validated.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A frame velocity with |beta| >= 1 was requested.
    #[error("frame speed beta = {beta} is unphysical: |beta| must be strictly below 1")]
    SuperluminalFrame { beta: f64 },

    /// A numeric input was NaN or infinite.
    #[error("input `{name}` = {value} is not a finite real")]
    NonFinite { name: &'static str, value: f64 },

    /// Boost composition was attempted across different axes.
    #[error("cannot compose boosts along {first:?} and {second:?}: only collinear composition is supported")]
    NonCollinearBoosts { first: Axis, second: Axis },

    /// A rest mass outside [0, inf) was supplied.
    #[error("rest mass m0 = {m0} must be non-negative and finite")]
    InvalidRestMass { m0: f64 },

    /// A particle velocity incompatible with its rest mass was supplied.
    #[error("particle speed |v| = {speed} is invalid: massive states need |v| < 1, massless states |v| = 1")]
    InvalidVelocity { speed: f64 },

    /// `four_momentum` was called on a massless state; energy cannot be
    /// derived from the mass there.
    #[error("four-momentum of a massless state is underdetermined: supply the energy via `massless_four_momentum`")]
    MasslessMomentum,

    /// A quantity that must be strictly positive was zero or negative.
    #[error("`{name}` = {value} must be strictly positive")]
    NonPositive { name: &'static str, value: f64 },

    /// A direction vector with zero length was supplied.
    #[error("direction vector has zero length; a propagation direction is required")]
    ZeroDirection,

    /// Wave construction with |k| > omega, i.e. phase velocity below c.
    #[error("wave with omega = {omega}, |k| = {k_mag} has phase velocity below 1 (= c); |k| <= omega is required")]
    PhaseVelocityBelowLight { omega: f64, k_mag: f64 },

    /// Phase velocity of a stationary wave (|k| = 0) is undefined.
    #[error("|k| = 0: phase velocity is undefined for a stationary wave (this is the rest-wave frame)")]
    ZeroWaveVector,

    /// The rest-wave frame of a light-like wave does not exist.
    #[error("a light-like wave (omega0 = 0) has no rest-wave frame")]
    LightlikeWave,

    /// A wave state whose invariant radicand is negative beyond roundoff.
    #[error("wave state is corrupted: omega^2 - |k|^2 = {radicand} is negative beyond the roundoff clamp")]
    CorruptedWaveState { radicand: f64 },

    /// Phase-harmony comparison needs a moving particle.
    #[error("beta = 0: the phase-harmony comparison needs a moving particle (v_p would be infinite)")]
    StationaryParticle,

    /// A sampling specification violated its invariants.
    #[error("invalid sampling spec: {reason}")]
    InvalidSamplingSpec { reason: String },
}

/// Rejects non-finite inputs with a named error.
pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<(), Error> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { name, value })
    }
}

/// Rejects frame speeds outside (-1, 1).
pub(crate) fn ensure_subluminal(beta: f64) -> Result<(), Error> {
    if !beta.is_finite() || beta.abs() >= 1.0 {
        Err(Error::SuperluminalFrame { beta })
    } else {
        Ok(())
    }
}
