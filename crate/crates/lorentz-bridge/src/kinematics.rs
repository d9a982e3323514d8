//! Particle and plane-wave states and their derived kinematic quantities:
//! energy, momentum, Doppler scaling, phase and group velocity, rest-frame
//! frequency and the rest-wave frame.
//!
//! Everything is in natural units (c = 1). A massive particle state yields
//! the four-momentum (E, p) = (gamma m0, gamma m0 v); a wave state yields
//! the wave four-vector (omega, k). Light-like states get dedicated
//! constructors because E = gamma m0 degenerates to 0 * inf at v = 1.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_subluminal, Error};
use crate::minkowski::FourVector;

/// Default threshold below which a rest mass or rest frequency is treated
/// as zero when classifying states. Configurable per call site; the physics
/// fixes no scale, so this sits just above roundoff in natural units.
pub const ZERO_TOLERANCE_DEFAULT: f64 = 1e-15;

/// Fraction of omega^2 by which the invariant radicand omega^2 - |k|^2 may
/// round below zero before the state counts as corrupted rather than
/// light-like. Distinguishes roundoff from genuinely non-physical input.
pub const RADICAND_CLAMP: f64 = 1e-12;

/// Tolerance on ||v| - 1| for massless particle states.
const MASSLESS_SPEED_TOL: f64 = 1e-12;

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// A free particle: rest mass and velocity, in natural units.
///
/// Massive states require |v| < 1; massless states require |v| = 1 (to
/// within roundoff) and can only report their four-momentum through
/// [`massless_four_momentum`], which takes the energy explicitly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParticleState {
    m0: f64,
    velocity: [f64; 3],
}

impl ParticleState {
    pub fn new(m0: f64, velocity: [f64; 3]) -> Result<Self, Error> {
        if !m0.is_finite() || m0 < 0.0 {
            return Err(Error::InvalidRestMass { m0 });
        }
        for (i, &c) in velocity.iter().enumerate() {
            ensure_finite(["vx", "vy", "vz"][i], c)?;
        }
        let speed = norm3(velocity);
        if m0 > 0.0 {
            if speed >= 1.0 {
                return Err(Error::InvalidVelocity { speed });
            }
        } else if (speed - 1.0).abs() > MASSLESS_SPEED_TOL {
            return Err(Error::InvalidVelocity { speed });
        }
        Ok(Self { m0, velocity })
    }

    /// A massive particle at rest.
    pub fn rest(m0: f64) -> Result<Self, Error> {
        Self::new(m0, [0.0; 3])
    }

    pub fn rest_mass(&self) -> f64 {
        self.m0
    }

    pub fn velocity(&self) -> [f64; 3] {
        self.velocity
    }

    pub fn speed(&self) -> f64 {
        norm3(self.velocity)
    }

    /// Lorentz factor of the particle. Finite for every massive state.
    pub fn gamma(&self) -> f64 {
        let v2 = self.velocity[0] * self.velocity[0]
            + self.velocity[1] * self.velocity[1]
            + self.velocity[2] * self.velocity[2];
        1.0 / (1.0 - v2).sqrt()
    }

    /// Four-momentum (gamma m0, gamma m0 v) of a massive particle.
    ///
    /// Satisfies E^2 - |p|^2 = m0^2 to relative 1e-12 and E > 0. Rejects
    /// massless states: their energy is not determined by the mass.
    pub fn four_momentum(&self) -> Result<FourVector, Error> {
        if self.m0 == 0.0 {
            return Err(Error::MasslessMomentum);
        }
        let e = self.gamma() * self.m0;
        Ok(FourVector::from_spatial(
            e,
            [
                e * self.velocity[0],
                e * self.velocity[1],
                e * self.velocity[2],
            ],
        ))
    }
}

/// Four-momentum (E, E * direction) of a massless particle.
///
/// `direction` is normalized internally; a zero vector is rejected. The
/// result is light-like by construction.
pub fn massless_four_momentum(energy: f64, direction: [f64; 3]) -> Result<FourVector, Error> {
    ensure_finite("energy", energy)?;
    if energy <= 0.0 {
        return Err(Error::NonPositive { name: "energy", value: energy });
    }
    for (i, &c) in direction.iter().enumerate() {
        ensure_finite(["dx", "dy", "dz"][i], c)?;
    }
    let n = norm3(direction);
    if n == 0.0 {
        return Err(Error::ZeroDirection);
    }
    Ok(FourVector::from_spatial(
        energy,
        [
            energy * direction[0] / n,
            energy * direction[1] / n,
            energy * direction[2] / n,
        ],
    ))
}

/// A monochromatic plane wave: angular frequency, wave vector and an
/// opaque amplitude.
///
/// The amplitude is carried but never read by any derived quantity; every
/// formula downstream depends on (omega, k) alone. Physical states satisfy
/// |k| <= omega, i.e. phase velocity >= 1 (= c); [`WaveState::new`]
/// enforces this, [`WaveState::new_nonphysical`] skips the check for
/// counterexample experiments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveState {
    omega: f64,
    k: [f64; 3],
    amplitude: f64,
}

impl WaveState {
    pub fn new(omega: f64, k: [f64; 3]) -> Result<Self, Error> {
        Self::with_amplitude(omega, k, 1.0)
    }

    pub fn with_amplitude(omega: f64, k: [f64; 3], amplitude: f64) -> Result<Self, Error> {
        let state = Self::nonphysical_with_amplitude(omega, k, amplitude)?;
        // Allow |k| to exceed omega by roundoff only: a boosted light-like
        // wave may land a few ulps past the cone.
        let radicand = state.radicand();
        if radicand < -RADICAND_CLAMP * omega * omega {
            return Err(Error::PhaseVelocityBelowLight { omega, k_mag: norm3(k) });
        }
        Ok(state)
    }

    /// Constructor without the v_p >= c check, for building the
    /// deliberately non-physical states the case analysis rules out.
    pub fn new_nonphysical(omega: f64, k: [f64; 3]) -> Result<Self, Error> {
        Self::nonphysical_with_amplitude(omega, k, 1.0)
    }

    fn nonphysical_with_amplitude(omega: f64, k: [f64; 3], amplitude: f64) -> Result<Self, Error> {
        ensure_finite("omega", omega)?;
        if omega <= 0.0 {
            return Err(Error::NonPositive { name: "omega", value: omega });
        }
        for (i, &c) in k.iter().enumerate() {
            ensure_finite(["kx", "ky", "kz"][i], c)?;
        }
        Ok(Self { omega, k, amplitude })
    }

    /// The wave co-moving with a rest-wave frame of frequency `omega0`
    /// travelling at `velocity`: omega = gamma omega0, k = gamma omega0 v.
    ///
    /// This is the standard way to build a massive-particle wave; its
    /// [`WaveState::rest_wave_velocity`] recovers `velocity`.
    pub fn from_rest_wave(omega0: f64, velocity: [f64; 3]) -> Result<Self, Error> {
        ensure_finite("omega0", omega0)?;
        if omega0 <= 0.0 {
            return Err(Error::NonPositive { name: "omega0", value: omega0 });
        }
        for (i, &c) in velocity.iter().enumerate() {
            ensure_finite(["vx", "vy", "vz"][i], c)?;
        }
        let speed = norm3(velocity);
        ensure_subluminal(speed)?;
        let gamma = 1.0 / (1.0 - speed * speed).sqrt();
        let scale = gamma * omega0;
        Self::new(
            scale,
            [scale * velocity[0], scale * velocity[1], scale * velocity[2]],
        )
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn k(&self) -> [f64; 3] {
        self.k
    }

    pub fn k_mag(&self) -> f64 {
        norm3(self.k)
    }

    /// The opaque amplitude, returned exactly as it was stored.
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// Ordinary frequency nu = omega / 2 pi.
    pub fn frequency(&self) -> f64 {
        self.omega / TAU
    }

    /// Wavelength lambda = 2 pi / |k|. Undefined for a stationary wave.
    pub fn wavelength(&self) -> Result<f64, Error> {
        let k = self.k_mag();
        if k == 0.0 {
            return Err(Error::ZeroWaveVector);
        }
        Ok(TAU / k)
    }

    /// The wave four-vector (omega, k).
    pub fn four_wave_vector(&self) -> FourVector {
        FourVector::from_spatial(self.omega, self.k)
    }

    /// Invariant radicand omega^2 - |k|^2, factored to avoid cancellation
    /// near the light cone.
    fn radicand(&self) -> f64 {
        let k = self.k_mag();
        (self.omega - k) * (self.omega + k)
    }

    /// Rest-frame frequency omega0 = sqrt(omega^2 - |k|^2).
    ///
    /// A radicand that rounds below zero by less than
    /// [`RADICAND_CLAMP`] * omega^2 clamps to 0 (light-like); anything more
    /// negative means the state was built outside the physical region and
    /// is reported as corrupted.
    pub fn rest_frequency(&self) -> Result<f64, Error> {
        let r = self.radicand();
        if r >= 0.0 {
            Ok(r.sqrt())
        } else if r >= -RADICAND_CLAMP * self.omega * self.omega {
            Ok(0.0)
        } else {
            Err(Error::CorruptedWaveState { radicand: r })
        }
    }

    /// Phase velocity v_p = omega / |k| >= 1. Undefined when |k| = 0: that
    /// is the rest-wave frame itself.
    pub fn phase_velocity(&self) -> Result<f64, Error> {
        let k = self.k_mag();
        if k == 0.0 {
            return Err(Error::ZeroWaveVector);
        }
        Ok(self.omega / k)
    }

    /// Group velocity v_g = d omega / d |k| = |k| / omega <= 1, from the
    /// dispersion relation omega = sqrt(omega0^2 + |k|^2).
    pub fn group_velocity(&self) -> f64 {
        self.k_mag() / self.omega
    }

    /// Velocity of the frame in which k' = 0, as a 3-vector: v = k / omega.
    ///
    /// Matches the group velocity in magnitude and direction, and inverts
    /// [`WaveState::from_rest_wave`]. A light-like wave (omega0 = 0) has no
    /// such frame.
    pub fn rest_wave_velocity(&self) -> Result<[f64; 3], Error> {
        if self.rest_frequency()? == 0.0 {
            return Err(Error::LightlikeWave);
        }
        Ok([
            self.k[0] / self.omega,
            self.k[1] / self.omega,
            self.k[2] / self.omega,
        ])
    }
}

/// Outcome of the four-corner classification of a (rest mass, rest
/// frequency) pair. Exactly two corners are physically admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseClass {
    /// m0 > 0 and omega0 > 0: a massive particle paired with a wave whose
    /// phase velocity exceeds c. Admissible.
    MassiveWave,
    /// m0 > 0 but omega0 = 0: in any finite-gamma frame both omega and k
    /// vanish, which is impossible for a wave. Excluded.
    VanishingWave,
    /// m0 = 0 but omega0 > 0: in any finite-gamma frame the particle
    /// energy vanishes, which is meaningless for a particle. Excluded.
    VanishingEnergy,
    /// m0 = 0 and omega0 = 0: a light-like pair with E = |p| and
    /// omega = |k|. Admissible.
    LightlikePair,
}

impl CaseClass {
    /// Whether this corner of the (m0, omega0) space is physically
    /// admissible.
    pub fn is_physical(self) -> bool {
        matches!(self, CaseClass::MassiveWave | CaseClass::LightlikePair)
    }

    /// One-line analytic reason recorded for the excluded corners.
    pub fn exclusion_reason(self) -> Option<&'static str> {
        match self {
            CaseClass::VanishingWave => Some(
                "finite gamma forces omega = |k| = 0 in every frame: no wave exists",
            ),
            CaseClass::VanishingEnergy => Some(
                "finite gamma forces E = |p| = 0 in every frame: no particle energy exists",
            ),
            _ => None,
        }
    }
}

impl std::fmt::Display for CaseClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseClass::MassiveWave => "massive wave",
            CaseClass::VanishingWave => "vanishing wave",
            CaseClass::VanishingEnergy => "vanishing energy",
            CaseClass::LightlikePair => "lightlike pair",
        };
        write!(f, "{s}")
    }
}

/// Classifies a (rest mass, rest frequency) pair against `zero_tol`.
///
/// The classification is exhaustive and mutually exclusive: each input
/// lands in exactly one corner.
pub fn classify_case(m0: f64, omega0: f64, zero_tol: f64) -> CaseClass {
    let massive = m0 > zero_tol;
    let has_rest_frequency = omega0 > zero_tol;
    match (massive, has_rest_frequency) {
        (true, true) => CaseClass::MassiveWave,
        (true, false) => CaseClass::VanishingWave,
        (false, true) => CaseClass::VanishingEnergy,
        (false, false) => CaseClass::LightlikePair,
    }
}

/// The invariant ratio C = m0 / omega0 linking a massive particle to its
/// wave (natural units, so E0 = m0).
///
/// Division by omega0 = 0 is exactly the excluded vanishing-wave corner,
/// so it is rejected rather than producing infinity.
pub fn derive_invariant_c(m0: f64, omega0: f64) -> Result<f64, Error> {
    if !m0.is_finite() || m0 <= 0.0 {
        return Err(Error::InvalidRestMass { m0 });
    }
    ensure_finite("omega0", omega0)?;
    if omega0 <= 0.0 {
        return Err(Error::NonPositive { name: "omega0", value: omega0 });
    }
    Ok(m0 / omega0)
}

/// de Broglie wavelength lambda = 2 pi C / p for momentum magnitude `p_mag`
/// and invariant constant `invariant_c` (which plays hbar; h = 2 pi C).
pub fn de_broglie_wavelength(p_mag: f64, invariant_c: f64) -> Result<f64, Error> {
    ensure_finite("p_mag", p_mag)?;
    ensure_finite("invariant_c", invariant_c)?;
    if p_mag <= 0.0 {
        return Err(Error::NonPositive { name: "p_mag", value: p_mag });
    }
    if invariant_c <= 0.0 {
        return Err(Error::NonPositive { name: "invariant_c", value: invariant_c });
    }
    Ok(TAU * invariant_c / p_mag)
}

/// Doppler factor sqrt((1 - beta) / (1 + beta)).
///
/// A collinear boost multiplies both components of a light-like four-vector
/// by this factor; it satisfies factor(-beta) = 1 / factor(beta).
pub fn doppler_factor(beta: f64) -> Result<f64, Error> {
    ensure_subluminal(beta)?;
    Ok(((1.0 - beta) / (1.0 + beta)).sqrt())
}

/// The two frequencies an observer ascribes to a clock moving at `beta`:
/// the time-dilated inner frequency nu0 * sqrt(1 - beta^2) and the wave
/// frequency nu0 / sqrt(1 - beta^2).
///
/// Their product is nu0^2 for every beta.
pub fn frequency_transform(nu0: f64, beta: f64) -> Result<(f64, f64), Error> {
    ensure_finite("nu0", nu0)?;
    if nu0 <= 0.0 {
        return Err(Error::NonPositive { name: "nu0", value: nu0 });
    }
    ensure_subluminal(beta)?;
    let s = (1.0 - beta * beta).sqrt();
    Ok((nu0 * s, nu0 / s))
}

/// Checks the harmony of phases: a particle moving at `beta` whose inner
/// vibration has lab frequency nu_inner stays in phase with a wave of
/// frequency nu_wave and phase velocity 1/beta, evaluated at the particle
/// position x = beta t for each sample time.
///
/// Returns the maximum absolute phase mismatch over the samples; the
/// identity nu_wave (1 - beta^2) = nu_inner makes it zero in exact
/// arithmetic. Rejects beta = 0, where the phase velocity is infinite and
/// the stationary-wave operations apply instead.
///
/// The mismatch is held to an absolute tolerance well below one ulp of the
/// phases themselves (which reach ~1e4 radians at desk scale), so the two
/// phases cannot be formed as independently rounded doubles and then
/// subtracted. The difference is instead evaluated in compensated
/// double-double arithmetic, which approximates the exact-arithmetic
/// mismatch of the two phase expressions to ~1e-26.
pub fn phase_harmony_check(nu0: f64, beta: f64, t_samples: &[f64]) -> Result<f64, Error> {
    if beta == 0.0 {
        return Err(Error::StationaryParticle);
    }
    // Validates nu0 and beta; the returned frequencies also feed the
    // double-rounded cross-check below.
    frequency_transform(nu0, beta)?;

    // s = sqrt(1 - beta^2) in double-double, shared by both phases.
    let b2 = dd::two_prod(beta, beta);
    let s2 = dd::sub(dd::Dd::from(1.0), b2);
    let s = dd::sqrt(s2);

    let mut max_mismatch = 0.0f64;
    for &t in t_samples {
        ensure_finite("t", t)?;
        // inner phase / 2 pi = nu0 * s * t
        let inner = dd::mul_f64(dd::mul_f64(s, nu0), t);
        // wave phase / 2 pi = nu0 * (t - x * beta) / s, at x = beta * t
        let x = dd::two_prod(beta, t);
        let travel = dd::mul_f64(x, beta);
        let arg = dd::sub(dd::Dd::from(t), travel);
        let wave = dd::div(dd::mul_f64(arg, nu0), s);
        // The common 2 pi factor is applied after the cancellation, so its
        // own representation error cannot masquerade as a mismatch.
        let mismatch = (TAU * dd::sub(inner, wave).to_f64()).abs();
        max_mismatch = max_mismatch.max(mismatch);
    }
    Ok(max_mismatch)
}

/// Minimal double-double arithmetic (value = hi + lo, |lo| <= ulp(hi)/2)
/// for the phase-harmony comparison. Products and square roots are
/// error-free or Newton-corrected, giving ~31 significant digits.
mod dd {
    #[derive(Clone, Copy, Debug)]
    pub struct Dd {
        pub hi: f64,
        pub lo: f64,
    }

    impl From<f64> for Dd {
        fn from(x: f64) -> Self {
            Dd { hi: x, lo: 0.0 }
        }
    }

    impl Dd {
        pub fn to_f64(self) -> f64 {
            self.hi + self.lo
        }
    }

    /// Error-free sum of two doubles (Knuth two-sum).
    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let v = s - a;
        let e = (a - (s - v)) + (b - v);
        Dd { hi: s, lo: e }
    }

    /// Error-free product of two doubles via fused multiply-add.
    pub fn two_prod(a: f64, b: f64) -> Dd {
        let p = a * b;
        let e = a.mul_add(b, -p);
        Dd { hi: p, lo: e }
    }

    pub fn sub(a: Dd, b: Dd) -> Dd {
        let s = two_sum(a.hi, -b.hi);
        let lo = s.lo + a.lo - b.lo;
        two_sum(s.hi, lo)
    }

    pub fn mul_f64(a: Dd, b: f64) -> Dd {
        let p = two_prod(a.hi, b);
        let lo = p.lo + a.lo * b;
        two_sum(p.hi, lo)
    }

    pub fn div(a: Dd, b: Dd) -> Dd {
        let q0 = a.hi / b.hi;
        // r = a - q0 * b, evaluated in double-double
        let q0b = mul_f64(b, q0);
        let r = sub(a, q0b);
        let q1 = r.to_f64() / b.hi;
        two_sum(q0, q1)
    }

    /// One Newton step on top of the hardware square root.
    pub fn sqrt(a: Dd) -> Dd {
        let y0 = a.hi.sqrt();
        if y0 == 0.0 {
            return Dd::from(0.0);
        }
        let y0_sq = two_prod(y0, y0);
        let r = sub(a, y0_sq);
        let correction = r.to_f64() / (2.0 * y0);
        two_sum(y0, correction)
    }
}
