//! Deterministic sampling of boosts, masses and wave states, the shared
//! tolerance policy, and aggregation of suite verdicts into a
//! machine-readable report.
//!
//! Reproducibility contract: a (seed, spec) pair fully determines every
//! sampled value. Each suite draws from its own ChaCha stream keyed by a
//! fixed stream id, so adding samples to one suite never shifts another.
//! Sampled inputs are constructed rejection-free: they always satisfy the
//! type invariants of the states they build.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::kinematics::{
    doppler_factor, massless_four_momentum, phase_harmony_check, ParticleState, WaveState,
    ZERO_TOLERANCE_DEFAULT,
};
use crate::minkowski::{Axis, Boost};
use crate::report;
use crate::theorems::{
    relative_residual, verify_ashby_miller, verify_direction_lemma, verify_einstein_energy,
    verify_proportionality, verify_theorem_a, verify_theorem_b, ResidualTracker, TheoremVerdict,
};

/// How frame velocities are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaSampling {
    /// beta uniform in [-beta_max, beta_max]. The default.
    UniformBeta,
    /// Rapidity uniform in [-atanh(beta_max), atanh(beta_max)]; stresses
    /// the high-gamma corners much harder than uniform beta does.
    UniformRapidity,
}

/// Configuration of one sampling run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingSpec {
    pub seed: u64,
    pub n_samples: u64,
    /// Largest sampled |beta|; < 1 always. The default 0.99 keeps
    /// gamma <= 7.1, where doubles hold 12 significant digits through a
    /// boost; the stress profile pushes to 1 - 1e-6 (gamma ~ 707) and
    /// relies on the gamma^2 term of the tolerance scale.
    pub beta_max: f64,
    /// Interval rest masses are drawn from; the lower end may be 0.
    pub mass_range: (f64, f64),
    /// Interval rest frequencies (and generic positive scales) are drawn
    /// from; strictly positive.
    pub omega0_range: (f64, f64),
    /// Axes boosts are sampled over; non-empty subset of {x, y, z}.
    pub axes: Vec<Axis>,
    pub beta_sampling: BetaSampling,
}

impl SamplingSpec {
    /// Spec with the default desk-scale profile.
    pub fn new(seed: u64, n_samples: u64) -> Self {
        Self {
            seed,
            n_samples,
            beta_max: 0.99,
            mass_range: (0.1, 10.0),
            omega0_range: (0.1, 10.0),
            axes: Axis::ALL.to_vec(),
            beta_sampling: BetaSampling::UniformBeta,
        }
    }

    /// Stress profile: |beta| up to 1 - 1e-6, where only the rapidity
    /// representation keeps the boost arithmetic honest.
    pub fn stress(seed: u64, n_samples: u64) -> Self {
        Self {
            beta_max: 1.0 - 1e-6,
            ..Self::new(seed, n_samples)
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let fail = |reason: String| Err(Error::InvalidSamplingSpec { reason });
        if self.n_samples == 0 {
            return fail("n_samples must be at least 1".into());
        }
        if !self.beta_max.is_finite() || !(0.0..1.0).contains(&self.beta_max) {
            return fail(format!("beta_max = {} must lie in [0, 1)", self.beta_max));
        }
        let (mlo, mhi) = self.mass_range;
        if !mlo.is_finite() || !mhi.is_finite() || mlo < 0.0 || mlo > mhi || mhi <= 0.0 {
            return fail(format!("mass_range [{mlo}, {mhi}] must be a non-empty interval with 0 <= lo <= hi and hi > 0"));
        }
        let (olo, ohi) = self.omega0_range;
        if !olo.is_finite() || !ohi.is_finite() || olo <= 0.0 || olo > ohi {
            return fail(format!("omega0_range [{olo}, {ohi}] must be a non-empty strictly positive interval"));
        }
        if self.axes.is_empty() {
            return fail("axes must name at least one of x, y, z".into());
        }
        Ok(())
    }
}

/// Fixed stream ids, one per suite. Part of the reproducibility contract:
/// renumbering them changes every sampled value for a given seed.
mod streams {
    pub const THEOREM_A: u64 = 1;
    pub const PROPORTIONALITY: u64 = 2;
    pub const EINSTEIN: u64 = 3;
    pub const ASHBY_MILLER: u64 = 4;
    pub const DIRECTION_LEMMA: u64 = 5;
    pub const THEOREM_B_MASSIVE: u64 = 6;
    pub const THEOREM_B_LIGHTLIKE: u64 = 7;
    pub const THEOREM_B_VANISHING_WAVE: u64 = 8;
    pub const THEOREM_B_VANISHING_ENERGY: u64 = 9;
    pub const MASS_SHELL: u64 = 10;
    pub const WAVE_SHELL: u64 = 11;
    pub const IDENTITIES: u64 = 12;
    pub const DOPPLER: u64 = 13;
    pub const PHASE_HARMONY: u64 = 14;
}

/// Deterministic sample stream over a validated [`SamplingSpec`].
///
/// The order of draws inside each method is fixed; it is part of the
/// reproducibility contract along with the seed and stream id.
pub struct Sampler {
    rng: ChaCha8Rng,
    beta_max: f64,
    beta_sampling: BetaSampling,
    axes: Vec<Axis>,
    mass_range: (f64, f64),
    omega0_range: (f64, f64),
}

impl Sampler {
    pub fn new(spec: &SamplingSpec) -> Result<Self, Error> {
        Self::for_suite(spec, 0)
    }

    /// Sampler on the suite-specific ChaCha stream.
    pub fn for_suite(spec: &SamplingSpec, stream: u64) -> Result<Self, Error> {
        spec.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(stream);
        Ok(Self {
            rng,
            beta_max: spec.beta_max,
            beta_sampling: spec.beta_sampling,
            axes: spec.axes.clone(),
            mass_range: spec.mass_range,
            omega0_range: spec.omega0_range,
        })
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if lo == hi {
            return lo;
        }
        self.rng.random_range(lo..=hi)
    }

    /// Uniform in log space; useful for scale parameters spanning decades.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.uniform(lo.ln(), hi.ln()).exp()
    }

    /// A frame velocity in [-beta_max, beta_max], distributed per the
    /// spec's `beta_sampling` mode.
    pub fn beta(&mut self) -> f64 {
        if self.beta_max == 0.0 {
            return 0.0;
        }
        match self.beta_sampling {
            BetaSampling::UniformBeta => self.uniform(-self.beta_max, self.beta_max),
            BetaSampling::UniformRapidity => {
                let max_rapidity = self.beta_max.atanh();
                self.uniform(-max_rapidity, max_rapidity).tanh()
            }
        }
    }

    /// A nonzero frame velocity, for checks undefined at beta = 0.
    /// Returns None when beta_max = 0 leaves no nonzero velocity to draw.
    pub fn nonzero_beta(&mut self) -> Option<f64> {
        if self.beta_max == 0.0 {
            return None;
        }
        loop {
            let b = self.beta();
            if b != 0.0 {
                return Some(b);
            }
        }
    }

    pub fn axis(&mut self) -> Axis {
        let i = self.rng.random_range(0..self.axes.len());
        self.axes[i]
    }

    /// An axis-aligned boost with sampled axis and velocity.
    pub fn boost(&mut self) -> Boost {
        let axis = self.axis();
        let beta = self.beta();
        Boost::along(axis, beta).expect("sampled beta is subluminal by construction")
    }

    /// A rest mass from `mass_range`.
    pub fn mass(&mut self) -> f64 {
        self.uniform(self.mass_range.0, self.mass_range.1)
    }

    /// A strictly positive rest mass, for Case-1 constructions.
    pub fn positive_mass(&mut self) -> f64 {
        loop {
            let m = self.mass();
            if m > 0.0 {
                return m;
            }
        }
    }

    /// A rest frequency from `omega0_range` (strictly positive).
    pub fn omega0(&mut self) -> f64 {
        self.uniform(self.omega0_range.0, self.omega0_range.1)
    }

    /// A random direction of unit length.
    pub fn direction(&mut self) -> [f64; 3] {
        loop {
            let v = [
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
            ];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 1e-3 {
                return [v[0] / n, v[1] / n, v[2] / n];
            }
        }
    }

    /// A subluminal velocity: random direction, speed uniform in
    /// [0, beta_max].
    pub fn velocity(&mut self) -> [f64; 3] {
        let dir = self.direction();
        let speed = self.uniform(0.0, self.beta_max);
        [dir[0] * speed, dir[1] * speed, dir[2] * speed]
    }

    /// A matched Case-1 pair: particle and wave built at rest from sampled
    /// (m0, omega0) and carried to the same sampled velocity. Both shell
    /// invariants hold by construction.
    pub fn case1_pair(&mut self) -> (ParticleState, WaveState) {
        let m0 = self.positive_mass();
        let omega0 = self.omega0();
        let v = self.velocity();
        let particle =
            ParticleState::new(m0, v).expect("sampled Case-1 inputs satisfy the invariants");
        let wave = WaveState::from_rest_wave(omega0, v)
            .expect("sampled Case-1 inputs satisfy the invariants");
        (particle, wave)
    }
}

/// Knobs for a verification run beyond the sampling spec itself.
#[derive(Clone, Debug)]
pub struct RunOptions {
    /// The invariant proportionality constant C (plays hbar; default 1).
    pub invariant_c: f64,
    /// Relative tolerance every suite is held to.
    pub tolerance: f64,
    /// Exponent for the Doppler-scaling suite. 1 is the true relation;
    /// anything else is a negative control that must fail.
    pub exponent: f64,
    /// Momentum perturbation injected into every pair construction.
    /// 0 is the honest run; anything sizeable is a negative control.
    pub perturbation: f64,
    /// Threshold for the zero classification in the four-case analysis.
    pub zero_tol: f64,
    /// Subset of suites to run; `None` runs everything.
    pub suites: Option<Vec<SuiteKey>>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            invariant_c: 1.0,
            tolerance: 1e-12,
            exponent: 1.0,
            perturbation: 0.0,
            zero_tol: ZERO_TOLERANCE_DEFAULT,
            suites: None,
        }
    }
}

impl RunOptions {
    fn validate(&self) -> Result<(), Error> {
        if !self.invariant_c.is_finite() || self.invariant_c <= 0.0 {
            return Err(Error::NonPositive { name: "invariant_c", value: self.invariant_c });
        }
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(Error::NonPositive { name: "tolerance", value: self.tolerance });
        }
        crate::error::ensure_finite("exponent", self.exponent)?;
        crate::error::ensure_finite("perturbation", self.perturbation)?;
        if !self.zero_tol.is_finite() || self.zero_tol < 0.0 {
            return Err(Error::NonPositive { name: "zero_tol", value: self.zero_tol });
        }
        Ok(())
    }
}

/// Names of the selectable verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteKey {
    TheoremA,
    TheoremB,
    DirectionLemma,
    AshbyMiller,
    Einstein,
    Proportionality,
    Kinematics,
}

impl std::str::FromStr for SuiteKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "theorem-a" => Ok(SuiteKey::TheoremA),
            "theorem-b" => Ok(SuiteKey::TheoremB),
            "lemma" => Ok(SuiteKey::DirectionLemma),
            "ashby-miller" => Ok(SuiteKey::AshbyMiller),
            "einstein" => Ok(SuiteKey::Einstein),
            "proportionality" => Ok(SuiteKey::Proportionality),
            "kinematics" => Ok(SuiteKey::Kinematics),
            other => Err(format!(
                "unknown suite `{other}`: expected all, theorem-a, theorem-b, lemma, \
                 ashby-miller, einstein, proportionality or kinematics"
            )),
        }
    }
}

/// The machine-readable outcome of a verification run.
///
/// `overall_pass` is the conjunction of the individual verdicts. The wall
/// time is the one field that legitimately differs between two runs with
/// the same seed; every other numeric field is bit-reproducible.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub config: SamplingSpec,
    pub invariant_c: f64,
    pub tolerance: f64,
    pub verdicts: Vec<TheoremVerdict>,
    pub overall_pass: bool,
    pub wall_time_seconds: f64,
}

impl VerificationReport {
    /// JSON rendering with 17-significant-digit doubles.
    pub fn to_json(&self) -> String {
        report::to_json(self)
    }
}

/// Runs every suite with default options: the check the CLI exposes as
/// `verify --suite all`.
pub fn run_all(
    spec: &SamplingSpec,
    invariant_c: f64,
    tolerance: f64,
) -> Result<VerificationReport, Error> {
    run_suites(
        spec,
        &RunOptions { invariant_c, tolerance, ..RunOptions::default() },
    )
}

/// Runs the selected suites and assembles the report.
///
/// Argument validation fails fast; verifier errors inside a suite become
/// failed verdicts with the diagnostic in their notes, so one broken suite
/// never aborts the rest of the run.
pub fn run_suites(spec: &SamplingSpec, opts: &RunOptions) -> Result<VerificationReport, Error> {
    spec.validate()?;
    opts.validate()?;
    let started = Instant::now();
    let include =
        |key: SuiteKey| opts.suites.as_ref().is_none_or(|keys| keys.contains(&key));

    let mut verdicts = Vec::new();
    if include(SuiteKey::TheoremA) {
        verdicts.push(suite_theorem_a(spec, opts));
    }
    if include(SuiteKey::Proportionality) {
        verdicts.push(suite_proportionality(spec, opts));
    }
    if include(SuiteKey::Einstein) {
        verdicts.push(suite_einstein(spec, opts));
    }
    if include(SuiteKey::AshbyMiller) {
        verdicts.push(suite_ashby_miller(spec, opts));
    }
    if include(SuiteKey::DirectionLemma) {
        verdicts.push(suite_direction_lemma(spec, opts));
    }
    if include(SuiteKey::TheoremB) {
        verdicts.extend(suite_theorem_b(spec, opts));
    }
    if include(SuiteKey::Kinematics) {
        verdicts.extend(suite_kinematics(spec, opts));
    }

    let overall_pass = verdicts.iter().all(|v| v.pass);
    Ok(VerificationReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: spec.clone(),
        invariant_c: opts.invariant_c,
        tolerance: opts.tolerance,
        verdicts,
        overall_pass,
        wall_time_seconds: started.elapsed().as_secs_f64(),
    })
}

/// Folds per-sample verdicts, converting the first verifier error into a
/// failed verdict instead of aborting.
fn fold_samples<F>(n: u64, suite: &str, tolerance: f64, mut one: F) -> TheoremVerdict
where
    F: FnMut() -> Result<TheoremVerdict, Error>,
{
    let mut acc: Option<TheoremVerdict> = None;
    for _ in 0..n {
        match one() {
            Ok(v) => {
                acc = Some(match acc.take() {
                    Some(prev) => prev.merge(v),
                    None => v,
                });
            }
            Err(e) => return TheoremVerdict::from_error(suite, tolerance, &e),
        }
    }
    acc.expect("n_samples >= 1 is enforced by validation")
}

fn suite_theorem_a(spec: &SamplingSpec, opts: &RunOptions) -> TheoremVerdict {
    let mut sampler = Sampler::for_suite(spec, streams::THEOREM_A)
        .expect("spec validated by run_suites");
    fold_samples(spec.n_samples, "theorem-a", opts.tolerance, || {
        let m0 = sampler.mass();
        let boost = sampler.boost();
        verify_theorem_a(
            m0,
            opts.invariant_c,
            &[boost],
            opts.perturbation,
            opts.tolerance,
        )
    })
}

fn suite_proportionality(spec: &SamplingSpec, opts: &RunOptions) -> TheoremVerdict {
    let mut sampler = Sampler::for_suite(spec, streams::PROPORTIONALITY)
        .expect("spec validated by run_suites");
    fold_samples(spec.n_samples, "proportionality", opts.tolerance, || {
        let m0 = sampler.positive_mass();
        let v = sampler.velocity();
        let particle = ParticleState::new(m0, v)?;
        let b = particle.four_momentum()?;
        let a = b.scale(opts.invariant_c);
        let a = crate::minkowski::FourVector::new(
            a.t(),
            a.x() + opts.perturbation,
            a.y(),
            a.z(),
        );
        let boost = sampler.boost();
        verify_proportionality(a, b, opts.invariant_c, &[boost], opts.tolerance)
    })
}

fn suite_einstein(spec: &SamplingSpec, opts: &RunOptions) -> TheoremVerdict {
    let mut sampler =
        Sampler::for_suite(spec, streams::EINSTEIN).expect("spec validated by run_suites");
    fold_samples(spec.n_samples, "einstein-energy", opts.tolerance, || {
        let m0 = sampler.positive_mass();
        let v = sampler.velocity();
        verify_einstein_energy(m0, &[v], opts.perturbation, opts.tolerance)
    })
}

fn suite_ashby_miller(spec: &SamplingSpec, opts: &RunOptions) -> TheoremVerdict {
    let mut sampler = Sampler::for_suite(spec, streams::ASHBY_MILLER)
        .expect("spec validated by run_suites");
    let betas: Vec<f64> = (0..spec.n_samples).map(|_| sampler.beta()).collect();
    match verify_ashby_miller(opts.exponent, &betas, opts.tolerance) {
        Ok(v) => v,
        Err(e) => TheoremVerdict::from_error("ashby-miller", opts.tolerance, &e),
    }
}

fn suite_direction_lemma(spec: &SamplingSpec, opts: &RunOptions) -> TheoremVerdict {
    let mut sampler = Sampler::for_suite(spec, streams::DIRECTION_LEMMA)
        .expect("spec validated by run_suites");
    let omega0 = sampler.omega0();
    // The exact-zero probe rides along with the sampled velocities.
    let mut betas: Vec<f64> = (0..spec.n_samples).map(|_| sampler.beta()).collect();
    betas.push(0.0);
    match verify_direction_lemma(omega0, &betas, opts.perturbation, opts.tolerance) {
        Ok(v) => v,
        Err(e) => TheoremVerdict::from_error("direction-lemma", opts.tolerance, &e),
    }
}

fn suite_theorem_b(spec: &SamplingSpec, opts: &RunOptions) -> Vec<TheoremVerdict> {
    let corners: [(&str, u64, bool, bool); 4] = [
        ("theorem-b (massive wave)", streams::THEOREM_B_MASSIVE, true, true),
        ("theorem-b (lightlike pair)", streams::THEOREM_B_LIGHTLIKE, false, false),
        ("theorem-b (vanishing wave)", streams::THEOREM_B_VANISHING_WAVE, true, false),
        ("theorem-b (vanishing energy)", streams::THEOREM_B_VANISHING_ENERGY, false, true),
    ];
    corners
        .iter()
        .map(|&(title, stream, massive, has_omega0)| {
            let mut sampler =
                Sampler::for_suite(spec, stream).expect("spec validated by run_suites");
            let mut verdict = fold_samples(spec.n_samples, title, opts.tolerance, || {
                let m0 = if massive { sampler.positive_mass() } else { 0.0 };
                let omega0 = if has_omega0 { sampler.omega0() } else { 0.0 };
                let boost = sampler.boost();
                verify_theorem_b(
                    m0,
                    omega0,
                    &[boost],
                    opts.zero_tol,
                    opts.perturbation,
                    opts.tolerance,
                )
            });
            verdict.suite_name = title.to_string();
            verdict
        })
        .collect()
}

/// The sampled invariant suites for the kinematics layer: shell
/// preservation, the v_p v_g identity, rest-wave recovery, Doppler scaling
/// of light-like states and the harmony of phases.
fn suite_kinematics(spec: &SamplingSpec, opts: &RunOptions) -> Vec<TheoremVerdict> {
    vec![
        suite_mass_shell(spec, opts),
        suite_wave_shell(spec, opts),
        suite_identities(spec, opts),
        suite_doppler(spec, opts),
        suite_phase_harmony(spec, opts),
    ]
}

/// Shared tolerance scale for shell checks: max(1, |expected norm|,
/// gamma^2 * Euclidean norm^2 of the untransformed vector). The gamma^2
/// term is what lets the stress profile pass at the same nominal
/// tolerance.
fn shell_scale(expected: f64, gamma: f64, euclid_sq: f64) -> f64 {
    expected.abs().max(gamma * gamma * euclid_sq).max(1.0)
}

fn suite_mass_shell(spec: &SamplingSpec, opts: &RunOptions) -> TheoremVerdict {
    let mut sampler = Sampler::for_suite(spec, streams::MASS_SHELL)
        .expect("spec validated by run_suites");
    let mut tracker = ResidualTracker::new("mass-shell", opts.tolerance);
    for _ in 0..spec.n_samples {
        let m0 = sampler.positive_mass();
        let v = sampler.velocity();
        let particle = ParticleState::new(m0, v).expect("sampled inputs are valid");
        let p = particle.four_momentum().expect("massive state");
        let boost = sampler.boost();
        let boosted = boost.apply(&p);
        let lhs = boosted.norm_sq();
        let rhs = m0 * m0;
        let scale = shell_scale(rhs, boost.gamma(), euclid_sq(&p));
        let rel = (lhs - rhs).abs() / scale;
        tracker.record((lhs - rhs).abs(), rel, || {
            std::collections::BTreeMap::from([
                ("m0".to_string(), m0),
                ("beta".to_string(), boost.beta()),
                ("axis_index".to_string(), boost.axis().index() as f64),
            ])
        });
    }
    tracker.finish(None)
}

fn suite_wave_shell(spec: &SamplingSpec, opts: &RunOptions) -> TheoremVerdict {
    let mut sampler = Sampler::for_suite(spec, streams::WAVE_SHELL)
        .expect("spec validated by run_suites");
    let mut tracker = ResidualTracker::new("wave-shell", opts.tolerance);
    for _ in 0..spec.n_samples {
        let omega0 = sampler.omega0();
        let v = sampler.velocity();
        let wave = WaveState::from_rest_wave(omega0, v).expect("sampled inputs are valid");
        let k = wave.four_wave_vector();
        let boost = sampler.boost();
        let boosted = boost.apply(&k);
        let lhs = boosted.norm_sq();
        let rhs = omega0 * omega0;
        let scale = shell_scale(rhs, boost.gamma(), euclid_sq(&k));
        let rel = (lhs - rhs).abs() / scale;
        tracker.record((lhs - rhs).abs(), rel, || {
            std::collections::BTreeMap::from([
                ("omega0".to_string(), omega0),
                ("beta".to_string(), boost.beta()),
                ("axis_index".to_string(), boost.axis().index() as f64),
            ])
        });
    }
    tracker.finish(None)
}

fn euclid_sq(v: &crate::minkowski::FourVector) -> f64 {
    v.t() * v.t() + v.x() * v.x() + v.y() * v.y() + v.z() * v.z()
}

fn suite_identities(spec: &SamplingSpec, opts: &RunOptions) -> TheoremVerdict {
    let mut sampler = Sampler::for_suite(spec, streams::IDENTITIES)
        .expect("spec validated by run_suites");
    let mut tracker = ResidualTracker::new("kinematic-identities", opts.tolerance);
    for _ in 0..spec.n_samples {
        let omega0 = sampler.omega0();
        let v = sampler.velocity();
        let wave = WaveState::from_rest_wave(omega0, v).expect("sampled inputs are valid");
        // v_p * v_g = 1 whenever the phase velocity exists at all.
        let vp_vg = if wave.k_mag() > 0.0 {
            let vp = wave.phase_velocity().expect("|k| > 0");
            relative_residual(vp * wave.group_velocity(), 1.0)
        } else {
            0.0
        };
        // the rest-wave frame recovers the generating velocity
        let recovered = wave
            .rest_wave_velocity()
            .expect("omega0 > 0 keeps the wave timelike");
        let recovery = (0..3)
            .map(|i| relative_residual(recovered[i], v[i]))
            .fold(0.0, f64::max);
        let rel = vp_vg.max(recovery);
        tracker.record(rel, rel, || {
            std::collections::BTreeMap::from([
                ("omega0".to_string(), omega0),
                ("vx".to_string(), v[0]),
                ("vy".to_string(), v[1]),
                ("vz".to_string(), v[2]),
            ])
        });
    }
    tracker.finish(None)
}

fn suite_doppler(spec: &SamplingSpec, opts: &RunOptions) -> TheoremVerdict {
    let mut sampler =
        Sampler::for_suite(spec, streams::DOPPLER).expect("spec validated by run_suites");
    let mut tracker = ResidualTracker::new("doppler", opts.tolerance);
    for _ in 0..spec.n_samples {
        let energy = sampler.omega0();
        let axis = sampler.axis();
        let beta = sampler.beta();
        let p = massless_four_momentum(energy, axis.unit()).expect("sampled inputs are valid");
        let boost = Boost::along(axis, beta).expect("sampled beta is subluminal");
        let boosted = boost.apply(&p);
        let factor = doppler_factor(beta).expect("sampled beta is subluminal");
        let expected = factor * energy;
        // The boost forms gamma * E internally, so that is the magnitude
        // the rounding error scales with; at high gamma the cosh - sinh
        // cancellation leaves an absolute error of a few ulps of it.
        let scale = (boost.gamma() * energy).max(expected.abs()).max(1.0);
        let rel = ((boosted.t() - expected).abs() / scale)
            .max((boosted.spatial_component(axis) - expected).abs() / scale);
        tracker.record(rel, rel, || {
            std::collections::BTreeMap::from([
                ("energy".to_string(), energy),
                ("beta".to_string(), beta),
                ("axis_index".to_string(), axis.index() as f64),
            ])
        });
    }
    tracker.finish(None)
}

fn suite_phase_harmony(spec: &SamplingSpec, opts: &RunOptions) -> TheoremVerdict {
    let mut sampler = Sampler::for_suite(spec, streams::PHASE_HARMONY)
        .expect("spec validated by run_suites");
    let t_grid: Vec<f64> = (0..=32).map(|j| 100.0 * f64::from(j) / 32.0).collect();
    let mut tracker = ResidualTracker::new("phase-harmony", opts.tolerance);
    for _ in 0..spec.n_samples {
        let nu0 = sampler.omega0();
        let Some(beta) = sampler.nonzero_beta() else {
            // beta_max = 0 leaves nothing to check: the comparison is
            // undefined for a stationary particle.
            tracker.record(0.0, 0.0, std::collections::BTreeMap::new);
            continue;
        };
        let mismatch =
            phase_harmony_check(nu0, beta, &t_grid).expect("sampled inputs are valid");
        // Relative to the largest phase on the grid, so large nu0 samples
        // are judged by the same yardstick as small ones.
        let max_phase =
            std::f64::consts::TAU * nu0 / (1.0 - beta * beta).sqrt() * 100.0;
        let rel = mismatch / max_phase.max(1.0);
        tracker.record(mismatch, rel, || {
            std::collections::BTreeMap::from([
                ("nu0".to_string(), nu0),
                ("beta".to_string(), beta),
            ])
        });
    }
    tracker.finish(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec(seed: u64) -> SamplingSpec {
        SamplingSpec::new(seed, 25)
    }

    #[test]
    fn sampler_is_reproducible() {
        let spec = small_spec(7);
        let mut a = Sampler::for_suite(&spec, 3).unwrap();
        let mut b = Sampler::for_suite(&spec, 3).unwrap();
        for _ in 0..100 {
            assert_eq!(a.beta().to_bits(), b.beta().to_bits());
            assert_eq!(a.mass().to_bits(), b.mass().to_bits());
        }
    }

    #[test]
    fn different_streams_differ() {
        let spec = small_spec(7);
        let mut a = Sampler::for_suite(&spec, 1).unwrap();
        let mut b = Sampler::for_suite(&spec, 2).unwrap();
        let xs: Vec<f64> = (0..8).map(|_| a.beta()).collect();
        let ys: Vec<f64> = (0..8).map(|_| b.beta()).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn zero_beta_max_yields_identity_boosts() {
        let spec = SamplingSpec { beta_max: 0.0, ..small_spec(1) };
        let mut sampler = Sampler::new(&spec).unwrap();
        for _ in 0..10 {
            let b = sampler.boost();
            assert_eq!(b.beta(), 0.0);
        }
    }

    #[test]
    fn sampled_case1_pairs_satisfy_shells() {
        let spec = small_spec(11);
        let mut sampler = Sampler::new(&spec).unwrap();
        for _ in 0..50 {
            let (particle, wave) = sampler.case1_pair();
            let p = particle.four_momentum().unwrap();
            let m0 = particle.rest_mass();
            assert!(
                (p.norm_sq() - m0 * m0).abs() <= 1e-12 * (m0 * m0).max(1.0),
                "mass shell violated"
            );
            let k = wave.four_wave_vector();
            let w0 = wave.rest_frequency().unwrap();
            assert!(
                (k.norm_sq() - w0 * w0).abs() <= 1e-10 * (w0 * w0).max(1.0),
                "wave shell violated: {} vs {}",
                k.norm_sq(),
                w0 * w0
            );
        }
    }

    #[test]
    fn sampled_betas_respect_the_cap() {
        for sampling in [BetaSampling::UniformBeta, BetaSampling::UniformRapidity] {
            let spec = SamplingSpec { beta_sampling: sampling, ..small_spec(3) };
            let mut sampler = Sampler::new(&spec).unwrap();
            for _ in 0..200 {
                assert!(sampler.beta().abs() <= spec.beta_max);
            }
        }
    }

    #[test]
    fn spec_validation_rejects_bad_inputs() {
        let mut spec = small_spec(1);
        spec.n_samples = 0;
        assert!(spec.validate().is_err());

        let mut spec = small_spec(1);
        spec.beta_max = 1.0;
        assert!(spec.validate().is_err());

        let mut spec = small_spec(1);
        spec.mass_range = (5.0, 1.0);
        assert!(spec.validate().is_err());

        let mut spec = small_spec(1);
        spec.omega0_range = (0.0, 1.0);
        assert!(spec.validate().is_err());

        let mut spec = small_spec(1);
        spec.axes = vec![];
        assert!(spec.validate().is_err());
    }

    #[test]
    fn run_all_smoke_has_every_suite() {
        let spec = SamplingSpec::new(42, 1);
        let report = run_all(&spec, 1.0, 1e-12).unwrap();
        // 5 single-verdict suites + 4 theorem-b corners + 5 kinematics
        assert_eq!(report.verdicts.len(), 14);
        assert!(report.overall_pass, "smoke run must pass: {:#?}", report.verdicts);
        let names: Vec<&str> =
            report.verdicts.iter().map(|v| v.suite_name.as_str()).collect();
        for expected in [
            "theorem-a",
            "proportionality",
            "einstein-energy",
            "ashby-miller",
            "direction-lemma",
            "theorem-b (massive wave)",
            "theorem-b (lightlike pair)",
            "theorem-b (vanishing wave)",
            "theorem-b (vanishing energy)",
            "mass-shell",
            "wave-shell",
            "kinematic-identities",
            "doppler",
            "phase-harmony",
        ] {
            assert!(names.contains(&expected), "missing suite {expected}");
        }
    }

    #[test]
    fn identical_seeds_give_identical_verdicts() {
        let spec = SamplingSpec::new(42, 50);
        let a = run_all(&spec, 1.0, 1e-12).unwrap();
        let b = run_all(&spec, 1.0, 1e-12).unwrap();
        assert_eq!(a.verdicts, b.verdicts);
        assert_eq!(report::to_json(&a.verdicts), report::to_json(&b.verdicts));
    }

    #[test]
    fn different_seeds_give_different_samples() {
        let a = run_all(&SamplingSpec::new(1, 50), 1.0, 1e-12).unwrap();
        let b = run_all(&SamplingSpec::new(2, 50), 1.0, 1e-12).unwrap();
        assert_ne!(
            report::to_json(&a.verdicts),
            report::to_json(&b.verdicts),
            "residual fields should differ across seeds"
        );
    }

    #[test]
    fn full_run_passes_at_desk_scale() {
        let spec = SamplingSpec::new(20260810, 500);
        let report = run_all(&spec, 1.0, 1e-12).unwrap();
        for v in &report.verdicts {
            assert!(v.pass, "{} failed: residual {}", v.suite_name, v.max_rel_residual);
        }
        assert!(report.overall_pass);
    }

    #[test]
    fn stress_profile_passes_with_gamma_scaled_tolerance() {
        let spec = SamplingSpec::stress(99, 500);
        let report = run_suites(
            &spec,
            &RunOptions {
                suites: Some(vec![SuiteKey::Kinematics]),
                ..RunOptions::default()
            },
        )
        .unwrap();
        for v in &report.verdicts {
            assert!(v.pass, "{} failed under stress: {}", v.suite_name, v.max_rel_residual);
        }
    }

    #[test]
    fn perturbation_flips_overall_pass() {
        let spec = SamplingSpec::new(5, 20);
        let report = run_suites(
            &spec,
            &RunOptions { perturbation: 0.1, ..RunOptions::default() },
        )
        .unwrap();
        assert!(!report.overall_pass);
        // conjunction law: at least one verdict is false, and each failing
        // verdict carries its witness
        for v in report.verdicts.iter().filter(|v| !v.pass) {
            assert!(v.witness.is_some(), "{} fails without a witness", v.suite_name);
        }
    }

    #[test]
    fn injected_exponent_fails_only_ashby_miller() {
        let spec = SamplingSpec::new(5, 20);
        let report = run_suites(
            &spec,
            &RunOptions { exponent: 2.0, ..RunOptions::default() },
        )
        .unwrap();
        assert!(!report.overall_pass);
        for v in &report.verdicts {
            if v.suite_name == "ashby-miller" {
                assert!(!v.pass);
            } else {
                assert!(v.pass, "{} unexpectedly failed", v.suite_name);
            }
        }
    }

    #[test]
    fn suite_selection_limits_the_report() {
        let spec = SamplingSpec::new(5, 5);
        let report = run_suites(
            &spec,
            &RunOptions {
                suites: Some(vec![SuiteKey::TheoremA]),
                ..RunOptions::default()
            },
        )
        .unwrap();
        assert_eq!(report.verdicts.len(), 1);
        assert_eq!(report.verdicts[0].suite_name, "theorem-a");
    }

    #[test]
    fn rapidity_uniform_mode_passes_too() {
        let spec = SamplingSpec {
            beta_sampling: BetaSampling::UniformRapidity,
            ..SamplingSpec::new(77, 200)
        };
        let report = run_all(&spec, 1.0, 1e-12).unwrap();
        assert!(report.overall_pass);
    }
}
