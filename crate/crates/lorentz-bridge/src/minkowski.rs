//! Four-vector algebra under the (+,-,-,-) metric and axis-aligned
//! Lorentz boosts.
//!
//! Boosts are stored as rapidity, not velocity: collinear composition is
//! plain addition, and the boost matrix entries come from `cosh`/`sinh`
//! directly, which stays well-conditioned as |beta| -> 1. Everything here
//! is a pure function on immutable values.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_subluminal, Error};

/// Diagonal of the metric tensor: timelike-positive signature (+,-,-,-).
pub const METRIC_SIGNATURE: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// A spatial axis. Boosts in this crate are axis-aligned; the general
/// (rotating) composition is out of scope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// All three axes, in a fixed order.
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Index of this axis into a spatial 3-vector.
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    /// Unit 3-vector along the axis.
    pub fn unit(self) -> [f64; 3] {
        let mut v = [0.0; 3];
        v[self.index()] = 1.0;
        v
    }
}

impl std::str::FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(format!("unknown axis `{other}`: expected x, y or z")),
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::X => write!(f, "x"),
            Axis::Y => write!(f, "y"),
            Axis::Z => write!(f, "z"),
        }
    }
}

/// A four-vector (t, x, y, z) in natural units (c = 1).
///
/// The time component carries whatever quantity the vector houses: E/c for
/// a four-momentum, omega/c for a wave four-vector. Components are always
/// finite; constructors reject NaN and infinity, and boosts by |beta| < 1
/// preserve finiteness.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    t: f64,
    x: f64,
    y: f64,
    z: f64,
}

impl FourVector {
    /// Builds a four-vector from its components.
    ///
    /// Panics if any component is NaN or infinite; finiteness is a type
    /// invariant, so violating it is a programming error, not a runtime
    /// condition. Use [`FourVector::try_new`] for unvalidated input.
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self::try_new(t, x, y, z).expect("four-vector components must be finite")
    }

    /// Fallible constructor for components of unknown provenance.
    pub fn try_new(t: f64, x: f64, y: f64, z: f64) -> Result<Self, Error> {
        ensure_finite("t", t)?;
        ensure_finite("x", x)?;
        ensure_finite("y", y)?;
        ensure_finite("z", z)?;
        Ok(Self { t, x, y, z })
    }

    /// The zero four-vector.
    pub fn zero() -> Self {
        Self { t: 0.0, x: 0.0, y: 0.0, z: 0.0 }
    }

    /// A purely timelike vector (t, 0, 0, 0).
    pub fn rest(t: f64) -> Self {
        Self::new(t, 0.0, 0.0, 0.0)
    }

    /// Builds a four-vector from its time component and a spatial 3-vector.
    pub fn from_spatial(t: f64, spatial: [f64; 3]) -> Self {
        Self::new(t, spatial[0], spatial[1], spatial[2])
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Spatial part as a 3-vector.
    pub fn spatial(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Spatial component along the given axis.
    pub fn spatial_component(&self, axis: Axis) -> f64 {
        self.spatial()[axis.index()]
    }

    /// Euclidean norm of the spatial part.
    pub fn spatial_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Minkowski inner product under (+,-,-,-).
    pub fn dot(&self, other: &FourVector) -> f64 {
        self.t * other.t - self.x * other.x - self.y * other.y - self.z * other.z
    }

    /// Squared Minkowski norm t^2 - x^2 - y^2 - z^2.
    ///
    /// Positive for timelike vectors, zero for light-like ones. This is the
    /// quantity every boost preserves.
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    /// Scales every component by `factor`.
    pub fn scale(&self, factor: f64) -> Self {
        Self::new(
            self.t * factor,
            self.x * factor,
            self.y * factor,
            self.z * factor,
        )
    }
}

impl std::ops::Add for FourVector {
    type Output = FourVector;

    fn add(self, rhs: FourVector) -> FourVector {
        FourVector::new(
            self.t + rhs.t,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl std::ops::Sub for FourVector {
    type Output = FourVector;

    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector::new(
            self.t - rhs.t,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl std::ops::Mul<f64> for FourVector {
    type Output = FourVector;

    fn mul(self, rhs: f64) -> FourVector {
        self.scale(rhs)
    }
}

impl std::ops::Neg for FourVector {
    type Output = FourVector;

    fn neg(self) -> FourVector {
        self.scale(-1.0)
    }
}

impl std::fmt::Display for FourVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.t, self.x, self.y, self.z)
    }
}

/// A pure Lorentz boost along one spatial axis, stored as rapidity.
///
/// The rapidity phi = atanh(beta) is additive under collinear composition
/// and yields the boost matrix entries gamma = cosh(phi), gamma*beta =
/// sinh(phi) without forming 1 - beta^2. Construction rejects |beta| >= 1,
/// so applying a boost can never fail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Boost {
    axis: Axis,
    rapidity: f64,
}

/// Sign-symmetric inverse hyperbolic tangent.
///
/// The standard library evaluates atanh as 0.5 * ln_1p(2x / (1 - x)),
/// which is a few ulps for x >= 0 but loses ~1e-13 relative accuracy as
/// x -> -1, where the ln_1p argument lands next to -1. Evaluating at |x|
/// keeps the sensitive 1 - |x| subtraction exact (Sterbenz) and restores
/// few-ulp accuracy at both ends of the velocity range.
fn atanh_symmetric(x: f64) -> f64 {
    x.abs().atanh().copysign(x)
}

impl Boost {
    /// Boost into a frame moving with velocity `beta` (as a fraction of c)
    /// along `axis`. Rejects |beta| >= 1.
    pub fn along(axis: Axis, beta: f64) -> Result<Self, Error> {
        ensure_subluminal(beta)?;
        Ok(Self { axis, rapidity: atanh_symmetric(beta) })
    }

    /// Boost from a rapidity value. Any finite rapidity is a valid boost.
    pub fn from_rapidity(axis: Axis, rapidity: f64) -> Result<Self, Error> {
        ensure_finite("rapidity", rapidity)?;
        Ok(Self { axis, rapidity })
    }

    /// The identity boost (beta = 0) along `axis`.
    pub fn identity(axis: Axis) -> Self {
        Self { axis, rapidity: 0.0 }
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    /// Rapidity phi = atanh(beta).
    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    /// Rapidity as a 3-vector: phi on the boost axis, zero elsewhere.
    pub fn rapidity_vec(&self) -> [f64; 3] {
        let mut v = [0.0; 3];
        v[self.axis.index()] = self.rapidity;
        v
    }

    /// Frame velocity beta = tanh(phi), strictly inside (-1, 1).
    pub fn beta(&self) -> f64 {
        self.rapidity.tanh()
    }

    /// Frame velocity as a 3-vector.
    pub fn beta_vec(&self) -> [f64; 3] {
        let mut v = [0.0; 3];
        v[self.axis.index()] = self.beta();
        v
    }

    /// Lorentz factor gamma = cosh(phi) >= 1.
    pub fn gamma(&self) -> f64 {
        self.rapidity.cosh()
    }

    /// The inverse boost: same axis, negated rapidity.
    pub fn inverse(&self) -> Self {
        Self { axis: self.axis, rapidity: -self.rapidity }
    }

    /// Composes two collinear boosts by adding rapidities.
    ///
    /// The equivalent velocity obeys relativistic velocity addition
    /// (beta1 + beta2) / (1 + beta1*beta2). Rejects boosts on different
    /// axes: general composition involves a rotation and is out of scope.
    pub fn compose(&self, other: &Boost) -> Result<Self, Error> {
        if self.axis != other.axis {
            return Err(Error::NonCollinearBoosts {
                first: self.axis,
                second: other.axis,
            });
        }
        Ok(Self {
            axis: self.axis,
            rapidity: self.rapidity + other.rapidity,
        })
    }

    /// Applies the boost to a four-vector.
    ///
    /// With ch = cosh(phi), sh = sinh(phi) and a the boost axis:
    /// t' = ch*t - sh*v_a, v_a' = ch*v_a - sh*t. Components orthogonal to
    /// the axis pass through bit-identically.
    pub fn apply(&self, v: &FourVector) -> FourVector {
        let ch = self.rapidity.cosh();
        let sh = self.rapidity.sinh();
        let mut spatial = v.spatial();
        let a = spatial[self.axis.index()];
        let t = ch * v.t() - sh * a;
        spatial[self.axis.index()] = ch * a - sh * v.t();
        FourVector::from_spatial(t, spatial)
    }
}

impl std::fmt::Display for Boost {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "boost[{} axis, beta = {}]", self.axis, self.beta())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn norm_sq_of_rest_vector_is_t_squared() {
        assert_eq!(FourVector::new(1.0, 0.0, 0.0, 0.0).norm_sq(), 1.0);
    }

    #[test]
    fn norm_sq_timelike_example() {
        // 1.25^2 - 0.75^2 = 1.5625 - 0.5625 = 1.0
        let v = FourVector::new(1.25, 0.75, 0.0, 0.0);
        assert_relative_eq!(v.norm_sq(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn norm_sq_of_lightlike_vector_is_zero() {
        assert_eq!(FourVector::new(1.0, 1.0, 0.0, 0.0).norm_sq(), 0.0);
    }

    #[test]
    fn identity_boost_is_exact() {
        let v = FourVector::new(1.0, 0.0, 0.0, 0.0);
        let b = Boost::along(Axis::X, 0.0).unwrap();
        assert_eq!(b.apply(&v), v);
    }

    #[test]
    fn boost_of_rest_vector_along_x() {
        // gamma(0.6) = 1/sqrt(0.64) = 1.25 exactly.
        let v = FourVector::new(1.0, 0.0, 0.0, 0.0);
        let b = Boost::along(Axis::X, 0.6).unwrap();
        let out = b.apply(&v);
        assert_relative_eq!(out.t(), 1.25, max_relative = 1e-15);
        assert_relative_eq!(out.x(), -0.75, max_relative = 1e-15);
        assert_eq!(out.y(), 0.0);
        assert_eq!(out.z(), 0.0);
        // mass shell: 1.25^2 - 0.75^2 = 1
        assert_relative_eq!(out.norm_sq(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn boost_of_lightlike_vector_is_doppler_scaling() {
        // sqrt(0.4/1.6) = 0.5 applied to both components.
        let v = FourVector::new(1.0, 1.0, 0.0, 0.0);
        let out = Boost::along(Axis::X, 0.6).unwrap().apply(&v);
        assert_relative_eq!(out.t(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(out.x(), 0.5, max_relative = 1e-14);
    }

    #[test]
    fn boost_along_y_of_rest_vector() {
        let v = FourVector::new(1.0, 0.0, 0.0, 0.0);
        let out = Boost::along(Axis::Y, 0.6).unwrap().apply(&v);
        assert_relative_eq!(out.t(), 1.25, max_relative = 1e-15);
        assert_eq!(out.x(), 0.0);
        assert_relative_eq!(out.y(), -0.75, max_relative = 1e-15);
        assert_eq!(out.z(), 0.0);
    }

    #[test]
    fn identity_boost_along_y_passes_through() {
        let v = FourVector::new(1.0, 0.0, 2.0, 0.0);
        let out = Boost::along(Axis::Y, 0.0).unwrap().apply(&v);
        assert_eq!(out, v);
    }

    #[test]
    fn boost_along_z_leaves_x_untouched() {
        // gamma(0.8) = 5/3; t' = 25/6, z' = -10/3.
        let v = FourVector::new(2.5, 1.5, 0.0, 0.0);
        let out = Boost::along(Axis::Z, 0.8).unwrap().apply(&v);
        assert_relative_eq!(out.t(), 25.0 / 6.0, max_relative = 1e-14);
        assert_eq!(out.x(), 1.5);
        assert_eq!(out.y(), 0.0);
        assert_relative_eq!(out.z(), -10.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn superluminal_boost_is_rejected() {
        assert!(matches!(
            Boost::along(Axis::X, 1.0),
            Err(Error::SuperluminalFrame { .. })
        ));
        assert!(matches!(
            Boost::along(Axis::X, -1.5),
            Err(Error::SuperluminalFrame { .. })
        ));
        assert!(Boost::along(Axis::X, f64::NAN).is_err());
    }

    #[test]
    fn composing_with_identity_preserves_rapidity() {
        let a = Boost::from_rapidity(Axis::X, 0.7).unwrap();
        let id = Boost::identity(Axis::X);
        assert_eq!(id.compose(&a).unwrap().rapidity(), 0.7);
    }

    #[test]
    fn composition_obeys_velocity_addition() {
        // (0.6 + 0.6) / (1 + 0.36) = 15/17
        let b = Boost::along(Axis::X, 0.6).unwrap();
        let c = b.compose(&b).unwrap();
        assert_relative_eq!(c.beta(), 15.0 / 17.0, max_relative = 1e-15);
    }

    #[test]
    fn composition_with_inverse_is_identity() {
        let b = Boost::along(Axis::X, 0.6).unwrap();
        let c = b.compose(&b.inverse()).unwrap();
        assert_eq!(c.beta(), 0.0);
        assert_eq!(c.rapidity(), 0.0);
    }

    #[test]
    fn non_collinear_composition_is_rejected() {
        let bx = Boost::along(Axis::X, 0.3).unwrap();
        let by = Boost::along(Axis::Y, 0.3).unwrap();
        assert!(matches!(
            bx.compose(&by),
            Err(Error::NonCollinearBoosts { .. })
        ));
    }

    #[test]
    fn gamma_is_at_least_one_and_matches_beta() {
        for beta in [-0.99, -0.5, 0.0, 0.3, 0.9] {
            let b = Boost::along(Axis::X, beta).unwrap();
            assert!(b.gamma() >= 1.0);
            assert_relative_eq!(b.beta(), beta, max_relative = 1e-15);
            assert_relative_eq!(
                b.gamma(),
                1.0 / (1.0 - beta * beta).sqrt(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn non_finite_components_are_rejected() {
        assert!(FourVector::try_new(f64::NAN, 0.0, 0.0, 0.0).is_err());
        assert!(FourVector::try_new(0.0, f64::INFINITY, 0.0, 0.0).is_err());
    }

    #[test]
    #[should_panic(expected = "finite")]
    fn new_panics_on_nan() {
        let _ = FourVector::new(f64::NAN, 0.0, 0.0, 0.0);
    }

    #[test]
    fn metric_signature_is_timelike_positive() {
        assert_eq!(METRIC_SIGNATURE, [1.0, -1.0, -1.0, -1.0]);
    }

    #[test]
    fn rapidity_is_sign_symmetric_bitwise() {
        for beta in [1e-12, 0.3, 0.6, 0.99, 0.9999018356192689, 1.0 - 1e-6] {
            let plus = Boost::along(Axis::X, beta).unwrap().rapidity();
            let minus = Boost::along(Axis::X, -beta).unwrap().rapidity();
            assert_eq!(plus.to_bits(), (-minus).to_bits(), "beta = {beta}");
        }
    }

    #[test]
    fn boost_of_lightlike_state_agrees_with_doppler_near_the_cone() {
        // A blueshift boost near |beta| = 1: the rapidity must be accurate
        // enough that e^(-phi) and sqrt((1-beta)/(1+beta)) agree to a few
        // ulps of the gamma-scaled magnitude, at both signs of beta.
        for beta in [0.9999018356192689, -0.9999018356192689, 1.0 - 1e-6, -(1.0 - 1e-6)] {
            let energy = 8.469577;
            let v = FourVector::new(energy, energy, 0.0, 0.0);
            let boost = Boost::along(Axis::X, beta).unwrap();
            let out = boost.apply(&v);
            let factor = ((1.0 - beta) / (1.0 + beta)).sqrt();
            let expected = factor * energy;
            let scale = (boost.gamma() * energy).max(expected);
            assert!(
                (out.t() - expected).abs() <= 1e-14 * scale,
                "beta {beta}: {} vs {expected}",
                out.t()
            );
        }
    }
}
