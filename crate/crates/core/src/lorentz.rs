//! Real 4×4 Lorentz-group arithmetic.
//!
//! Conventions: metric signature (+,−,−,−), component order (t, x, y, z),
//! natural units with c = 1. Matrices act on column four-vectors, the row
//! index being the output component.
//!
//! The Wigner rotation of a massive particle is `W(Λ, p) = L(Λp)⁻¹ · Λ · L(p)`,
//! with `L(p)` the pure (rotationless) standard boost taking `(m, 0, 0, 0)`
//! to `p`.

use std::f64::consts::PI;
use std::ops::Mul;

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

use crate::error::{Error, Result};

/// Relative tolerance for the mass-shell condition.
pub const ON_SHELL_TOLERANCE: f64 = 1e-10;

/// Baseline bound on the boost residual `|W₀ᵢ|`, `|Wᵢ₀|` of a composed little-group element.
pub const LITTLE_GROUP_TOLERANCE: f64 = 1e-8;

/// Tolerance used when validating externally supplied Lorentz and rotation matrices.
const GROUP_TOLERANCE: f64 = 1e-9;

/// Minkowski metric `diag(+1, −1, −1, −1)`.
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

/// A real four-vector `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector(Vector4<f64>);

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector(Vector4::new(t, x, y, z))
    }

    /// The on-shell four-momentum `(√(m² + |p|²), p)` of a particle of mass `mass`.
    pub fn on_shell(mass: f64, momentum: Vector3<f64>) -> Result<Self> {
        check_mass(mass)?;
        let energy = (mass * mass + momentum.norm_squared()).sqrt();
        Ok(FourVector(Vector4::new(
            energy, momentum.x, momentum.y, momentum.z,
        )))
    }

    /// Rest-frame momentum `(m, 0, 0, 0)`.
    pub fn at_rest(mass: f64) -> Result<Self> {
        check_mass(mass)?;
        Ok(FourVector::new(mass, 0.0, 0.0, 0.0))
    }

    pub fn t(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> Vector3<f64> {
        Vector3::new(self.0[1], self.0[2], self.0[3])
    }

    pub fn components(&self) -> &Vector4<f64> {
        &self.0
    }

    /// `t² − x² − y² − z²`.
    pub fn minkowski_norm_sq(&self) -> f64 {
        let v = &self.0;
        v[0] * v[0] - v[1] * v[1] - v[2] * v[2] - v[3] * v[3]
    }

    /// Mass-shell test, relative to the larger of `t²` and `m²`.
    pub fn is_on_shell(&self, mass: f64) -> bool {
        let scale = (self.t() * self.t()).max(mass * mass);
        self.t() > 0.0
            && (self.minkowski_norm_sq() - mass * mass).abs() <= ON_SHELL_TOLERANCE * scale
    }

    fn check_on_shell(&self, mass: f64) -> Result<()> {
        check_mass(mass)?;
        if self.is_on_shell(mass) {
            Ok(())
        } else {
            Err(Error::OffShellMomentum {
                norm_sq: self.minkowski_norm_sq(),
                mass_sq: mass * mass,
            })
        }
    }

    /// Componentwise comparison, relative to the larger time component (at least 1).
    pub fn approx_eq(&self, other: &FourVector, tol: f64) -> bool {
        let scale = self.t().abs().max(other.t().abs()).max(1.0);
        (self.0 - other.0).amax() <= tol * scale
    }
}

fn check_mass(mass: f64) -> Result<()> {
    if mass > 0.0 && mass.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidMass(mass))
    }
}

/// A proper orthochronous Lorentz transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix(Matrix4<f64>);

impl LorentzMatrix {
    pub fn identity() -> Self {
        LorentzMatrix(Matrix4::identity())
    }

    /// Validates `ΛᵀgΛ = g`, `det Λ = +1` and `Λ₀₀ ≥ 1`.
    pub fn from_matrix(m: Matrix4<f64>) -> Result<Self> {
        let candidate = LorentzMatrix(m);
        let defect = candidate
            .metric_defect()
            .max((m.determinant() - 1.0).abs())
            .max((1.0 - m[(0, 0)]).max(0.0));
        if defect.is_finite() && defect <= GROUP_TOLERANCE * m.amax().powi(2).max(1.0) {
            Ok(candidate)
        } else {
            Err(Error::NotLorentz { defect })
        }
    }

    /// Embeds a spatial rotation.
    pub fn rotation(rotation: &Rotation3) -> Self {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(rotation.matrix());
        LorentzMatrix(m)
    }

    /// Pure boost along `axis` with rapidity `rapidity`.
    pub fn boost_from_rapidity(axis: Vector3<f64>, rapidity: f64) -> Result<Self> {
        let norm = axis.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroAxis);
        }
        let n = axis / norm;
        let (gamma, gamma_beta) = (rapidity.cosh(), rapidity.sinh());
        let mut m = Matrix4::identity();
        m[(0, 0)] = gamma;
        for i in 0..3 {
            m[(0, i + 1)] = gamma_beta * n[i];
            m[(i + 1, 0)] = gamma_beta * n[i];
            for j in 0..3 {
                m[(i + 1, j + 1)] += (gamma - 1.0) * n[i] * n[j];
            }
        }
        Ok(LorentzMatrix(m))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// `Λ⁻¹ = g Λᵀ g`.
    pub fn inverse(&self) -> Self {
        let g = metric();
        LorentzMatrix(g * self.0.transpose() * g)
    }

    pub fn apply(&self, p: &FourVector) -> FourVector {
        apply(self, p)
    }

    /// Largest entry of `ΛᵀgΛ − g`.
    pub fn metric_defect(&self) -> f64 {
        let g = metric();
        (self.0.transpose() * g * self.0 - g).amax()
    }
}

impl Mul for LorentzMatrix {
    type Output = LorentzMatrix;

    fn mul(self, rhs: LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * rhs.0)
    }
}

impl Mul for &LorentzMatrix {
    type Output = LorentzMatrix;

    fn mul(self, rhs: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * rhs.0)
    }
}

/// A spatial rotation by `angle` (right-hand rule) about the unit vector `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3 {
    axis: Vector3<f64>,
    angle: f64,
    matrix: Matrix3<f64>,
}

impl Rotation3 {
    pub fn identity() -> Self {
        Rotation3 {
            axis: Vector3::z(),
            angle: 0.0,
            matrix: Matrix3::identity(),
        }
    }

    /// Rodrigues construction. The angle is wrapped into (−π, π].
    pub fn from_axis_angle(axis: Vector3<f64>, angle: f64) -> Result<Self> {
        let norm = axis.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroAxis);
        }
        let axis = axis / norm;
        let angle = wrap_angle(angle);
        Ok(Rotation3 {
            axis,
            angle,
            matrix: rodrigues(&axis, angle),
        })
    }

    /// Extracts axis and angle from an orthogonal matrix with unit determinant.
    pub fn from_matrix(m: Matrix3<f64>) -> Result<Self> {
        let defect = (m * m.transpose() - Matrix3::identity())
            .amax()
            .max((m.determinant() - 1.0).abs());
        if !(defect <= GROUP_TOLERANCE) {
            return Err(Error::NotARotation { defect });
        }
        Ok(Self::from_matrix_unchecked(&m))
    }

    /// Axis-angle extraction without validation; the stored matrix is rebuilt
    /// from the extracted axis and angle, so it is orthogonal to rounding.
    pub(crate) fn from_matrix_unchecked(m: &Matrix3<f64>) -> Self {
        let (axis, angle) = axis_angle(m);
        Rotation3 {
            axis,
            angle,
            matrix: rodrigues(&axis, angle),
        }
    }

    pub fn axis(&self) -> Vector3<f64> {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.matrix
    }

    /// `angle · axis`.
    pub fn rotation_vector(&self) -> Vector3<f64> {
        self.axis * self.angle
    }

    pub fn inverse(&self) -> Self {
        Rotation3 {
            axis: self.axis,
            angle: wrap_angle(-self.angle),
            matrix: self.matrix.transpose(),
        }
    }
}

impl Mul for Rotation3 {
    type Output = Rotation3;

    fn mul(self, rhs: Rotation3) -> Rotation3 {
        Rotation3::from_matrix_unchecked(&(self.matrix * rhs.matrix))
    }
}

fn wrap_angle(angle: f64) -> f64 {
    let wrapped = (angle + PI).rem_euclid(2.0 * PI) - PI;
    if wrapped <= -PI {
        wrapped + 2.0 * PI
    } else {
        wrapped
    }
}

fn rodrigues(axis: &Vector3<f64>, angle: f64) -> Matrix3<f64> {
    let (s, c) = angle.sin_cos();
    let k = axis.cross_matrix();
    Matrix3::identity() + k * s + k * k * (1.0 - c)
}

/// Angle in [0, π] and the matching unit axis. The antisymmetric part gives
/// `sin θ · n`; near θ = π it vanishes and the axis comes from the symmetric part.
fn axis_angle(m: &Matrix3<f64>) -> (Vector3<f64>, f64) {
    let w = 0.5
        * Vector3::new(
            m[(2, 1)] - m[(1, 2)],
            m[(0, 2)] - m[(2, 0)],
            m[(1, 0)] - m[(0, 1)],
        );
    let cos = (0.5 * (m.trace() - 1.0)).clamp(-1.0, 1.0);
    let sin = w.norm();
    let angle = sin.atan2(cos);
    if sin == 0.0 && cos > 0.0 {
        return (Vector3::z(), 0.0);
    }
    if cos < 0.0 && sin < 1e-4 {
        let sym = 0.5 * (m + m.transpose()) - Matrix3::identity() * cos;
        let k = (0..3)
            .max_by(|&a, &b| sym[(a, a)].total_cmp(&sym[(b, b)]))
            .unwrap_or(2);
        let mut axis = sym.column(k).into_owned().normalize();
        if axis.dot(&w) < 0.0 {
            axis = -axis;
        }
        return (axis, angle);
    }
    (w / sin, angle)
}

/// Rotationless boost with velocity `velocity` (fraction of c); the rapidity is
/// `atanh(|v|)` along `v̂`.
pub fn boost(velocity: Vector3<f64>) -> Result<LorentzMatrix> {
    let speed = velocity.norm();
    if !(speed < 1.0) {
        return Err(Error::VelocityNotSubluminal { speed });
    }
    if speed == 0.0 {
        return Ok(LorentzMatrix::identity());
    }
    LorentzMatrix::boost_from_rapidity(velocity, speed.atanh())
}

/// Pure boost `L(p)` with `L(p)·(m, 0, 0, 0) = p`.
pub fn standard_boost(p: &FourVector, mass: f64) -> Result<LorentzMatrix> {
    p.check_on_shell(mass)?;
    let energy = p.t();
    let k = p.spatial();
    let mut m = Matrix4::identity();
    m[(0, 0)] = energy / mass;
    for i in 0..3 {
        m[(0, i + 1)] = k[i] / mass;
        m[(i + 1, 0)] = k[i] / mass;
        for j in 0..3 {
            m[(i + 1, j + 1)] += k[i] * k[j] / (mass * (energy + mass));
        }
    }
    Ok(LorentzMatrix(m))
}

pub fn apply(lambda: &LorentzMatrix, p: &FourVector) -> FourVector {
    FourVector(lambda.0 * p.0)
}

/// Wigner rotation `W(Λ, p) = L(Λp)⁻¹ Λ L(p)` for a particle of mass `mass`.
///
/// Multiplying the three matrices out cancels entries of size
/// `γ(Λp)·Λ₀₀·γ(p)`, which costs most of the precision at large rapidity.
/// Instead Λ is split as `B·R` (pure boost times rotation), so that
/// `W(Λ, p) = W(B, Rp)·R`, and the pure-boost factor is evaluated from the
/// half-angle form `tan(θ/2) = t_η t_χ sin α / (1 + t_η t_χ cos α)` with
/// `t = tanh(rapidity/2)` and α the angle between boost and momentum.
/// The rotation axis is `p̂ × n̂`.
pub fn wigner_rotation(lambda: &LorentzMatrix, p: &FourVector, mass: f64) -> Result<Rotation3> {
    p.check_on_shell(mass)?;
    let (boost_dir, t_eta, rest) = polar_split(lambda)?;
    let k = rest * p.spatial();
    let k_norm = k.norm();
    let t_chi = k_norm / (p.t() + mass);
    let pure = if t_eta == 0.0 || k_norm == 0.0 {
        Matrix3::identity()
    } else {
        let axis = (k / k_norm).cross(&boost_dir);
        let (sin_a, cos_a) = (axis.norm(), boost_dir.dot(&k) / k_norm);
        if sin_a == 0.0 {
            Matrix3::identity()
        } else {
            let tt = t_eta * t_chi;
            let angle = 2.0 * (tt * sin_a).atan2(1.0 + tt * cos_a);
            rodrigues(&(axis / sin_a), angle)
        }
    };
    Ok(Rotation3::from_matrix_unchecked(&(pure * rest)))
}

/// `Λ = B·R`: returns the boost direction, `tanh(η/2)` of `B` and the 3×3 `R`.
/// `B⁻¹Λ` must fix the time axis up to rounding of order `Λ₀₀²·ε`.
fn polar_split(lambda: &LorentzMatrix) -> Result<(Vector3<f64>, f64, Matrix3<f64>)> {
    let m = &lambda.0;
    let u0 = m[(0, 0)];
    let u = Vector3::new(m[(1, 0)], m[(2, 0)], m[(3, 0)]);
    let sinh_eta = u.norm();
    let dir = if sinh_eta > 0.0 {
        u / sinh_eta
    } else {
        Vector3::z()
    };
    let mut b_inv = Matrix4::identity();
    b_inv[(0, 0)] = u0;
    for i in 0..3 {
        b_inv[(0, i + 1)] = -u[i];
        b_inv[(i + 1, 0)] = -u[i];
        for j in 0..3 {
            b_inv[(i + 1, j + 1)] += u[i] * u[j] / (u0 + 1.0);
        }
    }
    let r = b_inv * m;
    let residual = (1..4)
        .map(|i| r[(0, i)].abs().max(r[(i, 0)].abs()))
        .fold((r[(0, 0)] - 1.0).abs(), f64::max);
    let limit = LITTLE_GROUP_TOLERANCE.max(64.0 * f64::EPSILON * u0 * u0);
    if !(residual <= limit) {
        return Err(Error::NotALittleGroupElement { residual, limit });
    }
    Ok((
        dir,
        sinh_eta / (u0 + 1.0),
        r.fixed_view::<3, 3>(1, 1).into_owned(),
    ))
}

/// `W(Λ, p)` by multiplying `L(Λp)⁻¹ Λ L(p)` out directly. Loses precision
/// at large rapidity; kept as an independent check of [`wigner_rotation`].
pub fn wigner_rotation_composed(
    lambda: &LorentzMatrix,
    p: &FourVector,
    mass: f64,
) -> Result<Rotation3> {
    let forward = standard_boost(p, mass)?;
    let boosted = apply(lambda, p);
    let back = standard_boost(&boosted, mass)?.inverse();
    let w = back.0 * lambda.0 * forward.0;

    let residual = (1..4)
        .map(|i| w[(0, i)].abs().max(w[(i, 0)].abs()))
        .fold((w[(0, 0)] - 1.0).abs(), f64::max);
    let growth = (boosted.t() / mass) * lambda.0[(0, 0)].abs() * (p.t() / mass);
    let limit = LITTLE_GROUP_TOLERANCE.max(64.0 * f64::EPSILON * growth);
    if !(residual <= limit) {
        return Err(Error::NotALittleGroupElement { residual, limit });
    }
    let block: Matrix3<f64> = w.fixed_view::<3, 3>(1, 1).into_owned();
    Ok(Rotation3::from_matrix_unchecked(&block))
}

/// Signed rotation angle about `axis`, in (−π, π].
///
/// The rotation vector `θ·n` must be parallel to `axis`: its component
/// perpendicular to `axis` may not exceed 1e-8.
pub fn rotation_angle_about(rotation: &Rotation3, axis: &Vector3<f64>) -> Result<f64> {
    let norm = axis.norm();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroAxis);
    }
    let unit = axis / norm;
    let omega = rotation.rotation_vector();
    let misalignment = omega.cross(&unit).norm();
    if misalignment > 1e-8 {
        return Err(Error::AxisMismatch { misalignment });
    }
    let signed = omega.dot(&unit);
    Ok(if signed <= -PI { PI } else { signed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_velocity_is_identity() {
        let b = boost(Vector3::zeros()).unwrap();
        assert_eq!(b, LorentzMatrix::identity());
    }

    #[test]
    fn boost_along_y_has_expected_gamma() {
        let b = boost(Vector3::new(0.0, 0.6, 0.0)).unwrap();
        let m = b.matrix();
        assert_abs_diff_eq!(m[(0, 0)], 1.25, epsilon = 1e-14);
        assert_abs_diff_eq!(m[(0, 2)], 0.75, epsilon = 1e-14);
        assert_abs_diff_eq!(m[(2, 0)], 0.75, epsilon = 1e-14);
        assert_abs_diff_eq!(m[(2, 2)], 1.25, epsilon = 1e-14);
        assert_abs_diff_eq!(m[(1, 1)], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn opposite_boosts_cancel() {
        let v = Vector3::new(0.3, -0.5, 0.4);
        let product = boost(v).unwrap() * boost(-v).unwrap();
        assert!((product.matrix() - Matrix4::identity()).amax() < 1e-12);
    }

    #[test]
    fn superluminal_velocity_is_rejected() {
        assert!(matches!(
            boost(Vector3::new(0.0, 1.0, 0.0)),
            Err(Error::VelocityNotSubluminal { .. })
        ));
        assert!(matches!(
            boost(Vector3::new(0.8, 0.8, 0.0)),
            Err(Error::VelocityNotSubluminal { .. })
        ));
        assert!(boost(Vector3::new(f64::NAN, 0.0, 0.0)).is_err());
    }

    #[test]
    fn standard_boost_of_rest_momentum_is_identity() {
        let p = FourVector::at_rest(2.0).unwrap();
        let l = standard_boost(&p, 2.0).unwrap();
        assert!((l.matrix() - Matrix4::identity()).amax() < 1e-15);
    }

    #[test]
    fn standard_boost_maps_rest_frame_to_momentum() {
        let m = 1.0;
        let p = FourVector::new(101f64.sqrt() * m, 10.0 * m, 0.0, 0.0);
        let l = standard_boost(&p, m).unwrap();
        let rest = FourVector::at_rest(m).unwrap();
        assert!(l.apply(&rest).approx_eq(&p, 1e-10));
        assert!(l.inverse().apply(&p).approx_eq(&rest, 1e-10));
    }

    #[test]
    fn off_shell_momentum_is_rejected() {
        let p = FourVector::new(1.0, 1.0, 0.0, 0.0);
        assert!(matches!(
            standard_boost(&p, 1.0),
            Err(Error::OffShellMomentum { .. })
        ));
        assert!(matches!(
            standard_boost(&FourVector::new(1.0, 0.0, 0.0, 0.0), -1.0),
            Err(Error::InvalidMass(_))
        ));
    }

    #[test]
    fn collinear_boost_preserves_mass() {
        let p = FourVector::on_shell(1.5, Vector3::new(2.0, 0.0, 0.0)).unwrap();
        let q = boost(Vector3::new(0.7, 0.0, 0.0)).unwrap().apply(&p);
        assert_abs_diff_eq!(q.minkowski_norm_sq(), 2.25, epsilon = 1e-10);
        assert!(q.t() > p.t());
        assert_eq!(q.spatial().y, 0.0);
    }

    #[test]
    fn split_form_matches_composition() {
        let cases = [
            (Vector3::new(0.0, 0.6, 0.0), Vector3::new(10.0, 0.0, 0.0)),
            (Vector3::new(0.3, -0.5, 0.2), Vector3::new(-1.0, 2.0, 0.5)),
            (Vector3::new(-0.7, 0.1, 0.4), Vector3::new(0.2, 0.3, -4.0)),
        ];
        let rot = Rotation3::from_axis_angle(Vector3::new(1.0, 2.0, 3.0), 0.7).unwrap();
        for (v, k) in cases {
            let lambda = boost(v).unwrap() * LorentzMatrix::rotation(&rot);
            let p = FourVector::on_shell(1.3, k).unwrap();
            let a = wigner_rotation(&lambda, &p, 1.3).unwrap();
            let b = wigner_rotation_composed(&lambda, &p, 1.3).unwrap();
            assert!((a.matrix() - b.matrix()).amax() < 1e-12);
        }
    }

    #[test]
    fn split_form_holds_precision_near_light_speed() {
        // tan φ = sinh χ sinh η / (cosh χ + cosh η) at |p|/m = 10, v = 1 − 1e-9
        let p = FourVector::on_shell(1.0, Vector3::new(10.0, 0.0, 0.0)).unwrap();
        let lambda = boost(Vector3::new(0.0, 1.0 - 1e-9, 0.0)).unwrap();
        let w = wigner_rotation(&lambda, &p, 1.0).unwrap();
        let phi = rotation_angle_about(&w, &Vector3::z()).unwrap();
        assert_abs_diff_eq!(phi, 1.471_083_174_986_791_5, epsilon = 1e-9);
    }

    #[test]
    fn identity_has_trivial_wigner_rotation() {
        let p = FourVector::on_shell(1.0, Vector3::new(3.0, -1.0, 2.0)).unwrap();
        let w = wigner_rotation(&LorentzMatrix::identity(), &p, 1.0).unwrap();
        assert!((w.matrix() - Matrix3::identity()).amax() < 1e-12);
        assert_abs_diff_eq!(w.angle(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn collinear_boost_has_trivial_wigner_rotation() {
        let p = FourVector::on_shell(1.0, Vector3::new(0.0, 0.0, 4.0)).unwrap();
        let lambda = boost(Vector3::new(0.0, 0.0, -0.9)).unwrap();
        let w = wigner_rotation(&lambda, &p, 1.0).unwrap();
        assert!(w.angle().abs() < 1e-12);
    }

    #[test]
    fn perpendicular_boost_rotates_about_z() {
        // ratio 10, velocity solving φ = π/4 (high-precision composition oracle)
        let p = FourVector::on_shell(1.0, Vector3::new(10.0, 0.0, 0.0)).unwrap();
        let lambda = boost(Vector3::new(0.0, 0.756_849_273_808_552, 0.0)).unwrap();
        let w = wigner_rotation(&lambda, &p, 1.0).unwrap();
        let phi = rotation_angle_about(&w, &Vector3::z()).unwrap();
        assert_abs_diff_eq!(phi, PI / 4.0, epsilon = 1e-6);

        let mirrored = FourVector::on_shell(1.0, Vector3::new(-10.0, 0.0, 0.0)).unwrap();
        let w = wigner_rotation(&lambda, &mirrored, 1.0).unwrap();
        let phi_mirrored = rotation_angle_about(&w, &Vector3::z()).unwrap();
        assert_abs_diff_eq!(phi_mirrored, -phi, epsilon = 1e-10);
    }

    #[test]
    fn angle_about_sign_follows_the_query_axis() {
        let r = Rotation3::from_axis_angle(Vector3::z(), -0.3).unwrap();
        assert_abs_diff_eq!(
            rotation_angle_about(&r, &Vector3::z()).unwrap(),
            -0.3,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            rotation_angle_about(&r, &-Vector3::z()).unwrap(),
            0.3,
            epsilon = 1e-15
        );
        assert_eq!(
            rotation_angle_about(&Rotation3::identity(), &Vector3::z()).unwrap(),
            0.0
        );
        assert_eq!(
            rotation_angle_about(&Rotation3::identity(), &Vector3::x()).unwrap(),
            0.0
        );
    }

    #[test]
    fn angle_about_wrong_axis_fails() {
        let r = Rotation3::from_axis_angle(Vector3::x(), 0.5).unwrap();
        assert!(matches!(
            rotation_angle_about(&r, &Vector3::z()),
            Err(Error::AxisMismatch { .. })
        ));
    }

    #[test]
    fn extraction_near_half_turn() {
        let axis = Vector3::new(1.0, 2.0, -2.0).normalize();
        for angle in [PI, PI - 1e-9, PI - 1e-5, PI - 0.1, 1e-7, 1.0] {
            let r = Rotation3::from_axis_angle(axis, angle).unwrap();
            let back = Rotation3::from_matrix(*r.matrix()).unwrap();
            assert!((back.matrix() - r.matrix()).amax() < 1e-10, "angle {angle}");
        }
    }

    #[test]
    fn non_orthogonal_matrix_is_not_a_rotation() {
        let m = Matrix3::new(1.0, 0.1, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0);
        assert!(matches!(
            Rotation3::from_matrix(m),
            Err(Error::NotARotation { .. })
        ));
        assert!(Rotation3::from_matrix(-Matrix3::identity()).is_err());
    }

    #[test]
    fn wrapped_angles_stay_in_half_open_interval() {
        assert_abs_diff_eq!(wrap_angle(-PI), PI, epsilon = 1e-15);
        assert_abs_diff_eq!(wrap_angle(3.0 * PI / 2.0), -PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(wrap_angle(0.25), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn from_matrix_rejects_reflections() {
        let m = Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, 1.0, 1.0));
        assert!(matches!(
            LorentzMatrix::from_matrix(m),
            Err(Error::NotLorentz { .. })
        ));
        assert!(
            LorentzMatrix::from_matrix(*boost(Vector3::new(0.1, 0.2, 0.3)).unwrap().matrix())
                .is_ok()
        );
    }
}
