//! Pauli algebra and the SU(2) double cover for two spin-1/2 particles.
//!
//! Two-qubit basis order is |++⟩, |+−⟩, |−+⟩, |−−⟩, where ± label the
//! eigenvalues of Σ₃ (first factor, particle A) and Ξ₃ (second factor,
//! particle B). Index = 2·a + b with a, b ∈ {0 (+), 1 (−)}.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use num_complex::Complex64;

use crate::entanglement::hermitian_eigen;
use crate::error::{Error, Result};
use crate::lorentz::Rotation3;

const ALGEBRA_TOLERANCE: f64 = 1e-12;
const PSD_TOLERANCE: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Single-qubit Pauli matrix σⱼ, `j ∈ {1, 2, 3}`.
pub fn pauli(j: usize) -> Matrix2<Complex64> {
    let zero = Complex64::default();
    match j {
        1 => Matrix2::new(zero, c(1.0, 0.0), c(1.0, 0.0), zero),
        2 => Matrix2::new(zero, c(0.0, -1.0), c(0.0, 1.0), zero),
        3 => Matrix2::new(c(1.0, 0.0), zero, zero, c(-1.0, 0.0)),
        _ => panic!("Pauli index must be 1, 2 or 3, got {j}"),
    }
}

/// Σⱼ = σⱼ ⊗ 1, acting on particle A.
pub fn sigma(j: usize) -> Matrix4<Complex64> {
    pauli(j).kronecker(&Matrix2::identity())
}

/// Ξⱼ = 1 ⊗ σⱼ, acting on particle B.
pub fn xi(j: usize) -> Matrix4<Complex64> {
    Matrix2::identity().kronecker(&pauli(j))
}

/// The spin-flip operator Σ₂Ξ₂ = σ₂ ⊗ σ₂.
pub fn flip_operator() -> Matrix4<Complex64> {
    sigma(2) * xi(2)
}

/// Which tensor factor of a two-qubit space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Sign choice ± for the Bell pair ρ±.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellSign {
    Plus,
    Minus,
}

impl BellSign {
    pub fn value(self) -> f64 {
        match self {
            BellSign::Plus => 1.0,
            BellSign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            BellSign::Plus => BellSign::Minus,
            BellSign::Minus => BellSign::Plus,
        }
    }
}

/// A 2×2 special unitary matrix representing a rotation on one spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorRotation(Matrix2<Complex64>);

impl SpinorRotation {
    pub fn identity() -> Self {
        SpinorRotation(Matrix2::identity())
    }

    /// `cos(θ/2)·1 − i sin(θ/2)·(n̂·σ)`.
    pub fn from_axis_angle(axis: &nalgebra::Vector3<f64>, angle: f64) -> Self {
        let n = axis.normalize();
        let (s, cs) = (0.5 * angle).sin_cos();
        let n_sigma = pauli(1) * c(n.x, 0.0) + pauli(2) * c(n.y, 0.0) + pauli(3) * c(n.z, 0.0);
        SpinorRotation(Matrix2::identity() * c(cs, 0.0) - n_sigma * c(0.0, s))
    }

    /// Rotation by `angle` about the z axis: `diag(e^{−iθ/2}, e^{iθ/2})`.
    pub fn about_z(angle: f64) -> Self {
        Self::from_axis_angle(&nalgebra::Vector3::z(), angle)
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        SpinorRotation(self.0.adjoint())
    }

    /// `self ⊗ other`.
    pub fn pair(&self, other: &SpinorRotation) -> Matrix4<Complex64> {
        self.0.kronecker(&other.0)
    }

    pub fn compose(&self, other: &SpinorRotation) -> Self {
        SpinorRotation(self.0 * other.0)
    }
}

/// SU(2) element of a rotation. Satisfies `D σⱼ D† = Σₖ Rₖⱼ σₖ`, equivalently
/// `D† σⱼ D = Σₖ Rⱼₖ σₖ`.
pub fn su2_from_rotation(rotation: &Rotation3) -> SpinorRotation {
    SpinorRotation::from_axis_angle(&rotation.axis(), rotation.angle())
}

/// Four complex amplitudes of a normalized two-spin state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinVector(Vector4<Complex64>);

impl SpinVector {
    pub fn new(amplitudes: Vector4<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > ALGEBRA_TOLERANCE {
            return Err(Error::InvalidSpinVector(format!("norm {norm} is not 1")));
        }
        Ok(SpinVector(amplitudes))
    }

    pub fn basis(index: usize) -> Self {
        let mut v = Vector4::zeros();
        v[index] = c(1.0, 0.0);
        SpinVector(v)
    }

    /// `|a⟩ ⊗ |b⟩` for normalized single-spin states.
    pub fn product(a: &Vector2<Complex64>, b: &Vector2<Complex64>) -> Result<Self> {
        Self::new(a.kronecker(b))
    }

    /// `(|+−⟩ ± |−+⟩)/√2`; the minus sign is the singlet.
    pub fn bell(sign: BellSign) -> Self {
        SpinVector(Vector4::new(
            Complex64::default(),
            c(FRAC_1_SQRT_2, 0.0),
            c(sign.value() * FRAC_1_SQRT_2, 0.0),
            Complex64::default(),
        ))
    }

    pub fn amplitudes(&self) -> &Vector4<Complex64> {
        &self.0
    }

    /// `(D_A ⊗ D_B)|s⟩`.
    pub fn apply_pair(&self, d_a: &SpinorRotation, d_b: &SpinorRotation) -> Self {
        SpinVector(d_a.pair(d_b) * self.0)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &SpinVector) -> Complex64 {
        self.0.dotc(&other.0)
    }

    /// Exchanges the two spins: swaps the |+−⟩ and |−+⟩ amplitudes.
    pub fn swapped(&self) -> Self {
        let mut v = self.0;
        v.swap_rows(1, 2);
        SpinVector(v)
    }

    pub fn projector(&self) -> TwoQubitDensity {
        TwoQubitDensity(self.0 * self.0.adjoint())
    }

    pub fn max_deviation(&self, other: &SpinVector) -> f64 {
        (self.0 - other.0)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// A 4×4 density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitDensity(Matrix4<Complex64>);

impl TwoQubitDensity {
    /// Validates Hermiticity and trace to 1e-12 and eigenvalues ≥ −1e-10.
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        let herm = (m - m.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if !(herm <= ALGEBRA_TOLERANCE) {
            return Err(Error::InvalidDensity(format!(
                "Hermiticity defect {herm:e}"
            )));
        }
        let trace = m.trace();
        if !((trace - c(1.0, 0.0)).norm() <= ALGEBRA_TOLERANCE) {
            return Err(Error::InvalidDensity(format!("trace {trace}")));
        }
        let eigen = hermitian_eigen(&m).map_err(|e| Error::InvalidDensity(e.to_string()))?;
        let min = eigen.values[3];
        if min < -PSD_TOLERANCE {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(TwoQubitDensity(m))
    }

    pub(crate) fn new_unchecked(m: Matrix4<Complex64>) -> Self {
        TwoQubitDensity(m)
    }

    pub fn maximally_mixed() -> Self {
        TwoQubitDensity(Matrix4::identity() * c(0.25, 0.0))
    }

    /// `a ⊗ b` for single-qubit densities.
    pub fn product(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Result<Self> {
        Self::new(a.kronecker(b))
    }

    /// `Σ wᵢ ρᵢ`; weights must be nonnegative and sum to 1.
    pub fn mixture<'a>(
        terms: impl IntoIterator<Item = (f64, &'a TwoQubitDensity)>,
    ) -> Result<Self> {
        let mut m = Matrix4::zeros();
        for (w, rho) in terms {
            if w < 0.0 {
                return Err(Error::InvalidDensity(format!("negative weight {w}")));
            }
            m += rho.0 * c(w, 0.0);
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    /// Reduced density of one factor (the other factor traced out).
    pub fn reduced(&self, keep: Subsystem) -> Matrix2<Complex64> {
        Matrix2::from_fn(|i, j| match keep {
            Subsystem::A => self.0[(2 * i, 2 * j)] + self.0[(2 * i + 1, 2 * j + 1)],
            Subsystem::B => self.0[(i, j)] + self.0[(2 + i, 2 + j)],
        })
    }

    /// `ρ_A ⊗ ρ_B` built from this state's own marginals.
    pub fn product_of_marginals(&self) -> Matrix4<Complex64> {
        self.reduced(Subsystem::A)
            .kronecker(&self.reduced(Subsystem::B))
    }

    pub fn max_deviation(&self, other: &Matrix4<Complex64>) -> f64 {
        (self.0 - other)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// ρ± = ¼[1 ± Σ₁Ξ₁ ± Σ₂Ξ₂ − Σ₃Ξ₃].
pub fn bell_density(sign: BellSign) -> TwoQubitDensity {
    let s = c(sign.value(), 0.0);
    let m = (Matrix4::identity() + sigma(1) * xi(1) * s + sigma(2) * xi(2) * s - sigma(3) * xi(3))
        * c(0.25, 0.0);
    TwoQubitDensity(m)
}

/// `(D_A ⊗ D_B) ρ (D_A ⊗ D_B)†`.
pub fn conjugate_pair(
    rho: &TwoQubitDensity,
    d_a: &SpinorRotation,
    d_b: &SpinorRotation,
) -> TwoQubitDensity {
    let u = d_a.pair(d_b);
    TwoQubitDensity(u * rho.0 * u.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::{Matrix3, Vector3};
    use std::f64::consts::PI;

    fn max_abs(m: &Matrix2<Complex64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn zero_angle_gives_identity() {
        let d = su2_from_rotation(&Rotation3::identity());
        assert_eq!(*d.matrix(), Matrix2::identity());
    }

    #[test]
    fn quarter_turn_about_z_moves_sigma_one_to_sigma_two() {
        let r = Rotation3::from_axis_angle(Vector3::z(), PI / 2.0).unwrap();
        let d = su2_from_rotation(&r);
        let m = d.matrix();
        // D σ₁ D† = σ₁ cos θ + σ₂ sin θ
        assert!(max_abs(&(m * pauli(1) * m.adjoint() - pauli(2))) < 1e-12);
        // D† σ₁ D = Σₖ R₁ₖ σₖ = σ₁ cos θ − σ₂ sin θ
        assert!(max_abs(&(m.adjoint() * pauli(1) * m + pauli(2))) < 1e-12);
    }

    #[test]
    fn full_turn_is_minus_identity_but_acts_trivially() {
        let d = SpinorRotation::from_axis_angle(&Vector3::new(1.0, -2.0, 0.5), 2.0 * PI);
        assert!(max_abs(&(d.matrix() + Matrix2::identity())) < 1e-12);
        for j in 1..=3 {
            let m = d.matrix();
            assert!(max_abs(&(m.adjoint() * pauli(j) * m - pauli(j))) < 1e-12);
        }
    }

    #[test]
    fn spinor_rotation_is_special_unitary() {
        let d = SpinorRotation::from_axis_angle(&Vector3::new(0.3, 0.4, -0.2), 2.1);
        let m = d.matrix();
        assert!(max_abs(&(m * m.adjoint() - Matrix2::identity())) < 1e-12);
        assert!((m.determinant() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn conjugation_reproduces_the_rotation_matrix() {
        let r = Rotation3::from_axis_angle(Vector3::new(1.0, 1.0, 2.0), 0.9).unwrap();
        let d = su2_from_rotation(&r);
        let m = d.matrix();
        let rm: &Matrix3<f64> = r.matrix();
        for j in 0..3 {
            let lhs = m.adjoint() * pauli(j + 1) * m;
            let mut rhs = Matrix2::zeros();
            for k in 0..3 {
                rhs += pauli(k + 1) * c(rm[(j, k)], 0.0);
            }
            assert!(max_abs(&(lhs - rhs)) < 1e-12);
        }
    }

    #[test]
    fn bell_densities_are_the_expected_projectors() {
        for sign in [BellSign::Plus, BellSign::Minus] {
            let rho = bell_density(sign);
            let expected = SpinVector::bell(sign).projector();
            assert!(rho.max_deviation(expected.matrix()) < 1e-15);
            assert!((rho.matrix() * rho.matrix() - rho.matrix()).norm() < 1e-12);
            assert_abs_diff_eq!(rho.matrix().trace().re, 1.0, epsilon = 1e-15);
            assert!(TwoQubitDensity::new(*rho.matrix()).is_ok());
        }
    }

    #[test]
    fn plus_bell_is_singlet_with_one_spin_turned_by_pi() {
        let turned = bell_density(BellSign::Minus);
        let d = SpinorRotation::about_z(PI);
        let rho = conjugate_pair(&turned, &d, &SpinorRotation::identity());
        assert!(rho.max_deviation(bell_density(BellSign::Plus).matrix()) < 1e-12);
    }

    #[test]
    fn opposite_z_rotations_on_bell_give_first_branch() {
        let phi: f64 = 0.37;
        let (cp, sp) = (phi.cos(), phi.sin());
        for sign in [BellSign::Plus, BellSign::Minus] {
            let rho = conjugate_pair(
                &bell_density(sign),
                &SpinorRotation::about_z(phi),
                &SpinorRotation::about_z(-phi),
            );
            let s = c(sign.value(), 0.0);
            let a1 = sigma(1) * c(cp, 0.0) + sigma(2) * c(sp, 0.0);
            let b1 = xi(1) * c(cp, 0.0) - xi(2) * c(sp, 0.0);
            let a2 = -sigma(1) * c(sp, 0.0) + sigma(2) * c(cp, 0.0);
            let b2 = xi(1) * c(sp, 0.0) + xi(2) * c(cp, 0.0);
            let expected =
                (Matrix4::identity() + a1 * b1 * s + a2 * b2 * s - sigma(3) * xi(3)) * c(0.25, 0.0);
            assert!(rho.max_deviation(&expected) < 1e-12);
        }
    }

    #[test]
    fn singlet_is_invariant_under_common_rotation() {
        let singlet = bell_density(BellSign::Minus);
        let d = SpinorRotation::from_axis_angle(&Vector3::new(0.2, -0.7, 0.4), 1.3);
        let rho = conjugate_pair(&singlet, &d, &d);
        assert!(rho.max_deviation(singlet.matrix()) < 1e-12);
    }

    #[test]
    fn invalid_densities_are_rejected() {
        let mut m = *bell_density(BellSign::Minus).matrix();
        m[(0, 1)] = c(0.1, 0.0);
        assert!(TwoQubitDensity::new(m).is_err());
        let m = Matrix4::identity() * c(0.5, 0.0);
        assert!(TwoQubitDensity::new(m).is_err());
        let m = Matrix4::from_diagonal(&Vector4::new(
            c(1.2, 0.0),
            c(-0.2, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ));
        assert!(TwoQubitDensity::new(m).is_err());
    }

    #[test]
    fn reduced_densities_of_a_product() {
        let a = Matrix2::new(c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0));
        let b = Matrix2::new(c(0.4, 0.0), c(0.0, -0.1), c(0.0, 0.1), c(0.6, 0.0));
        let rho = TwoQubitDensity::product(&a, &b).unwrap();
        assert!(max_abs(&(rho.reduced(Subsystem::A) - a)) < 1e-15);
        assert!(max_abs(&(rho.reduced(Subsystem::B) - b)) < 1e-15);
    }

    #[test]
    fn swap_exchanges_the_middle_amplitudes() {
        let triplet = SpinVector::bell(BellSign::Plus);
        let singlet = SpinVector::bell(BellSign::Minus);
        assert!(triplet.swapped().max_deviation(&triplet) < 1e-15);
        let neg = SpinVector::new(-singlet.amplitudes()).unwrap();
        assert!(singlet.swapped().max_deviation(&neg) < 1e-15);
    }
}
