//! Two-particle states built from discrete momentum branches tensored with
//! spin data, and their Lorentz transformation.
//!
//! Momentum wave packets are idealized as orthogonal labels: different
//! momentum values have zero overlap, equal values overlap exactly.
//!
//! For two-branch states with the momentum pattern `p_A1 = p_B2`,
//! `p_B1 = p_A2` (each particle then occupies two momentum values), each
//! particle's momenta form a qubit. Two labelings are used:
//!
//! * the branch labeling: `|p_A1⟩, |p_A2⟩` and `|p_B1⟩, |p_B2⟩` are the +1/−1
//!   eigenvectors of Σ̃₃ and Ξ̃₃, so branch 1 is |00⟩ and branch 2 is |11⟩;
//! * the exchange labeling: `α = p_A1`, `β = p_B1` for both particles, so
//!   branch 1 is |αβ⟩ and branch 2 is |βα⟩.

use nalgebra::{Matrix4, SVector};
use num_complex::Complex64;

use crate::entanglement::trace_distance;
use crate::error::{Error, Result};
use crate::lorentz::{apply, wigner_rotation, FourVector, LorentzMatrix, Rotation3};
use crate::spin_half::{
    conjugate_pair, su2_from_rotation, SpinVector, SpinorRotation, TwoQubitDensity,
};

const NORMALIZATION_TOLERANCE: f64 = 1e-12;
const MOMENTUM_TOLERANCE: f64 = 1e-10;

/// A momentum pair `(p_A, p_B)`; `label` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumBranch {
    pub label: usize,
    pub p_a: FourVector,
    pub p_b: FourVector,
}

impl MomentumBranch {
    fn same_momenta(&self, other: &MomentumBranch) -> bool {
        self.p_a.approx_eq(&other.p_a, MOMENTUM_TOLERANCE)
            && self.p_b.approx_eq(&other.p_b, MOMENTUM_TOLERANCE)
    }

    fn transformed(&self, lambda: &LorentzMatrix) -> MomentumBranch {
        MomentumBranch {
            label: self.label,
            p_a: apply(lambda, &self.p_a),
            p_b: apply(lambda, &self.p_b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Particle {
    A,
    B,
}

/// One of the four qubits of a two-branch pure state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    MomentumA,
    MomentumB,
    SpinA,
    SpinB,
}

impl Degree {
    /// Bit position in the 16-dimensional index `mA·8 + mB·4 + sA·2 + sB`.
    fn shift(self) -> usize {
        match self {
            Degree::MomentumA => 3,
            Degree::MomentumB => 2,
            Degree::SpinA => 1,
            Degree::SpinB => 0,
        }
    }
}

/// Symmetry of a pure state under the exchange of particles A and B.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExchangeParity {
    Symmetric,
    Antisymmetric,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureBranch {
    pub momenta: MomentumBranch,
    pub amplitude: Complex64,
    pub spin: SpinVector,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedBranch {
    pub momenta: MomentumBranch,
    pub probability: f64,
    pub spin: TwoQubitDensity,
}

/// `Σᵢ aᵢ |p_Aᵢ, p_Bᵢ⟩|sᵢ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    mass_a: f64,
    mass_b: f64,
    branches: Vec<PureBranch>,
}

/// `Σᵢ wᵢ |p_Aᵢ, p_Bᵢ⟩⟨p_Aᵢ, p_Bᵢ| ⊗ ρᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    mass_a: f64,
    mass_b: f64,
    branches: Vec<MixedBranch>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TwoParticleState {
    Pure(PureState),
    Mixed(MixedState),
}

fn check_branches(mass_a: f64, mass_b: f64, momenta: &[MomentumBranch]) -> Result<()> {
    for mass in [mass_a, mass_b] {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidMass(mass));
        }
    }
    if momenta.is_empty() {
        return Err(Error::InvalidState("no momentum branches".into()));
    }
    for (i, branch) in momenta.iter().enumerate() {
        if !branch.p_a.is_on_shell(mass_a) || !branch.p_b.is_on_shell(mass_b) {
            return Err(Error::InvalidState(format!(
                "branch {} is off shell",
                i + 1
            )));
        }
        if momenta[..i].iter().any(|other| other.same_momenta(branch)) {
            return Err(Error::InvalidState(format!(
                "branch {} repeats an earlier momentum pair",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Spinor rotations `D(W(Λ, p_A))`, `D(W(Λ, p_B))` for one branch.
fn branch_spinors(
    lambda: &LorentzMatrix,
    branch: &MomentumBranch,
    mass_a: f64,
    mass_b: f64,
) -> Result<(SpinorRotation, SpinorRotation)> {
    let (w_a, w_b) = branch_rotations(lambda, branch, mass_a, mass_b)?;
    Ok((su2_from_rotation(&w_a), su2_from_rotation(&w_b)))
}

fn branch_rotations(
    lambda: &LorentzMatrix,
    branch: &MomentumBranch,
    mass_a: f64,
    mass_b: f64,
) -> Result<(Rotation3, Rotation3)> {
    Ok((
        wigner_rotation(lambda, &branch.p_a, mass_a)?,
        wigner_rotation(lambda, &branch.p_b, mass_b)?,
    ))
}

/// Checks `p_A1 = p_B2`, `p_B1 = p_A2` and `p_A1 ≠ p_B1`.
fn check_pattern(first: &MomentumBranch, second: &MomentumBranch) -> Result<()> {
    let tol = MOMENTUM_TOLERANCE;
    if !first.p_a.approx_eq(&second.p_b, tol) {
        return Err(Error::GeometryMismatch("p_A1 differs from p_B2".into()));
    }
    if !first.p_b.approx_eq(&second.p_a, tol) {
        return Err(Error::GeometryMismatch("p_B1 differs from p_A2".into()));
    }
    if first.p_a.approx_eq(&first.p_b, tol) {
        return Err(Error::GeometryMismatch(
            "p_A1 equals p_B1, so the momenta do not form a qubit".into(),
        ));
    }
    Ok(())
}

impl PureState {
    /// Validates masses, the mass shell, distinct momentum pairs and `Σ|aᵢ|² = 1`.
    /// Branch labels are renumbered 1, 2, … in order.
    pub fn new(mass_a: f64, mass_b: f64, mut branches: Vec<PureBranch>) -> Result<Self> {
        let momenta: Vec<_> = branches.iter().map(|b| b.momenta).collect();
        check_branches(mass_a, mass_b, &momenta)?;
        let norm: f64 = branches.iter().map(|b| b.amplitude.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidState(format!("squared norm {norm} is not 1")));
        }
        for (i, b) in branches.iter_mut().enumerate() {
            b.momenta.label = i + 1;
        }
        Ok(PureState {
            mass_a,
            mass_b,
            branches,
        })
    }

    pub fn branches(&self) -> &[PureBranch] {
        &self.branches
    }

    pub fn masses(&self) -> (f64, f64) {
        (self.mass_a, self.mass_b)
    }

    /// Boosts every momentum and rotates each branch spinor by `D(W(Λ,p_A)) ⊗ D(W(Λ,p_B))`.
    pub fn transform(&self, lambda: &LorentzMatrix) -> Result<PureState> {
        let branches = self
            .branches
            .iter()
            .map(|b| {
                let (d_a, d_b) = branch_spinors(lambda, &b.momenta, self.mass_a, self.mass_b)?;
                Ok(PureBranch {
                    momenta: b.momenta.transformed(lambda),
                    amplitude: b.amplitude,
                    spin: b.spin.apply_pair(&d_a, &d_b),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PureState {
            mass_a: self.mass_a,
            mass_b: self.mass_b,
            branches,
        })
    }

    /// Wigner rotations `(W(Λ, p_Aᵢ), W(Λ, p_Bᵢ))` per branch.
    pub fn wigner_rotations(&self, lambda: &LorentzMatrix) -> Result<Vec<(Rotation3, Rotation3)>> {
        self.branches
            .iter()
            .map(|b| branch_rotations(lambda, &b.momenta, self.mass_a, self.mass_b))
            .collect()
    }

    /// `Σᵢⱼ aᵢ āⱼ ⟨Pⱼ|Pᵢ⟩ |sᵢ⟩⟨sⱼ|`.
    pub fn spin_marginal(&self) -> TwoQubitDensity {
        let mut m = Matrix4::zeros();
        for bi in &self.branches {
            for bj in &self.branches {
                if bi.momenta.same_momenta(&bj.momenta) {
                    let weight = bi.amplitude * bj.amplitude.conj();
                    m += bi.spin.amplitudes() * bj.spin.amplitudes().adjoint() * weight;
                }
            }
        }
        TwoQubitDensity::new_unchecked(m)
    }

    fn two_branches(&self) -> Result<(&PureBranch, &PureBranch)> {
        match self.branches.as_slice() {
            [first, second] => Ok((first, second)),
            other => Err(Error::BranchCountNotTwo(other.len())),
        }
    }

    /// Full state vector over (momentum A, momentum B, spin A, spin B); the
    /// momentum qubits use the branch labeling (`exchange = false`) or the
    /// exchange labeling (`exchange = true`).
    fn full_vector(&self, exchange: bool) -> Result<SVector<Complex64, 16>> {
        let (first, second) = self.two_branches()?;
        check_pattern(&first.momenta, &second.momenta)?;
        let slots: [(usize, usize); 2] = if exchange {
            [(0, 1), (1, 0)]
        } else {
            [(0, 0), (1, 1)]
        };
        let mut psi = SVector::<Complex64, 16>::zeros();
        for (branch, (ma, mb)) in [first, second].into_iter().zip(slots) {
            for s in 0..4 {
                psi[ma * 8 + mb * 4 + s] += branch.amplitude * branch.spin.amplitudes()[s];
            }
        }
        Ok(psi)
    }

    /// Density over the momentum qubits (branch labeling), spins traced out.
    pub fn momentum_marginal(&self) -> Result<MomentumQubitDensity> {
        let psi = self.full_vector(false)?;
        Ok(MomentumQubitDensity(TwoQubitDensity::new_unchecked(
            reduce(&psi, Degree::MomentumA, Degree::MomentumB),
        )))
    }

    /// Two-qubit marginal over `first ⊗ second`, in the branch labeling.
    pub fn reduced_pair(&self, first: Degree, second: Degree) -> Result<TwoQubitDensity> {
        if first == second {
            return Err(Error::InvalidState(
                "marginal needs two distinct degrees".into(),
            ));
        }
        let psi = self.full_vector(false)?;
        Ok(TwoQubitDensity::new_unchecked(reduce(&psi, first, second)))
    }

    /// Density of one particle over (its momentum qubit ⊗ its spin).
    pub fn reduced_single(&self, which: Particle) -> Result<TwoQubitDensity> {
        match which {
            Particle::A => self.reduced_pair(Degree::MomentumA, Degree::SpinA),
            Particle::B => self.reduced_pair(Degree::MomentumB, Degree::SpinB),
        }
    }

    /// Density over (momentum of A ⊗ spin of B).
    pub fn reduced_cross(&self) -> Result<TwoQubitDensity> {
        self.reduced_pair(Degree::MomentumA, Degree::SpinB)
    }

    /// Swaps the particles (momentum labels and spin factors) and compares
    /// with ± the original state within 1e-10.
    pub fn exchange_parity(&self) -> Result<ExchangeParity> {
        if (self.mass_a - self.mass_b).abs() > MOMENTUM_TOLERANCE * self.mass_a {
            return Err(Error::GeometryMismatch(
                "particles have different masses".into(),
            ));
        }
        let psi = self.full_vector(true)?;
        let swapped = SVector::<Complex64, 16>::from_fn(|index, _| {
            let ma = (index >> 3) & 1;
            let mb = (index >> 2) & 1;
            let sa = (index >> 1) & 1;
            let sb = index & 1;
            psi[mb * 8 + ma * 4 + sb * 2 + sa]
        });
        let deviation = |sign: f64| {
            (swapped - psi * Complex64::from(sign))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max)
        };
        Ok(if deviation(1.0) <= 1e-10 {
            ExchangeParity::Symmetric
        } else if deviation(-1.0) <= 1e-10 {
            ExchangeParity::Antisymmetric
        } else {
            ExchangeParity::Neither
        })
    }

    /// Largest difference in momenta (relative to the energy scale, as in
    /// [`FourVector::approx_eq`]), amplitudes or spinors between matching branches.
    pub fn max_deviation(&self, other: &PureState) -> f64 {
        if self.branches.len() != other.branches.len() {
            return f64::INFINITY;
        }
        self.branches
            .iter()
            .zip(&other.branches)
            .map(|(a, b)| {
                let dp = momentum_deviation(&a.momenta.p_a, &b.momenta.p_a)
                    .max(momentum_deviation(&a.momenta.p_b, &b.momenta.p_b));
                dp.max((a.amplitude - b.amplitude).norm())
                    .max(a.spin.max_deviation(&b.spin))
            })
            .fold(0.0, f64::max)
    }
}

impl MixedState {
    /// Validates masses, the mass shell, distinct momentum pairs and the probabilities.
    pub fn new(mass_a: f64, mass_b: f64, mut branches: Vec<MixedBranch>) -> Result<Self> {
        let momenta: Vec<_> = branches.iter().map(|b| b.momenta).collect();
        check_branches(mass_a, mass_b, &momenta)?;
        if let Some(b) = branches.iter().find(|b| !(b.probability >= 0.0)) {
            return Err(Error::InvalidState(format!(
                "negative probability {}",
                b.probability
            )));
        }
        let total: f64 = branches.iter().map(|b| b.probability).sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidState(format!("probabilities sum to {total}")));
        }
        for (i, b) in branches.iter_mut().enumerate() {
            b.momenta.label = i + 1;
        }
        Ok(MixedState {
            mass_a,
            mass_b,
            branches,
        })
    }

    pub fn branches(&self) -> &[MixedBranch] {
        &self.branches
    }

    pub fn masses(&self) -> (f64, f64) {
        (self.mass_a, self.mass_b)
    }

    /// Boosts every momentum and conjugates each branch density by `D(W(Λ,p_A)) ⊗ D(W(Λ,p_B))`.
    pub fn transform(&self, lambda: &LorentzMatrix) -> Result<MixedState> {
        let branches = self
            .branches
            .iter()
            .map(|b| {
                let (d_a, d_b) = branch_spinors(lambda, &b.momenta, self.mass_a, self.mass_b)?;
                Ok(MixedBranch {
                    momenta: b.momenta.transformed(lambda),
                    probability: b.probability,
                    spin: conjugate_pair(&b.spin, &d_a, &d_b),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MixedState {
            mass_a: self.mass_a,
            mass_b: self.mass_b,
            branches,
        })
    }

    /// `Σᵢ wᵢ ρᵢ`.
    pub fn spin_marginal(&self) -> TwoQubitDensity {
        let m = self.branches.iter().fold(Matrix4::zeros(), |acc, b| {
            acc + b.spin.matrix() * Complex64::from(b.probability)
        });
        TwoQubitDensity::new_unchecked(m)
    }

    /// Diagonal mixture `w₁|00⟩⟨00| + w₂|11⟩⟨11|` over the momentum qubits.
    pub fn momentum_marginal(&self) -> Result<MomentumQubitDensity> {
        let [first, second] = self.branches.as_slice() else {
            return Err(Error::BranchCountNotTwo(self.branches.len()));
        };
        check_pattern(&first.momenta, &second.momenta)?;
        let mut m = Matrix4::zeros();
        m[(0, 0)] = Complex64::from(first.probability);
        m[(3, 3)] = Complex64::from(second.probability);
        Ok(MomentumQubitDensity(TwoQubitDensity::new_unchecked(m)))
    }

    /// Same measure as [`PureState::max_deviation`], with probabilities and densities.
    pub fn max_deviation(&self, other: &MixedState) -> f64 {
        if self.branches.len() != other.branches.len() {
            return f64::INFINITY;
        }
        self.branches
            .iter()
            .zip(&other.branches)
            .map(|(a, b)| {
                let dp = momentum_deviation(&a.momenta.p_a, &b.momenta.p_a)
                    .max(momentum_deviation(&a.momenta.p_b, &b.momenta.p_b));
                dp.max((a.probability - b.probability).abs())
                    .max(a.spin.max_deviation(b.spin.matrix()))
            })
            .fold(0.0, f64::max)
    }
}

impl TwoParticleState {
    pub fn transform(&self, lambda: &LorentzMatrix) -> Result<TwoParticleState> {
        Ok(match self {
            TwoParticleState::Pure(s) => TwoParticleState::Pure(s.transform(lambda)?),
            TwoParticleState::Mixed(s) => TwoParticleState::Mixed(s.transform(lambda)?),
        })
    }

    pub fn spin_marginal(&self) -> TwoQubitDensity {
        match self {
            TwoParticleState::Pure(s) => s.spin_marginal(),
            TwoParticleState::Mixed(s) => s.spin_marginal(),
        }
    }

    pub fn momentum_marginal(&self) -> Result<MomentumQubitDensity> {
        match self {
            TwoParticleState::Pure(s) => s.momentum_marginal(),
            TwoParticleState::Mixed(s) => s.momentum_marginal(),
        }
    }
}

/// Two-qubit density over the momentum qubits of A and B (branch labeling).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumQubitDensity(pub TwoQubitDensity);

impl MomentumQubitDensity {
    pub fn density(&self) -> &TwoQubitDensity {
        &self.0
    }
}

fn momentum_deviation(a: &FourVector, b: &FourVector) -> f64 {
    (a.components() - b.components()).amax() / a.t().abs().max(b.t().abs()).max(1.0)
}

/// Partial trace of `|ψ⟩⟨ψ|` onto `first ⊗ second`.
fn reduce(psi: &SVector<Complex64, 16>, first: Degree, second: Degree) -> Matrix4<Complex64> {
    let (f, s) = (first.shift(), second.shift());
    let rest: Vec<usize> = (0..4).filter(|&k| k != f && k != s).collect();
    let index = |i1: usize, i2: usize, r: usize| {
        (i1 << f) | (i2 << s) | ((r & 1) << rest[0]) | (((r >> 1) & 1) << rest[1])
    };
    Matrix4::from_fn(|row, col| {
        let (a, b) = (row >> 1, row & 1);
        let (a2, b2) = (col >> 1, col & 1);
        (0..4)
            .map(|r| psi[index(a, b, r)] * psi[index(a2, b2, r)].conj())
            .sum()
    })
}

/// Trace distance between a two-qubit density and the product of its own marginals.
pub fn product_defect(rho: &TwoQubitDensity) -> Result<f64> {
    trace_distance(rho.matrix(), &rho.product_of_marginals())
}

/// `⟨2|1⟩` of the two branch spinors after the transformation `Λ`.
pub fn branch_overlap(state: &PureState, lambda: &LorentzMatrix) -> Result<Complex64> {
    let (first, second) = state.two_branches()?;
    let (d_a1, d_b1) = branch_spinors(lambda, &first.momenta, state.mass_a, state.mass_b)?;
    let (d_a2, d_b2) = branch_spinors(lambda, &second.momenta, state.mass_a, state.mass_b)?;
    let one = first.spin.apply_pair(&d_a1, &d_b1);
    let two = second.spin.apply_pair(&d_a2, &d_b2);
    Ok(two.inner(&one))
}
