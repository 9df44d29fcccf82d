//! Two-qubit entanglement measures: Wootters concurrence, partial transpose,
//! PPT separability and negativity, plus the cyclic Jacobi eigensolver they
//! share.

use nalgebra::{Matrix4, SMatrix, SVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spin_half::{flip_operator, Subsystem, TwoQubitDensity};

/// Hermiticity tolerance accepted by the eigensolver.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Eigenvalues above `-NEGATIVE_TOLERANCE` count as zero.
pub const NEGATIVE_TOLERANCE: f64 = 1e-10;

const JACOBI_THRESHOLD: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 60;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
/// Column `k` of `vectors` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEigen<const N: usize> {
    pub values: SVector<f64, N>,
    pub vectors: SMatrix<Complex64, N, N>,
}

impl<const N: usize> HermitianEigen<N> {
    /// `V · diag(values) · V†`.
    pub fn reconstruct(&self) -> SMatrix<Complex64, N, N> {
        let diag = SMatrix::<Complex64, N, N>::from_diagonal(&self.values.map(Complex64::from));
        self.vectors * diag * self.vectors.adjoint()
    }

    /// Applies `f` to the spectrum: `V · diag(f(λ)) · V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> SMatrix<Complex64, N, N> {
        let diag =
            SMatrix::<Complex64, N, N>::from_diagonal(&self.values.map(|x| Complex64::from(f(x))));
        self.vectors * diag * self.vectors.adjoint()
    }
}

fn hermitian_defect<const N: usize>(m: &SMatrix<Complex64, N, N>) -> f64 {
    (m - m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

fn off_diagonal_norm<const N: usize>(a: &SMatrix<Complex64, N, N>) -> f64 {
    let mut sum = 0.0;
    for p in 0..N {
        for q in 0..N {
            if p != q {
                sum += a[(p, q)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Cyclic complex Jacobi diagonalization.
///
/// Each rotation first removes the phase of `a_pq`, then applies the real
/// symmetric Jacobi rotation. Iteration stops once the off-diagonal Frobenius
/// norm is below `1e-14 · max(1, ‖M‖_F)`.
pub fn hermitian_eigen<const N: usize>(m: &SMatrix<Complex64, N, N>) -> Result<HermitianEigen<N>> {
    let scale = m.norm().max(1.0);
    let defect = hermitian_defect(m);
    if !(defect <= HERMITIAN_TOLERANCE * scale) {
        return Err(Error::NotHermitian { defect });
    }
    let mut a = (m + m.adjoint()).scale(0.5);
    let mut v = SMatrix::<Complex64, N, N>::identity();
    let threshold = JACOBI_THRESHOLD * scale;

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let theta = 0.5 * (a[(q, q)].re - a[(p, p)].re) / r;
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // J is the identity apart from the (p, q) block
                let (jpp, jpq) = (Complex64::from(c), Complex64::from(s));
                let (jqp, jqq) = (-phase.conj() * s, phase.conj() * c);
                for k in 0..N {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
                for k in 0..N {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = Complex64::default();
                a[(q, p)] = Complex64::default();
            }
        }
    }
    if !converged {
        let off_norm = off_diagonal_norm(&a);
        if off_norm > threshold {
            return Err(Error::EigenNoConvergence { off_norm });
        }
    }

    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&x, &y| a[(y, y)].re.total_cmp(&a[(x, x)].re));
    let values = SVector::<f64, N>::from_fn(|k, _| a[(order[k], order[k])].re);
    let vectors = SMatrix::<Complex64, N, N>::from_fn(|i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// Four real eigenvalues in descending order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum4(pub [f64; 4]);

impl Spectrum4 {
    /// Sorts the given values in descending order.
    pub fn from_unsorted(mut values: [f64; 4]) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum4(values)
    }

    pub fn values(&self) -> [f64; 4] {
        self.0
    }

    pub fn max(&self) -> f64 {
        self.0[0]
    }

    pub fn min(&self) -> f64 {
        self.0[3]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Largest difference between matching entries of two sorted spectra.
    pub fn max_deviation(&self, other: &Spectrum4) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues of a 4×4 Hermitian matrix, descending.
pub fn eigenvalues_hermitian(m: &Matrix4<Complex64>) -> Result<Spectrum4> {
    let eigen = hermitian_eigen(m)?;
    Ok(Spectrum4([
        eigen.values[0],
        eigen.values[1],
        eigen.values[2],
        eigen.values[3],
    ]))
}

/// Singular values of a 4×4 complex matrix, descending, from the Hermitian
/// dilation `[[0, M], [M†, 0]]` whose spectrum is `±σᵢ`.
fn singular_values(m: &Matrix4<Complex64>) -> Result<[f64; 4]> {
    let mut dilation = SMatrix::<Complex64, 8, 8>::zeros();
    dilation.fixed_view_mut::<4, 4>(0, 4).copy_from(m);
    dilation
        .fixed_view_mut::<4, 4>(4, 0)
        .copy_from(&m.adjoint());
    let eigen = hermitian_eigen(&dilation)?;
    Ok([
        eigen.values[0].max(0.0),
        eigen.values[1].max(0.0),
        eigen.values[2].max(0.0),
        eigen.values[3].max(0.0),
    ])
}

/// Square roots `√λᵢ` (descending) of the eigenvalues of `ρ·(Σ₂Ξ₂)·ρ*·(Σ₂Ξ₂)`,
/// conjugation taken in the Σ₃/Ξ₃ product basis.
///
/// They are the singular values of `√ρ · √ρ̃` with `ρ̃ = (Σ₂Ξ₂) ρ* (Σ₂Ξ₂)`; going
/// through singular values keeps near-zero `√λᵢ` at rounding level instead of
/// the square root of rounding level.
pub fn wootters_roots(rho: &TwoQubitDensity) -> Result<[f64; 4]> {
    let eigen = hermitian_eigen(rho.matrix())?;
    let sqrt_rho = eigen.map_spectrum(|x| x.max(0.0).sqrt());
    let flip = flip_operator();
    let sqrt_flipped = flip * sqrt_rho.map(|z| z.conj()) * flip;
    singular_values(&(sqrt_rho * sqrt_flipped))
}

/// The eigenvalues `λᵢ` of `ρ·(Σ₂Ξ₂)·ρ*·(Σ₂Ξ₂)`, descending.
pub fn wootters_lambdas(rho: &TwoQubitDensity) -> Result<[f64; 4]> {
    Ok(wootters_roots(rho)?.map(|s| s * s))
}

/// Wootters concurrence `max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄)`.
pub fn concurrence(rho: &TwoQubitDensity) -> Result<f64> {
    let s = wootters_roots(rho)?;
    Ok((s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0))
}

/// Transposes the indices of one tensor factor.
pub fn partial_transpose(rho: &TwoQubitDensity, which: Subsystem) -> Matrix4<Complex64> {
    partial_transpose_matrix(rho.matrix(), which)
}

pub(crate) fn partial_transpose_matrix(
    m: &Matrix4<Complex64>,
    which: Subsystem,
) -> Matrix4<Complex64> {
    Matrix4::from_fn(|row, col| {
        let (a, b) = (row / 2, row % 2);
        let (a2, b2) = (col / 2, col % 2);
        match which {
            Subsystem::A => m[(2 * a2 + b, 2 * a + b2)],
            Subsystem::B => m[(2 * a + b2, 2 * a2 + b)],
        }
    })
}

/// Spectrum of the partial transpose over the second factor (the spectrum is
/// the same for either factor).
pub fn ppt_spectrum(rho: &TwoQubitDensity) -> Result<Spectrum4> {
    eigenvalues_hermitian(&partial_transpose(rho, Subsystem::B))
}

/// Outcome of the Peres–Horodecki test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptReport {
    pub separable: bool,
    pub min_eigenvalue: f64,
}

/// For two qubits a positive partial transpose is necessary and sufficient for separability.
pub fn is_separable_ppt(rho: &TwoQubitDensity) -> Result<PptReport> {
    let min_eigenvalue = ppt_spectrum(rho)?.min();
    Ok(PptReport {
        separable: min_eigenvalue >= -NEGATIVE_TOLERANCE,
        min_eigenvalue,
    })
}

/// Sum of the magnitudes of the negative partial-transpose eigenvalues.
pub fn negativity(rho: &TwoQubitDensity) -> Result<f64> {
    Ok(ppt_spectrum(rho)?
        .values()
        .iter()
        .filter(|&&x| x < -NEGATIVE_TOLERANCE)
        .map(|x| -x)
        .sum())
}

/// Trace distance `½‖a − b‖₁` between two 4×4 Hermitian matrices.
pub fn trace_distance(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> Result<f64> {
    let spectrum = eigenvalues_hermitian(&(a - b))?;
    Ok(0.5 * spectrum.values().iter().map(|x| x.abs()).sum::<f64>())
}
