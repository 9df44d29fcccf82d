//! The two-branch experiment: particles with momenta `±|p|` along x, a boost
//! with speed `v` along y, and the resulting spin and momentum entanglement.
//!
//! Masses are 1, so momenta are given as the ratio `|p|/m`. Branch 1 holds
//! `(p_A, p_B) = (+|p|x̂, −|p|x̂)` and branch 2 the reverse. The Wigner angle φ
//! is the rotation about z picked up by a particle moving along +x; the one
//! moving along −x turns by −φ.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use nalgebra::{Matrix4, Vector3};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::entanglement::{concurrence, is_separable_ppt, ppt_spectrum, Spectrum4};
use crate::error::{Error, Result};
use crate::lorentz::{boost, rotation_angle_about, wigner_rotation, FourVector, LorentzMatrix};
use crate::spin_half::{bell_density, sigma, xi, BellSign, SpinVector, TwoQubitDensity};
use crate::two_particle::{
    branch_overlap, MixedBranch, MixedState, MomentumBranch, MomentumQubitDensity, PureBranch,
    PureState, TwoParticleState,
};

/// Upper end of the velocity bracket searched by [`solve_velocity_for_angle`].
pub const VELOCITY_BRACKET_TOP: f64 = 1.0 - 1e-12;
const MAX_BISECTION_STEPS: usize = 200;

/// Tolerance of the closed-form cross-checks performed by [`run`].
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-10;

pub const FIGURE1_RATIO_MIN: f64 = 1.05;
pub const FIGURE1_RATIO_MAX: f64 = 50.0;
pub const FIGURE1_SAMPLES: usize = 200;
pub const FIGURE2_RATIO: f64 = 10.0;
pub const FIGURE2_V_MAX: f64 = 0.999;
pub const FIGURE2_SAMPLES: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    /// `|p|/m > 0`.
    pub momentum_ratio: f64,
    /// Boost speed along y as a fraction of c, in [0, 1).
    pub boost_speed: f64,
    /// Spin seed ρ±.
    pub bell_sign: BellSign,
    pub state_kind: StateKind,
    /// Relative sign of the two momentum branches (pure states only).
    pub momentum_bell_sign: BellSign,
}

impl ScenarioConfig {
    pub fn new(momentum_ratio: f64, boost_speed: f64) -> Self {
        ScenarioConfig {
            momentum_ratio,
            boost_speed,
            bell_sign: BellSign::Minus,
            state_kind: StateKind::Pure,
            momentum_bell_sign: BellSign::Plus,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_ratio(self.momentum_ratio)?;
        check_speed(self.boost_speed)
    }
}

fn check_ratio(ratio: f64) -> Result<()> {
    if ratio > 0.0 && ratio.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "momentum ratio must be positive, got {ratio}"
        )))
    }
}

fn check_speed(v: f64) -> Result<()> {
    if v.is_nan() || v < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "boost speed must be in [0, 1), got {v}"
        )));
    }
    if v >= 1.0 {
        return Err(Error::VelocityNotSubluminal { speed: v });
    }
    Ok(())
}

/// Boost with speed `v` along +y.
pub fn boost_y(v: f64) -> Result<LorentzMatrix> {
    boost(Vector3::new(0.0, v, 0.0))
}

/// On-shell momentum `ratio · x̂` for unit mass.
pub fn momentum_along_x(ratio: f64) -> Result<FourVector> {
    FourVector::on_shell(1.0, Vector3::new(ratio, 0.0, 0.0))
}

/// The two momentum branches `(+p, −p)` and `(−p, +p)`.
pub fn branch_momenta(ratio: f64) -> Result<[MomentumBranch; 2]> {
    check_ratio(ratio)?;
    let plus = momentum_along_x(ratio)?;
    let minus = momentum_along_x(-ratio)?;
    Ok([
        MomentumBranch {
            label: 1,
            p_a: plus,
            p_b: minus,
        },
        MomentumBranch {
            label: 2,
            p_a: minus,
            p_b: plus,
        },
    ])
}

/// `(|p_A1,p_B1⟩ ± |p_A2,p_B2⟩)/√2 ⊗ |0⟩` with |0⟩ the Bell vector of `bell`.
pub fn initial_pure_state(
    ratio: f64,
    bell: BellSign,
    momentum_sign: BellSign,
) -> Result<PureState> {
    let [first, second] = branch_momenta(ratio)?;
    let spin = SpinVector::bell(bell);
    PureState::new(
        1.0,
        1.0,
        vec![
            PureBranch {
                momenta: first,
                amplitude: Complex64::from(FRAC_1_SQRT_2),
                spin,
            },
            PureBranch {
                momenta: second,
                amplitude: Complex64::from(momentum_sign.value() * FRAC_1_SQRT_2),
                spin,
            },
        ],
    )
}

/// Equal-weight mixture of the two momentum branches, each with spin ρ±.
pub fn initial_mixed_state(ratio: f64, bell: BellSign) -> Result<MixedState> {
    let [first, second] = branch_momenta(ratio)?;
    let spin = bell_density(bell);
    MixedState::new(
        1.0,
        1.0,
        vec![
            MixedBranch {
                momenta: first,
                probability: 0.5,
                spin,
            },
            MixedBranch {
                momenta: second,
                probability: 0.5,
                spin,
            },
        ],
    )
}

/// Wigner angle about z for momentum `ratio · x̂` under a boost `v` along y.
pub fn wigner_angle(ratio: f64, v: f64) -> Result<f64> {
    check_ratio(ratio)?;
    check_speed(v)?;
    let rotation = wigner_rotation(&boost_y(v)?, &momentum_along_x(ratio)?, 1.0)?;
    rotation_angle_about(&rotation, &Vector3::z())
}

/// Supremum of the Wigner angle over all boost speeds, `atan(|p|/m)`.
pub fn angle_limit(ratio: f64) -> f64 {
    ratio.atan()
}

/// Bisection for the speed `v` with `φ(v) = target` on the bracket
/// `[0, 1 − 1e-12]`. φ(v) increases monotonically, so the bracket is halved
/// until it cannot shrink further (or after 200 steps).
pub fn solve_velocity_for_angle(ratio: f64, target: f64) -> Result<f64> {
    check_ratio(ratio)?;
    let limit = angle_limit(ratio);
    if !(target >= 0.0 && target < limit) {
        return Err(Error::AngleUnreachable { target, limit });
    }
    if target == 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, VELOCITY_BRACKET_TOP);
    let mut phi_hi = wigner_angle(ratio, hi)?;
    if phi_hi < target {
        return Err(Error::AngleUnreachable {
            target,
            limit: phi_hi,
        });
    }
    let mut phi_lo = 0.0;
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let phi = wigner_angle(ratio, mid)?;
        if phi < target {
            lo = mid;
            phi_lo = phi;
        } else {
            hi = mid;
            phi_hi = phi;
        }
    }
    Ok(if target - phi_lo <= phi_hi - target {
        lo
    } else {
        hi
    })
}

/// `¼[1 ± (Σ₁Ξ₁ + Σ₂Ξ₂) cos 2φ − Σ₃Ξ₃]`, equal to `ρ± cos²φ + ρ∓ sin²φ`.
pub fn closed_form_spin_density(bell: BellSign, phi: f64) -> Matrix4<Complex64> {
    let k = Complex64::from(bell.value() * (2.0 * phi).cos());
    (Matrix4::identity() + (sigma(1) * xi(1) + sigma(2) * xi(2)) * k - sigma(3) * xi(3))
        * Complex64::from(0.25)
}

/// `¼[1 ± (Σ̃₁Ξ̃₁ − Σ̃₂Ξ̃₂) cos 2φ + Σ̃₃Ξ̃₃]` for the pure state with momentum sign ±.
pub fn closed_form_momentum_density(momentum_sign: BellSign, phi: f64) -> Matrix4<Complex64> {
    let k = Complex64::from(momentum_sign.value() * (2.0 * phi).cos());
    (Matrix4::identity() + (sigma(1) * xi(1) - sigma(2) * xi(2)) * k + sigma(3) * xi(3))
        * Complex64::from(0.25)
}

/// Everything [`run`] measures for one configuration.
#[derive(Debug, Clone)]
pub struct ScenarioResult {
    pub config: ScenarioConfig,
    pub wigner_angle: f64,
    pub spin_density_before: TwoQubitDensity,
    pub spin_density_after: TwoQubitDensity,
    pub momentum_density_before: MomentumQubitDensity,
    pub momentum_density_after: MomentumQubitDensity,
    pub concurrence_spin: f64,
    pub concurrence_momentum: f64,
    pub ppt_spin: Spectrum4,
    pub ppt_momentum: Spectrum4,
    pub separable_spin: bool,
    pub separable_momentum: bool,
    /// `⟨2|1⟩` for pure states.
    pub branch_overlap: Option<Complex64>,
}

fn ensure_close(
    quantity: &'static str,
    actual: &TwoQubitDensity,
    expected: &Matrix4<Complex64>,
) -> Result<()> {
    let deviation = actual.max_deviation(expected);
    if deviation <= CLOSED_FORM_TOLERANCE {
        Ok(())
    } else {
        Err(Error::ClosedFormMismatch {
            quantity,
            deviation,
        })
    }
}

/// Builds the initial state, boosts it and analyses the spin and momentum
/// marginals. The general transform is cross-checked against the closed
/// forms for both marginals; a mismatch is an internal error.
pub fn run(config: &ScenarioConfig) -> Result<ScenarioResult> {
    config.validate()?;
    let ratio = config.momentum_ratio;
    let lambda = boost_y(config.boost_speed)?;
    let phi = wigner_angle(ratio, config.boost_speed)?;

    let (before, overlap) = match config.state_kind {
        StateKind::Pure => {
            let state = initial_pure_state(ratio, config.bell_sign, config.momentum_bell_sign)?;
            let overlap = branch_overlap(&state, &lambda)?;
            (TwoParticleState::Pure(state), Some(overlap))
        }
        StateKind::Mixed => (
            TwoParticleState::Mixed(initial_mixed_state(ratio, config.bell_sign)?),
            None,
        ),
    };
    let after = before.transform(&lambda)?;

    let spin_before = before.spin_marginal();
    let spin_after = after.spin_marginal();
    let momentum_before = before.momentum_marginal()?;
    let momentum_after = after.momentum_marginal()?;

    ensure_close(
        "spin marginal",
        &spin_after,
        &closed_form_spin_density(config.bell_sign, phi),
    )?;
    let expected_momentum = match config.state_kind {
        StateKind::Pure => closed_form_momentum_density(config.momentum_bell_sign, phi),
        StateKind::Mixed => {
            let mut m = Matrix4::zeros();
            m[(0, 0)] = Complex64::from(0.5);
            m[(3, 3)] = Complex64::from(0.5);
            m
        }
    };
    ensure_close(
        "momentum marginal",
        momentum_after.density(),
        &expected_momentum,
    )?;

    let spin_report = is_separable_ppt(&spin_after)?;
    let momentum_report = is_separable_ppt(momentum_after.density())?;
    Ok(ScenarioResult {
        config: *config,
        wigner_angle: phi,
        spin_density_before: spin_before,
        spin_density_after: spin_after,
        momentum_density_before: momentum_before,
        momentum_density_after: momentum_after,
        concurrence_spin: concurrence(&spin_after)?,
        concurrence_momentum: concurrence(momentum_after.density())?,
        ppt_spin: ppt_spectrum(&spin_after)?,
        ppt_momentum: ppt_spectrum(momentum_after.density())?,
        separable_spin: spin_report.separable,
        separable_momentum: momentum_report.separable,
        branch_overlap: overlap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Row {
    pub momentum_ratio: f64,
    pub velocity: f64,
}

/// Speeds giving a π/4 Wigner angle over `samples` log-spaced ratios in
/// `[ratio_min, ratio_max]`.
pub fn figure1_curve(ratio_min: f64, ratio_max: f64, samples: usize) -> Result<Vec<Figure1Row>> {
    if !(ratio_min > 1.0 && ratio_max >= ratio_min && ratio_max.is_finite()) {
        return Err(Error::RatioRangeInvalid {
            min: ratio_min,
            max: ratio_max,
        });
    }
    if samples == 0 {
        return Err(Error::InvalidConfig("sample count must be positive".into()));
    }
    let (log_min, log_max) = (ratio_min.ln(), ratio_max.ln());
    let ratios: Vec<f64> = (0..samples)
        .map(|i| {
            if i == 0 {
                ratio_min
            } else if i + 1 == samples {
                ratio_max
            } else {
                (log_min + (log_max - log_min) * i as f64 / (samples - 1) as f64).exp()
            }
        })
        .collect();
    ratios
        .par_iter()
        .map(|&ratio| {
            Ok(Figure1Row {
                momentum_ratio: ratio,
                velocity: solve_velocity_for_angle(ratio, FRAC_PI_4)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure2Row {
    pub velocity: f64,
    pub wigner_angle: f64,
    /// Spin concurrence from the full transform.
    pub concurrence: f64,
    /// `|cos 2φ|`.
    pub closed_form: f64,
}

/// `samples` evenly spaced speeds on `[0, v_max]`.
pub fn velocity_grid(v_max: f64, samples: usize) -> Result<Vec<f64>> {
    check_speed(v_max)?;
    match samples {
        0 => Err(Error::InvalidConfig("sample count must be positive".into())),
        1 => Ok(vec![0.0]),
        n => Ok((0..n)
            .map(|i| {
                if i + 1 == n {
                    v_max
                } else {
                    v_max * i as f64 / (n - 1) as f64
                }
            })
            .collect()),
    }
}

/// Spin concurrence against boost speed at fixed `ratio`, singlet seed, pure state.
pub fn figure2_curve(ratio: f64, speeds: &[f64]) -> Result<Vec<Figure2Row>> {
    check_ratio(ratio)?;
    speeds
        .par_iter()
        .map(|&v| {
            let result = run(&ScenarioConfig::new(ratio, v))?;
            Ok(Figure2Row {
                velocity: v,
                wigner_angle: result.wigner_angle,
                concurrence: result.concurrence_spin,
                closed_form: (2.0 * result.wigner_angle).cos().abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn no_boost_no_angle() {
        assert_eq!(wigner_angle(10.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn angle_saturates_at_arctan_of_ratio() {
        let phi = wigner_angle(10.0, 1.0 - 1e-9).unwrap();
        assert!(phi < angle_limit(10.0));
        assert_abs_diff_eq!(phi, 10f64.atan(), epsilon = 1e-3);
    }

    #[test]
    fn zero_target_needs_no_boost() {
        assert_eq!(solve_velocity_for_angle(3.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn quarter_turn_is_unreachable_below_unit_ratio() {
        assert!(matches!(
            solve_velocity_for_angle(0.5, FRAC_PI_4),
            Err(Error::AngleUnreachable { .. })
        ));
        assert!(matches!(
            solve_velocity_for_angle(1.0, FRAC_PI_4),
            Err(Error::AngleUnreachable { .. })
        ));
        assert!(solve_velocity_for_angle(2.0, -0.1).is_err());
    }

    #[test]
    fn solved_velocity_hits_the_target() {
        let v = solve_velocity_for_angle(10.0, FRAC_PI_4).unwrap();
        assert!((wigner_angle(10.0, v).unwrap() - FRAC_PI_4).abs() <= 1e-12);
        let v = solve_velocity_for_angle(3.0, 0.5).unwrap();
        assert!((wigner_angle(3.0, v).unwrap() - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(ScenarioConfig::new(0.0, 0.5).validate().is_err());
        assert!(ScenarioConfig::new(1.0, -0.1).validate().is_err());
        assert!(matches!(
            ScenarioConfig::new(1.0, 1.0).validate(),
            Err(Error::VelocityNotSubluminal { .. })
        ));
        assert!(matches!(
            figure1_curve(1.0, 5.0, 10),
            Err(Error::RatioRangeInvalid { .. })
        ));
        assert!(matches!(
            figure1_curve(3.0, 2.0, 10),
            Err(Error::RatioRangeInvalid { .. })
        ));
    }

    #[test]
    fn unboosted_run_echoes_the_input() {
        for kind in [StateKind::Pure, StateKind::Mixed] {
            for bell in [BellSign::Plus, BellSign::Minus] {
                let config = ScenarioConfig {
                    bell_sign: bell,
                    state_kind: kind,
                    ..ScenarioConfig::new(4.0, 0.0)
                };
                let r = run(&config).unwrap();
                assert!(
                    r.spin_density_after
                        .max_deviation(bell_density(bell).matrix())
                        < 1e-14
                );
                assert_abs_diff_eq!(r.concurrence_spin, 1.0, epsilon = 1e-12);
                let expected_momentum = if kind == StateKind::Pure { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(r.concurrence_momentum, expected_momentum, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn velocity_grid_endpoints() {
        let g = velocity_grid(0.999, 500).unwrap();
        assert_eq!(g.len(), 500);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[499], 0.999);
        assert!(velocity_grid(1.0, 5).is_err());
    }

    #[test]
    fn closed_forms_reduce_to_bell_states_without_rotation() {
        let spin = closed_form_spin_density(BellSign::Minus, 0.0);
        assert!(bell_density(BellSign::Minus).max_deviation(&spin) < 1e-15);
        let m = closed_form_momentum_density(BellSign::Plus, 0.0);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!((m[(i, j)] - Complex64::from(0.5)).norm() < 1e-15);
        }
    }
}
