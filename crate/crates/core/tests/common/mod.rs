//! Test-side oracles that share no code with the library.
#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

type M4 = [[f64; 4]; 4];

fn mul(a: &M4, b: &M4) -> M4 {
    let mut c = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// Pure boost with velocity `beta` (textbook gamma form).
fn pure_boost(beta: [f64; 3]) -> M4 {
    let b2: f64 = beta.iter().map(|x| x * x).sum();
    let mut l = [[0.0; 4]; 4];
    for (i, row) in l.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    if b2 == 0.0 {
        return l;
    }
    let g = 1.0 / (1.0 - b2).sqrt();
    l[0][0] = g;
    for i in 0..3 {
        l[0][i + 1] = g * beta[i];
        l[i + 1][0] = g * beta[i];
        for j in 0..3 {
            l[i + 1][j + 1] += (g - 1.0) * beta[i] * beta[j] / b2;
        }
    }
    l
}

/// Inverse of a pure boost is the boost with opposite velocity.
fn inverse_boost(beta: [f64; 3]) -> M4 {
    pure_boost([-beta[0], -beta[1], -beta[2]])
}

/// Wigner angle about z for momentum `ratio` along x (m = 1) boosted with `v`
/// along y, by explicit composition `L(Λp)⁻¹ Λ L(p)`.
pub fn composed_angle(ratio: f64, v: f64) -> f64 {
    let e = (1.0 + ratio * ratio).sqrt();
    let lp = pure_boost([ratio / e, 0.0, 0.0]);
    let lam = pure_boost([0.0, v, 0.0]);
    let g = 1.0 / (1.0 - v * v).sqrt();
    let q = [g * e, ratio, g * v * e, 0.0];
    let lq_inv = inverse_boost([q[1] / q[0], q[2] / q[0], q[3] / q[0]]);
    let w = mul(&lq_inv, &mul(&lam, &lp));
    (w[2][1] - w[1][2]).atan2(w[1][1] + w[2][2])
}

/// `tan φ = sinh χ sinh η / (cosh χ + cosh η)` with χ the particle rapidity
/// and η the boost rapidity.
pub fn closed_form_angle(ratio: f64, v: f64) -> f64 {
    let (sc, cc) = (ratio, (1.0 + ratio * ratio).sqrt());
    let eta = v.atanh();
    (sc * eta.sinh()).atan2(cc + eta.cosh())
}

/// Bisection on the composed angle.
pub fn oracle_velocity(ratio: f64, target: f64) -> f64 {
    assert!(target < ratio.atan() && target < FRAC_PI_2);
    let (mut lo, mut hi) = (0.0_f64, 1.0 - 1e-12);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if composed_angle(ratio, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Rows of `tests/golden/pi4_velocity.csv` as `(p_over_m, v)`.
pub fn golden_pi4() -> Vec<(f64, f64)> {
    let text = include_str!("../golden/pi4_velocity.csv");
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    reader
        .records()
        .map(|r| {
            let r = r.expect("golden row");
            (r[0].parse().unwrap(), r[1].parse().unwrap())
        })
        .collect()
}

pub fn golden_velocity(ratio: f64) -> f64 {
    golden_pi4()
        .into_iter()
        .find(|(r, _)| *r == ratio)
        .map(|(_, v)| v)
        .expect("ratio present in golden file")
}

/// 100 target angles spread over [0, π/2): kπ/200 for k = 0..99.
pub fn phi_grid() -> Vec<f64> {
    (0..100).map(|k| FRAC_PI_2 * k as f64 / 100.0).collect()
}

/// Momentum ratio used to reach `phi`: 10 where possible, 100 beyond.
pub fn ratio_for(phi: f64) -> f64 {
    if phi <= 1.4 {
        10.0
    } else {
        100.0
    }
}
