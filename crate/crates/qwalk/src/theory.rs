//! Closed-form scalar layer: spectral constants of the first-return block,
//! the localization limit c(ω), and the large-time asymptotics.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TheoryError {
    #[error("asymptotic amplitudes are undefined at ω = 0; the walk delocalizes")]
    DegenerateOmega,
}

/// Scalar bundle derived from ω.
///
/// `gamma_±` are the eigenvalues of the first-return block matrix
/// [[-e^{-iω}, 1], [-1, -e^{iω}]]; its eigenvectors are [1, -iμ_±]ᵀ with
/// squared norms `c_±²`. The pair (sin θ₀, cos θ₀) drives the oscillation
/// of the origin amplitudes at large times.
#[derive(Debug, Clone, Copy)]
pub struct TheoryParams {
    pub omega: f64,
    pub gamma_plus: Complex64,
    pub gamma_minus: Complex64,
    pub mu_plus: f64,
    pub mu_minus: f64,
    pub c_plus_sq: f64,
    pub c_minus_sq: f64,
    /// The localization limit c(ω).
    pub localization: f64,
    pub sin_theta0: f64,
    pub cos_theta0: f64,
    /// True at ω = 0, where the oscillatory description is vacuous.
    pub theta0_degenerate: bool,
}

/// Computes the full scalar bundle for a given ω.
pub fn params(omega: f64) -> TheoryParams {
    let (sin_w, cos_w) = omega.sin_cos();
    let root = (1.0 + sin_w * sin_w).sqrt();
    let c_plus_sq = 2.0 * ((1.0 + sin_w * sin_w) - sin_w * root);
    let c_minus_sq = 2.0 * ((1.0 + sin_w * sin_w) + sin_w * root);
    // The bracket (1 + sin²ω) ∓ sinω·√(1 + sin²ω) is positive for all real ω.
    assert!(c_plus_sq > 0.0 && c_minus_sq > 0.0);
    // Denominator 3 - 2cosω ≥ 1 keeps sin²θ₀ + cos²θ₀ = 1.
    let denom = 3.0 - 2.0 * cos_w;
    TheoryParams {
        omega,
        gamma_plus: Complex64::new(-cos_w, root),
        gamma_minus: Complex64::new(-cos_w, -root),
        mu_plus: sin_w - root,
        mu_minus: sin_w + root,
        c_plus_sq,
        c_minus_sq,
        localization: localization_constant(omega),
        sin_theta0: (2.0 - cos_w) * root / denom,
        cos_theta0: -(1.0 - cos_w) * (1.0 - cos_w) / denom,
        theta0_degenerate: 1.0 - cos_w == 0.0,
    }
}

/// The localization limit c(ω) = (2(1 - cosω)/(3 - 2cosω))².
pub fn localization_constant(omega: f64) -> f64 {
    let cos_w = omega.cos();
    let v = 2.0 * (1.0 - cos_w) / (3.0 - 2.0 * cos_w);
    v * v
}

/// Mean of c(ω) under the uniform distribution on [0, 2π): (25 - 7√5)/25.
pub fn expected_c_uniform() -> f64 {
    (25.0 - 7.0 * 5.0_f64.sqrt()) / 25.0
}

/// Trapezoid cross-check of the same mean, (1/2π)∫₀^{2π} c(ω) dω.
///
/// The integrand is periodic, so the uniform-grid trapezoid rule converges
/// spectrally; 10⁴ points reach well past 1e-8.
pub fn expected_c_quadrature(points: usize) -> f64 {
    assert!(points >= 2);
    let h = 2.0 * PI / points as f64;
    (0..points)
        .map(|k| localization_constant(k as f64 * h))
        .sum::<f64>()
        / points as f64
}

/// Large-time predictions for the four real amplitude components at the
/// origin at time 2n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticAmplitudes {
    pub l_re: f64,
    pub l_im: f64,
    pub r_re: f64,
    pub r_im: f64,
}

impl AsymptoticAmplitudes {
    /// Sum of the four squares; identically c(ω) for every n.
    pub fn squared_sum(&self) -> f64 {
        self.l_re * self.l_re
            + self.l_im * self.l_im
            + self.r_re * self.r_re
            + self.r_im * self.r_im
    }
}

/// Oscillatory asymptotics of the origin amplitude components at time 2n.
///
/// Errors at ω = 0: the prefactors vanish and the decay law 1/(πn) takes
/// over instead.
pub fn asymptotic_amplitudes(omega: f64, half_time: usize) -> Result<AsymptoticAmplitudes, TheoryError> {
    let p = params(omega);
    if p.theta0_degenerate {
        return Err(TheoryError::DegenerateOmega);
    }
    let (sin_w, cos_w) = omega.sin_cos();
    let root = (1.0 + sin_w * sin_w).sqrt();
    let denom = 3.0 - 2.0 * cos_w;
    let theta0 = p.sin_theta0.atan2(p.cos_theta0);
    let phase = half_time as f64 * theta0;
    let cos_part = 2.0_f64.sqrt() * (1.0 - cos_w) / denom * phase.cos();
    let sin_scale = 2.0_f64.sqrt() * (1.0 - cos_w) / (denom * root) * phase.sin();
    Ok(AsymptoticAmplitudes {
        l_re: cos_part,
        l_im: -(1.0 + sin_w) * sin_scale,
        r_re: (1.0 - sin_w) * sin_scale,
        r_im: cos_part,
    })
}

/// Leading-order Hadamard return probability at time 2n: 1/(πn).
pub fn hadamard_asymptote(half_time: usize) -> f64 {
    assert!(half_time >= 1);
    1.0 / (PI * half_time as f64)
}

/// Leading-order classical return probability at time 2n:
/// (2/(p₀/p + q₀/q)) (4pq)ⁿ / √(πn).
pub fn classical_asymptote(p0: f64, q0: f64, p: f64, q: f64, half_time: usize) -> f64 {
    assert!(half_time >= 1);
    assert!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0);
    let n = half_time as f64;
    2.0 / (p0 / p + q0 / q) * (4.0 * p * q).powf(n) / (PI * n).sqrt()
}
