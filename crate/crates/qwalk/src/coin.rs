//! Coin-operator families for the walk and their left/right decomposition.
//!
//! The walk is driven by a position-indexed family of 2×2 unitaries `U_x`.
//! Splitting each `U_x` into its top row (`P_x`, move left) and bottom row
//! (`Q_x`, move right) is what turns the unitary evolution into a sum over
//! lattice paths.

use crate::mat2::Mat2;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CoinError {
    #[error("custom coin field has no coin at position {0}")]
    MissingPosition(i64),
}

/// Internal chirality state; `Left` is the basis vector [1,0]ᵀ, `Right` is [0,1]ᵀ.
///
/// The chirality decides the next displacement: left chirality moves the
/// walker one site left, right chirality one site right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chirality {
    Left,
    Right,
}

impl Chirality {
    pub fn basis_vector(self) -> crate::mat2::Vec2 {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        match self {
            Chirality::Left => crate::mat2::Vec2::new(one, zero),
            Chirality::Right => crate::mat2::Vec2::new(zero, one),
        }
    }
}

/// Reduces an angle to the canonical interval [0, 2π).
pub fn normalize_angle(omega: f64) -> f64 {
    let w = omega.rem_euclid(TAU);
    // rem_euclid can return TAU itself when omega is a tiny negative number.
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// √2 times the one-parameter coin: [[1, e^{iω}], [e^{-iω}, -1]].
///
/// The entries carry no 1/√2 factor, so for this family they are exact
/// apart from the single rounding in e^{iω}.
pub fn coin_eq22_sqrt2(omega: f64) -> Mat2 {
    let w = normalize_angle(omega);
    let phase = Complex64::from_polar(1.0, w);
    Mat2::new(
        Complex64::new(1.0, 0.0),
        phase,
        phase.conj(),
        Complex64::new(-1.0, 0.0),
    )
}

/// The one-parameter coin used throughout: (1/√2) [[1, e^{iω}], [e^{-iω}, -1]].
///
/// At ω = 0 this is the Hadamard gate.
pub fn coin_eq22(omega: f64) -> Mat2 {
    coin_eq22_sqrt2(omega).scale_re(FRAC_1_SQRT_2)
}

/// √2 times the companion coin: [[e^{iω}, 1], [1, -e^{-iω}]].
pub fn coin_eq21_sqrt2(omega: f64) -> Mat2 {
    let w = normalize_angle(omega);
    let phase = Complex64::from_polar(1.0, w);
    Mat2::new(
        phase,
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 0.0),
        -phase.conj(),
    )
}

/// The companion one-parameter coin: (1/√2) [[e^{iω}, 1], [1, -e^{-iω}]].
///
/// Also reduces to the Hadamard gate at ω = 0, but the walk it generates
/// does not localize.
pub fn coin_eq21(omega: f64) -> Mat2 {
    coin_eq21_sqrt2(omega).scale_re(FRAC_1_SQRT_2)
}

/// √2 times the Hadamard gate: [[1, 1], [1, -1]], exact entries.
pub fn hadamard_sqrt2() -> Mat2 {
    Mat2::from_real(1.0, 1.0, 1.0, -1.0)
}

/// The Hadamard gate H = (1/√2) [[1, 1], [1, -1]].
pub fn hadamard() -> Mat2 {
    hadamard_sqrt2().scale_re(FRAC_1_SQRT_2)
}

/// Deviation of `m` from unitarity: max entrywise error of m·m† − I.
pub fn unitarity_error(m: &Mat2) -> f64 {
    (*m * m.adjoint()).max_abs_diff(&Mat2::IDENTITY)
}

/// The top-row/bottom-row split of a coin: `p_part + q_part == coin` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinSplit {
    /// Top row of the coin, bottom row zero; the walker moves left.
    pub p_part: Mat2,
    /// Bottom row of the coin, top row zero; the walker moves right.
    pub q_part: Mat2,
}

/// Splits a coin into its move-left and move-right parts.
pub fn split(coin: &Mat2) -> CoinSplit {
    let zero = Complex64::new(0.0, 0.0);
    CoinSplit {
        p_part: Mat2::new(coin.a, coin.b, zero, zero),
        q_part: Mat2::new(zero, zero, coin.c, coin.d),
    }
}

/// A position-indexed family of coins.
#[derive(Debug, Clone)]
pub enum CoinField {
    /// Coin `coin_eq22(ω)` at the origin, Hadamard everywhere else.
    Eq22Inhomogeneous { omega: f64 },
    /// Coin `coin_eq21(ω)` at the origin, Hadamard everywhere else.
    Eq21Inhomogeneous { omega: f64 },
    /// Hadamard coin at every position (the homogeneous walk).
    Hadamard,
    /// Arbitrary per-position coins; positions not present are an error.
    Custom(BTreeMap<i64, Mat2>),
}

impl CoinField {
    pub fn eq22(omega: f64) -> Self {
        CoinField::Eq22Inhomogeneous {
            omega: normalize_angle(omega),
        }
    }

    pub fn eq21(omega: f64) -> Self {
        CoinField::Eq21Inhomogeneous {
            omega: normalize_angle(omega),
        }
    }

    /// The coin acting at position `x`.
    pub fn coin_at(&self, x: i64) -> Result<Mat2, CoinError> {
        match self {
            CoinField::Eq22Inhomogeneous { omega } => Ok(if x == 0 {
                coin_eq22(*omega)
            } else {
                hadamard()
            }),
            CoinField::Eq21Inhomogeneous { omega } => Ok(if x == 0 {
                coin_eq21(*omega)
            } else {
                hadamard()
            }),
            CoinField::Hadamard => Ok(hadamard()),
            CoinField::Custom(coins) => coins
                .get(&x)
                .copied()
                .ok_or(CoinError::MissingPosition(x)),
        }
    }

    /// The P/Q split of the coin at position `x`.
    pub fn split_at(&self, x: i64) -> Result<CoinSplit, CoinError> {
        Ok(split(&self.coin_at(x)?))
    }

    /// The P/Q split scaled by √2, without the 1/√2 in the entries.
    ///
    /// For the builtin families the entries are exact (±1 and e^{±iω}),
    /// which lets the evolution engine defer the scale to exact
    /// multiplications by 1/2 every two steps. Custom coins are scaled by
    /// the rounded √2.
    pub fn sqrt2_split_at(&self, x: i64) -> Result<CoinSplit, CoinError> {
        let unscaled = match self {
            CoinField::Eq22Inhomogeneous { omega } if x == 0 => coin_eq22_sqrt2(*omega),
            CoinField::Eq21Inhomogeneous { omega } if x == 0 => coin_eq21_sqrt2(*omega),
            CoinField::Eq22Inhomogeneous { .. }
            | CoinField::Eq21Inhomogeneous { .. }
            | CoinField::Hadamard => hadamard_sqrt2(),
            CoinField::Custom(_) => self.coin_at(x)?.scale_re(std::f64::consts::SQRT_2),
        };
        Ok(split(&unscaled))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn assert_mat_close(m: &Mat2, n: &Mat2, tol: f64) {
        assert!(
            m.max_abs_diff(n) <= tol,
            "matrices differ by {} > {tol}:\n{m:?}\n{n:?}",
            m.max_abs_diff(n)
        );
    }

    #[test]
    fn chirality_basis_vectors() {
        let l = Chirality::Left.basis_vector();
        let r = Chirality::Right.basis_vector();
        assert_eq!((l.l.re, l.r.re), (1.0, 0.0));
        assert_eq!((r.l.re, r.r.re), (0.0, 1.0));
        // A coin moves the left-chirality part left: P picks out row one.
        let s = split(&hadamard());
        assert_eq!((s.p_part * r).r, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn eq22_at_zero_is_hadamard() {
        assert_mat_close(&coin_eq22(0.0), &hadamard(), 0.0);
    }

    #[test]
    fn eq22_at_pi() {
        // e^{iπ} = -1 plugged into the coin.
        let expected = Mat2::from_real(1.0, -1.0, -1.0, -1.0).scale_re(FRAC_1_SQRT_2);
        assert_mat_close(&coin_eq22(PI), &expected, 1e-15);
    }

    #[test]
    fn eq21_at_zero_is_hadamard() {
        assert_mat_close(&coin_eq21(0.0), &hadamard(), 0.0);
    }

    #[test]
    fn eq21_at_half_pi() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let expected = Mat2::new(i, one, one, i).scale_re(FRAC_1_SQRT_2);
        assert_mat_close(&coin_eq21(PI / 2.0), &expected, 1e-15);
    }

    #[test]
    fn coins_unitary_on_grid() {
        for k in 0..64 {
            let w = TAU * k as f64 / 64.0;
            assert!(unitarity_error(&coin_eq22(w)) < 1e-12, "eq22 at ω={w}");
            assert!(unitarity_error(&coin_eq21(w)) < 1e-12, "eq21 at ω={w}");
        }
    }

    #[test]
    fn split_of_hadamard() {
        let s = split(&hadamard());
        let p = Mat2::from_real(1.0, 1.0, 0.0, 0.0).scale_re(FRAC_1_SQRT_2);
        let q = Mat2::from_real(0.0, 0.0, 1.0, -1.0).scale_re(FRAC_1_SQRT_2);
        assert_mat_close(&s.p_part, &p, 0.0);
        assert_mat_close(&s.q_part, &q, 0.0);
    }

    #[test]
    fn split_of_origin_coin() {
        let w = 1.234;
        let s = split(&coin_eq22(w));
        let phase = Complex64::from_polar(1.0, w);
        let zero = Complex64::new(0.0, 0.0);
        let p0 = Mat2::new(Complex64::new(1.0, 0.0), phase, zero, zero).scale_re(FRAC_1_SQRT_2);
        let q0 = Mat2::new(zero, zero, phase.conj(), Complex64::new(-1.0, 0.0))
            .scale_re(FRAC_1_SQRT_2);
        assert_mat_close(&s.p_part, &p0, 0.0);
        assert_mat_close(&s.q_part, &q0, 0.0);
    }

    #[test]
    fn split_reconstructs_exactly() {
        for k in 0..32 {
            let w = TAU * k as f64 / 32.0;
            let u = coin_eq22(w);
            let s = split(&u);
            assert_eq!(s.p_part + s.q_part, u);
            assert_eq!(s.p_part.c, Complex64::new(0.0, 0.0));
            assert_eq!(s.p_part.d, Complex64::new(0.0, 0.0));
            assert_eq!(s.q_part.a, Complex64::new(0.0, 0.0));
            assert_eq!(s.q_part.b, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn field_coin_lookup() {
        let field = CoinField::eq22(PI);
        assert_eq!(field.coin_at(0).unwrap(), coin_eq22(PI));
        assert_eq!(field.coin_at(5).unwrap(), hadamard());
        assert_eq!(field.coin_at(-3).unwrap(), hadamard());
        assert_eq!(CoinField::Hadamard.coin_at(17).unwrap(), hadamard());
    }

    #[test]
    fn off_origin_is_hadamard_for_all_omega() {
        for k in 0..16 {
            let w = TAU * k as f64 / 16.0;
            let field = CoinField::eq22(w);
            for x in [-7, -1, 1, 2, 100] {
                assert_eq!(field.coin_at(x).unwrap(), hadamard());
            }
        }
    }

    #[test]
    fn custom_field_missing_position() {
        let mut coins = BTreeMap::new();
        coins.insert(0, hadamard());
        let field = CoinField::Custom(coins);
        assert_eq!(field.coin_at(0).unwrap(), hadamard());
        assert_eq!(field.coin_at(1), Err(CoinError::MissingPosition(1)));
    }

    #[test]
    fn angle_normalization() {
        assert_eq!(normalize_angle(TAU), 0.0);
        assert_eq!(normalize_angle(-PI), PI);
        assert!((normalize_angle(TAU + 0.5) - 0.5).abs() < 1e-15);
        assert_eq!(normalize_angle(-1e-20), 0.0);
    }

    #[test]
    fn perturbed_coin_detected_as_nonunitary() {
        let mut m = hadamard();
        m.a += Complex64::new(1e-3, 0.0);
        assert!(unitarity_error(&m) > 1e-4);
    }
}
