//! Truncated formal power series and the walk's generating functions.
//!
//! Series coefficients live in an exact coefficient ring whenever the series
//! itself is ω-independent (√(1+z⁴), the first-return kernel, the
//! first-passage generating functions), so the dyadic structure of the
//! return-probability tables survives bit for bit. ω enters only through
//! cos ω and sin ω scalars, which may be exact rationals (ω ∈ {0, π}) or
//! doubles (everywhere else); the same code serves both through [`Coeff`].
//!
//! Quantities with a √2 that cannot be absorbed into the coefficient ring
//! carry it symbolically: [`ScaledSeries`] is a rational series times an
//! explicit power of √2, and [`AmplitudeSeries`] stores the origin
//! amplitudes scaled by √2 (so the stored constant term is 1, not 1/√2).

use crate::mat2::Vec2;
use crate::theory;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::f64::consts::FRAC_1_SQRT_2;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("series division needs an invertible constant term")]
    DivisionByNonUnit,
    #[error("series square root needs constant term 1")]
    SqrtRequiresUnitConstant,
    #[error("series has a pole at z = 0")]
    PoleAtZero,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

/// Coefficient ring of a truncated series.
pub trait Coeff: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Exact division; the caller guarantees `other` is nonzero.
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn to_f64(&self) -> f64;
}

impl Coeff for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).expect("rational out of f64 range")
    }
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// One-variable formal power series truncated at a fixed order.
///
/// `coeffs[n]` is the coefficient of zⁿ; the truncation order is
/// `coeffs.len() - 1`. Binary operations truncate to the smaller order of
/// the two operands.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Series<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the z⁰ slot");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Series::constant(T::one(), order)
    }

    /// c·z^power, truncated at `order`.
    pub fn monomial(c: T, power: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of zⁿ (zero past the truncation order).
    pub fn coeff(&self, n: usize) -> T {
        self.coeffs.get(n).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Series {
            coeffs: (0..n).map(|i| self.coeffs[i].add(&other.coeffs[i])).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Series {
            coeffs: (0..n).map(|i| self.coeffs[i].sub(&other.coeffs[i])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(Coeff::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![T::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
            }
        }
        Series { coeffs }
    }

    pub fn mul_scalar(&self, s: &T) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }

    /// Series division; fails when the divisor's constant term is zero.
    pub fn div(&self, den: &Self) -> Result<Self, SeriesError> {
        if den.coeffs[0].is_zero() {
            return Err(SeriesError::DivisionByNonUnit);
        }
        let n = self.coeffs.len().min(den.coeffs.len());
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            let mut acc = self.coeffs[i].clone();
            for j in 1..=i.min(den.coeffs.len() - 1) {
                acc = acc.sub(&den.coeffs[j].mul(&out[i - j]));
            }
            out[i] = acc.div(&den.coeffs[0]);
        }
        Ok(Series { coeffs: out })
    }

    /// Square root of a series with constant term 1, by coefficient
    /// recursion from (result)² = self; exact in an exact ring.
    pub fn sqrt_unit(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != T::one() {
            return Err(SeriesError::SqrtRequiresUnitConstant);
        }
        let n = self.coeffs.len();
        let two = T::from_ratio(2, 1);
        let mut out = vec![T::zero(); n];
        out[0] = T::one();
        for i in 1..n {
            let mut acc = self.coeffs[i].clone();
            for j in 1..i {
                acc = acc.sub(&out[j].mul(&out[i - j]));
            }
            out[i] = acc.div(&two);
        }
        Ok(Series { coeffs: out })
    }

    /// Divides by z^k; the k lowest coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self, SeriesError> {
        if k >= self.coeffs.len() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(SeriesError::PoleAtZero);
        }
        Ok(Series {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplies by z^k; the truncation order grows by k.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Shortens (or keeps) the series at the given order.
    pub fn truncate(&self, order: usize) -> Self {
        Series {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// Integer power, truncated at this series' order.
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Series::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_f64(&self) -> Series<f64> {
        Series {
            coeffs: self.coeffs.iter().map(Coeff::to_f64).collect(),
        }
    }
}

/// Binomial expansion of √(1 + z⁴); nonzero only at powers of z⁴.
pub fn sqrt_one_plus_z4<T: Coeff>(order: usize) -> Series<T> {
    Series::one(order)
        .add(&Series::monomial(T::one(), 4, order))
        .sqrt_unit()
        .expect("constant term is 1")
}

/// The first-return kernel Z = -1 - z² + √(1 + z⁴).
pub fn first_return_kernel<T: Coeff>(order: usize) -> Series<T> {
    sqrt_one_plus_z4::<T>(order)
        .sub(&Series::one(order))
        .sub(&Series::monomial(T::one(), 2, order))
}

/// Coefficients r*_n of the first-return scalar sequence, with generating
/// function (-1 - z² + √(1 + z⁴))/z. Nonzero only at n = 1 and n = 4m - 1.
pub fn r_star_series<T: Coeff>(order: usize) -> Series<T> {
    first_return_kernel::<T>(order + 1)
        .shift_down(1)
        .expect("kernel vanishes at z = 0")
}

/// A series multiplied by an explicit power of √2: value = series · (√2)^pow.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledSeries<T> {
    pub series: Series<T>,
    pub sqrt2_pow: i32,
}

impl<T: Coeff> ScaledSeries<T> {
    /// Numerical coefficient of zⁿ with the √2 power folded in.
    pub fn coeff_f64(&self, n: usize) -> f64 {
        self.series.coeff(n).to_f64() * 2.0_f64.powf(self.sqrt2_pow as f64 / 2.0)
    }
}

/// Numerator of λ₊ before the 1/(√2 z) factor: -1 + z² + √(1 + z⁴).
fn lambda_plus_numerator<T: Coeff>(order: usize) -> Series<T> {
    sqrt_one_plus_z4::<T>(order)
        .sub(&Series::one(order))
        .add(&Series::monomial(T::one(), 2, order))
}

/// The root λ₊ = (-1 + z² + √(1 + z⁴))/(√2 z) of the first-passage
/// recurrence; a genuine power series because the constant term cancels.
pub fn lambda_plus_series<T: Coeff>(order: usize) -> ScaledSeries<T> {
    ScaledSeries {
        series: lambda_plus_numerator::<T>(order + 1)
            .shift_down(1)
            .expect("numerator vanishes at z = 0"),
        sqrt2_pow: -1,
    }
}

/// λ₋ = (-1 + z² - √(1 + z⁴))/(√2 z) is not a power series: its numerator
/// has constant term -2, so it keeps a 1/z pole.
pub fn lambda_minus_series<T: Coeff>(_order: usize) -> Result<ScaledSeries<T>, SeriesError> {
    Err(SeriesError::PoleAtZero)
}

/// (-1 + √(1 + z⁴))/z, the plus-side r-coefficient generating function from
/// the boundary-adjacent start.
fn r_from_one<T: Coeff>(order: usize) -> Series<T> {
    sqrt_one_plus_z4::<T>(order + 1)
        .sub(&Series::one(order + 1))
        .shift_down(1)
        .expect("vanishes at z = 0")
}

/// Plus-side first-passage generating functions from m ≥ 1:
/// p^(∞,m)(z) = z λ₊^{m-1} and r^(∞,m)(z) = ((-1 + √(1+z⁴))/z) λ₊^{m-1}.
#[derive(Debug, Clone)]
pub struct FirstPassagePlusGf<T> {
    pub p: ScaledSeries<T>,
    pub r: ScaledSeries<T>,
}

pub fn first_passage_plus_gf<T: Coeff>(m: i64, order: usize) -> FirstPassagePlusGf<T> {
    assert!(m >= 1, "plus-side start must be ≥ 1, got {m}");
    let e = (m - 1) as usize;
    let lam_pow = lambda_plus_series::<T>(order).series.pow(e);
    FirstPassagePlusGf {
        p: ScaledSeries {
            series: lam_pow.shift_up(1).truncate(order),
            sqrt2_pow: -(e as i32),
        },
        r: ScaledSeries {
            series: r_from_one::<T>(order).mul(&lam_pow),
            sqrt2_pow: -(e as i32),
        },
    }
}

/// Minus-side first-passage generating functions from m ≤ -1:
/// q^(-∞,m)(z) = z λ₋^{m+1} and s^(-∞,m)(z) = ((1 - √(1+z⁴))/z) λ₋^{m+1},
/// rewritten through λ₋^{m+1} = (-1)^{m+1} λ₊^{-(m+1)} since λ₊λ₋ = -1.
#[derive(Debug, Clone)]
pub struct FirstPassageMinusGf<T> {
    pub q: ScaledSeries<T>,
    pub s: ScaledSeries<T>,
}

pub fn first_passage_minus_gf<T: Coeff>(m: i64, order: usize) -> FirstPassageMinusGf<T> {
    assert!(m <= -1, "minus-side start must be ≤ -1, got {m}");
    let e = (-(m + 1)) as usize;
    let mut lam_pow = lambda_plus_series::<T>(order).series.pow(e);
    if e % 2 == 1 {
        lam_pow = lam_pow.neg();
    }
    FirstPassageMinusGf {
        q: ScaledSeries {
            series: lam_pow.shift_up(1).truncate(order),
            sqrt2_pow: -(e as i32),
        },
        s: ScaledSeries {
            series: r_from_one::<T>(order).neg().mul(&lam_pow),
            sqrt2_pow: -(e as i32),
        },
    }
}

/// The four origin-amplitude coefficient streams, scaled by √2: the stored
/// coefficient of zⁿ is √2 · Ψ_n^(·)(0). Odd-index coefficients vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSeries<T> {
    pub l_re: Series<T>,
    pub l_im: Series<T>,
    pub r_re: Series<T>,
    pub r_im: Series<T>,
}

impl<T: Coeff> AmplitudeSeries<T> {
    /// Return probability at the given time, exact in the coefficient ring:
    /// p_n(0) = (sum of the four squared scaled coefficients)/2.
    pub fn return_probability(&self, time: usize) -> T {
        let sq = |s: &Series<T>| {
            let c = s.coeff(time);
            c.mul(&c)
        };
        sq(&self.l_re)
            .add(&sq(&self.l_im))
            .add(&sq(&self.r_re))
            .add(&sq(&self.r_im))
            .mul(&T::from_ratio(1, 2))
    }

    /// Origin amplitude (left, right) at the given time as doubles.
    pub fn amplitude(&self, time: usize) -> Vec2 {
        Vec2::new(
            Complex64::new(
                self.l_re.coeff(time).to_f64() * FRAC_1_SQRT_2,
                self.l_im.coeff(time).to_f64() * FRAC_1_SQRT_2,
            ),
            Complex64::new(
                self.r_re.coeff(time).to_f64() * FRAC_1_SQRT_2,
                self.r_im.coeff(time).to_f64() * FRAC_1_SQRT_2,
            ),
        )
    }
}

/// Origin-amplitude generating functions in compact form: with
/// Z = -1 - z² + √(1+z⁴) and D = 2 + 2Z cosω + Z²,
///
/// ```text
/// √2·Ψ^(L,ℜ) = √2·Ψ^(R,ℑ) = (2 + Z cosω)/D,
/// √2·Ψ^(L,ℑ) = (1 + sinω) Z / D,
/// √2·Ψ^(R,ℜ) = -(1 - sinω) Z / D.
/// ```
pub fn origin_gf_with<T: Coeff>(
    cos_w: &T,
    sin_w: &T,
    order: usize,
) -> Result<AmplitudeSeries<T>, SeriesError> {
    let kernel = first_return_kernel::<T>(order);
    let two = Series::constant(T::from_ratio(2, 1), order);
    let den = two
        .add(&kernel.mul_scalar(&cos_w.add(cos_w)))
        .add(&kernel.mul(&kernel));
    let l_re = Series::constant(T::from_ratio(2, 1), order)
        .add(&kernel.mul_scalar(cos_w))
        .div(&den)?;
    let l_im = kernel.mul_scalar(&T::one().add(sin_w)).div(&den)?;
    let r_re = kernel.mul_scalar(&T::one().sub(sin_w)).neg().div(&den)?;
    Ok(AmplitudeSeries {
        r_im: l_re.clone(),
        l_re,
        l_im,
        r_re,
    })
}

/// The same four streams through the rationalized closed forms, with the
/// square root cleared from the denominator. Kept as an independent route
/// for cross-checking [`origin_gf_with`].
pub fn origin_gf_rationalized<T: Coeff>(
    cos_w: &T,
    sin_w: &T,
    order: usize,
) -> Result<AmplitudeSeries<T>, SeriesError> {
    let root = sqrt_one_plus_z4::<T>(order);
    let one = T::one();
    let two = T::from_ratio(2, 1);
    let mono = |c: T, k: usize| Series::monomial(c, k, order);
    let c1 = one.sub(cos_w); // 1 - cosω
    let den_c = T::from_ratio(3, 1).sub(&two.mul(cos_w)); // 3 - 2cosω
    let den = Series::constant(den_c.clone(), order)
        .add(&mono(two.mul(&c1).mul(&c1), 2))
        .add(&mono(den_c, 4))
        .mul_scalar(&two);
    // √2·Ψ^(L,ℜ): 4 - 3cosω + 2(1-cosω)²z² + (2-cosω)z⁴ + (2-cosω)(1+z²)√(1+z⁴).
    let c2 = two.sub(cos_w);
    let l_re_num = Series::constant(T::from_ratio(4, 1).sub(&T::from_ratio(3, 1).mul(cos_w)), order)
        .add(&mono(two.mul(&c1).mul(&c1), 2))
        .add(&mono(c2.clone(), 4))
        .add(
            &Series::one(order)
                .add(&mono(one.clone(), 2))
                .mul(&root)
                .mul_scalar(&c2),
        );
    // Shared bracket: 1 + 2(1-cosω)z² + z⁴ + (-1+z²)√(1+z⁴).
    let bracket = Series::one(order)
        .add(&mono(two.mul(&c1), 2))
        .add(&mono(one.clone(), 4))
        .add(&mono(one.clone(), 2).sub(&Series::one(order)).mul(&root));
    let l_re = l_re_num.div(&den)?;
    let l_im = bracket.mul_scalar(&one.add(sin_w)).neg().div(&den)?;
    let r_re = bracket.mul_scalar(&one.sub(sin_w)).div(&den)?;
    Ok(AmplitudeSeries {
        r_im: l_re.clone(),
        l_re,
        l_im,
        r_re,
    })
}

/// Double-precision origin amplitude streams for an arbitrary ω.
pub fn origin_gf(omega: f64, order: usize) -> AmplitudeSeries<f64> {
    let (sin_w, cos_w) = omega.sin_cos();
    origin_gf_with(&cos_w, &sin_w, order).expect("denominator has constant term 2")
}

/// Origin amplitudes Ψ_{2n}(0) for n = 0..=half_time_max, assembled from the
/// excursion-composition sum via convolution dynamic programming.
///
/// With x_a = r*_{2a-1}, the k-excursion contribution to time 2n is the
/// k-fold convolution T^(k) of (x_a) at n, weighted by the k-th power of the
/// eigenvalues γ±/2 of the first-return block and the eigenvector weights of
/// the initial state.
pub fn origin_amplitudes_via_excursions(omega: f64, half_time_max: usize) -> Vec<Vec2> {
    let n = half_time_max;
    let p = theory::params(omega);
    let u_plus = p.gamma_plus * 0.5;
    let u_minus = p.gamma_minus * 0.5;
    let w_plus = (1.0 - p.mu_plus) / p.c_plus_sq;
    let w_minus = (1.0 - p.mu_minus) / p.c_minus_sq;

    // x[a] = r*_{2a-1}, exact rationals folded to doubles.
    let r_star = r_star_series::<BigRational>(2 * n.max(1));
    let mut x = vec![0.0; n + 1];
    for (a, slot) in x.iter_mut().enumerate().skip(1) {
        *slot = Coeff::to_f64(&r_star.coeff(2 * a - 1));
    }

    let phi_star = Vec2::new(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, FRAC_1_SQRT_2),
    );
    let mut amps = vec![Vec2::ZERO; n + 1];
    amps[0] = phi_star;

    let minus_i = Complex64::new(0.0, -1.0);
    let mut conv = x.clone(); // T^(k), starting at k = 1
    let mut up_k = u_plus;
    let mut um_k = u_minus;
    for k in 1..=n {
        let w_l = up_k.scale(w_plus) + um_k.scale(w_minus);
        let w_r = minus_i * (up_k.scale(p.mu_plus * w_plus) + um_k.scale(p.mu_minus * w_minus));
        for t in k..=n {
            if conv[t] != 0.0 {
                let scale = conv[t] * FRAC_1_SQRT_2;
                amps[t].l += w_l.scale(scale);
                amps[t].r += w_r.scale(scale);
            }
        }
        if k < n {
            // T^(k+1) = T^(k) ∗ x.
            let mut next = vec![0.0; n + 1];
            for i in k..=n {
                if conv[i] == 0.0 {
                    continue;
                }
                for a in 1..=n - i {
                    next[i + a] += conv[i] * x[a];
                }
            }
            conv = next;
            up_k *= u_plus;
            um_k *= u_minus;
        }
    }
    amps
}

/// Origin amplitude Ψ_{2n}(0) at a single (half-)time.
pub fn origin_amplitude_via_excursions(omega: f64, half_time: usize) -> Vec2 {
    origin_amplitudes_via_excursions(omega, half_time)[half_time]
}

/// Generating function of the classical return probabilities,
/// f(z) = 1 / {1 - (p₀/p + q₀/q)(1 - √(1 - 4pq z²))/2}.
///
/// `p`/`q` are the left/right step probabilities away from the origin and
/// `p0`/`q0` the ones at the origin; boundary values 0 and 1 are rejected.
pub fn classical_return_gf<T: Coeff>(
    p0: &T,
    q0: &T,
    p: &T,
    q: &T,
    order: usize,
) -> Result<Series<T>, SeriesError> {
    let one = T::one();
    if p.is_zero() || q.is_zero() || one.sub(p).is_zero() || one.sub(q).is_zero() {
        return Err(SeriesError::InvalidParameter(
            "step probabilities must lie strictly between 0 and 1",
        ));
    }
    if !p.add(q).sub(&one).is_zero() || !p0.add(q0).sub(&one).is_zero() {
        return Err(SeriesError::InvalidParameter(
            "step probabilities must sum to 1 at and away from the origin",
        ));
    }
    let beta = p0.div(p).add(&q0.div(q));
    let four_pq = T::from_ratio(4, 1).mul(p).mul(q);
    let root = Series::one(order)
        .sub(&Series::monomial(four_pq, 2, order))
        .sqrt_unit()?;
    let excursion = Series::one(order)
        .sub(&root)
        .mul_scalar(&beta.mul(&T::from_ratio(1, 2)));
    Series::one(order).div(&Series::one(order).sub(&excursion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::CoinField;
    use crate::evolution;
    use crate::path_oracle;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn sqrt_one_plus_z4_squares_back_exactly() {
        let order = 60;
        let s = sqrt_one_plus_z4::<BigRational>(order);
        let square = s.mul(&s);
        let expected = Series::one(order).add(&Series::monomial(rat(1, 1), 4, order));
        assert_eq!(square, expected);
    }

    #[test]
    fn sqrt_one_plus_z4_leading_coefficients() {
        let s = sqrt_one_plus_z4::<BigRational>(16);
        assert_eq!(s.coeff(0), rat(1, 1));
        assert_eq!(s.coeff(2), rat(0, 1));
        assert_eq!(s.coeff(4), rat(1, 2));
        assert_eq!(s.coeff(8), rat(-1, 8));
        // Generalized binomial: C(1/2, 3) = 1/16, independent derivation.
        assert_eq!(s.coeff(12), rat(1, 16));
        for n in (0..=16).filter(|n| n % 4 != 0) {
            assert!(s.coeff(n).is_zero(), "z^{n}");
        }
    }

    #[test]
    fn sqrt_of_one_minus_z2_squares_back_exactly() {
        let order = 50;
        let input = Series::one(order).sub(&Series::monomial(rat(1, 1), 2, order));
        let s = input.sqrt_unit().unwrap();
        assert_eq!(s.mul(&s), input);
    }

    #[test]
    fn sqrt_rejects_non_unit_constant() {
        let s = Series::constant(rat(2, 1), 10);
        assert_eq!(s.sqrt_unit(), Err(SeriesError::SqrtRequiresUnitConstant));
    }

    #[test]
    fn div_rejects_zero_constant_term() {
        let num = Series::one(10);
        let den = Series::monomial(rat(1, 1), 1, 10);
        assert_eq!(num.div(&den), Err(SeriesError::DivisionByNonUnit));
    }

    #[test]
    fn div_mul_roundtrip() {
        let order = 30;
        let a = Series::from_coeffs((0..=order).map(|i| rat(i as i64 * 3 - 7, 5)).collect());
        let b = Series::from_coeffs((0..=order).map(|i| rat(2 - i as i64, 3)).collect());
        let q = a.div(&b).unwrap();
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn r_star_fixture_values() {
        let r = r_star_series::<BigRational>(11);
        let expected = [
            rat(-1, 1),
            rat(0, 1),
            rat(1, 2),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(-1, 8),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(1, 16),
        ];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(r.coeff(i + 1), *e, "r*_{}", i + 1);
        }
    }

    #[test]
    fn r_star_support_pattern() {
        let r = r_star_series::<BigRational>(200);
        for n in 2..=200usize {
            if n % 4 != 3 {
                assert!(r.coeff(n).is_zero(), "unexpected nonzero r*_{n}");
            }
        }
        // The allowed slots really are populated.
        for n in [1usize, 3, 7, 11, 199] {
            assert!(!r.coeff(n).is_zero(), "missing r*_{n}");
        }
    }

    #[test]
    fn lambda_plus_is_a_power_series_and_minus_is_not() {
        let lam = lambda_plus_series::<BigRational>(12);
        assert_eq!(lam.sqrt2_pow, -1);
        // √2 λ₊ = z + z³/2 - z⁷/8 + z¹¹/16 - ...
        assert_eq!(lam.series.coeff(0), rat(0, 1));
        assert_eq!(lam.series.coeff(1), rat(1, 1));
        assert_eq!(lam.series.coeff(3), rat(1, 2));
        assert_eq!(lam.series.coeff(7), rat(-1, 8));
        assert_eq!(lam.series.coeff(11), rat(1, 16));
        assert_eq!(
            lambda_minus_series::<BigRational>(12),
            Err(SeriesError::PoleAtZero)
        );
    }

    #[test]
    fn first_passage_from_one_p_is_z() {
        let gf = first_passage_plus_gf::<BigRational>(1, 13);
        assert_eq!(gf.p.sqrt2_pow, 0);
        assert_eq!(gf.p.series, Series::monomial(rat(1, 1), 1, 13));
    }

    #[test]
    fn s_from_minus_one_is_negated_r_from_one() {
        let plus = first_passage_plus_gf::<BigRational>(1, 13);
        let minus = first_passage_minus_gf::<BigRational>(-1, 13);
        assert_eq!(minus.s.series, plus.r.series.neg());
        assert_eq!(minus.q.series, Series::monomial(rat(1, 1), 1, 13));
    }

    #[test]
    fn first_passage_gf_matches_enumeration() {
        for m in [1i64, 2, 3] {
            let gf = first_passage_plus_gf::<BigRational>(m, 13);
            let coeffs = path_oracle::first_passage_coeffs_plus(13, m);
            for n in 0..=13usize {
                assert!(
                    (gf.p.coeff_f64(n) - coeffs.p[n]).abs() < 1e-12,
                    "p, m={m}, n={n}"
                );
                assert!(
                    (gf.r.coeff_f64(n) - coeffs.r[n]).abs() < 1e-12,
                    "r, m={m}, n={n}"
                );
            }
        }
        for m in [-1i64, -2, -3] {
            let gf = first_passage_minus_gf::<BigRational>(m, 13);
            let coeffs = path_oracle::first_passage_coeffs_minus(13, m);
            for n in 0..=13usize {
                assert!(
                    (gf.q.coeff_f64(n) - coeffs.q[n]).abs() < 1e-12,
                    "q, m={m}, n={n}"
                );
                assert!(
                    (gf.s.coeff_f64(n) - coeffs.s[n]).abs() < 1e-12,
                    "s, m={m}, n={n}"
                );
            }
        }
    }

    #[test]
    fn origin_gf_constant_terms() {
        let amp = origin_gf(1.9, 8);
        assert!((amp.l_re.coeff(0) - 1.0).abs() < 1e-15);
        assert_eq!(amp.l_im.coeff(0), 0.0);
        assert_eq!(amp.r_re.coeff(0), 0.0);
        assert!((amp.r_im.coeff(0) - 1.0).abs() < 1e-15);
        let a = amp.amplitude(0);
        assert!((a.l.re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((a.r.im - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn origin_gf_odd_coefficients_vanish() {
        let order = 41;
        // Exact at the rational points.
        for cos_w in [rat(1, 1), rat(-1, 1)] {
            let amp = origin_gf_with(&cos_w, &rat(0, 1), order).unwrap();
            for n in (1..=order).step_by(2) {
                assert!(amp.l_re.coeff(n).is_zero());
                assert!(amp.l_im.coeff(n).is_zero());
                assert!(amp.r_re.coeff(n).is_zero());
                assert!(amp.r_im.coeff(n).is_zero());
            }
        }
        let amp = origin_gf(2.6, order);
        for n in (1..=order).step_by(2) {
            assert_eq!(amp.l_re.coeff(n), 0.0);
            assert_eq!(amp.l_im.coeff(n), 0.0);
            assert_eq!(amp.r_re.coeff(n), 0.0);
            assert_eq!(amp.r_im.coeff(n), 0.0);
        }
    }

    #[test]
    fn hadamard_origin_gf_closed_forms() {
        // At ω = 0: √2·Ψ^(L,ℜ) = (1/2)(1 + (1+z²)/√(1+z⁴)) and
        // √2·Ψ^(L,ℑ) = -(1/2)(1 + (-1+z²)/√(1+z⁴)), both exact.
        let order = 48;
        let amp = origin_gf_with(&rat(1, 1), &rat(0, 1), order).unwrap();
        let root = sqrt_one_plus_z4::<BigRational>(order);
        let half = rat(1, 2);
        let one_plus_z2 = Series::one(order).add(&Series::monomial(rat(1, 1), 2, order));
        let l_re = Series::one(order)
            .add(&one_plus_z2.div(&root).unwrap())
            .mul_scalar(&half);
        assert_eq!(amp.l_re, l_re);
        let z2_minus_one = Series::monomial(rat(1, 1), 2, order).sub(&Series::one(order));
        let l_im = Series::one(order)
            .add(&z2_minus_one.div(&root).unwrap())
            .mul_scalar(&half)
            .neg();
        assert_eq!(amp.l_im, l_im);
        assert_eq!(amp.r_re, l_im.neg());
        assert_eq!(amp.r_im, amp.l_re);
    }

    #[test]
    fn rationalized_route_agrees_with_kernel_route() {
        let order = 40;
        for cos_w in [rat(1, 1), rat(-1, 1)] {
            let a = origin_gf_with(&cos_w, &rat(0, 1), order).unwrap();
            let b = origin_gf_rationalized(&cos_w, &rat(0, 1), order).unwrap();
            assert_eq!(a, b, "cosω = {cos_w}");
        }
        for omega in [0.8f64, 2.2, 4.4] {
            let (sin_w, cos_w) = omega.sin_cos();
            let a = origin_gf_with(&cos_w, &sin_w, order).unwrap();
            let b = origin_gf_rationalized(&cos_w, &sin_w, order).unwrap();
            for n in 0..=order {
                for (x, y) in [
                    (&a.l_re, &b.l_re),
                    (&a.l_im, &b.l_im),
                    (&a.r_re, &b.r_re),
                    (&a.r_im, &b.r_im),
                ] {
                    assert!((x.coeff(n) - y.coeff(n)).abs() < 1e-10, "ω={omega}, n={n}");
                }
            }
        }
    }

    #[test]
    fn origin_gf_return_probabilities_exact_at_pi() {
        let amp = origin_gf_with(&rat(-1, 1), &rat(0, 1), 12).unwrap();
        let table = [
            (0usize, rat(1, 1)),
            (2, rat(2, 4)),
            (4, rat(10, 16)),
            (6, rat(40, 64)),
            (8, rat(170, 256)),
            (10, rat(680, 1024)),
            (12, rat(2600, 4096)),
        ];
        for (t, p) in table {
            assert_eq!(amp.return_probability(t), p, "t = {t}");
        }
    }

    #[test]
    fn origin_gf_matches_evolution() {
        for omega in [0.0, PI / 3.0, PI, 5.1] {
            let amp = origin_gf(omega, 200);
            let hist = evolution::origin_history(&CoinField::eq22(omega), 200).unwrap();
            for t in (0..=200).step_by(2) {
                let a = amp.amplitude(t);
                let e = hist[t];
                assert!(
                    (a - e).norm_sq() < 1e-20,
                    "ω={omega}, t={t}: {a:?} vs {e:?}"
                );
            }
        }
    }

    #[test]
    fn excursion_sum_known_values_at_pi() {
        let psi2 = origin_amplitude_via_excursions(PI, 1);
        assert!((psi2.norm_sq() - 0.5).abs() < 1e-12);
        let psi8 = origin_amplitude_via_excursions(PI, 4);
        assert!((psi8.norm_sq() - 170.0 / 256.0).abs() < 1e-12);
    }

    #[test]
    fn excursion_sum_matches_evolution() {
        for omega in [0.0, PI / 4.0, PI, 2.0, 5.9] {
            let amps = origin_amplitudes_via_excursions(omega, 100);
            let hist = evolution::origin_history(&CoinField::eq22(omega), 200).unwrap();
            for n in 0..=100usize {
                let d = (amps[n] - hist[2 * n]).norm_sq();
                assert!(d < 1e-20, "ω={omega}, n={n}, diff²={d}");
            }
        }
    }

    #[test]
    fn classical_gf_unbiased_is_central_binomial() {
        // 1/√(1-z²): coefficient of z^{2n} is C(2n,n)/4ⁿ.
        let order = 60;
        let half = rat(1, 2);
        let f = classical_return_gf(&half, &half, &half, &half, order).unwrap();
        let mut binom = rat(1, 1);
        for n in 0..=order / 2 {
            assert_eq!(f.coeff(2 * n), binom, "n = {n}");
            if n * 2 < order {
                assert!(f.coeff(2 * n + 1).is_zero());
            }
            // C(2(n+1), n+1)/4^{n+1} = C(2n,n)/4ⁿ · (2n+1)/(2n+2).
            binom *= rat(2 * n as i64 + 1, 2 * n as i64 + 2);
        }
    }

    #[test]
    fn classical_gf_rejects_degenerate_probabilities() {
        let (zero, one, half) = (rat(0, 1), rat(1, 1), rat(1, 2));
        assert!(classical_return_gf(&half, &half, &zero, &one, 4).is_err());
        assert!(classical_return_gf(&half, &half, &one, &zero, 4).is_err());
        assert!(
            classical_return_gf(&half, &half, &rat(1, 3), &rat(1, 3), 4).is_err(),
            "p + q ≠ 1 must be rejected"
        );
    }

    proptest! {
        #[test]
        fn sqrt_square_roundtrip(coeffs in prop::collection::vec(-9i64..=9, 1..=12)) {
            let order = coeffs.len();
            let mut c: Vec<BigRational> = vec![rat(1, 1)];
            c.extend(coeffs.iter().map(|&k| rat(k, 4)));
            let s = Series::from_coeffs(c);
            let root = s.sqrt_unit().unwrap();
            prop_assert_eq!(root.mul(&root), s.truncate(order));
        }

        #[test]
        fn division_inverts_multiplication(
            a in prop::collection::vec(-9i64..=9, 1..=12),
            b0 in prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)],
            b in prop::collection::vec(-9i64..=9, 1..=12),
        ) {
            let order = a.len().min(b.len() + 1) - 1;
            let av: Vec<BigRational> = a.iter().map(|&k| rat(k, 3)).collect();
            let mut bv: Vec<BigRational> = vec![rat(b0, 1)];
            bv.extend(b.iter().map(|&k| rat(k, 2)));
            let sa = Series::from_coeffs(av).truncate(order);
            let sb = Series::from_coeffs(bv).truncate(order);
            let prod = sa.mul(&sb);
            prop_assert_eq!(prod.div(&sb).unwrap(), sa);
        }
    }
}
