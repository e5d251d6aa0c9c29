//! Brute-force evaluation of the walk's path sums.
//!
//! Everything here enumerates step sequences explicitly and multiplies 2×2
//! matrices along each path, so the cost is exponential in the number of
//! steps. That is the point: the results are an independent ground truth for
//! the polynomial-time engines, computed without reusing their update rules.
//!
//! Conventions. A path product reads right to left in time order: the first
//! step's matrix sits rightmost. Each step applies the P (move left) or Q
//! (move right) part of the coin at the position the walker is leaving.

use crate::coin::{self, CoinError, CoinField, CoinSplit};
use crate::mat2::{Mat2, Vec2};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Hard cap on enumerated steps; 2^14 sequences is where the oracle stops.
pub const MAX_ENUMERATION_STEPS: usize = 14;

/// Sum of path products over all trajectories with a fixed number of left
/// steps, together with enumeration metadata.
#[derive(Debug, Clone)]
pub struct PathMatrix {
    pub matrix: Mat2,
    pub time: usize,
    pub left_steps: usize,
    pub right_steps: usize,
    /// Number of summands; always C(time, left_steps).
    pub summands: usize,
}

/// Sum over all C(n, l) step sequences with `l` left steps, starting at the
/// origin under `field`.
pub fn xi(n: usize, l: usize, field: &CoinField) -> Result<PathMatrix, CoinError> {
    assert!(n <= MAX_ENUMERATION_STEPS, "enumeration bound exceeded: n = {n}");
    assert!(l <= n, "left steps {l} exceed total steps {n}");
    let mut total = Mat2::ZERO;
    let mut summands = 0usize;
    // Bit t of the mask decides step t: set = right, clear = left.
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != n - l {
            continue;
        }
        let mut pos = 0i64;
        let mut prod = Mat2::IDENTITY;
        for t in 0..n {
            let CoinSplit { p_part, q_part } = field.split_at(pos)?;
            if mask >> t & 1 == 1 {
                prod = q_part * prod;
                pos += 1;
            } else {
                prod = p_part * prod;
                pos -= 1;
            }
        }
        total = total + prod;
        summands += 1;
    }
    Ok(PathMatrix {
        matrix: total,
        time: n,
        left_steps: l,
        right_steps: n - l,
        summands,
    })
}

fn hadamard_split() -> CoinSplit {
    coin::split(&coin::hadamard())
}

/// Enumerates Hadamard-coin paths from `start` that stay strictly on
/// `side` (+1: positions ≥ 1, -1: positions ≤ -1) until first reaching 0 at
/// time exactly `n`, invoking `visit` with each complete path product.
fn enumerate_first_passage(n: usize, start: i64, side: i64, visit: &mut impl FnMut(Mat2)) {
    assert!(n <= MAX_ENUMERATION_STEPS, "enumeration bound exceeded: n = {n}");
    let CoinSplit { p_part, q_part } = hadamard_split();

    fn recurse(
        pos: i64,
        remaining: usize,
        side: i64,
        acc: Mat2,
        p: &Mat2,
        q: &Mat2,
        visit: &mut impl FnMut(Mat2),
    ) {
        // Reachability pruning: |pos| steps are needed just to get home.
        if pos.unsigned_abs() as usize > remaining
            || (pos.unsigned_abs() as usize) % 2 != remaining % 2
        {
            return;
        }
        if remaining == 0 {
            // pos == 0 is guaranteed by the pruning above.
            visit(acc);
            return;
        }
        for (mat, dir) in [(p, -1i64), (q, 1i64)] {
            let next = pos + dir;
            // The boundary may only be touched on the final step.
            let hits_zero = next == 0;
            let stays_on_side = next * side >= 1;
            if (hits_zero && remaining == 1) || (stays_on_side && remaining > 1) {
                recurse(next, remaining - 1, side, *mat * acc, p, q, visit);
            }
        }
    }

    if start * side < 1 {
        return;
    }
    recurse(start, n, side, Mat2::IDENTITY, &p_part, &q_part, visit);
}

/// First-passage sum from `m ≥ 1` on the positive half line: all paths that
/// first hit 0 at time exactly `n`. Zero matrix if no such path exists.
pub fn xi_first_passage_plus(n: usize, m: i64) -> Mat2 {
    assert!(m >= 1, "plus-side start must be ≥ 1, got {m}");
    let mut total = Mat2::ZERO;
    enumerate_first_passage(n, m, 1, &mut |prod| total = total + prod);
    total
}

/// Mirror of [`xi_first_passage_plus`] on the negative half line, `m ≤ -1`.
pub fn xi_first_passage_minus(n: usize, m: i64) -> Mat2 {
    assert!(m <= -1, "minus-side start must be ≤ -1, got {m}");
    let mut total = Mat2::ZERO;
    enumerate_first_passage(n, m, -1, &mut |prod| total = total + prod);
    total
}

/// Individual path products behind [`xi_first_passage_plus`].
pub fn first_passage_plus_products(n: usize, m: i64) -> Vec<Mat2> {
    assert!(m >= 1);
    let mut out = Vec::new();
    enumerate_first_passage(n, m, 1, &mut |prod| out.push(prod));
    out
}

/// Individual path products behind [`xi_first_passage_minus`].
pub fn first_passage_minus_products(n: usize, m: i64) -> Vec<Mat2> {
    assert!(m <= -1);
    let mut out = Vec::new();
    enumerate_first_passage(n, m, -1, &mut |prod| out.push(prod));
    out
}

/// Sum over paths that start at the origin and first return to it at time
/// exactly `n`, under the inhomogeneous coin with parameter `omega`.
///
/// The first step leaves the origin through P₀ or Q₀; everything in between
/// is a Hadamard first-passage walk on one half line. Odd `n` has no
/// returning paths and yields the zero matrix.
pub fn xi_star(n: usize, omega: f64) -> Mat2 {
    if n % 2 == 1 || n == 0 {
        return Mat2::ZERO;
    }
    let CoinSplit { p_part: p0, q_part: q0 } = coin::split(&coin::coin_eq22(omega));
    let plus = xi_first_passage_plus(n - 1, 1) * q0;
    let minus = xi_first_passage_minus(n - 1, -1) * p0;
    plus + minus
}

/// Origin amplitude at the given (even) time assembled from enumerated
/// first-return blocks: Ψ_{2n}(0) = Σ_a Ξ*_{2a} Ψ_{2(n-a)}(0).
pub fn origin_amplitude_via_first_returns(omega: f64, time: usize) -> Vec2 {
    assert!(time.is_multiple_of(2), "origin amplitudes vanish at odd times");
    let half = time / 2;
    let blocks: Vec<Mat2> = (0..=half).map(|a| xi_star(2 * a, omega)).collect();
    let phi_star = Vec2::new(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, FRAC_1_SQRT_2),
    );
    let mut psi: Vec<Vec2> = Vec::with_capacity(half + 1);
    psi.push(phi_star);
    for t in 1..=half {
        let mut v = Vec2::ZERO;
        for a in 1..=t {
            v = v + blocks[a] * psi[t - a];
        }
        psi.push(v);
    }
    psi[half]
}

/// Coefficients of a matrix in the orthonormal P, Q, R, S basis under the
/// trace inner product ⟨A|B⟩ = tr(A†B).
#[derive(Debug, Clone, Copy)]
pub struct BasisCoeffs {
    pub p: Complex64,
    pub q: Complex64,
    pub r: Complex64,
    pub s: Complex64,
}

/// The four basis matrices (P, Q, R, S).
pub fn basis_matrices() -> [Mat2; 4] {
    let CoinSplit { p_part, q_part } = hadamard_split();
    let r = Mat2::from_real(1.0, -1.0, 0.0, 0.0).scale_re(FRAC_1_SQRT_2);
    let s = Mat2::from_real(0.0, 0.0, 1.0, 1.0).scale_re(FRAC_1_SQRT_2);
    [p_part, q_part, r, s]
}

/// Expands `m` in the P, Q, R, S basis; the expansion is exact.
pub fn basis_expand(m: &Mat2) -> BasisCoeffs {
    let [p, q, r, s] = basis_matrices();
    let inner = |basis: &Mat2| (basis.adjoint() * *m).trace();
    BasisCoeffs {
        p: inner(&p),
        q: inner(&q),
        r: inner(&r),
        s: inner(&s),
    }
}

impl BasisCoeffs {
    /// Rebuilds the matrix p·P + q·Q + r·R + s·S.
    pub fn reconstruct(&self) -> Mat2 {
        let [p, q, r, s] = basis_matrices();
        p.scale(self.p) + q.scale(self.q) + r.scale(self.r) + s.scale(self.s)
    }
}

/// First-passage basis coefficients (p_n, q_n, r_n, s_n) for n = 0..=n_max
/// from a fixed start, on either half line.
#[derive(Debug, Clone)]
pub struct FirstPassageCoeffs {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub r: Vec<f64>,
    pub s: Vec<f64>,
}

fn coeffs_from(n_max: usize, xi_at: impl Fn(usize) -> Mat2) -> FirstPassageCoeffs {
    let mut out = FirstPassageCoeffs {
        p: vec![0.0; n_max + 1],
        q: vec![0.0; n_max + 1],
        r: vec![0.0; n_max + 1],
        s: vec![0.0; n_max + 1],
    };
    for n in 1..=n_max {
        let c = basis_expand(&xi_at(n));
        // Hadamard path products are real matrices.
        assert_eq!(c.p.im, 0.0);
        assert_eq!(c.q.im, 0.0);
        assert_eq!(c.r.im, 0.0);
        assert_eq!(c.s.im, 0.0);
        out.p[n] = c.p.re;
        out.q[n] = c.q.re;
        out.r[n] = c.r.re;
        out.s[n] = c.s.re;
    }
    out
}

/// Enumerated (p, q, r, s) coefficient sequences of the plus-side
/// first-passage sums from `m ≥ 1`.
pub fn first_passage_coeffs_plus(n_max: usize, m: i64) -> FirstPassageCoeffs {
    coeffs_from(n_max, |n| xi_first_passage_plus(n, m))
}

/// Enumerated (p, q, r, s) coefficient sequences of the minus-side
/// first-passage sums from `m ≤ -1`.
pub fn first_passage_coeffs_minus(n_max: usize, m: i64) -> FirstPassageCoeffs {
    coeffs_from(n_max, |n| xi_first_passage_minus(n, m))
}
