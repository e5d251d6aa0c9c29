//! Small fixed-size complex linear algebra: 2-vectors and 2×2 matrices.
//!
//! Everything in the toolkit lives in the two-dimensional chirality space,
//! so a hand-rolled pair of types beats pulling in a matrix library.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// Complex column 2-vector (left component first, right component second).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub l: Complex64,
    pub r: Complex64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 {
        l: Complex64::new(0.0, 0.0),
        r: Complex64::new(0.0, 0.0),
    };

    pub fn new(l: Complex64, r: Complex64) -> Self {
        Vec2 { l, r }
    }

    /// Squared Euclidean norm |l|² + |r|².
    pub fn norm_sq(&self) -> f64 {
        self.l.norm_sqr() + self.r.norm_sqr()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.l + o.l, self.r + o.r)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.l - o.l, self.r - o.r)
    }
}

/// Complex 2×2 matrix in row-major order: [[a, b], [c, d]].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mat2 {
    pub const ZERO: Mat2 = Mat2 {
        a: Complex64::new(0.0, 0.0),
        b: Complex64::new(0.0, 0.0),
        c: Complex64::new(0.0, 0.0),
        d: Complex64::new(0.0, 0.0),
    };

    pub const IDENTITY: Mat2 = Mat2 {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
        c: Complex64::new(0.0, 0.0),
        d: Complex64::new(1.0, 0.0),
    };

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2 { a, b, c, d }
    }

    /// Builds a matrix from real entries.
    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
        )
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        Mat2::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn scale_re(&self, s: f64) -> Mat2 {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Trace of the matrix.
    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// Largest entrywise absolute difference from `other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let dv = [
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        ];
        dv.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entrywise maximum absolute value.
    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Mat2::ZERO)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2::new(self.a * v.l + self.b * v.r, self.c * v.l + self.d * v.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_of_product_reverses_order() {
        let m = Mat2::new(
            Complex64::new(1.0, 2.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(3.0, 0.5),
            Complex64::new(-2.0, 1.0),
        );
        let n = Mat2::from_real(0.0, 1.0, 1.0, 0.0);
        let lhs = (m * n).adjoint();
        let rhs = n.adjoint() * m.adjoint();
        assert!(lhs.max_abs_diff(&rhs) < 1e-15);
    }

    #[test]
    fn matrix_vector_action() {
        let swap = Mat2::from_real(0.0, 1.0, 1.0, 0.0);
        let v = Vec2::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
        let w = swap * v;
        assert_eq!(w.l, Complex64::new(0.0, 1.0));
        assert_eq!(w.r, Complex64::new(1.0, 0.0));
    }
}
