//! The inhomogeneous classical random walk on the line, as a comparator.
//!
//! A walker at position x steps left with probability p_x and right with
//! q_x = 1 - p_x; the probabilities are (p₀, q₀) at the origin and (p, q)
//! everywhere else. Whatever the parameters, the walk never localizes.

use crate::series::{self, Series, SeriesError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ClassicalError {
    #[error("probability {name} = {value} must lie in {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
}

/// Step probabilities of the walk: `p0`/`q0` at the origin, `p`/`q`
/// elsewhere; `p` is the probability of a *left* step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalField {
    pub p0: f64,
    pub q0: f64,
    pub p: f64,
    pub q: f64,
}

impl ClassicalField {
    /// Builds a field from the left-step probabilities, deriving the
    /// complements. `p` must be strictly inside (0, 1); `p0` may touch the
    /// boundary.
    pub fn new(p0: f64, p: f64) -> Result<Self, ClassicalError> {
        if !(0.0..=1.0).contains(&p0) {
            return Err(ClassicalError::OutOfRange {
                name: "p0",
                value: p0,
                range: "[0, 1]",
            });
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(ClassicalError::OutOfRange {
                name: "p",
                value: p,
                range: "(0, 1)",
            });
        }
        Ok(ClassicalField {
            p0,
            q0: 1.0 - p0,
            p,
            q: 1.0 - p,
        })
    }

    /// Unbiased walk, p = q = p₀ = q₀ = 1/2.
    pub fn unbiased() -> Self {
        ClassicalField {
            p0: 0.5,
            q0: 0.5,
            p: 0.5,
            q: 0.5,
        }
    }

    fn left_prob_at(&self, x: i64) -> f64 {
        if x == 0 {
            self.p0
        } else {
            self.p
        }
    }
}

/// Probability mass over the window [-n, n] at time n.
#[derive(Debug, Clone)]
pub struct ClassicalDistribution {
    time: usize,
    mass: Vec<f64>,
}

impl ClassicalDistribution {
    /// Unit mass at the origin.
    pub fn delta_at_origin() -> Self {
        ClassicalDistribution {
            time: 0,
            mass: vec![1.0],
        }
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn mass_at(&self, x: i64) -> f64 {
        let n = self.time as i64;
        if x < -n || x > n {
            0.0
        } else {
            self.mass[(x + n) as usize]
        }
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub fn return_probability(&self) -> f64 {
        self.mass_at(0)
    }
}

/// One step of the mass recurrence m(x) ← p_{x+1} m(x+1) + q_{x-1} m(x-1).
pub fn classical_step(dist: &ClassicalDistribution, field: &ClassicalField) -> ClassicalDistribution {
    let n = dist.time as i64;
    let m = n + 1;
    let mut mass = vec![0.0; (2 * m + 1) as usize];
    let mut x = -m;
    while x <= m {
        let mut acc = 0.0;
        if x < n {
            acc += field.left_prob_at(x + 1) * dist.mass_at(x + 1);
        }
        if x > -n {
            acc += (1.0 - field.left_prob_at(x - 1)) * dist.mass_at(x - 1);
        }
        mass[(x + m) as usize] = acc;
        x += 2;
    }
    ClassicalDistribution {
        time: m as usize,
        mass,
    }
}

/// Distribution after `steps` steps from the origin.
pub fn classical_run(field: &ClassicalField, steps: usize) -> ClassicalDistribution {
    let mut dist = ClassicalDistribution::delta_at_origin();
    for _ in 0..steps {
        dist = classical_step(&dist, field);
    }
    dist
}

/// Return probability p_n^(c)(0) after `steps` steps.
pub fn classical_return(field: &ClassicalField, steps: usize) -> f64 {
    classical_run(field, steps).return_probability()
}

/// Return probabilities for every time 0..=max_time from one sweep.
pub fn classical_return_history(field: &ClassicalField, max_time: usize) -> Vec<f64> {
    let mut history = Vec::with_capacity(max_time + 1);
    let mut dist = ClassicalDistribution::delta_at_origin();
    history.push(dist.return_probability());
    for _ in 0..max_time {
        dist = classical_step(&dist, field);
        history.push(dist.return_probability());
    }
    history
}

/// The generating-function route to the same numbers, Σ p_n^(c)(0) zⁿ.
pub fn classical_return_gf(field: &ClassicalField, order: usize) -> Result<Series<f64>, SeriesError> {
    series::classical_return_gf(&field.p0, &field.q0, &field.p, &field.q, order)
}
