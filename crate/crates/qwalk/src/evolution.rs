//! Exact state-vector evolution of the walk.
//!
//! The state after `n` steps lives on the window [-n, n]; one step sends
//! `ψ(x)` to `P_{x+1} ψ(x+1) + Q_{x-1} ψ(x-1)`, i.e. the coin acts at the
//! position the amplitude is leaving. Slots with the wrong parity are never
//! written, so they stay exactly zero.
//!
//! Internally the 1/√2 of each coin application is deferred: steps apply
//! the √2-scaled coin parts (exact ±1 and e^{±iω} entries for the builtin
//! families) and every second step folds the accumulated factor in as an
//! exact multiplication by 1/2. This removes the systematic norm drift
//! that per-step multiplications by the rounded 1/√2 would accumulate, so
//! the total norm stays within 1e-12 of 1 even after 10⁴ steps.

use crate::coin::{CoinError, CoinField, CoinSplit};
use crate::mat2::Vec2;
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Walker state at a fixed time: a chirality 2-vector per lattice site.
#[derive(Debug, Clone)]
pub struct WalkState {
    time: usize,
    /// Dense window [-n, n]; index i holds √2^{scale_debt} times the
    /// amplitude at x = i - n.
    amps: Vec<Vec2>,
    /// Pending 1/√2 factors not yet folded into the stored values; 0 or 1.
    scale_debt: u8,
}

impl WalkState {
    pub fn time(&self) -> usize {
        self.time
    }

    fn raw_amplitude(&self, x: i64) -> Vec2 {
        let n = self.time as i64;
        if x < -n || x > n {
            Vec2::ZERO
        } else {
            self.amps[(x + n) as usize]
        }
    }

    /// Squared scale carried by the stored values: ‖stored‖² = prob · this.
    fn norm_scale(&self) -> f64 {
        // Exact: a power of two.
        if self.scale_debt == 0 { 1.0 } else { 0.5 }
    }

    /// Amplitude at position `x` (zero outside the window).
    pub fn amplitude(&self, x: i64) -> Vec2 {
        let raw = self.raw_amplitude(x);
        if self.scale_debt == 0 {
            raw
        } else {
            Vec2::new(raw.l * FRAC_1_SQRT_2, raw.r * FRAC_1_SQRT_2)
        }
    }

    /// Total probability Σ_x ‖ψ(x)‖².
    pub fn total_norm_sq(&self) -> f64 {
        self.amps.iter().map(Vec2::norm_sq).sum::<f64>() * self.norm_scale()
    }

    /// Probability of finding the walker at the origin, ‖ψ(0)‖².
    pub fn return_probability(&self) -> f64 {
        self.raw_amplitude(0).norm_sq() * self.norm_scale()
    }

    /// Position distribution at the current time.
    pub fn distribution(&self) -> Distribution {
        let scale = self.norm_scale();
        Distribution {
            time: self.time,
            probs: self.amps.iter().map(|a| a.norm_sq() * scale).collect(),
        }
    }
}

/// Position probabilities over the window [-n, n] at time n.
#[derive(Debug, Clone)]
pub struct Distribution {
    time: usize,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn time(&self) -> usize {
        self.time
    }

    pub fn prob_at(&self, x: i64) -> f64 {
        let n = self.time as i64;
        if x < -n || x > n {
            0.0
        } else {
            self.probs[(x + n) as usize]
        }
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// (position, probability) pairs across the window.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let n = self.time as i64;
        self.probs.iter().enumerate().map(move |(i, &p)| (i as i64 - n, p))
    }
}

/// The walk's initial qubit state [1/√2, i/√2]ᵀ concentrated at the origin.
pub fn initial_state() -> WalkState {
    WalkState {
        time: 0,
        amps: vec![Vec2::new(
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::new(0.0, FRAC_1_SQRT_2),
        )],
        scale_debt: 0,
    }
}

/// Advances the walk by one time step under the given coin field.
pub fn step(state: &WalkState, field: &CoinField) -> Result<WalkState, CoinError> {
    let n = state.time as i64;
    let m = n + 1;
    let mut amps = vec![Vec2::ZERO; (2 * m + 1) as usize];
    // Only sites sharing the parity of the new time can be populated.
    let mut x = -m;
    while x <= m {
        let from_right = if x < n {
            let CoinSplit { p_part, .. } = field.sqrt2_split_at(x + 1)?;
            Some(p_part * state.raw_amplitude(x + 1))
        } else {
            None
        };
        let from_left = if x > -n {
            let CoinSplit { q_part, .. } = field.sqrt2_split_at(x - 1)?;
            Some(q_part * state.raw_amplitude(x - 1))
        } else {
            None
        };
        let v = match (from_right, from_left) {
            (Some(a), Some(b)) => a + b,
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => Vec2::ZERO,
        };
        amps[(x + m) as usize] = v;
        x += 2;
    }
    let mut scale_debt = state.scale_debt + 1;
    if scale_debt == 2 {
        // Fold two pending 1/√2 factors in as an exact product with 1/2.
        for a in &mut amps {
            a.l *= 0.5;
            a.r *= 0.5;
        }
        scale_debt = 0;
    }
    Ok(WalkState {
        time: m as usize,
        amps,
        scale_debt,
    })
}

/// Runs the walk for `steps` time steps from the initial state.
pub fn run(field: &CoinField, steps: usize) -> Result<WalkState, CoinError> {
    let mut state = initial_state();
    for _ in 0..steps {
        state = step(&state, field)?;
    }
    Ok(state)
}

/// Origin amplitudes ψ_t(0) for every t = 0..=max_time from one sweep.
pub fn origin_history(field: &CoinField, max_time: usize) -> Result<Vec<Vec2>, CoinError> {
    let mut history = Vec::with_capacity(max_time + 1);
    let mut state = initial_state();
    history.push(state.amplitude(0));
    for _ in 0..max_time {
        state = step(&state, field)?;
        history.push(state.amplitude(0));
    }
    Ok(history)
}

/// Return probabilities p_t(0) for every t = 0..=max_time from one sweep.
pub fn return_history(field: &CoinField, max_time: usize) -> Result<Vec<f64>, CoinError> {
    Ok(origin_history(field, max_time)?
        .into_iter()
        .map(|v| v.norm_sq())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn initial_state_is_phi_star() {
        let s = initial_state();
        assert_eq!(s.time(), 0);
        let a = s.amplitude(0);
        assert_eq!(a.l, Complex64::new(FRAC_1_SQRT_2, 0.0));
        assert_eq!(a.r, Complex64::new(0.0, FRAC_1_SQRT_2));
        assert!((s.total_norm_sq() - 1.0).abs() < 1e-15);
        assert!((s.return_probability() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_hadamard_step_is_symmetric() {
        let s = step(&initial_state(), &CoinField::Hadamard).unwrap();
        assert!((s.distribution().prob_at(-1) - 0.5).abs() < 1e-15);
        assert!((s.distribution().prob_at(1) - 0.5).abs() < 1e-15);
        assert_eq!(s.amplitude(0), Vec2::ZERO);
        assert!((s.total_norm_sq() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn return_table_omega_pi() {
        // p_{2n}(0) for the inhomogeneous walk at ω = π.
        let expected = [
            (2usize, 2.0 / 4.0),
            (4, 10.0 / 16.0),
            (6, 40.0 / 64.0),
            (8, 170.0 / 256.0),
            (10, 680.0 / 1024.0),
            (12, 2600.0 / 4096.0),
        ];
        let hist = return_history(&CoinField::eq22(PI), 12).unwrap();
        for (t, p) in expected {
            assert!(
                (hist[t] - p).abs() < 1e-12,
                "p_{t}(0) = {} vs {p}",
                hist[t]
            );
        }
    }

    #[test]
    fn return_table_hadamard() {
        let expected = [
            (2usize, 2.0 / 4.0),
            (4, 2.0 / 16.0),
            (6, 8.0 / 64.0),
            (8, 18.0 / 256.0),
            (10, 72.0 / 1024.0),
            (12, 200.0 / 4096.0),
        ];
        let hist = return_history(&CoinField::Hadamard, 12).unwrap();
        for (t, p) in expected {
            assert!(
                (hist[t] - p).abs() < 1e-12,
                "p_{t}(0) = {} vs {p}",
                hist[t]
            );
        }
    }

    #[test]
    fn odd_time_origin_exactly_zero() {
        let hist = origin_history(&CoinField::eq22(1.0), 31).unwrap();
        for t in (1..=31).step_by(2) {
            assert_eq!(hist[t].norm_sq(), 0.0, "t = {t}");
        }
    }

    #[test]
    fn parity_and_support_are_exact() {
        let state = run(&CoinField::eq22(2.5), 9).unwrap();
        for x in -9..=9i64 {
            if (x - 9).rem_euclid(2) == 1 {
                assert_eq!(state.amplitude(x), Vec2::ZERO, "x = {x}");
            }
        }
        assert_eq!(state.amplitude(10), Vec2::ZERO);
        assert_eq!(state.amplitude(-10), Vec2::ZERO);
    }

    #[test]
    fn norm_conserved_long_run() {
        for field in [
            CoinField::Hadamard,
            CoinField::eq22(PI),
            CoinField::eq21(PI / 3.0),
        ] {
            let state = run(&field, 500).unwrap();
            assert!((state.total_norm_sq() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn distribution_sums_to_one() {
        let state = run(&CoinField::eq22(PI), 2).unwrap();
        let d = state.distribution();
        assert!((d.total() - 1.0).abs() < 1e-12);
        assert!((d.prob_at(-2) + d.prob_at(0) + d.prob_at(2) - 1.0).abs() < 1e-12);
        assert!((d.prob_at(0) - 0.5).abs() < 1e-12);
    }

    // Matches the norm-drift bound at the engine's full horizon; slow, so
    // opt in with `cargo test --release -- --ignored`.
    #[test]
    #[ignore]
    fn norm_conserved_at_ten_thousand_steps() {
        let state = run(&CoinField::eq22(PI), 10_000).unwrap();
        assert!((state.total_norm_sq() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eq21_matches_hadamard_return_probability() {
        // The companion model has the Hadamard return probabilities at the
        // origin for every ω.
        let h = return_history(&CoinField::Hadamard, 100).unwrap();
        for omega in [PI / 3.0, PI, 5.0 * PI / 3.0] {
            let star = return_history(&CoinField::eq21(omega), 100).unwrap();
            for t in (0..=100).step_by(2) {
                assert!(
                    (star[t] - h[t]).abs() < 1e-10,
                    "ω={omega}, t={t}: {} vs {}",
                    star[t],
                    h[t]
                );
            }
        }
    }

    proptest! {
        #[test]
        fn norm_and_support_hold_for_random_walks(
            omega in 0.0..TAU,
            steps in 0usize..60,
            eq21 in any::<bool>(),
        ) {
            let field = if eq21 { CoinField::eq21(omega) } else { CoinField::eq22(omega) };
            let state = run(&field, steps).unwrap();
            prop_assert!((state.total_norm_sq() - 1.0).abs() < 1e-12);
            let n = steps as i64;
            for x in -n - 1..=n + 1 {
                if x.rem_euclid(2) != n.rem_euclid(2) || x.abs() > n {
                    prop_assert_eq!(state.amplitude(x), Vec2::ZERO);
                }
            }
        }
    }
}
