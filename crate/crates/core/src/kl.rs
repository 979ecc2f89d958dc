//! Kullback–Leibler divergences for the two supported reward families and the
//! level-set inversion behind the upper-confidence indices.
//!
//! Extended values are plain IEEE infinities: `+inf` compares greater than
//! every finite index and `-inf` smaller, which is exactly what the
//! argmin/argmax selection rules need.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Reward distribution family.
///
/// Gaussian means range over all reals (unit variance); Bernoulli means lie
/// in the open interval `(0,1)` for configurations and in the closed `[0,1]`
/// for empirical averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    #[serde(rename = "gaussian")]
    GaussianUnitVariance,
    Bernoulli,
}

impl Family {
    /// `KL(mu | mu_prime)` for this family.
    pub fn kl<S: Scalar>(self, mu: S, mu_prime: S) -> S {
        match self {
            Family::GaussianUnitVariance => kl_gaussian(mu, mu_prime),
            Family::Bernoulli => kl_bernoulli(mu, mu_prime),
        }
    }
}

/// Divergence between two unit-variance Gaussians: `(mu' - mu)^2 / 2`.
///
/// Total and symmetric in its arguments.
pub fn kl_gaussian<S: Scalar>(mu: S, mu_prime: S) -> S {
    let d = mu_prime - mu;
    d * d / S::two()
}

/// Binary divergence `mu log(mu/mu') + (1-mu) log((1-mu)/(1-mu'))`.
///
/// Conventions: `0` when the means coincide, `+inf` when `mu < mu' = 1` or
/// `mu > mu' = 0`, and `0 * log 0 = 0` at the boundary means.
///
/// Panics if an argument lies outside `[0, 1]`.
pub fn kl_bernoulli<S: Scalar>(mu: S, mu_prime: S) -> S {
    let zero = S::zero();
    let one = S::one();
    assert!(
        (zero..=one).contains(&mu) && (zero..=one).contains(&mu_prime),
        "kl_bernoulli arguments must lie in [0,1]"
    );
    if mu == mu_prime {
        return zero;
    }
    if mu_prime == one || mu_prime == zero {
        return S::infinity();
    }
    let left = if mu == zero {
        zero
    } else {
        mu * (mu / mu_prime).ln()
    };
    let right = if mu == one {
        zero
    } else {
        (one - mu) * ((one - mu) / (one - mu_prime)).ln()
    };
    left + right
}

/// Truncated divergence `KL+(mu | mu') = KL(mu | mu')` when `mu < mu'`,
/// exactly `0` otherwise.
pub fn kl_plus<S: Scalar>(family: Family, mu: S, mu_prime: S) -> S {
    if mu < mu_prime {
        family.kl(mu, mu_prime)
    } else {
        S::zero()
    }
}

/// Absolute tolerance of the level-set bisection, on the mean argument.
pub const UCB_TOLERANCE: f64 = 1e-9;
/// Iteration cap for the bisection; `[mu_hat, 1]` halves well past the
/// tolerance long before this is reached.
pub const UCB_MAX_ITERS: usize = 100;

/// Largest mean `u >= mu_hat` with `n * KL(mu_hat | u) <= budget - log(n)`.
///
/// Returns `mu_hat` whenever the slack `budget - log(n)` is not positive.
/// Gaussian solutions are closed form; Bernoulli solutions are found by
/// bisection on `[mu_hat, 1]` to absolute tolerance [`UCB_TOLERANCE`], never
/// exceeding `1`.
///
/// Panics if `n = 0`.
pub fn ucb_solve<S: Scalar>(family: Family, mu_hat: S, n: u64, budget: S) -> S {
    assert!(n >= 1, "ucb_solve needs at least one observation");
    debug_assert!(budget.is_finite(), "ucb_solve budget must be finite");
    let n_s = S::from_count(n);
    let slack = budget - n_s.ln();
    if slack <= S::zero() {
        return mu_hat;
    }
    match family {
        Family::GaussianUnitVariance => mu_hat + (S::two() * slack / n_s).sqrt(),
        Family::Bernoulli => {
            let one = S::one();
            if mu_hat >= one {
                return one;
            }
            let tol = S::from_f64(UCB_TOLERANCE).expect("tolerance representable");
            let mut lo = mu_hat;
            let mut hi = one;
            for _ in 0..UCB_MAX_ITERS {
                if hi - lo < tol {
                    break;
                }
                let mid = lo + (hi - lo) / S::two();
                if n_s * kl_bernoulli(mu_hat, mid) <= slack {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gaussian_formula() {
        assert_abs_diff_eq!(kl_gaussian(0.0, 1.0), 0.5);
        assert_eq!(kl_gaussian(0.3, 0.3), 0.0);
        assert_abs_diff_eq!(kl_gaussian(0.8, 1.0), 0.02, epsilon = 1e-15);
    }

    #[test]
    fn gaussian_is_symmetric() {
        for (a, b) in [(0.0, 1.0), (-2.5, 0.3), (4.0, 4.0)] {
            assert_eq!(kl_gaussian(a, b), kl_gaussian(b, a));
        }
    }

    #[test]
    fn bernoulli_conventions() {
        assert_eq!(kl_bernoulli(0.5, 0.5), 0.0);
        assert_eq!(kl_bernoulli(0.5, 1.0), f64::INFINITY);
        assert_eq!(kl_bernoulli(0.5, 0.0), f64::INFINITY);
        assert_eq!(kl_bernoulli(0.0, 0.0), 0.0);
        assert_eq!(kl_bernoulli(1.0, 1.0), 0.0);
        // 0 log 0 = 0 at boundary empirical means
        assert_abs_diff_eq!(kl_bernoulli(0.0, 0.5), 0.5f64.recip().ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(kl_bernoulli(1.0, 0.5), 2.0f64.ln(), epsilon = 1e-15);
        // independently computed: 0.2 ln(0.5) + 0.8 ln(4/3)
        assert_abs_diff_eq!(kl_bernoulli(0.2, 0.4), 0.09151622184943578, epsilon = 1e-12);
    }

    #[test]
    #[should_panic(expected = "must lie in [0,1]")]
    fn bernoulli_rejects_out_of_range() {
        kl_bernoulli(1.2, 0.4);
    }

    #[test]
    fn divergence_is_monotone_away_from_the_first_argument() {
        // for fixed mu, KL(mu | .) shrinks towards mu from either side
        let grid = |lo: f64, hi: f64| (0..=50).map(move |i| lo + (hi - lo) * i as f64 / 50.0);
        for mu in grid(-2.0, 2.0).step_by(10) {
            let values: Vec<f64> = grid(mu, mu + 3.0).map(|u| kl_gaussian(mu, u)).collect();
            assert!(values.windows(2).all(|w| w[0] <= w[1]));
            let values: Vec<f64> = grid(mu - 3.0, mu).map(|u| kl_gaussian(mu, u)).collect();
            assert!(values.windows(2).all(|w| w[0] >= w[1]));
        }
        for mu in [0.1, 0.35, 0.6, 0.85] {
            let values: Vec<f64> = grid(mu, 1.0).map(|u| kl_bernoulli(mu, u)).collect();
            assert!(values.windows(2).all(|w| w[0] <= w[1]));
            let values: Vec<f64> = grid(0.0, mu).map(|u| kl_bernoulli(mu, u)).collect();
            assert!(values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn kl_plus_truncates() {
        assert_abs_diff_eq!(
            kl_plus(Family::GaussianUnitVariance, 0.2, 0.5),
            0.045,
            epsilon = 1e-15
        );
        assert_eq!(kl_plus(Family::GaussianUnitVariance, 0.5, 0.2), 0.0);
        assert_eq!(kl_plus(Family::Bernoulli, 0.4, 0.4), 0.0);
    }

    #[test]
    fn ucb_solve_gaussian_closed_form() {
        // sqrt(2 ln(25) / 4)
        let u = ucb_solve(Family::GaussianUnitVariance, 0.0, 4, 100.0f64.ln());
        assert_abs_diff_eq!(u, 1.2686362411795198, epsilon = 1e-12);
    }

    #[test]
    fn ucb_solve_zero_slack_returns_mu_hat() {
        for family in [Family::GaussianUnitVariance, Family::Bernoulli] {
            assert_eq!(ucb_solve(family, 0.7, 10, 10.0f64.ln()), 0.7);
            assert_eq!(ucb_solve(family, 0.7, 10, 3.0f64.ln()), 0.7);
        }
    }

    #[test]
    fn ucb_solve_bernoulli_inverts_kl() {
        let budget = 1.0f64.ln() + kl_bernoulli(0.5, 0.9);
        let u = ucb_solve(Family::Bernoulli, 0.5, 1, budget);
        assert_abs_diff_eq!(u, 0.9, epsilon = 1e-9);
    }

    #[test]
    fn ucb_solve_bernoulli_degenerate_mean() {
        assert_eq!(ucb_solve(Family::Bernoulli, 1.0, 3, 50.0f64.ln()), 1.0);
    }

    #[test]
    #[should_panic(expected = "at least one observation")]
    fn ucb_solve_rejects_zero_count() {
        ucb_solve(Family::GaussianUnitVariance, 0.0, 0, 1.0);
    }

    #[test]
    fn works_in_single_precision() {
        let u: f32 = ucb_solve(Family::GaussianUnitVariance, 0.0, 4, 100.0f32.ln());
        assert!((u - 1.268_636_2).abs() < 1e-5);
        assert!((kl_bernoulli(0.2f32, 0.4f32) - 0.091_516_2).abs() < 1e-6);
    }
}
