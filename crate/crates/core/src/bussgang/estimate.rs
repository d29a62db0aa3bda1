use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sample Bussgang decomposition `x̂ = A·x + t` with `t` uncorrelated with `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BussgangEstimate {
    pub a: Complex64,
    /// Mean residual power `E|x̂ − A·x|²`.
    pub tau: f64,
    /// Mean input power `E|x|²`.
    pub input_power: f64,
    pub n_samples: usize,
}

/// Least-squares gain `Â = Σ x̂ x* / Σ |x|²` and residual power.
///
/// This orientation is the unique scalar that leaves the residual
/// uncorrelated with the input.
pub fn estimate_bussgang(pairs: &[(Complex64, Complex64)]) -> Result<BussgangEstimate> {
    let n = pairs.len();
    let mut cross = Complex64::new(0.0, 0.0);
    let mut px = 0.0;
    for &(x, y) in pairs {
        cross += y * x.conj();
        px += x.norm_sqr();
    }
    if n < 2 {
        return Err(Error::Degenerate(format!("need at least 2 samples, got {n}")));
    }
    if !(px > 0.0) {
        return Err(Error::Degenerate("input has zero energy".into()));
    }
    let a = cross / px;
    let tau = pairs.iter().map(|&(x, y)| (y - a * x).norm_sqr()).sum::<f64>() / n as f64;
    Ok(BussgangEstimate { a, tau, input_power: px / n as f64, n_samples: n })
}

/// Linearized output SNR `|A|²·E|x|²/τ`.
///
/// With the input in units of N0 this equals `(|A|²/τ)·γ_sig`. Returns
/// [`OutputSnr::Infinite`] when the residual vanishes.
pub fn output_snr(est: &BussgangEstimate) -> OutputSnr {
    if est.tau == 0.0 {
        OutputSnr::Infinite
    } else {
        OutputSnr::Finite(est.a.norm_sqr() * est.input_power / est.tau)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OutputSnr {
    Finite(f64),
    Infinite,
}

impl OutputSnr {
    pub fn finite(self) -> Option<f64> {
        match self {
            OutputSnr::Finite(v) => Some(v),
            OutputSnr::Infinite => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rffe::generate_frame;
    use crate::seed::Seed;
    use crate::types::{FrequencyPlan, SnrPair};
    use proptest::prelude::*;

    fn gaussian(n: usize, var: f64, seed: u64) -> Vec<Complex64> {
        let plan = FrequencyPlan::contiguous(n, n, 1.0).unwrap();
        generate_frame(&plan, SnrPair::new(var, 0.0).unwrap(), Seed(seed))
    }

    #[test]
    fn noiseless_linear() {
        let x = gaussian(100, 1.0, 1);
        let est = estimate_bussgang(&x.iter().map(|&v| (v, v * 2.0)).collect::<Vec<_>>()).unwrap();
        assert!((est.a - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!(est.tau < 1e-24);
    }

    #[test]
    fn additive_noise() {
        let n = 100_000;
        let x = gaussian(n, 1.0, 2);
        let w = gaussian(n, 0.25, 3);
        let est = estimate_bussgang(&x.iter().zip(&w).map(|(&a, &b)| (a, a + b)).collect::<Vec<_>>()).unwrap();
        assert!((est.a - Complex64::new(1.0, 0.0)).norm() < 0.01, "{}", est.a);
        assert!((est.tau - 0.25).abs() < 0.05 * 0.25, "{}", est.tau);
    }

    #[test]
    fn independent_output() {
        let n = 100_000;
        let x = gaussian(n, 1.0, 4);
        let y = gaussian(n, 1.0, 5);
        let est = estimate_bussgang(&x.iter().copied().zip(y.iter().copied()).collect::<Vec<_>>()).unwrap();
        assert!(est.a.norm() < 3.0 / (n as f64).sqrt());
    }

    #[test]
    fn degenerate_inputs() {
        let z = Complex64::new(0.0, 0.0);
        assert!(matches!(estimate_bussgang(&[(z, z), (z, z)]), Err(Error::Degenerate(_))));
        assert!(matches!(estimate_bussgang(&[(Complex64::new(1.0, 0.0), z)]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn output_snr_arithmetic() {
        let mk = |a: f64, tau: f64, p: f64| BussgangEstimate { a: Complex64::new(a, 0.0), tau, input_power: p, n_samples: 2 };
        assert_eq!(output_snr(&mk(1.0, 1.0, 1.0)), OutputSnr::Finite(1.0));
        assert_eq!(output_snr(&mk(2.0, 1.0, 1.0)), OutputSnr::Finite(4.0));
        assert_eq!(output_snr(&mk(2.0, 0.0, 1.0)), OutputSnr::Infinite);
    }

    #[test]
    fn awgn_output_snr_matches_input() {
        let n = 100_000;
        let x = gaussian(n, 10.0, 6);
        let w = gaussian(n, 1.0, 7);
        let est = estimate_bussgang(&x.iter().zip(&w).map(|(&a, &b)| (a, a + b)).collect::<Vec<_>>()).unwrap();
        let g = output_snr(&est).finite().unwrap();
        assert!((g - 10.0).abs() < 0.5, "{g}");
    }

    proptest! {
        #[test]
        fn residual_is_orthogonal(
            seed in any::<u64>(),
            gain_re in -5.0f64..5.0,
            gain_im in -5.0f64..5.0,
            cube in 0.0f64..2.0,
        ) {
            let x = gaussian(256, 1.0, seed);
            let w = gaussian(256, 0.3, seed.wrapping_add(1));
            let g = Complex64::new(gain_re, gain_im);
            let pairs: Vec<_> = x.iter().zip(&w).map(|(&a, &b)| (a, g * a - a * a.norm_sqr() * cube + b)).collect();
            let est = estimate_bussgang(&pairs).unwrap();
            let n = pairs.len() as f64;
            let corr: Complex64 = pairs.iter().map(|&(a, y)| (y - est.a * a) * a.conj()).sum::<Complex64>() / n;
            let scale = pairs.iter().map(|p| p.0.norm_sqr()).sum::<f64>() / n;
            let ymag = (pairs.iter().map(|p| p.1.norm_sqr()).sum::<f64>() / n).sqrt().max(1.0);
            prop_assert!(corr.norm() / scale < 1e-10 * ymag);
        }
    }
}
