use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::seed::Seed;
use crate::types::{FrequencyPlan, SnrPair};

/// Draws one circular complex Gaussian sample with `E|z|² = variance`.
pub(crate) fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * s, im * s)
}

/// Frequency-domain OFDM symbol vector in units of N0.
///
/// Signal bins are i.i.d. `CN(0, γ_sig)`, interference bins i.i.d. `CN(0, γ_int)`.
pub fn generate_frame(plan: &FrequencyPlan, snr: SnrPair, seed: Seed) -> Vec<Complex64> {
    let mut rng = seed.rng();
    let mut x = vec![Complex64::new(0.0, 0.0); plan.n_fft()];
    // Draw in bin order so the stream is independent of how the plan lists bins.
    let mut is_sig = vec![false; plan.n_fft()];
    for &k in plan.sig_bins() {
        is_sig[k] = true;
    }
    for (k, v) in x.iter_mut().enumerate() {
        let var = if is_sig[k] { snr.gamma_sig() } else { snr.gamma_int() };
        let z = complex_gaussian(&mut rng, 1.0);
        if var > 0.0 {
            *v = z * var.sqrt();
        }
    }
    x
}
