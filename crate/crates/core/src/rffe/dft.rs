//! Unitary DFT pair between the frequency-bin and time-sample domains.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// `u = Fᴴ x`: unitary inverse DFT (scaled by `1/√N`).
pub fn to_time_domain(x: &[Complex64]) -> Result<Vec<Complex64>> {
    transform(x, true)
}

/// `x = F u`: unitary forward DFT (scaled by `1/√N`).
pub fn to_freq_domain(u: &[Complex64]) -> Result<Vec<Complex64>> {
    transform(u, false)
}

fn transform(input: &[Complex64], inverse: bool) -> Result<Vec<Complex64>> {
    let n = input.len();
    if n == 0 {
        return Err(Error::invalid("cannot transform an empty vector"));
    }
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    let mut buf = input.to_vec();
    fft.process(&mut buf);
    let scale = 1.0 / (n as f64).sqrt();
    buf.iter_mut().for_each(|v| *v *= scale);
    Ok(buf)
}
