use crate::error::{Error, Result};

/// Achievable-rate lower bound in bit/s,
/// `(N_sig·ζ/N)·f_s·log₂(1 + γ_out/ζ)` for ADC oversampling ratio `ζ ≥ 1`.
pub fn capacity_lower_bound(gamma_out: f64, fs_hz: f64, n_sig: usize, n_fft: usize, zeta: f64) -> Result<f64> {
    if !(zeta >= 1.0 && zeta.is_finite()) {
        return Err(Error::invalid(format!("oversampling ratio must be >= 1, got {zeta}")));
    }
    if n_fft == 0 || n_sig > n_fft {
        return Err(Error::invalid(format!("need 0 < n_sig <= n_fft, got {n_sig} of {n_fft}")));
    }
    if !(gamma_out >= 0.0) {
        return Err(Error::invalid(format!("output SNR must be non-negative, got {gamma_out}")));
    }
    if !(fs_hz >= 0.0 && fs_hz.is_finite()) {
        return Err(Error::invalid(format!("sample rate must be finite and non-negative, got {fs_hz}")));
    }
    let frac = n_sig as f64 / n_fft as f64;
    Ok(frac * zeta * fs_hz * (1.0 + gamma_out / zeta).log2())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(capacity_lower_bound(0.0, 1e9, 512, 1024, 1.0).unwrap(), 0.0);
        assert!((capacity_lower_bound(3.0, 1.0, 8, 8, 1.0).unwrap() - 2.0).abs() < 1e-15);
        let v = capacity_lower_bound(3.0, 1.0, 8, 8, 2.0).unwrap();
        assert!((v - 2.0 * 2.5f64.log2()).abs() < 1e-14);
        assert!((v - 2.643_856_189_774_724).abs() < 1e-12);
    }

    #[test]
    fn rejects_undersampling() {
        assert!(capacity_lower_bound(1.0, 1.0, 1, 1, 0.5).is_err());
        assert!(capacity_lower_bound(1.0, 1.0, 2, 1, 1.0).is_err());
    }
}
