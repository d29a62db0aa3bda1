//! Sector element pattern and uniform-rectangular-array beamforming gain.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::geometry::{to_local, wrap_deg, Direction};

pub const ELEMENT_MAX_GAIN_DBI: f64 = 8.0;
pub const ELEMENT_MAX_ATTENUATION_DB: f64 = 30.0;

/// Parabolic element pattern in dBi.
///
/// `az_deg` is measured from the sector boresight azimuth and `el_deg` above
/// the horizon; the pattern is evaluated after tilting the boresight to
/// `downtilt_deg` (negative points down).
pub fn element_gain_db(az_deg: f64, el_deg: f64, hpbw_deg: f64, downtilt_deg: f64) -> f64 {
    let local = to_local(Direction { az_deg, el_deg }, Direction { az_deg: 0.0, el_deg: downtilt_deg });
    element_gain_local_db(local, hpbw_deg)
}

/// Element pattern for angles already expressed in the panel frame.
pub fn element_gain_local_db(local: Direction, hpbw_deg: f64) -> f64 {
    let az = wrap_deg(local.az_deg) / hpbw_deg;
    let el = local.el_deg / hpbw_deg;
    ELEMENT_MAX_GAIN_DBI - (12.0 * az * az + 12.0 * el * el).min(ELEMENT_MAX_ATTENUATION_DB)
}

/// Array dimensions: `rows` along the panel vertical, `cols` along the horizontal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ArrayShape {
    pub rows: usize,
    pub cols: usize,
}

impl ArrayShape {
    pub const fn new(rows: usize, cols: usize) -> Self {
        ArrayShape { rows, cols }
    }

    pub fn elements(&self) -> usize {
        self.rows * self.cols
    }
}

impl From<(usize, usize)> for ArrayShape {
    fn from((rows, cols): (usize, usize)) -> Self {
        ArrayShape { rows, cols }
    }
}

/// Half-wavelength URA steering vector in the panel frame, element `(m, n)`
/// at index `m·cols + n`.
pub fn steering_vector(array: ArrayShape, dir: Direction) -> Vec<Complex64> {
    let (u, v) = spatial_frequencies(dir);
    let mut a = Vec::with_capacity(array.elements());
    for m in 0..array.rows {
        for n in 0..array.cols {
            a.push(Complex64::from_polar(1.0, PI * (n as f64 * u + m as f64 * v)));
        }
    }
    a
}

fn spatial_frequencies(dir: Direction) -> (f64, f64) {
    let (az, el) = (dir.az_deg.to_radians(), dir.el_deg.to_radians());
    (az.sin() * el.cos(), el.sin())
}

/// `|a(steer)ᴴ a(target)|² / N`, linear. Equals `N` when `steer == target`.
pub fn beamforming_gain(array: ArrayShape, steer: Direction, target: Direction) -> f64 {
    let (us, vs) = spatial_frequencies(steer);
    let (ut, vt) = spatial_frequencies(target);
    // The URA factor separates into a horizontal and a vertical linear array.
    let line = |n: usize, delta: f64| -> f64 {
        let s: Complex64 = (0..n).map(|k| Complex64::from_polar(1.0, PI * k as f64 * delta)).sum();
        s.norm_sqr()
    };
    if steer == target {
        return array.elements() as f64;
    }
    line(array.cols, ut - us) * line(array.rows, vt - vs) / array.elements() as f64
}

pub fn beamforming_gain_db(array: ArrayShape, steer: Direction, target: Direction) -> f64 {
    10.0 * beamforming_gain(array, steer, target).log10()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dir(az: f64, el: f64) -> Direction {
        Direction { az_deg: az, el_deg: el }
    }

    #[test]
    fn element_examples() {
        assert!((element_gain_db(0.0, -12.0, 65.0, -12.0) - 8.0).abs() < 1e-12);
        assert!((element_gain_db(32.5, 0.0, 65.0, 0.0) - 5.0).abs() < 1e-12);
        assert!((element_gain_db(180.0, 0.0, 65.0, 0.0) + 22.0).abs() < 1e-12);
        assert!((element_gain_db(180.0, -12.0, 65.0, -12.0) + 22.0).abs() < 1e-12);
    }

    #[test]
    fn coherent_gain_examples() {
        let s = dir(20.0, -5.0);
        assert!((beamforming_gain_db(ArrayShape::new(8, 8), s, s) - 18.061_799_739_838_87).abs() < 1e-12);
        for t in [dir(0.0, 0.0), dir(90.0, 40.0), dir(-170.0, -80.0)] {
            assert!(beamforming_gain_db(ArrayShape::new(1, 1), s, t).abs() < 1e-12);
        }
    }

    #[test]
    fn dft_grid_null() {
        // Horizontal spatial frequency offset 2/cols puts the target on a null.
        let steer = dir(0.0, 0.0);
        let target = dir((2.0f64 / 8.0).asin().to_degrees(), 0.0);
        assert!(beamforming_gain_db(ArrayShape::new(8, 8), steer, target) <= -20.0);
    }

    #[test]
    fn closed_form_matches_inner_product() {
        let arr = ArrayShape::new(4, 6);
        let (s, t) = (dir(12.0, -7.0), dir(-31.0, 18.0));
        let a = steering_vector(arr, s);
        let b = steering_vector(arr, t);
        let ip: Complex64 = a.iter().zip(&b).map(|(x, y)| x.conj() * y).sum();
        let want = ip.norm_sqr() / arr.elements() as f64;
        assert!((beamforming_gain(arr, s, t) - want).abs() < 1e-9 * want.max(1e-12));
    }

    proptest! {
        #[test]
        fn aligned_gain_is_element_count(rows in 1usize..20, cols in 1usize..20, az in -180.0f64..180.0, el in -89.0f64..89.0) {
            let arr = ArrayShape::new(rows, cols);
            let d = dir(az, el);
            let g = beamforming_gain_db(arr, d, d);
            prop_assert_eq!(g, 10.0 * ((rows * cols) as f64).log10());
        }

        #[test]
        fn gain_never_exceeds_element_count(az1 in -90.0f64..90.0, el1 in -60.0f64..60.0, az2 in -90.0f64..90.0, el2 in -60.0f64..60.0) {
            let arr = ArrayShape::new(8, 8);
            prop_assert!(beamforming_gain(arr, dir(az1, el1), dir(az2, el2)) <= 64.0 * (1.0 + 1e-12));
        }
    }
}
