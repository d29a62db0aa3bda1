//! Least-squares fit of the saturation model.
//!
//! Residuals are taken in dB, `10·log₁₀ γ_out − 10·log₁₀ γ̂_out`, so points in
//! the linear regime weigh as much as points on the plateau. The parameters
//! are optimized as logarithms, which keeps them positive, using
//! Levenberg–Marquardt damped Gauss–Newton steps.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::model::SnrMeasurement;
use crate::error::{Error, Result};
use crate::types::SaturationModel;

pub const MAX_ITERATIONS: usize = 200;
const GRADIENT_TOL: f64 = 1e-8;
const STEP_TOL: f64 = 1e-10;
/// Floor applied to zero-valued starting coefficients before taking logs.
const LOG_FLOOR: f64 = 1e-12;
const DB: f64 = 10.0 / std::f64::consts::LN_10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub model: SaturationModel,
    /// Euclidean norm of the dB residual vector at the solution.
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl FitReport {
    /// Root-mean-square residual in dB.
    pub fn rms_db(&self, n_points: usize) -> f64 {
        self.residual_norm / (n_points as f64).sqrt()
    }
}

pub fn fit_model(measurements: &[SnrMeasurement], init: SaturationModel) -> Result<FitReport> {
    check_identifiable(measurements)?;
    let data: Vec<Point> = measurements
        .iter()
        .map(|m| {
            if !(m.gamma_sig > 0.0 && m.gamma_out > 0.0) {
                return Err(Error::invalid(format!(
                    "dB residuals need positive gamma_sig and gamma_out, got ({}, {})",
                    m.gamma_sig, m.gamma_out
                )));
            }
            Ok(Point { sig: m.gamma_sig, int: m.gamma_int, out_db: DB * m.gamma_out.ln() })
        })
        .collect::<Result<_>>()?;

    let mut p = [init.beta().ln(), init.alpha1().max(LOG_FLOOR).ln(), init.alpha2().max(LOG_FLOOR).ln()];
    let mut eval = evaluate(&data, &p);
    let mut lambda = 1e-3;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < MAX_ITERATIONS {
        if norm(&eval.gradient) < GRADIENT_TOL {
            converged = true;
            break;
        }
        iterations += 1;

        let mut accepted = false;
        // Raise the damping until the step lowers the cost.
        for _ in 0..60 {
            let mut lhs = eval.normal;
            for d in 0..3 {
                lhs[d][d] += lambda * eval.normal[d][d].max(1e-12);
            }
            let rhs = [-eval.gradient[0], -eval.gradient[1], -eval.gradient[2]];
            let Some(step) = solve3(lhs, rhs) else {
                lambda *= 10.0;
                continue;
            };
            let trial = [p[0] + step[0], p[1] + step[1], p[2] + step[2]];
            let trial_eval = evaluate(&data, &trial);
            if trial_eval.cost.is_finite() && trial_eval.cost <= eval.cost {
                let rel = norm(&step) / (norm(&p) + STEP_TOL);
                p = trial;
                eval = trial_eval;
                lambda = (lambda / 3.0).max(1e-15);
                accepted = true;
                if rel < STEP_TOL {
                    converged = true;
                }
                break;
            }
            lambda *= 2.0;
        }
        if converged || !accepted {
            // No damping level improves the cost: we are at a floating-point minimum
            // if the gradient is small, otherwise stalled.
            converged = converged || norm(&eval.gradient) < GRADIENT_TOL.sqrt();
            break;
        }
    }
    if !converged && norm(&eval.gradient) < GRADIENT_TOL {
        converged = true;
    }

    let model = SaturationModel::new(p[0].exp(), p[1].exp(), p[2].exp())?;
    Ok(FitReport { model, residual_norm: (2.0 * eval.cost).sqrt(), iterations, converged })
}

/// Rejects designs that cannot separate the three parameters.
pub fn check_identifiable(measurements: &[SnrMeasurement]) -> Result<()> {
    if measurements.len() < 3 {
        return Err(Error::Unidentifiable(format!(
            "need at least 3 measurements for 3 parameters, got {}",
            measurements.len()
        )));
    }
    let distinct = |f: fn(&SnrMeasurement) -> f64| measurements.iter().map(|m| f(m).to_bits()).collect::<BTreeSet<_>>().len();
    if distinct(|m| m.gamma_sig) < 2 {
        return Err(Error::Unidentifiable("gamma_sig axis: need at least 2 distinct signal levels".into()));
    }
    if distinct(|m| m.gamma_int) < 2 {
        return Err(Error::Unidentifiable("gamma_int axis: need at least 2 distinct interference levels".into()));
    }
    Ok(())
}

struct Point {
    sig: f64,
    int: f64,
    out_db: f64,
}

struct Evaluation {
    cost: f64,
    gradient: [f64; 3],
    normal: [[f64; 3]; 3],
}

fn evaluate(data: &[Point], p: &[f64; 3]) -> Evaluation {
    let (beta, a1, a2) = (p[0].exp(), p[1].exp(), p[2].exp());
    let mut cost = 0.0;
    let mut gradient = [0.0; 3];
    let mut normal = [[0.0; 3]; 3];
    for pt in data {
        let denom = 1.0 + a1 * pt.sig + a2 * pt.int;
        let pred_db = DB * (beta.ln() + pt.sig.ln() - denom.ln());
        let r = pred_db - pt.out_db;
        let jac = [DB, -DB * a1 * pt.sig / denom, -DB * a2 * pt.int / denom];
        cost += 0.5 * r * r;
        for i in 0..3 {
            gradient[i] += jac[i] * r;
            for j in 0..3 {
                normal[i][j] += jac[i] * jac[j];
            }
        }
    }
    Evaluation { cost, gradient, normal }
}

fn norm(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Gaussian elimination with partial pivoting.
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bussgang::model::{heuristic_init_from, model_predict};
    use crate::seed::Seed;
    use crate::types::SnrPair;
    use rand::Rng;
    use rand_distr::StandardNormal;

    fn grid(model: &SaturationModel) -> Vec<SnrMeasurement> {
        let sig_db = [-10.0, 0.0, 10.0, 25.0, 40.0, 60.0];
        let int_db = [f64::NEG_INFINITY, 10.0, 30.0, 50.0];
        let mut out = Vec::new();
        for &s in &sig_db {
            for &i in &int_db {
                let snr = SnrPair::from_db(s, i).unwrap();
                out.push(SnrMeasurement::new(snr.gamma_sig(), snr.gamma_int(), model_predict(model, snr)).unwrap());
            }
        }
        out
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn noiseless_recovery() {
        let truth = SaturationModel::new(1.3865, 0.0090, 0.0058).unwrap();
        let data = grid(&truth);
        let init = heuristic_init_from(&data, 10f64.powf(0.278)).unwrap();
        let rep = fit_model(&data, init).unwrap();
        assert!(rep.converged);
        assert!(rep.residual_norm < 1e-8, "{}", rep.residual_norm);
        assert!(rel(rep.model.beta(), truth.beta()) < 1e-3);
        assert!(rel(rep.model.alpha1(), truth.alpha1()) < 1e-3);
        assert!(rel(rep.model.alpha2(), truth.alpha2()) < 1e-3);
    }

    #[test]
    fn noisy_recovery_median() {
        let truth = SaturationModel::new(1.3865, 0.0090, 0.0058).unwrap();
        let clean = grid(&truth);
        let mut errs: Vec<f64> = (0..20)
            .map(|s| {
                let mut rng = Seed(s).rng();
                let data: Vec<_> = clean
                    .iter()
                    .map(|m| {
                        let e: f64 = rng.sample(StandardNormal);
                        SnrMeasurement { gamma_out: m.gamma_out * 10f64.powf(0.1 * e / 10.0), ..*m }
                    })
                    .collect();
                let rep = fit_model(&data, heuristic_init_from(&data, 1.9).unwrap()).unwrap();
                [
                    rel(rep.model.beta(), truth.beta()),
                    rel(rep.model.alpha1(), truth.alpha1()),
                    rel(rep.model.alpha2(), truth.alpha2()),
                ]
                .into_iter()
                .fold(0.0, f64::max)
            })
            .collect();
        errs.sort_by(f64::total_cmp);
        let median = 0.5 * (errs[9] + errs[10]);
        assert!(median < 0.05, "median worst-parameter error {median}");
    }

    #[test]
    fn identifiability_errors() {
        let m = SnrMeasurement::new(1.0, 0.0, 1.0).unwrap();
        let init = SaturationModel::new(1.0, 0.01, 0.01).unwrap();
        let two = [m, SnrMeasurement::new(10.0, 1.0, 5.0).unwrap()];
        assert!(matches!(fit_model(&two, init), Err(Error::Unidentifiable(_))));

        let flat_int: Vec<_> = (1..6).map(|k| SnrMeasurement::new(k as f64, 3.0, k as f64).unwrap()).collect();
        match fit_model(&flat_int, init) {
            Err(Error::Unidentifiable(msg)) => assert!(msg.contains("gamma_int")),
            other => panic!("{other:?}"),
        }
        let flat_sig: Vec<_> = (1..6).map(|k| SnrMeasurement::new(2.0, k as f64, 1.0).unwrap()).collect();
        match fit_model(&flat_sig, init) {
            Err(Error::Unidentifiable(msg)) => assert!(msg.contains("gamma_sig")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn solver_matches_known_system() {
        let x = solve3([[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]], [3.0, 5.0, 5.0]).unwrap();
        for v in x {
            assert!((v - 1.0).abs() < 1e-14);
        }
        assert!(solve3([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 0.0, 1.0]], [1.0, 2.0, 3.0]).is_none());
    }
}
