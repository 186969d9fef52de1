//! The two-parameter family of j-functions
//! `j(x) = 1 / (1 − 4 w(x)²)` with `w(x) = x^{6χ} + λx + u`.
//!
//! As a map `P¹ → P¹` it has degree `12χ`. The value 0 is only taken at
//! `x = ∞`, where `j` is totally ramified; every finite branch value comes
//! from a critical point of `w` (value `j(x*)`) or a zero of `w` (value 1).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly;

pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-10;
pub const POLE_TOL: f64 = 1e-12;
/// Critical values closer than this (relative) are reported once.
const VALUE_MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JFamilyPoint {
    chi: u32,
    pub lambda: Complex64,
    pub u: Complex64,
}

impl JFamilyPoint {
    pub fn new(chi: u32, lambda: Complex64, u: Complex64) -> Result<Self> {
        if chi == 0 {
            return Err(Error::NonPositiveChi);
        }
        Ok(JFamilyPoint { chi, lambda, u })
    }

    pub fn chi(&self) -> u32 {
        self.chi
    }

    pub fn degree(&self) -> usize {
        12 * self.chi as usize
    }

    fn exponent(&self) -> usize {
        6 * self.chi as usize
    }

    /// Coefficients of `w`, low to high degree.
    pub fn w_coefficients(&self) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(0.0, 0.0); self.exponent() + 1];
        c[0] = self.u;
        c[1] += self.lambda;
        c[self.exponent()] += Complex64::new(1.0, 0.0);
        c
    }

    /// Coefficients of `w' = 6χ·x^{6χ−1} + λ`.
    pub fn w_prime_coefficients(&self) -> Vec<Complex64> {
        let e = self.exponent();
        let mut c = vec![Complex64::new(0.0, 0.0); e];
        c[0] = self.lambda;
        c[e - 1] += Complex64::new(e as f64, 0.0);
        c
    }

    pub fn w(&self, x: Complex64) -> Complex64 {
        x.powu(self.exponent() as u32) + self.lambda * x + self.u
    }

    pub fn w_prime(&self, x: Complex64) -> Complex64 {
        let e = self.exponent() as u32;
        Complex64::new(e as f64, 0.0) * x.powu(e - 1) + self.lambda
    }
}

/// A value of `j`, or a pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JValue {
    Finite(Complex64),
    Pole,
}

pub fn j_eval(pt: &JFamilyPoint, x: Complex64) -> JValue {
    j_of_w(pt.w(x))
}

fn j_of_w(w: Complex64) -> JValue {
    let denom = Complex64::new(1.0, 0.0) - 4.0 * w * w;
    if denom.norm() < POLE_TOL || !denom.is_finite() {
        JValue::Pole
    } else {
        JValue::Finite(denom.inv())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchReport {
    /// Finite branch values, merged and sorted by modulus then argument.
    /// Always contains 1, the value at the zeros of `w`.
    pub finite_critical_values: Vec<Complex64>,
    /// Zeros of `w'` with multiplicity (`6χ − 1` of them).
    pub critical_points: Vec<Complex64>,
    /// Some critical point of `w` is a pole of `j`.
    pub has_infinite_branch_value: bool,
    pub min_nonzero_modulus: f64,
    pub max_bounded_modulus: f64,
    pub max_residual: f64,
    pub degree: usize,
    /// Ramification index of `j` over 0, attained only at `x = ∞`.
    pub multiplicity_at_infinity: usize,
}

pub fn branch_values(pt: &JFamilyPoint, tol: f64) -> Result<BranchReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let dw = pt.w_prime_coefficients();
    let critical_points = poly::roots(&dw);
    debug_assert_eq!(critical_points.len(), pt.exponent() - 1);
    let max_residual = critical_points.iter().map(|&x| pt.w_prime(x).norm()).fold(0.0, f64::max);
    if max_residual.is_nan() || max_residual >= tol {
        return Err(Error::RootFindFailure { residual: max_residual, tol });
    }

    let mut values = vec![Complex64::new(1.0, 0.0)];
    let mut has_pole = false;
    for &x in &critical_points {
        match j_eval(pt, x) {
            JValue::Finite(v) => values.push(v),
            JValue::Pole => has_pole = true,
        }
    }
    let finite_critical_values = merge_values(values);
    // 1/(1 − 4w²) has a constant numerator, so no finite value is zero
    let min_nonzero_modulus = finite_critical_values.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
    let max_bounded_modulus = finite_critical_values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(BranchReport {
        finite_critical_values,
        critical_points,
        has_infinite_branch_value: has_pole,
        min_nonzero_modulus,
        max_bounded_modulus,
        max_residual,
        degree: pt.degree(),
        multiplicity_at_infinity: pt.degree(),
    })
}

fn merge_values(mut values: Vec<Complex64>) -> Vec<Complex64> {
    values.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(a.arg().total_cmp(&b.arg())));
    let mut merged: Vec<Complex64> = Vec::new();
    for v in values {
        let dup = merged.iter().any(|m| (m - v).norm() <= VALUE_MERGE_TOL * m.norm().max(1.0));
        if !dup {
            merged.push(v);
        }
    }
    merged
}

/// One sampled parameter pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub lambda: Complex64,
    pub u: Complex64,
    pub min_modulus: f64,
    pub max_bounded_modulus: f64,
    pub pole: bool,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSummary {
    pub chi: u32,
    pub radius: f64,
    pub seed: u64,
    pub rows: Vec<ScanRow>,
    pub min_nonzero_modulus: f64,
    pub max_bounded_modulus: f64,
    pub pole_count: usize,
    pub max_residual: f64,
}

fn sample_disc(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.gen::<f64>();
    let z = Complex64::from_polar(r, theta);
    // normalize −0.0 so output is stable
    Complex64::new(z.re + 0.0, z.im + 0.0)
}

/// Samples `(λ, u)` uniformly from the polydisc `|λ|, |u| ≤ radius` and
/// aggregates branch-value bounds. Deterministic for a given seed.
pub fn scan_polydisc(chi: u32, radius: f64, samples: usize, seed: u64) -> Result<ScanSummary> {
    if !radius.is_finite() || radius < 0.0 {
        return Err(Error::InvalidParameter(format!("radius must be nonnegative, got {radius}")));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    if chi == 0 {
        return Err(Error::NonPositiveChi);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params: Vec<(Complex64, Complex64)> = (0..samples)
        .map(|_| {
            let lambda = sample_disc(&mut rng, radius);
            let u = sample_disc(&mut rng, radius);
            (lambda, u)
        })
        .collect();
    let rows: Vec<ScanRow> = params
        .par_iter()
        .map(|&(lambda, u)| {
            let pt = JFamilyPoint::new(chi, lambda, u)?;
            let rep = branch_values(&pt, DEFAULT_RESIDUAL_TOL)?;
            Ok(ScanRow {
                lambda,
                u,
                min_modulus: rep.min_nonzero_modulus,
                max_bounded_modulus: rep.max_bounded_modulus,
                pole: rep.has_infinite_branch_value,
                max_residual: rep.max_residual,
            })
        })
        .collect::<Result<_>>()?;
    let min_nonzero_modulus = rows.iter().map(|r| r.min_modulus).fold(f64::INFINITY, f64::min);
    let max_bounded_modulus = rows.iter().map(|r| r.max_bounded_modulus).fold(0.0, f64::max);
    let max_residual = rows.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    let pole_count = rows.iter().filter(|r| r.pole).count();
    Ok(ScanSummary { chi, radius, seed, rows, min_nonzero_modulus, max_bounded_modulus, pole_count, max_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn j_values_at_simple_points() {
        let pt = JFamilyPoint::new(1, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(j_eval(&pt, c(0.0, 0.0)), JValue::Finite(c(1.0, 0.0)));
        let pole = JFamilyPoint::new(1, c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert_eq!(j_eval(&pole, c(0.0, 0.0)), JValue::Pole);
        match j_eval(&pt, c(1e3, 0.0)) {
            JValue::Finite(v) => assert!(v.norm() < 1e-10),
            JValue::Pole => panic!("unexpected pole"),
        }
    }

    #[test]
    fn unperturbed_branch_values() {
        let pt = JFamilyPoint::new(1, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let rep = branch_values(&pt, DEFAULT_RESIDUAL_TOL).unwrap();
        assert_eq!(rep.finite_critical_values, vec![c(1.0, 0.0)]);
        assert_eq!(rep.degree, 12);
        assert_eq!(rep.min_nonzero_modulus, 1.0);
        assert_eq!(rep.critical_points.len(), 5);
        assert!(!rep.has_infinite_branch_value);
    }

    #[test]
    fn pole_at_critical_point() {
        let pt = JFamilyPoint::new(1, c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        let rep = branch_values(&pt, DEFAULT_RESIDUAL_TOL).unwrap();
        assert!(rep.has_infinite_branch_value);
    }

    #[test]
    fn degree_scales_with_chi() {
        let pt = JFamilyPoint::new(2, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(branch_values(&pt, DEFAULT_RESIDUAL_TOL).unwrap().degree, 24);
        assert_eq!(JFamilyPoint::new(0, c(0.0, 0.0), c(0.0, 0.0)), Err(Error::NonPositiveChi));
    }

    #[test]
    fn bad_tolerance_rejected() {
        let pt = JFamilyPoint::new(1, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(branch_values(&pt, 0.0).is_err());
    }

    #[test]
    fn zero_radius_scan_is_degenerate() {
        let s = scan_polydisc(1, 0.0, 5, 7).unwrap();
        for row in &s.rows {
            assert_eq!(row.lambda, c(0.0, 0.0));
            assert_eq!(row.u, c(0.0, 0.0));
            assert_eq!(row.min_modulus, 1.0);
        }
    }

    #[test]
    fn scan_is_deterministic() {
        assert_eq!(scan_polydisc(1, 0.3, 20, 42).unwrap(), scan_polydisc(1, 0.3, 20, 42).unwrap());
    }
}
