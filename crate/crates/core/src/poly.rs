//! Simultaneous root finding for dense complex polynomials (Aberth–Ehrlich).

use num_complex::Complex64;

const MAX_ITERATIONS: usize = 500;

/// Horner evaluation of `p` and `p'`; coefficients are low to high degree.
pub fn eval_with_derivative(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

pub fn eval(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    eval_with_derivative(coeffs, x).0
}

/// All roots of the polynomial with the given coefficients (low to high),
/// repeated by multiplicity. Exact zero roots are split off before
/// iterating.
pub fn roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let top = match coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0)) {
        Some(t) => t,
        None => return Vec::new(),
    };
    let coeffs = &coeffs[..=top];
    let zeros = coeffs.iter().position(|c| *c != Complex64::new(0.0, 0.0)).unwrap_or(0);
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    let reduced = &coeffs[zeros..];
    out.extend(aberth(reduced));
    out
}

fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Vec::new();
    }
    let lead = coeffs[degree];
    if degree == 1 {
        return vec![-coeffs[0] / lead];
    }
    // start on the circle whose radius is the geometric mean of the root moduli
    let radius = (coeffs[0] / lead).norm().powf(1.0 / degree as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut largest_step: f64 = 0.0;
        for k in 0..degree {
            let (p, dp) = eval_with_derivative(coeffs, z[k]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let newton = p / dp;
            let repulsion: Complex64 = (0..degree).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if step.is_finite() {
                z[k] -= step;
                largest_step = largest_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if largest_step < 1e-16 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..2 {
            let (p, dp) = eval_with_derivative(coeffs, *zk);
            let step = p / dp;
            if step.is_finite() {
                *zk -= step;
            }
        }
    }
    z
}
