//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use monolat::{Lattice, LatticeVector};

/// Every `x` with `q(x) = target` and all coordinates in `[-h, h]`, by plain
/// enumeration of the box. Only for tiny ranks.
pub fn brute_force_box(lattice: &Lattice, h: i64, target: i64) -> Vec<LatticeVector> {
    let n = lattice.rank();
    let mut out = Vec::new();
    let mut x = vec![-h; n];
    loop {
        let v = LatticeVector::new(x.clone());
        if lattice.square(&v).unwrap() == target {
            out.push(v);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if x[i] < h {
                x[i] += 1;
                break;
            }
            x[i] = -h;
            i += 1;
        }
    }
}

/// All `x` with `−q(x) = norm` in a negative definite lattice, by
/// Fincke–Pohst enumeration over an `LDLᵀ` decomposition of `−G` in
/// floating point, with an exact check at the leaves.
pub fn short_vectors_negative_definite(lattice: &Lattice, norm: i64) -> Vec<LatticeVector> {
    let n = lattice.rank();
    let a: Vec<Vec<f64>> = lattice.gram().iter().map(|r| r.iter().map(|&x| -(x as f64)).collect()).collect();
    // q(x) = Σ d_i (x_i + Σ_{j>i} mu_ij x_j)²
    let mut d = vec![0.0; n];
    let mut mu = vec![vec![0.0; n]; n];
    let mut work = a.clone();
    for i in 0..n {
        d[i] = work[i][i];
        assert!(d[i] > 0.0, "not definite");
        for j in i + 1..n {
            mu[i][j] = work[i][j] / d[i];
        }
        for j in i + 1..n {
            for k in i + 1..n {
                work[j][k] -= mu[i][j] * d[i] * mu[i][k];
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    recurse(lattice, &d, &mu, n, norm as f64 + 1e-6, &mut x, norm, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    lattice: &Lattice,
    d: &[f64],
    mu: &[Vec<f64>],
    level: usize,
    remaining: f64,
    x: &mut Vec<i64>,
    norm: i64,
    out: &mut Vec<LatticeVector>,
) {
    if level == 0 {
        let v = LatticeVector::new(x.clone());
        if -lattice.square(&v).unwrap() == norm {
            out.push(v);
        }
        return;
    }
    let i = level - 1;
    let center: f64 = -(i + 1..x.len()).map(|j| mu[i][j] * x[j] as f64).sum::<f64>();
    let radius = (remaining / d[i]).max(0.0).sqrt();
    let lo = (center - radius).ceil() as i64;
    let hi = (center + radius).floor() as i64;
    for xi in lo..=hi {
        x[i] = xi;
        let t = xi as f64 - center;
        recurse(lattice, d, mu, i, remaining - d[i] * t * t, x, norm, out);
    }
    x[i] = 0;
}

/// Random unimodular matrix as a product of elementary operations.
pub fn random_unimodular(n: usize, steps: usize, rng: &mut impl rand::Rng) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        for row in m.iter_mut() {
            row[j] += c * row[i];
        }
    }
    m
}

pub fn congruent(lattice: &Lattice, p: &[Vec<i64>]) -> Lattice {
    let n = lattice.rank();
    let g = lattice.gram();
    let gp: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| g[i][k] * p[k][j]).sum()).collect()).collect();
    let ptgp = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| p[k][i] * gp[k][j]).sum()).collect()).collect();
    Lattice::new(ptgp).unwrap()
}
