//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Everything here works over `BigInt` / `BigRational`; callers convert back
//! to machine integers with an overflow check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_rational(m: &[Vec<i64>]) -> RatMatrix {
    m.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect()
}

pub fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

pub fn matrix_to_i64(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    m.iter().map(|row| row.iter().map(to_i64).collect()).collect()
}

/// Converts a rational matrix with integral entries back to `i64`.
pub fn rational_matrix_to_i64(m: &RatMatrix) -> Option<Vec<Vec<i64>>> {
    m.iter()
        .map(|row| row.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect())
        .collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Integer row echelon form, optionally tracking the unimodular transform.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    /// Hermite normal form: positive pivots, entries above each pivot reduced
    /// into `[0, pivot)`, zero rows last.
    pub rows: IntMatrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    /// `transform * input == rows` when tracking was requested.
    pub transform: Option<IntMatrix>,
}

pub fn row_echelon(input: &IntMatrix, track: bool) -> RowEchelon {
    let nrows = input.len();
    let ncols = input.first().map_or(0, Vec::len);
    let mut a = input.clone();
    let mut t: Option<IntMatrix> = track.then(|| identity_int(nrows));
    let mut pivot_row = 0;
    let mut pivot_columns = Vec::new();

    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        loop {
            // smallest nonzero entry in this column at or below pivot_row
            let best = (pivot_row..nrows)
                .filter(|&r| !a[r][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(best) = best else { break };
            a.swap(pivot_row, best);
            if let Some(t) = t.as_mut() {
                t.swap(pivot_row, best);
            }
            let mut done = true;
            for r in pivot_row + 1..nrows {
                if a[r][col].is_zero() {
                    continue;
                }
                let q = a[r][col].div_floor(&a[pivot_row][col]);
                sub_row_multiple(&mut a, r, pivot_row, &q);
                if let Some(t) = t.as_mut() {
                    sub_row_multiple(t, r, pivot_row, &q);
                }
                if !a[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[pivot_row][col].is_zero() {
            continue;
        }
        if a[pivot_row][col].is_negative() {
            negate_row(&mut a, pivot_row);
            if let Some(t) = t.as_mut() {
                negate_row(t, pivot_row);
            }
        }
        for r in 0..pivot_row {
            let q = a[r][col].div_floor(&a[pivot_row][col]);
            if !q.is_zero() {
                sub_row_multiple(&mut a, r, pivot_row, &q);
                if let Some(t) = t.as_mut() {
                    sub_row_multiple(t, r, pivot_row, &q);
                }
            }
        }
        pivot_columns.push(col);
        pivot_row += 1;
    }

    RowEchelon { rows: a, rank: pivot_row, pivot_columns, transform: t }
}

fn sub_row_multiple(a: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    let (src, dst) = if source < target {
        let (lo, hi) = a.split_at_mut(target);
        (&lo[source], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(source);
        (&hi[0], &mut lo[target])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

fn negate_row(a: &mut IntMatrix, r: usize) {
    for x in a[r].iter_mut() {
        *x = -std::mem::take(x);
    }
}

pub fn identity_int(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Nonzero elementary divisors of an integer matrix, in divisibility order.
pub fn smith_divisors(input: &IntMatrix) -> Vec<BigInt> {
    let mut a = input.clone();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // pivot: smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..nrows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            sub_row_multiple(&mut a, i, t, &q);
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..ncols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for row in a.iter_mut() {
                let s = &q * &row[t];
                row[j] -= s;
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // pivot must divide the whole trailing block
        let offender = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
        if let Some(i) = offender {
            for j in t..ncols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        divisors.push(a[t][t].abs());
        t += 1;
    }
    divisors
}

/// Congruence diagonalization of a symmetric rational matrix.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    /// `basis[k]` is a vector in the original coordinates; these are pairwise
    /// orthogonal with `basis[k]·basis[k] = diag[k]`.
    pub basis: RatMatrix,
    pub diag: Vec<BigRational>,
}

/// Symmetric Gaussian elimination. The pivot is the first nonzero diagonal
/// entry of the trailing block; failing that, the first nonzero off-diagonal
/// pair `(i, j)` in row-major order is folded into `e_i + e_j`.
pub fn diagonalize(gram: &RatMatrix) -> Diagonalization {
    let n = gram.len();
    let mut a = gram.clone();
    let mut basis: RatMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();

    for k in 0..n {
        let pivot = match (k..n).find(|&i| !a[i][i].is_zero()) {
            Some(i) => Some(i),
            None => {
                let pair = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
                pair.map(|(i, j)| {
                    add_congruent(&mut a, &mut basis, i, j);
                    i
                })
            }
        };
        let Some(p) = pivot else { break };
        swap_congruent(&mut a, &mut basis, k, p);
        for l in k + 1..n {
            if a[l][k].is_zero() {
                continue;
            }
            let c = &a[l][k] / &a[k][k];
            for m in 0..n {
                let v = &c * &a[k][m];
                a[l][m] -= v;
            }
            for m in 0..n {
                let v = &c * &a[m][k];
                a[m][l] -= v;
            }
            for m in 0..n {
                let v = &c * &basis[k][m];
                basis[l][m] -= v;
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i].clone()).collect();
    Diagonalization { basis, diag }
}

fn swap_congruent(a: &mut RatMatrix, basis: &mut RatMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    basis.swap(i, j);
}

// e_i <- e_i + e_j
fn add_congruent(a: &mut RatMatrix, basis: &mut RatMatrix, i: usize, j: usize) {
    let n = a.len();
    for m in 0..n {
        let v = a[j][m].clone();
        a[i][m] += v;
    }
    for m in 0..n {
        let v = a[m][j].clone();
        a[m][i] += v;
    }
    for m in 0..n {
        let v = basis[j][m].clone();
        basis[i][m] += v;
    }
}

pub fn identity_rational(n: usize) -> RatMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect()
}

pub fn mat_mul_rational(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(
                        BigRational::zero(),
                        |acc, k| {
                            if row[k].is_zero() {
                                acc
                            } else {
                                acc + &row[k] * &b[k][j]
                            }
                        },
                    )
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` for singular input.
pub fn inverse_rational(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity_rational(n);
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &piv;
        }
        for x in inv[c].iter_mut() {
            *x /= &piv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
                let w = &f * &inv[c][k];
                inv[r][k] -= w;
            }
        }
    }
    Some(inv)
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
