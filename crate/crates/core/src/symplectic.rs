//! Unimodular skew forms, transvections and finite-quotient closures.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact;
use crate::lattice::{Lattice, LatticeVector};
use crate::spinor::{in_o_prime_f, mat_mul_i64};

/// A free module of rank `2q` with a unimodular alternating form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticSpace {
    skew: Vec<Vec<i64>>,
}

impl SymplecticSpace {
    pub fn new(skew: Vec<Vec<i64>>) -> Result<Self> {
        let n = skew.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if skew.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSkewForm("not square"));
        }
        for i in 0..n {
            for j in 0..n {
                if skew[i][j] != -skew[j][i] {
                    return Err(Error::InvalidSkewForm("not antisymmetric"));
                }
            }
        }
        if exact::determinant(&exact::to_big(&skew)).abs() != BigInt::from(1) {
            return Err(Error::InvalidSkewForm("not unimodular"));
        }
        Ok(SymplecticSpace { skew })
    }

    pub fn rank(&self) -> usize {
        self.skew.len()
    }

    pub fn skew(&self) -> &[Vec<i64>] {
        &self.skew
    }

    /// `b(x, y) = xᵀ·skew·y`.
    pub fn form(&self, x: &LatticeVector, y: &LatticeVector) -> Result<i64> {
        let n = self.rank();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        let s: i128 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| x[i] as i128 * self.skew[i][j] as i128 * y[j] as i128)
            .sum();
        i64::try_from(s).map_err(|_| Error::Overflow)
    }

    /// True iff `Mᵀ·skew·M = skew`.
    pub fn preserves(&self, m: &[Vec<i64>]) -> Result<bool> {
        let n = self.rank();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: m.len() });
        }
        let mt = exact::transpose(m);
        let lhs = mat_mul_i64(&mt, &mat_mul_i64(&self.skew, m)?)?;
        Ok(lhs == self.skew)
    }
}

/// The form with `b(aᵢ, bᵢ) = 1` in the basis `a₁…a_q, b₁…b_q`.
pub fn standard_symplectic(q: usize) -> Result<SymplecticSpace> {
    if q == 0 {
        return Err(Error::NonPositiveQ);
    }
    let n = 2 * q;
    let mut skew = vec![vec![0i64; n]; n];
    for i in 0..q {
        skew[i][q + i] = 1;
        skew[q + i][i] = -1;
    }
    SymplecticSpace::new(skew)
}

/// Matrix of `T_v(x) = x + b(x, v)·v`.
pub fn transvection(space: &SymplecticSpace, v: &LatticeVector) -> Result<Vec<Vec<i64>>> {
    let n = space.rank();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    // column j: e_j + b(e_j, v)·v
    let b_col: Vec<i64> = (0..n).map(|j| space.form(&LatticeVector::unit(n, j), v)).collect::<Result<_>>()?;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    b_col[j].checked_mul(v[i]).and_then(|t| t.checked_add(i64::from(i == j))).ok_or(Error::Overflow)
                })
                .collect()
        })
        .collect()
}

/// Transvection directions `a₁…a_q, b₁…b_q` followed by `aᵢ + aᵢ₊₁`.
pub fn standard_generators(q: usize) -> Result<Vec<LatticeVector>> {
    if q == 0 {
        return Err(Error::NonPositiveQ);
    }
    let n = 2 * q;
    let mut gens: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
    for i in 0..q - 1 {
        gens.push(&LatticeVector::unit(n, i) + &LatticeVector::unit(n, i + 1));
    }
    Ok(gens)
}

/// `|Sp(2q, p)| = p^{q²} · ∏_{i=1}^{q} (p^{2i} − 1)`, or `None` on overflow.
pub fn sp_order(q: u32, p: u64) -> Option<u128> {
    let p = p as u128;
    let mut order = p.checked_pow(q * q)?;
    for i in 1..=q {
        order = order.checked_mul(p.checked_pow(2 * i)? - 1)?;
    }
    Some(order)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Default element limit for [`closure_mod_p`].
pub const DEFAULT_CLOSURE_LIMIT: usize = 5_000_000;

/// Order of the group generated by the reductions mod `p` of `generators`.
pub fn closure_mod_p(space: &SymplecticSpace, generators: &[Vec<Vec<i64>>], p: u64) -> Result<usize> {
    closure_mod_p_bounded(space, generators, p, DEFAULT_CLOSURE_LIMIT)
}

/// Breadth-first closure of the identity under right multiplication by the
/// generators, all reduced mod `p`.
pub fn closure_mod_p_bounded(
    space: &SymplecticSpace,
    generators: &[Vec<Vec<i64>>],
    p: u64,
    limit: usize,
) -> Result<usize> {
    Ok(enumerate_mod_p(space, generators, p, limit)?.len())
}

/// The full list of group elements, flattened row-major, in discovery order.
pub fn enumerate_mod_p(
    space: &SymplecticSpace,
    generators: &[Vec<Vec<i64>>],
    p: u64,
    limit: usize,
) -> Result<Vec<Vec<u32>>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > u32::MAX as u64 {
        return Err(Error::InvalidParameter("modulus too large".into()));
    }
    for (index, g) in generators.iter().enumerate() {
        if !space.preserves(g)? {
            return Err(Error::NotSymplectic { index });
        }
    }
    let n = space.rank();
    let reduce = |x: i64| x.rem_euclid(p as i64) as u32;
    let gens: Vec<Vec<u32>> = generators.iter().map(|g| g.iter().flatten().map(|&x| reduce(x)).collect()).collect();
    let identity: Vec<u32> = (0..n * n).map(|k| u32::from(k / n == k % n)).collect();

    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    order.push(identity.clone());
    queue.push_back(identity);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = mul_mod(&x, g, n, p);
            if !seen.contains(&y) {
                if seen.len() >= limit {
                    return Err(Error::BudgetExceeded { limit });
                }
                seen.insert(y.clone());
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

fn mul_mod(a: &[u32], b: &[u32], n: usize, p: u64) -> Vec<u32> {
    let mut out = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let s: u64 = (0..n).map(|k| a[i * n + k] as u64 * b[k * n + j] as u64 % p).sum();
            out[i * n + j] = (s % p) as u32;
        }
    }
    out
}

/// Membership of a pair `(M₂, M₁)` in `O'_f(L²) × Sp(L¹)`.
pub fn in_monodromy_image(
    lattice: &Lattice,
    m2: &[Vec<i64>],
    f: &LatticeVector,
    space: &SymplecticSpace,
    m1: &[Vec<i64>],
) -> Result<bool> {
    let symplectic = space.preserves(m1)? && exact::determinant(&exact::to_big(m1)).abs() == BigInt::from(1);
    Ok(symplectic && in_o_prime_f(lattice, m2, f)?)
}
