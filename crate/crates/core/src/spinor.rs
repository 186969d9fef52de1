//! Isometries, Cartan–Dieudonné factorization over ℚ and the real spinor
//! norm.
//!
//! Matrices act on coordinate columns, `x ↦ M·x`, so `M` is an isometry iff
//! `Mᵀ·G·M = G`. The real spinor norm of a product of reflections
//! `r_{v₁}⋯r_{v_k}` is `(−1)^p` where `p` counts the `vᵢ` of positive
//! square; with this normalization every reflection in a (−2)-root has
//! norm `+1`, so the monodromy group lies in its kernel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, RatMatrix};
use crate::lattice::{Lattice, LatticeVector};

/// An integral matrix preserving a lattice's Gram form, invertible over ℤ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    matrix: Vec<Vec<i64>>,
}

impl Isometry {
    pub fn new(lattice: &Lattice, matrix: Vec<Vec<i64>>) -> Result<Self> {
        check_square(lattice, &matrix)?;
        if !preserves_form(lattice, &matrix) {
            return Err(Error::NotAnIsometry);
        }
        if exact::determinant(&exact::to_big(&matrix)).abs() != BigInt::one() {
            return Err(Error::NotUnimodular);
        }
        Ok(Isometry { matrix })
    }

    pub fn identity(rank: usize) -> Self {
        Isometry { matrix: identity_i64(rank) }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        Ok(Isometry { matrix: mat_mul_i64(&self.matrix, &other.matrix)? })
    }

    pub fn apply(&self, x: &LatticeVector) -> Result<LatticeVector> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: x.len() });
        }
        self.matrix
            .iter()
            .map(|row| {
                let s: i128 = row.iter().zip(x.coords()).map(|(&a, &b)| a as i128 * b as i128).sum();
                i64::try_from(s).map_err(|_| Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector::new)
    }
}

/// Reflection in a root, as an isometry.
pub fn root_reflection(lattice: &Lattice, delta: &LatticeVector) -> Result<Isometry> {
    Ok(Isometry { matrix: crate::monodromy::root_reflection_matrix(lattice, delta)? })
}

/// Reflection `x ↦ x − 2(x·v)/(v·v)·v` for an integral vector whose square
/// divides twice every pairing (squares ±1 and ±2 always qualify).
pub fn integral_reflection(lattice: &Lattice, v: &LatticeVector) -> Result<Isometry> {
    let q = lattice.square(v)?;
    if q == 0 {
        return Err(Error::Isotropic);
    }
    let gv = lattice.apply_gram(v)?;
    let n = lattice.rank();
    let mut m = identity_i64(n);
    for j in 0..n {
        // column j is the image of e_j: coefficient −2(e_j·v)/q
        let num = 2 * gv[j];
        if num % q != 0 {
            return Err(Error::InvalidParameter(format!("reflection in a vector of square {q} is not integral")));
        }
        let c = num / q;
        for i in 0..n {
            m[i][j] -= c * v[i];
        }
    }
    Ok(Isometry { matrix: m })
}

fn identity_i64(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub(crate) fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    let s: i128 = row.iter().zip(b).map(|(&x, r)| x as i128 * r[j] as i128).sum();
                    i64::try_from(s).map_err(|_| Error::Overflow)
                })
                .collect()
        })
        .collect()
}

fn check_square(lattice: &Lattice, m: &[Vec<i64>]) -> Result<()> {
    let n = lattice.rank();
    if m.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.len() });
    }
    for row in m {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
    }
    Ok(())
}

fn preserves_form(lattice: &Lattice, m: &[Vec<i64>]) -> bool {
    let g = exact::to_big(lattice.gram());
    let mb = exact::to_big(m);
    let n = lattice.rank();
    // (Mᵀ G M)[i][j] = Σ_k Σ_l M[k][i] G[k][l] M[l][j]
    let gm: Vec<Vec<BigInt>> =
        (0..n).map(|k| (0..n).map(|j| (0..n).map(|l| &g[k][l] * &mb[l][j]).sum()).collect()).collect();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let v: BigInt = (0..n).map(|k| &mb[k][i] * &gm[k][j]).sum();
            v == g[i][j]
        })
    })
}

/// True iff `M` preserves the form and fixes `f`.
pub fn is_isometry_fixing(lattice: &Lattice, m: &[Vec<i64>], f: &LatticeVector) -> Result<bool> {
    check_square(lattice, m)?;
    lattice.check_dim(f)?;
    if !preserves_form(lattice, m) {
        return Ok(false);
    }
    let image = mat_mul_i64(m, &f.coords().iter().map(|&x| vec![x]).collect::<Vec<_>>())?;
    Ok(image.iter().zip(f.coords()).all(|(r, &x)| r[0] == x))
}

/// Rational anisotropic vectors whose reflections compose to an isometry:
/// `M = r_{v₁} ∘ r_{v₂} ∘ ⋯ ∘ r_{v_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionFactorization {
    pub vectors: Vec<Vec<BigRational>>,
    pub squares: Vec<BigRational>,
}

impl ReflectionFactorization {
    /// Number of factors with positive square.
    pub fn positive_count(&self) -> usize {
        self.squares.iter().filter(|q| q.is_positive()).count()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Multiplies the reflections back together.
    pub fn compose(&self, lattice: &Lattice) -> RatMatrix {
        let g = exact::to_rational(lattice.gram());
        let mut m = exact::identity_rational(lattice.rank());
        for v in self.vectors.iter().rev() {
            apply_reflection_left(&g, v, &mut m);
        }
        m
    }
}

fn rational_square(g: &RatMatrix, v: &[BigRational]) -> BigRational {
    let gv = mat_vec(g, v);
    dot(v, &gv)
}

fn mat_vec(g: &RatMatrix, v: &[BigRational]) -> Vec<BigRational> {
    g.iter().map(|row| dot(row, v)).collect()
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// `m ← r_v ∘ m`.
fn apply_reflection_left(g: &RatMatrix, v: &[BigRational], m: &mut RatMatrix) {
    let gv = mat_vec(g, v);
    let q = dot(v, &gv);
    let two = BigRational::from_integer(2.into());
    let n = m.len();
    for j in 0..n {
        let col_dot: BigRational =
            (0..n).filter(|&k| !gv[k].is_zero()).fold(BigRational::zero(), |acc, k| acc + &gv[k] * &m[k][j]);
        if col_dot.is_zero() {
            continue;
        }
        let c = &two * col_dot / &q;
        for i in 0..n {
            if !v[i].is_zero() {
                let t = &c * &v[i];
                m[i][j] -= t;
            }
        }
    }
}

/// Cartan–Dieudonné factorization using the orthogonal basis produced by
/// rational diagonalization.
pub fn cartan_dieudonne(lattice: &Lattice, m: &Isometry) -> Result<ReflectionFactorization> {
    let d = exact::diagonalize(&exact::to_rational(lattice.gram()));
    let radical_rank = d.diag.iter().filter(|x| x.is_zero()).count();
    if radical_rank > 0 {
        return Err(Error::DegenerateForm { radical_rank });
    }
    factor_along(lattice, m, &d.basis)
}

/// Cartan–Dieudonné factorization along a caller-supplied orthogonal basis
/// of anisotropic vectors.
///
/// The basis vectors `u₁, …, u_n` are fixed one at a time. If the current
/// map `σ` sends `uᵢ` to `y ≠ uᵢ`, the reflection in `y − uᵢ` repairs it
/// when that vector is anisotropic; otherwise `y + uᵢ` is anisotropic and
/// the pair `r_{uᵢ} ∘ r_{y+uᵢ}` is used. Either way the earlier `uⱼ` stay
/// fixed, so at most `2n` reflections are produced.
pub fn factor_along(lattice: &Lattice, m: &Isometry, basis: &[Vec<BigRational>]) -> Result<ReflectionFactorization> {
    let n = lattice.rank();
    if m.rank() != n || basis.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: basis.len().min(m.rank()) });
    }
    let g = exact::to_rational(lattice.gram());
    for (i, u) in basis.iter().enumerate() {
        if rational_square(&g, u).is_zero() {
            return Err(Error::Isotropic);
        }
        for w in &basis[..i] {
            if !dot(u, &mat_vec(&g, w)).is_zero() {
                return Err(Error::InvalidParameter("basis is not orthogonal".into()));
            }
        }
    }

    let mut sigma: RatMatrix = exact::to_rational(m.matrix());
    let mut vectors = Vec::new();
    for u in basis {
        let y: Vec<BigRational> = {
            let cols: Vec<BigRational> = (0..n).map(|i| dot(&sigma[i], u)).collect();
            cols
        };
        if y == *u {
            continue;
        }
        let diff: Vec<BigRational> = y.iter().zip(u).map(|(a, b)| a - b).collect();
        if !rational_square(&g, &diff).is_zero() {
            apply_reflection_left(&g, &diff, &mut sigma);
            vectors.push(diff);
        } else {
            let sum: Vec<BigRational> = y.iter().zip(u).map(|(a, b)| a + b).collect();
            apply_reflection_left(&g, &sum, &mut sigma);
            apply_reflection_left(&g, u, &mut sigma);
            vectors.push(sum);
            vectors.push(u.clone());
        }
    }
    debug_assert_eq!(sigma, exact::identity_rational(n));
    let squares = vectors.iter().map(|v| rational_square(&g, v)).collect();
    Ok(ReflectionFactorization { vectors, squares })
}

/// The real spinor norm, `+1` or `−1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinorNorm {
    Plus,
    Minus,
}

impl SpinorNorm {
    pub fn sign(self) -> i8 {
        match self {
            SpinorNorm::Plus => 1,
            SpinorNorm::Minus => -1,
        }
    }

    fn from_positive_count(count: usize) -> Self {
        if count.is_multiple_of(2) {
            SpinorNorm::Plus
        } else {
            SpinorNorm::Minus
        }
    }
}

impl std::ops::Mul for SpinorNorm {
    type Output = SpinorNorm;

    fn mul(self, rhs: SpinorNorm) -> SpinorNorm {
        if self == rhs {
            SpinorNorm::Plus
        } else {
            SpinorNorm::Minus
        }
    }
}

/// Real spinor norm on a nondegenerate lattice.
pub fn real_spinor_norm(lattice: &Lattice, m: &Isometry) -> Result<SpinorNorm> {
    let f = cartan_dieudonne(lattice, m)?;
    Ok(SpinorNorm::from_positive_count(f.positive_count()))
}

/// An isometry pushed down to `L / rad(L)`.
#[derive(Debug, Clone)]
pub struct QuotientIsometry {
    pub lattice: Lattice,
    pub isometry: Isometry,
}

/// Induces an isometry on the lattice modulo its radical.
///
/// With `U` the unimodular basis change whose leading columns span a
/// complement and trailing columns the radical, `U⁻¹·M·U` is block lower
/// triangular and its leading block is the induced map.
pub fn reduce_mod_radical(lattice: &Lattice, m: &Isometry) -> Result<QuotientIsometry> {
    let (quotient, split) = lattice.modulo_radical()?;
    let k = split.complement.len();
    let cols: Vec<Vec<i64>> = split.complement.iter().chain(&split.kernel).map(|v| v.coords().to_vec()).collect();
    let u = exact::transpose(&cols);
    let u_rat = exact::to_rational(&u);
    let u_inv = exact::inverse_rational(&u_rat).ok_or(Error::NotUnimodular)?;
    let conj = exact::mat_mul_rational(&u_inv, &exact::mat_mul_rational(&exact::to_rational(m.matrix()), &u_rat));
    let block: RatMatrix = conj[..k].iter().map(|row| row[..k].to_vec()).collect();
    let block = exact::rational_matrix_to_i64(&block).ok_or(Error::NotUnimodular)?;
    let isometry = Isometry::new(&quotient, block)?;
    Ok(QuotientIsometry { lattice: quotient, isometry })
}

/// Detailed membership check for `O'_f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub preserves_form: bool,
    pub fixes_f: bool,
    /// `None` when the matrix is not an isometry.
    pub spinor_norm: Option<SpinorNorm>,
    /// Whether the norm was computed on `L / rad(L)`.
    pub reduced_mod_radical: bool,
    pub factorization: Option<ReflectionFactorization>,
}

impl MembershipReport {
    pub fn member(&self) -> bool {
        self.preserves_form && self.fixes_f && self.spinor_norm == Some(SpinorNorm::Plus)
    }
}

pub fn o_prime_f_report(lattice: &Lattice, m: &[Vec<i64>], f: &LatticeVector) -> Result<MembershipReport> {
    check_square(lattice, m)?;
    lattice.check_dim(f)?;
    let preserves = preserves_form(lattice, m);
    let fixes_f = preserves && is_isometry_fixing(lattice, m, f)?;
    if !preserves {
        return Ok(MembershipReport {
            preserves_form: false,
            fixes_f: false,
            spinor_norm: None,
            reduced_mod_radical: false,
            factorization: None,
        });
    }
    let iso = Isometry::new(lattice, m.to_vec())?;
    let degenerate = lattice.is_degenerate();
    let factorization = if degenerate {
        match reduce_mod_radical(lattice, &iso) {
            Ok(q) => cartan_dieudonne(&q.lattice, &q.isometry)?,
            // totally isotropic: the quotient is zero and the norm trivial
            Err(Error::EmptyInput) => ReflectionFactorization { vectors: vec![], squares: vec![] },
            Err(e) => return Err(e),
        }
    } else {
        cartan_dieudonne(lattice, &iso)?
    };
    Ok(MembershipReport {
        preserves_form: true,
        fixes_f,
        spinor_norm: Some(SpinorNorm::from_positive_count(factorization.positive_count())),
        reduced_mod_radical: degenerate,
        factorization: Some(factorization),
    })
}

/// Membership in `O'_f = {γ ∈ O(L) : γ(f) = f, γ has positive real spinor norm}`.
///
/// The group `O'_k` of isometries fixing the canonical class `k` is the same
/// predicate with `k` passed in place of `f`.
pub fn in_o_prime_f(lattice: &Lattice, m: &[Vec<i64>], f: &LatticeVector) -> Result<bool> {
    Ok(o_prime_f_report(lattice, m, f)?.member())
}
