//! Integral lattices given by a symmetric Gram matrix over a fixed basis.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{self, IntMatrix};

/// Integer coordinates relative to a lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Largest absolute coordinate.
    pub fn height(&self) -> u64 {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    /// `self + c * other`, failing on overflow.
    pub fn add_scaled(&self, c: i64, other: &LatticeVector) -> Result<LatticeVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| c.checked_mul(b).and_then(|cb| a.checked_add(cb)).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector)
    }

    /// The representative of `±self` whose first nonzero coordinate is positive.
    pub fn canonical_sign(&self) -> LatticeVector {
        match self.0.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => -self,
            _ => self.clone(),
        }
    }

    /// Concatenates coordinates, embedding into an orthogonal sum.
    pub fn concat(&self, other: &LatticeVector) -> LatticeVector {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        LatticeVector(v)
    }
}

impl std::borrow::Borrow<[i64]> for LatticeVector {
    fn borrow(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl Index<usize> for LatticeVector {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;

    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;

    fn neg(self) -> LatticeVector {
        -&self
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;

    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), rhs.len(), "vector lengths differ");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;

    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), rhs.len(), "vector lengths differ");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Counts of positive, zero and negative squares in a diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Signature {
    pub fn new(positive: usize, zero: usize, negative: usize) -> Self {
        Signature { positive, zero, negative }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.zero + self.negative
    }
}

impl Add for Signature {
    type Output = Signature;

    fn add(self, rhs: Signature) -> Signature {
        Signature {
            positive: self.positive + rhs.positive,
            zero: self.zero + rhs.zero,
            negative: self.negative + rhs.negative,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.zero, self.negative)
    }
}

/// A free module of finite rank with an integral symmetric bilinear form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    even: bool,
    label: Option<String>,
}

impl Lattice {
    /// Validates a Gram matrix: nonempty, square and symmetric.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::EmptyInput);
        }
        for (row, r) in gram.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::NotSquare { row, len: r.len(), rank });
            }
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        let even = (0..rank).all(|i| gram[i][i] % 2 == 0);
        Ok(Lattice { gram, even, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        LatticeVector::unit(self.rank(), i)
    }

    pub fn check_dim(&self, x: &LatticeVector) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: x.len() });
        }
        Ok(())
    }

    /// `gram · x`, the functional `y ↦ inner(x, y)` in coordinates.
    pub fn apply_gram(&self, x: &LatticeVector) -> Result<Vec<i64>> {
        self.check_dim(x)?;
        self.gram
            .iter()
            .map(|row| {
                let s: i128 = row.iter().zip(x.coords()).map(|(&g, &c)| g as i128 * c as i128).sum();
                i64::try_from(s).map_err(|_| Error::Overflow)
            })
            .collect()
    }

    /// The bilinear form `xᵀ · gram · y`.
    pub fn inner(&self, x: &LatticeVector, y: &LatticeVector) -> Result<i64> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let mut acc: i128 = 0;
        for (i, &xi) in x.coords().iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row: i128 = self.gram[i].iter().zip(y.coords()).map(|(&g, &c)| g as i128 * c as i128).sum();
            acc = row.checked_mul(xi as i128).and_then(|t| acc.checked_add(t)).ok_or(Error::Overflow)?;
        }
        i64::try_from(acc).map_err(|_| Error::Overflow)
    }

    pub fn square(&self, x: &LatticeVector) -> Result<i64> {
        self.inner(x, x)
    }

    /// True iff `x` has square −2.
    pub fn is_root(&self, x: &LatticeVector) -> Result<bool> {
        Ok(self.square(x)? == -2)
    }

    /// Errors unless `x` is a root.
    pub fn require_root(&self, x: &LatticeVector) -> Result<()> {
        let square = self.square(x)?;
        if square != -2 {
            return Err(Error::NotARoot { square });
        }
        Ok(())
    }

    pub fn determinant(&self) -> BigInt {
        exact::determinant(&exact::to_big(&self.gram))
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs() == BigInt::from(1)
    }

    /// Inertia of the form over the rationals.
    pub fn signature(&self) -> Signature {
        let d = exact::diagonalize(&exact::to_rational(&self.gram));
        let mut sig = Signature::default();
        for x in &d.diag {
            if x.is_positive() {
                sig.positive += 1;
            } else if x.is_negative() {
                sig.negative += 1;
            } else {
                sig.zero += 1;
            }
        }
        sig
    }

    /// Integer basis of `{x : inner(x, y) = 0 for all y}`.
    pub fn radical(&self) -> Vec<LatticeVector> {
        self.radical_split().kernel
    }

    pub fn is_degenerate(&self) -> bool {
        !self.radical().is_empty()
    }

    /// Splits `ℤⁿ` into the radical and a complement using a unimodular
    /// transform. Both parts are integer bases.
    pub fn radical_split(&self) -> RadicalSplit {
        let ech = exact::row_echelon(&exact::to_big(&self.gram), true);
        let transform = ech.transform.expect("transform requested");
        let rank = ech.rank;
        let to_vec = |row: &Vec<BigInt>| {
            LatticeVector(row.iter().map(|x| exact::to_i64(x).expect("radical basis fits in i64")).collect())
        };
        // rows of the transform mapping gram rows to zero span the kernel
        let kernel = transform[rank..].iter().map(to_vec).collect();
        let complement = transform[..rank].iter().map(to_vec).collect();
        RadicalSplit { complement, kernel }
    }

    /// The nondegenerate lattice `L / rad(L)`, in the complement basis.
    pub fn modulo_radical(&self) -> Result<(Lattice, RadicalSplit)> {
        let split = self.radical_split();
        let gram = split
            .complement
            .iter()
            .map(|x| split.complement.iter().map(|y| self.inner(x, y)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if gram.is_empty() {
            return Err(Error::EmptyInput);
        }
        let label = self.label.as_ref().map(|l| format!("{l}/rad"));
        let mut q = Lattice::new(gram)?;
        q.label = label;
        Ok((q, split))
    }

    /// Orthogonal direct sum with block-diagonal Gram matrix.
    pub fn orthogonal_sum(&self, other: &Lattice) -> Lattice {
        let n = self.rank() + other.rank();
        let mut gram = vec![vec![0; n]; n];
        for (i, row) in self.gram.iter().enumerate() {
            gram[i][..self.rank()].copy_from_slice(row);
        }
        for (i, row) in other.gram.iter().enumerate() {
            gram[self.rank() + i][self.rank()..].copy_from_slice(row);
        }
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        Lattice { gram, even: self.even && other.even, label }
    }

    /// Gram matrix of a tuple of vectors.
    pub fn gram_of(&self, vectors: &[LatticeVector]) -> Result<Vec<Vec<i64>>> {
        vectors.iter().map(|x| vectors.iter().map(|y| self.inner(x, y)).collect()).collect()
    }

    /// Span report for the sublattice generated by `vectors`.
    pub fn span(&self, vectors: &[LatticeVector]) -> Result<SpanReport> {
        for v in vectors {
            self.check_dim(v)?;
        }
        let rows: IntMatrix = vectors.iter().map(|v| v.coords().iter().map(|&x| BigInt::from(x)).collect()).collect();
        if rows.is_empty() {
            return Ok(SpanReport { rank: 0, index: None, generates: false });
        }
        let ech = exact::row_echelon(&rows, false);
        let index = (ech.rank == self.rank())
            .then(|| ech.pivot_columns.iter().enumerate().map(|(r, &c)| ech.rows[r][c].clone()).product::<BigInt>());
        let generates = index.as_ref().is_some_and(|i| *i == BigInt::from(1));
        Ok(SpanReport { rank: ech.rank, index, generates })
    }
}

/// A unimodular change of basis adapted to the radical.
#[derive(Debug, Clone)]
pub struct RadicalSplit {
    pub complement: Vec<LatticeVector>,
    pub kernel: Vec<LatticeVector>,
}

/// The sublattice spanned by a set of vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanReport {
    pub rank: usize,
    /// Index in the ambient lattice, when the span has full rank.
    pub index: Option<BigInt>,
    /// Full rank and index one.
    pub generates: bool,
}
