//! Concrete lattices and distinguished vectors.

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector, Signature};

/// Diagonal Gram matrix with the given entries.
///
/// `diagonal_lattice(&[-2, 0, 0, 0])` is the intersection lattice of the
/// genus-one annulus piece, `(-2) ⊕ (0)^{2g+1}` with `g = 1`.
pub fn diagonal_lattice(entries: &[i64]) -> Result<Lattice> {
    if entries.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = entries.len();
    let gram = (0..n).map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect()).collect();
    Lattice::new(gram)
}

/// Index of the E8 node adjacent to the short arm.
const E8_BRANCH: usize = 4;

/// Negative definite E8 in the basis of simple roots.
///
/// Nodes `n1..n7` (indices 0..7) form a chain and `n8` (index 7) is attached
/// to `n5` (index 4). Simple roots have square −2, adjacent ones pair to +1.
pub fn e8() -> Lattice {
    let mut gram = vec![vec![0i64; 8]; 8];
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = -2;
    }
    let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, i + 1)).collect();
    edges.push((E8_BRANCH, 7));
    for (i, j) in edges {
        gram[i][j] = 1;
        gram[j][i] = 1;
    }
    Lattice::new(gram).expect("E8 gram is symmetric").with_label("E8")
}

/// The unimodular even lattice `U^q` in the basis `a_1..a_q, b_1..b_q` with
/// `a_i·b_i = 1` and all other pairings zero.
pub fn torus_block(q: usize) -> Result<Lattice> {
    if q == 0 {
        return Err(Error::NonPositiveQ);
    }
    let n = 2 * q;
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..q {
        gram[i][q + i] = 1;
        gram[q + i][i] = 1;
    }
    Ok(Lattice::new(gram)?.with_label(format!("U^{q}")))
}

/// The torus classes `t̃₁⁺, t̃₁⁻, t̃₂⁺, t̃₂⁻` inside `torus_block(2)`.
///
/// `t̃₁⁺ = a₁`, `t̃₂⁻ = b₁`, `t̃₁⁻ = −a₂`, `t̃₂⁺ = b₂`, so the only nonzero
/// pairings are `t̃₁⁺·t̃₂⁻ = 1` and `t̃₁⁻·t̃₂⁺ = −1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusClasses {
    pub t1_plus: LatticeVector,
    pub t1_minus: LatticeVector,
    pub t2_plus: LatticeVector,
    pub t2_minus: LatticeVector,
}

pub fn torus_classes() -> TorusClasses {
    let e = |i: usize| LatticeVector::unit(4, i);
    TorusClasses { t1_plus: e(0), t2_minus: e(2), t1_minus: -e(1), t2_plus: e(3) }
}

/// The annulus lattice `(-2) ⊕ (0)^{2g+1}` with the two sphere classes
/// `s₊ = (1, 0, …)` and `s₋ = (−1, 1, 0, …)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnulusPair {
    pub lattice: Lattice,
    pub s_plus: LatticeVector,
    pub s_minus: LatticeVector,
}

pub fn annulus_pair(g: usize) -> AnnulusPair {
    let rank = 2 * g + 2;
    let mut entries = vec![0i64; rank];
    entries[0] = -2;
    let lattice = diagonal_lattice(&entries).expect("rank is positive").with_label(format!("annulus(g={g})"));
    let s_plus = LatticeVector::unit(rank, 0);
    let mut s_minus = vec![0; rank];
    s_minus[0] = -1;
    s_minus[1] = 1;
    AnnulusPair { lattice, s_plus, s_minus: LatticeVector::new(s_minus) }
}

/// Seifert matrix of `t^k`: unipotent upper bidiagonal of size `k − 1`
/// with −1 on the superdiagonal.
fn seifert_one_variable(k: usize) -> Vec<Vec<i64>> {
    let m = k - 1;
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| match j {
                    _ if j == i => 1,
                    _ if j == i + 1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

fn kronecker(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![0i64; ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            if a[i][j] == 0 {
                continue;
            }
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Milnor lattice of the surface singularity `z² + y³ + x^{6χ}` (type
/// `J_{2χ}`), of rank `12χ − 2`.
///
/// The Seifert form is the tensor product of the one-variable Seifert
/// matrices of `t²`, `t³` and `t^{6χ}`; the intersection form is
/// `−(V + Vᵀ)`, which puts −2 on the diagonal.
pub fn milnor_j(chi: usize) -> Result<Lattice> {
    if chi == 0 {
        return Err(Error::NonPositiveChi);
    }
    let seifert = [2, 3, 6 * chi]
        .iter()
        .map(|&k| seifert_one_variable(k))
        .reduce(|acc, m| kronecker(&acc, &m))
        .expect("three factors");
    let n = seifert.len();
    let gram = (0..n).map(|i| (0..n).map(|j| -(seifert[i][j] + seifert[j][i])).collect()).collect();
    Ok(Lattice::new(gram)?.with_label(format!("J_{}", 2 * chi)))
}

/// Signature of the Brieskorn–Pham lattice `x^a + y^b + z^c` by counting
/// spectral triples: `s = i/a + j/b + k/c mod 2` lies in `(0,1)` for a
/// positive square, in `(1,2)` for a negative one, and is integral for the
/// radical.
pub fn bp_signature(a: i64, b: i64, c: i64) -> Result<Signature> {
    for e in [a, b, c] {
        if e < 2 {
            return Err(Error::BadExponent(e));
        }
    }
    let denom = a * b * c;
    let mut sig = Signature::default();
    for i in 1..a {
        for j in 1..b {
            for k in 1..c {
                let num = (i * b * c + j * a * c + k * a * b).rem_euclid(2 * denom);
                if num % denom == 0 {
                    sig.zero += 1;
                } else if num < denom {
                    sig.positive += 1;
                } else {
                    sig.negative += 1;
                }
            }
        }
    }
    Ok(sig)
}

/// The E8 simple roots `α₁, β, α₂, α₃` chosen for the six-element witness:
/// nodes `n1, n2, n4, n6`, pairwise orthogonal except `α₁·β = 1`.
pub const WITNESS_E8_NODES: [usize; 4] = [0, 1, 3, 5];

/// Six roots in `E8 ⊕ U²` realizing the vanishing-lattice diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTuple {
    pub ambient: Lattice,
    pub vectors: [LatticeVector; 6],
}

impl WitnessTuple {
    /// The E8 simple roots embedded in the ambient lattice.
    pub fn e8_simple_roots(&self) -> Vec<LatticeVector> {
        (0..8).map(|i| self.ambient.basis_vector(i)).collect()
    }

    /// E8 simple roots followed by the six witness vectors.
    pub fn seeds(&self) -> Vec<LatticeVector> {
        let mut s = self.e8_simple_roots();
        s.extend(self.vectors.iter().cloned());
        s
    }
}

/// The tuple `(α₂+t̃₁⁺, α₁+t̃₂⁻, α₁, β, α₁+t̃₁⁻, α₃−t̃₂⁺)` in `e8() ⊕ torus_block(2)`.
pub fn witness_six() -> WitnessTuple {
    let ambient = e8().orthogonal_sum(&torus_block(2).expect("q = 2")).with_label("E8+U^2");
    let root = |node: usize| LatticeVector::unit(8, node).concat(&LatticeVector::zero(4));
    let torus = |t: &LatticeVector| LatticeVector::zero(8).concat(t);
    let [a1, beta, a2, a3] = WITNESS_E8_NODES.map(root);
    let t = torus_classes();
    let vectors = [
        &a2 + &torus(&t.t1_plus),
        &a1 + &torus(&t.t2_minus),
        a1.clone(),
        beta,
        &a1 + &torus(&t.t1_minus),
        &a3 - &torus(&t.t2_plus),
    ];
    WitnessTuple { ambient, vectors }
}
