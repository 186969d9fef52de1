//! Picard–Lefschetz reflections and budgeted orbit closure.

use std::collections::BTreeSet;

use rustc_hash::FxHashSet;

use crate::error::Result;
use crate::lattice::{Lattice, LatticeVector};

/// The reflection `x ↦ x + (x·δ)δ` in a root `δ`.
pub fn reflect(lattice: &Lattice, delta: &LatticeVector, x: &LatticeVector) -> Result<LatticeVector> {
    lattice.require_root(delta)?;
    let c = lattice.inner(x, delta)?;
    x.add_scaled(c, delta)
}

/// Matrix of the reflection in a root, acting on coordinate columns.
pub fn root_reflection_matrix(lattice: &Lattice, delta: &LatticeVector) -> Result<Vec<Vec<i64>>> {
    lattice.require_root(delta)?;
    let g_delta = lattice.apply_gram(delta)?;
    let n = lattice.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = i64::from(i == j);
                    delta[i].checked_mul(g_delta[j]).and_then(|t| t.checked_add(e)).ok_or(crate::Error::Overflow)
                })
                .collect()
        })
        .collect()
}

/// Search region for [`orbit_closure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitBudget {
    /// Vectors with a coordinate of larger absolute value are discarded.
    pub height_bound: u64,
    /// Maximum number of vectors (counting both signs) in the result.
    pub max_size: usize,
}

impl Default for OrbitBudget {
    fn default() -> Self {
        OrbitBudget { height_bound: 1, max_size: 20_000 }
    }
}

/// How much of the budget a closure consumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetUsage {
    pub height_bound: u64,
    pub max_size: usize,
    /// Roots whose reflections were fully applied.
    pub processed: usize,
    /// Reflection images dropped for exceeding the height bound.
    pub discarded_by_height: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitResult {
    /// The orbit, closed under negation.
    pub vectors: BTreeSet<LatticeVector>,
    /// True iff the frontier emptied before `max_size` was reached.
    pub exhausted: bool,
    pub budget: BudgetUsage,
}

impl OrbitResult {
    /// One representative per `±` pair, in sorted order.
    pub fn representatives(&self) -> Vec<LatticeVector> {
        self.vectors.iter().filter(|v| v.canonical_sign() == **v).cloned().collect()
    }
}

struct Known {
    vector: LatticeVector,
    gram_image: Vec<i64>,
}

struct Closure<'a> {
    lattice: &'a Lattice,
    height_bound: u64,
    max_size: usize,
    known: Vec<Known>,
    seen: FxHashSet<LatticeVector>,
    scratch: Vec<i64>,
    discarded_by_height: usize,
}

impl Closure<'_> {
    fn push(&mut self, v: LatticeVector) -> Result<bool> {
        let gram_image = self.lattice.apply_gram(&v)?;
        self.seen.insert(v.clone());
        self.known.push(Known { vector: v, gram_image });
        Ok(2 * self.known.len() > self.max_size)
    }

    fn insert_seed(&mut self, s: &LatticeVector) -> Result<bool> {
        let v = s.canonical_sign();
        if self.seen.contains(&v) {
            return Ok(2 * self.known.len() > self.max_size);
        }
        self.push(v)
    }

    /// Inserts the candidate in `scratch` if it is new and within the height
    /// bound. Returns whether the size budget is now used up.
    fn consider_scratch(&mut self) -> Result<bool> {
        if self.scratch.iter().any(|v| v.unsigned_abs() > self.height_bound) {
            self.discarded_by_height += 1;
            return Ok(false);
        }
        if self.scratch.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
            self.scratch.iter_mut().for_each(|v| *v = -*v);
        }
        if self.seen.contains(self.scratch.as_slice()) {
            return Ok(false);
        }
        self.push(LatticeVector::new(self.scratch.clone()))
    }
}

/// `out = x + c·y`
fn combine_into(out: &mut [i64], x: &[i64], c: i64, y: &[i64]) -> Result<()> {
    for ((o, &a), &b) in out.iter_mut().zip(x).zip(y) {
        *o = c.checked_mul(b).and_then(|cb| a.checked_add(cb)).ok_or(crate::Error::Overflow)?;
    }
    Ok(())
}

fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    let s: i128 = a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
    i64::try_from(s).map_err(|_| crate::Error::Overflow)
}

/// Breadth-first closure of `seeds` under reflections in `generators` and in
/// every root discovered so far, within the height bound.
pub fn orbit_closure(
    lattice: &Lattice,
    generators: &[LatticeVector],
    seeds: &[LatticeVector],
    budget: OrbitBudget,
) -> Result<OrbitResult> {
    for v in generators.iter().chain(seeds) {
        lattice.require_root(v)?;
    }
    let gens: Vec<Known> = generators
        .iter()
        .map(|g| Ok(Known { vector: g.clone(), gram_image: lattice.apply_gram(g)? }))
        .collect::<Result<_>>()?;

    let mut state = Closure {
        lattice,
        height_bound: budget.height_bound,
        max_size: budget.max_size,
        known: Vec::new(),
        seen: FxHashSet::default(),
        scratch: vec![0; lattice.rank()],
        discarded_by_height: 0,
    };
    let mut full = false;
    for s in seeds {
        full |= state.insert_seed(s)?;
    }

    let mut p = 0;
    while p < state.known.len() && !full {
        for g in &gens {
            let b = state.known[p].vector.coords();
            let c = dot(&g.gram_image, b)?;
            if c != 0 {
                combine_into(&mut state.scratch, b, c, g.vector.coords())?;
                full |= state.consider_scratch()?;
            }
        }
        let mut j = 0;
        while j < p && !full {
            let (a, b) = (state.known[j].vector.coords(), state.known[p].vector.coords());
            let c = dot(&state.known[p].gram_image, a)?;
            if c != 0 {
                combine_into(&mut state.scratch, b, c, a)?;
                full |= state.consider_scratch()?;
                let (a, b) = (state.known[j].vector.coords(), state.known[p].vector.coords());
                combine_into(&mut state.scratch, a, c, b)?;
                full |= state.consider_scratch()?;
            }
            j += 1;
        }
        if !full {
            p += 1;
        }
    }
    let mut usage = BudgetUsage {
        height_bound: budget.height_bound,
        max_size: budget.max_size,
        processed: 0,
        discarded_by_height: state.discarded_by_height,
    };
    let known = state.known;
    usage.processed = p;
    let exhausted = !full && p == known.len();

    let mut vectors = BTreeSet::new();
    for k in known {
        vectors.insert(-&k.vector);
        vectors.insert(k.vector);
    }
    Ok(OrbitResult { vectors, exhausted, budget: usage })
}

/// Outcome of the pairwise-conjugacy test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Connected,
    /// The `|δ·δ'| = 1` graph has this many components; says nothing about
    /// whether the set is a single orbit.
    Inconclusive {
        components: usize,
    },
}

impl Connectivity {
    pub fn is_connected(&self) -> bool {
        matches!(self, Connectivity::Connected)
    }
}

/// Sufficient test for a set of roots to lie in one orbit of the group
/// generated by their reflections: roots with `δ·δ' = ±1` are conjugate
/// because `γ_δ ∘ γ_δ'(δ) = δ'` up to sign.
pub fn chain_connectivity(lattice: &Lattice, delta_set: &[LatticeVector]) -> Result<Connectivity> {
    let reps: Vec<LatticeVector> =
        delta_set.iter().map(LatticeVector::canonical_sign).collect::<BTreeSet<_>>().into_iter().collect();
    for r in &reps {
        lattice.require_root(r)?;
    }
    let images: Vec<Vec<i64>> = reps.iter().map(|r| lattice.apply_gram(r)).collect::<Result<_>>()?;

    let mut parent: Vec<usize> = (0..reps.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = reps.len();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if dot(&images[i], reps[j].coords())?.abs() == 1 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                    components -= 1;
                }
            }
        }
    }
    Ok(if components == 1 { Connectivity::Connected } else { Connectivity::Inconclusive { components } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::e8;
    use crate::Error;

    fn a2() -> Lattice {
        Lattice::new(vec![vec![-2, 1], vec![1, -2]]).unwrap()
    }

    #[test]
    fn reflect_basic_cases() {
        let l = a2();
        let d = l.basis_vector(0);
        let d2 = l.basis_vector(1);
        assert_eq!(reflect(&l, &d, &d).unwrap(), -&d);
        let diag = Lattice::new(vec![vec![-2, 0], vec![0, -2]]).unwrap();
        let x = diag.basis_vector(1);
        assert_eq!(reflect(&diag, &diag.basis_vector(0), &x).unwrap(), x);
        // δ·δ' = 1
        assert_eq!(l.inner(&d, &d2).unwrap(), 1);
        let moved = reflect(&l, &d, &reflect(&l, &d2, &d).unwrap()).unwrap();
        assert_eq!(moved, d2);
    }

    #[test]
    fn reflect_rejects_non_roots() {
        let u = Lattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let v = LatticeVector::new(vec![1, 1]);
        assert_eq!(reflect(&u, &v, &v), Err(Error::NotARoot { square: 2 }));
    }

    #[test]
    fn reflection_matrix_agrees_with_reflect() {
        let e = e8();
        let d = LatticeVector::new(vec![1, 1, 0, 0, 0, 0, 0, 0]);
        let m = root_reflection_matrix(&e, &d).unwrap();
        for i in 0..8 {
            let x = e.basis_vector(i);
            let col: Vec<i64> = (0..8).map(|r| m[r][i]).collect();
            assert_eq!(LatticeVector::new(col), reflect(&e, &d, &x).unwrap());
        }
    }

    #[test]
    fn rank_one_orbit() {
        let l = Lattice::new(vec![vec![-2]]).unwrap();
        let seed = [LatticeVector::new(vec![1])];
        let r = orbit_closure(&l, &seed, &seed, OrbitBudget::default()).unwrap();
        assert!(r.exhausted);
        assert_eq!(r.vectors.len(), 2);
    }

    #[test]
    fn a2_orbit_has_six_roots() {
        let l = a2();
        let seeds = [l.basis_vector(0), l.basis_vector(1)];
        let r = orbit_closure(&l, &seeds, &seeds, OrbitBudget { height_bound: 2, max_size: 100 }).unwrap();
        assert!(r.exhausted);
        assert_eq!(r.vectors.len(), 6);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let e = e8();
        let seeds: Vec<_> = (0..8).map(|i| e.basis_vector(i)).collect();
        let r = orbit_closure(&e, &seeds, &seeds, OrbitBudget { height_bound: 8, max_size: 50 }).unwrap();
        assert!(!r.exhausted);
    }

    #[test]
    fn connectivity_cases() {
        let e = e8();
        let simple: Vec<_> = (0..8).map(|i| e.basis_vector(i)).collect();
        assert_eq!(chain_connectivity(&e, &simple).unwrap(), Connectivity::Connected);
        let diag = Lattice::new(vec![vec![-2, 0], vec![0, -2]]).unwrap();
        assert_eq!(
            chain_connectivity(&diag, &[diag.basis_vector(0), diag.basis_vector(1)]).unwrap(),
            Connectivity::Inconclusive { components: 2 }
        );
    }
}
