//! Complete-vanishing-lattice certificates.
//!
//! A set of roots `Δ'` in a lattice `L'` is certified when
//! 1. `Δ'` generates `L'`,
//! 2. the `|δ·δ'| = 1` graph on `Δ'` is connected (so `Δ'` is one orbit),
//! 3. `Δ'` contains six roots whose unsigned intersection numbers form the
//!    diagram returned by [`diagram_paper`].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector, SpanReport};
use crate::monodromy::{chain_connectivity, orbit_closure, BudgetUsage, Connectivity, OrbitBudget};

/// Undirected graph with edge multiplicities `|tᵢ·tⱼ|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionDiagram {
    vertex_count: usize,
    edges: Vec<(usize, usize, u32)>,
}

impl IntersectionDiagram {
    /// Vertices are 0-based. Edges must join distinct vertices, have positive
    /// multiplicity and appear once.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, u32)>) -> Result<Self> {
        let mut pairs = BTreeSet::new();
        for &(i, j, m) in &edges {
            if i == j || i >= vertex_count || j >= vertex_count || m == 0 {
                return Err(Error::InvalidParameter(format!("bad diagram edge ({i}, {j}, {m})")));
            }
            if !pairs.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidParameter(format!("duplicate diagram edge ({i}, {j})")));
            }
        }
        Ok(IntersectionDiagram { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.edges.iter().find(|&&(a, b, _)| (a, b) == (i, j) || (a, b) == (j, i)).map_or(0, |e| e.2)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v || e.1 == v).count()
    }

    fn multiplicity_table(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count;
        let mut t = vec![vec![0i64; n]; n];
        for &(i, j, m) in &self.edges {
            t[i][j] = m as i64;
            t[j][i] = m as i64;
        }
        t
    }
}

/// The six-vertex diagram: a doubled triangle on vertices 2, 3, 5, vertex 4
/// joined simply to all three, and leaves 1 (on 2) and 6 (on 5). Written
/// here 0-based.
pub fn diagram_paper() -> IntersectionDiagram {
    let edges = vec![(0, 1, 1), (1, 2, 2), (1, 3, 1), (1, 4, 2), (2, 3, 1), (2, 4, 2), (3, 4, 1), (4, 5, 1)];
    IntersectionDiagram::new(6, edges).expect("static diagram is valid")
}

/// Ordered match: every vector is a root and `|tᵢ·tⱼ|` equals the edge
/// multiplicity of `(i, j)` for all `i < j`.
pub fn matches_diagram(lattice: &Lattice, tuple: &[LatticeVector], diagram: &IntersectionDiagram) -> Result<bool> {
    if tuple.len() != diagram.vertex_count() {
        return Ok(false);
    }
    for t in tuple {
        if !lattice.is_root(t)? {
            return Ok(false);
        }
    }
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if lattice.inner(&tuple[i], &tuple[j])?.unsigned_abs() != diagram.multiplicity(i, j) as u64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Backtracking search for an ordered tuple of distinct roots (up to sign)
/// matching `diagram`. Candidates are sign-normalized and sorted first, so
/// the first match in lexicographic order is returned regardless of the
/// input order.
pub fn find_witness(
    lattice: &Lattice,
    delta_set: &[LatticeVector],
    diagram: &IntersectionDiagram,
) -> Result<Option<Vec<LatticeVector>>> {
    let reps: Vec<LatticeVector> =
        delta_set.iter().map(LatticeVector::canonical_sign).collect::<BTreeSet<_>>().into_iter().collect();
    for r in &reps {
        lattice.require_root(r)?;
    }
    let n = diagram.vertex_count();
    if reps.len() < n {
        return Ok(None);
    }
    let images: Vec<Vec<i64>> = reps.iter().map(|r| lattice.apply_gram(r)).collect::<Result<_>>()?;
    let table = diagram.multiplicity_table();

    let pairing = |a: usize, b: usize| -> i64 {
        images[a]
            .iter()
            .zip(reps[b].coords())
            .map(|(&x, &y)| x as i128 * y as i128)
            .sum::<i128>()
            .unsigned_abs()
            .min(i64::MAX as u128) as i64
    };

    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    // candidate lists per depth, narrowed incrementally
    let mut stack: Vec<(Vec<usize>, usize)> = vec![((0..reps.len()).collect(), 0)];
    while let Some((cands, pos)) = stack.last_mut() {
        if *pos >= cands.len() {
            stack.pop();
            chosen.pop();
            continue;
        }
        let c = cands[*pos];
        *pos += 1;
        chosen.push(c);
        if chosen.len() == n {
            return Ok(Some(chosen.iter().map(|&i| reps[i].clone()).collect()));
        }
        // next level: only candidates consistent with everything chosen so far
        let next: Vec<usize> = (0..reps.len())
            .filter(|&x| !chosen.contains(&x))
            .filter(|&x| chosen.iter().enumerate().all(|(m, &y)| pairing(y, x) == table[m][chosen.len()]))
            .collect();
        stack.push((next, 0));
    }
    Ok(None)
}

/// Outcome of the three vanishing-lattice checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingCertificate {
    /// `Δ'` spans the ambient lattice with index one.
    pub generates: bool,
    /// Rank and index of the spanned sublattice `L'`.
    pub span: SpanReport,
    pub single_orbit: Connectivity,
    pub witness: Option<Vec<LatticeVector>>,
    /// Number of roots in `Δ'`, counting both signs.
    pub orbit_size: usize,
    /// False when the orbit closure stopped at `max_size`; all three checks
    /// then refer to the truncated set.
    pub exhausted: bool,
    pub budget: BudgetUsage,
}

impl VanishingCertificate {
    pub fn all_checks_pass(&self) -> bool {
        self.generates && self.single_orbit.is_connected() && self.witness.is_some()
    }
}

/// Computes `Δ' = Γ_Δ · Δ` within the budget and runs the three checks.
pub fn certify_cvl(
    lattice: &Lattice,
    delta_seeds: &[LatticeVector],
    budget: OrbitBudget,
) -> Result<VanishingCertificate> {
    let orbit = orbit_closure(lattice, delta_seeds, delta_seeds, budget)?;
    let reps = orbit.representatives();
    let span = lattice.span(&reps)?;
    let single_orbit = chain_connectivity(lattice, &reps)?;
    let diagram = diagram_paper();
    let witness = find_witness(lattice, &reps, &diagram)?;
    if let Some(w) = &witness {
        assert!(matches_diagram(lattice, w, &diagram)?, "witness search returned a non-matching tuple");
    }
    Ok(VanishingCertificate {
        generates: span.generates,
        span,
        single_orbit,
        witness,
        orbit_size: orbit.vectors.len(),
        exhausted: orbit.exhausted,
        budget: orbit.budget,
    })
}
