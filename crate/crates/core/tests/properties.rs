#![allow(clippy::needless_range_loop)]

mod common;

use monolat::format::{parse_lattice_file, serialize_lattice_file, LatticeFile};
use monolat::spinor::{factor_along, integral_reflection, root_reflection};
use monolat::symplectic::{enumerate_mod_p, standard_generators};
use monolat::*;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |upper| {
        let mut g = vec![vec![0; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                g[i][j] = upper[k];
                g[j][i] = upper[k];
                k += 1;
            }
        }
        g
    })
}

fn vector(n: usize) -> impl Strategy<Value = LatticeVector> {
    prop::collection::vec(-6i64..=6, n).prop_map(LatticeVector::new)
}

/// Eigenvalue signs by cyclic Jacobi rotations.
fn jacobi_signature(g: &[Vec<i64>]) -> Signature {
    let n = g.len();
    let mut a: Vec<Vec<f64>> = g.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    for _ in 0..100 {
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-14 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut sig = Signature::default();
    for (i, row) in a.iter().enumerate() {
        match row[i] {
            x if x > 1e-8 => sig.positive += 1,
            x if x < -1e-8 => sig.negative += 1,
            _ => sig.zero += 1,
        }
    }
    sig
}

/// Random root in `E8 ⊕ U²` reached by a reflection walk from the witness
/// seeds.
fn random_root(rng: &mut impl Rng, steps: usize) -> LatticeVector {
    let w = witness_six();
    let seeds = w.seeds();
    let mut v = seeds.choose(rng).unwrap().clone();
    for _ in 0..steps {
        let g = seeds.choose(rng).unwrap();
        v = reflect(&w.ambient, g, &v).unwrap();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_is_symmetric_and_bilinear(g in symmetric(4), x in vector(4), y in vector(4), z in vector(4), a in -3i64..=3) {
        let l = Lattice::new(g).unwrap();
        prop_assert_eq!(l.inner(&x, &y).unwrap(), l.inner(&y, &x).unwrap());
        let ax_plus_z = z.add_scaled(a, &x).unwrap();
        prop_assert_eq!(
            l.inner(&ax_plus_z, &y).unwrap(),
            a * l.inner(&x, &y).unwrap() + l.inner(&z, &y).unwrap()
        );
    }

    #[test]
    fn signature_matches_eigenvalues(g in symmetric(5)) {
        let l = Lattice::new(g.clone()).unwrap();
        prop_assert_eq!(l.signature(), jacobi_signature(&g));
    }

    #[test]
    fn signature_is_congruence_invariant(g in symmetric(5), seed in any::<u64>()) {
        let l = Lattice::new(g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_unimodular(5, 12, &mut rng);
        let l2 = common::congruent(&l, &p);
        prop_assert_eq!(l.signature(), l2.signature());
        prop_assert_eq!(l.determinant(), l2.determinant());
    }

    #[test]
    fn radical_is_orthogonal_to_everything(g in symmetric(4), seed in any::<u64>()) {
        // force a radical by adding a dependent direction
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_unimodular(5, 10, &mut rng);
        let mut big = vec![vec![0; 5]; 5];
        for i in 0..4 {
            for j in 0..4 {
                big[i][j] = g[i][j];
            }
        }
        let l = common::congruent(&Lattice::new(big).unwrap(), &p);
        let rad = l.radical();
        prop_assert!(!rad.is_empty());
        for r in &rad {
            for i in 0..5 {
                prop_assert_eq!(l.inner(r, &l.basis_vector(i)).unwrap(), 0);
            }
        }
        let (q, _) = l.modulo_radical().unwrap();
        prop_assert_eq!(q.rank() + rad.len(), 5);
        prop_assert!(!q.is_degenerate());
        prop_assert_eq!(q.signature().zero, 0);
        prop_assert_eq!(l.signature().zero, rad.len());
    }

    #[test]
    fn orthogonal_sum_adds_signatures(a in symmetric(3), b in symmetric(2)) {
        let la = Lattice::new(a).unwrap();
        let lb = Lattice::new(b).unwrap();
        prop_assert_eq!(la.orthogonal_sum(&lb).signature(), la.signature() + lb.signature());
    }

    #[test]
    fn lattice_file_round_trip(g in symmetric(3), v in vector(3)) {
        let file = LatticeFile::new(Lattice::new(g).unwrap()).with_vector("f", v);
        let text = serialize_lattice_file(&file);
        let back = parse_lattice_file(&text).unwrap();
        prop_assert_eq!(back, file);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reflection_is_isometric_involution(seed in any::<u64>(), x in vector(12), y in vector(12)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = witness_six().ambient;
        let d = random_root(&mut rng, 20);
        prop_assert_eq!(l.square(&d).unwrap(), -2);
        let rx = reflect(&l, &d, &x).unwrap();
        let ry = reflect(&l, &d, &y).unwrap();
        prop_assert_eq!(l.inner(&rx, &ry).unwrap(), l.inner(&x, &y).unwrap());
        prop_assert_eq!(reflect(&l, &d, &rx).unwrap(), x.clone());
        prop_assert_eq!(reflect(&l, &d, &d).unwrap(), -&d);
    }

    #[test]
    fn orbit_closure_ignores_seed_order(seed in any::<u64>()) {
        let l = e8();
        let mut roots: Vec<_> = (0..8).map(|i| l.basis_vector(i)).collect();
        let budget = OrbitBudget { height_bound: 6, max_size: 1000 };
        let base = orbit_closure(&l, &roots, &roots, budget).unwrap();
        roots.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let shuffled = orbit_closure(&l, &roots, &roots, budget).unwrap();
        prop_assert_eq!(base.vectors, shuffled.vectors);
    }

    #[test]
    fn witness_search_ignores_input_order(seed in any::<u64>()) {
        let w = witness_six();
        let mut pool = w.seeds();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            pool.push(random_root(&mut rng, 6));
        }
        let d = diagram_paper();
        let base = find_witness(&w.ambient, &pool, &d).unwrap();
        prop_assert!(base.is_some());
        let mut shuffled = pool.clone();
        shuffled.shuffle(&mut rng);
        for v in shuffled.iter_mut().step_by(2) {
            *v = -&*v;
        }
        prop_assert_eq!(find_witness(&w.ambient, &shuffled, &d).unwrap(), base.clone());
        prop_assert!(matches_diagram(&w.ambient, &base.unwrap(), &d).unwrap());
    }

    #[test]
    fn spinor_norm_is_independent_of_basis(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // U ⊕ U ⊕ ⟨−2⟩ ⊕ ⟨2⟩
        let l = torus_block(2).unwrap().orthogonal_sum(&diagonal_lattice(&[-2, 2]).unwrap());
        let pool: Vec<LatticeVector> = vec![
            LatticeVector::new(vec![1, 0, 1, 0, 0, 0]),
            LatticeVector::new(vec![1, 0, -1, 0, 0, 0]),
            LatticeVector::new(vec![0, 1, 0, 1, 0, 0]),
            LatticeVector::new(vec![0, 0, 0, 0, 1, 0]),
            LatticeVector::new(vec![0, 0, 0, 0, 0, 1]),
            LatticeVector::new(vec![1, 1, 1, 0, 0, 0]),
            LatticeVector::new(vec![0, 1, 1, -1, 0, 0]),
            LatticeVector::new(vec![1, 0, 0, 0, 1, 0]),
        ];
        let mut m = Isometry::identity(6);
        let mut expected = SpinorNorm::Plus;
        for _ in 0..rng.gen_range(1..8) {
            let v = pool.choose(&mut rng).unwrap();
            m = m.compose(&integral_reflection(&l, v).unwrap()).unwrap();
            if l.square(v).unwrap() > 0 {
                expected = expected * SpinorNorm::Minus;
            }
        }
        prop_assert_eq!(real_spinor_norm(&l, &m).unwrap(), expected);

        let fact = cartan_dieudonne(&l, &m).unwrap();
        prop_assert_eq!(fact.compose(&l), monolat::exact::to_rational(m.matrix()));

        // an orthogonal basis from a different unimodular frame
        let p = common::random_unimodular(6, 15, &mut rng);
        let l2 = common::congruent(&l, &p);
        let d = monolat::exact::diagonalize(&monolat::exact::to_rational(l2.gram()));
        let p_rat = monolat::exact::to_rational(&p);
        let basis: Vec<Vec<BigRational>> = d
            .basis
            .iter()
            .map(|b| (0..6).map(|i| (0..6).map(|k| &p_rat[i][k] * &b[k]).sum()).collect())
            .collect();
        let other = factor_along(&l, &m, &basis).unwrap();
        prop_assert_eq!(other.positive_count() % 2, fact.positive_count() % 2);
    }

    #[test]
    fn root_reflections_have_plus_norm(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = witness_six().ambient;
        let d = random_root(&mut rng, 10);
        let r = root_reflection(&l, &d).unwrap();
        prop_assert_eq!(real_spinor_norm(&l, &r).unwrap(), SpinorNorm::Plus);
    }

    #[test]
    fn transvections_preserve_the_form(q in 1usize..=3, coords in prop::collection::vec(-5i64..=5, 6)) {
        let space = standard_symplectic(q).unwrap();
        let v = LatticeVector::new(coords[..2 * q].to_vec());
        prop_assume!(!v.is_zero());
        let t = transvection(&space, &v).unwrap();
        prop_assert!(space.preserves(&t).unwrap());
        let det = monolat::exact::determinant(&monolat::exact::to_big(&t));
        prop_assert_eq!(det, 1.into());
    }
}

#[test]
fn enumerated_symplectic_elements_have_unit_determinant() {
    for (q, p) in [(1usize, 3u64), (2, 2)] {
        let space = standard_symplectic(q).unwrap();
        let gens: Vec<_> = standard_generators(q).unwrap().iter().map(|v| transvection(&space, v).unwrap()).collect();
        let n = 2 * q;
        for flat in enumerate_mod_p(&space, &gens, p, 10_000).unwrap() {
            let m: Vec<Vec<i64>> = flat.chunks(n).map(|r| r.iter().map(|&x| x as i64).collect()).collect();
            let det = monolat::exact::determinant(&monolat::exact::to_big(&m));
            assert_eq!((det % p as i64 + p as i64) % p as i64, 1.into());
        }
    }
}
