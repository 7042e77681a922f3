use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_mirror::arith::rat;
use toric_mirror::fixtures::{projective_plane, segment, square, thin_triangle};
use toric_mirror::jk::JkEngine;
use toric_mirror::{Int, Polynomial, Rat};

fn monomials(n: usize, deg: usize) -> Vec<Vec<u32>> {
    (0..n)
        .combinations_with_replacement(deg)
        .map(|c| {
            let mut m = vec![0u32; n];
            for i in c {
                m[i] += 1;
            }
            m
        })
        .collect()
}

#[test]
fn complete_intersection_series_matches_cayley_residues() {
    for ex in [segment(), projective_plane(), square()] {
        let c = ex.cayley().unwrap().unwrap();
        let mirror = c.mirror(None).unwrap();
        let classes = c.effective_classes(4).unwrap();
        assert!(!classes.is_empty());
        for beta in &classes {
            for m in monomials(c.n(), c.base_dim()) {
                let p = Polynomial::monomial(c.n(), m.clone(), Rat::one());
                let (mp, rm) = c.ci_crosscheck(&mirror, &p, beta).unwrap();
                assert_eq!(mp, rm, "{}: β = {beta:?}, m = {m:?}", ex.name);
            }
        }
    }
}

#[test]
fn square_series_table() {
    let c = square().cayley().unwrap().unwrap();
    // x̄_1 x̄_2 pairs one point from each part.
    let p = Polynomial::monomial(4, vec![1, 1, 0, 0], Rat::one());
    let table = c.ci_series(&p, 4).unwrap();
    assert_eq!(table.coefficient(&[Int::zero(), Int::zero(), Int::zero(), Int::zero()]), Some(&Rat::one()));
    for e in &table.entries {
        let mirror = c.mirror(None).unwrap();
        let (mp, rm) = c.ci_crosscheck(&mirror, &p, &e.beta).unwrap();
        assert_eq!(mp, e.coefficient);
        assert_eq!(rm, e.coefficient);
    }
}

#[test]
fn pushforward_and_substitution() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for ex in [projective_plane(), square()] {
        let c = ex.cayley().unwrap().unwrap();
        let mirror = c.mirror(None).unwrap();
        let base_jk = JkEngine::new(c.base_fan()).unwrap();
        let n = c.n();
        let target = -(base_jk.dim() as i64);
        let mut nonzero = 0;
        for trial in 0..60 {
            let k = (trial % 3) as u32;
            let part = trial % c.r();
            let mut m: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=1)).collect();
            let mut sum: i64 = m.iter().sum::<i64>() + k as i64;
            while sum != target {
                let i = rng.gen_range(0..n);
                let step = if sum > target { -1 } else { 1 };
                m[i] += step;
                sum += step;
            }
            let (left, right) = c.substitution_sides(&base_jk, &mirror, &m, part, k).unwrap();
            assert_eq!(left, right, "{}: m = {m:?}, part {part}, k = {k}", ex.name);
            if !left.is_zero() {
                nonzero += 1;
            }
        }
        assert!(nonzero > 0, "{}: only trivial instances", ex.name);
    }
}

#[test]
fn series_is_linear() {
    for ex in [segment(), projective_plane(), thin_triangle()] {
        let mirror = ex.mirror(None).unwrap();
        let fan = mirror.base();
        let interior: Vec<Vec<u32>> = monomials(fan.len(), fan.rank())
            .into_iter()
            .filter(|m| fan.support().is_interior(&mirror.project(m)))
            .collect();
        let p = Polynomial::monomial(fan.len(), interior[0].clone(), rat(3, 2));
        let q = Polynomial::monomial(fan.len(), interior[interior.len() - 1].clone(), rat(-5, 7));
        let sum = &p + &q;
        let (tp, tq, ts) = (
            mirror.rm_series(&p, 6).unwrap(),
            mirror.rm_series(&q, 6).unwrap(),
            mirror.rm_series(&sum, 6).unwrap(),
        );
        for ((a, b), s) in tp.entries.iter().zip(&tq.entries).zip(&ts.entries) {
            assert_eq!(&a.coefficient + &b.coefficient, s.coefficient, "{}", ex.name);
        }
    }
}

#[test]
fn non_interior_monomials_are_rejected() {
    let mirror = segment().mirror(None).unwrap();
    // x_1^2 maps to (-2, 2), on the boundary of the cone.
    assert!(mirror
        .rm_series(&Polynomial::monomial(3, vec![2, 0, 0], Rat::one()), 2)
        .is_err());
}
