//! Toric residues by linear algebra in the graded pieces of the semigroup
//! ring, at explicit values of the coefficients `a`.
//!
//! This is an independent oracle for the series side: it never touches JK
//! residues, and the Hessian is expanded as a determinant rather than
//! through cone volumes.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::arith::{rank_rat, rat_int, solve, transpose, Int, IntVec, Rat};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::enumerate_box;
use crate::poly::Polynomial;

/// A polynomial in `t`, keyed by exponent in `M`.
pub type TPoly = BTreeMap<IntVec, Rat>;

fn add_into(target: &mut TPoly, e: IntVec, c: Rat) {
    if c.is_zero() {
        return;
    }
    let slot = target.entry(e.clone()).or_insert_with(Rat::zero);
    *slot += c;
    if slot.is_zero() {
        target.remove(&e);
    }
}

fn tmul(a: &TPoly, b: &TPoly) -> TPoly {
    let mut out = TPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_into(&mut out, e, ca * cb);
        }
    }
    out
}

/// Interior lattice points of the cone over the polytope at the given height.
pub fn interior_points(fan: &Fan, height: u32) -> Vec<IntVec> {
    let d = fan.polytope_dim();
    let h = Int::from(height);
    let scaled: Vec<IntVec> = fan
        .generators()
        .iter()
        .map(|g| g[..d].iter().map(|x| x * &h).collect())
        .collect();
    enumerate_box(&scaled, |_| true)
        .into_iter()
        .map(|mut p| {
            p.push(h.clone());
            p
        })
        .filter(|p| fan.support().is_interior(p))
        .collect()
}

/// `P(a_1 t^{v_1}, ..., a_n t^{v_n})` at explicit `a`.
pub fn specialize(fan: &Fan, p: &Polynomial, a: &[Rat]) -> TPoly {
    let gens = fan.generators();
    let mut out = TPoly::new();
    for (e, c) in p.terms() {
        let mut coef = c.clone();
        let mut t = vec![Int::zero(); fan.rank()];
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            coef *= num_traits::pow(a[i].clone(), k as usize);
            for (x, v) in t.iter_mut().zip(&gens[i]) {
                *x += v * Int::from(k);
            }
        }
        add_into(&mut out, t, coef);
    }
    out
}

/// The logarithmic derivatives `f_i = Σ_k (v_k)_i a_k t^{v_k}`.
fn log_derivatives(fan: &Fan, a: &[Rat]) -> Vec<TPoly> {
    (0..fan.rank())
        .map(|i| {
            let mut f = TPoly::new();
            for (g, ak) in fan.generators().iter().zip(a) {
                add_into(&mut f, g.clone(), rat_int(&g[i]) * ak);
            }
            f
        })
        .collect()
}

/// `det(∂_i ∂_j f)` in logarithmic coordinates, by the Leibniz formula.
pub fn hessian_determinant(fan: &Fan, a: &[Rat]) -> TPoly {
    let k = fan.rank();
    let entry = |i: usize, j: usize| {
        let mut m = TPoly::new();
        for (g, ak) in fan.generators().iter().zip(a) {
            add_into(&mut m, g.clone(), rat_int(&(&g[i] * &g[j])) * ak);
        }
        m
    };
    let entries: Vec<Vec<TPoly>> = (0..k).map(|i| (0..k).map(|j| entry(i, j)).collect()).collect();
    let mut det = TPoly::new();
    for perm in (0..k).permutations(k) {
        let inversions = (0..k).tuple_combinations().filter(|&(x, y)| perm[x] > perm[y]).count();
        let mut term = TPoly::new();
        term.insert(vec![Int::zero(); k], Rat::one());
        for (i, &j) in perm.iter().enumerate() {
            term = tmul(&term, &entries[i][j]);
        }
        let sign = if inversions % 2 == 0 { Rat::one() } else { -Rat::one() };
        for (e, c) in term {
            add_into(&mut det, e, c * &sign);
        }
    }
    det
}

/// The toric residue of `g` (an element of the top-degree piece of the
/// interior ideal, at explicit `a`), normalized so that the Hessian maps to
/// the normalized volume.
pub fn artinian_residue(fan: &Fan, a: &[Rat], g: &TPoly) -> Result<Rat> {
    if a.len() != fan.len() {
        return Err(Error::Dimension(format!("{} values of a for {} generators", a.len(), fan.len())));
    }
    let d = fan.polytope_dim() as u32;
    let top = interior_points(fan, d + 1);
    let below = interior_points(fan, d);
    let index: BTreeMap<&IntVec, usize> = top.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let to_vector = |p: &TPoly| -> Result<Vec<Rat>> {
        let mut v = vec![Rat::zero(); top.len()];
        for (e, c) in p {
            let i = index.get(e).ok_or_else(|| {
                Error::Precondition(format!("exponent {e:?} is not an interior point of degree {}", d + 1))
            })?;
            v[*i] = c.clone();
        }
        Ok(v)
    };
    let mut span: Vec<Vec<Rat>> = Vec::new();
    for f in log_derivatives(fan, a) {
        for q in &below {
            let shifted: TPoly = f
                .iter()
                .map(|(e, c)| (e.iter().zip(q).map(|(x, y)| x + y).collect(), c.clone()))
                .collect();
            span.push(to_vector(&shifted)?);
        }
    }
    let span_rank = rank_rat(&span);
    if span_rank + 1 != top.len() {
        return Err(Error::Precondition(format!(
            "quotient has dimension {} instead of 1; choose different values of a",
            top.len() - span_rank
        )));
    }
    let h = to_vector(&hessian_determinant(fan, a))?;
    let mut with_h = span.clone();
    with_h.push(h.clone());
    if rank_rat(&with_h) == span_rank {
        return Err(Error::Precondition(
            "the Hessian vanishes in the quotient; choose different values of a".into(),
        ));
    }
    let target = to_vector(g)?;
    let columns = transpose(&with_h);
    let x = solve(&columns, &target)
        .ok_or_else(|| Error::Invariant("quotient is not spanned by the Hessian".into()))?;
    let lambda = x.last().cloned().unwrap_or_else(Rat::zero);
    Ok(lambda * rat_int(&fan.volume()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ivec, rat};
    use crate::fan::{build_fan, Triangulation};
    use crate::lattice::LatticePolytope;
    use crate::mirror::{hessian, GammaWeights};

    fn p1() -> Fan {
        let poly = LatticePolytope::new(&[ivec(&[-1]), ivec(&[1])]).unwrap();
        let t = Triangulation::new(
            vec![ivec(&[-1]), ivec(&[1]), ivec(&[0])],
            vec![vec![0, 2], vec![2, 1]],
            None,
        );
        build_fan(&poly, &t).unwrap()
    }

    fn p2() -> Fan {
        let pts = vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1]), ivec(&[0, 0])];
        let poly = LatticePolytope::new(&pts[..3]).unwrap();
        let t = Triangulation::new(pts, vec![vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]], None);
        build_fan(&poly, &t).unwrap()
    }

    #[test]
    fn segment_residue_closed_form() {
        let fan = p1();
        let a = vec![rat(1, 10), rat(1, 10), rat(1, 1)];
        let g = specialize(&fan, &Polynomial::monomial(3, vec![1, 0, 1], rat(1, 1)), &a);
        assert_eq!(artinian_residue(&fan, &a, &g).unwrap(), rat(25, 24));
        // a_1 a_3 t^{v_1 + v_3} has residue a_3^2 / (a_3^2 - 4 a_1 a_2)
        let a = vec![rat(2, 7), rat(1, 3), rat(5, 1)];
        let g = specialize(&fan, &Polynomial::monomial(3, vec![1, 0, 1], rat(1, 1)), &a);
        let closed = &a[2] * &a[2] / (&a[2] * &a[2] - rat(4, 1) * &a[0] * &a[1]);
        assert_eq!(artinian_residue(&fan, &a, &g).unwrap(), closed);
    }

    #[test]
    fn hessian_expansions_agree() {
        for fan in [p1(), p2()] {
            let a: Vec<Rat> = (0..fan.len()).map(|i| rat(2 * i as i64 + 3, 7)).collect();
            let h = hessian(&fan, &GammaWeights::ones(&fan)).unwrap().to_polynomial();
            let expanded = specialize(&fan, &h, &a);
            assert_eq!(expanded, hessian_determinant(&fan, &a));
            assert_eq!(artinian_residue(&fan, &a, &expanded).unwrap(), rat_int(&fan.volume()));
        }
    }

    #[test]
    fn triangle_residue_closed_form() {
        let fan = p2();
        let a = vec![rat(1, 10), rat(1, 10), rat(1, 10), rat(1, 1)];
        let g = specialize(&fan, &Polynomial::monomial(4, vec![1, 1, 0, 1], rat(1, 1)), &a);
        assert_eq!(artinian_residue(&fan, &a, &g).unwrap(), rat(1000, 1027));
    }

    #[test]
    fn degenerate_specialization_is_rejected() {
        let fan = p1();
        // a_3^2 = 4 a_1 a_2: the discriminant vanishes.
        let a = vec![rat(1, 1), rat(1, 1), rat(2, 1)];
        let g = specialize(&fan, &Polynomial::monomial(3, vec![1, 0, 1], rat(1, 1)), &a);
        assert!(artinian_residue(&fan, &a, &g).is_err());
    }
}
