//! Nef-partitions of reflexive polytopes and the Cayley polytope that turns a
//! complete intersection into a single hypersurface datum.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::arith::{dot, neg_vec, Int, IntVec, Rat};
use crate::error::{Error, Result};
use crate::fan::{
    build_fan, enumerate_effective, find_lifting, verify_coherence, wall_relation, wall_relations, Fan,
    MoriData, SimplicialFan, Triangulation,
};
use crate::jk::JkEngine;
use crate::lattice::{homogenize, LatticePolytope};
use crate::mirror::{MirrorMap, SeriesEntry, SeriesTable};
use crate::mp::{mp_evaluate, PartFactor};
use crate::poly::Polynomial;

/// Cayley polytope of a nef-partition together with both fans.
///
/// Generators `0..n` of the Cayley fan are `(v̄_i, e_{j(i)}, 1)` and
/// generators `n..n+r` are `(0, e_j, 1)`, where `e_1..e_{r-1}` are unit
/// vectors of `Z^{r-1}` and `e_r = 0`.
#[derive(Clone, Debug)]
pub struct CayleyData {
    base_points: Vec<IntVec>,
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
    base_fan: SimplicialFan,
    base_ample: Vec<Int>,
    base_walls: Vec<IntVec>,
    polytope: LatticePolytope,
    fan: Fan,
    ample: Vec<Int>,
}

impl CayleyData {
    /// Number of nonzero lattice points of the reflexive polytope.
    pub fn n(&self) -> usize {
        self.base_points.len()
    }

    /// Number of parts.
    pub fn r(&self) -> usize {
        self.parts.len()
    }

    /// Dimension of the reflexive polytope.
    pub fn base_dim(&self) -> usize {
        self.base_fan.rank()
    }

    pub fn base_points(&self) -> &[IntVec] {
        &self.base_points
    }

    /// Parts as index sets into `0..n`.
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_of(&self, i: usize) -> usize {
        self.part_of[i]
    }

    /// The complete fan over the faces of the reflexive polytope.
    pub fn base_fan(&self) -> &SimplicialFan {
        &self.base_fan
    }

    pub fn base_ample(&self) -> &[Int] {
        &self.base_ample
    }

    pub fn base_walls(&self) -> &[IntVec] {
        &self.base_walls
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn ample(&self) -> &[Int] {
        &self.ample
    }

    /// `v_0 = -Σ_j v_{n+j}`.
    pub fn default_v0(&self) -> IntVec {
        let mut s = vec![Int::zero(); self.fan.rank()];
        for g in &self.fan.generators()[self.n()..] {
            for (x, y) in s.iter_mut().zip(g) {
                *x += y;
            }
        }
        neg_vec(&s)
    }

    /// `β̄ ↦ (β̄, -Σ_{E_1} β̄, ..., -Σ_{E_r} β̄)`.
    pub fn lift(&self, beta_bar: &[Int]) -> IntVec {
        let mut b = beta_bar.to_vec();
        for part in &self.parts {
            b.push(-part.iter().map(|&i| &beta_bar[i]).sum::<Int>());
        }
        b
    }

    pub fn project(&self, beta: &[Int]) -> IntVec {
        beta[..self.n()].to_vec()
    }

    /// Degree `Σ_{i∈E_j} β̄_i` of each part.
    pub fn part_degrees(&self, beta_bar: &[Int]) -> Vec<Int> {
        self.parts
            .iter()
            .map(|p| p.iter().map(|&i| &beta_bar[i]).sum())
            .collect()
    }

    /// Mirror map on the completed Cayley fan.
    pub fn mirror(&self, v0: Option<&[Int]>) -> Result<MirrorMap> {
        let v0 = v0.map(|v| v.to_vec()).unwrap_or_else(|| self.default_v0());
        MirrorMap::new(&self.fan, Some(&v0), &self.ample)
    }

    pub fn mori(&self) -> Result<MoriData> {
        wall_relations(&self.fan, &self.ample)
    }

    /// Effective classes of the reflexive fan up to `bound`, ordered by (degree, lex).
    pub fn effective_classes(&self, bound: u32) -> Result<Vec<IntVec>> {
        let mori = self.mori()?;
        Ok(enumerate_effective(&self.fan, &mori, bound)?
            .into_iter()
            .map(|b| self.project(&b))
            .collect())
    }

    /// `⟨P(χ̄_{·,0}) Φ_β̄⟩` on the Morrison-Plesser fan of the reflexive fan,
    /// for `P` of degree `dim` in `x̄_1..x̄_n`.
    pub fn ci_series_coefficient(&self, p: &Polynomial, beta_bar: &[Int]) -> Result<Rat> {
        if p.nvars() != self.n() || beta_bar.len() != self.n() {
            return Err(Error::Dimension(format!("expected {} variables", self.n())));
        }
        if let Some(deg) = p.homogeneous_degree() {
            if deg as usize != self.base_dim() {
                return Err(Error::Precondition(format!(
                    "polynomial has degree {deg}, expected {}",
                    self.base_dim()
                )));
            }
        }
        let mut factors = Vec::with_capacity(self.r());
        for (part, k) in self.parts.iter().zip(self.part_degrees(beta_bar)) {
            if k.is_negative() {
                return Err(Error::Precondition(format!(
                    "class {beta_bar:?} has negative degree {k} on part {part:?}"
                )));
            }
            factors.push(PartFactor {
                part: part.clone(),
                exponent: u32::try_from(k).map_err(|_| Error::Limit("part degree too large".into()))?,
            });
        }
        mp_evaluate(&self.base_fan, p, beta_bar, &factors)
    }

    /// Series coefficients at every effective class of the reflexive fan up to `bound`.
    pub fn ci_series(&self, p: &Polynomial, bound: u32) -> Result<SeriesTable> {
        let entries = self
            .effective_classes(bound)?
            .into_iter()
            .map(|beta| {
                Ok(SeriesEntry {
                    degree: dot(&self.base_ample, &beta),
                    coefficient: self.ci_series_coefficient(p, &beta)?,
                    beta,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesTable {
            entries,
            bound,
            ample: self.base_ample.clone(),
            v0: self.default_v0(),
        })
    }

    /// `x_{n+1} ⋯ x_{n+r} · P` in the variables of the Cayley fan.
    pub fn cayley_polynomial(&self, p: &Polynomial) -> Polynomial {
        let total = self.n() + self.r();
        let lifted = p.remap(total, &(0..self.n()).collect::<Vec<_>>());
        let mut e = vec![0u32; total];
        for x in e.iter_mut().skip(self.n()) {
            *x = 1;
        }
        &lifted * &Polynomial::monomial(total, e, Rat::one())
    }

    /// The Morrison-Plesser value and the residue mirror map value at `β̄`.
    pub fn ci_crosscheck(&self, mirror: &MirrorMap, p: &Polynomial, beta_bar: &[Int]) -> Result<(Rat, Rat)> {
        let mp = self.ci_series_coefficient(p, beta_bar)?;
        let big = self.cayley_polynomial(p);
        let beta = self.lift(beta_bar);
        let mut rm = Rat::zero();
        for (e, c) in big.terms() {
            rm += c * mirror.rm_coefficient(e, &beta)?;
        }
        Ok((mp, rm))
    }

    /// `⟨x^m⟩` on the reflexive fan against `⟨x^m x_{n+j}^k / x_0⟩` on the completed
    /// Cayley fan, with the extra factor replaced by `(-Σ_{E_j} x_i)^k` on the left.
    /// With `k = 0` this is the pushforward identity.
    pub fn substitution_sides(
        &self,
        base_jk: &JkEngine,
        mirror: &MirrorMap,
        m: &[i64],
        part: usize,
        k: u32,
    ) -> Result<(Rat, Rat)> {
        let n = self.n();
        let mut big = vec![0i64; 1 + n + self.r()];
        big[0] = -1;
        big[1..=n].copy_from_slice(m);
        big[1 + n + part] = k as i64;
        let right = mirror.jk().jk_residue(&big)?;
        let mut sum = Polynomial::zero(n);
        for &i in &self.parts[part] {
            sum.add_term(unit(n, i), -Rat::one());
        }
        let expansion = sum.pow(k);
        let mut left = Rat::zero();
        for (e, c) in expansion.terms() {
            let shifted: Vec<i64> = m.iter().zip(e).map(|(a, b)| a + *b as i64).collect();
            left += c * base_jk.jk_residue(&shifted)?;
        }
        Ok((left, right))
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Builds the Cayley data of a nef-partition. `parts` index into the points
/// of `t`, which must be a star triangulation of the reflexive `polytope`.
pub fn build_cayley(polytope: &LatticePolytope, t: &Triangulation, parts: &[Vec<usize>]) -> Result<CayleyData> {
    if !polytope.is_reflexive() {
        return Err(Error::validation("not-reflexive", "the polytope is not reflexive"));
    }
    t.validate(polytope)?;
    let d = polytope.dim();
    let origin_index = t
        .points()
        .iter()
        .position(|p| p.iter().all(|x| x.is_zero()))
        .ok_or_else(|| Error::validation("not-star", "the origin is not a lattice point"))?;
    if let Some(s) = t.simplices().iter().find(|s| !s.contains(&origin_index)) {
        return Err(Error::validation("not-star", format!("simplex {s:?} does not contain the origin")));
    }
    if parts.is_empty() {
        return Err(Error::validation("empty-part", "no parts given"));
    }
    // Base order: points of t without the origin.
    let relabel = |i: usize| if i < origin_index { i } else { i - 1 };
    let base_points: Vec<IntVec> = t
        .points()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != origin_index)
        .map(|(_, p)| p.clone())
        .collect();
    let n = base_points.len();
    let mut part_of = vec![usize::MAX; n];
    let mut new_parts = Vec::with_capacity(parts.len());
    for (j, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::validation("empty-part", format!("part {} is empty", j + 1)));
        }
        let mut np = Vec::with_capacity(part.len());
        for &i in part {
            if i >= t.points().len() || i == origin_index {
                return Err(Error::validation(
                    "partition-index",
                    format!("part {} refers to {i}, which is not a nonzero lattice point", j + 1),
                ));
            }
            let k = relabel(i);
            if part_of[k] != usize::MAX {
                return Err(Error::validation("partition-cover", format!("point {i} lies in two parts")));
            }
            part_of[k] = j;
            np.push(k);
        }
        np.sort_unstable();
        new_parts.push(np);
    }
    if let Some(k) = part_of.iter().position(|&j| j == usize::MAX) {
        return Err(Error::validation(
            "partition-cover",
            format!("point {:?} lies in no part", base_points[k]),
        ));
    }
    let lifting = match t.lifting() {
        Some(h) if verify_coherence(t, h) => h.to_vec(),
        Some(_) => return Err(Error::validation("not-coherent", "the lifting does not certify coherence")),
        None => find_lifting(t).ok_or_else(|| Error::validation("not-coherent", "no lifting certifies coherence"))?,
    };
    let base_ample: Vec<Int> = (0..t.points().len())
        .filter(|&i| i != origin_index)
        .map(|i| &lifting[i] - &lifting[origin_index])
        .collect();
    let base_cones: Vec<Vec<usize>> = t
        .simplices()
        .iter()
        .map(|s| s.iter().filter(|&&i| i != origin_index).map(|&i| relabel(i)).collect())
        .collect();
    let base_fan = SimplicialFan::new(base_points.clone(), base_cones)?;
    base_fan.check_complete()?;
    let mut walls = BTreeSet::new();
    for (ridge, cones) in base_fan.ridges() {
        let apex = |k: usize| *base_fan.max_cones()[k].iter().find(|i| !ridge.contains(i)).expect("apex");
        let w = wall_relation(&base_points, &ridge, apex(cones[0]), apex(cones[1]))?;
        if !dot(&base_ample, &w).is_positive() {
            return Err(Error::Invariant(format!("lifting is not strictly convex across {ridge:?}")));
        }
        for (j, part) in new_parts.iter().enumerate() {
            let s: Int = part.iter().map(|&i| &w[i]).sum();
            if s.is_negative() {
                return Err(Error::validation(
                    "not-nef",
                    format!("part {} is not convex across the wall {ridge:?}", j + 1),
                ));
            }
        }
        walls.insert(w);
    }
    let r = new_parts.len();
    let cayley_point = |p: &IntVec, j: usize| {
        let mut v = p.clone();
        v.extend((0..r - 1).map(|k| if k == j { Int::one() } else { Int::zero() }));
        v
    };
    let mut points: Vec<IntVec> = (0..n).map(|i| cayley_point(&base_points[i], part_of[i])).collect();
    let zero = vec![Int::zero(); d];
    points.extend((0..r).map(|j| cayley_point(&zero, j)));
    let simplices: Vec<Vec<usize>> = t
        .simplices()
        .iter()
        .map(|s| {
            let mut c: Vec<usize> = s.iter().filter(|&&i| i != origin_index).map(|&i| relabel(i)).collect();
            c.extend(n..n + r);
            c
        })
        .collect();
    let cayley_polytope = LatticePolytope::new(&points)?;
    let mut ample = base_ample.clone();
    ample.extend(std::iter::repeat_n(Int::zero(), r));
    let tri = Triangulation::new(points, simplices, None);
    let tri = if verify_coherence(&tri, &ample) {
        tri.with_lifting(ample.clone())
    } else {
        match find_lifting(&tri) {
            Some(h) => tri.with_lifting(h),
            None => return Err(Error::Invariant("the Cayley triangulation is not coherent".into())),
        }
    };
    let fan = build_fan(&cayley_polytope, &tri)?;
    Ok(CayleyData {
        base_points,
        parts: new_parts,
        part_of,
        base_fan,
        base_ample,
        base_walls: walls.into_iter().collect(),
        polytope: cayley_polytope,
        fan,
        ample,
    })
}

/// Homogenized generator of a reflexive polytope point, for callers that want the hypersurface setup.
pub fn hypersurface_generator(p: &[Int]) -> IntVec {
    homogenize(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ivec, rat};

    fn square() -> (LatticePolytope, Triangulation) {
        let pts = vec![ivec(&[-1, 0]), ivec(&[0, -1]), ivec(&[0, 0]), ivec(&[0, 1]), ivec(&[1, 0])];
        let poly = LatticePolytope::new(&pts).unwrap();
        let t = Triangulation::new(pts, vec![vec![0, 1, 2], vec![1, 2, 4], vec![2, 3, 4], vec![0, 2, 3]], None);
        (poly, t)
    }

    fn p2() -> (LatticePolytope, Triangulation) {
        let pts = vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1]), ivec(&[0, 0])];
        let poly = LatticePolytope::new(&pts[..3]).unwrap();
        let t = Triangulation::new(pts, vec![vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]], Some(ivec(&[1, 1, 1, 0])));
        (poly, t)
    }

    #[test]
    fn square_cayley_shape() {
        let (poly, t) = square();
        let c = build_cayley(&poly, &t, &[vec![0, 4], vec![1, 3]]).unwrap();
        assert_eq!(c.polytope().dim(), 3);
        assert_eq!(c.fan().rank(), 4);
        assert_eq!(c.fan().len(), 6);
        assert_eq!(c.fan().max_cones().len(), 4);
        for k in 0..4 {
            let base = c.base_fan().max_cone_volume(&c.base_fan().max_cones()[k]).unwrap().clone();
            assert_eq!(c.fan().cone_volume(k), base);
        }
    }

    #[test]
    fn hypersurface_case_reproduces_the_fan() {
        let (poly, t) = p2();
        let c = build_cayley(&poly, &t, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(c.fan().generators(), &[ivec(&[1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[-1, -1, 1]), ivec(&[0, 0, 1])]);
        assert_eq!(c.default_v0(), ivec(&[0, 0, -1]));
        assert_eq!(c.lift(&ivec(&[1, 1, 1])), ivec(&[1, 1, 1, -3]));
    }

    #[test]
    fn partition_errors_are_named() {
        let (poly, t) = square();
        let err = build_cayley(&poly, &t, &[vec![0, 1, 3, 4], vec![]]).unwrap_err();
        assert_eq!(err.check_name(), Some("empty-part"));
        let err = build_cayley(&poly, &t, &[vec![0, 4], vec![1]]).unwrap_err();
        assert_eq!(err.check_name(), Some("partition-cover"));
        assert!(build_cayley(&poly, &t, &[vec![0, 1], vec![3, 4]]).is_ok());
        let pts = vec![ivec(&[-1, -1]), ivec(&[0, 0]), ivec(&[0, 1]), ivec(&[1, 0]), ivec(&[1, 1])];
        let kite = LatticePolytope::new(&pts).unwrap();
        let star = Triangulation::new(pts, vec![vec![1, 3, 4], vec![1, 4, 2], vec![1, 2, 0], vec![1, 0, 3]], None);
        let err = build_cayley(&kite, &star, &[vec![4], vec![0, 2, 3]]).unwrap_err();
        assert_eq!(err.check_name(), Some("not-nef"));
        assert!(build_cayley(&kite, &star, &[vec![0, 2, 3, 4]]).is_ok());
        let thin = LatticePolytope::new(&[ivec(&[0, 0]), ivec(&[2, 0]), ivec(&[0, 1])]).unwrap();
        let err = build_cayley(&thin, &t, &[vec![0]]).unwrap_err();
        assert_eq!(err.check_name(), Some("not-reflexive"));
    }

    #[test]
    fn square_series_at_zero() {
        let (poly, t) = square();
        let c = build_cayley(&poly, &t, &[vec![0, 4], vec![1, 3]]).unwrap();
        let p = Polynomial::monomial(4, vec![1, 0, 1, 0], rat(1, 1));
        assert_eq!(c.ci_series_coefficient(&p, &ivec(&[0, 0, 0, 0])).unwrap(), rat(1, 1));
    }

    #[test]
    fn wall_relations_correspond() {
        let (poly, t) = square();
        let c = build_cayley(&poly, &t, &[vec![0, 4], vec![1, 3]]).unwrap();
        let lifted: BTreeSet<IntVec> = c.base_walls().iter().map(|w| c.lift(w)).collect();
        let cayley: BTreeSet<IntVec> = c.mori().unwrap().walls().iter().cloned().collect();
        assert_eq!(lifted, cayley);
    }

    #[test]
    fn closed_form_series() {
        let (poly, t) = p2();
        let c = build_cayley(&poly, &t, &[vec![0, 1, 2]]).unwrap();
        let p = Polynomial::monomial(3, vec![1, 1, 0], rat(1, 1));
        let table = c.ci_series(&p, 6).unwrap();
        let coeffs: Vec<Rat> = table.entries.iter().map(|e| e.coefficient.clone()).collect();
        assert_eq!(coeffs, vec![rat(1, 1), rat(-27, 1), rat(729, 1)]);
        assert_eq!(table.entries[2].degree, int(6));
    }
}
