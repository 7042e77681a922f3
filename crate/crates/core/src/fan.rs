//! Fans over coherent triangulations, their completions, relation lattices
//! and Mori cones.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{
    ceil_rat, content, dot, floor_rat, neg_vec, primitive, rank_int, rat_int,
    solve, to_rat_matrix, transpose, Int, IntVec, Rat,
};
use crate::error::{Error, Result};
use crate::lattice::{cone_volume, homogenize, integer_kernel_basis, IntMatrix, LatticePolytope, PointedCone};
use crate::lp::{feasible_point, maximize, LpOutcome};

/// A triangulation of a lattice polytope using every lattice point as a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    points: Vec<IntVec>,
    simplices: Vec<Vec<usize>>,
    lifting: Option<Vec<Int>>,
}

impl Triangulation {
    /// Simplices are index sets into `points`; each is stored sorted.
    pub fn new(points: Vec<IntVec>, simplices: Vec<Vec<usize>>, lifting: Option<Vec<Int>>) -> Self {
        let simplices = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        Triangulation {
            points,
            simplices,
            lifting,
        }
    }

    pub fn points(&self) -> &[IntVec] {
        &self.points
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn lifting(&self) -> Option<&[Int]> {
        self.lifting.as_deref()
    }

    pub fn with_lifting(mut self, lifting: Vec<Int>) -> Self {
        self.lifting = Some(lifting);
        self
    }

    /// Structural validation against `polytope`: point set, simplex shapes,
    /// proper intersections and coverage.
    pub fn validate(&self, polytope: &LatticePolytope) -> Result<()> {
        let d = polytope.dim();
        let expected: BTreeSet<&IntVec> = polytope.lattice_points().iter().collect();
        let given: BTreeSet<&IntVec> = self.points.iter().collect();
        if given.len() != self.points.len() {
            return Err(Error::validation("points-mismatch", "duplicate point in the point list"));
        }
        if given != expected {
            let missing: Vec<_> = expected.difference(&given).collect();
            let extra: Vec<_> = given.difference(&expected).collect();
            return Err(Error::validation(
                "points-mismatch",
                format!("point list differs from the lattice points: missing {missing:?}, extra {extra:?}"),
            ));
        }
        let n = self.points.len();
        for (k, s) in self.simplices.iter().enumerate() {
            if let Some(&i) = s.iter().find(|&&i| i >= n) {
                return Err(Error::validation(
                    "index-out-of-range",
                    format!("simplex {k} refers to point {i}, but there are {n} points"),
                ));
            }
            if s.len() != d + 1 || s.iter().tuple_windows().any(|(a, b)| a == b) {
                return Err(Error::validation(
                    "simplex-size",
                    format!("simplex {k} = {s:?} does not have {} distinct vertices", d + 1),
                ));
            }
            let rows: Vec<IntVec> = s.iter().map(|&i| homogenize(&self.points[i])).collect();
            if rank_int(&rows) != d + 1 {
                return Err(Error::validation(
                    "simplex-degenerate",
                    format!("simplex {k} = {s:?} is not full-dimensional"),
                ));
            }
        }
        let used: BTreeSet<usize> = self.simplices.iter().flatten().copied().collect();
        if let Some(i) = (0..n).find(|i| !used.contains(i)) {
            return Err(Error::validation(
                "point-unused",
                format!("lattice point {i} = {:?} is not a vertex of any simplex", self.points[i]),
            ));
        }
        for (a, b) in (0..self.simplices.len()).tuple_combinations() {
            if !self.intersect_properly(a, b) {
                return Err(Error::validation(
                    "triangulation-overlap",
                    format!(
                        "simplices {a} = {:?} and {b} = {:?} overlap",
                        self.simplices[a], self.simplices[b]
                    ),
                ));
            }
        }
        let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for s in &self.simplices {
            for r in s.iter().copied().combinations(d) {
                *ridges.entry(r).or_default() += 1;
            }
        }
        for (r, count) in ridges {
            let on_boundary = polytope
                .facets()
                .iter()
                .any(|f| r.iter().all(|&i| f.value(&self.points[i]).is_zero()));
            let ok = if on_boundary { count == 1 } else { count == 2 };
            if !ok {
                return Err(Error::validation(
                    "triangulation-gap",
                    format!("ridge {r:?} lies in {count} simplices"),
                ));
            }
        }
        Ok(())
    }

    /// The hulls of simplices `a` and `b` meet in the hull of their common vertices.
    fn intersect_properly(&self, a: usize, b: usize) -> bool {
        let sa = &self.simplices[a];
        let sb = &self.simplices[b];
        let d = self.points[0].len();
        // Variables: barycentric weights on sa then on sb.
        let nv = sa.len() + sb.len();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for k in 0..d {
            let mut row = vec![Rat::zero(); nv];
            for (j, &i) in sa.iter().enumerate() {
                row[j] = rat_int(&self.points[i][k]);
            }
            for (j, &i) in sb.iter().enumerate() {
                row[sa.len() + j] = -rat_int(&self.points[i][k]);
            }
            rows.push(row);
            rhs.push(Rat::zero());
        }
        let mut wa = vec![Rat::zero(); nv];
        let mut wb = vec![Rat::zero(); nv];
        for x in wa.iter_mut().take(sa.len()) {
            *x = Rat::one();
        }
        for x in wb.iter_mut().skip(sa.len()).take(sb.len()) {
            *x = Rat::one();
        }
        rows.push(wa);
        rhs.push(Rat::one());
        rows.push(wb);
        rhs.push(Rat::one());
        let mut objective = vec![Rat::zero(); nv];
        for (j, i) in sa.iter().enumerate() {
            if !sb.contains(i) {
                objective[j] = Rat::one();
            }
        }
        for (j, i) in sb.iter().enumerate() {
            if !sa.contains(i) {
                objective[sa.len() + j] = Rat::one();
            }
        }
        match maximize(&rows, &rhs, &objective) {
            LpOutcome::Infeasible => true,
            LpOutcome::Optimal { value, .. } => value.is_zero(),
            LpOutcome::Unbounded => false,
        }
    }
}

/// Affine function on the simplex `s` interpolating `h`, as a functional on homogenized points.
fn interpolant(points: &[IntVec], s: &[usize], h: &[Rat]) -> Vec<Rat> {
    let a: Vec<Vec<Rat>> = s.iter().map(|&i| homogenize(&points[i]).iter().map(rat_int).collect()).collect();
    let b: Vec<Rat> = s.iter().map(|&i| h[i].clone()).collect();
    solve(&a, &b).expect("full-dimensional simplex")
}

/// True iff `h` certifies that `t` is coherent: on every simplex, the affine
/// interpolant of `h` lies strictly below `h` at every other point.
pub fn verify_coherence(t: &Triangulation, h: &[Int]) -> bool {
    if h.len() != t.points.len() {
        return false;
    }
    let hr: Vec<Rat> = h.iter().map(rat_int).collect();
    t.simplices.iter().all(|s| {
        let ell = interpolant(&t.points, s, &hr);
        (0..t.points.len()).filter(|i| !s.contains(i)).all(|p| {
            let hp: Vec<Rat> = homogenize(&t.points[p]).iter().map(rat_int).collect();
            let value: Rat = ell.iter().zip(&hp).map(|(x, y)| x * y).sum();
            value < hr[p]
        })
    })
}

/// An integral lifting certifying coherence, or `None` if `t` is not coherent.
pub fn find_lifting(t: &Triangulation) -> Option<Vec<Int>> {
    let n = t.points.len();
    // Variables h_0..h_{n-1} >= 0 and one slack per (simplex, outside point).
    let mut constraints: Vec<Vec<Rat>> = Vec::new();
    for s in &t.simplices {
        let basis: Vec<Vec<Rat>> = transpose(&to_rat_matrix(
            &s.iter().map(|&i| homogenize(&t.points[i])).collect::<Vec<_>>(),
        ));
        for p in (0..n).filter(|p| !s.contains(p)) {
            let target: Vec<Rat> = homogenize(&t.points[p]).iter().map(rat_int).collect();
            let lambda = solve(&basis, &target)?;
            let mut row = vec![Rat::zero(); n];
            row[p] = Rat::one();
            for (l, &i) in lambda.iter().zip(s) {
                row[i] -= l;
            }
            constraints.push(row);
        }
    }
    let m = constraints.len();
    let nv = n + m;
    let rows: Vec<Vec<Rat>> = constraints
        .into_iter()
        .enumerate()
        .map(|(k, mut row)| {
            row.resize(nv, Rat::zero());
            row[n + k] = -Rat::one();
            row
        })
        .collect();
    let rhs = vec![Rat::one(); m];
    let mut objective = vec![Rat::zero(); nv];
    for x in objective.iter_mut().take(n) {
        *x = -Rat::one();
    }
    let x = match maximize(&rows, &rhs, &objective) {
        LpOutcome::Optimal { x, .. } => x,
        _ => return None,
    };
    let h: Vec<Rat> = x[..n].to_vec();
    let lifting = if h.iter().all(|v| v.is_zero()) {
        vec![Int::zero(); n]
    } else {
        let l = crate::arith::lcm_denominators(&h);
        h.iter().map(|v| (v * rat_int(&l)).to_integer()).collect()
    };
    verify_coherence(t, &lifting).then_some(lifting)
}

/// A simplicial fan given by generators and maximal cones (index sets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialFan {
    rank: usize,
    generators: Vec<IntVec>,
    max_cones: Vec<Vec<usize>>,
    volumes: BTreeMap<Vec<usize>, Int>,
}

impl SimplicialFan {
    /// Checks that every maximal cone is simplicial of full rank.
    pub fn new(generators: Vec<IntVec>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        let rank = generators
            .first()
            .map(|g| g.len())
            .ok_or_else(|| Error::Precondition("fan without generators".into()))?;
        if generators.iter().any(|g| g.len() != rank) {
            return Err(Error::Dimension("generators of unequal length".into()));
        }
        let mut volumes = BTreeMap::new();
        let mut cones = Vec::with_capacity(max_cones.len());
        for mut c in max_cones {
            c.sort_unstable();
            if c.len() != rank || c.iter().any(|&i| i >= generators.len()) {
                return Err(Error::Invariant(format!("cone {c:?} is not a simplicial cone of rank {rank}")));
            }
            let vol = cone_volume(&c.iter().map(|&i| generators[i].clone()).collect::<Vec<_>>())?;
            if vol.is_zero() {
                return Err(Error::Invariant(format!("cone {c:?} is degenerate")));
            }
            if volumes.insert(c.clone(), vol).is_some() {
                return Err(Error::Invariant(format!("cone {c:?} listed twice")));
            }
            cones.push(c);
        }
        Ok(SimplicialFan {
            rank,
            generators,
            max_cones: cones,
            volumes,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[IntVec] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Volume of the maximal cone with exactly these (sorted) generators.
    pub fn max_cone_volume(&self, cone: &[usize]) -> Option<&Int> {
        self.volumes.get(cone)
    }

    /// True iff the indices span a face of some maximal cone.
    pub fn is_cone(&self, indices: &[usize]) -> bool {
        self.max_cones.iter().any(|c| indices.iter().all(|i| c.contains(i)))
    }

    pub fn total_volume(&self) -> Int {
        self.volumes.values().sum()
    }

    /// Ridges with the maximal cones containing them.
    pub fn ridges(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (k, c) in self.max_cones.iter().enumerate() {
            for r in c.iter().copied().combinations(self.rank - 1) {
                ridges.entry(r).or_default().push(k);
            }
        }
        ridges
    }

    /// Completeness: every ridge is shared by two cones lying on opposite
    /// sides of it, and a generic vector lies in exactly one cone.
    pub fn check_complete(&self) -> Result<()> {
        for (r, cones) in self.ridges() {
            if cones.len() != 2 {
                return Err(Error::Invariant(format!(
                    "ridge {r:?} lies in {} maximal cones",
                    cones.len()
                )));
            }
            if self.rank == 1 {
                continue;
            }
            let rows: Vec<IntVec> = r.iter().map(|&i| self.generators[i].clone()).collect();
            let normal = integer_kernel_basis(&IntMatrix::from_rows(self.rank, rows)?).row(0).clone();
            let side = |k: usize| {
                let apex = self.max_cones[k].iter().find(|i| !r.contains(i)).expect("apex");
                dot(&normal, &self.generators[*apex]).signum()
            };
            if side(cones[0]) * side(cones[1]) != -Int::one() {
                return Err(Error::Invariant(format!("cones around ridge {r:?} fold over")));
            }
        }
        let hits = self.generic_coverage()?;
        if hits != 1 {
            return Err(Error::Invariant(format!("a generic vector lies in {hits} maximal cones")));
        }
        Ok(())
    }

    fn generic_coverage(&self) -> Result<usize> {
        for t in [1009i64, 7919, 104_729, 1_299_709] {
            let w: Vec<Rat> = (0..self.rank)
                .map(|k| {
                    let base = Rat::from_integer(Int::from(t));
                    let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
                    sign * num_traits::pow(base, k) + Rat::new(Int::one(), Int::from(k as i64 + 2))
                })
                .collect();
            let mut hits = 0;
            let mut on_wall = false;
            for c in &self.max_cones {
                let a = transpose(&to_rat_matrix(&c.iter().map(|&i| self.generators[i].clone()).collect::<Vec<_>>()));
                let coords = solve(&a, &w).expect("full-rank cone");
                if coords.iter().any(|x| x.is_zero()) {
                    on_wall = true;
                    break;
                }
                if coords.iter().all(|x| x.is_positive()) {
                    hits += 1;
                }
            }
            if !on_wall {
                return Ok(hits);
            }
        }
        Err(Error::Limit("no generic test vector avoided the walls".into()))
    }
}

/// The fan over a coherent triangulation: cones over its simplices at height one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    triangulation: Triangulation,
    support: PointedCone,
    simplicial: SimplicialFan,
    boundary_faces: Vec<Vec<usize>>,
}

impl Fan {
    /// Rank of `M`, one more than the polytope dimension.
    pub fn rank(&self) -> usize {
        self.dim + 1
    }

    pub fn polytope_dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVec] {
        self.simplicial.generators()
    }

    pub fn len(&self) -> usize {
        self.simplicial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplicial.is_empty()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        self.simplicial.max_cones()
    }

    pub fn boundary_faces(&self) -> &[Vec<usize>] {
        &self.boundary_faces
    }

    pub fn support(&self) -> &PointedCone {
        &self.support
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn simplicial(&self) -> &SimplicialFan {
        &self.simplicial
    }

    pub fn cone_volume(&self, k: usize) -> Int {
        self.simplicial
            .max_cone_volume(&self.max_cones()[k])
            .cloned()
            .expect("maximal cone")
    }

    /// Sum of the maximal cone volumes, i.e. the normalized volume of the polytope.
    pub fn volume(&self) -> Int {
        self.simplicial.total_volume()
    }

    /// Interior walls: ridges shared by two maximal cones, with the two apexes.
    pub fn interior_walls(&self) -> Vec<(Vec<usize>, usize, usize)> {
        self.simplicial
            .ridges()
            .into_iter()
            .filter(|(_, cones)| cones.len() == 2)
            .map(|(r, cones)| {
                let apex = |k: usize| *self.max_cones()[k].iter().find(|i| !r.contains(i)).expect("apex");
                let (a, b) = (apex(cones[0]), apex(cones[1]));
                (r, a.min(b), a.max(b))
            })
            .collect()
    }
}

pub fn build_fan(polytope: &LatticePolytope, t: &Triangulation) -> Result<Fan> {
    t.validate(polytope)?;
    let generators: Vec<IntVec> = t.points().iter().map(|p| homogenize(p)).collect();
    let simplicial = SimplicialFan::new(generators.clone(), t.simplices().to_vec())?;
    let support = PointedCone::new(&generators)?;
    let boundary_faces: Vec<Vec<usize>> = simplicial
        .ridges()
        .into_iter()
        .filter(|(r, _)| support.on_common_facet(&r.iter().map(|&i| &generators[i]).collect::<Vec<_>>()))
        .map(|(r, _)| r)
        .collect();
    Ok(Fan {
        dim: polytope.dim(),
        triangulation: t.clone(),
        support,
        simplicial,
        boundary_faces,
    })
}

/// `Σ` completed by the ray through `v0`; generator 0 is `v0`, generator
/// `i >= 1` is generator `i - 1` of the base fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletedFan {
    base: Fan,
    v0: IntVec,
    fan: SimplicialFan,
    extra_cones: Vec<Vec<usize>>,
}

impl CompletedFan {
    pub fn base(&self) -> &Fan {
        &self.base
    }

    pub fn v0(&self) -> &IntVec {
        &self.v0
    }

    pub fn fan(&self) -> &SimplicialFan {
        &self.fan
    }

    pub fn extra_cones(&self) -> &[Vec<usize>] {
        &self.extra_cones
    }

    /// Number of generators including `v0`.
    pub fn len(&self) -> usize {
        self.fan.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fan.is_empty()
    }
}

/// The completion vector used when none is given: minus the height vector
/// when the origin is interior to the polytope, else minus the primitive
/// direction of the sum of all generators.
pub fn default_v0(base: &Fan) -> IntVec {
    let mut height = vec![Int::zero(); base.rank()];
    height[base.polytope_dim()] = Int::one();
    if base.support().is_interior(&height) {
        return neg_vec(&height);
    }
    let mut sum = vec![Int::zero(); base.rank()];
    for g in base.generators() {
        for (s, x) in sum.iter_mut().zip(g) {
            *s += x;
        }
    }
    neg_vec(&primitive(&sum))
}

pub fn complete(base: &Fan, v0: Option<&[Int]>) -> Result<CompletedFan> {
    let v0: IntVec = match v0 {
        Some(v) => v.to_vec(),
        None => default_v0(base),
    };
    if v0.len() != base.rank() {
        return Err(Error::Dimension(format!("v0 has length {}, expected {}", v0.len(), base.rank())));
    }
    if !content(&v0).is_one() {
        return Err(Error::Precondition(format!("v0 = {v0:?} is not primitive")));
    }
    if !base.support().is_interior(&neg_vec(&v0)) {
        return Err(Error::Precondition(format!(
            "-v0 = {:?} is not in the interior of the support cone",
            neg_vec(&v0)
        )));
    }
    let mut generators = vec![v0.clone()];
    generators.extend(base.generators().iter().cloned());
    let shift = |c: &Vec<usize>| c.iter().map(|i| i + 1).collect::<Vec<_>>();
    let extra_cones: Vec<Vec<usize>> = base
        .boundary_faces()
        .iter()
        .map(|f| {
            let mut c = vec![0];
            c.extend(shift(f));
            c
        })
        .collect();
    let mut cones: Vec<Vec<usize>> = base.max_cones().iter().map(shift).collect();
    cones.extend(extra_cones.iter().cloned());
    let fan = SimplicialFan::new(generators, cones)?;
    fan.check_complete()?;
    Ok(CompletedFan {
        base: base.clone(),
        v0,
        fan,
        extra_cones,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeMap {
    /// Relations among `v_1..v_n`.
    Base,
    /// Relations among `v_0..v_n`.
    Completed,
}

/// The lattice of integer relations among a list of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationLattice {
    basis: IntMatrix,
    map: LatticeMap,
}

impl RelationLattice {
    pub fn new(generators: &[IntVec], map: LatticeMap) -> Result<Self> {
        let rank = generators.first().map_or(0, |g| g.len());
        let a = IntMatrix::from_columns(rank, generators)?;
        Ok(RelationLattice {
            basis: integer_kernel_basis(&a),
            map,
        })
    }

    pub fn of_fan(fan: &Fan) -> Result<Self> {
        Self::new(fan.generators(), LatticeMap::Base)
    }

    pub fn of_completed(fan: &CompletedFan) -> Result<Self> {
        Self::new(fan.fan().generators(), LatticeMap::Completed)
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn map(&self) -> LatticeMap {
        self.map
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    /// Coordinates of `x` in the basis, if `x` is a relation.
    pub fn coordinates(&self, x: &[Int]) -> Option<IntVec> {
        if x.len() != self.basis.ncols() {
            return None;
        }
        if self.rank() == 0 {
            return x.iter().all(|v| v.is_zero()).then(Vec::new);
        }
        let a = transpose(&to_rat_matrix(self.basis.rows()));
        let b: Vec<Rat> = x.iter().map(rat_int).collect();
        let c = solve(&a, &b)?;
        c.into_iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect()
    }

    pub fn from_coordinates(&self, c: &[Int]) -> IntVec {
        let mut x = vec![Int::zero(); self.basis.ncols()];
        for (ci, row) in c.iter().zip(self.basis.rows()) {
            for (xi, r) in x.iter_mut().zip(row) {
                *xi += ci * r;
            }
        }
        x
    }
}

/// Wall relations generating the Mori cone, with the ample function used to grade them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoriData {
    walls: Vec<IntVec>,
    ample: Vec<Int>,
}

impl MoriData {
    pub fn walls(&self) -> &[IntVec] {
        &self.walls
    }

    pub fn ample(&self) -> &[Int] {
        &self.ample
    }

    pub fn degree(&self, beta: &[Int]) -> Int {
        dot(&self.ample, beta)
    }

    /// Rational membership in the cone spanned by the wall relations.
    pub fn in_mori_cone(&self, beta: &[Int]) -> bool {
        if beta.iter().all(|x| x.is_zero()) {
            return true;
        }
        if self.walls.is_empty() {
            return false;
        }
        let rows: Vec<Vec<Rat>> = (0..beta.len())
            .map(|i| self.walls.iter().map(|w| rat_int(&w[i])).collect())
            .collect();
        let rhs: Vec<Rat> = beta.iter().map(rat_int).collect();
        feasible_point(&rows, &rhs, self.walls.len()).is_some()
    }
}

/// The relation supported on a wall and its two apexes, primitive and
/// positive on the apexes.
pub fn wall_relation(generators: &[IntVec], wall: &[usize], a: usize, b: usize) -> Result<IntVec> {
    let mut support: Vec<usize> = wall.to_vec();
    support.push(a);
    support.push(b);
    let rank = generators[0].len();
    let cols: Vec<IntVec> = support.iter().map(|&i| generators[i].clone()).collect();
    let ker = integer_kernel_basis(&IntMatrix::from_columns(rank, &cols)?);
    if ker.nrows() != 1 {
        return Err(Error::Precondition(format!("wall {wall:?} is not simplicial")));
    }
    let mut beta = vec![Int::zero(); generators.len()];
    for (&i, c) in support.iter().zip(ker.row(0)) {
        beta[i] = c.clone();
    }
    if beta[a].is_negative() {
        beta = neg_vec(&beta);
    }
    if !beta[a].is_positive() || !beta[b].is_positive() {
        return Err(Error::Invariant(format!(
            "relation {beta:?} of wall {wall:?} is not positive on both apexes"
        )));
    }
    Ok(beta)
}

/// Wall relations of all interior walls (deduplicated, sorted) together with `ample`.
pub fn wall_relations(fan: &Fan, ample: &[Int]) -> Result<MoriData> {
    if ample.len() != fan.len() {
        return Err(Error::Dimension(format!(
            "ample function has {} values for {} generators",
            ample.len(),
            fan.len()
        )));
    }
    let mut walls = BTreeSet::new();
    for (r, a, b) in fan.interior_walls() {
        let beta = wall_relation(fan.generators(), &r, a, b)?;
        if !dot(ample, &beta).is_positive() {
            return Err(Error::Precondition(format!(
                "ample function is not positive on wall relation {beta:?} of wall {r:?}"
            )));
        }
        walls.insert(beta);
    }
    Ok(MoriData {
        walls: walls.into_iter().collect(),
        ample: ample.to_vec(),
    })
}

/// All effective classes of degree at most `bound`, ordered by (degree, lex).
pub fn enumerate_effective(fan: &Fan, mori: &MoriData, bound: u32) -> Result<Vec<IntVec>> {
    let lattice = RelationLattice::of_fan(fan)?;
    let n = fan.len();
    let zero = vec![Int::zero(); n];
    let bound_int = Int::from(bound);
    for w in mori.walls() {
        if !mori.degree(w).is_positive() {
            return Err(Error::Precondition(format!("ample function is not positive on {w:?}")));
        }
    }
    if mori.walls().is_empty() || lattice.rank() == 0 {
        return Ok(vec![zero]);
    }
    // Bounding box in lattice coordinates over the vertices 0 and (bound/deg w) w.
    let k = lattice.rank();
    let mut lo = vec![Rat::zero(); k];
    let mut hi = vec![Rat::zero(); k];
    let a = transpose(&to_rat_matrix(lattice.basis().rows()));
    for w in mori.walls() {
        let scale = Rat::new(bound_int.clone(), mori.degree(w));
        let target: Vec<Rat> = w.iter().map(|x| rat_int(x) * &scale).collect();
        let c = solve(&a, &target).ok_or_else(|| Error::Invariant(format!("wall {w:?} is not a relation")))?;
        for j in 0..k {
            if c[j] < lo[j] {
                lo[j] = c[j].clone();
            }
            if c[j] > hi[j] {
                hi[j] = c[j].clone();
            }
        }
    }
    let ranges: Vec<Vec<Int>> = (0..k)
        .map(|j| {
            let (l, h) = (ceil_rat(&lo[j]), floor_rat(&hi[j]));
            num_iter(&l, &h)
        })
        .collect();
    let candidates: Vec<IntVec> = ranges
        .into_iter()
        .multi_cartesian_product()
        .map(|c| lattice.from_coordinates(&c))
        .collect();
    let mut found: Vec<(Int, IntVec)> = candidates
        .into_par_iter()
        .filter(|beta| {
            let deg = mori.degree(beta);
            !deg.is_negative() && deg <= bound_int && mori.in_mori_cone(beta)
        })
        .map(|beta| (mori.degree(&beta), beta))
        .collect();
    found.sort();
    Ok(found.into_iter().map(|(_, b)| b).collect())
}

fn num_iter(lo: &Int, hi: &Int) -> Vec<Int> {
    let mut v = Vec::new();
    let mut x = lo.clone();
    while &x <= hi {
        v.push(x.clone());
        x += 1;
    }
    v
}
