//! Integer lattices, cones and lattice polytopes.
//!
//! Everything here is exact. Facets are found by brute force over subsets of
//! the input points, which is adequate for the small ambient ranks this crate
//! works in.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    det_int, dot, primitive, rank_int, rat_int, solve, sub_vec, to_rat_matrix, transpose, Int,
    IntVec, Rat,
};
use crate::error::{Error, Result};

/// Dense integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    cols: usize,
    rows: Vec<IntVec>,
}

impl IntMatrix {
    pub fn from_rows(cols: usize, rows: Vec<IntVec>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Ok(IntMatrix { cols, rows })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[IntVec]) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != nrows) {
            return Err(Error::Dimension(format!(
                "column of length {} in a matrix with {nrows} rows",
                c.len()
            )));
        }
        let rows = (0..nrows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Ok(IntMatrix {
            cols: columns.len(),
            rows,
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[IntVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &IntVec {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> IntVec {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Int]) -> IntVec {
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    pub fn rank(&self) -> usize {
        rank_int(&self.rows)
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix {
            cols: self.rows.len(),
            rows: transpose(&self.rows),
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "[{}]", r.iter().join(", "))?;
        }
        Ok(())
    }
}

/// Integer row reduction of `rows` (left part) carrying a companion block.
/// Returns the number of nonzero rows of the echelon form; they come first.
fn echelon_with_companion(rows: &mut [(IntVec, IntVec)]) -> usize {
    let n = rows.len();
    let width = rows.first().map_or(0, |r| r.0.len());
    let mut pivot_row = 0;
    for c in 0..width {
        if pivot_row == n {
            break;
        }
        loop {
            let best = (pivot_row..n)
                .filter(|&r| !rows[r].0[c].is_zero())
                .min_by(|&a, &b| rows[a].0[c].abs().cmp(&rows[b].0[c].abs()));
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut clean = true;
            for r in pivot_row + 1..n {
                if rows[r].0[c].is_zero() {
                    continue;
                }
                let q = num_integer::Integer::div_floor(&rows[r].0[c], &rows[pivot_row].0[c]);
                let (p0, p1) = rows[pivot_row].clone();
                for (x, y) in rows[r].0.iter_mut().zip(&p0) {
                    *x -= &q * y;
                }
                for (x, y) in rows[r].1.iter_mut().zip(&p1) {
                    *x -= &q * y;
                }
                if !rows[r].0[c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                pivot_row += 1;
                break;
            }
        }
    }
    pivot_row
}

/// Row Hermite normal form: a canonical basis of the lattice spanned by `rows`.
pub fn hermite_rows(rows: &[IntVec]) -> Vec<IntVec> {
    let mut work: Vec<(IntVec, IntVec)> = rows.iter().map(|r| (r.clone(), Vec::new())).collect();
    let rank = echelon_with_companion(&mut work);
    let mut h: Vec<IntVec> = work.into_iter().take(rank).map(|r| r.0).collect();
    for i in 0..h.len() {
        let c = h[i].iter().position(|x| !x.is_zero()).expect("nonzero echelon row");
        if h[i][c].is_negative() {
            h[i] = h[i].iter().map(|x| -x).collect();
        }
        let p = h[i][c].clone();
        for k in 0..i {
            let q = num_integer::Integer::div_floor(&h[k][c], &p);
            if !q.is_zero() {
                let hi = h[i].clone();
                for (x, y) in h[k].iter_mut().zip(&hi) {
                    *x -= &q * y;
                }
            }
        }
    }
    h
}

/// Saturated basis (rows) of `{x ∈ Z^n : A x = 0}`, in Hermite normal form.
pub fn integer_kernel_basis(a: &IntMatrix) -> IntMatrix {
    let n = a.ncols();
    let mut work: Vec<(IntVec, IntVec)> = (0..n)
        .map(|i| {
            let mut unit = vec![Int::zero(); n];
            unit[i] = Int::one();
            (a.column(i), unit)
        })
        .collect();
    let rank = echelon_with_companion(&mut work);
    let kernel: Vec<IntVec> = work.into_iter().skip(rank).map(|r| r.1).collect();
    IntMatrix {
        cols: n,
        rows: hermite_rows(&kernel),
    }
}

/// Index of the sublattice spanned by `k` vectors in `Z^k`; 0 if they are dependent.
pub fn cone_volume(generators: &[IntVec]) -> Result<Int> {
    let k = generators.len();
    if let Some(g) = generators.iter().find(|g| g.len() != k) {
        return Err(Error::Dimension(format!(
            "{k} generators of length {} (need a square configuration)",
            g.len()
        )));
    }
    Ok(det_int(generators).abs())
}

/// Facet `⟨normal, x⟩ + offset >= 0`, with `normal` primitive and pointing inward.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: IntVec,
    pub offset: Int,
}

impl Facet {
    pub fn value(&self, x: &[Int]) -> Int {
        dot(&self.normal, x) + &self.offset
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullKind {
    /// Points are the vertices (or any spanning set) of a full-dimensional polytope.
    Polytope,
    /// Points positively span a full-dimensional pointed cone; offsets are zero.
    Cone,
}

fn cone_facet_normals(gens: &[IntVec]) -> Result<Vec<IntVec>> {
    let k = gens.first().map_or(0, |g| g.len());
    if gens.iter().any(|g| g.len() != k) {
        return Err(Error::Dimension("generators of unequal length".into()));
    }
    if k == 0 || rank_int(gens) < k {
        return Err(Error::NotFullDimensional(format!(
            "{} generators of rank {} in Z^{k}",
            gens.len(),
            rank_int(gens)
        )));
    }
    let mut normals = BTreeSet::new();
    if k == 1 {
        let pos = gens.iter().any(|g| g[0].is_positive());
        let neg = gens.iter().any(|g| g[0].is_negative());
        if pos && neg {
            return Err(Error::NotPointed);
        }
        normals.insert(vec![if pos { Int::one() } else { -Int::one() }]);
        return Ok(normals.into_iter().collect());
    }
    for subset in (0..gens.len()).combinations(k - 1) {
        let rows: Vec<IntVec> = subset.iter().map(|&i| gens[i].clone()).collect();
        if rank_int(&rows) != k - 1 {
            continue;
        }
        let ker = integer_kernel_basis(&IntMatrix::from_rows(k, rows)?);
        let mut normal = primitive(ker.row(0));
        let values: Vec<Int> = gens.iter().map(|g| dot(&normal, g)).collect();
        let pos = values.iter().any(|v| v.is_positive());
        let neg = values.iter().any(|v| v.is_negative());
        if pos && neg {
            continue;
        }
        if neg {
            normal = normal.iter().map(|x| -x).collect();
        }
        normals.insert(normal);
    }
    let normals: Vec<IntVec> = normals.into_iter().collect();
    if normals.is_empty() || rank_int(&normals) < k {
        return Err(Error::NotPointed);
    }
    Ok(normals)
}

/// Irredundant facet system of the hull of `points`, sorted.
pub fn facet_inequalities(points: &[IntVec], kind: HullKind) -> Result<Vec<Facet>> {
    match kind {
        HullKind::Cone => Ok(cone_facet_normals(points)?
            .into_iter()
            .map(|normal| Facet {
                normal,
                offset: Int::zero(),
            })
            .collect()),
        HullKind::Polytope => {
            let homog: Vec<IntVec> = points
                .iter()
                .map(|p| {
                    let mut v = p.clone();
                    v.push(Int::one());
                    v
                })
                .collect();
            let normals = cone_facet_normals(&homog).map_err(|e| match e {
                Error::NotPointed => Error::NotFullDimensional("point set is empty".into()),
                other => other,
            })?;
            let mut facets: Vec<Facet> = normals
                .into_iter()
                .map(|mut w| {
                    let offset = w.pop().expect("homogenized normal");
                    Facet { normal: w, offset }
                })
                .collect();
            facets.sort();
            Ok(facets)
        }
    }
}

/// A full-dimensional pointed rational cone with primitive generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedCone {
    generators: Vec<IntVec>,
    facets: Vec<IntVec>,
}

impl PointedCone {
    pub fn new(generators: &[IntVec]) -> Result<Self> {
        let gens: Vec<IntVec> = generators
            .iter()
            .map(|g| primitive(g))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let facets = cone_facet_normals(&gens)?;
        Ok(PointedCone {
            generators: gens,
            facets,
        })
    }

    pub fn generators(&self) -> &[IntVec] {
        &self.generators
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.facets[0].len()
    }

    pub fn contains(&self, p: &[Int]) -> bool {
        self.facets.iter().all(|w| !dot(w, p).is_negative())
    }

    pub fn is_interior(&self, p: &[Int]) -> bool {
        p.len() == self.dim() && self.facets.iter().all(|w| dot(w, p).is_positive())
    }

    /// True iff all the points lie on one common facet.
    pub fn on_common_facet(&self, points: &[&IntVec]) -> bool {
        self.facets
            .iter()
            .any(|w| points.iter().all(|p| dot(w, p).is_zero()))
    }
}

pub fn is_interior(point: &[Int], cone: &PointedCone) -> bool {
    cone.is_interior(point)
}

/// A full-dimensional lattice polytope with its facets and lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<IntVec>,
    facets: Vec<Facet>,
    lattice_points: Vec<IntVec>,
}

impl LatticePolytope {
    /// Convex hull of `points`; the vertex list is extracted from the facet system.
    pub fn new(points: &[IntVec]) -> Result<Self> {
        let dim = points
            .first()
            .map(|p| p.len())
            .ok_or_else(|| Error::NotFullDimensional("no points".into()))?;
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::Dimension("points of unequal length".into()));
        }
        let pts: Vec<IntVec> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let facets = facet_inequalities(&pts, HullKind::Polytope)?;
        let vertices: Vec<IntVec> = pts
            .iter()
            .filter(|p| {
                let tight: Vec<IntVec> = facets
                    .iter()
                    .filter(|f| f.value(p).is_zero())
                    .map(|f| f.normal.clone())
                    .collect();
                !tight.is_empty() && rank_int(&tight) == dim
            })
            .cloned()
            .collect();
        let lattice_points = enumerate_box(&vertices, |p| facets.iter().all(|f| !f.value(p).is_negative()));
        Ok(LatticePolytope {
            dim,
            vertices,
            facets,
            lattice_points,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IntVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// All lattice points, lexicographically ordered.
    pub fn lattice_points(&self) -> &[IntVec] {
        &self.lattice_points
    }

    pub fn contains(&self, p: &[Int]) -> bool {
        self.facets.iter().all(|f| !f.value(p).is_negative())
    }

    pub fn is_interior_point(&self, p: &[Int]) -> bool {
        self.facets.iter().all(|f| f.value(p).is_positive())
    }

    /// Origin interior and every facet of the form `⟨w, x⟩ >= -1`.
    pub fn is_reflexive(&self) -> bool {
        let origin = vec![Int::zero(); self.dim];
        self.is_interior_point(&origin) && self.facets.iter().all(|f| f.offset.is_one())
    }

    /// `d!` times the Euclidean volume.
    pub fn normalized_volume(&self) -> Result<Int> {
        normalized_volume(&self.vertices)
    }

    /// The cone over `self × {1}`.
    pub fn cone(&self) -> Result<PointedCone> {
        PointedCone::new(&self.vertices.iter().map(|v| homogenize(v)).collect::<Vec<_>>())
    }
}

pub fn is_reflexive(polytope: &LatticePolytope) -> bool {
    polytope.is_reflexive()
}

pub fn lattice_points(polytope: &LatticePolytope) -> &[IntVec] {
    polytope.lattice_points()
}

/// `(p, 1)`.
pub fn homogenize(p: &[Int]) -> IntVec {
    let mut v = p.to_vec();
    v.push(Int::one());
    v
}

/// Integer points of the bounding box of `points` accepted by `keep`, in lex order.
pub fn enumerate_box(points: &[IntVec], keep: impl Fn(&IntVec) -> bool) -> Vec<IntVec> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let dim = first.len();
    let ranges: Vec<std::ops::RangeInclusive<i64>> = (0..dim)
        .map(|k| {
            let lo = points.iter().map(|p| &p[k]).min().unwrap().to_i64().expect("coordinate fits i64");
            let hi = points.iter().map(|p| &p[k]).max().unwrap().to_i64().expect("coordinate fits i64");
            lo..=hi
        })
        .collect();
    if dim == 0 {
        return vec![Vec::new()];
    }
    ranges
        .into_iter()
        .multi_cartesian_product()
        .map(|c| c.into_iter().map(Int::from).collect::<IntVec>())
        .filter(|p| keep(p))
        .collect()
}

/// Affine dimension of a point set (-1 encoded as `None` for the empty set).
pub fn affine_dimension(points: &[IntVec]) -> Option<usize> {
    if points.is_empty() {
        return None;
    }
    let diffs: Vec<IntVec> = points[1..].iter().map(|p| sub_vec(p, &points[0])).collect();
    Some(if diffs.is_empty() { 0 } else { rank_int(&diffs) })
}

/// Pulling triangulation of a full-dimensional point configuration.
///
/// Simplices are index sets into `points`; they cover the convex hull and
/// intersect properly. Used as a triangulation-independent volume oracle.
pub fn pulling_triangulation(points: &[IntVec]) -> Result<Vec<Vec<usize>>> {
    let dim = points.first().map_or(0, |p| p.len());
    let distinct: BTreeSet<&IntVec> = points.iter().collect();
    if distinct.len() != points.len() {
        return Err(Error::Precondition("duplicate points".into()));
    }
    if affine_dimension(points) != Some(dim) {
        return Err(Error::NotFullDimensional(format!(
            "{} points do not affinely span Z^{dim}",
            points.len()
        )));
    }
    if dim == 0 {
        return Ok(vec![vec![0]]);
    }
    let facets = facet_inequalities(points, HullKind::Polytope)?;
    let apex = &points[0];
    let mut simplices = Vec::new();
    for facet in &facets {
        if facet.value(apex).is_zero() {
            continue;
        }
        let on: Vec<usize> = (0..points.len())
            .filter(|&i| facet.value(&points[i]).is_zero())
            .collect();
        let local = hyperplane_coordinates(&facet.normal, &on.iter().map(|&i| points[i].clone()).collect::<Vec<_>>())?;
        for s in pulling_triangulation(&local)? {
            let mut simplex = vec![0];
            simplex.extend(s.into_iter().map(|k| on[k]));
            simplices.push(simplex);
        }
    }
    Ok(simplices)
}

/// Integral coordinates of points lying in one hyperplane `⟨normal, x⟩ = const`.
fn hyperplane_coordinates(normal: &[Int], points: &[IntVec]) -> Result<Vec<IntVec>> {
    let basis = integer_kernel_basis(&IntMatrix::from_rows(normal.len(), vec![normal.to_vec()])?);
    let bt = to_rat_matrix(&transpose(basis.rows()));
    points
        .iter()
        .map(|p| {
            let diff: Vec<Rat> = sub_vec(p, &points[0]).iter().map(rat_int).collect();
            let c = solve(&bt, &diff)
                .ok_or_else(|| Error::Invariant("point off its facet hyperplane".into()))?;
            c.into_iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::Invariant("non-integral facet coordinates".into()))
                    }
                })
                .collect()
        })
        .collect()
}

/// `d!` times the Euclidean volume of the convex hull of `points`.
pub fn normalized_volume(points: &[IntVec]) -> Result<Int> {
    let pts: Vec<IntVec> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let simplices = pulling_triangulation(&pts)?;
    let mut total = Int::zero();
    for s in simplices {
        let rows: Vec<IntVec> = s[1..].iter().map(|&i| sub_vec(&pts[i], &pts[s[0]])).collect();
        total += det_int(&rows).abs();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ivec};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows[0].len(), rows.iter().map(|r| ivec(r)).collect()).unwrap()
    }

    fn in_span(basis: &IntMatrix, v: &IntVec) -> bool {
        // integer combination check via Hermite form of basis + v
        let mut rows = basis.rows().to_vec();
        let before = hermite_rows(&rows);
        rows.push(v.clone());
        hermite_rows(&rows) == before
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let k = integer_kernel_basis(&m(&[&[1, 1, 1]]));
        assert_eq!(k.nrows(), 2);
        assert!(in_span(&k, &ivec(&[1, -1, 0])));
        assert!(in_span(&k, &ivec(&[0, 1, -1])));
        assert!(!in_span(&k, &ivec(&[1, 1, 0])));
    }

    #[test]
    fn kernel_of_three_rays() {
        let a = IntMatrix::from_columns(2, &[ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1])]).unwrap();
        let k = integer_kernel_basis(&a);
        assert_eq!(k.rows(), &[ivec(&[1, 1, 1])]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert_eq!(integer_kernel_basis(&m(&[&[1, 0], &[0, 1]])).nrows(), 0);
    }

    #[test]
    fn cone_volume_examples() {
        assert_eq!(cone_volume(&[ivec(&[1, 0]), ivec(&[0, 1])]).unwrap(), int(1));
        assert_eq!(
            cone_volume(&[ivec(&[1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[-1, -1, 1])]).unwrap(),
            int(3)
        );
        assert_eq!(cone_volume(&[ivec(&[1, 1]), ivec(&[2, 2])]).unwrap(), int(0));
        assert!(matches!(
            cone_volume(&[ivec(&[1, 1, 0]), ivec(&[2, 2, 0])]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn facets_of_two_dimensional_cone() {
        let f = facet_inequalities(&[ivec(&[-1, 1]), ivec(&[1, 1])], HullKind::Cone).unwrap();
        let normals: Vec<IntVec> = f.into_iter().map(|f| f.normal).collect();
        assert_eq!(normals, vec![ivec(&[-1, 1]), ivec(&[1, 1])]);
        let f = facet_inequalities(&[ivec(&[1, 0]), ivec(&[0, 1])], HullKind::Cone).unwrap();
        let normals: Vec<IntVec> = f.into_iter().map(|f| f.normal).collect();
        assert_eq!(normals, vec![ivec(&[0, 1]), ivec(&[1, 0])]);
    }

    #[test]
    fn facets_of_unit_square() {
        let sq = [ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])];
        let f = facet_inequalities(&sq, HullKind::Polytope).unwrap();
        let expected = vec![
            Facet { normal: ivec(&[-1, 0]), offset: int(1) },
            Facet { normal: ivec(&[0, -1]), offset: int(1) },
            Facet { normal: ivec(&[0, 1]), offset: int(0) },
            Facet { normal: ivec(&[1, 0]), offset: int(0) },
        ];
        assert_eq!(f, expected);
    }

    #[test]
    fn lower_dimensional_input_is_rejected() {
        let seg = [ivec(&[0, 0]), ivec(&[1, 1])];
        assert!(matches!(
            facet_inequalities(&seg, HullKind::Polytope),
            Err(Error::NotFullDimensional(_))
        ));
        assert!(matches!(
            PointedCone::new(&[ivec(&[1, 0]), ivec(&[-1, 0]), ivec(&[0, 1])]),
            Err(Error::NotPointed)
        ));
    }

    #[test]
    fn interiority() {
        let tri = LatticePolytope::new(&[ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1])]).unwrap();
        let cone = tri.cone().unwrap();
        assert!(is_interior(&ivec(&[0, 0, 3]), &cone));
        assert!(!is_interior(&ivec(&[1, 0, 1]), &cone));
        let seg = LatticePolytope::new(&[ivec(&[-1]), ivec(&[1])]).unwrap();
        assert!(is_interior(&ivec(&[0, 1]), &seg.cone().unwrap()));
    }

    #[test]
    fn reflexivity() {
        let tri = LatticePolytope::new(&[ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1])]).unwrap();
        assert!(tri.is_reflexive());
        assert!(LatticePolytope::new(&[ivec(&[-1]), ivec(&[1])]).unwrap().is_reflexive());
        let thin = LatticePolytope::new(&[ivec(&[0, 0]), ivec(&[2, 0]), ivec(&[0, 1])]).unwrap();
        assert!(!thin.is_reflexive());
    }

    #[test]
    fn lattice_point_enumeration() {
        let seg = LatticePolytope::new(&[ivec(&[-1]), ivec(&[1])]).unwrap();
        assert_eq!(seg.lattice_points(), &[ivec(&[-1]), ivec(&[0]), ivec(&[1])]);
        let tri = LatticePolytope::new(&[ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1])]).unwrap();
        assert_eq!(tri.lattice_points().len(), 4);
        let sq = LatticePolytope::new(&[ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])]).unwrap();
        assert_eq!(sq.lattice_points().len(), 4);
    }

    #[test]
    fn vertices_drop_non_extreme_points() {
        let p = LatticePolytope::new(&[ivec(&[0]), ivec(&[1]), ivec(&[3])]).unwrap();
        assert_eq!(p.vertices(), &[ivec(&[0]), ivec(&[3])]);
    }

    #[test]
    fn pulling_volumes() {
        let sq = [ivec(&[0, 0]), ivec(&[2, 0]), ivec(&[0, 2]), ivec(&[2, 2]), ivec(&[1, 1])];
        assert_eq!(normalized_volume(&sq).unwrap(), int(8));
        let cube: Vec<IntVec> = (0..8)
            .map(|b| ivec(&[b & 1, (b >> 1) & 1, (b >> 2) & 1]))
            .collect();
        assert_eq!(normalized_volume(&cube).unwrap(), int(6));
        let tri = [ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1])];
        assert_eq!(normalized_volume(&tri).unwrap(), int(3));
    }
}
