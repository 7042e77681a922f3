//! Small worked examples used by tests, the acceptance suite and the CLI.

use crate::arith::{ivec, IntVec};
use crate::cayley::{build_cayley, CayleyData};
use crate::error::Result;
use crate::fan::{build_fan, Fan, Triangulation};
use crate::lattice::LatticePolytope;
use crate::mirror::MirrorMap;

#[derive(Clone, Debug)]
pub struct Example {
    pub name: &'static str,
    pub polytope: LatticePolytope,
    pub triangulation: Triangulation,
    /// Nef-partition as index sets into the triangulation's points.
    pub parts: Option<Vec<Vec<usize>>>,
    /// A valid completion vector different from the default one.
    pub alt_v0: IntVec,
}

impl Example {
    pub fn fan(&self) -> Result<Fan> {
        build_fan(&self.polytope, &self.triangulation)
    }

    pub fn ample(&self) -> IntVec {
        self.triangulation.lifting().expect("examples carry a lifting").to_vec()
    }

    pub fn cayley(&self) -> Option<Result<CayleyData>> {
        self.parts
            .as_ref()
            .map(|p| build_cayley(&self.polytope, &self.triangulation, p))
    }

    /// Mirror map on the fan the series lives on: the Cayley fan with its
    /// own completion when a nef-partition is present, else the plain fan.
    pub fn mirror(&self, v0: Option<&[crate::Int]>) -> Result<MirrorMap> {
        match self.cayley() {
            Some(c) => c?.mirror(v0),
            None => MirrorMap::new(&self.fan()?, v0, &self.ample()),
        }
    }
}

/// `[-1, 1]` with points ordered `-1, 1, 0` and the triangulation at 0.
pub fn segment() -> Example {
    let points = vec![ivec(&[-1]), ivec(&[1]), ivec(&[0])];
    Example {
        name: "segment",
        polytope: LatticePolytope::new(&points).expect("segment"),
        triangulation: Triangulation::new(points, vec![vec![0, 2], vec![2, 1]], Some(ivec(&[1, 1, 0]))),
        parts: Some(vec![vec![0, 1]]),
        alt_v0: ivec(&[-1, -2]),
    }
}

/// `conv{(1,0), (0,1), (-1,-1)}` with the star triangulation at the origin.
pub fn projective_plane() -> Example {
    let points = vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1]), ivec(&[0, 0])];
    Example {
        name: "projective-plane",
        polytope: LatticePolytope::new(&points).expect("triangle"),
        triangulation: Triangulation::new(
            points,
            vec![vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]],
            Some(ivec(&[1, 1, 1, 0])),
        ),
        parts: Some(vec![vec![0, 1, 2]]),
        alt_v0: ivec(&[-1, 0, -2]),
    }
}

/// `conv{±e_1, ±e_2}` with the star triangulation and the partition
/// `{±e_1} ∪ {±e_2}`. Points are in lexicographic order.
pub fn square() -> Example {
    let points = vec![ivec(&[-1, 0]), ivec(&[0, -1]), ivec(&[0, 0]), ivec(&[0, 1]), ivec(&[1, 0])];
    Example {
        name: "square",
        polytope: LatticePolytope::new(&points).expect("square"),
        triangulation: Triangulation::new(
            points,
            vec![vec![0, 1, 2], vec![1, 2, 4], vec![2, 3, 4], vec![0, 2, 3]],
            Some(ivec(&[1, 1, 0, 1, 1])),
        ),
        parts: Some(vec![vec![0, 4], vec![1, 3]]),
        alt_v0: ivec(&[-1, 0, -2, -3]),
    }
}

/// The non-reflexive triangle `conv{(0,0), (2,0), (0,1)}` cut into two triangles.
pub fn thin_triangle() -> Example {
    let points = vec![ivec(&[0, 0]), ivec(&[0, 1]), ivec(&[1, 0]), ivec(&[2, 0])];
    Example {
        name: "thin-triangle",
        polytope: LatticePolytope::new(&points).expect("triangle"),
        triangulation: Triangulation::new(points, vec![vec![0, 1, 2], vec![1, 2, 3]], Some(ivec(&[0, 0, 0, 1]))),
        parts: None,
        alt_v0: ivec(&[-1, -1, -3]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::verify_coherence;

    #[test]
    fn examples_are_valid_and_coherent() {
        for ex in [segment(), projective_plane(), square(), thin_triangle()] {
            assert!(ex.fan().is_ok(), "{}", ex.name);
            assert!(verify_coherence(&ex.triangulation, &ex.ample()), "{}", ex.name);
            assert!(ex.mirror(None).is_ok(), "{}", ex.name);
            assert!(ex.mirror(Some(&ex.alt_v0)).is_ok(), "{}", ex.name);
        }
    }
}
