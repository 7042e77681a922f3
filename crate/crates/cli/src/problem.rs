//! Problem files: a polytope, a triangulation and the data a run needs.

use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use toric_mirror::arith::parse_rational;
use toric_mirror::cayley::{build_cayley, CayleyData};
use toric_mirror::fan::{build_fan, find_lifting, verify_coherence, Triangulation};
use toric_mirror::lattice::LatticePolytope;
use toric_mirror::mirror::MirrorMap;
use toric_mirror::{Int, IntVec, Polynomial};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Term {
    /// Exact rational as `"p/q"` or `"p"`.
    pub coefficient: String,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub name: Option<String>,
    pub dimension: usize,
    pub vertices: Vec<Vec<i64>>,
    /// Point order for the triangulation; defaults to the lattice points in lexicographic order.
    #[serde(default)]
    pub points: Option<Vec<Vec<i64>>>,
    pub simplices: Vec<Vec<usize>>,
    #[serde(default)]
    pub lifting: Option<Vec<i64>>,
    #[serde(default)]
    pub nef_partition: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub v0: Option<Vec<i64>>,
    #[serde(default)]
    pub bound: u32,
    #[serde(default)]
    pub polynomial: Vec<Term>,
}

/// A parsed file whose shapes have been checked; geometry is still unchecked.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: String,
    pub polytope: LatticePolytope,
    pub triangulation: Triangulation,
    pub parts: Option<Vec<Vec<usize>>>,
    pub v0: Option<IntVec>,
    pub bound: u32,
    pub polynomial: Option<Polynomial>,
}

/// Which series a polynomial asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// Variables are all points of the triangulation.
    Residue,
    /// Variables are the nonzero points; the series of the nef-partition.
    CompleteIntersection,
}

fn ints(v: &[i64]) -> IntVec {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn parse(text: &str) -> anyhow::Result<ProblemFile> {
    serde_json::from_str(text).map_err(|e| anyhow::anyhow!("line {}, column {}: {e}", e.line(), e.column()))
}

impl Problem {
    pub fn load(path: &Path) -> anyhow::Result<Problem> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let file = parse(&text).with_context(|| format!("cannot parse {}", path.display()))?;
        let fallback = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        Problem::from_file(file, fallback)
    }

    pub fn from_file(file: ProblemFile, fallback_name: Option<String>) -> anyhow::Result<Problem> {
        let d = file.dimension;
        if d == 0 {
            bail!("field `dimension`: must be positive");
        }
        for (i, v) in file.vertices.iter().enumerate() {
            if v.len() != d {
                bail!("field `vertices[{i}]`: expected {d} coordinates, found {}", v.len());
            }
        }
        let vertices: Vec<IntVec> = file.vertices.iter().map(|v| ints(v)).collect();
        let polytope = LatticePolytope::new(&vertices).context("field `vertices`")?;
        if polytope.dim() != d {
            bail!("field `vertices`: polytope has dimension {}, expected {d}", polytope.dim());
        }
        let points: Vec<IntVec> = match &file.points {
            Some(pts) => {
                for (i, p) in pts.iter().enumerate() {
                    if p.len() != d {
                        bail!("field `points[{i}]`: expected {d} coordinates, found {}", p.len());
                    }
                }
                pts.iter().map(|p| ints(p)).collect()
            }
            None => {
                let mut pts = polytope.lattice_points().to_vec();
                pts.sort();
                pts
            }
        };
        for (i, s) in file.simplices.iter().enumerate() {
            if let Some(&j) = s.iter().find(|&&j| j >= points.len()) {
                bail!("field `simplices[{i}]`: index {j} out of range (there are {} points)", points.len());
            }
        }
        let lifting = match &file.lifting {
            Some(h) if h.len() != points.len() => {
                bail!("field `lifting`: expected {} values, found {}", points.len(), h.len())
            }
            Some(h) => Some(ints(h)),
            None => None,
        };
        if let Some(v) = &file.v0 {
            let r = file.nef_partition.as_ref().map_or(1, |p| p.len());
            if v.len() != d + 1 && v.len() != d + r {
                bail!("field `v0`: expected {} coordinates, found {}", d + r, v.len());
            }
        }
        let polynomial = if file.polynomial.is_empty() {
            None
        } else {
            let nvars = file.polynomial[0].exponents.len();
            let mut p = Polynomial::zero(nvars);
            for (i, t) in file.polynomial.iter().enumerate() {
                if t.exponents.len() != nvars {
                    bail!("field `polynomial[{i}].exponents`: expected {nvars} entries, found {}", t.exponents.len());
                }
                let c = parse_rational(&t.coefficient)
                    .with_context(|| format!("field `polynomial[{i}].coefficient`: `{}` is not a rational", t.coefficient))?;
                p.add_term(t.exponents.clone(), c);
            }
            Some(p)
        };
        Ok(Problem {
            name: file.name.or(fallback_name).unwrap_or_else(|| "problem".into()),
            polytope,
            triangulation: Triangulation::new(points, file.simplices, lifting),
            parts: file.nef_partition,
            v0: file.v0.as_deref().map(ints),
            bound: file.bound,
            polynomial,
        })
    }

    /// The triangulation with a coherence certificate, searching for one if none was given.
    pub fn certified_triangulation(&self) -> toric_mirror::Result<Triangulation> {
        let t = &self.triangulation;
        match t.lifting() {
            Some(h) if verify_coherence(t, h) => Ok(t.clone()),
            Some(_) => Err(toric_mirror::Error::Validation {
                check: "not-coherent",
                detail: "the lifting does not certify coherence".into(),
            }),
            None => find_lifting(t)
                .map(|h| t.clone().with_lifting(h))
                .ok_or_else(|| toric_mirror::Error::Validation {
                    check: "not-coherent",
                    detail: "no lifting certifies coherence".into(),
                }),
        }
    }

    pub fn cayley(&self) -> Option<toric_mirror::Result<CayleyData>> {
        let parts = self.parts.as_ref()?;
        Some(
            self.certified_triangulation()
                .and_then(|t| build_cayley(&self.polytope, &t, parts)),
        )
    }

    /// `v0` if it fits a fan of the given rank.
    pub fn v0_for(&self, rank: usize) -> Option<&[Int]> {
        self.v0.as_deref().filter(|v| v.len() == rank)
    }

    /// Mirror map on the fan of the triangulation.
    pub fn mirror(&self) -> toric_mirror::Result<MirrorMap> {
        let t = self.certified_triangulation()?;
        let fan = build_fan(&self.polytope, &t)?;
        MirrorMap::new(&fan, self.v0_for(fan.rank()), t.lifting().expect("certified"))
    }

    /// Mirror map on the Cayley fan of the nef-partition.
    pub fn cayley_mirror(&self, cayley: &CayleyData) -> toric_mirror::Result<MirrorMap> {
        cayley.mirror(self.v0_for(cayley.fan().rank()))
    }

    pub fn series_kind(&self) -> Option<SeriesKind> {
        let p = self.polynomial.as_ref()?;
        if self.parts.is_some() && p.nvars() + 1 == self.triangulation.points().len() {
            Some(SeriesKind::CompleteIntersection)
        } else {
            Some(SeriesKind::Residue)
        }
    }
}

