//! Mixed residues of a nef-partition and the mixed volumes they compute.
//!
//! The semigroup ring of the Cayley polytope is graded by `Z^r`: generator
//! `i < n` has degree `e_{j(i)}` and `v_{n+j}` has degree `e_j`. The
//! Hessian splits into graded pieces `H^k`, and the residue of `H^k` is the
//! coefficient of `c^{k-1}` in the normalized volume of the Cayley polytope
//! of `c_1 Δ_1, ..., c_r Δ_r`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{rat_int, solve, Int, IntVec, Rat};
use crate::cayley::CayleyData;
use crate::error::{Error, Result};
use crate::lattice::normalized_volume;
use crate::mirror::{hessian, GammaWeights, HessianTerm, MirrorMap};
use crate::poly::Polynomial;

/// Terms of the Cayley Hessian of one `Z^r`-degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComponent {
    pub k: Vec<u32>,
    pub terms: Vec<HessianTerm>,
    nvars: usize,
}

impl GradedComponent {
    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars);
        for t in &self.terms {
            p.add_term(t.a_exponent.clone(), t.coefficient.clone());
        }
        p
    }
}

/// `Z^r`-degree of a set of Cayley generators.
pub fn multidegree(cayley: &CayleyData, indices: &[usize]) -> Vec<u32> {
    let n = cayley.n();
    let mut k = vec![0u32; cayley.r()];
    for &i in indices {
        let j = if i < n { cayley.part_of(i) } else { i - n };
        k[j] += 1;
    }
    k
}

fn check_k(cayley: &CayleyData, k: &[u32]) -> Result<()> {
    let total = cayley.fan().rank() as u32;
    if k.len() != cayley.r() {
        return Err(Error::Dimension(format!("k has {} entries for {} parts", k.len(), cayley.r())));
    }
    if k.contains(&0) || k.iter().sum::<u32>() != total {
        return Err(Error::Precondition(format!(
            "k = {k:?} must have positive entries summing to {total}"
        )));
    }
    Ok(())
}

/// All `k` with `k_j ≥ 1` and `Σ k_j = dim Δ̄ + r`, in lexicographic order.
pub fn admissible_degrees(cayley: &CayleyData) -> Vec<Vec<u32>> {
    let r = cayley.r();
    let total = cayley.fan().rank() as u32;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(cur: &mut Vec<u32>, left: u32, r: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == r {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        let slots = (r - cur.len() - 1) as u32;
        for x in 1..=left - slots {
            cur.push(x);
            rec(cur, left - x, r, out);
            cur.pop();
        }
    }
    if r > 0 && total >= r as u32 {
        rec(&mut cur, total, r, &mut out);
    }
    out
}

pub fn graded_hessian_component(cayley: &CayleyData, k: &[u32]) -> Result<GradedComponent> {
    check_k(cayley, k)?;
    let fan = cayley.fan();
    let h = hessian(fan, &GammaWeights::ones(fan))?;
    let terms = h
        .terms()
        .iter()
        .filter(|t| multidegree(cayley, &t.subset) == k)
        .cloned()
        .collect();
    Ok(GradedComponent {
        k: k.to_vec(),
        terms,
        nvars: fan.len(),
    })
}

/// The `k`-mixed residue, read off the series of `H^k` through `bound`.
///
/// Every coefficient with `β ≠ 0` must vanish; a survivor is an invariant error.
pub fn mixed_residue(cayley: &CayleyData, mirror: &MirrorMap, k: &[u32], bound: u32) -> Result<Rat> {
    let comp = graded_hessian_component(cayley, k)?;
    let table = mirror.rm_series(&comp.to_polynomial(), bound)?;
    let mut constant = Rat::zero();
    for e in &table.entries {
        if e.beta.iter().all(Zero::is_zero) {
            constant = e.coefficient.clone();
        } else if !e.coefficient.is_zero() {
            return Err(Error::Invariant(format!(
                "mixed residue for k = {k:?} has coefficient {} at β = {:?}",
                e.coefficient, e.beta
            )));
        }
    }
    Ok(constant)
}

fn check_kbar(cayley: &CayleyData, kbar: &[u32]) -> Result<()> {
    let d = cayley.base_dim() as u32;
    if kbar.len() != cayley.r() || kbar.iter().sum::<u32>() != d {
        return Err(Error::Precondition(format!(
            "k̄ = {kbar:?} must have {} entries summing to {d}",
            cayley.r()
        )));
    }
    Ok(())
}

/// Mixed volumes by grading the maximal simplices of the Cayley triangulation.
pub fn mixed_volumes_by_simplices(cayley: &CayleyData) -> BTreeMap<Vec<u32>, Rat> {
    let fan = cayley.fan();
    let mut table: BTreeMap<Vec<u32>, Rat> = admissible_degrees(cayley)
        .into_iter()
        .map(|k| (k.into_iter().map(|x| x - 1).collect(), Rat::zero()))
        .collect();
    for (i, cone) in fan.max_cones().iter().enumerate() {
        let kbar: Vec<u32> = multidegree(cayley, cone).into_iter().map(|x| x - 1).collect();
        *table.entry(kbar).or_insert_with(Rat::zero) += rat_int(&fan.cone_volume(i));
    }
    table
}

/// Points of the Cayley polytope of `c_1 Δ_1, ..., c_r Δ_r` in `Z^{d+r-1}`.
pub fn scaled_cayley_points(cayley: &CayleyData, c: &[Int]) -> Vec<IntVec> {
    let r = cayley.r();
    let lift = |x: IntVec, j: usize| -> IntVec {
        let mut p = x;
        p.extend((0..r - 1).map(|l| if l == j { Int::from(1) } else { Int::zero() }));
        p
    };
    let mut pts = Vec::new();
    for (j, part) in cayley.parts().iter().enumerate() {
        pts.push(lift(vec![Int::zero(); cayley.base_dim()], j));
        for &i in part {
            pts.push(lift(cayley.base_points()[i].iter().map(|x| x * &c[j]).collect(), j));
        }
    }
    pts
}

/// Exponent vectors in `{0..=deg}^r`, lexicographic.
fn exponent_box(r: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                (0..=deg).map(move |x| {
                    let mut f = e.clone();
                    f.push(x);
                    f
                })
            })
            .collect();
    }
    out
}

/// Interpolates `c ↦ f(c)` (of degree at most `deg` in each variable) from
/// its values at `{1..=deg+1}^r`. Returns every monomial coefficient.
pub fn interpolate<F>(r: usize, deg: u32, f: F) -> Result<BTreeMap<Vec<u32>, Rat>>
where
    F: Fn(&[Int]) -> Result<Rat> + Sync,
{
    let monomials = exponent_box(r, deg);
    let nodes: Vec<Vec<u32>> = exponent_box(r, deg)
        .into_iter()
        .map(|e| e.into_iter().map(|x| x + 1).collect())
        .collect();
    let values: Vec<Rat> = nodes
        .par_iter()
        .map(|c| f(&c.iter().map(|&x| Int::from(x)).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    let matrix: Vec<Vec<Rat>> = nodes
        .iter()
        .map(|c| {
            monomials
                .iter()
                .map(|e| c.iter().zip(e).map(|(&x, &k)| Rat::from(Int::from(x).pow(k))).product())
                .collect()
        })
        .collect();
    let coeffs = solve(&matrix, &values).ok_or_else(|| Error::Invariant("singular interpolation system".into()))?;
    Ok(monomials.into_iter().zip(coeffs).collect())
}

/// Mixed volumes by interpolating the volume of the scaled Cayley polytope.
pub fn mixed_volumes_by_interpolation(cayley: &CayleyData) -> Result<BTreeMap<Vec<u32>, Rat>> {
    let d = cayley.base_dim() as u32;
    let all = interpolate(cayley.r(), d, |c| {
        Ok(rat_int(&normalized_volume(&scaled_cayley_points(cayley, c))?))
    })?;
    let mut table = BTreeMap::new();
    for (e, v) in all {
        if e.iter().sum::<u32>() == d {
            table.insert(e, v);
        } else if !v.is_zero() {
            return Err(Error::Invariant(format!(
                "scaled Cayley volume is not homogeneous: coefficient {v} at {e:?}"
            )));
        }
    }
    Ok(table)
}

/// Which computation produced a mixed volume.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Simplices,
    Interpolation,
}

/// `V(Δ_1^{k̄_1} ... Δ_r^{k̄_r})`, computed both ways; disagreement is an error.
pub fn mixed_volume(cayley: &CayleyData, kbar: &[u32]) -> Result<Rat> {
    check_kbar(cayley, kbar)?;
    let a = mixed_volume_by(cayley, kbar, Route::Simplices)?;
    let b = mixed_volume_by(cayley, kbar, Route::Interpolation)?;
    if a != b {
        return Err(Error::Invariant(format!("mixed volume {kbar:?}: simplices give {a}, interpolation gives {b}")));
    }
    Ok(a)
}

pub fn mixed_volume_by(cayley: &CayleyData, kbar: &[u32], route: Route) -> Result<Rat> {
    check_kbar(cayley, kbar)?;
    let table = match route {
        Route::Simplices => mixed_volumes_by_simplices(cayley),
        Route::Interpolation => mixed_volumes_by_interpolation(cayley)?,
    };
    Ok(table.get(kbar).cloned().unwrap_or_else(Rat::zero))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedRow {
    pub k: Vec<u32>,
    pub kbar: Vec<u32>,
    /// `Err` carries the failure message of the residue computation.
    pub residue: std::result::Result<Rat, String>,
    pub volume: Rat,
}

impl MixedRow {
    pub fn passed(&self) -> bool {
        self.residue.as_ref().is_ok_and(|r| *r == self.volume)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedVolumeReport {
    pub rows: Vec<MixedRow>,
    /// Whether the two volume routes agree on every `k̄`.
    pub routes_agree: bool,
}

impl MixedVolumeReport {
    pub fn passed(&self) -> bool {
        self.routes_agree && self.rows.iter().all(MixedRow::passed)
    }

    pub fn volumes(&self) -> BTreeMap<Vec<u32>, Rat> {
        self.rows.iter().map(|r| (r.kbar.clone(), r.volume.clone())).collect()
    }
}

/// Checks `Res H^k = V(Δ^{k-1})` for every admissible `k`.
pub fn verify_mixed_volume_theorem(cayley: &CayleyData, mirror: &MirrorMap, bound: u32) -> Result<MixedVolumeReport> {
    let by_simplices = mixed_volumes_by_simplices(cayley);
    let by_interpolation = mixed_volumes_by_interpolation(cayley)?;
    let degrees = admissible_degrees(cayley);
    let routes_agree = by_simplices == by_interpolation;
    let rows = degrees
        .par_iter()
        .map(|k| {
            let kbar: Vec<u32> = k.iter().map(|x| x - 1).collect();
            MixedRow {
                k: k.clone(),
                residue: mixed_residue(cayley, mirror, k, bound).map_err(|e| e.to_string()),
                volume: by_simplices.get(&kbar).cloned().unwrap_or_else(Rat::zero),
                kbar,
            }
        })
        .collect();
    Ok(MixedVolumeReport { rows, routes_agree })
}
