//! The residue mirror map: Hessian expansions, Laurent series coefficients
//! built from JK residues, and the identities they satisfy.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{dot, rat_int, solve, Int, IntVec, Rat};
use crate::error::{Error, Result};
use crate::fan::{complete, enumerate_effective, wall_relations, CompletedFan, Fan, MoriData};
use crate::jk::{JkEngine, TieBreak};
use crate::lattice::cone_volume;
use crate::poly::Polynomial;

/// Positive weights `γ_i` with `1/γ_i` the values of a linear function on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaWeights {
    gamma: Vec<Rat>,
    w: Vec<Rat>,
}

impl GammaWeights {
    pub fn new(fan: &Fan, gamma: Vec<Rat>) -> Result<Self> {
        if gamma.len() != fan.len() {
            return Err(Error::Dimension(format!(
                "{} weights for {} generators",
                gamma.len(),
                fan.len()
            )));
        }
        if gamma.iter().any(|g| g <= &Rat::zero()) {
            return Err(Error::Precondition("weights must be positive".into()));
        }
        let a: Vec<Vec<Rat>> = fan.generators().iter().map(|v| v.iter().map(rat_int).collect()).collect();
        let b: Vec<Rat> = gamma.iter().map(|g| g.recip()).collect();
        let w = solve(&a, &b).ok_or_else(|| {
            Error::Precondition("no linear function takes the values 1/γ_i on the generators".into())
        })?;
        Ok(GammaWeights { gamma, w })
    }

    pub fn ones(fan: &Fan) -> Self {
        Self::new(fan, vec![Rat::one(); fan.len()]).expect("the height function takes the value 1")
    }

    pub fn values(&self) -> &[Rat] {
        &self.gamma
    }

    /// The linear function `w_γ` with `⟨w_γ, v_i⟩ = 1/γ_i`.
    pub fn w(&self) -> &[Rat] {
        &self.w
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessianTerm {
    /// Indices `J` into the base generators.
    pub subset: Vec<usize>,
    /// `V(J)^2 ∏_{i∈J} γ_i`.
    pub coefficient: Rat,
    pub a_exponent: Vec<u32>,
    pub t_exponent: IntVec,
}

/// `H_f = Σ_J V(J)^2 ∏_{i∈J} γ_i a_i t^{v_i}` over nondegenerate `(d+1)`-subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessianExpansion {
    nvars: usize,
    terms: Vec<HessianTerm>,
}

impl HessianExpansion {
    pub fn terms(&self) -> &[HessianTerm] {
        &self.terms
    }

    /// The expansion as a polynomial in `x_1..x_n` (one variable per generator).
    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars);
        for t in &self.terms {
            p.add_term(t.a_exponent.clone(), t.coefficient.clone());
        }
        p
    }
}

pub fn hessian(fan: &Fan, gamma: &GammaWeights) -> Result<HessianExpansion> {
    let n = fan.len();
    let k = fan.rank();
    if k > n {
        return Err(Error::Precondition(format!("{n} generators cannot support a {k}-subset")));
    }
    let gens = fan.generators();
    let mut terms = Vec::new();
    for subset in (0..n).combinations(k) {
        let v = cone_volume(&subset.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>())?;
        if v.is_zero() {
            continue;
        }
        let mut coefficient = rat_int(&(&v * &v));
        let mut a_exponent = vec![0u32; n];
        let mut t_exponent = vec![Int::zero(); k];
        for &i in &subset {
            coefficient *= &gamma.values()[i];
            a_exponent[i] = 1;
            for (t, x) in t_exponent.iter_mut().zip(&gens[i]) {
                *t += x;
            }
        }
        if !fan.support().is_interior(&t_exponent) {
            return Err(Error::Invariant(format!(
                "Hessian term {subset:?} has non-interior exponent {t_exponent:?}"
            )));
        }
        terms.push(HessianTerm {
            subset,
            coefficient,
            a_exponent,
            t_exponent,
        });
    }
    Ok(HessianExpansion { nvars: n, terms })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesEntry {
    pub beta: IntVec,
    pub degree: Int,
    pub coefficient: Rat,
}

/// Coefficients of `a^β` for all effective `β` up to a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    pub entries: Vec<SeriesEntry>,
    pub bound: u32,
    pub ample: Vec<Int>,
    pub v0: IntVec,
}

impl SeriesTable {
    pub fn coefficient(&self, beta: &[Int]) -> Option<&Rat> {
        self.entries.iter().find(|e| e.beta == beta).map(|e| &e.coefficient)
    }

    /// True iff both tables have the same classes and coefficients.
    pub fn same_coefficients(&self, other: &SeriesTable) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.beta == b.beta && a.coefficient == b.coefficient)
    }

    /// `Σ_β c_β a^β` over the table, at explicit values of `a`.
    pub fn partial_sum(&self, a: &[Rat]) -> Rat {
        self.entries
            .iter()
            .map(|e| {
                let mut term = e.coefficient.clone();
                for (ai, b) in a.iter().zip(&e.beta) {
                    let k: i64 = b.try_into().expect("small exponent");
                    let p = num_traits::pow(ai.clone(), k.unsigned_abs() as usize);
                    term *= if k >= 0 { p } else { p.recip() };
                }
                term
            })
            .sum()
    }
}

/// Outcome of checking an exact identity over a range of classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub checked: usize,
    /// `(β, expected, found)` for every mismatch.
    pub violations: Vec<(IntVec, Rat, Rat)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The residue mirror map for a fan, a completion and an ample function.
#[derive(Clone, Debug)]
pub struct MirrorMap {
    completed: CompletedFan,
    jk: JkEngine,
    mori: MoriData,
}

impl MirrorMap {
    pub fn new(fan: &Fan, v0: Option<&[Int]>, ample: &[Int]) -> Result<Self> {
        let completed = complete(fan, v0)?;
        let jk = JkEngine::new(completed.fan())?;
        let mori = wall_relations(fan, ample)?;
        Ok(MirrorMap { completed, jk, mori })
    }

    pub fn with_tie_break(mut self, tie: TieBreak) -> Self {
        self.jk = self.jk.with_tie_break(tie);
        self
    }

    pub fn base(&self) -> &Fan {
        self.completed.base()
    }

    pub fn completed(&self) -> &CompletedFan {
        &self.completed
    }

    pub fn jk(&self) -> &JkEngine {
        &self.jk
    }

    pub fn mori(&self) -> &MoriData {
        &self.mori
    }

    pub fn effective_classes(&self, bound: u32) -> Result<Vec<IntVec>> {
        enumerate_effective(self.base(), &self.mori, bound)
    }

    /// `π(m) = Σ m_i v_i`.
    pub fn project(&self, m: &[u32]) -> IntVec {
        let mut out = vec![Int::zero(); self.base().rank()];
        for (k, g) in m.iter().zip(self.base().generators()) {
            for (o, x) in out.iter_mut().zip(g) {
                *o += x * Int::from(*k);
            }
        }
        out
    }

    fn check_interior(&self, m0: &[u32]) -> Result<()> {
        let l = self.project(m0);
        if !self.base().support().is_interior(&l) {
            return Err(Error::Precondition(format!(
                "monomial {m0:?} maps to {l:?}, which is not interior"
            )));
        }
        Ok(())
    }

    /// Coefficient of `a^{β - m0}` in `RM(t^{π(m0)})`.
    pub fn rm_coefficient(&self, m0: &[u32], beta: &[Int]) -> Result<Rat> {
        let n = self.base().len();
        if m0.len() != n || beta.len() != n {
            return Err(Error::Dimension(format!("expected exponents of length {n}")));
        }
        let deg: u32 = m0.iter().sum();
        if deg as usize != self.base().rank() {
            return Err(Error::Precondition(format!(
                "monomial {m0:?} has degree {deg}, expected {}",
                self.base().rank()
            )));
        }
        self.check_interior(m0)?;
        let image: IntVec = (0..self.base().rank())
            .map(|k| (0..n).map(|i| &beta[i] * &self.base().generators()[i][k]).sum())
            .collect();
        if image.iter().any(|x| !x.is_zero()) {
            return Err(Error::Precondition(format!("{beta:?} is not a relation")));
        }
        let mut exps = Vec::with_capacity(n + 1);
        exps.push(-1i64);
        for (m, b) in m0.iter().zip(beta) {
            let b: i64 = b.try_into().map_err(|_| Error::Limit("class too large".into()))?;
            exps.push(*m as i64 - b - 1);
        }
        self.jk.jk_residue(&exps)
    }

    /// Coefficients of `RM(P(a_1 t^{v_1}, ..., a_n t^{v_n}))` at every effective class up to `bound`.
    pub fn rm_series(&self, p: &Polynomial, bound: u32) -> Result<SeriesTable> {
        let classes = self.effective_classes(bound)?;
        self.rm_series_on(p, &classes, bound)
    }

    /// As [`rm_series`](Self::rm_series), on an explicit list of classes.
    pub fn rm_series_on(&self, p: &Polynomial, classes: &[IntVec], bound: u32) -> Result<SeriesTable> {
        let n = self.base().len();
        if p.nvars() != n {
            return Err(Error::Dimension(format!(
                "polynomial in {} variables, fan has {n} generators",
                p.nvars()
            )));
        }
        for (e, _) in p.terms() {
            let deg: u32 = e.iter().sum();
            if deg as usize != self.base().rank() {
                return Err(Error::Precondition(format!(
                    "monomial {e:?} has degree {deg}, expected {}",
                    self.base().rank()
                )));
            }
            self.check_interior(e)?;
        }
        let terms: Vec<(&Vec<u32>, &Rat)> = p.terms().collect();
        let entries: Vec<SeriesEntry> = classes
            .par_iter()
            .map(|beta| {
                let mut c = Rat::zero();
                for (e, coef) in &terms {
                    c += *coef * self.rm_coefficient(e, beta)?;
                }
                Ok(SeriesEntry {
                    beta: beta.clone(),
                    degree: self.mori.degree(beta),
                    coefficient: c,
                })
            })
            .collect::<Result<_>>()?;
        Ok(SeriesTable {
            entries,
            bound,
            ample: self.mori.ample().to_vec(),
            v0: self.completed.v0().clone(),
        })
    }

    /// `RM` of `Σ_i ⟨w, v_i⟩ a_i t^{v_i} · t^{π(l)}` vanishes at every class up to `bound`.
    pub fn verify_ideal_vanishing(&self, w: &[Int], l: &[u32], bound: u32) -> Result<IdentityReport> {
        let n = self.base().len();
        let gens = self.base().generators();
        if w.len() != self.base().rank() || l.len() != n {
            return Err(Error::Dimension("pairing vector or lift has the wrong length".into()));
        }
        let classes = self.effective_classes(bound)?;
        let mut violations = Vec::new();
        for beta in &classes {
            let mut total = Rat::zero();
            for i in 0..n {
                let c = dot(w, &gens[i]);
                if c.is_zero() {
                    continue;
                }
                let mut m = l.to_vec();
                m[i] += 1;
                total += rat_int(&c) * self.rm_coefficient(&m, beta)?;
            }
            if !total.is_zero() {
                violations.push((beta.clone(), Rat::zero(), total));
            }
        }
        Ok(IdentityReport {
            checked: classes.len(),
            violations,
        })
    }

    /// `RM(H_{f_γ})` equals `Σ_σ Vol(σ) ∏_{i∈σ} γ_i` at `β = 0` and vanishes elsewhere.
    pub fn verify_hessian_identity(&self, gamma: &GammaWeights, bound: u32) -> Result<IdentityReport> {
        let h = hessian(self.base(), gamma)?.to_polynomial();
        let table = self.rm_series(&h, bound)?;
        let base = self.base();
        let expected_zero: Rat = (0..base.max_cones().len())
            .map(|k| {
                let mut v = rat_int(&base.cone_volume(k));
                for &i in &base.max_cones()[k] {
                    v *= &gamma.values()[i];
                }
                v
            })
            .sum();
        let mut violations = Vec::new();
        for e in &table.entries {
            let expected = if e.beta.iter().all(|x| x.is_zero()) {
                expected_zero.clone()
            } else {
                Rat::zero()
            };
            if e.coefficient != expected {
                violations.push((e.beta.clone(), expected, e.coefficient.clone()));
            }
        }
        Ok(IdentityReport {
            checked: table.entries.len(),
            violations,
        })
    }
}

/// Lifts of the interior points of degree `deg`: for each, one nonnegative
/// exponent vector of total degree `deg` mapping to it (lexicographically first).
pub fn interior_lifts(mirror: &MirrorMap, deg: u32) -> BTreeMap<IntVec, Vec<u32>> {
    let n = mirror.base().len();
    let mut out = BTreeMap::new();
    for combo in (0..n).combinations_with_replacement(deg as usize) {
        let mut m = vec![0u32; n];
        for i in combo {
            m[i] += 1;
        }
        let l = mirror.project(&m);
        if mirror.base().support().is_interior(&l) {
            out.entry(l).or_insert(m);
        }
    }
    out
}
