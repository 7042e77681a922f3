//! Jeffrey-Kirwan residues on the relation space of a complete simplicial
//! fan, and the Brion evaluation map on its top cohomology.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{rank_rat, rat_int, solve, to_rat_matrix, transpose, Int, Rat};
use crate::error::{Error, Result};
use crate::fan::{RelationLattice, LatticeMap, SimplicialFan};
use crate::lattice::IntMatrix;
use crate::poly::Polynomial;

/// Upper bound on live fraction terms during one reduction.
pub const TERM_CAP: usize = 1_000_000;

/// Coordinate functions `x_i` restricted to the relation space, written in
/// kernel-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceForms {
    basis: IntMatrix,
    forms: Vec<Vec<Rat>>,
}

impl SubspaceForms {
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// `forms()[i]` represents `x_i` restricted to the relation space.
    pub fn forms(&self) -> &[Vec<Rat>] {
        &self.forms
    }

    /// Dimension of the relation space.
    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// `Σ_i c_i x_i` restricted to the relation space.
    pub fn combine(&self, c: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (ci, f) in c.iter().zip(&self.forms) {
            for (o, x) in out.iter_mut().zip(f) {
                *o += ci * x;
            }
        }
        out
    }
}

pub fn restricted_forms(fan: &SimplicialFan) -> Result<SubspaceForms> {
    let lattice = RelationLattice::new(fan.generators(), LatticeMap::Completed)?;
    let basis = lattice.basis().clone();
    let forms = (0..fan.len())
        .map(|i| basis.column(i).iter().map(rat_int).collect())
        .collect();
    Ok(SubspaceForms { basis, forms })
}

/// How the reduction picks the split variable and the basis subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Lowest numerator index and the lexicographically smallest basis.
    #[default]
    Lowest,
    /// Randomized choices driven by a seeded generator.
    Seeded(u64),
}

type Exps = Vec<u32>;

/// JK residue functional attached to a complete simplicial fan.
#[derive(Clone, Debug)]
pub struct JkEngine {
    fan: SimplicialFan,
    forms: SubspaceForms,
    tie: TieBreak,
}

impl JkEngine {
    pub fn new(fan: &SimplicialFan) -> Result<Self> {
        Ok(JkEngine {
            fan: fan.clone(),
            forms: restricted_forms(fan)?,
            tie: TieBreak::Lowest,
        })
    }

    pub fn with_tie_break(mut self, tie: TieBreak) -> Self {
        self.tie = tie;
        self
    }

    pub fn fan(&self) -> &SimplicialFan {
        &self.fan
    }

    pub fn forms(&self) -> &SubspaceForms {
        &self.forms
    }

    /// Dimension of the relation space; admissible monomials have degree `-dim`.
    pub fn dim(&self) -> usize {
        self.forms.dim()
    }

    /// Residue of `1 / ∏_{i∈I} x_i` for a basis `I`: `1/Vol` of the
    /// complementary cone if it is a maximal cone, else 0.
    pub fn jk_basic(&self, indices: &[usize]) -> Result<Rat> {
        if indices.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "basic fraction needs {} indices, got {}",
                self.dim(),
                indices.len()
            )));
        }
        let rows: Vec<Vec<Rat>> = indices.iter().map(|&i| self.forms.forms[i].clone()).collect();
        if rank_rat(&rows) < self.dim() {
            return Ok(Rat::zero());
        }
        let complement: Vec<usize> = (0..self.fan.len()).filter(|i| !indices.contains(i)).collect();
        Ok(match self.fan.max_cone_volume(&complement) {
            Some(v) => Rat::new(Int::one(), v.clone()),
            None => Rat::zero(),
        })
    }

    /// Residue of the Laurent monomial `x^m`.
    pub fn jk_residue(&self, m: &[i64]) -> Result<Rat> {
        let n = self.fan.len();
        if m.len() != n {
            return Err(Error::Dimension(format!("exponent of length {}, expected {n}", m.len())));
        }
        let degree: i64 = m.iter().sum();
        if degree != -(self.dim() as i64) {
            return Err(Error::Precondition(format!(
                "monomial degree {degree}, expected {}",
                -(self.dim() as i64)
            )));
        }
        let num: Exps = m.iter().map(|&e| e.max(0) as u32).collect();
        let den: Exps = m.iter().map(|&e| (-e).max(0) as u32).collect();
        let mut level: BTreeMap<(Exps, Exps), Rat> = BTreeMap::new();
        level.insert((num, den), Rat::one());
        let mut rng = match self.tie {
            TieBreak::Lowest => None,
            TieBreak::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        };
        let mut total = Rat::zero();
        while !level.is_empty() {
            let mut next: BTreeMap<(Exps, Exps), Rat> = BTreeMap::new();
            for ((num, den), coef) in level {
                let support: Vec<usize> = (0..n).filter(|&i| den[i] > 0).collect();
                let Some(basis) = self.spanning_subset(&support, rng.as_mut()) else {
                    continue;
                };
                let split: Vec<usize> = (0..n).filter(|&i| num[i] > 0).collect();
                if split.is_empty() {
                    if basis.len() == support.len() && den.iter().all(|&e| e <= 1) {
                        total += &coef * self.jk_basic(&support)?;
                    }
                    continue;
                }
                let j = match rng.as_mut() {
                    Some(r) => *split.choose(r).expect("nonempty"),
                    None => split[0],
                };
                let a = transpose(&basis.iter().map(|&b| self.forms.forms[b].clone()).collect::<Vec<_>>());
                let c = solve(&a, &self.forms.forms[j]).ok_or_else(|| {
                    Error::Invariant("numerator form outside the span of a spanning set".into())
                })?;
                for (&b, cb) in basis.iter().zip(&c) {
                    if cb.is_zero() {
                        continue;
                    }
                    let mut nn = num.clone();
                    nn[j] -= 1;
                    let mut nd = den.clone();
                    nd[b] -= 1;
                    let value = &coef * cb;
                    let slot = next.entry((nn, nd)).or_insert_with(Rat::zero);
                    *slot += value;
                }
            }
            next.retain(|_, c| !c.is_zero());
            if next.len() > TERM_CAP {
                return Err(Error::Limit(format!("more than {TERM_CAP} fraction terms")));
            }
            level = next;
        }
        Ok(total)
    }

    /// A subset of `support` whose forms are a basis, chosen greedily in
    /// index order (or a shuffled order); `None` if the forms do not span.
    fn spanning_subset(&self, support: &[usize], rng: Option<&mut ChaCha8Rng>) -> Option<Vec<usize>> {
        let k = self.dim();
        let mut order = support.to_vec();
        if let Some(r) = rng {
            order.shuffle(r);
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(k);
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(k);
        for i in order {
            rows.push(self.forms.forms[i].clone());
            if rank_rat(&rows) == rows.len() {
                chosen.push(i);
                if chosen.len() == k {
                    break;
                }
            } else {
                rows.pop();
            }
        }
        if chosen.len() < k {
            return None;
        }
        chosen.sort_unstable();
        Some(chosen)
    }

    /// Residue of `P(x) / x^{1}`, i.e. the JK side of the evaluation bridge.
    pub fn residue_over_all(&self, p: &Polynomial) -> Result<Rat> {
        let mut total = Rat::zero();
        for (e, c) in p.terms() {
            let m: Vec<i64> = e.iter().map(|&k| k as i64 - 1).collect();
            total += c * self.jk_residue(&m)?;
        }
        Ok(total)
    }
}

/// Moment-curve sample points `(1, t, t^2, ...)` with `t` running through primes.
const SAMPLE_PARAMETERS: [i64; 12] = [101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157];

/// Brion's evaluation of a top-degree class, given as a function of the
/// conewise coordinates `χ_0..χ_{N-1}` (zero off the cone).
pub fn evaluate_top_class_with(
    fan: &SimplicialFan,
    degree: usize,
    f: impl Fn(&[Rat]) -> Rat,
) -> Result<Rat> {
    if degree != fan.rank() {
        return Err(Error::Dimension(format!(
            "class of degree {degree} on a fan of rank {}",
            fan.rank()
        )));
    }
    #[allow(clippy::type_complexity)]
    let cones: Vec<(Vec<Vec<Rat>>, &Vec<usize>, Rat)> = fan
        .max_cones()
        .iter()
        .map(|c| {
            let a = transpose(&to_rat_matrix(&c.iter().map(|&i| fan.generators()[i].clone()).collect::<Vec<_>>()));
            let vol = rat_int(fan.max_cone_volume(c).expect("maximal cone"));
            (a, c, vol)
        })
        .collect();
    let mut values: Vec<Rat> = Vec::new();
    for &t in &SAMPLE_PARAMETERS {
        let z: Vec<Rat> = (0..fan.rank())
            .map(|k| num_traits::pow(Rat::from_integer(Int::from(t)), k))
            .collect();
        let mut sum = Rat::zero();
        let mut pole = false;
        for (a, c, vol) in &cones {
            let y = solve(a, &z).expect("full-rank cone");
            if y.iter().any(|v| v.is_zero()) {
                pole = true;
                break;
            }
            let mut chi = vec![Rat::zero(); fan.len()];
            for (&i, yi) in c.iter().zip(&y) {
                chi[i] = yi.clone();
            }
            let phi: Rat = y.iter().product();
            sum += f(&chi) / (phi * vol);
        }
        if pole {
            log::debug!("sample point t = {t} meets a wall, skipping");
            continue;
        }
        values.push(sum);
        if values.len() == 2 {
            break;
        }
    }
    match values.as_slice() {
        [a, b] if a == b => Ok(a.clone()),
        [a, b] => Err(Error::Invariant(format!(
            "evaluation is not constant: {a} vs {b} at two sample points"
        ))),
        _ => Err(Error::Limit("every sample point met a wall".into())),
    }
}

/// Brion's evaluation of a homogeneous polynomial in the classes `χ_i`.
pub fn evaluate_top_class(fan: &SimplicialFan, p: &Polynomial) -> Result<Rat> {
    if p.nvars() != fan.len() {
        return Err(Error::Dimension(format!(
            "polynomial in {} variables on a fan with {} generators",
            p.nvars(),
            fan.len()
        )));
    }
    if p.is_zero() {
        return Ok(Rat::zero());
    }
    let degree = p
        .homogeneous_degree()
        .ok_or_else(|| Error::Precondition("class is not homogeneous".into()))?;
    evaluate_top_class_with(fan, degree as usize, |chi| p.eval(chi))
}
