//! Morrison-Plesser fans: a complete simplicial fan with generators
//! duplicated along a relation `β`, and evaluation of the classes `Φ_β`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Int, IntVec, Rat};
use crate::error::{Error, Result};
use crate::fan::SimplicialFan;
use crate::jk::evaluate_top_class_with;
use crate::mirror::MirrorMap;
use crate::poly::Polynomial;

/// The Morrison-Plesser fan of a complete simplicial fan along `β`.
///
/// Generator `(i, j)` is copy `j` of the original generator `i`, with
/// `j = 0..=β_i⁺`. In `M ⊕ Z^{|β⁺|}` the copies are
/// `v_{i,0} = (v_i, -Σ_{j≥1} f_{i,j})` and `v_{i,j} = (0, f_{i,j})`, so every
/// relation among the copies has equal coefficients on the copies of `i`.
#[derive(Clone, Debug)]
pub struct MpFan {
    beta: Vec<i64>,
    copies: Vec<(usize, usize)>,
    zero_copy: Vec<usize>,
    fan: SimplicialFan,
}

impl MpFan {
    pub fn fan(&self) -> &SimplicialFan {
        &self.fan
    }

    pub fn beta(&self) -> &[i64] {
        &self.beta
    }

    /// `(original index, copy)` for each generator.
    pub fn copies(&self) -> &[(usize, usize)] {
        &self.copies
    }

    /// Generator index of `v_{i,0}`.
    pub fn zero_copy(&self, i: usize) -> usize {
        self.zero_copy[i]
    }

    pub fn rank(&self) -> usize {
        self.fan.rank()
    }
}

fn small_beta(beta: &[Int]) -> Result<Vec<i64>> {
    beta.iter()
        .map(|b| b.to_i64().ok_or_else(|| Error::Limit(format!("class entry {b} too large"))))
        .collect()
}

pub fn mp_fan(base: &SimplicialFan, beta: &[Int]) -> Result<MpFan> {
    let n = base.len();
    if beta.len() != n {
        return Err(Error::Dimension(format!("class of length {}, fan has {n} generators", beta.len())));
    }
    let r = base.rank();
    for k in 0..r {
        let s: Int = (0..n).map(|i| &beta[i] * &base.generators()[i][k]).sum();
        if !s.is_zero() {
            return Err(Error::Precondition(format!("{beta:?} is not a relation among the generators")));
        }
    }
    let b = small_beta(beta)?;
    let plus: Vec<usize> = b.iter().map(|&x| x.max(0) as usize).collect();
    let extra: usize = plus.iter().sum();
    let rank = r + extra;
    let mut copies = Vec::new();
    let mut zero_copy = Vec::with_capacity(n);
    let mut generators = Vec::new();
    let mut offset = r;
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        let mut head: IntVec = base.generators()[i].clone();
        head.resize(rank, Int::zero());
        for j in 1..=plus[i] {
            head[offset + j - 1] = -Int::one();
        }
        zero_copy.push(generators.len());
        copies.push((i, 0));
        generators.push(head);
        for j in 1..=plus[i] {
            let mut g = vec![Int::zero(); rank];
            g[offset + j - 1] = Int::one();
            copies.push((i, j));
            generators.push(g);
        }
        offset += plus[i];
    }
    let index: BTreeMap<(usize, usize), usize> = copies.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut cones = Vec::new();
    for sigma in base.max_cones() {
        let outside: Vec<usize> = (0..n).filter(|i| !sigma.contains(i)).collect();
        let choices: Vec<Vec<usize>> = outside.iter().map(|&i| (0..=plus[i]).collect()).collect();
        for choice in choices.into_iter().multi_cartesian_product() {
            let mut cone = Vec::with_capacity(rank);
            for i in 0..n {
                let skip = outside.iter().position(|&o| o == i).map(|p| choice[p]);
                for j in 0..=plus[i] {
                    if Some(j) != skip {
                        cone.push(index[&(i, j)]);
                    }
                }
            }
            cones.push(cone);
        }
    }
    let fan = SimplicialFan::new(generators, cones)?;
    fan.check_complete()?;
    Ok(MpFan {
        beta: b,
        copies,
        zero_copy,
        fan,
    })
}

/// A factor `(-Σ_{i∈E} χ_{i,0})^k` of the class `Φ_β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartFactor {
    pub part: Vec<usize>,
    pub exponent: u32,
}

/// `⟨P(χ_{·,0}) χ_{·,0}^{β⁻} ∏ (-Σ_E χ_{·,0})^k⟩` on the Morrison-Plesser fan.
pub fn mp_evaluate(base: &SimplicialFan, p: &Polynomial, beta: &[Int], factors: &[PartFactor]) -> Result<Rat> {
    let mp = mp_fan(base, beta)?;
    mp_evaluate_on(&mp, p, factors)
}

pub fn mp_evaluate_on(mp: &MpFan, p: &Polynomial, factors: &[PartFactor]) -> Result<Rat> {
    let n = mp.zero_copy.len();
    if p.nvars() != n {
        return Err(Error::Dimension(format!("polynomial in {} variables, fan has {n} generators", p.nvars())));
    }
    if p.is_zero() {
        return Ok(Rat::zero());
    }
    let deg_p = p
        .homogeneous_degree()
        .ok_or_else(|| Error::Precondition("polynomial is not homogeneous".into()))? as usize;
    let minus: Vec<usize> = mp.beta.iter().map(|&x| (-x).max(0) as usize).collect();
    let degree = deg_p + minus.iter().sum::<usize>() + factors.iter().map(|f| f.exponent as usize).sum::<usize>();
    if degree != mp.rank() {
        return Err(Error::Precondition(format!(
            "class has degree {degree}, the Morrison-Plesser fan has rank {}",
            mp.rank()
        )));
    }
    evaluate_top_class_with(mp.fan(), degree, |chi| {
        let zero: Vec<Rat> = (0..n).map(|i| chi[mp.zero_copy[i]].clone()).collect();
        let mut value = p.eval(&zero);
        for (x, &k) in zero.iter().zip(&minus) {
            if k > 0 {
                value *= num_traits::pow(x.clone(), k);
            }
        }
        for f in factors {
            let s: Rat = f.part.iter().map(|&i| -zero[i].clone()).sum();
            value *= num_traits::pow(s, f.exponent as usize);
        }
        value
    })
}

/// The two sides of the Morrison-Plesser identity for `P` (in `x_1..x_n`)
/// and `β ∈ R(Σ)`: the JK residue route and the Brion evaluation route.
pub fn mp_crosscheck(mirror: &MirrorMap, p: &Polynomial, beta: &[Int]) -> Result<(Rat, Rat)> {
    let n = mirror.base().len();
    let mut jk_side = Rat::zero();
    for (e, c) in p.terms() {
        jk_side += c * mirror.rm_coefficient(e, beta)?;
    }
    let lifted = p.remap(n + 1, &(1..=n).collect::<Vec<_>>());
    let mut hat_beta = vec![Int::zero()];
    hat_beta.extend(beta.iter().cloned());
    let mp_side = mp_evaluate(mirror.completed().fan(), &lifted, &hat_beta, &[])?;
    Ok((jk_side, mp_side))
}

/// Number of maximal cones the complement rule produces.
pub fn expected_cone_count(base: &SimplicialFan, beta: &[Int]) -> usize {
    base.max_cones()
        .iter()
        .map(|sigma| {
            (0..base.len())
                .filter(|i| !sigma.contains(i))
                .map(|i| if beta[i].is_positive() { beta[i].to_usize().unwrap() + 1 } else { 1 })
                .product::<usize>()
        })
        .sum()
}
