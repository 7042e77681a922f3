//! Exact two-phase simplex method over `Q` with Bland's rule.
//!
//! Solves `max c·x` subject to `A x = b`, `x >= 0`. Used for coherence
//! certificates, Farkas cone membership and simplex intersection tests; all
//! of these are tiny, so a dense tableau is enough.

use num_traits::{Signed, Zero};

use crate::arith::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj` over the columns in `0..active`. Returns false if unbounded.
    fn optimize(&mut self, obj: &[Rat], active: usize) -> bool {
        loop {
            let reduced = |j: usize| -> Rat {
                let mut r = obj[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() && !obj[b].is_zero() {
                        r -= &obj[b] * &self.rows[i][j];
                    }
                }
                r
            };
            let entering = (0..active)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| reduced(j).is_positive());
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(Rat, usize, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &best {
                        None => true,
                        Some((br, _, bb)) => ratio < *br || (ratio == *br && self.basis[i] < *bb),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            match best {
                Some((_, r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximizes `c·x` subject to `a x = b`, `x >= 0`.
pub fn maximize(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    if m == 0 {
        if c.iter().any(|x| x.is_positive()) {
            return LpOutcome::Unbounded;
        }
        return LpOutcome::Optimal {
            x: vec![Rat::zero(); n],
            value: Rat::zero(),
        };
    }
    // Phase one: artificial columns n..n+m.
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<Rat> = row
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        r.extend((0..m).map(|k| if k == i { Rat::from_integer(1.into()) } else { Rat::zero() }));
        r.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        width,
    };
    let mut phase1 = vec![Rat::zero(); width];
    for x in phase1.iter_mut().skip(n) {
        *x = -Rat::from_integer(1.into());
    }
    t.optimize(&phase1, width);
    let infeas: Rat = (0..m)
        .filter(|&i| t.basis[i] >= n)
        .map(|i| t.rhs(i).clone())
        .sum();
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive remaining artificial variables out of the basis.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    let mut obj = c.to_vec();
    obj.resize(width, Rat::zero());
    if !t.optimize(&obj, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bcol) in t.basis.iter().enumerate() {
        if bcol < n {
            x[bcol] = t.rhs(i).clone();
        }
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { x, value }
}

/// A point of `{x >= 0 : a x = b}`, if any.
pub fn feasible_point(a: &[Vec<Rat>], b: &[Rat], nvars: usize) -> Option<Vec<Rat>> {
    match maximize(a, b, &vec![Rat::zero(); nvars]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}
