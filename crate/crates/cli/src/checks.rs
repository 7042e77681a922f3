//! The subcommands: structural validation, series tables, the identity suite
//! and mixed volumes.

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_mirror::arith::content;
use toric_mirror::cayley::CayleyData;
use toric_mirror::fan::{LatticeMap, RelationLattice};
use toric_mirror::jk::{JkEngine, TieBreak};
use toric_mirror::mirror::{hessian, interior_lifts, GammaWeights, MirrorMap, SeriesTable};
use toric_mirror::mixed::{
    mixed_volumes_by_interpolation, mixed_volumes_by_simplices, verify_mixed_volume_theorem,
};
use toric_mirror::mp::mp_crosscheck;
use toric_mirror::{Error, Int, IntVec, Polynomial, Rat};

use crate::problem::{Problem, SeriesKind};
use crate::report::{small, CheckResult, Exact, MixedRecord, Report, SeriesDocument, SeriesRecord};

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub bound: Option<u32>,
    pub seed: u64,
}

impl Options {
    fn bound(&self, problem: &Problem) -> u32 {
        self.bound.unwrap_or(problem.bound)
    }
}

fn failure(default_check: &str, instance: &str, e: &Error) -> CheckResult {
    CheckResult::fail(e.check_name().unwrap_or(default_check), instance, vec![e.to_string()])
}

/// Everything a later stage needs once validation has passed.
pub struct Validated {
    pub mirror: MirrorMap,
    pub cayley: Option<(CayleyData, MirrorMap)>,
}

/// Runs the structural checks in order and stops at the first failure.
pub fn validate(problem: &Problem, report: &mut Report) -> Option<Validated> {
    let t = &problem.triangulation;
    match t.validate(&problem.polytope) {
        Ok(()) => report.push(CheckResult::pass(
            "triangulation",
            format!("{} simplices on {} points", t.simplices().len(), t.points().len()),
        )),
        Err(e) => {
            report.push(failure("triangulation", "triangulation", &e));
            return None;
        }
    }
    match problem.certified_triangulation() {
        Ok(c) => {
            let given = if t.lifting().is_some() { "given" } else { "found" };
            report.push(CheckResult::pass(
                "coherence",
                format!("{given} lifting {:?}", small(c.lifting().expect("certified")).unwrap_or_default()),
            ));
        }
        Err(e) => {
            report.push(failure("coherence", "lifting", &e));
            return None;
        }
    }
    let mirror = match problem.mirror() {
        Ok(m) => {
            report.push(CheckResult::pass(
                "completion",
                format!("v0 = {:?}", small(m.completed().v0()).unwrap_or_default()),
            ));
            m
        }
        Err(e) => {
            report.push(failure("completion", "fan", &e));
            return None;
        }
    };
    let cayley = match problem.cayley() {
        None => None,
        Some(Ok(c)) => match problem.cayley_mirror(&c) {
            Ok(m) => {
                report.push(CheckResult::pass(
                    "nef-partition",
                    format!("{} parts, Cayley fan of rank {}", c.r(), c.fan().rank()),
                ));
                Some((c, m))
            }
            Err(e) => {
                report.push(failure("nef-partition", "Cayley completion", &e));
                return None;
            }
        },
        Some(Err(e)) => {
            report.push(failure("nef-partition", "partition", &e));
            return None;
        }
    };
    let validated = Validated { mirror, cayley };
    if let Some(p) = &problem.polynomial {
        match check_polynomial(problem, &validated, p) {
            Ok(()) => report.push(CheckResult::pass("polynomial", format!("{} terms", p.len()))),
            Err(e) => {
                report.push(failure("polynomial", "polynomial", &e));
                return None;
            }
        }
    }
    Some(validated)
}

fn check_polynomial(problem: &Problem, v: &Validated, p: &Polynomial) -> toric_mirror::Result<()> {
    match (problem.series_kind(), &v.cayley) {
        (Some(SeriesKind::CompleteIntersection), Some((c, _))) => {
            if p.homogeneous_degree() != Some(c.base_dim() as u32) && !p.is_zero() {
                return Err(Error::Precondition(format!(
                    "polynomial in the nonzero points must be homogeneous of degree {}",
                    c.base_dim()
                )));
            }
            Ok(())
        }
        _ => v.mirror.rm_series(p, 0).map(|_| ()),
    }
}

fn series_document(kind: &'static str, table: &SeriesTable, lattice: &RelationLattice) -> anyhow::Result<SeriesDocument> {
    let records = table
        .entries
        .iter()
        .map(|e| {
            let mori = lattice
                .coordinates(&e.beta)
                .ok_or_else(|| anyhow::anyhow!("{:?} is not a relation", e.beta))?;
            Ok(SeriesRecord {
                beta: small(&e.beta)?,
                mori: small(&mori)?,
                degree: small(std::slice::from_ref(&e.degree))?[0],
                coefficient: Exact::from(&e.coefficient),
            })
        })
        .collect::<anyhow::Result<_>>()?;
    Ok(SeriesDocument {
        kind,
        bound: table.bound,
        ample: small(&table.ample)?,
        v0: small(&table.v0)?,
        relation_basis: lattice.basis().rows().iter().map(|r| small(r)).collect::<anyhow::Result<_>>()?,
        records,
    })
}

pub fn series(problem: &Problem, opts: &Options) -> anyhow::Result<Report> {
    let mut report = Report::new("series", &problem.name);
    let Some(v) = validate(problem, &mut report) else {
        return Ok(report);
    };
    let Some(p) = &problem.polynomial else {
        report.push(CheckResult::fail("series", "polynomial", vec!["the problem has no polynomial".into()]));
        return Ok(report);
    };
    let bound = opts.bound(problem);
    let (kind, table, lattice) = match (problem.series_kind(), &v.cayley) {
        (Some(SeriesKind::CompleteIntersection), Some((c, _))) => (
            "complete-intersection",
            c.ci_series(p, bound),
            RelationLattice::new(c.base_points(), LatticeMap::Base)?,
        ),
        _ => (
            "residue",
            v.mirror.rm_series(p, bound),
            RelationLattice::of_fan(v.mirror.base())?,
        ),
    };
    match table {
        Ok(t) => {
            report.push(CheckResult::pass("series", format!("{} classes up to degree {bound}", t.entries.len())));
            report.series = Some(series_document(kind, &t, &lattice)?);
        }
        Err(e) => report.push(failure("series", "series", &e)),
    }
    Ok(report)
}

fn monomials(n: usize, deg: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..n).combinations_with_replacement(deg).map(move |c| {
        let mut m = vec![0u32; n];
        for i in c {
            m[i] += 1;
        }
        m
    })
}

fn interior_monomials(mirror: &MirrorMap) -> Vec<Vec<u32>> {
    let fan = mirror.base();
    monomials(fan.len(), fan.rank())
        .filter(|m| fan.support().is_interior(&mirror.project(m)))
        .collect()
}

fn random_admissible(rng: &mut ChaCha8Rng, n: usize, degree: i64) -> Vec<i64> {
    let mut m: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
    let mut sum: i64 = m.iter().sum();
    while sum != degree {
        let i = rng.gen_range(0..n);
        let step = if sum > degree { -1 } else { 1 };
        m[i] += step;
        sum += step;
    }
    m
}

/// A second completion vector: `v0 - v_i` for the first generator that keeps it primitive.
fn alternative_mirror(mirror: &MirrorMap, ample: &[Int]) -> Option<MirrorMap> {
    let v0 = mirror.completed().v0();
    mirror.base().generators().iter().find_map(|g| {
        let w: IntVec = v0.iter().zip(g).map(|(a, b)| a - b).collect();
        if !content(&w).is_one() {
            return None;
        }
        MirrorMap::new(mirror.base(), Some(&w), ample).ok()
    })
}

fn hessian_check(label: &str, mirror: &MirrorMap, bound: u32) -> CheckResult {
    let fan = mirror.base();
    match mirror.verify_hessian_identity(&GammaWeights::ones(fan), bound) {
        Ok(r) => CheckResult::from_witnesses(
            "hessian-normalization",
            format!("{label}: Vol = {}, {} classes", fan.volume(), r.checked),
            r.violations
                .iter()
                .map(|(b, e, f)| format!("beta {b:?}: expected {e}, found {f}"))
                .collect(),
        ),
        Err(e) => failure("hessian-normalization", label, &e),
    }
}

fn ideal_check(label: &str, mirror: &MirrorMap, bound: u32) -> CheckResult {
    let rank = mirror.base().rank();
    let lifts = interior_lifts(mirror, rank as u32 - 1);
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for w in 0..rank {
        let mut e = vec![Int::zero(); rank];
        e[w] = Int::one();
        for l in lifts.values() {
            match mirror.verify_ideal_vanishing(&e, l, bound) {
                Ok(r) => {
                    checked += r.checked;
                    witnesses.extend(r.violations.iter().map(|(b, _, f)| format!("w = e{w}, l = {l:?}, beta {b:?}: {f}")));
                }
                Err(err) => witnesses.push(format!("w = e{w}, l = {l:?}: {err}")),
            }
        }
    }
    CheckResult::from_witnesses(
        "ideal-vanishing",
        format!("{label}: {} basis vectors, {} lifts, {checked} classes", rank, lifts.len()),
        witnesses,
    )
}

fn mp_check(label: &str, mirror: &MirrorMap, bound: u32, extra: Option<&Polynomial>) -> CheckResult {
    let classes = match mirror.effective_classes(bound) {
        Ok(c) => c,
        Err(e) => return failure("morrison-plesser", label, &e),
    };
    let n = mirror.base().len();
    let mut polys: Vec<Polynomial> = interior_monomials(mirror)
        .into_iter()
        .take(12)
        .map(|m| Polynomial::monomial(n, m, Rat::one()))
        .collect();
    polys.extend(extra.cloned());
    let mut witnesses = Vec::new();
    let mut pairs = 0;
    for beta in &classes {
        for p in &polys {
            pairs += 1;
            match mp_crosscheck(mirror, p, beta) {
                Ok((a, b)) if a == b => {}
                Ok((a, b)) => witnesses.push(format!("P = {p}, beta {beta:?}: residue {a}, evaluation {b}")),
                Err(e) => witnesses.push(format!("P = {p}, beta {beta:?}: {e}")),
            }
        }
    }
    CheckResult::from_witnesses("morrison-plesser", format!("{label}: {pairs} (P, beta) pairs"), witnesses)
}

fn completion_check(label: &str, mirror: &MirrorMap, ample: &[Int], bound: u32, p: Option<&Polynomial>) -> CheckResult {
    let Some(other) = alternative_mirror(mirror, ample) else {
        return CheckResult::fail("completion-independence", label, vec!["no second completion found".into()]);
    };
    let h = match hessian(mirror.base(), &GammaWeights::ones(mirror.base())) {
        Ok(h) => h.to_polynomial(),
        Err(e) => return failure("completion-independence", label, &e),
    };
    let interior = interior_monomials(mirror);
    let mut polys = vec![h];
    if let Some(m) = interior.first() {
        polys.push(Polynomial::monomial(mirror.base().len(), m.clone(), Rat::one()));
    }
    polys.extend(p.cloned());
    let mut witnesses = Vec::new();
    for q in &polys {
        match (mirror.rm_series(q, bound), other.rm_series(q, bound)) {
            (Ok(a), Ok(b)) if a.same_coefficients(&b) => {}
            (Ok(_), Ok(_)) => witnesses.push(format!("tables differ for {q}")),
            (Err(e), _) | (_, Err(e)) => witnesses.push(format!("{q}: {e}")),
        }
    }
    CheckResult::from_witnesses(
        "completion-independence",
        format!(
            "{label}: v0 = {:?} and {:?}",
            small(mirror.completed().v0()).unwrap_or_default(),
            small(other.completed().v0()).unwrap_or_default()
        ),
        witnesses,
    )
}

fn jk_checks(label: &str, mirror: &MirrorMap, seed: u64) -> Vec<CheckResult> {
    let completed = mirror.completed().fan();
    let base = mirror.jk();
    let n = completed.len();
    let degree = -(base.dim() as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let engines: Vec<JkEngine> = (1..=3)
        .filter_map(|s| JkEngine::new(completed).ok().map(|e| e.with_tie_break(TieBreak::Seeded(seed.wrapping_add(s)))))
        .collect();
    let mut witnesses = Vec::new();
    for _ in 0..100 {
        let m = random_admissible(&mut rng, n, degree);
        let value = base.jk_residue(&m);
        for e in &engines {
            let other = e.jk_residue(&m);
            if other != value {
                witnesses.push(format!("m = {m:?}: {value:?} vs {other:?}"));
            }
        }
    }
    out.push(CheckResult::from_witnesses(
        "jk-tie-break",
        format!("{label}: 100 monomials, {} seeds", engines.len()),
        witnesses,
    ));

    let mut witnesses = Vec::new();
    let mut cases = 0;
    for _ in 0..5000 {
        if cases == 50 {
            break;
        }
        let m = random_admissible(&mut rng, n, degree);
        let support: Vec<usize> = (0..n).filter(|&i| m[i] >= 0).collect();
        if completed.max_cones().iter().any(|c| support.iter().all(|i| c.contains(i))) {
            continue;
        }
        cases += 1;
        match base.jk_residue(&m) {
            Ok(v) if v.is_zero() => {}
            Ok(v) => witnesses.push(format!("m = {m:?}: {v}")),
            Err(e) => witnesses.push(format!("m = {m:?}: {e}")),
        }
    }
    out.push(CheckResult::from_witnesses(
        "jk-outside-cone",
        format!("{label}: {cases} monomials"),
        witnesses,
    ));

    let mut witnesses = Vec::new();
    let mut cases = 0;
    if let Ok(lattice) = RelationLattice::of_fan(mirror.base()) {
        let monomials = interior_monomials(mirror);
        let mut candidates: Vec<IntVec> =
            mirror.mori().walls().iter().map(|w| w.iter().map(|x| -x).collect()).collect();
        for _ in 0..20 {
            let c: IntVec = (0..lattice.rank()).map(|_| Int::from(rng.gen_range(-2..=2))).collect();
            candidates.push(lattice.from_coordinates(&c));
        }
        for beta in candidates.iter().filter(|b| !mirror.mori().in_mori_cone(b)) {
            for m0 in monomials.iter().take(3) {
                cases += 1;
                match mirror.rm_coefficient(m0, beta) {
                    Ok(v) if v.is_zero() => {}
                    Ok(v) => witnesses.push(format!("beta {beta:?}, m0 {m0:?}: {v}")),
                    Err(e) => witnesses.push(format!("beta {beta:?}, m0 {m0:?}: {e}")),
                }
            }
        }
    }
    out.push(CheckResult::from_witnesses(
        "off-mori-vanishing",
        format!("{label}: {cases} (beta, monomial) pairs"),
        witnesses,
    ));
    out
}

fn cayley_checks(c: &CayleyData, mirror: &MirrorMap, bound: u32, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut witnesses = Vec::new();
    let mut pairs = 0;
    match c.effective_classes(bound) {
        Ok(classes) => {
            for beta in &classes {
                for m in monomials(c.n(), c.base_dim()).take(15) {
                    pairs += 1;
                    let p = Polynomial::monomial(c.n(), m.clone(), Rat::one());
                    match c.ci_crosscheck(mirror, &p, beta) {
                        Ok((a, b)) if a == b => {}
                        Ok((a, b)) => witnesses.push(format!("m = {m:?}, beta {beta:?}: evaluation {a}, residue {b}")),
                        Err(e) => witnesses.push(format!("m = {m:?}, beta {beta:?}: {e}")),
                    }
                }
            }
        }
        Err(e) => witnesses.push(e.to_string()),
    }
    out.push(CheckResult::from_witnesses(
        "complete-intersection",
        format!("{pairs} (P, beta) pairs"),
        witnesses,
    ));

    let mut witnesses = Vec::new();
    let mut cases = 0;
    match JkEngine::new(c.base_fan()) {
        Ok(base_jk) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let target = -(base_jk.dim() as i64);
            for trial in 0..30u32 {
                let k = trial % 3;
                let part = trial as usize % c.r();
                let m = random_admissible(&mut rng, c.n(), target - k as i64);
                cases += 1;
                match c.substitution_sides(&base_jk, mirror, &m, part, k) {
                    Ok((a, b)) if a == b => {}
                    Ok((a, b)) => witnesses.push(format!("m = {m:?}, part {part}, k = {k}: {a} vs {b}")),
                    Err(e) => witnesses.push(format!("m = {m:?}, part {part}, k = {k}: {e}")),
                }
            }
        }
        Err(e) => witnesses.push(e.to_string()),
    }
    out.push(CheckResult::from_witnesses(
        "pushforward",
        format!("{cases} monomials, substitution powers 0..2"),
        witnesses,
    ));
    out
}

fn mixed_records(c: &CayleyData, mirror: &MirrorMap, bound: u32) -> (Vec<CheckResult>, Vec<MixedRecord>) {
    let mut checks = Vec::new();
    let by_simplices = mixed_volumes_by_simplices(c);
    match mixed_volumes_by_interpolation(c) {
        Ok(by_interpolation) if by_interpolation == by_simplices => {
            checks.push(CheckResult::pass("mixed-volume-routes", "simplices = interpolation"))
        }
        Ok(by_interpolation) => checks.push(CheckResult::fail(
            "mixed-volume-routes",
            "simplices = interpolation",
            vec![format!("{by_simplices:?} vs {by_interpolation:?}")],
        )),
        Err(e) => checks.push(failure("mixed-volume-routes", "interpolation", &e)),
    }
    let mut records = Vec::new();
    match verify_mixed_volume_theorem(c, mirror, bound) {
        Ok(report) => {
            let mut witnesses = Vec::new();
            for row in &report.rows {
                if !row.passed() {
                    witnesses.push(format!("k = {:?}: residue {:?}, volume {}", row.k, row.residue, row.volume));
                }
                records.push(MixedRecord {
                    k: row.k.clone(),
                    kbar: row.kbar.clone(),
                    mixed_volume: Exact::from(&row.volume),
                    mixed_residue: row.residue.as_ref().ok().map(Exact::from),
                });
            }
            checks.push(CheckResult::from_witnesses(
                "mixed-volume",
                format!("{} degrees through bound {bound}", report.rows.len()),
                witnesses,
            ));
        }
        Err(e) => checks.push(failure("mixed-volume", "theorem", &e)),
    }
    (checks, records)
}

pub fn verify(problem: &Problem, opts: &Options) -> anyhow::Result<Report> {
    let mut report = Report::new("verify", &problem.name);
    let Some(v) = validate(problem, &mut report) else {
        return Ok(report);
    };
    let bound = opts.bound(problem);
    let residue_poly = match problem.series_kind() {
        Some(SeriesKind::Residue) => problem.polynomial.as_ref(),
        _ => None,
    };
    let ample = problem.certified_triangulation()?.lifting().expect("certified").to_vec();
    let mut fans: Vec<(&str, &MirrorMap, Vec<Int>, Option<&Polynomial>)> = vec![("fan", &v.mirror, ample, residue_poly)];
    if let Some((c, m)) = &v.cayley {
        if c.r() > 1 {
            fans.push(("cayley", m, c.ample().to_vec(), None));
        }
    }
    for (label, mirror, ample, p) in &fans {
        log::info!("identity suite on the {label}");
        report.push(hessian_check(label, mirror, bound));
        report.push(ideal_check(label, mirror, bound));
        report.push(mp_check(label, mirror, bound.min(4), *p));
        report.push(completion_check(label, mirror, ample, bound, *p));
        report.extend(jk_checks(label, mirror, opts.seed));
    }
    if let Some((c, m)) = &v.cayley {
        log::info!("nef-partition checks");
        report.extend(cayley_checks(c, m, bound.min(4), opts.seed));
        let (checks, records) = mixed_records(c, m, bound);
        report.extend(checks);
        report.mixed_volumes = Some(records);
    }
    Ok(report)
}

pub fn mixed_volume(problem: &Problem, opts: &Options) -> anyhow::Result<Report> {
    let mut report = Report::new("mixed-volume", &problem.name);
    let Some(v) = validate(problem, &mut report) else {
        return Ok(report);
    };
    let Some((c, m)) = &v.cayley else {
        report.push(CheckResult::fail("nef-partition", "mixed volume", vec!["the problem has no nef-partition".into()]));
        return Ok(report);
    };
    let (checks, records) = mixed_records(c, m, opts.bound(problem));
    report.extend(checks);
    report.mixed_volumes = Some(records);
    Ok(report)
}
