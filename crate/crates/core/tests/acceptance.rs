//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact rational equalities (tolerance 0) unless a line
//! says otherwise. Run with `cargo test -p toric-mirror --test acceptance`.

use std::collections::BTreeMap;
use std::time::Instant;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_mirror::arith::{rat, rat_int, IntVec};
use toric_mirror::artinian::{artinian_residue, specialize};
use toric_mirror::cayley::CayleyData;
use toric_mirror::fan::RelationLattice;
use toric_mirror::fixtures::{projective_plane, segment, square, thin_triangle, Example};
use toric_mirror::jk::{JkEngine, TieBreak};
use toric_mirror::lattice::normalized_volume;
use toric_mirror::mirror::{GammaWeights, MirrorMap};
use toric_mirror::mixed::{
    interpolate, mixed_volume_by, mixed_volumes_by_interpolation, mixed_volumes_by_simplices,
    verify_mixed_volume_theorem, Route,
};
use toric_mirror::mp::mp_crosscheck;
use toric_mirror::{Int, Polynomial, Rat};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: toric_mirror::Error) -> String {
    e.to_string()
}

/// Monomials of total degree `rank` whose image is interior.
fn interior_monomials(mirror: &MirrorMap) -> Vec<Vec<u32>> {
    let fan = mirror.base();
    (0..fan.len())
        .combinations_with_replacement(fan.rank())
        .map(|c| {
            let mut m = vec![0u32; fan.len()];
            for i in c {
                m[i] += 1;
            }
            m
        })
        .filter(|m| fan.support().is_interior(&mirror.project(m)))
        .collect()
}

fn test_polynomial(mirror: &MirrorMap) -> Polynomial {
    let n = mirror.base().len();
    let mut p = Polynomial::zero(n);
    for (i, m) in interior_monomials(mirror).into_iter().enumerate() {
        p.add_term(m, rat(i as i64 % 5 + 1, (i as i64 % 3) + 1));
    }
    p
}

fn hessian_normalization(ex: &Example) -> Outcome {
    let mirror = ex.mirror(None).map_err(err)?;
    let fan = mirror.base();
    let vol = normalized_volume(fan.triangulation().points()).map_err(err)?;
    let report = mirror
        .verify_hessian_identity(&GammaWeights::ones(fan), 6)
        .map_err(err)?;
    println!(
        "    {}: Vol = {} (fan volume {}), {} classes, {} violations",
        ex.name,
        vol,
        fan.volume(),
        report.checked,
        report.violations.len()
    );
    ensure(fan.volume() == vol, || format!("{}: fan volume {} != {vol}", ex.name, fan.volume()))?;
    ensure(report.passed(), || format!("{}: {:?}", ex.name, report.violations))
}

fn ideal_vanishing(ex: &Example) -> Outcome {
    let mirror = ex.mirror(None).map_err(err)?;
    let fan = mirror.base();
    let rank = fan.rank();
    let lifts = toric_mirror::mirror::interior_lifts(&mirror, rank as u32 - 1);
    ensure(!lifts.is_empty(), || format!("{}: no interior points in degree {}", ex.name, rank - 1))?;
    let mut checked = 0;
    for w in 0..rank {
        let mut e = vec![Int::zero(); rank];
        e[w] = Int::one();
        for l in lifts.values() {
            let report = mirror.verify_ideal_vanishing(&e, l, 6).map_err(err)?;
            checked += report.checked;
            ensure(report.passed(), || format!("{}: w = e_{w}, l = {l:?}: {:?}", ex.name, report.violations))?;
        }
    }
    println!("    {}: {} (w, l, β) triples vanish", ex.name, checked);
    Ok(())
}

fn mp_pairs(ex: &Example) -> Outcome {
    let mirror = ex.mirror(None).map_err(err)?;
    let classes = mirror.effective_classes(4).map_err(err)?;
    let mut pairs = 0;
    let mut polys: Vec<Polynomial> = interior_monomials(&mirror)
        .into_iter()
        .map(|m| Polynomial::monomial(mirror.base().len(), m, Rat::one()))
        .collect();
    polys.push(test_polynomial(&mirror));
    for beta in &classes {
        for p in &polys {
            let (jk, mp) = mp_crosscheck(&mirror, p, beta).map_err(err)?;
            ensure(jk == mp, || format!("{}: β = {beta:?}, P = {p}: {jk} vs {mp}", ex.name))?;
            pairs += 1;
        }
    }
    println!("    {}: {} (P, β) pairs agree over {} classes", ex.name, pairs, classes.len());
    ensure(pairs >= 10, || format!("{}: only {pairs} pairs", ex.name))
}

/// `g(a)·(1 - q(a)) = 1` at several generic points, where `q` is the ratio
/// of the geometric series.
fn geometric_artinian(cayley: &CayleyData, p_bar: &Polynomial, ratio: i64, points: &[Vec<Rat>]) -> Outcome {
    let fan = cayley.fan();
    let p = cayley.cayley_polynomial(p_bar);
    let n = cayley.n();
    for a in points {
        let g = specialize(fan, &p, a);
        let res = artinian_residue(fan, a, &g).map_err(err)?;
        let mut z = Rat::one();
        for x in &a[..n] {
            z *= x;
        }
        z /= num_traits::pow(a[n].clone(), n);
        let expected = Rat::one() / (Rat::one() - rat_int(&Int::from(ratio)) * z);
        ensure(res == expected, || format!("a = {a:?}: residue {res}, geometric series {expected}"))?;
    }
    Ok(())
}

fn closed_form_series() -> Outcome {
    for (ex, p_exp, ratio, kmax, points) in [
        (
            segment(),
            vec![1u32, 0],
            4i64,
            3usize,
            vec![vec![rat(1, 10), rat(1, 10), rat(1, 1)], vec![rat(2, 7), rat(1, 3), rat(5, 1)]],
        ),
        (
            projective_plane(),
            vec![1, 1, 0],
            -27,
            2,
            vec![
                vec![rat(1, 10), rat(1, 10), rat(1, 10), rat(1, 1)],
                vec![rat(1, 3), rat(2, 5), rat(3, 7), rat(2, 1)],
            ],
        ),
    ] {
        let cayley = ex.cayley().unwrap().map_err(err)?;
        let p = Polynomial::monomial(cayley.n(), p_exp, Rat::one());
        let mirror = cayley.mirror(None).map_err(err)?;
        let mut found = Vec::new();
        for k in 0..=kmax {
            let beta = vec![Int::from(k); cayley.n()];
            let (mp, rm) = cayley.ci_crosscheck(&mirror, &p, &beta).map_err(err)?;
            let expected = num_traits::pow(rat_int(&Int::from(ratio)), k);
            ensure(mp == expected && rm == expected, || {
                format!("{}: k = {k}: MP {mp}, JK {rm}, expected {expected}", ex.name)
            })?;
            found.push(mp.to_string());
        }
        geometric_artinian(&cayley, &p, ratio, &points).map_err(|e| format!("{}: {e}", ex.name))?;
        println!("    {}: coefficients [{}] by MP, JK and Artinian", ex.name, found.join(", "));
    }
    Ok(())
}

fn artinian_agreement() -> Outcome {
    for (ex, m, a, expected) in [
        (segment(), vec![1u32, 0, 1], vec![rat(1, 10), rat(1, 10), rat(1, 1)], rat(25, 24)),
        (
            projective_plane(),
            vec![1, 1, 0, 1],
            vec![rat(1, 10), rat(1, 10), rat(1, 10), rat(1, 1)],
            rat(1000, 1027),
        ),
    ] {
        let fan = ex.fan().map_err(err)?;
        let p = Polynomial::monomial(fan.len(), m, Rat::one());
        let res = artinian_residue(&fan, &a, &specialize(&fan, &p, &a)).map_err(err)?;
        ensure(res == expected, || format!("{}: residue {res}, expected {expected}", ex.name))?;
        let mirror = ex.mirror(None).map_err(err)?;
        let mut gaps = Vec::new();
        for bound in [2, 4, 6] {
            let table = mirror.rm_series(&p, bound).map_err(err)?;
            gaps.push((&res - table.partial_sum(&a)).abs());
        }
        println!(
            "    {}: residue {res}; |residue - partial sum| for B = 2, 4, 6: {}",
            ex.name,
            gaps.iter().map(|g| g.to_string()).join(", ")
        );
        ensure(gaps.windows(2).all(|w| w[1] < w[0]), || format!("{}: gaps not decreasing", ex.name))?;
    }
    Ok(())
}

fn completion_independence(ex: &Example) -> Outcome {
    let first = ex.mirror(None).map_err(err)?;
    let second = ex.mirror(Some(&ex.alt_v0)).map_err(err)?;
    ensure(first.completed().v0() != second.completed().v0(), || "completions coincide".into())?;
    let p = test_polynomial(&first);
    let h = toric_mirror::mirror::hessian(first.base(), &GammaWeights::ones(first.base()))
        .map_err(err)?
        .to_polynomial();
    for q in [p, h] {
        let a = first.rm_series(&q, 6).map_err(err)?;
        let b = second.rm_series(&q, 6).map_err(err)?;
        ensure(a.same_coefficients(&b), || format!("{}: tables differ for {q}", ex.name))?;
    }
    println!(
        "    {}: v0 = {:?} and {:?} give identical tables through B = 6",
        ex.name,
        first.completed().v0(),
        second.completed().v0()
    );
    Ok(())
}

fn mixed_volume_theorem() -> Outcome {
    let cayley = square().cayley().unwrap().map_err(err)?;
    let mirror = cayley.mirror(None).map_err(err)?;
    let report = verify_mixed_volume_theorem(&cayley, &mirror, 6).map_err(err)?;
    for row in &report.rows {
        let residue = row.residue.as_ref().map_or_else(|e| e.clone(), |r| r.to_string());
        println!("    k = {:?}: mixed residue {residue}, mixed volume {}", row.k, row.volume);
    }
    ensure(report.passed(), || format!("{report:?}"))?;
    ensure(
        mixed_volumes_by_simplices(&cayley) == mixed_volumes_by_interpolation(&cayley).map_err(err)?,
        || "routes disagree".into(),
    )?;
    let v = mixed_volume_by(&cayley, &[1, 1], Route::Simplices).map_err(err)?;
    ensure(v == rat(4, 1), || format!("(2,2) entry is {v}"))?;
    // Rectangle: normalized area of λ1[-1,1]×0 + λ2·0×[-1,1] is 2·4λ1λ2.
    let minkowski = interpolate(2, 2, |l| {
        let pts: Vec<IntVec> = [-1, 1]
            .iter()
            .cartesian_product([-1, 1].iter())
            .map(|(x, y)| vec![&l[0] * Int::from(*x), &l[1] * Int::from(*y)])
            .collect();
        Ok(rat_int(&normalized_volume(&pts)?))
    })
    .map_err(err)?;
    let area: BTreeMap<Vec<u32>, Rat> = minkowski
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e, c / rat(2, 1)))
        .collect();
    let expected: BTreeMap<Vec<u32>, Rat> = [(vec![1, 1], rat(4, 1))].into_iter().collect();
    ensure(area == expected, || format!("rectangle area polynomial {area:?}"))?;
    println!("    area(λ1Δ1 + λ2Δ2) = 4λ1λ2; V(Δ1 Δ2) = 1!·1!·4 = {v}");
    Ok(())
}

fn random_admissible(rng: &mut ChaCha8Rng, n: usize, degree: i64) -> Vec<i64> {
    let mut m: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
    let mut sum: i64 = m.iter().sum();
    while sum != degree {
        let i = rng.gen_range(0..n);
        if sum > degree {
            m[i] -= 1;
            sum -= 1;
        } else {
            m[i] += 1;
            sum += 1;
        }
    }
    m
}

fn jk_well_defined(ex: &Example) -> Outcome {
    let mirror = ex.mirror(None).map_err(err)?;
    let completed = mirror.completed().fan().clone();
    let base = mirror.jk();
    let n = completed.len();
    let degree = -(base.dim() as i64);
    let seeded: Vec<JkEngine> = [11u64, 23, 37]
        .iter()
        .map(|&s| JkEngine::new(&completed).map(|e| e.with_tie_break(TieBreak::Seeded(s))))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut nonzero = 0;
    for _ in 0..100 {
        let m = random_admissible(&mut rng, n, degree);
        let value = base.jk_residue(&m).map_err(err)?;
        if !value.is_zero() {
            nonzero += 1;
        }
        for e in &seeded {
            let other = e.jk_residue(&m).map_err(err)?;
            ensure(other == value, || format!("{}: m = {m:?}: {value} vs {other}", ex.name))?;
        }
    }
    // Numerator support not inside one cone: the residue vanishes.
    let mut zero_cases = 0;
    let mut attempts = 0;
    while zero_cases < 50 && attempts < 20_000 {
        attempts += 1;
        let m = random_admissible(&mut rng, n, degree);
        let support: Vec<usize> = (0..n).filter(|&i| m[i] >= 0).collect();
        if completed.max_cones().iter().any(|c| support.iter().all(|i| c.contains(i))) {
            continue;
        }
        zero_cases += 1;
        let value = base.jk_residue(&m).map_err(err)?;
        ensure(value.is_zero(), || format!("{}: m = {m:?} outside every cone gives {value}", ex.name))?;
    }
    // Classes off the Mori cone have zero coefficient.
    let lattice = RelationLattice::of_fan(mirror.base()).map_err(err)?;
    let monomials = interior_monomials(&mirror);
    let mut off_mori = 0;
    let mut candidates: Vec<IntVec> = mirror.mori().walls().iter().map(|w| w.iter().map(|x| -x).collect()).collect();
    for _ in 0..30 {
        let c: IntVec = (0..lattice.rank()).map(|_| Int::from(rng.gen_range(-2..=2))).collect();
        candidates.push(lattice.from_coordinates(&c));
    }
    for beta in candidates {
        if mirror.mori().in_mori_cone(&beta) {
            continue;
        }
        for m0 in monomials.iter().take(4) {
            let value = mirror.rm_coefficient(m0, &beta).map_err(err)?;
            ensure(value.is_zero(), || format!("{}: off-Mori β = {beta:?}, m0 = {m0:?} gives {value}", ex.name))?;
            off_mori += 1;
        }
    }
    println!(
        "    {}: 100 monomials ({} nonzero) stable under 3 seeds; {} outside-cone zeros; {} off-Mori zeros",
        ex.name, nonzero, zero_cases, off_mori
    );
    ensure(zero_cases > 0 && off_mori > 0, || format!("{}: no zero cases generated", ex.name))
}

fn main() {
    let fixtures = [segment(), projective_plane(), square()];
    let triangle = thin_triangle();
    let all = |f: fn(&Example) -> Outcome| -> Box<dyn Fn() -> Outcome> {
        let fx = fixtures.clone();
        Box::new(move || fx.iter().try_for_each(f))
    };
    let criteria: Vec<Criterion> = vec![
        ("1 Hessian normalization through B = 6 (exact)", all(hessian_normalization)),
        ("2 ideal vanishing for a basis of N through B = 6 (exact)", all(ideal_vanishing)),
        ("3 JK route = Morrison-Plesser route on >= 10 pairs, deg β <= 4 (exact)", all(mp_pairs)),
        ("4 closed-form series 4^k and (-27)^k (exact)", Box::new(closed_form_series)),
        ("5 Artinian residue 25/24, 1000/1027; gaps decrease for B = 2, 4, 6 (exact)", Box::new(artinian_agreement)),
        ("6 completion independence (exact)", all(completion_independence)),
        ("7 mixed residues = mixed volumes, (2,2) -> 4, routes agree (exact)", Box::new(mixed_volume_theorem)),
        ("8 JK well-definedness: 3 seeds x 100 monomials, zero cases (exact)", all(jk_well_defined)),
        (
            "9 non-reflexive triangle: criteria 1, 2, 6, 8 (exact)",
            Box::new(move || {
                hessian_normalization(&triangle)?;
                ideal_vanishing(&triangle)?;
                completion_independence(&triangle)?;
                jk_well_defined(&triangle)
            }),
        ),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {name} [{secs:.2}s]"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name} [{secs:.2}s]: {e}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
