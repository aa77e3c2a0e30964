//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::lemma_oracle::{unpruned, Pairs};
use common::p;
use num_integer::Integer;
use polydecomp::appendix_comb::{classify_conclusion, enumerate_systems, rh_identity_check, Conclusion};
use polydecomp::chebyshev::{cheb_semigroup_check, chebyshev};
use polydecomp::decompose::Decomposition;
use polydecomp::enumerate::*;
use polydecomp::forms::*;
use polydecomp::iterates::{ex2_family, iterate, reduce_split};
use polydecomp::poly::{compose_all, rat, Poly};
use polydecomp::ritt::{monodromy_class, ritt_move_exponential};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, check, and optional runtime limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn x(k: usize) -> Poly {
    Poly::x_pow(k)
}

/// Nonzero constant term, degree exactly `d`, small integer coefficients.
fn random_h(rng: &mut ChaCha8Rng, d: usize) -> Poly {
    let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-4..=4)).collect();
    if c[0] == 0 {
        c[0] = 1;
    }
    if c[d] == 0 {
        c[d] = -1;
    }
    p(&c)
}

fn ritt_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut moves = 0;
    for n in 2..=7usize {
        for s in (1..=7usize).filter(|s| s.gcd(&n) == 1) {
            for d in 0..=4 {
                for _ in 0..200 {
                    let h = random_h(&mut rng, d);
                    let (lhs, rhs, q) = ritt_move_exponential(n, s, &h).map_err(|e| e.to_string())?;
                    check(lhs == rhs, || format!("n={n} s={s} h={h}: sides differ"))?;
                    check(q[0].compose(&q[1]) == lhs && q[2].compose(&q[3]) == rhs, || {
                        format!("n={n} s={s} h={h}: quadruple does not compose to the sides")
                    })?;
                    moves += 1;
                }
            }
        }
    }
    for n in 1..=12 {
        for m in 1..=12 {
            check(cheb_semigroup_check(n, m), || format!("T_{n} o T_{m} != T_{}", n * m))?;
        }
    }
    Ok(format!("{moves} exponential moves, 144 Chebyshev pairs"))
}

fn twist_form_fixture() -> Outcome {
    let f = &x(2) * &p(&[1, 1]).pow(3);
    let g = (&x(3) * &p(&[-1, 1]).pow(2)).compose(&p(&[1, 1]));
    check(f == g, || format!("{f} != {g}"))?;
    let (cf, cg) = (canonical_twist_form(&f), canonical_twist_form(&g));
    check(cf.is_ok() && cf == cg, || format!("{cf:?} vs {cg:?}"))?;
    Ok("canonical forms agree".into())
}

fn dihedral_move_fixture() -> Outcome {
    let lhs = compose_all([&chebyshev(3), &p(&[-2, 1, 2, 1]), &x(2)]);
    let rhs = compose_all([&chebyshev(2), &chebyshev(3), &p(&[0, 1, 0, 1])]);
    check(lhs == rhs, || "compositions differ".into())?;
    let r = detect_dihedral(&lhs).map_err(|e| e.to_string())?;
    check(r.is_none(), || format!("composite reported as {}", r.kind()))?;
    Ok("degree 18 identity, not dihedral".into())
}

fn iterate_fixture() -> Outcome {
    let t = chebyshev;
    let f = t(3).compose(&t(2).scale(&rat(2)));
    let a = compose_all([&t(3), &t(3).scale(&rat(2)), &(&t(3).scale(&rat(4)) + &p(&[6]))]);
    let b = t(4).compose(&t(2).scale(&rat(2)));
    check(iterate(&f, 3) == a.compose(&b), || "f^(3) != a o b".into())?;
    let s = reduce_split(&f, &a, &b, 3).map_err(|e| e.to_string())?;
    let log = (f.deg() + 2).trailing_zeros() as usize;
    check((f.deg() + 2).is_power_of_two() && log == 3, || "log2(deg f + 2) is not 3".into())?;
    check((s.i, s.j, s.k) == (0, 0, log), || format!("(i, j, k) = ({}, {}, {})", s.i, s.j, s.k))?;
    Ok("i = j = 0, k = 3".into())
}

fn ex2_fixture() -> Outcome {
    let mut times = Vec::new();
    for m in 1..=3 {
        let start = Instant::now();
        let ex = ex2_family(m).map_err(|e| e.to_string())?;
        let x2 = x(2);
        for i in 1..=m {
            check(x2.compose(&ex.ladder[i]) == ex.ladder[i - 1].compose(&x2), || {
                format!("m={m}: ladder step {i} fails")
            })?;
        }
        check(ex.ladder_checks, || format!("m={m}: a o b != f^(m+1)"))?;
        let n = ex.f.deg();
        check(n == (1 << (m + 1)) + 2, || format!("m={m}: deg f = {n}"))?;
        check(ex.a.deg() % n != 0 && ex.b.deg() % n != 0, || format!("m={m}: deg f divides a side"))?;
        let dt = start.elapsed();
        if m == 3 {
            check(dt < Duration::from_secs(60), || format!("m=3 took {dt:?}"))?;
        }
        times.push(format!("m={m} {:.1}s", dt.as_secs_f64()));
    }
    Ok(times.join(", "))
}

fn final_example() -> Outcome {
    let f = compose_all([&x(2), &p(&[1, 1]), &x(3)]);
    let a = compose_all([&x(2), &p(&[1, 1]), &x(2)]);
    let b = compose_all([&x(3), &p(&[1, 1]), &x(3)]);
    check(iterate(&f, 2) == a.compose(&b), || "f^(2) != a o b".into())?;
    check(detect_cyclic(&f).is_none(), || "f reported cyclic".into())?;
    let g = p(&[0, 1, 1, 0, 1]);
    let (order, _) = gamma_symmetry_order(&g).map_err(|e| e.to_string())?;
    check(order == GammaOrder::Finite(1), || format!("gamma order {order:?}"))?;
    for n in [2, 3] {
        let r = detect_twist_outer(&g, n).map_err(|e| e.to_string())?;
        check(r.is_none(), || format!("outer twist with n = {n}"))?;
    }
    Ok("split exact, g outside the twist class".into())
}

/// Maximal chains in the divisor lattice.
fn lattice_chains(n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    (2..=n)
        .filter(|&q| n % q == 0 && (2..q).all(|t| q % t != 0))
        .map(|q| lattice_chains(n / q))
        .sum()
}

fn class_profile(u: &Decomposition) -> BTreeMap<(usize, &'static str), usize> {
    let mut m = BTreeMap::new();
    for f in &u.factors {
        *m.entry((f.deg(), monodromy_class(f))).or_insert(0) += 1;
    }
    m
}

fn corpus_classes() -> Result<Vec<(Poly, Vec<Decomposition>)>, String> {
    corpus(CORPUS_SEED, CORPUS_SIZE)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|ch| {
            let f = compose_all(&ch);
            let classes = all_classes(&f).map_err(|e| e.to_string())?;
            Ok((f, classes))
        })
        .collect()
}

fn invariance_suite() -> Outcome {
    let mut violations = Vec::new();
    let mut pairs = 0;
    for (f, classes) in corpus_classes()? {
        let profile = class_profile(&classes[0]);
        for u in &classes {
            if u.compose() != f || u.len() != classes[0].len() || class_profile(u) != profile {
                violations.push(format!("{f}: class invariant"));
            }
            for v in &classes {
                pairs += 1;
                if !coprime_inversion_check(u, v).map_err(|e| e.to_string())? {
                    violations.push(format!("{f}: inversion"));
                }
            }
        }
    }
    check(violations.is_empty(), || format!("{} violations, first {}", violations.len(), violations[0]))?;
    let want = lattice_chains(12);
    for (name, f) in [("X^12", x(12)), ("T_12", chebyshev(12))] {
        let got = all_classes(&f).map_err(|e| e.to_string())?.len();
        check(want == 3 && got == want, || format!("{name}: {got} classes, lattice says {want}"))?;
    }
    Ok(format!("{pairs} class pairs, 0 violations; X^12 and T_12 have 3 classes"))
}

/// Monic, centred, degree in `2..=6`.
fn random_centered(rng: &mut ChaCha8Rng) -> Poly {
    let d = rng.gen_range(2..=6);
    let mut c: Vec<i64> = (0..d - 1).map(|_| rng.gen_range(-3..=3)).collect();
    c.extend([0, 1]);
    p(&c)
}

fn isometry_refinements() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = 0;
    for _ in 0..200 {
        let (a, b) = (random_centered(&mut rng), random_centered(&mut rng));
        let gamma = |f: &Poly| gamma0_isometry_order(f).map_err(|e| e.to_string());
        let (ga, gb, gab) = (gamma(&a)?, gamma(&b)?, gamma(&a.compose(&b))?);
        let db = b.deg();
        if db.gcd(&gab) != gb || (ga * db) % db.lcm(&gab) != 0 {
            bad += 1;
        }
    }
    check(bad == 0, || format!("{bad} violations"))?;
    Ok("200 pairs, 0 violations".into())
}

fn lemma_a() -> Outcome {
    let mut total = 0;
    let mut counts = [0usize; 3];
    for n in 3..=7usize {
        for m in (2..n).filter(|m| m.gcd(&n) == 1) {
            let systems = enumerate_systems(m, n, 3).map_err(|e| e.to_string())?;
            for s in &systems {
                let tag = classify_conclusion(s).map_err(|e| e.to_string())?;
                match tag.tag {
                    Conclusion::C1 => counts[0] += 1,
                    Conclusion::C2 => counts[1] += 1,
                    Conclusion::C3 => counts[2] += 1,
                    Conclusion::Violation => return Err(format!("violation at {s:?}")),
                }
                check(rh_identity_check(s), || format!("identity fails at {s:?}"))?;
            }
            total += systems.len();
        }
    }
    for (m, n, k) in [(2, 3, 2), (3, 4, 2)] {
        let fast: BTreeSet<Pairs> =
            enumerate_systems(m, n, k).map_err(|e| e.to_string())?.into_iter().map(|s| s.pairs).collect();
        check(fast == unpruned(m, n, k), || format!("({m}, {n}, {k}): enumerators disagree"))?;
    }
    Ok(format!("{total} systems (C1 {}, C2 {}, C3 {}), unpruned agrees", counts[0], counts[1], counts[2]))
}

fn proposition_checkers() -> Outcome {
    let (mut witnesses, mut mess) = (0, 0);
    for (f, classes) in corpus_classes()? {
        for u in &classes {
            for v in &classes {
                for k in 0..u.len() {
                    clumps_witness(u, v, k).map_err(|e| format!("{f}: k={k}: {e}"))?;
                    witnesses += 1;
                    if monodromy_class(&u.factors[k]) == "other" {
                        let r = mess_check(u, v, k).map_err(|e| e.to_string())?;
                        check(r.holds(), || format!("{f}: {r:?}"))?;
                        mess += 1;
                    }
                }
            }
        }
    }
    let classes = all_classes(&chebyshev(30)).map_err(|e| e.to_string())?;
    check(classes.len() == 6, || format!("T_30 has {} classes", classes.len()))?;
    let mut moves = 0;
    for u in &classes {
        for v in &classes {
            for k in (0..3).filter(|&k| u.factors[k].deg() > 2) {
                for i in 0..3 {
                    let r = cheb_move_check(u, v, k, i).map_err(|e| e.to_string())?;
                    check(r.holds(), || format!("{u:?} {v:?} k={k} i={i}"))?;
                    moves += 1;
                }
            }
        }
    }
    Ok(format!("{witnesses} witnesses, {mess} degree bounds, {moves} Chebyshev checks"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Ritt identities", ritt_identities, Some(10)),
        ("twisted canonical form fixture", twist_form_fixture, None),
        ("dihedral Ritt move fixture", dihedral_move_fixture, None),
        ("iterate split fixture", iterate_fixture, None),
        ("ladder family m = 1, 2, 3", ex2_fixture, None),
        ("second iterate without f-factors", final_example, None),
        ("decomposition invariants over the corpus", invariance_suite, Some(300)),
        ("isometry group refinements", isometry_refinements, None),
        ("multiset system lemma", lemma_a, Some(600)),
        ("proposition checkers", proposition_checkers, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        let dt = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(secs)) if dt > Duration::from_secs(secs) => {
                Err(format!("took {:.1}s, limit {secs}s", dt.as_secs_f64()))
            }
            (o, _) => o,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name} [{:.1}s]: {detail}", i + 1, dt.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
