//! The ten acceptance criteria, one pass/fail line each.

use std::process::Command;
use std::time::{Duration, Instant};

use finepoints_core::axioms::{
    check_f3, check_f4star, check_f6, check_lifts, check_local_coverage, check_product_analog,
    default_corpus, projective_line_refined, run_suite, small_rings, Battery, SchemeProbe,
    SuiteOptions, SuiteReport, Witness, EXHAUSTIVE_LIFT_TERMS,
};
use finepoints_core::finring::{
    coproduct_presentation, is_local, localize_presentation, AlgebraPresentation, FiniteRing,
};
use finepoints_core::fintop::{FiniteTopology, PointSet, TopologyOrder};
use finepoints_core::rational_points::{
    affine_topology, chart_topology, hom_set, psi_image, scheme_points, Covering,
    SchemePresentation, SearchLimits, TopRing,
};

const SUITE_BUDGET: Duration = Duration::from_secs(10);
const LIFT_BUDGET: Duration = Duration::from_secs(30);
const PRODUCT_BUDGET: Duration = Duration::from_secs(60);
const MIN_CORPUS: usize = 8;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lim() -> SearchLimits {
    SearchLimits::default()
}

fn z(n: usize) -> FiniteRing {
    FiniteRing::zmod(n).unwrap()
}

fn suite() -> (SuiteReport, Duration) {
    let start = Instant::now();
    let report = run_suite(&default_corpus().unwrap(), SuiteOptions::default()).unwrap();
    (report, start.elapsed())
}

/// Continuity of `+` and `·` decided from open sets alone: the preimage of
/// every open set must be open in the product.
fn operations_continuous_by_opens(r: &TopRing) -> bool {
    let ring = r.ring();
    let t = r.topology();
    let n = ring.size();
    let product = t.product(t);
    let opens = t.opens(1 << 12).unwrap();
    [false, true].iter().all(|&mul| {
        opens.iter().all(|w| {
            let pre = PointSet::from_indices(
                n * n,
                (0..n * n).filter(|&ab| {
                    let (a, b) = (ab / n, ab % n);
                    w.contains(if mul { ring.mul(a, b) } else { ring.add(a, b) })
                }),
            );
            product.is_open(&pre)
        })
    })
}

fn disagreements(report: &SuiteReport, theorem: &str) -> Result<usize, String> {
    let c = report
        .characterization(theorem)
        .ok_or_else(|| format!("no {theorem} characterization"))?;
    Ok(c.rows.iter().filter(|r| !r.agree).count())
}

fn criterion_1() -> Outcome {
    let corpus = default_corpus().unwrap();
    ensure(corpus.len() >= MIN_CORPUS, || {
        format!("corpus has {} structures", corpus.len())
    })?;
    for ring in ["Z4", "Z6", "Z2xZ2", "Z9"] {
        ensure(
            corpus
                .iter()
                .any(|r| r.label().starts_with(&format!("{ring}_"))),
            || format!("no structure on {ring}"),
        )?;
    }
    let non_ring = corpus
        .iter()
        .filter(|r| !operations_continuous_by_opens(r))
        .count();
    ensure(non_ring >= 2, || {
        format!("only {non_ring} non-ring topologies")
    })?;
    let (report, elapsed) = suite();
    ensure(elapsed < SUITE_BUDGET, || format!("suite took {elapsed:?}"))?;
    let bad = disagreements(&report, "topological-ring")?;
    ensure(bad == 0, || format!("{bad} disagreements"))?;
    let c = report.characterization("topological-ring").unwrap();
    for (row, r) in c.rows.iter().zip(&corpus) {
        ensure(row.predicate == operations_continuous_by_opens(r), || {
            format!(
                "predicate differs from the open-set oracle on {}",
                r.label()
            )
        })?;
    }
    Ok(format!(
        "{} structures, {non_ring} non-ring, 0 disagreements, {:.2}s",
        corpus.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let (report, _) = suite();
    for theorem in ["hausdorff-ring", "hausdorff-discrete"] {
        let bad = disagreements(&report, theorem)?;
        ensure(bad == 0, || format!("{theorem}: {bad} disagreements"))?;
    }
    let r = TopRing::adic(&z(4), &[2]).unwrap();
    let a = AlgebraPresentation::free(r.base(), &["x"]).unwrap();
    let rep = check_f3(&a, &[a.variable(0).unwrap()], &r, "origin", lim()).unwrap();
    let Some(Witness::NotClosed { image, .. }) = rep.witness else {
        return Err(format!("unexpected report {rep:?}"));
    };
    ensure(image == [0], || format!("witness {image:?}"))?;
    // recheck: {0} is not closed in the affine line
    let space = affine_topology(&a, &r, lim()).unwrap();
    let set = PointSet::from_indices(space.len(), image.iter().copied());
    ensure(!space.topology.is_closed(&set), || {
        "witness set is closed".into()
    })?;
    Ok("0 disagreements; (2)-adic Z/4 witness closed set {0} rechecked".into())
}

fn criterion_3() -> Outcome {
    let (report, _) = suite();
    let bad = disagreements(&report, "open-unit-group")?;
    ensure(bad == 0, || format!("{bad} disagreements"))?;
    let r = TopRing::indiscrete(&z(4)).unwrap();
    let a = AlgebraPresentation::free(r.base(), &["T"]).unwrap();
    let rep = check_f4star(&a, &a.variable(0).unwrap(), &r, "D(T)", lim()).unwrap();
    let Some(Witness::NotOpen { image, .. }) = rep.witness else {
        return Err(format!("unexpected report {rep:?}"));
    };
    ensure(image == [1, 3], || format!("witness {image:?}"))?;
    ensure(
        !r.topology().is_open(&PointSet::from_indices(4, [1, 3])),
        || "witness open".into(),
    )?;
    Ok("0 disagreements; indiscrete Z/4 witness image {1,3} rechecked".into())
}

fn criterion_4() -> Outcome {
    let corpus = default_corpus().unwrap();
    let mut passes = 0;
    for r in corpus
        .iter()
        .filter(|r| r.label().starts_with("Z4_") || r.label().starts_with("Z9_"))
    {
        let b = Battery::standard(r.base()).unwrap();
        for p in b
            .coverage
            .iter()
            .filter(|p| p.name == "P1" || p.name == "A1_DT_DT1")
        {
            let rep =
                check_local_coverage(&p.scheme, p.covering.as_ref(), r, &p.name, lim()).unwrap();
            ensure(rep.passed(), || {
                format!("{} fails on {}", r.label(), p.name)
            })?;
            passes += 1;
        }
    }
    let r6 = TopRing::discrete(&z(6)).unwrap();
    let k = r6.base();
    let point = AlgebraPresentation::free(k, &[]).unwrap();
    let x = SchemePresentation::affine(point.clone());
    let cov = Covering::parse(&x, &[(0, "3"), (0, "4")]).unwrap();
    let rep = check_local_coverage(&x, Some(&cov), &r6, "D3D4", lim()).unwrap();
    ensure(
        matches!(rep.witness, Some(Witness::Uncovered { .. })),
        || format!("{rep:?}"),
    )?;
    for h in ["3", "4"] {
        let loc = localize_presentation(&point, &point.polynomial(h).unwrap()).unwrap();
        let homs = hom_set(&loc, &r6, lim()).unwrap();
        ensure(homs.is_empty(), || {
            format!("D({h}) has {} points", homs.len())
        })?;
    }
    let u = coproduct_presentation(&cov.presentations()).unwrap();
    let homs = hom_set(&u, &r6, lim()).unwrap();
    ensure(homs.len() == 1, || {
        format!("U(R) has {} points", homs.len())
    })?;
    ensure(
        check_f6(&x, Some(&cov), &r6, "D3D4", lim())
            .unwrap()
            .passed(),
        || "F6 fails".into(),
    )?;
    let image = psi_image(&x, Some(&cov), &r6, lim()).unwrap();
    ensure(image == scheme_points(&x, &r6, lim()).unwrap(), || {
        "psi not surjective".into()
    })?;
    Ok(format!("{passes} local coverage passes; Z/6 uncovered; localized hom sets empty; |U(R)| = 1; psi surjective"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let rings = small_rings().unwrap();
    let mut total = 0;
    for r in &rings {
        let s = check_lifts(r, 0, 0);
        let expected: usize = (1..=EXHAUSTIVE_LIFT_TERMS)
            .map(|n| r.size().pow(n as u32 - 1))
            .sum();
        ensure(s.exhaustive && s.checked == expected, || {
            format!("{}: {s:?}", r.label())
        })?;
        ensure(s.failed == 0, || {
            format!("{}: {} lifts failed", r.label(), s.failed)
        })?;
        total += s.checked;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < LIFT_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} rings, {total} partitions, all lifted, {:.2}s",
        rings.len(),
        elapsed.as_secs_f64()
    ))
}

/// Points of ℙ¹ over ℤ/n: `n ∏_{p | n} (1 + 1/p)`.
fn projective_line_count(n: usize) -> usize {
    let mut count = n;
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            count = count / p * (p + 1);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    count
}

fn criterion_6() -> Outcome {
    let mut cases = Vec::new();
    for n in [2, 4, 6] {
        let r = TopRing::discrete(&z(n)).unwrap();
        let x = SchemePresentation::projective_line(r.base()).unwrap();
        cases.push((format!("P1(Z/{n})"), x, r, projective_line_count(n)));
    }
    let r6 = TopRing::discrete(&z(6)).unwrap();
    let gm = SchemePresentation::affine(
        AlgebraPresentation::parse(r6.base(), &["x", "y"], &["x*y - 1"]).unwrap(),
    );
    cases.push(("Gm(Z/6)".into(), gm, r6, 2));
    let pinned = [3, 6, 12, 2];
    let mut summary = Vec::new();
    for ((name, x, r, closed_form), want) in cases.iter().zip(pinned) {
        ensure(*closed_form == want, || {
            format!("{name}: closed form gives {closed_form}")
        })?;
        let glued = scheme_points(x, r, lim()).unwrap();
        let image = psi_image(x, None, r, lim()).unwrap();
        ensure(glued.len() == want, || {
            format!("{name}: {} points", glued.len())
        })?;
        ensure(glued == image, || format!("{name}: point lists differ"))?;
        summary.push(format!("{name}={want}"));
    }
    Ok(summary.join(", "))
}

fn same_chart_topology(a: &SchemeProbe, b: &SchemeProbe, r: &TopRing) -> Result<(), String> {
    let x = chart_topology(&a.scheme, a.covering.as_ref(), r, lim()).map_err(|e| e.to_string())?;
    let y = chart_topology(&b.scheme, b.covering.as_ref(), r, lim()).map_err(|e| e.to_string())?;
    ensure(x.points == y.points, || "point lists differ".into())?;
    let order = x.topology.compare(&y.topology).map_err(|e| e.to_string())?;
    ensure(order == TopologyOrder::Equal, || {
        format!("{} vs {}: {order:?}", a.name, b.name)
    })
}

fn criterion_7() -> Outcome {
    let regime: Vec<TopRing> = default_corpus()
        .unwrap()
        .into_iter()
        .filter(|r| is_local(r.ring()) && r.is_topological_ring() && r.has_open_unit_group())
        .collect();
    ensure(!regime.is_empty(), || "no corpus ring in the regime".into())?;
    for r in &regime {
        let b = Battery::standard(r.base()).unwrap();
        let p1 = b.coverage.iter().find(|p| p.name == "P1").unwrap();
        same_chart_topology(p1, &projective_line_refined(r.base()).unwrap(), r)
            .map_err(|e| format!("{}: {e}", r.label()))?;
        let cover = b.coverage.iter().find(|p| p.name == "A1_DT_DT1").unwrap();
        let charted = chart_topology(&cover.scheme, cover.covering.as_ref(), r, lim()).unwrap();
        let affine = affine_topology(&cover.scheme.charts()[0], r, lim()).unwrap();
        ensure(
            charted.topology.compare(&affine.topology).unwrap() == TopologyOrder::Equal,
            || {
                format!(
                    "{}: A1 covering topology differs from the affine one",
                    r.label()
                )
            },
        )?;
    }
    let names: Vec<&str> = regime.iter().map(|r| r.label()).collect();
    Ok(format!("equal on {}", names.join(", ")))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let factor_lists = [
        vec![
            TopRing::discrete(&z(2)).unwrap(),
            TopRing::discrete(&z(3)).unwrap(),
        ],
        vec![
            TopRing::adic(&z(4), &[2]).unwrap(),
            TopRing::discrete(&z(3)).unwrap(),
        ],
    ];
    let mut checked = 0;
    for factors in &factor_lists {
        let k = TopRing::product(factors).unwrap().base().clone();
        let schemes = [
            (
                "A1",
                SchemePresentation::affine(AlgebraPresentation::free(&k, &["T"]).unwrap()),
            ),
            (
                "Gm",
                SchemePresentation::affine(
                    AlgebraPresentation::parse(&k, &["x", "y"], &["x*y - 1"]).unwrap(),
                ),
            ),
            ("P1", SchemePresentation::projective_line(&k).unwrap()),
        ];
        for (name, x) in &schemes {
            let rep = check_product_analog(x, factors, name, lim()).unwrap();
            ensure(rep.passed(), || {
                format!("{name} over {}: {:?}", rep.ring, rep.detail)
            })?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < PRODUCT_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{checked} product checks, {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_9() -> Outcome {
    let f2 = TopRing::discrete(&z(2)).unwrap();
    let b = Battery::standard(f2.base()).unwrap();
    let mut probes = b.schemes.clone();
    probes.push(projective_line_refined(f2.base()).unwrap());
    for p in &probes {
        let space = chart_topology(&p.scheme, p.covering.as_ref(), &f2, lim()).unwrap();
        ensure(
            space.topology == FiniteTopology::discrete(space.len()),
            || format!("{} is not discrete", p.name),
        )?;
    }
    Ok(format!("{} probe schemes discrete over F2", probes.len()))
}

fn criterion_10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_finepoints"))
            .args(["suite", "default"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    ensure(a.status.success() && b.status.success(), || {
        "suite default failed".into()
    })?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    let x = serde_json::to_string(&suite().0).unwrap();
    let y = serde_json::to_string(&suite().0).unwrap();
    ensure(x == y, || "in-process reports differ".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("topological ring iff F1 and F2", criterion_1),
        ("Hausdorff iff F3; Hausdorff iff discrete", criterion_2),
        ("open unit group iff F4*", criterion_3),
        ("local iff single-chart coverage", criterion_4),
        ("idempotent lifting, exhaustive", criterion_5),
        ("point counts two ways", criterion_6),
        ("covering independence", criterion_7),
        ("finite product analog", criterion_8),
        ("Zariski degenerate case", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(info) => println!("criterion {:>2} PASS  {name}: {info}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
