use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finring::{idempotent_lift, is_local, is_valid_lift, Elem, FiniteRing};
use crate::rational_points::{
    affine_topology, chart_topology, psi_image, RationalPoints, SearchLimits, TopRing,
};

use super::battery::{projective_line_refined, Battery, SchemeProbe};
use super::checks::{
    check_f1_affine, check_f2, check_f3, check_f4star, check_f5, check_f6, check_local_coverage,
    mismatch,
};
use super::report::{AxiomReport, CharacterizationReport, CharacterizationRow, Verdict, Witness};

/// Partitions of unity are enumerated exhaustively up to this many terms on
/// rings of at most [`EXHAUSTIVE_LIFT_RING_SIZE`] elements.
pub const EXHAUSTIVE_LIFT_TERMS: usize = 3;
pub const EXHAUSTIVE_LIFT_RING_SIZE: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub limits: SearchLimits,
    /// Number of sampled partitions of unity on rings past the exhaustive range.
    pub lift_samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            limits: SearchLimits::default(),
            lift_samples: 256,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub characterizations: Vec<CharacterizationReport>,
    /// Individual axiom checks feeding the characterizations.
    pub axiom_reports: Vec<AxiomReport>,
    /// Checks that enter no equivalence: F5, F6 and covering independence.
    pub observations: Vec<AxiomReport>,
}

impl SuiteReport {
    pub fn all_agree(&self) -> bool {
        self.characterizations.iter().all(|c| c.verified)
    }

    pub fn characterization(&self, theorem: &str) -> Option<&CharacterizationReport> {
        self.characterizations.iter().find(|c| c.theorem == theorem)
    }
}

/// Outcome of idempotent lifting over a family of partitions of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftSummary {
    pub checked: usize,
    pub failed: usize,
    pub exhaustive: bool,
}

fn partitions(ring: &FiniteRing, n: usize) -> Vec<Vec<Elem>> {
    let size = ring.size();
    let free = n - 1;
    let total = size.pow(free as u32);
    (0..total)
        .map(|mut code| {
            let mut h: Vec<Elem> = (0..free)
                .map(|_| {
                    let e = code % size;
                    code /= size;
                    e
                })
                .collect();
            let sum = h.iter().fold(ring.zero(), |acc, &x| ring.add(acc, x));
            h.push(ring.sub(ring.one(), sum));
            h
        })
        .collect()
}

/// Lifts partitions of unity with at most three terms: all of them on small
/// rings, `samples` seeded draws otherwise.
pub fn check_lifts(ring: &FiniteRing, seed: u64, samples: usize) -> LiftSummary {
    let exhaustive = ring.size() <= EXHAUSTIVE_LIFT_RING_SIZE;
    let family: Vec<Vec<Elem>> = if exhaustive {
        (1..=EXHAUSTIVE_LIFT_TERMS)
            .flat_map(|n| partitions(ring, n))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                let n = rng.gen_range(1..=EXHAUSTIVE_LIFT_TERMS);
                let mut h: Vec<Elem> = (0..n - 1).map(|_| rng.gen_range(0..ring.size())).collect();
                let sum = h.iter().fold(ring.zero(), |acc, &x| ring.add(acc, x));
                h.push(ring.sub(ring.one(), sum));
                h
            })
            .collect()
    };
    let failed = family
        .iter()
        .filter(|h| !matches!(idempotent_lift(ring, h), Ok(e) if is_valid_lift(ring, h, &e)))
        .count();
    LiftSummary {
        checked: family.len(),
        failed,
        exhaustive,
    }
}

fn guarded(
    axiom: &str,
    ring: &str,
    probe: &str,
    run: impl FnOnce() -> Result<AxiomReport>,
) -> Result<AxiomReport> {
    match run() {
        Err(e @ Error::Resource { .. }) => Ok(AxiomReport::skip(axiom, ring, probe, e.to_string())),
        other => other,
    }
}

/// Everything the suite computes for one ring.
struct RingOutcome {
    label: String,
    topological: bool,
    hausdorff_ring: bool,
    t2_space: bool,
    discrete: bool,
    open_units: bool,
    local: bool,
    f1: Vec<AxiomReport>,
    f2: AxiomReport,
    f3: Vec<AxiomReport>,
    f4star: Vec<AxiomReport>,
    coverage: Vec<AxiomReport>,
    lifts: LiftSummary,
    psi: Vec<AxiomReport>,
    observations: Vec<AxiomReport>,
}

fn psi_surjectivity(probe: &SchemeProbe, r: &TopRing, limits: SearchLimits) -> Result<AxiomReport> {
    guarded("psi-surjective", r.label(), &probe.name, || {
        let image = psi_image(&probe.scheme, probe.covering.as_ref(), r, limits)?;
        let points = RationalPoints::new(&probe.scheme, r.ring(), r.structure(), limits)?;
        Ok(
            match points
                .points()
                .iter()
                .position(|p| image.binary_search(p).is_err())
            {
                None => AxiomReport::pass("psi-surjective", r.label(), &probe.name),
                Some(i) => AxiomReport::fail(
                    "psi-surjective",
                    r.label(),
                    &probe.name,
                    Witness::NotSurjective {
                        point: i,
                        label: points.label(&points.points()[i]),
                    },
                ),
            },
        )
    })
}

/// Chart topologies of two coverings of one scheme agree.
fn covering_independence(
    first: &SchemeProbe,
    second: &SchemeProbe,
    r: &TopRing,
    limits: SearchLimits,
) -> Result<AxiomReport> {
    let probe = format!("{} vs {}", first.name, second.name);
    guarded("covering-independence", r.label(), &probe, || {
        let a = chart_topology(&first.scheme, first.covering.as_ref(), r, limits)?;
        let b = chart_topology(&second.scheme, second.covering.as_ref(), r, limits)?;
        if a.points != b.points {
            return Err(Error::Invariant(
                "point sets of one scheme differ between coverings".into(),
            ));
        }
        Ok(match mismatch(&a.topology, &b.topology, &a.labels) {
            None => AxiomReport::pass("covering-independence", r.label(), &probe),
            Some(w) => AxiomReport::fail("covering-independence", r.label(), &probe, w),
        })
    })
}

/// The 𝔸¹ covering topology agrees with the affine topology.
fn cover_matches_affine(
    probe: &SchemeProbe,
    r: &TopRing,
    limits: SearchLimits,
) -> Result<AxiomReport> {
    let name = format!("{} vs affine", probe.name);
    guarded("covering-independence", r.label(), &name, || {
        let charted = chart_topology(&probe.scheme, probe.covering.as_ref(), r, limits)?;
        let affine = affine_topology(&probe.scheme.charts()[0], r, limits)?;
        let same_points = charted.len() == affine.len()
            && charted
                .points
                .iter()
                .zip(&affine.points)
                .all(|(p, a)| p.components.len() == 1 && p.components[0].1 == *a);
        if !same_points {
            return Err(Error::Invariant(
                "affine points differ from chart points".into(),
            ));
        }
        Ok(
            match mismatch(&affine.topology, &charted.topology, &charted.labels) {
                None => AxiomReport::pass("covering-independence", r.label(), &name),
                Some(w) => AxiomReport::fail("covering-independence", r.label(), &name, w),
            },
        )
    })
}

fn run_ring(index: usize, r: &TopRing, opts: SuiteOptions) -> Result<RingOutcome> {
    let limits = opts.limits;
    let label = r.label();
    let battery = Battery::standard(r.base())?;
    let f1 = battery
        .f1
        .iter()
        .map(|p| {
            guarded("F1", label, &p.name, || {
                check_f1_affine(&p.c, &p.a, &p.b, &p.f, &p.g, r, &p.name, limits)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let f2 = guarded("F2", label, "A1", || check_f2(r, limits))?;
    let f3 = battery
        .f3
        .iter()
        .map(|p| {
            guarded("F3", label, &p.name, || {
                check_f3(&p.ambient, &p.extra, r, &p.name, limits)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let f4star = battery
        .f4star
        .iter()
        .map(|p| {
            guarded("F4*", label, &p.name, || {
                check_f4star(&p.ambient, &p.h, r, &p.name, limits)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let coverage = battery
        .coverage
        .iter()
        .map(|p| {
            guarded("local-coverage", label, &p.name, || {
                check_local_coverage(&p.scheme, p.covering.as_ref(), r, &p.name, limits)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let psi = battery
        .schemes
        .iter()
        .map(|p| psi_surjectivity(p, r, limits))
        .collect::<Result<Vec<_>>>()?;

    let mut observations = Vec::new();
    for p in battery
        .schemes
        .iter()
        .filter(|p| p.covering.is_some() || p.scheme.charts().len() > 1)
    {
        observations.push(guarded("F5", label, &p.name, || {
            check_f5(&p.scheme, p.covering.as_ref(), r, &p.name, limits)
        })?);
        observations.push(guarded("F6", label, &p.name, || {
            check_f6(&p.scheme, p.covering.as_ref(), r, &p.name, limits)
        })?);
    }
    let local = is_local(r.ring());
    let topological = r.is_topological_ring();
    let open_units = topological && r.has_open_unit_group();
    if local && open_units {
        let p1 = battery
            .coverage
            .iter()
            .find(|p| p.name == "P1")
            .expect("battery has P1");
        observations.push(covering_independence(
            p1,
            &projective_line_refined(r.base())?,
            r,
            limits,
        )?);
        let a1 = battery
            .coverage
            .iter()
            .find(|p| p.name == "A1_DT_DT1")
            .expect("battery has the A1 covering");
        observations.push(cover_matches_affine(a1, r, limits)?);
    }

    Ok(RingOutcome {
        label: label.to_string(),
        topological,
        hausdorff_ring: r.is_hausdorff_ring(),
        t2_space: r.topology().is_hausdorff(),
        discrete: r.topology().is_discrete(),
        open_units,
        local,
        f1,
        f2,
        f3,
        f4star,
        coverage,
        lifts: check_lifts(
            r.ring(),
            opts.seed.wrapping_add(index as u64),
            opts.lift_samples,
        ),
        psi,
        observations,
    })
}

fn row<'a>(
    ring: &str,
    predicate: bool,
    probes: impl IntoIterator<Item = &'a AxiomReport>,
) -> CharacterizationRow {
    let mut failing = Vec::new();
    let mut skipped = Vec::new();
    for p in probes {
        let id = format!("{}:{}", p.axiom, p.probe);
        match p.verdict {
            Verdict::Pass => {}
            Verdict::Fail => failing.push(id),
            Verdict::Skip => skipped.push(id),
        }
    }
    let battery = failing.is_empty();
    CharacterizationRow {
        ring: ring.into(),
        predicate,
        battery,
        agree: predicate == battery,
        failing_probes: failing,
        skipped_probes: skipped,
    }
}

const ONE_WAY: &str =
    "Agreement on every corpus ring is evidence for the equivalence, not a proof of it.";

/// Runs every check of the battery on every ring of the corpus and reports
/// each characterization as ring-by-ring agreement.
pub fn run_suite(corpus: &[TopRing], opts: SuiteOptions) -> Result<SuiteReport> {
    let outcomes = corpus
        .par_iter()
        .enumerate()
        .map(|(i, r)| run_ring(i, r, opts))
        .collect::<Result<Vec<_>>>()?;

    let topo_battery = |o: &RingOutcome| -> Vec<AxiomReport> {
        let mut v = o.f1.clone();
        v.push(o.f2.clone());
        v
    };
    let rows = |f: &dyn Fn(&RingOutcome) -> CharacterizationRow| {
        outcomes.iter().map(f).collect::<Vec<_>>()
    };

    let characterizations = vec![
        CharacterizationReport::new(
            "topological-ring",
            "R is a topological ring iff F1 and F2 hold",
            ONE_WAY,
            rows(&|o| row(&o.label, o.topological, &topo_battery(o))),
        ),
        CharacterizationReport::new(
            "hausdorff-ring",
            "R is a Hausdorff topological ring iff F1, F2 and F3 hold",
            ONE_WAY,
            rows(&|o| row(&o.label, o.hausdorff_ring, topo_battery(o).iter().chain(&o.f3))),
        ),
        CharacterizationReport::new(
            "hausdorff-discrete",
            "a finite space is Hausdorff iff it is discrete",
            "Battery column is discreteness of the topology.",
            rows(&|o| CharacterizationRow {
                ring: o.label.clone(),
                predicate: o.t2_space,
                battery: o.discrete,
                agree: o.t2_space == o.discrete,
                failing_probes: Vec::new(),
                skipped_probes: Vec::new(),
            }),
        ),
        CharacterizationReport::new(
            "open-unit-group",
            "R is a topological ring with open unit group iff F1, F2 and F4* hold",
            ONE_WAY,
            rows(&|o| row(&o.label, o.open_units, topo_battery(o).iter().chain(&o.f4star))),
        ),
        CharacterizationReport::new(
            "local-coverage",
            "R is local iff every point lies in a single chart of every covering",
            ONE_WAY,
            rows(&|o| row(&o.label, o.local, &o.coverage)),
        ),
        CharacterizationReport::new(
            "disconnected-spectrum",
            "partitions of unity lift to idempotents iff the covering map on points is surjective",
            "Every finite ring is a product of local rings, so both sides hold on the whole domain \
             (vacuously positive domain); each side is checked separately.",
            rows(&|o| {
                let mut r = row(&o.label, o.lifts.failed == 0 && o.lifts.checked > 0, &o.psi);
                if !o.lifts.exhaustive {
                    r.skipped_probes.push(format!("lifts sampled: {}", o.lifts.checked));
                }
                r
            }),
        ),
    ];

    let mut axiom_reports = Vec::new();
    let mut observations = Vec::new();
    for o in outcomes {
        axiom_reports.extend(o.f1);
        axiom_reports.push(o.f2);
        axiom_reports.extend(o.f3);
        axiom_reports.extend(o.f4star);
        axiom_reports.extend(o.coverage);
        axiom_reports.extend(o.psi);
        observations.extend(o.observations);
    }
    Ok(SuiteReport {
        characterizations,
        axiom_reports,
        observations,
    })
}
