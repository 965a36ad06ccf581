use serde::{Deserialize, Serialize};

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

/// Counterexample attached to a failed check. Indices refer to the point
/// list of the space named in the variant; labels are for display.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Image of a closed immersion that is not closed.
    NotClosed {
        image: Vec<usize>,
        labels: Vec<String>,
    },
    /// Image of an open immersion that is not open.
    NotOpen {
        image: Vec<usize>,
        labels: Vec<String>,
    },
    /// Point at which a map fails to be a topological embedding.
    NotEmbedding { point: usize, label: String },
    /// Two topologies on one point set differ at `point`.
    NeighborhoodMismatch {
        point: usize,
        label: String,
        expected: Vec<String>,
        actual: Vec<String>,
    },
    /// Point lying in no single covering piece.
    Uncovered { point: usize, label: String },
    /// Point outside the image of the covering map.
    NotSurjective { point: usize, label: String },
    /// The minimal neighbourhood of `point` has a non-open image.
    ImageNotOpen {
        point: usize,
        label: String,
        image: Vec<String>,
    },
}

impl Witness {
    pub fn describe(&self) -> String {
        match self {
            Witness::NotClosed { labels, .. } => {
                format!("image {{{}}} is not closed", labels.join("; "))
            }
            Witness::NotOpen { labels, .. } => {
                format!("image {{{}}} is not open", labels.join("; "))
            }
            Witness::NotEmbedding { label, .. } => format!("not an embedding at {label}"),
            Witness::NeighborhoodMismatch {
                label,
                expected,
                actual,
                ..
            } => format!(
                "neighbourhood of {label} is {{{}}}, expected {{{}}}",
                actual.join("; "),
                expected.join("; ")
            ),
            Witness::Uncovered { label, .. } => {
                format!("point {label} uncovered by any single chart")
            }
            Witness::NotSurjective { label, .. } => format!("point {label} is not in the image"),
            Witness::ImageNotOpen { label, image, .. } => {
                format!(
                    "neighbourhood of {label} maps onto the non-open set {{{}}}",
                    image.join("; ")
                )
            }
        }
    }
}

/// Result of one axiom check on one ring and probe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub ring: String,
    pub probe: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl AxiomReport {
    pub fn pass(axiom: &str, ring: &str, probe: &str) -> Self {
        AxiomReport {
            axiom: axiom.into(),
            ring: ring.into(),
            probe: probe.into(),
            verdict: Verdict::Pass,
            witness: None,
            detail: None,
        }
    }

    pub fn fail(axiom: &str, ring: &str, probe: &str, witness: Witness) -> Self {
        AxiomReport {
            detail: Some(witness.describe()),
            witness: Some(witness),
            verdict: Verdict::Fail,
            ..Self::pass(axiom, ring, probe)
        }
    }

    pub fn skip(axiom: &str, ring: &str, probe: &str, reason: String) -> Self {
        AxiomReport {
            verdict: Verdict::Skip,
            detail: Some(reason),
            ..Self::pass(axiom, ring, probe)
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// One ring's row in a characterization: the intrinsic predicate against the
/// conjunction of the probe battery.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizationRow {
    pub ring: String,
    pub predicate: bool,
    pub battery: bool,
    pub agree: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failing_probes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub skipped_probes: Vec<String>,
}

/// An equivalence checked ring by ring over a corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizationReport {
    pub theorem: String,
    pub statement: String,
    pub rows: Vec<CharacterizationRow>,
    pub verified: bool,
    pub note: String,
}

impl CharacterizationReport {
    pub fn new(theorem: &str, statement: &str, note: &str, rows: Vec<CharacterizationRow>) -> Self {
        let verified = rows.iter().all(|r| r.agree);
        CharacterizationReport {
            theorem: theorem.into(),
            statement: statement.into(),
            rows,
            verified,
            note: note.into(),
        }
    }

    pub fn row(&self, ring: &str) -> Option<&CharacterizationRow> {
        self.rows.iter().find(|r| r.ring == ring)
    }
}
