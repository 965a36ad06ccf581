//! JSON definition documents: named rings, topologies, scheme templates and
//! suites, resolved into library values.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{definition, Error, Result};
use crate::finring::{AlgebraPresentation, Elem, FiniteRing};
use crate::rational_points::{Covering, SchemePresentation, TopRing};

/// Variables allowed in one chart of a user scheme.
pub const MAX_CHART_VARIABLES: usize = 4;
pub const MAX_CHARTS: usize = 8;
pub const MAX_PRODUCT_FACTORS: usize = 6;
/// Explicit open sets accepted for one topology.
pub const MAX_LISTED_OPENS: usize = 4096;

const BUILTIN: &str = include_str!("default.json");

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefinitionDocument {
    #[serde(default)]
    pub rings: BTreeMap<String, RingDef>,
    #[serde(default)]
    pub topologies: BTreeMap<String, TopologyDef>,
    #[serde(default)]
    pub schemes: BTreeMap<String, SchemeDef>,
    #[serde(default)]
    pub suites: BTreeMap<String, SuiteDef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDef {
    Zmod {
        n: usize,
    },
    Product {
        factors: Vec<String>,
    },
    Table {
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        zero: Elem,
        one: Elem,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TopologyDef {
    Discrete { ring: String },
    Indiscrete { ring: String },
    Adic { ring: String, generators: Vec<Elem> },
    Opens { ring: String, opens: Vec<Vec<Elem>> },
}

impl TopologyDef {
    fn ring(&self) -> &str {
        match self {
            TopologyDef::Discrete { ring }
            | TopologyDef::Indiscrete { ring }
            | TopologyDef::Adic { ring, .. }
            | TopologyDef::Opens { ring, .. } => ring,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDef {
    pub variables: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

/// Chart `from` glued into chart `to` along `D(h)`; `images` are written in
/// the variables of `from` plus the inverse variable `u` of `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingDef {
    pub from: usize,
    pub to: usize,
    pub h: String,
    pub images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDef {
    pub chart: usize,
    pub h: String,
}

/// A scheme over the prime ring of whatever ring it is evaluated on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDef {
    pub charts: Vec<ChartDef>,
    #[serde(default)]
    pub gluings: Vec<GluingDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covering: Option<Vec<PieceDef>>,
}

impl SchemeDef {
    fn check_shape(&self, name: &str) -> Result<()> {
        if self.charts.is_empty() || self.charts.len() > MAX_CHARTS {
            return Err(definition(format!(
                "scheme `{name}` must have between 1 and {MAX_CHARTS} charts"
            )));
        }
        if let Some(c) = self
            .charts
            .iter()
            .find(|c| c.variables.len() > MAX_CHART_VARIABLES)
        {
            return Err(definition(format!(
                "scheme `{name}` has a chart with {} variables; the cap is {MAX_CHART_VARIABLES}",
                c.variables.len()
            )));
        }
        Ok(())
    }

    /// The scheme over `k`, with its covering if one is given.
    pub fn instantiate(&self, k: &FiniteRing) -> Result<(SchemePresentation, Option<Covering>)> {
        let charts = self
            .charts
            .iter()
            .map(|c| {
                let vars: Vec<&str> = c.variables.iter().map(String::as_str).collect();
                let rels: Vec<&str> = c.relations.iter().map(String::as_str).collect();
                AlgebraPresentation::parse(k, &vars, &rels)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut x = SchemePresentation::new(charts)?;
        for g in &self.gluings {
            let images: Vec<&str> = g.images.iter().map(String::as_str).collect();
            x.glue_text(g.from, g.to, &g.h, &images)?;
        }
        let covering = match &self.covering {
            None => None,
            Some(pieces) => {
                let pieces: Vec<(usize, &str)> =
                    pieces.iter().map(|p| (p.chart, p.h.as_str())).collect();
                Some(Covering::parse(&x, &pieces)?)
            }
        };
        Ok((x, covering))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteDef {
    pub corpus: Vec<String>,
}

/// A fully resolved definition document. Every ring and topology has been
/// built and every scheme parsed at least once.
#[derive(Clone, Debug)]
pub struct Definitions {
    document: DefinitionDocument,
    rings: BTreeMap<String, FiniteRing>,
    topologies: BTreeMap<String, TopRing>,
}

fn unknown(what: &str, name: &str) -> Error {
    definition(format!("unknown {what} `{name}`"))
}

fn resolve_ring(
    doc: &DefinitionDocument,
    name: &str,
    done: &mut BTreeMap<String, FiniteRing>,
    stack: &mut Vec<String>,
) -> Result<FiniteRing> {
    if let Some(r) = done.get(name) {
        return Ok(r.clone());
    }
    if stack.iter().any(|s| s == name) {
        stack.push(name.to_string());
        return Err(definition(format!(
            "ring definitions form a cycle: {}",
            stack.join(" -> ")
        )));
    }
    let def = doc.rings.get(name).ok_or_else(|| unknown("ring", name))?;
    stack.push(name.to_string());
    let ring = match def {
        RingDef::Zmod { n } => FiniteRing::zmod(*n)?,
        RingDef::Product { factors } => {
            if factors.is_empty() || factors.len() > MAX_PRODUCT_FACTORS {
                return Err(definition(format!(
                    "product ring `{name}` needs between 1 and {MAX_PRODUCT_FACTORS} factors"
                )));
            }
            let rings = factors
                .iter()
                .map(|f| resolve_ring(doc, f, done, stack))
                .collect::<Result<Vec<_>>>()?;
            FiniteRing::product(&rings)?
        }
        RingDef::Table {
            add,
            mul,
            zero,
            one,
        } => FiniteRing::from_tables(name, add.clone(), mul.clone(), *zero, *one).map_err(|e| {
            match e {
                Error::RingAxiom(msg) => Error::RingAxiom(format!("ring `{name}`: {msg}")),
                other => other,
            }
        })?,
    };
    stack.pop();
    done.insert(name.to_string(), ring.clone());
    Ok(ring)
}

fn resolve_topology(name: &str, def: &TopologyDef, ring: &FiniteRing) -> Result<TopRing> {
    let t = match def {
        TopologyDef::Discrete { .. } => TopRing::discrete(ring)?,
        TopologyDef::Indiscrete { .. } => TopRing::indiscrete(ring)?,
        TopologyDef::Adic { generators, .. } => TopRing::adic(ring, generators)?,
        TopologyDef::Opens { opens, .. } => {
            if opens.len() > MAX_LISTED_OPENS {
                return Err(definition(format!(
                    "topology `{name}` lists more than {MAX_LISTED_OPENS} open sets"
                )));
            }
            TopRing::from_opens(ring, opens)?
        }
    };
    Ok(t.relabeled(name))
}

impl Definitions {
    /// Resolves every entry of `document`.
    pub fn from_document(document: DefinitionDocument) -> Result<Self> {
        let mut rings = BTreeMap::new();
        for name in document.rings.keys() {
            resolve_ring(&document, name, &mut rings, &mut Vec::new())?;
        }
        let mut topologies = BTreeMap::new();
        for (name, def) in &document.topologies {
            let ring = rings
                .get(def.ring())
                .ok_or_else(|| unknown("ring", def.ring()))?;
            topologies.insert(name.clone(), resolve_topology(name, def, ring)?);
        }
        let probe_base = FiniteRing::zmod(2)?;
        for (name, def) in &document.schemes {
            def.check_shape(name)?;
            def.instantiate(&probe_base)
                .map_err(|e| definition(format!("scheme `{name}`: {e}")))?;
        }
        for (name, suite) in &document.suites {
            if let Some(t) = suite.corpus.iter().find(|t| !topologies.contains_key(*t)) {
                return Err(definition(format!(
                    "suite `{name}` refers to unknown topology `{t}`"
                )));
            }
        }
        Ok(Definitions {
            document,
            rings,
            topologies,
        })
    }

    /// The built-in document.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("built-in definitions are valid")
    }

    /// A standalone document.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: DefinitionDocument = serde_json::from_str(text)
            .map_err(|e| definition(format!("malformed definition document: {e}")))?;
        Self::from_document(doc)
    }

    /// The built-in document with the entries of `text` added; entries of
    /// `text` replace built-in entries of the same name.
    pub fn builtin_with(text: &str) -> Result<Self> {
        let mut doc: DefinitionDocument =
            serde_json::from_str(BUILTIN).expect("built-in definitions parse");
        let user: DefinitionDocument = serde_json::from_str(text)
            .map_err(|e| definition(format!("malformed definition document: {e}")))?;
        doc.rings.extend(user.rings);
        doc.topologies.extend(user.topologies);
        doc.schemes.extend(user.schemes);
        doc.suites.extend(user.suites);
        Self::from_document(doc)
    }

    pub fn document(&self) -> &DefinitionDocument {
        &self.document
    }

    pub fn ring(&self, name: &str) -> Result<&FiniteRing> {
        self.rings.get(name).ok_or_else(|| unknown("ring", name))
    }

    pub fn topology(&self, name: &str) -> Result<&TopRing> {
        self.topologies
            .get(name)
            .ok_or_else(|| unknown("topology", name))
    }

    pub fn scheme_def(&self, name: &str) -> Result<&SchemeDef> {
        self.document
            .schemes
            .get(name)
            .ok_or_else(|| unknown("scheme", name))
    }

    /// Scheme `name` over the base ring of `r`.
    pub fn scheme(
        &self,
        name: &str,
        r: &TopRing,
    ) -> Result<(SchemePresentation, Option<Covering>)> {
        self.scheme_def(name)?.instantiate(r.base())
    }

    /// Topologies of suite `name`, in corpus order.
    pub fn suite(&self, name: &str) -> Result<Vec<TopRing>> {
        let def = self
            .document
            .suites
            .get(name)
            .ok_or_else(|| unknown("suite", name))?;
        def.corpus
            .iter()
            .map(|t| self.topology(t).cloned())
            .collect()
    }
}

/// Parses and resolves a standalone definition document.
pub fn parse_definitions(text: &str) -> Result<Definitions> {
    Definitions::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::default_corpus;

    #[test]
    fn builtin_default_suite_matches_library_corpus() {
        let defs = Definitions::builtin();
        let suite = defs.suite("default").unwrap();
        let corpus = default_corpus().unwrap();
        assert_eq!(suite.len(), corpus.len());
        for (a, b) in suite.iter().zip(&corpus) {
            assert_eq!(a.label(), b.label());
            assert_eq!(a.topology(), b.topology());
            assert_eq!(a.ring(), b.ring());
        }
    }

    #[test]
    fn builtin_schemes_instantiate() {
        let defs = Definitions::builtin();
        let z6 = defs.topology("Z6_discrete").unwrap();
        let (p1, cov) = defs.scheme("P1", z6).unwrap();
        assert_eq!(p1.charts().len(), 2);
        assert!(cov.is_none());
        let (_, cov) = defs.scheme("SpecZ6_D3D4", z6).unwrap();
        assert_eq!(cov.unwrap().pieces().len(), 2);
    }

    #[test]
    fn ring_cycles_are_reported() {
        let text = r#"{"rings": {"A": {"kind": "product", "factors": ["B"]},
                                 "B": {"kind": "product", "factors": ["A"]}}}"#;
        let err = parse_definitions(text).unwrap_err();
        assert!(err.to_string().contains("cycle"), "{err}");
    }

    #[test]
    fn corrupted_table_is_a_ring_axiom_error() {
        // Z/2 with 1 + 1 = 1
        let text = r#"{"rings": {"bad": {"kind": "table", "add": [[0,1],[1,1]], "mul": [[0,0],[0,1]], "zero": 0, "one": 1}}}"#;
        assert!(matches!(parse_definitions(text), Err(Error::RingAxiom(_))));
    }

    #[test]
    fn table_ring_round_trip() {
        let text = r#"{"rings": {"F2": {"kind": "table", "add": [[0,1],[1,0]], "mul": [[0,0],[0,1]], "zero": 0, "one": 1}},
                       "topologies": {"F2_d": {"kind": "discrete", "ring": "F2"}}}"#;
        let defs = parse_definitions(text).unwrap();
        assert_eq!(defs.topology("F2_d").unwrap().ring().characteristic(), 2);
        let again: DefinitionDocument =
            serde_json::from_str(&serde_json::to_string(defs.document()).unwrap()).unwrap();
        assert_eq!(&again, defs.document());
    }

    #[test]
    fn rejects_bad_references_and_caps() {
        for text in [
            r#"{"topologies": {"t": {"kind": "discrete", "ring": "nope"}}}"#,
            r#"{"suites": {"s": {"corpus": ["nope"]}}}"#,
            r#"{"schemes": {"big": {"charts": [{"variables": ["a","b","c","d","e"]}]}}}"#,
            r#"{"schemes": {"bad": {"charts": [{"variables": ["x"], "relations": ["x +"]}]}}}"#,
            r#"{"rings": {"r": {"kind": "zmod", "n": 65}}}"#,
            r#"{"rings": {"r": {"kind": "zmod", "n": 4, "extra": 1}}}"#,
            r#"{"unknown": {}}"#,
            "not json",
        ] {
            assert!(parse_definitions(text).is_err(), "{text}");
        }
    }

    #[test]
    fn user_entries_override_builtin() {
        let defs = Definitions::builtin_with(
            r#"{"topologies": {"Z4_2adic": {"kind": "discrete", "ring": "Z4"}}}"#,
        )
        .unwrap();
        assert!(defs.topology("Z4_2adic").unwrap().topology().is_discrete());
        assert!(defs.topology("Z9_3adic").is_ok());
    }
}
