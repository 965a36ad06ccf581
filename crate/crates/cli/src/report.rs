use serde::Serialize;

use finepoints_core::finring::FiniteRing;
use finepoints_core::fintop::FiniteTopology;
use finepoints_core::rational_points::SchemePoint;

pub const SCHEMA: &str = "finepoints/1";

/// Open-set lists are only emitted up to this many sets.
pub const MAX_LISTED_OPENS: usize = 4096;

#[derive(Serialize)]
pub struct Component {
    pub chart: usize,
    pub values: Vec<String>,
}

#[derive(Serialize)]
pub struct PointEntry {
    pub label: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Component>,
}

#[derive(Serialize)]
pub struct Neighbourhood {
    pub point: String,
    pub min_nbhd: Vec<String>,
}

#[derive(Serialize)]
pub struct TopologyEntry {
    pub min_nbhds: Vec<Neighbourhood>,
    /// `None` when there are more than [`MAX_LISTED_OPENS`] open sets.
    pub opens: Option<Vec<Vec<String>>>,
    pub discrete: bool,
    pub indiscrete: bool,
}

pub fn scheme_point_entry(label: String, p: &SchemePoint, ring: &FiniteRing) -> PointEntry {
    PointEntry {
        label,
        components: p
            .components
            .iter()
            .map(|(chart, values)| Component {
                chart: *chart,
                values: values
                    .iter()
                    .map(|&v| ring.element_label(v).to_string())
                    .collect(),
            })
            .collect(),
    }
}

pub fn topology_entry(labels: &[String], top: &FiniteTopology) -> TopologyEntry {
    let names = |s: &finepoints_core::fintop::PointSet| {
        s.iter().map(|i| labels[i].clone()).collect::<Vec<_>>()
    };
    TopologyEntry {
        min_nbhds: (0..top.size())
            .map(|x| Neighbourhood {
                point: labels[x].clone(),
                min_nbhd: names(top.min_nbhd(x)),
            })
            .collect(),
        opens: top
            .opens(MAX_LISTED_OPENS)
            .ok()
            .map(|os| os.iter().map(names).collect()),
        discrete: top.is_discrete(),
        indiscrete: top.is_indiscrete(),
    }
}

/// Wraps a payload with the schema tag and the command name.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema: &'static str,
    pub command: &'a str,
    #[serde(flatten)]
    pub body: T,
}

pub fn render<T: Serialize>(command: &str, body: T) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA,
        command,
        body,
    })
    .expect("reports serialize");
    s.push('\n');
    s
}
