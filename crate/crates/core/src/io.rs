//! Wire formats: JSON documents for graphs, families, witnesses and
//! results, a plain edge-list text format, and DOT export.
//!
//! Writers are canonical: writing a freshly parsed document reproduces the
//! input byte for byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chains::{ChainT1, T2Pair};
use crate::graph::{Graph, GraphError, VertexLabel, VertexSet};
use crate::nbh::{FamilyError, NbhFamily};
use crate::solver::{Certificate, CertifyOutcome, MagicResult, SearchStats};

#[derive(Debug, Error)]
pub enum IoError {
    // Display already embeds the full serde message, so no source chain here;
    // anyhow's alternate format would otherwise print the message twice.
    #[error("json: {0}")]
    Json(serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("{got} labels for {want} vertices")]
    LabelCount { got: usize, want: usize },
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("wire documents always serialize")
}

pub fn from_json<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T, IoError> {
    Ok(serde_json::from_str(s)?)
}

/// Graph on the wire: order, sorted edge list, optional display labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Option<String>>>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> Self {
        let labels = if g.vertices().any(|v| g.label(v).is_some()) {
            Some(
                g.vertices()
                    .map(|v| g.label(v).map(|l| l.to_string()))
                    .collect(),
            )
        } else {
            None
        };
        GraphDoc {
            n: g.order(),
            edges: g.edges(),
            labels,
        }
    }

    pub fn into_graph(self) -> Result<Graph, IoError> {
        let mut g = Graph::from_edge_list(self.n, &self.edges)?;
        if let Some(labels) = self.labels {
            if labels.len() != self.n {
                return Err(IoError::LabelCount {
                    got: labels.len(),
                    want: self.n,
                });
            }
            for (v, label) in labels.into_iter().enumerate() {
                if let Some(s) = label {
                    let parsed = match VertexLabel::parse_grid(&s) {
                        Some((row, col)) => VertexLabel::GridCoord { row, col },
                        None => VertexLabel::Name(s),
                    };
                    g.set_label(v, parsed);
                }
            }
        }
        Ok(g)
    }
}

pub fn write_graph_json(g: &Graph) -> String {
    to_json(&GraphDoc::from_graph(g))
}

pub fn read_graph_json(s: &str) -> Result<Graph, IoError> {
    from_json::<GraphDoc>(s)?.into_graph()
}

/// Set family on the wire: universe size plus sorted terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub universe: usize,
    pub terms: Vec<Vec<usize>>,
}

impl FamilyDoc {
    pub fn from_family(f: &NbhFamily) -> Self {
        FamilyDoc {
            universe: f.universe(),
            terms: f.terms().iter().map(|t| t.as_slice().to_vec()).collect(),
        }
    }

    pub fn into_family(self) -> Result<NbhFamily, IoError> {
        Ok(NbhFamily::from_sets(
            self.universe,
            self.terms.into_iter().map(VertexSet::from_iter).collect(),
        )?)
    }
}

pub fn write_family_json(f: &NbhFamily) -> String {
    to_json(&FamilyDoc::from_family(f))
}

pub fn read_family_json(s: &str) -> Result<NbhFamily, IoError> {
    from_json::<FamilyDoc>(s)?.into_family()
}

/// Type-1 chain witness on the wire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainWitnessDoc {
    pub centers: Vec<usize>,
    pub v_first: usize,
    pub v_last: usize,
    pub terms: Vec<Vec<usize>>,
}

impl ChainWitnessDoc {
    pub fn from_chain(c: &ChainT1) -> Self {
        ChainWitnessDoc {
            centers: c.centers.clone(),
            v_first: c.v_first,
            v_last: c.v_last,
            terms: c.terms.iter().map(|t| t.as_slice().to_vec()).collect(),
        }
    }
}

/// Type-2 pair witness on the wire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct T2WitnessDoc {
    pub first: ChainWitnessDoc,
    pub second: ChainWitnessDoc,
    pub start: Vec<usize>,
    pub end: Vec<usize>,
    pub middle: Vec<Vec<usize>>,
}

impl T2WitnessDoc {
    pub fn from_pair(p: &T2Pair) -> Self {
        T2WitnessDoc {
            first: ChainWitnessDoc::from_chain(&p.first),
            second: ChainWitnessDoc::from_chain(&p.second),
            start: p.start_witness.as_slice().to_vec(),
            end: p.end_witness.as_slice().to_vec(),
            middle: p
                .middle_witnesses
                .iter()
                .map(|w| w.as_slice().to_vec())
                .collect(),
        }
    }
}

/// Solver or certifier outcome on the wire. Every field is present; absent
/// values are null.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub verdict: String,
    #[serde(rename = "S")]
    pub s: Option<usize>,
    pub labeling: Option<Vec<usize>>,
    pub certificate: Option<Certificate>,
    pub stats: Option<SearchStats>,
}

impl ResultDoc {
    pub fn from_solve(result: &MagicResult, stats: SearchStats) -> Self {
        match result {
            MagicResult::Magic { constant, labeling } => ResultDoc {
                verdict: "magic".into(),
                s: Some(*constant),
                labeling: Some(labeling.as_slice().to_vec()),
                certificate: None,
                stats: Some(stats),
            },
            MagicResult::NotMagic => ResultDoc {
                verdict: "not_magic".into(),
                s: None,
                labeling: None,
                certificate: None,
                stats: Some(stats),
            },
        }
    }

    pub fn from_certify(outcome: &CertifyOutcome) -> Self {
        match outcome {
            CertifyOutcome::NotMagic { certificate } => ResultDoc {
                verdict: "not_magic".into(),
                s: None,
                labeling: None,
                certificate: Some(certificate.clone()),
                stats: None,
            },
            CertifyOutcome::Magic { constant, labeling } => ResultDoc {
                verdict: "magic".into(),
                s: Some(*constant),
                labeling: Some(labeling.as_slice().to_vec()),
                certificate: None,
                stats: None,
            },
            CertifyOutcome::Inconclusive => ResultDoc {
                verdict: "inconclusive".into(),
                s: None,
                labeling: None,
                certificate: None,
                stats: None,
            },
        }
    }
}

/// Parse the plain text format: optional `n <count>` header, one `u v` pair
/// per line, `#` starts a comment.
pub fn read_edge_list(text: &str) -> Result<Graph, IoError> {
    let mut order = None;
    let mut edges = Vec::new();
    let mut max_id = None::<usize>;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: &str| IoError::EdgeList {
            line: idx + 1,
            message: message.to_string(),
        };
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some("n"), Some(count), None) => {
                if order.is_some() {
                    return Err(err("duplicate order header"));
                }
                order = Some(count.parse().map_err(|_| err("bad vertex count"))?);
            }
            (Some(a), Some(b), None) => {
                let u: usize = a.parse().map_err(|_| err("bad endpoint"))?;
                let v: usize = b.parse().map_err(|_| err("bad endpoint"))?;
                max_id = Some(max_id.unwrap_or(0).max(u).max(v));
                edges.push((u, v));
            }
            _ => return Err(err("expected 'n <count>' or '<u> <v>'")),
        }
    }
    let order = order.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    Ok(Graph::from_edge_list(order, &edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// DOT rendering. With `centers` given, edges inside some center's closed
/// neighborhood stay solid and all others go dashed; centers are drawn with
/// a double border. Vertices and edges appear in ascending order.
pub fn write_dot(g: &Graph, centers: &[usize]) -> String {
    let hoods: Vec<VertexSet> = centers.iter().map(|&c| g.closed_neighborhood(c)).collect();
    let mut out = String::from("graph {\n");
    for v in g.vertices() {
        let mut attrs = Vec::new();
        if let Some(l) = g.label(v) {
            attrs.push(format!("label=\"{l}\""));
        }
        if centers.contains(&v) {
            attrs.push("shape=doublecircle".to_string());
        }
        if attrs.is_empty() {
            out.push_str(&format!("  {v};\n"));
        } else {
            out.push_str(&format!("  {v} [{}];\n", attrs.join(", ")));
        }
    }
    for (u, v) in g.edges() {
        let solid =
            centers.is_empty() || hoods.iter().any(|h| h.contains(u) && h.contains(v));
        if solid {
            out.push_str(&format!("  {u} -- {v};\n"));
        } else {
            out.push_str(&format!("  {u} -- {v} [style=dashed];\n"));
        }
    }
    out.push('}');
    out.push('\n');
    out
}
