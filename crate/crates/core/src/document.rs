//! The JSON document for a graph map with named loops.
//!
//! ```json
//! {"edges": [...], "format_version": "1", "images": {edge: word},
//!  "loops": {name: word}, "vertices": {"incidence": {edge: [init, term]}}}
//! ```
//!
//! Output is canonical: keys sorted, two-space indentation, trailing newline,
//! no floating point. When `vertices` is absent the graph is inferred from the
//! images and the loops (loops closed).

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::FamilyMember;
use crate::graphmap::{infer_map_graph, Graph, GraphError, GraphMap, VertexId};
use crate::words::{Alphabet, Word, WordError};

/// Environment variable pinning the schema version.
pub const FORMAT_VERSION_ENV: &str = "TRACKRATE_FORMAT_VERSION";
pub const FORMAT_VERSION: &str = "1";

/// Name of the boundary loop written by the generators.
pub const BOUNDARY_LOOP: &str = "sigma";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Schema(String),
    #[error("unsupported format version `{0}` (supported: {FORMAT_VERSION})")]
    FormatVersion(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The schema version pinned by the environment, `"1"` when unset.
pub fn format_version_from_env() -> Result<String, DocumentError> {
    match std::env::var(FORMAT_VERSION_ENV) {
        Err(_) => Ok(FORMAT_VERSION.to_string()),
        Ok(v) if v == FORMAT_VERSION => Ok(v),
        Ok(v) => Err(DocumentError::FormatVersion(v)),
    }
}

// fields in key order, so serialization is already sorted
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    edges: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format_version: Option<String>,
    images: BTreeMap<String, String>,
    #[serde(default)]
    loops: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<RawVertices>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertices {
    incidence: BTreeMap<String, [String; 2]>,
}

/// A graph map together with named loops in its graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDocument {
    pub map: GraphMap,
    pub loops: BTreeMap<String, Word>,
}

impl MapDocument {
    pub fn new(map: GraphMap, loops: BTreeMap<String, Word>) -> Self {
        MapDocument { map, loops }
    }

    pub fn from_member(member: &FamilyMember) -> Self {
        let loops = member
            .boundary
            .iter()
            .map(|b| (BOUNDARY_LOOP.to_string(), b.to_word()))
            .collect();
        MapDocument { map: member.map.clone(), loops }
    }

    /// The loop named `sigma`, or the only loop if there is exactly one.
    pub fn boundary(&self) -> Option<&Word> {
        self.loops.get(BOUNDARY_LOOP).or_else(|| match self.loops.len() {
            1 => self.loops.values().next(),
            _ => None,
        })
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))?;
        if let Some(v) = &raw.format_version {
            if v != FORMAT_VERSION {
                return Err(DocumentError::FormatVersion(v.clone()));
            }
        }
        let alphabet = Alphabet::new(raw.edges.iter().cloned())?;
        check_keys("images", raw.images.keys(), &alphabet)?;
        let images = alphabet
            .names()
            .iter()
            .map(|name| alphabet.parse_word(&raw.images[name]))
            .collect::<Result<Vec<Word>, _>>()?;
        let loops = raw
            .loops
            .iter()
            .map(|(name, w)| Ok((name.clone(), alphabet.parse_word(w)?)))
            .collect::<Result<BTreeMap<String, Word>, WordError>>()?;
        let graph = match &raw.vertices {
            Some(v) => graph_from_incidence(alphabet, &v.incidence)?,
            None => {
                let loop_words: Vec<Word> = loops.values().cloned().collect();
                infer_map_graph(&alphabet, &images, &loop_words)?
            }
        };
        let map = GraphMap::from_words(graph, images)?;
        Ok(MapDocument { map, loops })
    }

    /// Canonical JSON with explicit incidence.
    pub fn to_json(&self) -> String {
        let graph = self.map.graph();
        let alphabet = graph.alphabet();
        let images = alphabet
            .edges()
            .map(|e| (alphabet.name(e).to_string(), alphabet.render(self.map.image(e))))
            .collect();
        let loops = self
            .loops
            .iter()
            .map(|(name, w)| (name.clone(), alphabet.render(w.letters())))
            .collect();
        let incidence = alphabet
            .edges()
            .map(|e| {
                let (s, t) = graph.endpoints(e);
                let ends = [graph.vertex_name(s).to_string(), graph.vertex_name(t).to_string()];
                (alphabet.name(e).to_string(), ends)
            })
            .collect();
        let raw = RawDocument {
            edges: alphabet.names().to_vec(),
            format_version: Some(FORMAT_VERSION.to_string()),
            images,
            loops,
            vertices: Some(RawVertices { incidence }),
        };
        let mut out = serde_json::to_string_pretty(&raw).expect("plain strings serialize");
        out.push('\n');
        out
    }
}

fn check_keys<'a>(
    field: &str,
    keys: impl Iterator<Item = &'a String>,
    alphabet: &Alphabet,
) -> Result<(), DocumentError> {
    let keys: Vec<&String> = keys.collect();
    if let Some(extra) = keys.iter().find(|k| !alphabet.names().contains(k)) {
        return Err(DocumentError::Schema(format!("{field}: `{extra}` is not an edge")));
    }
    if let Some(missing) = alphabet.names().iter().find(|n| !keys.contains(n)) {
        return Err(DocumentError::Schema(format!("{field}: no entry for edge `{missing}`")));
    }
    Ok(())
}

/// Vertices are numbered in order of first appearance along the edge list.
fn graph_from_incidence<'a>(
    alphabet: Alphabet,
    incidence: &'a BTreeMap<String, [String; 2]>,
) -> Result<Graph, DocumentError> {
    check_keys("vertices.incidence", incidence.keys(), &alphabet)?;
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<&str, VertexId> = HashMap::new();
    let mut ends = Vec::with_capacity(alphabet.len());
    for name in alphabet.names() {
        let [s, t] = &incidence[name];
        let mut id = |v: &'a String| {
            *ids.entry(v.as_str()).or_insert_with(|| {
                names.push(v.clone());
                VertexId(names.len() - 1)
            })
        };
        let (s, t) = (id(s), id(t));
        ends.push((s, t));
    }
    Ok(Graph::new(alphabet, names, ends)?)
}
