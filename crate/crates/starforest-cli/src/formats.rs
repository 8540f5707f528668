//! On-disk formats: instance files (JSON or plain edge list) and the
//! certificate JSON emitted by `decompose` and `oracle`. Unknown JSON
//! fields are rejected so certificates stay unambiguous.

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use starforest::graph::{BipartiteGraph, Decomposition, StarForest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    Json,
    Edgelist,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub k: usize,
    pub m: usize,
    pub edges: Vec<(usize, usize)>,
}

impl InstanceFile {
    pub fn from_graph(g: &BipartiteGraph) -> Self {
        InstanceFile {
            k: g.x_count(),
            m: g.y_count(),
            edges: g.edges().collect(),
        }
    }

    pub fn into_graph(self) -> Result<BipartiteGraph> {
        BipartiteGraph::new(self.k, self.m, self.edges).map_err(|e| anyhow!(e))
    }
}

pub fn parse_instance(text: &str, format: FileFormat) -> Result<BipartiteGraph> {
    match format {
        FileFormat::Json => {
            let file: InstanceFile =
                serde_json::from_str(text).context("instance JSON did not parse")?;
            file.into_graph()
        }
        FileFormat::Edgelist => {
            let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
            let header = lines.next().ok_or_else(|| anyhow!("empty edge list"))?;
            let mut parts = header.split_whitespace();
            let k: usize = parts
                .next()
                .ok_or_else(|| anyhow!("missing k in header"))?
                .parse()
                .context("bad k in header")?;
            let m: usize = parts
                .next()
                .ok_or_else(|| anyhow!("missing m in header"))?
                .parse()
                .context("bad m in header")?;
            if parts.next().is_some() {
                bail!("header must be exactly 'k m'");
            }
            let mut edges = Vec::new();
            for line in lines {
                let mut nums = line.split_whitespace();
                let x: usize = nums
                    .next()
                    .ok_or_else(|| anyhow!("missing x in edge line"))?
                    .parse()
                    .context("bad x index")?;
                let y: usize = nums
                    .next()
                    .ok_or_else(|| anyhow!("missing y in edge line '{line}'"))?
                    .parse()
                    .context("bad y index")?;
                if nums.next().is_some() {
                    bail!("edge line must be exactly 'x y', got '{line}'");
                }
                edges.push((x, y));
            }
            BipartiteGraph::new(k, m, edges).map_err(|e| anyhow!(e))
        }
    }
}

pub fn emit_instance(g: &BipartiteGraph, format: FileFormat) -> String {
    match format {
        FileFormat::Json => {
            serde_json::to_string_pretty(&InstanceFile::from_graph(g)).expect("serializable")
        }
        FileFormat::Edgelist => {
            let mut out = format!("{} {}\n", g.x_count(), g.y_count());
            for (x, y) in g.edges() {
                out.push_str(&format!("{x} {y}\n"));
            }
            out
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForestEntry {
    pub size: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub n: usize,
    pub forests: Vec<ForestEntry>,
    pub verified: bool,
    #[serde(rename = "solverPath")]
    pub solver_path: String,
}

impl CertificateFile {
    pub fn from_decomposition(dec: &Decomposition, verified: bool, solver_path: &str) -> Self {
        CertificateFile {
            n: dec.len(),
            forests: dec
                .forests()
                .iter()
                .map(|f| ForestEntry {
                    size: f.edge_count(),
                    edges: f.edges().collect(),
                })
                .collect(),
            verified,
            solver_path: solver_path.to_string(),
        }
    }

    pub fn into_decomposition(self) -> Result<Decomposition> {
        let mut forests = Vec::with_capacity(self.forests.len());
        for (i, entry) in self.forests.into_iter().enumerate() {
            if entry.size != entry.edges.len() {
                bail!(
                    "forest {} declares size {} but lists {} edges",
                    i + 1,
                    entry.size,
                    entry.edges.len()
                );
            }
            forests.push(StarForest::new(entry.edges));
        }
        Ok(Decomposition::new(forests))
    }
}

pub fn parse_certificate(text: &str) -> Result<CertificateFile> {
    serde_json::from_str(text).context("certificate JSON did not parse")
}

pub fn emit_certificate(cert: &CertificateFile) -> String {
    serde_json::to_string_pretty(cert).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph() -> impl Strategy<Value = BipartiteGraph> {
        (1usize..6, 1usize..7).prop_flat_map(|(k, m)| {
            prop::collection::btree_set((1..=k, 1..=m), 0..=(k * m).min(12)).prop_map(
                move |edges| BipartiteGraph::new(k, m, edges).expect("in-range, deduplicated"),
            )
        })
    }

    proptest! {
        #[test]
        fn instance_round_trips_in_both_formats(g in arb_graph()) {
            for format in [FileFormat::Json, FileFormat::Edgelist] {
                let text = emit_instance(&g, format);
                let back = parse_instance(&text, format).unwrap();
                prop_assert_eq!(&back, &g);
            }
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"k": 1, "m": 1, "edges": [[1, 1]], "extra": 0}"#;
        assert!(parse_instance(text, FileFormat::Json).is_err());
        let cert = r#"{"n": 1, "forests": [], "verified": true, "solverPath": "x", "zz": 1}"#;
        assert!(parse_certificate(cert).is_err());
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let cert = r#"{"n": 1, "forests": [{"size": 2, "edges": [[1, 1]]}], "verified": true, "solverPath": "heuristic"}"#;
        assert!(parse_certificate(cert).unwrap().into_decomposition().is_err());
    }
}
