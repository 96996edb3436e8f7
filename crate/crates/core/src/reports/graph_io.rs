//! Graph serialization.
//!
//! `edge_csv` is the only re-importable format. Its header is
//! `source,target,weight`; nodes are written as canonical provision keys
//! (`<statute> Art. <article>`), edges in canonical order. Isolated nodes
//! follow the edges as rows with empty `target` and `weight`, so a round
//! trip preserves the node count.

use std::fmt::Write as _;
use std::io::Read;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::ProvisionId;
use crate::network::{CoCitationNetwork, NetworkError};

use super::csv_string;

pub const EDGE_CSV_HEADER: [&str; 3] = ["source", "target", "weight"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeCsv,
    GraphMl,
    Dot,
}

impl GraphFormat {
    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::EdgeCsv => "csv",
            GraphFormat::GraphMl => "graphml",
            GraphFormat::Dot => "dot",
        }
    }
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge_csv" | "edge-csv" | "csv" => Ok(GraphFormat::EdgeCsv),
            "graphml" => Ok(GraphFormat::GraphMl),
            "dot" => Ok(GraphFormat::Dot),
            other => Err(format!(
                "unknown graph format `{other}` (expected edge_csv, graphml or dot)"
            )),
        }
    }
}

#[derive(Debug, Error)]
pub enum ImportError {
    #[error("failed to read graph: {0}")]
    Csv(#[from] csv::Error),
    #[error("expected header `source,target,weight`, found `{0}`")]
    Header(String),
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
}

pub fn export_graph(net: &CoCitationNetwork, format: GraphFormat) -> Vec<u8> {
    match format {
        GraphFormat::EdgeCsv => edge_csv(net).into_bytes(),
        GraphFormat::GraphMl => graphml(net).into_bytes(),
        GraphFormat::Dot => dot(net).into_bytes(),
    }
}

fn edge_csv(net: &CoCitationNetwork) -> String {
    let nodes = net.nodes();
    let mut rows: Vec<Vec<String>> = vec![EDGE_CSV_HEADER.iter().map(|s| s.to_string()).collect()];
    let mut touched = vec![false; nodes.len()];
    for e in net.edges() {
        touched[e.source] = true;
        touched[e.target] = true;
        rows.push(vec![nodes[e.source].key(), nodes[e.target].key(), e.weight.to_string()]);
    }
    for (node, _) in nodes.iter().zip(&touched).filter(|(_, &t)| !t) {
        rows.push(vec![node.key(), String::new(), String::new()]);
    }
    csv_string(rows)
}

pub fn import_graph<R: Read>(source: R) -> Result<CoCitationNetwork, ImportError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(source);
    let header = reader.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != EDGE_CSV_HEADER {
        return Err(ImportError::Header(header.iter().collect::<Vec<_>>().join(",")));
    }

    let mut net = CoCitationNetwork::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let row_err = |message: String| ImportError::Row { line, message };
        if record.len() != 3 {
            return Err(row_err(format!("expected 3 fields, found {}", record.len())));
        }
        let (source, target, weight) = (&record[0], &record[1], &record[2]);
        if source.is_empty() {
            return Err(row_err("empty source".into()));
        }
        let a = net.add_node(ProvisionId::from_key(source));
        if target.is_empty() && weight.is_empty() {
            continue;
        }
        if target.is_empty() {
            return Err(row_err("empty target".into()));
        }
        let weight: u32 = weight
            .parse()
            .map_err(|_| row_err(format!("invalid weight `{weight}`")))?;
        let b = net.add_node(ProvisionId::from_key(target));
        net.insert_edge(a, b, weight).map_err(|e| match e {
            NetworkError::ZeroWeight(..) => row_err("weight must be at least 1".into()),
            NetworkError::SelfLoop(n) => row_err(format!("self-loop on `{n}`")),
            NetworkError::DuplicateEdge(x, y) => row_err(format!("duplicate undirected pair `{x}`-`{y}`")),
            other => row_err(other.to_string()),
        })?;
    }
    Ok(net)
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn graphml(net: &CoCitationNetwork) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    for key in ["statute", "article", "label", "status"] {
        let _ = writeln!(
            out,
            "  <key id=\"{key}\" for=\"node\" attr.name=\"{key}\" attr.type=\"string\"/>"
        );
    }
    out.push_str("  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n");
    out.push_str("  <graph id=\"cocitation\" edgedefault=\"undirected\">\n");
    for (i, node) in net.nodes().iter().enumerate() {
        let _ = writeln!(out, "    <node id=\"n{i}\">");
        let _ = writeln!(out, "      <data key=\"statute\">{}</data>", xml_escape(&node.statute));
        let _ = writeln!(out, "      <data key=\"article\">{}</data>", xml_escape(&node.article));
        let label = node.label.map(String::from).unwrap_or_default();
        let _ = writeln!(out, "      <data key=\"label\">{}</data>", xml_escape(&label));
        let _ = writeln!(out, "      <data key=\"status\">{}</data>", node.status.as_str());
        out.push_str("    </node>\n");
    }
    for (i, e) in net.edges().enumerate() {
        let _ = writeln!(
            out,
            "    <edge id=\"e{i}\" source=\"n{}\" target=\"n{}\"><data key=\"weight\">{}</data></edge>",
            e.source, e.target, e.weight
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot(net: &CoCitationNetwork) -> String {
    let mut out = String::from("graph cocitation {\n");
    for (i, node) in net.nodes().iter().enumerate() {
        let _ = writeln!(
            out,
            "  n{i} [label=\"{}\", tooltip=\"{}\"];",
            dot_escape(&node.display_name()),
            dot_escape(&node.key())
        );
    }
    for e in net.edges() {
        let _ = writeln!(
            out,
            "  n{} -- n{} [label=\"{}\", weight={}];",
            e.source, e.target, e.weight, e.weight
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ProvisionId {
        ProvisionId::new(s, "")
    }

    fn weighted(pairs: &[(&str, &str, u32)]) -> CoCitationNetwork {
        let mut net = CoCitationNetwork::new();
        for &(a, b, w) in pairs {
            let (a, b) = (net.add_node(p(a)), net.add_node(p(b)));
            net.insert_edge(a, b, w).unwrap();
        }
        net
    }

    fn as_text(net: &CoCitationNetwork, format: GraphFormat) -> String {
        String::from_utf8(export_graph(net, format)).unwrap()
    }

    #[test]
    fn edge_csv_body() {
        let text = as_text(&weighted(&[("A", "B", 2)]), GraphFormat::EdgeCsv);
        assert_eq!(text, "source,target,weight\nA,B,2\n");
    }

    #[test]
    fn empty_network_exports() {
        let net = CoCitationNetwork::new();
        assert_eq!(as_text(&net, GraphFormat::EdgeCsv), "source,target,weight\n");
        assert_eq!(as_text(&net, GraphFormat::Dot), "graph cocitation {\n}\n");
        let gml = as_text(&net, GraphFormat::GraphMl);
        assert!(gml.starts_with("<?xml"));
        assert!(gml.trim_end().ends_with("</graphml>"));
        assert!(!gml.contains("<node"));
    }

    #[test]
    fn round_trip_with_isolate_and_real_keys() {
        let mut net = weighted(&[("A", "B", 2), ("B", "C", 1)]);
        net.add_node(ProvisionId::new("Civil Code", "1032"));
        let a = net.add_node(ProvisionId::new("Contract Law, amended", "60"));
        let b = net.add_node(ProvisionId::new("Contract Law, amended", "107"));
        net.insert_edge(a, b, 7).unwrap();
        let back = import_graph(&export_graph(&net, GraphFormat::EdgeCsv)[..]).unwrap();
        assert_eq!(back, net);
        assert_eq!(back.node_count(), 6);
    }

    #[test]
    fn import_single_edge() {
        let net = import_graph("source,target,weight\nA,B,1\n".as_bytes()).unwrap();
        assert_eq!(net, weighted(&[("A", "B", 1)]));
    }

    #[test]
    fn import_rejects_reversed_duplicate() {
        let err = import_graph("source,target,weight\nA,B,1\nB,A,2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ImportError::Row { line: 3, .. }), "{err}");
    }

    #[test]
    fn import_rejects_zero_weight() {
        let err = import_graph("source,target,weight\nA,B,0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ImportError::Row { line: 2, .. }));
    }

    #[test]
    fn import_rejects_self_loop_and_garbage() {
        assert!(import_graph("source,target,weight\nA,A,1\n".as_bytes()).is_err());
        assert!(import_graph("source,target,weight\nA,B,x\n".as_bytes()).is_err());
        assert!(import_graph("source,target,weight\nA,B,-1\n".as_bytes()).is_err());
        assert!(import_graph("source,target,weight\nA,B\n".as_bytes()).is_err());
        assert!(matches!(
            import_graph("a,b,c\n".as_bytes()).unwrap_err(),
            ImportError::Header(_)
        ));
    }

    #[test]
    fn graphml_attributes() {
        let mut net = weighted(&[("A", "B", 2)]);
        net.assign_labels(&Default::default());
        let gml = as_text(&net, GraphFormat::GraphMl);
        assert!(gml.contains("<data key=\"label\">A</data>"));
        assert!(gml.contains("<data key=\"statute\">A</data>"));
        assert!(gml.contains("source=\"n0\" target=\"n1\"><data key=\"weight\">2</data>"));
    }

    #[test]
    fn dot_layout() {
        let text = as_text(&weighted(&[("A", "B", 3)]), GraphFormat::Dot);
        assert!(text.contains("n0 -- n1 [label=\"3\", weight=3];"));
    }
}
