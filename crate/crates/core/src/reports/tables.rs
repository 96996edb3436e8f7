//! Tabular reports: the affiliation matrix, node and network metrics, and
//! plain-text summaries of clusters and alerts.

use std::fmt::Write as _;

use crate::metrics::{NetworkMetrics, NodeMetrics};
use crate::network::AffiliationMatrix;
use crate::typology::{CaseCluster, DeviationAlert};

use super::csv_string;

/// Presentation form of a real: three decimals with trailing zeros removed
/// (`32.067`, `0.4`, `0`), or the shortest exact representation when
/// `precise` is set.
pub fn format_real(value: f64, precise: bool) -> String {
    if precise {
        return format!("{value}");
    }
    let s = format!("{value:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

pub fn matrix_csv(matrix: &AffiliationMatrix) -> String {
    let mut rows = Vec::with_capacity(matrix.n_rows() + 1);
    let mut header = vec!["provision".to_string()];
    header.extend(matrix.judgments().iter().cloned());
    rows.push(header);
    for (i, p) in matrix.provisions().iter().enumerate() {
        let mut row = vec![p.key()];
        row.extend(matrix.row(i).iter().map(|&c| if c { "1" } else { "0" }.to_string()));
        rows.push(row);
    }
    csv_string(rows)
}

/// `provision,label,degree,betweenness`, one row per node.
pub fn node_metrics_csv(nodes: &[NodeMetrics], precise: bool) -> String {
    let mut rows = vec![vec![
        "provision".to_string(),
        "label".to_string(),
        "degree".to_string(),
        "betweenness".to_string(),
    ]];
    for n in nodes {
        rows.push(vec![
            n.provision.key(),
            n.provision.label.map(String::from).unwrap_or_default(),
            n.degree.to_string(),
            format_real(n.betweenness, precise),
        ]);
    }
    csv_string(rows)
}

/// `metric,value`. "Number of Edges" is the degree sum (2L); the distinct
/// tie count is listed separately as "Undirected Edges".
pub fn network_metrics_csv(m: &NetworkMetrics, precise: bool) -> String {
    csv_string(vec![
        vec!["metric".to_string(), "value".to_string()],
        vec!["Density".to_string(), format_real(m.density, precise)],
        vec!["Number of Edges".to_string(), m.edge_endpoints.to_string()],
        vec!["Number of Nodes".to_string(), m.size_g.to_string()],
        vec!["Undirected Edges".to_string(), m.edges_l.to_string()],
        vec!["Classification".to_string(), m.classification.to_string()],
    ])
}

/// Fixed-width overview of case clusters and deviation alerts.
pub fn typology_summary(clusters: &[CaseCluster], alerts: &[DeviationAlert]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<8} {:<8} {:>7}  representative citations",
        "cluster", "kind", "members"
    );
    for (i, c) in clusters.iter().enumerate() {
        let kind = match c.kind {
            crate::typology::CaseKind::Batch => "batch",
            crate::typology::CaseKind::Complex => "complex",
        };
        let reps: Vec<String> = c.representative_citations.iter().map(|p| p.key()).collect();
        let _ = writeln!(out, "{:<8} {:<8} {:>7}  {}", i, kind, c.members.len(), reps.join("; "));
    }
    out.push('\n');
    let _ = writeln!(out, "{:<12} {:>8}  missing core pairs", "doc_id", "severity");
    if alerts.is_empty() {
        out.push_str("(no alerts)\n");
    }
    for a in alerts {
        let pairs: Vec<String> = a
            .missing_core_pairs
            .iter()
            .map(|(x, y)| format!("{} - {}", x.display_name(), y.display_name()))
            .collect();
        let _ = writeln!(
            out,
            "{:<12} {:>8}  {}",
            a.doc_id,
            format_real(a.severity, false),
            pairs.join("; ")
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ProvisionId;
    use crate::metrics::DensityClass;

    #[test]
    fn rounding_matches_table_style() {
        assert_eq!(format_real(32.066_666_666, false), "32.067");
        assert_eq!(format_real(0.4, false), "0.4");
        assert_eq!(format_real(0.0, false), "0");
        assert_eq!(format_real(12.0, false), "12");
        assert_eq!(format_real(0.300_653_594_771, false), "0.301");
        assert_eq!(format_real(0.4, true), "0.4");
        assert_eq!(format_real(1.0 / 3.0, true), "0.3333333333333333");
        assert_eq!(format_real(-0.0001, false), "0");
    }

    #[test]
    fn node_table_layout() {
        let nodes = vec![NodeMetrics {
            provision: ProvisionId::new("Contract Law", "60").with_label('C'),
            degree: 10,
            betweenness: 12.066_666_7,
        }];
        assert_eq!(
            node_metrics_csv(&nodes, false),
            "provision,label,degree,betweenness\nContract Law Art. 60,C,10,12.067\n"
        );
    }

    #[test]
    fn network_table_layout() {
        let m = NetworkMetrics {
            size_g: 18,
            edges_l: 46,
            edge_endpoints: 92,
            density: 92.0 / 306.0,
            classification: DensityClass::Dense,
        };
        assert_eq!(
            network_metrics_csv(&m, false),
            "metric,value\nDensity,0.301\nNumber of Edges,92\nNumber of Nodes,18\nUndirected Edges,46\nClassification,dense\n"
        );
    }
}
