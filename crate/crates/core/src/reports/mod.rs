//! Export layer: graph files and CSV tables.

mod graph_io;
mod tables;

pub use graph_io::{export_graph, import_graph, GraphFormat, ImportError, EDGE_CSV_HEADER};
pub use tables::{format_real, matrix_csv, network_metrics_csv, node_metrics_csv, typology_summary};

pub(crate) fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        // Writing to a Vec cannot fail.
        writer.write_record(&row).expect("in-memory csv write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
}
