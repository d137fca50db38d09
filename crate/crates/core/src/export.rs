//! Writers for the artifact formats: edge-list / MI-matrix / summary /
//! differential-expression TSVs, GraphML, DOT and the JSON run report.

use std::io::{self, Write};

use serde::Serialize;

use crate::deg::DegRecord;
use crate::ingest::{PreprocessReport, SampleSummary};
use crate::mi::MiPairList;
use crate::network::{DegreeReport, Network};

/// Decimal rendering with a fixed number of significant digits, switching to
/// exponent notation outside the comfortable range (printf %g style).
pub fn format_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if mag < -4 || mag >= digits as i32 {
        format!("{:.*e}", digits - 1, x)
    } else {
        let decimals = (digits as i32 - 1 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    }
}

/// Per-sample statistics table: `sample_id class mean median stddev min max`.
pub fn write_summary_tsv<W: Write>(w: &mut W, rows: &[SampleSummary]) -> io::Result<()> {
    writeln!(w, "sample_id\tclass\tmean\tmedian\tstddev\tmin\tmax")?;
    for r in rows {
        writeln!(
            w,
            "{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
            r.sample_id, r.class, r.mean, r.median, r.stddev, r.min, r.max
        )?;
    }
    Ok(())
}

/// Differential-expression report: `gene_id mean_tumor mean_normal t df p`,
/// p with 6 significant digits.
pub fn write_deg_report_tsv<W: Write>(w: &mut W, records: &[DegRecord]) -> io::Result<()> {
    writeln!(w, "gene_id\tmean_tumor\tmean_normal\tt\tdf\tp")?;
    for r in records {
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.gene_id,
            format_sig(r.mean_tumor, 10),
            format_sig(r.mean_normal, 10),
            format_sig(r.t, 10),
            format_sig(r.df, 10),
            format_sig(r.p, 6)
        )?;
    }
    Ok(())
}

/// Retained edges as `gene_a gene_b mi`, rows sorted by MI descending then
/// names (the order the network stores).
pub fn write_edge_list_tsv<W: Write>(w: &mut W, net: &Network) -> io::Result<()> {
    writeln!(w, "gene_a\tgene_b\tmi")?;
    for e in &net.edges {
        writeln!(w, "{}\t{}\t{}", e.a, e.b, format_sig(e.mi, 10))?;
    }
    Ok(())
}

/// Every scored pair in upper-triangular (i, j) order, 10 significant
/// digits.
pub fn write_mi_matrix_tsv<W: Write>(
    w: &mut W,
    pairs: &MiPairList,
    gene_ids: &[String],
) -> io::Result<()> {
    let mut rows: Vec<&crate::mi::MiPair> = pairs.entries.iter().collect();
    rows.sort_unstable_by_key(|e| (e.i, e.j));
    writeln!(w, "gene_a\tgene_b\tmi")?;
    for e in rows {
        writeln!(
            w,
            "{}\t{}\t{}",
            gene_ids[e.i as usize],
            gene_ids[e.j as usize],
            format_sig(e.mi, 10)
        )?;
    }
    Ok(())
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
            _ => out.push(c),
        }
    }
    out
}

/// GraphML export: undirected graph, node id = gene id, edge attribute `mi`.
pub fn write_graphml<W: Write>(w: &mut W, net: &Network) -> io::Result<()> {
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        w,
        r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns">"#
    )?;
    writeln!(
        w,
        r#"  <key id="mi" for="edge" attr.name="mi" attr.type="double"/>"#
    )?;
    writeln!(w, r#"  <graph id="G" edgedefault="undirected">"#)?;
    for n in &net.nodes {
        writeln!(w, r#"    <node id="{}"/>"#, xml_escape(n))?;
    }
    for e in &net.edges {
        writeln!(
            w,
            r#"    <edge source="{}" target="{}"><data key="mi">{}</data></edge>"#,
            xml_escape(&e.a),
            xml_escape(&e.b),
            format_sig(e.mi, 10)
        )?;
    }
    writeln!(w, "  </graph>")?;
    writeln!(w, "</graphml>")?;
    Ok(())
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT export: `graph G {{ "A" -- "B" [weight=...]; }}`.
pub fn write_dot<W: Write>(w: &mut W, net: &Network) -> io::Result<()> {
    writeln!(w, "graph G {{")?;
    for e in &net.edges {
        writeln!(
            w,
            "  \"{}\" -- \"{}\" [weight=\"{}\"];",
            dot_escape(&e.a),
            dot_escape(&e.b),
            format_sig(e.mi, 10)
        )?;
    }
    writeln!(w, "}}")?;
    Ok(())
}

/// Hub line for the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct HubSummary {
    pub gene: String,
    pub degree: usize,
}

/// Per-K network shape for the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct NetworkSummary {
    pub k_requested: usize,
    pub nodes: usize,
    pub edges: usize,
    pub degree_sum: usize,
    pub hubs: Vec<HubSummary>,
    pub component_sizes: Vec<usize>,
}

impl NetworkSummary {
    pub fn new(k_requested: usize, net: &Network, report: &DegreeReport) -> Self {
        Self {
            k_requested,
            nodes: net.node_count(),
            edges: net.edge_count(),
            degree_sum: report.degree_sum(),
            hubs: report
                .hubs
                .iter()
                .map(|(gene, degree)| HubSummary {
                    gene: gene.clone(),
                    degree: *degree,
                })
                .collect(),
            component_sizes: report.component_sizes.clone(),
        }
    }
}

/// Echo of every tunable that shaped a run, plus stage counts and the
/// resulting network shapes. Worker count and output paths are execution
/// details, not inference inputs, and are deliberately left out so reruns
/// with different parallelism produce identical reports.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub input: String,
    pub input_format: String,
    pub classes: [String; 2],
    pub class_sizes: [usize; 2],
    pub alpha: f64,
    pub bins: u16,
    pub bins_auto: bool,
    pub log_base: String,
    pub normalization: String,
    pub log2_transform: bool,
    pub missing_drop_fraction: f64,
    pub top_k: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_mi: Option<f64>,
    pub hub_count: usize,
    pub emit: Vec<String>,
    pub genes_input: usize,
    pub genes_after_preprocess: usize,
    pub genes_significant: usize,
    pub constant_profiles: usize,
    pub pairs_scored: usize,
    pub preprocess: PreprocessReport,
    pub networks: Vec<NetworkSummary>,
}

pub fn write_json_report<W: Write>(w: &mut W, report: &RunReport) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, report)?;
    writeln!(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Edge;

    fn toy_network() -> Network {
        Network {
            nodes: vec!["A".into(), "B".into(), "C&D".into()],
            edges: vec![
                Edge {
                    a: "A".into(),
                    b: "B".into(),
                    mi: 0.9182958340544896,
                },
                Edge {
                    a: "B".into(),
                    b: "C&D".into(),
                    mi: 0.5,
                },
            ],
            k_requested: 2,
        }
    }

    #[test]
    fn sig_digit_formatting() {
        assert_eq!(format_sig(0.9182958340544896, 10), "0.9182958341");
        assert_eq!(format_sig(1.5849625007211562, 10), "1.584962501");
        assert_eq!(format_sig(0.0734, 6), "0.0734000");
        assert_eq!(format_sig(0.0, 10), "0");
        assert_eq!(format_sig(1e-15, 10), "1.000000000e-15");
        assert_eq!(format_sig(f64::INFINITY, 10), "inf");
        assert_eq!(format_sig(-2.5, 3), "-2.50");
    }

    #[test]
    fn edge_list_layout() {
        let mut buf = Vec::new();
        write_edge_list_tsv(&mut buf, &toy_network()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "gene_a\tgene_b\tmi");
        assert_eq!(lines[1], "A\tB\t0.9182958341");
        assert_eq!(lines[2], "B\tC&D\t0.5000000000");
    }

    #[test]
    fn graphml_escapes_and_structure() {
        let mut buf = Vec::new();
        write_graphml(&mut buf, &toy_network()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains(r#"<graph id="G" edgedefault="undirected">"#));
        assert!(text.contains(r#"<node id="C&amp;D"/>"#));
        assert!(text
            .contains(r#"<edge source="A" target="B"><data key="mi">0.9182958341</data></edge>"#));
        assert!(text.ends_with("</graphml>\n"));
    }

    #[test]
    fn dot_shape() {
        let mut buf = Vec::new();
        write_dot(&mut buf, &toy_network()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("graph G {\n"));
        assert!(text.contains("\"A\" -- \"B\" [weight=\"0.9182958341\"];"));
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn mi_matrix_is_index_ordered() {
        use crate::mi::{MiPair, MiPairList};
        let pairs = MiPairList {
            entries: vec![
                MiPair {
                    i: 1,
                    j: 2,
                    mi: 0.9,
                },
                MiPair {
                    i: 0,
                    j: 2,
                    mi: 0.5,
                },
                MiPair {
                    i: 0,
                    j: 1,
                    mi: 0.1,
                },
            ],
            n_profiles: 3,
        };
        let ids = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let mut buf = Vec::new();
        write_mi_matrix_tsv(&mut buf, &pairs, &ids).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "x\ty\t0.1000000000");
        assert_eq!(lines[2], "x\tz\t0.5000000000");
        assert_eq!(lines[3], "y\tz\t0.9000000000");
    }
}
