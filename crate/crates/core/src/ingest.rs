//! Input parsing and preprocessing: tab-separated expression files, GEO
//! series-matrix text, two-column label files, missing-value handling and
//! normalization.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::{is_missing, ExpressionMatrix, LabelMap, RawMatrix, MISSING};
use crate::stats;

/// Gene-name placeholders treated as "name not available" (case-insensitive).
const NAME_PLACEHOLDERS: [&str; 4] = ["na", "n/a", "null", "---"];

fn parse_cell(cell: &str, line: usize) -> Result<f64> {
    let trimmed = cell.trim();
    if trimmed.is_empty()
        || trimmed.eq_ignore_ascii_case("na")
        || trimmed.eq_ignore_ascii_case("nan")
    {
        return Ok(MISSING);
    }
    trimmed.parse::<f64>().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot parse {trimmed:?} as a number"),
    })
}

fn parse_matrix_lines<I>(lines: I, first_line_no: usize) -> Result<RawMatrix>
where
    I: IntoIterator<Item = (usize, String)>,
{
    let mut iter = lines.into_iter();
    let (header_no, header) = iter.next().ok_or_else(|| Error::Parse {
        line: first_line_no,
        msg: "empty input".into(),
    })?;
    let mut fields = header.split('\t');
    fields.next(); // gene-id column label
    let sample_ids: Vec<String> = fields.map(|s| s.trim_matches('"').to_string()).collect();
    if sample_ids.is_empty() {
        return Err(Error::Parse {
            line: header_no,
            msg: "header row has no sample columns".into(),
        });
    }
    let m = sample_ids.len();

    let mut gene_ids = Vec::new();
    let mut values = Vec::new();
    for (line_no, line) in iter {
        if line.is_empty() {
            continue;
        }
        let mut cells = line.split('\t');
        let gene = cells.next().unwrap_or("").trim_matches('"').to_string();
        let mut row = Vec::with_capacity(m);
        for cell in cells {
            row.push(parse_cell(cell.trim_matches('"'), line_no)?);
        }
        if row.len() != m {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected {m} value cells, found {}", row.len()),
            });
        }
        gene_ids.push(gene);
        values.extend_from_slice(&row);
    }
    Ok(RawMatrix {
        gene_ids,
        sample_ids,
        values,
    })
}

fn numbered_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader.lines().enumerate().map(|(i, line)| {
        line.map(|l| (i + 1, l.trim_end_matches('\r').to_string()))
            .map_err(Error::from)
    })
}

/// Parse a tab-separated expression file without labels.
///
/// First row is a header (`gene_id` then sample ids); each following row is
/// a gene id and one cell per sample. Empty, `NA` and `NaN` cells become the
/// missing marker.
pub fn parse_tsv_raw(path: &Path) -> Result<RawMatrix> {
    let reader = BufReader::new(File::open(path)?);
    let lines = numbered_lines(reader).collect::<Result<Vec<_>>>()?;
    parse_matrix_lines(lines, 1)
}

/// Parse an expression file and attach labels; see [`parse_tsv_raw`] and
/// [`parse_labels`].
pub fn parse_tsv(path: &Path, label_path: &Path) -> Result<ExpressionMatrix> {
    let raw = parse_tsv_raw(path)?;
    let labels = parse_labels(label_path)?;
    raw.with_labels(&labels)
}

/// Parse a two-column label file (`sample_id<TAB>class`, no header).
pub fn parse_labels(path: &Path) -> Result<LabelMap> {
    let reader = BufReader::new(File::open(path)?);
    let mut entries = Vec::new();
    for item in numbered_lines(reader) {
        let (line_no, line) = item?;
        if line.is_empty() {
            continue;
        }
        let mut cells = line.split('\t');
        let sample = cells.next().unwrap_or("").trim().to_string();
        let class = cells.next().unwrap_or("").trim().to_string();
        if sample.is_empty() || class.is_empty() || cells.next().is_some() {
            return Err(Error::Label(format!(
                "label file line {line_no}: expected `sample_id<TAB>class`"
            )));
        }
        entries.push((sample, class));
    }
    LabelMap::new(entries)
}

/// Parse the expression block of a GEO series-matrix file.
///
/// Metadata lines are prefixed with `!`; the data table sits between the
/// `!series_matrix_table_begin` and `!series_matrix_table_end` markers, is
/// tab-separated with an `ID_REF` first column, and may quote ids. Labels are
/// not extracted; attach them with [`RawMatrix::with_labels`].
pub fn parse_series_matrix(path: &Path) -> Result<RawMatrix> {
    let reader = BufReader::new(File::open(path)?);
    let mut table = Vec::new();
    let mut in_table = false;
    let mut saw_begin = false;
    let mut saw_end = false;
    let mut first_line = 0usize;
    for item in numbered_lines(reader) {
        let (line_no, line) = item?;
        let lower = line.to_ascii_lowercase();
        if lower.starts_with("!series_matrix_table_begin") {
            saw_begin = true;
            in_table = true;
            first_line = line_no + 1;
            continue;
        }
        if lower.starts_with("!series_matrix_table_end") {
            saw_end = true;
            break;
        }
        if in_table {
            table.push((line_no, line));
        }
    }
    if !saw_begin || !saw_end {
        return Err(Error::Format(
            "missing series_matrix_table_begin/_end markers".into(),
        ));
    }
    parse_matrix_lines(table, first_line)
}

/// How [`preprocess`] normalizes a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizeMethod {
    None,
    ZscorePerGene,
}

impl NormalizeMethod {
    pub fn label(self) -> &'static str {
        match self {
            NormalizeMethod::None => "none",
            NormalizeMethod::ZscorePerGene => "zscore-per-gene",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct NormalizationSpec {
    /// Apply log2(x + 1) before standardizing; requires all values > -1.
    pub log2_transform: bool,
    pub method: NormalizeMethod,
    /// Genes with a missing fraction strictly greater than this are dropped.
    pub missing_drop_fraction: f64,
}

impl Default for NormalizationSpec {
    fn default() -> Self {
        Self {
            log2_transform: false,
            method: NormalizeMethod::ZscorePerGene,
            missing_drop_fraction: 0.5,
        }
    }
}

/// What [`preprocess`] removed or filled in, for run provenance.
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct PreprocessReport {
    pub dropped_blank_id: Vec<String>,
    pub dropped_missing: Vec<String>,
    pub dropped_unimputable: Vec<String>,
    pub dropped_zero_variance: Vec<String>,
    pub imputed_cells: usize,
}

impl PreprocessReport {
    pub fn dropped_total(&self) -> usize {
        self.dropped_blank_id.len()
            + self.dropped_missing.len()
            + self.dropped_unimputable.len()
            + self.dropped_zero_variance.len()
    }
}

/// Clean and normalize a matrix.
///
/// In order: genes with placeholder ids are dropped; genes whose missing
/// fraction exceeds the drop threshold are dropped; remaining missing cells
/// are imputed with the gene's within-class mean (genes with a whole class
/// missing are dropped as unimputable); the optional log2(x+1) transform is
/// applied; optional per-gene z-scoring follows, dropping zero-variance
/// genes. The result contains no missing values.
pub fn preprocess(
    m: &ExpressionMatrix,
    spec: &NormalizationSpec,
) -> Result<(ExpressionMatrix, PreprocessReport)> {
    if !(spec.missing_drop_fraction > 0.0 && spec.missing_drop_fraction <= 1.0) {
        return Err(Error::Domain(format!(
            "missing_drop_fraction must be in (0, 1], got {}",
            spec.missing_drop_fraction
        )));
    }

    let mut report = PreprocessReport::default();
    let n_samples = m.n_samples();
    let mut keep = Vec::with_capacity(m.n_genes());
    for i in 0..m.n_genes() {
        let id = &m.gene_ids()[i];
        let blank = id.is_empty() || NAME_PLACEHOLDERS.iter().any(|p| id.eq_ignore_ascii_case(p));
        if blank {
            report.dropped_blank_id.push(id.clone());
            continue;
        }
        let missing = m.row(i).iter().filter(|&&v| is_missing(v)).count();
        if missing as f64 / n_samples as f64 > spec.missing_drop_fraction {
            report.dropped_missing.push(id.clone());
            continue;
        }
        keep.push(i);
    }

    let mut out = m.subset_genes(&keep);

    // Impute with within-class means, computed on the raw scale.
    let class_of: Vec<u8> = (0..n_samples).map(|j| m.class_index(j)).collect();
    let mut unimputable = Vec::new();
    for i in 0..out.n_genes() {
        let row = out.row(i);
        let mut sums = [0.0f64; 2];
        let mut counts = [0usize; 2];
        for (j, &v) in row.iter().enumerate() {
            if !is_missing(v) {
                sums[class_of[j] as usize] += v;
                counts[class_of[j] as usize] += 1;
            }
        }
        let any_missing = row.iter().any(|&v| is_missing(v));
        if any_missing && (counts[0] == 0 || counts[1] == 0) {
            unimputable.push(i);
            continue;
        }
        if any_missing {
            let means = [sums[0] / counts[0] as f64, sums[1] / counts[1] as f64];
            let row = out.row_mut(i);
            for (j, v) in row.iter_mut().enumerate() {
                if is_missing(*v) {
                    *v = means[class_of[j] as usize];
                    report.imputed_cells += 1;
                }
            }
        }
    }
    if !unimputable.is_empty() {
        for &i in &unimputable {
            report.dropped_unimputable.push(out.gene_ids()[i].clone());
        }
        let keep: Vec<usize> = (0..out.n_genes())
            .filter(|i| !unimputable.contains(i))
            .collect();
        out = out.subset_genes(&keep);
    }

    if spec.log2_transform {
        for i in 0..out.n_genes() {
            if let Some(&bad) = out.row(i).iter().find(|&&v| v <= -1.0) {
                return Err(Error::Domain(format!(
                    "log2 transform needs values > -1; gene {:?} has {bad}",
                    out.gene_ids()[i]
                )));
            }
        }
        for i in 0..out.n_genes() {
            for v in out.row_mut(i) {
                *v = (*v + 1.0).log2();
            }
        }
    }

    if spec.method == NormalizeMethod::ZscorePerGene {
        let mut flat = Vec::new();
        for i in 0..out.n_genes() {
            let row = out.row(i);
            let mean = stats::mean(row);
            let sd = stats::sample_variance(row).sqrt();
            if sd == 0.0 {
                report.dropped_zero_variance.push(out.gene_ids()[i].clone());
                flat.push(i);
                continue;
            }
            for v in out.row_mut(i) {
                *v = (*v - mean) / sd;
            }
        }
        if !flat.is_empty() {
            let keep: Vec<usize> = (0..out.n_genes()).filter(|i| !flat.contains(i)).collect();
            out = out.subset_genes(&keep);
        }
    }

    if out.n_genes() == 0 {
        return Err(Error::Empty("no genes survived preprocessing".into()));
    }
    debug_assert!(!out.has_missing());
    Ok((out, report))
}

/// Per-sample statistics table, one row per sample.
#[derive(Debug, Clone)]
pub struct SampleSummary {
    pub sample_id: String,
    pub class: String,
    pub mean: f64,
    pub median: f64,
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
}

/// Column statistics for a fully imputed matrix, suitable for plotting
/// per-sample expression profiles.
pub fn sample_summary(m: &ExpressionMatrix) -> Result<Vec<SampleSummary>> {
    if m.has_missing() {
        return Err(Error::Domain(
            "sample_summary needs a matrix without missing values; run preprocess first".into(),
        ));
    }
    if m.n_genes() == 0 {
        return Err(Error::Empty("matrix has no genes".into()));
    }
    let mut out = Vec::with_capacity(m.n_samples());
    for j in 0..m.n_samples() {
        let mut col: Vec<f64> = (0..m.n_genes()).map(|i| m.value(i, j)).collect();
        let mean = stats::mean(&col);
        let stddev = if col.len() >= 2 {
            stats::sample_variance(&col).sqrt()
        } else {
            0.0
        };
        let min = col.iter().copied().fold(f64::INFINITY, f64::min);
        let max = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let median = stats::median(&mut col);
        out.push(SampleSummary {
            sample_id: m.sample_ids()[j].clone(),
            class: m.class_name_of(j).to_string(),
            mean,
            median,
            stddev,
            min,
            max,
        });
    }
    Ok(out)
}
