//! Genes-by-samples expression matrix with two-class sample labels.
//!
//! Values are stored row-major as `f64`; absent measurements are carried as
//! NaN until [`crate::ingest::preprocess`] imputes or drops them. Gene ids may
//! repeat (probe-level data) until the differential-expression stage
//! deduplicates them.

use std::collections::HashMap;
use std::io::{self, Write};

use crate::error::{Error, Result};

/// Marker for an absent expression value.
pub const MISSING: f64 = f64::NAN;

/// True when a cell holds the missing-value marker.
#[inline]
pub fn is_missing(v: f64) -> bool {
    v.is_nan()
}

/// Sample-to-class assignment parsed from a two-column label file.
///
/// Class order is the order of first appearance; when attached to a matrix,
/// the first class present among the matrix samples plays the tumor role in
/// the t statistic and the second the normal role.
#[derive(Debug, Clone)]
pub struct LabelMap {
    entries: Vec<(String, String)>,
    by_sample: HashMap<String, String>,
}

impl LabelMap {
    pub fn new(entries: Vec<(String, String)>) -> Result<Self> {
        let mut by_sample = HashMap::with_capacity(entries.len());
        for (sample, class) in &entries {
            if by_sample.insert(sample.clone(), class.clone()).is_some() {
                return Err(Error::Label(format!(
                    "sample {sample:?} labelled more than once"
                )));
            }
        }
        Ok(Self { entries, by_sample })
    }

    pub fn class_of(&self, sample: &str) -> Option<&str> {
        self.by_sample.get(sample).map(String::as_str)
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }
}

/// Expression values without labels, as read from a series-matrix file.
/// Attach labels with [`RawMatrix::with_labels`] to obtain a usable matrix.
#[derive(Debug, Clone)]
pub struct RawMatrix {
    pub gene_ids: Vec<String>,
    pub sample_ids: Vec<String>,
    /// Row-major, `gene_ids.len() * sample_ids.len()` cells.
    pub values: Vec<f64>,
}

impl RawMatrix {
    pub fn with_labels(self, labels: &LabelMap) -> Result<ExpressionMatrix> {
        // Class order: first appearance in the label file, restricted to the
        // samples that actually occur in this matrix.
        let mut class_names: Vec<String> = Vec::new();
        let sample_set: HashMap<&str, ()> =
            self.sample_ids.iter().map(|s| (s.as_str(), ())).collect();
        for (sample, class) in labels.entries() {
            if sample_set.contains_key(sample.as_str()) && !class_names.contains(class) {
                class_names.push(class.clone());
            }
        }
        if class_names.len() != 2 {
            return Err(Error::Class(format!(
                "expected exactly 2 classes among labelled samples, found {}",
                class_names.len()
            )));
        }

        let mut class_of = Vec::with_capacity(self.sample_ids.len());
        for sample in &self.sample_ids {
            match labels.class_of(sample) {
                Some(class) => {
                    let idx = class_names.iter().position(|c| c == class).unwrap() as u8;
                    class_of.push(idx);
                }
                None => {
                    return Err(Error::Label(format!(
                        "sample {sample:?} missing from label file"
                    )))
                }
            }
        }

        for (idx, name) in class_names.iter().enumerate() {
            let n = class_of.iter().filter(|&&c| c == idx as u8).count();
            if n < 2 {
                return Err(Error::Class(format!(
                    "class {name:?} has {n} samples, need at least 2"
                )));
            }
        }

        ExpressionMatrix::new(
            self.gene_ids,
            self.sample_ids,
            self.values,
            [class_names[0].clone(), class_names[1].clone()],
            class_of,
        )
    }
}

/// Genes-by-samples matrix with exactly two sample classes.
#[derive(Debug, Clone)]
pub struct ExpressionMatrix {
    gene_ids: Vec<String>,
    sample_ids: Vec<String>,
    class_names: [String; 2],
    class_of: Vec<u8>,
    values: Vec<f64>,
}

impl ExpressionMatrix {
    pub fn new(
        gene_ids: Vec<String>,
        sample_ids: Vec<String>,
        values: Vec<f64>,
        class_names: [String; 2],
        class_of: Vec<u8>,
    ) -> Result<Self> {
        let n = gene_ids.len();
        let m = sample_ids.len();
        if values.len() != n * m {
            return Err(Error::Dimension(format!(
                "{n} genes x {m} samples needs {} values, got {}",
                n * m,
                values.len()
            )));
        }
        if class_of.len() != m {
            return Err(Error::Dimension(format!(
                "{m} samples but {} class assignments",
                class_of.len()
            )));
        }
        let mut seen = HashMap::with_capacity(m);
        for s in &sample_ids {
            if seen.insert(s.as_str(), ()).is_some() {
                return Err(Error::Label(format!("duplicate sample id {s:?}")));
            }
        }
        if class_names[0] == class_names[1] {
            return Err(Error::Class(format!(
                "class names must differ, both are {:?}",
                class_names[0]
            )));
        }
        if class_of.iter().any(|&c| c > 1) {
            return Err(Error::Class("class index out of range".into()));
        }
        for idx in 0..2u8 {
            if !class_of.contains(&idx) {
                return Err(Error::Class(format!(
                    "class {:?} has no samples",
                    class_names[idx as usize]
                )));
            }
        }
        Ok(Self {
            gene_ids,
            sample_ids,
            class_names,
            class_of,
            values,
        })
    }

    pub fn n_genes(&self) -> usize {
        self.gene_ids.len()
    }

    pub fn n_samples(&self) -> usize {
        self.sample_ids.len()
    }

    pub fn gene_ids(&self) -> &[String] {
        &self.gene_ids
    }

    pub fn sample_ids(&self) -> &[String] {
        &self.sample_ids
    }

    /// The two class names; index 0 plays the tumor role, index 1 the normal
    /// role.
    pub fn class_names(&self) -> &[String; 2] {
        &self.class_names
    }

    /// Class index (0 or 1) of sample `j`.
    pub fn class_index(&self, j: usize) -> u8 {
        self.class_of[j]
    }

    pub fn class_name_of(&self, j: usize) -> &str {
        &self.class_names[self.class_of[j] as usize]
    }

    pub fn class_sizes(&self) -> [usize; 2] {
        let tumor = self.class_of.iter().filter(|&&c| c == 0).count();
        [tumor, self.class_of.len() - tumor]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let m = self.n_samples();
        &self.values[i * m..(i + 1) * m]
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_samples() + j]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [f64] {
        let m = self.n_samples();
        &mut self.values[i * m..(i + 1) * m]
    }

    /// Row `i` split into (tumor-role, normal-role) values, sample order
    /// preserved within each class.
    pub fn row_by_class(&self, i: usize) -> (Vec<f64>, Vec<f64>) {
        let row = self.row(i);
        let mut tumor = Vec::new();
        let mut normal = Vec::new();
        for (j, &v) in row.iter().enumerate() {
            if self.class_of[j] == 0 {
                tumor.push(v);
            } else {
                normal.push(v);
            }
        }
        (tumor, normal)
    }

    /// New matrix containing only the rows in `keep`, in the given order.
    /// Sample order and labels are untouched.
    pub fn subset_genes(&self, keep: &[usize]) -> ExpressionMatrix {
        let m = self.n_samples();
        let mut gene_ids = Vec::with_capacity(keep.len());
        let mut values = Vec::with_capacity(keep.len() * m);
        for &i in keep {
            gene_ids.push(self.gene_ids[i].clone());
            values.extend_from_slice(self.row(i));
        }
        ExpressionMatrix {
            gene_ids,
            sample_ids: self.sample_ids.clone(),
            class_names: self.class_names.clone(),
            class_of: self.class_of.clone(),
            values,
        }
    }

    /// Matrix with the two class roles exchanged. Used by antisymmetry tests.
    pub fn swap_classes(&self) -> ExpressionMatrix {
        let mut out = self.clone();
        out.class_names.swap(0, 1);
        for c in &mut out.class_of {
            *c = 1 - *c;
        }
        out
    }

    pub fn has_missing(&self) -> bool {
        self.values.iter().any(|&v| is_missing(v))
    }

    /// Tab-separated export: `gene_id` header row, one row per gene, missing
    /// cells written as `NA`. Finite values use the shortest round-trippable
    /// representation so parse(write(m)) reproduces them exactly.
    pub fn write_tsv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        write!(w, "gene_id")?;
        for s in &self.sample_ids {
            write!(w, "\t{s}")?;
        }
        writeln!(w)?;
        for i in 0..self.n_genes() {
            write!(w, "{}", self.gene_ids[i])?;
            for &v in self.row(i) {
                if is_missing(v) {
                    write!(w, "\tNA")?;
                } else {
                    write!(w, "\t{v}")?;
                }
            }
            writeln!(w)?;
        }
        Ok(())
    }

    /// Two-column label export (`sample_id<TAB>class`, no header).
    pub fn write_labels_tsv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for (j, s) in self.sample_ids.iter().enumerate() {
            writeln!(w, "{s}\t{}", self.class_name_of(j))?;
        }
        Ok(())
    }
}
