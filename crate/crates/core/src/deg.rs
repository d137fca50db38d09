//! Differential expression by the unequal-variance two-sample t test.
//!
//! The statistic is (normal mean - tumor mean) / sqrt(var_t/n_t + var_n/n_n)
//! with unbiased variances; degrees of freedom come from Welch-Satterthwaite
//! and the two-sided p-value from the Student-t tail.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::ExpressionMatrix;
use crate::stats;

/// Per-gene test result. `gene_id` is empty when produced by [`welch_t`]
/// directly; [`select_significant`] fills it in.
#[derive(Debug, Clone)]
pub struct DegRecord {
    pub gene_id: String,
    pub mean_tumor: f64,
    pub mean_normal: f64,
    pub var_tumor: f64,
    pub var_normal: f64,
    pub n_tumor: usize,
    pub n_normal: usize,
    pub t: f64,
    pub df: f64,
    pub p: f64,
}

/// Welch t test of two groups; sign convention is normal minus tumor.
///
/// Degenerate inputs where both variances vanish are reported, not failed:
/// equal means give t = 0 (p = 1), differing means give an infinite t with
/// p = 0. In both cases df falls back to the pooled n_t + n_n - 2.
pub fn welch_t(tumor: &[f64], normal: &[f64]) -> Result<DegRecord> {
    if tumor.len() < 2 || normal.len() < 2 {
        return Err(Error::Domain(format!(
            "each group needs at least 2 values, got {} and {}",
            tumor.len(),
            normal.len()
        )));
    }
    if tumor.iter().chain(normal).any(|v| !v.is_finite()) {
        return Err(Error::Domain("group values must be finite".into()));
    }

    let (n_tumor, n_normal) = (tumor.len(), normal.len());
    let mean_tumor = stats::mean(tumor);
    let mean_normal = stats::mean(normal);
    let var_tumor = stats::sample_variance(tumor);
    let var_normal = stats::sample_variance(normal);

    let mut rec = DegRecord {
        gene_id: String::new(),
        mean_tumor,
        mean_normal,
        var_tumor,
        var_normal,
        n_tumor,
        n_normal,
        t: 0.0,
        df: (n_tumor + n_normal - 2) as f64,
        p: 1.0,
    };

    if var_tumor == 0.0 && var_normal == 0.0 {
        if mean_normal != mean_tumor {
            rec.t = if mean_normal > mean_tumor {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
            rec.p = 0.0;
        }
        return Ok(rec);
    }

    let denom = (var_tumor / n_tumor as f64 + var_normal / n_normal as f64).sqrt();
    rec.t = (mean_normal - mean_tumor) / denom;
    rec.df = stats::welch_df(var_tumor, n_tumor, var_normal, n_normal)?;
    rec.p = stats::student_t_two_sided_p(rec.t, rec.df);
    Ok(rec)
}

/// Keep genes with p strictly below `alpha`.
///
/// Gene tests run in parallel but the outcome is order-independent. Rows
/// sharing a gene id are collapsed to the one with the largest |t| (earliest
/// row on a tie). Returns records sorted by ascending p (gene id breaks
/// ties) together with the matching filtered matrix; an empty result is Ok,
/// callers decide whether that is fatal.
pub fn select_significant(
    m: &ExpressionMatrix,
    alpha: f64,
) -> Result<(ExpressionMatrix, Vec<DegRecord>)> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "alpha must be in (0, 1), got {alpha}"
        )));
    }

    let tested: Vec<(usize, DegRecord)> = (0..m.n_genes())
        .into_par_iter()
        .map(|i| {
            let (tumor, normal) = m.row_by_class(i);
            let mut rec = welch_t(&tumor, &normal)?;
            rec.gene_id = m.gene_ids()[i].clone();
            Ok((i, rec))
        })
        .collect::<Result<_>>()?;

    // Deduplicate probe-level rows: keep the largest |t| per gene id.
    let mut best: Vec<(usize, DegRecord)> = Vec::new();
    for (i, rec) in tested {
        match best.iter_mut().find(|(_, b)| b.gene_id == rec.gene_id) {
            Some(slot) => {
                if rec.t.abs() > slot.1.t.abs() {
                    *slot = (i, rec);
                }
            }
            None => best.push((i, rec)),
        }
    }

    let mut kept: Vec<(usize, DegRecord)> = best.into_iter().filter(|(_, r)| r.p < alpha).collect();
    kept.sort_by(|(_, a), (_, b)| a.p.total_cmp(&b.p).then_with(|| a.gene_id.cmp(&b.gene_id)));

    let rows: Vec<usize> = kept.iter().map(|(i, _)| *i).collect();
    let records: Vec<DegRecord> = kept.into_iter().map(|(_, r)| r).collect();
    Ok((m.subset_genes(&rows), records))
}
