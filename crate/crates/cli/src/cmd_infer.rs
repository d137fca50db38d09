use std::fs;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use relnet_core::export::{self, NetworkSummary, RunReport};
use relnet_core::{
    all_pairs_mi, build_min_weight, degree_report, discretize_equal_width, ingest, network_sweep,
    sample_summary, select_significant, sturges_bins, DiscretizedProfile, Error, ExpressionMatrix,
    LogBase, MiPairList, NormalizationSpec, SweepEntry,
};

use crate::args::{EmitKind, InferArgs, InputFormat};
use crate::{Stage, StageError};

const HUB_COUNT: usize = 5;

pub fn run(args: &InferArgs) -> Result<(), StageError> {
    if args.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.workers)
            .build()
            .map_err(|e| StageError {
                stage: "setup",
                source: Error::Domain(format!("cannot build worker pool: {e}")),
            })?;
        pool.install(|| pipeline(args))
    } else {
        pipeline(args)
    }
}

pub fn parse_input(
    input: &Path,
    format: InputFormat,
    labels: &Path,
) -> relnet_core::Result<ExpressionMatrix> {
    match format {
        InputFormat::Tsv => ingest::parse_tsv(input, labels),
        InputFormat::SeriesMatrix => {
            let raw = ingest::parse_series_matrix(input)?;
            raw.with_labels(&ingest::parse_labels(labels)?)
        }
    }
}

fn pipeline(args: &InferArgs) -> Result<(), StageError> {
    for &k in &args.top_k {
        if k < 1 {
            return Err(StageError {
                stage: "setup",
                source: Error::Domain("--top-k values must be at least 1".into()),
            });
        }
    }
    if let Some(bins) = args.bins {
        if bins < 1 {
            return Err(StageError {
                stage: "setup",
                source: Error::Domain("--bins must be at least 1".into()),
            });
        }
    }

    let matrix = parse_input(&args.input, args.format, &args.labels).stage("ingest")?;
    let genes_input = matrix.n_genes();

    let norm = NormalizationSpec {
        log2_transform: args.log2,
        method: args.normalize.into(),
        missing_drop_fraction: args.drop_fraction,
    };
    let (clean, pre_report) = ingest::preprocess(&matrix, &norm).stage("preprocess")?;

    let (significant, deg_records) = select_significant(&clean, args.alpha).stage("degfilter")?;
    if deg_records.is_empty() {
        return Err(StageError {
            stage: "degfilter",
            source: Error::Empty(format!(
                "no genes pass alpha = {}; nothing to build a network from",
                args.alpha
            )),
        });
    }
    if significant.n_genes() < 2 {
        return Err(StageError {
            stage: "mi",
            source: Error::Empty("fewer than 2 significant genes; cannot score pairs".into()),
        });
    }

    let bins = args
        .bins
        .unwrap_or_else(|| sturges_bins(significant.n_samples()));
    let base: LogBase = args.log_base.into();
    let profiles: Vec<DiscretizedProfile> = (0..significant.n_genes())
        .map(|i| discretize_equal_width(&significant.gene_ids()[i], significant.row(i), bins))
        .collect();
    let constant_profiles = profiles.iter().filter(|p| p.is_constant()).count();

    let pairs = all_pairs_mi(&profiles, base).stage("mi")?;

    let sweep: Vec<SweepEntry> = if let Some(min_mi) = args.min_mi {
        let network = build_min_weight(&pairs, significant.gene_ids(), min_mi).stage("network")?;
        let report = degree_report(&network, HUB_COUNT);
        vec![SweepEntry {
            k: network.edge_count(),
            network,
            report,
        }]
    } else {
        network_sweep(&pairs, significant.gene_ids(), &args.top_k, HUB_COUNT).stage("network")?
    };

    let report = RunReport {
        input: args.input.display().to_string(),
        input_format: args.format.label().to_string(),
        classes: matrix.class_names().clone(),
        class_sizes: matrix.class_sizes(),
        alpha: args.alpha,
        bins,
        bins_auto: args.bins.is_none(),
        log_base: base.label().to_string(),
        normalization: norm.method.label().to_string(),
        log2_transform: norm.log2_transform,
        missing_drop_fraction: norm.missing_drop_fraction,
        top_k: if args.min_mi.is_some() {
            vec![]
        } else {
            args.top_k.clone()
        },
        min_mi: args.min_mi,
        hub_count: HUB_COUNT,
        emit: args.emit.iter().map(|e| e.label().to_string()).collect(),
        genes_input,
        genes_after_preprocess: clean.n_genes(),
        genes_significant: significant.n_genes(),
        constant_profiles,
        pairs_scored: pairs.len(),
        preprocess: pre_report,
        networks: sweep
            .iter()
            .map(|e| NetworkSummary::new(e.network.k_requested, &e.network, &e.report))
            .collect(),
    };

    write_artifacts(
        args,
        &clean,
        &significant,
        &deg_records,
        &pairs,
        &sweep,
        &report,
    )?;

    let first = &sweep[0];
    let top_hub = first
        .report
        .hubs
        .first()
        .map(|(g, d)| format!("{g}({d})"))
        .unwrap_or_else(|| "none".to_string());
    println!(
        "genes_in={genes_input} significant={} pairs_scored={} edges={} top_hub={top_hub}",
        significant.n_genes(),
        pairs.len(),
        first.network.edge_count(),
    );
    Ok(())
}

fn write_artifacts(
    args: &InferArgs,
    clean: &ExpressionMatrix,
    significant: &ExpressionMatrix,
    deg_records: &[relnet_core::DegRecord],
    pairs: &MiPairList,
    sweep: &[SweepEntry],
    report: &RunReport,
) -> Result<(), StageError> {
    let out = &args.out_dir;
    fs::create_dir_all(out).stage("export")?;

    let network_tag = |entry: &SweepEntry| {
        if args.min_mi.is_some() {
            "threshold".to_string()
        } else {
            format!("k{}", entry.k)
        }
    };

    for kind in &args.emit {
        match kind {
            EmitKind::Edgelist => {
                for entry in sweep {
                    let path = out.join(format!("edges_{}.tsv", network_tag(entry)));
                    let mut w = BufWriter::new(File::create(path).stage("export")?);
                    export::write_edge_list_tsv(&mut w, &entry.network).stage("export")?;
                }
            }
            EmitKind::Graphml => {
                for entry in sweep {
                    let path = out.join(format!("network_{}.graphml", network_tag(entry)));
                    let mut w = BufWriter::new(File::create(path).stage("export")?);
                    export::write_graphml(&mut w, &entry.network).stage("export")?;
                }
            }
            EmitKind::Dot => {
                for entry in sweep {
                    let path = out.join(format!("network_{}.dot", network_tag(entry)));
                    let mut w = BufWriter::new(File::create(path).stage("export")?);
                    export::write_dot(&mut w, &entry.network).stage("export")?;
                }
            }
            EmitKind::Json => {
                let mut w = BufWriter::new(File::create(out.join("report.json")).stage("export")?);
                export::write_json_report(&mut w, report).stage("export")?;
            }
            EmitKind::MiMatrix => {
                let mut w =
                    BufWriter::new(File::create(out.join("mi_matrix.tsv")).stage("export")?);
                export::write_mi_matrix_tsv(&mut w, pairs, significant.gene_ids())
                    .stage("export")?;
            }
            EmitKind::DegReport => {
                let mut w =
                    BufWriter::new(File::create(out.join("deg_report.tsv")).stage("export")?);
                export::write_deg_report_tsv(&mut w, deg_records).stage("export")?;
            }
            EmitKind::Summary => {
                let rows = sample_summary(clean).stage("export")?;
                let mut w = BufWriter::new(File::create(out.join("summary.tsv")).stage("export")?);
                export::write_summary_tsv(&mut w, &rows).stage("export")?;
            }
        }
    }
    Ok(())
}
