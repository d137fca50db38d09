use std::fs::File;
use std::io::{BufWriter, Write};

use relnet_core::export::write_summary_tsv;
use relnet_core::{ingest, sample_summary, NormalizationSpec, NormalizeMethod};

use crate::args::SummarizeArgs;
use crate::cmd_infer::parse_input;
use crate::{Stage, StageError};

pub fn run(args: &SummarizeArgs) -> Result<(), StageError> {
    let matrix = parse_input(&args.input, args.format, &args.labels).stage("ingest")?;

    // Statistics need complete columns, so missing cells are imputed, but the
    // values themselves stay on the raw scale (no transform, no z-score).
    let spec = NormalizationSpec {
        log2_transform: false,
        method: NormalizeMethod::None,
        missing_drop_fraction: args.drop_fraction,
    };
    let (clean, _) = ingest::preprocess(&matrix, &spec).stage("preprocess")?;
    let rows = sample_summary(&clean).stage("summarize")?;

    match &args.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path).stage("summarize")?);
            write_summary_tsv(&mut w, &rows).stage("summarize")?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write_summary_tsv(&mut w, &rows).stage("summarize")?;
            w.flush().stage("summarize")?;
        }
    }
    Ok(())
}
