use std::fs;
use std::fs::File;
use std::io::{BufWriter, Write};

use relnet_core::synth::{generate, SynthSpec};

use crate::args::SynthArgs;
use crate::{Stage, StageError};

pub fn run(args: &SynthArgs) -> Result<(), StageError> {
    let spec = SynthSpec {
        genes: args.genes,
        tumor_samples: args.tumor_samples,
        normal_samples: args.normal_samples,
        deg_count: args.deg_count,
        deg_shift: args.deg_shift,
        pair_count: args.pair_count,
        pair_noise: args.pair_noise,
        seed: args.seed,
    };
    let out = generate(&spec).stage("synth")?;

    fs::create_dir_all(&args.out_dir).stage("synth")?;

    let expr_path = args.out_dir.join("expression.tsv");
    let mut w = BufWriter::new(File::create(&expr_path).stage("synth")?);
    out.matrix.write_tsv(&mut w).stage("synth")?;

    let label_path = args.out_dir.join("labels.tsv");
    let mut w = BufWriter::new(File::create(&label_path).stage("synth")?);
    out.matrix.write_labels_tsv(&mut w).stage("synth")?;

    let truth_path = args.out_dir.join("truth.json");
    let mut w = BufWriter::new(File::create(&truth_path).stage("synth")?);
    serde_json::to_writer_pretty(&mut w, &out.truth)
        .map_err(std::io::Error::from)
        .stage("synth")?;
    writeln!(w).stage("synth")?;

    println!(
        "wrote {} ({} genes x {} samples), {}, {}",
        expr_path.display(),
        args.genes,
        args.tumor_samples + args.normal_samples,
        label_path.display(),
        truth_path.display()
    );
    Ok(())
}
