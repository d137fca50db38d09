//! Reconstruction of gene relevance networks from two-class expression
//! matrices.
//!
//! The pipeline: parse a genes-by-samples matrix with tumor/normal labels
//! ([`ingest`]), keep genes that differ between the classes by the
//! unequal-variance t test ([`deg`]), score every remaining gene pair with
//! histogram mutual information ([`mi`]), and keep the top-K scoring pairs
//! as an undirected network with degree/hub/component reporting
//! ([`network`]). [`export`] writes the artifact formats and [`synth`]
//! generates planted fixtures for verification.
//!
//! The inference path is deterministic: no randomness anywhere, and the
//! parallel all-pairs scorer is bit-identical for any worker count.

pub mod deg;
pub mod error;
pub mod export;
pub mod ingest;
pub mod matrix;
pub mod mi;
pub mod network;
pub mod stats;
pub mod synth;

#[cfg(any(test, feature = "test-support"))]
pub mod test_support;

pub use deg::{select_significant, welch_t, DegRecord};
pub use error::{Error, Result};
pub use ingest::{
    parse_labels, parse_series_matrix, parse_tsv, parse_tsv_raw, preprocess, sample_summary,
    NormalizationSpec, NormalizeMethod, PreprocessReport, SampleSummary,
};
pub use matrix::{is_missing, ExpressionMatrix, LabelMap, RawMatrix, MISSING};
pub use mi::{
    all_pairs_mi, discretize_equal_width, entropy, joint_entropy, mutual_information, sturges_bins,
    DiscretizedProfile, LogBase, MiPair, MiPairList,
};
pub use network::{
    build_min_weight, build_top_k, degree_report, network_sweep, DegreeReport, Edge, Network,
    SweepEntry,
};
pub use synth::{generate as generate_synth, SynthOutput, SynthSpec, SynthTruth};
