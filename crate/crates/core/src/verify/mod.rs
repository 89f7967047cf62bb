//! Checks of constructed or loaded triples, perturbation helpers, and the
//! strongly orthogonal classification.

mod checks;
mod classify;
mod perturb;
mod report;

pub use checks::{cyclic_and_mixed, verify, verify_with, BracketTensor, Structure, Verifier};
pub use classify::{
    center_dimension, check_cnec, classify, classify_sum, strongly_orthogonal_sets, to_tsv, verdict_label,
    Classification, ClassificationRow, ClassifyOptions, SumClassification,
};
pub use perturb::{flip_j_entry, perturb_j, random_isometry, rng_from_env, seed_from_env, DEFAULT_SEED};
pub use report::{CheckResult, Residual, Status, VerificationReport};
