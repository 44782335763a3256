//! The shipped proof scripts.

use super::script::{parse_scripts, ProofScript};

/// File name and contents of every corpus file, in verification-friendly order.
pub const CORPUS_FILES: &[(&str, &str)] = &[
    ("L1.tbp", include_str!("../../corpus/L1.tbp")),
    ("L2.tbp", include_str!("../../corpus/L2.tbp")),
    ("L3.tbp", include_str!("../../corpus/L3.tbp")),
    ("L4.tbp", include_str!("../../corpus/L4.tbp")),
    ("L5.tbp", include_str!("../../corpus/L5.tbp")),
    ("L6.tbp", include_str!("../../corpus/L6.tbp")),
    ("L7.tbp", include_str!("../../corpus/L7.tbp")),
    ("L8.tbp", include_str!("../../corpus/L8.tbp")),
    ("L9.tbp", include_str!("../../corpus/L9.tbp")),
    ("L10.tbp", include_str!("../../corpus/L10.tbp")),
    (
        "absorption.tbp",
        include_str!("../../corpus/absorption.tbp"),
    ),
    (
        "distributivity.tbp",
        include_str!("../../corpus/distributivity.tbp"),
    ),
    (
        "boolean-to-formula.tbp",
        include_str!("../../corpus/boolean-to-formula.tbp"),
    ),
    (
        "formula-to-boolean.tbp",
        include_str!("../../corpus/formula-to-boolean.tbp"),
    ),
    (
        "condition-to-boolean.tbp",
        include_str!("../../corpus/condition-to-boolean.tbp"),
    ),
    ("duality.tbp", include_str!("../../corpus/duality.tbp")),
];

/// Every shipped script, in file order.
pub fn builtin_corpus() -> Vec<ProofScript> {
    CORPUS_FILES
        .iter()
        .flat_map(|(name, text)| {
            parse_scripts(text).unwrap_or_else(|e| panic!("corpus file {name}: {e}"))
        })
        .collect()
}
