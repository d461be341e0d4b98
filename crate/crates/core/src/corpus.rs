//! Worked examples, labeling fixtures and negative cases shipped under
//! `corpus/`, with the diagnostic codes each one must produce.

use std::path::PathBuf;

use thiserror::Error;

use crate::diagnostic::Code;
use crate::model::Time;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("no corpus entry named `{0}`")]
    Unknown(String),
}

/// Where a golden bundle lives and the snapshot it was compiled at
/// (`None`: the default snapshot).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Golden {
    pub dir: &'static str,
    pub snapshot: Option<Time>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    /// Path relative to the corpus directory.
    pub path: &'static str,
    pub source: &'static str,
    /// Expected diagnostic codes, sorted like the diagnostics themselves.
    pub expected: &'static [Code],
    pub golden: Option<Golden>,
}

impl CorpusEntry {
    /// File name used in diagnostics: `corpus/<path>`.
    pub fn display_path(&self) -> String {
        format!("corpus/{}", self.path)
    }

    pub fn is_negative(&self) -> bool {
        !self.expected.is_empty()
    }
}

macro_rules! entry {
    ($name:literal, $path:literal, [$($code:ident),*]) => {
        entry!($name, $path, [$($code),*], None)
    };
    ($name:literal, $path:literal, [$($code:ident),*], $golden:expr) => {
        CorpusEntry {
            name: $name,
            path: $path,
            source: include_str!(concat!("../../../corpus/", $path)),
            expected: &[$(Code::$code),*],
            golden: $golden,
        }
    };
}

static ENTRIES: &[CorpusEntry] = &[
    entry!("car_diagnosis", "car_diagnosis.oks", [], Some(Golden { dir: "golden/car_diagnosis", snapshot: None })),
    entry!("calibration", "calibration.oks", [], Some(Golden { dir: "golden/calibration", snapshot: Some(2) })),
    entry!("a4_a6_labels", "a4_a6_labels.oks", []),
    entry!("information_exchange", "information_exchange.oks", []),
    entry!("a3_reasoning_and_communication", "negative/a3_reasoning_and_communication.oks", [A3]),
    entry!("a7_task_on_state", "negative/a7_task_on_state.oks", [A7]),
    entry!("a8_transfer_on_reasoning", "negative/a8_transfer_on_reasoning.oks", [A8]),
    entry!("a13_data_not_from_start", "negative/a13_data_not_from_start.oks", [A13]),
    entry!("a13_no_presence", "negative/a13_no_presence.oks", [A13]),
    entry!("ad35_idle_endurant", "negative/ad35_idle_endurant.oks", [Ad35]),
    entry!("l2b_inference_on_document", "negative/l2b_inference_on_document.oks", [L2b]),
    entry!("l3_formal_on_type", "negative/l3_formal_on_type.oks", [L3]),
    entry!("l3_role_over_non_action", "negative/l3_role_over_non_action.oks", [L3]),
    entry!("l4_formal_with_identity", "negative/l4_formal_with_identity.oks", [L4]),
    entry!("l4_input_on_result", "negative/l4_input_on_result.oks", [L4]),
    entry!("l4_material_without_formal", "negative/l4_material_without_formal.oks", [L4]),
    entry!("l5_domain_and_role", "negative/l5_domain_and_role.oks", [L5]),
    entry!("l5_task_and_inference", "negative/l5_task_and_inference.oks", [L5]),
    entry!("l6_rigid_under_role", "negative/l6_rigid_under_role.oks", [L6]),
    entry!("p_syntax_errors", "negative/p_syntax_errors.oks", [P4, P3, P2, P1]),
    entry!("p5_duplicate", "negative/p5_duplicate.oks", [P5]),
    entry!("p6_kernel_redefinition", "negative/p6_kernel_redefinition.oks", [P6]),
    entry!("p7_dangling_reference", "negative/p7_dangling_reference.oks", [P7]),
    entry!("p8_missing_time", "negative/p8_missing_time.oks", [P8]),
    entry!("p9_particularization_cycle", "negative/p9_particularization_cycle.oks", [P9]),
    entry!("r13_result_before_end", "negative/r13_result_before_end.oks", [R13]),
    entry!("s1_data_not_content", "negative/s1_data_not_content.oks", [S1]),
    entry!("s1_pc_on_perdurant", "negative/s1_pc_on_perdurant.oks", [S1]),
    entry!("s1_subject_not_concept", "negative/s1_subject_not_concept.oks", [S1]),
    entry!("s2_missing_participation", "negative/s2_missing_participation.oks", [S2]),
    entry!("w1_cycle", "negative/w1_cycle.oks", [W1]),
    entry!("w2_disjoint_overlap", "negative/w2_disjoint_overlap.oks", [W2]),
    entry!("w2_user_disjointness", "negative/w2_user_disjointness.oks", [W2]),
];

pub fn entries() -> &'static [CorpusEntry] {
    ENTRIES
}

pub fn load_example(name: &str) -> Result<&'static CorpusEntry, CorpusError> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CorpusError::Unknown(name.to_string()))
}

/// The `corpus/` directory of the source tree, for golden files.
pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}
