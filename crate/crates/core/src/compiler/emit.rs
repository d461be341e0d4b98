//! Canonical JSON serialization of a bundle.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use super::{CompileError, ModelBundle};

/// File names, in emission order.
pub const BUNDLE_FILES: [&str; 3] = ["domain.json", "inference.json", "task.json"];

fn document<T: Serialize>(snapshot: u64, concepts: &[T]) -> Value {
    json!({
        "schema_version": "1",
        "snapshot_time": snapshot,
        "concepts": concepts,
    })
}

/// Two-space indented JSON with sorted keys and a trailing newline.
pub fn render_document(value: &Value) -> String {
    // serde_json's map is ordered by key unless `preserve_order` is enabled
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

impl ModelBundle {
    /// `(file name, contents)` for each of the three documents.
    pub fn documents(&self) -> Vec<(&'static str, String)> {
        let s = self.snapshot_time;
        let docs = [
            document(s, &self.domain),
            document(s, &self.inference),
            document(s, &self.task),
        ];
        BUNDLE_FILES.iter().copied().zip(docs.iter().map(render_document)).collect()
    }
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CompileError + '_ {
    move |source| CompileError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes the three documents into `dir`, each via a temporary file renamed
/// into place.
pub fn emit_bundle(bundle: &ModelBundle, dir: &Path) -> Result<Vec<PathBuf>, CompileError> {
    fs::create_dir_all(dir).map_err(io_error(dir))?;
    let mut written = Vec::new();
    for (name, text) in bundle.documents() {
        let target = dir.join(name);
        let tmp = dir.join(format!(".{name}.tmp"));
        fs::write(&tmp, text).map_err(io_error(&tmp))?;
        fs::rename(&tmp, &target).map_err(io_error(&target))?;
        written.push(target);
    }
    Ok(written)
}
