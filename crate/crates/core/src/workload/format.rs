//! Instance file format.
//!
//! A JSON document with exactly three fields, written in this order:
//!
//! ```text
//! {
//!   "processors": 16,
//!   "splitable": true,
//!   "chains": [
//!     [8, 8, 8, 8],
//!     [4, 4, 4]
//!   ]
//! }
//! ```

use std::fmt::Write as _;

use serde::Deserialize;

use super::{ensure_valid, Chain, TaskSystem};
use crate::error::Result;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    processors: u32,
    splitable: bool,
    chains: Vec<Vec<u32>>,
}

/// Parses and validates an instance document.
pub fn read_system(bytes: &[u8]) -> Result<TaskSystem> {
    let doc: SystemDoc = serde_json::from_slice(bytes)?;
    let system = TaskSystem {
        processors: doc.processors,
        chains: doc.chains.into_iter().map(Chain::new).collect(),
        splitable: doc.splitable,
    };
    ensure_valid(&system)?;
    Ok(system)
}

/// Canonical encoding: one chain per line, trailing newline.
pub fn write_system(system: &TaskSystem) -> Vec<u8> {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"processors\": {},", system.processors);
    let _ = writeln!(out, "  \"splitable\": {},", system.splitable);
    out.push_str("  \"chains\": [");
    for (i, chain) in system.chains.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        out.push_str("    [");
        for (j, p) in chain.tasks().iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "{p}");
        }
        out.push(']');
    }
    if !system.chains.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out.into_bytes()
}
