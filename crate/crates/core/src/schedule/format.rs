//! Schedule file format.
//!
//! JSON with one slot per line. Chain and task numbers are 1-based so a
//! record `{"chain": 3, "task": 1, "procs": 6}` reads as task T3,1 on six
//! processors. An optional `metrics` block follows the slots; it is ignored
//! when reading.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Allocation, Schedule, ScheduleMetrics};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    chain: usize,
    task: usize,
    procs: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleDoc {
    slots: Vec<Vec<Record>>,
    #[serde(default)]
    #[allow(dead_code)]
    metrics: Option<ScheduleMetrics>,
}

pub fn read_schedule(bytes: &[u8]) -> Result<Schedule> {
    let doc: ScheduleDoc = serde_json::from_slice(bytes)?;
    let mut slots = Vec::with_capacity(doc.slots.len());
    for (t, slot) in doc.slots.into_iter().enumerate() {
        let mut allocs = Vec::with_capacity(slot.len());
        for r in slot {
            if r.chain == 0 || r.task == 0 {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("slot {t}: chain and task numbers start at 1"),
                });
            }
            allocs.push(Allocation::new(r.chain - 1, r.task - 1, r.procs));
        }
        slots.push(allocs);
    }
    Ok(Schedule::new(slots))
}

pub fn write_schedule(schedule: &Schedule, metrics: Option<&ScheduleMetrics>) -> Vec<u8> {
    let mut out = String::from("{\n  \"slots\": [");
    for (t, slot) in schedule.slots.iter().enumerate() {
        out.push_str(if t == 0 { "\n    [" } else { ",\n    [" });
        for (k, a) in slot.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            let _ = write!(
                out,
                "{{\"chain\": {}, \"task\": {}, \"procs\": {}}}",
                a.chain + 1,
                a.task + 1,
                a.procs
            );
        }
        out.push(']');
    }
    if !schedule.slots.is_empty() {
        out.push_str("\n  ");
    }
    out.push(']');
    if let Some(m) = metrics {
        let block = serde_json::to_string(m).expect("metrics serialize");
        let _ = write!(out, ",\n  \"metrics\": {block}");
    }
    out.push_str("\n}\n");
    out.into_bytes()
}
