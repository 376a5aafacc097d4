//! Slot-indexed schedules, their feasibility rules, and the quality measures
//! computed from them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::workload::TaskSystem;

mod format;

pub use format::{read_schedule, write_schedule};

/// Processors handed to one task in one slot. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Allocation {
    pub chain: usize,
    pub task: usize,
    pub procs: u32,
}

impl Allocation {
    pub fn new(chain: usize, task: usize, procs: u32) -> Self {
        Allocation { chain, task, procs }
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{},{}:{}", self.chain + 1, self.task + 1, self.procs)
    }
}

/// One allocation set per unit time step, `slots[t]` for `t = 0..makespan`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Schedule {
    pub slots: Vec<Vec<Allocation>>,
}

impl Schedule {
    pub fn new(slots: Vec<Vec<Allocation>>) -> Self {
        Schedule { slots }
    }

    pub fn makespan(&self) -> usize {
        self.slots.len()
    }

    pub fn used(&self, slot: usize) -> u64 {
        self.slots[slot].iter().map(|a| u64::from(a.procs)).sum()
    }

    /// Idle processors per slot.
    pub fn slot_waste(&self, processors: u32) -> Vec<u64> {
        (0..self.slots.len())
            .map(|t| u64::from(processors).saturating_sub(self.used(t)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleMetrics {
    pub makespan: usize,
    pub total_waste: u64,
    pub avg_waste: f64,
    pub lower_bound: usize,
    pub ratio: f64,
}

/// `max(ceil(total work / M), longest chain)`.
pub fn lower_bound(system: &TaskSystem) -> usize {
    let m = u64::from(system.processors.max(1));
    let work_bound = system.total_work().div_ceil(m) as usize;
    work_bound.max(system.max_chain_len())
}

/// Suffix sums of processor requirements: the criticality of each task is its
/// own requirement plus that of every successor in the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalityTable {
    values: Vec<Vec<u64>>,
}

impl CriticalityTable {
    pub fn get(&self, chain: usize, task: usize) -> u64 {
        self.values[chain][task]
    }

    pub fn chain(&self, chain: usize) -> &[u64] {
        &self.values[chain]
    }
}

pub fn criticality(system: &TaskSystem) -> CriticalityTable {
    let values = system
        .chains
        .iter()
        .map(|chain| {
            let mut suffix: Vec<u64> = chain
                .tasks()
                .iter()
                .rev()
                .scan(0u64, |acc, &p| {
                    *acc += u64::from(p);
                    Some(*acc)
                })
                .collect();
            suffix.reverse();
            suffix
        })
        .collect();
    CriticalityTable { values }
}

/// A broken schedule rule. Indices are 0-based in the fields and 1-based when
/// displayed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleViolation {
    UnknownTask {
        slot: usize,
        chain: usize,
        task: usize,
    },
    ZeroAllocation {
        slot: usize,
        chain: usize,
        task: usize,
    },
    Capacity {
        slot: usize,
        used: u64,
        processors: u32,
    },
    DuplicateInSlot {
        slot: usize,
        chain: usize,
        task: usize,
    },
    NotWhole {
        slot: usize,
        chain: usize,
        task: usize,
        given: u32,
        required: u32,
    },
    Precedence {
        slot: usize,
        chain: usize,
        task: usize,
    },
    AllocationMismatch {
        chain: usize,
        task: usize,
        given: u64,
        required: u32,
    },
    EmptyTrailingSlot {
        slot: usize,
    },
}

impl fmt::Display for ScheduleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ScheduleViolation::*;
        match *self {
            UnknownTask { slot, chain, task } => write!(
                f,
                "slot {slot}: T{},{} does not exist",
                chain + 1,
                task + 1
            ),
            ZeroAllocation { slot, chain, task } => write!(
                f,
                "slot {slot}: T{},{} is given zero processors",
                chain + 1,
                task + 1
            ),
            Capacity {
                slot,
                used,
                processors,
            } => write!(f, "slot {slot}: {used} processors used but only {processors} exist"),
            DuplicateInSlot { slot, chain, task } => write!(
                f,
                "slot {slot}: T{},{} appears more than once",
                chain + 1,
                task + 1
            ),
            NotWhole {
                slot,
                chain,
                task,
                given,
                required,
            } => write!(
                f,
                "slot {slot}: non-splitable T{},{} given {given} of {required} processors",
                chain + 1,
                task + 1
            ),
            Precedence { slot, chain, task } => write!(
                f,
                "slot {slot}: T{},{} runs before its predecessor has finished",
                chain + 1,
                task + 1
            ),
            AllocationMismatch {
                chain,
                task,
                given,
                required,
            } => write!(
                f,
                "T{},{} receives {given} processors in total but requires {required}",
                chain + 1,
                task + 1
            ),
            EmptyTrailingSlot { slot } => write!(f, "slot {slot}: empty trailing slot"),
        }
    }
}

/// Lists every rule `schedule` breaks for `system`; empty means feasible.
pub fn check_schedule(system: &TaskSystem, schedule: &Schedule) -> Vec<ScheduleViolation> {
    use ScheduleViolation::*;

    let mut violations = Vec::new();
    // (first slot, last slot, total given) per task
    let mut spans: Vec<Vec<Option<(usize, usize, u64)>>> = system
        .chains
        .iter()
        .map(|c| vec![None; c.len()])
        .collect();

    for (t, slot) in schedule.slots.iter().enumerate() {
        let used: u64 = slot.iter().map(|a| u64::from(a.procs)).sum();
        if used > u64::from(system.processors) {
            violations.push(Capacity {
                slot: t,
                used,
                processors: system.processors,
            });
        }
        for (k, a) in slot.iter().enumerate() {
            let Some(required) = system.requirement(a.chain, a.task) else {
                violations.push(UnknownTask {
                    slot: t,
                    chain: a.chain,
                    task: a.task,
                });
                continue;
            };
            if a.procs == 0 {
                violations.push(ZeroAllocation {
                    slot: t,
                    chain: a.chain,
                    task: a.task,
                });
            }
            if slot[..k]
                .iter()
                .any(|b| b.chain == a.chain && b.task == a.task)
            {
                violations.push(DuplicateInSlot {
                    slot: t,
                    chain: a.chain,
                    task: a.task,
                });
            }
            if !system.splitable && a.procs != required {
                violations.push(NotWhole {
                    slot: t,
                    chain: a.chain,
                    task: a.task,
                    given: a.procs,
                    required,
                });
            }
            let span = &mut spans[a.chain][a.task];
            *span = Some(match *span {
                None => (t, t, u64::from(a.procs)),
                Some((first, _, total)) => (first, t, total + u64::from(a.procs)),
            });
        }
    }

    for (i, chain) in spans.iter().enumerate() {
        for (j, span) in chain.iter().enumerate() {
            let required = system.chains[i].tasks()[j];
            let given = span.map_or(0, |s| s.2);
            if given != u64::from(required) {
                violations.push(AllocationMismatch {
                    chain: i,
                    task: j,
                    given,
                    required,
                });
            }
            if j > 0 {
                if let (Some(prev), Some(cur)) = (chain[j - 1], span) {
                    if prev.1 >= cur.0 {
                        violations.push(Precedence {
                            slot: cur.0,
                            chain: i,
                            task: j,
                        });
                    }
                }
            }
        }
    }

    if let Some(last) = schedule.slots.last() {
        if last.is_empty() {
            violations.push(EmptyTrailingSlot {
                slot: schedule.slots.len() - 1,
            });
        }
    }
    violations
}

/// Quality measures for a feasible schedule; infeasible schedules are rejected.
pub fn metrics(system: &TaskSystem, schedule: &Schedule) -> Result<ScheduleMetrics> {
    let violations = check_schedule(system, schedule);
    if !violations.is_empty() {
        return Err(Error::InvalidSchedule(violations));
    }
    let makespan = schedule.makespan();
    let total_waste: u64 = schedule.slot_waste(system.processors).iter().sum();
    let lower_bound = lower_bound(system);
    Ok(ScheduleMetrics {
        makespan,
        total_waste,
        avg_waste: total_waste as f64 / f64::from(system.processors),
        lower_bound,
        ratio: makespan as f64 / lower_bound as f64,
    })
}

/// Total outstanding requirement of the ready tasks at the start of each slot,
/// replayed from a feasible schedule. A ready task is the first task of a chain
/// that has not yet received all of its processors.
pub fn ready_demand_per_slot(system: &TaskSystem, schedule: &Schedule) -> Vec<u64> {
    let mut next = vec![0usize; system.num_chains()];
    let mut residual: Vec<u32> = system
        .chains
        .iter()
        .map(|c| c.tasks().first().copied().unwrap_or(0))
        .collect();
    let mut demand = Vec::with_capacity(schedule.makespan());
    for slot in &schedule.slots {
        demand.push(residual.iter().map(|&r| u64::from(r)).sum());
        for a in slot {
            debug_assert_eq!(next[a.chain], a.task);
            residual[a.chain] -= a.procs;
        }
        for a in slot {
            if residual[a.chain] == 0 {
                next[a.chain] += 1;
                residual[a.chain] = system.chains[a.chain]
                    .tasks()
                    .get(next[a.chain])
                    .copied()
                    .unwrap_or(0);
            }
        }
    }
    demand
}
