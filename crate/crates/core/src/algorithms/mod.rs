//! The four list-scheduling heuristics.
//!
//! | name    | slot rule                                                                |
//! |---------|--------------------------------------------------------------------------|
//! | `lcmpf` | longest remaining chain first, ties to the larger ready requirement      |
//! | `lcf`   | longest remaining chain first, ties to the lower chain index (whole tasks only) |
//! | `mcf`   | knapsack over all ready tasks maximising total criticality               |
//! | `lcmcf` | longest remaining chain first, ties to the larger ready criticality      |
//!
//! Every remaining tie resolves to the lowest chain index, so each algorithm is
//! a deterministic function of the system.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schedule::{Allocation, Schedule};
use crate::workload::TaskSystem;

mod list;
mod mcf;

pub use list::{schedule_lcf, schedule_lcmcf, schedule_lcmpf};
pub use mcf::schedule_mcf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Lcmpf,
    Lcf,
    Mcf,
    Lcmcf,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Lcmpf,
        Algorithm::Lcf,
        Algorithm::Mcf,
        Algorithm::Lcmcf,
    ];

    /// The three heuristics that accept both modes.
    pub const HEURISTICS: [Algorithm; 3] = [Algorithm::Mcf, Algorithm::Lcmcf, Algorithm::Lcmpf];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Lcmpf => "lcmpf",
            Algorithm::Lcf => "lcf",
            Algorithm::Mcf => "mcf",
            Algorithm::Lcmcf => "lcmcf",
        }
    }

    pub fn supports(self, system: &TaskSystem) -> bool {
        !(self == Algorithm::Lcf && system.splitable)
    }

    pub fn run(self, system: &TaskSystem) -> Result<Schedule> {
        match self {
            Algorithm::Lcmpf => schedule_lcmpf(system),
            Algorithm::Lcf => schedule_lcf(system),
            Algorithm::Mcf => schedule_mcf(system),
            Algorithm::Lcmcf => schedule_lcmcf(system),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// Dispatch by name.
pub fn schedule(system: &TaskSystem, algorithm: &str) -> Result<Schedule> {
    algorithm.parse::<Algorithm>()?.run(system)
}

/// Per-chain progress while a schedule is being built.
///
/// `residual[i]` is what the ready task of chain `i` still needs (the full
/// requirement unless it was partly served in an earlier slot). A partly served
/// task still counts towards the remaining length because it gates the rest of
/// the chain.
struct ReadyState<'a> {
    system: &'a TaskSystem,
    next: Vec<usize>,
    residual: Vec<u32>,
    slots: Vec<Vec<Allocation>>,
}

impl<'a> ReadyState<'a> {
    fn new(system: &'a TaskSystem) -> Self {
        ReadyState {
            system,
            next: vec![0; system.num_chains()],
            residual: system.chains.iter().map(|c| c.tasks()[0]).collect(),
            slots: Vec::new(),
        }
    }

    fn is_done(&self, chain: usize) -> bool {
        self.next[chain] >= self.system.chains[chain].len()
    }

    fn all_done(&self) -> bool {
        (0..self.next.len()).all(|i| self.is_done(i))
    }

    fn remaining_len(&self, chain: usize) -> usize {
        self.system.chains[chain].len() - self.next[chain]
    }

    fn active(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.next.len()).filter(|&i| !self.is_done(i))
    }

    fn requirement(&self, chain: usize) -> u32 {
        self.system.chains[chain].tasks()[self.next[chain]]
    }

    /// Records `procs` processors for the ready task of `chain` in the open slot.
    fn give(&mut self, slot: &mut Vec<Allocation>, chain: usize, procs: u32) {
        debug_assert!(procs >= 1 && procs <= self.residual[chain]);
        slot.push(Allocation::new(chain, self.next[chain], procs));
        self.residual[chain] -= procs;
    }

    /// Closes the slot and releases successors of tasks completed in it.
    fn close(&mut self, slot: Vec<Allocation>) {
        assert!(!slot.is_empty(), "a slot closed without progress");
        for a in &slot {
            if self.residual[a.chain] == 0 {
                self.next[a.chain] += 1;
                self.residual[a.chain] = self.system.chains[a.chain]
                    .tasks()
                    .get(self.next[a.chain])
                    .copied()
                    .unwrap_or(0);
            }
        }
        self.slots.push(slot);
    }

    fn finish(self) -> Schedule {
        Schedule::new(self.slots)
    }
}

/// Criticality of a partly served task, scaled by the fraction still owed and
/// rounded half up.
fn residual_criticality(criticality: u64, residual: u32, requirement: u32) -> u64 {
    if residual == requirement {
        return criticality;
    }
    let num = 2 * criticality * u64::from(residual) + u64::from(requirement);
    num / (2 * u64::from(requirement))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!(matches!(
            "heft".parse::<Algorithm>(),
            Err(Error::UnknownAlgorithm(_))
        ));
    }

    #[test]
    fn residual_criticality_rounds_half_up() {
        assert_eq!(residual_criticality(10, 4, 4), 10);
        assert_eq!(residual_criticality(10, 2, 4), 5);
        // 7 * 1/2 = 3.5
        assert_eq!(residual_criticality(7, 1, 2), 4);
        // 10 * 1/3 = 3.33
        assert_eq!(residual_criticality(10, 1, 3), 3);
    }

    #[test]
    fn lcf_rejects_splitable() {
        let s = TaskSystem::from_requirements(4, &[&[2]], true).unwrap();
        assert!(matches!(
            schedule(&s, "lcf"),
            Err(Error::ModeMismatch { algorithm: "lcf" })
        ));
        assert!(schedule(&s, "quux").is_err());
    }

    #[test]
    fn invalid_systems_are_rejected() {
        let bad = TaskSystem {
            processors: 4,
            chains: vec![vec![5].into()],
            splitable: false,
        };
        for a in Algorithm::ALL {
            assert!(matches!(a.run(&bad), Err(Error::InvalidSystem(_))));
        }
    }

    #[test]
    fn dispatch_matches_direct_call() {
        let s = TaskSystem::from_requirements(16, &[&[8; 4], &[4; 3], &[6; 5], &[10; 4]], true)
            .unwrap();
        assert_eq!(schedule(&s, "lcmpf").unwrap(), schedule_lcmpf(&s).unwrap());
        assert_eq!(schedule(&s, "MCF").unwrap(), schedule_mcf(&s).unwrap());
    }
}
