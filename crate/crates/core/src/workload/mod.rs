//! Problem instances: chains of unit-time multiprocessor tasks on `M`
//! identical processors.
//!
//! A [`Chain`] is an ordered list of per-task processor requirements. Task
//! `j + 1` of a chain becomes ready only once task `j` has received all of its
//! processors. In non-splitable mode a task must get its full requirement in a
//! single slot; in splitable mode it may be served in integer pieces spread
//! over several slots.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod format;
mod generate;

pub use format::{read_system, write_system};
pub use generate::{generate, GeneratorConfig};

/// Ordered processor requirements of one application's phases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain(Vec<u32>);

impl Chain {
    pub fn new(tasks: Vec<u32>) -> Self {
        Chain(tasks)
    }

    pub fn tasks(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total processor-slots of work in the chain.
    pub fn work(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    /// The same tasks in reverse order.
    pub fn reversed(&self) -> Chain {
        Chain(self.0.iter().rev().copied().collect())
    }
}

impl From<Vec<u32>> for Chain {
    fn from(tasks: Vec<u32>) -> Self {
        Chain(tasks)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainClass {
    Uniform,
    NonIncreasing,
    NonDecreasing,
    Arbitrary,
}

impl ChainClass {
    pub const ALL: [ChainClass; 4] = [
        ChainClass::Uniform,
        ChainClass::NonIncreasing,
        ChainClass::NonDecreasing,
        ChainClass::Arbitrary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChainClass::Uniform => "uniform",
            ChainClass::NonIncreasing => "nonincreasing",
            ChainClass::NonDecreasing => "nondecreasing",
            ChainClass::Arbitrary => "arbitrary",
        }
    }
}

impl fmt::Display for ChainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChainClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ChainClass::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown chain class `{s}`")))
    }
}

/// Most specific class of a chain. A constant chain is `Uniform` even though it
/// is also monotone in both directions.
pub fn classify_chain(chain: &Chain) -> ChainClass {
    let tasks = chain.tasks();
    let non_increasing = tasks.windows(2).all(|w| w[0] >= w[1]);
    let non_decreasing = tasks.windows(2).all(|w| w[0] <= w[1]);
    match (non_increasing, non_decreasing) {
        (true, true) => ChainClass::Uniform,
        (true, false) => ChainClass::NonIncreasing,
        (false, true) => ChainClass::NonDecreasing,
        (false, false) => ChainClass::Arbitrary,
    }
}

/// A scheduling instance: `processors` identical processors and a set of chains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TaskSystem {
    pub processors: u32,
    pub chains: Vec<Chain>,
    pub splitable: bool,
}

impl TaskSystem {
    /// Builds a system, rejecting it if any invariant is broken.
    pub fn new(processors: u32, chains: Vec<Chain>, splitable: bool) -> Result<Self> {
        let system = TaskSystem {
            processors,
            chains,
            splitable,
        };
        ensure_valid(&system)?;
        Ok(system)
    }

    pub fn from_requirements(processors: u32, chains: &[&[u32]], splitable: bool) -> Result<Self> {
        Self::new(
            processors,
            chains.iter().map(|c| Chain::new(c.to_vec())).collect(),
            splitable,
        )
    }

    pub fn num_chains(&self) -> usize {
        self.chains.len()
    }

    pub fn total_work(&self) -> u64 {
        self.chains.iter().map(Chain::work).sum()
    }

    pub fn max_chain_len(&self) -> usize {
        self.chains.iter().map(Chain::len).max().unwrap_or(0)
    }

    pub fn requirement(&self, chain: usize, task: usize) -> Option<u32> {
        self.chains.get(chain)?.tasks().get(task).copied()
    }

    pub fn with_splitable(&self, splitable: bool) -> TaskSystem {
        TaskSystem {
            splitable,
            ..self.clone()
        }
    }

    /// Every chain reversed; maps non-increasing systems onto non-decreasing
    /// ones and back.
    pub fn reversed(&self) -> TaskSystem {
        TaskSystem {
            chains: self.chains.iter().map(Chain::reversed).collect(),
            ..self.clone()
        }
    }

    /// The single class shared by every chain, or `Arbitrary` for a mix.
    pub fn class(&self) -> ChainClass {
        let mut classes = self.chains.iter().map(classify_chain);
        let Some(first) = classes.next() else {
            return ChainClass::Uniform;
        };
        classes.fold(first, |acc, c| match (acc, c) {
            (a, b) if a == b => a,
            (ChainClass::Uniform, m) | (m, ChainClass::Uniform)
                if m != ChainClass::Arbitrary =>
            {
                m
            }
            _ => ChainClass::Arbitrary,
        })
    }
}

/// One broken instance invariant. Chain and task numbers are 1-based in the
/// rendered message and 0-based in the fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoProcessors,
    NoChains,
    EmptyChain {
        chain: usize,
    },
    ZeroRequirement {
        chain: usize,
        task: usize,
    },
    ExceedsProcessors {
        chain: usize,
        task: usize,
        requirement: u32,
        processors: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NoProcessors => write!(f, "processor count must be at least 1"),
            Violation::NoChains => write!(f, "system has no chains"),
            Violation::EmptyChain { chain } => write!(f, "chain C{} is empty", chain + 1),
            Violation::ZeroRequirement { chain, task } => {
                write!(f, "task T{},{} requires zero processors", chain + 1, task + 1)
            }
            Violation::ExceedsProcessors {
                chain,
                task,
                requirement,
                processors,
            } => write!(
                f,
                "task T{},{} requires {requirement} processors but only {processors} exist",
                chain + 1,
                task + 1
            ),
        }
    }
}

/// Lists every broken invariant of `system`; an empty list means the system is valid.
pub fn validate_system(system: &TaskSystem) -> Vec<Violation> {
    let mut violations = Vec::new();
    if system.processors == 0 {
        violations.push(Violation::NoProcessors);
    }
    if system.chains.is_empty() {
        violations.push(Violation::NoChains);
    }
    for (i, chain) in system.chains.iter().enumerate() {
        if chain.is_empty() {
            violations.push(Violation::EmptyChain { chain: i });
        }
        for (j, &p) in chain.tasks().iter().enumerate() {
            if p == 0 {
                violations.push(Violation::ZeroRequirement { chain: i, task: j });
            } else if p > system.processors {
                violations.push(Violation::ExceedsProcessors {
                    chain: i,
                    task: j,
                    requirement: p,
                    processors: system.processors,
                });
            }
        }
    }
    violations
}

pub(crate) fn ensure_valid(system: &TaskSystem) -> Result<()> {
    let violations = validate_system(system);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidSystem(violations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(processors: u32, chains: Vec<Vec<u32>>, splitable: bool) -> TaskSystem {
        TaskSystem {
            processors,
            chains: chains.into_iter().map(Chain::new).collect(),
            splitable,
        }
    }

    #[test]
    fn walkthrough_system_is_valid() {
        let s = raw(
            16,
            vec![vec![8; 4], vec![4; 3], vec![6; 5], vec![10; 4]],
            true,
        );
        assert!(validate_system(&s).is_empty());
    }

    #[test]
    fn requirement_above_processors_is_reported() {
        let s = raw(4, vec![vec![5]], false);
        assert_eq!(
            validate_system(&s),
            vec![Violation::ExceedsProcessors {
                chain: 0,
                task: 0,
                requirement: 5,
                processors: 4
            }]
        );
    }

    #[test]
    fn empty_chain_is_reported() {
        let s = raw(4, vec![vec![]], false);
        assert_eq!(validate_system(&s), vec![Violation::EmptyChain { chain: 0 }]);
    }

    #[test]
    fn single_processor_tasks_are_accepted() {
        assert!(validate_system(&raw(3, vec![vec![1, 1, 1]], false)).is_empty());
    }

    #[test]
    fn violation_messages_use_one_based_indices() {
        let s = raw(4, vec![vec![1], vec![2, 0]], false);
        let msg = validate_system(&s)[0].to_string();
        assert_eq!(msg, "task T2,2 requires zero processors");
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_chain(&Chain::new(vec![6, 6, 6])), ChainClass::Uniform);
        assert_eq!(
            classify_chain(&Chain::new(vec![9, 7, 7, 2])),
            ChainClass::NonIncreasing
        );
        assert_eq!(
            classify_chain(&Chain::new(vec![2, 7, 7, 9])),
            ChainClass::NonDecreasing
        );
        assert_eq!(classify_chain(&Chain::new(vec![3, 8, 2])), ChainClass::Arbitrary);
        assert_eq!(classify_chain(&Chain::new(vec![5])), ChainClass::Uniform);
    }

    #[test]
    fn system_class_merges_uniform_into_monotone() {
        let s = raw(10, vec![vec![4, 4], vec![5, 3]], false);
        assert_eq!(s.class(), ChainClass::NonIncreasing);
        let mixed = raw(10, vec![vec![1, 3], vec![5, 3]], false);
        assert_eq!(mixed.class(), ChainClass::Arbitrary);
        assert_eq!(s.reversed().class(), ChainClass::NonDecreasing);
    }

    #[test]
    fn class_names_parse() {
        for class in ChainClass::ALL {
            assert_eq!(class.name().parse::<ChainClass>().unwrap(), class);
        }
        assert!("zigzag".parse::<ChainClass>().is_err());
    }
}
