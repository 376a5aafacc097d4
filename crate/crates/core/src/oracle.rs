//! Exact minimum makespan for desk-sized instances.
//!
//! The search runs over progress states (ready task and residual requirement
//! per chain) as a shortest path: the cost of a state is the fewest slots
//! needed to finish from it, memoised under a canonical key in which chains
//! with identical remaining work coincide. Only dominant slots are branched
//! on:
//!
//! * non-splitable: maximal feasible subsets of the ready tasks, i.e. no
//!   leftover processor could still hold an unselected ready task;
//! * splitable: integer allocations that hand out `min(M, ready demand)`
//!   processors, so nothing idles while a ready task still needs processors.
//!
//! Moving work from a later slot into an idle processor of an earlier slot in
//! which the same task is already ready never delays anything, so restricting
//! to these slots keeps the optimum.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::schedule::{Allocation, Schedule};
use crate::workload::{ensure_valid, TaskSystem};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Minimum makespan over all feasible schedules, or `BudgetExceeded` once more
/// than `budget` distinct states have been expanded.
pub fn optimal_makespan(system: &TaskSystem, budget: u64) -> Result<usize> {
    ensure_valid(system)?;
    let mut search = Search::new(system, budget);
    let root = search.root();
    search.cost(&root)
}

/// One schedule achieving [`optimal_makespan`].
pub fn optimal_schedule(system: &TaskSystem, budget: u64) -> Result<Schedule> {
    ensure_valid(system)?;
    let mut search = Search::new(system, budget);
    let mut state = search.root();
    let mut slots = Vec::new();
    let mut remaining = search.cost(&state)?;
    while remaining > 0 {
        let mut advanced = false;
        for (slot, next) in search.successors(&state) {
            if search.cost(&next)? + 1 == remaining {
                slots.push(slot);
                state = next;
                remaining -= 1;
                advanced = true;
                break;
            }
        }
        assert!(advanced, "memoised cost has no witness successor");
    }
    Ok(Schedule::new(slots))
}

/// `(next task, residual requirement)` per chain; `next == len` once done.
type State = Vec<(usize, u32)>;

struct Search<'a> {
    system: &'a TaskSystem,
    /// `suffix_ids[i][j]` names the task list `chains[i][j+1..]`, shared across
    /// chains with equal tails.
    suffix_ids: Vec<Vec<u32>>,
    memo: HashMap<Vec<(u32, u32)>, usize>,
    expanded: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(system: &'a TaskSystem, budget: u64) -> Self {
        let mut intern: HashMap<&[u32], u32> = HashMap::new();
        let suffix_ids = system
            .chains
            .iter()
            .map(|c| {
                let tasks = c.tasks();
                (0..tasks.len())
                    .map(|j| {
                        let next_id = intern.len() as u32;
                        *intern.entry(&tasks[j + 1..]).or_insert(next_id)
                    })
                    .collect()
            })
            .collect();
        Search {
            system,
            suffix_ids,
            memo: HashMap::new(),
            expanded: 0,
            budget,
        }
    }

    fn root(&self) -> State {
        self.system
            .chains
            .iter()
            .map(|c| (0, c.tasks()[0]))
            .collect()
    }

    fn is_done(&self, state: &State, chain: usize) -> bool {
        state[chain].0 >= self.system.chains[chain].len()
    }

    fn key(&self, state: &State) -> Vec<(u32, u32)> {
        let mut key: Vec<(u32, u32)> = state
            .iter()
            .enumerate()
            .filter(|&(i, _)| !self.is_done(state, i))
            .map(|(i, &(j, r))| (self.suffix_ids[i][j], r))
            .collect();
        key.sort_unstable();
        key
    }

    fn lower_bound(&self, state: &State) -> usize {
        let m = u64::from(self.system.processors);
        let mut work = 0u64;
        let mut longest = 0usize;
        for (i, &(j, r)) in state.iter().enumerate() {
            let tasks = self.system.chains[i].tasks();
            if j < tasks.len() {
                work += u64::from(r) + tasks[j + 1..].iter().map(|&p| u64::from(p)).sum::<u64>();
                longest = longest.max(tasks.len() - j);
            }
        }
        (work.div_ceil(m) as usize).max(longest)
    }

    fn cost(&mut self, state: &State) -> Result<usize> {
        let key = self.key(state);
        if key.is_empty() {
            return Ok(0);
        }
        if let Some(&c) = self.memo.get(&key) {
            return Ok(c);
        }
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }

        let floor = self.lower_bound(state);
        let mut succs: Vec<(usize, State)> = self
            .successors(state)
            .into_iter()
            .map(|(_, s)| (self.lower_bound(&s), s))
            .collect();
        succs.sort_by_key(|(lb, _)| *lb);

        let mut best = usize::MAX;
        for (lb, next) in succs {
            if lb + 1 >= best {
                break;
            }
            best = best.min(self.cost(&next)? + 1);
            if best == floor {
                break;
            }
        }
        self.memo.insert(key, best);
        Ok(best)
    }

    /// Dominant slots from `state`, one per distinct canonical successor.
    fn successors(&self, state: &State) -> Vec<(Vec<Allocation>, State)> {
        let ready: Vec<usize> = (0..state.len())
            .filter(|&i| !self.is_done(state, i))
            .collect();
        let m = self.system.processors;
        let mut amounts: Vec<Vec<u32>> = Vec::new();

        if self.system.splitable {
            let demand: u64 = ready.iter().map(|&i| u64::from(state[i].1)).sum();
            let total = demand.min(u64::from(m)) as u32;
            let caps: Vec<u32> = ready.iter().map(|&i| state[i].1).collect();
            distribute(&caps, total, &mut Vec::new(), &mut amounts);
        } else {
            let reqs: Vec<u32> = ready.iter().map(|&i| state[i].1).collect();
            for mask in 0u32..(1 << ready.len()) {
                let used: u32 = (0..ready.len())
                    .filter(|k| mask & (1 << k) != 0)
                    .map(|k| reqs[k])
                    .sum();
                if used > m {
                    continue;
                }
                let maximal = (0..ready.len())
                    .all(|k| mask & (1 << k) != 0 || reqs[k] > m - used);
                if maximal {
                    amounts.push(
                        (0..ready.len())
                            .map(|k| if mask & (1 << k) != 0 { reqs[k] } else { 0 })
                            .collect(),
                    );
                }
            }
        }

        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(amounts.len());
        for amount in amounts {
            let mut next = state.clone();
            let mut slot = Vec::new();
            for (&i, &a) in ready.iter().zip(&amount) {
                if a == 0 {
                    continue;
                }
                let (j, r) = next[i];
                slot.push(Allocation::new(i, j, a));
                next[i] = if a == r {
                    let tasks = self.system.chains[i].tasks();
                    (j + 1, tasks.get(j + 1).copied().unwrap_or(0))
                } else {
                    (j, r - a)
                };
            }
            if slot.is_empty() {
                continue;
            }
            if seen.insert(self.key(&next)) {
                out.push((slot, next));
            }
        }
        out
    }
}

/// Every vector `a` with `0 <= a[k] <= caps[k]` and `sum(a) == total`.
fn distribute(caps: &[u32], total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let k = prefix.len();
    if k == caps.len() {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let rest: u32 = caps[k + 1..].iter().sum();
    let lo = total.saturating_sub(rest);
    let hi = caps[k].min(total);
    for a in (lo..=hi).rev() {
        prefix.push(a);
        distribute(caps, total - a, prefix, out);
        prefix.pop();
    }
}
