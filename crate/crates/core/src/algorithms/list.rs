//! Longest-remaining-chain-first scans (LCMPF, LCF, LCMCF).
//!
//! Each slot orders the unfinished chains by remaining length (descending),
//! then by a secondary key (descending), then by chain index. The order cannot
//! change inside a slot because each chain is served at most once per slot.
//!
//! Splitable mode walks that order handing out `min(free, residual)` until
//! the processors run out. Non-splitable mode places a ready task whole when it
//! fits and otherwise marks its chain visited and moves on.

use super::{residual_criticality, ReadyState};
use crate::workload::ensure_valid;
use crate::error::{Error, Result};
use crate::schedule::{criticality, CriticalityTable, Schedule};
use crate::workload::TaskSystem;

#[derive(Clone, Copy)]
enum Tiebreak<'c> {
    ChainIndex,
    Requirement,
    Criticality(&'c CriticalityTable),
}

/// Longest chain, maximum processors first. On non-splitable systems this is
/// the LCF scan with the larger-requirement tiebreak.
pub fn schedule_lcmpf(system: &TaskSystem) -> Result<Schedule> {
    ensure_valid(system)?;
    Ok(longest_chain_first(system, Tiebreak::Requirement))
}

/// Longest chain first with whole tasks; first-come tiebreak by chain index.
pub fn schedule_lcf(system: &TaskSystem) -> Result<Schedule> {
    ensure_valid(system)?;
    if system.splitable {
        return Err(Error::ModeMismatch { algorithm: "lcf" });
    }
    Ok(longest_chain_first(system, Tiebreak::ChainIndex))
}

/// Longest chain, maximum criticality first.
pub fn schedule_lcmcf(system: &TaskSystem) -> Result<Schedule> {
    ensure_valid(system)?;
    let table = criticality(system);
    Ok(longest_chain_first(system, Tiebreak::Criticality(&table)))
}

fn longest_chain_first(system: &TaskSystem, tiebreak: Tiebreak<'_>) -> Schedule {
    let mut state = ReadyState::new(system);
    let mut order: Vec<(usize, u64, usize)> = Vec::with_capacity(system.num_chains());

    while !state.all_done() {
        order.clear();
        order.extend(state.active().map(|i| {
            let key = match tiebreak {
                Tiebreak::ChainIndex => 0,
                Tiebreak::Requirement => u64::from(state.residual[i]),
                Tiebreak::Criticality(table) => residual_criticality(
                    table.get(i, state.next[i]),
                    state.residual[i],
                    state.requirement(i),
                ),
            };
            (state.remaining_len(i), key, i)
        }));
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)).then(a.2.cmp(&b.2)));

        let mut free = system.processors;
        let mut slot = Vec::new();
        for &(_, _, chain) in &order {
            if free == 0 {
                break;
            }
            let need = state.residual[chain];
            if system.splitable {
                let give = need.min(free);
                state.give(&mut slot, chain, give);
                free -= give;
            } else if need <= free {
                state.give(&mut slot, chain, need);
                free -= need;
            }
        }
        state.close(slot);
    }
    state.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::{check_schedule, Allocation};

    fn walkthrough(splitable: bool) -> TaskSystem {
        TaskSystem::from_requirements(16, &[&[8; 4], &[4; 3], &[6; 5], &[10; 4]], splitable)
            .unwrap()
    }

    #[test]
    fn lcmpf_walkthrough_first_slot() {
        let s = walkthrough(true);
        let sched = schedule_lcmpf(&s).unwrap();
        assert_eq!(
            sched.slots[0],
            vec![Allocation::new(2, 0, 6), Allocation::new(3, 0, 10)]
        );
        assert_eq!(sched.slot_waste(16)[0], 0);
        assert!(check_schedule(&s, &sched).is_empty());
        assert_eq!(sched.makespan(), 8);
    }

    #[test]
    fn lcf_walkthrough_first_slot() {
        let s = walkthrough(false);
        let sched = schedule_lcf(&s).unwrap();
        assert_eq!(
            sched.slots[0],
            vec![Allocation::new(2, 0, 6), Allocation::new(0, 0, 8)]
        );
        assert_eq!(sched.slot_waste(16)[0], 2);
        assert!(check_schedule(&s, &sched).is_empty());
    }

    #[test]
    fn lcmpf_non_splitable_uses_requirement_tiebreak() {
        let s = walkthrough(false);
        let sched = schedule_lcmpf(&s).unwrap();
        assert_eq!(
            sched.slots[0],
            vec![Allocation::new(2, 0, 6), Allocation::new(3, 0, 10)]
        );
        assert!(check_schedule(&s, &sched).is_empty());
    }

    #[test]
    fn single_chain_takes_one_slot_per_task() {
        for splitable in [false, true] {
            let s = TaskSystem::from_requirements(5, &[&[3, 3, 3]], splitable).unwrap();
            assert_eq!(schedule_lcmpf(&s).unwrap().makespan(), 3);
            assert_eq!(schedule_lcmcf(&s).unwrap().makespan(), 3);
        }
    }

    #[test]
    fn full_width_tasks_serialize() {
        let s = TaskSystem::from_requirements(6, &[&[6], &[6], &[6], &[6]], false).unwrap();
        let sched = schedule_lcf(&s).unwrap();
        assert_eq!(sched.makespan(), 4);
        assert!(sched.slots.iter().all(|slot| slot.len() == 1));
    }

    #[test]
    fn lcmcf_prefers_higher_criticality_on_equal_length() {
        // CVs of the ready tasks: 9 and 15
        let s = TaskSystem::from_requirements(10, &[&[4, 5], &[5, 10]], false).unwrap();
        let sched = schedule_lcmcf(&s).unwrap();
        assert_eq!(sched.slots[0][0], Allocation::new(1, 0, 5));
        assert!(check_schedule(&s, &sched).is_empty());
    }

    #[test]
    fn splitable_residual_carries_over() {
        let s = TaskSystem::from_requirements(4, &[&[3, 3], &[3, 3]], true).unwrap();
        let sched = schedule_lcmpf(&s).unwrap();
        assert_eq!(
            sched.slots[0],
            vec![Allocation::new(0, 0, 3), Allocation::new(1, 0, 1)]
        );
        // chain 2 still has two tasks left, so it goes first with its residual
        assert_eq!(sched.slots[1][0], Allocation::new(1, 0, 2));
        assert!(check_schedule(&s, &sched).is_empty());
        assert_eq!(sched.makespan(), 3);
    }
}
