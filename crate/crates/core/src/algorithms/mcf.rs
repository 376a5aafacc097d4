//! Maximum criticality first.
//!
//! Each slot offers every ready task to a knapsack of capacity `M`, weight
//! being the processors it still needs and value its criticality. Whole tasks
//! go through the exact 0-1 solver; splitable systems use the greedy
//! fractional solver, which splits at most one task per slot.

use super::{residual_criticality, ReadyState};
use crate::workload::ensure_valid;
use crate::error::Result;
use crate::knapsack::{select_01, select_fractional, KnapsackItem};
use crate::schedule::{criticality, Schedule};
use crate::workload::TaskSystem;

pub fn schedule_mcf(system: &TaskSystem) -> Result<Schedule> {
    ensure_valid(system)?;
    let table = criticality(system);
    let mut state = ReadyState::new(system);
    let mut items = Vec::with_capacity(system.num_chains());

    while !state.all_done() {
        items.clear();
        items.extend(state.active().map(|i| {
            let j = state.next[i];
            KnapsackItem::new(
                (i, j),
                state.residual[i],
                residual_criticality(table.get(i, j), state.residual[i], state.requirement(i)),
            )
        }));

        let mut picks: Vec<(usize, u32)> = if system.splitable {
            select_fractional(&items, system.processors)
                .into_iter()
                .map(|(item, amount)| (item.id.0, amount))
                .collect()
        } else {
            select_01(&items, system.processors)
                .into_iter()
                .map(|item| (item.id.0, item.weight))
                .collect()
        };
        picks.sort_unstable();

        let mut slot = Vec::with_capacity(picks.len());
        for (chain, procs) in picks {
            state.give(&mut slot, chain, procs);
        }
        state.close(slot);
    }
    Ok(state.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::{check_schedule, lower_bound, Allocation};

    #[test]
    fn first_slot_maximises_criticality() {
        // ready tasks (p=10, CV=60), (p=8, CV=40), (p=6, CV=30)
        let s = TaskSystem::from_requirements(
            16,
            &[&[10, 16, 16, 16, 2], &[8, 16, 16], &[6, 16, 8]],
            false,
        )
        .unwrap();
        let sched = schedule_mcf(&s).unwrap();
        assert_eq!(
            sched.slots[0],
            vec![Allocation::new(0, 0, 10), Allocation::new(2, 0, 6)]
        );
        assert!(check_schedule(&s, &sched).is_empty());
    }

    #[test]
    fn slack_capacity_takes_everything() {
        let s = TaskSystem::from_requirements(20, &[&[3, 2], &[4], &[5, 5]], false).unwrap();
        let sched = schedule_mcf(&s).unwrap();
        assert_eq!(sched.slots[0].len(), 3);
        assert_eq!(sched.makespan(), 2);
    }

    #[test]
    fn splitable_splits_at_most_one_task_per_slot() {
        let s = TaskSystem::from_requirements(7, &[&[5, 5, 2], &[4, 1], &[6, 6]], true).unwrap();
        let sched = schedule_mcf(&s).unwrap();
        assert!(check_schedule(&s, &sched).is_empty());
        assert!(sched.makespan() >= lower_bound(&s));
        let mut owed: Vec<Vec<u32>> = s.chains.iter().map(|c| c.tasks().to_vec()).collect();
        for (t, slot) in sched.slots.iter().enumerate() {
            let mut cut = 0;
            for a in slot {
                if a.procs < owed[a.chain][a.task] {
                    cut += 1;
                }
                owed[a.chain][a.task] -= a.procs;
            }
            assert!(cut <= 1, "slot {t}: {slot:?}");
        }
    }
}
