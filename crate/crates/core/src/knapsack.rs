//! Slot selection for the maximum-criticality heuristic: exact 0-1 knapsack by
//! dynamic programming and the greedy fractional variant with integer pieces.

use std::cmp::Ordering;

/// A ready task offered to the knapsack: weight is processors, value is criticality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KnapsackItem {
    pub id: (usize, usize),
    pub weight: u32,
    pub value: u64,
}

impl KnapsackItem {
    pub fn new(id: (usize, usize), weight: u32, value: u64) -> Self {
        KnapsackItem { id, weight, value }
    }
}

/// Maximum-value subset with total weight at most `capacity`, in `O(n * capacity)`.
///
/// Among all maximum-value subsets, the one whose sorted id list is
/// lexicographically smallest is returned, sorted by id.
pub fn select_01(items: &[KnapsackItem], capacity: u32) -> Vec<KnapsackItem> {
    let mut items = items.to_vec();
    items.sort_by_key(|it| it.id);
    let n = items.len();
    let cap = capacity as usize;

    // best[i][c]: optimum over items[i..] with capacity c
    let mut best = vec![vec![0u64; cap + 1]; n + 1];
    for i in (0..n).rev() {
        let w = items[i].weight as usize;
        let v = items[i].value;
        for c in 0..=cap {
            let skip = best[i + 1][c];
            best[i][c] = if w <= c {
                skip.max(v + best[i + 1][c - w])
            } else {
                skip
            };
        }
    }

    // Walking forward and taking an item whenever that stays optimal puts the
    // smallest possible id first at every step.
    let mut chosen = Vec::new();
    let mut c = cap;
    for (i, item) in items.iter().enumerate() {
        let w = item.weight as usize;
        if w <= c && item.value + best[i + 1][c - w] == best[i][c] {
            chosen.push(*item);
            c -= w;
        }
    }
    chosen
}

pub fn total_value(items: &[KnapsackItem]) -> u64 {
    items.iter().map(|it| it.value).sum()
}

/// Greedy by value density, integer amounts. Items are taken whole while they
/// fit; the first one that does not fit is cut to the remaining capacity and
/// the selection stops there.
pub fn select_fractional(items: &[KnapsackItem], capacity: u32) -> Vec<(KnapsackItem, u32)> {
    let mut order = items.to_vec();
    order.sort_by(|a, b| by_density(a, b).then(a.id.cmp(&b.id)));

    let mut left = capacity;
    let mut taken = Vec::new();
    for item in order {
        if left == 0 {
            break;
        }
        let amount = item.weight.min(left);
        if amount > 0 {
            taken.push((item, amount));
        }
        left -= amount;
        if amount < item.weight {
            break;
        }
    }
    taken
}

/// Decreasing value / weight, compared exactly by cross-multiplication.
fn by_density(a: &KnapsackItem, b: &KnapsackItem) -> Ordering {
    let lhs = u128::from(a.value) * u128::from(b.weight);
    let rhs = u128::from(b.value) * u128::from(a.weight);
    rhs.cmp(&lhs)
}
