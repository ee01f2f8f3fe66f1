use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::hash::Hash;
use std::time::{Duration, Instant};

/// A finite state graph with integer-scaled energies.
pub trait StateSpace {
    type State: Clone + Eq + Hash + Ord;

    /// Energy times a fixed positive scale, so comparisons are exact.
    fn energy_scaled(&self, s: &Self::State) -> i64;

    /// One-move successors; need not be deduplicated.
    fn successors(&self, s: &Self::State) -> Vec<Self::State>;
}

/// Limits for a search. The default is unlimited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of finalized states.
    pub max_states: Option<u64>,
    /// Only polymers up to this many monomers are visited. Unsound: results
    /// become upper bounds.
    pub max_polymer_size: Option<usize>,
    pub timeout: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn states(max_states: u64) -> Self {
        Self {
            max_states: Some(max_states),
            ..Self::default()
        }
    }

    pub(crate) fn clock(&self) -> Clock {
        Clock {
            deadline: self.timeout.map(|t| Instant::now() + t),
            max_states: self.max_states,
            ticks: 0,
        }
    }
}

pub(crate) struct Clock {
    deadline: Option<Instant>,
    max_states: Option<u64>,
    ticks: u64,
}

impl Clock {
    /// Counts one unit of work; false once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        self.ticks += 1;
        if self.max_states.is_some_and(|m| self.ticks > m) {
            return false;
        }
        // checking the time is cheap but not free
        if self.ticks.is_multiple_of(256) {
            if let Some(d) = self.deadline {
                return Instant::now() < d;
            }
        }
        true
    }

    pub(crate) fn ticks(&self) -> u64 {
        self.ticks
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<S> {
    /// Least bottleneck (scaled, relative to the start) and a path achieving it.
    Found {
        bottleneck: i64,
        path: Vec<S>,
    },
    Unreachable,
    /// Every unexplored path has bottleneck at least `lower_bound`.
    Exhausted {
        lower_bound: i64,
    },
}

#[derive(Clone, Debug)]
pub struct Run<S> {
    pub outcome: Outcome<S>,
    pub explored: u64,
    /// Finalized states with their bottleneck, when requested.
    pub finalized: Vec<(S, i64)>,
}

struct Entry {
    bottleneck: i64,
    moves: u32,
    parent: usize,
    done: bool,
}

/// Bottleneck best-first search: finds a path from `start` to a state
/// satisfying `goal` minimizing the largest energy along it.
///
/// States are finalized in order of (bottleneck, moves, state), which makes
/// witnesses deterministic. With `keep_all`, the search runs to completion
/// (unless `goal` matches) and reports every finalized bottleneck.
pub fn bottleneck_search<Sp: StateSpace>(
    space: &Sp,
    start: Sp::State,
    goal: impl Fn(&Sp::State) -> bool,
    budget: &SearchBudget,
    keep_all: bool,
) -> Run<Sp::State> {
    let e0 = space.energy_scaled(&start);
    let mut index: HashMap<Sp::State, usize> = HashMap::new();
    let mut states: Vec<Sp::State> = Vec::new();
    let mut entries: Vec<Entry> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut clock = budget.clock();
    let mut finalized = Vec::new();

    index.insert(start.clone(), 0);
    states.push(start.clone());
    entries.push(Entry {
        bottleneck: 0,
        moves: 0,
        parent: usize::MAX,
        done: false,
    });
    heap.push(Reverse((0i64, 0u32, start, 0usize)));

    while let Some(Reverse((b, m, s, k))) = heap.pop() {
        let e = &mut entries[k];
        if e.done || (e.bottleneck, e.moves) != (b, m) {
            continue;
        }
        if !clock.tick() {
            return Run {
                outcome: Outcome::Exhausted { lower_bound: b },
                explored: clock.ticks() - 1,
                finalized,
            };
        }
        e.done = true;
        if keep_all {
            finalized.push((s.clone(), b));
        }
        if goal(&s) {
            let mut path = vec![s];
            let mut cur = entries[k].parent;
            while cur != usize::MAX {
                path.push(states[cur].clone());
                cur = entries[cur].parent;
            }
            path.reverse();
            return Run {
                outcome: Outcome::Found { bottleneck: b, path },
                explored: clock.ticks(),
                finalized,
            };
        }
        for next in space.successors(&s) {
            let nb = b.max(space.energy_scaled(&next) - e0);
            let nm = m + 1;
            match index.get(&next) {
                Some(&j) => {
                    let ej = &mut entries[j];
                    if !ej.done && (nb, nm) < (ej.bottleneck, ej.moves) {
                        ej.bottleneck = nb;
                        ej.moves = nm;
                        ej.parent = k;
                        heap.push(Reverse((nb, nm, next, j)));
                    }
                }
                None => {
                    let j = states.len();
                    index.insert(next.clone(), j);
                    states.push(next.clone());
                    entries.push(Entry {
                        bottleneck: nb,
                        moves: nm,
                        parent: k,
                        done: false,
                    });
                    heap.push(Reverse((nb, nm, next, j)));
                }
            }
        }
    }
    Run {
        outcome: Outcome::Unreachable,
        explored: clock.ticks(),
        finalized,
    }
}
