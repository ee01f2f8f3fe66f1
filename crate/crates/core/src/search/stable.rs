use std::cell::Cell;
use std::collections::HashSet;

use num_rational::Ratio;

use super::SearchBudget;
use crate::enumerate::{for_each_partition, Visit};
use crate::error::{Result, TbnError};
use crate::kinetics::{neighbors, Mode, Path};
use crate::model::{BondStrength, Configuration, Tbn};

/// Minimum-energy configurations of a TBN.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityResult {
    /// Largest polymer count among the stable configurations.
    pub max_s: usize,
    pub bonds: u64,
    pub energy: Ratio<i64>,
    /// Sorted, without duplicates.
    pub stable: Vec<Configuration>,
    /// False if the budget ran out; `stable` then holds the best found so far
    /// and the true `max_s` lies in `max_s..=s_upper_bound`.
    pub complete: bool,
    pub s_upper_bound: usize,
    /// Search nodes visited.
    pub explored: u64,
    /// Whether the search was restricted to saturated configurations
    /// (valid since every stable configuration is saturated when `w > 1`).
    pub saturated_shortcut: bool,
}

/// Stable configurations by branch and bound over monomer placements.
///
/// For `w > 1` a merge of two compatible polymers strictly lowers the energy,
/// so stable configurations are saturated and the search maximizes `S` among
/// configurations with the maximum bond count. Otherwise the energy itself is
/// minimized.
pub fn stable_configurations(tbn: &Tbn, w: BondStrength, budget: &SearchBudget) -> StabilityResult {
    let n = tbn.monomer_count();
    let max_h = tbn.max_bonds();
    let (p, q) = (w.numer(), w.denom());
    let shortcut = w.value() > Ratio::from_integer(1);
    let mut clock = budget.clock();
    let mut found: HashSet<Configuration> = HashSet::new();
    let mut complete = true;

    // best score: S for the shortcut, -E*q otherwise (larger is better)
    let score = |h: u64, s: usize| -> i64 {
        if shortcut {
            s as i64
        } else {
            p * h as i64 + q * s as i64
        }
    };
    let best = Cell::new(i64::MIN);
    if shortcut {
        // a greedy saturated configuration seeds the bound
        let seed = self_stabilize(tbn, &tbn.whole())
            .map(|path| path.end().clone())
            .unwrap_or_else(|_| tbn.whole());
        best.set(seed.polymer_count() as i64);
        found.insert(seed);
    }

    for_each_partition(
        tbn,
        |blocks, placed| {
            if !clock.tick() {
                complete = false;
                return Visit::Stop;
            }
            let optimistic = score(max_h, blocks.len() + (n - placed));
            if optimistic < best.get() {
                Visit::Prune
            } else {
                Visit::Continue
            }
        },
        |c| {
            let h = tbn.bonds(&c);
            if shortcut && h != max_h {
                return Visit::Continue;
            }
            let s = score(h, c.polymer_count());
            if s > best.get() {
                best.set(s);
                found.clear();
            }
            if s == best.get() {
                found.insert(c);
            }
            Visit::Continue
        },
    );

    let mut stable: Vec<Configuration> = found.into_iter().collect();
    stable.sort();
    let max_s = stable.iter().map(|c| c.polymer_count()).max().unwrap_or(0);
    let bonds = stable.iter().map(|c| tbn.bonds(c)).max().unwrap_or(0);
    let energy = stable
        .first()
        .map(|c| tbn.energy(c).value(w))
        .unwrap_or_else(|| Ratio::from_integer(0));
    StabilityResult {
        max_s,
        bonds,
        energy,
        stable,
        complete,
        s_upper_bound: if complete { max_s } else { n },
        explored: clock.ticks(),
        saturated_shortcut: shortcut,
    }
}

/// Splits greedily while staying saturated, until no saturated split remains.
/// Returns the splits-only path taken; its end need not be stable.
pub fn self_stabilize(tbn: &Tbn, c: &Configuration) -> Result<Path> {
    tbn.validate(c)?;
    if !tbn.is_saturated(c) {
        return Err(TbnError::Domain(
            "self-stabilization starts from a saturated configuration".into(),
        ));
    }
    let mut configs = vec![c.clone()];
    loop {
        let cur = configs.last().expect("nonempty");
        let next = neighbors(tbn, cur, Mode::SaturatedOnly)
            .into_iter()
            .find(|(m, _)| !m.is_merge());
        match next {
            Some((_, n)) => configs.push(n),
            None => break,
        }
    }
    Path::new(tbn, configs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::all_configurations;
    use crate::model::Monomer;

    fn tbn(spec: &[(&str, u32)]) -> Tbn {
        Tbn::new(spec.iter().map(|(s, c)| (Monomer::parse(s).unwrap(), *c))).unwrap()
    }

    fn brute(t: &Tbn, w: BondStrength) -> Vec<Configuration> {
        let all = all_configurations(t);
        let min = all.iter().map(|c| t.energy(c).value(w)).min().unwrap();
        all.into_iter().filter(|c| t.energy(c).value(w) == min).collect()
    }

    #[test]
    fn no_complements_gives_singletons() {
        let t = tbn(&[("a", 2), ("b c", 1)]);
        let r = stable_configurations(&t, BondStrength::integer(2), &SearchBudget::unlimited());
        assert_eq!(r.max_s, 3);
        assert_eq!(r.stable, vec![t.singletons()]);
        assert!(r.complete);
    }

    #[test]
    fn agrees_with_brute_force_across_regimes() {
        let t = tbn(&[("a b", 1), ("a*", 2), ("b* c", 1), ("c*", 1)]);
        for w in [
            BondStrength::integer(0),
            BondStrength::new(1, 2).unwrap(),
            BondStrength::integer(1),
            BondStrength::new(3, 2).unwrap(),
            BondStrength::integer(2),
        ] {
            let r = stable_configurations(&t, w, &SearchBudget::unlimited());
            assert_eq!(r.stable, brute(&t, w), "w = {w}");
        }
    }

    #[test]
    fn budget_is_reported() {
        let t = tbn(&[("a", 3), ("a*", 3)]);
        let r = stable_configurations(&t, BondStrength::integer(2), &SearchBudget::states(3));
        assert!(!r.complete);
        assert!(r.s_upper_bound >= r.max_s);
    }

    #[test]
    fn self_stabilize_splits_only() {
        let t = tbn(&[("a", 1), ("a*", 1), ("b", 1)]);
        let p = self_stabilize(&t, &t.whole()).unwrap();
        assert!(p.moves().iter().all(|m| !m.is_merge()));
        assert_eq!(p.end().polymer_count(), 2);
        assert!(self_stabilize(&t, &t.singletons()).is_err());
        let fixed = self_stabilize(&t, p.end()).unwrap();
        assert!(fixed.is_empty());
    }
}
