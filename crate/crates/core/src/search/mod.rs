//! Exact barriers by bottleneck best-first search, and stability.

mod engine;
mod stable;

pub use engine::{bottleneck_search, Outcome, Run, SearchBudget, StateSpace};
pub use stable::{self_stabilize, stable_configurations, StabilityResult};

use std::collections::HashMap;

use num_rational::Ratio;

use crate::error::{Result, TbnError};
use crate::kinetics::{neighbors, Mode, Path};
use crate::model::{BondStrength, Configuration, Tbn};

/// How a barrier search ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BarrierOutcome {
    Exact(Ratio<i64>),
    Unreachable,
    /// The true barrier is at least this.
    BudgetExhausted {
        lower_bound: Ratio<i64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarrierResult {
    pub outcome: BarrierOutcome,
    pub witness: Option<Path>,
    pub explored: u64,
    pub mode: Mode,
    /// Set when a polymer-size cap was in force: `Exact` values are then
    /// only upper bounds and `Unreachable` is not conclusive.
    pub upper_bound_only: bool,
}

impl BarrierResult {
    pub fn barrier(&self) -> Option<Ratio<i64>> {
        match self.outcome {
            BarrierOutcome::Exact(b) => Some(b),
            _ => None,
        }
    }

    pub fn budget_hit(&self) -> bool {
        matches!(self.outcome, BarrierOutcome::BudgetExhausted { .. })
    }
}

/// Configurations of one TBN under merges and splits.
pub struct PolymerSpace<'a> {
    pub tbn: &'a Tbn,
    pub w: BondStrength,
    pub mode: Mode,
    pub max_polymer_size: Option<usize>,
}

impl StateSpace for PolymerSpace<'_> {
    type State = Configuration;

    fn energy_scaled(&self, c: &Configuration) -> i64 {
        self.tbn.energy(c).scaled(self.w)
    }

    fn successors(&self, c: &Configuration) -> Vec<Configuration> {
        neighbors(self.tbn, c, self.mode)
            .into_iter()
            .map(|(_, n)| n)
            .filter(|n| {
                self.max_polymer_size
                    .is_none_or(|cap| n.polymers().iter().all(|p| p.size() <= cap))
            })
            .collect()
    }
}

pub(crate) fn unscale(v: i64, w: BondStrength) -> Ratio<i64> {
    Ratio::new(v, w.denom())
}

/// `b(from, to)` (or `b̂` in saturated mode): the least height of a path.
pub fn barrier(
    tbn: &Tbn,
    from: &Configuration,
    to: &Configuration,
    w: BondStrength,
    mode: Mode,
    budget: &SearchBudget,
) -> Result<BarrierResult> {
    tbn.validate(to)?;
    if mode == Mode::SaturatedOnly && !tbn.is_saturated(to) {
        return Err(TbnError::Domain("saturated barrier needs a saturated target".into()));
    }
    barrier_to(tbn, from, |c| c == to, w, mode, budget)
}

/// Least height of a path from `from` to any configuration satisfying `goal`.
pub fn barrier_to(
    tbn: &Tbn,
    from: &Configuration,
    goal: impl Fn(&Configuration) -> bool,
    w: BondStrength,
    mode: Mode,
    budget: &SearchBudget,
) -> Result<BarrierResult> {
    tbn.validate(from)?;
    if mode == Mode::SaturatedOnly && !tbn.is_saturated(from) {
        return Err(TbnError::Domain("saturated barrier needs a saturated start".into()));
    }
    let space = PolymerSpace {
        tbn,
        w,
        mode,
        max_polymer_size: budget.max_polymer_size,
    };
    let run = bottleneck_search(&space, from.clone(), goal, budget, false);
    let (outcome, witness) = match run.outcome {
        Outcome::Found { bottleneck, path } => (
            BarrierOutcome::Exact(unscale(bottleneck, w)),
            Some(Path::new(tbn, path)?),
        ),
        Outcome::Unreachable => (BarrierOutcome::Unreachable, None),
        Outcome::Exhausted { lower_bound } => (
            BarrierOutcome::BudgetExhausted {
                lower_bound: unscale(lower_bound, w),
            },
            None,
        ),
    };
    Ok(BarrierResult {
        outcome,
        witness,
        explored: run.explored,
        mode,
        upper_bound_only: budget.max_polymer_size.is_some(),
    })
}

/// Barrier from `from` to every reachable configuration.
pub fn bottleneck_map(
    tbn: &Tbn,
    from: &Configuration,
    w: BondStrength,
    mode: Mode,
) -> HashMap<Configuration, Ratio<i64>> {
    let space = PolymerSpace {
        tbn,
        w,
        mode,
        max_polymer_size: None,
    };
    bottleneck_search(&space, from.clone(), |_| false, &SearchBudget::unlimited(), true)
        .finalized
        .into_iter()
        .map(|(c, b)| (c, unscale(b, w)))
        .collect()
}

/// Whether `b̂(from, to) = b(from, to)`, which holds for saturated endpoints
/// once `w >= 2`.
pub fn saturated_equals_unrestricted_check(
    tbn: &Tbn,
    from: &Configuration,
    to: &Configuration,
    w: BondStrength,
    budget: &SearchBudget,
) -> Result<bool> {
    if w.value() < Ratio::from_integer(2) {
        return Err(TbnError::UnsupportedRegime(format!(
            "saturated and unrestricted barriers agree only for w >= 2 (got {w})"
        )));
    }
    let all = barrier(tbn, from, to, w, Mode::All, budget)?;
    let sat = barrier(tbn, from, to, w, Mode::SaturatedOnly, budget)?;
    match (all.barrier(), sat.barrier()) {
        (Some(a), Some(s)) => Ok(a == s),
        _ if all.budget_hit() || sat.budget_hit() => {
            Err(TbnError::Budget("could not finish both barrier searches".into()))
        }
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetics::height;
    use crate::model::Monomer;

    fn four_monomers() -> Tbn {
        Tbn::new([
            (Monomer::parse("a").unwrap().with_label("a"), 1),
            (Monomer::parse("b").unwrap().with_label("b"), 1),
            (Monomer::parse("a b").unwrap().with_label("ab"), 1),
            (Monomer::parse("a* b*").unwrap().with_label("ab*"), 1),
        ])
        .unwrap()
    }

    fn tightness() -> Tbn {
        Tbn::new([
            (Monomer::parse("a b").unwrap().with_label("m1"), 1),
            (Monomer::parse("a*").unwrap().with_label("m2"), 1),
            (Monomer::parse("a c").unwrap().with_label("m3"), 1),
        ])
        .unwrap()
    }

    #[test]
    fn four_monomer_barrier_is_one() {
        let t = four_monomers();
        let w = BondStrength::integer(2);
        let g = t.configuration_of_labels(&[&["a", "b", "ab*"], &["ab"]]).unwrap();
        let d = t.configuration_of_labels(&[&["ab", "ab*"], &["a"], &["b"]]).unwrap();
        let r = barrier(&t, &g, &d, w, Mode::All, &SearchBudget::unlimited()).unwrap();
        assert_eq!(r.barrier(), Some(Ratio::from_integer(1)));
        let path = r.witness.unwrap();
        assert_eq!(height(&t, &path, w), Ratio::from_integer(1));
        assert!(saturated_equals_unrestricted_check(&t, &g, &d, w, &SearchBudget::unlimited()).unwrap());
    }

    #[test]
    fn identical_endpoints_have_zero_barrier() {
        let t = four_monomers();
        let r = barrier(
            &t,
            &t.whole(),
            &t.whole(),
            BondStrength::integer(2),
            Mode::All,
            &SearchBudget::unlimited(),
        )
        .unwrap();
        assert_eq!(r.barrier(), Some(Ratio::from_integer(0)));
        assert!(r.witness.unwrap().is_empty());
    }

    #[test]
    fn tightness_instance_at_unit_strength() {
        let t = tightness();
        let w = BondStrength::integer(1);
        let g = t.configuration_of_labels(&[&["m1", "m2"], &["m3"]]).unwrap();
        let d = t.configuration_of_labels(&[&["m1"], &["m2", "m3"]]).unwrap();
        let b = barrier(&t, &g, &d, w, Mode::All, &SearchBudget::unlimited()).unwrap();
        let bh = barrier(&t, &g, &d, w, Mode::SaturatedOnly, &SearchBudget::unlimited()).unwrap();
        assert_eq!(b.barrier(), Some(Ratio::from_integer(0)));
        assert_eq!(bh.barrier(), Some(Ratio::from_integer(1)));
    }

    #[test]
    fn saturated_mode_rejects_unsaturated_endpoints() {
        let t = four_monomers();
        let r = barrier(
            &t,
            &t.singletons(),
            &t.whole(),
            BondStrength::integer(2),
            Mode::SaturatedOnly,
            &SearchBudget::unlimited(),
        );
        assert!(matches!(r, Err(TbnError::Domain(_))));
    }

    #[test]
    fn budget_exhaustion_is_explicit() {
        let t = four_monomers();
        let w = BondStrength::integer(2);
        let r = barrier(&t, &t.whole(), &t.singletons(), w, Mode::All, &SearchBudget::states(2)).unwrap();
        assert!(r.budget_hit());
        assert!(r.witness.is_none());
        let full = barrier(
            &t,
            &t.whole(),
            &t.singletons(),
            w,
            Mode::All,
            &SearchBudget::unlimited(),
        )
        .unwrap();
        match r.outcome {
            BarrierOutcome::BudgetExhausted { lower_bound } => assert!(lower_bound <= full.barrier().unwrap()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn polymer_cap_marks_upper_bound() {
        let t = four_monomers();
        let budget = SearchBudget {
            max_polymer_size: Some(2),
            ..SearchBudget::default()
        };
        let d = t.configuration_of_labels(&[&["ab", "ab*"], &["a"], &["b"]]).unwrap();
        let r = barrier(&t, &t.singletons(), &d, BondStrength::integer(2), Mode::All, &budget).unwrap();
        assert!(r.upper_bound_only);
        assert_eq!(r.barrier(), Some(Ratio::from_integer(0)));
    }

    #[test]
    fn map_agrees_with_pointwise_barriers() {
        let t = four_monomers();
        let w = BondStrength::new(3, 2).unwrap();
        let map = bottleneck_map(&t, &t.whole(), w, Mode::All);
        assert_eq!(map.len(), 15);
        for (c, b) in &map {
            let r = barrier(&t, &t.whole(), c, w, Mode::All, &SearchBudget::unlimited()).unwrap();
            assert_eq!(r.barrier(), Some(*b));
        }
    }
}
