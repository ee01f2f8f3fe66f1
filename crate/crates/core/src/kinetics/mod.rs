//! Merge/split moves, paths, and the saturated-path construction.

mod labeled;
mod path;

pub use labeled::{bind_first_decompose, saturate_path};
pub use path::{height, Path};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::enumerate::bipartitions;
use crate::error::{Result, TbnError};
use crate::model::{Configuration, Polymer, Tbn};

/// One elementary step. Indices refer to the canonical (sorted) polymer list
/// of the configuration the move is applied to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Merge { first: usize, second: usize },
    Split { polymer: usize, part: Polymer },
}

impl Move {
    pub fn apply(&self, c: &Configuration) -> Result<Configuration> {
        match self {
            Move::Merge { first, second } => c.merge(*first, *second),
            Move::Split { polymer, part } => c.split(*polymer, part),
        }
    }

    pub fn is_merge(&self) -> bool {
        matches!(self, Move::Merge { .. })
    }
}

/// Whether a merge combines incompatible (clean) or compatible (bind) polymers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeKind {
    Clean,
    Bind,
}

/// Which configurations a search may visit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    All,
    SaturatedOnly,
}

/// All distinct one-move successors of `c`.
///
/// Every unordered pair of polymers may merge, compatible or not; every
/// polymer may split into any proper bipartition. Results are deduplicated by
/// canonical form and returned in a deterministic order.
pub fn neighbors(tbn: &Tbn, c: &Configuration, mode: Mode) -> Vec<(Move, Configuration)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let ps = c.polymers();
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            // identical polymer pairs yield the same result
            if j > i + 1 && ps[j] == ps[j - 1] {
                continue;
            }
            let next = c.merge(i, j).expect("valid merge indices");
            if seen.insert(next.clone()) {
                out.push((Move::Merge { first: i, second: j }, next));
            }
        }
    }
    for i in 0..ps.len() {
        if i > 0 && ps[i] == ps[i - 1] {
            continue;
        }
        for (part, _) in bipartitions(&ps[i]) {
            let next = c.split(i, &part).expect("valid split");
            if seen.insert(next.clone()) {
                out.push((Move::Split { polymer: i, part }, next));
            }
        }
    }
    if mode == Mode::SaturatedOnly {
        out.retain(|(_, n)| tbn.is_saturated(n));
    }
    out
}

/// The move taking `from` to `to`, if they are one merge or split apart.
pub fn relate(from: &Configuration, to: &Configuration) -> Option<Move> {
    let (only_from, only_to) = multiset_difference(from.polymers(), to.polymers());
    match (only_from.len(), only_to.len()) {
        (2, 1) => {
            let (a, b) = (&from.polymers()[only_from[0]], &from.polymers()[only_from[1]]);
            (a.union(b) == to.polymers()[only_to[0]]).then_some(Move::Merge {
                first: only_from[0],
                second: only_from[1],
            })
        }
        (1, 2) => {
            let (a, b) = (&to.polymers()[only_to[0]], &to.polymers()[only_to[1]]);
            let whole = &from.polymers()[only_from[0]];
            (a.union(b) == *whole).then(|| Move::Split {
                polymer: only_from[0],
                part: a.min(b).clone(),
            })
        }
        _ => None,
    }
}

/// Indices of polymers present in `a` but not `b` and vice versa (both sorted).
fn multiset_difference(a: &[Polymer], b: &[Polymer]) -> (Vec<usize>, Vec<usize>) {
    let (mut i, mut j) = (0, 0);
    let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                only_a.push(i);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                only_b.push(j);
                j += 1;
            }
        }
    }
    only_a.extend(i..a.len());
    only_b.extend(j..b.len());
    (only_a, only_b)
}

/// Bind iff the two merged polymers are compatible.
pub fn classify_merge(tbn: &Tbn, c: &Configuration, m: &Move) -> Result<MergeKind> {
    match m {
        Move::Merge { first, second } => {
            let ps = c.polymers();
            if first == second || *first >= ps.len() || *second >= ps.len() {
                return Err(TbnError::InvalidMove(format!(
                    "merge of polymers {first} and {second} is not valid here"
                )));
            }
            Ok(if tbn.compatible(&ps[*first], &ps[*second]) {
                MergeKind::Bind
            } else {
                MergeKind::Clean
            })
        }
        Move::Split { .. } => Err(TbnError::InvalidMove("not a merge".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BondStrength, Monomer};
    use num_rational::Ratio;

    fn four_monomers() -> Tbn {
        Tbn::new([
            (Monomer::parse("a").unwrap().with_label("a"), 1),
            (Monomer::parse("b").unwrap().with_label("b"), 1),
            (Monomer::parse("a b").unwrap().with_label("ab"), 1),
            (Monomer::parse("a* b*").unwrap().with_label("ab*"), 1),
        ])
        .unwrap()
    }

    #[test]
    fn incompatible_merge_is_offered() {
        let t = Tbn::new([
            (Monomer::parse("a").unwrap().with_label("p"), 1),
            (Monomer::parse("b").unwrap().with_label("q"), 1),
        ])
        .unwrap();
        let n = neighbors(&t, &t.singletons(), Mode::All);
        assert_eq!(n.len(), 1);
        assert_eq!(n[0].1, t.whole());
    }

    #[test]
    fn singletons_admit_no_splits() {
        let t = four_monomers();
        let n = neighbors(&t, &t.singletons(), Mode::All);
        assert!(n.iter().all(|(m, _)| m.is_merge()));
        // C(4,2) = 6 distinct pairs, all distinct results
        assert_eq!(n.len(), 6);
    }

    #[test]
    fn merge_kinds_and_energy_laws() {
        let t = Tbn::new([
            (Monomer::parse("a").unwrap().with_label("x"), 1),
            (Monomer::parse("a*").unwrap().with_label("y"), 1),
            (Monomer::parse("b").unwrap().with_label("z"), 1),
        ])
        .unwrap();
        let c = t.singletons();
        let ps = c.polymers();
        let idx = |l: &str| {
            ps.iter()
                .position(|p| *p == t.polymer_of_labels(&[l]).unwrap())
                .unwrap()
        };
        let bind = Move::Merge {
            first: idx("x"),
            second: idx("y"),
        };
        let clean = Move::Merge {
            first: idx("x"),
            second: idx("z"),
        };
        assert_eq!(classify_merge(&t, &c, &bind).unwrap(), MergeKind::Bind);
        assert_eq!(classify_merge(&t, &c, &clean).unwrap(), MergeKind::Clean);
        for w in [
            BondStrength::integer(0),
            BondStrength::new(3, 2).unwrap(),
            BondStrength::integer(5),
        ] {
            let e0 = t.energy(&c).value(w);
            let after_clean = t.energy(&clean.apply(&c).unwrap()).value(w);
            assert_eq!(after_clean - e0, Ratio::from_integer(1));
            let after_bind = t.energy(&bind.apply(&c).unwrap()).value(w);
            assert!(after_bind - e0 <= Ratio::from_integer(1) - w.value());
        }
        let split = Move::Split {
            polymer: 0,
            part: ps[0].clone(),
        };
        assert!(classify_merge(&t, &c, &split).is_err());
        assert!(classify_merge(&t, &c, &Move::Merge { first: 1, second: 1 }).is_err());
    }

    #[test]
    fn relate_recovers_moves() {
        let t = four_monomers();
        let c = t.singletons();
        for (m, n) in neighbors(&t, &c, Mode::All) {
            assert_eq!(relate(&c, &n).unwrap().apply(&c).unwrap(), n);
            assert_eq!(relate(&n, &c).unwrap().apply(&n).unwrap(), c);
            assert_eq!(m.apply(&c).unwrap(), n);
        }
        assert!(relate(&c, &c).is_none());
        assert!(relate(&c, &t.whole()).is_none());
    }

    #[test]
    fn saturated_mode_filters() {
        let t = four_monomers();
        let c = t.whole();
        let all = neighbors(&t, &c, Mode::All);
        let sat = neighbors(&t, &c, Mode::SaturatedOnly);
        assert!(sat.len() < all.len());
        assert!(sat.iter().all(|(_, n)| t.is_saturated(n)));
        assert!(sat.iter().all(|s| all.contains(s)));
    }
}
