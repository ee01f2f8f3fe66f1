//! Configurations with explicit bonds.
//!
//! A polymer stores its member types and its bonds as counts of
//! `(unstarred member, starred member, site name)` triples. Sites of one
//! monomer with the same name and star are interchangeable, so this is exact;
//! the canonical form minimizes over permutations of identical members.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use num_rational::Ratio;

use crate::error::{Result, TbnError};
use crate::model::{BondStrength, Configuration, Polymer, Tbn};
use crate::search::{bottleneck_search, unscale, BarrierOutcome, Outcome, SearchBudget, StateSpace};

/// Instances with more sites are refused unless forced.
pub const SITE_CAP: usize = 10;

/// `count` bonds between unstarred sites of member `u` and starred sites of
/// member `s` on site name `name` (indices local to the polymer).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BondGroup {
    pub u: usize,
    pub s: usize,
    pub name: usize,
    pub count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BondPolymer {
    members: Vec<usize>,
    bonds: Vec<BondGroup>,
}

impl BondPolymer {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn bonds(&self) -> &[BondGroup] {
        &self.bonds
    }

    pub fn bond_count(&self) -> u64 {
        self.bonds.iter().map(|b| b.count as u64).sum()
    }

    fn canonical(members: Vec<usize>, bonds: Vec<BondGroup>) -> Self {
        // sort members by type, remembering where each went
        let mut order: Vec<usize> = (0..members.len()).collect();
        order.sort_by_key(|&k| members[k]);
        let sorted: Vec<usize> = order.iter().map(|&k| members[k]).collect();
        let mut pos = vec![0; members.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let base: Vec<BondGroup> = bonds
            .into_iter()
            .filter(|b| b.count > 0)
            .map(|b| BondGroup {
                u: pos[b.u],
                s: pos[b.s],
                ..b
            })
            .collect();

        // runs of identical types may be permuted freely
        let runs: Vec<(usize, usize)> = sorted
            .iter()
            .enumerate()
            .chunk_by(|(_, &t)| t)
            .into_iter()
            .map(|(_, g)| {
                let idx: Vec<usize> = g.map(|(i, _)| i).collect();
                (idx[0], idx.len())
            })
            .filter(|&(_, len)| len > 1)
            .collect();
        let mut best: Option<Vec<BondGroup>> = None;
        let mut relabel: Vec<usize> = (0..sorted.len()).collect();
        permute_runs(&runs, 0, &mut relabel, &mut |map| {
            let mut v: Vec<BondGroup> = base
                .iter()
                .map(|b| BondGroup {
                    u: map[b.u],
                    s: map[b.s],
                    ..*b
                })
                .collect();
            v.sort_unstable();
            merge_groups(&mut v);
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        });
        Self {
            members: sorted,
            bonds: best.unwrap_or_default(),
        }
    }
}

fn permute_runs(runs: &[(usize, usize)], k: usize, map: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if k == runs.len() {
        f(map);
        return;
    }
    let (start, len) = runs[k];
    for perm in (start..start + len).permutations(len) {
        for (offset, &target) in perm.iter().enumerate() {
            map[start + offset] = target;
        }
        permute_runs(runs, k + 1, map, f);
    }
    for i in start..start + len {
        map[i] = i;
    }
}

/// Combines equal triples of a sorted list.
fn merge_groups(v: &mut Vec<BondGroup>) {
    let mut out: Vec<BondGroup> = Vec::with_capacity(v.len());
    for b in v.drain(..) {
        match out.last_mut() {
            Some(last) if (last.u, last.s, last.name) == (b.u, b.s, b.name) => last.count += b.count,
            _ => out.push(b),
        }
    }
    *v = out;
}

/// Member types of one polymer and its bonds as `(u, s, name)` triples,
/// members indexed by position.
pub type PolymerSpec = (Vec<usize>, Vec<(usize, usize, usize)>);

/// A matching on the sites together with a partition that keeps every bond
/// inside one polymer. Polymers are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BondConfiguration {
    polymers: Vec<BondPolymer>,
}

/// One step of the bond-aware model. Member indices are local to the polymer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BondMove {
    Make {
        polymer: usize,
        u: usize,
        s: usize,
        name: usize,
    },
    Break {
        polymer: usize,
        u: usize,
        s: usize,
        name: usize,
    },
    /// Moves one endpoint of a bond `(u, s)` to a free site, giving `to`.
    Swap3 {
        polymer: usize,
        name: usize,
        from: (usize, usize),
        to: (usize, usize),
    },
    /// Exchanges the starred endpoints of bonds `(u1, s1)` and `(u2, s2)`.
    Swap4 {
        polymer: usize,
        name: usize,
        first: (usize, usize),
        second: (usize, usize),
    },
    Merge {
        first: usize,
        second: usize,
    },
    Split {
        polymer: usize,
        part: Vec<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BondMoveKind {
    Make,
    Break,
    Swap3,
    Swap4,
    Merge,
    Split,
}

impl BondMove {
    pub fn kind(&self) -> BondMoveKind {
        match self {
            BondMove::Make { .. } => BondMoveKind::Make,
            BondMove::Break { .. } => BondMoveKind::Break,
            BondMove::Swap3 { .. } => BondMoveKind::Swap3,
            BondMove::Swap4 { .. } => BondMoveKind::Swap4,
            BondMove::Merge { .. } => BondMoveKind::Merge,
            BondMove::Split { .. } => BondMoveKind::Split,
        }
    }
}

/// Which bond-aware moves are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BondMode {
    /// Exclude makes and breaks.
    pub no_break: bool,
    pub swap4: bool,
}

impl BondMode {
    pub const ALL: BondMode = BondMode {
        no_break: false,
        swap4: true,
    };
    pub const NO_BREAK: BondMode = BondMode {
        no_break: true,
        swap4: true,
    };
}

impl Default for BondMode {
    fn default() -> Self {
        Self::ALL
    }
}

impl BondConfiguration {
    /// Builds a configuration from polymers given as member types and
    /// `(u, s, name)` bonds (with repetition), checking site availability and
    /// the partition property.
    pub fn new(tbn: &Tbn, polymers: Vec<PolymerSpec>) -> Result<Self> {
        let mut total = vec![0u32; tbn.type_count()];
        let mut out = Vec::new();
        for (members, bonds) in polymers {
            if members.is_empty() {
                return Err(TbnError::NotPartition("empty polymer".into()));
            }
            for &t in &members {
                if t >= total.len() {
                    return Err(TbnError::NotPartition(format!("no monomer type {t}")));
                }
                total[t] += 1;
            }
            let groups: Vec<BondGroup> = bonds
                .iter()
                .map(|&(u, s, name)| BondGroup { u, s, name, count: 1 })
                .collect();
            for g in &groups {
                if g.u >= members.len() || g.s >= members.len() || g.name >= tbn.site_names().len() {
                    return Err(TbnError::Domain("bond refers to a missing member or name".into()));
                }
            }
            let p = BondPolymer::canonical(members, groups);
            if !free_sites(tbn, &p)
                .iter()
                .all(|f| f.iter().all(|&(a, b)| a >= 0 && b >= 0))
            {
                return Err(TbnError::Domain("a site is bonded more than once".into()));
            }
            out.push(p);
        }
        for (t, (&have, &want)) in total.iter().zip(tbn.counts()).enumerate() {
            if have != want {
                return Err(TbnError::NotPartition(format!(
                    "monomer {} used {have} times, TBN has {want}",
                    tbn.label(t)
                )));
            }
        }
        out.sort();
        Ok(Self { polymers: out })
    }

    pub fn polymers(&self) -> &[BondPolymer] {
        &self.polymers
    }

    pub fn bond_count(&self) -> u64 {
        self.polymers.iter().map(|p| p.bond_count()).sum()
    }

    pub fn polymer_count(&self) -> usize {
        self.polymers.len()
    }

    /// Bonded site pairs as `(member type, site name, starred)` endpoints,
    /// for display: `(polymer, u-member, s-member, name)` repeated per bond.
    pub fn bond_list(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for (k, p) in self.polymers.iter().enumerate() {
            for b in &p.bonds {
                for _ in 0..b.count {
                    out.push((k, b.u, b.s, b.name));
                }
            }
        }
        out
    }
}

/// `(free unstarred, free starred)` per member and name; negative if overbooked.
fn free_sites(tbn: &Tbn, p: &BondPolymer) -> Vec<Vec<(i64, i64)>> {
    let names = tbn.site_names().len();
    let mut free: Vec<Vec<(i64, i64)>> = p
        .members
        .iter()
        .map(|&t| {
            (0..names)
                .map(|k| (tbn.type_unstarred(t)[k] as i64, tbn.type_starred(t)[k] as i64))
                .collect()
        })
        .collect();
    for b in &p.bonds {
        free[b.u][b.name].0 -= b.count as i64;
        free[b.s][b.name].1 -= b.count as i64;
    }
    free
}

/// Forgets the bonds.
pub fn simplify(tbn: &Tbn, bc: &BondConfiguration) -> Configuration {
    Configuration::from_polymers(
        bc.polymers
            .iter()
            .map(|p| {
                let mut counts = vec![0u32; tbn.type_count()];
                for &t in &p.members {
                    counts[t] += 1;
                }
                Polymer::from_counts(counts).expect("nonempty polymer")
            })
            .collect(),
    )
}

/// `-w * bonds - polymers`.
pub fn bond_energy(bc: &BondConfiguration, w: BondStrength) -> Ratio<i64> {
    w.value() * Ratio::from_integer(-(bc.bond_count() as i64)) - Ratio::from_integer(bc.polymer_count() as i64)
}

fn bond_energy_scaled(bc: &BondConfiguration, w: BondStrength) -> i64 {
    -(w.numer() * bc.bond_count() as i64 + w.denom() * bc.polymer_count() as i64)
}

/// The matching is maximal: no free unstarred and free starred site of the
/// same name exist anywhere.
pub fn is_bond_saturated(tbn: &Tbn, bc: &BondConfiguration) -> bool {
    let names = tbn.site_names().len();
    let mut fu = vec![0i64; names];
    let mut fs = vec![0i64; names];
    for p in &bc.polymers {
        for member in free_sites(tbn, p) {
            for (k, (a, b)) in member.into_iter().enumerate() {
                fu[k] += a;
                fs[k] += b;
            }
        }
    }
    (0..names).all(|k| fu[k] == 0 || fs[k] == 0)
}

/// Each polymer of `c` with a maximum matching inside it.
pub fn lift_max(tbn: &Tbn, c: &Configuration) -> BondConfiguration {
    let polymers = c
        .polymers()
        .iter()
        .map(|p| {
            let members = p.members();
            let names = tbn.site_names().len();
            let mut bonds = Vec::new();
            for k in 0..names {
                let mut us: Vec<usize> = Vec::new();
                let mut ss: Vec<usize> = Vec::new();
                for (m, &t) in members.iter().enumerate() {
                    us.extend(std::iter::repeat_n(m, tbn.type_unstarred(t)[k] as usize));
                    ss.extend(std::iter::repeat_n(m, tbn.type_starred(t)[k] as usize));
                }
                for (&u, &s) in us.iter().zip(&ss) {
                    bonds.push(BondGroup {
                        u,
                        s,
                        name: k,
                        count: 1,
                    });
                }
            }
            BondPolymer::canonical(members, bonds)
        })
        .sorted()
        .collect();
    BondConfiguration { polymers }
}

/// All unbonded: every monomer separate.
pub fn unbonded_singletons(tbn: &Tbn) -> BondConfiguration {
    let polymers = crate::enumerate::instance_types(tbn)
        .into_iter()
        .map(|t| BondPolymer {
            members: vec![t],
            bonds: Vec::new(),
        })
        .sorted()
        .collect();
    BondConfiguration { polymers }
}

fn with_polymer(bc: &BondConfiguration, k: usize, p: BondPolymer) -> BondConfiguration {
    let mut polymers = bc.polymers.clone();
    polymers[k] = p;
    polymers.sort();
    BondConfiguration { polymers }
}

fn adjust(p: &BondPolymer, changes: &[(usize, usize, usize, i64)]) -> BondPolymer {
    let mut bonds = p.bonds.clone();
    for &(u, s, name, d) in changes {
        match bonds.iter_mut().find(|b| (b.u, b.s, b.name) == (u, s, name)) {
            Some(b) => b.count = (b.count as i64 + d) as u32,
            None => bonds.push(BondGroup {
                u,
                s,
                name,
                count: d as u32,
            }),
        }
    }
    BondPolymer::canonical(p.members.clone(), bonds)
}

/// Every distinct one-move successor.
pub fn bond_neighbors(tbn: &Tbn, bc: &BondConfiguration, mode: BondMode) -> Vec<(BondMove, BondConfiguration)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |m: BondMove, next: BondConfiguration, out: &mut Vec<(BondMove, BondConfiguration)>| {
        if next != *bc && seen.insert(next.clone()) {
            out.push((m, next));
        }
    };
    let ps = &bc.polymers;
    for k in 0..ps.len() {
        if k > 0 && ps[k] == ps[k - 1] {
            continue;
        }
        let p = &ps[k];
        let free = free_sites(tbn, p);
        let names = tbn.site_names().len();
        let size = p.members.len();
        if !mode.no_break {
            for name in 0..names {
                for u in (0..size).filter(|&u| free[u][name].0 > 0) {
                    for s in (0..size).filter(|&s| free[s][name].1 > 0) {
                        let next = with_polymer(bc, k, adjust(p, &[(u, s, name, 1)]));
                        push(BondMove::Make { polymer: k, u, s, name }, next, &mut out);
                    }
                }
            }
            for b in &p.bonds {
                let next = with_polymer(bc, k, adjust(p, &[(b.u, b.s, b.name, -1)]));
                push(
                    BondMove::Break {
                        polymer: k,
                        u: b.u,
                        s: b.s,
                        name: b.name,
                    },
                    next,
                    &mut out,
                );
            }
        }
        for b in &p.bonds {
            for u2 in (0..size).filter(|&x| x != b.u && free[x][b.name].0 > 0) {
                let next = with_polymer(bc, k, adjust(p, &[(b.u, b.s, b.name, -1), (u2, b.s, b.name, 1)]));
                let m = BondMove::Swap3 {
                    polymer: k,
                    name: b.name,
                    from: (b.u, b.s),
                    to: (u2, b.s),
                };
                push(m, next, &mut out);
            }
            for s2 in (0..size).filter(|&x| x != b.s && free[x][b.name].1 > 0) {
                let next = with_polymer(bc, k, adjust(p, &[(b.u, b.s, b.name, -1), (b.u, s2, b.name, 1)]));
                let m = BondMove::Swap3 {
                    polymer: k,
                    name: b.name,
                    from: (b.u, b.s),
                    to: (b.u, s2),
                };
                push(m, next, &mut out);
            }
        }
        if mode.swap4 {
            for (x, y) in p.bonds.iter().tuple_combinations() {
                if x.name != y.name || x.u == y.u || x.s == y.s {
                    continue;
                }
                let next = with_polymer(
                    bc,
                    k,
                    adjust(
                        p,
                        &[
                            (x.u, x.s, x.name, -1),
                            (y.u, y.s, y.name, -1),
                            (x.u, y.s, x.name, 1),
                            (y.u, x.s, x.name, 1),
                        ],
                    ),
                );
                let m = BondMove::Swap4 {
                    polymer: k,
                    name: x.name,
                    first: (x.u, x.s),
                    second: (y.u, y.s),
                };
                push(m, next, &mut out);
            }
        }
        // splits along bond-free cuts; the part holding member 0 is listed
        if size > 1 {
            for mask in 1u64..(1u64 << size) - 1 {
                if mask & 1 == 0 {
                    continue;
                }
                let inside = |m: usize| mask >> m & 1 == 1;
                if p.bonds.iter().any(|b| inside(b.u) != inside(b.s)) {
                    continue;
                }
                let (a, b) = split_polymer(p, inside);
                let mut polymers = bc.polymers.clone();
                polymers[k] = a;
                polymers.push(b);
                polymers.sort();
                let part = (0..size).filter(|&m| inside(m)).collect();
                push(
                    BondMove::Split { polymer: k, part },
                    BondConfiguration { polymers },
                    &mut out,
                );
            }
        }
    }
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            if j > i + 1 && ps[j] == ps[j - 1] {
                continue;
            }
            let (a, b) = (&ps[i], &ps[j]);
            let shift = a.members.len();
            let members = a.members.iter().chain(&b.members).copied().collect();
            let bonds = a
                .bonds
                .iter()
                .copied()
                .chain(b.bonds.iter().map(|g| BondGroup {
                    u: g.u + shift,
                    s: g.s + shift,
                    ..*g
                }))
                .collect();
            let mut polymers: Vec<BondPolymer> = ps
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, p)| p.clone())
                .collect();
            polymers.push(BondPolymer::canonical(members, bonds));
            polymers.sort();
            push(
                BondMove::Merge { first: i, second: j },
                BondConfiguration { polymers },
                &mut out,
            );
        }
    }
    out
}

fn split_polymer(p: &BondPolymer, inside: impl Fn(usize) -> bool) -> (BondPolymer, BondPolymer) {
    let mut idx = vec![0; p.members.len()];
    let (mut ma, mut mb) = (Vec::new(), Vec::new());
    for (m, &t) in p.members.iter().enumerate() {
        if inside(m) {
            idx[m] = ma.len();
            ma.push(t);
        } else {
            idx[m] = mb.len();
            mb.push(t);
        }
    }
    let (mut ba, mut bb) = (Vec::new(), Vec::new());
    for b in &p.bonds {
        let g = BondGroup {
            u: idx[b.u],
            s: idx[b.s],
            ..*b
        };
        if inside(b.u) {
            ba.push(g);
        } else {
            bb.push(g);
        }
    }
    (BondPolymer::canonical(ma, ba), BondPolymer::canonical(mb, bb))
}

struct BondSpace<'a> {
    tbn: &'a Tbn,
    w: BondStrength,
    mode: BondMode,
}

impl StateSpace for BondSpace<'_> {
    type State = BondConfiguration;

    fn energy_scaled(&self, s: &BondConfiguration) -> i64 {
        bond_energy_scaled(s, self.w)
    }

    fn successors(&self, s: &BondConfiguration) -> Vec<BondConfiguration> {
        bond_neighbors(self.tbn, s, self.mode)
            .into_iter()
            .map(|(_, n)| n)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BondBarrierResult {
    pub outcome: BarrierOutcome,
    pub witness: Option<Vec<BondConfiguration>>,
    pub explored: u64,
    pub mode: BondMode,
}

impl BondBarrierResult {
    pub fn barrier(&self) -> Option<Ratio<i64>> {
        match self.outcome {
            BarrierOutcome::Exact(b) => Some(b),
            _ => None,
        }
    }
}

fn check_scale(tbn: &Tbn, force: bool) -> Result<()> {
    if tbn.site_count() > SITE_CAP && !force {
        return Err(TbnError::ScaleCap(format!(
            "bond-aware search is limited to {SITE_CAP} sites (this TBN has {}); force to override",
            tbn.site_count()
        )));
    }
    Ok(())
}

/// `b~(from, to)` (or its no-break variant) by bottleneck search over
/// canonical bond configurations.
pub fn bond_barrier(
    tbn: &Tbn,
    from: &BondConfiguration,
    to: &BondConfiguration,
    w: BondStrength,
    mode: BondMode,
    budget: &SearchBudget,
    force: bool,
) -> Result<BondBarrierResult> {
    check_scale(tbn, force)?;
    let space = BondSpace { tbn, w, mode };
    let run = bottleneck_search(&space, from.clone(), |c| c == to, budget, false);
    let (outcome, witness) = match run.outcome {
        Outcome::Found { bottleneck, path } => (BarrierOutcome::Exact(unscale(bottleneck, w)), Some(path)),
        Outcome::Unreachable => (BarrierOutcome::Unreachable, None),
        Outcome::Exhausted { lower_bound } => (
            BarrierOutcome::BudgetExhausted {
                lower_bound: unscale(lower_bound, w),
            },
            None,
        ),
    };
    Ok(BondBarrierResult {
        outcome,
        witness,
        explored: run.explored,
        mode,
    })
}

/// Bond-aware barrier from `from` to every reachable bond configuration.
pub fn bond_bottleneck_map(
    tbn: &Tbn,
    from: &BondConfiguration,
    w: BondStrength,
    mode: BondMode,
    force: bool,
) -> Result<HashMap<BondConfiguration, Ratio<i64>>> {
    check_scale(tbn, force)?;
    let space = BondSpace { tbn, w, mode };
    Ok(
        bottleneck_search(&space, from.clone(), |_| false, &SearchBudget::unlimited(), true)
            .finalized
            .into_iter()
            .map(|(c, b)| (c, unscale(b, w)))
            .collect(),
    )
}
