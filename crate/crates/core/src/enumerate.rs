//! Sub-multiset and configuration enumeration.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;

use crate::model::{Configuration, Monomer, Polymer, SiteType, Tbn};

/// Every proper nonempty bipartition `{part, rest}` of `p`, each unordered
/// pair once: `part` is the lexicographically smaller side (ties included once).
pub fn bipartitions(p: &Polymer) -> Vec<(Polymer, Polymer)> {
    let full = p.counts();
    let mut out = Vec::new();
    let mut cur = vec![0u32; full.len()];
    loop {
        // advance mixed-radix counter
        let mut k = 0;
        while k < full.len() {
            if cur[k] < full[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
            k += 1;
        }
        if k == full.len() {
            break;
        }
        if cur.as_slice() == full {
            continue;
        }
        let rest: Vec<u32> = full.iter().zip(&cur).map(|(a, b)| a - b).collect();
        if cur <= rest {
            out.push((
                Polymer::from_counts_unchecked(cur.clone()),
                Polymer::from_counts_unchecked(rest),
            ));
        }
    }
    out.sort();
    out
}

/// Monomer instances in canonical order: instance `k` has type `types[k]`.
pub fn instance_types(tbn: &Tbn) -> Vec<usize> {
    let mut types = Vec::with_capacity(tbn.monomer_count());
    for (t, &c) in tbn.counts().iter().enumerate() {
        for _ in 0..c {
            types.push(t);
        }
    }
    types
}

/// Control returned by a partition visitor's pruning hook.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Visit {
    Continue,
    Prune,
    Stop,
}

/// Depth-first enumeration of all configurations of `tbn`.
///
/// Monomers are placed one at a time into existing or new polymers.
/// Consecutive copies of the same type go to nondecreasing polymer indices,
/// which keeps at least one representative of every multiset partition.
/// `prune(blocks, placed)` is consulted before each placement; `visit` sees
/// each complete configuration (possibly more than once; see
/// [`all_configurations`] for a deduplicated list).
pub fn for_each_partition(
    tbn: &Tbn,
    mut prune: impl FnMut(&[Vec<u32>], usize) -> Visit,
    mut visit: impl FnMut(Configuration) -> Visit,
) -> bool {
    let types = instance_types(tbn);
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    let mut assigned: Vec<usize> = Vec::with_capacity(types.len());
    let t = tbn.type_count();
    rec(&types, t, &mut blocks, &mut assigned, &mut prune, &mut visit)
}

fn rec(
    types: &[usize],
    type_count: usize,
    blocks: &mut Vec<Vec<u32>>,
    assigned: &mut Vec<usize>,
    prune: &mut impl FnMut(&[Vec<u32>], usize) -> Visit,
    visit: &mut impl FnMut(Configuration) -> Visit,
) -> bool {
    let k = assigned.len();
    match prune(blocks, k) {
        Visit::Stop => return false,
        Visit::Prune => return true,
        Visit::Continue => {}
    }
    if k == types.len() {
        let polymers = blocks
            .iter()
            .map(|b| Polymer::from_counts_unchecked(b.clone()))
            .collect();
        return visit(Configuration::from_polymers(polymers)) != Visit::Stop;
    }
    let ty = types[k];
    let start = if k > 0 && types[k - 1] == ty {
        assigned[k - 1]
    } else {
        0
    };
    for b in start..=blocks.len() {
        if b == blocks.len() {
            blocks.push(vec![0u32; type_count]);
        }
        blocks[b][ty] += 1;
        assigned.push(b);
        let keep_going = rec(types, type_count, blocks, assigned, prune, visit);
        assigned.pop();
        blocks[b][ty] -= 1;
        if blocks[b].iter().all(|&c| c == 0) {
            blocks.pop();
        }
        if !keep_going {
            return false;
        }
    }
    true
}

/// Every configuration of `tbn`, deduplicated and sorted.
pub fn all_configurations(tbn: &Tbn) -> Vec<Configuration> {
    let mut seen = HashSet::new();
    for_each_partition(
        tbn,
        |_, _| Visit::Continue,
        |c| {
            seen.insert(c);
            Visit::Continue
        },
    );
    let mut out: Vec<Configuration> = seen.into_iter().collect();
    out.sort();
    out
}

/// Every TBN over the first `names` of `a, b, c, ...` with at most
/// `max_monomers` monomers and `max_sites` sites in total that has at least
/// one complementary pair. One representative is kept per class under
/// renaming names and swapping `x` with `x*`. Labels are `m0`, `m1`, ...
pub fn small_tbns(max_monomers: usize, max_sites: usize, names: usize) -> Vec<Tbn> {
    // a site is (name, starred); a monomer a sorted site list
    let sites: Vec<(usize, bool)> = (0..names).flat_map(|k| [(k, false), (k, true)]).collect();
    let mut types: Vec<Vec<(usize, bool)>> = Vec::new();
    for size in 1..=max_sites {
        types.extend(sites.iter().copied().combinations_with_replacement(size));
    }
    let transforms: Vec<(Vec<usize>, u32)> = (0..names)
        .permutations(names)
        .flat_map(|perm| (0..1u32 << names).map(move |flip| (perm.clone(), flip)))
        .collect();
    // image of every type under every transform, as a type index
    let index: HashMap<&[(usize, bool)], usize> = types.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let images: Vec<Vec<usize>> = transforms
        .iter()
        .map(|(perm, flip)| {
            types
                .iter()
                .map(|m| {
                    let mut m: Vec<(usize, bool)> =
                        m.iter().map(|&(k, st)| (perm[k], st ^ (flip >> k & 1 == 1))).collect();
                    m.sort_unstable();
                    index[m.as_slice()]
                })
                .collect()
        })
        .collect();
    let canonical = |pick: &[usize]| -> Vec<usize> {
        images
            .iter()
            .map(|img| {
                let mut v: Vec<usize> = pick.iter().map(|&t| img[t]).collect();
                v.sort_unstable();
                v
            })
            .min()
            .expect("at least one transform")
    };
    // nondecreasing type index lists within the monomer and site budgets
    fn extend(
        types: &[Vec<(usize, bool)>],
        from: usize,
        monomers: usize,
        sites: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if monomers == 0 {
            return;
        }
        for t in from..types.len() {
            if types[t].len() <= sites {
                cur.push(t);
                extend(types, t, monomers - 1, sites - types[t].len(), cur, out);
                cur.pop();
            }
        }
    }
    let mut picks = Vec::new();
    extend(&types, 0, max_monomers, max_sites, &mut Vec::new(), &mut picks);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for pick in picks {
        let ms: Vec<Vec<(usize, bool)>> = pick.iter().map(|&t| types[t].clone()).collect();
        let has_pair = (0..names).any(|k| {
            let present = |st: bool| ms.iter().flatten().any(|&s| s == (k, st));
            present(false) && present(true)
        });
        if !has_pair || !seen.insert(canonical(&pick)) {
            continue;
        }
        let entries = ms.iter().map(|m| {
            Monomer::new(
                m.iter()
                    .map(|&(k, st)| SiteType::new(((b'a' + k as u8) as char).to_string(), st)),
            )
        });
        let mut merged: Vec<(Monomer, u32)> = Vec::new();
        for m in entries {
            match merged.iter_mut().find(|(x, _)| *x == m) {
                Some(e) => e.1 += 1,
                None => merged.push((m, 1)),
            }
        }
        let labeled = merged
            .into_iter()
            .enumerate()
            .map(|(i, (m, c))| (m.with_label(format!("m{i}")), c));
        out.push(Tbn::new(labeled).expect("nonempty"));
    }
    out
}
