//! Instance-level partitions, used where the refinement relation between two
//! configurations has to be tracked explicitly (identical polymers are
//! interchangeable in canonical form, so "which copy merged" is lost there).

use num_rational::Ratio;

use super::{Move, Path};
use crate::enumerate::instance_types;
use crate::error::{Result, TbnError};
use crate::model::{BondStrength, Configuration, Polymer, Tbn};

/// A partition of monomer instances `0..N`; blocks sorted, each block sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Labeled {
    blocks: Vec<Vec<usize>>,
}

impl Labeled {
    fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort();
        Self { blocks }
    }

    fn block_of(&self, instance: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&instance).is_ok())
            .expect("instance belongs to some block")
    }
}

struct Ctx<'a> {
    tbn: &'a Tbn,
    types: Vec<usize>,
}

impl<'a> Ctx<'a> {
    fn new(tbn: &'a Tbn) -> Self {
        Self {
            tbn,
            types: instance_types(tbn),
        }
    }

    fn polymer(&self, block: &[usize]) -> Polymer {
        let mut counts = vec![0u32; self.tbn.type_count()];
        for &i in block {
            counts[self.types[i]] += 1;
        }
        Polymer::from_counts_unchecked(counts)
    }

    fn canonical(&self, l: &Labeled) -> Configuration {
        Configuration::from_polymers(l.blocks.iter().map(|b| self.polymer(b)).collect())
    }

    /// Realizes each coarse polymer as a block, in order, taking instances of
    /// each type from a per-type pool. `groups[k]` lists the polymers inside
    /// coarse block `k` (a single-element group for a plain lift).
    fn realize(&self, groups: &[Vec<Polymer>]) -> (Labeled, Labeled) {
        let mut next_of_type: Vec<usize> = Vec::with_capacity(self.tbn.type_count());
        let mut start = 0;
        for &c in self.tbn.counts() {
            next_of_type.push(start);
            start += c as usize;
        }
        let mut coarse = Vec::new();
        let mut fine = Vec::new();
        for group in groups {
            let mut whole = Vec::new();
            for p in group {
                let mut block = Vec::new();
                for (t, &n) in p.counts().iter().enumerate() {
                    for _ in 0..n {
                        block.push(next_of_type[t]);
                        next_of_type[t] += 1;
                    }
                }
                whole.extend_from_slice(&block);
                fine.push(block);
            }
            coarse.push(whole);
        }
        (Labeled::new(fine), Labeled::new(coarse))
    }

    fn lift(&self, c: &Configuration) -> Labeled {
        let groups: Vec<Vec<Polymer>> = c.polymers().iter().map(|p| vec![p.clone()]).collect();
        self.realize(&groups).0
    }

    fn find_block(&self, l: &Labeled, p: &Polymer, skip: Option<usize>) -> Option<usize> {
        (0..l.blocks.len()).find(|&k| Some(k) != skip && self.polymer(&l.blocks[k]) == *p)
    }

    /// Applies a canonical move (relative to `c`, the canonical image of `l`).
    fn apply(&self, l: &Labeled, c: &Configuration, m: &Move) -> Labeled {
        let mut blocks = l.blocks.clone();
        match m {
            Move::Merge { first, second } => {
                let a = self.find_block(l, &c.polymers()[*first], None).expect("merge operand");
                let b = self
                    .find_block(l, &c.polymers()[*second], Some(a))
                    .expect("second merge operand");
                let moved = std::mem::take(&mut blocks[b]);
                blocks[a].extend(moved);
            }
            Move::Split { polymer, part } => {
                let k = self
                    .find_block(l, &c.polymers()[*polymer], None)
                    .expect("split operand");
                let mut need = part.counts().to_vec();
                let (mut taken, mut kept) = (Vec::new(), Vec::new());
                for &i in &blocks[k] {
                    let t = self.types[i];
                    if need[t] > 0 {
                        need[t] -= 1;
                        taken.push(i);
                    } else {
                        kept.push(i);
                    }
                }
                blocks[k] = kept;
                blocks.push(taken);
            }
        }
        Labeled::new(blocks)
    }

    /// Greedily merges compatible polymers of `fine` that lie in the same block
    /// of `coarse`, always the lexicographically smallest compatible pair.
    fn bind_first(&self, fine: &Labeled, coarse: &Labeled) -> Labeled {
        let mut groups: Vec<Vec<Vec<usize>>> = vec![Vec::new(); coarse.blocks.len()];
        for b in &fine.blocks {
            groups[coarse.block_of(b[0])].push(b.clone());
        }
        let mut out = Vec::new();
        for mut group in groups {
            loop {
                group.sort_by_cached_key(|b| (self.polymer(b), b[0]));
                let polys: Vec<Polymer> = group.iter().map(|b| self.polymer(b)).collect();
                let pair = (0..group.len()).find_map(|i| {
                    (i + 1..group.len())
                        .find(|&j| self.tbn.compatible(&polys[i], &polys[j]))
                        .map(|j| (i, j))
                });
                match pair {
                    Some((i, j)) => {
                        let moved = group.remove(j);
                        group[i].extend(moved);
                        group[i].sort_unstable();
                    }
                    None => break,
                }
            }
            out.extend(group);
        }
        Labeled::new(out)
    }

    /// Splits each block of `coarse` into its `mid` sub-blocks one at a time.
    /// Returns the intermediate partitions after each split.
    fn split_down(&self, coarse: &Labeled, mid: &Labeled) -> Vec<Labeled> {
        let mut cur = coarse.blocks.clone();
        let mut out = Vec::new();
        for k in 0..coarse.blocks.len() {
            let subs: Vec<&Vec<usize>> = mid.blocks.iter().filter(|b| coarse.block_of(b[0]) == k).collect();
            let pos = cur.iter().position(|b| *b == coarse.blocks[k]).expect("coarse block");
            for sub in subs.iter().take(subs.len().saturating_sub(1)) {
                cur[pos].retain(|i| sub.binary_search(i).is_err());
                cur.push((*sub).clone());
                out.push(Labeled::new(cur.clone()));
            }
            // keep `pos` meaningful: the remaining block is the last sub-block
            if let Some(last) = subs.last() {
                cur[pos] = (*last).clone();
            }
        }
        out
    }
}

/// Assigns each polymer of `fine` to a polymer of `coarse` containing it so
/// that every coarse polymer is exactly the union of its assigned polymers.
fn embed(fine: &Configuration, coarse: &Configuration) -> Option<Vec<Vec<Polymer>>> {
    let mut order: Vec<&Polymer> = fine.polymers().iter().collect();
    order.sort_by_key(|p| std::cmp::Reverse(p.size()));
    let mut remaining: Vec<Option<Polymer>> = coarse.polymers().iter().cloned().map(Some).collect();
    let mut groups: Vec<Vec<Polymer>> = vec![Vec::new(); coarse.polymer_count()];

    fn go(k: usize, order: &[&Polymer], remaining: &mut Vec<Option<Polymer>>, groups: &mut Vec<Vec<Polymer>>) -> bool {
        if k == order.len() {
            return remaining.iter().all(|r| r.is_none());
        }
        let p = order[k];
        let mut tried: Vec<Option<Polymer>> = Vec::new();
        for i in 0..remaining.len() {
            let Some(room) = remaining[i].clone() else { continue };
            if !room.contains(p) || tried.contains(&Some(room.clone())) {
                continue;
            }
            tried.push(Some(room.clone()));
            remaining[i] = room.minus(p);
            groups[i].push(p.clone());
            if go(k + 1, order, remaining, groups) {
                return true;
            }
            groups[i].pop();
            remaining[i] = Some(room);
        }
        false
    }

    go(0, &order, &mut remaining, &mut groups).then_some(groups)
}

/// Finds `mid` with `fine` reaching `mid` by bind merges only and `mid`
/// reaching `coarse` by clean merges only.
///
/// Requires every polymer of `coarse` to be a union of polymers of `fine`.
pub fn bind_first_decompose(tbn: &Tbn, fine: &Configuration, coarse: &Configuration) -> Result<Configuration> {
    tbn.validate(fine)?;
    tbn.validate(coarse)?;
    let groups = embed(fine, coarse).ok_or_else(|| {
        TbnError::Domain("the coarse configuration is not reachable from the fine one by merges".into())
    })?;
    let ctx = Ctx::new(tbn);
    let (lf, lc) = ctx.realize(&groups);
    Ok(ctx.canonical(&ctx.bind_first(&lf, &lc)))
}

/// Turns a path between saturated configurations into a saturated path with
/// the same endpoints whose height exceeds the original by at most
/// `max(0, 2 - w)`.
///
/// Each configuration `a_i` of the input is shadowed by a saturated `a_i'`
/// reachable from it by bind merges; every step is replaced by a short
/// saturated segment (an optional clean merge followed by clean splits).
pub fn saturate_path(tbn: &Tbn, path: &Path, w: BondStrength) -> Result<Path> {
    if w.value() < Ratio::from_integer(1) {
        return Err(TbnError::UnsupportedRegime(format!(
            "path saturation needs w >= 1 (got {w})"
        )));
    }
    if !tbn.is_saturated(path.start()) || !tbn.is_saturated(path.end()) {
        return Err(TbnError::Domain("path endpoints must be saturated".into()));
    }
    let ctx = Ctx::new(tbn);
    let cs = path.configurations();
    let mut cur = ctx.lift(&cs[0]);
    let mut shadow = cur.clone();
    let mut out = vec![cs[0].clone()];
    let push = |out: &mut Vec<Configuration>, c: Configuration| {
        if out.last() != Some(&c) {
            out.push(c);
        }
    };
    for (k, m) in path.moves().iter().enumerate() {
        let next = ctx.apply(&cur, &cs[k], m);
        match m {
            Move::Split { .. } => {
                let mid = ctx.bind_first(&next, &shadow);
                for l in ctx.split_down(&shadow, &mid) {
                    push(&mut out, ctx.canonical(&l));
                }
                shadow = mid;
            }
            Move::Merge { .. } => {
                if shadow == cur {
                    push(&mut out, ctx.canonical(&next));
                    shadow = next.clone();
                } else {
                    let blob = next
                        .blocks
                        .iter()
                        .find(|b| !cur.blocks.contains(b))
                        .expect("merged block")
                        .clone();
                    let mut touched: Vec<usize> = blob.iter().map(|&i| shadow.block_of(i)).collect();
                    touched.sort_unstable();
                    touched.dedup();
                    let mut blocks = shadow.blocks.clone();
                    if touched.len() > 1 {
                        let mut merged = Vec::new();
                        for &t in &touched {
                            merged.extend(std::mem::take(&mut blocks[t]));
                        }
                        blocks.push(merged);
                    }
                    let medium = Labeled::new(blocks);
                    push(&mut out, ctx.canonical(&medium));
                    let mid = ctx.bind_first(&next, &medium);
                    for l in ctx.split_down(&medium, &mid) {
                        push(&mut out, ctx.canonical(&l));
                    }
                    shadow = mid;
                }
            }
        }
        cur = next;
    }
    if ctx.canonical(&shadow) != *path.end() {
        return Err(TbnError::Domain(
            "saturated shadow did not return to the saturated endpoint".into(),
        ));
    }
    Path::new(tbn, out)
}
