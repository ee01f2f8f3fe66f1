//! Offsets of top/bottom pairings in an `(n, n^2)` translator cycle.

use num_rational::Ratio;

use super::Translator;
use crate::error::{Result, TbnError};
use crate::model::{Configuration, Polymer};

/// `2n^2 / (2n + 1)`; polymers smaller than this are "n'-sized".
pub fn n_prime(n: usize) -> Ratio<i64> {
    let n = n as i64;
    Ratio::new(2 * n * n, 2 * n + 1)
}

/// `f(b_i, t_j) = j_S - i_S` with `S = [i-n, i+n-1]` mod `n^2`, or `None` if
/// the two monomers share no site.
pub fn pair_offset(n: usize, i: usize, j: usize) -> Option<i64> {
    let c = n * n;
    let pos = (j + c + n - i % c) % c;
    (pos < 2 * n).then_some(pos as i64 - n as i64)
}

/// Per-polymer data used by the translator barrier argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffsetDiagnostics {
    /// Offset of the polymer, from one perfect matching.
    pub offset: i64,
    /// `(i, j)` pairs `b_i`-`t_j` of that matching.
    pub matching: Vec<(usize, usize)>,
    /// A top index compatible with no bottom of the polymer.
    pub cutoff: Option<usize>,
    /// No compatible pair is more than `n` apart in the order starting at the cutoff.
    pub crossing_free: bool,
    /// A matching without crossing pairs in the cutoff order.
    pub sorted_matching: Option<Vec<(usize, usize)>>,
    pub max_sorted_offset: Option<i64>,
    pub size: usize,
    pub n_prime_sized: bool,
}

fn translator_n(tr: &Translator) -> Result<usize> {
    let n = tr.spec.z;
    if tr.spec.c != n * n {
        return Err(TbnError::Domain(format!(
            "offsets are defined for (n, n^2) translators, got ({}, {})",
            tr.spec.z, tr.spec.c
        )));
    }
    Ok(n)
}

/// Bottom and top indices of `p`, with repetition.
fn sides(tr: &Translator, p: &Polymer) -> (Vec<usize>, Vec<usize>) {
    let (mut bottoms, mut tops) = (Vec::new(), Vec::new());
    for t in p.members() {
        if tr.is_top(t) {
            tops.push(tr.index_of(t));
        } else {
            bottoms.push(tr.index_of(t));
        }
    }
    (bottoms, tops)
}

/// Equal numbers of top and bottom monomers.
pub fn is_normal_form(tr: &Translator, p: &Polymer) -> bool {
    let (b, t) = sides(tr, p);
    b.len() == t.len()
}

fn augment(
    n: usize,
    u: usize,
    bottoms: &[usize],
    tops: &[usize],
    seen: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for v in 0..tops.len() {
        if seen[v] || pair_offset(n, bottoms[u], tops[v]).is_none() {
            continue;
        }
        seen[v] = true;
        if owner[v].is_none_or(|w| augment(n, w, bottoms, tops, seen, owner)) {
            owner[v] = Some(u);
            return true;
        }
    }
    false
}

/// A perfect matching of the compatibility graph by augmenting paths.
fn perfect_matching(n: usize, bottoms: &[usize], tops: &[usize]) -> Option<Vec<(usize, usize)>> {
    if bottoms.len() != tops.len() {
        return None;
    }
    let mut owner = vec![None; tops.len()];
    for u in 0..bottoms.len() {
        let mut seen = vec![false; tops.len()];
        if !augment(n, u, bottoms, tops, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut m: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .map(|(v, u)| (bottoms[u.expect("perfect")], tops[v]))
        .collect();
    m.sort_unstable();
    Some(m)
}

/// Every perfect matching of the compatibility graph of a normal-form
/// polymer, as sorted `(i, j)` lists (copies make some lists repeat).
pub fn perfect_matchings(tr: &Translator, p: &Polymer) -> Result<Vec<Vec<(usize, usize)>>> {
    let n = translator_n(tr)?;
    let (bottoms, tops) = sides(tr, p);
    if bottoms.len() != tops.len() {
        return Err(TbnError::Domain("polymer is not normal form".into()));
    }
    let mut out = Vec::new();
    let mut used = vec![false; tops.len()];
    let mut cur = Vec::new();
    fn go(
        n: usize,
        k: usize,
        bottoms: &[usize],
        tops: &[usize],
        used: &mut [bool],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if k == bottoms.len() {
            let mut m = cur.clone();
            m.sort_unstable();
            out.push(m);
            return;
        }
        for v in 0..tops.len() {
            if !used[v] && pair_offset(n, bottoms[k], tops[v]).is_some() {
                used[v] = true;
                cur.push((bottoms[k], tops[v]));
                go(n, k + 1, bottoms, tops, used, cur, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    go(n, 0, &bottoms, &tops, &mut used, &mut cur, &mut out);
    Ok(out)
}

fn matching_offset(n: usize, m: &[(usize, usize)]) -> i64 {
    m.iter()
        .map(|&(i, j)| pair_offset(n, i, j).expect("matched pairs are compatible"))
        .sum()
}

/// Rearranges crossing pairs until none remain; `None` if some crossing pair
/// cannot be uncrossed with compatible pairs.
fn sort_matching(n: usize, cutoff: usize, m: &[(usize, usize)]) -> Option<Vec<(usize, usize)>> {
    let c = n * n;
    let pos = |x: usize| (x + c - cutoff) % c;
    let mut m = m.to_vec();
    loop {
        let mut swapped = false;
        let mut stuck = false;
        for a in 0..m.len() {
            for b in 0..m.len() {
                let ((i1, j2), (i2, j1)) = (m[a], m[b]);
                if pos(i1) < pos(i2) && pos(j1) < pos(j2) {
                    if pair_offset(n, i1, j1).is_some() && pair_offset(n, i2, j2).is_some() {
                        m[a] = (i1, j1);
                        m[b] = (i2, j2);
                        swapped = true;
                    } else {
                        stuck = true;
                    }
                }
            }
        }
        if !swapped {
            if stuck {
                return None;
            }
            m.sort_by_key(|&(i, j)| (pos(i), pos(j)));
            return Some(m);
        }
    }
}

/// Offset, cutoff and sorted matching of a normal-form polymer.
///
/// The cutoff and sorted matching exist when the polymer is small enough
/// that some top index is compatible with none of its bottoms.
pub fn offset_diagnostics(tr: &Translator, p: &Polymer) -> Result<OffsetDiagnostics> {
    let n = translator_n(tr)?;
    let c = n * n;
    let (bottoms, tops) = sides(tr, p);
    if bottoms.len() != tops.len() {
        return Err(TbnError::Domain("polymer is not normal form".into()));
    }
    let matching = perfect_matching(n, &bottoms, &tops)
        .ok_or_else(|| TbnError::Domain("no perfect matching between tops and bottoms".into()))?;
    let cutoff = (0..c).find(|&j| bottoms.iter().all(|&i| pair_offset(n, i, j).is_none()));
    let crossing_free = cutoff.is_some_and(|cp| {
        let pos = |x: usize| ((x + c - cp) % c) as i64;
        bottoms.iter().all(|&i| {
            tops.iter()
                .filter(|&&j| pair_offset(n, i, j).is_some())
                .all(|&j| (pos(i) - pos(j)).abs() <= n as i64)
        })
    });
    let sorted_matching = cutoff.and_then(|cp| sort_matching(n, cp, &matching));
    let max_sorted_offset = sorted_matching
        .as_ref()
        .and_then(|m| m.iter().map(|&(i, j)| pair_offset(n, i, j).expect("compatible")).max());
    let size = p.size();
    Ok(OffsetDiagnostics {
        offset: matching_offset(n, &matching),
        matching,
        cutoff,
        crossing_free,
        sorted_matching,
        max_sorted_offset,
        size,
        n_prime_sized: Ratio::from_integer(size as i64) < n_prime(n),
    })
}

/// Sum of the polymer offsets; every polymer must be normal form.
pub fn configuration_offset(tr: &Translator, c: &Configuration) -> Result<i64> {
    c.polymers()
        .iter()
        .map(|p| offset_diagnostics(tr, p).map(|d| d.offset))
        .sum()
}

/// Number `k` of exposed sites of a normal-form polymer with no exposed
/// starred site, and whether its size is `2k`.
pub fn exposed_size_check(tr: &Translator, p: &Polymer) -> Result<(usize, bool)> {
    if !is_normal_form(tr, p) {
        return Err(TbnError::Domain("polymer is not normal form".into()));
    }
    let exposed = tr.tbn.exposed_sites(p);
    if exposed.iter().any(|s| s.starred) {
        return Err(TbnError::Domain(
            "polymer exposes a starred site, so it is in no saturated configuration".into(),
        ));
    }
    Ok((exposed.len(), p.size() == 2 * exposed.len()))
}
