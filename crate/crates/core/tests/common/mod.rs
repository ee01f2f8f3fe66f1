//! Brute-force reference: labeled set partitions of the monomer instances and
//! all-pairs minimax closure. Shares no enumeration or move code with the
//! library; only the count-vector representation is reused for comparison.

#![allow(dead_code)]

use std::collections::HashMap;

use num_rational::Ratio;
use tbn_core::{BondStrength, Configuration, Polymer, Tbn};

pub struct Oracle {
    pub configurations: Vec<Configuration>,
    pub energy: Vec<Ratio<i64>>,
    pub saturated: Vec<bool>,
    index: HashMap<Configuration, usize>,
    all: Vec<Vec<Option<Ratio<i64>>>>,
    sat: Vec<Vec<Option<Ratio<i64>>>>,
}

/// Site counts of one monomer type: name -> (unstarred, starred).
fn site_counts(tbn: &Tbn, ty: usize) -> HashMap<String, (i64, i64)> {
    let mut out: HashMap<String, (i64, i64)> = HashMap::new();
    for s in tbn.types()[ty].sites() {
        let e = out.entry(s.name.clone()).or_default();
        if s.starred {
            e.1 += 1;
        } else {
            e.0 += 1;
        }
    }
    out
}

fn block_totals(tbn: &Tbn, labels: &[usize], block: &[usize]) -> HashMap<String, (i64, i64)> {
    let mut tot: HashMap<String, (i64, i64)> = HashMap::new();
    for &k in block {
        for (name, (u, s)) in site_counts(tbn, labels[k]) {
            let e = tot.entry(name).or_default();
            e.0 += u;
            e.1 += s;
        }
    }
    tot
}

/// All set partitions of `0..n` as block lists (restricted growth strings).
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn go(k: usize, n: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == n {
            let blocks = rgs.iter().max().map_or(0, |m| m + 1);
            let mut bs = vec![Vec::new(); blocks];
            for (i, &b) in rgs.iter().enumerate() {
                bs[b].push(i);
            }
            out.push(bs);
            return;
        }
        for b in 0..=max + 1 {
            if k == 0 && b > 0 {
                break;
            }
            rgs[k] = b;
            go(k + 1, n, max.max(b), rgs, out);
        }
    }
    if n == 0 {
        return out;
    }
    go(0, n, 0, &mut rgs, &mut out);
    out
}

fn to_configuration(tbn: &Tbn, labels: &[usize], blocks: &[Vec<usize>]) -> Configuration {
    Configuration::from_polymers(
        blocks
            .iter()
            .map(|b| {
                let mut counts = vec![0u32; tbn.type_count()];
                for &k in b {
                    counts[labels[k]] += 1;
                }
                Polymer::from_counts(counts).unwrap()
            })
            .collect(),
    )
}

impl Oracle {
    pub fn new(tbn: &Tbn, w: BondStrength) -> Self {
        let mut labels = Vec::new();
        for (t, &c) in tbn.counts().iter().enumerate() {
            for _ in 0..c {
                labels.push(t);
            }
        }
        let n = labels.len();
        let partitions = set_partitions(n);
        let mut index = HashMap::new();
        let mut configurations = Vec::new();
        let mut energy = Vec::new();
        let mut saturated = Vec::new();
        let mut of_partition = Vec::new();
        for blocks in &partitions {
            let c = to_configuration(tbn, &labels, blocks);
            let id = *index.entry(c.clone()).or_insert_with(|| {
                let totals: Vec<HashMap<String, (i64, i64)>> =
                    blocks.iter().map(|b| block_totals(tbn, &labels, b)).collect();
                let h: i64 = totals.iter().flat_map(|t| t.values().map(|&(u, s)| u.min(s))).sum();
                energy.push(-w.value() * h - Ratio::from_integer(blocks.len() as i64));
                let unsat = tbn.site_names().iter().any(|name| {
                    let ex = |t: &HashMap<String, (i64, i64)>| t.get(name).map_or(0, |&(u, s)| u - s);
                    totals.iter().any(|t| ex(t) > 0) && totals.iter().any(|t| ex(t) < 0)
                });
                saturated.push(!unsat);
                configurations.push(c);
                configurations.len() - 1
            });
            of_partition.push(id);
        }
        let m = configurations.len();
        let mut adj = vec![vec![false; m]; m];
        // two labeled partitions are one merge apart iff one is the other with two blocks joined
        for (pi, blocks) in partitions.iter().enumerate() {
            for a in 0..blocks.len() {
                for b in a + 1..blocks.len() {
                    let mut merged: Vec<Vec<usize>> = blocks
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != a && k != b)
                        .map(|(_, x)| x.clone())
                        .collect();
                    let mut joined = blocks[a].clone();
                    joined.extend(&blocks[b]);
                    merged.push(joined);
                    let c = to_configuration(tbn, &labels, &merged);
                    let (x, y) = (of_partition[pi], index[&c]);
                    adj[x][y] = true;
                    adj[y][x] = true;
                }
            }
        }
        let closure = |allowed: &dyn Fn(usize) -> bool| {
            let mut d: Vec<Vec<Option<Ratio<i64>>>> = vec![vec![None; m]; m];
            for i in 0..m {
                if !allowed(i) {
                    continue;
                }
                d[i][i] = Some(energy[i]);
                for j in 0..m {
                    if adj[i][j] && allowed(j) {
                        d[i][j] = Some(energy[i].max(energy[j]));
                    }
                }
            }
            for k in 0..m {
                for i in 0..m {
                    let Some(ik) = d[i][k] else { continue };
                    for j in 0..m {
                        if let Some(kj) = d[k][j] {
                            let via = ik.max(kj);
                            if d[i][j].is_none_or(|cur| via < cur) {
                                d[i][j] = Some(via);
                            }
                        }
                    }
                }
            }
            d
        };
        let all = closure(&|_| true);
        let sat = closure(&|i| saturated[i]);
        Self {
            configurations,
            energy,
            saturated,
            index,
            all,
            sat,
        }
    }

    fn id(&self, c: &Configuration) -> usize {
        self.index[c]
    }

    /// Least path height, `None` if unreachable.
    pub fn barrier(&self, from: &Configuration, to: &Configuration, saturated_only: bool) -> Option<Ratio<i64>> {
        let (i, j) = (self.id(from), self.id(to));
        let d = if saturated_only { &self.sat } else { &self.all };
        d[i][j].map(|top| top - self.energy[i])
    }

    pub fn is_saturated(&self, c: &Configuration) -> bool {
        self.saturated[self.id(c)]
    }

    pub fn energy_of(&self, c: &Configuration) -> Ratio<i64> {
        self.energy[self.id(c)]
    }

    /// Least energy and every configuration attaining it, by exhaustive scan.
    pub fn minimum_energy(&self) -> (Ratio<i64>, Vec<Configuration>) {
        let best = *self.energy.iter().min().unwrap();
        let mut v: Vec<Configuration> = self
            .configurations
            .iter()
            .zip(&self.energy)
            .filter(|(_, &e)| e == best)
            .map(|(c, _)| c.clone())
            .collect();
        v.sort();
        (best, v)
    }
}

pub fn bell(n: usize) -> usize {
    set_partitions(n).len()
}
