//! Sites, monomers, polymers, configurations, and the energy function.
//!
//! A [`Tbn`] interns its monomer types in canonical order (by sorted site
//! encoding), so a [`Polymer`] is just a count vector over those types and a
//! [`Configuration`] is a sorted multiset of polymers. Equal configurations
//! therefore have equal representations, which is what the searches hash on.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, TbnError};

/// A binding site symbol `x` or its complement `x*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SiteType {
    pub name: String,
    pub starred: bool,
}

impl SiteType {
    pub fn new(name: impl Into<String>, starred: bool) -> Self {
        Self {
            name: name.into(),
            starred,
        }
    }

    pub fn unstarred(name: impl Into<String>) -> Self {
        Self::new(name, false)
    }

    pub fn starred(name: impl Into<String>) -> Self {
        Self::new(name, true)
    }

    pub fn complement(&self) -> Self {
        Self::new(self.name.clone(), !self.starred)
    }

    /// Two sites bond iff they share a name and differ in the starred flag.
    pub fn binds(&self, other: &SiteType) -> bool {
        self.name == other.name && self.starred != other.starred
    }

    /// Parses `a` or `a*`. Returns `None` for an empty name or a stray `*`.
    pub fn parse(token: &str) -> Option<Self> {
        let (name, starred) = match token.strip_suffix('*') {
            Some(rest) => (rest, true),
            None => (token, false),
        };
        if name.is_empty() || name.contains('*') || name.contains(char::is_whitespace) {
            return None;
        }
        Some(Self::new(name, starred))
    }
}

impl fmt::Display for SiteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.starred {
            write!(f, "{}*", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

/// A monomer type: a multiset of site types, with an optional display label.
///
/// Identity (equality, ordering, hashing) is by the site multiset alone.
#[derive(Clone, Debug)]
pub struct Monomer {
    sites: Vec<SiteType>,
    label: Option<String>,
}

impl Monomer {
    pub fn new(sites: impl IntoIterator<Item = SiteType>) -> Self {
        let mut sites: Vec<SiteType> = sites.into_iter().collect();
        sites.sort();
        Self { sites, label: None }
    }

    pub fn labeled(label: impl Into<String>, sites: impl IntoIterator<Item = SiteType>) -> Self {
        let mut m = Self::new(sites);
        m.label = Some(label.into());
        m
    }

    /// Builds a monomer from whitespace-separated site tokens, e.g. `"a a* b"`.
    pub fn parse(sites: &str) -> Option<Self> {
        let parsed: Option<Vec<SiteType>> = sites.split_whitespace().map(SiteType::parse).collect();
        parsed.map(Self::new)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn sites(&self) -> &[SiteType] {
        &self.sites
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn size(&self) -> usize {
        self.sites.len()
    }

    /// The label if present, otherwise the braced site list.
    pub fn display_name(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => format!("{{{}}}", self.sites_string()),
        }
    }

    pub fn sites_string(&self) -> String {
        self.sites.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl PartialEq for Monomer {
    fn eq(&self, other: &Self) -> bool {
        self.sites == other.sites
    }
}

impl Eq for Monomer {}

impl Hash for Monomer {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sites.hash(state);
    }
}

impl PartialOrd for Monomer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomer {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sites.cmp(&other.sites)
    }
}

/// Exact nonnegative rational bond strength `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BondStrength(Ratio<i64>);

impl BondStrength {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(TbnError::BondStrength("zero denominator".into()));
        }
        Self::from_ratio(Ratio::new(numer, denom))
    }

    pub fn integer(w: i64) -> Self {
        Self::new(w, 1).expect("nonnegative integer bond strength")
    }

    pub fn from_ratio(w: Ratio<i64>) -> Result<Self> {
        if w.is_negative() {
            return Err(TbnError::BondStrength(format!("{w} is negative")));
        }
        Ok(Self(w))
    }

    /// Parses an exact fraction such as `2` or `3/2`. Decimals are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || TbnError::BondStrength(format!("`{text}` is not an exact fraction like 2 or 3/2"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let digits = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit());
        if !digits(num) || !digits(den) {
            return Err(bad());
        }
        let num: i64 = num.parse().map_err(|_| bad())?;
        let den: i64 = den.parse().map_err(|_| bad())?;
        Self::new(num, den)
    }

    pub fn value(&self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// Always `num/den`, as used in JSON output.
    pub fn fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Display for BondStrength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Bond count `H` and polymer count `S` of a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Energy {
    pub bonds: u64,
    pub polymers: u64,
}

impl Energy {
    /// `-w*H - S`.
    pub fn value(&self, w: BondStrength) -> Ratio<i64> {
        -(w.value() * Ratio::from_integer(self.bonds as i64)) - Ratio::from_integer(self.polymers as i64)
    }

    /// The energy multiplied by the denominator of `w`; exact and integral.
    pub fn scaled(&self, w: BondStrength) -> i64 {
        -(w.numer() * self.bonds as i64 + w.denom() * self.polymers as i64)
    }

    /// Exact comparison under a fixed `w` by cross-multiplication.
    pub fn compare(&self, other: &Energy, w: BondStrength) -> Ordering {
        self.scaled(w).cmp(&other.scaled(w))
    }
}

/// A polymer: counts per monomer type of the owning [`Tbn`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polymer {
    counts: Vec<u32>,
}

impl Polymer {
    pub fn from_counts(counts: Vec<u32>) -> Result<Self> {
        if counts.iter().all(|&c| c == 0) {
            return Err(TbnError::Domain("a polymer must be nonempty".into()));
        }
        Ok(Self { counts })
    }

    pub(crate) fn from_counts_unchecked(counts: Vec<u32>) -> Self {
        debug_assert!(counts.iter().any(|&c| c > 0));
        Self { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, ty: usize) -> u32 {
        self.counts[ty]
    }

    /// Number of monomers.
    pub fn size(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn union(&self, other: &Polymer) -> Polymer {
        let counts = self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect();
        Polymer { counts }
    }

    /// Whether `part` is a sub-multiset of `self`.
    pub fn contains(&self, part: &Polymer) -> bool {
        self.counts.iter().zip(&part.counts).all(|(a, b)| b <= a)
    }

    /// `self - part`, or `None` if `part` is not contained or the result is empty.
    pub fn minus(&self, part: &Polymer) -> Option<Polymer> {
        if !self.contains(part) {
            return None;
        }
        let counts: Vec<u32> = self.counts.iter().zip(&part.counts).map(|(a, b)| a - b).collect();
        if counts.iter().all(|&c| c == 0) {
            None
        } else {
            Some(Polymer { counts })
        }
    }

    /// Monomer type indices, with repetition, in ascending order.
    pub fn members(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        for (t, &c) in self.counts.iter().enumerate() {
            for _ in 0..c {
                out.push(t);
            }
        }
        out
    }
}

/// A partition of the TBN into polymers, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    polymers: Vec<Polymer>,
}

impl Configuration {
    /// Sorts the polymers; does not check the partition property (see [`Tbn::validate`]).
    pub fn from_polymers(mut polymers: Vec<Polymer>) -> Self {
        polymers.sort_unstable();
        Self { polymers }
    }

    pub fn polymers(&self) -> &[Polymer] {
        &self.polymers
    }

    /// `S`, the number of polymers.
    pub fn polymer_count(&self) -> usize {
        self.polymers.len()
    }

    /// Replaces polymers `i` and `j` (distinct indices) by their union.
    pub fn merge(&self, i: usize, j: usize) -> Result<Configuration> {
        if i == j || i >= self.polymers.len() || j >= self.polymers.len() {
            return Err(TbnError::InvalidMove(format!("cannot merge polymers {i} and {j}")));
        }
        let merged = self.polymers[i].union(&self.polymers[j]);
        let mut rest: Vec<Polymer> = self
            .polymers
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, p)| p.clone())
            .collect();
        rest.push(merged);
        Ok(Configuration::from_polymers(rest))
    }

    /// Splits `part` off polymer `i`; `part` must be a proper nonempty sub-multiset.
    pub fn split(&self, i: usize, part: &Polymer) -> Result<Configuration> {
        let whole = self
            .polymers
            .get(i)
            .ok_or_else(|| TbnError::InvalidMove(format!("no polymer {i}")))?;
        if part.counts.iter().all(|&c| c == 0) {
            return Err(TbnError::InvalidMove("split part is empty".into()));
        }
        let rest = whole
            .minus(part)
            .ok_or_else(|| TbnError::InvalidMove("split part is not a proper sub-multiset".into()))?;
        let mut polymers = self.polymers.clone();
        polymers[i] = rest;
        polymers.push(part.clone());
        Ok(Configuration::from_polymers(polymers))
    }
}

/// Per-name unstarred and starred site totals of a polymer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteProfile {
    pub unstarred: Vec<u32>,
    pub starred: Vec<u32>,
}

impl SiteProfile {
    pub fn bonds(&self) -> u64 {
        self.unstarred
            .iter()
            .zip(&self.starred)
            .map(|(&u, &s)| u.min(s) as u64)
            .sum()
    }

    /// Signed excess `#x - #x*` per name.
    pub fn excess(&self) -> impl Iterator<Item = i64> + '_ {
        self.unstarred
            .iter()
            .zip(&self.starred)
            .map(|(&u, &s)| u as i64 - s as i64)
    }
}

/// A thermodynamic binding network: a multiset of monomer types.
#[derive(Clone, Debug)]
pub struct Tbn {
    types: Vec<Monomer>,
    counts: Vec<u32>,
    names: Vec<String>,
    unstarred: Vec<Vec<u32>>,
    starred: Vec<Vec<u32>>,
}

impl PartialEq for Tbn {
    fn eq(&self, other: &Self) -> bool {
        self.types == other.types && self.counts == other.counts
    }
}

impl Eq for Tbn {}

impl Tbn {
    /// Builds a TBN from `(monomer, count)` entries. Repeated monomer types are
    /// merged (the first label wins); zero counts and empty input are rejected.
    pub fn new(entries: impl IntoIterator<Item = (Monomer, u32)>) -> Result<Self> {
        let mut merged: BTreeMap<Monomer, u32> = BTreeMap::new();
        for (m, c) in entries {
            if c == 0 {
                return Err(TbnError::Domain(format!("monomer {} has count zero", m.display_name())));
            }
            if m.sites.is_empty() {
                return Err(TbnError::Domain("a monomer must have at least one site".into()));
            }
            *merged.entry(m).or_insert(0) += c;
        }
        if merged.is_empty() {
            return Err(TbnError::EmptyTbn);
        }
        let mut names: Vec<String> = merged
            .keys()
            .flat_map(|m| m.sites.iter().map(|s| s.name.clone()))
            .collect();
        names.sort();
        names.dedup();
        let (types, counts): (Vec<Monomer>, Vec<u32>) = merged.into_iter().unzip();
        let mut unstarred = Vec::with_capacity(types.len());
        let mut starred = Vec::with_capacity(types.len());
        for m in &types {
            let mut u = vec![0u32; names.len()];
            let mut s = vec![0u32; names.len()];
            for site in &m.sites {
                let k = names.binary_search(&site.name).expect("interned name");
                if site.starred {
                    s[k] += 1;
                } else {
                    u[k] += 1;
                }
            }
            unstarred.push(u);
            starred.push(s);
        }
        Ok(Self {
            types,
            counts,
            names,
            unstarred,
            starred,
        })
    }

    pub fn types(&self) -> &[Monomer] {
        &self.types
    }

    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Total number of monomers `|T|`.
    pub fn monomer_count(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    /// Total number of sites over all monomers.
    pub fn site_count(&self) -> usize {
        self.types
            .iter()
            .zip(&self.counts)
            .map(|(m, &c)| m.size() * c as usize)
            .sum()
    }

    pub fn site_names(&self) -> &[String] {
        &self.names
    }

    pub fn name_index(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn type_index(&self, m: &Monomer) -> Option<usize> {
        self.types.binary_search(m).ok()
    }

    pub fn type_by_label(&self, label: &str) -> Option<usize> {
        self.types
            .iter()
            .position(|m| m.label() == Some(label))
            .or_else(|| self.types.iter().position(|m| m.display_name() == label))
    }

    /// Unstarred site counts per name for monomer type `ty`.
    pub fn type_unstarred(&self, ty: usize) -> &[u32] {
        &self.unstarred[ty]
    }

    pub fn type_starred(&self, ty: usize) -> &[u32] {
        &self.starred[ty]
    }

    pub fn label(&self, ty: usize) -> String {
        self.types[ty].display_name()
    }

    pub fn polymer_of_types(&self, members: &[usize]) -> Result<Polymer> {
        let mut counts = vec![0u32; self.types.len()];
        for &t in members {
            if t >= counts.len() {
                return Err(TbnError::Domain(format!("monomer type index {t} out of range")));
            }
            counts[t] += 1;
        }
        Polymer::from_counts(counts)
    }

    pub fn polymer_of_labels(&self, labels: &[&str]) -> Result<Polymer> {
        let members = labels
            .iter()
            .map(|l| {
                self.type_by_label(l)
                    .ok_or_else(|| TbnError::UnknownMonomer((*l).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.polymer_of_types(&members)
    }

    /// Builds and validates a configuration from polymers given as label lists.
    pub fn configuration_of_labels(&self, polymers: &[&[&str]]) -> Result<Configuration> {
        let polymers = polymers
            .iter()
            .map(|p| self.polymer_of_labels(p))
            .collect::<Result<Vec<_>>>()?;
        let c = Configuration::from_polymers(polymers);
        self.validate(&c)?;
        Ok(c)
    }

    /// Checks the partition property.
    pub fn validate(&self, c: &Configuration) -> Result<()> {
        let mut total = vec![0u32; self.types.len()];
        for p in &c.polymers {
            if p.counts.len() != total.len() {
                return Err(TbnError::NotPartition("polymer has the wrong type arity".into()));
            }
            if p.counts.iter().all(|&x| x == 0) {
                return Err(TbnError::NotPartition("empty polymer".into()));
            }
            for (t, &x) in p.counts.iter().enumerate() {
                total[t] += x;
            }
        }
        for (t, (&have, &want)) in total.iter().zip(&self.counts).enumerate() {
            if have != want {
                return Err(TbnError::NotPartition(format!(
                    "monomer {} used {have} times, TBN has {want}",
                    self.label(t)
                )));
            }
        }
        Ok(())
    }

    /// Every monomer in its own polymer.
    pub fn singletons(&self) -> Configuration {
        let mut polymers = Vec::with_capacity(self.monomer_count());
        for (t, &c) in self.counts.iter().enumerate() {
            for _ in 0..c {
                let mut counts = vec![0u32; self.types.len()];
                counts[t] = 1;
                polymers.push(Polymer::from_counts_unchecked(counts));
            }
        }
        Configuration::from_polymers(polymers)
    }

    /// All monomers in one polymer.
    pub fn whole(&self) -> Configuration {
        Configuration::from_polymers(vec![Polymer::from_counts_unchecked(self.counts.clone())])
    }

    pub fn profile(&self, p: &Polymer) -> SiteProfile {
        let mut unstarred = vec![0u32; self.names.len()];
        let mut starred = vec![0u32; self.names.len()];
        for (t, &c) in p.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for k in 0..self.names.len() {
                unstarred[k] += c * self.unstarred[t][k];
                starred[k] += c * self.starred[t][k];
            }
        }
        SiteProfile { unstarred, starred }
    }

    /// `H(P)`: sum over names of `min(#x, #x*)`.
    pub fn bond_count(&self, p: &Polymer) -> u64 {
        self.profile(p).bonds()
    }

    /// Sites left after removing as many complementary pairs as possible.
    pub fn exposed_sites(&self, p: &Polymer) -> Vec<SiteType> {
        let prof = self.profile(p);
        let mut out = Vec::new();
        for (k, e) in prof.excess().enumerate() {
            let site = SiteType::new(self.names[k].clone(), e < 0);
            for _ in 0..e.unsigned_abs() {
                out.push(site.clone());
            }
        }
        out
    }

    /// Some name is exposed unstarred in one polymer and starred in the other.
    pub fn compatible(&self, p: &Polymer, q: &Polymer) -> bool {
        let a = self.profile(p);
        let b = self.profile(q);
        let found = a
            .excess()
            .zip(b.excess())
            .any(|(x, y)| (x > 0 && y < 0) || (x < 0 && y > 0));
        found
    }

    /// No two polymer instances are compatible.
    pub fn is_saturated(&self, c: &Configuration) -> bool {
        let n = self.names.len();
        let mut pos = vec![false; n];
        let mut neg = vec![false; n];
        for p in &c.polymers {
            for (k, e) in self.profile(p).excess().enumerate() {
                if e > 0 {
                    if neg[k] {
                        return false;
                    }
                    pos[k] = true;
                } else if e < 0 {
                    if pos[k] {
                        return false;
                    }
                    neg[k] = true;
                }
            }
        }
        true
    }

    pub fn bonds(&self, c: &Configuration) -> u64 {
        c.polymers.iter().map(|p| self.bond_count(p)).sum()
    }

    pub fn energy(&self, c: &Configuration) -> Energy {
        Energy {
            bonds: self.bonds(c),
            polymers: c.polymer_count() as u64,
        }
    }

    /// The largest bond count any configuration can reach.
    pub fn max_bonds(&self) -> u64 {
        self.bond_count(&Polymer::from_counts_unchecked(self.counts.clone()))
    }

    pub fn render_polymer(&self, p: &Polymer) -> String {
        let labels: Vec<String> = p.members().into_iter().map(|t| self.label(t)).collect();
        format!("{{{}}}", labels.join(" "))
    }

    pub fn render_configuration(&self, c: &Configuration) -> String {
        c.polymers
            .iter()
            .map(|p| self.render_polymer(p))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Deterministic key, equal iff the configurations are equal as
    /// multisets of monomer multisets. Monomers are written by site content.
    pub fn canonical_key(&self, c: &Configuration) -> String {
        let mut out = String::new();
        for p in &c.polymers {
            out.push('[');
            for (t, &n) in p.counts.iter().enumerate() {
                if n > 0 {
                    out.push_str(&format!("{}x({})", n, self.types[t].sites_string()));
                    out.push(';');
                }
            }
            out.push(']');
        }
        out
    }
}

/// `E(to) - E(from)` as an exact rational.
pub fn energy_difference(from: Energy, to: Energy, w: BondStrength) -> Ratio<i64> {
    let d = to.value(w) - from.value(w);
    if d.is_zero() {
        Ratio::zero()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> Tbn {
        Tbn::new([
            (Monomer::parse("a a").unwrap().with_label("A"), 1),
            (Monomer::parse("a* b").unwrap().with_label("B"), 2),
        ])
        .unwrap()
    }

    fn four_monomers() -> Tbn {
        Tbn::new([
            (Monomer::parse("a").unwrap().with_label("a"), 1),
            (Monomer::parse("b").unwrap().with_label("b"), 1),
            (Monomer::parse("a b").unwrap().with_label("ab"), 1),
            (Monomer::parse("a* b*").unwrap().with_label("ab*"), 1),
        ])
        .unwrap()
    }

    fn sites(tokens: &str) -> Vec<SiteType> {
        let mut v: Vec<SiteType> = tokens.split_whitespace().map(|t| SiteType::parse(t).unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn site_complement_round_trips() {
        let a = SiteType::unstarred("a");
        assert_eq!(a.complement().complement(), a);
        assert!(a.binds(&a.complement()));
        assert!(!a.binds(&a));
        assert!(!a.binds(&SiteType::starred("b")));
        assert_eq!(SiteType::parse("a**"), None);
        assert_eq!(SiteType::parse("*"), None);
    }

    #[test]
    fn exposed_sites_examples() {
        let t = fig1();
        let p = t.polymer_of_labels(&["A", "B"]).unwrap();
        assert_eq!(t.exposed_sites(&p), sites("a b"));
        let q = t.polymer_of_labels(&["B"]).unwrap();
        assert_eq!(t.exposed_sites(&q), sites("a* b"));
        let t2 = four_monomers();
        let pair = t2.polymer_of_labels(&["ab", "ab*"]).unwrap();
        assert!(t2.exposed_sites(&pair).is_empty());
    }

    #[test]
    fn bond_count_examples() {
        let t = fig1();
        assert_eq!(t.bond_count(&t.polymer_of_labels(&["A", "B"]).unwrap()), 1);
        let t2 = four_monomers();
        assert_eq!(t2.bond_count(&t2.polymer_of_labels(&["ab", "ab*"]).unwrap()), 2);
        assert_eq!(t2.bond_count(&t2.polymer_of_labels(&["a", "b"]).unwrap()), 0);
    }

    #[test]
    fn compatibility_examples() {
        let t = fig1();
        let left = t.polymer_of_labels(&["A", "B"]).unwrap();
        let right = t.polymer_of_labels(&["B"]).unwrap();
        assert!(t.compatible(&left, &right));
        let t2 = four_monomers();
        let a = t2.polymer_of_labels(&["a"]).unwrap();
        assert!(!t2.compatible(&a, &a));
        let pair = t2.polymer_of_labels(&["ab", "ab*"]).unwrap();
        assert!(!t2.compatible(&pair, &a));
    }

    #[test]
    fn saturation_of_fig1_configurations() {
        let t = fig1();
        let gamma1 = t.configuration_of_labels(&[&["A", "B", "B"]]).unwrap();
        let gamma2 = t.configuration_of_labels(&[&["A", "B"], &["B"]]).unwrap();
        assert!(t.is_saturated(&gamma1));
        assert!(!t.is_saturated(&gamma2));
        let inert = Tbn::new([(Monomer::parse("a b").unwrap(), 3), (Monomer::parse("c").unwrap(), 1)]).unwrap();
        assert!(inert.is_saturated(&inert.singletons()));
    }

    #[test]
    fn energy_examples_at_w2() {
        let w = BondStrength::integer(2);
        let e = |h, s| Energy { bonds: h, polymers: s }.value(w);
        assert_eq!(e(2, 2), Ratio::from_integer(-6));
        assert_eq!(e(0, 4), Ratio::from_integer(-4));
        assert_eq!(e(2, 1), Ratio::from_integer(-5));
        let half = BondStrength::new(3, 2).unwrap();
        assert_eq!(Energy { bonds: 1, polymers: 1 }.value(half), Ratio::new(-5, 2));
        assert_eq!(Energy { bonds: 1, polymers: 1 }.scaled(half), -5);
    }

    #[test]
    fn energy_comparison_is_exact() {
        let w = BondStrength::new(1, 3).unwrap();
        let a = Energy { bonds: 3, polymers: 1 };
        let b = Energy { bonds: 0, polymers: 2 };
        assert_eq!(a.compare(&b, w), Ordering::Equal);
    }

    #[test]
    fn bond_strength_parsing() {
        assert_eq!(BondStrength::parse("3/2").unwrap().value(), Ratio::new(3, 2));
        assert_eq!(BondStrength::parse("4/2").unwrap().fraction_string(), "2/1");
        assert!(BondStrength::parse("1.5").is_err());
        assert!(BondStrength::parse("-1").is_err());
        assert!(BondStrength::parse("1/0").is_err());
    }

    #[test]
    fn canonical_key_ignores_order_and_distinguishes_configurations() {
        let t = fig1();
        let g1 = t.configuration_of_labels(&[&["A", "B", "B"]]).unwrap();
        let g2 = t.configuration_of_labels(&[&["B"], &["B", "A"]]).unwrap();
        let g2b = t.configuration_of_labels(&[&["A", "B"], &["B"]]).unwrap();
        assert_eq!(t.canonical_key(&g2), t.canonical_key(&g2b));
        assert_ne!(t.canonical_key(&g1), t.canonical_key(&g2));
    }

    #[test]
    fn swapping_identical_monomers_is_not_a_new_configuration() {
        let t = Tbn::new([
            (Monomer::parse("a").unwrap().with_label("x"), 2),
            (Monomer::parse("a*").unwrap().with_label("y"), 2),
        ])
        .unwrap();
        let c1 = t.configuration_of_labels(&[&["x", "y"], &["x", "y"]]).unwrap();
        let c2 = t.configuration_of_labels(&[&["y", "x"], &["y", "x"]]).unwrap();
        assert_eq!(c1, c2);
        assert_eq!(t.canonical_key(&c1), t.canonical_key(&c2));
    }

    #[test]
    fn empty_tbn_is_rejected() {
        assert_eq!(Tbn::new(Vec::new()).unwrap_err(), TbnError::EmptyTbn);
    }

    #[test]
    fn non_partitions_are_rejected() {
        let t = fig1();
        assert!(t.configuration_of_labels(&[&["A", "B"]]).is_err());
        assert!(t.configuration_of_labels(&[&["A", "B", "B", "B"]]).is_err());
        assert!(matches!(
            t.configuration_of_labels(&[&["A", "Q"]]),
            Err(TbnError::UnknownMonomer(_))
        ));
    }
}
