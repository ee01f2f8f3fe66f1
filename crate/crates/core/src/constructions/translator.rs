use super::{blocks_to_configuration, PathBuilder};
use crate::error::{Result, TbnError};
use crate::kinetics::Path;
use crate::model::{Configuration, Monomer, SiteType, Tbn};

/// Parameters of a `(z, c)` translator cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatorSpec {
    /// Complex length: sites per bottom monomer.
    pub z: usize,
    /// Number of complex types.
    pub c: usize,
    /// Copies of each `t_i` (equal to the copies of `b_i`), length `c`.
    pub copies: Vec<u32>,
    /// Extra copies of `t_{c-1}` acting as catalysts.
    pub extra_catalysts: u32,
}

impl TranslatorSpec {
    pub fn single(z: usize, c: usize) -> Self {
        Self {
            z,
            c,
            copies: vec![1; c],
            extra_catalysts: 0,
        }
    }

    pub fn with_catalysts(mut self, k: u32) -> Self {
        self.extra_catalysts = k;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.c < 2 {
            return Err(TbnError::Spec(format!("need c >= 2 (got c = {})", self.c)));
        }
        if self.z == 0 || self.z >= self.c {
            return Err(TbnError::Spec(format!(
                "need 1 <= z < c (got z = {}, c = {})",
                self.z, self.c
            )));
        }
        if self.copies.len() != self.c {
            return Err(TbnError::Spec(format!(
                "copies lists {} complex types, expected {}",
                self.copies.len(),
                self.c
            )));
        }
        if self.copies.contains(&0) {
            return Err(TbnError::Spec("every b_i needs at least one copy".into()));
        }
        Ok(())
    }
}

/// A generated translator cycle with its initial and fully triggered
/// configurations (extra catalysts separate in both).
#[derive(Clone, Debug)]
pub struct Translator {
    pub spec: TranslatorSpec,
    pub tbn: Tbn,
    pub initial: Configuration,
    pub triggered: Configuration,
}

fn site(i: usize) -> String {
    format!("x{i}")
}

pub(crate) fn top_monomer(z: usize, c: usize, i: usize) -> Monomer {
    Monomer::labeled(format!("t{i}"), (0..=z).map(|k| SiteType::unstarred(site((i + k) % c))))
}

pub(crate) fn bottom_monomer(z: usize, c: usize, i: usize) -> Monomer {
    Monomer::labeled(format!("b{i}"), (0..z).map(|k| SiteType::starred(site((i + k) % c))))
}

pub fn gen_translator(spec: &TranslatorSpec) -> Result<Translator> {
    spec.validate()?;
    let (z, c) = (spec.z, spec.c);
    let mut entries = Vec::new();
    for i in 0..c {
        let extra = if i == c - 1 { spec.extra_catalysts } else { 0 };
        entries.push((top_monomer(z, c, i), spec.copies[i] + extra));
        entries.push((bottom_monomer(z, c, i), spec.copies[i]));
    }
    let tbn = Tbn::new(entries)?;
    let tr = Translator {
        spec: spec.clone(),
        initial: Configuration::from_polymers(Vec::new()),
        triggered: Configuration::from_polymers(Vec::new()),
        tbn,
    };
    let initial = blocks_to_configuration(&tr.tbn, &tr.blocks(|i| i));
    let triggered = blocks_to_configuration(&tr.tbn, &tr.blocks(|i| (i + c - 1) % c));
    Ok(Translator {
        initial,
        triggered,
        ..tr
    })
}

impl Translator {
    pub fn top(&self, i: usize) -> usize {
        self.tbn
            .type_by_label(&format!("t{}", i % self.spec.c))
            .expect("top type")
    }

    pub fn bottom(&self, i: usize) -> usize {
        self.tbn
            .type_by_label(&format!("b{}", i % self.spec.c))
            .expect("bottom type")
    }

    pub fn is_top(&self, ty: usize) -> bool {
        self.tbn.types()[ty].label().is_some_and(|l| l.starts_with('t'))
    }

    /// Index `i` of the type `t_i` or `b_i`.
    pub fn index_of(&self, ty: usize) -> usize {
        self.tbn.types()[ty].label().expect("labeled")[1..]
            .parse()
            .expect("numeric index")
    }

    /// Each `b_i` paired with `t_{partner(i)}`; leftover tops separate.
    fn blocks(&self, partner: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
        let c = self.spec.c;
        let mut free: Vec<u32> = (0..c).map(|i| self.tbn.counts()[self.top(i)]).collect();
        let mut blocks = Vec::new();
        for i in 0..c {
            for _ in 0..self.spec.copies[i] {
                let j = partner(i);
                free[j] -= 1;
                blocks.push(vec![self.bottom(i), self.top(j)]);
            }
        }
        for (j, &k) in free.iter().enumerate() {
            for _ in 0..k {
                blocks.push(vec![self.top(j)]);
            }
        }
        blocks
    }

    /// Saturated and containing one polymer `{b_i, t_{i-1}}` for every `i`.
    pub fn is_triggered(&self, c: &Configuration) -> bool {
        if !self.tbn.is_saturated(c) {
            return false;
        }
        let n = self.spec.c;
        (0..n).all(|i| {
            let p = self
                .tbn
                .polymer_of_types(&[self.bottom(i), self.top(i + n - 1)])
                .expect("pair polymer");
            c.polymers().contains(&p)
        })
    }
}

/// The catalyzed mechanism: the free top `t_{i-1}` joins `{b_i, t_i}` and
/// displaces `t_i`, for `i = 0, 1, ..., c-1`. Height 1 whenever `w >= 1`.
pub fn translator_catalyzed_path(tr: &Translator) -> Result<Path> {
    if tr.spec.extra_catalysts == 0 {
        return Err(TbnError::Domain("the catalyzed path needs an extra top monomer".into()));
    }
    let c = tr.spec.c;
    let mut b = PathBuilder::new(&tr.tbn, tr.blocks(|i| i));
    for i in 0..c {
        let (bot, top, prev) = (tr.bottom(i), tr.top(i), tr.top(i + c - 1));
        b.merge(&[prev], &[bot, top])?;
        b.split(&[bot, top, prev], &[top])?;
    }
    b.finish()
}

/// The uncatalyzed saturated path for `z | c`: the `c/z` complexes
/// `{b_{kz}, t_{kz}}` (disjoint starred sites) form a large polymer; each
/// further batch of `c/z` complexes is merged in and its triggered pairs split
/// out; finally the large polymer dissolves into triggered pairs.
pub fn translator_cheat_path(tr: &Translator) -> Result<Path> {
    let (z, c) = (tr.spec.z, tr.spec.c);
    if c % z != 0 {
        return Err(TbnError::Domain(format!("z = {z} does not divide c = {c}")));
    }
    if tr.spec.extra_catalysts != 0 || tr.spec.copies.iter().any(|&k| k != 1) {
        return Err(TbnError::Domain(
            "the cheat path is defined for single copies without catalysts".into(),
        ));
    }
    let groups = c / z;
    let pair = |i: usize, j: usize| vec![tr.bottom(i), tr.top(j)];
    let mut b = PathBuilder::new(&tr.tbn, tr.blocks(|i| i));

    let mut big = pair(0, 0);
    for k in 1..groups {
        let p = pair(k * z, k * z);
        b.merge(&big, &p)?;
        big.extend(p);
    }
    for r in 1..z {
        for k in 0..groups {
            let i = k * z + r;
            let p = pair(i, i);
            b.merge(&big, &p)?;
            big.extend(p);
        }
        for k in 0..groups {
            let i = k * z + r;
            let out = pair(i, i - 1);
            b.split(&big, &out)?;
            for t in out {
                let pos = big.iter().position(|&x| x == t).expect("member");
                big.remove(pos);
            }
        }
    }
    // the large polymer now holds b_{kz} and t_{kz+z-1}
    for k in 0..groups.saturating_sub(1) {
        let out = pair(k * z, (k * z + c - 1) % c);
        b.split(&big, &out)?;
        for t in out {
            let pos = big.iter().position(|&x| x == t).expect("member");
            big.remove(pos);
        }
    }
    b.finish()
}
