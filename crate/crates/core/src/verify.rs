//! Named property suites, each a list of pass/fail checks.

use std::collections::HashMap;

use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use crate::bond::{bond_bottleneck_map, is_bond_saturated, simplify, unbonded_singletons, BondConfiguration, BondMode};
use crate::constructions::{
    configuration_offset, exposed_size_check, gen_grid, gen_translator, grid_catalyzed_path, is_normal_form, n_prime,
    offset_diagnostics, perfect_matchings, translator_catalyzed_path, translator_cheat_path, Grid, GridSpec,
    Translator, TranslatorSpec,
};
use crate::enumerate::all_configurations;
use crate::error::{Result, TbnError};
use crate::kinetics::{height, neighbors, saturate_path, Mode, Move, Path};
use crate::model::{BondStrength, Configuration, Polymer, Tbn};
use crate::random::{random_tbn, RandomTbnParams};
use crate::report::ratio_string;
use crate::search::{barrier, bottleneck_map, self_stabilize, stable_configurations, BarrierResult, SearchBudget};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    #[serde(serialize_with = "as_string")]
    pub explored: u64,
    pub budget_hit: bool,
}

fn as_string<S: serde::Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl SuiteReport {
    fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            checks: Vec::new(),
            explored: 0,
            budget_hit: false,
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn search(&mut self, r: &BarrierResult) {
        self.explored += r.explored;
        self.budget_hit |= r.budget_hit();
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn int(k: i64) -> Ratio<i64> {
    Ratio::from_integer(k)
}

fn show(b: Option<Ratio<i64>>) -> String {
    b.map_or("none".into(), ratio_string)
}

fn named<'a>(grid: &'a Grid, name: &str) -> Result<&'a Configuration> {
    grid.configuration(name)
        .ok_or_else(|| TbnError::Domain(format!("grid has no configuration `{name}`")))
}

fn witness_ok(tbn: &Tbn, r: &BarrierResult, from: &Configuration, to: &Configuration, w: BondStrength) -> bool {
    r.witness.as_ref().is_some_and(|p| {
        p.start() == from
            && p.end() == to
            && Path::new(tbn, p.configurations().to_vec()).is_ok()
            && Some(height(tbn, p, w)) == r.barrier()
    })
}

/// Barrier between the two base configurations of a single-copy grid is `n`.
pub fn grid_barrier(n: usize, w: BondStrength, budget: &SearchBudget) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("grid-barrier n={n}"));
    let grid = gen_grid(&GridSpec::single(n))?;
    let (h, v) = (named(&grid, "base_H")?, named(&grid, "base_V")?);
    let r = barrier(&grid.tbn, h, v, w, Mode::All, budget)?;
    rep.search(&r);
    rep.check(
        "barrier(base_H, base_V) = n",
        r.barrier() == Some(int(n as i64)),
        format!("barrier {}", show(r.barrier())),
    );
    rep.check("witness replays to the barrier", witness_ok(&grid.tbn, &r, h, v, w), "");
    Ok(rep)
}

/// With `m` catalysts both directions have barrier 1, and the explicit
/// mechanism is a saturated height-1 path.
pub fn grid_catalyzed(n: usize, m: u32, w: BondStrength, budget: &SearchBudget) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("grid-catalyzed n={n} m={m}"));
    let grid = gen_grid(&GridSpec::single(n).with_catalysts(m))?;
    let (h, v) = (named(&grid, "base_H")?, named(&grid, "base_V")?);
    for (a, b, label) in [(h, v, "base_H -> base_V"), (v, h, "base_V -> base_H")] {
        let r = barrier(&grid.tbn, a, b, w, Mode::All, budget)?;
        rep.search(&r);
        rep.check(
            format!("barrier {label} = 1"),
            r.barrier() == Some(int(1)),
            format!("barrier {}", show(r.barrier())),
        );
    }
    if m == 1 {
        let p = grid_catalyzed_path(&grid)?;
        rep.check(
            "catalyzed path is saturated with height 1",
            p.is_saturated(&grid.tbn) && height(&grid.tbn, &p, w) == int(1) && p.start() == h && p.end() == v,
            format!("height {}", ratio_string(height(&grid.tbn, &p, w))),
        );
    }
    Ok(rep)
}

/// In the two-copy autocatalytic network both named configurations are stable
/// with `n + 2` polymers and the barrier between them is 1.
pub fn grid_autocatalytic(n: usize, w: BondStrength, budget: &SearchBudget) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("grid-autocatalytic n={n}"));
    let grid = gen_grid(&GridSpec::autocatalytic(n))?;
    let (h, v) = (named(&grid, "auto_H")?, named(&grid, "auto_V")?);
    let st = stable_configurations(&grid.tbn, w, budget);
    rep.explored += st.explored;
    rep.budget_hit |= !st.complete;
    rep.check(
        "stable set contains auto_H and auto_V",
        st.complete && st.stable.contains(h) && st.stable.contains(v),
        format!("{} stable configurations", st.stable.len()),
    );
    rep.check(
        "max polymer count is n + 2",
        st.complete && st.max_s == n + 2,
        format!("max S = {}", st.max_s),
    );
    let r = barrier(&grid.tbn, h, v, w, Mode::All, budget)?;
    rep.search(&r);
    rep.check(
        "barrier(auto_H, auto_V) = 1",
        r.barrier() == Some(int(1)),
        format!("barrier {}", show(r.barrier())),
    );
    let p = grid_catalyzed_path(&grid)?;
    rep.check(
        "autocatalyzed path is saturated with height 1",
        p.is_saturated(&grid.tbn) && height(&grid.tbn, &p, w) == int(1),
        format!("height {}", ratio_string(height(&grid.tbn, &p, w))),
    );
    Ok(rep)
}

/// Whether some sequence of saturated splits leads from `c` to a base
/// configuration.
fn splits_reach_base(grid: &Grid, c: &Configuration, memo: &mut HashMap<Configuration, bool>) -> bool {
    if grid.is_base(c) {
        return true;
    }
    if let Some(&v) = memo.get(c) {
        return v;
    }
    let ok = neighbors(&grid.tbn, c, Mode::SaturatedOnly)
        .into_iter()
        .filter(|(m, _)| !m.is_merge())
        .any(|(_, next)| splits_reach_base(grid, &next, memo));
    memo.insert(c.clone(), ok);
    ok
}

/// Every saturated configuration of the single-copy grid reaches a base
/// configuration by splits alone.
pub fn grid_self_stabilize(n: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("grid-self-stabilize n={n}"));
    let grid = gen_grid(&GridSpec::single(n))?;
    let saturated: Vec<Configuration> = all_configurations(&grid.tbn)
        .into_iter()
        .filter(|c| grid.tbn.is_saturated(c))
        .collect();
    let mut memo = HashMap::new();
    let mut bad = Vec::new();
    let mut greedy = 0;
    for c in &saturated {
        let p = self_stabilize(&grid.tbn, c)?;
        if grid.is_base(p.end()) {
            greedy += 1;
        } else if !splits_reach_base(&grid, c, &mut memo) {
            bad.push(grid.tbn.render_configuration(c));
        }
    }
    rep.check(
        "every saturated configuration splits down to a base configuration",
        bad.is_empty(),
        format!(
            "{} saturated, {} by greedy splitting, {} stuck{}",
            saturated.len(),
            greedy,
            bad.len(),
            bad.first().map_or(String::new(), |b| format!(", e.g. {b}"))
        ),
    );
    Ok(rep)
}

/// With `m` catalysts, the stable configurations are exactly the base
/// configurations plus free catalysts, and the maximum polymer count is
/// `|T| - kn` for `k` copies of `G`.
pub fn grid_stability(n: usize, m: u32, w: BondStrength, budget: &SearchBudget) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("grid-stability n={n} m={m}"));
    let grid = gen_grid(&GridSpec::single(n).with_catalysts(m))?;
    let st = stable_configurations(&grid.tbn, w, budget);
    rep.explored += st.explored;
    rep.budget_hit |= !st.complete;
    let k = grid.tbn.counts()[grid.g()] as usize;
    let bound = grid.tbn.monomer_count() - k * n;
    rep.check(
        "max polymer count is |T| - kn",
        st.complete && st.max_s == bound,
        format!("max S = {}, |T| - kn = {bound}", st.max_s),
    );
    let h = named(&grid, "base_H")?;
    let v = named(&grid, "base_V")?;
    rep.check(
        "base configurations are stable",
        st.stable.contains(h) && st.stable.contains(v),
        "",
    );
    let extra: Vec<String> = st
        .stable
        .iter()
        .filter(|c| !grid.is_base(c))
        .map(|c| grid.tbn.render_configuration(c))
        .collect();
    rep.check(
        "no other configuration is stable",
        extra.is_empty(),
        format!(
            "{} stable, {} not base{}",
            st.stable.len(),
            extra.len(),
            extra.first().map_or(String::new(), |e| format!(", e.g. {e}"))
        ),
    );
    Ok(rep)
}

/// With one extra top monomer the explicit mechanism has height 1 and the
/// searched barrier is 1.
pub fn translator_catalyzed(z: usize, c: usize, w: BondStrength, budget: &SearchBudget) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("translator-catalyzed z={z} c={c}"));
    let tr = gen_translator(&TranslatorSpec::single(z, c).with_catalysts(1))?;
    let p = translator_catalyzed_path(&tr)?;
    let h = height(&tr.tbn, &p, w);
    rep.check(
        "catalyzed path replays to height 1",
        h == int(1) && p.is_saturated(&tr.tbn) && p.start() == &tr.initial && p.end() == &tr.triggered,
        format!("height {}", ratio_string(h)),
    );
    let r = barrier(&tr.tbn, &tr.initial, &tr.triggered, w, Mode::All, budget)?;
    rep.search(&r);
    rep.check(
        "barrier(initial, triggered) = 1",
        r.barrier() == Some(int(1)),
        format!("barrier {}", show(r.barrier())),
    );
    Ok(rep)
}

/// The uncatalyzed cheat path is saturated and has height exactly `2c/z`.
pub fn translator_cheat(z: usize, c: usize, w: BondStrength) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("translator-cheat z={z} c={c}"));
    let tr = gen_translator(&TranslatorSpec::single(z, c))?;
    let p = translator_cheat_path(&tr)?;
    rep.check(
        "every configuration on the path is saturated",
        p.is_saturated(&tr.tbn),
        format!("{} moves", p.len()),
    );
    rep.check(
        "path ends triggered",
        p.start() == &tr.initial && tr.is_triggered(p.end()),
        "",
    );
    let h = height(&tr.tbn, &p, w);
    let target = Ratio::new(2 * c as i64, z as i64);
    rep.check(
        "height is 2c/z",
        h == target,
        format!("height {}, 2c/z = {}", ratio_string(h), ratio_string(target)),
    );
    Ok(rep)
}

/// Single-copy `(n, n^2)` translator: the barrier from initial to triggered
/// is at least `n^2 / (2n + 1)`.
pub fn translator_barrier(n: usize, w: BondStrength, budget: &SearchBudget) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("translator-barrier n={n}"));
    let tr = gen_translator(&TranslatorSpec::single(n, n * n))?;
    let r = barrier(&tr.tbn, &tr.initial, &tr.triggered, w, Mode::All, budget)?;
    rep.search(&r);
    let bound = Ratio::new((n * n) as i64, 2 * n as i64 + 1);
    rep.check(
        "barrier(initial, triggered) >= n^2/(2n+1)",
        r.barrier().is_some_and(|b| b >= bound),
        format!("barrier {}, bound {}", show(r.barrier()), ratio_string(bound)),
    );
    rep.check(
        "barrier is at least the integer ceiling of the bound",
        r.barrier().is_some_and(|b| b >= bound.ceil()),
        format!("ceiling {}", ratio_string(bound.ceil())),
    );
    Ok(rep)
}

struct Tally {
    name: &'static str,
    checked: usize,
    failed: usize,
    example: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failed: 0,
            example: None,
        }
    }

    fn record(&mut self, ok: bool, example: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.example.is_none() {
                self.example = Some(example());
            }
        }
    }

    fn into_check(self, rep: &mut SuiteReport) {
        let mut detail = format!("{} instances, {} counterexamples", self.checked, self.failed);
        if let Some(e) = self.example {
            detail.push_str(&format!(", e.g. {e}"));
        }
        rep.check(self.name, self.failed == 0, detail);
    }
}

fn render(tr: &Translator, p: &Polymer) -> String {
    tr.tbn.render_polymer(p)
}

/// Offset properties, checked exhaustively over every configuration of the
/// single-copy `(n, n^2)` translator. Properties that assume small polymers are
/// checked wherever their hypotheses hold.
pub fn translator_offset(n: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("translator-offset n={n}"));
    let tr = gen_translator(&TranslatorSpec::single(n, n * n))?;
    let tbn = &tr.tbn;
    let small = |p: &Polymer| Ratio::from_integer(p.size() as i64) < n_prime(n);
    let normal = |c: &Configuration| c.polymers().iter().all(|p| is_normal_form(&tr, p));

    let mut not_normal = Tally::new("not normal form implies a polymer with n tops");
    let mut perfect = Tally::new("small normal-form polymers have a perfect matching");
    let mut exposed = Tally::new("k exposed sites implies size 2k");
    let mut equal = Tally::new("all perfect matchings of an n'-sized polymer have one offset");
    let mut max_size = Tally::new("size is at least 2(m+1) for the largest sorted offset m");
    let mut conserved = Tally::new("merges and splits on n'-sized normal-form paths conserve the offset");

    let saturated: Vec<Configuration> = all_configurations(tbn)
        .into_iter()
        .filter(|c| tbn.is_saturated(c))
        .collect();
    for c in &saturated {
        let is_normal = normal(c);
        if !is_normal {
            let tops = |p: &Polymer| p.members().into_iter().filter(|&t| tr.is_top(t)).count();
            not_normal.record(c.polymers().iter().any(|p| tops(p) >= n), || {
                tbn.render_configuration(c)
            });
            continue;
        }
        for p in c.polymers() {
            if p.size() < 2 * n + 1 {
                let ok = perfect_matchings(&tr, p).is_ok_and(|ms| !ms.is_empty());
                perfect.record(ok, || render(&tr, p));
            }
            let (k, ok) = exposed_size_check(&tr, p)?;
            exposed.record(ok, || format!("{} with {k} exposed", render(&tr, p)));
            if small(p) {
                let offsets: Vec<i64> = perfect_matchings(&tr, p)?
                    .iter()
                    .map(|m| {
                        m.iter()
                            .map(|&(i, j)| crate::constructions::pair_offset(n, i, j).unwrap_or(0))
                            .sum()
                    })
                    .collect();
                equal.record(offsets.windows(2).all(|w| w[0] == w[1]), || render(&tr, p));
                let d = offset_diagnostics(&tr, p)?;
                let ok =
                    d.sorted_matching.is_some() && d.max_sorted_offset.is_none_or(|m| p.size() as i64 >= 2 * (m + 1));
                max_size.record(ok, || render(&tr, p));
            }
        }
        let all_small = c.polymers().iter().all(&small);
        if all_small {
            for (mv, next) in neighbors(tbn, c, Mode::SaturatedOnly) {
                if normal(&next) && next.polymers().iter().all(&small) {
                    let (a, b) = (configuration_offset(&tr, c)?, configuration_offset(&tr, &next)?);
                    conserved.record(a == b, || format!("{mv:?} from {}", tbn.render_configuration(c)));
                }
            }
        }
    }
    for t in [not_normal, perfect, exposed, equal, max_size, conserved] {
        t.into_check(&mut rep);
    }
    let init = configuration_offset(&tr, &tr.initial)?;
    let trig = configuration_offset(&tr, &tr.triggered)?;
    rep.check(
        "initial offset 0, triggered offset -n^2",
        init == 0 && trig == -((n * n) as i64),
        format!("{init} and {trig}"),
    );
    Ok(rep)
}

/// The small-polymer offset properties on every normal-form polymer with two tops
/// and two bottoms (copies allowed) of the `(n, n^2)` translator that exposes
/// no starred site. Needs `n >= 5` so that such polymers are `n'`-sized.
pub fn translator_offset_local(n: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("translator-offset-local n={n}"));
    if Ratio::from_integer(4) >= n_prime(n) {
        return Err(TbnError::Domain(format!(
            "size-4 polymers are not n'-sized for n = {n}"
        )));
    }
    let c = n * n;
    let mut spec = TranslatorSpec::single(n, c);
    spec.copies = vec![2; c];
    let tr = gen_translator(&spec)?;
    let tbn = &tr.tbn;
    let pair_poly = |i: usize, j: usize| tbn.polymer_of_types(&[tr.bottom(i), tr.top(j)]);
    let admissible = |p: &Polymer| tbn.exposed_sites(p).iter().all(|s| !s.starred);

    let mut perfect = Tally::new("perfect matching exists");
    let mut cutoff = Tally::new("a cutoff exists and no compatible pair crosses it");
    let mut equal = Tally::new("all perfect matchings have one offset");
    let mut sorted = Tally::new("a sorted matching exists");
    let mut exposed = Tally::new("k exposed sites implies size 2k");
    let mut max_size = Tally::new("size is at least 2(m+1) for the largest sorted offset m");
    let mut conserved = Tally::new("offset is additive over merges of admissible pairs");

    for i1 in 0..c {
        for i2 in i1..c {
            for j1 in 0..c {
                for j2 in j1..c {
                    let p = tbn.polymer_of_types(&[tr.bottom(i1), tr.bottom(i2), tr.top(j1), tr.top(j2)])?;
                    if !admissible(&p) {
                        continue;
                    }
                    let ms = perfect_matchings(&tr, &p)?;
                    perfect.record(!ms.is_empty(), || render(&tr, &p));
                    if ms.is_empty() {
                        continue;
                    }
                    let d = offset_diagnostics(&tr, &p)?;
                    cutoff.record(d.cutoff.is_some() && d.crossing_free, || render(&tr, &p));
                    let offsets: Vec<i64> = ms
                        .iter()
                        .map(|m| {
                            m.iter()
                                .map(|&(i, j)| crate::constructions::pair_offset(n, i, j).unwrap_or(0))
                                .sum()
                        })
                        .collect();
                    equal.record(offsets.windows(2).all(|w| w[0] == w[1]), || render(&tr, &p));
                    sorted.record(d.sorted_matching.is_some(), || render(&tr, &p));
                    let (k, ok) = exposed_size_check(&tr, &p)?;
                    exposed.record(ok, || format!("{} with {k} exposed", render(&tr, &p)));
                    max_size.record(d.max_sorted_offset.is_some_and(|m| 4 >= 2 * (m + 1)), || {
                        render(&tr, &p)
                    });
                    // splitting into two admissible pairs keeps the offset
                    for (a, b) in [((i1, j1), (i2, j2)), ((i1, j2), (i2, j1))] {
                        let (pa, pb) = (pair_poly(a.0, a.1)?, pair_poly(b.0, b.1)?);
                        if admissible(&pa) && admissible(&pb) {
                            let fa = offset_diagnostics(&tr, &pa)?.offset;
                            let fb = offset_diagnostics(&tr, &pb)?.offset;
                            conserved.record(fa + fb == d.offset, || render(&tr, &p));
                        }
                    }
                }
            }
        }
    }
    for t in [perfect, cutoff, equal, sorted, exposed, max_size, conserved] {
        t.into_check(&mut rep);
    }
    Ok(rep)
}

/// On random small TBNs and `w >= 2`, saturated and unrestricted barriers
/// agree between every pair of saturated configurations.
pub fn saturated_equivalence(count: usize, seed: u64, ws: &[BondStrength]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("saturated-equivalence count={count} seed={seed}"));
    let mut rng = StdRng::seed_from_u64(seed);
    let mut tally = Tally::new("saturated barrier equals unrestricted barrier");
    for _ in 0..count {
        let tbn = random_tbn(&mut rng, &RandomTbnParams::default());
        let saturated: Vec<Configuration> = all_configurations(&tbn)
            .into_iter()
            .filter(|c| tbn.is_saturated(c))
            .collect();
        for &w in ws {
            if w.value() < int(2) {
                return Err(TbnError::UnsupportedRegime(format!(
                    "the equivalence needs w >= 2, got {w}"
                )));
            }
            for from in &saturated {
                let all = bottleneck_map(&tbn, from, w, Mode::All);
                let sat = bottleneck_map(&tbn, from, w, Mode::SaturatedOnly);
                for to in &saturated {
                    let (a, s) = (all.get(to), sat.get(to));
                    tally.record(a == s, || {
                        format!(
                            "w={w}: {} -> {}: b = {}, saturated {}",
                            tbn.render_configuration(from),
                            tbn.render_configuration(to),
                            show(a.copied()),
                            show(s.copied())
                        )
                    });
                }
            }
        }
    }
    tally.into_check(&mut rep);
    Ok(rep)
}

/// The three-monomer instance where saturated paths cost one more than
/// unrestricted ones at `w = 1`.
pub fn tightness_instance() -> (Tbn, Configuration, Configuration) {
    use crate::model::Monomer;
    let tbn = Tbn::new([
        (Monomer::parse("a b").expect("sites").with_label("m1"), 1),
        (Monomer::parse("a*").expect("sites").with_label("m2"), 1),
        (Monomer::parse("a c").expect("sites").with_label("m3"), 1),
    ])
    .expect("valid TBN");
    let from = tbn
        .configuration_of_labels(&[&["m1", "m2"], &["m3"]])
        .expect("configuration");
    let to = tbn
        .configuration_of_labels(&[&["m1"], &["m2", "m3"]])
        .expect("configuration");
    (tbn, from, to)
}

pub fn tightness(budget: &SearchBudget) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("tightness");
    let (tbn, from, to) = tightness_instance();
    let w = BondStrength::integer(1);
    let all = barrier(&tbn, &from, &to, w, Mode::All, budget)?;
    let sat = barrier(&tbn, &from, &to, w, Mode::SaturatedOnly, budget)?;
    rep.search(&all);
    rep.search(&sat);
    rep.check(
        "saturated barrier is one more than the barrier at w = 1",
        matches!((all.barrier(), sat.barrier()), (Some(a), Some(s)) if s == a + 1),
        format!("b = {}, saturated {}", show(all.barrier()), show(sat.barrier())),
    );
    Ok(rep)
}

/// Simple paths of at most `max_len` moves between saturated configurations.
fn saturated_paths(tbn: &Tbn, max_len: usize, mut f: impl FnMut(Path)) {
    fn go(tbn: &Tbn, stack: &mut Vec<Configuration>, max_len: usize, f: &mut impl FnMut(Path)) {
        let last = stack.last().expect("nonempty").clone();
        if stack.len() > 1 && tbn.is_saturated(&last) {
            f(Path::new(tbn, stack.clone()).expect("moves are valid"));
        }
        if stack.len() > max_len {
            return;
        }
        for (_, next) in neighbors(tbn, &last, Mode::All) {
            if !stack.contains(&next) {
                stack.push(next);
                go(tbn, stack, max_len, f);
                stack.pop();
            }
        }
    }
    for c in all_configurations(tbn).into_iter().filter(|c| tbn.is_saturated(c)) {
        go(tbn, &mut vec![c], max_len, &mut f);
    }
}

/// Saturating a path raises its height by at most `max(0, 2 - w)`, checked on
/// every simple path of at most `max_len` moves between saturated configurations.
pub fn path_saturation(tbns: &[Tbn], max_len: usize, ws: &[BondStrength]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("path-saturation len<={max_len}"));
    let mut tally = Tally::new("saturated height <= height + max(0, 2 - w)");
    let mut valid = Tally::new("output is a saturated path with the same endpoints");
    for tbn in tbns {
        let mut err = None;
        saturated_paths(tbn, max_len, |p| {
            for &w in ws {
                match saturate_path(tbn, &p, w) {
                    Ok(q) => {
                        let slack = (int(2) - w.value()).max(int(0));
                        let (hp, hq) = (height(tbn, &p, w), height(tbn, &q, w));
                        tally.record(hq <= hp + slack, || {
                            format!("w={w}: height {} -> {}", ratio_string(hp), ratio_string(hq))
                        });
                        valid.record(
                            q.is_saturated(tbn) && q.start() == p.start() && q.end() == p.end(),
                            || tbn.render_configuration(p.start()),
                        );
                    }
                    Err(e) => err = err.take().or(Some(e)),
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    tally.into_check(&mut rep);
    valid.into_check(&mut rep);
    Ok(rep)
}

/// Bond-aware barriers against barriers of the simplified configurations.
///
/// For every start whose energy equals that of its simplification, and every
/// reachable target: the stated sandwich `b - 1 <= b~ <= b`, and separately
/// `b <= b~`, plus `b~ <= b + 1` when the target is also fully bonded. For
/// saturated endpoints and no-break paths the same comparisons with the
/// saturated barrier.
pub fn bond_sandwich(tbns: &[Tbn], w: BondStrength) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("bond-sandwich w={w}"));
    let mut lower = Tally::new("b - 1 <= b~");
    let mut upper = Tally::new("b~ <= b");
    let mut coarse_first = Tally::new("b <= b~");
    let mut lift = Tally::new("b~ <= b + 1 for fully bonded targets");
    let mut sat_lower = Tally::new("saturated: b^~ + 1 >= b^");
    let mut sat_upper = Tally::new("saturated: b^~ <= b^");
    let mut sat_proven = Tally::new("saturated: b^ <= b^~");
    let one = int(1);
    for tbn in tbns {
        let states: Vec<BondConfiguration> =
            bond_bottleneck_map(tbn, &unbonded_singletons(tbn), w, BondMode::ALL, true)?
                .into_keys()
                .collect();
        let mut coarse_all: HashMap<Configuration, HashMap<Configuration, Ratio<i64>>> = HashMap::new();
        let mut coarse_sat: HashMap<Configuration, HashMap<Configuration, Ratio<i64>>> = HashMap::new();
        for from in &states {
            let cf = simplify(tbn, from);
            if from.bond_count() != tbn.bonds(&cf) {
                continue;
            }
            let fine = bond_bottleneck_map(tbn, from, w, BondMode::ALL, true)?;
            let coarse = coarse_all
                .entry(cf.clone())
                .or_insert_with(|| bottleneck_map(tbn, &cf, w, Mode::All));
            for (to, &bt) in &fine {
                let b = coarse[&simplify(tbn, to)];
                let ex = || {
                    format!(
                        "{} -> {}: b = {}, b~ = {}",
                        tbn.render_configuration(&cf),
                        tbn.render_configuration(&simplify(tbn, to)),
                        ratio_string(b),
                        ratio_string(bt)
                    )
                };
                lower.record(b - one <= bt, ex);
                upper.record(bt <= b, ex);
                coarse_first.record(b <= bt, ex);
                if to.bond_count() == tbn.bonds(&simplify(tbn, to)) {
                    lift.record(bt <= b + one, ex);
                }
            }
            if !is_bond_saturated(tbn, from) {
                continue;
            }
            let fine = bond_bottleneck_map(tbn, from, w, BondMode::NO_BREAK, true)?;
            let coarse = coarse_sat
                .entry(cf.clone())
                .or_insert_with(|| bottleneck_map(tbn, &cf, w, Mode::SaturatedOnly));
            for to in states.iter().filter(|s| is_bond_saturated(tbn, s)) {
                let ct = simplify(tbn, to);
                let (bt, b) = (fine.get(to).copied(), coarse.get(&ct).copied());
                let ex = || {
                    format!(
                        "{} -> {}: b^ = {}, b^~ = {}",
                        tbn.render_configuration(&cf),
                        tbn.render_configuration(&ct),
                        show(b),
                        show(bt)
                    )
                };
                // an unreachable target counts as an infinite barrier
                let le = |x: Option<Ratio<i64>>, y: Option<Ratio<i64>>| match (x, y) {
                    (_, None) => true,
                    (None, Some(_)) => false,
                    (Some(x), Some(y)) => x <= y,
                };
                sat_lower.record(le(b, bt.map(|v| v + one)), ex);
                sat_upper.record(le(bt, b), ex);
                sat_proven.record(le(b, bt), ex);
            }
        }
    }
    for t in [lower, upper, coarse_first, lift, sat_lower, sat_upper, sat_proven] {
        t.into_check(&mut rep);
    }
    Ok(rep)
}

/// Runs `moves` from `start`, checking each one.
pub fn replay(tbn: &Tbn, start: &Configuration, moves: &[Move]) -> Result<Path> {
    let mut confs = vec![start.clone()];
    for (k, m) in moves.iter().enumerate() {
        let next = m
            .apply(confs.last().expect("nonempty"))
            .map_err(|e| TbnError::InvalidPath {
                step: k,
                reason: e.to_string(),
            })?;
        confs.push(next);
    }
    Path::new(tbn, confs)
}
