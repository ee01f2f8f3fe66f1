use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::json;
use tbn_core::constructions::{gen_grid, gen_translator, GridSpec, TranslatorSpec};
use tbn_core::enumerate::small_tbns;
use tbn_core::report::{tbn_hash, Report};
use tbn_core::search::SearchBudget;
use tbn_core::verify::{self, SuiteReport};
use tbn_core::{BondStrength, Result, TbnError};

use crate::commands::{budget, strength};
use crate::{Outcome, VerifyArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    GridBarrier,
    GridCatalyzed,
    GridAutocatalytic,
    GridSelfStabilize,
    GridStability,
    TranslatorCatalyzed,
    TranslatorCheat,
    TranslatorBarrier,
    TranslatorOffset,
    TranslatorOffsetLocal,
    SaturatedEquivalence,
    Tightness,
    PathSaturation,
    BondSandwich,
    /// Every suite above at its default parameters.
    All,
}

const DEFAULT_SEED: u64 = 20;

fn ratio(p: i64, q: i64) -> BondStrength {
    BondStrength::new(p, q).expect("valid default bond strength")
}

fn run_one(suite: Suite, a: &VerifyArgs, b: &SearchBudget) -> Result<SuiteReport> {
    let w = match &a.w {
        Some(_) => Some(strength(&a.w, None)?),
        None => None,
    };
    let two = w.unwrap_or(BondStrength::integer(2));
    let n = a.n.unwrap_or(2);
    let m = a.m;
    match suite {
        Suite::GridBarrier => verify::grid_barrier(n, two, b),
        Suite::GridCatalyzed => verify::grid_catalyzed(n, m.unwrap_or(1), two, b),
        Suite::GridAutocatalytic => verify::grid_autocatalytic(n, two, b),
        Suite::GridSelfStabilize => verify::grid_self_stabilize(n),
        Suite::GridStability => verify::grid_stability(n, m.unwrap_or(0), two, b),
        Suite::TranslatorCatalyzed => verify::translator_catalyzed(a.z.unwrap_or(2), a.c.unwrap_or(4), two, b),
        Suite::TranslatorCheat => verify::translator_cheat(a.z.unwrap_or(3), a.c.unwrap_or(9), two),
        Suite::TranslatorBarrier => verify::translator_barrier(n, two, b),
        Suite::TranslatorOffset => verify::translator_offset(n),
        Suite::TranslatorOffsetLocal => verify::translator_offset_local(a.n.unwrap_or(5)),
        Suite::SaturatedEquivalence => {
            let ws = w.map_or_else(|| vec![two, ratio(5, 2)], |w| vec![w]);
            verify::saturated_equivalence(a.count.unwrap_or(200), a.seed.unwrap_or(DEFAULT_SEED), &ws)
        }
        Suite::Tightness => verify::tightness(b),
        Suite::PathSaturation => {
            let ws = w.map_or_else(|| vec![ratio(1, 1), ratio(3, 2), two], |w| vec![w]);
            verify::path_saturation(&small_tbns(4, 6, 2), a.max_len.unwrap_or(6), &ws)
        }
        Suite::BondSandwich => verify::bond_sandwich(&small_tbns(4, 6, 2), two),
        Suite::All => Err(TbnError::Domain("`all` is not a single suite".into())),
    }
}

/// The TBN a construction suite is about, for the report hash.
fn construction_hash(suite: Suite, a: &VerifyArgs) -> Option<String> {
    let n = a.n.unwrap_or(2);
    let grid = |spec: GridSpec| gen_grid(&spec).ok().map(|g| tbn_hash(&g.tbn));
    let translator = |spec: TranslatorSpec| gen_translator(&spec).ok().map(|t| tbn_hash(&t.tbn));
    match suite {
        Suite::GridBarrier | Suite::GridSelfStabilize => grid(GridSpec::single(n)),
        Suite::GridCatalyzed => grid(GridSpec::single(n).with_catalysts(a.m.unwrap_or(1))),
        Suite::GridStability => grid(GridSpec::single(n).with_catalysts(a.m.unwrap_or(0))),
        Suite::GridAutocatalytic => grid(GridSpec::autocatalytic(n)),
        Suite::TranslatorCatalyzed => {
            translator(TranslatorSpec::single(a.z.unwrap_or(2), a.c.unwrap_or(4)).with_catalysts(1))
        }
        Suite::TranslatorCheat => translator(TranslatorSpec::single(a.z.unwrap_or(3), a.c.unwrap_or(9))),
        Suite::TranslatorBarrier | Suite::TranslatorOffset => translator(TranslatorSpec::single(n, n * n)),
        _ => None,
    }
}

fn render(rep: &SuiteReport) -> String {
    let mut text = format!("{} {}\n", if rep.passed() { "PASS" } else { "FAIL" }, rep.suite);
    for c in &rep.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        text.push_str(&format!("  {mark} {}", c.name));
        if !c.detail.is_empty() {
            text.push_str(&format!(": {}", c.detail));
        }
        text.push('\n');
    }
    if rep.budget_hit {
        text.push_str("  search budget exhausted\n");
    }
    text
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let b = budget(&a.budget)?;
    let suites: Vec<Suite> = if a.suite == Suite::All {
        Suite::value_variants()
            .iter()
            .copied()
            .filter(|&s| s != Suite::All)
            .collect()
    } else {
        vec![a.suite]
    };
    let reports: Vec<SuiteReport> = suites
        .par_iter()
        .map(|&s| run_one(s, a, &b))
        .collect::<Result<Vec<_>>>()?;
    let passed = reports.iter().all(SuiteReport::passed);
    let budget_hit = reports.iter().any(|r| r.budget_hit);
    let explored = reports.iter().map(|r| r.explored).sum();
    let text: String = reports.iter().map(render).collect();
    let result = json!({
        "passed": passed,
        "suites": reports,
    });
    let w = a.w.as_ref().map(|_| strength(&a.w, None)).transpose()?;
    let mut report = Report::unhashed("verify", w, result).with_explored(explored, budget_hit);
    if suites.len() == 1 {
        if let Some(h) = construction_hash(suites[0], a) {
            report.tbn_hash = h;
        }
    }
    let code = if budget_hit {
        3
    } else if passed {
        0
    } else {
        1
    };
    Ok(Outcome { report, text, code })
}
