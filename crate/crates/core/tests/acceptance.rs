//! Acceptance run: one PASS/FAIL line per criterion, failing checks listed
//! beneath. Exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;
use tbn_core::enumerate::{all_configurations, small_tbns};
use tbn_core::random::{random_tbn, RandomTbnParams};
use tbn_core::search::{barrier, SearchBudget};
use tbn_core::verify::{self, SuiteReport};
use tbn_core::{BondStrength, Mode, Result};

use common::Oracle;

const SEED: u64 = 20;
const RANDOM_TBNS: usize = 200;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    passed: bool,
    lines: Vec<String>,
}

fn suites(reports: Vec<Result<SuiteReport>>) -> Outcome {
    let mut passed = true;
    let mut lines = Vec::new();
    for r in reports {
        match r {
            Ok(rep) => {
                for c in &rep.checks {
                    passed &= c.passed;
                    let mark = if c.passed { "ok  " } else { "FAIL" };
                    lines.push(format!("{mark} {}: {} {}", rep.suite, c.name, c.detail));
                }
                if rep.budget_hit {
                    passed = false;
                    lines.push(format!("FAIL {}: search budget exhausted", rep.suite));
                }
            }
            Err(e) => {
                passed = false;
                lines.push(format!("FAIL error: {e}"));
            }
        }
    }
    Outcome { passed, lines }
}

fn w(p: i64, q: i64) -> BondStrength {
    BondStrength::new(p, q).expect("positive bond strength")
}

fn oracle_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let budget = SearchBudget::unlimited();
    let (mut pairs, mut mismatches, mut first) = (0u64, 0u64, None);
    let mut enumeration_ok = true;
    for _ in 0..RANDOM_TBNS {
        let tbn = random_tbn(&mut rng, &RandomTbnParams::default());
        for w in [w(1, 1), w(2, 1), w(5, 2)] {
            let oracle = Oracle::new(&tbn, w);
            enumeration_ok &= all_configurations(&tbn).len() == oracle.configurations.len();
            for from in &oracle.configurations {
                for to in &oracle.configurations {
                    for mode in [Mode::All, Mode::SaturatedOnly] {
                        let sat = mode == Mode::SaturatedOnly;
                        if sat && !(oracle.is_saturated(from) && oracle.is_saturated(to)) {
                            continue;
                        }
                        pairs += 1;
                        let got = barrier(&tbn, from, to, w, mode, &budget).map(|r| r.barrier());
                        let want = oracle.barrier(from, to, sat);
                        if got.as_ref().ok() != Some(&want) {
                            mismatches += 1;
                            first.get_or_insert_with(|| {
                                format!(
                                    "w={w} {mode:?} {} -> {}: search {got:?}, oracle {want:?}",
                                    tbn.render_configuration(from),
                                    tbn.render_configuration(to)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    let mut lines = vec![format!("{pairs} pairs, {mismatches} mismatches")];
    lines.extend(first);
    if !enumeration_ok {
        lines.push("FAIL configuration counts differ from the brute-force enumeration".into());
    }
    Outcome {
        passed: mismatches == 0 && enumeration_ok,
        lines,
    }
}

fn main() -> ExitCode {
    let budget = SearchBudget::unlimited();
    let two = w(2, 1);
    let criteria: Vec<Criterion> = vec![
        (
            "grid barrier is n",
            Box::new(|| {
                suites(vec![
                    verify::grid_barrier(2, two, &budget),
                    verify::grid_barrier(3, two, &budget),
                ])
            }),
        ),
        (
            "catalyzed grid barrier is 1",
            Box::new(|| {
                suites(vec![
                    verify::grid_catalyzed(2, 1, two, &budget),
                    verify::grid_catalyzed(3, 1, two, &budget),
                ])
            }),
        ),
        (
            "autocatalytic grid",
            Box::new(|| suites(vec![verify::grid_autocatalytic(2, two, &budget)])),
        ),
        (
            "grid self-stabilization",
            Box::new(|| suites(vec![verify::grid_self_stabilize(2)])),
        ),
        (
            "grid stability with catalysts",
            Box::new(|| suites((0..=2).map(|m| verify::grid_stability(2, m, two, &budget)).collect())),
        ),
        (
            "translator catalyzed path",
            Box::new(|| {
                suites(vec![
                    verify::translator_catalyzed(2, 4, two, &budget),
                    verify::translator_catalyzed(3, 5, two, &budget),
                ])
            }),
        ),
        (
            "translator cheat path",
            Box::new(|| suites(vec![verify::translator_cheat(3, 9, two)])),
        ),
        (
            "translator barrier lower bound",
            Box::new(|| suites(vec![verify::translator_barrier(2, two, &budget)])),
        ),
        (
            "saturated-path equivalence",
            Box::new(|| {
                suites(vec![
                    verify::saturated_equivalence(RANDOM_TBNS, SEED, &[two, w(5, 2)]),
                    verify::tightness(&budget),
                ])
            }),
        ),
        (
            "path-saturation bound",
            Box::new(|| {
                suites(vec![verify::path_saturation(
                    &small_tbns(4, 6, 2),
                    6,
                    &[w(1, 1), w(3, 2), two],
                )])
            }),
        ),
        (
            "bond-model sandwich",
            Box::new(|| {
                let tbns = small_tbns(4, 6, 2);
                suites(vec![
                    verify::bond_sandwich(&tbns, two),
                    verify::bond_sandwich(&tbns, w(3, 2)),
                ])
            }),
        ),
        (
            "translator offset properties",
            Box::new(|| suites(vec![verify::translator_offset(2), verify::translator_offset_local(5)])),
        ),
        ("oracle equivalence", Box::new(oracle_equivalence)),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let mark = if out.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {mark} {title} ({:.1?})", k + 1, start.elapsed());
        for l in &out.lines {
            println!("    {l}");
        }
        if !out.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
