use std::io::Read;
use std::path::Path as FsPath;
use std::time::Duration;

use num_rational::Ratio;
use serde_json::{json, Value};
use tbn_core::bond::{bond_barrier, bond_energy, is_bond_saturated, lift_max, BondConfiguration, BondMode};
use tbn_core::constructions::{gen_grid, gen_translator, GridSpec, TranslatorSpec};
use tbn_core::gibbs::{gibbs_energy, PhysicalParams};
use tbn_core::kinetics::height;
use tbn_core::report::{
    bond_configuration_json, configuration_json, configuration_summary, path_from_json, path_json, ratio_string, Report,
};
use tbn_core::search::{barrier, stable_configurations, BarrierOutcome, SearchBudget};
use tbn_core::{parse_tbn, render_tbn, BondStrength, Configuration, Mode, Result, Tbn, TbnDocument, TbnError};

use crate::{BarrierArgs, BudgetArgs, Command, ConfArgs, EnergyArgs, GenCommand, Outcome, PathArgs, StableArgs};

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Energy(a) => energy(a),
        Command::Saturated(a) => saturated(a),
        Command::Stable(a) => stable(a),
        Command::Barrier(a) => barrier_cmd(a),
        Command::Path(a) => path_cmd(a),
        Command::Gen(g) => gen(g),
        Command::Verify(a) => crate::suites::verify(a),
    }
}

pub fn read_input(path: &FsPath) -> Result<String> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| TbnError::Domain(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn read_document(path: &FsPath) -> Result<TbnDocument> {
    parse_tbn(&read_input(path)?)
}

pub fn strength(arg: &Option<String>, doc: Option<BondStrength>) -> Result<BondStrength> {
    match arg {
        Some(s) => BondStrength::parse(s),
        None => {
            doc.ok_or_else(|| TbnError::Domain("no bond strength: pass --w or set `w = ...` in the document".into()))
        }
    }
}

pub fn budget(a: &BudgetArgs) -> Result<SearchBudget> {
    let timeout = match a.timeout {
        Some(t) if !(t > 0.0 && t.is_finite()) => {
            return Err(TbnError::Domain(format!(
                "timeout must be a positive number of seconds, got {t}"
            )))
        }
        t => t.map(Duration::from_secs_f64),
    };
    Ok(SearchBudget {
        max_states: a.max_states,
        max_polymer_size: None,
        timeout,
    })
}

fn ok(report: Report, text: String) -> Outcome {
    Outcome { report, text, code: 0 }
}

fn named(doc: &TbnDocument, a: &ConfArgs) -> Result<Configuration> {
    doc.configuration(&a.conf).cloned()
}

fn energy(a: &EnergyArgs) -> Result<Outcome> {
    let doc = read_document(&a.conf.file)?;
    let w = strength(&a.w, doc.w)?;
    let c = named(&doc, &a.conf)?;
    let t = &doc.tbn;
    let mut result = configuration_summary(t, &c, Some(w));
    let e = t.energy(&c);
    let mut text = format!(
        "energy {} (bonds {}, polymers {})\n",
        ratio_string(e.value(w)),
        e.bonds,
        e.polymers
    );
    if a.gibbs {
        let p = PhysicalParams {
            l: a.length,
            conc: a.conc,
            temp: a.temp,
            ..PhysicalParams::default()
        };
        let g = gibbs_energy(t, &c, &p)?;
        result["gibbs_kcal_per_mol"] = json!(g);
        text.push_str(&format!("gibbs {g:.4} kcal/mol\n"));
    }
    Ok(ok(Report::new("energy", t, Some(w), result), text))
}

fn saturated(a: &ConfArgs) -> Result<Outcome> {
    let doc = read_document(&a.file)?;
    let c = named(&doc, a)?;
    let t = &doc.tbn;
    let (sat, bonds, max) = (t.is_saturated(&c), t.bonds(&c), t.max_bonds());
    let result = json!({"saturated": sat, "bonds": bonds, "max_bonds": max});
    let text = if sat {
        format!("saturated ({bonds} bonds)\n")
    } else {
        format!("not saturated ({bonds} of {max} bonds)\n")
    };
    Ok(ok(Report::new("saturated", t, doc.w, result), text))
}

fn stable(a: &StableArgs) -> Result<Outcome> {
    let doc = read_document(&a.file)?;
    let w = strength(&a.w, doc.w)?;
    let t = &doc.tbn;
    let r = stable_configurations(t, w, &budget(&a.budget)?);
    let result = json!({
        "max_s": r.max_s,
        "s_upper_bound": r.s_upper_bound,
        "bonds": r.bonds,
        "energy": ratio_string(r.energy),
        "complete": r.complete,
        "stable": r.stable.iter().map(|c| configuration_json(t, c)).collect::<Vec<_>>(),
    });
    let mut text = if r.complete {
        format!(
            "{} stable configurations, S = {}, energy {}\n",
            r.stable.len(),
            r.max_s,
            ratio_string(r.energy)
        )
    } else {
        format!(
            "budget exhausted: S between {} and {}; best found below\n",
            r.max_s, r.s_upper_bound
        )
    };
    for c in &r.stable {
        text.push_str(&format!("  {}\n", t.render_configuration(c)));
    }
    let report = Report::new("stable", t, Some(w), result).with_explored(r.explored, !r.complete);
    Ok(Outcome {
        report,
        text,
        code: if r.complete { 0 } else { 3 },
    })
}

fn outcome_json(outcome: &BarrierOutcome) -> (Value, String, u8) {
    match outcome {
        BarrierOutcome::Exact(b) => (
            json!({"barrier": ratio_string(*b), "unreachable": false}),
            format!("barrier {}\n", ratio_string(*b)),
            0,
        ),
        BarrierOutcome::Unreachable => (json!({"barrier": null, "unreachable": true}), "unreachable\n".into(), 1),
        BarrierOutcome::BudgetExhausted { lower_bound } => (
            json!({"barrier": null, "unreachable": false, "lower_bound": ratio_string(*lower_bound)}),
            format!("budget exhausted: barrier >= {}\n", ratio_string(*lower_bound)),
            3,
        ),
    }
}

fn unreachable(command: &str, t: &Tbn, w: BondStrength, reason: &str) -> Outcome {
    let report = Report::new(
        command,
        t,
        Some(w),
        json!({"barrier": null, "unreachable": true, "reason": reason}),
    );
    Outcome {
        report,
        text: format!("unreachable: {reason}\n"),
        code: 1,
    }
}

fn barrier_cmd(a: &BarrierArgs) -> Result<Outcome> {
    let doc = read_document(&a.file)?;
    let w = strength(&a.w, doc.w)?;
    let t = &doc.tbn;
    let from = doc.configuration(&a.from)?;
    let to = doc.configuration(&a.to)?;
    let mut budget = budget(&a.budget)?;
    budget.max_polymer_size = a.max_polymer_size;
    if a.saturated {
        for (name, c) in [(&a.from, from), (&a.to, to)] {
            if !t.is_saturated(c) {
                return Ok(unreachable("barrier", t, w, &format!("`{name}` is not saturated")));
            }
        }
    }
    if a.bond_aware {
        return bond_barrier_cmd(a, t, from, to, w, &budget);
    }
    let mode = if a.saturated { Mode::SaturatedOnly } else { Mode::All };
    let r = barrier(t, from, to, w, mode, &budget)?;
    let (mut result, mut text, code) = outcome_json(&r.outcome);
    result["mode"] = json!(if a.saturated { "saturated" } else { "all" });
    result["bond_aware"] = json!(false);
    result["upper_bound_only"] = json!(r.upper_bound_only);
    if r.upper_bound_only {
        text.push_str("(polymer size capped: the value is an upper bound)\n");
    }
    let witness = r.witness.as_ref().map(|p| {
        for c in p.configurations() {
            text.push_str(&format!(
                "  {:>6}  {}\n",
                ratio_string(t.energy(c).value(w)),
                t.render_configuration(c)
            ));
        }
        path_json(t, p, w)
    });
    let report = Report::new("barrier", t, Some(w), result)
        .with_witness(witness)
        .with_explored(r.explored, r.budget_hit());
    Ok(Outcome { report, text, code })
}

fn render_bond(t: &Tbn, bc: &BondConfiguration) -> String {
    let polymers: Vec<String> = bc
        .polymers()
        .iter()
        .map(|p| {
            let names: Vec<String> = p.members().iter().map(|&m| t.label(m)).collect();
            format!("{{{}}}[{}]", names.join(" "), p.bond_count())
        })
        .collect();
    polymers.join(" ")
}

fn bond_barrier_cmd(
    a: &BarrierArgs,
    t: &Tbn,
    from: &Configuration,
    to: &Configuration,
    w: BondStrength,
    budget: &SearchBudget,
) -> Result<Outcome> {
    if a.max_polymer_size.is_some() {
        return Err(TbnError::Domain(
            "--max-polymer-size applies to polymer configurations only".into(),
        ));
    }
    let (bf, bt) = (lift_max(t, from), lift_max(t, to));
    let mode = if a.saturated { BondMode::NO_BREAK } else { BondMode::ALL };
    if a.saturated && !(is_bond_saturated(t, &bf) && is_bond_saturated(t, &bt)) {
        return Ok(unreachable("barrier", t, w, "endpoints are not bond-saturated"));
    }
    let r = bond_barrier(t, &bf, &bt, w, mode, budget, a.force)?;
    let (mut result, mut text, code) = outcome_json(&r.outcome);
    result["mode"] = json!(if a.saturated { "saturated" } else { "all" });
    result["bond_aware"] = json!(true);
    result["upper_bound_only"] = json!(false);
    let witness = r.witness.as_ref().map(|states| {
        let start = bond_energy(&states[0], w);
        let energies: Vec<Ratio<i64>> = states.iter().map(|s| bond_energy(s, w)).collect();
        for (s, e) in states.iter().zip(&energies) {
            text.push_str(&format!("  {:>6}  {}\n", ratio_string(*e), render_bond(t, s)));
        }
        let top = energies.iter().copied().max().unwrap_or(start);
        json!({
            "configurations": states.iter().map(|s| bond_configuration_json(t, s)).collect::<Vec<_>>(),
            "energies": energies.iter().map(|e| ratio_string(*e)).collect::<Vec<_>>(),
            "height": ratio_string(top - start),
        })
    });
    let budget_hit = matches!(r.outcome, BarrierOutcome::BudgetExhausted { .. });
    let report = Report::new("barrier", t, Some(w), result)
        .with_witness(witness)
        .with_explored(r.explored, budget_hit);
    Ok(Outcome { report, text, code })
}

fn path_cmd(a: &PathArgs) -> Result<Outcome> {
    if a.file.as_os_str() == "-" && a.path.as_os_str() == "-" {
        return Err(TbnError::Domain(
            "only one of FILE and --path can be read from standard input".into(),
        ));
    }
    let doc = read_document(&a.file)?;
    let t = &doc.tbn;
    let w = match &a.w {
        Some(_) => Some(strength(&a.w, None)?),
        None => doc.w,
    };
    let value: Value = serde_json::from_str(&read_input(&a.path)?).map_err(|e| TbnError::Json(e.to_string()))?;
    match path_from_json(t, &value) {
        Ok(p) => {
            let mut result = json!({
                "valid": true,
                "moves": p.len(),
                "saturated": p.is_saturated(t),
            });
            let mut text = format!(
                "valid path of {} moves, {}\n",
                p.len(),
                if p.is_saturated(t) {
                    "saturated"
                } else {
                    "not saturated"
                }
            );
            if let Some(w) = w {
                let h = height(t, &p, w);
                result["height"] = json!(ratio_string(h));
                text.push_str(&format!("height {}\n", ratio_string(h)));
            }
            let witness = w.map(|w| path_json(t, &p, w));
            Ok(ok(Report::new("path", t, w, result).with_witness(witness), text))
        }
        Err(e @ (TbnError::InvalidPath { .. } | TbnError::InvalidMove(_) | TbnError::NotPartition(_))) => {
            let result = json!({"valid": false, "error": e.to_string()});
            Ok(Outcome {
                report: Report::new("path", t, w, result),
                text: format!("invalid path: {e}\n"),
                code: 1,
            })
        }
        Err(e) => Err(e),
    }
}

fn gen(g: &GenCommand) -> Result<Outcome> {
    let (doc, command) = match g {
        GenCommand::Translator { z, c, catalysts, w } => {
            let tr = gen_translator(&TranslatorSpec::single(*z, *c).with_catalysts(*catalysts))?;
            let mut doc = TbnDocument::new(tr.tbn.clone());
            doc.configurations = vec![
                ("initial".into(), tr.initial.clone()),
                ("triggered".into(), tr.triggered.clone()),
            ];
            doc.w = w.as_ref().map(|s| BondStrength::parse(s)).transpose()?;
            (doc, "gen translator")
        }
        GenCommand::Grid { n, catalysts, auto, w } => {
            let spec = if *auto {
                if *catalysts > 0 {
                    return Err(TbnError::Spec(
                        "the autocatalytic grid takes no separate catalysts".into(),
                    ));
                }
                GridSpec::autocatalytic(*n)
            } else {
                GridSpec::single(*n).with_catalysts(*catalysts)
            };
            let grid = gen_grid(&spec)?;
            let mut doc = TbnDocument::new(grid.tbn.clone());
            doc.configurations = grid.configurations.clone();
            doc.w = w.as_ref().map(|s| BondStrength::parse(s)).transpose()?;
            (doc, "gen grid")
        }
    };
    let text = render_tbn(&doc);
    let names: Vec<&str> = doc.configurations.iter().map(|(n, _)| n.as_str()).collect();
    let result = json!({"document": text, "configurations": names});
    Ok(ok(Report::new(command, &doc.tbn, doc.w, result), text))
}
