//! JSON result objects.
//!
//! Every result carries `command`, `tbn_hash`, `w` (as `"p/q"`), `result`,
//! an optional `witness`, `explored` (a string, since state counts may exceed
//! 53 bits) and `budget_hit`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bond::BondConfiguration;
use crate::error::{Result, TbnError};
use crate::kinetics::{height, Move, Path};
use crate::model::{BondStrength, Configuration, Polymer, Tbn};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub tbn_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub explored: String,
    pub budget_hit: bool,
}

impl Report {
    pub fn new(command: &str, tbn: &Tbn, w: Option<BondStrength>, result: Value) -> Self {
        Self {
            command: command.to_string(),
            tbn_hash: tbn_hash(tbn),
            w: w.map(|w| w.fraction_string()),
            result,
            witness: None,
            explored: "0".into(),
            budget_hit: false,
        }
    }

    /// A report not tied to one TBN; `tbn_hash` is the hash of empty input.
    pub fn unhashed(command: &str, w: Option<BondStrength>, result: Value) -> Self {
        Self {
            command: command.to_string(),
            tbn_hash: empty_hash(),
            w: w.map(|w| w.fraction_string()),
            result,
            witness: None,
            explored: "0".into(),
            budget_hit: false,
        }
    }

    pub fn with_witness(mut self, witness: Option<Value>) -> Self {
        self.witness = witness;
        self
    }

    pub fn with_explored(mut self, explored: u64, budget_hit: bool) -> Self {
        self.explored = explored.to_string();
        self.budget_hit = budget_hit;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// SHA-256 over the canonical site encoding of the monomer types and counts.
pub fn tbn_hash(tbn: &Tbn) -> String {
    let mut h = Sha256::new();
    for (m, c) in tbn.types().iter().zip(tbn.counts()) {
        h.update(format!("{c}x({});", m.sites_string()).as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Hash used by reports that cover no single TBN.
pub fn empty_hash() -> String {
    Sha256::digest(b"").iter().map(|b| format!("{b:02x}")).collect()
}

/// `"p/q"`, or `"p"` for integers.
pub fn ratio_string(r: Ratio<i64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let bad = || TbnError::Json(format!("expected a fraction string, got `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (i64, i64) = (
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            );
            if q == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(p, q))
        }
        None => Ok(Ratio::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn polymer_json(tbn: &Tbn, p: &Polymer) -> Value {
    json!(p.members().into_iter().map(|t| tbn.label(t)).collect::<Vec<_>>())
}

/// A configuration as a list of polymers, each a list of monomer names.
pub fn configuration_json(tbn: &Tbn, c: &Configuration) -> Value {
    json!(c.polymers().iter().map(|p| polymer_json(tbn, p)).collect::<Vec<_>>())
}

pub fn configuration_summary(tbn: &Tbn, c: &Configuration, w: Option<BondStrength>) -> Value {
    let e = tbn.energy(c);
    let mut v = json!({
        "polymers": configuration_json(tbn, c),
        "bonds": e.bonds,
        "polymer_count": e.polymers,
        "saturated": tbn.is_saturated(c),
    });
    if let Some(w) = w {
        v["energy"] = json!(ratio_string(e.value(w)));
    }
    v
}

/// A move, with polymers resolved against the configuration it applies to.
fn move_json(tbn: &Tbn, before: &Configuration, m: &Move) -> Value {
    let ps = before.polymers();
    match m {
        Move::Merge { first, second } => json!({
            "kind": "merge",
            "first": polymer_json(tbn, &ps[*first]),
            "second": polymer_json(tbn, &ps[*second]),
        }),
        Move::Split { polymer, part } => json!({
            "kind": "split",
            "whole": polymer_json(tbn, &ps[*polymer]),
            "part": polymer_json(tbn, part),
        }),
    }
}

/// Configurations, moves, energies and height of a path.
pub fn path_json(tbn: &Tbn, path: &Path, w: BondStrength) -> Value {
    json!({
        "configurations": path.configurations().iter().map(|c| configuration_json(tbn, c)).collect::<Vec<_>>(),
        "moves": path
            .moves()
            .iter()
            .zip(path.configurations())
            .map(|(m, c)| move_json(tbn, c, m))
            .collect::<Vec<_>>(),
        "energies": path
            .configurations()
            .iter()
            .map(|c| ratio_string(tbn.energy(c).value(w)))
            .collect::<Vec<_>>(),
        "height": ratio_string(height(tbn, path, w)),
    })
}

/// Reads a configuration written by [`configuration_json`].
pub fn configuration_from_json(tbn: &Tbn, v: &Value) -> Result<Configuration> {
    let polymers = v
        .as_array()
        .ok_or_else(|| TbnError::Json("a configuration is a list of polymers".into()))?;
    let mut out = Vec::new();
    for p in polymers {
        let names = p
            .as_array()
            .ok_or_else(|| TbnError::Json("a polymer is a list of monomer names".into()))?;
        let labels: Vec<&str> = names
            .iter()
            .map(|n| {
                n.as_str()
                    .ok_or_else(|| TbnError::Json("monomer names are strings".into()))
            })
            .collect::<Result<_>>()?;
        out.push(tbn.polymer_of_labels(&labels)?);
    }
    let c = Configuration::from_polymers(out);
    tbn.validate(&c)?;
    Ok(c)
}

/// Reads a path from a `{"configurations": [...]}` object, or from a report
/// whose `witness` is one.
pub fn path_from_json(tbn: &Tbn, v: &Value) -> Result<Path> {
    let obj = match v.get("witness") {
        Some(w) if !w.is_null() => w,
        _ => v,
    };
    let confs = obj
        .get("configurations")
        .and_then(Value::as_array)
        .ok_or_else(|| TbnError::Json("missing `configurations` list".into()))?;
    let configurations = confs
        .iter()
        .map(|c| configuration_from_json(tbn, c))
        .collect::<Result<Vec<_>>>()?;
    Path::new(tbn, configurations)
}

/// A bond configuration: polymers as monomer names plus one entry per bond,
/// naming the bonded members by their position in the polymer.
pub fn bond_configuration_json(tbn: &Tbn, bc: &BondConfiguration) -> Value {
    let polymers: Vec<Value> = bc
        .polymers()
        .iter()
        .map(|p| json!(p.members().iter().map(|&t| tbn.label(t)).collect::<Vec<_>>()))
        .collect();
    let bonds: Vec<Value> = bc
        .bond_list()
        .into_iter()
        .map(|(k, u, s, name)| {
            let site = &tbn.site_names()[name];
            json!({"polymer": k, "pair": [[u, site], [s, format!("{site}*")]]})
        })
        .collect();
    json!({"polymers": polymers, "bonds": bonds})
}
