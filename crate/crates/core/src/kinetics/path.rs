use num_rational::Ratio;

use super::{relate, Move};
use crate::error::{Result, TbnError};
use crate::model::{BondStrength, Configuration, Tbn};

/// A nonempty sequence of configurations, each one move from the next.
///
/// Paths keep full canonical configurations so that a path can be
/// re-validated and its height recomputed without any other context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    configurations: Vec<Configuration>,
    moves: Vec<Move>,
}

impl Path {
    pub fn single(c: Configuration) -> Self {
        Self {
            configurations: vec![c],
            moves: Vec::new(),
        }
    }

    /// Validates each configuration against `tbn` and each adjacent pair as
    /// exactly one merge or split. Repeated configurations (no-op steps) are
    /// rejected.
    pub fn new(tbn: &Tbn, configurations: Vec<Configuration>) -> Result<Self> {
        if configurations.is_empty() {
            return Err(TbnError::InvalidPath {
                step: 0,
                reason: "a path needs at least one configuration".into(),
            });
        }
        for (k, c) in configurations.iter().enumerate() {
            tbn.validate(c).map_err(|e| TbnError::InvalidPath {
                step: k,
                reason: e.to_string(),
            })?;
        }
        let mut moves = Vec::with_capacity(configurations.len() - 1);
        for (k, pair) in configurations.windows(2).enumerate() {
            let m = relate(&pair[0], &pair[1]).ok_or_else(|| TbnError::InvalidPath {
                step: k + 1,
                reason: "not one merge or split from the previous configuration".into(),
            })?;
            moves.push(m);
        }
        Ok(Self { configurations, moves })
    }

    pub fn configurations(&self) -> &[Configuration] {
        &self.configurations
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn start(&self) -> &Configuration {
        &self.configurations[0]
    }

    pub fn end(&self) -> &Configuration {
        self.configurations.last().expect("nonempty path")
    }

    /// Number of moves.
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn reversed(&self) -> Path {
        let configurations: Vec<Configuration> = self.configurations.iter().rev().cloned().collect();
        let moves = configurations
            .windows(2)
            .map(|p| relate(&p[0], &p[1]).expect("reverse of a valid step"))
            .collect();
        Path { configurations, moves }
    }

    pub fn is_saturated(&self, tbn: &Tbn) -> bool {
        self.configurations.iter().all(|c| tbn.is_saturated(c))
    }

    /// Largest energy along the path.
    pub fn max_energy(&self, tbn: &Tbn, w: BondStrength) -> Ratio<i64> {
        self.configurations
            .iter()
            .map(|c| tbn.energy(c).value(w))
            .max()
            .expect("nonempty path")
    }
}

/// Greatest `E(c) - E(start)` over the path; never negative.
pub fn height(tbn: &Tbn, path: &Path, w: BondStrength) -> Ratio<i64> {
    path.max_energy(tbn, w) - tbn.energy(path.start()).value(w)
}
