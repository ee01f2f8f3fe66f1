//! Parametrized families: the translator cycle and the grid gate.

mod grid;
mod offset;
mod translator;

pub use grid::{gen_grid, grid_catalyzed_path, Grid, GridSpec};
pub use offset::{
    configuration_offset, exposed_size_check, is_normal_form, n_prime, offset_diagnostics, pair_offset,
    perfect_matchings, OffsetDiagnostics,
};
pub use translator::{gen_translator, translator_catalyzed_path, translator_cheat_path, Translator, TranslatorSpec};

use crate::error::{Result, TbnError};
use crate::kinetics::Path;
use crate::model::{Configuration, Polymer, Tbn};

/// Records a path as explicit merges and splits of blocks given by their
/// member types.
pub(crate) struct PathBuilder<'a> {
    tbn: &'a Tbn,
    blocks: Vec<Vec<usize>>,
    configurations: Vec<Configuration>,
}

impl<'a> PathBuilder<'a> {
    pub(crate) fn new(tbn: &'a Tbn, blocks: Vec<Vec<usize>>) -> Self {
        let mut b = Self {
            tbn,
            blocks: blocks.into_iter().map(sorted).collect(),
            configurations: Vec::new(),
        };
        b.configurations.push(b.current());
        b
    }

    pub(crate) fn current(&self) -> Configuration {
        blocks_to_configuration(self.tbn, &self.blocks)
    }

    fn position(&self, members: &[usize], skip: Option<usize>) -> Result<usize> {
        let want = sorted(members.to_vec());
        (0..self.blocks.len())
            .find(|&k| Some(k) != skip && self.blocks[k] == want)
            .ok_or_else(|| TbnError::Domain(format!("no polymer with members {want:?}")))
    }

    pub(crate) fn merge(&mut self, a: &[usize], b: &[usize]) -> Result<()> {
        let i = self.position(a, None)?;
        let j = self.position(b, Some(i))?;
        let moved = self.blocks.remove(j);
        let i = if j < i { i - 1 } else { i };
        self.blocks[i].extend(moved);
        self.blocks[i].sort_unstable();
        self.configurations.push(self.current());
        Ok(())
    }

    pub(crate) fn split(&mut self, whole: &[usize], part: &[usize]) -> Result<()> {
        let i = self.position(whole, None)?;
        let mut rest = self.blocks[i].clone();
        for t in part {
            let k = rest
                .iter()
                .position(|x| x == t)
                .ok_or_else(|| TbnError::Domain("split part is not contained in the polymer".into()))?;
            rest.remove(k);
        }
        if rest.is_empty() || part.is_empty() {
            return Err(TbnError::Domain("split must be proper".into()));
        }
        self.blocks[i] = rest;
        self.blocks.push(sorted(part.to_vec()));
        self.configurations.push(self.current());
        Ok(())
    }

    pub(crate) fn finish(self) -> Result<Path> {
        Path::new(self.tbn, self.configurations)
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

pub(crate) fn blocks_to_configuration(tbn: &Tbn, blocks: &[Vec<usize>]) -> Configuration {
    Configuration::from_polymers(
        blocks
            .iter()
            .map(|b| {
                let mut counts = vec![0u32; tbn.type_count()];
                for &t in b {
                    counts[t] += 1;
                }
                Polymer::from_counts_unchecked(counts)
            })
            .collect(),
    )
}
