//! Benchmark fixtures. The benchmarks live in `benches/`.

use tbn_core::constructions::{gen_grid, gen_translator, GridSpec, TranslatorSpec};
use tbn_core::{Configuration, Tbn};

/// Single-copy `n x n` grid with its two base configurations.
pub fn grid(n: usize, catalysts: u32) -> (Tbn, Configuration, Configuration) {
    let g = gen_grid(&GridSpec::single(n).with_catalysts(catalysts)).expect("valid grid");
    let h = g.configuration("base_H").expect("base_H").clone();
    let v = g.configuration("base_V").expect("base_V").clone();
    (g.tbn, h, v)
}

/// A `(z, c)` translator with its initial and triggered configurations.
pub fn translator(z: usize, c: usize, catalysts: u32) -> (Tbn, Configuration, Configuration) {
    let t = gen_translator(&TranslatorSpec::single(z, c).with_catalysts(catalysts)).expect("valid translator");
    (t.tbn, t.initial, t.triggered)
}
