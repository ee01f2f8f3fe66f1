//! Exact energy and kinetic-barrier analysis for thermodynamic binding networks.

pub mod bond;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod gibbs;
pub mod kinetics;
pub mod model;
pub mod random;
pub mod report;
pub mod search;
pub mod text;
pub mod verify;

pub use error::{Result, TbnError};
pub use kinetics::{MergeKind, Mode, Move, Path};
pub use model::{BondStrength, Configuration, Energy, Monomer, Polymer, SiteType, Tbn};
pub use text::{parse_tbn, render_tbn, TbnDocument};
