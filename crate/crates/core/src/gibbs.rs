//! Physical free energy of a configuration.

use serde::{Deserialize, Serialize};

use crate::error::{Result, TbnError};
use crate::model::{Configuration, Tbn};

/// Gas constant in kcal/(mol K).
pub const R: f64 = 0.0019872;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Domain length in bases.
    pub l: u32,
    /// Strand concentration in mol/L.
    pub conc: f64,
    /// Temperature in kelvin.
    pub temp: f64,
    /// Free energy per base pair, kcal/mol.
    pub dg_bp: f64,
    /// Association penalty, kcal/mol.
    pub dg_assoc: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self {
            l: 10,
            conc: 1.0,
            temp: 298.15,
            dg_bp: -1.5,
            dg_assoc: 1.96,
        }
    }
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        if self.l < 1 {
            return Err(TbnError::Domain("domain length must be at least 1".into()));
        }
        if !(self.conc > 0.0 && self.conc <= 1.0) {
            return Err(TbnError::Domain("concentration must lie in (0, 1] mol/L".into()));
        }
        if self.temp.is_nan() || self.temp <= 0.0 {
            return Err(TbnError::Domain("temperature must be positive".into()));
        }
        Ok(())
    }

    /// Cost of each association: `dG_assoc + RT ln(1/C)`.
    pub fn association(&self) -> f64 {
        self.dg_assoc + R * self.temp * (1.0 / self.conc).ln()
    }
}

/// `(dG_bp * l) H + (dG_assoc + RT ln(1/C)) (|monomers| - S)` in kcal/mol.
pub fn gibbs_energy(tbn: &Tbn, c: &Configuration, p: &PhysicalParams) -> Result<f64> {
    p.validate()?;
    let e = tbn.energy(c);
    let associations = tbn.monomer_count() as f64 - e.polymers as f64;
    Ok(p.dg_bp * p.l as f64 * e.bonds as f64 + p.association() * associations)
}
