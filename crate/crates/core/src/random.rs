//! Small random TBNs for randomized checks.

use rand::Rng;

use crate::model::{Monomer, SiteType, Tbn};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomTbnParams {
    /// Total monomers, counting copies.
    pub max_monomers: usize,
    pub max_names: usize,
    pub max_sites: usize,
}

impl Default for RandomTbnParams {
    fn default() -> Self {
        Self {
            max_monomers: 5,
            max_names: 3,
            max_sites: 3,
        }
    }
}

/// Draws monomers with 1..=`max_sites` sites over at most `max_names` names;
/// identical draws become copies. Labels are `m0`, `m1`, ...
pub fn random_tbn(rng: &mut impl Rng, p: &RandomTbnParams) -> Tbn {
    let monomers = rng.gen_range(2..=p.max_monomers.max(2));
    let names = rng.gen_range(1..=p.max_names.max(1));
    let mut drawn: Vec<Monomer> = Vec::new();
    for _ in 0..monomers {
        let size = rng.gen_range(1..=p.max_sites.max(1));
        let sites = (0..size).map(|_| {
            let name = (b'a' + rng.gen_range(0..names) as u8) as char;
            SiteType::new(name.to_string(), rng.gen_bool(0.5))
        });
        drawn.push(Monomer::new(sites));
    }
    let mut entries: Vec<(Monomer, u32)> = Vec::new();
    for m in drawn {
        match entries.iter_mut().find(|(x, _)| *x == m) {
            Some(e) => e.1 += 1,
            None => entries.push((m, 1)),
        }
    }
    let entries = entries
        .into_iter()
        .enumerate()
        .map(|(k, (m, c))| (m.with_label(format!("m{k}")), c));
    Tbn::new(entries).expect("nonempty random TBN")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn respects_bounds() {
        let mut rng = StdRng::seed_from_u64(7);
        let p = RandomTbnParams::default();
        for _ in 0..200 {
            let t = random_tbn(&mut rng, &p);
            assert!(t.monomer_count() >= 2 && t.monomer_count() <= 5);
            assert!(t.site_names().len() <= 3);
            assert!(t.types().iter().all(|m| m.size() <= 3 && m.label().is_some()));
        }
    }

    #[test]
    fn seeded_is_deterministic() {
        let p = RandomTbnParams::default();
        let a = random_tbn(&mut StdRng::seed_from_u64(1), &p);
        let b = random_tbn(&mut StdRng::seed_from_u64(1), &p);
        assert_eq!(a, b);
    }
}
