use num_rational::Ratio;
use proptest::prelude::*;
use tbn_core::bond::{
    bond_bottleneck_map, bond_energy, bond_neighbors, lift_max, simplify, unbonded_singletons, BondMode,
};
use tbn_core::enumerate::all_configurations;
use tbn_core::kinetics::{classify_merge, height, neighbors, saturate_path};
use tbn_core::search::{barrier, bottleneck_map, SearchBudget};
use tbn_core::{
    parse_tbn, render_tbn, BondStrength, Configuration, MergeKind, Mode, Monomer, Path, SiteType, Tbn, TbnDocument,
};

fn tbn_strategy(max_monomers: u32) -> impl Strategy<Value = Tbn> {
    let site = (0u8..3, any::<bool>()).prop_map(|(n, s)| SiteType::new(((b'a' + n) as char).to_string(), s));
    let monomer = prop::collection::vec(site, 1..=3).prop_map(Monomer::new);
    prop::collection::vec((monomer, 1u32..=2), 1..=4).prop_filter_map("bounded size", move |entries| {
        let total: u32 = entries.iter().map(|e| e.1).sum();
        if total > max_monomers {
            return None;
        }
        Tbn::new(entries).ok()
    })
}

fn strength() -> impl Strategy<Value = BondStrength> {
    prop_oneof![Just((1, 1)), Just((3, 2)), Just((2, 1)), Just((5, 2))]
        .prop_map(|(p, q)| BondStrength::new(p, q).unwrap())
}

fn pick<T: Clone>(v: &[T], k: usize) -> T {
    v[k % v.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_polymer_order(tbn in tbn_strategy(5), k in any::<usize>()) {
        let c = pick(&all_configurations(&tbn), k);
        let mut ps = c.polymers().to_vec();
        ps.reverse();
        prop_assert_eq!(Configuration::from_polymers(ps), c.clone());
        prop_assert!(tbn.validate(&c).is_ok());
    }

    #[test]
    fn saturated_iff_maximum_bonds(tbn in tbn_strategy(5)) {
        for c in all_configurations(&tbn) {
            prop_assert_eq!(tbn.is_saturated(&c), tbn.bonds(&c) == tbn.max_bonds());
        }
        prop_assert!(tbn.is_saturated(&tbn.whole()));
    }

    #[test]
    fn moves_are_reversible(tbn in tbn_strategy(5), k in any::<usize>()) {
        let c = pick(&all_configurations(&tbn), k);
        for (m, next) in neighbors(&tbn, &c, Mode::All) {
            prop_assert_eq!(m.apply(&c).unwrap(), next.clone());
            prop_assert!(neighbors(&tbn, &next, Mode::All).iter().any(|(_, back)| *back == c));
        }
    }

    #[test]
    fn clean_merges_cost_one(tbn in tbn_strategy(5), k in any::<usize>(), w in strength()) {
        let c = pick(&all_configurations(&tbn), k);
        for (m, next) in neighbors(&tbn, &c, Mode::All) {
            if m.is_merge() {
                let delta = tbn.energy(&next).value(w) - tbn.energy(&c).value(w);
                match classify_merge(&tbn, &c, &m).unwrap() {
                    MergeKind::Clean => prop_assert_eq!(delta, Ratio::from_integer(1)),
                    MergeKind::Bind => prop_assert!(delta <= Ratio::from_integer(1) - w.value()),
                }
            }
        }
    }

    #[test]
    fn barrier_reversal_identity(tbn in tbn_strategy(4), i in any::<usize>(), j in any::<usize>(), w in strength()) {
        let all = all_configurations(&tbn);
        let (a, b) = (pick(&all, i), pick(&all, j));
        let budget = SearchBudget::unlimited();
        let ab = barrier(&tbn, &a, &b, w, Mode::All, &budget).unwrap();
        let ba = barrier(&tbn, &b, &a, w, Mode::All, &budget).unwrap();
        let (ea, eb) = (tbn.energy(&a).value(w), tbn.energy(&b).value(w));
        let (ab, ba) = (ab.barrier().unwrap(), ba.barrier().unwrap());
        prop_assert_eq!(ab + ea, ba + eb);
        prop_assert!(ab >= (eb - ea).max(Ratio::from_integer(0)));
    }

    #[test]
    fn witnesses_replay_to_the_barrier(tbn in tbn_strategy(4), i in any::<usize>(), w in strength()) {
        let all = all_configurations(&tbn);
        let to = pick(&all, i);
        let r = barrier(&tbn, &tbn.singletons(), &to, w, Mode::All, &SearchBudget::unlimited()).unwrap();
        let p = r.witness.clone().unwrap();
        prop_assert_eq!(p.end(), &to);
        prop_assert!(Path::new(&tbn, p.configurations().to_vec()).is_ok());
        prop_assert_eq!(Some(height(&tbn, &p, w)), r.barrier());
    }

    #[test]
    fn saturating_a_witness_costs_at_most_the_slack(tbn in tbn_strategy(4), i in any::<usize>(), w in strength()) {
        let sat: Vec<_> = all_configurations(&tbn).into_iter().filter(|c| tbn.is_saturated(c)).collect();
        let to = pick(&sat, i);
        let r = barrier(&tbn, &tbn.whole(), &to, w, Mode::All, &SearchBudget::unlimited()).unwrap();
        let p = r.witness.unwrap();
        let q = saturate_path(&tbn, &p, w).unwrap();
        let slack = (Ratio::from_integer(2) - w.value()).max(Ratio::from_integer(0));
        prop_assert!(q.is_saturated(&tbn));
        prop_assert!(height(&tbn, &q, w) <= height(&tbn, &p, w) + slack);
        prop_assert_eq!(q.start(), p.start());
        prop_assert_eq!(q.end(), p.end());
    }

    #[test]
    fn saturated_map_is_no_lower(tbn in tbn_strategy(4), w in strength()) {
        let from = tbn.whole();
        let all = bottleneck_map(&tbn, &from, w, Mode::All);
        let sat = bottleneck_map(&tbn, &from, w, Mode::SaturatedOnly);
        for (c, b) in &sat {
            prop_assert!(all[c] <= *b);
        }
    }

    #[test]
    fn text_round_trip(tbn in tbn_strategy(5), k in any::<usize>(), w in strength()) {
        let conf = pick(&all_configurations(&tbn), k);
        let mut doc = TbnDocument::new(tbn);
        doc.configurations.push(("x".into(), conf));
        doc.w = Some(w);
        let back = parse_tbn(&render_tbn(&doc)).unwrap();
        prop_assert_eq!(render_tbn(&back), render_tbn(&doc));
        prop_assert_eq!(back.tbn.counts(), doc.tbn.counts());
        prop_assert_eq!(back.w, Some(w));
        // unlabeled types gain names when a configuration is written
        let (a, b) = (back.configuration("x").unwrap(), &doc.configurations[0].1);
        prop_assert_eq!(back.tbn.energy(a), doc.tbn.energy(b));
        let sizes = |c: &Configuration| c.polymers().iter().map(|p| p.size()).collect::<Vec<_>>();
        prop_assert_eq!(sizes(a), sizes(b));
    }

    #[test]
    fn bond_lift_and_simplify(tbn in tbn_strategy(4), k in any::<usize>(), w in strength()) {
        let c = pick(&all_configurations(&tbn), k);
        let lifted = lift_max(&tbn, &c);
        prop_assert_eq!(simplify(&tbn, &lifted), c.clone());
        prop_assert_eq!(bond_energy(&lifted, w), tbn.energy(&c).value(w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bond_states_are_no_better_than_their_simplification(tbn in tbn_strategy(3), w in strength()) {
        let states = bond_bottleneck_map(&tbn, &unbonded_singletons(&tbn), w, BondMode::ALL, true).unwrap();
        for bc in states.keys() {
            prop_assert!(bond_energy(bc, w) >= tbn.energy(&simplify(&tbn, bc)).value(w));
            for (_, next) in bond_neighbors(&tbn, bc, BondMode::ALL) {
                prop_assert!(bond_neighbors(&tbn, &next, BondMode::ALL).iter().any(|(_, back)| back == bc));
            }
        }
        // every configuration is the simplification of some reachable bond state
        let shadows: std::collections::HashSet<_> = states.keys().map(|bc| simplify(&tbn, bc)).collect();
        prop_assert_eq!(shadows.len(), all_configurations(&tbn).len());
    }
}
