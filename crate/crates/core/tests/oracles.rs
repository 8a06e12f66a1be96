//! Library decision procedures against the brute-force oracles in
//! `common`, over the small catalog rings.

mod common;

use std::collections::BTreeSet;

use amalgam::amalgamation::check_against_product;
use amalgam::lattice::{all_ideals, maximal_ideals, nilradical, regular_elements};
use amalgam::properties::{
    is_arithmetical, is_chain_ring, is_gaussian, is_local, is_prufer, local_gaussian_pair_check,
};
use amalgam::ring::units;
use amalgam::{Limits, Ring};
use common::{catalog, Set};

fn small(max: usize) -> Vec<Ring> {
    catalog()
        .rings
        .iter()
        .filter(|r| r.size() <= max)
        .cloned()
        .collect()
}

fn as_sets(ideals: &[amalgam::Ideal]) -> BTreeSet<Set> {
    ideals.iter().map(|i| i.iter().collect()).collect()
}

#[test]
fn ideal_lattice_matches_subset_closure() {
    let lim = Limits::default();
    let rings = small(32);
    assert!(rings.len() >= 40);
    for r in &rings {
        let lib = all_ideals(r, &lim).unwrap();
        let brute = common::ideals(r);
        assert_eq!(as_sets(&lib), brute, "{}", r.label());
        assert!(brute.iter().all(|i| common::is_ideal(r, i)));
    }
}

#[test]
fn maximal_ideals_units_and_nilradical() {
    for r in small(32) {
        let lib: BTreeSet<Set> = maximal_ideals(&r).iter().map(|i| i.iter().collect()).collect();
        let brute: BTreeSet<Set> = common::maximal_ideals(&r).into_iter().collect();
        assert_eq!(lib, brute, "{}", r.label());
        assert_eq!(units(&r).into_iter().collect::<Set>(), common::units(&r));
        assert_eq!(nilradical(&r).iter().collect::<Set>(), common::nilradical(&r));
        assert_eq!(regular_elements(&r).into_iter().collect::<Set>(), common::regular(&r));
        assert_eq!(is_local(&r).is_some(), common::is_local(&r), "{}", r.label());
    }
}

#[test]
fn arithmetical_and_chain_rings() {
    let lim = Limits::default();
    for r in small(32) {
        let brute = common::is_distributive(&r);
        assert_eq!(is_arithmetical(&r, &lim).unwrap().outcome.holds(), brute, "{}", r.label());
        if common::is_local(&r) {
            assert_eq!(is_chain_ring(&r).holds(), common::is_chain(&r), "{}", r.label());
        }
    }
}

#[test]
fn gaussian_against_linear_content() {
    for r in small(16) {
        let brute = common::gaussian_linear(&r);
        assert_eq!(is_gaussian(&r).unwrap().holds(), brute, "{}", r.label());
        if common::is_local(&r) {
            assert_eq!(local_gaussian_pair_check(&r).unwrap().holds(), brute);
        }
    }
}

#[test]
fn every_finite_ring_is_prufer() {
    let lim = Limits::default();
    for r in small(64) {
        assert!(is_prufer(&r, &lim).unwrap().outcome.holds(), "{}", r.label());
        if r.size() <= 16 {
            assert!(common::is_prufer(&r));
        }
    }
}

#[test]
fn amalgamation_carriers_match_product_subsets() {
    let instances: Vec<_> = catalog()
        .instances
        .iter()
        .filter(|i| i.ring.size() <= 64)
        .collect();
    assert!(instances.len() >= 200);
    for inst in instances {
        check_against_product(inst).unwrap();
        let j: Set = inst.j.iter().collect();
        let expected = common::amalgamation_pairs(&inst.a, &inst.b, |x| inst.f.apply(x), &j);
        let got: BTreeSet<(usize, usize)> = inst
            .ring
            .elements()
            .map(|x| (inst.p_a.apply(x), inst.p_b.apply(x)))
            .collect();
        assert_eq!(got, expected, "{}", inst.label);
        assert_eq!(got.len(), inst.ring.size());
        for x in inst.ring.elements() {
            for y in inst.ring.elements() {
                let s = inst.ring.add(x, y);
                let p = inst.ring.mul(x, y);
                assert_eq!(inst.p_a.apply(p), inst.a.mul(inst.p_a.apply(x), inst.p_a.apply(y)));
                assert_eq!(inst.p_b.apply(s), inst.b.add(inst.p_b.apply(x), inst.p_b.apply(y)));
                assert_eq!(inst.p_b.apply(p), inst.b.mul(inst.p_b.apply(x), inst.p_b.apply(y)));
            }
        }
    }
}
