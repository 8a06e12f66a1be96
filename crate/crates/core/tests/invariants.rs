//! Structural invariants as property tests over randomly generated
//! construction expressions.


use amalgam::amalgamation::check_against_product;
use amalgam::expr::{parse, Evaluator, HomExpr, ModuleExpr, RingExpr};
use amalgam::ideal::{ideal_intersect, ideal_product, ideal_sum};
use amalgam::lattice::{all_ideals, maximal_ideals};
use amalgam::module::{ring_as_module, trivial_extension};
use amalgam::properties::{
    gaussian_pair_holds, is_arithmetical, is_chain_ring, is_gaussian, is_local, is_prufer,
    local_gaussian_pair_check, ArithmeticalWitness, Outcome,
};
use amalgam::ring::{factor_local, localize_at_max, quotient, Encoding};
use amalgam::{Limits, Ring};
use proptest::prelude::*;

const MAX: usize = 64;

fn leaf() -> impl Strategy<Value = RingExpr> {
    prop_oneof![
        (1u64..=12).prop_map(RingExpr::Zmod),
        (prop_oneof![Just(2u64), Just(3)], 1u64..=2, 1u64..=3).prop_map(|(p, k, t)| RingExpr::Tpa { p, k, t }),
    ]
}

/// Expressions whose rings mostly stay small; evaluation decides.
fn ring_expr() -> impl Strategy<Value = RingExpr> {
    leaf().prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| RingExpr::Product(Box::new(a), Box::new(b))),
            (inner.clone(), 0usize..16).prop_map(|(a, g)| RingExpr::Quot(Box::new(a), vec![g])),
            inner.clone().prop_map(|a| RingExpr::Trivext(Box::new(a), ModuleExpr::Regular)),
            inner.prop_map(|a| RingExpr::Trivext(Box::new(a), ModuleExpr::Resfield(1))),
        ]
    })
}

fn eval(e: &RingExpr) -> Option<Ring> {
    let lim = Limits {
        max_ring_size: MAX,
        ..Limits::default()
    };
    Evaluator::new(&lim).ring(e).ok()
}

/// An amalgamation over a generated ring: duplication, projection onto a
/// quotient, or idealization embedding, along a generated ideal.
fn instance_text(base: &Ring, kind: u8, g: usize, h: usize) -> String {
    let a = base.label();
    let n = base.size();
    match kind % 3 {
        0 => format!("dup({a}; {})", g % n),
        1 => format!("amalg({a}, quot({a}; {}), proj; {})", g % n, h % n),
        _ => format!("amalg({a}, trivext({a}; regular), embed; {})", h % (n * n)),
    }
}

fn hom_expr() -> impl Strategy<Value = HomExpr> {
    let leaf = prop_oneof![Just(HomExpr::Id), Just(HomExpr::Proj), Just(HomExpr::Embed)];
    leaf.prop_recursive(3, 8, 2, |inner| {
        (inner.clone(), inner).prop_map(|(g, f)| HomExpr::Compose(Box::new(g), Box::new(f)))
    })
}

fn module_expr() -> impl Strategy<Value = ModuleExpr> {
    let leaf = prop_oneof![Just(ModuleExpr::Regular), any::<u64>().prop_map(ModuleExpr::Resfield)];
    leaf.prop_recursive(3, 8, 2, |inner| {
        (inner, prop::collection::vec(any::<usize>(), 1..4)).prop_map(|(m, g)| ModuleExpr::Quotmod(Box::new(m), g))
    })
}

/// Arbitrary syntax trees, well-typed or not, with unbounded integers.
fn any_expr() -> impl Strategy<Value = RingExpr> {
    let gens = || prop::collection::vec(any::<usize>(), 1..4);
    let leaf = prop_oneof![
        (1u64..).prop_map(RingExpr::Zmod),
        (any::<u64>(), any::<u64>(), any::<u64>()).prop_map(|(p, k, t)| RingExpr::Tpa { p, k, t }),
    ];
    leaf.prop_recursive(4, 24, 4, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| RingExpr::Product(Box::new(a), Box::new(b))),
            (inner.clone(), gens()).prop_map(|(a, g)| RingExpr::Quot(Box::new(a), g)),
            (inner.clone(), module_expr()).prop_map(|(a, m)| RingExpr::Trivext(Box::new(a), m)),
            (inner.clone(), gens()).prop_map(|(a, g)| RingExpr::Dup(Box::new(a), g)),
            (inner.clone(), inner, hom_expr(), gens()).prop_map(|(a, b, hom, gens)| RingExpr::Amalg {
                a: Box::new(a),
                b: Box::new(b),
                hom,
                gens
            }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_then_parsing_is_identity(e in any_expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e);
    }

    #[test]
    fn whitespace_does_not_matter(e in any_expr()) {
        let text = e.to_string();
        let spaced = text.replace(',', " ,\n ").replace('(', "( ").replace(';', "\t;");
        prop_assert_eq!(parse(&spaced).unwrap().to_string(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn constructed_rings_satisfy_the_axioms(e in ring_expr()) {
        if let Some(r) = eval(&e) {
            r.check_axioms().unwrap();
            let again = eval(&parse(r.label()).unwrap()).unwrap();
            prop_assert!(*again == *r);
            prop_assert_eq!(again.label(), r.label());
        }
    }

    #[test]
    fn quotient_projection(e in ring_expr(), g in 0usize..MAX) {
        let Some(r) = eval(&e) else { return Ok(()) };
        let i = amalgam::ideal::ideal_generated(&r, &[g % r.size()]).unwrap();
        let (q, p) = quotient(&r, &i).unwrap();
        prop_assert!(p.is_surjective());
        prop_assert_eq!(p.kernel(), i.clone());
        prop_assert_eq!(q.size() * i.len(), r.size());
    }

    #[test]
    fn local_factors_reconstruct_the_ring(e in ring_expr()) {
        let Some(r) = eval(&e) else { return Ok(()) };
        let factors = factor_local(&r).unwrap();
        prop_assert!(factors.iter().all(|(f, _)| is_local(f).is_some()));
        let image = |x: usize| factors.iter().map(|(_, p)| p.apply(x)).collect::<Vec<_>>();
        let mut seen = std::collections::HashSet::new();
        for x in r.elements() {
            prop_assert!(seen.insert(image(x)));
        }
        let total: usize = factors.iter().map(|(f, _)| f.size()).product();
        prop_assert_eq!(total, r.size());
        prop_assert_eq!(factors.len(), maximal_ideals(&r).len());
    }

    #[test]
    fn idealization_is_square_zero_and_local_iff_base(e in ring_expr()) {
        let Some(r) = eval(&e) else { return Ok(()) };
        if r.size() * r.size() > MAX * 4 { return Ok(()) }
        let t = trivial_extension(&r, &ring_as_module(&r), &Limits::default()).unwrap();
        for x in t.ideal.iter() {
            for y in t.ideal.iter() {
                prop_assert_eq!(t.ring.mul(x, y), t.ring.zero());
            }
        }
        prop_assert_eq!(is_local(&t.ring).is_some(), is_local(&r).is_some());
        if let Encoding::TrivialExtension { module, .. } = t.ring.encoding() {
            module.check_axioms().unwrap();
        }
    }

    #[test]
    fn lattice_laws(e in ring_expr()) {
        let Some(r) = eval(&e) else { return Ok(()) };
        let ideals = all_ideals(&r, &Limits::default()).unwrap();
        for i in &ideals {
            for j in &ideals {
                let s = ideal_sum(&r, i, j).unwrap();
                let m = ideal_intersect(&r, i, j).unwrap();
                prop_assert!(ideals.contains(&s) && ideals.contains(&m));
                prop_assert_eq!(&ideal_sum(&r, i, &m).unwrap(), i);
                prop_assert_eq!(&ideal_intersect(&r, i, &s).unwrap(), i);
                prop_assert!(ideal_product(&r, i, j).unwrap().is_subset(&m));
            }
        }
    }

    #[test]
    fn property_hierarchy_and_local_consistency(e in ring_expr()) {
        let Some(r) = eval(&e) else { return Ok(()) };
        let lim = Limits::default();
        let arith = is_arithmetical(&r, &lim).unwrap();
        let gauss = is_gaussian(&r).unwrap();
        prop_assert!(!arith.outcome.holds() || gauss.holds());
        prop_assert!(!gauss.holds() || is_prufer(&r, &lim).unwrap().outcome.holds());

        let mut all_local_gaussian = true;
        let mut all_local_chain = true;
        for m in maximal_ideals(&r) {
            let (l, _) = localize_at_max(&r, &m).unwrap();
            all_local_gaussian &= local_gaussian_pair_check(&l).unwrap().holds();
            all_local_chain &= is_chain_ring(&l).holds();
        }
        prop_assert_eq!(gauss.holds(), all_local_gaussian);
        prop_assert_eq!(arith.outcome.holds(), all_local_chain);

        if let Outcome::Fails(w) = &gauss {
            if w.factor == r.label() {
                prop_assert_eq!(w.pair, w.lifted);
                prop_assert!(!gaussian_pair_holds(&r, w.pair.0, w.pair.1).unwrap());
            } else {
                let factor = factor_local(&r).unwrap().into_iter().find(|(f, _)| f.label() == w.factor);
                let (f, p) = factor.expect("witness names a factor");
                prop_assert!(!gaussian_pair_holds(&f, w.pair.0, w.pair.1).unwrap());
                prop_assert_eq!((p.apply(w.lifted.0), p.apply(w.lifted.1)), w.pair);
            }
        }
        if let Some(ArithmeticalWitness::Triple(t)) = arith.outcome.witness() {
            prop_assert!(t.recheck(&r));
        }
    }

    #[test]
    fn amalgamation_invariants(e in ring_expr(), kind in any::<u8>(), g in 0usize..4096, h in 0usize..4096) {
        let Some(base) = eval(&e) else { return Ok(()) };
        let text = instance_text(&base, kind, g, h);
        let mut ev = Evaluator::new(&Limits { max_ring_size: 256, ..Limits::default() });
        let Ok(inst) = ev.instance(&parse(&text).unwrap()) else { return Ok(()) };
        check_against_product(&inst).unwrap();
        inst.ring.check_axioms().unwrap();

        let jzero = inst.j_members().iter().position(|&x| x == inst.b.zero()).unwrap();
        for x in inst.ring.elements() {
            let (a, j) = inst.decode(x).unwrap();
            prop_assert_eq!(inst.encode(a, j).unwrap(), x);
        }
        for a in inst.a.elements() {
            let s = inst.encode(a, inst.j_members()[jzero]).unwrap();
            prop_assert_eq!(inst.p_a.apply(s), a);
        }

        let a_local = is_local(&inst.a).is_some();
        let j_in_rad = maximal_ideals(&inst.b).iter().all(|m| inst.j.is_subset(m));
        prop_assert_eq!(is_local(&inst.ring).is_some(), a_local && j_in_rad);

        let image = inst.f.image();
        let disjoint = inst.j.iter().all(|x| x == inst.b.zero() || !image.contains(x));
        if inst.f.is_injective() && disjoint {
            prop_assert!(inst.p_b.is_injective());
        }
    }
}
