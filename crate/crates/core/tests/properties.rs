use proptest::prelude::*;

use plane_orbits::amalgam::{cyclically_reduce, factorize, is_bounded, Letter, Word};
use plane_orbits::cli::{self, ConfigOverrides, Subcommand};
use plane_orbits::closure::{orbit_closure, ClosureConfig};
use plane_orbits::lattice::{classify, is_invariant, minimal_invariant_through, Kind, Subvariety};
use plane_orbits::numfield::{Field, FieldRef};
use plane_orbits::planeauto::{AffineMap, PlaneAutomorphism, PlanePoint, Triangular};
use plane_orbits::poly2::UniPoly;

fn nz() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

#[derive(Clone, Debug)]
enum L {
    Shear(i64),
    Swap,
    Tri(Vec<i64>, i64),
}

fn word_spec() -> impl Strategy<Value = ([i64; 5], bool, Vec<L>)> {
    let letter_pair = (
        prop_oneof![nz().prop_map(L::Shear), Just(L::Swap)],
        (prop::collection::vec(-2i64..=2, 0..2), nz()).prop_map(|(c, t)| L::Tri(c, t)),
    );
    (
        (nz(), -2i64..=2, nz(), -2i64..=2, -2i64..=2).prop_map(|(a, b, c, d, e)| [a, b, c, d, e]),
        any::<bool>(),
        prop::collection::vec(letter_pair, 0..3).prop_map(|v| v.into_iter().flat_map(|(a, b)| [a, b]).collect()),
    )
}

fn build_word(f: &FieldRef, (h, flip, mut ls): ([i64; 5], bool, Vec<L>)) -> Word {
    if flip && !ls.is_empty() {
        ls.remove(0);
    }
    let head = AffineMap { m: [[f.int(h[0]), f.int(h[1])], [f.zero(), f.int(h[2])]], t: [f.int(h[3]), f.int(h[4])] };
    let letters = ls
        .into_iter()
        .map(|l| match l {
            L::Shear(a) => Letter::Shear(f.int(a)),
            L::Swap => Letter::Swap,
            L::Tri(mid, top) => {
                let mut c = vec![f.zero(), f.zero()];
                c.extend(mid.into_iter().map(|v| f.int(v)));
                c.push(f.int(top));
                Letter::Triangular(UniPoly::new(f, c))
            }
        })
        .collect();
    Word::from_normal_form(head, letters).unwrap()
}

fn triangular(f: &FieldRef, a: i64, b: i64, c: i64, p: &[i64]) -> PlaneAutomorphism {
    Triangular { a: f.int(a), b: f.int(b), c: f.int(c), p: UniPoly::new(f, p.iter().map(|&v| f.int(v)).collect()) }
        .to_automorphism()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn normal_forms_are_unique(spec in word_spec()) {
        let f = Field::rationals();
        let w = build_word(&f, spec);
        let phi = w.to_automorphism();
        prop_assert_eq!(&factorize(&phi).unwrap(), &w);
        let (c, core) = cyclically_reduce(&w);
        prop_assert_eq!(c.compose(&core).compose(&c.inverse()), w);
        prop_assert_eq!(is_bounded(&phi).unwrap(), core.len() <= 1);
    }

    #[test]
    fn lattice_sets_are_invariant(
        a in prop_oneof![Just(1i64), Just(-1), Just(2), Just(-2), Just(3), Just(4)],
        b in prop_oneof![Just(1i64), Just(-1), Just(2), Just(3), Just(-2)],
        c in -2i64..=2,
        p in prop::collection::vec(-2i64..=2, 0..4),
        px in -2i64..=2,
        py in -2i64..=2,
    ) {
        let f = Field::rationals();
        let phi = triangular(&f, a, b, c, &p);
        let d = classify(&phi, 64).unwrap();
        if let Kind::FiniteOrder(n) = d.kind {
            prop_assert!(phi.power(n).unwrap().is_identity());
        } else {
            for curve in d.special_curves() {
                prop_assert!(is_invariant(&phi, &Subvariety::new(vec![curve], vec![])));
            }
            let q = PlanePoint::new(f.int(px), f.int(py));
            let s = minimal_invariant_through(&d, &phi, &q).unwrap();
            prop_assert!(s.contains(&q));
            prop_assert!(s.contains(&phi.apply(&q)));
            prop_assert!(is_invariant(&phi, &s));
        }
    }

    #[test]
    fn closures_contain_orbits_and_are_invariant(
        a in prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)],
        b in prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)],
        c in -1i64..=1,
        p in prop::collection::vec(-1i64..=1, 0..3),
        swap in any::<bool>(),
        px in -2i64..=2,
        py in -2i64..=2,
    ) {
        let f = Field::rationals();
        let mut gens = vec![triangular(&f, a, b, c, &p)];
        if swap {
            gens.push(PlaneAutomorphism::parse("(y, x)", &f).unwrap());
        }
        let q = PlanePoint::new(f.int(px), f.int(py));
        let cfg = ClosureConfig { orbit_cap: 2000, ..ClosureConfig::default() };
        let r = match orbit_closure(&gens, &q, &cfg) {
            Ok(r) => r,
            Err(e) => return Err(TestCaseError::fail(format!("{}", e))),
        };
        for g in &gens {
            prop_assert!(is_invariant(g, &r.closure));
            prop_assert!(is_invariant(&g.invert().unwrap(), &r.closure));
        }
        if !r.closure.is_whole_plane() {
            let mut cur = q.clone();
            for _ in 0..20 {
                prop_assert!(r.closure.contains(&cur), "{} escapes {}", cur, r.closure);
                cur = gens[0].apply(&cur);
            }
        }
    }

    #[test]
    fn reports_round_trip_and_repeat(a in nz(), b in nz(), px in -3i64..=3, py in -3i64..=3) {
        let doc = format!(r#"{{"generators": ["({}x, {}y + 1)"], "point": [{}, {}], "config": {{"orbit_cap": 300}}}}"#, a, b, px, py);
        let none = ConfigOverrides::default();
        for cmd in [Subcommand::Classify, Subcommand::Closure, Subcommand::Factorize] {
            let first = cli::render(&cli::run_document(cmd, &doc, &none, &none, true).unwrap());
            let second = cli::render(&cli::run_document(cmd, &doc, &none, &none, true).unwrap());
            prop_assert_eq!(&first, &second);
            let back: serde_json::Value = serde_json::from_str(&first).unwrap();
            prop_assert_eq!(cli::render(&back), first);
        }
    }
}
