use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tsspic::catalog;
use tsspic::graph::{automorphism_group, canonical_key, graph_isomorphisms, isomorphic_tss, morita_equivalent};
use tsspic::model::{build_graph, euler_characteristic, parse_tss, validate};
use tsspic::{Rational, Sign, TssSurface};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn surfaces() -> Vec<TssSurface> {
    let p = catalog::two_pi_approx();
    vec![
        catalog::sphere_equator(p.clone()),
        catalog::cylinder_one_curve(p.clone()),
        catalog::cylinder_two_curves(p.clone(), p.clone()),
        catalog::cylinder_two_curves(p.clone(), catalog::pi_approx()),
        catalog::cylinder_chain(3, p.clone()),
        catalog::cylinder_chain(4, p.clone()),
        catalog::torus_parallel(2, p.clone()),
        catalog::torus_parallel(4, p.clone()),
        catalog::genus2_separating(p),
    ]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Counts label-preserving maps by trying every pair of leaf and curve
/// permutations, straight from the surface data.
fn brute_force_automorphisms(s: &TssSurface) -> usize {
    let idx = |id: &str| s.leaves.iter().position(|l| l.id == id).unwrap();
    let ends: Vec<(usize, usize)> = s.curves.iter().map(|c| (idx(&c.neg_leaf), idx(&c.pos_leaf))).collect();
    let mut count = 0;
    for reversal in [false, true] {
        for pv in permutations(s.leaves.len()) {
            let leaves_ok = s.leaves.iter().enumerate().all(|(i, a)| {
                let b = &s.leaves[pv[i]];
                let sign = if reversal { a.sign.flip() } else { a.sign };
                a.genus == b.genus && a.free_boundary == b.free_boundary && sign == b.sign
            });
            if !leaves_ok {
                continue;
            }
            for pe in permutations(s.curves.len()) {
                let curves_ok = s.curves.iter().enumerate().all(|(e, c)| {
                    let (n, p) = ends[e];
                    let (n2, p2) = ends[pe[e]];
                    let (want_n, want_p) = if reversal { (pv[p], pv[n]) } else { (pv[n], pv[p]) };
                    c.period == s.curves[pe[e]].period && n2 == want_n && p2 == want_p
                });
                if curves_ok {
                    count += 1;
                }
            }
        }
    }
    count
}

#[test]
fn automorphism_counts_match_brute_force() {
    for s in surfaces() {
        let g = build_graph(&s).unwrap();
        let aut = automorphism_group(&g).unwrap();
        assert_eq!(aut.order(), brute_force_automorphisms(&s), "{}", s.to_json());
        assert!(aut.identity().is_identity());
        for m in &aut.elements {
            assert!(m.is_isomorphism(&g, &g));
            assert!(aut.contains(&m.inverse()));
            for n in &aut.elements {
                assert!(aut.contains(&m.compose(n)));
            }
        }
    }
}

#[test]
fn euler_characteristic_matches_ambient_genus() {
    for s in surfaces() {
        assert!(validate(&s).is_valid(), "{}", s.to_json());
        if s.closed {
            assert_eq!(euler_characteristic(&s), 2 - 2 * s.ambient_genus());
        }
    }
    assert_eq!(euler_characteristic(&catalog::torus_parallel(4, rat(1, 1))), 0);
    assert_eq!(euler_characteristic(&catalog::genus2_separating(rat(1, 1))), -2);
    assert_eq!(euler_characteristic(&catalog::cylinder_chain(5, rat(1, 1))), 0);
}

#[test]
fn fixtures_match_the_catalog() {
    let dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let p = catalog::two_pi_approx();
    let cases = [
        ("sphere-equator.json", catalog::sphere_equator(p.clone())),
        ("cyl1.json", catalog::cylinder_one_curve(p.clone())),
        ("cyl2.json", catalog::cylinder_two_curves(catalog::pi_approx(), catalog::pi_approx())),
        ("torus-2-parallel.json", catalog::torus_parallel(2, p.clone())),
        ("torus-2k-parallel.json", catalog::torus_parallel(4, p.clone())),
        ("genus2-separating.json", catalog::genus2_separating(p)),
    ];
    for (file, want) in cases {
        let text = std::fs::read_to_string(dir.join(file)).unwrap();
        assert_eq!(parse_tss(&text).unwrap(), want, "{file}");
    }
}

#[test]
fn flipping_every_sign_is_only_a_reversed_isomorphism() {
    let s = catalog::cylinder_two_curves(rat(3, 1), rat(5, 1));
    let mut t = s.clone();
    for l in &mut t.leaves {
        l.sign = l.sign.flip();
        l.volume = -l.volume.clone();
    }
    for c in &mut t.curves {
        std::mem::swap(&mut c.neg_leaf, &mut c.pos_leaf);
    }
    let (g, h) = (build_graph(&s).unwrap(), build_graph(&t).unwrap());
    assert!(graph_isomorphisms(&g, &h, false).unwrap().is_empty());
    let reversed = graph_isomorphisms(&g, &h, true).unwrap();
    assert!(!reversed.is_empty() && reversed.iter().all(|m| m.reversal));
    assert_eq!(t.leaves.iter().filter(|l| l.sign == Sign::Minus).count(), 2);
}

/// Same surface with leaves and curves renamed and listed in a shuffled order.
fn relabel(s: &TssSurface, seed: u64) -> TssSurface {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rename = |id: &str| format!("x{}", id.to_lowercase());
    let mut t = s.clone();
    for l in &mut t.leaves {
        l.id = rename(&l.id);
    }
    for c in &mut t.curves {
        c.id = rename(&c.id);
        c.neg_leaf = rename(&c.neg_leaf);
        c.pos_leaf = rename(&c.pos_leaf);
    }
    t.leaves.shuffle(&mut rng);
    t.curves.shuffle(&mut rng);
    t
}

proptest! {
    #[test]
    fn invariants_ignore_names_and_order(which in 0usize..9, seed in any::<u64>()) {
        let s = &surfaces()[which];
        let t = relabel(s, seed);
        let (g, h) = (build_graph(s).unwrap(), build_graph(&t).unwrap());
        prop_assert_eq!(canonical_key(&g).unwrap(), canonical_key(&h).unwrap());
        prop_assert!(morita_equivalent(s, &t).unwrap().0);
        prop_assert!(isomorphic_tss(s, &t).unwrap().0);
        prop_assert_eq!(automorphism_group(&g).unwrap().order(), automorphism_group(&h).unwrap().order());
        let (_, w) = morita_equivalent(s, &t).unwrap();
        let m = w.unwrap();
        prop_assert!(m.is_isomorphism(&g, &h));
        prop_assert_eq!(m.to_witness(&g, &h).resolve(&g, &h).unwrap(), m);
    }

    #[test]
    fn period_changes_are_detected(num in 1i64..200, den in 1i64..50) {
        let p = rat(num, den);
        let s = catalog::cylinder_one_curve(catalog::two_pi_approx());
        let t = catalog::cylinder_one_curve(p.clone());
        let same = p == catalog::two_pi_approx();
        prop_assert_eq!(morita_equivalent(&s, &t).unwrap().0, same);
        let (g, h) = (build_graph(&s).unwrap(), build_graph(&t).unwrap());
        prop_assert_eq!(canonical_key(&g).unwrap() == canonical_key(&h).unwrap(), same);
    }

    #[test]
    fn json_round_trip(which in 0usize..9) {
        let s = &surfaces()[which];
        prop_assert_eq!(&parse_tss(&s.to_json()).unwrap(), s);
    }
}
