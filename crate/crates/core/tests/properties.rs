//! Properties that must hold on every small input, checked by proptest over
//! random complexes and exhaustively where the instances are tiny.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use simpfib::complexes::{
    are_isomorphic, categorical_product, pullback, validate_map, Complex, SimplicialMap,
};
use simpfib::contiguity::{
    chain_to_homotopy, contiguity_chain, contiguous, core, is_strongly_collapsible, ChainSearch,
};
use simpfib::invariants::{check_certificate, homotopy_svarc_genus, scat, svarc_genus};
use simpfib::moore::{count_paths, MoorePath, WindowedPathComplex};
use simpfib::{build_complex, Budget};

/// A complex on vertices drawn from `0..n`, from 1 to `max_facets` simplices
/// of dimension at most 2.
fn complex(n: u32, max_facets: usize) -> impl Strategy<Value = Arc<Complex>> {
    prop::collection::vec(prop::collection::btree_set(0..n, 1..=3), 1..=max_facets).prop_map(
        |sets| {
            Arc::new(
                build_complex(sets.into_iter().map(|s| s.into_iter().collect::<Vec<_>>())).unwrap(),
            )
        },
    )
}

/// Up to `cap` maps `dom → cod`, spread over the full enumeration.
fn some_maps(dom: &Arc<Complex>, cod: &Arc<Complex>, cap: usize) -> Vec<SimplicialMap> {
    let all = SimplicialMap::enumerate(dom, cod);
    let step = all.len().div_ceil(cap).max(1);
    all.into_iter().step_by(step).collect()
}

fn small_budget() -> Budget {
    Budget {
        max_steps: 6,
        ..Budget::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_facets_project_to_simplices(k in complex(4, 3), l in complex(4, 3)) {
        let p = categorical_product(&k, &l);
        for s in p.complex.facets() {
            let left: BTreeSet<_> = s.iter().map(|&x| p.pair(x).0).collect();
            let right: BTreeSet<_> = s.iter().map(|&x| p.pair(x).1).collect();
            prop_assert!(k.is_simplex(&left.into_iter().collect::<Vec<_>>()));
            prop_assert!(l.is_simplex(&right.into_iter().collect::<Vec<_>>()));
        }
        for s in k.facets() {
            for t in l.facets() {
                let st: Vec<_> = s.iter().flat_map(|&v| t.iter().map(move |&w| (v, w))).collect();
                let mut ids: Vec<_> = st.iter().map(|&(v, w)| p.vertex_of(v, w).unwrap()).collect();
                ids.sort_unstable();
                prop_assert!(p.complex.is_simplex(&ids));
            }
        }
    }

    #[test]
    fn pullback_vertices_are_the_matching_pairs(k in complex(4, 3), l in complex(4, 3), m in complex(3, 2), pick in any::<u64>()) {
        let fs = some_maps(&k, &m, 8);
        let gs = some_maps(&l, &m, 8);
        prop_assume!(!fs.is_empty() && !gs.is_empty());
        let f = &fs[pick as usize % fs.len()];
        let g = &gs[(pick >> 32) as usize % gs.len()];
        let expected: BTreeSet<(u32, u32)> = k
            .vertices()
            .iter()
            .flat_map(|&v| l.vertices().iter().map(move |&w| (v, w)))
            .filter(|&(v, w)| f.image(v).unwrap() == g.image(w).unwrap())
            .collect();
        match pullback(f, g) {
            Ok(pb) => {
                let got: BTreeSet<(u32, u32)> = pb
                    .complex
                    .vertices()
                    .iter()
                    .map(|&x| (pb.to_left.image(x).unwrap(), pb.to_right.image(x).unwrap()))
                    .collect();
                prop_assert_eq!(got, expected);
            }
            Err(_) => prop_assert!(expected.is_empty()),
        }
    }

    #[test]
    fn full_subcomplex_is_idempotent(k in complex(6, 4), w in prop::collection::btree_set(0u32..6, 1..=6)) {
        let w: Vec<u32> = w.into_iter().collect();
        if let Ok(once) = k.full_subcomplex(&w) {
            let twice = once.full_subcomplex(&w).unwrap();
            prop_assert!(are_isomorphic(&once, &twice).is_some());
            prop_assert_eq!(once, twice);
        }
    }

    #[test]
    fn isomorphism_survives_relabeling(k in complex(5, 4), shift in 1u32..20) {
        prop_assert!(are_isomorphic(&k, &k).is_some());
        let r = k.relabel(|v| 4 * v + shift);
        let there = are_isomorphic(&k, &r).expect("relabeled copy");
        let back = are_isomorphic(&r, &k).expect("symmetric");
        let f = validate_map(k.clone(), Arc::new(r.clone()), &there).unwrap();
        prop_assert_eq!(f.image_vertices().len(), k.num_vertices());
        validate_map(Arc::new(r), k.clone(), &back).unwrap();
    }

    #[test]
    fn contiguity_is_reflexive_and_symmetric(k in complex(4, 3), l in complex(4, 3)) {
        let maps = some_maps(&k, &l, 24);
        for f in &maps {
            prop_assert!(contiguous(f, f).unwrap());
            for g in &maps {
                prop_assert_eq!(contiguous(f, g).unwrap(), contiguous(g, f).unwrap());
            }
        }
    }

    #[test]
    fn chain_search_is_symmetric(k in complex(4, 3), l in complex(4, 3)) {
        let maps = some_maps(&k, &l, 10);
        let budget = small_budget();
        for f in &maps {
            for g in &maps {
                let there = contiguity_chain(f, g, &budget).unwrap();
                let back = contiguity_chain(g, f, &budget).unwrap();
                match (&there, &back) {
                    (ChainSearch::Found(a), ChainSearch::Found(b)) => {
                        prop_assert_eq!(a.len(), b.len());
                        let h = chain_to_homotopy(a).unwrap();
                        validate_map(h.map.domain().clone(), h.map.codomain().clone(), &h.map.assignment()).unwrap();
                    }
                    (ChainSearch::ProvenAbsent, ChainSearch::ProvenAbsent) => {}
                    (ChainSearch::BudgetExhausted { .. }, ChainSearch::BudgetExhausted { .. }) => {}
                    _ => prop_assert!(false, "{:?} vs {:?}", there, back),
                }
            }
        }
    }

    #[test]
    fn core_is_idempotent(k in complex(6, 5)) {
        let once = core(&k).complex;
        let twice = core(&once);
        prop_assert!(twice.log.is_empty());
        prop_assert_eq!(twice.complex, once);
    }

    #[test]
    fn collapsible_complexes_contract(k in complex(5, 4)) {
        prop_assume!(k.is_connected() && is_strongly_collapsible(&k));
        let id = SimplicialMap::identity(&k);
        let budget = Budget {
            max_steps: k.num_vertices() * k.num_vertices(),
            ..Budget::default()
        };
        let reaches = k.vertices().iter().any(|&v| {
            let c = SimplicialMap::constant(&k, &k, v).unwrap();
            matches!(contiguity_chain(&id, &c, &budget).unwrap(), ChainSearch::Found(_))
        });
        prop_assert!(reaches);
    }

    #[test]
    fn scat_vanishes_exactly_on_collapsible_complexes(k in complex(5, 4)) {
        prop_assume!(k.is_connected());
        let r = scat(&k, &Budget::default()).unwrap();
        prop_assert!(r.exact);
        prop_assert_eq!(r.value == Some(0), is_strongly_collapsible(&k));
        let cert = r.certificate.unwrap();
        prop_assert_eq!(check_certificate(&cert).unwrap(), r.value.unwrap());
    }

    #[test]
    fn larger_piece_budget_never_worsens_scat(k in complex(5, 5), cap in 1usize..8) {
        let tight = Budget { max_cover: cap, ..Budget::default() };
        let loose = Budget { max_cover: 4 * cap + 8, ..Budget::default() };
        let a = scat(&k, &tight).unwrap();
        let b = scat(&k, &loose).unwrap();
        if let (Some(x), Some(y)) = (a.value, b.value) {
            prop_assert!(y <= x, "tight {} < loose {}", x, y);
        }
        prop_assert!(a.value.is_none() || b.value.is_some());
    }

    #[test]
    fn homotopy_genus_is_at_most_genus(e in complex(4, 3), l in complex(3, 3), pick in any::<usize>()) {
        let maps = some_maps(&e, &l, 16);
        prop_assume!(!maps.is_empty());
        let phi = &maps[pick % maps.len()];
        let budget = small_budget();
        let sg = svarc_genus(phi, &budget).unwrap();
        let hsg = homotopy_svarc_genus(phi, &budget).unwrap();
        if let Some(c) = &sg.certificate {
            prop_assert_eq!(check_certificate(c).unwrap(), sg.value.unwrap());
        }
        if let Some(c) = &hsg.certificate {
            prop_assert_eq!(check_certificate(c).unwrap(), hsg.value.unwrap());
        }
        if let (Some(s), Some(h)) = (sg.value, hsg.value) {
            if hsg.exact {
                prop_assert!(h <= s);
            }
        }
        if sg.value.is_some() {
            prop_assert!(hsg.value.is_some());
        }
    }

    #[test]
    fn window_size_matches_walk_count(k in complex(4, 3), a in -2i64..=0, len in 0i64..=2) {
        let w = WindowedPathComplex::new(&k, a, a + len, &Budget::default()).unwrap();
        prop_assert_eq!(w.num_paths() as u128, count_paths(&k, a, a + len));
        for end in [w.alpha(), w.omega()] {
            validate_map(end.domain().clone(), end.codomain().clone(), &end.assignment()).unwrap();
        }
    }
}

/// All paths in `C3` stored on `[start, start + len]`.
fn walks(c3: &Arc<Complex>, start: i64, len: usize) -> Vec<MoorePath> {
    let mut out = vec![vec![]];
    for _ in 0..=len {
        out = out
            .into_iter()
            .flat_map(|s: Vec<u32>| {
                (0..3).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out.into_iter()
        .filter_map(|s| MoorePath::new(c3.clone(), start, s).ok())
        .collect()
}

#[test]
fn concatenation_adds_supports_and_reverses() {
    let c3 = Arc::new(Complex::cycle(3));
    let mut paths = Vec::new();
    for start in -1..=1 {
        for len in 0..=3 {
            paths.extend(
                walks(&c3, start, len)
                    .into_iter()
                    .filter(|g| g.length() <= 3),
            );
        }
    }
    let mut checked = 0;
    for g in &paths {
        for d in &paths {
            let Ok(gd) = g.concat(d) else { continue };
            let ((gm, gp), (dm, dp)) = (g.support(), d.support());
            assert_eq!(gd.support(), (gm + dm, gp + dp), "{g:?} ∗ {d:?}");
            let rev = d.reverse().concat(&g.reverse()).unwrap();
            assert_eq!(gd.reverse().normalize(), rev.normalize());
            checked += 1;
        }
    }
    assert!(checked > 1000);
}
