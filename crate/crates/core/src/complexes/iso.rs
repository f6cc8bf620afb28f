use std::collections::{BTreeMap, HashSet};

use super::Complex;
use crate::Vertex;

/// A vertex bijection carrying facets onto facets, if one exists.
pub fn are_isomorphic(k: &Complex, l: &Complex) -> Option<BTreeMap<Vertex, Vertex>> {
    if k.num_vertices() != l.num_vertices() || k.num_facets() != l.num_facets() {
        return None;
    }
    let sizes = |c: &Complex| {
        let mut s: Vec<usize> = c.facets().iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    };
    if sizes(k) != sizes(l) {
        return None;
    }
    let sig = |c: &Complex, i: usize| {
        let mut s: Vec<usize> = c
            .incident_facets(i)
            .iter()
            .map(|&f| c.facets()[f].len())
            .collect();
        s.sort_unstable();
        s
    };
    let ksig: Vec<_> = (0..k.num_vertices()).map(|i| sig(k, i)).collect();
    let lsig: Vec<_> = (0..l.num_vertices()).map(|i| sig(l, i)).collect();
    let mut a = ksig.clone();
    let mut b = lsig.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let lfacets: HashSet<Vec<usize>> = l.facet_indices().iter().cloned().collect();

    // Facets of K that become fully assigned once vertex index `i` is placed.
    let n = k.num_vertices();
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (fi, f) in k.facet_indices().iter().enumerate() {
        closes[*f.iter().max().unwrap()].push(fi);
    }

    struct State<'a> {
        k: &'a Complex,
        ksig: &'a [Vec<usize>],
        lsig: &'a [Vec<usize>],
        lfacets: &'a HashSet<Vec<usize>>,
        closes: &'a [Vec<usize>],
        image: Vec<usize>,
        used: Vec<bool>,
    }

    fn go(st: &mut State, i: usize) -> bool {
        if i == st.image.len() {
            return true;
        }
        for c in 0..st.used.len() {
            if st.used[c] || st.lsig[c] != st.ksig[i] {
                continue;
            }
            st.image[i] = c;
            let ok = st.closes[i].iter().all(|&fi| {
                let mut img: Vec<usize> = st.k.facet_indices()[fi]
                    .iter()
                    .map(|&x| st.image[x])
                    .collect();
                img.sort_unstable();
                st.lfacets.contains(&img)
            });
            if ok {
                st.used[c] = true;
                if go(st, i + 1) {
                    return true;
                }
                st.used[c] = false;
            }
        }
        false
    }

    let mut st = State {
        k,
        ksig: &ksig,
        lsig: &lsig,
        lfacets: &lfacets,
        closes: &closes,
        image: vec![0; n],
        used: vec![false; n],
    };
    if !go(&mut st, 0) {
        return None;
    }
    Some(
        st.image
            .iter()
            .enumerate()
            .map(|(i, &j)| (k.vertex(i), l.vertex(j)))
            .collect(),
    )
}
