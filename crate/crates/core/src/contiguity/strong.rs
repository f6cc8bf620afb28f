use std::collections::BTreeMap;
use std::sync::Arc;

use super::ContiguityChain;
use crate::complexes::{are_isomorphic, Complex, SimplicialMap};
use crate::error::Result;
use crate::Vertex;

/// Smallest `v′ ≠ v` lying in every facet that contains `v`.
pub fn dominated(k: &Complex, v: Vertex) -> Result<Option<Vertex>> {
    let i = k.idx(v)?;
    let facets = k.incident_facets(i);
    let mut common: Option<Vec<usize>> = None;
    for &f in facets {
        let members = &k.facet_indices()[f];
        common = Some(match common {
            None => members.iter().copied().filter(|&x| x != i).collect(),
            Some(c) => c.into_iter().filter(|x| members.contains(x)).collect(),
        });
    }
    Ok(common
        .unwrap_or_default()
        .into_iter()
        .min()
        .map(|x| k.vertex(x)))
}

/// The result of collapsing every dominated vertex.
#[derive(Clone, Debug)]
pub struct Core {
    pub complex: Complex,
    /// `(removed vertex, dominating vertex)` in removal order.
    pub log: Vec<(Vertex, Vertex)>,
}

/// Repeatedly deletes the smallest dominated vertex until none is left.
pub fn core(k: &Complex) -> Core {
    let mut cur = k.clone();
    let mut log = Vec::new();
    'outer: loop {
        for &v in cur.vertices() {
            if let Some(d) = dominated(&cur, v).expect("own vertex") {
                let rest: Vec<Vertex> =
                    cur.vertices().iter().copied().filter(|&x| x != v).collect();
                cur = cur
                    .full_subcomplex(&rest)
                    .expect("a dominated vertex is never alone");
                log.push((v, d));
                continue 'outer;
            }
        }
        break;
    }
    Core { complex: cur, log }
}

pub fn is_strongly_collapsible(k: &Complex) -> bool {
    core(k).complex.num_vertices() == 1
}

pub fn same_strong_homotopy_type(k: &Complex, l: &Complex) -> bool {
    are_isomorphic(&core(k).complex, &core(l).complex).is_some()
}

/// `K` deformed onto its core: `r ∘ i = id` and a chain `id_K ∼ i ∘ r`
/// with one step per removed vertex.
#[derive(Clone, Debug)]
pub struct StrongDeformation {
    pub core: Arc<Complex>,
    pub inclusion: SimplicialMap,
    pub retraction: SimplicialMap,
    pub chain: ContiguityChain,
}

pub fn strong_deformation(k: &Arc<Complex>) -> Result<StrongDeformation> {
    let Core { complex, log } = core(k);
    let core = Arc::new(complex);
    // Current image of every vertex of K while following the log.
    let mut image: BTreeMap<Vertex, Vertex> = k.vertices().iter().map(|&v| (v, v)).collect();
    let mut steps = vec![SimplicialMap::identity(k)];
    for &(v, d) in &log {
        for w in image.values_mut() {
            if *w == v {
                *w = d;
            }
        }
        steps.push(SimplicialMap::from_fn(k.clone(), k.clone(), |x| image[&x])?);
    }
    let retraction = SimplicialMap::from_fn(k.clone(), core.clone(), |x| image[&x])?;
    let inclusion = SimplicialMap::inclusion(&core, k)?;
    let chain = ContiguityChain::new(steps)?;
    Ok(StrongDeformation {
        core,
        inclusion,
        retraction,
        chain,
    })
}

/// Maps `φ: K → L`, `ψ: L → K` with chains `ψ∘φ ∼ id_K` and `φ∘ψ ∼ id_L`.
#[derive(Clone, Debug)]
pub struct StrongEquivalence {
    pub forward: SimplicialMap,
    pub backward: SimplicialMap,
    pub back_forth: ContiguityChain,
    pub forth_back: ContiguityChain,
}

/// Witness maps for a strong homotopy equivalence, built through an
/// isomorphism of cores.
pub fn strong_equivalence(k: &Arc<Complex>, l: &Arc<Complex>) -> Result<Option<StrongEquivalence>> {
    let dk = strong_deformation(k)?;
    let dl = strong_deformation(l)?;
    let Some(iso) = are_isomorphic(&dk.core, &dl.core) else {
        return Ok(None);
    };
    let inv: BTreeMap<Vertex, Vertex> = iso.iter().map(|(&a, &b)| (b, a)).collect();
    let iso_map = SimplicialMap::from_fn(dk.core.clone(), dl.core.clone(), |v| iso[&v])?;
    let inv_map = SimplicialMap::from_fn(dl.core.clone(), dk.core.clone(), |v| inv[&v])?;
    let forward = dl.inclusion.compose(&iso_map.compose(&dk.retraction)?)?;
    let backward = dk.inclusion.compose(&inv_map.compose(&dl.retraction)?)?;
    // ψ∘φ = i_K ∘ r_K, and the deformation chain ends there.
    let back_forth = dk.chain.reversed();
    let forth_back = dl.chain.reversed();
    debug_assert_eq!(back_forth.first(), &backward.compose(&forward)?);
    debug_assert_eq!(forth_back.first(), &forward.compose(&backward)?);
    Ok(Some(StrongEquivalence {
        forward,
        backward,
        back_forth,
        forth_back,
    }))
}
