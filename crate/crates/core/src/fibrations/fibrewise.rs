use std::ops::ControlFlow;
use std::sync::Arc;

use super::lift::preimages;
use crate::budget::Budget;
use crate::complexes::{cylinder, Complex, SimplicialMap};
use crate::contiguity::{
    chain_in_class, ChainSearch, ContiguityChain, ContiguityClass, Explore, Homotopy,
};
use crate::error::{Error, Result};
use crate::search::MapSearch;

fn fibrewise_class(
    p: &SimplicialMap,
    f: &SimplicialMap,
    target: Option<&[usize]>,
    budget: &Budget,
) -> ContiguityClass {
    let pre = preimages(p);
    let over: Vec<usize> = p.compose(f).expect("f maps into E").indices().to_vec();
    ContiguityClass::explore(
        f.domain(),
        f.codomain(),
        f.indices(),
        budget,
        Explore {
            candidates: Some(over.iter().map(|&b| pre[b].clone()).collect()),
            target,
        },
    )
}

/// A shortest chain `f = f_0 ∼ … ∼ f_n = g` with `p ∘ f_i = p ∘ f` for all `i`.
pub fn fibrewise_contiguous(
    p: &SimplicialMap,
    f: &SimplicialMap,
    g: &SimplicialMap,
    budget: &Budget,
) -> Result<ChainSearch> {
    if !f.same_shape(g) || **f.codomain() != **p.domain() {
        return Err(Error::ShapeMismatch);
    }
    if p.compose(f)?.indices() != p.compose(g)?.indices() {
        return Err(Error::Precondition("p ∘ f differs from p ∘ g".into()));
    }
    let class = fibrewise_class(p, f, Some(g.indices()), budget);
    Ok(chain_in_class(&class, g, budget))
}

/// Witness that `p1: E1 → B` and `p2: E2 → B` have the same type of
/// fibrewise contiguity: maps over `B` both ways whose composites are
/// fibrewise contiguous to the identities.
#[derive(Clone, Debug)]
pub struct FibrewiseEquivalence {
    pub forward: SimplicialMap,
    pub backward: SimplicialMap,
    /// `g ∘ f ∼_{p1} id`.
    pub back_forth: ContiguityChain,
    /// `f ∘ g ∼_{p2} id`.
    pub forth_back: ContiguityChain,
}

#[derive(Clone, Debug)]
pub enum FibrewiseSearch {
    Found(FibrewiseEquivalence),
    ProvenAbsent,
    BudgetExhausted,
}

/// Searches `f: E1 → E2`, `g: E2 → E1` over `B` (`p2 ∘ f = p1`,
/// `p1 ∘ g = p2`) with `g ∘ f ∼_{p1} 1` and `f ∘ g ∼_{p2} 1`.
pub fn fibrewise_equivalence(
    p1: &SimplicialMap,
    p2: &SimplicialMap,
    budget: &Budget,
) -> Result<FibrewiseSearch> {
    if **p1.codomain() != **p2.codomain() {
        return Err(Error::ShapeMismatch);
    }
    let (e1, e2) = (p1.domain(), p2.domain());
    let over = |p: &SimplicialMap, q: &SimplicialMap| -> Vec<Vec<usize>> {
        let pre = preimages(q);
        p.indices().iter().map(|&b| pre[b].clone()).collect()
    };
    let fs = MapSearch::new(e1, e2).candidates(over(p1, p2)).all();
    let gs = MapSearch::new(e2, e1).candidates(over(p2, p1)).all();
    let id1 = SimplicialMap::identity(e1);
    let id2 = SimplicialMap::identity(e2);
    let class1 = fibrewise_class(p1, &id1, None, budget);
    let class2 = fibrewise_class(p2, &id2, None, budget);
    let complete = class1.is_complete() && class2.is_complete();
    let mut pairs = 0usize;
    for f in &fs {
        for g in &gs {
            pairs += 1;
            if pairs > budget.max_states || budget.expired() {
                return Ok(FibrewiseSearch::BudgetExhausted);
            }
            let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
            let fg: Vec<usize> = g.iter().map(|&x| f[x]).collect();
            let (Some(c1), Some(c2)) = (class1.chain_to(&gf), class2.chain_to(&fg)) else {
                continue;
            };
            if c1.len() - 1 > budget.max_steps || c2.len() - 1 > budget.max_steps {
                continue;
            }
            let forward = SimplicialMap::from_indices_unchecked(e1.clone(), e2.clone(), f.clone());
            let backward = SimplicialMap::from_indices_unchecked(e2.clone(), e1.clone(), g.clone());
            let c1 = ContiguityChain::from_indices(e1, e1, c1).reversed();
            let c2 = ContiguityChain::from_indices(e2, e2, c2).reversed();
            c1.validate()?;
            c2.validate()?;
            debug_assert!(c1.last().is_identity() && c2.last().is_identity());
            return Ok(FibrewiseSearch::Found(FibrewiseEquivalence {
                forward,
                backward,
                back_forth: c1,
                forth_back: c2,
            }));
        }
    }
    Ok(if complete {
        FibrewiseSearch::ProvenAbsent
    } else {
        FibrewiseSearch::BudgetExhausted
    })
}

/// A simplicial `t: I_q → I_n` with `t(0) = 0` and `t(q) = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionMap {
    pub q: usize,
    pub n: usize,
    pub images: Vec<usize>,
}

impl SubdivisionMap {
    pub fn new(q: usize, n: usize, images: Vec<usize>) -> Result<SubdivisionMap> {
        if images.len() != q + 1 || images.iter().any(|&x| x > n) {
            return Err(Error::VertexListMismatch);
        }
        if images[0] != 0 || images[q] != n {
            return Err(Error::Precondition(
                "a subdivision map fixes both endpoints".into(),
            ));
        }
        if images.windows(2).any(|w| w[0].abs_diff(w[1]) > 1) {
            return Err(Error::Precondition(
                "consecutive images must be equal or adjacent".into(),
            ));
        }
        Ok(SubdivisionMap { q, n, images })
    }

    /// Simpliciality and the endpoint conditions do not force this; it is
    /// reported, not assumed.
    pub fn is_monotone(&self) -> bool {
        self.images.windows(2).all(|w| w[0] <= w[1])
    }

    /// Every subdivision map `I_q → I_n`, in lexicographic order.
    pub fn all(q: usize, n: usize) -> Vec<SubdivisionMap> {
        let mut out = Vec::new();
        let mut cur = vec![0usize];
        fn go(q: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<SubdivisionMap>) {
            let last = *cur.last().unwrap();
            // the remaining steps must still be able to reach n
            if n - last.min(n) > q + 1 - cur.len() {
                return;
            }
            if cur.len() == q + 1 {
                if last == n {
                    out.push(SubdivisionMap {
                        q,
                        n,
                        images: cur.clone(),
                    });
                }
                return;
            }
            for next in [last.wrapping_sub(1), last, last + 1] {
                if next <= n {
                    cur.push(next);
                    go(q, n, cur, out);
                    cur.pop();
                }
            }
        }
        go(q, n, &mut cur, &mut out);
        out
    }

    /// `H ∘ (1_K × t): K × I_q → X` for `H: K × I_n → X`.
    pub fn reparametrize(&self, h: &Homotopy) -> Result<Homotopy> {
        if h.m() != self.n {
            return Err(Error::ShapeMismatch);
        }
        let cyl = cylinder(h.base(), self.q);
        let images = (0..cyl.complex().num_vertices())
            .map(|x| {
                let (v, i) = (x / (self.q + 1), x % (self.q + 1));
                h.map.image_of_index(h.cylinder.index(v, self.images[i]))
            })
            .collect();
        Ok(Homotopy {
            map: SimplicialMap::from_indices(
                cyl.complex().clone(),
                h.map.codomain().clone(),
                images,
            )?,
            cylinder: cyl,
        })
    }
}

/// Two lifts of one square become fibrewise contiguous after some
/// subdivision: searches `t: I_q → I_n` for `q = n..=max_q` and a fibrewise
/// chain `F0 ∘ (1 × t) ∼_p F1 ∘ (1 × t)`.
pub fn compare_lifts(
    p: &SimplicialMap,
    f0: &Homotopy,
    f1: &Homotopy,
    max_q: usize,
    budget: &Budget,
) -> Result<Option<(SubdivisionMap, ContiguityChain)>> {
    if f0.m() != f1.m() || **f0.base() != **f1.base() {
        return Err(Error::ShapeMismatch);
    }
    if f0.column(0) != f1.column(0) || p.compose(&f0.map)? != p.compose(&f1.map)? {
        return Err(Error::Precondition(
            "not two lifts of the same square".into(),
        ));
    }
    let n = f0.m();
    for q in n..=max_q.max(n) {
        let found = SubdivisionMap::all(q, n).into_iter().try_for_each(|t| {
            let a = match t.reparametrize(f0) {
                Ok(a) => a,
                Err(e) => return ControlFlow::Break(Err(e)),
            };
            let b = t.reparametrize(f1).expect("same shape");
            match fibrewise_contiguous(p, &a.map, &b.map, budget) {
                Ok(ChainSearch::Found(c)) => ControlFlow::Break(Ok((t, c))),
                Ok(_) => ControlFlow::Continue(()),
                Err(e) => ControlFlow::Break(Err(e)),
            }
        });
        if let ControlFlow::Break(r) = found {
            return r.map(Some);
        }
    }
    Ok(None)
}

/// The trivial fibration `B × F → B` for `F = p⁻¹(b0)`.
pub fn trivial_model(
    p: &SimplicialMap,
    b0: crate::Vertex,
) -> Result<(Arc<Complex>, SimplicialMap)> {
    let f = super::fiber(p, b0)?
        .ok_or_else(|| Error::Precondition(format!("empty fiber over {b0}")))?;
    let prod = crate::complexes::categorical_product(p.codomain(), &Arc::new(f));
    Ok((prod.complex.clone(), prod.pr1))
}
