//! Contiguity of simplicial maps, contiguity chains and their cylinder
//! encoding, and strong collapses.

mod class;
mod strong;

use std::sync::Arc;

use crate::budget::Budget;
use crate::complexes::{cylinder, Complex, Cylinder, SimplicialMap};
use crate::error::{Error, Result};
use crate::Vertex;

pub use class::ContiguityClass;
pub(crate) use class::Explore;
pub use strong::{
    core, dominated, is_strongly_collapsible, same_strong_homotopy_type, strong_deformation,
    strong_equivalence, Core, StrongDeformation, StrongEquivalence,
};

/// `f(σ) ∪ g(σ)` is a simplex of the codomain for every facet `σ`.
pub fn contiguous(f: &SimplicialMap, g: &SimplicialMap) -> Result<bool> {
    if !f.same_shape(g) {
        return Err(Error::ShapeMismatch);
    }
    Ok(contiguous_indices(
        f.domain(),
        f.codomain(),
        f.indices(),
        g.indices(),
    ))
}

pub(crate) fn contiguous_indices(dom: &Complex, cod: &Complex, f: &[usize], g: &[usize]) -> bool {
    let mut a = Vec::new();
    let mut b = Vec::new();
    dom.facet_indices().iter().all(|s| {
        a.clear();
        b.clear();
        a.extend(s.iter().map(|&i| f[i]));
        b.extend(s.iter().map(|&i| g[i]));
        cod.spans2(&a, &b)
    })
}

/// Maps `φ_0 ∼ φ_1 ∼ … ∼ φ_m` with consecutive maps contiguous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContiguityChain {
    steps: Vec<SimplicialMap>,
}

impl ContiguityChain {
    pub fn new(steps: Vec<SimplicialMap>) -> Result<ContiguityChain> {
        let Some(first) = steps.first() else {
            return Err(Error::Precondition("a chain needs at least one map".into()));
        };
        if steps.iter().any(|s| !s.same_shape(first)) {
            return Err(Error::ShapeMismatch);
        }
        for (i, w) in steps.windows(2).enumerate() {
            if !contiguous(&w[0], &w[1])? {
                return Err(Error::NotContiguous(i, i + 1));
            }
        }
        Ok(ContiguityChain { steps })
    }

    pub(crate) fn from_indices(
        dom: &Arc<Complex>,
        cod: &Arc<Complex>,
        steps: Vec<Vec<usize>>,
    ) -> ContiguityChain {
        ContiguityChain {
            steps: steps
                .into_iter()
                .map(|s| SimplicialMap::from_indices_unchecked(dom.clone(), cod.clone(), s))
                .collect(),
        }
    }

    pub fn trivial(f: &SimplicialMap) -> ContiguityChain {
        ContiguityChain {
            steps: vec![f.clone()],
        }
    }

    /// Number of contiguity steps `m`.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn steps(&self) -> &[SimplicialMap] {
        &self.steps
    }

    pub fn first(&self) -> &SimplicialMap {
        &self.steps[0]
    }

    pub fn last(&self) -> &SimplicialMap {
        self.steps.last().unwrap()
    }

    pub fn reversed(&self) -> ContiguityChain {
        let mut steps = self.steps.clone();
        steps.reverse();
        ContiguityChain { steps }
    }

    /// `self` followed by `next` (which must start where `self` ends).
    pub fn then(&self, next: &ContiguityChain) -> Result<ContiguityChain> {
        if self.last() != next.first() {
            return Err(Error::Precondition("chains do not meet".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend(next.steps[1..].iter().cloned());
        Ok(ContiguityChain { steps })
    }

    /// `h ∘ φ_i` for every step.
    pub fn post_compose(&self, h: &SimplicialMap) -> Result<ContiguityChain> {
        Ok(ContiguityChain {
            steps: self
                .steps
                .iter()
                .map(|s| h.compose(s))
                .collect::<Result<_>>()?,
        })
    }

    /// `φ_i ∘ h` for every step.
    pub fn pre_compose(&self, h: &SimplicialMap) -> Result<ContiguityChain> {
        Ok(ContiguityChain {
            steps: self
                .steps
                .iter()
                .map(|s| s.compose(h))
                .collect::<Result<_>>()?,
        })
    }

    /// Re-checks every consecutive pair.
    pub fn validate(&self) -> Result<()> {
        ContiguityChain::new(self.steps.clone()).map(|_| ())
    }
}

/// Outcome of a bounded chain search.
#[derive(Clone, Debug)]
pub enum ChainSearch {
    Found(ContiguityChain),
    /// The whole contiguity class of the source was explored.
    ProvenAbsent,
    /// The state cap or deadline was hit, or the shortest chain is longer
    /// than `max_steps` (its length is reported when known).
    BudgetExhausted {
        shortest: Option<usize>,
    },
}

impl ChainSearch {
    pub fn found(&self) -> Option<&ContiguityChain> {
        match self {
            ChainSearch::Found(c) => Some(c),
            _ => None,
        }
    }

    pub fn into_found(self) -> Option<ContiguityChain> {
        match self {
            ChainSearch::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// A shortest chain from `f` to `g` of length at most `budget.max_steps`.
pub fn contiguity_chain(
    f: &SimplicialMap,
    g: &SimplicialMap,
    budget: &Budget,
) -> Result<ChainSearch> {
    if !f.same_shape(g) {
        return Err(Error::ShapeMismatch);
    }
    let class = ContiguityClass::explore(
        f.domain(),
        f.codomain(),
        f.indices(),
        budget,
        Explore {
            candidates: None,
            target: Some(g.indices()),
        },
    );
    Ok(chain_in_class(&class, g, budget))
}

pub(crate) fn chain_in_class(
    class: &ContiguityClass,
    g: &SimplicialMap,
    budget: &Budget,
) -> ChainSearch {
    match class.chain_to(g.indices()) {
        Some(steps) if steps.len() - 1 <= budget.max_steps => ChainSearch::Found(
            ContiguityChain::from_indices(class.domain(), class.codomain(), steps),
        ),
        Some(steps) => ChainSearch::BudgetExhausted {
            shortest: Some(steps.len() - 1),
        },
        None if class.is_complete() => ChainSearch::ProvenAbsent,
        None => ChainSearch::BudgetExhausted { shortest: None },
    }
}

/// A simplicial map `H: K × I_m → L`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub cylinder: Cylinder,
    pub map: SimplicialMap,
}

impl Homotopy {
    pub fn new(cylinder: Cylinder, map: SimplicialMap) -> Result<Homotopy> {
        if map.domain() != cylinder.complex() {
            return Err(Error::ShapeMismatch);
        }
        Ok(Homotopy { cylinder, map })
    }

    pub fn m(&self) -> usize {
        self.cylinder.m
    }

    pub fn base(&self) -> &Arc<Complex> {
        &self.cylinder.base
    }

    /// `v ↦ H(v, i)`.
    pub fn column(&self, i: usize) -> SimplicialMap {
        self.map
            .compose(&self.cylinder.level(i))
            .expect("level maps into the cylinder")
    }

    pub fn value(&self, v: Vertex, i: usize) -> Result<Vertex> {
        let vi = self.cylinder.base.idx(v)?;
        Ok(self
            .map
            .codomain()
            .vertex(self.map.image_of_index(self.cylinder.index(vi, i))))
    }
}

/// `H(v, i) = φ_i(v)` on `K × I_m`; validated as a simplicial map.
pub fn chain_to_homotopy(chain: &ContiguityChain) -> Result<Homotopy> {
    let k = chain.first().domain().clone();
    let cyl = cylinder(&k, chain.len());
    let n = cyl.complex().num_vertices();
    let mut images = vec![0; n];
    for (i, step) in chain.steps().iter().enumerate() {
        for v in 0..k.num_vertices() {
            images[cyl.index(v, i)] = step.image_of_index(v);
        }
    }
    let map = SimplicialMap::from_indices(
        cyl.complex().clone(),
        chain.first().codomain().clone(),
        images,
    )
    .map_err(|e| Error::Internal(format!("cylinder map of a contiguity chain: {e}")))?;
    Ok(Homotopy { cylinder: cyl, map })
}

/// `φ_i(v) = H(v, i)`.
pub fn homotopy_to_chain(h: &Homotopy) -> ContiguityChain {
    ContiguityChain {
        steps: (0..=h.m()).map(|i| h.column(i)).collect(),
    }
}

/// Outcome of asking whether a subcomplex is categorical in `K`.
#[derive(Clone, Debug)]
pub enum Categorical {
    /// Chain from the inclusion to the constant map at `target`.
    Yes {
        target: Vertex,
        chain: ContiguityChain,
    },
    No,
    Unknown,
}

/// Whether the inclusion of `sub` into `k` is in the contiguity class of a
/// constant map. The closest constant is returned, ties broken by smallest id.
pub fn is_categorical(
    sub: &Arc<Complex>,
    k: &Arc<Complex>,
    budget: &Budget,
) -> Result<Categorical> {
    let incl = SimplicialMap::inclusion(sub, k)?;
    let class = ContiguityClass::explore(sub, k, incl.indices(), budget, Explore::default());
    Ok(match class.nearest_constant() {
        Some((c, d)) if d <= budget.max_steps => {
            let steps = class
                .chain_to(&vec![c; sub.num_vertices()])
                .expect("constant is in the class");
            Categorical::Yes {
                target: k.vertex(c),
                chain: ContiguityChain::from_indices(sub, k, steps),
            }
        }
        Some(_) => Categorical::Unknown,
        None if class.is_complete() => Categorical::No,
        None => Categorical::Unknown,
    })
}

/// [`is_categorical`] for the full subcomplex of `k` spanned by `w`.
pub fn is_categorical_subcomplex(
    k: &Arc<Complex>,
    w: &[Vertex],
    budget: &Budget,
) -> Result<Categorical> {
    let sub = Arc::new(k.full_subcomplex(w)?);
    is_categorical(&sub, k, budget)
}
