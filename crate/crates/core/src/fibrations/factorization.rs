use std::sync::Arc;

use crate::budget::Budget;
use crate::complexes::{diagonal, pullback, Complex, Product, Pullback, SimplicialMap};
use crate::contiguity::ContiguityChain;
use crate::error::{Error, Result};
use crate::moore::WindowedPathComplex;

/// `K → P_f → L` with `P_f = {(v, γ) : f(v) = α(γ)}` inside `K × L^[−w,w]`.
#[derive(Clone, Debug)]
pub struct MappingPathFactorization {
    pub paths: WindowedPathComplex,
    pub space: Pullback,
    /// `j(v) = (v, c_{f(v)})`.
    pub j: SimplicialMap,
    /// `p(v, γ) = ω(γ)`.
    pub p: SimplicialMap,
    /// `α′(v, γ) = v`.
    pub alpha: SimplicialMap,
    /// `j ∘ α′ ∼ 1` through the truncations `(v, γ) ↦ (v, γ_i)`, `i = −w, …, w`.
    pub retraction: ContiguityChain,
}

impl MappingPathFactorization {
    pub fn complex(&self) -> &Arc<Complex> {
        &self.space.complex
    }

    /// Re-checks `p ∘ j = f`, `α′ ∘ j = 1` and the retraction chain.
    pub fn check(&self, f: &SimplicialMap) -> Result<()> {
        if self.p.compose(&self.j)? != *f {
            return Err(Error::Certificate("p ∘ j differs from f".into()));
        }
        if !self.alpha.compose(&self.j)?.is_identity() {
            return Err(Error::Certificate("α′ ∘ j is not the identity".into()));
        }
        self.retraction.validate()?;
        if *self.retraction.first() != self.j.compose(&self.alpha)?
            || !self.retraction.last().is_identity()
        {
            return Err(Error::Certificate(
                "retraction chain has the wrong ends".into(),
            ));
        }
        Ok(())
    }
}

/// Truncation at every time of the window, applied to the path coordinate of each
/// vertex, as maps on `target`.
fn truncations(
    paths: &WindowedPathComplex,
    target: &Arc<Complex>,
    path_of: impl Fn(usize) -> usize,
    rebuild: impl Fn(usize, usize) -> Option<usize>,
) -> Result<ContiguityChain> {
    let (a, b) = paths.window();
    let steps = (a..=b)
        .map(|i| {
            let images = (0..target.num_vertices())
                .map(|x| {
                    let gamma = paths.path(path_of(x) as u32).truncate(i);
                    let id = paths
                        .index_of(&gamma)
                        .expect("truncation stays in the window");
                    rebuild(x, id as usize)
                        .ok_or_else(|| Error::Internal("truncation left the space".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            SimplicialMap::from_indices(target.clone(), target.clone(), images)
        })
        .collect::<Result<Vec<_>>>()?;
    ContiguityChain::new(steps)
}

/// The factorization `f = p ∘ j` of `f: K → L` through the mapping path
/// space, built on the window `[−w, w]`.
pub fn mapping_path_factorization(
    f: &SimplicialMap,
    w: usize,
    budget: &Budget,
) -> Result<MappingPathFactorization> {
    let paths = WindowedPathComplex::new(f.codomain(), -(w as i64), w as i64, budget)?;
    let space = pullback(f, &paths.alpha())?;
    let c = paths.constants();
    let j = space.mediator(&SimplicialMap::identity(f.domain()), &c.compose(f)?)?;
    let p = paths.omega().compose(&space.to_right)?;
    let alpha = space.to_left.clone();
    let n = paths.num_paths();
    let pf = &space.complex;
    let retraction = truncations(
        &paths,
        pf,
        |x| pf.vertex(x) as usize % n,
        |x, id| pf.index_of((pf.vertex(x) as usize / n * n + id) as u32),
    )?;
    let out = MappingPathFactorization {
        paths,
        space,
        j,
        p,
        alpha,
        retraction,
    };
    out.check(f)?;
    Ok(out)
}

/// `Δ = (α, ω) ∘ c` for `c: K → K^[0,w]`, `v ↦ c_v`.
#[derive(Clone, Debug)]
pub struct DiagonalFactorization {
    pub paths: WindowedPathComplex,
    pub square: Product,
    pub c: SimplicialMap,
    pub endpoints: SimplicialMap,
    /// `c ∘ α ∼ 1` through the truncations `γ ↦ γ_i`.
    pub retraction: ContiguityChain,
}

pub fn diagonal_factorization(
    k: &Arc<Complex>,
    w: usize,
    budget: &Budget,
) -> Result<DiagonalFactorization> {
    let paths = WindowedPathComplex::new(k, 0, w as i64, budget)?;
    let (square, delta) = diagonal(k);
    let c = paths.constants();
    let endpoints = paths.endpoints(&square)?;
    if endpoints.compose(&c)? != delta {
        return Err(Error::Internal("(α, ω) ∘ c differs from Δ".into()));
    }
    let retraction = truncations(&paths, paths.complex(), |x| x, |_, id| Some(id))?;
    if *retraction.first() != c.compose(&paths.alpha())? || !retraction.last().is_identity() {
        return Err(Error::Internal(
            "truncation chain has the wrong ends".into(),
        ));
    }
    Ok(DiagonalFactorization {
        paths,
        square,
        c,
        endpoints,
        retraction,
    })
}
