use std::collections::HashMap;
use std::sync::Arc;

use super::MoorePath;
use crate::budget::Budget;
use crate::complexes::{categorical_product, cylinder, Complex, Product, SimplicialMap};
use crate::contiguity::{contiguity_chain, ChainSearch, ContiguityChain};
use crate::error::{Error, Result};
use crate::Vertex;

/// `K^[a,b]`: vertices are the simplicial maps `[a, b] → K` (walks in `K`
/// that may pause), and a set of them is a simplex when, for every
/// `j ∈ [a, b)`, the union of their values at `j` and `j + 1` is a simplex
/// of `K`.
///
/// Paths are numbered densely in lexicographic order of their base-vertex
/// index sequences; the path with number `k` is vertex `k` of the complex.
#[derive(Clone, Debug)]
pub struct WindowedPathComplex {
    base: Arc<Complex>,
    start: i64,
    end: i64,
    paths: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
    complex: Arc<Complex>,
}

/// Whether base index pairs `i, j` span a simplex (including `i == j`).
fn adjacency(k: &Complex) -> Vec<Vec<bool>> {
    let n = k.num_vertices();
    let mut adj = vec![vec![false; n]; n];
    for (i, row) in adj.iter_mut().enumerate() {
        row[i] = true;
    }
    for f in k.facet_indices() {
        for &i in f {
            for &j in f {
                adj[i][j] = true;
            }
        }
    }
    adj
}

/// Number of simplicial maps `[a, b] → K` (dynamic programming over walks).
pub fn count_paths(k: &Complex, a: i64, b: i64) -> u128 {
    let adj = adjacency(k);
    let n = k.num_vertices();
    let mut ways = vec![1u128; n];
    for _ in a..b {
        ways = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| adj[i][j])
                    .map(|i| ways[i])
                    .fold(0u128, u128::saturating_add)
            })
            .collect();
    }
    ways.into_iter().fold(0, u128::saturating_add)
}

impl WindowedPathComplex {
    pub fn new(
        base: &Arc<Complex>,
        a: i64,
        b: i64,
        budget: &Budget,
    ) -> Result<WindowedPathComplex> {
        if a > b {
            return Err(Error::Precondition(format!("empty window [{a}, {b}]")));
        }
        let count = count_paths(base, a, b);
        if count > budget.path_cap as u128 {
            return Err(Error::CapExceeded {
                what: "paths in the window",
                count,
                cap: budget.path_cap as u128,
            });
        }
        let adj = adjacency(base);
        let n = base.num_vertices();
        let len = (b - a + 1) as usize;
        let mut paths = Vec::with_capacity(count as usize);
        let mut cur = Vec::with_capacity(len);
        fn walk(
            adj: &[Vec<bool>],
            n: usize,
            len: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for j in 0..n {
                if cur.last().map_or(true, |&i| adj[i][j]) {
                    cur.push(j);
                    walk(adj, n, len, cur, out);
                    cur.pop();
                }
            }
        }
        walk(&adj, n, len, &mut cur, &mut paths);
        let lookup: HashMap<Vec<usize>, usize> = paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();

        let complex = Arc::new(Complex::from_simplices(path_facets(base, &lookup, len)));
        Ok(WindowedPathComplex {
            base: base.clone(),
            start: a,
            end: b,
            paths,
            lookup,
            complex,
        })
    }

    pub fn base(&self) -> &Arc<Complex> {
        &self.base
    }

    pub fn window(&self) -> (i64, i64) {
        (self.start, self.end)
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn num_paths(&self) -> usize {
        self.paths.len()
    }

    /// The path with vertex id `id`.
    pub fn path(&self, id: Vertex) -> MoorePath {
        let samples = self.paths[id as usize]
            .iter()
            .map(|&i| self.base.vertex(i))
            .collect();
        MoorePath::new_unchecked(self.base.clone(), self.start, samples)
    }

    pub fn paths(&self) -> impl Iterator<Item = MoorePath> + '_ {
        (0..self.paths.len() as Vertex).map(|i| self.path(i))
    }

    /// Vertex id of `γ`, if its support fits in the window.
    pub fn index_of(&self, gamma: &MoorePath) -> Option<Vertex> {
        if **gamma.target() != *self.base {
            return None;
        }
        let samples = gamma.samples_on(self.start, self.end)?;
        self.id_of_samples(&samples)
    }

    pub fn id_of_samples(&self, samples: &[Vertex]) -> Option<Vertex> {
        let key: Vec<usize> = samples
            .iter()
            .map(|&v| self.base.index_of(v))
            .collect::<Option<_>>()?;
        self.lookup.get(&key).map(|&i| i as Vertex)
    }

    /// Evaluation at time `j` as a map to the base.
    pub fn eval(&self, j: i64) -> SimplicialMap {
        let k = (j.clamp(self.start, self.end) - self.start) as usize;
        SimplicialMap::from_indices_unchecked(
            self.complex.clone(),
            self.base.clone(),
            self.paths.iter().map(|p| p[k]).collect(),
        )
    }

    pub fn alpha(&self) -> SimplicialMap {
        self.eval(self.start)
    }

    pub fn omega(&self) -> SimplicialMap {
        self.eval(self.end)
    }

    /// `(α, ω)` into `K × K`.
    pub fn endpoints(&self, kk: &Product) -> Result<SimplicialMap> {
        crate::complexes::pair_map(&self.alpha(), &self.omega(), kk)
    }

    /// `v ↦ c_v`.
    pub fn constants(&self) -> SimplicialMap {
        let len = self.paths.first().map_or(0, Vec::len);
        let images = (0..self.base.num_vertices())
            .map(|i| self.lookup[&vec![i; len]])
            .collect();
        SimplicialMap::from_indices_unchecked(self.base.clone(), self.complex.clone(), images)
    }

    /// Constant extension `K^[a,b] ↪ K^[a′,b′]` for a larger window.
    pub fn extension_into(&self, bigger: &WindowedPathComplex) -> Result<SimplicialMap> {
        if *bigger.base != *self.base || bigger.start > self.start || bigger.end < self.end {
            return Err(Error::ShapeMismatch);
        }
        SimplicialMap::from_fn(self.complex.clone(), bigger.complex.clone(), |id| {
            bigger.index_of(&self.path(id)).expect("extension fits")
        })
    }

    /// Checks the defining condition of `K^[a,b]` directly on a set of paths.
    pub fn is_exponential_simplex(&self, ids: &[Vertex]) -> bool {
        if ids.is_empty() {
            return false;
        }
        let len = self.paths[0].len();
        let mut buf = Vec::new();
        for j in 0..len {
            buf.clear();
            for &id in ids {
                buf.push(self.paths[id as usize][j]);
                if j + 1 < len {
                    buf.push(self.paths[id as usize][j + 1]);
                }
            }
            if !self.base.spans(&buf) {
                return false;
            }
        }
        true
    }

    /// `F: X × I_{b−a} → K`, `F(x, t) = f(x)(a + t)`, the exponential adjoint
    /// of `f: X → K^[a,b]`. `f` is simplicial iff `F` is.
    pub fn adjoint(&self, f: &SimplicialMap) -> Result<SimplicialMap> {
        if **f.codomain() != *self.complex {
            return Err(Error::ShapeMismatch);
        }
        let span = (self.end - self.start) as usize;
        let cyl = cylinder(f.domain(), span);
        let mut images = vec![0; cyl.complex().num_vertices()];
        for x in 0..f.domain().num_vertices() {
            let p = &self.paths[f.image_of_index(x)];
            for (t, &v) in p.iter().enumerate() {
                images[cyl.index(x, t)] = v;
            }
        }
        SimplicialMap::from_indices(cyl.complex().clone(), self.base.clone(), images)
    }
}

/// Maximal simplices of the path complex: for each sequence of facets
/// `τ_a, …, τ_{b−1}`, the paths with `{γ(j), γ(j+1)} ⊆ τ_j`. Those form a
/// product of sets `τ_a × (τ_a ∩ τ_{a+1}) × … × τ_{b−1}`. For a one-point
/// window the sets are `{γ : γ(a) ∈ τ}`.
fn path_facets(
    base: &Complex,
    lookup: &HashMap<Vec<usize>, usize>,
    len: usize,
) -> Vec<Vec<Vertex>> {
    let facets: Vec<Vec<usize>> = base.facet_indices().to_vec();
    let mut out = Vec::new();
    if len == 1 {
        for f in &facets {
            let mut s: Vec<Vertex> = f.iter().map(|&i| lookup[&vec![i]] as Vertex).collect();
            s.sort_unstable();
            out.push(s);
        }
        return out;
    }
    // slots[j] = allowed values at time j given the facet sequence chosen so far.
    fn choose(
        facets: &[Vec<usize>],
        len: usize,
        slots: &mut Vec<Vec<usize>>,
        lookup: &HashMap<Vec<usize>, usize>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let j = slots.len() - 1; // choosing τ_j, which constrains times j and j+1
        if j + 1 == len {
            let mut set = Vec::new();
            let mut cur = Vec::with_capacity(len);
            fn product(
                slots: &[Vec<usize>],
                cur: &mut Vec<usize>,
                lookup: &HashMap<Vec<usize>, usize>,
                set: &mut Vec<Vertex>,
            ) {
                if cur.len() == slots.len() {
                    set.push(lookup[cur.as_slice()] as Vertex);
                    return;
                }
                for &v in &slots[cur.len()] {
                    cur.push(v);
                    product(slots, cur, lookup, set);
                    cur.pop();
                }
            }
            product(slots, &mut cur, lookup, &mut set);
            set.sort_unstable();
            out.push(set);
            return;
        }
        for tau in facets {
            let here: Vec<usize> = slots[j]
                .iter()
                .copied()
                .filter(|v| tau.contains(v))
                .collect();
            if here.is_empty() {
                continue;
            }
            let saved = std::mem::replace(&mut slots[j], here);
            slots.push(tau.clone());
            choose(facets, len, slots, lookup, out);
            slots.pop();
            slots[j] = saved;
        }
    }
    let all: Vec<usize> = (0..base.num_vertices()).collect();
    let mut slots = vec![all];
    choose(&facets, len, &mut slots, lookup, &mut out);
    out
}

/// Certificate that `f ≃ g` through the path complex: a contiguity chain
/// `φ_0 = f, …, φ_m = g` and its adjoint `H′: K → L^[0,m]`,
/// `H′(v)(i) = φ_i(v)`, with `α ∘ H′ = f` and `ω ∘ H′ = g`.
#[derive(Clone, Debug)]
pub struct PHomotopy {
    pub chain: ContiguityChain,
    pub paths: WindowedPathComplex,
    pub adjoint: SimplicialMap,
}

/// Outcome of [`p_homotopic`].
#[derive(Clone, Debug)]
pub enum PHomotopySearch {
    Found(PHomotopy),
    ProvenAbsent,
    BudgetExhausted,
}

/// For finite complexes, P-homotopy coincides with the contiguity class, so
/// this searches a contiguity chain and packages it as a map into a window.
pub fn p_homotopic(
    f: &SimplicialMap,
    g: &SimplicialMap,
    budget: &Budget,
) -> Result<PHomotopySearch> {
    let chain = match contiguity_chain(f, g, budget)? {
        ChainSearch::Found(c) => c,
        ChainSearch::ProvenAbsent => return Ok(PHomotopySearch::ProvenAbsent),
        ChainSearch::BudgetExhausted { .. } => return Ok(PHomotopySearch::BudgetExhausted),
    };
    let m = chain.len() as i64;
    let paths = WindowedPathComplex::new(f.codomain(), 0, m, budget)?;
    let images: Vec<usize> = (0..f.domain().num_vertices())
        .map(|v| {
            let key: Vec<usize> = chain.steps().iter().map(|s| s.image_of_index(v)).collect();
            paths.lookup[&key]
        })
        .collect();
    let adjoint = SimplicialMap::from_indices(f.domain().clone(), paths.complex().clone(), images)?;
    Ok(PHomotopySearch::Found(PHomotopy {
        chain,
        paths,
        adjoint,
    }))
}

/// `K × K` paired with `K^[a,b]`, for the endpoint map `(α, ω)`.
pub fn endpoint_map(w: &WindowedPathComplex) -> (Product, SimplicialMap) {
    let kk = categorical_product(w.base(), w.base());
    let map = w.endpoints(&kk).expect("shapes agree");
    (kk, map)
}
