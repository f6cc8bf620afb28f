use std::sync::Arc;

use super::map::same;
use super::{Complex, Factors, SimplicialMap};
use crate::error::{Error, Result};
use crate::Vertex;

/// A categorical product together with its two projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub complex: Arc<Complex>,
    pub pr1: SimplicialMap,
    pub pr2: SimplicialMap,
}

impl Product {
    pub fn factors(&self) -> &Factors {
        self.complex
            .factors()
            .expect("product complexes carry factors")
    }

    pub fn left(&self) -> &Arc<Complex> {
        &self.factors().left
    }

    pub fn right(&self) -> &Arc<Complex> {
        &self.factors().right
    }

    /// Product vertex id of the pair `(v, w)`.
    pub fn vertex_of(&self, v: Vertex, w: Vertex) -> Result<Vertex> {
        let f = self.factors();
        Ok(f.join_index(f.left.idx(v)?, f.right.idx(w)?) as Vertex)
    }

    pub fn pair(&self, x: Vertex) -> (Vertex, Vertex) {
        self.factors().pair(x)
    }
}

/// `K × L` with simplices the sets whose two projections are simplices.
pub fn categorical_product(k: &Arc<Complex>, l: &Arc<Complex>) -> Product {
    let nl = l.num_vertices();
    let mut sets = Vec::with_capacity(k.num_facets() * l.num_facets());
    for s in k.facet_indices() {
        for t in l.facet_indices() {
            let mut set = Vec::with_capacity(s.len() * t.len());
            for &i in s {
                for &j in t {
                    set.push((i * nl + j) as Vertex);
                }
            }
            sets.push(set);
        }
    }
    let complex = Arc::new(Complex::from_maximal(sets).with_factors(Factors {
        left: k.clone(),
        right: l.clone(),
    }));
    let n = complex.num_vertices();
    let pr1 = SimplicialMap::from_indices_unchecked(
        complex.clone(),
        k.clone(),
        (0..n).map(|x| x / nl).collect(),
    );
    let pr2 = SimplicialMap::from_indices_unchecked(
        complex.clone(),
        l.clone(),
        (0..n).map(|x| x % nl).collect(),
    );
    Product { complex, pr1, pr2 }
}

/// The cylinder `K × I_m` and its bottom inclusion `i_0`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub base: Arc<Complex>,
    pub m: usize,
    pub product: Product,
    pub i0: SimplicialMap,
}

impl Cylinder {
    pub fn complex(&self) -> &Arc<Complex> {
        &self.product.complex
    }

    /// Cylinder vertex index of `(base vertex index, time)`.
    pub fn index(&self, v: usize, i: usize) -> usize {
        v * (self.m + 1) + i
    }

    /// Inclusion `v ↦ (v, i)`.
    pub fn level(&self, i: usize) -> SimplicialMap {
        SimplicialMap::from_indices_unchecked(
            self.base.clone(),
            self.complex().clone(),
            (0..self.base.num_vertices())
                .map(|v| self.index(v, i))
                .collect(),
        )
    }
}

/// `K × I_m`. `m = 0` is accepted and yields a copy of `K`.
pub fn cylinder(k: &Arc<Complex>, m: usize) -> Cylinder {
    let product = categorical_product(k, &Arc::new(Complex::interval(m as u32)));
    let mut cyl = Cylinder {
        base: k.clone(),
        m,
        i0: SimplicialMap::identity(k),
        product,
    };
    cyl.i0 = cyl.level(0);
    cyl
}

/// `(f1 × f2)(v1, v2) = (f1(v1), f2(v2))` between two products.
pub fn product_map(
    f1: &SimplicialMap,
    f2: &SimplicialMap,
    dom: &Product,
    cod: &Product,
) -> Result<SimplicialMap> {
    if !same(f1.domain(), dom.left())
        || !same(f2.domain(), dom.right())
        || !same(f1.codomain(), cod.left())
        || !same(f2.codomain(), cod.right())
    {
        return Err(Error::ShapeMismatch);
    }
    let (df, cf) = (dom.factors(), cod.factors());
    let images = (0..dom.complex.num_vertices())
        .map(|x| {
            let (i, j) = df.split_index(x);
            cf.join_index(f1.image_of_index(i), f2.image_of_index(j))
        })
        .collect();
    Ok(SimplicialMap::from_indices_unchecked(
        dom.complex.clone(),
        cod.complex.clone(),
        images,
    ))
}

/// `(f, g): X → K × L`.
pub fn pair_map(f: &SimplicialMap, g: &SimplicialMap, cod: &Product) -> Result<SimplicialMap> {
    if !same(f.domain(), g.domain())
        || !same(f.codomain(), cod.left())
        || !same(g.codomain(), cod.right())
    {
        return Err(Error::ShapeMismatch);
    }
    let cf = cod.factors();
    let images = (0..f.domain().num_vertices())
        .map(|x| cf.join_index(f.image_of_index(x), g.image_of_index(x)))
        .collect();
    Ok(SimplicialMap::from_indices_unchecked(
        f.domain().clone(),
        cod.complex.clone(),
        images,
    ))
}

/// The diagonal `Δ: K → K × K`.
pub fn diagonal(k: &Arc<Complex>) -> (Product, SimplicialMap) {
    let prod = categorical_product(k, k);
    let id = SimplicialMap::identity(k);
    let delta = pair_map(&id, &id, &prod).expect("shapes agree");
    (prod, delta)
}

/// `K ×_M L` for `f: K → M` and `g: L → M`: the full subcomplex of `K × L`
/// on pairs with `f(v) = g(w)`. Vertex ids are the ids those pairs have in
/// [`categorical_product`].
#[derive(Clone, Debug)]
pub struct Pullback {
    pub complex: Arc<Complex>,
    pub left: Arc<Complex>,
    pub right: Arc<Complex>,
    /// `g′: K ×_M L → K`.
    pub to_left: SimplicialMap,
    /// `f′: K ×_M L → L`.
    pub to_right: SimplicialMap,
    f: SimplicialMap,
    g: SimplicialMap,
}

impl Pullback {
    pub fn pair(&self, x: Vertex) -> (Vertex, Vertex) {
        let n = self.right.num_vertices();
        let x = x as usize;
        (self.left.vertex(x / n), self.right.vertex(x % n))
    }

    pub fn vertex_of(&self, v: Vertex, w: Vertex) -> Result<Vertex> {
        let id = (self.left.idx(v)? * self.right.num_vertices() + self.right.idx(w)?) as Vertex;
        if self.complex.contains_vertex(id) {
            Ok(id)
        } else {
            Err(Error::Precondition(format!(
                "({v}, {w}) is not a vertex of the pullback"
            )))
        }
    }

    /// The map `X → K ×_M L` induced by `a: X → K`, `b: X → L` with `f∘a = g∘b`.
    pub fn mediator(&self, a: &SimplicialMap, b: &SimplicialMap) -> Result<SimplicialMap> {
        if !same(a.domain(), b.domain())
            || !same(a.codomain(), &self.left)
            || !same(b.codomain(), &self.right)
        {
            return Err(Error::ShapeMismatch);
        }
        if self.f.compose(a)? != self.g.compose(b)? {
            return Err(Error::Precondition("square does not commute".into()));
        }
        let n = self.right.num_vertices();
        let images = (0..a.domain().num_vertices())
            .map(|x| {
                let id = (a.image_of_index(x) * n + b.image_of_index(x)) as Vertex;
                self.complex
                    .index_of(id)
                    .expect("commuting pair lies in the pullback")
            })
            .collect();
        Ok(SimplicialMap::from_indices_unchecked(
            a.domain().clone(),
            self.complex.clone(),
            images,
        ))
    }
}

pub fn pullback(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pullback> {
    if !same(f.codomain(), g.codomain()) {
        return Err(Error::ShapeMismatch);
    }
    let (k, l) = (f.domain().clone(), g.domain().clone());
    let nl = l.num_vertices();
    let keep = |i: usize, j: usize| f.image_of_index(i) == g.image_of_index(j);
    let mut sets = Vec::new();
    for s in k.facet_indices() {
        for t in l.facet_indices() {
            let set: Vec<Vertex> = s
                .iter()
                .flat_map(|&i| {
                    t.iter()
                        .filter(move |&&j| keep(i, j))
                        .map(move |&j| (i * nl + j) as Vertex)
                })
                .collect();
            if !set.is_empty() {
                sets.push(set);
            }
        }
    }
    if sets.is_empty() {
        return Err(Error::EmptyPullback);
    }
    for s in &mut sets {
        s.sort_unstable();
    }
    let complex = Arc::new(Complex::from_simplices(sets));
    let to_left = SimplicialMap::from_indices_unchecked(
        complex.clone(),
        k.clone(),
        complex
            .vertices()
            .iter()
            .map(|&x| x as usize / nl)
            .collect(),
    );
    let to_right = SimplicialMap::from_indices_unchecked(
        complex.clone(),
        l.clone(),
        complex
            .vertices()
            .iter()
            .map(|&x| x as usize % nl)
            .collect(),
    );
    Ok(Pullback {
        complex,
        left: k,
        right: l,
        to_left,
        to_right,
        f: f.clone(),
        g: g.clone(),
    })
}
