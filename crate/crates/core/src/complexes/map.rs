use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::Complex;
use crate::error::{Error, Result};
use crate::Vertex;

/// A vertex map between two complexes that sends simplices to simplices.
///
/// Images are stored as codomain vertex indices, positioned by domain
/// vertex index.
#[derive(Clone)]
pub struct SimplicialMap {
    domain: Arc<Complex>,
    codomain: Arc<Complex>,
    images: Vec<usize>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && same(&self.domain, &other.domain)
            && same(&self.codomain, &other.codomain)
    }
}

impl Eq for SimplicialMap {}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

pub(crate) fn same(a: &Arc<Complex>, b: &Arc<Complex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Validates a vertex assignment, reporting the first facet whose image is
/// not a simplex.
pub fn validate_map(
    domain: Arc<Complex>,
    codomain: Arc<Complex>,
    assignment: &BTreeMap<Vertex, Vertex>,
) -> Result<SimplicialMap> {
    let mut images = Vec::with_capacity(domain.num_vertices());
    for &v in domain.vertices() {
        let w = *assignment.get(&v).ok_or(Error::MissingImage(v))?;
        images.push(codomain.idx(w)?);
    }
    if let Some(&extra) = assignment.keys().find(|v| !domain.contains_vertex(**v)) {
        return Err(Error::UnknownVertex(extra));
    }
    SimplicialMap::from_indices(domain, codomain, images)
}

impl SimplicialMap {
    pub fn from_indices(
        domain: Arc<Complex>,
        codomain: Arc<Complex>,
        images: Vec<usize>,
    ) -> Result<SimplicialMap> {
        if images.len() != domain.num_vertices() {
            return Err(Error::VertexListMismatch);
        }
        let n = codomain.num_vertices();
        if let Some(&bad) = images.iter().find(|&&i| i >= n) {
            return Err(Error::Internal(format!(
                "codomain index {bad} out of range"
            )));
        }
        let map = SimplicialMap {
            domain,
            codomain,
            images,
        };
        map.check()?;
        Ok(map)
    }

    /// Trusted constructor for maps produced by searches that already
    /// enforce simpliciality.
    pub(crate) fn from_indices_unchecked(
        domain: Arc<Complex>,
        codomain: Arc<Complex>,
        images: Vec<usize>,
    ) -> SimplicialMap {
        debug_assert_eq!(images.len(), domain.num_vertices());
        SimplicialMap {
            domain,
            codomain,
            images,
        }
    }

    pub fn from_fn(
        domain: Arc<Complex>,
        codomain: Arc<Complex>,
        f: impl Fn(Vertex) -> Vertex,
    ) -> Result<SimplicialMap> {
        let images = domain
            .vertices()
            .iter()
            .map(|&v| codomain.idx(f(v)))
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::from_indices(domain, codomain, images)
    }

    pub fn from_pairs(
        domain: Arc<Complex>,
        codomain: Arc<Complex>,
        pairs: &[(Vertex, Vertex)],
    ) -> Result<SimplicialMap> {
        validate_map(domain, codomain, &pairs.iter().copied().collect())
    }

    fn check(&self) -> Result<()> {
        let mut buf = Vec::new();
        for (facet, idx) in self.domain.facets().iter().zip(self.domain.facet_indices()) {
            buf.clear();
            buf.extend(idx.iter().map(|&i| self.images[i]));
            if !self.codomain.spans(&buf) {
                let mut image: Vec<Vertex> = buf.iter().map(|&i| self.codomain.vertex(i)).collect();
                image.sort_unstable();
                image.dedup();
                return Err(Error::NotSimplicial {
                    facet: facet.clone(),
                    image,
                });
            }
        }
        Ok(())
    }

    /// Every simplicial map `dom → cod`, in lexicographic order of image indices.
    pub fn enumerate(dom: &Arc<Complex>, cod: &Arc<Complex>) -> Vec<SimplicialMap> {
        crate::search::all_maps(dom, cod)
            .into_iter()
            .map(|images| SimplicialMap::from_indices_unchecked(dom.clone(), cod.clone(), images))
            .collect()
    }

    pub fn identity(k: &Arc<Complex>) -> SimplicialMap {
        SimplicialMap::from_indices_unchecked(k.clone(), k.clone(), (0..k.num_vertices()).collect())
    }

    pub fn constant(
        domain: &Arc<Complex>,
        codomain: &Arc<Complex>,
        w: Vertex,
    ) -> Result<SimplicialMap> {
        let i = codomain.idx(w)?;
        Ok(SimplicialMap::from_indices_unchecked(
            domain.clone(),
            codomain.clone(),
            vec![i; domain.num_vertices()],
        ))
    }

    /// Inclusion of a subcomplex (checked).
    pub fn inclusion(sub: &Arc<Complex>, sup: &Arc<Complex>) -> Result<SimplicialMap> {
        SimplicialMap::from_fn(sub.clone(), sup.clone(), |v| v)
    }

    pub fn domain(&self) -> &Arc<Complex> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Complex> {
        &self.codomain
    }

    pub fn image(&self, v: Vertex) -> Result<Vertex> {
        Ok(self.codomain.vertex(self.images[self.domain.idx(v)?]))
    }

    pub fn image_of_index(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn indices(&self) -> &[usize] {
        &self.images
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.domain
            .vertices()
            .iter()
            .zip(&self.images)
            .map(|(&v, &i)| (v, self.codomain.vertex(i)))
    }

    pub fn assignment(&self) -> BTreeMap<Vertex, Vertex> {
        self.pairs().collect()
    }

    pub fn same_shape(&self, other: &SimplicialMap) -> bool {
        same(&self.domain, &other.domain) && same(&self.codomain, &other.codomain)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SimplicialMap) -> Result<SimplicialMap> {
        if !same(inner.codomain(), &self.domain) {
            return Err(Error::ShapeMismatch);
        }
        Ok(SimplicialMap::from_indices_unchecked(
            inner.domain.clone(),
            self.codomain.clone(),
            inner.images.iter().map(|&i| self.images[i]).collect(),
        ))
    }

    /// Restriction to a subcomplex of the domain.
    pub fn restrict(&self, sub: &Arc<Complex>) -> Result<SimplicialMap> {
        if !sub.is_subcomplex_of(&self.domain) {
            return Err(Error::Precondition(
                "restriction target is not a subcomplex of the domain".into(),
            ));
        }
        let images = sub
            .vertices()
            .iter()
            .map(|&v| self.images[self.domain.index_of(v).unwrap()])
            .collect();
        Ok(SimplicialMap::from_indices_unchecked(
            sub.clone(),
            self.codomain.clone(),
            images,
        ))
    }

    /// Same vertex map viewed with a different (compatible) codomain.
    pub fn with_codomain(&self, codomain: &Arc<Complex>) -> Result<SimplicialMap> {
        SimplicialMap::from_fn(self.domain.clone(), codomain.clone(), |v| {
            self.image(v).expect("domain vertex")
        })
    }

    pub fn is_constant(&self) -> bool {
        self.images.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_identity(&self) -> bool {
        same(&self.domain, &self.codomain) && self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Vertex set of the image, sorted.
    pub fn image_vertices(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self
            .images
            .iter()
            .map(|&i| self.codomain.vertex(i))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Glues `f: U → L` and `g: V → L` into a map on `U ∪ V ⊆ K`.
pub fn paste_maps(f: &SimplicialMap, g: &SimplicialMap, k: &Complex) -> Result<SimplicialMap> {
    if !same(f.codomain(), g.codomain()) {
        return Err(Error::ShapeMismatch);
    }
    for sub in [f.domain(), g.domain()] {
        if let Some(bad) = sub.facets().iter().find(|s| !k.is_simplex(s)) {
            return Err(Error::NotASubcomplex(bad.clone()));
        }
    }
    let mut assignment = f.assignment();
    for (v, w) in g.pairs() {
        if let Some(&prev) = assignment.get(&v) {
            if prev != w {
                return Err(Error::PasteConflict {
                    vertex: v,
                    left: prev,
                    right: w,
                });
            }
        }
        assignment.insert(v, w);
    }
    let union = Complex::from_simplices(
        f.domain()
            .facets()
            .iter()
            .chain(g.domain().facets())
            .cloned()
            .collect(),
    );
    validate_map(Arc::new(union), f.codomain().clone(), &assignment)
}
