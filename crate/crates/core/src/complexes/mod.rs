//! Finite abstract simplicial complexes stored by their facets, simplicial
//! maps between them, categorical products and pullbacks.

mod iso;
mod map;
mod product;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::Vertex;

pub use iso::are_isomorphic;
pub use map::{paste_maps, validate_map, SimplicialMap};
pub use product::{
    categorical_product, cylinder, diagonal, pair_map, product_map, pullback, Cylinder, Product,
    Pullback,
};

/// Pairing data attached to a complex that is literally a categorical
/// product `left × right`.
///
/// Product vertices are dense: the vertex with id `k` is the pair
/// `(left[k / |right|], right[k % |right|])`, so vertex ids coincide with
/// vertex indices.
#[derive(Clone, Debug)]
pub struct Factors {
    pub left: Arc<Complex>,
    pub right: Arc<Complex>,
}

impl Factors {
    pub fn split_index(&self, k: usize) -> (usize, usize) {
        let n = self.right.num_vertices();
        (k / n, k % n)
    }

    pub fn join_index(&self, i: usize, j: usize) -> usize {
        i * self.right.num_vertices() + j
    }

    pub fn pair(&self, v: Vertex) -> (Vertex, Vertex) {
        let (i, j) = self.split_index(v as usize);
        (self.left.vertex(i), self.right.vertex(j))
    }
}

/// A finite abstract simplicial complex, represented by its facets.
///
/// Vertices and facets are kept sorted, so two complexes built from the same
/// simplices compare (and serialize) identically.
#[derive(Clone)]
pub struct Complex {
    vertices: Vec<Vertex>,
    facets: Vec<Vec<Vertex>>,
    index: HashMap<Vertex, usize>,
    facet_idx: Vec<Vec<usize>>,
    facet_bits: Vec<FixedBitSet>,
    incident: Vec<Vec<usize>>,
    factors: Option<Factors>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("vertices", &self.vertices)
            .field("facets", &self.facets)
            .finish()
    }
}

/// Builds a complex from a list of simplices; only the inclusion-maximal
/// ones are kept as facets.
pub fn build_complex<I, S>(facet_list: I) -> Result<Complex>
where
    I: IntoIterator<Item = S>,
    S: IntoIterator<Item = Vertex>,
{
    let mut sets = Vec::new();
    for (k, s) in facet_list.into_iter().enumerate() {
        let set: BTreeSet<Vertex> = s.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyFacet(k));
        }
        sets.push(set.into_iter().collect::<Vec<_>>());
    }
    if sets.is_empty() {
        return Err(Error::EmptyFacetList);
    }
    Ok(Complex::from_simplices(sets))
}

impl Complex {
    /// `sets` must be nonempty and every set nonempty and sorted.
    pub(crate) fn from_simplices(sets: Vec<Vec<Vertex>>) -> Complex {
        Complex::assemble(sets, true)
    }

    /// Like [`Complex::from_simplices`] for sets already known to be
    /// pairwise incomparable.
    pub(crate) fn from_maximal(sets: Vec<Vec<Vertex>>) -> Complex {
        Complex::assemble(sets, false)
    }

    fn assemble(mut sets: Vec<Vec<Vertex>>, prune: bool) -> Complex {
        let vertices: Vec<Vertex> = sets
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<Vertex, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = vertices.len();

        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut kept: Vec<(Vec<Vertex>, FixedBitSet)> = Vec::new();
        for s in sets {
            let mut bits = FixedBitSet::with_capacity(n);
            for v in &s {
                bits.insert(index[v]);
            }
            if prune && kept.iter().any(|(_, k)| bits.is_subset(k)) {
                continue;
            }
            kept.push((s, bits));
        }
        kept.sort_by(|a, b| a.0.cmp(&b.0));

        let mut incident = vec![Vec::new(); n];
        let mut facets = Vec::with_capacity(kept.len());
        let mut facet_idx = Vec::with_capacity(kept.len());
        let mut facet_bits = Vec::with_capacity(kept.len());
        for (fi, (s, bits)) in kept.into_iter().enumerate() {
            let idx: Vec<usize> = s.iter().map(|v| index[v]).collect();
            for &i in &idx {
                incident[i].push(fi);
            }
            facets.push(s);
            facet_idx.push(idx);
            facet_bits.push(bits);
        }
        Complex {
            vertices,
            facets,
            index,
            facet_idx,
            facet_bits,
            incident,
            factors: None,
        }
    }

    pub(crate) fn with_factors(mut self, factors: Factors) -> Complex {
        self.factors = Some(factors);
        self
    }

    /// The one-vertex complex `{0}`.
    pub fn point() -> Complex {
        Complex::from_simplices(vec![vec![0]])
    }

    /// The full simplex on vertices `0..=dim`.
    pub fn simplex(dim: u32) -> Complex {
        Complex::from_simplices(vec![(0..=dim).collect()])
    }

    /// The boundary of an `n`-gon: vertices `0..n`, edges `{i, i+1 mod n}`.
    pub fn cycle(n: u32) -> Complex {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Complex::from_simplices((0..n).map(|i| sorted2(i, (i + 1) % n)).collect())
    }

    /// The interval `I_n`: vertices `0..=n`, edges `{j, j+1}`.
    pub fn interval(n: u32) -> Complex {
        if n == 0 {
            return Complex::point();
        }
        Complex::from_simplices((0..n).map(|j| vec![j, j + 1]).collect())
    }

    /// The path complex on the given vertex sequence (consecutive pairs as edges).
    pub fn path(vertices: &[Vertex]) -> Result<Complex> {
        if vertices.len() < 2 {
            return build_complex(vertices.iter().map(|&v| [v]));
        }
        build_complex(vertices.windows(2).map(|w| [w[0], w[1]]))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<Vertex>] {
        &self.facets
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn dimension(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    pub fn vertex(&self, idx: usize) -> Vertex {
        self.vertices[idx]
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub(crate) fn idx(&self, v: Vertex) -> Result<usize> {
        self.index_of(v).ok_or(Error::UnknownVertex(v))
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.index.contains_key(&v)
    }

    pub fn factors(&self) -> Option<&Factors> {
        self.factors.as_ref()
    }

    pub(crate) fn facet_indices(&self) -> &[Vec<usize>] {
        &self.facet_idx
    }

    pub(crate) fn incident_facets(&self, idx: usize) -> &[usize] {
        &self.incident[idx]
    }

    /// True iff `s` is a nonempty subset of some facet. Vertices outside the
    /// complex yield `false`.
    pub fn is_simplex(&self, s: &[Vertex]) -> bool {
        if s.is_empty() {
            return false;
        }
        let mut idx = Vec::with_capacity(s.len());
        for &v in s {
            match self.index_of(v) {
                Some(i) => idx.push(i),
                None => return false,
            }
        }
        self.spans(&idx)
    }

    /// Simplex test on vertex indices; the empty set passes so partial
    /// assignments can be checked incrementally.
    pub(crate) fn spans(&self, idx: &[usize]) -> bool {
        let Some(&first) = idx.first() else {
            return true;
        };
        self.incident[first].iter().any(|&f| {
            let bits = &self.facet_bits[f];
            idx.iter().all(|&i| bits.contains(i))
        })
    }

    /// Same as [`Complex::spans`], with the indices split over two slices.
    pub(crate) fn spans2(&self, a: &[usize], b: &[usize]) -> bool {
        let first = match (a.first(), b.first()) {
            (Some(&x), _) => x,
            (None, Some(&x)) => x,
            (None, None) => return true,
        };
        self.incident[first].iter().any(|&f| {
            let bits = &self.facet_bits[f];
            a.iter().all(|&i| bits.contains(i)) && b.iter().all(|&i| bits.contains(i))
        })
    }

    /// Every facet of `self` is a simplex of `other`.
    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.facets.iter().all(|f| other.is_simplex(f))
    }

    /// Full subcomplex spanned by `w` (vertices of `w` outside the complex
    /// are ignored).
    pub fn full_subcomplex(&self, w: &[Vertex]) -> Result<Complex> {
        let keep: BTreeSet<Vertex> = w
            .iter()
            .copied()
            .filter(|v| self.contains_vertex(*v))
            .collect();
        if keep.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let sets: Vec<Vec<Vertex>> = self
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .copied()
                    .filter(|v| keep.contains(v))
                    .collect::<Vec<_>>()
            })
            .filter(|s| !s.is_empty())
            .collect();
        Ok(Complex::from_simplices(sets))
    }

    /// Subcomplex generated by a subset of this complex's facets, given by
    /// facet positions.
    pub fn facet_generated(&self, facet_positions: &[usize]) -> Result<Complex> {
        if facet_positions.is_empty() {
            return Err(Error::EmptyFacetList);
        }
        Ok(Complex::from_simplices(
            facet_positions
                .iter()
                .map(|&i| self.facets[i].clone())
                .collect(),
        ))
    }

    /// Subcomplex generated by simplices of `self`.
    pub fn subcomplex<I, S>(&self, simplices: I) -> Result<Complex>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Vertex>,
    {
        let sub = build_complex(simplices)?;
        for f in sub.facets() {
            if !self.is_simplex(f) {
                return Err(Error::NotASubcomplex(f.clone()));
            }
        }
        Ok(sub)
    }

    /// Renames vertices through an injective function.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Complex {
        Complex::from_simplices(
            self.facets
                .iter()
                .map(|s| {
                    let mut t: Vec<Vertex> = s.iter().map(|&v| f(v)).collect();
                    t.sort_unstable();
                    t
                })
                .collect(),
        )
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for f in &self.facet_idx {
            for w in f.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<Vertex>> = Default::default();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(self.vertices[i]);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

fn sorted2(a: Vertex, b: Vertex) -> Vec<Vertex> {
    if a < b {
        vec![a, b]
    } else {
        vec![b, a]
    }
}

/// Standard small complexes by name: `PT`, `E1`, `D2`, `C3`, `In` (interval),
/// `Dn` (full n-simplex), `Cn` (n-gon).
pub fn named_complex(name: &str) -> Option<Complex> {
    match name {
        "PT" => return Some(Complex::point()),
        "E1" => return Some(Complex::simplex(1)),
        _ => {}
    }
    let (head, tail) = name.split_at(1);
    let n: u32 = tail.parse().ok()?;
    match head {
        "I" => Some(Complex::interval(n)),
        "D" => Some(Complex::simplex(n)),
        "C" if n >= 3 => Some(Complex::cycle(n)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_keeps_maximal_sets() {
        let pt = build_complex([[0]]).unwrap();
        assert_eq!(pt.num_vertices(), 1);
        assert_eq!(pt.facets(), &[vec![0]]);

        let e1 = build_complex([[0, 1]]).unwrap();
        assert_eq!(e1.facets(), &[vec![0, 1]]);

        let d2 = build_complex(vec![vec![0, 1], vec![1, 2], vec![0, 1, 2]]).unwrap();
        assert_eq!(d2.facets(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn build_rejects_empty_input() {
        assert!(matches!(
            build_complex(Vec::<Vec<Vertex>>::new()),
            Err(Error::EmptyFacetList)
        ));
        assert!(matches!(
            build_complex(vec![vec![0], vec![]]),
            Err(Error::EmptyFacet(1))
        ));
    }

    #[test]
    fn simplex_membership() {
        let e1 = Complex::simplex(1);
        assert!(e1.is_simplex(&[0, 1]));
        let c3 = Complex::cycle(3);
        assert!(!c3.is_simplex(&[0, 1, 2]));
        assert!(c3.is_simplex(&[2, 0]));
        assert!(!c3.is_simplex(&[]));
        assert!(!c3.is_simplex(&[7]));
    }

    #[test]
    fn full_subcomplexes() {
        let c3 = Complex::cycle(3);
        assert_eq!(c3.full_subcomplex(&[0, 1]).unwrap().facets(), &[vec![0, 1]]);
        let d2 = Complex::simplex(2);
        assert_eq!(d2.full_subcomplex(&[0, 2]).unwrap().facets(), &[vec![0, 2]]);
        assert!(matches!(
            c3.full_subcomplex(&[]),
            Err(Error::EmptyVertexSet)
        ));
        let once = c3.full_subcomplex(&[0, 2]).unwrap();
        assert_eq!(once.full_subcomplex(&[0, 2]).unwrap(), once);
    }

    #[test]
    fn connectivity() {
        assert!(Complex::cycle(4).is_connected());
        let two = build_complex([[0], [1]]).unwrap();
        assert_eq!(two.components(), vec![vec![0], vec![1]]);
        assert!(!two.is_connected());
    }

    #[test]
    fn named() {
        assert_eq!(named_complex("C3").unwrap(), Complex::cycle(3));
        assert_eq!(
            named_complex("I2").unwrap().facets(),
            &[vec![0, 1], vec![1, 2]]
        );
        assert!(named_complex("C2").is_none());
        assert!(named_complex("Q").is_none());
    }
}
