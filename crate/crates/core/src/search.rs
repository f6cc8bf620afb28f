//! Backtracking enumeration of simplicial maps between two complexes.

use std::ops::ControlFlow;

use crate::complexes::Complex;

/// Enumerates simplicial maps `dom → cod` (as codomain index vectors),
/// assigning domain vertices in index order and rejecting a partial
/// assignment as soon as some facet's image stops being a simplex.
pub(crate) struct MapSearch<'a> {
    cod: &'a Complex,
    /// Allowed codomain indices per domain vertex index.
    candidates: Vec<Vec<usize>>,
    /// For each domain vertex index `i`, the facets through `i`, truncated
    /// to vertices `≤ i`.
    partial_facets: Vec<Vec<Vec<usize>>>,
    /// Same facets, untruncated (used with a contiguity partner).
    full_facets: Vec<Vec<Vec<usize>>>,
    partner: Option<&'a [usize]>,
    prefix_ok: Option<&'a dyn Fn(&[usize]) -> bool>,
}

struct Ctx<'p> {
    partner: Option<&'p [usize]>,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl<'a> MapSearch<'a> {
    pub(crate) fn new(dom: &'a Complex, cod: &'a Complex) -> Self {
        let n = dom.num_vertices();
        let mut partial_facets = vec![Vec::new(); n];
        let mut full_facets = vec![Vec::new(); n];
        for i in 0..n {
            for &f in dom.incident_facets(i) {
                let facet = &dom.facet_indices()[f];
                partial_facets[i].push(facet.iter().copied().filter(|&x| x <= i).collect());
                full_facets[i].push(facet.clone());
            }
        }
        MapSearch {
            cod,
            candidates: vec![(0..cod.num_vertices()).collect(); n],
            partial_facets,
            full_facets,
            partner: None,
            prefix_ok: None,
        }
    }

    pub(crate) fn candidates(mut self, candidates: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(candidates.len(), self.candidates.len());
        self.candidates = candidates;
        self
    }

    /// Only maps contiguous to `partner` are produced.
    pub(crate) fn contiguous_to(mut self, partner: &'a [usize]) -> Self {
        self.partner = Some(partner);
        self
    }

    /// Extra pruning hook on assignment prefixes (indices `0..k`).
    pub(crate) fn prefix_filter(mut self, f: &'a dyn Fn(&[usize]) -> bool) -> Self {
        self.prefix_ok = Some(f);
        self
    }

    pub(crate) fn visit<B>(&self, f: impl FnMut(&[usize]) -> ControlFlow<B>) -> Option<B> {
        self.visit_with(self.partner, f)
    }

    /// Like [`MapSearch::visit`] with a contiguity partner given per call.
    pub(crate) fn visit_with<B>(
        &self,
        partner: Option<&[usize]>,
        mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> Option<B> {
        let n = self.candidates.len();
        let mut img = vec![0usize; n];
        let mut ctx = Ctx {
            partner,
            a: Vec::new(),
            b: Vec::new(),
        };
        match self.go(0, &mut img, &mut ctx, &mut f) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        }
    }

    fn go<B>(
        &self,
        i: usize,
        img: &mut Vec<usize>,
        ctx: &mut Ctx<'_>,
        f: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if i == img.len() {
            return f(img);
        }
        for &c in &self.candidates[i] {
            img[i] = c;
            if !self.consistent(i, img, ctx) {
                continue;
            }
            if let Some(p) = self.prefix_ok {
                if !p(&img[..=i]) {
                    continue;
                }
            }
            self.go(i + 1, img, ctx, f)?;
        }
        ControlFlow::Continue(())
    }

    fn consistent(&self, i: usize, img: &[usize], ctx: &mut Ctx<'_>) -> bool {
        for (k, part) in self.partial_facets[i].iter().enumerate() {
            ctx.a.clear();
            ctx.a.extend(part.iter().map(|&x| img[x]));
            let ok = match ctx.partner {
                None => self.cod.spans(&ctx.a),
                Some(p) => {
                    ctx.b.clear();
                    ctx.b.extend(self.full_facets[i][k].iter().map(|&x| p[x]));
                    self.cod.spans2(&ctx.a, &ctx.b)
                }
            };
            if !ok {
                return false;
            }
        }
        true
    }

    pub(crate) fn first(&self) -> Option<Vec<usize>> {
        self.visit(|m| ControlFlow::Break(m.to_vec()))
    }

    pub(crate) fn all(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.visit::<()>(|m| {
            out.push(m.to_vec());
            ControlFlow::Continue(())
        });
        out
    }
}

/// All simplicial maps `dom → cod`, as codomain index vectors in
/// lexicographic order.
pub(crate) fn all_maps(dom: &Complex, cod: &Complex) -> Vec<Vec<usize>> {
    MapSearch::new(dom, cod).all()
}
