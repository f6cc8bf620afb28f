use std::sync::Arc;

use crate::budget::Budget;
use crate::complexes::{cylinder, Complex, SimplicialMap};
use crate::contiguity::Homotopy;
use crate::error::{Error, Result};
use crate::moore::WindowedPathComplex;
use crate::Vertex;

/// A lift `Ω: L × I_m → K^[a−m, b+m]` of `(G, H)` through `(α, ω)`.
#[derive(Clone, Debug)]
pub struct PathLift {
    pub window: WindowedPathComplex,
    pub lift: Homotopy,
}

/// Lifts for `(α, ω): K^[a,b] → K × K` with `m`-step homotopies, sharing
/// the padded window `K^[a−m, b+m]` across calls.
pub struct PathLifter<'a> {
    small: &'a WindowedPathComplex,
    big: WindowedPathComplex,
    extension: SimplicialMap,
    m: usize,
}

impl<'a> PathLifter<'a> {
    pub fn new(
        small: &'a WindowedPathComplex,
        m: usize,
        budget: &Budget,
    ) -> Result<PathLifter<'a>> {
        let (a, b) = small.window();
        let big = WindowedPathComplex::new(small.base(), a - m as i64, b + m as i64, budget)?;
        let extension = small.extension_into(&big)?;
        Ok(PathLifter {
            small,
            big,
            extension,
            m,
        })
    }

    pub fn window(&self) -> &WindowedPathComplex {
        &self.big
    }

    /// Solves the lifting square explicitly.
    ///
    /// `φ: L → K^[a,b]` gives the starting paths; `G` moves their start
    /// points and `H` their end points. At time `i` the lifted path runs `G`
    /// backwards from `G(v, i)` to `G(v, 0)`, then `φ(v)`, then `H` from
    /// `H(v, 0)` to `H(v, i)`:
    ///
    /// ```text
    /// Ω(v,i)(j) = G(v,i)      j ≤ a−i
    ///             G(v,a−j)    a−i ≤ j ≤ a
    ///             φ(v)(j)     a ≤ j ≤ b
    ///             H(v,j−b)    b ≤ j ≤ b+i
    ///             H(v,i)      j ≥ b+i
    /// ```
    ///
    /// Simpliciality and both postconditions are checked on the result.
    pub fn lift(&self, phi: &SimplicialMap, g: &Homotopy, h: &Homotopy) -> Result<Homotopy> {
        let small = self.small;
        let base = small.base();
        let l = phi.domain();
        if **phi.codomain() != **small.complex()
            || **g.base() != **l
            || **h.base() != **l
            || g.m() != self.m
            || h.m() != self.m
            || **g.map.codomain() != **base
            || **h.map.codomain() != **base
        {
            return Err(Error::ShapeMismatch);
        }
        if small.alpha().compose(phi)? != g.column(0) || small.omega().compose(phi)? != h.column(0)
        {
            return Err(Error::Precondition(
                "(α, ω) ∘ φ differs from (G, H) at time 0".into(),
            ));
        }
        let m = self.m;
        let (a, b) = small.window();
        let cyl = cylinder(l, m);
        let mut images = vec![0usize; cyl.complex().num_vertices()];
        let mut samples: Vec<Vertex> = Vec::new();
        for v in 0..l.num_vertices() {
            let vv = l.vertex(v);
            let start = small.path(phi.image(vv)?);
            for i in 0..=m {
                samples.clear();
                for j in a - m as i64..=b + m as i64 {
                    let ii = i as i64;
                    let w = if j <= a - ii {
                        g.value(vv, i)?
                    } else if j <= a {
                        g.value(vv, (a - j) as usize)?
                    } else if j <= b {
                        start.value_at(j)
                    } else if j <= b + ii {
                        h.value(vv, (j - b) as usize)?
                    } else {
                        h.value(vv, i)?
                    };
                    samples.push(w);
                }
                let id = self.big.id_of_samples(&samples).ok_or_else(|| {
                    Error::Internal(format!("Ω({vv},{i}) is not a walk: {samples:?}"))
                })?;
                images[cyl.index(v, i)] = id as usize;
            }
        }
        let map =
            SimplicialMap::from_indices(cyl.complex().clone(), self.big.complex().clone(), images)?;
        self.big.adjoint(&map)?;
        let lift = Homotopy { cylinder: cyl, map };
        self.check(phi, g, h, &lift)?;
        Ok(lift)
    }

    /// `α′ ∘ Ω = G`, `ω′ ∘ Ω = H` and `Ω ∘ i_0 = ext ∘ φ`.
    pub fn check(
        &self,
        phi: &SimplicialMap,
        g: &Homotopy,
        h: &Homotopy,
        lift: &Homotopy,
    ) -> Result<()> {
        if self.big.alpha().compose(&lift.map)?.indices() != g.map.indices() {
            return Err(Error::Internal("α ∘ Ω differs from G".into()));
        }
        if self.big.omega().compose(&lift.map)?.indices() != h.map.indices() {
            return Err(Error::Internal("ω ∘ Ω differs from H".into()));
        }
        if lift.column(0) != self.extension.compose(phi)? {
            return Err(Error::Internal("Ω at time 0 differs from φ".into()));
        }
        Ok(())
    }
}

/// One-off [`PathLifter::lift`].
pub fn path_fibration_lift(
    small: &WindowedPathComplex,
    phi: &SimplicialMap,
    g: &Homotopy,
    h: &Homotopy,
    budget: &Budget,
) -> Result<PathLift> {
    if g.m() != h.m() {
        return Err(Error::ShapeMismatch);
    }
    let lifter = PathLifter::new(small, g.m(), budget)?;
    let lift = lifter.lift(phi, g, h)?;
    Ok(PathLift {
        window: lifter.big,
        lift,
    })
}

/// Every valid `(φ, G, H)` for `L`, `K^[a,b]` and `m`: `φ` ranges over all
/// maps `L → K^[a,b]`, and `G`, `H` over all homotopies `L × I_m → K`
/// starting at `α ∘ φ` and `ω ∘ φ`.
pub fn lift_inputs(
    l: &Arc<Complex>,
    small: &WindowedPathComplex,
    m: usize,
) -> Vec<(SimplicialMap, Homotopy, Homotopy)> {
    let base = small.base();
    let cyl = cylinder(l, m);
    let homotopies_from = |start: &SimplicialMap| -> Vec<Homotopy> {
        let candidates = (0..cyl.complex().num_vertices())
            .map(|x| {
                let (v, i) = (x / (m + 1), x % (m + 1));
                if i == 0 {
                    vec![start.image_of_index(v)]
                } else {
                    (0..base.num_vertices()).collect()
                }
            })
            .collect();
        crate::search::MapSearch::new(cyl.complex(), base)
            .candidates(candidates)
            .all()
            .into_iter()
            .map(|images| Homotopy {
                cylinder: cyl.clone(),
                map: SimplicialMap::from_indices_unchecked(
                    cyl.complex().clone(),
                    base.clone(),
                    images,
                ),
            })
            .collect()
    };
    let mut out = Vec::new();
    for phi in SimplicialMap::enumerate(l, small.complex()) {
        let gs = homotopies_from(&small.alpha().compose(&phi).expect("shapes agree"));
        let hs = homotopies_from(&small.omega().compose(&phi).expect("shapes agree"));
        for g in &gs {
            for h in &hs {
                out.push((phi.clone(), g.clone(), h.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(k: Complex) -> Arc<Complex> {
        Arc::new(k)
    }

    fn homotopy(l: &Arc<Complex>, k: &Arc<Complex>, m: usize, images: Vec<usize>) -> Homotopy {
        let cyl = cylinder(l, m);
        Homotopy {
            map: SimplicialMap::from_indices(cyl.complex().clone(), k.clone(), images).unwrap(),
            cylinder: cyl,
        }
    }

    #[test]
    fn one_step_at_the_end() {
        let e1 = arc(Complex::simplex(1));
        let pt = arc(Complex::point());
        let small = WindowedPathComplex::new(&e1, 0, 0, &Budget::default()).unwrap();
        let phi =
            SimplicialMap::from_indices(pt.clone(), small.complex().clone(), vec![0]).unwrap();
        let g = homotopy(&pt, &e1, 1, vec![0, 0]);
        let h = homotopy(&pt, &e1, 1, vec![0, 1]);
        let out = path_fibration_lift(&small, &phi, &g, &h, &Budget::default()).unwrap();
        assert_eq!(out.window.window(), (-1, 1));
        let top = out.window.path(out.lift.value(0, 1).unwrap());
        assert_eq!(top.samples(), &[0, 0, 1]);
        assert_eq!(top.window_start(), -1);
    }

    #[test]
    fn stationary_ends_pad_the_path() {
        let c3 = arc(Complex::cycle(3));
        let pt = arc(Complex::point());
        let small = WindowedPathComplex::new(&c3, 0, 1, &Budget::default()).unwrap();
        let ab = small.id_of_samples(&[0, 1]).unwrap();
        let phi =
            SimplicialMap::from_indices(pt.clone(), small.complex().clone(), vec![ab as usize])
                .unwrap();
        let g = homotopy(&pt, &c3, 2, vec![0, 0, 0]);
        let h = homotopy(&pt, &c3, 2, vec![1, 1, 1]);
        let out = path_fibration_lift(&small, &phi, &g, &h, &Budget::default()).unwrap();
        for i in 0..=2 {
            assert_eq!(
                out.window.path(out.lift.value(0, i).unwrap()).samples(),
                &[0, 0, 0, 1, 1, 1]
            );
        }
    }

    #[test]
    fn end_moves_along_an_edge() {
        let c3 = arc(Complex::cycle(3));
        let pt = arc(Complex::point());
        let small = WindowedPathComplex::new(&c3, 0, 1, &Budget::default()).unwrap();
        let ab = small.id_of_samples(&[0, 1]).unwrap();
        let phi =
            SimplicialMap::from_indices(pt.clone(), small.complex().clone(), vec![ab as usize])
                .unwrap();
        let g = homotopy(&pt, &c3, 1, vec![0, 0]);
        let h = homotopy(&pt, &c3, 1, vec![1, 2]);
        let out = path_fibration_lift(&small, &phi, &g, &h, &Budget::default()).unwrap();
        let top = out.window.path(out.lift.value(0, 1).unwrap());
        assert_eq!(top.samples(), &[0, 0, 1, 2]);
        assert_eq!(top.trimmed().samples(), &[0, 1, 2]);
    }

    #[test]
    fn rejects_mismatched_start() {
        let e1 = arc(Complex::simplex(1));
        let pt = arc(Complex::point());
        let small = WindowedPathComplex::new(&e1, 0, 0, &Budget::default()).unwrap();
        let phi =
            SimplicialMap::from_indices(pt.clone(), small.complex().clone(), vec![0]).unwrap();
        let g = homotopy(&pt, &e1, 1, vec![1, 1]);
        let h = homotopy(&pt, &e1, 1, vec![0, 1]);
        assert!(matches!(
            path_fibration_lift(&small, &phi, &g, &h, &Budget::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn small_census_has_no_failures() {
        let e1 = arc(Complex::simplex(1));
        let small = WindowedPathComplex::new(&e1, 0, 1, &Budget::default()).unwrap();
        let inputs = lift_inputs(&e1, &small, 1);
        assert!(!inputs.is_empty());
        for (phi, g, h) in inputs {
            path_fibration_lift(&small, &phi, &g, &h, &Budget::default()).unwrap();
        }
    }
}
