use std::sync::Arc;

use super::lift::{solve_lift, whole_cylinder_lifts, LiftOutcome, LiftProblem};
use crate::budget::Budget;
use crate::complexes::{
    categorical_product, cylinder, product_map, pullback, Complex, Product, Pullback, SimplicialMap,
};
use crate::contiguity::{ContiguityClass, Explore, Homotopy};
use crate::error::{Error, Result};
use crate::moore::MoorePath;
use crate::Vertex;

/// Pullback of `p: E → B` along `f: K → B`; `to_left` is the pulled-back
/// map `K ×_B E → K`.
pub fn pullback_fibration(p: &SimplicialMap, f: &SimplicialMap) -> Result<Pullback> {
    pullback(f, p)
}

/// `p1 × p2: E1 × E2 → B1 × B2`, with both products.
pub fn product_fibration(
    p1: &SimplicialMap,
    p2: &SimplicialMap,
) -> (Product, Product, SimplicialMap) {
    let dom = categorical_product(p1.domain(), p2.domain());
    let cod = categorical_product(p1.codomain(), p2.codomain());
    let map = product_map(p1, p2, &dom, &cod).expect("factors match");
    (dom, cod, map)
}

/// `p⁻¹(b0)` as a full subcomplex of `E`; `None` when no vertex lies over `b0`.
pub fn fiber(p: &SimplicialMap, b0: Vertex) -> Result<Option<Complex>> {
    let bi = p.codomain().idx(b0)?;
    let over: Vec<Vertex> = p
        .indices()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == bi)
        .map(|(e, _)| p.domain().vertex(e))
        .collect();
    if over.is_empty() {
        return Ok(None);
    }
    Ok(Some(p.domain().full_subcomplex(&over)?))
}

/// `γ♯: F_{α(γ)} → F_{ω(γ)}` together with the lift it was read off.
#[derive(Clone, Debug)]
pub struct Transport {
    pub source: Arc<Complex>,
    pub target: Arc<Complex>,
    pub map: SimplicialMap,
    pub lift: Homotopy,
}

/// The lift problem behind transport: `H(v, i) = γ(i)` on `F × I_n` with
/// `φ` the inclusion of the fiber, for `γ` normalized of length `n`.
pub fn transport_problem(
    p: &SimplicialMap,
    gamma: &MoorePath,
) -> Result<(LiftProblem, Arc<Complex>, Arc<Complex>)> {
    if **gamma.target() != **p.codomain() {
        return Err(Error::ShapeMismatch);
    }
    let gamma = gamma.normalize();
    let n = gamma.length();
    let fiber_of = |b: Vertex| -> Result<Arc<Complex>> {
        fiber(p, b)?
            .map(Arc::new)
            .ok_or_else(|| Error::Precondition(format!("empty fiber over {b}")))
    };
    let source = fiber_of(gamma.alpha())?;
    let target = fiber_of(gamma.omega())?;
    let cyl = cylinder(&source, n);
    let b = p.codomain();
    let images = (0..cyl.complex().num_vertices())
        .map(|x| b.index_of(gamma.value_at((x % (n + 1)) as i64)).unwrap())
        .collect();
    let h = Homotopy {
        map: SimplicialMap::from_indices(cyl.complex().clone(), b.clone(), images)?,
        cylinder: cyl,
    };
    let phi = SimplicialMap::inclusion(&source, p.domain())?;
    Ok((LiftProblem::new(p.clone(), h, phi)?, source, target))
}

fn read_transport(
    lift: Homotopy,
    source: &Arc<Complex>,
    target: &Arc<Complex>,
) -> Result<Transport> {
    let last = lift.column(lift.m());
    let map = SimplicialMap::from_fn(source.clone(), target.clone(), |v| last.image(v).unwrap())?;
    Ok(Transport {
        source: source.clone(),
        target: target.clone(),
        map,
        lift,
    })
}

/// Transport along `γ` via the first lift found by the column search.
pub fn fiber_transport(p: &SimplicialMap, gamma: &MoorePath, budget: &Budget) -> Result<Transport> {
    let (problem, source, target) = transport_problem(p, gamma)?;
    match solve_lift(&problem, budget) {
        LiftOutcome::Lifted(lift) => read_transport(lift, &source, &target),
        LiftOutcome::NoLift => Err(Error::LiftFailed(format!(
            "no lift of the path {:?}",
            gamma.samples()
        ))),
        LiftOutcome::Exhausted => Err(Error::CapExceeded {
            what: "lift search states",
            count: budget.max_states as u128 + 1,
            cap: budget.max_states as u128,
        }),
    }
}

/// Transports read off every lift found (up to `limit`), and whether they all
/// lie in one contiguity class. `complete` is false when the lift set was
/// truncated by `limit` or the state cap.
#[derive(Clone, Debug)]
pub struct TransportSpread {
    pub maps: Vec<SimplicialMap>,
    pub lifts_examined: usize,
    pub complete: bool,
    pub one_class: bool,
}

pub fn transport_spread(
    p: &SimplicialMap,
    gamma: &MoorePath,
    limit: usize,
    budget: &Budget,
) -> Result<TransportSpread> {
    let (problem, source, target) = transport_problem(p, gamma)?;
    let (lifts, complete) = match whole_cylinder_lifts(&problem, budget, limit + 1) {
        Ok(mut v) => {
            let complete = v.len() <= limit;
            v.truncate(limit);
            (v, complete)
        }
        Err(()) => (Vec::new(), false),
    };
    let lifts_examined = lifts.len();
    let mut maps: Vec<SimplicialMap> = Vec::new();
    for l in lifts {
        let t = read_transport(l, &source, &target)?;
        if !maps.contains(&t.map) {
            maps.push(t.map);
        }
    }
    let one_class = match maps.first() {
        None => true,
        Some(first) => {
            let class = ContiguityClass::explore(
                &source,
                &target,
                first.indices(),
                budget,
                Explore::default(),
            );
            maps.iter().all(|m| class.contains(m.indices()))
        }
    };
    Ok(TransportSpread {
        maps,
        lifts_examined,
        complete,
        one_class,
    })
}
