use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::complexes::{cylinder, Complex, SimplicialMap};
use crate::contiguity::{chain_to_homotopy, contiguous, ContiguityChain, Homotopy};
use crate::error::{Error, Result};
use crate::search::MapSearch;

/// The square `p ∘ φ = H ∘ i_0`: find `H̃: K × I_m → E` with `H̃ ∘ i_0 = φ`
/// and `p ∘ H̃ = H`.
#[derive(Clone, Debug)]
pub struct LiftProblem {
    pub p: SimplicialMap,
    pub h: Homotopy,
    pub phi: SimplicialMap,
}

impl LiftProblem {
    pub fn new(p: SimplicialMap, h: Homotopy, phi: SimplicialMap) -> Result<LiftProblem> {
        if **h.base() != **phi.domain()
            || **h.map.codomain() != **p.codomain()
            || **phi.codomain() != **p.domain()
        {
            return Err(Error::ShapeMismatch);
        }
        let lhs = p.compose(&phi)?;
        let rhs = h.column(0);
        if lhs.indices() != rhs.indices() {
            return Err(Error::Precondition("p ∘ φ differs from H ∘ i_0".into()));
        }
        Ok(LiftProblem { p, h, phi })
    }

    pub fn k(&self) -> &Arc<Complex> {
        self.h.base()
    }

    pub fn m(&self) -> usize {
        self.h.m()
    }

    /// Indices of `E` over each vertex of `B`.
    fn preimages(&self) -> Vec<Vec<usize>> {
        preimages(&self.p)
    }

    /// Whether `lift` solves the problem.
    pub fn check(&self, lift: &Homotopy) -> Result<()> {
        if lift.m() != self.m() || **lift.base() != **self.k() {
            return Err(Error::ShapeMismatch);
        }
        if lift.column(0).indices() != self.phi.indices() {
            return Err(Error::Certificate("lift does not start at φ".into()));
        }
        if self.p.compose(&lift.map)?.indices() != self.h.map.indices() {
            return Err(Error::Certificate("lift does not cover H".into()));
        }
        Ok(())
    }
}

pub(crate) fn preimages(p: &SimplicialMap) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); p.codomain().num_vertices()];
    for (e, &b) in p.indices().iter().enumerate() {
        out[b].push(e);
    }
    out
}

/// Outcome of a lift search.
#[derive(Clone, Debug)]
pub enum LiftOutcome {
    Lifted(Homotopy),
    /// Every candidate was examined.
    NoLift,
    /// The state cap or deadline stopped the search.
    Exhausted,
}

impl LiftOutcome {
    pub fn lifted(&self) -> Option<&Homotopy> {
        match self {
            LiftOutcome::Lifted(h) => Some(h),
            _ => None,
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, LiftOutcome::Lifted(_))
    }
}

/// Column-by-column search: lift `H(·, i)` to a map contiguous to the
/// previous lifted column, backtracking over the choices.
pub fn solve_lift(problem: &LiftProblem, budget: &Budget) -> LiftOutcome {
    let pre = problem.preimages();
    let k = problem.k().clone();
    let e = problem.p.domain().clone();
    let columns: Vec<Vec<usize>> = (0..=problem.m())
        .map(|i| problem.h.column(i).indices().to_vec())
        .collect();
    let mut failed: HashSet<(usize, Vec<usize>)> = HashSet::new();
    let mut states = 0usize;
    let mut path = vec![problem.phi.indices().to_vec()];

    enum Stop {
        Cap,
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        k: &Complex,
        e: &Complex,
        pre: &[Vec<usize>],
        columns: &[Vec<usize>],
        path: &mut Vec<Vec<usize>>,
        failed: &mut HashSet<(usize, Vec<usize>)>,
        states: &mut usize,
        budget: &Budget,
    ) -> Result<bool, Stop> {
        if i == columns.len() {
            return Ok(true);
        }
        let prev = path.last().unwrap().clone();
        if failed.contains(&(i, prev.clone())) {
            return Ok(false);
        }
        let cands: Vec<Vec<usize>> = columns[i].iter().map(|&b| pre[b].clone()).collect();
        let search = MapSearch::new(k, e).candidates(cands);
        let mut options = Vec::new();
        search.visit_with::<()>(Some(&prev), |m| {
            options.push(m.to_vec());
            ControlFlow::Continue(())
        });
        for opt in options {
            *states += 1;
            if *states > budget.max_states || budget.expired() {
                return Err(Stop::Cap);
            }
            path.push(opt);
            if go(i + 1, k, e, pre, columns, path, failed, states, budget)? {
                return Ok(true);
            }
            path.pop();
        }
        failed.insert((i, prev));
        Ok(false)
    }

    match go(
        1,
        &k,
        &e,
        &pre,
        &columns,
        &mut path,
        &mut failed,
        &mut states,
        budget,
    ) {
        Ok(true) => {
            let chain = ContiguityChain::from_indices(&k, &e, path);
            let lift = chain_to_homotopy(&chain).expect("columns are pairwise contiguous");
            LiftOutcome::Lifted(lift)
        }
        Ok(false) => LiftOutcome::NoLift,
        Err(Stop::Cap) => LiftOutcome::Exhausted,
    }
}

/// Backtracking over whole assignments `K × I_m → E` at once, without using
/// the column decomposition.
pub fn solve_lift_whole_cylinder(problem: &LiftProblem, budget: &Budget) -> LiftOutcome {
    match whole_cylinder_lifts(problem, budget, 1) {
        Ok(mut v) if !v.is_empty() => LiftOutcome::Lifted(v.remove(0)),
        Ok(_) => LiftOutcome::NoLift,
        Err(()) => LiftOutcome::Exhausted,
    }
}

/// Up to `limit` solutions of the lift problem, in search order. `Err` when
/// the state cap stopped the search early.
pub fn whole_cylinder_lifts(
    problem: &LiftProblem,
    budget: &Budget,
    limit: usize,
) -> Result<Vec<Homotopy>, ()> {
    let pre = problem.preimages();
    let k = problem.k();
    let cyl = cylinder(k, problem.m());
    let cands: Vec<Vec<usize>> = (0..cyl.complex().num_vertices())
        .map(|x| {
            let (v, i) = (x / (problem.m() + 1), x % (problem.m() + 1));
            if i == 0 {
                vec![problem.phi.image_of_index(v)]
            } else {
                pre[problem.h.map.image_of_index(x)].clone()
            }
        })
        .collect();
    let e = problem.p.domain();
    let mut out = Vec::new();
    let mut visited = 0usize;
    let hit_cap = MapSearch::new(cyl.complex(), e)
        .candidates(cands)
        .visit(|m| {
            visited += 1;
            if visited > budget.max_states || budget.expired() {
                return ControlFlow::Break(true);
            }
            out.push(m.to_vec());
            if out.len() >= limit {
                ControlFlow::Break(false)
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap_or(false);
    if hit_cap {
        return Err(());
    }
    Ok(out
        .into_iter()
        .map(|m| Homotopy {
            cylinder: cyl.clone(),
            map: SimplicialMap::from_indices_unchecked(cyl.complex().clone(), e.clone(), m),
        })
        .collect())
}

/// Given `f ∼ g` (one step) and `f̃` over `f`, a `g̃` over `g` contiguous to `f̃`.
pub fn lift_contiguous(
    p: &SimplicialMap,
    f: &SimplicialMap,
    g: &SimplicialMap,
    f_lift: &SimplicialMap,
) -> Result<Option<SimplicialMap>> {
    if !contiguous(f, g)? {
        return Err(Error::Precondition("f and g are not contiguous".into()));
    }
    if p.compose(f_lift)?.indices() != f.indices() {
        return Err(Error::Precondition("f̃ does not lie over f".into()));
    }
    let pre = preimages(p);
    let cands = g.indices().iter().map(|&b| pre[b].clone()).collect();
    Ok(MapSearch::new(f.domain(), p.domain())
        .candidates(cands)
        .contiguous_to(f_lift.indices())
        .first()
        .map(|m| SimplicialMap::from_indices_unchecked(f.domain().clone(), p.domain().clone(), m)))
}

/// Solvability of one instance under both formulations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub stepwise: bool,
    pub whole: bool,
}

/// Summary of a census of lift problems for one map.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Census {
    pub instances: u64,
    pub solvable: u64,
    pub unsolvable: u64,
    pub disagreements: u64,
    pub exhausted: bool,
    /// `(K name, m)` pairs covered.
    pub families: Vec<(String, usize)>,
}

/// Overall verdict of [`sample_fibration`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FibrationStatus {
    PassedAllSampled,
    Counterexample,
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct FibrationVerdict {
    pub status: FibrationStatus,
    pub census: Census,
    /// First unsolvable instance (search fully explored).
    pub counterexample: Option<LiftProblem>,
    /// First instance on which the two formulations disagree.
    pub disagreement: Option<LiftProblem>,
}

/// Enumerates every lift problem for `p` with `K` from `family` and `m` from
/// `ms` (all `H: K × I_m → B`, all `φ` over `H(·, 0)`), solving each one
/// column by column and over the whole cylinder.
pub fn lift_census(
    p: &SimplicialMap,
    family: &[(&str, Arc<Complex>)],
    ms: &[usize],
    budget: &Budget,
    mut on_instance: impl FnMut(&LiftProblem, Agreement),
) -> FibrationVerdict {
    let mut census = Census::default();
    let mut counterexample = None;
    let mut disagreement = None;
    let pre = preimages(p);
    let b = p.codomain();
    let e = p.domain();
    'outer: for (name, k) in family {
        for &m in ms {
            census.families.push((name.to_string(), m));
            let cyl = cylinder(k, m);
            let hs = MapSearch::new(cyl.complex(), b).all();
            for h in hs {
                let hmap =
                    SimplicialMap::from_indices_unchecked(cyl.complex().clone(), b.clone(), h);
                let homotopy = Homotopy {
                    cylinder: cyl.clone(),
                    map: hmap,
                };
                let h0 = homotopy.column(0);
                let cands: Vec<Vec<usize>> = h0.indices().iter().map(|&x| pre[x].clone()).collect();
                let phis = MapSearch::new(k, e).candidates(cands).all();
                for phi in phis {
                    if budget.expired() || census.instances >= budget.max_states as u64 {
                        census.exhausted = true;
                        break 'outer;
                    }
                    let problem = LiftProblem {
                        p: p.clone(),
                        h: homotopy.clone(),
                        phi: SimplicialMap::from_indices_unchecked(k.clone(), e.clone(), phi),
                    };
                    census.instances += 1;
                    let step = solve_lift(&problem, budget);
                    let whole = solve_lift_whole_cylinder(&problem, budget);
                    if matches!(step, LiftOutcome::Exhausted)
                        || matches!(whole, LiftOutcome::Exhausted)
                    {
                        census.exhausted = true;
                        continue;
                    }
                    let ag = Agreement {
                        stepwise: step.is_solved(),
                        whole: whole.is_solved(),
                    };
                    if ag.stepwise != ag.whole {
                        census.disagreements += 1;
                        disagreement.get_or_insert_with(|| problem.clone());
                    }
                    if ag.whole {
                        census.solvable += 1;
                    } else {
                        census.unsolvable += 1;
                        counterexample.get_or_insert_with(|| problem.clone());
                    }
                    on_instance(&problem, ag);
                }
            }
        }
    }
    let status = if counterexample.is_some() {
        FibrationStatus::Counterexample
    } else if census.exhausted {
        FibrationStatus::BudgetExhausted
    } else {
        FibrationStatus::PassedAllSampled
    };
    FibrationVerdict {
        status,
        census,
        counterexample,
        disagreement,
    }
}

/// The default test family: `K ∈ {PT, E1, I_2, C3}`, `m ∈ {1, 2}`.
pub fn sample_family() -> Vec<(&'static str, Arc<Complex>)> {
    vec![
        ("PT", Arc::new(Complex::point())),
        ("E1", Arc::new(Complex::simplex(1))),
        ("I2", Arc::new(Complex::interval(2))),
        ("C3", Arc::new(Complex::cycle(3))),
    ]
}

/// Census over [`sample_family`] with `m ∈ {1, 2}`.
pub fn sample_fibration(p: &SimplicialMap, budget: &Budget) -> FibrationVerdict {
    lift_census(p, &sample_family(), &[1, 2], budget, |_, _| {})
}
