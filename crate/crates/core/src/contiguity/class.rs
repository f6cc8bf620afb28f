use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock};

use crate::budget::Budget;
use crate::complexes::Complex;
use crate::search::MapSearch;

/// Breadth-first exploration of the contiguity class of a map.
///
/// Maps are codomain index vectors. Three shapes are handled:
/// an explicit BFS over the class, a codomain with a single facet (every
/// map is contiguous to every other), and a codomain that is a categorical
/// product, where contiguity holds iff it holds on both coordinates, so the
/// class is the product of the two coordinate classes.
pub struct ContiguityClass {
    domain: Arc<Complex>,
    codomain: Arc<Complex>,
    root: Vec<usize>,
    kind: Kind,
}

enum Kind {
    Explicit(Explicit),
    Full,
    Product(Box<ContiguityClass>, Box<ContiguityClass>),
}

struct Explicit {
    states: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    parent: Vec<usize>,
    dist: Vec<usize>,
    complete: bool,
    prefixes: OnceLock<HashSet<Vec<usize>>>,
}

/// Options for [`ContiguityClass::explore`].
#[derive(Default)]
pub(crate) struct Explore<'a> {
    /// Per domain vertex, the codomain indices allowed at every step.
    pub candidates: Option<Vec<Vec<usize>>>,
    /// Stop as soon as this map is reached.
    pub target: Option<&'a [usize]>,
}

impl ContiguityClass {
    pub(crate) fn explore(
        domain: &Arc<Complex>,
        codomain: &Arc<Complex>,
        root: &[usize],
        budget: &Budget,
        opts: Explore<'_>,
    ) -> ContiguityClass {
        let kind = if opts.candidates.is_none() && codomain.num_facets() == 1 {
            Kind::Full
        } else if let (None, Some(factors)) = (&opts.candidates, codomain.factors()) {
            let split: Vec<(usize, usize)> = root.iter().map(|&x| factors.split_index(x)).collect();
            let (r1, r2): (Vec<usize>, Vec<usize>) = split.into_iter().unzip();
            let (t1, t2): (Option<Vec<usize>>, Option<Vec<usize>>) = match opts.target {
                Some(t) => {
                    let (a, b) = t.iter().map(|&x| factors.split_index(x)).unzip();
                    (Some(a), Some(b))
                }
                None => (None, None),
            };
            let left = ContiguityClass::explore(
                domain,
                &factors.left,
                &r1,
                budget,
                Explore {
                    candidates: None,
                    target: t1.as_deref(),
                },
            );
            let right = ContiguityClass::explore(
                domain,
                &factors.right,
                &r2,
                budget,
                Explore {
                    candidates: None,
                    target: t2.as_deref(),
                },
            );
            Kind::Product(Box::new(left), Box::new(right))
        } else {
            Kind::Explicit(bfs(domain, codomain, root, budget, opts))
        };
        ContiguityClass {
            domain: domain.clone(),
            codomain: codomain.clone(),
            root: root.to_vec(),
            kind,
        }
    }

    pub fn domain(&self) -> &Arc<Complex> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Complex> {
        &self.codomain
    }

    pub fn root(&self) -> &[usize] {
        &self.root
    }

    /// True when the whole class has been enumerated, so absence is proof.
    pub fn is_complete(&self) -> bool {
        match &self.kind {
            Kind::Explicit(e) => e.complete,
            Kind::Full => true,
            Kind::Product(a, b) => a.is_complete() && b.is_complete(),
        }
    }

    /// Number of maps in the explored part of the class, if it is small
    /// enough to count.
    pub fn size(&self) -> Option<u128> {
        match &self.kind {
            Kind::Explicit(e) => Some(e.states.len() as u128),
            Kind::Full => (self.codomain.num_vertices() as u128)
                .checked_pow(self.domain.num_vertices() as u32),
            Kind::Product(a, b) => a.size()?.checked_mul(b.size()?),
        }
    }

    /// Minimal number of contiguity steps from the root to `map`.
    pub fn distance(&self, map: &[usize]) -> Option<usize> {
        match &self.kind {
            Kind::Explicit(e) => e.index.get(map).map(|&i| e.dist[i]),
            Kind::Full => Some(usize::from(map != self.root.as_slice())),
            Kind::Product(a, b) => {
                let (m1, m2) = self.split(map);
                Some(a.distance(&m1)?.max(b.distance(&m2)?))
            }
        }
    }

    pub fn contains(&self, map: &[usize]) -> bool {
        self.distance(map).is_some()
    }

    /// A shortest chain `root = φ_0, …, φ_d = map`.
    pub fn chain_to(&self, map: &[usize]) -> Option<Vec<Vec<usize>>> {
        match &self.kind {
            Kind::Explicit(e) => {
                let mut i = *e.index.get(map)?;
                let mut out = vec![e.states[i].clone()];
                while e.dist[i] > 0 {
                    i = e.parent[i];
                    out.push(e.states[i].clone());
                }
                out.reverse();
                Some(out)
            }
            Kind::Full => {
                if map == self.root.as_slice() {
                    Some(vec![self.root.clone()])
                } else {
                    Some(vec![self.root.clone(), map.to_vec()])
                }
            }
            Kind::Product(a, b) => {
                let (m1, m2) = self.split(map);
                let c1 = a.chain_to(&m1)?;
                let c2 = b.chain_to(&m2)?;
                let len = c1.len().max(c2.len());
                let f = self.codomain.factors().unwrap();
                Some(
                    (0..len)
                        .map(|t| {
                            let x = &c1[t.min(c1.len() - 1)];
                            let y = &c2[t.min(c2.len() - 1)];
                            x.iter().zip(y).map(|(&i, &j)| f.join_index(i, j)).collect()
                        })
                        .collect(),
                )
            }
        }
    }

    /// Constant maps in the class as `(codomain index, distance)`, sorted by index.
    pub fn constants(&self) -> Vec<(usize, usize)> {
        match &self.kind {
            Kind::Explicit(e) => {
                let mut out: Vec<(usize, usize)> = e
                    .states
                    .iter()
                    .zip(&e.dist)
                    .filter(|(s, _)| s.windows(2).all(|w| w[0] == w[1]))
                    .map(|(s, &d)| (s[0], d))
                    .collect();
                out.sort_unstable();
                out
            }
            Kind::Full => (0..self.codomain.num_vertices())
                .map(|c| (c, usize::from(self.root.iter().any(|&x| x != c))))
                .collect(),
            Kind::Product(a, b) => {
                let f = self.codomain.factors().unwrap();
                let (ca, cb) = (a.constants(), b.constants());
                let mut out = Vec::with_capacity(ca.len() * cb.len());
                for &(i, d1) in &ca {
                    for &(j, d2) in &cb {
                        out.push((f.join_index(i, j), d1.max(d2)));
                    }
                }
                out.sort_unstable();
                out
            }
        }
    }

    /// Closest constant map in the class, ties broken by smallest index.
    pub fn nearest_constant(&self) -> Option<(usize, usize)> {
        self.constants().into_iter().min_by_key(|&(c, d)| (d, c))
    }

    /// Whether some map of the class agrees with `prefix` on the first
    /// `prefix.len()` domain vertices.
    pub fn prefix_ok(&self, prefix: &[usize]) -> bool {
        match &self.kind {
            Kind::Explicit(e) => {
                let set = e.prefixes.get_or_init(|| {
                    let mut set = HashSet::new();
                    for s in &e.states {
                        for k in 0..=s.len() {
                            set.insert(s[..k].to_vec());
                        }
                    }
                    set
                });
                set.contains(prefix)
            }
            Kind::Full => true,
            Kind::Product(a, b) => {
                let (m1, m2) = self.split(prefix);
                a.prefix_ok(&m1) && b.prefix_ok(&m2)
            }
        }
    }

    fn split(&self, map: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let f = self.codomain.factors().unwrap();
        map.iter().map(|&x| f.split_index(x)).unzip()
    }
}

fn bfs(
    domain: &Complex,
    codomain: &Complex,
    root: &[usize],
    budget: &Budget,
    opts: Explore<'_>,
) -> Explicit {
    let mut ex = Explicit {
        states: vec![root.to_vec()],
        index: HashMap::from([(root.to_vec(), 0)]),
        parent: vec![0],
        dist: vec![0],
        complete: true,
        prefixes: OnceLock::new(),
    };
    if opts.target == Some(root) {
        ex.complete = false;
        return ex;
    }
    let base = match &opts.candidates {
        Some(c) => MapSearch::new(domain, codomain).candidates(c.clone()),
        None => MapSearch::new(domain, codomain),
    };
    let mut head = 0;
    while head < ex.states.len() {
        if budget.expired() {
            ex.complete = false;
            break;
        }
        let cur = ex.states[head].clone();
        let d = ex.dist[head];
        let hit = base.visit_with(Some(&cur), |m| {
            if ex.index.contains_key(m) {
                return ControlFlow::Continue(());
            }
            if ex.states.len() >= budget.max_states {
                return ControlFlow::Break(false);
            }
            let id = ex.states.len();
            ex.states.push(m.to_vec());
            ex.index.insert(m.to_vec(), id);
            ex.parent.push(head);
            ex.dist.push(d + 1);
            if opts.target == Some(m) {
                return ControlFlow::Break(true);
            }
            ControlFlow::Continue(())
        });
        if hit.is_some() {
            ex.complete = false;
            break;
        }
        head += 1;
    }
    ex
}
