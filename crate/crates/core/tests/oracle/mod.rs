//! Brute-force invariants on tiny complexes, written against plain vectors
//! and sharing no code with the library.
//!
//! Contiguity classes are connected components of the graph whose nodes are
//! all simplicial maps and whose edges change the image of one vertex while
//! keeping the two maps contiguous.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

/// A complex as a list of facets over vertices `0..n`.
#[derive(Clone, Debug)]
pub struct Facets {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl Facets {
    pub fn new(facets: Vec<Vec<usize>>) -> Facets {
        let n = facets.iter().flatten().max().map_or(0, |m| m + 1);
        Facets { n, facets }
    }

    pub fn is_simplex(&self, set: &BTreeSet<usize>) -> bool {
        self.facets
            .iter()
            .any(|f| set.iter().all(|v| f.contains(v)))
    }

    pub fn point() -> Facets {
        Facets::new(vec![vec![0]])
    }

    pub fn edge() -> Facets {
        Facets::new(vec![vec![0, 1]])
    }

    pub fn triangle() -> Facets {
        Facets::new(vec![vec![0, 1, 2]])
    }

    pub fn hollow_triangle() -> Facets {
        Facets::new(vec![vec![0, 1], vec![0, 2], vec![1, 2]])
    }

    /// Categorical product; vertex `(i, j)` is `i * other.n + j`.
    pub fn product(&self, other: &Facets) -> Facets {
        let mut facets = Vec::new();
        for s in &self.facets {
            for t in &other.facets {
                let mut f: Vec<usize> = s
                    .iter()
                    .flat_map(|&i| t.iter().map(move |&j| i * other.n + j))
                    .collect();
                f.sort();
                facets.push(f);
            }
        }
        Facets {
            n: self.n * other.n,
            facets,
        }
    }
}

/// The subcomplex generated by `facets`, with its vertices listed.
struct Piece {
    vertices: Vec<usize>,
    facets: Vec<Vec<usize>>,
}

fn piece(k: &Facets, mask: u64) -> Piece {
    let facets: Vec<Vec<usize>> = (0..k.facets.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| k.facets[i].clone())
        .collect();
    let vertices: BTreeSet<usize> = facets.iter().flatten().copied().collect();
    Piece {
        vertices: vertices.into_iter().collect(),
        facets,
    }
}

fn image(map: &HashMap<usize, usize>, set: &[usize]) -> BTreeSet<usize> {
    set.iter().map(|v| map[v]).collect()
}

fn find(parent: &mut Vec<usize>, x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// All simplicial maps `piece → target`, as images in vertex order, and the
/// component label of each.
fn classes(p: &Piece, target: &Facets) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = p.vertices.len();
    let total = target.n.pow(n as u32);
    let as_map = |images: &[usize]| -> HashMap<usize, usize> {
        p.vertices
            .iter()
            .copied()
            .zip(images.iter().copied())
            .collect()
    };
    let mut maps = Vec::new();
    for code in 0..total {
        let mut images = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            images.push(c % target.n);
            c /= target.n;
        }
        let m = as_map(&images);
        if p.facets.iter().all(|f| target.is_simplex(&image(&m, f))) {
            maps.push(images);
        }
    }
    let index: HashMap<Vec<usize>, usize> = maps
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut parent: Vec<usize> = (0..maps.len()).collect();
    for (i, f) in maps.iter().enumerate() {
        let mf = as_map(f);
        for v in 0..n {
            for w in 0..target.n {
                if w == f[v] {
                    continue;
                }
                let mut g = f.clone();
                g[v] = w;
                let Some(&j) = index.get(&g) else { continue };
                let mg = as_map(&g);
                let contiguous = p.facets.iter().all(|s| {
                    let mut u = image(&mf, s);
                    u.extend(image(&mg, s));
                    target.is_simplex(&u)
                });
                if contiguous {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
    }
    let labels = (0..maps.len()).map(|i| find(&mut parent, i)).collect();
    (maps, labels)
}

fn label_of(maps: &[Vec<usize>], labels: &[usize], m: &[usize]) -> usize {
    labels[maps.iter().position(|x| x == m).expect("simplicial")]
}

/// Least `k` such that `k` of the good masks cover every facet.
fn min_cover(good: &[u64], full: u64) -> Option<usize> {
    let maximal: Vec<u64> = good
        .iter()
        .copied()
        .filter(|&g| !good.iter().any(|&h| h != g && g & h == g))
        .collect();
    fn go(masks: &[u64], full: u64, covered: u64, start: usize, left: usize) -> bool {
        if covered == full {
            return true;
        }
        if left == 0 {
            return false;
        }
        (start..masks.len()).any(|i| go(masks, full, covered | masks[i], i + 1, left - 1))
    }
    (1..=maximal.len()).find(|&k| go(&maximal, full, 0, 0, k))
}

/// Sectional category: pieces whose inclusion is contiguity-equivalent to a constant.
pub fn scat(k: &Facets) -> usize {
    let full = (1u64 << k.facets.len()) - 1;
    let mut good = Vec::new();
    for mask in 1..=full {
        let p = piece(k, mask);
        let (maps, labels) = classes(&p, k);
        let incl = label_of(&maps, &labels, &p.vertices);
        if (0..k.n).any(|c| label_of(&maps, &labels, &vec![c; p.vertices.len()]) == incl) {
            good.push(mask);
        }
    }
    min_cover(&good, full).expect("single facets are always good") - 1
}

/// Discrete TC. A piece `P ⊆ K × K` is good when `Δ ∘ σ ∼ ι` for some
/// `σ: P → K`; contiguity in a categorical product is coordinatewise, so
/// this holds iff the two projections restricted to `P` are in one class
/// (take `σ = pr1|P`).
pub fn tc(k: &Facets) -> usize {
    let kk = k.product(k);
    let full = (1u64 << kk.facets.len()) - 1;
    let mut good = Vec::new();
    for mask in 1..=full {
        let p = piece(&kk, mask);
        let (maps, labels) = classes(&p, k);
        let pr1: Vec<usize> = p.vertices.iter().map(|x| x / k.n).collect();
        let pr2: Vec<usize> = p.vertices.iter().map(|x| x % k.n).collect();
        if label_of(&maps, &labels, &pr1) == label_of(&maps, &labels, &pr2) {
            good.push(mask);
        }
    }
    min_cover(&good, full).expect("single facets are always good") - 1
}
