//! JSON forms of complexes, maps, chains, paths and lift problems.
//!
//! A complex can be given inline or by name. Names are builtins
//! (`PT`, `E1`, `In`, `Dn`, `Cn`), products of builtins joined by `x`
//! (`C3xE1`, vertex `(i, j)` numbered `i·|R| + j`), or paths of JSON files
//! resolved against a base directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complexes::{
    build_complex, categorical_product, cylinder, named_complex, validate_map, Complex,
    SimplicialMap,
};
use crate::contiguity::{ContiguityChain, Homotopy};
use crate::error::{Error, Result};
use crate::fibrations::LiftProblem;
use crate::moore::MoorePath;
use crate::Vertex;

pub type Assignment = BTreeMap<Vertex, Vertex>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<Vertex>,
    pub facets: Vec<Vec<Vertex>>,
}

impl From<&Complex> for ComplexJson {
    fn from(k: &Complex) -> Self {
        ComplexJson {
            vertices: k.vertices().to_vec(),
            facets: k.facets().to_vec(),
        }
    }
}

impl ComplexJson {
    /// Listed vertices that lie in no facet become isolated points; facet
    /// vertices missing from the list are rejected.
    pub fn build(&self) -> Result<Complex> {
        for f in &self.facets {
            if let Some(&v) = f.iter().find(|v| !self.vertices.contains(v)) {
                return Err(Error::UnknownVertex(v));
            }
        }
        let mut facets = self.facets.clone();
        for &v in &self.vertices {
            if !self.facets.iter().any(|f| f.contains(&v)) {
                facets.push(vec![v]);
            }
        }
        build_complex(facets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    Name(String),
    Inline(ComplexJson),
}

impl From<&Complex> for ComplexRef {
    fn from(k: &Complex) -> Self {
        ComplexRef::Inline(k.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub domain: ComplexRef,
    pub codomain: ComplexRef,
    pub assignment: Assignment,
}

impl From<&SimplicialMap> for MapJson {
    fn from(f: &SimplicialMap) -> Self {
        MapJson {
            domain: (&**f.domain()).into(),
            codomain: (&**f.codomain()).into(),
            assignment: f.assignment(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub steps: Vec<Assignment>,
}

impl From<&ContiguityChain> for ChainJson {
    fn from(c: &ContiguityChain) -> Self {
        ChainJson {
            steps: c.steps().iter().map(SimplicialMap::assignment).collect(),
        }
    }
}

/// A homotopy `K × I_m → X` as its columns `H(·, 0), …, H(·, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyJson {
    pub base: ComplexRef,
    pub target: ComplexRef,
    pub m: usize,
    pub columns: Vec<Assignment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub target: ComplexRef,
    pub window_start: i64,
    pub samples: Vec<Vertex>,
}

impl From<&MoorePath> for PathJson {
    fn from(g: &MoorePath) -> Self {
        PathJson {
            target: (&**g.target()).into(),
            window_start: g.window_start(),
            samples: g.samples().to_vec(),
        }
    }
}

/// `p: E → B`, the homotopy `H: K × I_m → B` as columns, and `φ: K → E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftProblemJson {
    pub p: MapJson,
    pub k: ComplexRef,
    pub m: usize,
    pub h: Vec<Assignment>,
    pub phi: Assignment,
}

/// Resolves complex references; file references are read relative to `base_dir`.
#[derive(Clone, Debug, Default)]
pub struct Resolver {
    base_dir: PathBuf,
    cache: BTreeMap<String, Arc<Complex>>,
}

impl Resolver {
    pub fn new(base_dir: impl Into<PathBuf>) -> Resolver {
        Resolver {
            base_dir: base_dir.into(),
            cache: BTreeMap::new(),
        }
    }

    pub fn complex(&mut self, r: &ComplexRef) -> Result<Arc<Complex>> {
        match r {
            ComplexRef::Inline(c) => Ok(Arc::new(c.build()?)),
            ComplexRef::Name(name) => {
                if let Some(k) = self.cache.get(name) {
                    return Ok(k.clone());
                }
                let k = self.named(name)?;
                self.cache.insert(name.clone(), k.clone());
                Ok(k)
            }
        }
    }

    fn named(&mut self, name: &str) -> Result<Arc<Complex>> {
        if let Some(k) = builtin(name) {
            return Ok(k);
        }
        let path = self.base_dir.join(name);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Precondition(format!("cannot resolve complex {name:?}: {e}")))?;
        let json: ComplexJson = serde_json::from_str(&text)?;
        Ok(Arc::new(json.build()?))
    }

    pub fn map(&mut self, m: &MapJson) -> Result<SimplicialMap> {
        let dom = self.complex(&m.domain)?;
        let cod = self.complex(&m.codomain)?;
        validate_map(dom, cod, &m.assignment)
    }

    pub fn chain(
        &mut self,
        domain: &Arc<Complex>,
        codomain: &Arc<Complex>,
        c: &ChainJson,
    ) -> Result<ContiguityChain> {
        let steps = c
            .steps
            .iter()
            .map(|a| validate_map(domain.clone(), codomain.clone(), a))
            .collect::<Result<Vec<_>>>()?;
        ContiguityChain::new(steps)
    }

    pub fn path(&mut self, p: &PathJson) -> Result<MoorePath> {
        MoorePath::new(self.complex(&p.target)?, p.window_start, p.samples.clone())
    }

    pub fn homotopy(&mut self, h: &HomotopyJson) -> Result<Homotopy> {
        let base = self.complex(&h.base)?;
        let target = self.complex(&h.target)?;
        homotopy_from_columns(&base, &target, h.m, &h.columns)
    }

    pub fn lift_problem(&mut self, j: &LiftProblemJson) -> Result<LiftProblem> {
        let p = self.map(&j.p)?;
        let k = self.complex(&j.k)?;
        let h = homotopy_from_columns(&k, p.codomain(), j.m, &j.h)?;
        let phi = validate_map(k, p.domain().clone(), &j.phi)?;
        LiftProblem::new(p, h, phi)
    }
}

/// A builtin name or a product of builtins such as `C3xE1`.
pub fn builtin(name: &str) -> Option<Arc<Complex>> {
    let mut parts = name.split('x');
    let mut k = Arc::new(named_complex(parts.next()?)?);
    for part in parts {
        let r = Arc::new(named_complex(part)?);
        k = categorical_product(&k, &r).complex;
    }
    Some(k)
}

pub fn homotopy_from_columns(
    base: &Arc<Complex>,
    target: &Arc<Complex>,
    m: usize,
    columns: &[Assignment],
) -> Result<Homotopy> {
    if columns.len() != m + 1 {
        return Err(Error::VertexListMismatch);
    }
    let cyl = cylinder(base, m);
    let mut images = vec![0; cyl.complex().num_vertices()];
    for (i, col) in columns.iter().enumerate() {
        let f = validate_map(base.clone(), target.clone(), col)?;
        for v in 0..base.num_vertices() {
            images[cyl.index(v, i)] = f.image_of_index(v);
        }
    }
    let map = SimplicialMap::from_indices(cyl.complex().clone(), target.clone(), images)?;
    Homotopy::new(cyl, map)
}

pub fn homotopy_json(h: &Homotopy) -> HomotopyJson {
    HomotopyJson {
        base: (&**h.base()).into(),
        target: (&**h.map.codomain()).into(),
        m: h.m(),
        columns: (0..=h.m()).map(|i| h.column(i).assignment()).collect(),
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip() {
        let c3 = Complex::cycle(3);
        let text = serde_json::to_string(&ComplexJson::from(&c3)).unwrap();
        assert_eq!(text, r#"{"vertices":[0,1,2],"facets":[[0,1],[0,2],[1,2]]}"#);
        let back: ComplexJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build().unwrap(), c3);
    }

    #[test]
    fn isolated_and_unknown_vertices() {
        let j = ComplexJson {
            vertices: vec![0, 1, 5],
            facets: vec![vec![0, 1]],
        };
        assert_eq!(j.build().unwrap().num_facets(), 2);
        let bad = ComplexJson {
            vertices: vec![0],
            facets: vec![vec![0, 1]],
        };
        assert!(matches!(bad.build(), Err(Error::UnknownVertex(1))));
    }

    #[test]
    fn maps_by_name() {
        let text = r#"{"domain":"PT","codomain":"E1","assignment":{"0":0}}"#;
        let m: MapJson = serde_json::from_str(text).unwrap();
        let f = Resolver::default().map(&m).unwrap();
        assert_eq!(f.image(0).unwrap(), 0);
        assert_eq!(serde_json::to_string(&m).unwrap(), text);
        assert_eq!(builtin("C3xE1").unwrap().num_vertices(), 6);
        assert!(builtin("Q7").is_none());
    }

    #[test]
    fn lift_problem_round_trip() {
        let text = r#"{"p":{"domain":"PT","codomain":"E1","assignment":{"0":0}},"k":"PT","m":1,"h":[{"0":0},{"0":1}],"phi":{"0":0}}"#;
        let j: LiftProblemJson = serde_json::from_str(text).unwrap();
        let problem = Resolver::default().lift_problem(&j).unwrap();
        assert_eq!(problem.m(), 1);
    }
}
