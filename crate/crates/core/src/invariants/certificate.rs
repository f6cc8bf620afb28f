//! Cover certificates and a checker that re-derives every claim from the
//! data in the certificate alone.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complexes::{build_complex, validate_map, Complex, SimplicialMap};
use crate::error::{Error, Result};
use crate::format::{Assignment, ComplexJson, MapJson, Resolver};
use crate::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverKind {
    /// Pieces of `K` whose inclusion is contiguity-equivalent to a constant.
    Scat,
    /// Pieces of the base with a strict section.
    Sg,
    /// Pieces of the base with a section up to contiguity.
    Hsg,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedPiece {
    pub facets: Vec<Vec<Vertex>>,
    /// Constant reached by the chain (`scat`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vertex>,
    /// `σ: piece → E` (`sg`, `hsg`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Assignment>,
    /// `scat`: from the inclusion to the constant. `hsg`: from `φ ∘ σ` to
    /// the inclusion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Assignment>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub kind: CoverKind,
    /// The covered complex for `scat`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexJson>,
    /// `φ: E → L` for the genus kinds; `L` is the covered complex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapJson>,
    pub value: usize,
    pub pieces: Vec<CertifiedPiece>,
}

impl CoverCertificate {
    pub fn scat(k: &Complex) -> CoverCertificate {
        CoverCertificate {
            kind: CoverKind::Scat,
            complex: Some(k.into()),
            map: None,
            value: 0,
            pieces: Vec::new(),
        }
    }

    pub fn genus(kind: CoverKind, phi: &SimplicialMap) -> CoverCertificate {
        CoverCertificate {
            kind,
            complex: None,
            map: Some(phi.into()),
            value: 0,
            pieces: Vec::new(),
        }
    }
}

fn contiguous_pair(k: &Complex, f: &Assignment, g: &Assignment, piece: &Complex) -> bool {
    piece.facets().iter().all(|s| {
        let u: BTreeSet<Vertex> = s.iter().flat_map(|v| [f[v], g[v]]).collect();
        k.is_simplex(&u.into_iter().collect::<Vec<_>>())
    })
}

fn check_chain(steps: &[Assignment], piece: &Arc<Complex>, target: &Arc<Complex>) -> Result<()> {
    if steps.is_empty() {
        return Err(Error::Certificate("empty chain".into()));
    }
    for s in steps {
        validate_map(piece.clone(), target.clone(), s)?;
    }
    for (i, w) in steps.windows(2).enumerate() {
        if !contiguous_pair(target, &w[0], &w[1], piece) {
            return Err(Error::NotContiguous(i, i + 1));
        }
    }
    Ok(())
}

/// Re-checks a certificate and returns its value (number of pieces minus one).
pub fn check_certificate(cert: &CoverCertificate) -> Result<usize> {
    let mut resolver = Resolver::default();
    let (covered, phi) = match cert.kind {
        CoverKind::Scat => {
            let k = cert
                .complex
                .as_ref()
                .ok_or_else(|| Error::Certificate("missing complex".into()))?;
            (Arc::new(k.build()?), None)
        }
        CoverKind::Sg | CoverKind::Hsg => {
            let m = cert
                .map
                .as_ref()
                .ok_or_else(|| Error::Certificate("missing map".into()))?;
            let phi = resolver.map(m)?;
            (phi.codomain().clone(), Some(phi))
        }
    };
    if cert.pieces.is_empty() || cert.value + 1 != cert.pieces.len() {
        return Err(Error::Certificate(format!(
            "value {} does not match {} pieces",
            cert.value,
            cert.pieces.len()
        )));
    }
    let mut pieces = Vec::new();
    for (n, p) in cert.pieces.iter().enumerate() {
        let piece = Arc::new(build_complex(p.facets.clone())?);
        if !piece.is_subcomplex_of(&covered) {
            return Err(Error::Certificate(format!("piece {n} is not a subcomplex")));
        }
        let inclusion: Assignment = piece.vertices().iter().map(|&v| (v, v)).collect();
        match (cert.kind, &phi) {
            (CoverKind::Scat, _) => {
                let steps = p
                    .chain
                    .as_ref()
                    .ok_or_else(|| Error::Certificate(format!("piece {n} has no chain")))?;
                let c = p
                    .target
                    .ok_or_else(|| Error::Certificate(format!("piece {n} has no target")))?;
                check_chain(steps, &piece, &covered)?;
                let constant: Assignment = piece.vertices().iter().map(|&v| (v, c)).collect();
                if steps[0] != inclusion || *steps.last().unwrap() != constant {
                    return Err(Error::Certificate(format!(
                        "piece {n}: chain does not join ι to c_{c}"
                    )));
                }
            }
            (_, Some(phi)) => {
                let s = p
                    .section
                    .as_ref()
                    .ok_or_else(|| Error::Certificate(format!("piece {n} has no section")))?;
                let sigma = validate_map(piece.clone(), phi.domain().clone(), s)?;
                let image: Assignment = sigma
                    .pairs()
                    .map(|(v, e)| (v, phi.image(e).unwrap()))
                    .collect();
                if cert.kind == CoverKind::Sg {
                    if image != inclusion {
                        return Err(Error::Certificate(format!(
                            "piece {n}: φ ∘ σ is not the inclusion"
                        )));
                    }
                } else {
                    let steps = p
                        .chain
                        .as_ref()
                        .ok_or_else(|| Error::Certificate(format!("piece {n} has no chain")))?;
                    check_chain(steps, &piece, &covered)?;
                    if steps[0] != image || *steps.last().unwrap() != inclusion {
                        return Err(Error::Certificate(format!(
                            "piece {n}: chain does not join φ ∘ σ to ι"
                        )));
                    }
                }
            }
            (_, None) => unreachable!(),
        }
        pieces.push(piece);
    }
    for f in covered.facets() {
        if !pieces.iter().any(|p| p.is_simplex(f)) {
            return Err(Error::Certificate(format!("facet {f:?} is not covered")));
        }
    }
    Ok(cert.value)
}

pub(crate) fn assignment_of(
    domain: &Complex,
    codomain: &Complex,
    images: &[usize],
) -> BTreeMap<Vertex, Vertex> {
    domain
        .vertices()
        .iter()
        .zip(images)
        .map(|(&v, &i)| (v, codomain.vertex(i)))
        .collect()
}
