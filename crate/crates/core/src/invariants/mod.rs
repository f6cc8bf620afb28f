//! Sectional category, Švarc genus (strict and up to contiguity) and
//! discrete topological complexity, computed as minimum covers by
//! facet-generated pieces, each piece carrying a checkable witness.

mod certificate;
mod cover;

use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use certificate::assignment_of;
pub use certificate::{check_certificate, CertifiedPiece, CoverCertificate, CoverKind};
use cover::{minimal_cover, PieceVerdict};

use crate::budget::Budget;
use crate::complexes::{diagonal, Complex, SimplicialMap};
use crate::contiguity::{is_categorical, Categorical, ContiguityClass, Explore};
use crate::error::{Error, Result};
use crate::fibrations::{diagonal_factorization, fiber, mapping_path_factorization};
use crate::search::MapSearch;
use crate::Vertex;

/// `{"invariant", "value", "exact", "certificate", "budget"}`. `value` is
/// `None` when no cover exists (or none was found, if `exact` is false).
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub invariant: String,
    pub value: Option<usize>,
    pub exact: bool,
    pub certificate: Option<CoverCertificate>,
    pub budget: Budget,
}

fn report(
    name: &str,
    mut cert: CoverCertificate,
    outcome: cover::CoverOutcome<CertifiedPiece>,
    budget: &Budget,
) -> InvariantReport {
    let value = outcome.pieces.as_ref().map(|p| p.len() - 1);
    let certificate = outcome.pieces.map(|p| {
        cert.value = p.len() - 1;
        cert.pieces = p.into_iter().map(|(_, w)| w).collect();
        cert
    });
    InvariantReport {
        invariant: name.to_string(),
        value,
        exact: outcome.exact,
        certificate,
        budget: budget.clone(),
    }
}

fn piece_of(k: &Complex, positions: &[usize]) -> Arc<Complex> {
    Arc::new(
        k.facet_generated(positions)
            .expect("positions are facets of k"),
    )
}

/// `scat(K)`: least `n` such that `n + 1` pieces, each contiguity-equivalent
/// in `K` to a constant map, cover `K`.
pub fn scat(k: &Arc<Complex>, budget: &Budget) -> Result<InvariantReport> {
    let mut failure = None;
    let outcome = minimal_cover(k.num_facets(), budget, |pos| {
        let piece = piece_of(k, pos);
        match is_categorical(&piece, k, budget) {
            Ok(Categorical::Yes { target, chain }) => PieceVerdict::Good(CertifiedPiece {
                facets: piece.facets().to_vec(),
                target: Some(target),
                section: None,
                chain: Some(
                    chain
                        .steps()
                        .iter()
                        .map(SimplicialMap::assignment)
                        .collect(),
                ),
            }),
            Ok(Categorical::No) => PieceVerdict::Bad,
            Ok(Categorical::Unknown) => PieceVerdict::Unknown,
            Err(e) => {
                failure.get_or_insert(e);
                PieceVerdict::Unknown
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(report("scat", CoverCertificate::scat(k), outcome, budget))
}

fn section_candidates(phi: &SimplicialMap, piece: &Complex) -> Vec<Vec<usize>> {
    let l = phi.codomain();
    piece
        .vertices()
        .iter()
        .map(|&v| {
            let b = l.index_of(v).expect("piece lies in the base");
            (0..phi.domain().num_vertices())
                .filter(|&e| phi.image_of_index(e) == b)
                .collect()
        })
        .collect()
}

/// `Sg(φ)`: pieces of the codomain admitting `σ` with `φ ∘ σ = ι`.
pub fn svarc_genus(phi: &SimplicialMap, budget: &Budget) -> Result<InvariantReport> {
    let (e, l) = (phi.domain(), phi.codomain());
    let outcome = minimal_cover(l.num_facets(), budget, |pos| {
        let piece = piece_of(l, pos);
        match MapSearch::new(&piece, e)
            .candidates(section_candidates(phi, &piece))
            .first()
        {
            Some(sigma) => PieceVerdict::Good(CertifiedPiece {
                facets: piece.facets().to_vec(),
                target: None,
                section: Some(assignment_of(&piece, e, &sigma)),
                chain: None,
            }),
            None => PieceVerdict::Bad,
        }
    });
    Ok(report(
        "sg",
        CoverCertificate::genus(CoverKind::Sg, phi),
        outcome,
        budget,
    ))
}

/// `hSg(φ)`: pieces of the codomain admitting `σ` with `φ ∘ σ ∼ ι`.
pub fn homotopy_svarc_genus(phi: &SimplicialMap, budget: &Budget) -> Result<InvariantReport> {
    genus_up_to_contiguity("hsg", phi, budget)
}

fn genus_up_to_contiguity(
    name: &str,
    phi: &SimplicialMap,
    budget: &Budget,
) -> Result<InvariantReport> {
    let (e, l) = (phi.domain(), phi.codomain());
    let outcome = minimal_cover(l.num_facets(), budget, |pos| {
        let piece = piece_of(l, pos);
        let incl: Vec<usize> = piece
            .vertices()
            .iter()
            .map(|&v| l.index_of(v).unwrap())
            .collect();
        let class = ContiguityClass::explore(&piece, l, &incl, budget, Explore::default());
        let project =
            |s: &[usize]| -> Vec<usize> { s.iter().map(|&x| phi.image_of_index(x)).collect() };
        let filter = |prefix: &[usize]| class.prefix_ok(&project(prefix));
        let mut too_long = false;
        let found = MapSearch::new(&piece, e)
            .prefix_filter(&filter)
            .visit(|sigma| {
                let image = project(sigma);
                match class.distance(&image) {
                    Some(d) if d <= budget.max_steps => ControlFlow::Break((sigma.to_vec(), image)),
                    Some(_) => {
                        too_long = true;
                        ControlFlow::Continue(())
                    }
                    None => ControlFlow::Continue(()),
                }
            });
        match found {
            Some((sigma, image)) => {
                let mut steps = class.chain_to(&image).expect("image is in the class");
                steps.reverse();
                PieceVerdict::Good(CertifiedPiece {
                    facets: piece.facets().to_vec(),
                    target: None,
                    section: Some(assignment_of(&piece, e, &sigma)),
                    chain: Some(steps.iter().map(|s| assignment_of(&piece, l, s)).collect()),
                })
            }
            None if class.is_complete() && !too_long => PieceVerdict::Bad,
            None => PieceVerdict::Unknown,
        }
    });
    Ok(report(
        name,
        CoverCertificate::genus(CoverKind::Hsg, phi),
        outcome,
        budget,
    ))
}

/// Discrete topological complexity, `hSg` of the diagonal `K → K × K`.
pub fn discrete_tc(k: &Arc<Complex>, budget: &Budget) -> Result<InvariantReport> {
    let (_, delta) = diagonal(k);
    genus_up_to_contiguity("tc", &delta, budget)
}

#[derive(Clone, Debug, Serialize)]
pub struct VaradarajanReport {
    pub fiber_over: Vertex,
    pub scat_total: InvariantReport,
    pub scat_base: InvariantReport,
    pub scat_fiber: InvariantReport,
    /// `scat(E) + 1`.
    pub lhs: Option<usize>,
    /// `(scat(B) + 1)(scat(F) + 1)`.
    pub rhs: Option<usize>,
    /// `None` when a term is missing or inexact.
    pub holds: Option<bool>,
}

/// Computes both sides of `scat(E) + 1 ≤ (scat(B) + 1)(scat(F) + 1)` for
/// `p: E → B`, with `F` the fiber over the smallest vertex of `B`.
pub fn verify_varadarajan(p: &SimplicialMap, budget: &Budget) -> Result<VaradarajanReport> {
    let b = p.codomain();
    if !b.is_connected() {
        return Err(Error::NotConnected);
    }
    let b0 = b.vertex(0);
    let f = Arc::new(
        fiber(p, b0)?.ok_or_else(|| Error::Precondition(format!("empty fiber over {b0}")))?,
    );
    let scat_total = scat(p.domain(), budget)?;
    let scat_base = scat(b, budget)?;
    let scat_fiber = scat(&f, budget)?;
    let lhs = scat_total.value.map(|v| v + 1);
    let rhs = scat_base
        .value
        .zip(scat_fiber.value)
        .map(|(x, y)| (x + 1) * (y + 1));
    let exact = scat_total.exact && scat_base.exact && scat_fiber.exact;
    let holds = match (lhs, rhs) {
        (Some(l), Some(r)) if exact => Some(l <= r),
        _ => None,
    };
    Ok(VaradarajanReport {
        fiber_over: b0,
        scat_total,
        scat_base,
        scat_fiber,
        lhs,
        rhs,
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowValue {
    pub window: usize,
    pub value: Option<usize>,
    pub exact: bool,
}

/// Genus values over growing windows and the window at which two
/// consecutive exact values first agree.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub invariant: String,
    pub reference: InvariantReport,
    pub windows: Vec<WindowValue>,
    pub stabilized_at: Option<usize>,
    /// Stable value equals the reference value.
    pub agrees: Option<bool>,
}

fn stabilize(
    name: &str,
    reference: InvariantReport,
    max_window: usize,
    mut at: impl FnMut(usize) -> Result<InvariantReport>,
) -> Result<StabilityReport> {
    let mut windows: Vec<WindowValue> = Vec::new();
    let mut stabilized_at = None;
    for w in 0..=max_window {
        let r = at(w)?;
        windows.push(WindowValue {
            window: w,
            value: r.value,
            exact: r.exact,
        });
        if let [.., x, y] = windows.as_slice() {
            if x.exact && y.exact && x.value.is_some() && x.value == y.value {
                stabilized_at = Some(w);
                break;
            }
        }
    }
    let agrees = stabilized_at.map(|_| windows.last().unwrap().value == reference.value);
    Ok(StabilityReport {
        invariant: name.to_string(),
        reference,
        windows,
        stabilized_at,
        agrees,
    })
}

/// `Sg(ω: P_0K → K)` on windows `[−w, w]`, `w = 0, 1, …`, until two
/// consecutive windows agree, compared with `scat(K)`. `P_0K` is the mapping
/// path space of the inclusion of `v0`.
pub fn verify_scat_equals_genus(
    k: &Arc<Complex>,
    v0: Vertex,
    max_window: usize,
    budget: &Budget,
) -> Result<StabilityReport> {
    if !k.is_connected() {
        return Err(Error::NotConnected);
    }
    let pt = Arc::new(Complex::point());
    let incl = SimplicialMap::constant(&pt, k, v0)?;
    let reference = scat(k, budget)?;
    stabilize("sg(ω: P_0K → K)", reference, max_window, |w| {
        let fac = mapping_path_factorization(&incl, w, budget)?;
        svarc_genus(&fac.p, budget)
    })
}

/// `hSg((α, ω): K^[0,w] → K × K)` for `w = 0, 1, …` until stable, compared
/// with `TC(K)`.
pub fn verify_tc_equals_path_genus(
    k: &Arc<Complex>,
    max_window: usize,
    budget: &Budget,
) -> Result<StabilityReport> {
    let reference = discrete_tc(k, budget)?;
    stabilize("hsg((α, ω))", reference, max_window, |w| {
        let fac = diagonal_factorization(k, w, budget)?;
        homotopy_svarc_genus(&fac.endpoints, budget)
    })
}
