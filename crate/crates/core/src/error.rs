use thiserror::Error;

use crate::Vertex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a complex needs at least one facet")]
    EmptyFacetList,
    #[error("facet #{0} is empty")]
    EmptyFacet(usize),
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("vertex {0} is not a vertex of the complex")]
    UnknownVertex(Vertex),
    #[error("declared vertex list does not match the union of the facets")]
    VertexListMismatch,
    #[error("no image given for vertex {0}")]
    MissingImage(Vertex),
    #[error("facet {facet:?} maps to {image:?}, which is not a simplex of the codomain")]
    NotSimplicial {
        facet: Vec<Vertex>,
        image: Vec<Vertex>,
    },
    #[error("maps do not share domain and codomain")]
    ShapeMismatch,
    #[error("{0:?} is not a simplex of the ambient complex")]
    NotASubcomplex(Vec<Vertex>),
    #[error("maps disagree at shared vertex {vertex}: {left} vs {right}")]
    PasteConflict {
        vertex: Vertex,
        left: Vertex,
        right: Vertex,
    },
    #[error("pullback has no vertices")]
    EmptyPullback,
    #[error("consecutive maps {0} and {1} of the chain are not contiguous")]
    NotContiguous(usize, usize),
    #[error("path endpoints do not match: omega = {omega}, alpha = {alpha}")]
    EndpointMismatch { omega: Vertex, alpha: Vertex },
    #[error("path samples {0} and {1} do not span a simplex")]
    InvalidPath(Vertex, Vertex),
    #[error("{what}: {count} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        count: u128,
        cap: u128,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no lift found: {0}")]
    LiftFailed(String),
    #[error("base complex is not connected")]
    NotConnected,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("certificate rejected: {0}")]
    Certificate(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
