use thiserror::Error;

use crate::torus::Slope;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation `{0}`")]
    InvalidPermutation(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}non-involutive gluing: tetrahedron {tet} face {face}", line_prefix(*.line))]
    NonInvolutiveGluing { tet: usize, face: usize, line: Option<usize> },

    #[error("{}gluing of tetrahedron {tet} face {face} does not map the face onto face {target_face}", line_prefix(*.line))]
    FaceMismatch { tet: usize, face: usize, target_face: usize, line: Option<usize> },

    #[error("{}tetrahedron {tet} face {face} is glued to itself", line_prefix(*.line))]
    SelfGluedFace { tet: usize, face: usize, line: Option<usize> },

    #[error("{}gluing of tetrahedron {tet} face {face} targets missing tetrahedron {target}", line_prefix(*.line))]
    MissingTetrahedron { tet: usize, face: usize, target: usize, line: Option<usize> },

    #[error("edge class containing tetrahedron {tet} edge {edge} is identified with itself in reverse")]
    ReversedEdge { tet: usize, edge: usize },

    #[error("triangulation has no tetrahedra")]
    Empty,

    #[error("not a knot-manifold triangulation: {0}")]
    NotKnotManifold(String),

    #[error("boundary component is not a one-vertex torus: {0}")]
    NotOneVertexTorus(String),

    #[error("{0} is not a boundary edge of the torus")]
    NotBoundaryEdge(usize),

    #[error("intersection triple [{0}, {1}, {2}] has odd sum")]
    IntersectionParity(u64, u64, u64),

    #[error("intersection triple [{0}, {1}, {2}] violates the triangle inequality")]
    IntersectionTriangle(u64, u64, u64),

    #[error("curve has no slope (all components trivial)")]
    NoSlope,

    #[error("not a slope: {0}")]
    NotASlope(String),

    #[error("coordinate list has {found} entries, expected {expected}")]
    CoordinateLength { expected: usize, found: usize },

    #[error("coordinates do not satisfy the matching equations")]
    Unmatched,

    #[error("coordinates are not admissible (embedded): {0}")]
    NotAdmissible(String),

    #[error("coordinate modes differ")]
    ModeMismatch,

    #[error("boundary arcs are inconsistent: {0}")]
    BoundaryArcs(String),

    #[error("enumeration limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("surfaces {0} and {1} are not compatible")]
    Incompatible(usize, usize),

    #[error("surface boundary slope {found} does not match filling slope {expected}")]
    SlopeMismatch { expected: Slope, found: Slope },

    #[error("surface has boundary on a torus other than the filled one")]
    UnexpectedBoundary,

    #[error("no simplicial identification of the boundary tori carries the meridian to the filling slope")]
    NoIdentification,

    #[error("surface with Euler characteristic {0} is not admissible for the length bound (needs χ < 0)")]
    NonNegativeEuler(i64),

    #[error("empty window")]
    EmptyWindow,

    #[error("{0}")]
    Invalid(String),
}

fn line_prefix(line: Option<usize>) -> String {
    match line {
        Some(l) => format!("line {l}: "),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
