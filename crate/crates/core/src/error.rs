use thiserror::Error;

/// Obstruction detail for a rejected diagonal flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipObstruction {
    /// The opposite vertices are already joined by an edge.
    NonSimple,
    /// The new diagonal does not tile the quadrilateral (reflex or degenerate).
    Geometry,
}

#[derive(Error, Debug)]
pub enum Error {
    #[error("zero homogeneous triple is not a point or line")]
    ZeroVector,

    #[error("join of equivalent points is degenerate")]
    DegenerateJoin,

    #[error("meet of equivalent lines is degenerate")]
    DegenerateMeet,

    #[error("triangle vertices are collinear")]
    DegenerateTriangle,

    #[error("no interior exists when the triangle and query all lie on the distinguishing plane")]
    AllAtInfinity,

    #[error("point is not interior to the face")]
    NotInterior,

    #[error("point does not lie strictly inside the edge")]
    NotOnEdge,

    #[error("edge cannot be flipped: {0:?}")]
    NotFlippable(FlipObstruction),

    #[error("vertex is not a pseudo-point")]
    NotPseudo,

    #[error("point does not lie strictly inside the region")]
    NotInRegion,

    #[error("walk failed to locate the point after {restarts} restarts")]
    WalkStuck { restarts: usize },

    #[error("no six-point subset in general position was found: {0}")]
    NoSeed(String),

    #[error("three of the four quadrangulation points are collinear")]
    DegenerateQuad,

    #[error(
        "the construction is obstructed by the degenerate collinear configuration \
         (all but two points on one line): no canonical set admits the diagonal-flip \
         completion"
    )]
    CollinearObstruction,

    #[error("singular frame: representatives are linearly dependent")]
    SingularFrame,

    #[error("instance too large for the brute-force oracle (n = {0}, budget {1})")]
    BudgetExceeded(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("validation failed: {0}")]
    ValidationFailed(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
