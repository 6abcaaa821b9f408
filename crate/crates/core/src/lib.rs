//! Triangulations of the real projective plane from finite point sets given
//! in homogeneous coordinates.
//!
//! The pipeline: find six points in general position, build the initial
//! triangulation over a quadrangulation (three auxiliary pseudo-points),
//! eliminate the pseudo-points via star replacement and one diagonal flip,
//! then insert the remaining points incrementally by walking point location
//! and face splits. Every face carries a distinguishing plane — an origin
//! plane of R³ strictly separating the face's two antipodal spherical copies —
//! which is what makes "interior" well-defined on a non-orientable surface.
//!
//! Arithmetic is either exact (arbitrary-precision rationals) or f64 with a
//! relative tolerance for sign decisions.
//!
//! ```
//! use projtri::pipeline::{triangulate, PipelineConfig, PointSetDocument};
//! use projtri::scalar::Mode;
//!
//! let input = PointSetDocument::parse(
//!     r#"{"points": [[1,0,0],[0,1,0],[0,0,1],[1,1,1],[1,2,4],[4,2,1],[2,3,5]]}"#,
//!     Mode::Exact,
//! ).unwrap();
//! let doc = triangulate(&input, &PipelineConfig::default()).unwrap();
//! assert_eq!(doc.vertex_count(), 7);
//! assert_eq!(doc.edge_count(), 18);   // E = 3V - 3
//! assert_eq!(doc.face_count(), 12);   // F = 2V - 2
//! assert_eq!(doc.euler(), 1);
//! ```

pub mod complex;
pub mod error;
pub mod kernel;
pub mod log;
pub mod oracle;
pub mod pipeline;
pub mod scalar;
pub mod seed;
pub mod smap;

pub use complex::{
    EdgeKey, FaceId, Triangulation, ValidationLevel, ValidationReport, VertexId, WalkOutcome,
    WalkTrace,
};
pub use error::Error;
pub use kernel::{
    collinear, distinguishing_plane_for, incident, join, meet, DistinguishingPlane,
    ProjectiveLine, ProjectivePoint,
};
pub use scalar::{Mode, Scalar};
pub use smap::{classify, plane_transform, s_map, Classification, SMapped};
