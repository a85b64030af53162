//! # widthbench
//!
//! Polytope approximation of convex bodies with respect to minimal width and
//! diameter.
//!
//! The crate is organised around two dual constructions:
//!
//! - [`inscribe`]: take one diametral chord of a body per line of a
//!   [`LineFamily`] and return the convex hull of the chords. The hull has at
//!   most `2k` vertices and minimal width at least `cos(r) * w(C)`, where `r`
//!   is the covering radius of the `k` lines.
//! - [`circumscribe`]: complete a planar body to constant width, intersect the
//!   minimal strips orthogonal to the family lines, and return a polytope with
//!   at most `2k` facets whose diameter is at most `diam(C) / cos(r)`.
//!
//! Supporting pieces:
//!
//! - [`geom`]: vectors, polytopes, convex bodies, support functions, widths,
//!   convex hulls, diametral chords, difference bodies, strip intersections.
//! - [`lines`]: line families through the origin and their covering radii
//!   (antipodal cap coverings of the sphere).
//! - [`triangle`]: a regular triangle of minimal width `(3 - √3)/2 · w(C)`
//!   inside any planar body.
//! - [`ngon`]: wide polygons inscribed in the disk of unit width.
//! - [`bounds`]: lower bounds on the inscribed width ratio and upper bounds on
//!   the circumscribed diameter ratio, tabulated per `(d, n)`.

pub mod bounds;
pub mod circumscribe;
pub mod error;
pub mod geom;
pub mod inscribe;
pub mod lines;
pub mod ngon;
pub(crate) mod lp;
pub mod optimize;
pub mod triangle;

pub use bounds::{BoundKind, BoundReport, BoundSource};
pub use error::{GeomError, Result};
pub use geom::{Chord, ConvexBody, Direction, Polytope, Rotation, Strip, TieBreak, Vector};
pub use lines::LineFamily;

/// Absolute slack used by every containment check (support-function and
/// facet inequalities). Bodies are assumed to be at unit scale.
pub const CONTAINMENT_SLACK: f64 = 1e-9;
