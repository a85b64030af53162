//! Vectors, polytopes, convex bodies and the basic measurements on them.

mod body;
mod chord;
mod halfspace;
mod hull;
mod measure;
mod minkowski;
mod polytope;
mod vector;

pub use body::{fibonacci_sphere, polygon_distance, ConvexBody, Reuleaux, DEFAULT_RESOLUTION};
pub use chord::{diametral_chord, diametral_chord_with, polytope_chord, Chord, TieBreak};
pub use halfspace::{halfspace_intersection, Strip};
pub use hull::convex_hull;
pub use measure::{
    diameter, min_width, polytope_diameter, polytope_min_width, search_min_width, support, width,
};
pub(crate) use measure::refine_on_sphere;
pub use minkowski::{central_symmetrization, difference_body, difference_body_of, minkowski_sum_2d};
pub use polytope::{Facet, Polytope};
pub use vector::{
    orient2d, orient3d, point_segment_distance, random_direction, segment_distance_2d,
    segments_intersect_2d, solve_linear, standard_normal, Direction, Rotation, Vector,
};
