use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::polytope::Polytope;
use super::vector::{point_segment_distance, Direction, Rotation, Vector};
use crate::error::{GeomError, Result};

/// Boundary resolution used when a polytopal stand-in is required.
pub const DEFAULT_RESOLUTION: usize = 4096;

/// A Reuleaux polygon: the intersection of the disks of radius `width`
/// centered at the vertices of a regular polygon with an odd number of
/// vertices and diameter `width`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reuleaux {
    order: usize,
    width: f64,
    center: Vector,
    phase: f64,
    #[serde(skip)]
    vertices: Vec<Vector>,
}

impl Reuleaux {
    pub fn new(order: usize, width: f64, center: Vector, phase: f64) -> Result<Self> {
        if order < 3 || order % 2 == 0 {
            return Err(GeomError::InvalidInput(format!(
                "Reuleaux order must be odd and at least 3, got {order}"
            )));
        }
        if !(width > 0.0 && width.is_finite()) {
            return Err(GeomError::InvalidInput(format!("width must be positive, got {width}")));
        }
        if center.dim() != 2 || !center.is_finite() || !phase.is_finite() {
            return Err(GeomError::InvalidInput("Reuleaux center must be a finite planar point".into()));
        }
        let m = order as f64;
        let circumradius = width / (2.0 * (PI / (2.0 * m)).cos());
        let vertices = (0..order)
            .map(|j| {
                let t = phase + TAU * j as f64 / m;
                Vector::xy(center[0] + circumradius * t.cos(), center[1] + circumradius * t.sin())
            })
            .collect();
        Ok(Reuleaux { order, width, center, phase, vertices })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// Corners of the underlying regular polygon.
    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// Index of the vertex whose arc faces direction `u`, if any. The arc
    /// centered at `v_j` has outer normals within `π/(2m)` of `center - v_j`.
    fn arc_for(&self, u: &Vector) -> Option<usize> {
        let half = PI / (2.0 * self.order as f64);
        let cos_half = half.cos();
        let circumradius = self.width / (2.0 * half.cos());
        (0..self.order).find(|&j| {
            let inward = (&self.center - &self.vertices[j]).scale(1.0 / circumradius);
            inward.dot(u) >= cos_half * u.norm()
        })
    }

    fn support(&self, u: &Vector) -> f64 {
        match self.arc_for(u) {
            Some(j) => self.vertices[j].dot(u) + self.width * u.norm(),
            None => self.vertices.iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max),
        }
    }

    fn support_point(&self, u: &Direction) -> Vector {
        match self.arc_for(u.as_vector()) {
            Some(j) => self.vertices[j].add_scaled(self.width, u.as_vector()),
            None => {
                let i = (0..self.order)
                    .max_by(|&a, &b| self.vertices[a].dot(u.as_vector()).total_cmp(&self.vertices[b].dot(u.as_vector())))
                    .unwrap();
                self.vertices[i].clone()
            }
        }
    }

    fn violation(&self, x: &Vector) -> f64 {
        self.vertices
            .iter()
            .map(|v| x.dist(v) - self.width)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Boundary points, `per_arc + 1` per arc including both arc ends.
    pub fn boundary_points(&self, total: usize) -> Vec<Vector> {
        let m = self.order;
        let per_arc = (total / m).max(2);
        let k = (m - 1) / 2;
        let mut pts = Vec::with_capacity(m * per_arc);
        for j in 0..m {
            let c = &self.vertices[j];
            let start = &self.vertices[(j + k) % m] - c;
            let t0 = start[1].atan2(start[0]);
            let span = PI / m as f64;
            // the arc runs counter-clockwise from v_{j+k} to v_{j+k+1}
            for i in 0..per_arc {
                let t = t0 + span * i as f64 / per_arc as f64;
                pts.push(Vector::xy(c[0] + self.width * t.cos(), c[1] + self.width * t.sin()));
            }
        }
        pts
    }
}

/// A convex body in `E^d` described through its support function.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvexBody {
    Polytope(Polytope),
    Ball { center: Vector, radius: f64 },
    Reuleaux(Reuleaux),
    /// Minkowski sum of a planar polygon and a disk of radius `radius`.
    /// Strictly convex, so its diametral chords are unique.
    Rounded { core: Polytope, radius: f64 },
    /// Planar body produced by constant-width completion, stored as its
    /// boundary polygon.
    Completion { boundary: Polytope, resolution: usize },
}

impl From<Polytope> for ConvexBody {
    fn from(p: Polytope) -> Self {
        ConvexBody::Polytope(p)
    }
}

impl ConvexBody {
    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        if center.dim() < 2 || !center.is_finite() {
            return Err(GeomError::InvalidInput("ball center must be a finite point with d ≥ 2".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::InvalidInput(format!("ball radius must be positive, got {radius}")));
        }
        Ok(ConvexBody::Ball { center, radius })
    }

    /// Ball of the given width (diameter) centered at the origin.
    pub fn ball_of_width(dim: usize, width: f64) -> Result<Self> {
        ConvexBody::ball(Vector::zeros(dim), width / 2.0)
    }

    pub fn reuleaux(order: usize, width: f64) -> Result<Self> {
        Ok(ConvexBody::Reuleaux(Reuleaux::new(order, width, Vector::zeros(2), PI / 2.0)?))
    }

    pub fn rounded(core: Polytope, radius: f64) -> Result<Self> {
        if core.dim() != 2 {
            return Err(GeomError::UnsupportedDimension { dim: core.dim(), what: "rounded body" });
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::InvalidInput(format!("rounding radius must be positive, got {radius}")));
        }
        Ok(ConvexBody::Rounded { core, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Polytope(p) => p.dim(),
            ConvexBody::Ball { center, .. } => center.dim(),
            ConvexBody::Reuleaux(_) | ConvexBody::Rounded { .. } | ConvexBody::Completion { .. } => 2,
        }
    }

    /// The vertex representation, for polytopal kinds.
    pub fn as_polytope(&self) -> Option<&Polytope> {
        match self {
            ConvexBody::Polytope(p) => Some(p),
            ConvexBody::Completion { boundary, .. } => Some(boundary),
            _ => None,
        }
    }

    /// Support function evaluated at an arbitrary (not necessarily unit)
    /// vector; positively homogeneous.
    pub fn support_vec(&self, u: &Vector) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.support(u),
            ConvexBody::Ball { center, radius } => center.dot(u) + radius * u.norm(),
            ConvexBody::Reuleaux(r) => r.support(u),
            ConvexBody::Rounded { core, radius } => core.support(u) + radius * u.norm(),
            ConvexBody::Completion { boundary, .. } => boundary.support(u),
        }
    }

    pub fn support(&self, u: &Direction) -> f64 {
        self.support_vec(u.as_vector())
    }

    pub fn width(&self, u: &Direction) -> f64 {
        self.support_vec(u.as_vector()) + self.support_vec(&-u.as_vector())
    }

    /// A boundary point where `u` is an outer normal.
    pub fn support_point(&self, u: &Direction) -> Vector {
        match self {
            ConvexBody::Polytope(p) | ConvexBody::Completion { boundary: p, .. } => {
                p.vertices()[p.support_index(u.as_vector())].clone()
            }
            ConvexBody::Ball { center, radius } => center.add_scaled(*radius, u.as_vector()),
            ConvexBody::Reuleaux(r) => r.support_point(u),
            ConvexBody::Rounded { core, radius } => {
                core.vertices()[core.support_index(u.as_vector())].add_scaled(*radius, u.as_vector())
            }
        }
    }

    /// How far `x` lies outside the body (≤ 0 inside). Exact distance for
    /// balls and rounded bodies, facet excess for polytopes.
    pub fn violation(&self, x: &Vector) -> f64 {
        match self {
            ConvexBody::Polytope(p) | ConvexBody::Completion { boundary: p, .. } => p.violation(x),
            ConvexBody::Ball { center, radius } => x.dist(center) - radius,
            ConvexBody::Reuleaux(r) => r.violation(x),
            ConvexBody::Rounded { core, radius } => polygon_distance(core, x) - radius,
        }
    }

    pub fn contains(&self, x: &Vector, slack: f64) -> bool {
        self.violation(x) <= slack
    }

    /// Whether every point of `p` lies in the body.
    pub fn contains_polytope(&self, p: &Polytope, slack: f64) -> bool {
        p.vertices().iter().all(|v| self.contains(v, slack))
    }

    pub fn translated(&self, t: &Vector) -> ConvexBody {
        match self {
            ConvexBody::Polytope(p) => ConvexBody::Polytope(p.translated(t)),
            ConvexBody::Ball { center, radius } => ConvexBody::Ball { center: center + t, radius: *radius },
            ConvexBody::Reuleaux(r) => ConvexBody::Reuleaux(
                Reuleaux::new(r.order, r.width, &r.center + t, r.phase).expect("translated Reuleaux"),
            ),
            ConvexBody::Rounded { core, radius } => ConvexBody::Rounded { core: core.translated(t), radius: *radius },
            ConvexBody::Completion { boundary, resolution } => {
                ConvexBody::Completion { boundary: boundary.translated(t), resolution: *resolution }
            }
        }
    }

    /// Homothety about the origin with factor `s > 0`.
    pub fn scaled(&self, s: f64) -> ConvexBody {
        match self {
            ConvexBody::Polytope(p) => ConvexBody::Polytope(p.scaled(s)),
            ConvexBody::Ball { center, radius } => ConvexBody::Ball { center: center.scale(s), radius: radius * s },
            ConvexBody::Reuleaux(r) => ConvexBody::Reuleaux(
                Reuleaux::new(r.order, r.width * s, r.center.scale(s), r.phase).expect("scaled Reuleaux"),
            ),
            ConvexBody::Rounded { core, radius } => ConvexBody::Rounded { core: core.scaled(s), radius: radius * s },
            ConvexBody::Completion { boundary, resolution } => {
                ConvexBody::Completion { boundary: boundary.scaled(s), resolution: *resolution }
            }
        }
    }

    pub fn rotated(&self, rot: &Rotation) -> ConvexBody {
        match self {
            ConvexBody::Polytope(p) => ConvexBody::Polytope(p.rotated(rot)),
            ConvexBody::Ball { center, radius } => ConvexBody::Ball { center: rot.apply(center), radius: *radius },
            ConvexBody::Reuleaux(r) => {
                let angle = rot.planar_angle().expect("planar rotation");
                ConvexBody::Reuleaux(
                    Reuleaux::new(r.order, r.width, rot.apply(&r.center), r.phase + angle).expect("rotated Reuleaux"),
                )
            }
            ConvexBody::Rounded { core, radius } => ConvexBody::Rounded { core: core.rotated(rot), radius: *radius },
            ConvexBody::Completion { boundary, resolution } => {
                ConvexBody::Completion { boundary: boundary.rotated(rot), resolution: *resolution }
            }
        }
    }

    /// Polytope with vertices on the boundary of the body. Polytopal kinds
    /// are returned unchanged; curved planar kinds are sampled at about
    /// `resolution` boundary points; 3D balls use a Fibonacci point set.
    pub fn to_polytope(&self, resolution: usize) -> Result<Polytope> {
        let resolution = resolution.max(8);
        match self {
            ConvexBody::Polytope(p) | ConvexBody::Completion { boundary: p, .. } => Ok(p.clone()),
            ConvexBody::Ball { center, radius } => {
                let pts: Vec<Vector> = match center.dim() {
                    2 => (0..resolution)
                        .map(|i| {
                            let t = TAU * i as f64 / resolution as f64;
                            Vector::xy(center[0] + radius * t.cos(), center[1] + radius * t.sin())
                        })
                        .collect(),
                    3 => fibonacci_sphere(resolution)
                        .into_iter()
                        .map(|u| center.add_scaled(*radius, &u))
                        .collect(),
                    d => return Err(GeomError::UnsupportedDimension { dim: d, what: "ball discretization" }),
                };
                Polytope::from_points(&pts)
            }
            ConvexBody::Reuleaux(r) => Polytope::from_points(&r.boundary_points(resolution)),
            ConvexBody::Rounded { core, radius } => {
                let per = (resolution / core.num_vertices()).max(2);
                let n = core.num_vertices();
                let mut pts = Vec::with_capacity(n * (per + 1));
                for i in 0..n {
                    // arc at vertex i between the normals of its two edges
                    let prev = &core.facets()[(i + n - 1) % n].normal;
                    let next = &core.facets()[i].normal;
                    let a0 = prev.angle();
                    let mut a1 = next.angle();
                    if a1 < a0 {
                        a1 += TAU;
                    }
                    for j in 0..=per {
                        let t = a0 + (a1 - a0) * j as f64 / per as f64;
                        pts.push(core.vertices()[i].add_scaled(*radius, &Vector::xy(t.cos(), t.sin())));
                    }
                }
                Polytope::from_points(&pts)
            }
        }
    }

    /// Points on the boundary of a planar body, for drawing.
    pub fn outline(&self, resolution: usize) -> Result<Vec<Vector>> {
        if self.dim() != 2 {
            return Err(GeomError::UnsupportedDimension { dim: self.dim(), what: "outline" });
        }
        Ok(self.to_polytope(resolution)?.vertices().to_vec())
    }
}

/// Euclidean distance from `x` to a planar polygon (0 inside).
pub fn polygon_distance(p: &Polytope, x: &Vector) -> f64 {
    if p.violation(x) <= 0.0 {
        return 0.0;
    }
    p.edges()
        .iter()
        .map(|&(a, b)| point_segment_distance(x, &p.vertices()[a], &p.vertices()[b]))
        .fold(f64::INFINITY, f64::min)
}

/// `n` nearly uniform points on the unit sphere of `E^3`.
pub fn fibonacci_sphere(n: usize) -> Vec<Vector> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let t = golden * i as f64;
            Vector::xyz(r * t.cos(), r * t.sin(), z)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reuleaux_has_constant_width() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for order in [3, 5, 7] {
            let body = ConvexBody::reuleaux(order, 1.0).unwrap();
            for _ in 0..100 {
                let u = super::super::vector::random_direction(2, &mut rng);
                assert!((body.width(&u) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reuleaux_support_point_is_on_boundary() {
        let body = ConvexBody::reuleaux(5, 1.0).unwrap();
        for i in 0..64 {
            let u = Direction::from_angle(i as f64 * 0.1);
            let x = body.support_point(&u);
            assert!(body.violation(&x).abs() < 1e-12);
            assert!((x.dot(u.as_vector()) - body.support(&u)).abs() < 1e-12);
        }
    }

    #[test]
    fn reuleaux_rejects_even_order() {
        assert!(ConvexBody::reuleaux(4, 1.0).is_err());
    }

    #[test]
    fn ball_support_is_center_plus_radius() {
        let b = ConvexBody::ball(Vector::xyz(1.0, 0.0, 0.0), 0.5).unwrap();
        let u = Direction::axis(3, 0);
        assert_eq!(b.support(&u), 1.5);
        assert_eq!(b.width(&u), 1.0);
    }

    #[test]
    fn discretized_reuleaux_is_inside() {
        let body = ConvexBody::reuleaux(3, 1.0).unwrap();
        let p = body.to_polytope(300).unwrap();
        for v in p.vertices() {
            assert!(body.violation(v) < 1e-12);
        }
    }

    #[test]
    fn rounded_body_support_adds_radius() {
        let sq = Polytope::centered_box(&[0.5, 0.5]).unwrap();
        let body = ConvexBody::rounded(sq, 0.1).unwrap();
        assert!((body.width(&Direction::axis(2, 0)) - 1.2).abs() < 1e-15);
        assert!(body.contains(&Vector::xy(0.6, 0.0), 1e-12));
        assert!(!body.contains(&Vector::xy(0.58, 0.58), 1e-12));
    }
}
