use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::hull::convex_hull;
use super::vector::{Direction, Rotation, Vector};
use crate::error::{GeomError, Result};
use crate::lp;

/// A supporting hyperplane `normal · x = offset` containing a facet.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub normal: Direction,
    pub offset: f64,
    /// Indices of the vertices on the facet. Planar polytopes list the two
    /// edge endpoints; in 3D the loop is counter-clockwise seen from outside.
    pub vertices: Vec<usize>,
}

/// A convex polytope given by its extreme points.
///
/// Planar polytopes keep their vertices in counter-clockwise order. Facets are
/// derived for `d ≤ 3`; higher-dimensional polytopes carry vertices only.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    pub(crate) dim: usize,
    pub(crate) vertices: Vec<Vector>,
    pub(crate) facets: Vec<Facet>,
}

impl Polytope {
    /// Convex hull of `points`; see [`convex_hull`].
    pub fn from_points(points: &[Vector]) -> Result<Self> {
        convex_hull(points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn has_facets(&self) -> bool {
        !self.facets.is_empty()
    }

    /// Undirected edges. Planar: consecutive vertices. 3D: facet loop edges.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self.dim {
            2 => {
                let n = self.vertices.len();
                (0..n).map(|i| (i, (i + 1) % n)).collect()
            }
            _ => {
                let mut set = BTreeSet::new();
                for f in &self.facets {
                    let m = f.vertices.len();
                    for i in 0..m {
                        let (a, b) = (f.vertices[i], f.vertices[(i + 1) % m]);
                        set.insert((a.min(b), a.max(b)));
                    }
                }
                set.into_iter().collect()
            }
        }
    }

    pub fn support(&self, u: &Vector) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Index of a vertex maximizing `u · v` (first one on ties).
    pub fn support_index(&self, u: &Vector) -> usize {
        let mut best = 0;
        let mut bv = f64::NEG_INFINITY;
        for (i, v) in self.vertices.iter().enumerate() {
            let d = v.dot(u);
            if d > bv {
                bv = d;
                best = i;
            }
        }
        best
    }

    /// Largest facet-inequality excess `normal · x - offset` (≤ 0 inside).
    /// Without facets (d > 3), the L1 distance to the vertex hull.
    pub fn violation(&self, x: &Vector) -> f64 {
        if self.facets.is_empty() {
            return lp::l1_distance_to_hull(x, &self.vertices).unwrap_or(f64::INFINITY);
        }
        self.facets
            .iter()
            .map(|f| f.normal.dot(x) - f.offset)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, x: &Vector, slack: f64) -> bool {
        self.violation(x) <= slack
    }

    pub fn centroid(&self) -> Vector {
        let n = self.vertices.len() as f64;
        let mut c = Vector::zeros(self.dim);
        for v in &self.vertices {
            c = &c + v;
        }
        c.scale(1.0 / n)
    }

    pub fn translated(&self, t: &Vector) -> Polytope {
        Polytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v + t).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: f.offset + f.normal.dot(t),
                    vertices: f.vertices.clone(),
                })
                .collect(),
        }
    }

    /// Homothety about the origin with factor `s > 0`.
    pub fn scaled(&self, s: f64) -> Polytope {
        assert!(s > 0.0, "scale factor must be positive");
        Polytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.scale(s)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: f.offset * s,
                    vertices: f.vertices.clone(),
                })
                .collect(),
        }
    }

    pub fn rotated(&self, r: &Rotation) -> Polytope {
        Polytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| r.apply(v)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: r.apply_dir(&f.normal),
                    offset: f.offset,
                    vertices: f.vertices.clone(),
                })
                .collect(),
        }
    }

    pub fn negated(&self) -> Polytope {
        Polytope::from_points(&self.vertices.iter().map(|v| -v).collect::<Vec<_>>())
            .expect("reflection of a full-dimensional polytope")
    }

    /// Regular `n`-gon with the given circumradius, first vertex at angle `phase`.
    pub fn regular_polygon(n: usize, circumradius: f64, phase: f64) -> Result<Polytope> {
        if n < 3 {
            return Err(GeomError::InvalidInput("a polygon needs at least 3 vertices".into()));
        }
        let pts: Vec<Vector> = (0..n)
            .map(|j| {
                let t = phase + std::f64::consts::TAU * j as f64 / n as f64;
                Vector::xy(circumradius * t.cos(), circumradius * t.sin())
            })
            .collect();
        Polytope::from_points(&pts)
    }

    /// Axis-parallel box `[-h_i, h_i]`.
    pub fn centered_box(half_extents: &[f64]) -> Result<Polytope> {
        let d = half_extents.len();
        let pts: Vec<Vector> = (0..1usize << d)
            .map(|mask| {
                Vector::new(
                    (0..d)
                        .map(|i| if mask >> i & 1 == 1 { half_extents[i] } else { -half_extents[i] })
                        .collect(),
                )
            })
            .collect();
        Polytope::from_points(&pts)
    }

    /// Cross-polytope `conv{±r e_i}`.
    pub fn cross_polytope(dim: usize, r: f64) -> Result<Polytope> {
        let mut pts = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            pts.push(Vector::basis(dim, i).scale(r));
            pts.push(Vector::basis(dim, i).scale(-r));
        }
        Polytope::from_points(&pts)
    }
}

#[derive(Serialize, Deserialize)]
struct PolytopeRepr {
    dim: usize,
    vertices: Vec<Vector>,
}

impl Serialize for Polytope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeRepr { dim: self.dim, vertices: self.vertices.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polytope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolytopeRepr::deserialize(d)?;
        if repr.vertices.iter().any(|v| v.dim() != repr.dim) {
            return Err(serde::de::Error::custom("vertex dimension differs from dim"));
        }
        convex_hull(&repr.vertices).map_err(serde::de::Error::custom)
    }
}
