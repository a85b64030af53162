use serde::{Deserialize, Serialize};

use super::body::ConvexBody;
use super::hull::convex_hull;
use super::polytope::Polytope;
use super::vector::{solve_linear, Direction, Vector};
use crate::error::{GeomError, Result};

/// The slab `lo ≤ normal · x ≤ hi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    pub normal: Direction,
    pub lo: f64,
    pub hi: f64,
}

impl Strip {
    pub fn new(normal: Direction, lo: f64, hi: f64) -> Result<Strip> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(GeomError::InvalidInput(format!("strip needs lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Strip { normal, lo, hi })
    }

    /// The narrowest strip with the given normal containing `body`.
    pub fn enclosing(body: &ConvexBody, normal: &Direction) -> Result<Strip> {
        Strip::new(normal.clone(), -body.support(&normal.neg()), body.support(normal))
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: &Vector, slack: f64) -> bool {
        let h = self.normal.dot(x);
        h >= self.lo - slack && h <= self.hi + slack
    }
}

/// Intersection of strips in `E^2` or `E^3` by vertex enumeration: every
/// choice of `d` bounding hyperplanes is solved, points violating another
/// constraint by more than `1e-9` (relative) are discarded, and the hull of
/// the rest is returned.
pub fn halfspace_intersection(strips: &[Strip]) -> Result<Polytope> {
    let dim = strips
        .first()
        .map(|s| s.normal.dim())
        .ok_or_else(|| GeomError::InvalidInput("no strips".into()))?;
    if let Some(s) = strips.iter().find(|s| s.normal.dim() != dim) {
        return Err(GeomError::DimensionMismatch { expected: dim, found: s.normal.dim() });
    }
    if !(2..=3).contains(&dim) {
        return Err(GeomError::UnsupportedDimension { dim, what: "halfspace intersection" });
    }
    if normal_rank(strips) < dim {
        return Err(GeomError::Unbounded);
    }
    let planes: Vec<(Vector, f64)> = strips
        .iter()
        .flat_map(|s| {
            [(s.normal.as_vector().clone(), s.hi), (-s.normal.as_vector(), -s.lo)]
        })
        .collect();
    let scale = strips.iter().fold(1.0f64, |m, s| m.max(s.lo.abs()).max(s.hi.abs()));
    let tol = 1e-9 * scale;
    let feasible = |x: &Vector| planes.iter().all(|(n, b)| n.dot(x) <= b + tol);

    let mut pts = Vec::new();
    let m = planes.len();
    let mut push = |idx: &[usize]| {
        let a: Vec<Vec<f64>> = idx.iter().map(|&i| planes[i].0.coords().to_vec()).collect();
        let b: Vec<f64> = idx.iter().map(|&i| planes[i].1).collect();
        if let Some(x) = solve_linear(&a, &b) {
            let x = Vector::new(x);
            if feasible(&x) {
                pts.push(x);
            }
        }
    };
    // the two planes of one strip are parallel, so skip such pairs
    for i in 0..m {
        for j in i + 1..m {
            if i / 2 == j / 2 {
                continue;
            }
            if dim == 2 {
                push(&[i, j]);
                continue;
            }
            for k in j + 1..m {
                if k / 2 == j / 2 || k / 2 == i / 2 {
                    continue;
                }
                push(&[i, j, k]);
            }
        }
    }
    if pts.is_empty() {
        return Err(GeomError::Empty);
    }
    convex_hull(&pts).map_err(|e| match e {
        GeomError::NotFullDimensional => GeomError::Empty,
        other => other,
    })
}

fn normal_rank(strips: &[Strip]) -> usize {
    let mut basis: Vec<Vector> = Vec::new();
    for s in strips {
        let mut v = s.normal.as_vector().clone();
        for b in &basis {
            v = v.add_scaled(-v.dot(b), b);
        }
        let n = v.norm();
        if n > 1e-9 {
            basis.push(v.scale(1.0 / n));
        }
    }
    basis.len()
}
