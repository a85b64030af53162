use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// A point or displacement in `E^d`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Vector {
    pub fn new(coords: Vec<f64>) -> Self {
        Vector(coords)
    }

    pub fn xy(x: f64, y: f64) -> Self {
        Vector(vec![x, y])
    }

    pub fn xyz(x: f64, y: f64, z: f64) -> Self {
        Vector(vec![x, y, z])
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    /// The `i`-th standard basis vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &Vector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|c| c * s).collect())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: f64, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
    }

    pub fn midpoint(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| 0.5 * (a + b)).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Unit vector in the direction of `self`, if it is not (numerically) zero.
    pub fn normalized(&self) -> Option<Direction> {
        let n = self.norm();
        if n > 1e-300 && n.is_finite() {
            Some(Direction(self.scale(1.0 / n)))
        } else {
            None
        }
    }

    /// Lexicographic comparison of coordinates with an absolute tie tolerance.
    pub fn lex_cmp(&self, other: &Vector, tol: f64) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            if (a - b).abs() > tol {
                return a.partial_cmp(b).unwrap_or(Ordering::Equal);
            }
        }
        Ordering::Equal
    }

    /// 2D cross product `x0*y1 - y0*x1`.
    pub fn cross2(&self, other: &Vector) -> f64 {
        self.0[0] * other.0[1] - self.0[1] * other.0[0]
    }

    pub fn cross3(&self, other: &Vector) -> Vector {
        let (a, b) = (&self.0, &other.0);
        Vector(vec![
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    /// Counter-clockwise perpendicular of a planar vector.
    pub fn perp(&self) -> Vector {
        Vector(vec![-self.0[1], self.0[0]])
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Vector> for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;
    fn mul(self, s: f64) -> Vector {
        self.scale(s)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

impl From<[f64; 2]> for Vector {
    fn from(c: [f64; 2]) -> Self {
        Vector(c.to_vec())
    }
}

impl From<[f64; 3]> for Vector {
    fn from(c: [f64; 3]) -> Self {
        Vector(c.to_vec())
    }
}

/// A unit vector. The norm is 1 to within `1e-12`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vector", into = "Vector")]
pub struct Direction(Vector);

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Direction{:?}", self.0 .0)
    }
}

impl TryFrom<Vector> for Direction {
    type Error = GeomError;
    fn try_from(v: Vector) -> Result<Self> {
        Direction::new(v)
    }
}

impl From<Direction> for Vector {
    fn from(d: Direction) -> Self {
        d.0
    }
}

impl Direction {
    /// Normalizes `v`. Fails on zero or non-finite input.
    pub fn new(v: Vector) -> Result<Self> {
        v.normalized()
            .ok_or_else(|| GeomError::InvalidInput("direction must be a non-zero finite vector".into()))
    }

    pub fn from_angle(theta: f64) -> Self {
        Direction(Vector::xy(theta.cos(), theta.sin()))
    }

    pub fn axis(dim: usize, i: usize) -> Self {
        Direction(Vector::basis(dim, i))
    }

    pub fn as_vector(&self) -> &Vector {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn dot(&self, v: &Vector) -> f64 {
        self.0.dot(v)
    }

    pub fn neg(&self) -> Direction {
        Direction(-&self.0)
    }

    /// Planar angle in `(-π, π]`.
    pub fn angle(&self) -> f64 {
        self.0[1].atan2(self.0[0])
    }

    /// Counter-clockwise perpendicular (planar only).
    pub fn perp(&self) -> Direction {
        Direction(self.0.perp())
    }

    /// Angle between the lines spanned by `self` and `other`, in `[0, π/2]`.
    pub fn line_angle(&self, other: &Direction) -> f64 {
        let chord = self.0.dist(&other.0).min((&self.0 + &other.0).norm());
        2.0 * (chord / 2.0).min(1.0).asin()
    }
}

/// A proper orthogonal transformation of `E^d` (determinant +1).
#[derive(Clone, Debug, PartialEq)]
pub struct Rotation {
    rows: Vec<Vec<f64>>,
}

impl Rotation {
    pub fn identity(dim: usize) -> Self {
        Rotation {
            rows: (0..dim)
                .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect(),
        }
    }

    pub fn planar(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Rotation { rows: vec![vec![c, -s], vec![s, c]] }
    }

    /// Haar-distributed proper rotation (Gram-Schmidt of a Gaussian matrix).
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        loop {
            let mut rows: Vec<Vec<f64>> = Vec::with_capacity(dim);
            let mut ok = true;
            for _ in 0..dim {
                let mut v: Vec<f64> = (0..dim).map(|_| standard_normal(rng)).collect();
                for r in &rows {
                    let d: f64 = v.iter().zip(r).map(|(a, b)| a * b).sum();
                    v.iter_mut().zip(r).for_each(|(a, b)| *a -= d * b);
                }
                let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
                if n < 1e-6 {
                    ok = false;
                    break;
                }
                v.iter_mut().for_each(|a| *a /= n);
                rows.push(v);
            }
            if !ok {
                continue;
            }
            let mut rot = Rotation { rows };
            if rot.determinant() < 0.0 {
                rot.rows[0].iter_mut().for_each(|a| *a = -*a);
            }
            return rot;
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        Vector::new(
            self.rows
                .iter()
                .map(|r| r.iter().zip(v.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn apply_dir(&self, u: &Direction) -> Direction {
        Direction::new(self.apply(u.as_vector())).expect("rotation preserves norms")
    }

    /// For planar rotations, the rotation angle.
    pub fn planar_angle(&self) -> Option<f64> {
        (self.dim() == 2).then(|| self.rows[1][0].atan2(self.rows[0][0]))
    }

    fn determinant(&self) -> f64 {
        let mut m = self.rows.clone();
        let n = m.len();
        let mut det = 1.0;
        for c in 0..n {
            let p = (c..n)
                .max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))
                .unwrap();
            if m[p][c] == 0.0 {
                return 0.0;
            }
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= m[c][c];
            for r in c + 1..n {
                let f = m[r][c] / m[c][c];
                for k in c..n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
        det
    }
}

/// Box-Muller standard normal sample.
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Uniformly distributed unit vector.
pub fn random_direction<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Direction {
    loop {
        let v = Vector::new((0..dim).map(|_| standard_normal(rng)).collect());
        if let Some(d) = v.normalized() {
            return d;
        }
    }
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting. Returns `None` when a pivot falls below `1e-14` relative to the
/// largest entry.
pub fn solve_linear(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut row = r.clone();
            row.push(bi);
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[p][c].abs() < 1e-14 * scale {
            return None;
        }
        m.swap(p, c);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                if f != 0.0 {
                    for k in c..=n {
                        m[r][k] -= f * m[c][k];
                    }
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// Orientation of the planar triple `(a, b, c)`: positive when
/// counter-clockwise. Exact sign (adaptive-precision predicate).
pub fn orient2d(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    robust::orient2d(
        robust::Coord { x: a[0], y: a[1] },
        robust::Coord { x: b[0], y: b[1] },
        robust::Coord { x: c[0], y: c[1] },
    )
}

/// Exact 3D orientation: positive when `d` lies below the plane through
/// `a, b, c` oriented counter-clockwise (robust crate convention).
pub fn orient3d(a: &Vector, b: &Vector, c: &Vector, d: &Vector) -> f64 {
    let p = |v: &Vector| robust::Coord3D { x: v[0], y: v[1], z: v[2] };
    robust::orient3d(p(a), p(b), p(c), p(d))
}

/// Distance between the closed segments `ab` and `cd` in the plane.
pub fn segment_distance_2d(a: &Vector, b: &Vector, c: &Vector, d: &Vector) -> f64 {
    if segments_cross_exact(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

fn segments_cross_exact(a: &Vector, b: &Vector, c: &Vector, d: &Vector) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    o1 * o2 <= 0.0 && o3 * o4 <= 0.0 && !(o1 == 0.0 && o2 == 0.0 && o3 == 0.0 && o4 == 0.0)
}

/// Segment intersection test: exact orientation predicates, falling back to a
/// distance tolerance for endpoints produced by floating-point constructions.
pub fn segments_intersect_2d(a: &Vector, b: &Vector, c: &Vector, d: &Vector, tol: f64) -> bool {
    segments_cross_exact(a, b, c, d) || segment_distance_2d(a, b, c, d) <= tol
}

pub fn point_segment_distance(p: &Vector, a: &Vector, b: &Vector) -> f64 {
    let ab = b - a;
    let l2 = ab.norm_sq();
    if l2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(&ab) / l2).clamp(0.0, 1.0);
    p.dist(&a.add_scaled(t, &ab))
}
