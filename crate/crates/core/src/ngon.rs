//! Wide polygons inscribed in the disk of minimal width 1.
//!
//! Vertices sit on the circle of radius 1/2 at angles `α_1 < … < α_n`,
//! stored in degrees.

use std::f64::consts::PI;

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::geom::Vector;

/// Coordinate-ascent rounds per restart used by the command-line search.
pub const DEFAULT_SEARCH_ITERS: usize = 2000;
const SEARCH_RESTARTS: usize = 24;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InscribedNgon {
    pub n: usize,
    pub angles_deg: Vec<f64>,
    pub vertices: Vec<Vector>,
    pub min_width: f64,
}

impl InscribedNgon {
    /// Angles must be strictly increasing within `[0, 360]` and span less
    /// than a full turn.
    pub fn from_angles_deg(angles: &[f64]) -> Result<Self> {
        let n = angles.len();
        if n < 3 {
            return Err(GeomError::InvalidInput(format!("need at least 3 angles, got {n}")));
        }
        if angles.iter().any(|a| !a.is_finite() || *a < 0.0 || *a > 360.0) {
            return Err(GeomError::InvalidInput("angles must lie in [0, 360]".into()));
        }
        if angles.windows(2).any(|w| w[1] <= w[0]) || angles[n - 1] - angles[0] >= 360.0 {
            return Err(GeomError::InvalidInput("angles must be strictly increasing".into()));
        }
        let vertices: Vec<Vector> = angles.iter().map(|a| on_circle(a.to_radians())).collect();
        let min_width = edge_min_width(&vertices);
        Ok(InscribedNgon { n, angles_deg: angles.to_vec(), vertices, min_width })
    }

    /// Gaps between consecutive angles, cyclically, in radians.
    pub fn gaps(&self) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let next = if i + 1 < n { self.angles_deg[i + 1] } else { self.angles_deg[0] + 360.0 };
                (next - self.angles_deg[i]).to_radians()
            })
            .collect()
    }
}

fn on_circle(t: f64) -> Vector {
    Vector::xy(0.5 * t.cos(), 0.5 * t.sin())
}

/// Minimal width of a convex polygon with counterclockwise vertices: the
/// smallest over edges of the largest vertex distance from the edge line.
pub fn edge_min_width(vertices: &[Vector]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let a = &vertices[i];
            let e = &vertices[(i + 1) % n] - a;
            let len = e.norm();
            vertices.iter().map(|v| e.cross2(&(v - a)) / len).fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

/// `1/2 + cos(π/n)/2`, attained by the regular polygon.
pub fn regular_odd_width(n: usize) -> f64 {
    0.5 + 0.5 * (PI / n as f64).cos()
}

pub fn regular_odd_ngon(n: usize) -> Result<InscribedNgon> {
    if n < 3 {
        return Err(GeomError::InvalidInput(format!("need n >= 3, got {n}")));
    }
    if n % 2 == 0 {
        return Err(GeomError::InvalidInput(format!("n = {n} is even; use search")));
    }
    let angles: Vec<f64> = (1..=n).map(|i| 360.0 * i as f64 / n as f64).collect();
    InscribedNgon::from_angles_deg(&angles)
}

fn angle_deg_of(v: &Vector) -> f64 {
    let a = v.coords()[1].atan2(v.coords()[0]).to_degrees();
    if a <= 0.0 {
        a + 360.0
    } else {
        a
    }
}

/// The kite `(1/2, 0), (-1/6, √2/3), (-1/2, 0), (-1/6, -√2/3)` with minimal
/// width `4√3/9`.
pub fn kite_quadrangle() -> InscribedNgon {
    let s = 2f64.sqrt() / 3.0;
    let verts = [Vector::xy(-1.0 / 6.0, s), Vector::xy(-0.5, 0.0), Vector::xy(-1.0 / 6.0, -s), Vector::xy(0.5, 0.0)];
    let angles: Vec<f64> = verts.iter().map(angle_deg_of).collect();
    let min_width = edge_min_width(&verts);
    InscribedNgon { n: 4, angles_deg: angles, vertices: verts.to_vec(), min_width }
}

/// Interior angle at `b` of the path `a, b, c`, in degrees.
fn corner_deg(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    let (u, v) = (a - b, c - b);
    u.cross2(&v).abs().atan2(u.dot(&v)).to_degrees()
}

/// The kite with its vertex `(-1/2, 0)` moved to angle `x3_deg` on the
/// circle. The result keeps the kite's width as long as the angles at the
/// neighbours of the moved vertex stay at least the angle at `(1/2, 0)`.
pub fn kite_family(x3_deg: f64) -> Result<InscribedNgon> {
    let kite = kite_quadrangle();
    let (v2, v4, v1) = (kite.vertices[0].clone(), kite.vertices[2].clone(), kite.vertices[3].clone());
    if !(x3_deg > kite.angles_deg[0] && x3_deg < kite.angles_deg[2]) {
        return Err(GeomError::NotAdmissible(format!("x3 = {x3_deg}° must lie strictly between v2 and v4")));
    }
    let x3 = on_circle(x3_deg.to_radians());
    let at_v1 = corner_deg(&v4, &v1, &v2);
    let at_v2 = corner_deg(&v1, &v2, &x3);
    let at_v4 = corner_deg(&v1, &v4, &x3);
    let slack = 1e-9;
    if at_v2 < at_v1 - slack {
        return Err(GeomError::NotAdmissible(format!("angle v1 v2 x3 = {at_v2}° is below angle v4 v1 v2 = {at_v1}°")));
    }
    if at_v4 < at_v1 - slack {
        return Err(GeomError::NotAdmissible(format!("angle v1 v4 x3 = {at_v4}° is below angle v4 v1 v2 = {at_v1}°")));
    }
    InscribedNgon::from_angles_deg(&[kite.angles_deg[0], x3_deg, kite.angles_deg[2], 360.0])
}

/// Admissible range of the moved kite vertex, in degrees.
pub fn kite_family_range() -> (f64, f64) {
    let a2 = kite_quadrangle().angles_deg[0];
    (360.0 - 2.0 * a2, 2.0 * a2)
}

/// `α_1 = arccos((√145 - 5)/20)` in degrees.
pub fn hexagon_alpha1_deg() -> f64 {
    ((145f64.sqrt() - 5.0) / 20.0).acos().to_degrees()
}

/// `(1/2 + cos α_1 / 2 - cos² α_1) · √(2 + 2 cos α_1)`.
pub fn hexagon_width_closed_form() -> f64 {
    let c = hexagon_alpha1_deg().to_radians().cos();
    (0.5 + 0.5 * c - c * c) * (2.0 + 2.0 * c).sqrt()
}

/// Angles `(α_1, 2α_1, 180, 360 - 2α_1, 360 - α_1, 360)`.
pub fn wide_hexagon() -> InscribedNgon {
    hexagon_flex(180.0).expect("180 is in range")
}

/// Range of the third angle over which the hexagon keeps its width.
pub fn hexagon_flex_range() -> (f64, f64) {
    let a1 = hexagon_alpha1_deg();
    (360.0 - 3.0 * a1, 3.0 * a1)
}

pub fn hexagon_flex(alpha3_deg: f64) -> Result<InscribedNgon> {
    let (lo, hi) = hexagon_flex_range();
    if !(alpha3_deg >= lo - 1e-9 && alpha3_deg <= hi + 1e-9) {
        return Err(GeomError::InvalidInput(format!("alpha3 = {alpha3_deg}° outside [{lo}, {hi}]")));
    }
    let a1 = hexagon_alpha1_deg();
    InscribedNgon::from_angles_deg(&[a1, 2.0 * a1, alpha3_deg, 360.0 - 2.0 * a1, 360.0 - a1, 360.0])
}

/// Octagon with angles `50.432, 100.864, 151.296, 180, 208.704, 259.136,
/// 309.568, 360` degrees.
pub fn wide_octagon() -> InscribedNgon {
    InscribedNgon::from_angles_deg(&[50.432, 100.864, 151.296, 180.0, 208.704, 259.136, 309.568, 360.0])
        .expect("valid angles")
}

fn polygon_of(x: &[f64]) -> Vec<Vector> {
    x.iter().map(|&t| on_circle(t)).chain(std::iter::once(on_circle(2.0 * PI))).collect()
}

/// Width with the last angle pinned at `2π`; `-∞` when the order breaks.
fn objective(x: &[f64]) -> f64 {
    let mut prev = 0.0;
    for &t in x {
        if t <= prev {
            return f64::NEG_INFINITY;
        }
        prev = t;
    }
    if prev >= 2.0 * PI {
        return f64::NEG_INFINITY;
    }
    edge_min_width(&polygon_of(x))
}

/// Per-edge width and the vertex realizing it.
fn edge_profile(x: &[f64]) -> Vec<(f64, usize)> {
    let v = polygon_of(x);
    let n = v.len();
    (0..n)
        .map(|i| {
            let e = &v[(i + 1) % n] - &v[i];
            let len = e.norm();
            v.iter()
                .enumerate()
                .map(|(j, p)| (e.cross2(&(p - &v[i])) / len, j))
                .fold((f64::NEG_INFINITY, 0), |a, b| if b.0 > a.0 { b } else { a })
        })
        .collect()
}

fn edge_distance(x: &[f64], i: usize, j: usize) -> f64 {
    let v = polygon_of(x);
    let n = v.len();
    let e = &v[(i + 1) % n] - &v[i];
    e.cross2(&(&v[j] - &v[i])) / e.norm()
}

/// Coordinate ascent with step halving.
fn coordinate_ascent(mut x: Vec<f64>, rounds: usize) -> Vec<f64> {
    let mut best = objective(&x);
    let mut step = 0.2;
    for _ in 0..rounds {
        let mut improved = false;
        for k in 0..x.len() {
            for s in [step, -step] {
                x[k] += s;
                let f = objective(&x);
                if f > best {
                    best = f;
                    improved = true;
                    break;
                }
                x[k] -= s;
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-12 {
                break;
            }
        }
    }
    x
}

/// Sequential linear programming on the max-min of edge widths, with a
/// shrinking trust region.
fn linearized_polish(mut x: Vec<f64>) -> Vec<f64> {
    let m = x.len();
    let mut best = objective(&x);
    let mut radius = 1e-2;
    let h = 1e-7;
    for _ in 0..400 {
        let profile = edge_profile(&x);
        let mut problem = Problem::new(OptimizationDirection::Maximize);
        let t = problem.add_var(1.0, (f64::NEG_INFINITY, f64::INFINITY));
        let dx: Vec<_> = (0..m).map(|_| problem.add_var(0.0, (-radius, radius))).collect();
        for (i, &(d, j)) in profile.iter().enumerate() {
            if d > best + 10.0 * radius {
                continue;
            }
            let mut row = vec![(t, 1.0)];
            for k in 0..m {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[k] += h;
                xm[k] -= h;
                let g = (edge_distance(&xp, i, j) - edge_distance(&xm, i, j)) / (2.0 * h);
                if g != 0.0 {
                    row.push((dx[k], -g));
                }
            }
            problem.add_constraint(row.as_slice(), ComparisonOp::Le, d);
        }
        for k in 0..m {
            let prev = if k == 0 { 0.0 } else { x[k - 1] };
            let mut row = vec![(dx[k], 1.0)];
            if k > 0 {
                row.push((dx[k - 1], -1.0));
            }
            problem.add_constraint(row.as_slice(), ComparisonOp::Ge, prev - x[k] + 1e-9);
        }
        problem.add_constraint([(dx[m - 1], 1.0)], ComparisonOp::Le, 2.0 * PI - x[m - 1] - 1e-9);
        let Ok(sol) = problem.solve() else { break };
        let cand: Vec<f64> = (0..m).map(|k| x[k] + sol[dx[k]]).collect();
        let f = objective(&cand);
        if f > best {
            best = f;
            x = cand;
            radius = (radius * 2.0).min(0.1);
        } else {
            radius *= 0.25;
            if radius < 1e-13 {
                break;
            }
        }
    }
    x
}

fn random_start(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut x: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
    x.sort_by(f64::total_cmp);
    x
}

/// Maximizes the minimal width over inscribed `n`-gons with `α_n = 360°`:
/// coordinate ascent from random starts, a linearized polish of each, and
/// the best result kept. Deterministic in `seed`.
pub fn search_ngon(n: usize, seed: u64, iters: usize) -> Result<InscribedNgon> {
    if n < 3 {
        return Err(GeomError::InvalidInput(format!("need n >= 3, got {n}")));
    }
    let runs: Vec<(f64, Vec<f64>)> = (0..SEARCH_RESTARTS as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(r));
            let x = random_start(&mut rng, n);
            let x = linearized_polish(coordinate_ascent(x, iters));
            (objective(&x), x)
        })
        .collect();
    let (_, x) = runs
        .into_iter()
        .filter(|r| r.0.is_finite())
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .ok_or(GeomError::NoConvergence { iterations: iters, residual: f64::NAN })?;
    let mut angles: Vec<f64> = x.iter().map(|t| t.to_degrees()).collect();
    angles.push(360.0);
    InscribedNgon::from_angles_deg(&angles)
}
