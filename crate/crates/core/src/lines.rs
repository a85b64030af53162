//! Families of lines through the origin and their covering radii.
//!
//! The covering radius of `k` lines is the largest angle between an arbitrary
//! line through the origin and the nearest family line; equivalently the
//! angular radius of the smallest `k` pairs of antipodal caps centered at the
//! lines that cover the sphere.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::{fibonacci_sphere, random_direction, refine_on_sphere, Direction, Rotation, Vector};

/// Sample count used when no resolution is requested.
pub const DEFAULT_RESOLUTION: usize = 100_000;

/// Number of independent restarts of [`optimize_family`].
pub const OPTIMIZER_RESTARTS: usize = 32;

/// Upper bounds on the covering radius of `k` lines in `E^3`, in degrees,
/// for `k = 3..=8`.
pub fn literature_bounds_3d() -> [(usize, f64); 6] {
    [(3, 54.7356), (4, 49.1066), (5, 45.9243), (6, 37.3774), (7, 36.2060), (8, 33.5473)]
}

/// `k` lines through the origin of `E^d`, each stored as a unit vector whose
/// first nonzero coordinate is positive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineFamily {
    dim: usize,
    lines: Vec<Direction>,
    /// Covering radius in radians, when known.
    radius_rad: Option<f64>,
    /// Whether `radius_rad` was confirmed by numeric certification.
    certified: bool,
    #[serde(skip)]
    label: String,
}

fn canonical(v: &Vector) -> Option<Direction> {
    let d = v.normalized()?;
    let first = d.as_vector().coords().iter().copied().find(|c| c.abs() > 1e-12)?;
    Some(if first < 0.0 { d.neg() } else { d })
}

impl LineFamily {
    /// A family through the given (nonzero, pairwise non-parallel) vectors.
    pub fn new(lines: Vec<Vector>) -> Result<Self> {
        let dim = lines
            .first()
            .map(Vector::dim)
            .ok_or_else(|| GeomError::InvalidInput("a line family needs at least one line".into()))?;
        if dim < 2 {
            return Err(GeomError::UnsupportedDimension { dim, what: "line family" });
        }
        let mut dirs = Vec::with_capacity(lines.len());
        for v in &lines {
            if v.dim() != dim {
                return Err(GeomError::DimensionMismatch { expected: dim, found: v.dim() });
            }
            if !v.is_finite() {
                return Err(GeomError::InvalidInput("non-finite line direction".into()));
            }
            let d = canonical(v).ok_or_else(|| GeomError::InvalidInput("zero line direction".into()))?;
            if let Some(prev) = dirs.iter().find(|p: &&Direction| p.line_angle(&d) <= 1e-9) {
                return Err(GeomError::InvalidInput(format!("repeated line {prev:?}")));
            }
            dirs.push(d);
        }
        Ok(LineFamily { dim, lines: dirs, radius_rad: None, certified: false, label: "custom".into() })
    }

    fn with_analytic(mut self, radius: f64, label: String) -> Self {
        self.radius_rad = Some(radius);
        self.label = label;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lines(&self) -> &[Direction] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Known covering radius in radians (analytic or certified).
    pub fn radius(&self) -> Option<f64> {
        self.radius_rad
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Short identifier such as `planar(4)` or `orthogonal(3)`.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Angle between `x` and the nearest family line.
    pub fn angle_to_nearest(&self, x: &Vector) -> f64 {
        let n = x.norm();
        let c = self.lines.iter().map(|l| l.dot(x).abs()).fold(0.0f64, f64::max) / n;
        c.min(1.0).acos()
    }

    /// The family after rotating every line; the covering radius is kept.
    pub fn rotated(&self, r: &Rotation) -> LineFamily {
        let lines = self.lines.iter().map(|l| canonical(r.apply_dir(l).as_vector()).expect("unit")).collect();
        LineFamily { lines, ..self.clone() }
    }

    /// The family with one more line; the stored radius is dropped.
    pub fn extended(&self, extra: Vector) -> Result<LineFamily> {
        let mut v: Vec<Vector> = self.lines.iter().map(|l| l.as_vector().clone()).collect();
        v.push(extra);
        Ok(LineFamily::new(v)?.with_label(format!("{}+1", self.label)))
    }

    /// Checks the stored radius against a numeric evaluation. Families without
    /// a stored radius adopt the numeric value.
    pub fn certify(mut self, resolution: usize) -> LineFamily {
        let est = covering_radius_estimate(&self, resolution);
        match self.radius_rad {
            Some(r) => self.certified = (r - est.radius).abs() <= est.tolerance.max(1e-9),
            None => {
                self.radius_rad = Some(est.radius);
                self.certified = true;
            }
        }
        self
    }
}

/// `m` lines in the plane at angles `jπ/m`; covering radius `π/(2m)`.
pub fn planar_family(m: usize) -> Result<LineFamily> {
    if m < 2 {
        return Err(GeomError::InvalidInput(format!("planar family needs m ≥ 2, got {m}")));
    }
    let lines = (0..m).map(|j| Direction::from_angle(PI * j as f64 / m as f64).as_vector().clone()).collect();
    Ok(LineFamily::new(lines)?.with_analytic(PI / (2.0 * m as f64), format!("planar({m})")))
}

/// The `d` coordinate axes; covering radius `arccos(1/√d)`.
pub fn orthogonal_axes(d: usize) -> Result<LineFamily> {
    if d < 2 {
        return Err(GeomError::InvalidInput(format!("orthogonal axes need d ≥ 2, got {d}")));
    }
    let lines = (0..d).map(|i| Vector::basis(d, i)).collect();
    Ok(LineFamily::new(lines)?.with_analytic((1.0 / (d as f64).sqrt()).acos(), format!("orthogonal({d})")))
}

/// The axes with the second one replaced by the two lines through
/// `(±1/2, √3/2, 0, …, 0)`; covering radius `arccos √(3/(3d-2))`.
pub fn plus_one_family(d: usize) -> Result<LineFamily> {
    if d < 3 {
        return Err(GeomError::InvalidInput(format!("plus-one family needs d ≥ 3, got {d}")));
    }
    let mut lines = vec![Vector::basis(d, 0)];
    for sign in [1.0, -1.0] {
        let mut c = vec![0.0; d];
        c[0] = sign * 0.5;
        c[1] = 3f64.sqrt() / 2.0;
        lines.push(Vector::new(c));
    }
    lines.extend((2..d).map(|i| Vector::basis(d, i)));
    let radius = (3.0 / (3.0 * d as f64 - 2.0)).sqrt().acos();
    Ok(LineFamily::new(lines)?.with_analytic(radius, format!("plus_one({d})")))
}

/// The six lines through opposite vertices of a regular icosahedron, with
/// the radius set by exact evaluation.
pub fn icosahedral_family() -> LineFamily {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let lines = vec![
        Vector::xyz(0.0, 1.0, phi),
        Vector::xyz(0.0, 1.0, -phi),
        Vector::xyz(1.0, phi, 0.0),
        Vector::xyz(1.0, -phi, 0.0),
        Vector::xyz(phi, 0.0, 1.0),
        Vector::xyz(phi, 0.0, -1.0),
    ];
    let mut f = LineFamily::new(lines).expect("icosahedron axes").with_label("icosahedral");
    f.radius_rad = Some(exact_covering_radius(&f));
    f.certified = true;
    f
}

/// The explicit family with the smallest covering radius among those with
/// at most `k` lines: the planar family in the plane; the axes, the
/// plus-one family and, in space, the icosahedral axes otherwise.
pub fn constructive_family(d: usize, k: usize) -> Result<LineFamily> {
    if d < 2 {
        return Err(GeomError::InvalidInput(format!("dimension must be at least 2, got {d}")));
    }
    if k < d {
        return Err(GeomError::Precondition(format!("need at least d = {d} lines, got k = {k}")));
    }
    if d == 2 {
        return planar_family(k);
    }
    let mut candidates = vec![orthogonal_axes(d)?, plus_one_family(d)?];
    if d == 3 {
        candidates.push(icosahedral_family());
    }
    Ok(candidates
        .into_iter()
        .filter(|f| f.len() <= k)
        .min_by(|a, b| a.radius().unwrap_or(FRAC_PI_2).total_cmp(&b.radius().unwrap_or(FRAC_PI_2)))
        .expect("the axes always qualify"))
}

/// Sampled covering radius with its tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringEstimate {
    pub radius: f64,
    /// Bound on the distance from the sampled to the true value before
    /// refinement (half the sample spacing; the objective is 1-Lipschitz).
    pub tolerance: f64,
}

pub fn covering_radius(family: &LineFamily, resolution: usize) -> f64 {
    covering_radius_estimate(family, resolution).radius
}

/// Samples `resolution` directions (an angle grid in the plane, a Fibonacci
/// grid on `S^2`, seeded random directions beyond), refines the ten worst
/// separated samples with Nelder-Mead, then snaps each to the nearest point
/// equidistant from `d` family lines.
pub fn covering_radius_estimate(family: &LineFamily, resolution: usize) -> CoveringEstimate {
    let d = family.dim;
    let resolution = resolution.max(16);
    let samples: Vec<Vector> = match d {
        2 => (0..resolution)
            .map(|i| Direction::from_angle(PI * i as f64 / resolution as f64).as_vector().clone())
            .collect(),
        3 => fibonacci_sphere(resolution),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0xc0fe);
            (0..resolution).map(|_| random_direction(d, &mut rng).as_vector().clone()).collect()
        }
    };
    let spacing = match d {
        2 => PI / resolution as f64,
        3 => (4.0 * PI / resolution as f64).sqrt(),
        _ => (4.0 * PI / resolution as f64).powf(1.0 / (d - 1) as f64),
    };
    let values: Vec<f64> = samples.par_iter().map(|x| family.angle_to_nearest(x)).collect();
    let sampled_max = values.iter().copied().fold(0.0f64, f64::max);

    let mut order: Vec<usize> = (0..samples.len()).collect();
    let keep = order.len().min(2000);
    order.select_nth_unstable_by(keep - 1, |&a, &b| values[b].total_cmp(&values[a]));
    order.truncate(keep);
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut seeds: Vec<&Vector> = Vec::new();
    for &i in &order {
        let x = &samples[i];
        if seeds.iter().all(|s| s.dot(x).abs() < (2.0 * spacing).cos()) {
            seeds.push(x);
        }
        if seeds.len() == 10 {
            break;
        }
    }
    let refined = seeds
        .par_iter()
        .map(|x| {
            let (y, _) = refine_on_sphere(x, |v| -family.angle_to_nearest(v), spacing, 1e-15);
            polish(family, &y)
        })
        .reduce(|| 0.0, f64::max);
    CoveringEstimate { radius: sampled_max.max(refined), tolerance: spacing / 2.0 }
}

/// Best value among points equidistant from `d` of the lines nearest to `x`.
fn polish(family: &LineFamily, x: &Vector) -> f64 {
    let d = family.dim;
    let mut best = family.angle_to_nearest(x);
    let mut near: Vec<(f64, usize)> = family.lines.iter().enumerate().map(|(i, l)| (-l.dot(x).abs(), i)).collect();
    near.sort_by(|a, b| a.0.total_cmp(&b.0));
    let pool: Vec<usize> = near.iter().take(d + 1).map(|p| p.1).collect();
    if pool.len() < d {
        return best;
    }
    for skip in 0..=pool.len() - d {
        let subset: Vec<usize> = if pool.len() == d {
            pool.clone()
        } else {
            pool.iter().enumerate().filter(|(j, _)| *j != skip).map(|p| *p.1).collect()
        };
        let signed: Vec<Vector> = subset
            .iter()
            .map(|&i| {
                let l = family.lines[i].as_vector();
                if l.dot(x) < 0.0 { -l } else { l.clone() }
            })
            .collect();
        if let Some(y) = equidistant_point(&signed) {
            let y = if y.dot(x) < 0.0 { -&y } else { y };
            best = best.max(family.angle_to_nearest(&y));
        }
    }
    best
}

/// Unit vector with equal inner products against all of `pts` (`d` vectors
/// in `E^d`), if unique.
fn equidistant_point(pts: &[Vector]) -> Option<Vector> {
    let rows: Vec<Vector> = pts[1..].iter().map(|p| &pts[0] - p).collect();
    null_vector(&rows)?.normalized().map(|d| d.as_vector().clone())
}

/// Generalized cross product of `d - 1` vectors in `E^d`.
fn null_vector(rows: &[Vector]) -> Option<Vector> {
    let d = rows.len() + 1;
    let mut out = vec![0.0; d];
    for (i, o) in out.iter_mut().enumerate() {
        let minor: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| (0..d).filter(|&j| j != i).map(|j| r[j]).collect())
            .collect();
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        *o = sign * determinant(minor);
    }
    let v = Vector::new(out);
    let scale: f64 = rows.iter().map(|r| r.norm()).product();
    (v.norm() > 1e-12 * scale.max(1e-300)).then_some(v)
}

fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    if n == 0 {
        return 1.0;
    }
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
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

/// Covering radius from the candidate points equidistant from `d` lines,
/// which include every vertex of the spherical Voronoi diagram of the
/// lines. Exact up to rounding; cost grows like `C(k, d) 2^(d-1)`.
pub fn exact_covering_radius(family: &LineFamily) -> f64 {
    let d = family.dim;
    let k = family.len();
    if d == 2 {
        let mut angles: Vec<f64> = family.lines.iter().map(|l| l.angle().rem_euclid(PI)).collect();
        angles.sort_by(f64::total_cmp);
        let mut gap = angles[0] + PI - angles[k - 1];
        for w in angles.windows(2) {
            gap = gap.max(w[1] - w[0]);
        }
        return gap / 2.0;
    }
    let rank = {
        let mut basis: Vec<Vector> = Vec::new();
        for l in &family.lines {
            let mut v = l.as_vector().clone();
            for b in &basis {
                v = v.add_scaled(-v.dot(b), b);
            }
            if v.norm() > 1e-9 {
                let n = v.norm();
                basis.push(v.scale(1.0 / n));
            }
        }
        basis.len()
    };
    if rank < d {
        return FRAC_PI_2;
    }
    worst_point(family).map_or(FRAC_PI_2, |p| p.1)
}

/// The point equidistant from `d` lines that is farthest from the family,
/// with its angle to the nearest line.
fn worst_point(family: &LineFamily) -> Option<(Vector, f64)> {
    let d = family.dim;
    let k = family.len();
    if k < d {
        return None;
    }
    let mut best: Option<(Vector, f64)> = None;
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        for mask in 0..1usize << (d - 1) {
            let signed: Vec<Vector> = subset
                .iter()
                .enumerate()
                .map(|(j, &i)| {
                    let l = family.lines[i].as_vector();
                    if j > 0 && mask >> (j - 1) & 1 == 1 { -l } else { l.clone() }
                })
                .collect();
            if let Some(y) = equidistant_point(&signed) {
                let a = family.angle_to_nearest(&y);
                if best.as_ref().map_or(true, |b| a > b.1) {
                    best = Some((y, a));
                }
            }
        }
        // advance to the next d-subset in lexicographic order
        let Some(i) = (0..d).rev().find(|&i| subset[i] < k - d + i) else {
            return best;
        };
        subset[i] += 1;
        for j in i + 1..d {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Local search for `k` lines in `E^d` with small covering radius:
/// [`OPTIMIZER_RESTARTS`] restarts (the first seeded from the best
/// constructive family) of perturbation moves that pull a line toward the
/// currently worst-covered direction or jitter a random line, keeping moves
/// that do not increase the radius. Deterministic for a given seed.
pub fn optimize_family(d: usize, k: usize, seed: u64, iters: usize) -> Result<LineFamily> {
    if d < 2 {
        return Err(GeomError::InvalidInput(format!("dimension must be at least 2, got {d}")));
    }
    if k < d {
        return Err(GeomError::Precondition(format!("need at least d = {d} lines, got k = {k}")));
    }
    if d == 2 {
        return planar_family(k);
    }
    let baseline = baseline_family(d, k)?;
    let results: Vec<(f64, Vec<Vector>)> = (0..OPTIMIZER_RESTARTS)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(r as u64));
            let start: Vec<Vector> = if r == 0 {
                baseline.lines.iter().map(|l| l.as_vector().clone()).collect()
            } else {
                (0..k).map(|_| random_direction(d, &mut rng).as_vector().clone()).collect()
            };
            local_search(start, iters, &mut rng)
        })
        .collect();
    let (radius, lines) = results
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("restarts");
    let mut fam = LineFamily::new(lines)?.with_label(format!("optimized({d},{k},seed={seed})"));
    fam.radius_rad = Some(radius);
    fam.certified = true;
    Ok(fam)
}

/// The best constructive family with exactly `k` lines: the axes or the
/// plus-one family, padded with further lines from a fixed sequence.
fn baseline_family(d: usize, k: usize) -> Result<LineFamily> {
    let base = if k > d { plus_one_family(d)? } else { orthogonal_axes(d)? };
    let mut lines: Vec<Vector> = base.lines.iter().map(|l| l.as_vector().clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    while lines.len() < k {
        lines.push(random_direction(d, &mut rng).as_vector().clone());
    }
    LineFamily::new(lines)
}

fn radius_of(lines: &[Vector]) -> Option<f64> {
    LineFamily::new(lines.to_vec()).ok().map(|f| exact_covering_radius(&f))
}

fn local_search(mut lines: Vec<Vector>, iters: usize, rng: &mut ChaCha8Rng) -> (f64, Vec<Vector>) {
    let d = lines[0].dim();
    let mut current = radius_of(&lines).unwrap_or(FRAC_PI_2);
    let mut step = 0.2;
    let mut stall = 0;
    for _ in 0..iters {
        let mut cand = lines.clone();
        if rng.gen_bool(0.5) {
            let worst = LineFamily::new(lines.clone()).ok().and_then(|f| worst_point(&f));
            if let Some((x, _)) = worst {
                // the lines nearest to the worst point tie; move one of them
                let top = cand.iter().map(|l| l.dot(&x).abs()).fold(0.0f64, f64::max);
                let nearest: Vec<usize> = (0..cand.len()).filter(|&i| cand[i].dot(&x).abs() >= top - 1e-9).collect();
                let i = nearest[rng.gen_range(0..nearest.len())];
                let xi = if cand[i].dot(&x) < 0.0 { -&x } else { x };
                let t = rng.gen_range(0.0..step);
                cand[i] = cand[i].add_scaled(t, &xi);
            }
        } else {
            let i = rng.gen_range(0..cand.len());
            let noise = random_direction(d, rng);
            cand[i] = cand[i].add_scaled(step * rng.gen::<f64>(), noise.as_vector());
        }
        for c in cand.iter_mut() {
            if let Some(u) = c.normalized() {
                *c = u.as_vector().clone();
            }
        }
        match radius_of(&cand) {
            Some(r) if r <= current => {
                if r < current - 1e-12 {
                    stall = 0;
                } else {
                    stall += 1;
                }
                current = r;
                lines = cand;
            }
            _ => stall += 1,
        }
        if stall > 60 {
            step = (step * 0.5).max(1e-7);
            stall = 0;
        }
    }
    (current, lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(x: f64) -> f64 {
        x.to_degrees()
    }

    #[test]
    fn planar_radii() {
        for m in 2..8 {
            let f = planar_family(m).unwrap();
            assert!((exact_covering_radius(&f) - PI / (2.0 * m as f64)).abs() < 1e-12);
        }
    }

    #[test]
    fn axes_in_three_dimensions() {
        let f = orthogonal_axes(3).unwrap();
        assert!((deg(exact_covering_radius(&f)) - 54.7356).abs() < 1e-4);
    }

    #[test]
    fn plus_one_in_three_dimensions() {
        let f = plus_one_family(3).unwrap();
        assert!((deg(exact_covering_radius(&f)) - 49.1066).abs() < 1e-4);
        assert!((exact_covering_radius(&f) - f.radius().unwrap()).abs() < 1e-12);
    }

    #[test]
    fn canonical_sign() {
        let f = LineFamily::new(vec![Vector::xy(-1.0, 0.5), Vector::xy(0.0, -1.0)]).unwrap();
        assert!(f.lines()[0].as_vector()[0] > 0.0);
        assert!(f.lines()[1].as_vector()[1] > 0.0);
    }

    #[test]
    fn rejects_antipodal_duplicates() {
        assert!(LineFamily::new(vec![Vector::xy(1.0, 1.0), Vector::xy(-1.0, -1.0)]).is_err());
    }

    #[test]
    fn sampled_matches_exact_after_polish() {
        let f = icosahedral_family();
        let est = covering_radius_estimate(&f, 20_000);
        assert!((est.radius - f.radius().unwrap()).abs() < 1e-9);
    }

    #[test]
    fn too_few_lines_leave_a_gap() {
        let f = LineFamily::new(vec![Vector::xyz(1.0, 0.0, 0.0), Vector::xyz(0.0, 1.0, 0.0)]).unwrap();
        assert_eq!(exact_covering_radius(&f), FRAC_PI_2);
    }

    #[test]
    fn null_vector_is_orthogonal() {
        let rows = vec![Vector::new(vec![1.0, 2.0, 0.0, 1.0]), Vector::new(vec![0.0, 1.0, 1.0, 0.0]), Vector::new(vec![1.0, 0.0, 0.0, 3.0])];
        let v = null_vector(&rows).unwrap();
        for r in &rows {
            assert!(r.dot(&v).abs() < 1e-12);
        }
    }
}
