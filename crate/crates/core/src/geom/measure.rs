//! Widths and diameters.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::body::{fibonacci_sphere, ConvexBody};
use super::polytope::Polytope;
use super::vector::{random_direction, Direction, Vector};
use crate::error::{GeomError, Result};
use crate::optimize::nelder_mead;

pub fn support(body: &ConvexBody, u: &Direction) -> f64 {
    body.support(u)
}

pub fn width(body: &ConvexBody, u: &Direction) -> f64 {
    body.width(u)
}

/// Minimal width and a direction attaining it.
pub fn min_width(body: &ConvexBody) -> Result<(f64, Direction)> {
    match body {
        ConvexBody::Polytope(p) | ConvexBody::Completion { boundary: p, .. } => polytope_min_width(p),
        ConvexBody::Ball { radius, center } => Ok((2.0 * radius, Direction::axis(center.dim(), 0))),
        ConvexBody::Reuleaux(r) => Ok((r.width(), Direction::from_angle(r.phase()))),
        ConvexBody::Rounded { core, radius } => {
            let (w, u) = polytope_min_width(core)?;
            Ok((w + 2.0 * radius, u))
        }
    }
}

pub fn polytope_min_width(p: &Polytope) -> Result<(f64, Direction)> {
    match p.dim() {
        2 => Ok(polygon_min_width(p)),
        3 => Ok(polyhedron_min_width(p)),
        _ => Ok(search_min_width(p.dim(), |u| p.support(u) + p.support(&-u))),
    }
}

/// Rotating calipers over edge normals.
fn polygon_min_width(p: &Polytope) -> (f64, Direction) {
    let v = p.vertices();
    let n = v.len();
    let facets = p.facets();
    let depth = |i: usize, j: usize| facets[i].offset - facets[i].normal.dot(&v[j]);
    let mut j = (0..n)
        .max_by(|&a, &b| depth(0, a).total_cmp(&depth(0, b)))
        .unwrap();
    let mut best = (f64::INFINITY, 0usize);
    for i in 0..n {
        let mut steps = 0;
        while steps < n && depth(i, (j + 1) % n) >= depth(i, j) {
            j = (j + 1) % n;
            steps += 1;
        }
        let w = depth(i, j);
        if w < best.0 {
            best = (w, i);
        }
    }
    (best.0, facets[best.1].normal.clone())
}

/// Exact enumeration: the minimal width of a polyhedron is attained at a
/// facet normal or at the common perpendicular of two edges.
fn polyhedron_min_width(p: &Polytope) -> (f64, Direction) {
    let w = |u: &Vector| p.support(u) + p.support(&-u);
    let mut best = p
        .facets()
        .iter()
        .map(|f| (w(f.normal.as_vector()), f.normal.clone()))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("polyhedron has facets");
    let v = p.vertices();
    let dirs: Vec<Vector> = p
        .edges()
        .iter()
        .filter_map(|&(a, b)| (&v[b] - &v[a]).normalized())
        .map(|d| d.as_vector().clone())
        .collect();
    let edge_best = (0..dirs.len())
        .into_par_iter()
        .filter_map(|i| {
            let mut local: Option<(f64, Direction)> = None;
            for j in i + 1..dirs.len() {
                let c = dirs[i].cross3(&dirs[j]);
                if c.norm() < 1e-9 {
                    continue;
                }
                let u = c.normalized().expect("nonzero");
                let wu = w(u.as_vector());
                if local.as_ref().map_or(true, |l| wu < l.0) {
                    local = Some((wu, u));
                }
            }
            local
        })
        .min_by(|a, b| a.0.total_cmp(&b.0));
    if let Some(e) = edge_best {
        if e.0 < best.0 {
            best = e;
        }
    }
    best
}

/// Direction search for bodies without an exact width method: a dense
/// sample of directions followed by Nelder-Mead refinement of the best few.
pub fn search_min_width(dim: usize, width_of: impl Fn(&Vector) -> f64 + Sync) -> (f64, Direction) {
    let samples: Vec<Vector> = match dim {
        2 => (0..20_000)
            .map(|i| Direction::from_angle(std::f64::consts::PI * i as f64 / 20_000.0).as_vector().clone())
            .collect(),
        3 => fibonacci_sphere(40_000),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..40_000).map(|_| random_direction(dim, &mut rng).as_vector().clone()).collect()
        }
    };
    let mut scored: Vec<(f64, Vector)> = samples.into_par_iter().map(|u| (width_of(&u), u)).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = (scored[0].0, scored[0].1.clone());
    for (_, start) in scored.iter().take(10) {
        let (u, wu) = refine_on_sphere(start, |x| width_of(x), 1e-3, 1e-13);
        if wu < best.0 {
            best = (wu, u);
        }
    }
    (best.0, best.1.normalized().expect("unit"))
}

/// Local minimization of `f` over unit vectors near `start`, using tangent
/// coordinates at `start`.
pub(crate) fn refine_on_sphere(
    start: &Vector,
    f: impl Fn(&Vector) -> f64,
    step: f64,
    tol: f64,
) -> (Vector, f64) {
    let dim = start.dim();
    let basis = tangent_basis(start);
    let lift = |x: &[f64]| -> Vector {
        let mut v = start.clone();
        for (c, b) in x.iter().zip(&basis) {
            v = v.add_scaled(*c, b);
        }
        v.normalized().map(|d| d.as_vector().clone()).unwrap_or_else(|| start.clone())
    };
    let (x, fx) = nelder_mead(|x| f(&lift(x)), &vec![0.0; dim - 1], step, tol, 4000);
    (lift(&x), fx)
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector `u`.
pub(crate) fn tangent_basis(u: &Vector) -> Vec<Vector> {
    let dim = u.dim();
    let mut basis: Vec<Vector> = Vec::with_capacity(dim - 1);
    for i in 0..dim {
        let mut v = Vector::basis(dim, i);
        v = v.add_scaled(-v.dot(u), u);
        for b in &basis {
            v = v.add_scaled(-v.dot(b), b);
        }
        let n = v.norm();
        if n > 1e-6 {
            basis.push(v.scale(1.0 / n));
        }
        if basis.len() == dim - 1 {
            break;
        }
    }
    basis
}

/// Diameter and a pair of points at that distance.
pub fn diameter(body: &ConvexBody) -> Result<(f64, [Vector; 2])> {
    match body {
        ConvexBody::Polytope(p) | ConvexBody::Completion { boundary: p, .. } => Ok(polytope_diameter(p)),
        ConvexBody::Ball { center, radius } => {
            let e = Vector::basis(center.dim(), 0);
            Ok((2.0 * radius, [center.add_scaled(-radius, &e), center.add_scaled(*radius, &e)]))
        }
        ConvexBody::Reuleaux(r) => {
            let v0 = &r.vertices()[0];
            let toward = (r.center() - v0).normalized().ok_or(GeomError::NotFullDimensional)?;
            Ok((r.width(), [v0.clone(), v0.add_scaled(r.width(), toward.as_vector())]))
        }
        ConvexBody::Rounded { core, radius } => {
            let (d, [a, b]) = polytope_diameter(core);
            let e = (&b - &a).scale(1.0 / d);
            Ok((d + 2.0 * radius, [a.add_scaled(-radius, &e), b.add_scaled(*radius, &e)]))
        }
    }
}

pub fn polytope_diameter(p: &Polytope) -> (f64, [Vector; 2]) {
    let v = p.vertices();
    let (d2, i, j) = (0..v.len())
        .into_par_iter()
        .map(|i| {
            let mut best = (0.0f64, i, i);
            for j in i + 1..v.len() {
                let d = (&v[i] - &v[j]).norm_sq();
                if d > best.0 {
                    best = (d, i, j);
                }
            }
            best
        })
        .reduce(|| (0.0, 0, 0), |a, b| if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) { b } else { a });
    (d2.sqrt(), [v[i].clone(), v[j].clone()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_widths() {
        let sq = ConvexBody::Polytope(Polytope::centered_box(&[0.5, 0.5]).unwrap());
        let diag = Direction::new(Vector::xy(1.0, 1.0)).unwrap();
        assert!((width(&sq, &diag) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(min_width(&sq).unwrap().0, 1.0);
        assert!((diameter(&sq).unwrap().0 - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn equilateral_triangle_width_is_height() {
        let t = Polytope::regular_polygon(3, 1.0 / 3f64.sqrt(), 0.3).unwrap();
        let (w, u) = min_width(&ConvexBody::Polytope(t.clone())).unwrap();
        assert!((w - 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert!((t.support(u.as_vector()) + t.support(&-u.as_vector()) - w).abs() < 1e-15);
    }

    #[test]
    fn tangent_hexagon_diameter() {
        let h = Polytope::regular_polygon(6, 1.0 / 3f64.sqrt(), 0.0).unwrap();
        assert!((polytope_diameter(&h).0 - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((polytope_min_width(&h).unwrap().0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cube_and_octahedron_widths() {
        let cube = Polytope::centered_box(&[0.5, 0.5, 0.5]).unwrap();
        assert!((polytope_min_width(&cube).unwrap().0 - 1.0).abs() < 1e-12);
        let oct = Polytope::cross_polytope(3, 0.5).unwrap();
        assert!((polytope_min_width(&oct).unwrap().0 - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn regular_tetrahedron_width_is_edge_pair() {
        // width of the regular tetrahedron with edge a is a/√2, attained
        // between opposite edges rather than at a facet normal
        let pts: Vec<Vector> = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
            .into_iter()
            .map(Vector::from)
            .collect();
        let t = Polytope::from_points(&pts).unwrap();
        let edge = 8f64.sqrt();
        assert!((polytope_min_width(&t).unwrap().0 - edge / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn four_dimensional_cross_polytope_width() {
        let p = Polytope::cross_polytope(4, 1.0).unwrap();
        let (w, _) = polytope_min_width(&p).unwrap();
        assert!((w - 1.0).abs() < 1e-6, "{w}");
    }
}
