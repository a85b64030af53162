//! Convex hulls of finite point sets.
//!
//! - `d = 2`: Andrew's monotone chain on an exact orientation predicate;
//!   collinear boundary points are dropped.
//! - `d = 3`: incremental insertion with an exact `orient3d` visibility test,
//!   followed by merging coplanar triangles into facets and removing points
//!   that only lie on facet or edge interiors.
//! - `d > 3`: extreme points only, filtered with a small linear program.

use std::collections::HashMap;

use super::polytope::{Facet, Polytope};
use super::vector::{orient2d, orient3d, Direction, Vector};
use crate::error::{GeomError, Result};
use crate::lp;

/// Relative tolerance for treating two input points as the same point.
const DEDUP_REL: f64 = 1e-12;
/// Relative tolerance for merging coplanar hull triangles.
const COPLANAR_REL: f64 = 1e-10;

pub fn convex_hull(points: &[Vector]) -> Result<Polytope> {
    let dim = points
        .first()
        .map(Vector::dim)
        .ok_or_else(|| GeomError::InvalidInput("empty point set".into()))?;
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(GeomError::DimensionMismatch { expected: dim, found: p.dim() });
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeomError::InvalidInput("non-finite coordinate".into()));
    }
    if dim < 2 {
        return Err(GeomError::UnsupportedDimension { dim, what: "convex hull" });
    }
    let scale = points.iter().fold(0.0f64, |m, p| m.max(p.max_abs())).max(1e-300);
    let pts = dedup(points, DEDUP_REL * scale);
    if pts.len() < dim + 1 {
        return Err(GeomError::NotFullDimensional);
    }
    match dim {
        2 => hull2d(pts, scale),
        3 => hull3d(pts, scale),
        _ => hull_nd(pts, scale),
    }
}

fn dedup(points: &[Vector], tol: f64) -> Vec<Vector> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]));
    let mut kept: Vec<usize> = Vec::with_capacity(points.len());
    for &i in &idx {
        let p = &points[i];
        let dup = kept
            .iter()
            .rev()
            .take_while(|&&k| p[0] - points[k][0] <= tol)
            .any(|&k| p.dist(&points[k]) <= tol);
        if !dup {
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept.into_iter().map(|i| points[i].clone()).collect()
}

fn hull2d(mut pts: Vec<Vector>, scale: f64) -> Result<Polytope> {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut lower: Vec<Vector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient2d(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient2d(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let verts = lower;
    if verts.len() < 3 {
        return Err(GeomError::NotFullDimensional);
    }
    polygon_from_ccw(verts, scale)
}

/// Builds a planar polytope from vertices already in counter-clockwise
/// convex position.
pub(crate) fn polygon_from_ccw(verts: Vec<Vector>, scale: f64) -> Result<Polytope> {
    let n = verts.len();
    let mut facets = Vec::with_capacity(n);
    let mut thickness = 0.0f64;
    for i in 0..n {
        let j = (i + 1) % n;
        let e = &verts[j] - &verts[i];
        let normal = Direction::new(Vector::xy(e[1], -e[0]))?;
        let offset = normal.dot(&verts[i]);
        let depth = verts
            .iter()
            .map(|v| offset - normal.dot(v))
            .fold(0.0f64, f64::max);
        thickness = thickness.max(depth);
        facets.push(Facet { normal, offset, vertices: vec![i, j] });
    }
    if thickness <= DEDUP_REL * scale {
        return Err(GeomError::NotFullDimensional);
    }
    Ok(Polytope { dim: 2, vertices: verts, facets })
}

fn hull3d(pts: Vec<Vector>, scale: f64) -> Result<Polytope> {
    let tol = DEDUP_REL * scale;
    let n = pts.len();

    // Initial tetrahedron from far-apart points.
    let i0 = 0;
    let i1 = argmax(n, |i| pts[i].dist(&pts[i0]));
    if pts[i1].dist(&pts[i0]) <= tol {
        return Err(GeomError::NotFullDimensional);
    }
    let axis = &pts[i1] - &pts[i0];
    let i2 = argmax(n, |i| (&pts[i] - &pts[i0]).cross3(&axis).norm() / axis.norm());
    let nrm = axis.cross3(&(&pts[i2] - &pts[i0]));
    if nrm.norm() / axis.norm() <= tol {
        return Err(GeomError::NotFullDimensional);
    }
    let i3 = argmax(n, |i| (nrm.dot(&(&pts[i] - &pts[i0]))).abs());
    if (nrm.dot(&(&pts[i3] - &pts[i0]))).abs() / nrm.norm() <= tol {
        return Err(GeomError::NotFullDimensional);
    }

    let mut faces: Vec<[usize; 3]> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut edge_face: HashMap<(usize, usize), usize> = HashMap::new();
    let simplex = [i0, i1, i2, i3];
    for skip in 0..4 {
        let tri: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| simplex[k]).collect();
        let mut f = [tri[0], tri[1], tri[2]];
        if orient3d(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[simplex[skip]]) < 0.0 {
            f.swap(1, 2);
        }
        add_face(&mut faces, &mut alive, &mut edge_face, f);
    }

    for p in 0..n {
        if simplex.contains(&p) {
            continue;
        }
        let visible: Vec<usize> = (0..faces.len())
            .filter(|&f| alive[f] && is_visible(&pts, faces[f], p))
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut horizon = Vec::new();
        for &f in &visible {
            let [a, b, c] = faces[f];
            for (x, y) in [(a, b), (b, c), (c, a)] {
                let twin = edge_face[&(y, x)];
                if !visible.contains(&twin) {
                    horizon.push((x, y));
                }
            }
        }
        for &f in &visible {
            alive[f] = false;
            let [a, b, c] = faces[f];
            for e in [(a, b), (b, c), (c, a)] {
                edge_face.remove(&e);
            }
        }
        for (x, y) in horizon {
            add_face(&mut faces, &mut alive, &mut edge_face, [x, y, p]);
        }
    }

    let tris: Vec<[usize; 3]> = faces
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(f, _)| *f)
        .collect();
    assemble_3d(&pts, &tris, &edge_face, &faces, scale)
}

fn argmax(n: usize, f: impl Fn(usize) -> f64) -> usize {
    (0..n).max_by(|&a, &b| f(a).total_cmp(&f(b))).unwrap()
}

fn is_visible(pts: &[Vector], f: [usize; 3], p: usize) -> bool {
    orient3d(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[p]) < 0.0
}

fn add_face(
    faces: &mut Vec<[usize; 3]>,
    alive: &mut Vec<bool>,
    edge_face: &mut HashMap<(usize, usize), usize>,
    f: [usize; 3],
) {
    let id = faces.len();
    faces.push(f);
    alive.push(true);
    edge_face.insert((f[0], f[1]), id);
    edge_face.insert((f[1], f[2]), id);
    edge_face.insert((f[2], f[0]), id);
}

fn tri_normal(pts: &[Vector], f: [usize; 3]) -> Vector {
    (&pts[f[1]] - &pts[f[0]]).cross3(&(&pts[f[2]] - &pts[f[0]]))
}

fn assemble_3d(
    pts: &[Vector],
    tris: &[[usize; 3]],
    edge_face: &HashMap<(usize, usize), usize>,
    faces: &[[usize; 3]],
    scale: f64,
) -> Result<Polytope> {
    let plane_tol = COPLANAR_REL * scale;
    let face_pos: HashMap<[usize; 3], usize> = tris.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    // Grow each facet from its largest triangle against that triangle's
    // plane, so slivers between near-duplicate points cannot chain
    // unrelated planes together.
    let mut order: Vec<usize> = (0..tris.len()).collect();
    let area = |t: usize| tri_normal(pts, tris[t]).norm();
    order.sort_by(|&a, &b| area(b).total_cmp(&area(a)).then(a.cmp(&b)));
    let mut group_of: Vec<Option<usize>> = vec![None; tris.len()];
    let mut group_list: Vec<Vec<usize>> = Vec::new();
    for &seed in &order {
        if group_of[seed].is_some() {
            continue;
        }
        let gid = group_list.len();
        group_of[seed] = Some(gid);
        let mut members = vec![seed];
        if let Some(n) = tri_normal(pts, tris[seed]).normalized() {
            let origin = &pts[tris[seed][0]];
            let on_plane = |v: usize| n.dot(&(&pts[v] - origin)).abs() <= plane_tol;
            let mut stack = vec![seed];
            while let Some(t) = stack.pop() {
                let f = tris[t];
                for (x, y) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                    let j = face_pos[&faces[edge_face[&(y, x)]]];
                    if group_of[j].is_none() && tris[j].iter().all(|&v| on_plane(v)) {
                        group_of[j] = Some(gid);
                        members.push(j);
                        stack.push(j);
                    }
                }
            }
        }
        members.sort_unstable();
        group_list.push(members);
    }

    let used: Vec<usize> = {
        let mut u: Vec<usize> = tris.iter().flat_map(|f| f.iter().copied()).collect();
        u.sort_unstable();
        u.dedup();
        u
    };

    struct Plane {
        normal: Direction,
        offset: f64,
        members: Vec<usize>,
    }
    let mut planes: Vec<Plane> = Vec::new();
    for g in &group_list {
        let mut acc = Vector::zeros(3);
        let mut members = Vec::new();
        for &t in g {
            acc = &acc + &tri_normal(pts, tris[t]);
            members.extend_from_slice(&tris[t]);
        }
        members.sort_unstable();
        members.dedup();
        let Some(normal) = acc.normalized() else { continue };
        let offset = used
            .iter()
            .map(|&v| normal.dot(&pts[v]))
            .fold(f64::NEG_INFINITY, f64::max);
        planes.push(Plane { normal, offset, members });
    }

    // A point is a vertex when the normals of the facets through it span E^3.
    let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
    for (pi, pl) in planes.iter().enumerate() {
        for &v in &pl.members {
            incident.entry(v).or_default().push(pi);
        }
    }
    let is_extreme = |v: usize| -> bool {
        let ns: Vec<&Vector> = incident
            .get(&v)
            .map(|l| l.iter().map(|&p| planes[p].normal.as_vector()).collect())
            .unwrap_or_default();
        spans_3d(&ns)
    };
    let extreme: Vec<usize> = used.iter().copied().filter(|&v| is_extreme(v)).collect();
    if extreme.len() < 4 {
        return Err(GeomError::NotFullDimensional);
    }
    let new_index: HashMap<usize, usize> = extreme.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let vertices: Vec<Vector> = extreme.iter().map(|&v| pts[v].clone()).collect();

    let mut facets = Vec::with_capacity(planes.len());
    for pl in planes {
        let mut loop_: Vec<usize> = pl
            .members
            .iter()
            .filter_map(|v| new_index.get(v).copied())
            .collect();
        if loop_.len() < 3 {
            continue;
        }
        order_facet_loop(&vertices, &pl.normal, &mut loop_);
        facets.push(Facet { normal: pl.normal, offset: pl.offset, vertices: loop_ });
    }
    Ok(Polytope { dim: 3, vertices, facets })
}

fn spans_3d(ns: &[&Vector]) -> bool {
    let Some(first) = ns.first() else { return false };
    let Some(second) = ns.iter().find(|n| first.cross3(n).norm() > 1e-9) else {
        return false;
    };
    let c = first.cross3(second);
    let cn = c.norm();
    ns.iter().any(|n| (c.dot(n) / cn).abs() > 1e-9)
}

fn order_facet_loop(vertices: &[Vector], normal: &Direction, idx: &mut [usize]) {
    let n = normal.as_vector();
    let mut c = Vector::zeros(3);
    for &i in idx.iter() {
        c = &c + &vertices[i];
    }
    let c = c.scale(1.0 / idx.len() as f64);
    let helper = if n[0].abs() < 0.9 { Vector::xyz(1.0, 0.0, 0.0) } else { Vector::xyz(0.0, 1.0, 0.0) };
    let e1 = n.cross3(&helper).normalized().unwrap().as_vector().clone();
    let e2 = n.cross3(&e1);
    idx.sort_by(|&a, &b| {
        let pa = &vertices[a] - &c;
        let pb = &vertices[b] - &c;
        pa.dot(&e2).atan2(pa.dot(&e1)).total_cmp(&pb.dot(&e2).atan2(pb.dot(&e1)))
    });
}

fn hull_nd(pts: Vec<Vector>, scale: f64) -> Result<Polytope> {
    let dim = pts[0].dim();
    if affine_rank(&pts, 1e-10 * scale) < dim {
        return Err(GeomError::NotFullDimensional);
    }
    let mut keep: Vec<bool> = vec![true; pts.len()];
    for i in 0..pts.len() {
        let others: Vec<Vector> = (0..pts.len())
            .filter(|&j| j != i && keep[j])
            .map(|j| pts[j].clone())
            .collect();
        let d = lp::l1_distance_to_hull(&pts[i], &others)?;
        if d <= 1e-10 * scale {
            keep[i] = false;
        }
    }
    let vertices: Vec<Vector> = pts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    Ok(Polytope { dim, vertices, facets: Vec::new() })
}

fn affine_rank(pts: &[Vector], tol: f64) -> usize {
    let mut basis: Vec<Vector> = Vec::new();
    for p in &pts[1..] {
        let mut v = p - &pts[0];
        for b in &basis {
            v = v.add_scaled(-v.dot(b), b);
        }
        let nv = v.norm();
        if nv > tol {
            basis.push(v.scale(1.0 / nv));
        }
    }
    basis.len()
}
