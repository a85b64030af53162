//! Longest chords of a convex body in a given direction.
//!
//! The length of the longest chord parallel to `u` equals the radial function
//! of the difference body `C - C` at `u`; every chord of maximal length has
//! its endpoints in `C ∩ (C - ρu)` and `C ∩ (C + ρu)`.

use serde::{Deserialize, Serialize};

use super::body::ConvexBody;
use super::polytope::Polytope;
use super::vector::{Direction, Vector};
use crate::error::{GeomError, Result};
use crate::lp;

/// How to choose among several longest chords in the same direction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    /// The chord whose midpoint is lexicographically smallest.
    #[default]
    LexMidpoint,
    /// The chord in the middle of the band of longest chords (planar bodies;
    /// other dimensions fall back to the lexicographic rule).
    Centered,
}

/// A segment from `a` to `b`; `direction` is the unit vector along `b - a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub a: Vector,
    pub b: Vector,
    pub direction: Direction,
    pub length: f64,
}

impl Chord {
    /// Chord from `a` to `b`, or `None` if the endpoints coincide.
    pub fn new(a: Vector, b: Vector) -> Option<Chord> {
        let d = &b - &a;
        let direction = d.normalized()?;
        Some(Chord { length: d.norm(), a, b, direction })
    }

    pub fn midpoint(&self) -> Vector {
        self.a.midpoint(&self.b)
    }

    pub fn reversed(&self) -> Chord {
        Chord { a: self.b.clone(), b: self.a.clone(), direction: self.direction.neg(), length: self.length }
    }
}

pub fn diametral_chord(body: &ConvexBody, u: &Direction) -> Result<Chord> {
    diametral_chord_with(body, u, TieBreak::default())
}

pub fn diametral_chord_with(body: &ConvexBody, u: &Direction, tie: TieBreak) -> Result<Chord> {
    if u.dim() != body.dim() {
        return Err(GeomError::DimensionMismatch { expected: body.dim(), found: u.dim() });
    }
    match body {
        ConvexBody::Polytope(p) | ConvexBody::Completion { boundary: p, .. } => polytope_chord(p, u, tie),
        ConvexBody::Ball { center, radius } => Ok(Chord {
            a: center.add_scaled(-radius, u.as_vector()),
            b: center.add_scaled(*radius, u.as_vector()),
            direction: u.clone(),
            length: 2.0 * radius,
        }),
        // a constant-width body's longest chords join opposite support points
        ConvexBody::Reuleaux(r) => {
            let a = body.support_point(&u.neg());
            let b = a.add_scaled(r.width(), u.as_vector());
            Ok(Chord { a, b, direction: u.clone(), length: r.width() })
        }
        ConvexBody::Rounded { core, radius } => Ok(rounded_chord(core, *radius, u)),
    }
}

pub fn polytope_chord(p: &Polytope, u: &Direction, tie: TieBreak) -> Result<Chord> {
    if p.dim() == 2 {
        return Ok(polygon_chord(p, u, tie));
    }
    let (a, t) = lp::longest_chord(p.vertices(), u.as_vector(), true)?;
    let b = a.add_scaled(t, u.as_vector());
    Ok(Chord { a, b, direction: u.clone(), length: t })
}

/// Position along a monotone boundary chain at perpendicular offset `s`.
fn chain_at(chain: &[(f64, f64)], s: f64) -> f64 {
    let j = chain.partition_point(|p| p.0 < s);
    if j == 0 {
        chain[0].1
    } else if j == chain.len() {
        chain[j - 1].1
    } else if chain[j].0 == s {
        chain[j].1
    } else {
        let (s0, t0) = chain[j - 1];
        let (s1, t1) = chain[j];
        t0 + (t1 - t0) * (s - s0) / (s1 - s0)
    }
}

/// Exact planar chord: the chord length is a concave piecewise-linear
/// function of the perpendicular offset with breakpoints at vertices.
fn polygon_chord(p: &Polytope, u: &Direction, tie: TieBreak) -> Chord {
    let v = p.vertices();
    let n = v.len();
    let uu = u.as_vector();
    let w = uu.perp();
    let s: Vec<f64> = v.iter().map(|x| w.dot(x)).collect();
    let t: Vec<f64> = v.iter().map(|x| uu.dot(x)).collect();
    let pick = |better: &dyn Fn(usize, usize) -> bool| (1..n).fold(0, |b, i| if better(i, b) { i } else { b });
    let bottom_right = pick(&|i, b| s[i] < s[b] || (s[i] == s[b] && t[i] > t[b]));
    let bottom_left = pick(&|i, b| s[i] < s[b] || (s[i] == s[b] && t[i] < t[b]));
    let top_right = pick(&|i, b| s[i] > s[b] || (s[i] == s[b] && t[i] > t[b]));
    let top_left = pick(&|i, b| s[i] > s[b] || (s[i] == s[b] && t[i] < t[b]));

    // Vertices are counter-clockwise in the (u, w) frame, so walking forward
    // from the bottom traces the side with larger t.
    let walk = |from: usize, to: usize| -> Vec<(f64, f64)> {
        let mut out = vec![(s[from], t[from])];
        let mut i = from;
        while i != to {
            i = (i + 1) % n;
            out.push((s[i], t[i]));
        }
        out
    };
    let right = walk(bottom_right, top_right);
    let mut left = walk(top_left, bottom_left);
    left.reverse();

    let mut breaks: Vec<f64> = s.clone();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let len_at = |x: f64| chain_at(&right, x) - chain_at(&left, x);
    let lens: Vec<f64> = breaks.iter().map(|&x| len_at(x)).collect();
    let best = lens.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.max_abs())).max(1e-300);
    let band: Vec<usize> = (0..breaks.len()).filter(|&i| lens[i] >= best - 1e-11 * scale).collect();
    let (lo, hi) = (band[0], *band.last().unwrap());
    let chord_at = |x: f64| -> Chord {
        let ta = chain_at(&left, x);
        let tb = chain_at(&right, x);
        let a = uu.scale(ta).add_scaled(x, &w);
        let b = uu.scale(tb).add_scaled(x, &w);
        Chord { a, b, direction: u.clone(), length: tb - ta }
    };
    match tie {
        TieBreak::Centered => chord_at(0.5 * (breaks[lo] + breaks[hi])),
        TieBreak::LexMidpoint => (lo..=hi)
            .map(|i| chord_at(breaks[i]))
            .min_by(|x, y| x.midpoint().lex_cmp(&y.midpoint(), 1e-12 * scale))
            .unwrap(),
    }
}

/// One end of a line section together with its rate of change as the line
/// moves along its normal.
#[derive(Clone, Copy, Debug)]
struct End {
    t: f64,
    rate: f64,
}

/// Section of the halfplanes `n·x ≤ b` by the line `s·w + t·u`.
fn clip_line(s: f64, w: &Vector, u: &Vector, halfplanes: &[(Vector, f64)]) -> Option<(End, End)> {
    let x0 = w.scale(s);
    let mut lo = End { t: f64::NEG_INFINITY, rate: 0.0 };
    let mut hi = End { t: f64::INFINITY, rate: 0.0 };
    for (n, b) in halfplanes {
        let nu = n.dot(u);
        let slack = b - n.dot(&x0);
        if nu.abs() < 1e-300 {
            if slack < 0.0 {
                return None;
            }
            continue;
        }
        let end = End { t: slack / nu, rate: -n.dot(w) / nu };
        if nu > 0.0 {
            if end.t < hi.t {
                hi = end;
            }
        } else if end.t > lo.t {
            lo = end;
        }
    }
    (lo.t <= hi.t).then_some((lo, hi))
}

/// Section of `core ⊕ disk(radius)` by the line `s·w + t·u`, as the union
/// of the sections of the core, the edge rectangles and the vertex disks.
fn rounded_section(core: &Polytope, radius: f64, s: f64, w: &Vector, u: &Vector) -> Option<(End, End)> {
    let v = core.vertices();
    let mut acc: Option<(End, End)> = None;
    let mut merge = |r: Option<(End, End)>| {
        if let Some((a, b)) = r {
            acc = Some(match acc {
                None => (a, b),
                Some((x, y)) => (if a.t < x.t { a } else { x }, if b.t > y.t { b } else { y }),
            });
        }
    };
    let core_planes: Vec<(Vector, f64)> =
        core.facets().iter().map(|f| (f.normal.as_vector().clone(), f.offset)).collect();
    merge(clip_line(s, w, u, &core_planes));
    for f in core.facets() {
        let (p, q) = (&v[f.vertices[0]], &v[f.vertices[1]]);
        let e = (q - p).normalized().expect("polygon edge").as_vector().clone();
        let n = f.normal.as_vector().clone();
        let rect = [
            (n.clone(), f.offset + radius),
            (-&n, -f.offset),
            (e.clone(), e.dot(q)),
            (-&e, -e.dot(p)),
        ];
        merge(clip_line(s, w, u, &rect));
    }
    for c in v {
        // (s - cs)^2 + (t - ct)^2 ≤ r^2 in the (w, u) frame
        let (cs, ct) = (w.dot(c), u.dot(c));
        let disc = radius * radius - (s - cs) * (s - cs);
        if disc > 0.0 {
            let h = disc.sqrt();
            let rate = (s - cs) / h;
            merge(Some((End { t: ct - h, rate }, End { t: ct + h, rate: -rate })));
        }
    }
    acc
}

/// The section length is concave in the offset `s`; its maximum is located
/// by bisection on the sign of the derivative.
fn rounded_chord(core: &Polytope, radius: f64, u: &Direction) -> Chord {
    let uu = u.as_vector();
    let w = uu.perp();
    let mut lo = -(core.support(&-&w) + radius);
    let mut hi = core.support(&w) + radius;
    let section = |s: f64| rounded_section(core, radius, s, &w, uu);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match section(mid) {
            Some((a, b)) if b.rate - a.rate > 0.0 => lo = mid,
            Some(_) => hi = mid,
            None => break,
        }
    }
    let s = 0.5 * (lo + hi);
    let (ta, tb) = section(s).map(|(a, b)| (a.t, b.t)).expect("interior offset");
    let base = w.scale(s);
    Chord {
        a: base.add_scaled(ta, uu),
        b: base.add_scaled(tb, uu),
        direction: u.clone(),
        length: tb - ta,
    }
}
