//! Inscribed polytopes of large minimal width.
//!
//! For each line of a family take a longest chord of the body parallel to
//! it; the convex hull `H` of the chords lies in the body, has at most `2k`
//! vertices, and satisfies `w(H) ≥ cos(r) · w(C)` where `r` is the covering
//! radius of the family.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::geom::{convex_hull, diametral_chord_with, min_width, Chord, ConvexBody, Polytope, Rotation, TieBreak, Vector};
use crate::lines::{exact_covering_radius, LineFamily};
use crate::CONTAINMENT_SLACK;

pub use crate::bounds::lambda_lower_bound;

#[derive(Clone, Debug, Serialize)]
pub struct InscriptionResult {
    pub polytope: Polytope,
    pub chords: Vec<Chord>,
    pub family: LineFamily,
    /// `w(P) / w(C)`.
    pub width_ratio: f64,
    /// `cos` of the family's covering radius.
    pub bound: f64,
    pub body_width: f64,
    pub polytope_width: f64,
}

#[derive(Clone, Debug, Default)]
pub struct InscribeOptions {
    /// Applied to the family before chords are taken.
    pub rotation: Option<Rotation>,
    pub tie_break: TieBreak,
}

pub fn inscribe_wide_polytope(body: &ConvexBody, family: &LineFamily) -> Result<InscriptionResult> {
    inscribe_with(body, family, &InscribeOptions::default())
}

pub fn inscribe_with(body: &ConvexBody, family: &LineFamily, opts: &InscribeOptions) -> Result<InscriptionResult> {
    if family.dim() != body.dim() {
        return Err(GeomError::DimensionMismatch { expected: body.dim(), found: family.dim() });
    }
    let family = match &opts.rotation {
        Some(r) => family.rotated(r),
        None => family.clone(),
    };
    let chords: Vec<Chord> = family
        .lines()
        .par_iter()
        .map(|l| diametral_chord_with(body, l, opts.tie_break))
        .collect::<Result<_>>()?;
    let endpoints: Vec<Vector> = chords.iter().flat_map(|c| [c.a.clone(), c.b.clone()]).collect();
    let polytope = convex_hull(&endpoints)?;
    let (body_width, _) = min_width(body)?;
    let (polytope_width, _) = min_width(&ConvexBody::Polytope(polytope.clone()))?;
    let radius = family.radius().unwrap_or_else(|| exact_covering_radius(&family));
    Ok(InscriptionResult {
        polytope,
        chords,
        width_ratio: polytope_width / body_width,
        bound: radius.cos(),
        family,
        body_width,
        polytope_width,
    })
}

/// Independent re-check of an inscription.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InscriptionReport {
    /// Largest amount by which a polytope vertex leaves the body.
    pub max_violation: f64,
    pub contained: bool,
    pub vertex_count: usize,
    pub vertex_budget: usize,
    pub vertex_count_ok: bool,
    pub width_ratio: f64,
    pub bound: f64,
    pub ratio_ok: bool,
}

impl InscriptionReport {
    pub fn passed(&self) -> bool {
        self.contained && self.vertex_count_ok && self.ratio_ok
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.contained {
            out.push("containment");
        }
        if !self.vertex_count_ok {
            out.push("vertex count");
        }
        if !self.ratio_ok {
            out.push("width ratio");
        }
        out
    }
}

pub fn verify_inscription(body: &ConvexBody, result: &InscriptionResult) -> Result<InscriptionReport> {
    let max_violation = result
        .polytope
        .vertices()
        .iter()
        .map(|v| body.violation(v))
        .fold(f64::NEG_INFINITY, f64::max);
    let (wc, _) = min_width(body)?;
    let (wp, _) = min_width(&ConvexBody::Polytope(result.polytope.clone()))?;
    let width_ratio = wp / wc;
    let vertex_budget = 2 * result.family.len();
    Ok(InscriptionReport {
        max_violation,
        contained: max_violation <= CONTAINMENT_SLACK,
        vertex_count: result.polytope.num_vertices(),
        vertex_budget,
        vertex_count_ok: result.polytope.num_vertices() <= vertex_budget,
        width_ratio,
        bound: result.bound,
        ratio_ok: width_ratio >= result.bound - 1e-9,
    })
}
