//! Tables of guaranteed ratios.
//!
//! Every body in `E^d` contains a polytope with at most `n` vertices whose
//! minimal width is at least `cos(a) · w(C)`, and lies in a polytope with at
//! most `n` facets whose diameter is at most `diam(C) / cos(a)`, where `a` is
//! the best known covering radius of `⌊n/2⌋` lines through the origin.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::lines::{exact_covering_radius, icosahedral_family, literature_bounds_3d, orthogonal_axes, plus_one_family, LineFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Lower bound on the inscribed width ratio.
    LambdaLower,
    /// Upper bound on the circumscribed diameter ratio.
    DeltaUpper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// A constructed family with a closed-form covering radius.
    Analytic,
    /// A tabulated covering radius without a construction here.
    Literature,
    /// A family found by [`crate::lines::optimize_family`].
    Optimized,
}

impl BoundSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundSource::Analytic => "analytic",
            BoundSource::Literature => "literature",
            BoundSource::Optimized => "optimized",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub d: usize,
    pub n: usize,
    pub kind: BoundKind,
    pub value: f64,
    /// Covering radius behind the value, in degrees.
    pub radius_deg: f64,
    pub family_id: String,
    pub source: BoundSource,
    /// Set when a published decimal for this entry differs from `value` by
    /// more than `1e-3`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Published three-dimensional decimals, `(n, Λ_n lower bound)`.
pub const PUBLISHED_LAMBDA_3D: [(usize, f64); 6] =
    [(6, 0.577), (8, 0.654), (10, 0.695), (12, 0.794), (14, 0.806), (16, 0.833)];

/// Published three-dimensional decimals, `(n, Δ_n upper bound)`.
pub const PUBLISHED_DELTA_3D: [(usize, f64); 6] =
    [(6, 1.773), (8, 1.529), (10, 1.438), (12, 1.257), (14, 1.239), (16, 1.199)];

/// Smallest known covering radius (radians) of `k` lines in `E^d`, with the
/// family it comes from. Values for `k` without a dedicated entry are
/// inherited from smaller `k`, since adding lines never hurts.
pub fn best_radius(d: usize, k: usize) -> Result<(f64, String, BoundSource)> {
    if d < 2 {
        return Err(GeomError::InvalidInput(format!("dimension must be at least 2, got {d}")));
    }
    if k < d {
        return Err(GeomError::Precondition(format!("need at least d = {d} lines, got {k}")));
    }
    if d == 2 {
        return Ok((PI / (2.0 * k as f64), format!("planar({k})"), BoundSource::Analytic));
    }
    let mut candidates: Vec<(usize, f64, String, BoundSource)> = Vec::new();
    let analytic = |f: LineFamily| (f.len(), f.radius().expect("analytic radius"), f.label().to_string(), BoundSource::Analytic);
    candidates.push(analytic(orthogonal_axes(d)?));
    candidates.push(analytic(plus_one_family(d)?));
    if d == 3 {
        let ico = icosahedral_family();
        candidates.push((6, exact_covering_radius(&ico), "icosahedral".into(), BoundSource::Analytic));
        for (kk, deg) in literature_bounds_3d() {
            if matches!(kk, 5 | 7 | 8) {
                candidates.push((kk, deg.to_radians(), format!("literature({kk})"), BoundSource::Literature));
            }
        }
    }
    let (kk, r, id, src) = candidates
        .into_iter()
        .filter(|c| c.0 <= k)
        .min_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
        .expect("the axes always qualify");
    let id = if kk < k { format!("{id} (from k={kk})") } else { id };
    Ok((r, id, src))
}

fn check_n(d: usize, n: usize) -> Result<()> {
    if n < 2 * d {
        return Err(GeomError::Precondition(format!("n must be at least 2d = {}, got {n}", 2 * d)));
    }
    Ok(())
}

fn published(kind: BoundKind, d: usize, n: usize) -> Option<f64> {
    if d != 3 {
        return None;
    }
    let table = match kind {
        BoundKind::LambdaLower => &PUBLISHED_LAMBDA_3D,
        BoundKind::DeltaUpper => &PUBLISHED_DELTA_3D,
    };
    table.iter().find(|e| e.0 == n).map(|e| e.1)
}

fn report(kind: BoundKind, d: usize, n: usize, radius: f64, family_id: String, source: BoundSource) -> BoundReport {
    let value = match kind {
        BoundKind::LambdaLower => radius.cos(),
        BoundKind::DeltaUpper => 1.0 / radius.cos(),
    };
    let note = published(kind, d, n)
        .filter(|p| (p - value).abs() > 1e-3)
        .map(|p| format!("published value {p} differs from computed {value:.6}"));
    BoundReport { d, n, kind, value, radius_deg: radius.to_degrees(), family_id, source, note }
}

/// `cos a` for `a` the best covering radius of `⌊n/2⌋` lines.
pub fn lambda_lower_bound(d: usize, n: usize) -> Result<BoundReport> {
    lambda_lower_bound_with(d, n, None)
}

/// As [`lambda_lower_bound`], also considering an optimized family.
pub fn lambda_lower_bound_with(d: usize, n: usize, optimized: Option<&LineFamily>) -> Result<BoundReport> {
    bound_with(BoundKind::LambdaLower, d, n, optimized)
}

/// `1 / cos a` for `a` the best covering radius of `⌊n/2⌋` lines.
pub fn delta_upper_bound(d: usize, n: usize) -> Result<BoundReport> {
    bound_with(BoundKind::DeltaUpper, d, n, None)
}

pub fn delta_upper_bound_with(d: usize, n: usize, optimized: Option<&LineFamily>) -> Result<BoundReport> {
    bound_with(BoundKind::DeltaUpper, d, n, optimized)
}

fn bound_with(kind: BoundKind, d: usize, n: usize, optimized: Option<&LineFamily>) -> Result<BoundReport> {
    check_n(d, n)?;
    let k = n / 2;
    let (mut r, mut id, mut src) = best_radius(d, k)?;
    if let Some(f) = optimized {
        if f.dim() == d && f.len() <= k {
            let fr = f.radius().unwrap_or_else(|| exact_covering_radius(f));
            if fr < r - 1e-12 {
                (r, id, src) = (fr, f.label().to_string(), BoundSource::Optimized);
            }
        }
    }
    Ok(report(kind, d, n, r, id, src))
}

/// One row per `n` in `2d..=nmax`.
pub fn bound_table(kind: BoundKind, d: usize, nmax: usize) -> Result<Vec<BoundReport>> {
    check_n(d, nmax)?;
    (2 * d..=nmax).map(|n| bound_with(kind, d, n, None)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_four_gon() {
        let r = lambda_lower_bound(2, 4).unwrap();
        assert!((r.value - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(r.source, BoundSource::Analytic);
    }

    #[test]
    fn precondition() {
        assert!(matches!(lambda_lower_bound(3, 5), Err(GeomError::Precondition(_))));
        assert!(matches!(delta_upper_bound(2, 3), Err(GeomError::Precondition(_))));
    }

    #[test]
    fn odd_n_uses_floor() {
        assert_eq!(lambda_lower_bound(3, 13).unwrap().value, lambda_lower_bound(3, 12).unwrap().value);
    }

    #[test]
    fn twelve_vertices_in_space() {
        let r = lambda_lower_bound(3, 12).unwrap();
        let closed = (PI / 5.0).tan().recip() / 3f64.sqrt();
        assert!((r.value - closed).abs() < 1e-12);
    }

    #[test]
    fn six_facets_flagged() {
        let r = delta_upper_bound(3, 6).unwrap();
        assert!((r.value - 3f64.sqrt()).abs() < 1e-12);
        assert!(r.note.is_some());
    }

    #[test]
    fn large_k_inherits() {
        let r = lambda_lower_bound(3, 20).unwrap();
        assert!(r.family_id.contains("from k=8"));
    }
}
