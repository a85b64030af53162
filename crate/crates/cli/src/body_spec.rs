use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use widthbench::geom::{ConvexBody, Polytope, Reuleaux, Vector};

/// Input bodies as read from JSON.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodySpec {
    Polygon {
        vertices: Vec<Vec<f64>>,
    },
    Polytope {
        vertices: Vec<Vec<f64>>,
    },
    Ball {
        #[serde(default)]
        dim: Option<usize>,
        width: f64,
        #[serde(default)]
        center: Option<Vec<f64>>,
    },
    Reuleaux {
        order: usize,
        width: f64,
        #[serde(default)]
        center: Option<Vec<f64>>,
        #[serde(default)]
        phase: f64,
    },
}

impl BodySpec {
    pub fn read(path: &Path) -> Result<BodySpec> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("{}: not a valid body", path.display()))
    }

    pub fn to_body(&self) -> Result<ConvexBody> {
        match self {
            BodySpec::Polygon { vertices } => {
                if let Some(v) = vertices.iter().find(|v| v.len() != 2) {
                    bail!("polygon vertices must have 2 coordinates, found {}", v.len());
                }
                polytope(vertices)
            }
            BodySpec::Polytope { vertices } => {
                let dim = vertices.first().map_or(0, Vec::len);
                if dim < 2 {
                    bail!("polytope vertices must have at least 2 coordinates");
                }
                if vertices.iter().any(|v| v.len() != dim) {
                    bail!("polytope vertices must all have {dim} coordinates");
                }
                polytope(vertices)
            }
            BodySpec::Ball { dim, width, center } => {
                if !(*width > 0.0 && width.is_finite()) {
                    bail!("ball width must be positive and finite, got {width}");
                }
                let center = match (dim, center) {
                    (Some(d), Some(c)) if c.len() != *d => bail!("ball center has {} coordinates but dim is {d}", c.len()),
                    (_, Some(c)) => Vector::new(c.clone()),
                    (Some(d), None) => Vector::zeros(*d),
                    (None, None) => bail!("ball needs dim or center"),
                };
                if center.dim() < 2 {
                    bail!("ball dimension must be at least 2");
                }
                Ok(ConvexBody::ball(center, width / 2.0)?)
            }
            BodySpec::Reuleaux { order, width, center, phase } => {
                let center = Vector::new(center.clone().unwrap_or_else(|| vec![0.0, 0.0]));
                Ok(ConvexBody::Reuleaux(Reuleaux::new(*order, *width, center, *phase)?))
            }
        }
    }
}

fn polytope(vertices: &[Vec<f64>]) -> Result<ConvexBody> {
    if vertices.iter().flatten().any(|c| !c.is_finite()) {
        bail!("vertex coordinates must be finite");
    }
    let pts: Vec<Vector> = vertices.iter().map(|v| Vector::new(v.clone())).collect();
    let p = Polytope::from_points(&pts).context("vertices must span a full-dimensional body")?;
    Ok(ConvexBody::Polytope(p))
}

pub fn load_body(path: &Path) -> Result<ConvexBody> {
    BodySpec::read(path)?.to_body()
}
