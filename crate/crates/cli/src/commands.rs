use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::json;
use widthbench::bounds::bound_table;
use widthbench::circumscribe::circumscribe_at;
use widthbench::geom::{diameter, diametral_chord, min_width, ConvexBody, Direction, Vector, DEFAULT_RESOLUTION};
use widthbench::inscribe::{inscribe_wide_polytope, verify_inscription};
use widthbench::lines::{constructive_family, covering_radius_estimate, optimize_family, LineFamily};
use widthbench::ngon::{
    edge_min_width, kite_quadrangle, regular_odd_ngon, search_ngon, wide_hexagon, wide_octagon, InscribedNgon,
};
use widthbench::triangle::{inscribe_regular_triangle, TRIANGLE_WIDTH_RATIO};
use widthbench::{BoundKind, CONTAINMENT_SLACK};

use crate::body_spec::load_body;
use crate::output::{emit, fmt_num, to_json, write_atomic};
use crate::render::render_svg;
use crate::{Cli, Command, NumericFailure, Table};

/// Boundary samples used when drawing curved bodies.
const OUTLINE_SAMPLES: usize = 720;

fn ensure_ok(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(NumericFailure(what()).into())
    }
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    emit(out, &to_json(value)?)
}

fn outline(body: &ConvexBody, resolution: usize) -> Result<Option<Vec<Vector>>> {
    if body.dim() != 2 {
        return Ok(None);
    }
    Ok(Some(body.outline(resolution)?))
}

fn parse_direction(raw: &str, dim: usize) -> Result<Direction> {
    let coords: Vec<f64> = raw
        .split(',')
        .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad direction component {s:?}")))
        .collect::<Result<_>>()?;
    if coords.len() != dim {
        bail!("direction has {} components but the body has dimension {dim}", coords.len());
    }
    Vector::new(coords).normalized().ok_or_else(|| anyhow!("direction must be nonzero and finite"))
}

/// Lines for an `n`-vertex or `n`-facet construction: `⌊n/2⌋` of them.
fn family_for(d: usize, n: usize) -> Result<LineFamily> {
    if n < 2 * d {
        return Err(widthbench::GeomError::Precondition(format!("n must be at least 2d = {}, got {n}", 2 * d)).into());
    }
    Ok(constructive_family(d, n / 2)?)
}

pub fn run(cli: &Cli) -> Result<()> {
    let resolution = cli.resolution;
    if resolution == Some(0) {
        bail!("--resolution must be positive");
    }
    match &cli.command {
        Command::Width { body, out } => {
            let body = load_body(body)?;
            let (w, u) = min_width(&body)?;
            ensure_ok((body.width(&u) - w).abs() <= 1e-9 * w.max(1.0), || format!("width {w} not attained along {u:?}"))?;
            emit_json(out.out.as_deref(), &json!({ "min_width": w, "direction": u }))
        }
        Command::Diameter { body, out } => {
            let body = load_body(body)?;
            let (d, pair) = diameter(&body)?;
            let inside = pair.iter().all(|p| body.violation(p) <= CONTAINMENT_SLACK);
            ensure_ok(inside && (pair[0].dist(&pair[1]) - d).abs() <= 1e-9 * d.max(1.0), || {
                format!("diameter {d} not attained by {pair:?}")
            })?;
            emit_json(out.out.as_deref(), &json!({ "diameter": d, "pair": pair }))
        }
        Command::Chord { body, dir, out } => {
            let body = load_body(body)?;
            let u = parse_direction(dir, body.dim())?;
            let c = diametral_chord(&body, &u)?;
            let inside = [&c.a, &c.b].iter().all(|p| body.violation(p) <= CONTAINMENT_SLACK);
            let parallel = (c.direction.dot(u.as_vector()).abs() - 1.0).abs() <= 1e-9;
            ensure_ok(inside && parallel, || format!("chord {c:?} is not a chord along {u:?}"))?;
            emit_json(out.out.as_deref(), &c)
        }
        Command::Lines { d, k, optimize, seed, iters, out } => {
            let family = if *optimize { optimize_family(*d, *k, *seed, *iters)? } else { constructive_family(*d, *k)? };
            let samples = resolution.unwrap_or(widthbench::lines::DEFAULT_RESOLUTION);
            let label = family.label().to_string();
            let family = family.certify(samples);
            ensure_ok(family.is_certified(), || format!("stored radius of {label} disagrees with sampling"))?;
            let estimate = covering_radius_estimate(&family, samples);
            let mut value = serde_json::to_value(&family)?;
            let radius = family.radius().expect("certified families carry a radius");
            value["label"] = json!(label);
            value["radius_deg"] = json!(radius.to_degrees());
            value["sampled_radius_rad"] = json!(estimate.radius);
            value["sampling_tolerance_rad"] = json!(estimate.tolerance);
            emit_json(out.out.as_deref(), &value)
        }
        Command::Inscribe { body, n, out } => {
            let input = load_body(body)?;
            let (w0, _) = min_width(&input)?;
            let scale = 1.0 / w0;
            let body = input.scaled(scale);
            let family = family_for(body.dim(), *n)?;
            let label = family.label().to_string();
            let result = inscribe_wide_polytope(&body, &family)?;
            let report = verify_inscription(&body, &result)?;
            ensure_ok(report.passed(), || format!("inscription failed {}", report.failures().join(", ")))?;
            emit_json(
                out.out.as_deref(),
                &json!({
                    "command": "inscribe",
                    "n": n,
                    "scale": scale,
                    "family_id": label,
                    "outline": outline(&body, resolution.unwrap_or(OUTLINE_SAMPLES))?,
                    "result": result,
                    "verification": report,
                }),
            )
        }
        Command::Triangle { body, out } => {
            let input = load_body(body)?;
            let (w0, _) = min_width(&input)?;
            let scale = 1.0 / w0;
            let body = input.scaled(scale);
            let t = inscribe_regular_triangle(&body)?;
            let v = t.triangle.vertices();
            let inside = v.iter().all(|p| body.violation(p) <= CONTAINMENT_SLACK);
            let regular = (0..3).all(|i| (v[i].dist(&v[(i + 1) % 3]) - t.side).abs() <= 1e-7);
            let wide = t.width >= TRIANGLE_WIDTH_RATIO * t.body_width - 1e-9;
            ensure_ok(inside && regular && wide, || {
                format!("triangle inside={inside} regular={regular} width={} body width={}", t.width, t.body_width)
            })?;
            emit_json(
                out.out.as_deref(),
                &json!({
                    "command": "triangle",
                    "scale": scale,
                    "outline": outline(&body, resolution.unwrap_or(OUTLINE_SAMPLES))?,
                    "result": t,
                }),
            )
        }
        Command::Circumscribe { body, n, eps, out } => {
            if !(*eps > 0.0 && eps.is_finite()) {
                bail!("--eps must be positive, got {eps}");
            }
            let input = load_body(body)?;
            let (d0, _) = diameter(&input)?;
            let scale = 1.0 / d0;
            let body = input.scaled(scale);
            let family = family_for(body.dim(), *n)?;
            let label = family.label().to_string();
            let r = circumscribe_at(&body, &family, *eps, resolution.unwrap_or(DEFAULT_RESOLUTION))?;
            let encloses = r.strips.iter().all(|s| {
                body.support(&s.normal) <= s.hi + CONTAINMENT_SLACK && -body.support(&s.normal.neg()) >= s.lo - CONTAINMENT_SLACK
            });
            let allowed = r.bound + 4.0 * eps.max(r.completion_error);
            ensure_ok(encloses && r.facet_count <= *n && r.diameter_ratio <= allowed, || {
                format!("encloses={encloses} facets={} ratio={} allowed={allowed}", r.facet_count, r.diameter_ratio)
            })?;
            emit_json(
                out.out.as_deref(),
                &json!({
                    "command": "circumscribe",
                    "n": n,
                    "scale": scale,
                    "family_id": label,
                    "outline": outline(&body, resolution.unwrap_or(OUTLINE_SAMPLES))?,
                    "result": r,
                }),
            )
        }
        Command::Ngon { n, search, seed, iters, out } => {
            let g = if *search { search_ngon(*n, *seed, *iters)? } else { explicit_ngon(*n)? };
            let on_circle = g.vertices.iter().all(|v| (v.norm() - 0.5).abs() <= 1e-12);
            let exact = edge_min_width(&g.vertices);
            ensure_ok(on_circle && (exact - g.min_width).abs() <= 1e-12, || {
                format!("n-gon width {} recomputes to {exact}", g.min_width)
            })?;
            let mut value = serde_json::to_value(&g)?;
            value["command"] = json!("ngon");
            emit_json(out.out.as_deref(), &value)
        }
        Command::Tables { which, d, nmax, out } => {
            let kind = match which {
                Table::Lambda => BoundKind::LambdaLower,
                Table::Delta => BoundKind::DeltaUpper,
            };
            let rows = bound_table(kind, *d, *nmax)?;
            ensure_ok(rows.iter().all(|r| r.value.is_finite() && r.value > 0.0), || "non-finite table entry".into())?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["d", "n", "value", "source"])?;
            for r in &rows {
                w.write_record([r.d.to_string(), r.n.to_string(), fmt_num(r.value), r.source.as_str().to_string()])?;
                if let Some(note) = &r.note {
                    eprintln!("note: n={}: {note}", r.n);
                }
            }
            let bytes = w.into_inner().map_err(|e| anyhow!("{e}"))?;
            emit(out.out.as_deref(), std::str::from_utf8(&bytes)?)
        }
        Command::Render { input, out } => {
            let text = fs::read_to_string(input).with_context(|| format!("cannot read {}", input.display()))?;
            let value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("{}: not JSON", input.display()))?;
            let svg = render_svg(&value)?;
            write_atomic(out, svg.as_bytes())
        }
    }
}

fn explicit_ngon(n: usize) -> Result<InscribedNgon> {
    match n {
        4 => Ok(kite_quadrangle()),
        6 => Ok(wide_hexagon()),
        8 => Ok(wide_octagon()),
        n if n >= 3 && n % 2 == 1 => Ok(regular_odd_ngon(n)?),
        n if n < 3 => bail!("n must be at least 3, got {n}"),
        n => bail!("no explicit construction for n = {n}; use --search"),
    }
}
