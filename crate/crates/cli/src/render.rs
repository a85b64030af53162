use anyhow::{bail, Result};
use serde_json::Value;
use svg::node::element::{Circle, Group, Line, Polygon, Rectangle};
use svg::Document;

use crate::output::fmt_num;

const PIXELS: f64 = 600.0;

type Pt = [f64; 2];

fn point(v: &Value) -> Result<Pt> {
    match v.as_array().map(|a| a.iter().map(Value::as_f64).collect::<Option<Vec<f64>>>()) {
        Some(Some(c)) if c.len() == 2 => Ok([c[0], c[1]]),
        Some(Some(c)) => bail!("only planar results can be drawn, found a point with {} coordinates", c.len()),
        _ => bail!("expected a point, found {v}"),
    }
}

fn points(v: &Value) -> Result<Vec<Pt>> {
    v.as_array().map_or(Ok(Vec::new()), |a| a.iter().map(point).collect())
}

struct Frame {
    min: Pt,
    max: Pt,
}

impl Frame {
    fn around(pts: &[Pt]) -> Result<Frame> {
        if pts.is_empty() {
            bail!("nothing to draw: no outline, polytope or vertices in the input");
        }
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in pts {
            for i in 0..2 {
                min[i] = min[i].min(p[i]);
                max[i] = max[i].max(p[i]);
            }
        }
        let pad = 0.08 * (max[0] - min[0]).max(max[1] - min[1]).max(1e-9);
        Ok(Frame { min: [min[0] - pad, min[1] - pad], max: [max[0] + pad, max[1] + pad] })
    }

    fn size(&self) -> f64 {
        (self.max[0] - self.min[0]).max(self.max[1] - self.min[1])
    }

    fn scale(&self) -> f64 {
        PIXELS / self.size()
    }

    /// Pixel coordinates, with y pointing up.
    fn map(&self, p: Pt) -> (String, String) {
        let s = self.scale();
        (fmt_num((p[0] - self.min[0]) * s), fmt_num((self.max[1] - p[1]) * s))
    }

    fn polygon(&self, pts: &[Pt]) -> String {
        pts.iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn line(&self, a: Pt, b: Pt) -> Line {
        let (x1, y1) = self.map(a);
        let (x2, y2) = self.map(b);
        Line::new().set("x1", x1).set("y1", y1).set("x2", x2).set("y2", y2)
    }
}

fn strip_lines(frame: &Frame, strip: &Value) -> Result<Vec<Line>> {
    let n = point(&strip["normal"])?;
    let reach = 4.0 * frame.size();
    let mut out = Vec::new();
    for key in ["lo", "hi"] {
        let Some(t) = strip[key].as_f64() else { bail!("strip without {key}") };
        let c = [n[0] * t, n[1] * t];
        let a = [c[0] - reach * n[1], c[1] + reach * n[0]];
        let b = [c[0] + reach * n[1], c[1] - reach * n[0]];
        out.push(frame.line(a, b));
    }
    Ok(out)
}

/// Draws the body outline, chords, polytope and strips found in a result
/// written by one of the constructions.
pub fn render_svg(value: &Value) -> Result<String> {
    let result = value.get("result").unwrap_or(value);
    let outline = points(&value["outline"])?;
    let ngon = points(&value["vertices"])?;
    let polytope = match (&result["polytope"], &result["triangle"]) {
        (p, _) if !p.is_null() => points(&p["vertices"])?,
        (_, t) => points(&t["vertices"])?,
    };
    let chords: Vec<(Pt, Pt)> = result["chords"]
        .as_array()
        .map_or(Ok(Vec::new()), |cs| cs.iter().map(|c| Ok((point(&c["a"])?, point(&c["b"])?))).collect::<Result<_>>())?;
    let strips = result["strips"].as_array().cloned().unwrap_or_default();
    let frame_chords: Vec<(Pt, Pt)> = match result.get("frame") {
        Some(f) => vec![(point(&f["a0"])?, point(&f["c0"])?), (point(&f["p"])?, point(&f["r"])?)],
        None => Vec::new(),
    };

    // n-gons live in the disk of width 1 around the origin
    let mut extent: Vec<Pt> = outline.iter().chain(&polytope).chain(&ngon).copied().collect();
    if !ngon.is_empty() {
        extent.extend([[0.5, 0.0], [-0.5, 0.0], [0.0, 0.5], [0.0, -0.5]]);
    }
    let frame = Frame::around(&extent)?;

    let mut doc = Document::new()
        .set("xmlns", "http://www.w3.org/2000/svg")
        .set("width", PIXELS)
        .set("height", PIXELS)
        .set("viewBox", format!("0 0 {PIXELS} {PIXELS}"))
        .add(Rectangle::new().set("width", "100%").set("height", "100%").set("fill", "white"));

    if !strips.is_empty() {
        let mut g = Group::new().set("stroke", "#3b6ea8").set("stroke-width", 1).set("stroke-dasharray", "6 4");
        for s in &strips {
            for l in strip_lines(&frame, s)? {
                g = g.add(l);
            }
        }
        doc = doc.add(g);
    }
    if !polytope.is_empty() {
        doc = doc.add(
            Polygon::new()
                .set("points", frame.polygon(&polytope))
                .set("fill", "#f2d7a6")
                .set("fill-opacity", 0.6)
                .set("stroke", "#b5651d")
                .set("stroke-width", 1.5),
        );
    }
    if !ngon.is_empty() {
        let (cx, cy) = frame.map([0.0, 0.0]);
        doc = doc
            .add(Circle::new().set("cx", cx).set("cy", cy).set("r", fmt_num(0.5 * frame.scale())).set("fill", "none").set("stroke", "black").set("stroke-width", 1.5))
            .add(Polygon::new().set("points", frame.polygon(&ngon)).set("fill", "#f2d7a6").set("stroke", "#b5651d").set("stroke-width", 1.5));
    }
    if !outline.is_empty() {
        doc = doc.add(Polygon::new().set("points", frame.polygon(&outline)).set("fill", "none").set("stroke", "black").set("stroke-width", 1.5));
    }
    if !chords.is_empty() || !frame_chords.is_empty() {
        let mut g = Group::new().set("stroke", "#555555").set("stroke-width", 1);
        for &(a, b) in chords.iter().chain(&frame_chords) {
            g = g.add(frame.line(a, b));
        }
        doc = doc.add(g);
    }
    Ok(format!("{doc}\n"))
}
