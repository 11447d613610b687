use super::{BasinImage, RenderConfig};
use crate::curve::JordanCurve;
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Curves drawn in the colour of one lift depth (0 is the source curve).
#[derive(Clone, Debug)]
pub struct CurveLayer {
    pub depth: u32,
    pub curves: Vec<JordanCurve>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerMetadata {
    pub depth: u32,
    pub colour: String,
    pub components: usize,
    pub samples: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FigureMetadata {
    pub stem: String,
    pub render: RenderConfig,
    pub layers: Vec<LayerMetadata>,
    pub resolved_fraction: Option<f64>,
    /// Caller-supplied facts such as the side partition of the source curve.
    pub extra: serde_json::Value,
}

#[derive(Clone, Debug)]
pub struct FigureOutput {
    pub svg: PathBuf,
    pub png: PathBuf,
    pub json: PathBuf,
    pub metadata: FigureMetadata,
}

fn hex(c: [u8; 3]) -> String {
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

/// Pixel polylines of a curve, broken where it leaves the neighbourhood of
/// the window or jumps (passing near ∞).
fn polylines(cfg: &RenderConfig, curve: &JordanCurve) -> Vec<Vec<(f64, f64)>> {
    let n = cfg.resolution as f64;
    let pts: Vec<Option<(f64, f64)>> = curve
        .samples()
        .iter()
        .map(|p| p.affine().map(|z| cfg.to_pixel(z)).filter(|&(x, y)| x.abs() < 10.0 * n && y.abs() < 10.0 * n))
        .collect();
    let mut out: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut cur: Vec<(f64, f64)> = Vec::new();
    let jump = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).hypot(a.1 - b.1) > n / 2.0;
    for p in &pts {
        match p {
            Some(q) if cur.last().map_or(true, |&l| !jump(l, *q)) => cur.push(*q),
            Some(q) => {
                out.push(std::mem::take(&mut cur));
                cur.push(*q);
            }
            None => out.push(std::mem::take(&mut cur)),
        }
    }
    // Close up through the first sample, joining the wrap-around run.
    match (pts.first().copied().flatten(), cur.last().copied()) {
        (Some(f), Some(l)) if !jump(l, f) => {
            if out.is_empty() {
                cur.push(f);
            } else {
                let head = out.remove(0);
                cur.extend(head);
            }
            out.push(cur);
        }
        _ => out.push(cur),
    }
    out.retain(|l| l.len() >= 2);
    out
}

fn svg(cfg: &RenderConfig, layers: &[CurveLayer]) -> String {
    let n = cfg.resolution;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{n}" height="{n}" viewBox="0 0 {n} {n}">"#);
    let _ = writeln!(s, r#"<rect width="{n}" height="{n}" fill="white"/>"#);
    for layer in layers {
        let colour = cfg.depth_colours[(layer.depth as usize).min(cfg.depth_colours.len() - 1)];
        let _ = writeln!(s, r#"<g id="depth-{}" stroke="{}" fill="none" stroke-width="1.2">"#, layer.depth, hex(colour));
        for curve in &layer.curves {
            for line in polylines(cfg, curve) {
                let mut d = String::new();
                for (i, (x, y)) in line.iter().enumerate() {
                    let _ = write!(d, "{}{:.2} {:.2}", if i == 0 { "M" } else { " L" }, x, y);
                }
                let _ = writeln!(s, r#"<path d="{d}"/>"#);
            }
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

fn raster(cfg: &RenderConfig, image: Option<&BasinImage>, layers: &[CurveLayer]) -> image::RgbImage {
    let n = cfg.resolution as u32;
    let mut img = match image {
        Some(b) => b.rgb(),
        None => image::RgbImage::from_pixel(n, n, image::Rgb([255, 255, 255])),
    };
    for layer in layers {
        let colour = image::Rgb(cfg.depth_colours[(layer.depth as usize).min(cfg.depth_colours.len() - 1)]);
        for curve in &layer.curves {
            for line in polylines(cfg, curve) {
                for w in line.windows(2) {
                    let (a, b) = ((w[0].0 as f32, w[0].1 as f32), (w[1].0 as f32, w[1].1 as f32));
                    imageproc::drawing::draw_line_segment_mut(&mut img, a, b, colour);
                }
            }
        }
    }
    img
}

/// Writes `<stem>.svg` (curve layers), `<stem>.png` (basins with curves)
/// and `<stem>.json` (metadata) into `dir`.
pub fn overlay_figure(
    image: Option<&BasinImage>,
    cfg: &RenderConfig,
    layers: &[CurveLayer],
    dir: &Path,
    stem: &str,
    extra: serde_json::Value,
) -> Result<FigureOutput> {
    cfg.validate()?;
    std::fs::create_dir_all(dir)?;
    let metadata = FigureMetadata {
        stem: stem.to_string(),
        render: cfg.clone(),
        layers: layers
            .iter()
            .map(|l| LayerMetadata {
                depth: l.depth,
                colour: hex(cfg.depth_colours[(l.depth as usize).min(cfg.depth_colours.len() - 1)]),
                components: l.curves.len(),
                samples: l.curves.iter().map(JordanCurve::len).sum(),
            })
            .collect(),
        resolved_fraction: image.map(BasinImage::resolved_fraction),
        extra,
    };
    let out = FigureOutput {
        svg: dir.join(format!("{stem}.svg")),
        png: dir.join(format!("{stem}.png")),
        json: dir.join(format!("{stem}.json")),
        metadata,
    };
    std::fs::write(&out.svg, svg(cfg, layers))?;
    raster(cfg, image, layers).save(&out.png).map_err(|e| crate::Error::Invalid(format!("png: {e}")))?;
    std::fs::write(&out.json, serde_json::to_string_pretty(&out.metadata)?)?;
    Ok(out)
}
