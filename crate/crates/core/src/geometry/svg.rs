//! Deterministic SVG output. Coordinates are printed with fixed precision so
//! equal inputs always give byte-identical text.

use std::fmt::Write;

use thiserror::Error;

use super::config::{Color, Configuration, DiscLabel};
use super::scalar::scalar_to_f64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SvgError {
    #[error("cannot render dimension {0}; only 1 and 2 are supported")]
    UnsupportedDimension(usize),
}

const SIZE: f64 = 400.0;
const SCALE: f64 = 180.0;

pub(crate) fn fmt_num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// Minimal SVG document builder shared by configuration and tree rendering.
pub(crate) struct SvgDoc {
    width: f64,
    height: f64,
    body: String,
}

impl SvgDoc {
    pub(crate) fn new(width: f64, height: f64) -> Self {
        SvgDoc { width, height, body: String::new() }
    }

    pub(crate) fn raw(&mut self, element: &str) {
        self.body.push_str("  ");
        self.body.push_str(element);
        self.body.push('\n');
    }

    pub(crate) fn circle(&mut self, cx: f64, cy: f64, r: f64, class: &str) {
        self.raw(&format!(
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}"/>"#,
            fmt_num(cx),
            fmt_num(cy),
            fmt_num(r)
        ));
    }

    pub(crate) fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, class: &str) {
        self.raw(&format!(
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            fmt_num(x1),
            fmt_num(y1),
            fmt_num(x2),
            fmt_num(y2)
        ));
    }

    pub(crate) fn text(&mut self, x: f64, y: f64, content: &str) {
        let escaped = content.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;");
        self.raw(&format!(
            r#"<text x="{}" y="{}" text-anchor="middle">{escaped}</text>"#,
            fmt_num(x),
            fmt_num(y)
        ));
    }

    pub(crate) fn finish(self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = fmt_num(self.width),
            h = fmt_num(self.height)
        );
        out.push_str(
            "  <style>.outer{fill:none;stroke:#222;stroke-width:2}.full{fill:#cfe3f7;stroke:#1f5f9f}\
.half{fill:#f7dccf;stroke:#9f3f1f}.edge{stroke:#444}text{font:12px sans-serif}</style>\n",
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn px(x: f64) -> f64 {
    SIZE / 2.0 + SCALE * x
}

fn py(y: f64) -> f64 {
    SIZE / 2.0 - SCALE * y
}

fn half_disc_path(cx: f64, r: f64, class: &str) -> String {
    // upper half of a circle centered on the baseline
    format!(
        r#"<path class="{class}" d="M {} {} A {} {} 0 0 1 {} {} Z"/>"#,
        fmt_num(px(cx - r)),
        fmt_num(py(0.0)),
        fmt_num(SCALE * r),
        fmt_num(SCALE * r),
        fmt_num(px(cx + r)),
        fmt_num(py(0.0))
    )
}

/// Renders a 1- or 2-dimensional configuration with labelled discs.
pub fn render_config_svg(cfg: &Configuration) -> Result<String, SvgError> {
    let mut doc = SvgDoc::new(SIZE, SIZE);
    let n = cfg.n_full();
    let label = |i: usize| {
        if i < n {
            DiscLabel { color: Color::Full, index: i }
        } else {
            DiscLabel { color: Color::Half, index: i - n }
        }
    };
    match cfg.d {
        2 => {
            match cfg.target {
                Color::Full => doc.circle(px(0.0), py(0.0), SCALE, "outer"),
                Color::Half => doc.raw(&half_disc_path(0.0, 1.0, "outer")),
            }
            for (i, disc) in cfg.discs.iter().enumerate() {
                let r = scalar_to_f64(&disc.r);
                let x = disc.c.first().map(scalar_to_f64).unwrap_or(0.0);
                match disc.color {
                    Color::Full => {
                        let y = disc.c.get(1).map(scalar_to_f64).unwrap_or(0.0);
                        doc.circle(px(x), py(y), SCALE * r, "full");
                        doc.text(px(x), py(y) + 4.0, &label(i).to_string());
                    }
                    Color::Half => {
                        doc.raw(&half_disc_path(x, r, "half"));
                        doc.text(px(x), py(r / 2.0) + 4.0, &label(i).to_string());
                    }
                }
            }
        }
        1 => {
            let (lo, hi) = match cfg.target {
                Color::Full => (-1.0, 1.0),
                Color::Half => (0.0, 1.0),
            };
            doc.line(px(lo), py(0.0), px(hi), py(0.0), "outer");
            for (i, disc) in cfg.discs.iter().enumerate() {
                let r = scalar_to_f64(&disc.r);
                let x = disc.c.first().map(scalar_to_f64).unwrap_or(0.0);
                let class = if disc.color == Color::Full { "full" } else { "half" };
                doc.raw(&format!(
                    r#"<rect class="{class}" x="{}" y="{}" width="{}" height="12"/>"#,
                    fmt_num(px(x - r)),
                    fmt_num(py(0.0) - 6.0),
                    fmt_num(2.0 * SCALE * r)
                ));
                doc.text(px(x), py(0.0) - 12.0, &label(i).to_string());
            }
        }
        d => return Err(SvgError::UnsupportedDimension(d)),
    }
    Ok(doc.finish())
}
