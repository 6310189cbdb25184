//! SVG rendering of an unfolded surface.

use std::fmt::Write;

use crate::plane::Point;
use crate::tiling::{side_corners, Tiling};
use crate::unfold::UnfoldedSurface;

#[derive(Debug, Clone, Default)]
pub struct SvgOptions {
    /// Segments drawn on top of the triangulation with a heavier stroke.
    pub overlay: Vec<(Point, Point)>,
    /// Print copy labels at centroids.
    pub labels: bool,
}

const EDGE_WIDTH: f64 = 0.004;
const OVERLAY_WIDTH: f64 = 0.016;

fn fmt12(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{:.*e}", 11, x);
    let v: f64 = s.parse().unwrap_or(x);
    let mut out = format!("{v}");
    if out == "-0" {
        out = "0".into();
    }
    out
}

fn pair_color(k: usize) -> String {
    // golden-angle hue spacing
    let hue = (k as f64 * 137.507_764_05) % 360.0;
    format!("hsl({:.1},70%,42%)", hue)
}

/// Deterministic SVG document: one polygon per triangle copy, each glued
/// side pair drawn in a shared color, then the overlay.
pub fn to_svg(surface: &UnfoldedSurface, options: &SvgOptions) -> String {
    let n = surface.tile_count();
    let pts: Vec<[(f64, f64); 3]> = (0..n)
        .map(|t| [1, 2, 3].map(|i| flip(surface.corner(t, i).to_f64())))
        .collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in pts.iter().flatten() {
        x0 = x0.min(p.0);
        y0 = y0.min(p.1);
        x1 = x1.max(p.0);
        y1 = y1.max(p.1);
    }
    let pad = 0.1;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        fmt12(x0 - pad),
        fmt12(y0 - pad),
        fmt12(x1 - x0 + 2.0 * pad),
        fmt12(y1 - y0 + 2.0 * pad)
    );
    let _ = writeln!(
        s,
        "<title>unfolding of {} ({} copies)</title>",
        surface.signature, n
    );
    let _ = writeln!(s, r##"<g id="copies" fill="#f4f1ea" stroke="none">"##);
    for (t, tri) in pts.iter().enumerate() {
        let c = &surface.copies[t];
        let _ = writeln!(
            s,
            r#"<polygon data-copy="{}" data-rotation="{}" data-reflected="{}" points="{}"/>"#,
            t,
            c.label.rotation,
            c.label.reflected,
            tri.iter()
                .map(|p| format!("{},{}", fmt12(p.0), fmt12(p.1)))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<g id="edges" stroke-width="{}" stroke-linecap="round">"#,
        fmt12(EDGE_WIDTH)
    );
    let mut pair = vec![[usize::MAX; 3]; n];
    let mut next = 0;
    for t in 0..n {
        for side in 1..=3 {
            if pair[t][side - 1] != usize::MAX {
                continue;
            }
            let (pt, ps) = surface.partner(t, side);
            pair[t][side - 1] = next;
            pair[pt][ps - 1] = next;
            next += 1;
        }
    }
    for t in 0..n {
        for side in 1..=3 {
            let (a, b) = side_corners(side);
            let (p, q) = (pts[t][a - 1], pts[t][b - 1]);
            let _ = writeln!(
                s,
                r#"<line data-pair="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}"/>"#,
                pair[t][side - 1],
                fmt12(p.0),
                fmt12(p.1),
                fmt12(q.0),
                fmt12(q.1),
                pair_color(pair[t][side - 1])
            );
        }
    }
    let _ = writeln!(s, "</g>");
    if !options.overlay.is_empty() {
        let _ = writeln!(
            s,
            r##"<g id="geodesics" stroke="#111111" stroke-width="{}" stroke-linecap="round">"##,
            fmt12(OVERLAY_WIDTH)
        );
        for (a, b) in &options.overlay {
            let (p, q) = (flip(a.to_f64()), flip(b.to_f64()));
            let _ = writeln!(
                s,
                r#"<line class="geodesic" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                fmt12(p.0),
                fmt12(p.1),
                fmt12(q.0),
                fmt12(q.1)
            );
        }
        let _ = writeln!(s, "</g>");
    }
    if options.labels {
        let _ = writeln!(
            s,
            r##"<g id="labels" font-size="0.06" text-anchor="middle" fill="#444444">"##
        );
        for (t, tri) in pts.iter().enumerate() {
            let cx = (tri[0].0 + tri[1].0 + tri[2].0) / 3.0;
            let cy = (tri[0].1 + tri[1].1 + tri[2].1) / 3.0;
            let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, fmt12(cx), fmt12(cy), t);
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

/// SVG's y axis points down.
fn flip(p: (f64, f64)) -> (f64, f64) {
    (p.0, -p.1)
}
