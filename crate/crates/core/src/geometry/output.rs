//! SVG and CSV writers for traced curves. Output is a pure function of its
//! inputs, so identical runs produce identical bytes.

use std::fmt::Write;

use super::branches::{BranchCurve, ConfocalPlot, CurveKind, Polyline, Window};

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Stroke color for a branch, keyed by the number of minus signs.
pub fn branch_color(popcount: u32) -> &'static str {
    PALETTE[popcount as usize % PALETTE.len()]
}

fn header(out: &mut String, w: &Window) {
    let width = w.xmax - w.xmin;
    let height = w.ymax - w.ymin;
    // y is flipped: SVG coordinates are (x, −y).
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="800" height="{:.0}">"#,
        w.xmin,
        -w.ymax,
        width,
        height,
        800.0 * height / width
    );
}

fn path_data(lines: &[Polyline]) -> String {
    let mut d = String::new();
    for line in lines {
        for (i, p) in line.points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd}{:.6} {:.6} ", p.location[0], -p.location[1]);
        }
        if line.closed {
            d.push_str("Z ");
        }
    }
    d.trim_end().to_string()
}

fn foci_markers(out: &mut String, foci: &[[f64; 2]], r: f64) {
    out.push_str("<g fill=\"black\">\n");
    for f in foci {
        let _ = writeln!(out, r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}"/>"#, f[0], -f[1], r);
    }
    out.push_str("</g>\n");
}

/// One `<path>` per non-empty branch.
pub fn branches_svg(curves: &[BranchCurve], window: &Window, foci: &[[f64; 2]]) -> String {
    let mut out = String::new();
    header(&mut out, window);
    let stroke = 0.003 * (window.xmax - window.xmin);
    let _ = writeln!(out, r#"<g fill="none" stroke-width="{stroke:.6}">"#);
    for c in curves.iter().filter(|c| !c.is_empty()) {
        let _ = writeln!(
            out,
            r#"<path data-sigma="{}" stroke="{}" d="{}"/>"#,
            c.sigma,
            branch_color(c.sigma.popcount()),
            path_data(&c.polylines)
        );
    }
    out.push_str("</g>\n");
    foci_markers(&mut out, foci, 2.0 * stroke);
    out.push_str("</svg>\n");
    out
}

pub fn confocal_svg(plot: &ConfocalPlot, foci: &[[f64; 2]]) -> String {
    let mut out = String::new();
    let w = &plot.window;
    header(&mut out, w);
    let stroke = 0.003 * (w.xmax - w.xmin);
    let _ = writeln!(out, r#"<g fill="none" stroke-width="{stroke:.6}">"#);
    for (i, c) in plot.curves.iter().enumerate() {
        match &c.kind {
            CurveKind::Curve(lines) => {
                let _ = writeln!(
                    out,
                    r#"<path data-radius="{}" stroke="{}" d="{}"/>"#,
                    c.radius,
                    PALETTE[i % PALETTE.len()],
                    path_data(lines)
                );
            }
            CurveKind::Point(p) => {
                let _ = writeln!(
                    out,
                    r#"<circle data-radius="{}" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="{}"/>"#,
                    c.radius,
                    p[0],
                    -p[1],
                    1.5 * stroke,
                    PALETTE[i % PALETTE.len()]
                );
            }
            CurveKind::Empty => {}
        }
    }
    out.push_str("</g>\n");
    foci_markers(&mut out, foci, 2.0 * stroke);
    out.push_str("</svg>\n");
    out
}

/// `x,y,branch,residual` with the branch as a σ bit string.
pub fn branches_csv(curves: &[BranchCurve]) -> String {
    let mut out = String::from("x,y,branch,residual\n");
    for c in curves {
        for p in c.points() {
            let _ = writeln!(out, "{},{},{},{:e}", p.location[0], p.location[1], p.branch, p.residual);
        }
    }
    out
}
