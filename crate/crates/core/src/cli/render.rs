//! Segment diagrams: one horizontal segment per element, the common point
//! `∇` at x = 0, rows ordered from the top of the left chain down.

use std::fmt::Write as _;

use crate::representation::SegmentRepresentation;
use crate::set::GroundSet;

/// SVG row height in pixels.
pub const ROW_HEIGHT: i64 = 40;
const UNIT: i64 = 30;
const LABEL_WIDTH: i64 = 60;

fn rows(rep: &SegmentRepresentation) -> Vec<(usize, i64, i64)> {
    let layout = rep.layout();
    rep.left()
        .sequence()
        .iter()
        .rev()
        .map(|&e| (e, layout.intervals[e].0, layout.intervals[e].1))
        .collect()
}

/// Text diagram, two columns per unit.
pub fn render_ascii(rep: &SegmentRepresentation, ground: &GroundSet) -> String {
    let n = rep.len() as i64;
    let width = ground
        .names()
        .iter()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(0);
    let column = |x: i64| ((x + n) * 2) as usize;
    let mut out = String::new();
    let mut header = vec![' '; column(n) + 1];
    header[column(0)] = '∇';
    let _ = writeln!(
        out,
        "{:width$} {}",
        "",
        header.iter().collect::<String>().trim_end()
    );
    for (e, a, b) in rows(rep) {
        let mut line = vec![' '; column(n) + 1];
        for cell in line.iter_mut().take(column(b)).skip(column(a)) {
            *cell = '-';
        }
        line[column(a)] = '|';
        line[column(b)] = '|';
        line[column(0)] = '+';
        let _ = writeln!(
            out,
            "{:width$} {}",
            ground.name(e),
            line.iter().collect::<String>().trim_end()
        );
    }
    out
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// SVG 1.1 document with a dashed vertical line through the common point.
pub fn render_svg(rep: &SegmentRepresentation, ground: &GroundSet) -> String {
    let n = rep.len() as i64;
    let x = |v: i64| LABEL_WIDTH + (v + n + 1) * UNIT;
    let width = x(n + 1);
    let height = (n + 1) * ROW_HEIGHT;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{0}" y1="0" x2="{0}" y2="{height}" stroke="gray" stroke-dasharray="4 4"/>"#,
        x(0)
    );
    let _ = writeln!(
        out,
        r#"  <text x="{}" y="{}" text-anchor="middle" font-family="monospace" font-size="16">∇</text>"#,
        x(0),
        ROW_HEIGHT / 2
    );
    for (row, (e, a, b)) in rows(rep).into_iter().enumerate() {
        let y = (row as i64 + 1) * ROW_HEIGHT + ROW_HEIGHT / 2;
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-family="monospace" font-size="14">{}</text>"#,
            8,
            y + 5,
            escape(ground.name(e))
        );
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="black" stroke-width="3"/>"#,
            x(a),
            x(b)
        );
    }
    out.push_str("</svg>\n");
    out
}
