//! Static SVG plot of the conn_H distribution against ν.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::Value;

use crate::checks::Record;

/// Where a record's conn window lands on the plot. `None` for records
/// without a window (3-graphs, or checks that do not compute one).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Point {
    Exact(i64),
    AtLeast(i64),
    Infinite,
}

pub fn point(r: &Record) -> Option<Point> {
    let w = r.conn.as_ref()?;
    if let Some(v) = w.get("exact") {
        return Some(match v {
            Value::Number(n) => Point::Exact(n.as_i64()?),
            _ => Point::Infinite,
        });
    }
    w.get("atLeast").and_then(Value::as_i64).map(Point::AtLeast)
}

/// Counts per `(ν, point)`.
pub fn tally(records: &[Record]) -> BTreeMap<(usize, Point), usize> {
    let mut t = BTreeMap::new();
    for r in records {
        if let Some(p) = point(r) {
            *t.entry((r.nu, p)).or_default() += 1;
        }
    }
    t
}

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

/// Bubble chart: x is ν, y is conn_H (∞ on a separate top row), bubble
/// area proportional to the count. Hollow bubbles are lower bounds. The
/// dashed line is `ν/2 - 2`.
pub fn render_svg(records: &[Record], title: &str) -> String {
    let t = tally(records);
    let max_nu = t.keys().map(|k| k.0).max().unwrap_or(2).max(2);
    let finite = |p: &Point| match p {
        Point::Exact(v) | Point::AtLeast(v) => Some(*v),
        Point::Infinite => None,
    };
    let lo = t.keys().filter_map(|k| finite(&k.1)).min().unwrap_or(-2).min(-2);
    let hi = t.keys().filter_map(|k| finite(&k.1)).max().unwrap_or(0).max(max_nu as i64 / 2 - 2).max(lo + 1);
    // one extra row for ∞
    let rows = (hi - lo + 2) as f64;
    let x = |nu: f64| LEFT + (nu + 0.5) / (max_nu as f64 + 1.0) * (W - LEFT - RIGHT);
    let y = |v: f64| H - BOTTOM - (v - lo as f64 + 0.5) / rows * (H - TOP - BOTTOM);
    let y_inf = y((hi + 1) as f64);
    let most = t.values().copied().max().unwrap_or(1) as f64;
    let cell = ((W - LEFT - RIGHT) / (max_nu as f64 + 1.0)).min((H - TOP - BOTTOM) / rows);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(title));
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{0}" stroke="black"/>"#,
        H - BOTTOM,
        W - RIGHT
    );
    for nu in 0..=max_nu {
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{nu}</text>"#, x(nu as f64), H - BOTTOM + 18.0);
    }
    for v in lo..=hi {
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{v}</text>"#, LEFT - 8.0, y(v as f64) + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">inf</text>"#, LEFT - 8.0, y_inf + 4.0);
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">matching number</text>"#, (LEFT + W - RIGHT) / 2.0, H - 18.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{0:.1}" text-anchor="middle" transform="rotate(-90 18 {0:.1})">conn_H of the independence complex</text>"#,
        (TOP + H - BOTTOM) / 2.0
    );
    let _ = writeln!(
        s,
        r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="gray" stroke-dasharray="5,4"/>"#,
        x(0.0),
        y(-2.0),
        x(max_nu as f64),
        y(max_nu as f64 / 2.0 - 2.0)
    );
    for (&(nu, p), &n) in &t {
        let cy = match p {
            Point::Exact(v) | Point::AtLeast(v) => y(v as f64),
            Point::Infinite => y_inf,
        };
        let r = 0.45 * cell * (n as f64 / most).sqrt();
        let r = r.max(2.0);
        let style = match p {
            Point::AtLeast(_) => r#"fill="none" stroke="steelblue" stroke-width="2""#,
            _ => r#"fill="steelblue" fill-opacity="0.7""#,
        };
        let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{cy:.1}" r="{r:.1}" {style}><title>{n}</title></circle>"#, x(nu as f64));
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="10">{n}</text>"#, x(nu as f64) + r + 2.0, cy + 3.0);
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn rec(nu: usize, conn: Value) -> Record {
        Record { nu, conn: Some(conn), ..Record::default() }
    }

    #[test]
    fn tallies_and_renders() {
        let rs = vec![rec(2, json!({"exact": -1})), rec(2, json!({"exact": -1})), rec(3, json!({"exact": "inf"})), rec(4, json!({"atLeast": 1}))];
        let t = tally(&rs);
        assert_eq!(t[&(2, Point::Exact(-1))], 2);
        assert_eq!(t[&(3, Point::Infinite)], 1);
        let svg = render_svg(&rs, "a < b");
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains("a &lt; b"));
        assert_eq!(svg, render_svg(&rs, "a < b"));
    }
}
