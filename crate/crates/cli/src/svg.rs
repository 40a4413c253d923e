//! SVG drawings of a graph and, optionally, a planarization of it.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use cpgraph::{Edge, GeoGraph};

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 60.0;

/// Exact integer coordinates mapped affinely into a 1000x1000 viewBox with
/// the y axis pointing up. With `kept`, those edges are drawn solid and the
/// rest dashed; without it every edge is solid.
pub fn render(g: &GeoGraph, kept: Option<&BTreeSet<Edge>>) -> String {
    let xs = g.vertices().iter().map(|v| v.pos.x);
    let ys = g.vertices().iter().map(|v| v.pos.y);
    let (x0, x1) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
    let (y0, y1) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
    let span = ((x1 - x0).max(y1 - y0)).max(1) as f64;
    let scale = (SIZE - 2.0 * MARGIN) / span;
    // center the shorter side
    let ox = MARGIN + ((SIZE - 2.0 * MARGIN) - (x1 - x0) as f64 * scale) / 2.0;
    let oy = MARGIN + ((SIZE - 2.0 * MARGIN) - (y1 - y0) as f64 * scale) / 2.0;
    let at = |v| {
        let p = g.pos(v);
        (ox + (p.x - x0) as f64 * scale, SIZE - oy - (p.y - y0) as f64 * scale)
    };

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(s, r#"<g stroke-linecap="round">"#).unwrap();
    for e in g.edges() {
        let ((ax, ay), (bx, by)) = (at(e.0), at(e.1));
        let solid = kept.is_none_or(|k| k.contains(e));
        let style = if solid {
            r##"stroke="#000" stroke-width="2.5""##
        } else {
            r##"stroke="#777" stroke-width="1.5" stroke-dasharray="8 6""##
        };
        writeln!(
            s,
            r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" {style}><title>{}-{}</title></line>"#,
            escape(&g.name(e.0)),
            escape(&g.name(e.1))
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r#"<g font-family="sans-serif" font-size="20">"#).unwrap();
    for v in g.vertex_ids() {
        let (x, y) = at(v);
        let name = escape(&g.name(v));
        writeln!(s, r##"<circle cx="{x:.2}" cy="{y:.2}" r="6" fill="#000"/>"##).unwrap();
        writeln!(s, r#"<text x="{:.2}" y="{:.2}">{name}</text>"#, x + 9.0, y - 9.0).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use cpgraph::Point;

    fn square() -> GeoGraph {
        let pts = [(0, 0), (10, 0), (10, 10), (0, 10)];
        GeoGraph::new(pts.iter().enumerate().map(|(i, &(x, y))| (i as u32, Point::new(x, y))), [(0, 2), (1, 3), (0, 1)])
            .unwrap()
    }

    #[test]
    fn solid_and_dashed() {
        let g = square();
        let kept: BTreeSet<Edge> = [Edge::new(0, 2), Edge::new(0, 1)].into();
        let s = render(&g, Some(&kept));
        assert_eq!(s.matches("stroke-dasharray").count(), 1);
        assert_eq!(s.matches("<line").count(), 3);
        assert_eq!(s.matches("<circle").count(), 4);
        assert!(s.contains(r#"viewBox="0 0 1000 1000""#));
        assert!(!render(&g, None).contains("dasharray"));
    }

    #[test]
    fn corners_map_inside_the_box() {
        let s = render(&square(), None);
        // (0,0) lands bottom-left, (10,10) top-right
        assert!(s.contains(r#"cx="60.00" cy="940.00""#));
        assert!(s.contains(r#"cx="940.00" cy="60.00""#));
    }

    #[test]
    fn empty_and_single() {
        let g = GeoGraph::new(Vec::<(u32, Point)>::new(), Vec::<(u32, u32)>::new()).unwrap();
        assert!(render(&g, None).ends_with("</svg>\n"));
        // a lone vertex sits in the middle
        let g = GeoGraph::new([(0, Point::new(5, 5))], Vec::<(u32, u32)>::new()).unwrap();
        assert!(render(&g, None).contains(r#"cx="500.00" cy="500.00""#));
    }
}
