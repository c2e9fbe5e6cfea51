//! SVG 1.1 figures of solved configurations.
//!
//! Geometry is drawn in mathematical (y-up) coordinates under a single
//! `scale(1,-1)` group; labels are flipped back locally so they read upright.

use std::fmt::Write;

use crate::geometry::{Point2, RegularPolygon};
use crate::pompeiu::TriangleConstruction;
use crate::reconstruction::DualPolygonPair;
use crate::two_points::TwoPointsSolution;

#[derive(Debug, Clone, PartialEq)]
enum Element {
    Polygon { points: Vec<Point2>, class: &'static str },
    Polyline { points: Vec<Point2>, class: &'static str },
    Circle { center: Point2, radius: f64, class: &'static str },
    Segment { from: Point2, to: Point2 },
    Marker { at: Point2 },
    Label { at: Point2, text: String },
}

/// An ordered list of drawing elements. Output follows insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Figure {
    title: String,
    elements: Vec<Element>,
}

/// Element counts of a figure, by kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ElementCounts {
    pub polygons: usize,
    pub circles: usize,
    pub markers: usize,
    pub segments: usize,
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn points_attr(points: &[Point2]) -> String {
    points
        .iter()
        .map(|p| format!("{},{}", num(p.x), num(p.y)))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Figure {
    pub fn new(title: impl Into<String>) -> Self {
        Figure {
            title: title.into(),
            elements: Vec::new(),
        }
    }

    pub fn polygon(&mut self, points: Vec<Point2>, class: &'static str) -> &mut Self {
        self.elements.push(Element::Polygon { points, class });
        self
    }

    pub fn polyline(&mut self, points: Vec<Point2>, class: &'static str) -> &mut Self {
        self.elements.push(Element::Polyline { points, class });
        self
    }

    pub fn circle(&mut self, center: Point2, radius: f64, class: &'static str) -> &mut Self {
        self.elements.push(Element::Circle { center, radius, class });
        self
    }

    pub fn segment(&mut self, from: Point2, to: Point2) -> &mut Self {
        self.elements.push(Element::Segment { from, to });
        self
    }

    pub fn marker(&mut self, at: Point2) -> &mut Self {
        self.elements.push(Element::Marker { at });
        self
    }

    pub fn label(&mut self, at: Point2, text: impl Into<String>) -> &mut Self {
        self.elements.push(Element::Label { at, text: text.into() });
        self
    }

    /// Labels every vertex as `{prefix}1..{prefix}n`.
    pub fn vertex_labels(&mut self, points: &[Point2], prefix: &str) -> &mut Self {
        for (i, p) in points.iter().enumerate() {
            self.label(*p, format!("{prefix}{}", i + 1));
        }
        self
    }

    pub fn counts(&self) -> ElementCounts {
        let mut c = ElementCounts::default();
        for e in &self.elements {
            match e {
                Element::Polygon { .. } => c.polygons += 1,
                Element::Circle { .. } => c.circles += 1,
                Element::Marker { .. } => c.markers += 1,
                Element::Segment { .. } => c.segments += 1,
                Element::Polyline { .. } | Element::Label { .. } => {}
            }
        }
        c
    }

    /// `(min_x, min_y, max_x, max_y)` over all geometry.
    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut add = |p: Point2, pad: f64| {
            b.0 = b.0.min(p.x - pad);
            b.1 = b.1.min(p.y - pad);
            b.2 = b.2.max(p.x + pad);
            b.3 = b.3.max(p.y + pad);
        };
        for e in &self.elements {
            match e {
                Element::Polygon { points, .. } | Element::Polyline { points, .. } => {
                    points.iter().for_each(|p| add(*p, 0.0))
                }
                Element::Circle { center, radius, .. } => add(*center, *radius),
                Element::Segment { from, to } => {
                    add(*from, 0.0);
                    add(*to, 0.0);
                }
                Element::Marker { at } | Element::Label { at, .. } => add(*at, 0.0),
            }
        }
        if !b.0.is_finite() {
            return (-1.0, -1.0, 1.0, 1.0);
        }
        b
    }

    pub fn to_svg(&self) -> String {
        let (x0, y0, x1, y1) = self.bounds();
        let size = (x1 - x0).max(y1 - y0);
        let size = if size > 0.0 { size } else { 1.0 };
        let margin = 0.1 * size;
        let (vx, vy) = (x0 - margin, -(y1 + margin));
        let (vw, vh) = ((x1 - x0) + 2.0 * margin, (y1 - y0) + 2.0 * margin);
        let stroke = size * 0.003;
        let font = size * 0.03;
        let mark = size * 0.012;

        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
            num(vx),
            num(vy),
            num(vw),
            num(vh)
        );
        let _ = writeln!(out, "<title>{}</title>", escape(&self.title));
        let _ = writeln!(
            out,
            r#"<g transform="scale(1,-1)" fill="none" stroke="black" stroke-width="{}" font-size="{}">"#,
            num(stroke),
            num(font)
        );
        for e in &self.elements {
            match e {
                Element::Polygon { points, class } => {
                    let _ = writeln!(out, r#"<polygon class="{class}" points="{}"/>"#, points_attr(points));
                }
                Element::Polyline { points, class } => {
                    let _ = writeln!(
                        out,
                        r#"<polyline class="{class}" stroke-dasharray="{} {}" points="{}"/>"#,
                        num(4.0 * stroke),
                        num(3.0 * stroke),
                        points_attr(points)
                    );
                }
                Element::Circle { center, radius, class } => {
                    let _ = writeln!(
                        out,
                        r#"<circle class="{class}" cx="{}" cy="{}" r="{}" stroke="gray"/>"#,
                        num(center.x),
                        num(center.y),
                        num(*radius)
                    );
                }
                Element::Segment { from, to } => {
                    let _ = writeln!(
                        out,
                        r#"<line class="distance" x1="{}" y1="{}" x2="{}" y2="{}" stroke="steelblue"/>"#,
                        num(from.x),
                        num(from.y),
                        num(to.x),
                        num(to.y)
                    );
                }
                Element::Marker { at } => {
                    let _ = writeln!(
                        out,
                        r#"<path class="marker" stroke="crimson" d="M {} {} L {} {} M {} {} L {} {}"/>"#,
                        num(at.x - mark),
                        num(at.y),
                        num(at.x + mark),
                        num(at.y),
                        num(at.x),
                        num(at.y - mark),
                        num(at.x),
                        num(at.y + mark)
                    );
                }
                Element::Label { at, text } => {
                    let _ = writeln!(
                        out,
                        r#"<text class="label" transform="translate({},{}) scale(1,-1)" fill="black" stroke="none">{}</text>"#,
                        num(at.x + 0.5 * mark),
                        num(at.y + 0.5 * mark),
                        escape(text)
                    );
                }
            }
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn add_polygon(fig: &mut Figure, p: &RegularPolygon, class: &'static str, prefix: &str) {
    let v = p.vertices();
    fig.polygon(v.clone(), class).vertex_labels(&v, prefix);
}

/// The dual construction: original polygon, the circle of radius `R` about
/// `M` carrying the new center, the new circumcircle, the auxiliary circle
/// through the anchor vertex, and the dual polygon `B` (plus its mirror `C`
/// when `with_mirror`).
pub fn dual_scene(pair: &DualPolygonPair, with_mirror: bool) -> Figure {
    let m = pair.point;
    let mut fig = Figure::new("Dual regular polygons with equal vertex distances");
    add_polygon(&mut fig, &pair.primary, "primary", "A");
    add_polygon(&mut fig, &pair.b_polygon, "dual", "B");
    if with_mirror {
        add_polygon(&mut fig, &pair.c_polygon, "mirror", "C");
    }
    fig.circle(m, pair.primary.circumradius, "center-locus")
        .circle(pair.b_polygon.center, pair.b_polygon.circumradius, "dual-circumcircle")
        .circle(m, pair.anchor_distance, "auxiliary");
    for v in pair.primary.vertices().into_iter().chain(pair.b_polygon.vertices()) {
        fig.segment(m, v);
    }
    fig.marker(m)
        .label(m, "M")
        .label(pair.primary.center, "O1")
        .label(pair.b_polygon.center, "O2");
    fig
}

/// Two polygons sharing a vertex, the two circles whose intersections are
/// the equal-distance points, and those points.
pub fn two_points_scene(pa: &RegularPolygon, pb: &RegularPolygon, sol: &TwoPointsSolution) -> Figure {
    let mut fig = Figure::new("Two regular polygons and two points");
    add_polygon(&mut fig, pa, "primary", "A");
    add_polygon(&mut fig, pb, "dual", "B");
    fig.circle(pb.center, pa.circumradius, "locus-a")
        .circle(pa.center, pb.circumradius, "locus-b");
    for (i, p) in sol.points().into_iter().enumerate() {
        fig.marker(p).label(p, format!("M{}", i + 1));
    }
    fig.label(pa.center, "O1").label(pb.center, "O2");
    fig
}

/// Both equilateral triangles from a Pompeiu triangle, with the auxiliary
/// equilateral triangles on `MC` dashed.
pub fn pompeiu_scene(k: &TriangleConstruction) -> Figure {
    let m = k.point;
    let mut fig = Figure::new("Equilateral triangles from a Pompeiu triangle");
    fig.polygon(k.larger.to_vec(), "larger")
        .vertex_labels(&k.larger, "A")
        .polygon(k.smaller.to_vec(), "smaller");
    fig.label(k.smaller[1], "B2").label(k.smaller[2], "B3");
    for apex in k.apexes {
        fig.polyline(vec![m, k.auxiliary, apex, m], "auxiliary");
    }
    for v in k.larger.iter().chain(k.smaller.iter()) {
        fig.segment(m, *v);
    }
    fig.marker(m).label(m, "M").label(k.auxiliary, "C");
    fig
}
