//! Static SVG figures: one panel with the curves and divisor points, then one
//! panel per curve with its dual subdivision. Coordinates are the only place
//! where rationals become decimals.

use std::fmt::Write;

use num_traits::ToPrimitive;

use troplift_core::geometry::{dual_subdivision, EdgeShape};
use troplift_core::{curve_complex, Divisor, Exp, Point, TropPoly2, Q};

const COLORS: [&str; 3] = ["#1f4e9c", "#b8322a", "#4d4d4d"];
const MARGIN: f64 = 16.0;

#[derive(Clone, Debug, Default)]
pub struct Scene {
    pub curves: Vec<TropPoly2>,
    pub divisors: Vec<Divisor>,
    /// `(curve index, dual simplex)` pairs drawn bold.
    pub marked: Vec<(usize, (Exp, Exp))>,
    /// Plot window `[-h, h]²`; fitted when `None`.
    pub half_width: Option<Q>,
    pub size: u32,
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn f(x: &Q) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// World window, kept square so lattice directions keep their slopes.
#[derive(Clone, Debug)]
struct Window {
    x0: f64,
    y0: f64,
    side: f64,
    offset: f64,
    size: f64,
}

impl Window {
    fn fit(points: &[(f64, f64)], pad: f64) -> Window {
        let (mut lx, mut ly, mut hx, mut hy) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in points {
            lx = lx.min(x);
            ly = ly.min(y);
            hx = hx.max(x);
            hy = hy.max(y);
        }
        if points.is_empty() {
            (lx, ly, hx, hy) = (0.0, 0.0, 0.0, 0.0);
        }
        let side = (hx - lx).max(hy - ly) + 2.0 * pad;
        Window {
            x0: (lx + hx) / 2.0 - side / 2.0,
            y0: (ly + hy) / 2.0 - side / 2.0,
            side,
            offset: 0.0,
            size: 0.0,
        }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let span = self.size - 2.0 * MARGIN;
        (
            self.offset + MARGIN + (x - self.x0) / self.side * span,
            MARGIN + (1.0 - (y - self.y0) / self.side) * span,
        )
    }

    /// Largest `s ≥ 0` keeping `p + s d` inside the window.
    fn exit(&self, p: (f64, f64), d: (f64, f64)) -> f64 {
        let mut s = f64::MAX;
        for (c, dc, lo) in [(p.0, d.0, self.x0), (p.1, d.1, self.y0)] {
            if dc > 0.0 {
                s = s.min((lo + self.side - c) / dc);
            } else if dc < 0.0 {
                s = s.min((lo - c) / dc);
            }
        }
        s.max(0.0)
    }
}

fn line(out: &mut String, w: &Window, a: (f64, f64), b: (f64, f64), color: &str, width: f64) {
    let (p, q) = (w.px(a.0, a.1), w.px(b.0, b.1));
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{}" stroke-linecap="round"/>"#,
        num(p.0),
        num(p.1),
        num(q.0),
        num(q.1),
        num(width)
    );
}

fn pt(p: &Point) -> (f64, f64) {
    (f(&p.x), f(&p.y))
}

impl Scene {
    pub fn new(size: u32) -> Scene {
        Scene {
            size,
            ..Scene::default()
        }
    }

    fn curve_window(&self) -> Window {
        if let Some(h) = &self.half_width {
            let h = f(h);
            return Window {
                x0: -h,
                y0: -h,
                side: 2.0 * h,
                offset: 0.0,
                size: 0.0,
            };
        }
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for c in &self.curves {
            pts.extend(curve_complex(c).vertices.iter().map(pt));
        }
        for d in &self.divisors {
            pts.extend(d.entries().keys().map(pt));
        }
        let w = Window::fit(&pts, 1.0);
        let extra = w.side / 8.0;
        Window {
            x0: w.x0 - extra,
            y0: w.y0 - extra,
            side: w.side + 2.0 * extra,
            ..w
        }
    }

    fn curve_panel(&self, out: &mut String) {
        let mut w = self.curve_window();
        w.size = self.size as f64;
        let _ = writeln!(out, r#"<g clip-path="url(#panel0)">"#);
        for (k, c) in self.curves.iter().enumerate() {
            let color = COLORS[k.min(COLORS.len() - 1)];
            let cc = curve_complex(c);
            for e in &cc.edges {
                let width = 1.5 * e.multiplicity as f64;
                let d = (e.cell.dir.0 as f64, e.cell.dir.1 as f64);
                match &e.shape {
                    EdgeShape::Segment(a, b) => line(out, &w, pt(&cc.vertices[*a]), pt(&cc.vertices[*b]), color, width),
                    EdgeShape::Ray(a, _) => {
                        let p = pt(&cc.vertices[*a]);
                        let s = w.exit(p, d);
                        line(out, &w, p, (p.0 + s * d.0, p.1 + s * d.1), color, width);
                    }
                    EdgeShape::Line => {
                        let p = pt(&e.cell.origin);
                        let (s, r) = (w.exit(p, d), w.exit(p, (-d.0, -d.1)));
                        line(out, &w, (p.0 - r * d.0, p.1 - r * d.1), (p.0 + s * d.0, p.1 + s * d.1), color, width);
                    }
                }
            }
        }
        for d in &self.divisors {
            for (p, m) in d.entries() {
                let (x, y) = w.px(f(&p.x), f(&p.y));
                let r = 3.5 + 1.5 * (m.abs() - 1) as f64;
                let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#, num(x), num(y), num(r));
            }
        }
        let _ = writeln!(out, "</g>");
    }

    fn subdivision_panel(&self, out: &mut String, k: usize) {
        let color = COLORS[k.min(COLORS.len() - 1)];
        let sub = dual_subdivision(&self.curves[k]);
        let support: Vec<Exp> = self.curves[k].support().collect();
        let fl = |e: Exp| (e.0 as f64, e.1 as f64);
        let mut w = Window::fit(&support.iter().map(|&e| fl(e)).collect::<Vec<_>>(), 0.5);
        w.offset = ((k + 1) as u32 * self.size) as f64;
        w.size = self.size as f64;
        for face in &sub.faces {
            let pts: Vec<String> = face
                .iter()
                .map(|&e| {
                    let (x, y) = w.px(e.0 as f64, e.1 as f64);
                    format!("{},{}", num(x), num(y))
                })
                .collect();
            let _ = writeln!(out, r#"<polygon points="{}" fill="{color}" fill-opacity="0.08" stroke="none"/>"#, pts.join(" "));
        }
        for &(a, b) in &sub.edges {
            let bold = self.marked.iter().any(|&(c, (i, j))| c == k && ((i, j) == (a, b) || (j, i) == (a, b)));
            line(out, &w, fl(a), fl(b), color, if bold { 4.0 } else { 1.0 });
        }
        for e in support {
            let (x, y) = w.px(e.0 as f64, e.1 as f64);
            let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="2.5" fill="{color}"/>"#, num(x), num(y));
        }
    }

    pub fn to_svg(&self) -> String {
        let s = self.size as f64;
        let panels = 1 + self.curves.len();
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            panels as u32 * self.size,
            self.size,
            panels as u32 * self.size,
            self.size
        );
        let _ = writeln!(
            out,
            r#"<defs><clipPath id="panel0"><rect x="{m}" y="{m}" width="{w}" height="{w}"/></clipPath></defs>"#,
            m = num(MARGIN),
            w = num(s - 2.0 * MARGIN)
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        self.curve_panel(&mut out);
        for k in 0..self.curves.len() {
            self.subdivision_panel(&mut out, k);
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use troplift_core::rational::qi;

    fn standard_line() -> TropPoly2 {
        TropPoly2::from_terms([((1, 0), qi(0)), ((0, 1), qi(0)), ((0, 0), qi(0))]).unwrap()
    }

    #[test]
    fn line_is_three_clipped_segments() {
        let mut s = Scene::new(200);
        s.curves.push(standard_line());
        s.half_width = Some(qi(2));
        let svg = s.to_svg();
        let panel = svg.split("</g>").next().unwrap();
        assert_eq!(panel.matches("<line").count(), 3);
        // every ray starts at the vertex, the centre of the window
        assert_eq!(panel.matches(r#"x1="100.000000" y1="100.000000""#).count(), 3);
        assert!(!svg.contains("fill=\"black\""));
    }

    #[test]
    fn divisor_points_are_circles() {
        let mut s = Scene::new(200);
        s.curves.push(standard_line());
        s.divisors.push(Divisor::new([(Point::int(0, 0), 1), (Point::int(1, 1), 2)]));
        assert_eq!(s.to_svg().matches("fill=\"black\"").count(), 2);
    }
}
