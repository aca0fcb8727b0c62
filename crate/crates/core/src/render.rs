//! Static SVG pictures of a quad chain in the upper half-plane.
//!
//! Vertices sit on the real axis at their values and edges are semicircles;
//! edges at `1/0` are vertical rays. Quads are shaded and the chosen paths
//! are drawn on top in distinct colours.

use std::fmt::Write as _;

use crate::chain::QuadChain;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::path::{enumerate_chain_paths, EdgePath, EvenPaths};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathSelection {
    All,
    Extremes,
    Even,
}

impl std::str::FromStr for PathSelection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(PathSelection::All),
            "extremes" => Ok(PathSelection::Extremes),
            "even" => Ok(PathSelection::Even),
            _ => Err(format!("unknown path selection {s:?}; expected all, extremes or even")),
        }
    }
}

const WIDTH: f64 = 1000.0;
const HEIGHT: f64 = 560.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

struct Canvas {
    lo: f64,
    hi: f64,
    baseline: f64,
}

impl Canvas {
    fn x(&self, f: &Fraction) -> f64 {
        MARGIN + (f.to_f64() - self.lo) / (self.hi - self.lo) * (WIDTH - 2.0 * MARGIN)
    }

    fn top(&self) -> f64 {
        MARGIN / 2.0
    }

    /// Path commands for the edge `u → v`, assuming the pen is at `u`.
    fn edge(&self, u: &Fraction, v: &Fraction, out: &mut String) {
        if v.is_infinity() {
            let _ = write!(out, " L{:.3},{:.3}", self.x(u), self.top());
        } else if u.is_infinity() {
            let _ = write!(out, " L{:.3},{:.3} L{:.3},{:.3}", self.x(v), self.top(), self.x(v), self.baseline);
        } else {
            let (x1, x2) = (self.x(u), self.x(v));
            let r = (x2 - x1).abs() / 2.0;
            let sweep = u8::from(x2 > x1);
            let _ = write!(out, " A{r:.3},{r:.3} 0 0 {sweep} {x2:.3},{:.3}", self.baseline);
        }
    }

    fn start(&self, f: &Fraction, out: &mut String) {
        let _ = write!(out, "M{:.3},{:.3}", self.x(f), self.baseline);
    }

    fn polyline(&self, vertices: &[Fraction]) -> String {
        let mut d = String::new();
        let (first, rest) = vertices.split_first().expect("non-empty");
        if first.is_infinity() {
            let next = &rest[0];
            let _ = write!(d, "M{:.3},{:.3} L{:.3},{:.3}", self.x(next), self.top(), self.x(next), self.baseline);
            for w in rest.windows(2) {
                self.edge(&w[0], &w[1], &mut d);
            }
        } else {
            self.start(first, &mut d);
            let mut prev = first;
            for v in rest {
                self.edge(prev, v, &mut d);
                prev = v;
            }
        }
        d
    }

    fn cycle(&self, corners: &[Fraction]) -> String {
        // Start at a finite corner so the outline closes on the axis.
        let k = corners.iter().position(|c| !c.is_infinity()).expect("a finite corner");
        let mut order: Vec<Fraction> = corners[k..].iter().chain(&corners[..k]).cloned().collect();
        order.push(order[0].clone());
        let mut d = String::new();
        self.start(&order[0], &mut d);
        for w in order.windows(2) {
            self.edge(&w[0], &w[1], &mut d);
        }
        d.push_str(" Z");
        d
    }
}

fn selected_paths(chain: &QuadChain, which: PathSelection, cap: usize) -> Result<Vec<(String, EdgePath)>> {
    let target = chain.target();
    Ok(match which {
        PathSelection::Extremes => {
            vec![("lower".to_string(), chain.lower_minimal_path()?), ("upper".to_string(), chain.upper_minimal_path()?)]
        }
        PathSelection::Even => {
            let mut memo = EvenPaths::new();
            if target.is_knot() {
                vec![("even".to_string(), memo.knot(target)?)]
            } else {
                let (e0, e1) = memo.link(target)?;
                vec![("even-0".to_string(), e0), ("even-1".to_string(), e1)]
            }
        }
        PathSelection::All => {
            enumerate_chain_paths(chain, cap)?.into_iter().enumerate().map(|(i, p)| (format!("path-{i}"), p)).collect()
        }
    })
}

/// Renders the chain of `target` with the selected minimal paths.
///
/// Fails with [`Error::CapExceeded`] when `which` is `All` and there are more
/// than `cap` minimal paths.
pub fn render_svg(target: &Fraction, which: PathSelection, cap: usize) -> Result<String> {
    target.check_unit_interior()?;
    let chain = QuadChain::new(target)?;
    let paths = selected_paths(&chain, which, cap)?;
    let finite: Vec<f64> = chain.vertices().iter().filter(|v| !v.is_infinity()).map(Fraction::to_f64).collect();
    let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(Error::Inconsistent(format!("chain of {target} spans no interval")));
    }
    let canvas = Canvas { lo, hi, baseline: HEIGHT - MARGIN };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, "<title>Quad chain of {target}</title>");
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(svg, r##"<g id="quads" fill="#f2e6c9" fill-opacity="0.6" stroke="none">"##);
    for q in chain.quads() {
        let _ = writeln!(svg, r#"<path d="{}"/>"#, canvas.cycle(q.corners()));
    }
    svg.push_str("</g>\n");
    let _ = writeln!(svg, r##"<g id="edges" fill="none" stroke="#888" stroke-width="0.8">"##);
    for t in chain.triangles() {
        for k in 0..3 {
            let (u, v) = (&t[k], &t[(k + 1) % 3]);
            if u < v {
                let _ = writeln!(svg, r#"<path d="{}"/>"#, canvas.polyline(&[u.clone(), v.clone()]));
            }
        }
    }
    svg.push_str("</g>\n");
    let _ = writeln!(
        svg,
        r##"<line x1="{MARGIN}" y1="{b}" x2="{x2}" y2="{b}" stroke="black" stroke-width="1"/>"##,
        b = canvas.baseline,
        x2 = WIDTH - MARGIN
    );
    let _ = writeln!(svg, r#"<g id="paths" fill="none" stroke-width="2.5" stroke-opacity="0.85">"#);
    for (i, (name, p)) in paths.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<path id="{name}" class="edge-path" stroke="{}" d="{}"/>"#,
            PALETTE[i % PALETTE.len()],
            canvas.polyline(p.vertices())
        );
    }
    svg.push_str("</g>\n");
    let _ = writeln!(svg, r#"<g id="labels" font-family="sans-serif" font-size="11" text-anchor="middle">"#);
    for v in chain.vertices().iter().filter(|v| !v.is_infinity()) {
        let _ = writeln!(svg, r#"<text x="{:.3}" y="{:.3}">{v}</text>"#, canvas.x(v), canvas.baseline + 16.0);
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}
