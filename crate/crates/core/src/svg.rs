//! SVG output for two-layer drawings.

use std::fmt::Write as _;

use crate::drawing::{crossing_profile, Layer, TwoLayerDrawing};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Horizontal distance between consecutive layer positions.
    pub unit: f64,
    /// Vertical distance between the two layers.
    pub layer_gap: f64,
    pub margin: f64,
    pub node_radius: f64,
    /// Print each edge's crossing count at its midpoint.
    pub annotate_crossings: bool,
    /// Print coordinate labels next to nodes when the graph has them.
    pub show_labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            unit: 20.0,
            layer_gap: 120.0,
            margin: 20.0,
            node_radius: 4.0,
            annotate_crossings: false,
            show_labels: false,
        }
    }
}

pub fn render_svg(g: &Graph, d: &TwoLayerDrawing, opts: &SvgOptions) -> String {
    let slots = d.order_x().len().max(d.order_y().len()).max(1);
    let width = 2.0 * opts.margin + (slots - 1) as f64 * opts.unit;
    let height = 2.0 * opts.margin + opts.layer_gap;
    let point = |v| {
        let (layer, pos) = d.slot(v);
        let x = opts.margin + (pos - 1) as f64 * opts.unit;
        let y = match layer {
            Layer::X => opts.margin,
            Layer::Y => opts.margin + opts.layer_gap,
        };
        (x, y)
    };

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    )
    .unwrap();
    out.push_str("<g stroke=\"black\" stroke-width=\"1\">\n");
    for &(u, v) in g.edges() {
        let ((x1, y1), (x2, y2)) = (point(u), point(v));
        writeln!(
            out,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
        )
        .unwrap();
    }
    out.push_str("</g>\n<g fill=\"black\">\n");
    for &v in d.order_x().iter().chain(d.order_y()) {
        let (cx, cy) = point(v);
        writeln!(
            out,
            r#"<circle id="v{v}" cx="{cx:.2}" cy="{cy:.2}" r="{:.2}"/>"#,
            opts.node_radius
        )
        .unwrap();
    }
    out.push_str("</g>\n");
    if opts.show_labels {
        if let Some(labels) = g.labels() {
            out.push_str("<g font-size=\"6\" text-anchor=\"middle\">\n");
            for &v in d.order_x().iter().chain(d.order_y()) {
                let (x, y) = point(v);
                let dy = if d.slot(v).0 == Layer::X { -8.0 } else { 14.0 };
                let c = labels[v];
                writeln!(
                    out,
                    r#"<text x="{x:.2}" y="{:.2}">{},{}</text>"#,
                    y + dy,
                    c.row,
                    c.col
                )
                .unwrap();
            }
            out.push_str("</g>\n");
        }
    }
    if opts.annotate_crossings {
        let profile = crossing_profile(g, d);
        out.push_str("<g font-size=\"7\" fill=\"red\" text-anchor=\"middle\">\n");
        for (&(u, v), count) in g.edges().iter().zip(&profile.per_edge) {
            let ((x1, y1), (x2, y2)) = (point(u), point(v));
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            writeln!(
                out,
                r#"<text class="crossings" x="{mx:.2}" y="{my:.2}">{count}</text>"#
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::canonical_wall_drawing;
    use crate::families::gen_wall;

    #[test]
    fn single_edge() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let d = TwoLayerDrawing::new(&g, vec![0], vec![1]).unwrap();
        let svg = render_svg(&g, &d, &SvgOptions::default());
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<line").count(), 1);
        assert!(svg.contains(r#"<line x1="20.00" y1="20.00" x2="20.00" y2="140.00"/>"#));
    }

    #[test]
    fn wall_one_annotated() {
        let w = gen_wall(1).unwrap();
        let d = canonical_wall_drawing(&w);
        let opts = SvgOptions {
            annotate_crossings: true,
            ..SvgOptions::default()
        };
        let svg = render_svg(&w.graph, &d, &opts);
        assert_eq!(svg.matches("<circle").count(), 54);
        let max = svg
            .lines()
            .filter(|l| l.contains("class=\"crossings\""))
            .map(|l| {
                let start = l.find('>').unwrap() + 1;
                l[start..l.rfind('<').unwrap()].parse::<usize>().unwrap()
            })
            .max();
        assert_eq!(max, Some(1));
        assert_eq!(svg, render_svg(&w.graph, &d, &opts));
    }
}
