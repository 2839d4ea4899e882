//! Static SVG plots: a row of input panels above a row of output panels,
//! one polyline per fuzzy set.

use std::fmt::Write;

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 200.0;
const MARGIN: f64 = 30.0;
const TITLE_H: f64 = 24.0;

const CONCLUSION_COLOURS: [&str; 8] = [
    "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#bcbd22",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Style {
    Partition,
    Observation,
    /// Index into the conclusion colour cycle.
    Conclusion(usize),
}

impl Style {
    fn class(self) -> &'static str {
        match self {
            Style::Partition => "partition",
            Style::Observation => "observation",
            Style::Conclusion(_) => "conclusion",
        }
    }

    fn stroke(self) -> &'static str {
        match self {
            Style::Partition => "#7f7f7f",
            Style::Observation => "#1f77b4",
            Style::Conclusion(k) => CONCLUSION_COLOURS[k % CONCLUSION_COLOURS.len()],
        }
    }
}

struct Drawn {
    label: String,
    points: Vec<(f64, f64)>,
    style: Style,
}

pub struct Panel {
    title: String,
    range: (f64, f64),
    sets: Vec<Drawn>,
}

impl Panel {
    pub fn new(title: &str, range: (f64, f64)) -> Self {
        Self {
            title: title.to_string(),
            range,
            sets: Vec::new(),
        }
    }

    pub fn add(&mut self, label: &str, points: &[(f64, f64)], style: Style) {
        self.sets.push(Drawn {
            label: label.to_string(),
            points: points.to_vec(),
            style,
        });
    }

    /// Horizontal extent: the variable's range widened to every drawn point.
    fn x_extent(&self) -> (f64, f64) {
        let xs = self.sets.iter().flat_map(|s| s.points.iter().map(|p| p.0));
        let (lo, hi) = xs.fold(self.range, |(lo, hi), x| (lo.min(x), hi.max(x)));
        if hi - lo > 0.0 {
            (lo, hi)
        } else {
            (lo - 0.5, hi + 0.5)
        }
    }

    fn draw(&self, s: &mut String, ox: f64, oy: f64) {
        let (lo, hi) = self.x_extent();
        let plot_w = PANEL_W - 2.0 * MARGIN;
        let plot_h = PANEL_H - TITLE_H - MARGIN;
        let base = oy + TITLE_H + plot_h;
        let px = |x: f64| ox + MARGIN + (x - lo) / (hi - lo) * plot_w;
        let py = |mu: f64| base - mu.clamp(0.0, 1.0) * plot_h;

        writeln!(s, r#"<g class="panel">"#).unwrap();
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="13">{}</text>"#,
            ox + MARGIN,
            oy + 16.0,
            escape(&self.title)
        )
        .unwrap();
        writeln!(
            s,
            r##"<line class="axis" x1="{:.2}" y1="{base:.2}" x2="{:.2}" y2="{base:.2}" stroke="#000"/>"##,
            px(lo),
            px(hi)
        )
        .unwrap();
        for (x, anchor) in [(lo, "start"), (hi, "end")] {
            writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="{anchor}">{x}</text>"#,
                px(x),
                base + 14.0
            )
            .unwrap();
        }
        for Drawn {
            label,
            points,
            style,
        } in &self.sets
        {
            let coords: Vec<String> = points
                .iter()
                .map(|&(x, mu)| format!("{:.2},{:.2}", px(x), py(mu)))
                .collect();
            let width = if matches!(style, Style::Partition) {
                1.0
            } else {
                2.0
            };
            writeln!(
                s,
                r#"<polyline class="{}" points="{}" fill="none" stroke="{}" stroke-width="{width}"><title>{}</title></polyline>"#,
                style.class(),
                coords.join(" "),
                style.stroke(),
                escape(label)
            )
            .unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Input panels on the first row, output panels on the second.
pub fn render(inputs: &[Panel], outputs: &[Panel]) -> String {
    let cols = inputs.len().max(outputs.len()).max(1) as f64;
    let (w, h) = (cols * PANEL_W, 2.0 * PANEL_H);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(s, r##"<rect width="100%" height="100%" fill="#fff"/>"##).unwrap();
    for (row, panels) in [inputs, outputs].into_iter().enumerate() {
        for (col, p) in panels.iter().enumerate() {
            p.draw(&mut s, col as f64 * PANEL_W, row as f64 * PANEL_H);
        }
    }
    s.push_str("</svg>\n");
    s
}
