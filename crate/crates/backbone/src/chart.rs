//! Minimal hand-generated SVG charts (no plotting dependency): a radar chart
//! for measure tables, a line chart for progressions, and an empirical-CDF
//! scatter for distribution comparisons. Output is deterministic and fits a
//! fixed 640x480 canvas.

use std::fmt::Write as _;

use crate::compare::{ComparisonReport, ProgressionSeries};

pub const WIDTH: f64 = 640.0;
pub const HEIGHT: f64 = 480.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn esc(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn num(v: f64) -> String {
    format!("{v:.4}")
}

fn open() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n\
         <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n",
        w = WIDTH,
        h = HEIGHT
    )
}

fn close(mut svg: String) -> String {
    svg.push_str("</g>\n</svg>\n");
    svg
}

fn text(svg: &mut String, x: f64, y: f64, anchor: &str, fill: &str, content: &str) {
    writeln!(
        svg,
        "<text x=\"{x:.2}\" y=\"{y:.2}\" text-anchor=\"{anchor}\" fill=\"{fill}\">{}</text>",
        esc(content)
    )
    .expect("writing to string cannot fail");
}

fn legend(svg: &mut String, labels: &[String]) {
    for (i, label) in labels.iter().enumerate() {
        let y = 10.0 + 16.0 * i as f64;
        writeln!(
            svg,
            "<rect x=\"8\" y=\"{y:.2}\" width=\"10\" height=\"10\" fill=\"{}\"/>",
            color(i)
        )
        .expect("writing to string cannot fail");
        text(svg, 22.0, y + 9.0, "start", "#333333", label);
    }
}

/// Radar chart of a measure table: one axis per measure (each normalized by
/// its maximum across rows), one polygon per network.
pub fn radar_chart(report: &ComparisonReport) -> String {
    let mut svg = open();
    let k = report.measures.len();
    if k == 0 || report.rows.is_empty() {
        text(&mut svg, WIDTH / 2.0, HEIGHT / 2.0, "middle", "#333333", "nothing to draw");
        return close(svg);
    }
    let (cx, cy, radius) = (340.0, 255.0, 165.0);
    let angle = |j: usize| -std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * j as f64 / k as f64;
    let place = |j: usize, r: f64| {
        let a = angle(j);
        (cx + r * a.cos(), cy + r * a.sin())
    };

    let axis_max: Vec<f64> = (0..k)
        .map(|j| {
            let measure = &report.measures[j];
            let max = report
                .rows
                .iter()
                .map(|row| row.values[measure.as_str()])
                .fold(0.0_f64, f64::max);
            if max > 0.0 && max.is_finite() {
                max
            } else {
                1.0
            }
        })
        .collect();

    for ring in [0.25, 0.5, 0.75, 1.0] {
        let points: Vec<String> = (0..k)
            .map(|j| {
                let (x, y) = place(j, radius * ring);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(
            svg,
            "<polygon points=\"{}\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>",
            points.join(" ")
        )
        .expect("writing to string cannot fail");
    }
    for j in 0..k {
        let (x, y) = place(j, radius);
        writeln!(
            svg,
            "<line x1=\"{cx:.2}\" y1=\"{cy:.2}\" x2=\"{x:.2}\" y2=\"{y:.2}\" \
             stroke=\"#cccccc\" stroke-width=\"1\"/>"
        )
        .expect("writing to string cannot fail");
        let (lx, ly) = place(j, radius + 20.0);
        text(&mut svg, lx, ly, "middle", "#333333", &report.measures[j]);
        let (mx, my) = place(j, radius + 34.0);
        text(&mut svg, mx, my, "middle", "#999999", &num(axis_max[j]));
    }

    for (i, row) in report.rows.iter().enumerate() {
        let points: Vec<String> = (0..k)
            .map(|j| {
                let value = row.values[report.measures[j].as_str()];
                let fraction = (value / axis_max[j]).clamp(0.0, 1.0);
                let (x, y) = place(j, radius * fraction);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(
            svg,
            "<polygon points=\"{}\" fill=\"{c}\" fill-opacity=\"0.12\" stroke=\"{c}\" \
             stroke-width=\"2\"/>",
            points.join(" "),
            c = color(i)
        )
        .expect("writing to string cannot fail");
    }
    let labels: Vec<String> = report.rows.iter().map(|r| r.label.clone()).collect();
    legend(&mut svg, &labels);
    close(svg)
}

struct Frame {
    left: f64,
    right: f64,
    top: f64,
    bottom: f64,
}

const FRAME: Frame = Frame { left: 80.0, right: 615.0, top: 25.0, bottom: 420.0 };

fn frame_axes(svg: &mut String) {
    writeln!(
        svg,
        "<line x1=\"{l:.2}\" y1=\"{b:.2}\" x2=\"{r:.2}\" y2=\"{b:.2}\" stroke=\"#333333\"/>\n\
         <line x1=\"{l:.2}\" y1=\"{t:.2}\" x2=\"{l:.2}\" y2=\"{b:.2}\" stroke=\"#333333\"/>",
        l = FRAME.left,
        r = FRAME.right,
        t = FRAME.top,
        b = FRAME.bottom,
    )
    .expect("writing to string cannot fail");
}

fn x_scale(min: f64, max: f64) -> impl Fn(f64) -> f64 {
    let span = max - min;
    move |v: f64| {
        if span > 0.0 {
            FRAME.left + (v - min) / span * (FRAME.right - FRAME.left)
        } else {
            (FRAME.left + FRAME.right) / 2.0
        }
    }
}

fn y_scale(max: f64) -> impl Fn(f64) -> f64 {
    move |v: f64| FRAME.bottom - (v / max).clamp(0.0, 1.0) * (FRAME.bottom - FRAME.top)
}

fn y_ticks(svg: &mut String, y_max: f64) {
    let sy = y_scale(y_max);
    for i in 0..=4 {
        let value = y_max * i as f64 / 4.0;
        let y = sy(value);
        writeln!(
            svg,
            "<line x1=\"{l:.2}\" y1=\"{y:.2}\" x2=\"{r:.2}\" y2=\"{y:.2}\" \
             stroke=\"#eeeeee\" stroke-width=\"1\"/>",
            l = FRAME.left,
            r = FRAME.right,
        )
        .expect("writing to string cannot fail");
        text(svg, FRAME.left - 6.0, y + 4.0, "end", "#333333", &num(value));
    }
}

fn x_numeric_ticks(svg: &mut String, values: &[f64], min: f64, max: f64) {
    let sx = x_scale(min, max);
    let step = values.len().div_ceil(10).max(1);
    for (i, &v) in values.iter().enumerate() {
        let x = sx(v);
        writeln!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"{b:.2}\" x2=\"{x:.2}\" y2=\"{b2:.2}\" stroke=\"#333333\"/>",
            b = FRAME.bottom,
            b2 = FRAME.bottom + 4.0,
        )
        .expect("writing to string cannot fail");
        if i % step == 0 {
            text(svg, x, FRAME.bottom + 17.0, "middle", "#333333", &num(v));
        }
    }
}

fn axis_titles(svg: &mut String, x_title: &str, y_title: &str) {
    text(
        svg,
        (FRAME.left + FRAME.right) / 2.0,
        HEIGHT - 14.0,
        "middle",
        "#333333",
        x_title,
    );
    writeln!(
        svg,
        "<text x=\"18\" y=\"{my:.2}\" text-anchor=\"middle\" fill=\"#333333\" \
         transform=\"rotate(-90 18 {my:.2})\">{}</text>",
        esc(y_title),
        my = (FRAME.top + FRAME.bottom) / 2.0,
    )
    .expect("writing to string cannot fail");
}

/// Line chart of a measure progression: the sweep on the x axis, one
/// polyline per method.
pub fn line_chart(series: &ProgressionSeries) -> String {
    let mut svg = open();
    if series.sweep.is_empty() || series.series.is_empty() {
        text(&mut svg, WIDTH / 2.0, HEIGHT / 2.0, "middle", "#333333", "nothing to draw");
        return close(svg);
    }
    let x_min = series.sweep[0];
    let x_max = *series.sweep.last().expect("non-empty");
    let y_max = series
        .series
        .iter()
        .flat_map(|row| row.values.iter().copied())
        .filter(|v| v.is_finite())
        .fold(0.0_f64, f64::max)
        .max(1e-12);
    let sx = x_scale(x_min, x_max);
    let sy = y_scale(y_max);

    y_ticks(&mut svg, y_max);
    x_numeric_ticks(&mut svg, &series.sweep, x_min, x_max);
    frame_axes(&mut svg);
    axis_titles(&mut svg, &series.filter, &series.measure);

    for (i, row) in series.series.iter().enumerate() {
        let points: Vec<String> = series
            .sweep
            .iter()
            .zip(&row.values)
            .map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        writeln!(
            svg,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{c}\" stroke-width=\"2\"/>",
            points.join(" "),
            c = color(i)
        )
        .expect("writing to string cannot fail");
        for (&x, &y) in series.sweep.iter().zip(&row.values) {
            writeln!(
                svg,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{c}\"/>",
                sx(x),
                sy(y),
                c = color(i)
            )
            .expect("writing to string cannot fail");
        }
    }
    let labels: Vec<String> = series.series.iter().map(|r| r.label.clone()).collect();
    legend(&mut svg, &labels);
    close(svg)
}

/// Scatter of empirical CDF points, one color per sample. The first sample
/// is conventionally the original network's.
pub fn cdf_chart(item_name: &str, samples: &[(String, Vec<f64>)]) -> String {
    let mut svg = open();
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    for (_, sample) in samples {
        for &v in sample {
            x_min = x_min.min(v);
            x_max = x_max.max(v);
        }
    }
    if samples.is_empty() || x_min > x_max {
        text(&mut svg, WIDTH / 2.0, HEIGHT / 2.0, "middle", "#333333", "nothing to draw");
        return close(svg);
    }
    let sx = x_scale(x_min, x_max);
    let sy = y_scale(1.0);

    y_ticks(&mut svg, 1.0);
    let tick_values: Vec<f64> = (0..=4)
        .map(|i| x_min + (x_max - x_min) * i as f64 / 4.0)
        .collect();
    x_numeric_ticks(&mut svg, &tick_values, x_min, x_max);
    frame_axes(&mut svg);
    axis_titles(&mut svg, item_name, "cumulative fraction");

    for (i, (_, sample)) in samples.iter().enumerate() {
        let mut sorted = sample.clone();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let mut at = 0usize;
        while at < n {
            let value = sorted[at];
            while at < n && sorted[at] == value {
                at += 1;
            }
            writeln!(
                svg,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{c}\" fill-opacity=\"0.85\"/>",
                sx(value),
                sy(at as f64 / n as f64),
                c = color(i)
            )
            .expect("writing to string cannot fail");
        }
    }
    let labels: Vec<String> = samples.iter().map(|(l, _)| l.clone()).collect();
    legend(&mut svg, &labels);
    close(svg)
}
