//! A minimal deterministic SVG decay plot.

use std::fmt::Write;

use drbench_core::formats::AnalysisResults;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 24.0;
const BOTTOM: f64 = 52.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Color of every curve with `n` qubits.
pub fn color(n: usize) -> &'static str {
    PALETTE[n.saturating_sub(1) % PALETTE.len()]
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|s| s * mag)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * mag)
}

pub fn decay_plot(runs: &[&AnalysisResults]) -> String {
    let max_m = runs
        .iter()
        .flat_map(|r| r.success.keys().copied())
        .max()
        .unwrap_or(1)
        .max(1) as f64;
    let x_step = nice_step(max_m);
    let x_max = (max_m / x_step).ceil() * x_step;
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |m: f64| LEFT + plot_w * m / x_max;
    let sy = |p: f64| TOP + plot_h * (1.0 - p.clamp(0.0, 1.0));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    let mut m = 0.0;
    while m <= x_max + 1e-9 {
        let x = sx(m);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{m}</text>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 20.0
        );
        m += x_step;
    }
    for i in 0..=4 {
        let p = i as f64 / 4.0;
        let y = sy(p);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{p:.2}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">benchmark length m</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(16 {:.2}) rotate(-90)" text-anchor="middle">success probability P_m</text>"#,
        TOP + plot_h / 2.0
    );

    for (i, run) in runs.iter().enumerate() {
        let c = color(run.fit.n);
        let points: Vec<String> = (0..=200)
            .map(|j| {
                let m = x_max * j as f64 / 200.0;
                let p = run.fit.a + run.fit.b * run.fit.p.powf(m);
                format!("{:.2},{:.2}", sx(m), sy(p))
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{c}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        for (&m, &p) in &run.success {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{c}"/>"#,
                sx(m as f64),
                sy(p)
            );
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT + 14.0;
        let sd = run.fit.intervals.as_ref().map(|iv| iv.r_sd);
        let legend = match sd {
            Some(sd) => format!("n={} r={:.4}±{:.4}", run.fit.n, run.fit.r, 2.0 * sd),
            None => format!("n={} r={:.4}", run.fit.n, run.fit.r),
        };
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{c}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 18.0,
            lx + 24.0,
            ly + 4.0,
            escape(&legend)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
