//! Regret-curve rendering: one SVG with a log-scaled time axis, a mean line
//! plus standard-error band per policy, and an optional horizontal reference
//! level. The output bytes are a pure function of the input.

use crate::output::Series;
use unibandit::Real;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 50.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

fn fmt(x: f64) -> String {
    format!("{x:.4}")
}

pub fn render(series: &[Series], reference: Option<(Real, String)>) -> String {
    let t_min = series
        .iter()
        .flat_map(|s| s.points.first())
        .map(|p| p.0)
        .min()
        .unwrap_or(1)
        .max(1);
    let t_max = series
        .iter()
        .flat_map(|s| s.points.last())
        .map(|p| p.0)
        .max()
        .unwrap_or(1);
    let x_lo = (t_min as f64).log10();
    let x_hi = ((t_max as f64).log10()).max(x_lo + 1e-9);
    let mut y_hi = series
        .iter()
        .flat_map(|s| s.points.iter())
        .map(|&(_, m, e)| m + e)
        .fold(0.0f64, f64::max);
    if let Some((level, _)) = &reference {
        y_hi = y_hi.max(*level);
    }
    let y_hi = if y_hi > 0.0 { y_hi * 1.05 } else { 1.0 };

    let x = |t: u64| -> f64 {
        let frac = ((t as f64).log10() - x_lo) / (x_hi - x_lo);
        MARGIN_LEFT + frac * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    };
    let y = |v: f64| -> f64 {
        let frac = (v / y_hi).clamp(0.0, 1.0);
        HEIGHT - MARGIN_BOTTOM - frac * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // axes
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        fmt(x0),
        fmt(y0),
        fmt(x1),
        fmt(y0)
    ));
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        fmt(x0),
        fmt(y0),
        fmt(x0),
        fmt(y1)
    ));

    // decade ticks on the time axis
    let mut decade = 1u64;
    while decade <= t_max {
        if decade >= t_min {
            let xp = x(decade);
            svg.push_str(&format!(
                "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n",
                fmt(xp),
                fmt(y0),
                fmt(y0 + 5.0)
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
                fmt(xp),
                fmt(y0 + 20.0),
                decade
            ));
        }
        decade = decade.saturating_mul(10);
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">t (log scale)</text>\n",
        fmt((x0 + x1) / 2.0),
        fmt(HEIGHT - 10.0)
    ));

    // five regret-axis ticks
    for i in 0..=4 {
        let v = y_hi * f64::from(i) / 4.0;
        let yp = y(v);
        svg.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n",
            fmt(x0 - 5.0),
            fmt(yp),
            fmt(x0)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{:.1}</text>\n",
            fmt(x0 - 8.0),
            fmt(yp + 4.0),
            v
        ));
    }
    svg.push_str(&format!(
        "<text x=\"15\" y=\"{}\" font-size=\"12\" transform=\"rotate(-90 15 {})\" text-anchor=\"middle\">mean regret</text>\n",
        fmt((y0 + y1) / 2.0), fmt((y0 + y1) / 2.0)
    ));

    if let Some((level, label)) = &reference {
        let yp = y(*level);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{2}\" x2=\"{}\" y2=\"{2}\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n",
            fmt(x0), fmt(x1), fmt(yp)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"gray\">{}</text>\n",
            fmt(x0 + 6.0),
            fmt(yp - 5.0),
            label
        ));
    }

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        // stderr band: mean + e forward, mean - e backwards
        let mut band = String::new();
        for &(t, m, e) in &s.points {
            band.push_str(&format!("{},{} ", fmt(x(t)), fmt(y(m + e))));
        }
        for &(t, m, e) in s.points.iter().rev() {
            band.push_str(&format!("{},{} ", fmt(x(t)), fmt(y((m - e).max(0.0)))));
        }
        svg.push_str(&format!(
            "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.15\" stroke=\"none\"/>\n",
            band.trim_end(),
            color
        ));
        let line: Vec<String> = s
            .points
            .iter()
            .map(|&(t, m, _)| format!("{},{}", fmt(x(t)), fmt(y(m))))
            .collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
            line.join(" "),
            color
        ));
        // legend
        let ly = MARGIN_TOP + 18.0 * i as f64;
        svg.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
            fmt(x1 + 10.0), fmt(ly), fmt(x1 + 34.0), color
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n",
            fmt(x1 + 40.0),
            fmt(ly + 4.0),
            s.policy
        ));
    }

    svg.push_str("</svg>\n");
    svg
}
