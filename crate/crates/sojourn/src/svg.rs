//! Minimal SVG rendering of a density histogram with the standard normal
//! curve overlaid. No drawing library: the output is a small, deterministic
//! string of rects, a polyline, and axis labels, so identical inputs always
//! produce identical bytes.

use crate::stats::normal::std_normal_pdf;
use crate::stats::Histogram;
use std::fmt::Write;

const WIDTH: f64 = 880.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 58.0;
const CURVE_POINTS: usize = 256;

/// Renders the histogram as a density plot against the standard normal
/// curve. `title` is drawn above the plot, `x_label` under the x axis.
pub fn render_histogram(h: &Histogram, title: &str, x_label: &str) -> String {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let max_density = (0..h.bins())
        .map(|i| h.density(i))
        .fold(std_normal_pdf(0.0), f64::max);
    let y_max = max_density * 1.08;

    let sx = |v: f64| MARGIN_LEFT + (v - h.lo) / (h.hi - h.lo) * plot_w;
    let sy = |d: f64| MARGIN_TOP + (1.0 - d / y_max) * plot_h;

    let mut out = String::new();
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    );
    let _ = write!(out, "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>\n");
    let _ = write!(
        out,
        "<text x=\"{:.2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    );

    // Bars.
    for i in 0..h.bins() {
        if h.counts[i] == 0 {
            continue;
        }
        let x0 = sx(h.bin_lo(i));
        let x1 = sx(h.bin_hi(i));
        let y = sy(h.density(i));
        let _ = write!(
            out,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" \
             fill=\"#5b8bb0\" stroke=\"#ffffff\" stroke-width=\"0.5\"/>\n",
            x0,
            y,
            x1 - x0,
            sy(0.0) - y
        );
    }

    // Standard normal density overlay.
    let mut points = String::new();
    for k in 0..=CURVE_POINTS {
        let a = h.lo + (h.hi - h.lo) * k as f64 / CURVE_POINTS as f64;
        let _ = write!(points, "{:.2},{:.2} ", sx(a), sy(std_normal_pdf(a)));
    }
    let _ = write!(
        out,
        "<polyline fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"1.8\" points=\"{}\"/>\n",
        points.trim_end()
    );

    // Axes.
    let _ = write!(
        out,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#222222\" stroke-width=\"1\"/>\n",
        MARGIN_LEFT,
        sy(0.0),
        MARGIN_LEFT + plot_w,
        sy(0.0)
    );
    let _ = write!(
        out,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#222222\" stroke-width=\"1\"/>\n",
        MARGIN_LEFT,
        MARGIN_TOP,
        MARGIN_LEFT,
        sy(0.0)
    );

    // Ticks and labels.
    let x_step = nice_step((h.hi - h.lo) / 8.0);
    let mut tick = (h.lo / x_step).ceil() * x_step;
    while tick <= h.hi + 1e-9 {
        let x = sx(tick);
        let _ = write!(
            out,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#222222\" stroke-width=\"1\"/>\n",
            sy(0.0),
            sy(0.0) + 5.0
        );
        let _ = write!(
            out,
            "<text x=\"{x:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{}</text>\n",
            sy(0.0) + 20.0,
            fmt_tick(tick, x_step)
        );
        tick += x_step;
    }
    let y_step = nice_step(y_max / 5.0);
    let mut tick = y_step;
    while tick <= y_max + 1e-12 {
        let y = sy(tick);
        let _ = write!(
            out,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#222222\" stroke-width=\"1\"/>\n",
            MARGIN_LEFT - 5.0,
            MARGIN_LEFT
        );
        let _ = write!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"end\">{}</text>\n",
            MARGIN_LEFT - 9.0,
            y + 4.0,
            fmt_tick(tick, y_step)
        );
        tick += y_step;
    }
    let _ = write!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0,
        escape(x_label)
    );
    let _ = write!(
        out,
        "<text x=\"18\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">density</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );
    out.push_str("</svg>\n");
    out
}

/// Rounds a raw tick spacing up to the nearest 1/2/5 x 10^k.
fn nice_step(raw: f64) -> f64 {
    let mag = 10f64.powf(raw.abs().log10().floor());
    for m in [1.0, 2.0, 5.0, 10.0] {
        if m * mag >= raw {
            return m * mag;
        }
    }
    unreachable!("10 * mag >= raw by construction")
}

/// Tick label with just enough decimals for the step size.
fn fmt_tick(v: f64, step: f64) -> String {
    let v = if v.abs() < step * 1e-9 { 0.0 } else { v };
    if step >= 1.0 {
        format!("{v:.0}")
    } else if step >= 0.1 {
        format!("{v:.1}")
    } else if step >= 0.01 {
        format!("{v:.2}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{histogram, EKSample};

    fn sample_histogram() -> Histogram {
        let samples: Vec<EKSample> = (0..100)
            .map(|i| EKSample {
                q: i + 1,
                value: -2.0 + 4.0 * (i as f64) / 99.0,
            })
            .collect();
        histogram(&samples, -4.0, 4.0, 20).unwrap()
    }

    #[test]
    fn renders_expected_structure() {
        let svg = render_histogram(&sample_histogram(), "test plot", "value");
        assert!(svg.starts_with("<svg "));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        // One bar per occupied bin, plus the background rect.
        let h = sample_histogram();
        let occupied = h.counts.iter().filter(|&&c| c > 0).count();
        assert_eq!(svg.matches("<rect").count(), occupied + 1);
        assert!(occupied > 5);
        assert!(svg.contains("test plot"));
        assert!(svg.contains("density"));
    }

    #[test]
    fn output_is_deterministic() {
        let h = sample_histogram();
        assert_eq!(
            render_histogram(&h, "t", "x"),
            render_histogram(&h, "t", "x")
        );
    }

    #[test]
    fn titles_are_escaped() {
        let svg = render_histogram(&sample_histogram(), "a < b & c", "x");
        assert!(svg.contains("a &lt; b &amp; c"));
        assert!(!svg.contains("a < b"));
    }

    #[test]
    fn nice_steps() {
        assert_eq!(nice_step(0.9), 1.0);
        assert_eq!(nice_step(1.0), 1.0);
        assert_eq!(nice_step(1.2), 2.0);
        assert_eq!(nice_step(3.0), 5.0);
        assert_eq!(nice_step(7.0), 10.0);
        assert_eq!(nice_step(0.03), 0.05);
    }
}
