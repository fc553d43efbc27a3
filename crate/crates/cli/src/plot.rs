//! Minimal self-contained SVG line charts: time on x, one chosen column on
//! y, one polyline per series. The CSV remains the authoritative output;
//! these charts exist for quick visual inspection only.

/// One named curve.
pub struct Series<'a> {
    pub label: &'a str,
    pub xs: &'a [f64],
    pub ys: &'a [f64],
}

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 540.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 56.0;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#ad494a",
];

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        if v.is_finite() {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        // Degenerate span: pad symmetrically so the flat line sits mid-chart.
        let pad = if lo == 0.0 { 0.5 } else { lo.abs() * 0.1 };
        return (lo - pad, hi + pad);
    }
    (lo, hi)
}

/// Renders a complete SVG document for the given series.
pub fn line_chart_svg(title: &str, x_label: &str, y_label: &str, series: &[Series<'_>]) -> String {
    let (x_lo, x_hi) = range(series.iter().flat_map(|s| s.xs.iter().copied()));
    let (y_lo_raw, y_hi_raw) = range(series.iter().flat_map(|s| s.ys.iter().copied()));
    let y_pad = (y_hi_raw - y_lo_raw) * 0.05;
    let (y_lo, y_hi) = (y_lo_raw - y_pad, y_hi_raw + y_pad);

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = move |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = move |y: f64| MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut svg = String::with_capacity(4096);
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    ));

    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{l:.1}\" y1=\"{b:.1}\" x2=\"{r:.1}\" y2=\"{b:.1}\" stroke=\"black\"/>\n\
         <line x1=\"{l:.1}\" y1=\"{t:.1}\" x2=\"{l:.1}\" y2=\"{b:.1}\" stroke=\"black\"/>\n",
        l = MARGIN_LEFT,
        r = WIDTH - MARGIN_RIGHT,
        t = MARGIN_TOP,
        b = HEIGHT - MARGIN_BOTTOM,
    ));

    // Ticks and grid.
    for i in 0..=5 {
        let f = i as f64 / 5.0;
        let xv = x_lo + f * (x_hi - x_lo);
        let yv = y_lo + f * (y_hi - y_lo);
        let xp = sx(xv);
        let yp = sy(yv);
        svg.push_str(&format!(
            "<line x1=\"{xp:.1}\" y1=\"{b:.1}\" x2=\"{xp:.1}\" y2=\"{b2:.1}\" stroke=\"black\"/>\n\
             <text x=\"{xp:.1}\" y=\"{ty:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{xv:.4}</text>\n",
            b = HEIGHT - MARGIN_BOTTOM,
            b2 = HEIGHT - MARGIN_BOTTOM + 5.0,
            ty = HEIGHT - MARGIN_BOTTOM + 18.0,
        ));
        svg.push_str(&format!(
            "<line x1=\"{l2:.1}\" y1=\"{yp:.1}\" x2=\"{l:.1}\" y2=\"{yp:.1}\" stroke=\"black\"/>\n\
             <text x=\"{tx:.1}\" y=\"{typ:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{yv:.4}</text>\n",
            l = MARGIN_LEFT,
            l2 = MARGIN_LEFT - 5.0,
            tx = MARGIN_LEFT - 8.0,
            typ = yp + 4.0,
        ));
    }

    // Axis labels.
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0,
        escape(x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\" transform=\"rotate(-90 18 {mid:.1})\">{}</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        escape(y_label),
        mid = MARGIN_TOP + plot_h / 2.0,
    ));

    // Curves.
    for (idx, s) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let mut points = String::with_capacity(s.xs.len() * 14);
        for (x, y) in s.xs.iter().zip(s.ys) {
            if x.is_finite() && y.is_finite() {
                points.push_str(&format!("{:.2},{:.2} ", sx(*x), sy(*y)));
            }
        }
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.trim_end()
        ));
    }

    // Legend.
    for (idx, s) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let y = MARGIN_TOP + 16.0 + idx as f64 * 16.0;
        let x = WIDTH - MARGIN_RIGHT - 150.0;
        svg.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{y:.1}\" x2=\"{x2:.1}\" y2=\"{y:.1}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n\
             <text x=\"{tx:.1}\" y=\"{ty:.1}\" font-family=\"sans-serif\" \
             font-size=\"12\">{}</text>\n",
            escape(s.label),
            x2 = x + 22.0,
            tx = x + 28.0,
            ty = y + 4.0,
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
