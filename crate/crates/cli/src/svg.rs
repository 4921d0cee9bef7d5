//! Minimal static line plots written as SVG text.

use std::f64::consts::PI;
use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 160.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

pub struct Plot<'a> {
    pub title: &'a str,
    pub y_label: &'a str,
    pub log_y: bool,
    pub comment: &'a str,
    pub series: &'a [Series],
}

impl Plot<'_> {
    /// Renders the plot with ζ on the x axis, ticked at multiples of π/12.
    pub fn render(&self) -> String {
        let transform = |y: f64| if self.log_y { y.log10() } else { y };
        let usable = |&(x, y): &(f64, f64)| x.is_finite() && y.is_finite() && (!self.log_y || y > 0.0);
        let visible: Vec<(f64, f64)> = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().copied().filter(usable))
            .collect();

        let (x_min, x_max) = bounds(visible.iter().map(|p| p.0)).unwrap_or((0.0, PI / 3.0));
        let (mut y_min, mut y_max) = bounds(visible.iter().map(|p| transform(p.1))).unwrap_or((0.0, 1.0));
        if self.log_y {
            y_min = y_min.floor();
            y_max = y_max.ceil();
        }
        if y_max - y_min < 1e-12 {
            y_min -= 0.5;
            y_max += 0.5;
        }
        let plot_w = WIDTH - LEFT - RIGHT;
        let plot_h = HEIGHT - TOP - BOTTOM;
        let x_span = if x_max > x_min { x_max - x_min } else { 1.0 };
        let px = |x: f64| LEFT + (x - x_min) / x_span * plot_w;
        let py = |y: f64| TOP + (y_max - transform(y)) / (y_max - y_min) * plot_h;
        let py_raw = |t: f64| TOP + (y_max - t) / (y_max - y_min) * plot_h;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, "<!-- {} -->", self.comment.replace("--", "- -"));
        let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
            LEFT + plot_w / 2.0,
            escape(self.title)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
        );

        // x ticks at multiples of π/12 within range
        let mut k = (x_min / (PI / 12.0)).ceil() as i64;
        while (k as f64) * PI / 12.0 <= x_max + 1e-12 {
            let x = k as f64 * PI / 12.0;
            let _ = writeln!(
                s,
                r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="black"/><text x="{0:.2}" y="{3:.2}" text-anchor="middle">{4}</text>"#,
                px(x),
                TOP + plot_h,
                TOP + plot_h + 5.0,
                TOP + plot_h + 20.0,
                pi_label(k)
            );
            k += 1;
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">ζ</text>"#,
            LEFT + plot_w / 2.0,
            HEIGHT - 15.0
        );

        for (t, label) in y_ticks(y_min, y_max, self.log_y) {
            let y = py_raw(t);
            let _ = writeln!(
                s,
                r##"<line x1="{0:.2}" y1="{1:.2}" x2="{2:.2}" y2="{1:.2}" stroke="#dddddd"/><text x="{3:.2}" y="{4:.2}" text-anchor="end">{5}</text>"##,
                LEFT,
                y,
                LEFT + plot_w,
                LEFT - 6.0,
                y + 4.0,
                label
            );
        }
        let _ = writeln!(
            s,
            r#"<text transform="translate(18 {:.1}) rotate(-90)" text-anchor="middle">{}</text>"#,
            TOP + plot_h / 2.0,
            escape(self.y_label)
        );

        for (i, series) in self.series.iter().enumerate() {
            let color = COLORS[i % COLORS.len()];
            let mut d = String::new();
            let mut pen_down = false;
            for p in &series.points {
                if !usable(p) {
                    pen_down = false;
                    continue;
                }
                let _ = write!(d, "{}{:.2},{:.2} ", if pen_down { "L" } else { "M" }, px(p.0), py(p.1));
                pen_down = true;
            }
            let _ = writeln!(
                s,
                r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                d.trim_end()
            );
            let ly = TOP + 16.0 + 18.0 * i as f64;
            let lx = LEFT + plot_w + 12.0;
            let _ = writeln!(
                s,
                r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{}</text>"#,
                lx + 20.0,
                lx + 26.0,
                ly + 4.0,
                escape(&series.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    values.fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}

fn y_ticks(lo: f64, hi: f64, log: bool) -> Vec<(f64, String)> {
    if log {
        return (lo as i64..=hi as i64).map(|e| (e as f64, format!("1e{e}"))).collect();
    }
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let mut ticks = Vec::new();
    let mut t = (lo / step).ceil() * step;
    while t <= hi + step * 1e-9 {
        ticks.push((t, format!("{}", (t / step).round() * step)));
        t += step;
    }
    ticks
}

fn pi_label(k: i64) -> String {
    // k·π/12 reduced
    let g = gcd(k.unsigned_abs(), 12) as i64;
    let (num, den) = (k / g.max(1), 12 / g.max(1));
    match (num, den) {
        (0, _) => "0".into(),
        (1, 1) => "π".into(),
        (n, 1) => format!("{n}π"),
        (1, d) => format!("π/{d}"),
        (n, d) => format!("{n}π/{d}"),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(pi_label(0), "0");
        assert_eq!(pi_label(2), "π/6");
        assert_eq!(pi_label(3), "π/4");
        assert_eq!(pi_label(4), "π/3");
        assert_eq!(pi_label(12), "π");
    }

    #[test]
    fn log_plot_skips_nonpositive_values() {
        let series = [Series {
            label: "a".into(),
            points: vec![(0.0, 1e-3), (0.5, 0.0), (1.0, 1e-2)],
        }];
        let svg = Plot {
            title: "t",
            y_label: "Q",
            log_y: true,
            comment: "c",
            series: &series,
        }
        .render();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(">1e-3<") && svg.contains(">1e-2<"));
        assert_eq!(svg.matches(" M").count() + svg.matches("\"M").count(), 2);
    }

    #[test]
    fn linear_ticks() {
        let t = y_ticks(0.0, 10.0, false);
        assert_eq!(t.first().unwrap().1, "0");
        assert_eq!(t.last().unwrap().1, "10");
    }
}
