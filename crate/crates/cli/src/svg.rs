//! Static SVG rendering of persistence barcodes.

use std::fmt::Write as _;

use qtopo::homology::Barcode;

use qtopo::homology::export::fmt_sig;

const WIDTH: f64 = 720.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 30.0;
const ROW: f64 = 12.0;
const GROUP_GAP: f64 = 18.0;
const AXIS_SPACE: f64 = 40.0;
const TICKS: usize = 5;

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// One bar per interval, grouped by dimension from the top; essential bars run to the
/// right edge of the axis and end in an arrowhead.
pub fn render_svg(barcode: &Barcode<f64>, title: &str) -> String {
    let finite_max = barcode
        .intervals
        .iter()
        .flat_map(|i| [Some(i.birth), i.death])
        .flatten()
        .fold(0.0f64, f64::max);
    let x_max = if finite_max > 0.0 { finite_max * 1.15 } else { 1.0 };
    let plot_w = WIDTH - LEFT - RIGHT;
    let x = |v: f64| LEFT + plot_w * v / x_max;

    let dims: Vec<usize> = match barcode.max_dim() {
        Some(top) => (0..=top).filter(|&k| barcode.in_dim(k).next().is_some()).collect(),
        None => Vec::new(),
    };
    let rows: usize = dims.iter().map(|&k| barcode.in_dim(k).count()).sum();
    let plot_h = rows as f64 * ROW + dims.len().saturating_sub(1) as f64 * GROUP_GAP;
    let height = TOP + plot_h + AXIS_SPACE + 10.0;
    let axis_y = TOP + plot_h + 8.0;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(s, r#"<text x="{LEFT}" y="18" font-size="13">{}</text>"#, escape(title)).unwrap();

    let mut y = TOP;
    for (gi, &k) in dims.iter().enumerate() {
        if gi > 0 {
            y += GROUP_GAP;
        }
        let color = COLORS[k % COLORS.len()];
        let group_top = y;
        for interval in barcode.in_dim(k) {
            let cy = y + ROW / 2.0;
            let x0 = x(interval.birth);
            match interval.death {
                Some(d) => {
                    writeln!(
                        s,
                        r#"<line x1="{:.2}" y1="{cy:.2}" x2="{:.2}" y2="{cy:.2}" stroke="{color}" stroke-width="6"/>"#,
                        x0,
                        x(d)
                    )
                    .unwrap();
                }
                None => {
                    let end = LEFT + plot_w;
                    writeln!(
                        s,
                        r#"<line x1="{x0:.2}" y1="{cy:.2}" x2="{:.2}" y2="{cy:.2}" stroke="{color}" stroke-width="6"/>"#,
                        end - 8.0
                    )
                    .unwrap();
                    writeln!(
                        s,
                        r#"<polygon points="{:.2},{:.2} {end:.2},{cy:.2} {:.2},{:.2}" fill="{color}"/>"#,
                        end - 9.0,
                        cy - 5.0,
                        end - 9.0,
                        cy + 5.0
                    )
                    .unwrap();
                }
            }
            y += ROW;
        }
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">H{k}</text>"#,
            LEFT - 8.0,
            (group_top + y) / 2.0 + 4.0
        )
        .unwrap();
    }

    writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{axis_y:.2}" x2="{:.2}" y2="{axis_y:.2}" stroke="black"/>"#,
        LEFT + plot_w
    )
    .unwrap();
    for t in 0..=TICKS {
        let v = x_max * t as f64 / TICKS as f64;
        let tx = x(v);
        writeln!(s, r#"<line x1="{tx:.2}" y1="{axis_y:.2}" x2="{tx:.2}" y2="{:.2}" stroke="black"/>"#, axis_y + 4.0)
            .unwrap();
        writeln!(s, r#"<text x="{tx:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, axis_y + 16.0, fmt_sig(v, 4))
            .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">&#949;</text>"#,
        LEFT + plot_w / 2.0,
        axis_y + 32.0
    )
    .unwrap();
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
