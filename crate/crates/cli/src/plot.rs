//! Figure output for the first-negative table: CSV data and a small SVG.

use std::fmt::Write;

use koszul_core::analysis::FirstNegativeResult;

/// Header `n,p`; `p` is empty when no negative coefficient was found.
pub fn csv(rows: &[FirstNegativeResult]) -> String {
    let mut out = String::from("n,p\n");
    for r in rows {
        let p = r.p_index.map(|p| p.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{p}", r.n);
    }
    out
}

const W: f64 = 480.0;
const H: f64 = 320.0;
const LEFT: f64 = 56.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 24.0;
const BOTTOM: f64 = 48.0;

/// Points `(n, p)` with a logarithmic p axis; rows without a negative
/// coefficient are drawn as open circles on the top edge.
pub fn svg(rows: &[FirstNegativeResult]) -> String {
    let ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    let (n_min, n_max) = (
        *ns.iter().min().unwrap_or(&2) as f64,
        *ns.iter().max().unwrap_or(&2) as f64,
    );
    let p_max = rows
        .iter()
        .filter_map(|r| r.p_index)
        .max()
        .unwrap_or(1)
        .max(10) as f64;
    let decades = p_max.log10().ceil().max(1.0);
    let x = |n: f64| {
        let span = (n_max - n_min).max(1.0);
        LEFT + (n - n_min + 0.5) / (span + 1.0) * (W - LEFT - RIGHT)
    };
    let y = |p: f64| TOP + (1.0 - p.max(1.0).log10() / decades) * (H - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let base = H - BOTTOM;
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#,
        W - RIGHT
    );
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{base}" stroke="black"/>"#
    );
    for k in 0..=decades as u32 {
        let v = 10f64.powi(k as i32);
        let yy = y(v);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{yy:.1}" x2="{LEFT}" y2="{yy:.1}" stroke="black"/>"#,
            LEFT - 4.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.1}" text-anchor="end">{v}</text>"#,
            LEFT - 8.0,
            yy + 4.0
        );
    }
    for r in rows {
        let xx = x(r.n as f64);
        let _ = writeln!(
            s,
            r#"<text x="{xx:.1}" y="{}" text-anchor="middle">{}</text>"#,
            base + 18.0,
            r.n
        );
        match r.p_index {
            Some(p) => {
                let yy = y(p as f64);
                let _ = writeln!(
                    s,
                    r#"<circle cx="{xx:.1}" cy="{yy:.1}" r="4" fill="black"/>"#
                );
                let _ = writeln!(
                    s,
                    r#"<text x="{:.1}" y="{:.1}">{p}</text>"#,
                    xx + 7.0,
                    yy - 6.0
                );
            }
            None => {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{xx:.1}" cy="{TOP}" r="4" fill="none" stroke="black"/>"#
                );
                let _ = writeln!(
                    s,
                    r#"<text x="{:.1}" y="{:.1}">∞?</text>"#,
                    xx + 7.0,
                    TOP + 4.0
                );
            }
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{}" text-anchor="middle">n</text>"#,
        (LEFT + W - RIGHT) / 2.0,
        H - 8.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.1}" text-anchor="middle" transform="rotate(-90 14 {:.1})">p</text>"#,
        (TOP + base) / 2.0,
        (TOP + base) / 2.0
    );
    s.push_str("</svg>\n");
    s
}
