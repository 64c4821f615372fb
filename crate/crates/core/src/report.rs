//! CSV and SVG output for experiment summaries.

use std::fmt::Write as _;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::experiment::TrialSummary;

pub const CSV_HEADER: [&str; 6] = ["param", "p10", "p50", "p90", "infinite_fraction", "trials"];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One header line and one line per summary; missing percentiles are empty
/// fields.
pub fn emit_csv<W: Write>(summaries: &[TrialSummary], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for s in summaries {
        w.write_record([
            s.param.to_string(),
            opt(s.p10),
            opt(s.p50),
            opt(s.p90),
            s.infinite_fraction.to_string(),
            s.trials.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads what [`emit_csv`] writes.
pub fn read_csv<R: Read>(source: R) -> Result<Vec<TrialSummary>> {
    let mut r = csv::Reader::from_reader(source);
    if r.headers()?.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(Error::Parse { line: 1, message: format!("expected header {}", CSV_HEADER.join(",")) });
    }
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let bad = |name: &str| Error::Parse { line, message: format!("invalid {name}") };
        let get = |k: usize| rec.get(k).ok_or_else(|| bad(CSV_HEADER[k]));
        let maybe = |k: usize| -> Result<Option<f64>> {
            let raw = get(k)?;
            if raw.is_empty() {
                Ok(None)
            } else {
                raw.parse().map(Some).map_err(|_| bad(CSV_HEADER[k]))
            }
        };
        out.push(TrialSummary {
            param: get(0)?.parse().map_err(|_| bad("param"))?,
            p10: maybe(1)?,
            p50: maybe(2)?,
            p90: maybe(3)?,
            infinite_fraction: get(4)?.parse().map_err(|_| bad("infinite_fraction"))?,
            trials: get(5)?.parse().map_err(|_| bad("trials"))?,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    /// Draw a dashed guide at this height (1 for relative estimates).
    pub reference: Option<f64>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            title: String::new(),
            x_label: "parameter".into(),
            y_label: "N\u{302}/N".into(),
            log_x: false,
            reference: Some(1.0),
        }
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn tick(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

/// Grey 10th-90th percentile band with a dotted median line. Grid points
/// without finite estimates are left out of the band.
pub fn emit_svg_band<W: Write>(summaries: &[TrialSummary], opts: &SvgOptions, mut out: W) -> Result<()> {
    if summaries.is_empty() {
        return Err(Error::param("nothing to plot"));
    }
    if opts.log_x && summaries.iter().any(|s| s.param == 0) {
        return Err(Error::param("log x axis needs positive parameters"));
    }
    let xf = |p: usize| if opts.log_x { (p as f64).log10() } else { p as f64 };
    let (mut x0, mut x1) = summaries.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| {
        (a.min(xf(s.param)), b.max(xf(s.param)))
    });
    if x1 <= x0 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    let banded: Vec<&TrialSummary> = summaries.iter().filter(|s| s.p10.is_some() && s.p90.is_some()).collect();
    let mut y1 = banded.iter().filter_map(|s| s.p90).fold(opts.reference.unwrap_or(0.0), f64::max);
    y1 = if y1 > 0.0 { y1 * 1.1 } else { 1.0 };
    let y0 = 0.0f64.min(banded.iter().filter_map(|s| s.p10).fold(0.0, f64::min));
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * (WIDTH - LEFT - RIGHT);
    let py = |y: f64| HEIGHT - BOTTOM - (y - y0) / (y1 - y0) * (HEIGHT - TOP - BOTTOM);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    if !banded.is_empty() {
        let mut pts: Vec<String> = banded.iter().map(|s| format!("{:.2},{:.2}", px(xf(s.param)), py(s.p90.unwrap_or(0.0)))).collect();
        pts.extend(banded.iter().rev().map(|s| format!("{:.2},{:.2}", px(xf(s.param)), py(s.p10.unwrap_or(0.0)))));
        let _ = writeln!(svg, r##"<polygon points="{}" fill="#c8c8c8" stroke="#a0a0a0" stroke-width="1"/>"##, pts.join(" "));
        let median: Vec<String> = banded
            .iter()
            .filter_map(|s| s.p50.map(|m| format!("{:.2},{:.2}", px(xf(s.param)), py(m))))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5" stroke-dasharray="2,3"/>"#,
            median.join(" ")
        );
    }
    if let Some(r) = opts.reference {
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#606060" stroke-dasharray="6,4"/>"##,
            px(x0),
            py(r),
            px(x1),
            py(r)
        );
    }
    let (bx, by) = (LEFT, HEIGHT - BOTTOM);
    let _ = writeln!(svg, r#"<line x1="{bx}" y1="{by}" x2="{}" y2="{by}" stroke="black"/>"#, WIDTH - RIGHT);
    let _ = writeln!(svg, r#"<line x1="{bx}" y1="{by}" x2="{bx}" y2="{TOP}" stroke="black"/>"#);
    for i in 0..=4 {
        let fx = x0 + (x1 - x0) * i as f64 / 4.0;
        let label = if opts.log_x { tick(10f64.powf(fx)) } else { tick(fx) };
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{}" font-size="11" text-anchor="middle">{label}</text>"#,
            px(fx),
            by + 16.0
        );
        let fy = y0 + (y1 - y0) * i as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
            bx - 6.0,
            py(fy) + 4.0,
            tick(fy)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{}" font-size="13" text-anchor="middle">{}</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        HEIGHT - 12.0,
        escape(&opts.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        (TOP + HEIGHT - BOTTOM) / 2.0,
        (TOP + HEIGHT - BOTTOM) / 2.0,
        escape(&opts.y_label)
    );
    if !opts.title.is_empty() {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="24" font-size="14" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            escape(&opts.title)
        );
    }
    svg.push_str("</svg>\n");
    out.write_all(svg.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(param: usize, band: Option<(f64, f64, f64)>, inf: f64) -> TrialSummary {
        TrialSummary {
            param,
            p10: band.map(|b| b.0),
            p50: band.map(|b| b.1),
            p90: band.map(|b| b.2),
            infinite_fraction: inf,
            trials: 10,
        }
    }

    #[test]
    fn csv_layout_and_round_trip() {
        let rows = [row(5, Some((0.5, 1.0, 1.25)), 0.0), row(50, None, 1.0)];
        let mut buf = Vec::new();
        emit_csv(&rows[..1], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "param,p10,p50,p90,infinite_fraction,trials\n5,0.5,1,1.25,0,10\n");
        let mut buf = Vec::new();
        emit_csv(&rows, &mut buf).unwrap();
        assert!(String::from_utf8_lossy(&buf).ends_with("50,,,,1,10\n"));
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
        assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn svg_is_deterministic_and_handles_flat_bands() {
        let rows = [row(1, Some((0.8, 0.9, 1.1)), 0.0), row(10, Some((1.0, 1.0, 1.0)), 0.1), row(100, None, 1.0)];
        let opts = SvgOptions { title: "a < b".into(), log_x: true, ..SvgOptions::default() };
        let render = || {
            let mut buf = Vec::new();
            emit_svg_band(&rows, &opts, &mut buf).unwrap();
            String::from_utf8(buf).unwrap()
        };
        let svg = render();
        assert_eq!(svg, render());
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(svg.contains("<polygon") && svg.contains("stroke-dasharray=\"2,3\""));
        assert!(svg.contains("a &lt; b"));
        let single = [row(3, Some((2.0, 2.0, 2.0)), 0.0)];
        assert!(emit_svg_band(&single, &SvgOptions::default(), Vec::new()).is_ok());
        assert!(emit_svg_band(&[], &SvgOptions::default(), Vec::new()).is_err());
    }
}
