//! Cohort report files: JSON, CSV tables and optional SVG figures.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::analytics::{CohortReport, Histogram};
use crate::error::{Error, Result};
use crate::recommend::csv_field;

pub const REPORT_JSON: &str = "report.json";
pub const DEPTHS_CSV: &str = "depths.csv";
pub const SIZES_CSV: &str = "sizes.csv";
pub const GENERATIONS_CSV: &str = "generations.csv";
pub const VACUUM_CSV: &str = "vacuum_zones.csv";

pub const PLOT_FILES: [&str; 5] = [
    "depth_distribution.svg",
    "size_distribution_log.svg",
    "size_distribution_linear.svg",
    "median_width.svg",
    "relevance.svg",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn depths_csv(r: &CohortReport) -> String {
    let mut s = String::from("depth,count\n");
    for (d, n) in &r.depth_distribution {
        let _ = writeln!(s, "{d},{n}");
    }
    s
}

pub fn sizes_csv(r: &CohortReport) -> String {
    let mut s = String::from("focal_id,depth,size,width\n");
    for c in &r.cascades {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            csv_field(&c.focal_id),
            c.depth,
            c.size,
            c.width
        );
    }
    s
}

pub fn generations_csv(r: &CohortReport) -> String {
    let mut s = String::from("generation,reach_count,median_width,mean_relevance,sample_count\n");
    for g in &r.generation_stats {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            g.generation,
            g.reach_count,
            g.median_width,
            opt(g.mean_relevance),
            g.relevance_sample_count
        );
    }
    s
}

pub fn vacuum_csv(r: &CohortReport) -> String {
    let mut s = String::from("low,high\n");
    for z in &r.vacuum_zones {
        let _ = writeln!(s, "{},{}", z.low, z.high);
    }
    s
}

/// Writes the JSON report and the four CSV tables (plus figures when asked)
/// into `dir`, creating it if needed. Returns the written paths.
pub fn write_report(r: &CohortReport, dir: &Path, emit_plots: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = vec![
        (REPORT_JSON, r.to_json()? + "\n"),
        (DEPTHS_CSV, depths_csv(r)),
        (SIZES_CSV, sizes_csv(r)),
        (GENERATIONS_CSV, generations_csv(r)),
        (VACUUM_CSV, vacuum_csv(r)),
    ];
    if emit_plots {
        files.extend(PLOT_FILES.into_iter().zip(plots(r)));
    }
    let mut written = Vec::new();
    for (name, body) in files {
        let path = dir.join(name);
        fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

/// The five figures, in [`PLOT_FILES`] order.
pub fn plots(r: &CohortReport) -> Vec<String> {
    let depth: Vec<(f64, f64)> = r
        .depth_distribution
        .iter()
        .map(|(&d, &n)| (d as f64, n as f64))
        .collect();
    let hist_points = |h: &Option<Histogram>| -> Vec<(f64, f64)> {
        h.as_ref()
            .map(|h| {
                h.counts
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (h.edges[i], c as f64))
                    .collect()
            })
            .unwrap_or_default()
    };
    let widths: Vec<(f64, f64)> = r
        .generation_stats
        .iter()
        .map(|g| (g.generation as f64, g.median_width))
        .collect();
    let relevance: Vec<(f64, f64)> = r
        .generation_stats
        .iter()
        .filter_map(|g| g.mean_relevance.map(|m| (g.generation as f64, m)))
        .collect();
    vec![
        svg_chart(
            "Cascade depth distribution",
            "depth",
            "papers",
            &depth,
            false,
        ),
        svg_chart(
            "Cascade size distribution (log bins)",
            "size (bin start, log)",
            "papers",
            &hist_points(&r.size_histograms.log),
            true,
        ),
        svg_chart(
            "Cascade size distribution (linear bins)",
            "size (bin start)",
            "papers",
            &hist_points(&r.size_histograms.linear),
            false,
        ),
        svg_chart(
            "Median generation width",
            "generation",
            "median width",
            &widths,
            false,
        ),
        svg_chart(
            "Topic relevance by generation",
            "generation",
            "mean relevance",
            &relevance,
            false,
        ),
    ]
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Minimal static line chart with markers; data values ride along in
/// `data-x`/`data-y` attributes.
fn svg_chart(
    title: &str,
    xlabel: &str,
    ylabel: &str,
    points: &[(f64, f64)],
    log_x: bool,
) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 60.0;
    let tx = |x: f64| if log_x { x.max(1.0).log10() } else { x };
    let (mut x0, mut x1, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for &(x, y) in points {
        x0 = x0.min(tx(x));
        x1 = x1.max(tx(x));
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1) = (0.0, 1.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= 0.0 {
        y1 = 1.0;
    }
    let px = |x: f64| M + (tx(x) - x0) / (x1 - x0) * (W - 2.0 * M);
    let py = |y: f64| H - M - y / y1 * (H - 2.0 * M);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="16">{}</text>"#,
        W / 2.0,
        esc(title)
    );
    let _ = writeln!(
        s,
        r#"<line x1="{M}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        H - M,
        W - M,
        H - M
    );
    let _ = writeln!(
        s,
        r#"<line x1="{M}" y1="{M}" x2="{M}" y2="{}" stroke="black"/>"#,
        H - M
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">{}</text>"#,
        W / 2.0,
        H - 20.0,
        esc(xlabel)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" font-size="12" transform="rotate(-90 16 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        esc(ylabel)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end" font-size="10">{}</text>"#,
        M - 4.0,
        M + 4.0,
        y1
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end" font-size="10">0</text>"#,
        M - 4.0,
        H - M
    );
    if !points.is_empty() {
        let path: Vec<String> = points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
            path.join(" ")
        );
        for &(x, y) in points {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="steelblue" data-x="{x}" data-y="{y}"/>"#,
                px(x),
                py(y)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
