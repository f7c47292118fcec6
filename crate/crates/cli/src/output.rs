//! Artifact emission: atomic file writes, the manifest and SVG line plots.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};
use spinon::io::write_atomic;

use crate::config::{CommandKind, Params};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

impl Artifact {
    pub fn new(name: &str, contents: String) -> Self {
        Self {
            name: name.to_string(),
            contents,
        }
    }
}

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    command: &'a str,
    parameters: &'a Params,
    versions: BTreeMap<&'static str, &'static str>,
    checksums: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes every artifact, then the manifest. Returns the manifest text.
pub fn write_artifacts(dir: &Path, command: CommandKind, params: &Params, artifacts: &[Artifact]) -> Result<String, CliError> {
    fs::create_dir_all(dir)?;
    let mut checksums = BTreeMap::new();
    for a in artifacts {
        write_atomic(&dir.join(&a.name), a.contents.as_bytes())?;
        checksums.insert(a.name.clone(), sha256_hex(a.contents.as_bytes()));
    }
    // the output location is not part of the result
    let mut recorded = params.clone();
    recorded.out = None;
    recorded.command = None;
    let manifest = Manifest {
        command: command.name(),
        parameters: &recorded,
        versions: BTreeMap::from([
            ("spinon", spinon::VERSION),
            ("spinon-cli", env!("CARGO_PKG_VERSION")),
        ]),
        checksums,
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    write_atomic(&dir.join(MANIFEST_NAME), text.as_bytes())?;
    Ok(text)
}

/// Minimal SVG with one polyline per series, axes scaled to the data.
pub fn line_plot(title: &str, x_label: &str, y_label: &str, series: &[(&str, Vec<(f64, f64)>)]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 420.0;
    const M: f64 = 60.0;
    const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    let pts = series.iter().flat_map(|(_, p)| p.iter()).filter(|(x, y)| x.is_finite() && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !(x1 > x0) {
        x1 = x0 + 1.0;
    }
    if !(y1 > y0) {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">{}</text>\n\
         <rect x=\"{M}\" y=\"{M}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        W / 2.0,
        escape(title),
        W - 2.0 * M,
        H - 2.0 * M
    );
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
        W / 2.0,
        H - 15.0,
        escape(x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"15\" y=\"{}\" transform=\"rotate(-90 15 {})\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
        H / 2.0,
        H / 2.0,
        escape(y_label)
    ));
    for (v, x, y, anchor) in [
        (x0, sx(x0), H - M + 16.0, "start"),
        (x1, sx(x1), H - M + 16.0, "end"),
        (y0, M - 6.0, sy(y0), "end"),
        (y1, M - 6.0, sy(y1) + 10.0, "end"),
    ] {
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{y:.2}\" text-anchor=\"{anchor}\" font-family=\"sans-serif\" font-size=\"10\">{}</text>\n",
            short(v)
        ));
    }
    for (k, (name, p)) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let coords: Vec<String> = p
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            coords.join(" ")
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" fill=\"{color}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
            M + 8.0,
            M + 16.0 + 14.0 * k as f64,
            escape(name)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn short(v: f64) -> String {
    let s = format!("{v:.4e}");
    // trim the long round-trip form, labels only
    if v.abs() >= 1e-3 && v.abs() < 1e4 || v == 0.0 {
        format!("{v:.4}")
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
