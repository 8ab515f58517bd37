//! File formats and the JSON report document.
//!
//! Curve files are plain text, full decimal precision:
//!
//! ```text
//! ROPEKIT-LINK v1
//! <component count>
//! <vertex count of component 0>
//! x y z
//! ...
//! ```

use crate::bounds::BoundReport;
use crate::cones::{ConeReport, PushoffCheck};
use crate::geom::{Component, GeomError, PolyLink, Vec3};
use crate::invariants::LinkInvariants;
use crate::lattice::{LatticeReport, SmoothCertificate};
use crate::minimizer::HistoryEntry;
use crate::thickness::Witness;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};
use thiserror::Error;

pub const CURVE_HEADER: &str = "ROPEKIT-LINK v1";

#[derive(Debug, Error)]
pub enum FileError {
    #[error("bad header: expected '{CURVE_HEADER}', got '{0}'")]
    BadHeader(String),
    #[error("count mismatch: {0}")]
    CountMismatch(String),
    #[error("non-finite coordinate on line {0}")]
    NonFinite(usize),
    #[error("parse error on line {line}: {text}")]
    Parse { line: usize, text: String },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Write a link in the curve format, shortest round-trip float precision.
pub fn save_link(link: &PolyLink, mut w: impl Write) -> Result<(), FileError> {
    writeln!(w, "{CURVE_HEADER}")?;
    writeln!(w, "{}", link.num_components())?;
    for comp in link.components() {
        writeln!(w, "{}", comp.len())?;
        for v in comp.vertices() {
            writeln!(w, "{} {} {}", v.x, v.y, v.z)?;
        }
    }
    Ok(())
}

pub fn load_link(r: impl BufRead) -> Result<PolyLink, FileError> {
    let mut lines = r.lines().enumerate();
    let mut next_content = || -> Result<(usize, String), FileError> {
        for (no, line) in lines.by_ref() {
            let line = line?;
            let t = line.trim().to_string();
            if !t.is_empty() {
                return Ok((no + 1, t));
            }
        }
        Err(FileError::CountMismatch("unexpected end of file".into()))
    };
    let (_, header) = next_content()?;
    if header != CURVE_HEADER {
        return Err(FileError::BadHeader(header));
    }
    let (line, count_s) = next_content()?;
    let ncomp: usize = count_s.parse().map_err(|_| FileError::Parse {
        line,
        text: count_s.clone(),
    })?;
    if ncomp == 0 {
        return Err(FileError::CountMismatch("zero components".into()));
    }
    let mut comps = Vec::with_capacity(ncomp);
    for _ in 0..ncomp {
        let (line, vcount_s) = next_content()?;
        let nvert: usize = vcount_s.parse().map_err(|_| FileError::Parse {
            line,
            text: vcount_s.clone(),
        })?;
        let mut verts = Vec::with_capacity(nvert);
        for _ in 0..nvert {
            let (line, coords) = next_content()?;
            let parts: Vec<&str> = coords.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(FileError::Parse { line, text: coords });
            }
            let mut v = [0.0f64; 3];
            for (k, p) in parts.iter().enumerate() {
                v[k] = p.parse().map_err(|_| FileError::Parse {
                    line,
                    text: coords.clone(),
                })?;
                if !v[k].is_finite() {
                    return Err(FileError::NonFinite(line));
                }
            }
            verts.push(Vec3::new(v[0], v[1], v[2]));
        }
        comps.push(Component::new(verts)?);
    }
    Ok(PolyLink::new(comps)?)
}

pub fn save_link_to_path(link: &PolyLink, path: &std::path::Path) -> Result<(), FileError> {
    let f = std::fs::File::create(path)?;
    save_link(link, std::io::BufWriter::new(f))
}

pub fn load_link_from_path(path: &std::path::Path) -> Result<PolyLink, FileError> {
    let f = std::fs::File::open(path)?;
    load_link(std::io::BufReader::new(f))
}

// ---------------------------------------------------------------------------
// Report document
// ---------------------------------------------------------------------------

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct GeometrySection {
    pub length: f64,
    pub component_lengths: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thickness: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ropelength: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minrad: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dcsd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl GeometrySection {
    pub fn from_report(link: &PolyLink, rep: &crate::thickness::ThicknessReport) -> Self {
        GeometrySection {
            length: link.length(),
            component_lengths: link.components().iter().map(|c| c.length()).collect(),
            thickness: finite(rep.thickness),
            ropelength: finite(rep.ropelength),
            minrad: finite(rep.minrad_value),
            dcsd: finite(rep.dcsd_value),
            witness: Some(rep.witness),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct MinimizeSection {
    pub iterations: usize,
    pub stagnated: bool,
    pub initial_ropelength: f64,
    pub final_ropelength: f64,
    pub history_len: usize,
    pub last: Option<HistoryEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct LatticeSection {
    pub crossings: usize,
    pub components: usize,
    pub total_length: usize,
    pub verify: Option<LatticeReport>,
    pub smooth: Option<SmoothCertificate>,
    pub edge_levels: Vec<(u32, i64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    pub parameters: String,
    pub seed: u64,
}

/// The structured output of every CLI subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometrySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<LinkInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pushoff: Option<PushoffCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unfold: Option<UnfoldSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimize: Option<MinimizeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSection>,
    pub provenance: Provenance,
}

impl ReportDocument {
    pub fn new(parameters: String, seed: u64) -> Self {
        ReportDocument {
            geometry: None,
            invariants: None,
            cone: None,
            pushoff: None,
            unfold: None,
            bounds: None,
            minimize: None,
            lattice: None,
            provenance: Provenance {
                tool_version: crate::VERSION.to_string(),
                parameters,
                seed,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct UnfoldSection {
    pub source_length: f64,
    pub developed_length: f64,
    pub cone_angle: f64,
    pub closes: bool,
    /// Worst chord contraction over sampled pairs (nonnegative means no
    /// chord shrank).
    pub min_chord_margin: f64,
    pub sampled_pairs: usize,
}

/// Machine-readable error envelope printed by the CLI on failure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorObject {
    pub error: ErrorBody,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

impl ErrorObject {
    pub fn new(kind: &str, message: impl ToString) -> Self {
        ErrorObject {
            error: ErrorBody {
                kind: kind.to_string(),
                message: message.to_string(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn round_trip_chain() {
        let cfg = generators::simple_chain(2, 64).unwrap();
        let mut buf = Vec::new();
        save_link(&cfg.link, &mut buf).unwrap();
        let back = load_link(std::io::Cursor::new(&buf)).unwrap();
        assert_eq!(cfg.link, back);
        // byte stability
        let mut buf2 = Vec::new();
        save_link(&back, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn truncated_file_errors() {
        let cfg = generators::simple_chain(2, 16).unwrap();
        let mut buf = Vec::new();
        save_link(&cfg.link, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let cut: String = text.lines().take(10).collect::<Vec<_>>().join("\n");
        assert!(load_link(std::io::Cursor::new(cut.as_bytes())).is_err());
    }

    #[test]
    fn bad_header_and_nan_rejected() {
        let bad = "NOT-A-LINK\n1\n3\n0 0 0\n1 0 0\n0 1 0\n";
        assert!(matches!(
            load_link(std::io::Cursor::new(bad.as_bytes())),
            Err(FileError::BadHeader(_))
        ));
        let nan = format!("{CURVE_HEADER}\n1\n3\n0 0 0\nNaN 0 0\n0 1 0\n");
        assert!(matches!(
            load_link(std::io::Cursor::new(nan.as_bytes())),
            Err(FileError::NonFinite(_))
        ));
    }

    #[test]
    fn report_serializes() {
        let mut doc = ReportDocument::new("thickness".into(), 0);
        let link = generators::circle(64, 1.0);
        let rep = crate::thickness::thickness(&link);
        doc.geometry = Some(GeometrySection::from_report(&link, &rep));
        let s = serde_json::to_string_pretty(&doc).unwrap();
        let back: ReportDocument = serde_json::from_str(&s).unwrap();
        assert_eq!(back.provenance.tool_version, crate::VERSION);
        assert!(back.geometry.unwrap().thickness.is_some());
    }
}
