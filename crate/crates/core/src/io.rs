//! Text serialization: point clouds and distance matrices as CSV, barcodes
//! as JSON (null death = infinite interval) or CSV with an `inf` literal.

use crate::error::{Error, Result};
use crate::filtration::ComplexKind;
use crate::metric::{FiniteMetricSpace, PointCloud};
use crate::persistence::{Barcode, Interval};

/// Version stamp embedded in every JSON artifact.
pub const FORMAT_VERSION: u32 = 1;

pub fn cloud_to_csv(pc: &PointCloud) -> String {
    let mut out = String::new();
    for p in pc.points() {
        let row: Vec<String> = p.iter().map(|x| format!("{x}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn cloud_from_csv(text: &str) -> Result<PointCloud> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords: Result<Vec<f64>> = line
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|e| Error::Parse {
                    line: lineno + 1,
                    message: format!("bad coordinate `{}`: {e}", tok.trim()),
                })
            })
            .collect();
        points.push(coords?);
    }
    PointCloud::new(points)
}

pub fn metric_to_csv(fms: &FiniteMetricSpace) -> String {
    let n = fms.len();
    let mut out = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format!("{}", fms.dist(i, j))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn metric_from_csv(text: &str) -> Result<FiniteMetricSpace> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<f64>> = line
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|e| Error::Parse {
                    line: lineno + 1,
                    message: format!("bad distance `{}`: {e}", tok.trim()),
                })
            })
            .collect();
        rows.push(row?);
    }
    FiniteMetricSpace::from_matrix(rows)
}

#[derive(serde::Serialize, serde::Deserialize)]
struct BarcodeDoc {
    format_version: u32,
    kind: ComplexKind,
    reduced: bool,
    intervals: Vec<IntervalDoc>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct IntervalDoc {
    dim: usize,
    birth: f64,
    death: Option<f64>,
}

pub fn barcode_to_json(b: &Barcode) -> String {
    let doc = BarcodeDoc {
        format_version: FORMAT_VERSION,
        kind: b.kind,
        reduced: b.reduced,
        intervals: b
            .intervals
            .iter()
            .map(|iv| IntervalDoc { dim: iv.degree, birth: iv.birth, death: iv.death })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("barcode serialization cannot fail")
}

pub fn barcode_from_json(text: &str) -> Result<Barcode> {
    let doc: BarcodeDoc = serde_json::from_str(text)
        .map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
    Ok(Barcode {
        intervals: doc
            .intervals
            .into_iter()
            .map(|iv| Interval { degree: iv.dim, birth: iv.birth, death: iv.death })
            .collect(),
        reduced: doc.reduced,
        kind: doc.kind,
    })
}

pub fn barcode_to_csv(b: &Barcode) -> String {
    let mut out = String::from("dim,birth,death\n");
    for iv in &b.intervals {
        let death = match iv.death {
            Some(d) => format!("{d}"),
            None => "inf".into(),
        };
        out.push_str(&format!("{},{},{}\n", iv.degree, iv.birth, death));
    }
    out
}
