use std::io::{self, Write};

use serde::Serialize;

use super::model::Param;
use super::SweepRecord;

pub const CSV_HEADER: &str =
    "model,delta_e,omega,lambda1,lambda2,delta_tau,temperature,p1,p2,tau1,tau2,kappa_re,kappa_im,visibility";

/// Shortest representation that parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

fn csv_row(r: &SweepRecord) -> String {
    let mut row = String::from(r.model.name());
    for v in r.params.values() {
        row.push(',');
        if let Some(v) = v {
            row.push_str(&format_float(*v));
        }
    }
    for v in [r.kappa.re, r.kappa.im, r.visibility] {
        row.push(',');
        row.push_str(&format_float(v));
    }
    row
}

pub fn write_csv<W: Write>(mut out: W, records: &[SweepRecord]) -> io::Result<()> {
    out.write_all(CSV_HEADER.as_bytes())?;
    out.write_all(b"\n")?;
    for r in records {
        out.write_all(csv_row(r).as_bytes())?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    model: &'a str,
    delta_e: Option<f64>,
    omega: Option<f64>,
    lambda1: Option<f64>,
    lambda2: Option<f64>,
    delta_tau: Option<f64>,
    temperature: Option<f64>,
    p1: Option<f64>,
    p2: Option<f64>,
    tau1: Option<f64>,
    tau2: Option<f64>,
    kappa_re: f64,
    kappa_im: f64,
    visibility: f64,
}

impl<'a> From<&'a SweepRecord> for JsonRecord<'a> {
    fn from(r: &'a SweepRecord) -> Self {
        let g = |p| r.params.get(p);
        Self {
            model: r.model.name(),
            delta_e: g(Param::DeltaE),
            omega: g(Param::Omega),
            lambda1: g(Param::Lambda1),
            lambda2: g(Param::Lambda2),
            delta_tau: g(Param::DeltaTau),
            temperature: g(Param::Temperature),
            p1: g(Param::P1),
            p2: g(Param::P2),
            tau1: g(Param::Tau1),
            tau2: g(Param::Tau2),
            kappa_re: r.kappa.re,
            kappa_im: r.kappa.im,
            visibility: r.visibility,
        }
    }
}

/// JSON array of records; unused parameters are `null`.
pub fn write_json<W: Write>(mut out: W, records: &[SweepRecord]) -> io::Result<()> {
    let rows: Vec<JsonRecord> = records.iter().map(JsonRecord::from).collect();
    serde_json::to_writer_pretty(&mut out, &rows)?;
    out.write_all(b"\n")?;
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{Bindings, Model};
    use num_complex::Complex;

    fn record() -> SweepRecord {
        let mut b = Bindings::default();
        b.set(Param::DeltaE, 1.0);
        b.set(Param::DeltaTau, 0.1);
        SweepRecord::evaluate(Model::Noiseless, b).unwrap()
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[record()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("noiseless,1.0,,,,0.1,,,,,,"));
        assert_eq!(lines[1].split(',').count(), 14);
        assert_eq!(lines[2], "");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.8775825618903728] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let digits = s
                .chars()
                .take_while(|c| *c != 'e')
                .filter(|c| c.is_ascii_digit())
                .count();
            assert!(digits <= 18, "{s}");
        }
    }

    #[test]
    fn json_uses_nulls() {
        let mut r = record();
        r.kappa = Complex::new(0.5, 0.25);
        let mut buf = Vec::new();
        write_json(&mut buf, &[r]).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v[0]["model"], "noiseless");
        assert!(v[0]["omega"].is_null());
        assert_eq!(v[0]["kappa_im"], 0.25);
    }
}
