//! Report rows and their JSON/CSV encodings.

use crate::CliError;
use ramlip_core::identities::{IdentityCheckResult, IdentityId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;

/// Non-finite numbers travel as `null` in JSON.
mod nan_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Complex {
    #[serde(with = "nan_as_null")]
    pub re: f64,
    #[serde(with = "nan_as_null")]
    pub im: f64,
}

impl From<ramlip_core::ComplexValue> for Complex {
    fn from(z: ramlip_core::ComplexValue) -> Self {
        Complex { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowDiagnostics {
    pub terms: usize,
    pub cells: usize,
    pub tail_bounds: [Bound; 2],
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Bound(#[serde(with = "nan_as_null")] pub f64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub run_id: String,
    pub identity: IdentityId,
    pub params: BTreeMap<String, Complex>,
    pub lhs: Complex,
    pub rhs: Complex,
    #[serde(with = "nan_as_null")]
    pub abs_residual: f64,
    #[serde(with = "nan_as_null")]
    pub rel_residual: f64,
    pub tolerance: f64,
    pub status: String,
    pub diagnostics: RowDiagnostics,
    pub wall_time_ms: Option<f64>,
}

impl ReportRow {
    pub fn new(run_id: &str, r: &IdentityCheckResult, wall_time_ms: Option<f64>) -> Self {
        ReportRow {
            run_id: run_id.to_string(),
            identity: r.identity,
            params: r.params.iter().map(|(k, v)| (k.clone(), (*v).into())).collect(),
            lhs: r.lhs.into(),
            rhs: r.rhs.into(),
            abs_residual: r.abs_residual,
            rel_residual: r.rel_residual,
            tolerance: r.tolerance,
            status: r.status.as_str().to_string(),
            diagnostics: RowDiagnostics {
                terms: r.diagnostics.terms,
                cells: r.diagnostics.cells,
                tail_bounds: [Bound(r.tail_bounds.0), Bound(r.tail_bounds.1)],
                notes: r.diagnostics.notes.clone(),
                error: r.error.clone(),
            },
            wall_time_ms,
        }
    }
}

fn sig17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "NaN".to_string()
    }
}

/// `identity, <param>_re, <param>_im…, lhs_re, lhs_im, rhs_re, rhs_im, abs_residual, rel_residual, status`.
pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let names: Vec<String> = rows.first().map(|r| r.params.keys().cloned().collect()).unwrap_or_default();
    let mut header = vec!["identity".to_string()];
    for n in &names {
        header.push(format!("{n}_re"));
        header.push(format!("{n}_im"));
    }
    header.extend(
        ["lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_residual", "rel_residual", "status"].map(String::from),
    );
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.identity.to_string()];
        for n in &names {
            let v = r.params.get(n).copied().unwrap_or(Complex { re: f64::NAN, im: f64::NAN });
            rec.push(sig17(v.re));
            rec.push(sig17(v.im));
        }
        for v in [r.lhs.re, r.lhs.im, r.rhs.re, r.rhs.im, r.abs_residual, r.rel_residual] {
            rec.push(sig17(v));
        }
        rec.push(r.status.clone());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ramlip_core::identities::{check_or_record, Params};
    use ramlip_core::{ComplexValue, PrecisionConfig};

    #[test]
    fn rows_round_trip() {
        let cfg = PrecisionConfig::default();
        let mut p = Params::new();
        p.insert("m".into(), ComplexValue::new(3.0, 0.0));
        let ok = check_or_record(IdentityId::Glaisher, &p, &cfg);
        p.insert("m".into(), ComplexValue::new(4.0, 0.0));
        let failed = check_or_record(IdentityId::Glaisher, &p, &cfg);
        assert!(failed.error.is_some());
        for (r, t) in [(ok, Some(1.5)), (failed, None)] {
            let row = ReportRow::new("run", &r, t);
            let text = serde_json::to_string(&row).unwrap();
            let back: ReportRow = serde_json::from_str(&text).unwrap();
            assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }

    #[test]
    fn ids_serialize_as_registry_names() {
        for id in IdentityId::ALL {
            assert_eq!(serde_json::to_value(id).unwrap(), serde_json::Value::from(id.as_str()));
            let back: IdentityId = serde_json::from_value(id.as_str().into()).unwrap();
            assert_eq!(back, id);
        }
    }

    #[test]
    fn csv_columns() {
        let cfg = PrecisionConfig::default();
        let mut p = Params::new();
        p.insert("u".into(), ComplexValue::new(1.0, 0.0));
        let row = ReportRow::new("run", &check_or_record(IdentityId::RaabeDigamma, &p, &cfg), None);
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "identity,u_re,u_im,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,status"
        );
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields[1], "1.0000000000000000e0");
        assert_eq!(fields.len(), 10);
    }
}
