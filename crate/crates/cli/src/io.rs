//! JSON-lines and CSV serialization of solution records.
//!
//! The JSONL form is the interchange format: one object per line with the
//! fixed key order `eq, b, k, x, y, z[, t], tags`, integers printed in full
//! (they can exceed 64 bits), `t` present only for the triple-product cube
//! equation. Serialization is byte-deterministic and `from_jsonl` inverts it
//! exactly.

use std::str::FromStr;

use num_bigint::BigInt;

use blockprod_core::pellfam::EquationId;
use blockprod_core::search::{SolutionRecord, Tags};

/// One record as a canonical JSONL line (no trailing newline).
pub fn to_jsonl(r: &SolutionRecord) -> String {
    let mut s = format!(
        "{{\"eq\":\"{}\",\"b\":{},\"k\":{},\"x\":{},\"y\":{},\"z\":{}",
        r.eq.as_str(),
        r.b,
        r.k,
        r.x,
        r.y,
        r.z
    );
    if let Some(t) = &r.t {
        s.push_str(&format!(",\"t\":{t}"));
    }
    s.push_str(",\"tags\":[");
    let names = r.tags.names();
    for (i, name) in names.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push('"');
        s.push_str(name);
        s.push('"');
    }
    s.push_str("]}");
    s
}

fn bigint_field(v: &serde_json::Value, key: &str) -> Result<BigInt, String> {
    let n = v
        .get(key)
        .and_then(|f| f.as_number())
        .ok_or_else(|| format!("missing integer field `{key}`"))?;
    // arbitrary_precision keeps the exact digit string
    BigInt::from_str(&n.to_string()).map_err(|e| format!("field `{key}`: {e}"))
}

/// Parse a canonical JSONL line back into a record.
pub fn from_jsonl(line: &str) -> Result<SolutionRecord, String> {
    let v: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let eq_str = v
        .get("eq")
        .and_then(|f| f.as_str())
        .ok_or("missing `eq` field")?;
    let eq = EquationId::from_str(eq_str).map_err(|e| e.to_string())?;
    let t = if v.get("t").is_some() {
        Some(bigint_field(&v, "t")?)
    } else {
        None
    };
    let mut tags = Tags::none();
    if let Some(arr) = v.get("tags").and_then(|f| f.as_array()) {
        for tag in arr {
            match tag.as_str() {
                Some("degenerate") => tags.degenerate = true,
                Some("fibonacci") => tags.fibonacci = true,
                Some("trivial") => tags.trivial = true,
                other => return Err(format!("unknown tag {other:?}")),
            }
        }
    } else {
        return Err("missing `tags` field".into());
    }
    Ok(SolutionRecord {
        eq,
        b: bigint_field(&v, "b")?,
        k: bigint_field(&v, "k")?,
        x: bigint_field(&v, "x")?,
        y: bigint_field(&v, "y")?,
        z: bigint_field(&v, "z")?,
        t,
        tags,
    })
}

pub const CSV_HEADER: &str = "eq,b,k,x,y,z,t,tags";

/// One record as a CSV row matching [`CSV_HEADER`]; tags joined with `;`.
pub fn to_csv_row(r: &SolutionRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        r.eq.as_str(),
        r.b,
        r.k,
        r.x,
        r.y,
        r.z,
        r.t.as_ref().map(|t| t.to_string()).unwrap_or_default(),
        r.tags.names().join(";")
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Default)]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
}

/// Write records in the chosen format.
pub fn write_records(
    out: &mut dyn std::io::Write,
    records: &[SolutionRecord],
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Jsonl => {
            for r in records {
                writeln!(out, "{}", to_jsonl(r))?;
            }
        }
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                writeln!(out, "{}", to_csv_row(r))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_matches_the_documented_shape() {
        let r = SolutionRecord::from_u64(EquationId::Z2, 3, 7, 5, 12, 360);
        assert_eq!(
            to_jsonl(&r),
            r#"{"eq":"z2","b":3,"k":7,"x":5,"y":12,"z":360,"tags":[]}"#
        );
    }

    #[test]
    fn jsonl_roundtrip_with_tags_and_t() {
        let mut r = SolutionRecord::from_u64(EquationId::TripleCube, 0, 0, 2, 5, 9);
        r.t = Some(BigInt::from(30));
        r.tags.fibonacci = true;
        let line = to_jsonl(&r);
        assert!(line.contains("\"t\":30"));
        assert_eq!(from_jsonl(&line).unwrap(), r);
    }

    #[test]
    fn jsonl_roundtrip_beyond_u64() {
        let mut r = SolutionRecord::from_u64(EquationId::Z2, 5, 98, 3605, 3703, 0);
        r.z = BigInt::from_str("123456789012345678901234567890").unwrap();
        assert_eq!(from_jsonl(&to_jsonl(&r)).unwrap(), r);
    }

    #[test]
    fn csv_row_shape() {
        let r = SolutionRecord::from_u64(EquationId::Ratio, 0, 0, 48, 1, 140);
        assert_eq!(to_csv_row(&r), "ratio,0,0,48,1,140,,");
    }
}
