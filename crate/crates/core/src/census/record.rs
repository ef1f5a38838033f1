use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// One analyzed graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub graph6: String,
    pub n: usize,
    pub aut_order: u64,
    pub commutant_dim: usize,
    pub hidden: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockProfile {
    pub dims: Vec<usize>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub n: usize,
    /// Graph classes considered (equal to `total_connected` unless disconnected graphs are included).
    pub total_graphs: usize,
    pub total_connected: usize,
    pub total_asymmetric: usize,
    pub total_hidden: usize,
    /// Block profiles of the hidden-symmetry graphs.
    pub distinct_block_profiles: Vec<BlockProfile>,
}

impl CensusSummary {
    pub fn from_records(
        n: usize,
        total_graphs: usize,
        total_connected: usize,
        records: &[CensusRecord],
    ) -> Self {
        let mut profiles: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
        for r in records.iter().filter(|r| r.hidden) {
            if let Some(d) = &r.block_dims {
                *profiles.entry(d.clone()).or_default() += 1;
            }
        }
        CensusSummary {
            n,
            total_graphs,
            total_connected,
            total_asymmetric: records.iter().filter(|r| r.aut_order == 1).count(),
            total_hidden: records.iter().filter(|r| r.hidden).count(),
            distinct_block_profiles: profiles
                .into_iter()
                .map(|(dims, count)| BlockProfile { dims, count })
                .collect(),
        }
    }
}

fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// A record line: its JSON object with an added `sha256` of the record's own encoding.
pub fn encode_record(r: &CensusRecord) -> String {
    let body = serde_json::to_string(r).expect("record serializes");
    let hash = digest(&body);
    format!("{},\"sha256\":\"{hash}\"}}", &body[..body.len() - 1])
}

pub fn encode_summary(s: &CensusSummary) -> String {
    serde_json::json!({ "summary": s }).to_string()
}

/// A parsed checkpoint line.
pub enum Line {
    Record(CensusRecord),
    Summary(CensusSummary),
}

pub fn decode_line(text: &str, line: usize) -> Result<Line> {
    let bad = |msg: String| Error::Checkpoint { line, msg };
    let mut v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let obj = v
        .as_object_mut()
        .ok_or_else(|| bad("not a JSON object".into()))?;
    if let Some(s) = obj.remove("summary") {
        return Ok(Line::Summary(
            serde_json::from_value(s).map_err(|e| bad(e.to_string()))?,
        ));
    }
    let hash = match obj.remove("sha256") {
        Some(Value::String(h)) => h,
        _ => return Err(bad("missing sha256".into())),
    };
    let rec: CensusRecord = serde_json::from_value(v).map_err(|e| bad(e.to_string()))?;
    if digest(&serde_json::to_string(&rec).expect("record serializes")) != hash {
        return Err(bad("hash mismatch".into()));
    }
    Ok(Line::Record(rec))
}

/// Stream the records of a census file through `f`; blank lines are skipped.
pub fn for_each_line<F: FnMut(Line) -> Result<()>>(path: &Path, mut f: F) -> Result<()> {
    let reader = BufReader::new(File::open(path)?);
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        f(decode_line(&line, i + 1)?)?;
    }
    Ok(())
}

/// All records of a census file and its summary line, if any.
pub fn read_records(path: &Path) -> Result<(Vec<CensusRecord>, Option<CensusSummary>)> {
    let mut records = Vec::new();
    let mut summary = None;
    for_each_line(path, |l| {
        match l {
            Line::Record(r) => records.push(r),
            Line::Summary(s) => summary = Some(s),
        }
        Ok(())
    })?;
    Ok((records, summary))
}

/// Write records sorted by graph6, then the optional summary, through a temporary file
/// renamed into place.
pub fn write_records(
    path: &Path,
    records: &[CensusRecord],
    summary: Option<&CensusSummary>,
) -> Result<()> {
    let mut sorted: Vec<&CensusRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    let tmp = path.with_extension("tmp");
    {
        let mut w = std::io::BufWriter::new(File::create(&tmp)?);
        for r in sorted {
            writeln!(w, "{}", encode_record(r))?;
        }
        if let Some(s) = summary {
            writeln!(w, "{}", encode_summary(s))?;
        }
        w.flush()?;
        w.get_ref().sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
enum Op {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
struct Clause {
    field: String,
    op: Op,
    value: Value,
}

/// Conjunction of `field op value` clauses joined by `&&`; values are JSON literals.
/// An empty expression matches everything.
#[derive(Clone, Debug, PartialEq)]
pub struct Filter {
    clauses: Vec<Clause>,
}

impl std::str::FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut clauses = Vec::new();
        if s.trim().is_empty() {
            return Ok(Filter { clauses });
        }
        for part in s.split("&&") {
            let part = part.trim();
            let ops = [
                ("==", Op::Eq),
                ("!=", Op::Ne),
                ("<=", Op::Le),
                (">=", Op::Ge),
                ("<", Op::Lt),
                (">", Op::Gt),
            ];
            let Some((pos, tok, op)) = ops
                .iter()
                .filter_map(|(t, o)| part.find(t).map(|p| (p, *t, o.clone())))
                .min_by_key(|x| x.0)
            else {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("no comparison in clause '{part}'"),
                });
            };
            let field = part[..pos].trim().to_string();
            let raw = part[pos + tok.len()..].trim();
            let value =
                serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
            if field.is_empty() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("missing field in clause '{part}'"),
                });
            }
            clauses.push(Clause { field, op, value });
        }
        Ok(Filter { clauses })
    }
}

impl Filter {
    pub fn matches(&self, r: &CensusRecord) -> bool {
        let v = serde_json::to_value(r).expect("record serializes");
        self.clauses.iter().all(|c| {
            let got = v.get(&c.field).unwrap_or(&Value::Null);
            match c.op {
                Op::Eq => got == &c.value,
                Op::Ne => got != &c.value,
                _ => match (got.as_f64(), c.value.as_f64()) {
                    (Some(a), Some(b)) => match c.op {
                        Op::Lt => a < b,
                        Op::Le => a <= b,
                        Op::Gt => a > b,
                        _ => a >= b,
                    },
                    _ => false,
                },
            }
        })
    }
}

/// Records of a census file matching `filter`, streamed line by line.
pub fn census_query(path: &Path, filter: &Filter) -> Result<Vec<CensusRecord>> {
    let mut out = Vec::new();
    for_each_line(path, |l| {
        if let Line::Record(r) = l {
            if filter.matches(&r) {
                out.push(r);
            }
        }
        Ok(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(g: &str, hidden: bool) -> CensusRecord {
        CensusRecord {
            graph6: g.into(),
            n: 6,
            aut_order: 1,
            commutant_dim: if hidden { 2 } else { 1 },
            hidden,
            block_dims: hidden.then(|| vec![2, 62]),
            elapsed_ms: None,
        }
    }

    #[test]
    fn line_roundtrip_and_tamper() {
        let r = rec("E?~o", true);
        let line = encode_record(&r);
        match decode_line(&line, 1).unwrap() {
            Line::Record(x) => assert_eq!(x, r),
            Line::Summary(_) => panic!(),
        }
        let bad = line.replace("\"commutant_dim\":2", "\"commutant_dim\":3");
        assert!(matches!(
            decode_line(&bad, 7),
            Err(Error::Checkpoint { line: 7, .. })
        ));
    }

    #[test]
    fn filters() {
        let f: Filter = "hidden==true && commutant_dim>=2".parse().unwrap();
        assert!(f.matches(&rec("A", true)));
        assert!(!f.matches(&rec("A", false)));
        let p: Filter = "block_dims==[2,62]".parse().unwrap();
        assert!(p.matches(&rec("A", true)));
        assert!("".parse::<Filter>().unwrap().matches(&rec("A", false)));
        assert!("hidden".parse::<Filter>().is_err());
    }
}
