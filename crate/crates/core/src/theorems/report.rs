use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::TheoremId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    SkippedDegenerate,
    SkippedInadmissible,
    /// Computed and recorded with no claim attached.
    Reported,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::SkippedDegenerate => "skipped-degenerate",
            Status::SkippedInadmissible => "skipped-inadmissible",
            Status::Reported => "reported",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: TheoremId,
    pub p: u64,
    pub r: u32,
    pub x: Option<String>,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    #[serde(rename = "N")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn q(&self) -> u64 {
        self.p.pow(self.r)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub primes: String,
    pub degrees: Vec<u32>,
    pub ids: Vec<TheoremId>,
    pub precision: String,
    pub gauss_max_q: u64,
    /// The harness is deterministic; no seed is drawn.
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub holds: usize,
    pub fails: usize,
    /// Skipped for any reason, including rows reported with no claim.
    pub skipped: usize,
}

impl Summary {
    pub fn of(results: &[CheckResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            match r.status {
                Status::Holds => s.holds += 1,
                Status::Fails => s.fails += 1,
                _ => s.skipped += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(meta: Meta, results: Vec<CheckResult>) -> Self {
        let summary = Summary::of(&results);
        Self {
            meta,
            results,
            summary,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Fails)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["id", "p", "r", "x", "status", "lhs", "rhs", "N", "note"])?;
        for r in &self.results {
            out.write_record([
                r.id.as_str().to_string(),
                r.p.to_string(),
                r.r.to_string(),
                r.x.clone().unwrap_or_default(),
                r.status.to_string(),
                r.lhs.clone(),
                r.rhs.clone(),
                r.n.map(|n| n.to_string()).unwrap_or_default(),
                r.note.clone().unwrap_or_default(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("utf-8")
    }

    /// Fixed-width text table.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{:<10} {:>5} {:>2} {:<16} {:<21} {:>14} {:>14} {:>3}\n",
            "id", "p", "r", "x", "status", "computed", "expected", "N"
        );
        for r in &self.results {
            s.push_str(&format!(
                "{:<10} {:>5} {:>2} {:<16} {:<21} {:>14} {:>14} {:>3}",
                r.id.as_str(),
                r.p,
                r.r,
                r.x.as_deref().unwrap_or("-"),
                r.status.as_str(),
                r.lhs,
                r.rhs,
                r.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
            ));
            if let Some(note) = &r.note {
                s.push_str("  ");
                s.push_str(note);
            }
            s.push('\n');
        }
        s.push_str(&format!(
            "holds {}  fails {}  skipped {}\n",
            self.summary.holds, self.summary.fails, self.summary.skipped
        ));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let rows = vec![
            CheckResult {
                id: TheoremId::SPV1,
                p: 5,
                r: 1,
                x: None,
                status: Status::Holds,
                lhs: "0".into(),
                rhs: "0".into(),
                n: Some(5),
                note: None,
            },
            CheckResult {
                id: TheoremId::MT1,
                p: 3,
                r: 2,
                x: Some("(1,2)".into()),
                status: Status::SkippedInadmissible,
                lhs: String::new(),
                rhs: String::new(),
                n: None,
                note: Some("x = 1".into()),
            },
        ];
        Report::new(Meta::default(), rows)
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["results"][0]["status"], "holds");
        assert_eq!(v["results"][0]["N"], 5);
        assert_eq!(v["results"][1]["status"], "skipped-inadmissible");
        assert_eq!(v["summary"]["skipped"], 1);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let csv = sample().to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "id,p,r,x,status,lhs,rhs,N,note");
        assert_eq!(lines.len(), 3);
        assert!(lines[2].contains("\"(1,2)\""));
    }
}
