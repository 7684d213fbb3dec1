//! Command reports and their tab-separated or JSON rendering.

use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "ERROR")]
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

/// Output of one command: a table plus free-form notes.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub horizon: Option<usize>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    /// Verbatim text emitted after the table (DOT graphs).
    pub body: Option<String>,
    pub status: Status,
}

impl Report {
    pub fn new(command: impl Into<String>, columns: &[&str]) -> Self {
        Report {
            command: command.into(),
            horizon: None,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
            body: None,
            status: Status::Pass,
        }
    }

    pub fn error(command: impl Into<String>, message: impl Into<String>) -> Self {
        let mut r = Report::new(command, &[]);
        r.notes.push(format!("error: {}", message.into()));
        r.status = Status::Error;
        r
    }

    pub fn with_horizon(mut self, horizon: usize) -> Self {
        self.horizon = Some(horizon);
        self
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(cells.into_iter().map(|c| c.to_string()).collect());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Marks the report failed unless `ok`.
    pub fn require(&mut self, ok: bool) {
        if !ok && self.status == Status::Pass {
            self.status = Status::Fail;
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Settings shared by every report of a run.
#[derive(Clone, Debug, Serialize)]
pub struct RunHeader {
    pub tool: String,
    pub version: String,
    pub field: String,
    pub seed: u64,
}

impl RunHeader {
    pub fn new(field: String, seed: u64) -> Self {
        RunHeader { tool: "ppz".into(), version: TOOL_VERSION.into(), field, seed }
    }
}

fn clean(cell: &str) -> String {
    cell.replace(['\t', '\n'], " ")
}

/// Tab-separated rendering with a `#` header block per command.
pub fn render_text(header: &RunHeader, reports: &[Report]) -> String {
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("# tool: {} {}\n", header.tool, header.version));
        out.push_str(&format!("# field: {}\n", header.field));
        out.push_str(&format!("# horizon: {}\n", r.horizon.map_or("-".to_string(), |h| h.to_string())));
        out.push_str(&format!("# seed: {}\n", header.seed));
        out.push_str(&format!("# command: {}\n", r.command));
        if !r.columns.is_empty() {
            out.push_str(&r.columns.iter().map(|c| clean(c)).collect::<Vec<_>>().join("\t"));
            out.push('\n');
        }
        for row in &r.rows {
            out.push_str(&row.iter().map(|c| clean(c)).collect::<Vec<_>>().join("\t"));
            out.push('\n');
        }
        if let Some(body) = &r.body {
            out.push_str(body);
            if !body.ends_with('\n') {
                out.push('\n');
            }
        }
        for n in &r.notes {
            out.push_str(&format!("# {}\n", clean(n)));
        }
        out.push_str(&format!("# result: {}\n", r.status.as_str()));
    }
    out
}

#[derive(Serialize)]
struct JsonRun<'a> {
    #[serde(flatten)]
    header: &'a RunHeader,
    result: Status,
    reports: &'a [Report],
}

/// Overall status: errors dominate failures.
pub fn overall(reports: &[Report]) -> Status {
    if reports.iter().any(|r| r.status == Status::Error) {
        Status::Error
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    }
}

pub fn render_json(header: &RunHeader, reports: &[Report]) -> String {
    let run = JsonRun { header, result: overall(reports), reports };
    let mut s = serde_json::to_string_pretty(&run).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let mut r = Report::new("ziegler closure --n 1", &["set"]).with_horizon(3);
        r.row(["{F0 Prufer, F0 Q}"]);
        r.note("closure rule");
        let text = render_text(&RunHeader::new("F_2".into(), 0), &[r]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], format!("# tool: ppz {TOOL_VERSION}"));
        assert_eq!(lines[2], "# horizon: 3");
        assert_eq!(lines[5], "set");
        assert_eq!(lines[6], "{F0 Prufer, F0 Q}");
        assert_eq!(*lines.last().unwrap(), "# result: PASS");
    }

    #[test]
    fn json_has_overall_result() {
        let mut r = Report::new("x", &["a"]);
        r.require(false);
        let v: serde_json::Value = serde_json::from_str(&render_json(&RunHeader::new("Q".into(), 1), &[r])).unwrap();
        assert_eq!(v["result"], "FAIL");
        assert_eq!(v["reports"][0]["status"], "FAIL");
        assert_eq!(v["seed"], 1);
    }
}
