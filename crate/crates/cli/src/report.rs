use std::io::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};
use crate::CliError;

/// The pinned permutation conventions, echoed so archived reports are
/// self-describing.
#[derive(Debug, Clone, Serialize)]
pub struct Conventions {
    pub composition: &'static str,
    pub action: &'static str,
}

pub fn conventions() -> Conventions {
    Conventions {
        composition: "compose(p, q) applies q first: (p.q)(i) = p(q(i))",
        action: "act(p, w) moves the letter at position i to position p(i)",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub description: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl CaseReport {
    pub fn new(id: impl Into<String>, description: impl Into<String>, pass: bool) -> Self {
        CaseReport {
            id: id.into(),
            description: description.into(),
            pass,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Serialize) -> Self {
        self.detail = serde_json::to_value(detail).ok();
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub command: String,
    pub config: RunConfig,
    pub conventions: Conventions,
    pub cases: Vec<CaseReport>,
    pub aggregate_pass: bool,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn new(command: &str, config: RunConfig, cases: Vec<CaseReport>, started: std::time::Instant) -> Self {
        let aggregate_pass = cases.iter().all(|c| c.pass);
        RunReport {
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config,
            conventions: conventions(),
            cases,
            aggregate_pass,
            wall_time_ms: started.elapsed().as_millis() as u64,
        }
    }

    /// Canonical JSON: routed through `Value` so that object keys are
    /// sorted and parse-then-reserialize is byte-identical.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "description", "pass", "detail"]).expect("csv");
        for case in &self.cases {
            let detail = case
                .detail
                .as_ref()
                .map(|d| serde_json::to_string(d).expect("detail serializes"))
                .unwrap_or_default();
            w.write_record([
                case.id.as_str(),
                case.description.as_str(),
                if case.pass { "pass" } else { "fail" },
                detail.as_str(),
            ])
            .expect("csv");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        out.push_str("\\begin{tabular}{llc}\n");
        out.push_str("\\hline\ncase & statement & verdict \\\\\n\\hline\n");
        for case in &self.cases {
            out.push_str(&format!(
                "{} & {} & {} \\\\\n",
                latex_escape(&case.id),
                latex_escape(&case.description),
                if case.pass { "\\checkmark" } else { "\\times" }
            ));
        }
        out.push_str("\\hline\n\\end{tabular}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("composition: {}\n", self.conventions.composition));
        out.push_str(&format!("action: {}\n", self.conventions.action));
        for case in &self.cases {
            out.push_str(&format!(
                "[{}] {}: {}\n",
                if case.pass { "pass" } else { "FAIL" },
                case.id,
                case.description
            ));
        }
        out.push_str(&format!(
            "aggregate: {} ({} cases, {} ms)\n",
            if self.aggregate_pass { "pass" } else { "FAIL" },
            self.cases.len(),
            self.wall_time_ms
        ));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Latex => self.to_latex(),
            Format::Text => self.to_text(),
        }
    }

    pub fn emit(&self, format: Format, out: Option<&std::path::Path>) -> Result<(), CliError> {
        let body = self.render(format);
        match out {
            Some(path) => std::fs::write(path, body)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
            None => std::io::stdout()
                .write_all(body.as_bytes())
                .map_err(|e| CliError::Io(format!("stdout: {e}"))),
        }
    }
}

fn latex_escape(s: &str) -> String {
    // keep ^, _, {, } meaningful so descriptions can use P^m(2) notation;
    // escape the characters that would break tabular mode
    s.replace('&', "\\&").replace('%', "\\%").replace('#', "\\#")
}
