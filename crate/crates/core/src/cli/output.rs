use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analyzer::{ClosedForm, Counterexample, Status, VerificationReport};
use crate::exact::ExactInt;
use crate::TOOL_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueEntry {
    pub n: usize,
    /// Decimal string.
    pub h: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormEntry {
    pub q: usize,
    pub j: usize,
    pub sign: String,
    /// Coefficients in `n`, constant term first, as exact rationals.
    pub poly: Vec<String>,
}

impl From<&ClosedForm> for FormEntry {
    fn from(f: &ClosedForm) -> Self {
        Self {
            q: f.q,
            j: f.j,
            sign: f.sign.to_string(),
            poly: f.poly_strings(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationEntry {
    pub target: String,
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
    pub constants: BTreeMap<String, String>,
}

impl From<&VerificationReport> for VerificationEntry {
    fn from(r: &VerificationReport) -> Self {
        Self {
            target: r.target.clone(),
            status: r.status,
            counterexamples: r.counterexamples.clone(),
            constants: r.fitted_constants.clone(),
        }
    }
}

/// One report object; commands over several `r` emit a list of these.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    pub r: u32,
    pub values: Vec<ValueEntry>,
    pub period: Option<usize>,
    pub closed_forms: Vec<FormEntry>,
    pub verification: Vec<VerificationEntry>,
}

impl RunReport {
    pub fn new(r: u32) -> Self {
        Self {
            tool_version: TOOL_VERSION.to_string(),
            r,
            values: Vec::new(),
            period: None,
            closed_forms: Vec::new(),
            verification: Vec::new(),
        }
    }

    pub fn with_values(mut self, values: &[ExactInt]) -> Self {
        self.values = values
            .iter()
            .enumerate()
            .map(|(n, h)| ValueEntry { n, h: h.to_string() })
            .collect();
        self
    }
}

/// Single-object commands print an object, the rest a list.
pub enum Rendered<'a> {
    One(&'a RunReport),
    Many(&'a [RunReport]),
}

impl Rendered<'_> {
    fn reports(&self) -> &[RunReport] {
        match self {
            Rendered::One(r) => std::slice::from_ref(*r),
            Rendered::Many(rs) => rs,
        }
    }
}

pub fn render(out: Rendered<'_>, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = match out {
                Rendered::One(r) => serde_json::to_string_pretty(r),
                Rendered::Many(rs) => serde_json::to_string_pretty(rs),
            }
            .expect("plain data serializes");
            s.push('\n');
            s
        }
        Format::Csv => csv(out.reports()),
        Format::Md => markdown(out.reports()),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Long format: `r,section,key,value`.
fn csv(reports: &[RunReport]) -> String {
    let mut s = String::from("r,section,key,value\n");
    let mut row = |r: u32, section: &str, key: &str, value: &str| {
        let _ = writeln!(s, "{r},{section},{},{}", csv_field(key), csv_field(value));
    };
    for rep in reports {
        for v in &rep.values {
            row(rep.r, "value", &v.n.to_string(), &v.h);
        }
        if let Some(q) = rep.period {
            row(rep.r, "period", "q", &q.to_string());
        }
        for f in &rep.closed_forms {
            row(rep.r, "closed-form", &format!("{}n+{}", f.q, f.j), &form_text(f));
        }
        for v in &rep.verification {
            row(rep.r, "status", &v.target, &v.status.to_string());
            for (k, c) in &v.constants {
                row(rep.r, "constant", k, c);
            }
            for c in &v.counterexamples {
                row(
                    rep.r,
                    "counterexample",
                    &format!("{}:{}", v.target, c.n),
                    &format!("expected {} got {}", c.expected, c.actual),
                );
            }
        }
    }
    s
}

fn form_text(f: &FormEntry) -> String {
    let terms: Vec<String> = f
        .poly
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(i, c)| {
            let power = match i {
                0 => return c.clone(),
                1 => "n".to_string(),
                _ => format!("n^{i}"),
            };
            match c.as_str() {
                "1" => power,
                "-1" => format!("-{power}"),
                _ => format!("{c}*{power}"),
            }
        })
        .collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    format!("{} * ({})", f.sign, terms.join(" + "))
}

fn markdown(reports: &[RunReport]) -> String {
    let mut s = String::new();
    for rep in reports {
        let _ = writeln!(s, "## r = {}\n", rep.r);
        if !rep.values.is_empty() {
            s.push_str("| n | H_n |\n|---:|---:|\n");
            for v in &rep.values {
                let _ = writeln!(s, "| {} | {} |", v.n, v.h);
            }
            s.push('\n');
        }
        if let Some(q) = rep.period {
            let _ = writeln!(s, "Period: {q}\n");
        }
        if !rep.closed_forms.is_empty() {
            s.push_str("| index | closed form |\n|---|---|\n");
            for f in &rep.closed_forms {
                let _ = writeln!(s, "| H_{{{}n+{}}} | {} |", f.q, f.j, form_text(f));
            }
            s.push('\n');
        }
        if !rep.verification.is_empty() {
            s.push_str("| target | status | counterexamples | constants |\n|---|---|---:|---|\n");
            for v in &rep.verification {
                let constants: Vec<String> =
                    v.constants.iter().map(|(k, c)| format!("{k} = {c}")).collect();
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} |",
                    v.target,
                    v.status,
                    v.counterexamples.len(),
                    constants.join("; ")
                );
            }
            s.push('\n');
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::SignMode;
    use crate::exact::DensePoly;

    fn sample() -> RunReport {
        let mut rep = RunReport::new(3).with_values(&[1, 3, -4].map(ExactInt::from));
        rep.period = Some(3);
        rep.closed_forms
            .push((&ClosedForm::new(3, 0, SignMode::AlternatingPlus, DensePoly::from_ints(&[1, 2, 1]))).into());
        rep
    }

    #[test]
    fn json_round_trip() {
        let rep = sample();
        let s = render(Rendered::One(&rep), Format::Json);
        let back: RunReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);
        assert!(s.contains("\"h\": \"-4\""));
    }

    #[test]
    fn csv_rows() {
        let s = render(Rendered::One(&sample()), Format::Csv);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "r,section,key,value");
        assert_eq!(lines[3], "3,value,2,-4");
        assert_eq!(lines[5], "3,closed-form,3n+0,(-1)^n * (n^2 + 2*n + 1)");
    }

    #[test]
    fn markdown_table() {
        let s = render(Rendered::Many(&[sample()]), Format::Md);
        assert!(s.starts_with("## r = 3"));
        assert!(s.contains("| 2 | -4 |"));
    }
}
