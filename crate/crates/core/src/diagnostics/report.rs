use std::fmt::Write as _;

/// One row of the result-to-check matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub theorem: String,
    pub check: String,
    pub regime: String,
    pub value: f64,
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
}

impl CheckRow {
    pub fn new(theorem: &str, check: &str, regime: &str, value: f64, bound: f64, slack: f64, pass: bool) -> Self {
        CheckRow { theorem: theorem.into(), check: check.into(), regime: regime.into(), value, bound, slack, pass }
    }
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `theorem,check,regime,value,bound,slack,pass`
pub fn matrix_csv(rows: &[CheckRow]) -> String {
    let mut s = String::from("theorem,check,regime,value,bound,slack,pass\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{:?},{:?},{:?},{}",
            field(&r.theorem),
            field(&r.check),
            field(&r.regime),
            r.value,
            r.bound,
            r.slack,
            r.pass
        );
    }
    s
}
