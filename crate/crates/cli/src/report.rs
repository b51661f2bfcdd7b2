//! Report rows and their JSON and CSV renderings.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A computed value with nothing to compare against.
    Info,
}

/// One line of a report. `value` and `expected` are exact strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub suite: String,
    pub check: String,
    pub case: String,
    pub value: String,
    pub expected: String,
    pub status: Status,
}

impl Row {
    pub fn info(
        suite: &str,
        check: &str,
        case: impl Into<String>,
        value: impl Into<String>,
    ) -> Self {
        Row {
            suite: suite.into(),
            check: check.into(),
            case: case.into(),
            value: value.into(),
            expected: String::new(),
            status: Status::Info,
        }
    }

    /// A comparison row; passes iff the two strings agree.
    pub fn compare(
        suite: &str,
        check: &str,
        case: impl Into<String>,
        value: impl Into<String>,
        expected: impl Into<String>,
    ) -> Self {
        let (value, expected) = (value.into(), expected.into());
        let status = if value == expected {
            Status::Pass
        } else {
            Status::Fail
        };
        Row {
            suite: suite.into(),
            check: check.into(),
            case: case.into(),
            value,
            expected,
            status,
        }
    }

    pub fn verdict(
        suite: &str,
        check: &str,
        case: impl Into<String>,
        value: impl Into<String>,
        ok: bool,
    ) -> Self {
        Row {
            suite: suite.into(),
            check: check.into(),
            case: case.into(),
            value: value.into(),
            expected: String::new(),
            status: if ok { Status::Pass } else { Status::Fail },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub passed: bool,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn new(rows: Vec<Row>) -> Self {
        Report {
            passed: rows.iter().all(|r| r.status != Status::Fail),
            rows,
        }
    }

    pub fn failures(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.status == Status::Fail)
            .count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).expect("plain data");
        }
        String::from_utf8(w.into_inner().expect("in memory")).expect("utf-8")
    }

    pub fn rows_from_csv(text: &str) -> Result<Vec<Row>, csv::Error> {
        csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .collect()
    }
}
