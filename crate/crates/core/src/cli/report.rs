//! Checks, tables and the files a run writes.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::halfplane::HalfPlaneField;

/// Shortest round-trip decimal, switching to exponent form outside `[1e-5, 1e16)`.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let a = v.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
}

impl Relation {
    fn symbol(&self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        }
    }
}

/// One measured quantity against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub label: String,
    pub measured: f64,
    pub tol: f64,
    pub relation: Relation,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn at_most(criterion: u8, label: impl Into<String>, measured: f64, tol: f64) -> Self {
        Check {
            criterion,
            label: label.into(),
            measured,
            tol,
            relation: Relation::AtMost,
            pass: measured <= tol,
            note: None,
        }
    }

    pub fn at_least(criterion: u8, label: impl Into<String>, measured: f64, tol: f64) -> Self {
        Check {
            criterion,
            label: label.into(),
            measured,
            tol,
            relation: Relation::AtLeast,
            pass: measured >= tol,
            note: None,
        }
    }

    /// A check that could not be evaluated.
    pub fn failed(criterion: u8, label: impl Into<String>, note: impl Into<String>) -> Self {
        Check {
            criterion,
            label: label.into(),
            measured: f64::NAN,
            tol: f64::NAN,
            relation: Relation::AtMost,
            pass: false,
            note: Some(note.into()),
        }
    }

    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "pass"
        } else {
            "FAIL"
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}  measured {} {} {}",
            self.label,
            self.verdict(),
            format_number(self.measured),
            self.relation.symbol(),
            format_number(self.tol)
        )?;
        if let Some(note) = &self.note {
            write!(f, "  ({note})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_number(*v),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// A CSV table with a fixed column order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, header: &[&'static str]) -> Self {
        Table {
            name: name.into(),
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width in {}", self.name);
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 csv")
    }
}

#[macro_export]
#[doc(hidden)]
macro_rules! row {
    ($($v:expr),* $(,)?) => {
        vec![$($crate::cli::report::Cell::from($v)),*]
    };
}

/// The field as a table `x, y, re, im`, row-major over `(y, x)`.
pub fn field_table(name: &str, field: &HalfPlaneField) -> Table {
    let mut t = Table::new(name, &["x", "y", "re", "im"]);
    for (iy, &y) in field.ys.iter().enumerate() {
        for (ix, &x) in field.xs.iter().enumerate() {
            let v = field.at(ix, iy);
            t.push(row![x, y, v.re, v.im]);
        }
    }
    t
}

pub fn dump_field(field: &HalfPlaneField, path: &Path) -> std::io::Result<()> {
    fs::write(path, field_table("field", field).to_csv())
}
