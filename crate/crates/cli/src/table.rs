//! Tabular output as CSV or JSON, floats at 17 significant digits.

use std::io::{self, Write};

use qwalk_core::format::sig17;

use crate::config::Format;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
    Absent,
}

impl Cell {
    pub fn float_or_absent(v: Option<f64>) -> Cell {
        v.map_or(Cell::Absent, Cell::Float)
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Int(i) => Some(i as f64),
            Cell::Float(x) => Some(x),
            _ => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => sig17(*x),
            Cell::Str(s) => s.clone(),
            Cell::Absent => String::new(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) if x.is_finite() => sig17(*x),
            Cell::Float(_) | Cell::Absent => "null".to_string(),
            Cell::Str(s) => json_string(s),
        }
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn write<W: Write>(&self, w: &mut W, format: Format) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    /// An array of objects, one row per line.
    pub fn write_json<W: Write>(&self, w: &mut W) -> io::Result<()> {
        if self.rows.is_empty() {
            return writeln!(w, "[]");
        }
        writeln!(w, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            let fields: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(k, v)| format!("{}: {}", json_string(k), v.json()))
                .collect();
            let sep = if i + 1 < self.rows.len() { "," } else { "" };
            writeln!(w, "  {{{}}}{sep}", fields.join(", "))?;
        }
        writeln!(w, "]")
    }

    pub fn render(&self, format: Format) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf, format)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("table output is UTF-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["n", "region", "value", "rel"]);
        t.push(vec![
            Cell::Int(2),
            Cell::Str("allowed".into()),
            Cell::Float(0.5),
            Cell::Absent,
        ]);
        t.push(vec![
            Cell::Int(-3),
            Cell::Str("a\"b".into()),
            Cell::Float(1e-300),
            Cell::Float(f64::NAN),
        ]);
        t
    }

    #[test]
    fn csv_layout() {
        assert_eq!(
            sample().render(Format::Csv),
            "n,region,value,rel\n2,allowed,5.0000000000000000e-1,\n-3,a\"b,1.0000000000000000e-300,NaN\n"
        );
    }

    #[test]
    fn json_layout() {
        let text = sample().render(Format::Json);
        assert!(text.starts_with("[\n  {\"n\": 2, \"region\": \"allowed\", \"value\": 5.0000000000000000e-1, \"rel\": null},\n"));
        assert!(text.contains("\"region\": \"a\\\"b\""));
        assert!(text.ends_with("\"rel\": null}\n]\n"));
        assert_eq!(Table::new(&["x"]).render(Format::Json), "[]\n");
    }
}
