//! Readers for the artifacts the CLI writes, so outputs can be checked for
//! well-formedness.

use crate::CliError;

/// A parsed table: header names and string cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Cell `name` of `row` as a float; `None` for an empty cell.
    pub fn number(&self, row: usize, name: &str) -> Option<f64> {
        let cell = &self.rows[row][self.column(name)?];
        if cell.is_empty() {
            None
        } else {
            cell.parse().ok()
        }
    }
}

/// Parses CSV with a header row. Ragged rows are an error.
pub fn read_csv(text: &str) -> Result<Table, CliError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers()?.iter().map(str::to_string).collect();
    let rows = reader
        .records()
        .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()))
        .collect::<Result<_, _>>()?;
    Ok(Table { header, rows })
}

/// Parses a pipe table: header line, alignment rule, body rows of equal width.
pub fn read_markdown(text: &str) -> Result<Table, CliError> {
    let bad = |m: String| CliError::Usage(format!("malformed markdown table: {m}"));
    let split = |line: &str| -> Result<Vec<String>, CliError> {
        let inner = line
            .trim()
            .strip_prefix('|')
            .and_then(|l| l.strip_suffix('|'))
            .ok_or_else(|| bad(format!("`{line}` is not a table row")))?;
        Ok(inner.split('|').map(|c| c.trim().to_string()).collect())
    };
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = split(lines.next().ok_or_else(|| bad("empty".into()))?)?;
    let rule = split(lines.next().ok_or_else(|| bad("no alignment row".into()))?)?;
    let is_rule = |c: &String| !c.is_empty() && c.chars().all(|ch| ch == '-' || ch == ':');
    if rule.len() != header.len() || !rule.iter().all(is_rule) {
        return Err(bad("alignment row does not match header".into()));
    }
    let rows = lines
        .map(|l| {
            let row = split(l)?;
            if row.len() == header.len() {
                Ok(row)
            } else {
                Err(bad(format!("row `{l}` has {} cells, expected {}", row.len(), header.len())))
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(Table { header, rows })
}
