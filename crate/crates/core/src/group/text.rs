use std::fmt::Write as _;
use std::sync::Arc;

use super::FiniteGroup;
use crate::{Error, Result};

impl FiniteGroup {
    /// `group <name> <order>` followed by one table row per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "group {} {}", self.name(), self.order()).unwrap();
        for row in self.table() {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(s, "{}", cells.join(" ")).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Arc<FiniteGroup>> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty group text".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "group" {
            return Err(Error::Parse(format!("bad group header: {header}")));
        }
        let n: usize = parts[2]
            .parse()
            .map_err(|_| Error::Parse(format!("bad order: {}", parts[2])))?;
        let table: Vec<Vec<usize>> = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {t}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        if table.len() != n {
            return Err(Error::Parse(format!("expected {n} rows, found {}", table.len())));
        }
        FiniteGroup::from_table(parts[1], table, vec![], vec![], vec![])
    }
}
