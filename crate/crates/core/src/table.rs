//! First certifying condition over the quartic family.

use std::fmt::Write as _;

use serde::Serialize;

use crate::checks::{first_certifying, CheckConfig};
use crate::error::{Error, Result};
use crate::fixtures::{quartic_cells, quartic_source, Cell, LadderExpectation};
use crate::problem::load_instance;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub cell: Cell,
    pub expected: String,
    pub got: String,
    /// no sufficient condition certified the cell
    pub probe_only: bool,
    pub matched: bool,
}

/// Parses `a,b,c,d`.
pub fn parse_cell(s: &str) -> Result<Cell> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Input(format!("bad cell {s:?}"))))
        .collect::<Result<_>>()?;
    v.try_into().map_err(|_| Error::Input(format!("cell {s:?} needs four integers")))
}

/// Runs the ladder on every listed cell, or on the shipped grid.
pub fn table4(cells: Option<&[Cell]>, cfg: &CheckConfig) -> Result<Vec<TableRow>> {
    let known = quartic_cells();
    let chosen: Vec<(Cell, Option<LadderExpectation>)> = match cells {
        None => known.into_iter().map(|(c, e)| (c, Some(e))).collect(),
        Some(list) => list
            .iter()
            .map(|c| (*c, known.iter().find(|(k, _)| k == c).map(|(_, e)| e.clone())))
            .collect(),
    };
    chosen
        .into_iter()
        .map(|(cell, expect)| {
            let inst = load_instance(&quartic_source(&cell), "cell")?;
            let got = first_certifying(&inst, cfg)?;
            Ok(TableRow {
                cell,
                expected: expect.as_ref().map(LadderExpectation::display).unwrap_or_else(|| "-".into()),
                matched: expect.as_ref().is_none_or(|e| e.matches(&got.label)),
                probe_only: !got.certified(),
                got: got.label,
            })
        })
        .collect()
}

pub fn render(rows: &[TableRow]) -> String {
    let mut s = format!("{:<16} {:<28} {:<28} {}\n", "(a,b,c,d)", "expected", "first certifying", "match");
    for r in rows {
        let cell = format!("({},{},{},{})", r.cell[0], r.cell[1], r.cell[2], r.cell[3]);
        let mark = if r.matched { "ok" } else { "MISMATCH" };
        let _ = writeln!(s, "{cell:<16} {:<28} {:<28} {mark}", r.expected, r.got);
    }
    let bad = rows.iter().filter(|r| !r.matched).count();
    let _ = writeln!(s, "{} cells, {bad} mismatches", rows.len());
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_parse() {
        assert_eq!(parse_cell("0,-1, 0,1").unwrap(), [0, -1, 0, 1]);
        assert!(parse_cell("0,1").is_err());
        assert!(parse_cell("a,b,c,d").is_err());
    }
}
