//! OEIS b-file export: one `index value` pair per line.

use std::fmt;
use std::str::FromStr;

use crate::count::Count;
use crate::enumerator::CountTable;
use crate::error::{Error, Result};
use crate::poset::a_max;

/// How a two-dimensional table is linearized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfileLayout {
    /// `p` ascending, then `a` ascending over the arc range the table's
    /// refinement can make nonzero.
    Rows,
}

impl fmt::Display for BfileLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BfileLayout::Rows => f.write_str("rows"),
        }
    }
}

impl FromStr for BfileLayout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rows" => Ok(BfileLayout::Rows),
            other => Err(Error::Usage(format!("unknown b-file layout `{other}`"))),
        }
    }
}

/// Lines `1 v_0`, `2 v_1`, ...
pub fn export_sequence_bfile<N: Count>(values: &[N]) -> String {
    values.iter().enumerate().map(|(i, v)| format!("{} {v}\n", i + 1)).collect()
}

pub fn export_bfile<N: Count>(table: &CountTable<N>, layout: BfileLayout) -> Result<String> {
    let BfileLayout::Rows = layout;
    let mut values = Vec::new();
    for p in 1..=table.max_points() {
        let range = table.refinement().feasible_arcs(p);
        if let Some(m) = table.max_arcs() {
            if m < a_max(p) {
                return Err(Error::IncompleteTable { refinement: table.refinement(), points: p, arcs: m + 1 });
            }
        }
        for a in range {
            values.push(table.get(p, a)?);
        }
    }
    Ok(export_sequence_bfile(&values))
}
