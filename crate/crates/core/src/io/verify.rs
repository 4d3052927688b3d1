//! Recomputes reference cells and compares them with the golden data.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::fixtures::{hdelta_definition_index, Bound, FixtureCell, FixtureSource, ReferenceFixture};
use crate::calculus::{delta_h, h_from_partitions, h_infinity};
use crate::enumerator::{CountTable, RefinedCounts};
use crate::error::{Error, Result};
use crate::poset::a_max;

/// Tables the checks draw from.
pub struct VerifyInputs<'a> {
    /// Directly enumerated tables.
    pub enumerated: &'a RefinedCounts<BigUint>,
    /// Connected counts feeding the partition formulas; may be arc-bounded.
    pub connected: &'a CountTable<BigUint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Enumeration,
    Partition,
    /// Zero because `a > ⌊p²/4⌋`.
    ArcBound,
    /// Zero because a connected poset needs `a ≥ p − 1`.
    ConnectivityBound,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Enumeration => "enumeration",
            Method::Partition => "partition",
            Method::ArcBound => "arc-bound",
            Method::ConnectivityBound => "connectivity-bound",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct CellCheck {
    pub source: FixtureSource,
    pub cell: FixtureCell,
    pub actual: Option<BigUint>,
    pub method: Option<Method>,
    pub outcome: Outcome,
}

impl fmt::Display for CellCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped(_) => "SKIP",
        };
        let at = match self.cell.arcs {
            Some(a) => format!("p={} a={a}", self.cell.index),
            None => format!("n={}", self.cell.index),
        };
        let cmp = if self.cell.bound == Bound::AtLeast { ">=" } else { "" };
        write!(f, "{status} {} {at} expected={cmp}{}", self.source, self.cell.value)?;
        if let Some(actual) = &self.actual {
            write!(f, " actual={actual}")?;
        }
        if let Some(m) = self.method {
            write!(f, " via {m}")?;
        }
        if let Outcome::Skipped(why) = &self.outcome {
            write!(f, " ({why})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<CellCheck>,
}

impl VerifyReport {
    fn count(&self, pred: impl Fn(&Outcome) -> bool) -> usize {
        self.checks.iter().filter(|c| pred(&c.outcome)).count()
    }

    pub fn passed(&self) -> usize {
        self.count(|o| *o == Outcome::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(|o| *o == Outcome::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Skipped(_)))
    }

    /// No checked cell disagrees; skipped cells do not count against it.
    pub fn is_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn summary(&self) -> String {
        format!("{} passed, {} failed, {} skipped", self.passed(), self.failed(), self.skipped())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellCheck> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail)
    }
}

fn judge(cell: &FixtureCell, actual: &BigUint) -> Outcome {
    let ok = match cell.bound {
        Bound::Exact => *actual == cell.value,
        Bound::AtLeast => *actual >= cell.value,
    };
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

/// `Ok(None)` when the inputs do not reach the cell.
fn compute(
    source: FixtureSource,
    cell: &FixtureCell,
    inputs: &VerifyInputs<'_>,
) -> Result<Option<(BigUint, Method)>> {
    let reachable = |r: Result<BigUint>| match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::IncompleteTable { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    let n = cell.index;
    match (source, cell.arcs) {
        (FixtureSource::TableHdelta, None) => {
            Ok(reachable(delta_h(hdelta_definition_index(n), inputs.connected))?.map(|v| (v, Method::Partition)))
        }
        (FixtureSource::TableHinf, None) => {
            Ok(reachable(h_infinity(n, inputs.connected))?.map(|v| (v, Method::Partition)))
        }
        (grid, Some(a)) => {
            let p = n;
            if a > a_max(p) {
                return Ok(Some((BigUint::zero(), Method::ArcBound)));
            }
            let table = match grid {
                FixtureSource::TableNormal => &inputs.enumerated.all,
                FixtureSource::TableConn => &inputs.enumerated.connected,
                _ => &inputs.enumerated.self_dual_connected,
            };
            if table.is_complete_at(p, a) {
                return Ok(Some((table.get(p, a)?, Method::Enumeration)));
            }
            if grid != FixtureSource::TableNormal && a + 1 < p {
                return Ok(Some((BigUint::zero(), Method::ConnectivityBound)));
            }
            if grid == FixtureSource::TableNormal {
                if let Some(r) = h_from_partitions(p, a, inputs.connected) {
                    return Ok(reachable(r)?.map(|v| (v, Method::Partition)));
                }
            }
            Ok(None)
        }
        _ => Err(Error::Usage(format!("malformed fixture cell {cell:?} in {source}"))),
    }
}

pub fn verify(sources: &[FixtureSource], inputs: &VerifyInputs<'_>) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for &source in sources {
        let fixture = ReferenceFixture::load(source)?;
        for cell in fixture.cells {
            let check = match compute(source, &cell, inputs)? {
                Some((actual, method)) => CellCheck {
                    source,
                    outcome: judge(&cell, &actual),
                    cell,
                    actual: Some(actual),
                    method: Some(method),
                },
                None => CellCheck {
                    source,
                    cell,
                    actual: None,
                    method: None,
                    outcome: Outcome::Skipped("beyond the computed range".into()),
                },
            };
            report.checks.push(check);
        }
    }
    Ok(report)
}
