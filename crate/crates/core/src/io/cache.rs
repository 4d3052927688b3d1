//! Plain-text persistence of count tables.
//!
//! ```text
//! hasse-census-cache v1 connected 9
//! 1,0,1
//! 2,1,1
//! ...
//! end 42
//! ```
//!
//! An arc-bounded table carries a fifth header token `max_arcs=<a>`. The
//! trailer repeats the row count so that a file cut at a line boundary is
//! still rejected.

use std::fs;
use std::path::Path;

use crate::count::Count;
use crate::enumerator::{CountTable, Refinement};
use crate::error::{Error, Result};

pub const CACHE_MAGIC: &str = "hasse-census-cache";
pub const CACHE_VERSION: &str = "v1";

pub fn cache_to_string<N: Count>(table: &CountTable<N>) -> String {
    let mut out = format!("{CACHE_MAGIC} {CACHE_VERSION} {} {}", table.refinement(), table.max_points());
    if let Some(m) = table.max_arcs() {
        out.push_str(&format!(" max_arcs={m}"));
    }
    out.push('\n');
    for (p, a, n) in table.cells() {
        out.push_str(&format!("{p},{a},{n}\n"));
    }
    out.push_str(&format!("end {}\n", table.nonzero_cells()));
    out
}

pub fn parse_cache<N: Count>(text: &str) -> Result<CountTable<N>> {
    let mut lines = text.split_inclusive('\n').enumerate().map(|(i, l)| (i + 1, l));
    let err = |line: usize, message: &str| Error::Parse { line, message: message.to_string() };

    let (_, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let header = header.strip_suffix('\n').ok_or_else(|| err(1, "truncated header"))?;
    let toks: Vec<&str> = header.split(' ').collect();
    if toks.first() != Some(&CACHE_MAGIC) {
        return Err(err(1, "not a hasse-census cache"));
    }
    if toks.get(1) != Some(&CACHE_VERSION) {
        return Err(Error::Incompatible(format!(
            "cache version {:?}, expected {CACHE_VERSION}",
            toks.get(1).copied().unwrap_or("")
        )));
    }
    if !(4..=5).contains(&toks.len()) {
        return Err(err(1, "header needs refinement and max_points"));
    }
    let refinement: Refinement = toks[2].parse().map_err(|_| err(1, "unknown refinement"))?;
    let max_points: usize = toks[3].parse().map_err(|_| err(1, "bad max_points"))?;
    let max_arcs = match toks.get(4) {
        None => None,
        Some(t) => Some(
            t.strip_prefix("max_arcs=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err(1, "bad max_arcs"))?,
        ),
    };

    let mut table = CountTable::new(refinement, max_points, max_arcs);
    let mut last: Option<(usize, usize)> = None;
    let mut rows = 0usize;
    let mut last_line = 1;
    while let Some((line, raw)) = lines.next() {
        last_line = line;
        let text = raw.strip_suffix('\n').ok_or_else(|| err(line, "truncated line"))?;
        if let Some(count) = text.strip_prefix("end ") {
            let expected: usize = count.parse().map_err(|_| err(line, "bad trailer"))?;
            if expected != rows {
                return Err(err(line, &format!("trailer announces {expected} rows, found {rows}")));
            }
            if let Some((extra, _)) = lines.next() {
                return Err(err(extra, "content after trailer"));
            }
            return Ok(table);
        }
        let mut fields = text.split(',');
        let (Some(p), Some(a), Some(n), None) = (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(err(line, "expected `p,a,count`"));
        };
        let p: usize = p.parse().map_err(|_| err(line, "bad p"))?;
        let a: usize = a.parse().map_err(|_| err(line, "bad a"))?;
        if n.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(line, "count must be a decimal natural"));
        }
        let n: N = n.parse().map_err(|_| err(line, "count does not fit the count type"))?;
        if last.is_some_and(|prev| prev >= (p, a)) {
            return Err(err(line, "rows must be strictly sorted by (p, a)"));
        }
        if p == 0 || !table.is_complete_at(p, a) {
            return Err(err(line, "cell outside the table's range"));
        }
        last = Some((p, a));
        table.set(p, a, n);
        rows += 1;
    }
    Err(err(last_line + 1, "missing trailer (file truncated?)"))
}

pub fn save_cache<N: Count>(table: &CountTable<N>, path: &Path) -> Result<()> {
    fs::write(path, cache_to_string(table))?;
    Ok(())
}

pub fn load_cache<N: Count>(path: &Path) -> Result<CountTable<N>> {
    parse_cache(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CountTable<u64> {
        let mut t = CountTable::new(Refinement::Connected, 3, None);
        t.set(1, 0, 1);
        t.set(2, 1, 1);
        t.set(3, 2, 3);
        t
    }

    #[test]
    fn round_trip() {
        let text = cache_to_string(&sample());
        assert!(text.starts_with("hasse-census-cache v1 connected 3\n1,0,1\n"));
        assert_eq!(parse_cache::<u64>(&text).unwrap(), sample());
        let mut bounded: CountTable<u64> = CountTable::new(Refinement::All, 4, Some(2));
        bounded.set(4, 2, 4);
        let text = cache_to_string(&bounded);
        assert!(text.starts_with("hasse-census-cache v1 all 4 max_arcs=2\n"));
        assert_eq!(parse_cache::<u64>(&text).unwrap(), bounded);
    }

    #[test]
    fn truncation_is_located() {
        let text = cache_to_string(&sample());
        // cut inside the last data row
        let cut = &text[..text.find("3,2,3").unwrap() + 3];
        assert_eq!(parse_cache::<u64>(cut), Err(Error::Parse { line: 4, message: "truncated line".into() }));
        // cut at a line boundary, trailer lost
        let cut = &text[..text.find("end").unwrap()];
        assert!(matches!(parse_cache::<u64>(cut), Err(Error::Parse { line: 5, .. })));
    }

    #[test]
    fn version_mismatch() {
        let text = cache_to_string(&sample()).replacen("v1", "v2", 1);
        assert!(matches!(parse_cache::<u64>(&text), Err(Error::Incompatible(_))));
    }

    #[test]
    fn malformed_rows() {
        for (bad, line) in [
            ("hasse-census-cache v1 connected 3\n2,1,1\n1,0,1\nend 2\n", 3),
            ("hasse-census-cache v1 connected 3\n1,0,-1\nend 1\n", 2),
            ("hasse-census-cache v1 connected 3\n4,3,8\nend 1\n", 2),
            ("hasse-census-cache v1 connected 3\n1,0\nend 1\n", 2),
            ("hasse-census-cache v1 connected 3\nend 1\n", 2),
            ("hasse-census-cache v1 connected 3\nend 0\nx\n", 3),
        ] {
            match parse_cache::<u64>(bad) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{bad:?}"),
                other => panic!("{bad:?}: {other:?}"),
            }
        }
        assert!(parse_cache::<u64>("nonsense\n").is_err());
        assert!(parse_cache::<u64>("").is_err());
    }
}
