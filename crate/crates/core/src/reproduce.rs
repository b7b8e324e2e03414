//! Reproduction of the reference tables in `data/golden/` against freshly computed results.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_certified, next_permutation};
use crate::error::{Error, Result};
use crate::graph::{make_graph, Family};
use crate::structure::{d_from_r, ArithStructure, StructureSet};
use crate::transforms::{cycle_to_wheel_divisor, zn_orbit};

pub const TABLES: [&str; 8] = [
    "c3-table",
    "w3-from-c3",
    "w3-167",
    "star-counts",
    "cycle-counts",
    "path-counts",
    "r1-examples",
    "orbit-example",
];

fn golden(id: &str) -> Option<&'static str> {
    Some(match id {
        "c3-table" => include_str!("../data/golden/c3-table.json"),
        "w3-from-c3" => include_str!("../data/golden/w3-from-c3.json"),
        "w3-167" => include_str!("../data/golden/w3-167.json"),
        "star-counts" => include_str!("../data/golden/star-counts.json"),
        "cycle-counts" => include_str!("../data/golden/cycle-counts.json"),
        "path-counts" => include_str!("../data/golden/path-counts.json"),
        "r1-examples" => include_str!("../data/golden/r1-examples.json"),
        "orbit-example" => include_str!("../data/golden/orbit-example.json"),
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub table: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(table: &str) -> Self {
        Report {
            table: table.to_string(),
            passed: true,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

#[derive(Deserialize)]
struct Row {
    d: Vec<u64>,
    r: Vec<u64>,
    count: usize,
    #[serde(default)]
    source: Option<ArithStructure>,
}

#[derive(Deserialize)]
struct RowTable {
    rows: Vec<Row>,
    #[serde(default)]
    total: Option<usize>,
    #[serde(default)]
    listed: Option<usize>,
    #[serde(default)]
    lower_bound: Option<usize>,
    #[serde(default)]
    upper_bound: Option<usize>,
}

#[derive(Deserialize)]
struct CountTable {
    family: String,
    counts: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct R1Table {
    rows: Vec<R1Row>,
}

#[derive(Deserialize)]
struct R1Row {
    n: usize,
    r: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct OrbitTable {
    n: usize,
    r: Vec<u64>,
    orbit: Vec<Vec<u64>>,
}

fn parse<T: for<'de> Deserialize<'de>>(id: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("golden table {id}: {e}")))
}

/// Images of `s` under every simultaneous permutation of coordinates.
pub fn full_orbit(s: &ArithStructure) -> BTreeSet<ArithStructure> {
    let mut perm: Vec<usize> = (0..s.len()).collect();
    let mut out = BTreeSet::new();
    loop {
        out.insert(s.permuted(&perm));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// Runs one table. Unknown ids give `UnknownTable`.
pub fn reproduce(id: &str) -> Result<Report> {
    let text = golden(id).ok_or_else(|| {
        Error::UnknownTable(format!("'{id}'; known tables: {}", TABLES.join(", ")))
    })?;
    let mut report = Report::new(id);
    match id {
        "c3-table" => c3_table(&mut report, parse(id, text)?)?,
        "w3-from-c3" => w3_from_c3(&mut report, parse(id, text)?)?,
        "w3-167" => w3_167(&mut report, parse(id, text)?)?,
        "star-counts" | "cycle-counts" | "path-counts" => counts(&mut report, parse(id, text)?)?,
        "r1-examples" => r1_examples(&mut report, parse(id, text)?)?,
        "orbit-example" => orbit_example(&mut report, parse(id, text)?)?,
        _ => unreachable!("every golden table has a runner"),
    }
    Ok(report)
}

fn sorted(v: &[u64]) -> Vec<u64> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

fn c3_table(report: &mut Report, table: RowTable) -> Result<()> {
    let set = enumerate_certified(Family::Cycle, 3)?;
    let mut classes: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for s in set.iter() {
        *classes.entry(sorted(&s.d)).or_insert(0) += 1;
    }
    for row in &table.rows {
        let got = classes.get(&sorted(&row.d)).copied().unwrap_or(0);
        report.check(
            format!("class {:?}", row.d),
            got == row.count && set.contains(&ArithStructure::new(row.d.clone(), row.r.clone())),
            format!("expected {}, found {got}", row.count),
        );
    }
    report.check(
        "class list",
        classes.len() == table.rows.len(),
        format!("{} classes computed", classes.len()),
    );
    if let Some(total) = table.total {
        report.check("total", set.len() == total, format!("expected {total}, found {}", set.len()));
    }
    Ok(())
}

fn w3_from_c3(report: &mut Report, table: RowTable) -> Result<()> {
    let w3 = enumerate_certified(Family::Wheel, 3)?;
    for row in &table.rows {
        let src = row
            .source
            .as_ref()
            .ok_or_else(|| Error::Parse("w3-from-c3 row without source".into()))?;
        let expected = ArithStructure::new(row.d.clone(), row.r.clone());
        let got = cycle_to_wheel_divisor(&src.d, &src.r)?;
        let orbit = full_orbit(&got).len();
        report.check(
            format!("from {:?}", src.d),
            got == expected && w3.contains(&got) && orbit == row.count,
            format!("built d = {:?}, r = {:?}; orbit size {orbit}", got.d, got.r),
        );
    }
    Ok(())
}

fn w3_167(report: &mut Report, table: RowTable) -> Result<()> {
    let w3 = enumerate_certified(Family::Wheel, 3)?;
    let mut union = BTreeSet::new();
    for row in &table.rows {
        let s = ArithStructure::new(row.d.clone(), row.r.clone());
        let orbit = full_orbit(&s);
        let present = orbit.iter().all(|t| w3.contains(t));
        report.check(
            format!("orbit of {:?}", row.r),
            present && orbit.len() == row.count,
            format!("orbit size {} (expected {}), all present: {present}", orbit.len(), row.count),
        );
        union.extend(orbit);
    }
    if let Some(listed) = table.listed {
        report.check("listed", union.len() == listed, format!("{} distinct structures", union.len()));
    }
    if let (Some(lo), Some(hi)) = (table.lower_bound, table.upper_bound) {
        report.check(
            "bracket",
            lo <= w3.len() && w3.len() <= hi,
            format!("{lo} <= {} <= {hi}", w3.len()),
        );
    }
    if let Some(total) = table.total {
        report.check("total", w3.len() == total, format!("expected {total}, found {}", w3.len()));
    }
    Ok(())
}

fn counts(report: &mut Report, table: CountTable) -> Result<()> {
    let family: Family = table.family.parse()?;
    for (n, expected) in table.counts {
        let set: StructureSet = enumerate_certified(family, n)?;
        report.check(
            format!("{family}:{n}"),
            set.len() == expected,
            format!("expected {expected}, found {}", set.len()),
        );
    }
    Ok(())
}

fn r1_examples(report: &mut Report, table: R1Table) -> Result<()> {
    for row in table.rows {
        let wheel = make_graph(Family::Wheel, row.n)?;
        for r in row.r {
            let d = d_from_r(wheel.adjacency(), &r);
            let ones = r.iter().filter(|&&x| x == 1).count();
            report.check(
                format!("wheel:{} r = {r:?}", row.n),
                d.is_some(),
                match d {
                    Some(d) => format!("d = {d:?}, unit entries {ones}"),
                    None => "not an r-structure".to_string(),
                },
            );
        }
    }
    Ok(())
}

fn orbit_example(report: &mut Report, table: OrbitTable) -> Result<()> {
    let orbit = zn_orbit(table.n, &table.r)?;
    report.check(
        format!("orbit of {:?}", table.r),
        orbit == table.orbit,
        format!("computed {orbit:?}"),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_passes() {
        for id in TABLES {
            let report = reproduce(id).unwrap();
            assert!(report.passed, "{id}: {:?}", report.checks);
            assert!(!report.checks.is_empty());
        }
    }

    #[test]
    fn unknown_table() {
        assert!(matches!(reproduce("w9-table"), Err(Error::UnknownTable(_))));
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(full_orbit(&ArithStructure::new(vec![3; 4], vec![1; 4])).len(), 1);
        assert_eq!(full_orbit(&ArithStructure::new(vec![11, 1, 5, 3], vec![1, 6, 2, 3])).len(), 24);
    }
}
