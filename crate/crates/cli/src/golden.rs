//! Reference tables embedded in the binary and the diff machinery the
//! `check` subcommands use. Rows are transcribed verbatim; a checksum test
//! guards them against accidental edits.

use std::fmt;
use std::str::FromStr;

use blockprod_core::pellfam::EquationId;
use blockprod_core::search::{fib_family, SolutionRecord};

use crate::io::to_jsonl;

/// `(b, x, y, z)` for the square equation, `b` odd in `3..=13`,
/// `2b < k <= 300`. 58 rows.
const TABLE1: &[(u64, u64, u64, u64)] = &[
    (3, 5, 12, 360),
    (3, 7, 18, 1260),
    (3, 4, 21, 504),
    (3, 8, 33, 3960),
    (3, 35, 60, 95760),
    (3, 10, 42, 8190),
    (3, 7, 45, 5040),
    (3, 32, 87, 146160),
    (3, 93, 245, 3437280),
    (3, 125, 363, 9662400),
    (3, 77, 333, 4102560),
    (5, 7, 30, 2100),
    (5, 11, 49, 11088),
    (5, 6, 49, 2772),
    (5, 11, 55, 13200),
    (5, 6, 55, 3300),
    (5, 21, 70, 54600),
    (5, 7, 75, 8400),
    (5, 19, 100, 79800),
    (5, 3605, 3703, 48773919600),
    (5, 145, 343, 11083800),
    (5, 33, 280, 877800),
    (5, 16, 275, 277200),
    (7, 250, 507, 45103500),
    (7, 10, 27, 3060),
    (7, 105, 128, 1552320),
    (7, 8, 42, 2940),
    (7, 41, 75, 167280),
    (7, 34, 75, 125460),
    (7, 9, 56, 7056),
    (7, 32, 91, 152880),
    (7, 13, 98, 38220),
    (7, 42, 128, 388080),
    (7, 8, 105, 11760),
    (7, 8, 128, 15840),
    (7, 12, 140, 55860),
    (7, 18, 169, 154440),
    (7, 32, 189, 458640),
    (7, 11, 169, 61776),
    (7, 185, 363, 17387040),
    (9, 15, 36, 9720),
    (9, 21, 54, 34020),
    (9, 12, 63, 13608),
    (9, 24, 99, 106920),
    (9, 105, 180, 2585520),
    (9, 11, 90, 17820),
    (9, 30, 126, 221130),
    (9, 21, 135, 136080),
    (9, 25, 153, 220320),
    (9, 10, 171, 30780),
    (9, 96, 261, 3946320),
    (11, 91, 119, 1113840),
    (11, 13, 132, 37752),
    (11, 12, 253, 66792),
    (13, 22, 77, 55440),
    (13, 14, 169, 42588),
    (13, 15, 182, 70980),
    (13, 99, 288, 4767840),
];

/// `(x, y, z)` with `x(x+1)(x+2) = z^2 y(y+1)(y+2)`; the 10 known rows for
/// `x < 10^7`, `y < 10^5` (all fall inside `x < 2*10^5`, `y < 400`).
const TABLE2: &[(u64, u64, u64)] = &[
    (2, 1, 2),
    (14, 5, 4),
    (26, 12, 3),
    (48, 1, 140),
    (48, 2, 70),
    (1680, 5, 4756),
    (1680, 14, 1189),
    (13454, 90, 1798),
    (57120, 168, 6214),
    (114242, 337, 6214),
];

/// `(x, y, z)` with `x(x+1) y(y+1) = z^3`, `x <= y <= 10^5`.
const PAIR_CUBE3: &[(u64, u64, u64)] = &[(11, 242, 198), (32, 242, 396), (539, 3024, 13860)];

/// Family indices `n` whose `k = F_{2n}` lies inside `[4, 5000]`. Within
/// that window exactly these `k` carry a solution, one each (the family
/// members); every other `k` carries none.
const FIB_FAMILY_INDICES: [u32; 7] = [3, 4, 5, 6, 7, 8, 9];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableId {
    Table1,
    Table2,
    PairCube3,
    FibCorollary,
}

impl TableId {
    pub fn as_str(&self) -> &'static str {
        match self {
            TableId::Table1 => "table1",
            TableId::Table2 => "table2",
            TableId::PairCube3 => "paircube3",
            TableId::FibCorollary => "fibcorollary",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table1" => Ok(TableId::Table1),
            "table2" => Ok(TableId::Table2),
            "paircube3" => Ok(TableId::PairCube3),
            "fibcorollary" | "fib" => Ok(TableId::FibCorollary),
            other => Err(format!("unknown table `{other}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GoldenTable {
    pub id: TableId,
    pub rows: Vec<SolutionRecord>,
}

/// Build a golden table. Rows come out sorted by the canonical key.
pub fn golden(id: TableId) -> GoldenTable {
    let mut rows: Vec<SolutionRecord> = match id {
        TableId::Table1 => TABLE1
            .iter()
            .map(|&(b, x, y, z)| SolutionRecord::from_u64(EquationId::Z2, b, y - x, x, y, z))
            .collect(),
        TableId::Table2 => TABLE2
            .iter()
            .map(|&(x, y, z)| SolutionRecord::from_u64(EquationId::Ratio, 0, 0, x, y, z))
            .collect(),
        TableId::PairCube3 => PAIR_CUBE3
            .iter()
            .map(|&(x, y, z)| SolutionRecord::from_u64(EquationId::PairCube, 0, 0, x, y, z))
            .collect(),
        TableId::FibCorollary => FIB_FAMILY_INDICES.iter().map(|&n| fib_family(n)).collect(),
    };
    for r in &rows {
        assert!(r.verify(), "golden row fails its equation: {}", to_jsonl(r));
    }
    rows.sort_by(|a, b| a.canonical_cmp(b));
    GoldenTable { id, rows }
}

/// Symmetric difference between a computed result set and a golden table.
#[derive(Clone, Debug, Default)]
pub struct DiffReport {
    pub missing: Vec<SolutionRecord>,
    pub unexpected: Vec<SolutionRecord>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.missing {
            writeln!(f, "missing    {}", to_jsonl(r))?;
        }
        for r in &self.unexpected {
            writeln!(f, "unexpected {}", to_jsonl(r))?;
        }
        Ok(())
    }
}

/// Compare by the canonical `(b, k, x, y, z)` key; both sides are sorted
/// first, so input order is immaterial.
pub fn golden_compare(actual: &[SolutionRecord], table: &GoldenTable) -> DiffReport {
    let mut got = actual.to_vec();
    got.sort_by(|a, b| a.canonical_cmp(b));
    let mut report = DiffReport::default();
    let (mut i, mut j) = (0, 0);
    while i < got.len() && j < table.rows.len() {
        match got[i].canonical_cmp(&table.rows[j]) {
            std::cmp::Ordering::Less => {
                report.unexpected.push(got[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                report.missing.push(table.rows[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    report.unexpected.extend(got[i..].iter().cloned());
    report.missing.extend(table.rows[j..].iter().cloned());
    report
}

/// FNV-1a over the canonical serialization; guards the transcriptions.
pub fn checksum(table: &GoldenTable) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for r in &table.rows {
        for byte in to_jsonl(r).bytes().chain(*b"\n") {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        assert_eq!(golden(TableId::Table1).rows.len(), 58);
        assert_eq!(golden(TableId::Table2).rows.len(), 10);
        assert_eq!(golden(TableId::PairCube3).rows.len(), 3);
        assert_eq!(golden(TableId::FibCorollary).rows.len(), 7);
    }

    #[test]
    fn every_golden_row_satisfies_its_equation() {
        for id in [
            TableId::Table1,
            TableId::Table2,
            TableId::PairCube3,
            TableId::FibCorollary,
        ] {
            for r in &golden(id).rows {
                assert!(r.verify());
            }
        }
    }

    #[test]
    fn diff_scenarios() {
        let table = golden(TableId::PairCube3);
        let all = table.rows.clone();
        assert!(golden_compare(&all, &table).is_empty());

        let mut missing_one = all.clone();
        missing_one.remove(0);
        let d = golden_compare(&missing_one, &table);
        assert_eq!(d.missing.len(), 1);
        assert!(d.unexpected.is_empty());

        let mut with_extra = all.clone();
        with_extra.push(SolutionRecord::from_u64(
            EquationId::PairCube,
            0,
            0,
            1,
            1,
            1,
        ));
        let d = golden_compare(&with_extra, &table);
        assert_eq!(d.unexpected.len(), 1);
        assert!(d.missing.is_empty());
    }
}
