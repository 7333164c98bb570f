//! Counting spaces by property over the isomorphism-class catalogue.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::augment::{enumerate_spaces, par_fold, EnumerateError, Node, ENUMERATION_BOUND};
use crate::properties::{l1_violation_rows, l2_violation_rows};
use crate::space::OrthoSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Predicate {
    All,
    L1,
    L2,
    Linear,
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(Predicate::All),
            "l1" => Ok(Predicate::L1),
            "l2" => Ok(Predicate::L2),
            "linear" => Ok(Predicate::Linear),
            other => Err(format!("unknown filter {other:?}; expected all, l1, l2 or linear")),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Predicate::All => "all",
            Predicate::L1 => "l1",
            Predicate::L2 => "l2",
            Predicate::Linear => "linear",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CensusFilter {
    pub predicate: Predicate,
    pub connected_only: bool,
}

impl CensusFilter {
    pub fn new(predicate: Predicate, connected_only: bool) -> Self {
        CensusFilter { predicate, connected_only }
    }

    /// Whether `space` passes; connectivity is checked before the scans.
    pub fn accepts(&self, space: &OrthoSpace) -> bool {
        let rows: Vec<u64> = space.rows().iter().map(|r| r.bits()).collect();
        self.accepts_rows(&rows)
    }

    pub(crate) fn accepts_rows(&self, rows: &[u64]) -> bool {
        if self.connected_only && !rows_connected(rows) {
            return false;
        }
        match self.predicate {
            Predicate::All => true,
            Predicate::L1 => l1_violation_rows(rows).is_none(),
            Predicate::L2 => l2_violation_rows(rows).is_none(),
            Predicate::Linear => {
                l1_violation_rows(rows).is_none() && l2_violation_rows(rows).is_none()
            }
        }
    }
}

/// `filtered` of the `total` classes on `n` points pass the filter. With
/// `connected_only`, `total` counts connected classes only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountsRow {
    pub n: usize,
    pub total: u64,
    pub filtered: u64,
}

/// Every count the three tables need for one `n`, from a single pass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CensusTally {
    pub n: usize,
    pub total: u64,
    pub connected: u64,
    pub l1: u64,
    pub l1_connected: u64,
    pub l2: u64,
    pub l2_connected: u64,
    pub linear: u64,
    pub linear_connected: u64,
}

impl Add for CensusTally {
    type Output = CensusTally;

    fn add(self, o: CensusTally) -> CensusTally {
        CensusTally {
            n: self.n.max(o.n),
            total: self.total + o.total,
            connected: self.connected + o.connected,
            l1: self.l1 + o.l1,
            l1_connected: self.l1_connected + o.l1_connected,
            l2: self.l2 + o.l2,
            l2_connected: self.l2_connected + o.l2_connected,
            linear: self.linear + o.linear,
            linear_connected: self.linear_connected + o.linear_connected,
        }
    }
}

impl CensusTally {
    fn record(&mut self, rows: &[u64]) {
        let connected = rows_connected(rows) as u64;
        let l1 = l1_violation_rows(rows).is_none() as u64;
        let l2 = l2_violation_rows(rows).is_none() as u64;
        self.total += 1;
        self.connected += connected;
        self.l1 += l1;
        self.l1_connected += l1 & connected;
        self.l2 += l2;
        self.l2_connected += l2 & connected;
        self.linear += l1 & l2;
        self.linear_connected += l1 & l2 & connected;
    }

    pub fn row(&self, filter: CensusFilter) -> CountsRow {
        let (all, conn) = match filter.predicate {
            Predicate::All => (self.total, self.connected),
            Predicate::L1 => (self.l1, self.l1_connected),
            Predicate::L2 => (self.l2, self.l2_connected),
            Predicate::Linear => (self.linear, self.linear_connected),
        };
        if filter.connected_only {
            CountsRow { n: self.n, total: self.connected, filtered: conn }
        } else {
            CountsRow { n: self.n, total: self.total, filtered: all }
        }
    }
}

pub(crate) fn rows_connected(rows: &[u64]) -> bool {
    let n = rows.len();
    if n == 0 {
        return false;
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0u64;
        let mut rest = frontier;
        while rest != 0 {
            next |= rows[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == all
}

/// Counts the classes on `n` points passing `filter`.
pub fn count_census(n: usize, filter: CensusFilter) -> Result<CountsRow, EnumerateError> {
    Ok(census_tally(n)?.row(filter))
}

/// One pass over the classes on `n` points, split across the rayon pool.
pub fn census_tally(n: usize) -> Result<CensusTally, EnumerateError> {
    enumerate_spaces(n)?;
    let start = CensusTally { n, ..CensusTally::default() };
    Ok(par_fold(n, start, |t: &mut CensusTally, node: &Node| t.record(node.rows()), |a, b| a + b))
}

/// Folds every space on `n` points into per-worker accumulators and merges
/// them. Work is split across the rayon pool; with an associative,
/// commutative `merge` the result does not depend on scheduling.
pub fn par_fold_spaces<T, F, M>(n: usize, init: T, visit: F, merge: M) -> Result<T, EnumerateError>
where
    T: Clone + Send + Sync,
    F: Fn(&mut T, &OrthoSpace) + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    enumerate_spaces(n)?;
    Ok(par_fold(n, init, |acc, node: &Node| visit(acc, &node.to_space()), merge))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TableId {
    I,
    II,
    III,
}

impl FromStr for TableId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(TableId::I),
            "II" | "2" => Ok(TableId::II),
            "III" | "3" => Ok(TableId::III),
            other => Err(format!("unknown table {other:?}; expected I, II or III")),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::I => "I",
            TableId::II => "II",
            TableId::III => "III",
        })
    }
}

// n, all, L1, connected, connected L1
const GOLDEN_I: [(usize, [u64; 4]); 9] = [
    (2, [2, 1, 1, 1]),
    (3, [4, 1, 2, 1]),
    (4, [11, 2, 6, 1]),
    (5, [34, 2, 21, 2]),
    (6, [156, 3, 112, 2]),
    (7, [1044, 3, 853, 3]),
    (8, [12346, 5, 11117, 4]),
    (9, [274668, 5, 261080, 5]),
    (10, [12005168, 7, 11716571, 6]),
];

// n, all, L2, connected, connected L2
const GOLDEN_II: [(usize, [u64; 4]); 9] = [
    (2, [2, 1, 1, 0]),
    (3, [4, 2, 2, 0]),
    (4, [11, 4, 6, 0]),
    (5, [34, 8, 21, 0]),
    (6, [156, 21, 112, 2]),
    (7, [1044, 57, 853, 8]),
    (8, [12346, 220, 11117, 70]),
    (9, [274668, 1056, 261080, 490]),
    (10, [12005168, 7301, 11716571, 4577]),
];

// n, all, linear, connected, connected linear
const GOLDEN_III: [(usize, [u64; 4]); 8] = [
    (3, [4, 0, 2, 0]),
    (4, [11, 1, 6, 0]),
    (5, [34, 0, 21, 0]),
    (6, [156, 1, 112, 0]),
    (7, [1044, 0, 853, 0]),
    (8, [12346, 1, 11117, 0]),
    (9, [274668, 0, 261080, 0]),
    (10, [12005168, 1, 11716571, 0]),
];

impl TableId {
    pub fn predicate(self) -> Predicate {
        match self {
            TableId::I => Predicate::L1,
            TableId::II => Predicate::L2,
            TableId::III => Predicate::Linear,
        }
    }

    pub fn columns(self) -> [&'static str; 4] {
        match self {
            TableId::I => ["all", "l1", "connected", "connected_l1"],
            TableId::II => ["all", "l2", "connected", "connected_l2"],
            TableId::III => ["all", "linear", "connected", "connected_linear"],
        }
    }

    /// Smallest `n` the table has a row for.
    pub fn first_n(self) -> usize {
        self.golden()[0].0
    }

    fn golden(self) -> &'static [(usize, [u64; 4])] {
        match self {
            TableId::I => &GOLDEN_I,
            TableId::II => &GOLDEN_II,
            TableId::III => &GOLDEN_III,
        }
    }

    /// Reference values for row `n`, if the table has that row.
    pub fn expected(self, n: usize) -> Option<[u64; 4]> {
        self.golden().iter().find(|(m, _)| *m == n).map(|(_, cells)| *cells)
    }

    /// The four cells of row `n` drawn from a tally.
    pub fn cells(self, tally: &CensusTally) -> [u64; 4] {
        let all = tally.row(CensusFilter::new(self.predicate(), false));
        let conn = tally.row(CensusFilter::new(self.predicate(), true));
        [all.total, all.filtered, conn.total, conn.filtered]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub computed: [u64; 4],
    pub expected: Option<[u64; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub column: &'static str,
    pub expected: u64,
    pub found: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub table: TableId,
    pub columns: [&'static str; 4],
    pub rows: Vec<TableRow>,
    pub first_mismatch: Option<Mismatch>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }

    /// Builds the report from tallies already computed; rows the table does
    /// not cover are skipped.
    pub fn from_tallies(table: TableId, tallies: &[CensusTally]) -> TableReport {
        let columns = table.columns();
        let mut rows = Vec::new();
        let mut first_mismatch = None;
        for tally in tallies.iter().filter(|t| t.n >= table.first_n()) {
            let computed = table.cells(tally);
            let expected = table.expected(tally.n);
            if let (Some(exp), None) = (expected, &first_mismatch) {
                if let Some(col) = (0..4).find(|&c| exp[c] != computed[c]) {
                    first_mismatch = Some(Mismatch {
                        n: tally.n,
                        column: columns[col],
                        expected: exp[col],
                        found: computed[col],
                    });
                }
            }
            rows.push(TableRow { n: tally.n, computed, expected });
        }
        TableReport { table, columns, rows, first_mismatch }
    }
}

/// Tallies for every `n` in `2..=n_max`.
pub fn tally_range(n_max: usize) -> Result<Vec<CensusTally>, EnumerateError> {
    (2..=n_max).map(census_tally).collect()
}

/// Recomputes a table up to `n_max` and compares it cell by cell with the
/// reference values. A mismatch is reported in the result, not as an error.
pub fn verify_table(table: TableId, n_max: usize) -> Result<TableReport, EnumerateError> {
    if n_max > ENUMERATION_BOUND {
        return Err(EnumerateError::OutOfBounds(n_max));
    }
    Ok(TableReport::from_tallies(table, &tally_range(n_max)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("no perfect matching on odd sets (got {0} points)")]
    Odd(usize),
    #[error("need at least two points")]
    Empty,
    #[error("{points} points exceed the limit of {limit} for this method")]
    TooLarge { points: usize, limit: usize },
}

/// Largest point count [`count_labeled_rank2_l1`] enumerates.
pub const MATCHING_COUNT_LIMIT: usize = 16;
/// Largest point count [`count_labeled_rank2_l1_brute`] accepts.
pub const BRUTE_COUNT_LIMIT: usize = 6;

fn check_even(two_n: usize, limit: usize) -> Result<(), CountError> {
    if two_n == 0 {
        Err(CountError::Empty)
    } else if two_n % 2 == 1 {
        Err(CountError::Odd(two_n))
    } else if two_n > limit {
        Err(CountError::TooLarge { points: two_n, limit })
    } else {
        Ok(())
    }
}

/// Labeled spaces on `two_n` fixed points with rank 2 satisfying (L1),
/// counted by enumerating perfect matchings one pair at a time.
pub fn count_labeled_rank2_l1(two_n: usize) -> Result<u64, CountError> {
    check_even(two_n, MATCHING_COUNT_LIMIT)?;
    fn matchings(free: u32) -> u64 {
        if free == 0 {
            return 1;
        }
        let first = free.trailing_zeros();
        let rest = free & !(1 << first);
        let mut partners = rest;
        let mut count = 0;
        while partners != 0 {
            let p = partners.trailing_zeros();
            partners &= partners - 1;
            count += matchings(rest & !(1 << p));
        }
        count
    }
    Ok(matchings(((1u64 << two_n) - 1) as u32))
}

/// Same count by testing every labeled graph on `two_n` points.
pub fn count_labeled_rank2_l1_brute(two_n: usize) -> Result<u64, CountError> {
    check_even(two_n, BRUTE_COUNT_LIMIT)?;
    let pairs: Vec<(usize, usize)> =
        (0..two_n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut count = 0;
    for mask in 0u64..1 << pairs.len() {
        let mut rows = vec![0u64; two_n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
        let space = OrthoSpace::from_raw(&rows);
        if space.rank() == 2 && l1_violation_rows(&rows).is_none() {
            count += 1;
        }
    }
    Ok(count)
}
