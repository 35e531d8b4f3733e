//! Closed-form distances from fixed anchor vertices, checked against BFS.
//!
//! Odd `S_n` and `U_n` are anchored at `a_1` and `a_{k+1}`; even `U_n`
//! (`n >= 10`) at `c_1` and `c_k`. Even `U_n` rows are layered: each class
//! is the previous class's distance plus a per-row offset, and rows are
//! tried in their listed order with the first match winning.

use serde::Serialize;

use super::{Class, Family, FamilyError, PolytopeInstance};
use crate::graph::Vertex;

/// How to read the printed tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableReading {
    /// Rows exactly as listed.
    Literal,
    /// Boundary and index corrections that make every entry agree with BFS.
    Corrected,
}

/// A table entry that disagrees with the BFS distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableDeviation {
    pub family: Family,
    pub n: usize,
    pub vertex: String,
    pub anchor: String,
    pub rule: String,
    pub table: i64,
    pub bfs: u32,
}

/// Two listed rows that both match an entry but prescribe different values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableConflict {
    pub n: usize,
    pub vertex: String,
    pub anchor: String,
    pub first_rule: String,
    pub second_rule: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Anchor {
    First,
    Second,
}

struct Entry {
    value: i64,
    rule: String,
}

fn anchor_of(inst: &PolytopeInstance, anchor: Vertex) -> Result<Anchor, FamilyError> {
    let (class, l) = inst.locate(anchor);
    let k = inst.k();
    let (want, second) = match (inst.family(), inst.n() % 2) {
        (_, 1) => (Class::A, k + 1),
        (Family::U, _) => (Class::C, k),
        (Family::S, _) => return Err(FamilyError::WrongParity { expected: "odd", n: inst.n() }),
    };
    match (class == want, l) {
        (true, 1) => Ok(Anchor::First),
        (true, l) if l == second => Ok(Anchor::Second),
        _ => Err(FamilyError::UnsupportedAnchor(inst.graph().display_name(anchor))),
    }
}

fn check_index(inst: &PolytopeInstance, class: Class, j: usize) -> Result<(), FamilyError> {
    if !inst.family().classes().contains(&class) {
        return Err(FamilyError::NoSuchClass { family: inst.family(), class });
    }
    if j == 0 || j > inst.n() {
        return Err(FamilyError::IndexOutOfRange(j));
    }
    Ok(())
}

/// Distance from `class_j` to an anchor of odd `S_n`.
pub fn analytic_distance_s_odd(
    inst: &PolytopeInstance,
    class: Class,
    j: usize,
    anchor: Vertex,
) -> Result<u32, FamilyError> {
    if inst.family() != Family::S {
        return Err(FamilyError::WrongFamily(inst.family()));
    }
    if inst.n() % 2 == 0 {
        return Err(FamilyError::WrongParity { expected: "odd", n: inst.n() });
    }
    check_index(inst, class, j)?;
    let side = anchor_of(inst, anchor)?;
    Ok(s_odd(class, j, inst.k(), side).value as u32)
}

/// Distance from `class_j` to an anchor of `U_n` under `reading`.
pub fn analytic_distance_u(
    inst: &PolytopeInstance,
    class: Class,
    j: usize,
    anchor: Vertex,
    reading: TableReading,
) -> Result<u32, FamilyError> {
    if inst.family() != Family::U {
        return Err(FamilyError::WrongFamily(inst.family()));
    }
    check_index(inst, class, j)?;
    if inst.n() % 2 == 0 && inst.k() < 5 {
        return Err(FamilyError::NoTable(inst.n()));
    }
    let side = anchor_of(inst, anchor)?;
    let entry = if inst.n() % 2 == 1 {
        u_odd(class, j, inst.k(), side, reading)
    } else {
        u_even(class, j, inst.k(), side, reading)
    };
    Ok(entry.value as u32)
}

/// Every table entry of `inst` that disagrees with BFS.
pub fn table_deviations(
    inst: &PolytopeInstance,
    reading: TableReading,
) -> Result<Vec<TableDeviation>, FamilyError> {
    let (n, k) = (inst.n(), inst.k());
    let anchors = match (inst.family(), n % 2) {
        (Family::S, 0) => return Err(FamilyError::WrongParity { expected: "odd", n }),
        (Family::U, 0) if k < 5 => return Err(FamilyError::NoTable(n)),
        (Family::U, 0) => [(Anchor::First, Class::C, 1), (Anchor::Second, Class::C, k)],
        _ => [(Anchor::First, Class::A, 1), (Anchor::Second, Class::A, k + 1)],
    };
    let dm = inst.graph().distances();
    let mut out = Vec::new();
    for (side, ac, al) in anchors {
        let anchor = inst.vertex(ac, al as i64);
        for &class in inst.family().classes() {
            for j in 1..=n {
                let entry = match (inst.family(), n % 2) {
                    (Family::S, _) => s_odd(class, j, k, side),
                    (Family::U, 1) => u_odd(class, j, k, side, reading),
                    _ => u_even(class, j, k, side, reading),
                };
                let v = inst.vertex(class, j as i64);
                let bfs = dm.get(v, anchor);
                if entry.value != bfs as i64 {
                    out.push(TableDeviation {
                        family: inst.family(),
                        n,
                        vertex: inst.graph().display_name(v),
                        anchor: inst.graph().display_name(anchor),
                        rule: entry.rule,
                        table: entry.value,
                        bfs,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Entries of even `U_n` matched by two listed rows with different offsets.
pub fn table_conflicts(n: usize) -> Result<Vec<TableConflict>, FamilyError> {
    if n % 2 == 1 {
        return Err(FamilyError::WrongParity { expected: "even", n });
    }
    let k = n / 2;
    if k < 5 {
        return Err(FamilyError::NoTable(n));
    }
    let label = |c: Class, i: usize| format!("{}_{i}", c.letter());
    let mut out = Vec::new();
    for side in [Anchor::First, Anchor::Second] {
        let l = if side == Anchor::First { 1 } else { k };
        for class in [Class::C, Class::D, Class::E] {
            for j in 1..=n {
                let hits: Vec<&DeltaRow> = EVEN_ROWS
                    .iter()
                    .filter(|r| r.class == class && r.side == side && r.matches(j, k, TableReading::Literal))
                    .collect();
                if let Some(second) = hits.iter().skip(1).find(|r| r.delta != hits[0].delta) {
                    out.push(TableConflict {
                        n,
                        vertex: label(class, j),
                        anchor: label(Class::C, l),
                        first_rule: hits[0].describe(),
                        second_rule: second.describe(),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn piecewise(j: usize, split: usize, lo: i64, hi: i64, rule: &str) -> Entry {
    if j <= split {
        Entry { value: lo, rule: format!("{rule}, j <= {split}") }
    } else {
        Entry { value: hi, rule: format!("{rule}, j > {split}") }
    }
}

fn s_odd(class: Class, j: usize, k: usize, side: Anchor) -> Entry {
    let (ji, ki) = (j as i64, k as i64);
    let rule = rule_name(class, side, "a_1", "a_{k+1}");
    let split = if class == Class::A { k + 1 } else { k };
    let (lo, hi) = match (side, class) {
        (Anchor::First, Class::A) => (ji - 1, 2 * ki - ji + 2),
        (Anchor::First, Class::B) => (ji, 2 * ki - ji + 2),
        (Anchor::First, Class::C) => (ji + 1, 2 * ki - ji + 3),
        (Anchor::First, _) => (ji + 2, 2 * ki - ji + 4),
        (Anchor::Second, Class::A) => (ki - ji + 1, ji - ki - 1),
        (Anchor::Second, Class::B) => (ki - ji + 1, ji - ki),
        (Anchor::Second, Class::C) => (ki - ji + 2, ji - ki + 1),
        (Anchor::Second, _) => (ki - ji + 3, ji - ki + 2),
    };
    piecewise(j, split, lo, hi, &rule)
}

fn u_odd(class: Class, j: usize, k: usize, side: Anchor, reading: TableReading) -> Entry {
    let (ji, ki) = (j as i64, k as i64);
    let rule = rule_name(class, side, "a_1", "a_{k+1}");
    let c = class as i64;
    let (lo, hi) = match side {
        Anchor::First => (ji - 1 + c, 2 * ki - ji + [2, 3, 4, 4, 5][class as usize]),
        Anchor::Second => (ki - ji + [1, 2, 3, 3, 4][class as usize], ji - ki - 1 + c),
    };
    // d and e rows toward a_{k+1} switch branch one index early.
    let split = match (reading, side, class) {
        (TableReading::Corrected, Anchor::Second, Class::D | Class::E) => k,
        _ => k + 1,
    };
    piecewise(j, split, lo, hi, &rule)
}

fn rule_name(class: Class, side: Anchor, first: &str, second: &str) -> String {
    let anchor = if side == Anchor::First { first } else { second };
    format!("d({}_j, {anchor})", class.letter())
}

/// One offset row of the even `U_n` table.
struct DeltaRow {
    class: Class,
    side: Anchor,
    text: &'static str,
    delta: i64,
    hit: fn(usize, usize) -> bool,
    /// Extra index the literal row also lists.
    stray: Option<usize>,
}

impl DeltaRow {
    fn matches(&self, j: usize, k: usize, reading: TableReading) -> bool {
        (self.hit)(j, k) || (reading == TableReading::Literal && self.stray == Some(j))
    }

    fn describe(&self) -> String {
        let (prev, anchor) = (
            match self.class {
                Class::C => 'b',
                Class::D => 'c',
                _ => 'd',
            },
            if self.side == Anchor::First { "c_1" } else { "c_k" },
        );
        let sign = if self.delta < 0 { '-' } else { '+' };
        format!(
            "d({}_j, {anchor}) = d({prev}_j, {anchor}) {sign} {}, {}",
            self.class.letter(),
            self.delta.abs(),
            self.text
        )
    }
}

macro_rules! row {
    ($class:ident, $side:ident, $text:literal, $delta:expr, $hit:expr) => {
        row!($class, $side, $text, $delta, $hit, None)
    };
    ($class:ident, $side:ident, $text:literal, $delta:expr, $hit:expr, $stray:expr) => {
        DeltaRow {
            class: Class::$class,
            side: Anchor::$side,
            text: $text,
            delta: $delta,
            hit: $hit,
            stray: $stray,
        }
    };
}

static EVEN_ROWS: &[DeltaRow] = &[
    row!(C, First, "j = 1", -1, |j, _| j == 1),
    row!(C, First, "j in {2, 2k}", 0, |j, k| j == 2 || j == 2 * k),
    row!(C, Second, "j in {1, 2, 2k}", 1, |j, k| j <= 2 || j == 2 * k),
    row!(C, First, "3 <= j <= k-2", 1, |j, k| (3..=k - 2).contains(&j)),
    row!(C, Second, "3 <= j <= k-2", 1, |j, k| (3..=k - 2).contains(&j)),
    row!(C, First, "j in {k-1, k, k+1}", 1, |j, k| (k - 1..=k + 1).contains(&j)),
    row!(C, Second, "j in {k-1, k+1, 5}", 0, |j, k| j == k - 1 || j == k + 1, Some(5)),
    row!(C, First, "k+2 <= j <= 2k-1", 1, |j, k| (k + 2..=2 * k - 1).contains(&j)),
    row!(C, Second, "k+2 <= j <= 2k-1", 1, |j, k| (k + 2..=2 * k - 1).contains(&j)),
    row!(C, Second, "j = k", -1, |j, k| j == k),
    row!(D, First, "1 <= j <= k", 1, |j, k| j <= k),
    row!(D, First, "k+1 <= j <= 2k-2", 0, |j, k| (k + 1..=2 * k - 2).contains(&j)),
    row!(D, First, "j in {2k-1, 2k}", -1, |j, k| j >= 2 * k - 1),
    row!(D, Second, "j in {k-2, k-1}", -1, |j, k| j == k - 2 || j == k - 1),
    row!(D, Second, "1 <= j <= k-3 or j = 2k", 0, |j, k| j <= k - 3 || j == 2 * k),
    row!(D, Second, "k <= j <= 2k-1", 1, |j, k| (k..=2 * k - 1).contains(&j)),
    row!(E, First, "j in {1, 2k}", 1, |j, k| j == 1 || j == 2 * k),
    row!(E, First, "j in {2, 2k-1}", 0, |j, k| j == 2 || j == 2 * k - 1),
    row!(E, First, "3 <= j <= 2k-2", -1, |j, k| (3..=2 * k - 2).contains(&j)),
    row!(E, Second, "1 <= j <= k-3 or k+2 <= j <= 2k", -1, |j, k| j <= k - 3 || j >= k + 2),
    row!(E, Second, "j in {k-2, k+1}", 0, |j, k| j == k - 2 || j == k + 1),
    row!(E, Second, "j in {k-1, k}", 1, |j, k| j == k - 1 || j == k),
];

fn u_even(class: Class, j: usize, k: usize, side: Anchor, reading: TableReading) -> Entry {
    let (ji, ki) = (j as i64, k as i64);
    let base = match side {
        Anchor::First => piecewise(j, k, ji + 1, 2 * ki - ji + 3, "d(a_j, c_1)"),
        Anchor::Second => piecewise(j, k, ki - ji + 2, ji - ki + 2, "d(a_j, c_k)"),
    };
    if class == Class::A {
        return base;
    }
    let mut value = base.value - 1;
    let mut rule = format!("d(b_j, c_l) = d(a_j, c_l) - 1; {}", base.rule);
    for layer in [Class::C, Class::D, Class::E] {
        if layer > class {
            break;
        }
        let row = EVEN_ROWS
            .iter()
            .find(|r| r.class == layer && r.side == side && r.matches(j, k, reading))
            .expect("every index is covered when k >= 5");
        value += row.delta;
        rule = row.describe();
    }
    Entry { value, rule }
}
