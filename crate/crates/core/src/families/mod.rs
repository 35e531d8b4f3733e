//! The convex polytopes `S_n` (4n vertices) and `U_n` (5n vertices): graph
//! generators, closed-form local and strong dimensions, the constructive
//! witness sets, and mechanical verification of the dimension formulas.

mod tables;
mod verify;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coverage::{Meter, Requirements, SearchBudget};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::resolvers::VariantKind;

pub use tables::{
    analytic_distance_s_odd, analytic_distance_u, table_conflicts, table_deviations, TableConflict,
    TableDeviation, TableReading,
};
pub use verify::{verify_theorem, LowerMethod, TheoremReport, TheoremRow, TheoremStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    S,
    U,
}

impl Family {
    pub fn classes(self) -> &'static [Class] {
        match self {
            Family::S => &[Class::A, Class::B, Class::C, Class::D],
            Family::U => &[Class::A, Class::B, Class::C, Class::D, Class::E],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::S => "S",
            Family::U => "U",
        })
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "S" | "s" => Ok(Family::S),
            "U" | "u" => Ok(Family::U),
            other => Err(FamilyError::UnknownFamily(other.to_owned())),
        }
    }
}

/// Vertex class: the ring a vertex sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Class {
    A,
    B,
    C,
    D,
    E,
}

impl Class {
    pub fn letter(self) -> char {
        match self {
            Class::A => 'a',
            Class::B => 'b',
            Class::C => 'c',
            Class::D => 'd',
            Class::E => 'e',
        }
    }

    fn offset(self) -> usize {
        self as usize
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_lowercase() {
            'a' => Some(Class::A),
            'b' => Some(Class::B),
            'c' => Some(Class::C),
            'd' => Some(Class::D),
            'e' => Some(Class::E),
            _ => None,
        }
    }
}

/// The two variants with closed-form values on these families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremKind {
    Local,
    Strong,
}

impl From<TheoremKind> for VariantKind {
    fn from(k: TheoremKind) -> Self {
        match k {
            TheoremKind::Local => VariantKind::Local,
            TheoremKind::Strong => VariantKind::Strong,
        }
    }
}

impl TryFrom<VariantKind> for TheoremKind {
    type Error = FamilyError;

    fn try_from(k: VariantKind) -> Result<Self, Self::Error> {
        match k {
            VariantKind::Local => Ok(TheoremKind::Local),
            VariantKind::Strong => Ok(TheoremKind::Strong),
            other => Err(FamilyError::NoFormula(other)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("ring size must be at least 3, got {0}")]
    NTooSmall(usize),
    #[error("unknown family {0:?} (expected S or U)")]
    UnknownFamily(String),
    #[error("malformed family spec {0:?} (expected S:n or U:n)")]
    BadSpec(String),
    #[error("this distance table is for {expected} n, got n = {n}")]
    WrongParity { expected: &'static str, n: usize },
    #[error("no distance table for family {0}")]
    WrongFamily(Family),
    #[error("no distance table is anchored at {0}")]
    UnsupportedAnchor(String),
    #[error("distance tables for even n need n >= 10, got {0}")]
    NoTable(usize),
    #[error("class {class:?} does not exist in family {family}")]
    NoSuchClass { family: Family, class: Class },
    #[error("index {0} outside 1..=n")]
    IndexOutOfRange(usize),
    #[error("no closed form for the {0} variant")]
    NoFormula(VariantKind),
}

/// A generated `S_n` or `U_n` with class-indexed vertex lookup.
///
/// Vertices are numbered class-major: `a_1..a_n` are `1..=n`, `b_i` is
/// `n + i`, and so on.
#[derive(Debug, Clone)]
pub struct PolytopeInstance {
    family: Family,
    n: usize,
    graph: Graph,
}

impl PolytopeInstance {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `⌊n/2⌋`.
    pub fn k(&self) -> usize {
        self.n / 2
    }

    /// The vertex `class_i`, with `i` reduced modulo `n` into `1..=n`.
    pub fn vertex(&self, class: Class, i: i64) -> Vertex {
        debug_assert!(self.family.classes().contains(&class));
        let n = self.n as i64;
        let idx = (i - 1).rem_euclid(n) as usize + 1;
        class.offset() * self.n + idx
    }

    /// Inverse of [`vertex`](Self::vertex).
    pub fn locate(&self, v: Vertex) -> (Class, usize) {
        let class = self.family.classes()[(v - 1) / self.n];
        (class, (v - 1) % self.n + 1)
    }

    pub fn set_of<I: IntoIterator<Item = (Class, i64)>>(&self, members: I) -> VertexSet {
        members.into_iter().map(|(c, i)| self.vertex(c, i)).collect()
    }
}

/// Builds `S_n` or `U_n`, `n >= 3`.
pub fn generate(family: Family, n: usize) -> Result<PolytopeInstance, FamilyError> {
    if n < 3 {
        return Err(FamilyError::NTooSmall(n));
    }
    let classes = family.classes();
    let v = |class: Class, i: usize| class.offset() * n + (i - 1) % n + 1;
    let mut edges = Vec::with_capacity(8 * n);
    for i in 1..=n {
        let next = i + 1;
        match family {
            Family::S => {
                for c in [Class::A, Class::B, Class::C, Class::D] {
                    edges.push((v(c, i), v(c, next)));
                }
                edges.push((v(Class::A, next), v(Class::B, i)));
                edges.push((v(Class::A, i), v(Class::B, i)));
                edges.push((v(Class::B, i), v(Class::C, i)));
                edges.push((v(Class::C, i), v(Class::D, i)));
            }
            Family::U => {
                for c in [Class::A, Class::B, Class::E] {
                    edges.push((v(c, i), v(c, next)));
                }
                edges.push((v(Class::A, i), v(Class::B, i)));
                edges.push((v(Class::B, i), v(Class::C, i)));
                edges.push((v(Class::C, i), v(Class::D, i)));
                edges.push((v(Class::D, i), v(Class::E, i)));
                edges.push((v(Class::C, next), v(Class::D, i)));
            }
        }
    }
    let labels = classes
        .iter()
        .flat_map(|&c| (1..=n).map(move |i| (v(c, i), format!("{}_{i}", c.letter()))));
    let graph = Graph::from_edge_list(classes.len() * n, &edges)
        .expect("polytope edge sets are simple and connected")
        .with_name(format!("{family}_{n}"))
        .with_labels(labels)
        .expect("labels are in range");
    Ok(PolytopeInstance { family, n, graph })
}

/// Parses `"S:n"` or `"U:n"`.
pub fn parse_family_spec(spec: &str) -> Result<(Family, usize), FamilyError> {
    let (fam, n) = spec
        .split_once(':')
        .ok_or_else(|| FamilyError::BadSpec(spec.to_owned()))?;
    let family = fam.trim().parse()?;
    let n = n
        .trim()
        .parse()
        .map_err(|_| FamilyError::BadSpec(spec.to_owned()))?;
    Ok((family, n))
}

/// The closed-form dimension.
pub fn formula_dimension(family: Family, n: usize, kind: TheoremKind) -> usize {
    let odd = n % 2 == 1;
    match (family, kind) {
        (Family::S, TheoremKind::Local) => {
            if odd {
                2
            } else {
                3
            }
        }
        (Family::S, TheoremKind::Strong) => {
            if odd {
                n
            } else {
                3 * n / 2
            }
        }
        (Family::U, TheoremKind::Local) => 2,
        (Family::U, TheoremKind::Strong) => {
            if odd {
                2 * n
            } else {
                5 * n / 2
            }
        }
    }
}

/// The constructive witness of size [`formula_dimension`].
///
/// For even `S_n` no explicit local witness is known in closed form; the
/// lexicographically least valid 3-set is found by search and cached.
pub fn witness_set(family: Family, n: usize, kind: TheoremKind) -> Result<VertexSet, FamilyError> {
    let inst = generate(family, n)?;
    let k = (n / 2) as i64;
    let n_i = n as i64;
    let odd = n % 2 == 1;
    use Class::*;
    let set = match (family, kind, odd) {
        (Family::S, TheoremKind::Local, true) | (Family::U, TheoremKind::Local, true) => {
            inst.set_of([(A, 1), (A, k + 1)])
        }
        (Family::S, TheoremKind::Local, false) => s_even_local_witness(&inst),
        (Family::S, TheoremKind::Strong, true) => inst.set_of((1..=n_i).map(|i| (D, i))),
        (Family::S, TheoremKind::Strong, false) => {
            inst.set_of((1..=n_i).map(|i| (D, i)).chain((1..=k).map(|i| (A, i))))
        }
        (Family::U, TheoremKind::Local, false) => {
            let partner = match k {
                2 => (E, 1),
                3 => (C, 2),
                4 => (D, 4),
                _ => (C, k),
            };
            inst.set_of([(C, 1), partner])
        }
        (Family::U, TheoremKind::Strong, true) => {
            inst.set_of((1..=n_i).flat_map(|i| [(A, i), (C, i)]))
        }
        (Family::U, TheoremKind::Strong, false) => inst.set_of(
            (1..=n_i)
                .flat_map(|i| [(A, i), (C, i)])
                .chain((1..=k).map(|i| (D, i))),
        ),
    };
    Ok(set)
}

fn s_even_local_witness(inst: &PolytopeInstance) -> VertexSet {
    static CACHE: OnceLock<Mutex<HashMap<usize, VertexSet>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&inst.n) {
        return hit.clone();
    }
    let req = Requirements::for_kind(inst.graph(), VariantKind::Local);
    let mut meter = Meter::new(&SearchBudget::unlimited());
    let set = req
        .lex_least(3, &mut meter)
        .expect("unlimited budget")
        .expect("S_n with even n has a local resolving 3-set");
    cache
        .lock()
        .expect("cache lock")
        .insert(inst.n, set.clone());
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolvers;

    #[test]
    fn sizes() {
        let s3 = generate(Family::S, 3).unwrap();
        assert_eq!((s3.graph().n(), s3.graph().m()), (12, 24));
        let u4 = generate(Family::U, 4).unwrap();
        assert_eq!((u4.graph().n(), u4.graph().m()), (20, 32));
        assert_eq!(generate(Family::S, 2).unwrap_err(), FamilyError::NTooSmall(2));
    }

    #[test]
    fn modular_wrap() {
        let s5 = generate(Family::S, 5).unwrap();
        let g = s5.graph();
        assert!(g.has_edge(s5.vertex(Class::C, 5), s5.vertex(Class::C, 1)));
        assert_eq!(s5.vertex(Class::C, 6), s5.vertex(Class::C, 1));
        assert_eq!(s5.vertex(Class::C, 0), s5.vertex(Class::C, 5));
        assert_eq!(s5.locate(s5.vertex(Class::D, 3)), (Class::D, 3));
        assert_eq!(g.label(s5.vertex(Class::B, 2)), Some("b_2"));
    }

    #[test]
    fn exact_edge_sets() {
        for n in 3..9 {
            let s = generate(Family::S, n).unwrap();
            let g = s.graph();
            let ni = n as i64;
            let mut expected: Vec<(Vertex, Vertex)> = (1..=ni)
                .flat_map(|i| {
                    let e = |c1, i1, c2, i2| {
                        let (x, y) = (s.vertex(c1, i1), s.vertex(c2, i2));
                        (x.min(y), x.max(y))
                    };
                    [
                        e(Class::A, i, Class::A, i + 1),
                        e(Class::B, i, Class::B, i + 1),
                        e(Class::C, i, Class::C, i + 1),
                        e(Class::D, i, Class::D, i + 1),
                        e(Class::A, i + 1, Class::B, i),
                        e(Class::A, i, Class::B, i),
                        e(Class::B, i, Class::C, i),
                        e(Class::C, i, Class::D, i),
                    ]
                })
                .collect();
            expected.sort_unstable();
            assert_eq!(g.edges(), expected.as_slice());
            assert_eq!(g.m(), 8 * n);

            let u = generate(Family::U, n).unwrap();
            assert_eq!(u.graph().m(), 8 * n);
            for i in 1..=ni {
                let adj = |c1, i1, c2, i2| u.graph().has_edge(u.vertex(c1, i1), u.vertex(c2, i2));
                assert!(adj(Class::C, i + 1, Class::D, i));
                assert!(adj(Class::D, i, Class::E, i));
                assert!(adj(Class::E, i, Class::E, i + 1));
                assert!(!adj(Class::C, i, Class::C, i + 1));
                assert!(!adj(Class::D, i, Class::D, i + 1));
            }
        }
    }

    #[test]
    fn neighborhood_of_interior_a() {
        let s7 = generate(Family::S, 7).unwrap();
        let j = 3;
        let got = s7.graph().neighborhood(s7.vertex(Class::A, j), false);
        let want = s7.set_of([(Class::A, j - 1), (Class::A, j + 1), (Class::B, j), (Class::B, j - 1)]);
        assert_eq!(got, want);
    }

    #[test]
    fn family_spec_parsing() {
        assert_eq!(parse_family_spec("S:5"), Ok((Family::S, 5)));
        assert_eq!(parse_family_spec("u:12"), Ok((Family::U, 12)));
        assert!(parse_family_spec("T:5").is_err());
        assert!(parse_family_spec("S5").is_err());
        assert!(parse_family_spec("S:x").is_err());
    }

    #[test]
    fn formula_values() {
        assert_eq!(formula_dimension(Family::S, 7, TheoremKind::Local), 2);
        assert_eq!(formula_dimension(Family::S, 8, TheoremKind::Local), 3);
        assert_eq!(formula_dimension(Family::S, 8, TheoremKind::Strong), 12);
        assert_eq!(formula_dimension(Family::U, 9, TheoremKind::Strong), 18);
        assert_eq!(formula_dimension(Family::U, 8, TheoremKind::Strong), 20);
        assert_eq!(formula_dimension(Family::U, 11, TheoremKind::Local), 2);
    }

    #[test]
    fn witness_examples() {
        let u8 = generate(Family::U, 8).unwrap();
        assert_eq!(
            witness_set(Family::U, 8, TheoremKind::Local).unwrap(),
            u8.set_of([(Class::C, 1), (Class::D, 4)])
        );
        let s9 = generate(Family::S, 9).unwrap();
        assert_eq!(
            witness_set(Family::S, 9, TheoremKind::Strong).unwrap(),
            s9.set_of((1..=9).map(|i| (Class::D, i)))
        );
        let u7 = witness_set(Family::U, 7, TheoremKind::Strong).unwrap();
        assert_eq!(u7.len(), 14);
    }

    #[test]
    fn s_even_local_witness_is_lex_least() {
        let s6 = generate(Family::S, 6).unwrap();
        let w = witness_set(Family::S, 6, TheoremKind::Local).unwrap();
        assert_eq!(w, s6.set_of([(Class::A, 1), (Class::A, 2), (Class::A, 4)]));
        assert!(resolvers::verify(s6.graph(), VariantKind::Local, &w).unwrap().is_valid());
    }

    #[test]
    fn witnesses_valid_and_formula_sized() {
        for n in 3..=25 {
            for family in [Family::S, Family::U] {
                let inst = generate(family, n).unwrap();
                for kind in [TheoremKind::Local, TheoremKind::Strong] {
                    let w = witness_set(family, n, kind).unwrap();
                    assert_eq!(w.len(), formula_dimension(family, n, kind), "{family}_{n} {kind:?}");
                    let cert = resolvers::verify(inst.graph(), kind.into(), &w).unwrap();
                    assert!(cert.is_valid(), "{family}_{n} {kind:?} fails on {:?}", cert.failing_pair());
                }
            }
        }
    }

    #[test]
    fn diameters() {
        for n in 3..=25 {
            let k = (n / 2) as u32;
            let odd = n % 2 == 1;
            let s = generate(Family::S, n).unwrap();
            let u = generate(Family::U, n).unwrap();
            assert_eq!(s.graph().distances().diameter(), if odd { k + 3 } else { k + 2 }, "S_{n}");
            assert_eq!(u.graph().distances().diameter(), if odd { k + 4 } else { k + 3 }, "U_{n}");
        }
    }

    #[test]
    fn not_bipartite() {
        for n in 3..=25 {
            for family in [Family::S, Family::U] {
                assert!(!generate(family, n).unwrap().graph().is_bipartite());
            }
            let s = generate(Family::S, n).unwrap();
            let g = s.graph();
            let (a1, a2, b1) = (s.vertex(Class::A, 1), s.vertex(Class::A, 2), s.vertex(Class::B, 1));
            assert!(g.has_edge(a1, a2) && g.has_edge(a2, b1) && g.has_edge(a1, b1));
        }
    }
}
