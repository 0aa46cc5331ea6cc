//! Total orders on basis blades.
//!
//! Each blade becomes an index vector with a zero in the slot of every absent
//! generator, so e12 in n = 4 is (1, 2, 0, 0). The four base orders look at the
//! sign of the leftmost or rightmost nonzero entry of the difference; the degree
//! modes compare grades first.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use ga_core::Blade;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BaseOrder {
    Lex,
    InvLex,
    RevLex,
    InvRevLex,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DegreeMode {
    None,
    /// Higher grades first.
    Deg,
    /// Higher grades last.
    InvDeg,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct OrderingKind {
    pub base: BaseOrder,
    pub degree: DegreeMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown ordering {0:?}")]
pub struct UnknownOrdering(pub String);

impl OrderingKind {
    pub const fn new(base: BaseOrder, degree: DegreeMode) -> Self {
        OrderingKind { base, degree }
    }

    /// The default scan order for idempotent factors.
    pub const INVDEG_LEX: OrderingKind = OrderingKind::new(BaseOrder::Lex, DegreeMode::InvDeg);
    pub const REVLEX: OrderingKind = OrderingKind::new(BaseOrder::RevLex, DegreeMode::None);
    pub const INVLEX: OrderingKind = OrderingKind::new(BaseOrder::InvLex, DegreeMode::None);

    pub fn all() -> Vec<OrderingKind> {
        let bases = [BaseOrder::Lex, BaseOrder::InvLex, BaseOrder::RevLex, BaseOrder::InvRevLex];
        [DegreeMode::None, DegreeMode::Deg, DegreeMode::InvDeg]
            .iter()
            .flat_map(|&d| bases.iter().map(move |&b| OrderingKind::new(b, d)))
            .collect()
    }
}

impl fmt::Display for BaseOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseOrder::Lex => "Lex",
            BaseOrder::InvLex => "InvLex",
            BaseOrder::RevLex => "RevLex",
            BaseOrder::InvRevLex => "InvRevLex",
        })
    }
}

impl fmt::Display for OrderingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            DegreeMode::None => write!(f, "{}", self.base),
            DegreeMode::Deg => write!(f, "Deg[{}]", self.base),
            DegreeMode::InvDeg => write!(f, "InvDeg[{}]", self.base),
        }
    }
}

/// Accepts the printed names, e.g. `RevLex`, `Deg[InvLex]`, `InvDeg[Lex]`.
impl FromStr for OrderingKind {
    type Err = UnknownOrdering;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        OrderingKind::all()
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(t))
            .ok_or_else(|| UnknownOrdering(s.to_string()))
    }
}

fn index_vector(b: Blade, len: usize) -> Vec<i64> {
    (1..=len).map(|i| if b.mask() >> (i - 1) & 1 == 1 { i as i64 } else { 0 }).collect()
}

fn base_compare(base: BaseOrder, a: Blade, b: Blade) -> Ordering {
    let len = 32 - (a.mask() | b.mask()).leading_zeros() as usize;
    let (va, vb) = (index_vector(a, len), index_vector(b, len));
    let diff: Vec<i64> = va.iter().zip(&vb).map(|(x, y)| x - y).collect();
    let leftmost = diff.iter().find(|d| **d != 0).copied();
    let rightmost = diff.iter().rev().find(|d| **d != 0).copied();
    // `a > b` when the inspected entry has the wanted sign.
    let (entry, positive_wins) = match base {
        BaseOrder::Lex => (leftmost, true),
        BaseOrder::InvLex => (rightmost, true),
        BaseOrder::RevLex => (rightmost, false),
        BaseOrder::InvRevLex => (leftmost, false),
    };
    match entry {
        None => Ordering::Equal,
        Some(d) if (d > 0) == positive_wins => Ordering::Greater,
        Some(_) => Ordering::Less,
    }
}

/// `Greater` means `a > b` in the named relation.
pub fn compare(kind: OrderingKind, a: Blade, b: Blade) -> Ordering {
    let by_grade = a.grade().cmp(&b.grade());
    let first = match kind.degree {
        DegreeMode::None => Ordering::Equal,
        DegreeMode::Deg => by_grade,
        DegreeMode::InvDeg => by_grade.reverse(),
    };
    first.then_with(|| base_compare(kind.base, a, b))
}

/// Stable sort. `descending = true` lists the greatest blade first, which is how
/// the example chains are written.
pub fn sort_blades(kind: OrderingKind, blades: &[Blade], descending: bool) -> Vec<Blade> {
    let mut v = blades.to_vec();
    if descending {
        v.sort_by(|a, b| compare(kind, *b, *a));
    } else {
        v.sort_by(|a, b| compare(kind, *a, *b));
    }
    v
}

/// All 2^n blades of an n-dimensional algebra in descending `kind` order.
pub fn ordered_basis(kind: OrderingKind, n: usize) -> Vec<Blade> {
    let all: Vec<Blade> = (0..1u32 << n).map(Blade::from_mask).collect();
    sort_blades(kind, &all, true)
}

/// Position of each blade in the default InvDeg[Lex] chain; smaller comes first.
pub fn invdeglex_rank(b: Blade) -> (usize, Vec<usize>) {
    (b.grade(), b.indices())
}
