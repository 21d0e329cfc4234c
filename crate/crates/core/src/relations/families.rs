//! Generator streams for the six relation families on `V_λ`.
//!
//! Every generator is weight-homogeneous with integer coefficients.
//! Height-2 column `j < q` consists of boxes `j` (top) and `p + j` (bottom);
//! height-1 columns are boxes `q..p` of the first row.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RelationError;
use crate::formal::FormalSum;
use crate::tableau::Shape;
use crate::weights::{Entry, VClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationFamily {
    Alternating,
    Exchange,
    Orthogonal,
    Pairing,
    Exclusion,
    Transposition,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 6] = [
        RelationFamily::Alternating,
        RelationFamily::Exchange,
        RelationFamily::Orthogonal,
        RelationFamily::Pairing,
        RelationFamily::Exclusion,
        RelationFamily::Transposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationFamily::Alternating => "alternating",
            RelationFamily::Exchange => "exchange",
            RelationFamily::Orthogonal => "orthogonal",
            RelationFamily::Pairing => "pairing",
            RelationFamily::Exclusion => "exclusion",
            RelationFamily::Transposition => "transposition",
        }
    }

    pub fn generators(self, shape: Shape) -> Result<Vec<FormalSum<i64>>, RelationError> {
        match self {
            RelationFamily::Alternating => alternating_generators(shape),
            RelationFamily::Exchange => exchange_generators(shape),
            RelationFamily::Orthogonal => orthogonal_generators(shape),
            RelationFamily::Pairing => pairing_generators(shape),
            RelationFamily::Exclusion => exclusion_generators(shape),
            RelationFamily::Transposition => transposition_generators(shape),
        }
    }
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationFamily {
    type Err = RelationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| RelationError::UnknownFamily(s.to_string()))
    }
}

/// A set of families, stored as a bitmask over [`RelationFamily::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySet(u8);

impl FamilySet {
    /// Alternating and exchange: the `GL(V)` relations.
    pub const CLASSICAL: FamilySet = FamilySet(0b000011);
    /// The families whose closure defines `R_λ`.
    pub const G_STABLE: FamilySet = FamilySet(0b001111);
    pub const ALL: FamilySet = FamilySet(0b111111);
    pub const EMPTY: FamilySet = FamilySet(0);

    pub fn with(self, f: RelationFamily) -> FamilySet {
        FamilySet(self.0 | Self::bit(f))
    }

    pub fn contains(self, f: RelationFamily) -> bool {
        self.0 & Self::bit(f) != 0
    }

    pub fn iter(self) -> impl Iterator<Item = RelationFamily> {
        RelationFamily::ALL.into_iter().filter(move |f| self.contains(*f))
    }

    fn bit(f: RelationFamily) -> u8 {
        1 << RelationFamily::ALL.iter().position(|g| *g == f).expect("listed")
    }
}

impl FromIterator<RelationFamily> for FamilySet {
    fn from_iter<I: IntoIterator<Item = RelationFamily>>(iter: I) -> Self {
        iter.into_iter().fold(FamilySet::EMPTY, FamilySet::with)
    }
}

/// Place values and digit access for canonical indices of one shape.
struct Layout {
    shape: Shape,
    place: Vec<u64>,
    total: u64,
}

impl Layout {
    fn new(shape: Shape) -> Result<Layout, RelationError> {
        let total = shape
            .filling_count()
            .filter(|_| shape.boxes() <= crate::tableau::MAX_INDEXABLE_BOXES)
            .ok_or(RelationError::TooLarge(shape))?;
        let n = shape.boxes();
        let place = (0..n).map(|b| 7u64.pow((n - 1 - b) as u32)).collect();
        Ok(Layout { shape, place, total })
    }

    fn digit(&self, index: u64, b: usize) -> usize {
        ((index / self.place[b]) % 7) as usize
    }

    fn set(&self, index: u64, b: usize, e: usize) -> u64 {
        index - self.digit(index, b) as u64 * self.place[b] + e as u64 * self.place[b]
    }

    fn set_many(&self, mut index: u64, assign: &[(usize, usize)]) -> u64 {
        for &(b, e) in assign {
            index = self.set(index, b, e);
        }
        index
    }

    /// Indices with the given boxes zeroed, one per filling of the others.
    fn fillings_of_rest(&self, boxes: &[usize]) -> impl Iterator<Item = u64> + '_ {
        let boxes = boxes.to_vec();
        (0..self.total).filter(move |&i| boxes.iter().all(|&b| self.digit(i, b) == 0))
    }

    fn sum(&self, terms: &[(u64, i64)]) -> FormalSum<i64> {
        let mut s = FormalSum::zero(self.shape);
        for &(i, c) in terms {
            s.add_int(i, c);
        }
        s
    }
}

fn push_nonzero(out: &mut Vec<FormalSum<i64>>, s: FormalSum<i64>) {
    if !s.is_empty() {
        out.push(s);
    }
}

fn class_of(e: usize) -> VClass {
    Entry::ALL[e].class()
}

fn same_class(e: usize, f: usize) -> bool {
    let c = class_of(e);
    c != VClass::Neither && c == class_of(f)
}

/// `T + swap(T)` for each height-2 column, one per unordered entry pair.
pub fn alternating_generators(shape: Shape) -> Result<Vec<FormalSum<i64>>, RelationError> {
    if shape.q() == 0 {
        return Err(RelationError::EmptyFamily(RelationFamily::Alternating, shape));
    }
    let l = Layout::new(shape)?;
    let mut out = Vec::new();
    for j in 0..shape.q() {
        let (top, bot) = (shape.top_of_column(j), shape.bottom_of_column(j));
        for t in 0..l.total {
            let (a, b) = (l.digit(t, top), l.digit(t, bot));
            if a <= b {
                let s = l.set_many(t, &[(top, b), (bot, a)]);
                push_nonzero(&mut out, l.sum(&[(t, 1), (s, 1)]));
            }
        }
    }
    Ok(out)
}

/// The three exchange forms: between two height-2 columns, between a
/// height-2 and a height-1 column, and the symmetry of two height-1 columns.
pub fn exchange_generators(shape: Shape) -> Result<Vec<FormalSum<i64>>, RelationError> {
    let l = Layout::new(shape)?;
    let (p, q) = (shape.p(), shape.q());
    let mut out = Vec::new();
    for j in 0..q {
        for k in j + 1..q {
            let boxes = [j, p + j, k, p + k];
            for t in 0..l.total {
                let [a, b, c, d] = boxes.map(|x| l.digit(t, x));
                let put = |v: [usize; 4]| {
                    l.set_many(
                        t,
                        &[(boxes[0], v[0]), (boxes[1], v[1]), (boxes[2], v[2]), (boxes[3], v[3])],
                    )
                };
                push_nonzero(
                    &mut out,
                    l.sum(&[(t, 1), (put([a, c, b, d]), -1), (put([a, d, b, c]), 1)]),
                );
            }
        }
    }
    for j in 0..q {
        for k in q..p {
            let boxes = [j, p + j, k];
            for t in 0..l.total {
                let [a, b, c] = boxes.map(|x| l.digit(t, x));
                let put = |v: [usize; 3]| l.set_many(t, &[(boxes[0], v[0]), (boxes[1], v[1]), (boxes[2], v[2])]);
                push_nonzero(&mut out, l.sum(&[(t, 1), (put([a, c, b]), -1), (put([b, c, a]), 1)]));
            }
        }
    }
    for j in q..p {
        for k in j + 1..p {
            for t in 0..l.total {
                let (c, d) = (l.digit(t, j), l.digit(t, k));
                if c < d {
                    let s = l.set_many(t, &[(j, d), (k, c)]);
                    out.push(l.sum(&[(t, 1), (s, -1)]));
                }
            }
        }
    }
    Ok(out)
}

/// `Σ_e T[b₁←e, b₂←−e]` for each unordered box pair.
pub fn orthogonal_generators(shape: Shape) -> Result<Vec<FormalSum<i64>>, RelationError> {
    let n = shape.boxes();
    if n < 2 {
        return Err(RelationError::EmptyFamily(RelationFamily::Orthogonal, shape));
    }
    let l = Layout::new(shape)?;
    let mut out = Vec::new();
    for b1 in 0..n {
        for b2 in b1 + 1..n {
            for base in l.fillings_of_rest(&[b1, b2]) {
                let terms: Vec<(u64, i64)> = Entry::ALL
                    .iter()
                    .map(|e| (l.set_many(base, &[(b1, e.index()), (b2, e.negate().index())]), 1))
                    .collect();
                out.push(l.sum(&terms));
            }
        }
    }
    Ok(out)
}

/// For each height-2 column, `Σ_{w ∈ V₁} T[top←w, bottom←−w]` and the
/// same over `V₂`.
pub fn pairing_generators(shape: Shape) -> Result<Vec<FormalSum<i64>>, RelationError> {
    if shape.q() == 0 {
        return Err(RelationError::EmptyFamily(RelationFamily::Pairing, shape));
    }
    let l = Layout::new(shape)?;
    let mut out = Vec::new();
    for j in 0..shape.q() {
        let (top, bot) = (shape.top_of_column(j), shape.bottom_of_column(j));
        for base in l.fillings_of_rest(&[top, bot]) {
            for class in [VClass::V1, VClass::V2] {
                let terms: Vec<(u64, i64)> = Entry::ALL
                    .iter()
                    .filter(|e| e.class() == class)
                    .map(|e| (l.set_many(base, &[(top, e.index()), (bot, e.negate().index())]), 1))
                    .collect();
                out.push(l.sum(&terms));
            }
        }
    }
    Ok(out)
}

/// Single fillings with two entries of the same class in one height-2 column.
pub fn exclusion_generators(shape: Shape) -> Result<Vec<FormalSum<i64>>, RelationError> {
    if shape.q() == 0 {
        return Err(RelationError::EmptyFamily(RelationFamily::Exclusion, shape));
    }
    let l = Layout::new(shape)?;
    let mut out = Vec::new();
    for t in 0..l.total {
        let hit = (0..shape.q()).any(|j| {
            same_class(
                l.digit(t, shape.top_of_column(j)),
                l.digit(t, shape.bottom_of_column(j)),
            )
        });
        if hit {
            out.push(l.sum(&[(t, 1)]));
        }
    }
    Ok(out)
}

/// `T − swap(T)` for boxes in different columns holding distinct entries
/// of the same class, one per unordered pair.
pub fn transposition_generators(shape: Shape) -> Result<Vec<FormalSum<i64>>, RelationError> {
    if shape.p() < 2 {
        return Err(RelationError::EmptyFamily(RelationFamily::Transposition, shape));
    }
    let l = Layout::new(shape)?;
    let n = shape.boxes();
    let mut out = Vec::new();
    for b1 in 0..n {
        for b2 in b1 + 1..n {
            if shape.column_of(b1) == shape.column_of(b2) {
                continue;
            }
            for t in 0..l.total {
                let (x, y) = (l.digit(t, b1), l.digit(t, b2));
                if x < y && same_class(x, y) {
                    let s = l.set_many(t, &[(b1, y), (b2, x)]);
                    out.push(l.sum(&[(t, 1), (s, -1)]));
                }
            }
        }
    }
    Ok(out)
}

/// All generators of the chosen families; families whose precondition
/// fails for this shape contribute nothing.
pub fn family_generators(shape: Shape, families: FamilySet) -> Result<Vec<FormalSum<i64>>, RelationError> {
    let mut out = Vec::new();
    for f in families.iter() {
        match f.generators(shape) {
            Ok(g) => out.extend(g),
            Err(RelationError::EmptyFamily(..)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
