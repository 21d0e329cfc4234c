//! Root and weight arithmetic for G2.
//!
//! Weights are integer pairs `(x, y)` standing for `x·α + y·β`, where `α` is
//! the short simple root and `β` the long one. The inner product is
//! normalized so that `(α, α) = 2`, which makes the Gram matrix integral.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An element `x·α + y·β` of the root lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight {
    pub x: i64,
    pub y: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight::new(0, 0);
    pub const ALPHA: Weight = Weight::new(1, 0);
    pub const BETA: Weight = Weight::new(0, 1);
    /// First fundamental weight, `2α + β`.
    pub const LAMBDA1: Weight = Weight::new(2, 1);
    /// Second fundamental weight, `3α + 2β`.
    pub const LAMBDA2: Weight = Weight::new(3, 2);

    pub const fn new(x: i64, y: i64) -> Self {
        Weight { x, y }
    }

    /// `a·λ₁ + b·λ₂`.
    pub fn from_fundamental(a: i64, b: i64) -> Self {
        Weight::LAMBDA1 * a + Weight::LAMBDA2 * b
    }

    /// Coordinates `(a, b)` with `self = a·λ₁ + b·λ₂`, present only when the
    /// weight is dominant.
    pub fn to_fundamental(self) -> Option<(i64, i64)> {
        let (a, b) = self.fundamental_coords();
        (a >= 0 && b >= 0).then_some((a, b))
    }

    /// Fundamental-weight coordinates without the dominance check.
    pub fn fundamental_coords(self) -> (i64, i64) {
        (2 * self.x - 3 * self.y, 2 * self.y - self.x)
    }

    pub fn is_dominant(self) -> bool {
        self.to_fundamental().is_some()
    }

    /// Sum of the coefficients on the simple roots.
    pub fn height(self) -> i64 {
        self.x + self.y
    }

    pub fn inner(self, other: Weight) -> i64 {
        inner(self, other)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.x, -self.y)
    }
}

impl Mul<i64> for Weight {
    type Output = Weight;
    fn mul(self, k: i64) -> Weight {
        Weight::new(self.x * k, self.y * k)
    }
}

impl std::iter::Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |acc, w| acc + w)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.x, self.y)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[i64; 2]>::deserialize(d)?;
        Ok(Weight::new(x, y))
    }
}

/// The invariant inner product with `(α,α) = 2`, `(β,β) = 6`, `(α,β) = −3`.
pub fn inner(u: Weight, v: Weight) -> i64 {
    2 * u.x * v.x - 3 * (u.x * v.y + u.y * v.x) + 6 * u.y * v.y
}

/// `⟨w, δ∨⟩ = 2(w,δ)/(δ,δ)`. Integral for every root `δ` of G2.
pub fn coroot_pairing(w: Weight, root: Weight) -> i64 {
    let num = 2 * inner(w, root);
    let den = inner(root, root);
    debug_assert_eq!(num % den, 0, "non-integral pairing of {w} with {root}");
    num / den
}

/// Gram matrix of the simple roots `α, β`.
pub const GRAM: [[i64; 2]; 2] = [[2, -3], [-3, 6]];

/// The six positive roots, in order of height.
pub const POSITIVE_ROOTS: [Weight; 6] = [
    Weight::new(1, 0),
    Weight::new(0, 1),
    Weight::new(1, 1),
    Weight::new(2, 1),
    Weight::new(3, 1),
    Weight::new(3, 2),
];

/// Half the sum of the positive roots, equal to `λ₁ + λ₂`.
pub const RHO: Weight = Weight::new(5, 3);

pub fn is_long_root(root: Weight) -> bool {
    inner(root, root) == 6
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimpleReflection {
    Alpha,
    Beta,
}

impl SimpleReflection {
    pub const BOTH: [SimpleReflection; 2] = [SimpleReflection::Alpha, SimpleReflection::Beta];

    pub fn root(self) -> Weight {
        match self {
            SimpleReflection::Alpha => Weight::ALPHA,
            SimpleReflection::Beta => Weight::BETA,
        }
    }

    pub fn apply(self, w: Weight) -> Weight {
        simple_reflection(self, w)
    }
}

/// `s_δ(w) = w − ⟨w, δ∨⟩·δ`.
pub fn simple_reflection(s: SimpleReflection, w: Weight) -> Weight {
    let root = s.root();
    w - root * coroot_pairing(w, root)
}

/// Moves `w` into the dominant chamber with simple reflections.
pub fn dominant_representative(mut w: Weight) -> Weight {
    loop {
        let (a, b) = w.fundamental_coords();
        if a < 0 {
            w = simple_reflection(SimpleReflection::Alpha, w);
        } else if b < 0 {
            w = simple_reflection(SimpleReflection::Beta, w);
        } else {
            return w;
        }
    }
}

/// Which of the two three-dimensional summands of `V` under the long-root
/// `A₂` subgroup an entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VClass {
    V1,
    V2,
    Neither,
}

/// One of the seven weights of the 7-dimensional representation, carrying
/// the total order used by tableaux. Declaration order is that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Entry {
    /// `2α+β`, also written `α₁`.
    TwoAlphaBeta = 0,
    /// `−α`
    NegAlpha = 1,
    /// `−α−β`
    NegAlphaBeta = 2,
    /// `α+β`, also written `α₂`.
    AlphaBeta = 3,
    /// `α`
    Alpha = 4,
    /// `−2α−β`
    NegTwoAlphaBeta = 5,
    /// `0`
    Zero = 6,
}

impl Entry {
    pub const ALL: [Entry; 7] = [
        Entry::TwoAlphaBeta,
        Entry::NegAlpha,
        Entry::NegAlphaBeta,
        Entry::AlphaBeta,
        Entry::Alpha,
        Entry::NegTwoAlphaBeta,
        Entry::Zero,
    ];

    pub const COUNT: usize = 7;

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Entry> {
        Entry::ALL.get(i).copied()
    }

    pub fn weight(self) -> Weight {
        entry_weight(self)
    }

    pub fn negate(self) -> Entry {
        negate_entry(self)
    }

    pub fn class(self) -> VClass {
        vclass(self)
    }

    pub fn symbol(self) -> &'static str {
        SYMBOLS[self.index()]
    }

    /// The entry carrying weight `w`, if `w` is a weight of `V`.
    pub fn with_weight(w: Weight) -> Option<Entry> {
        Entry::ALL.into_iter().find(|e| e.weight() == w)
    }
}

const SYMBOLS: [&str; 7] = ["2a+b", "-a", "-a-b", "a+b", "a", "-2a-b", "0"];

const ENTRY_WEIGHTS: [Weight; 7] = [
    Weight::new(2, 1),
    Weight::new(-1, 0),
    Weight::new(-1, -1),
    Weight::new(1, 1),
    Weight::new(1, 0),
    Weight::new(-2, -1),
    Weight::new(0, 0),
];

pub fn entry_weight(e: Entry) -> Weight {
    ENTRY_WEIGHTS[e.index()]
}

/// The total order on entries; `Zero` is the maximum.
pub fn compare(e: Entry, f: Entry) -> Ordering {
    e.index().cmp(&f.index())
}

pub fn negate_entry(e: Entry) -> Entry {
    match e {
        Entry::Zero => Entry::Zero,
        other => Entry::ALL[5 - other.index()],
    }
}

pub fn vclass(e: Entry) -> VClass {
    match e.index() {
        0..=2 => VClass::V1,
        3..=5 => VClass::V2,
        _ => VClass::Neither,
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown entry symbol {0:?}")]
pub struct ParseEntryError(pub String);

impl FromStr for Entry {
    type Err = ParseEntryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SYMBOLS
            .iter()
            .position(|sym| *sym == s)
            .map(|i| Entry::ALL[i])
            .ok_or_else(|| ParseEntryError(s.to_string()))
    }
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
