//! Two-row shapes, fillings by entries of `V`, and the semistandard and G2
//! tableau predicates.
//!
//! Boxes are numbered row-major: `0..p` is the first row, `p..p+q` the
//! second. Column `j < q` has height two.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weights::{Entry, VClass, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("malformed shape ({p},{q}): need p >= q >= 0")]
    BadShape { p: i64, q: i64 },
    #[error("shape has {0} boxes; fillings are indexed by u64 and support at most 22")]
    TooManyBoxes(usize),
    #[error("expected {expected} entries for shape {shape}, got {got}")]
    WrongLength { shape: Shape, expected: usize, got: usize },
    #[error("canonical index {index} out of range for shape {shape}")]
    IndexOutOfRange { shape: Shape, index: u64 },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Largest box count whose fillings still have a `u64` canonical index.
pub const MAX_INDEXABLE_BOXES: usize = 22;

/// A two-row Young diagram `(p, q)`, `p ≥ q ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    p: usize,
    q: usize,
}

impl Shape {
    pub fn new(p: usize, q: usize) -> Result<Shape, TableauError> {
        if q > p {
            return Err(TableauError::BadShape {
                p: p as i64,
                q: q as i64,
            });
        }
        if p.checked_add(q).is_none() {
            return Err(TableauError::TooManyBoxes(usize::MAX));
        }
        Ok(Shape { p, q })
    }

    /// The shape `(a+b, b)` attached to highest weight `a·λ₁ + b·λ₂`.
    pub fn from_highest_weight(a: usize, b: usize) -> Shape {
        Shape { p: a + b, q: b }
    }

    /// `(a, b) = (p − q, q)`.
    pub fn highest_weight(self) -> (usize, usize) {
        (self.p - self.q, self.q)
    }

    pub fn p(self) -> usize {
        self.p
    }

    pub fn q(self) -> usize {
        self.q
    }

    pub fn boxes(self) -> usize {
        self.p + self.q
    }

    /// `7^n`, if it fits in a `u64`.
    pub fn filling_count(self) -> Option<u64> {
        7u64.checked_pow(self.boxes() as u32)
    }

    pub fn row_of(self, b: usize) -> usize {
        usize::from(b >= self.p)
    }

    pub fn column_of(self, b: usize) -> usize {
        if b < self.p {
            b
        } else {
            b - self.p
        }
    }

    pub fn top_of_column(self, j: usize) -> usize {
        j
    }

    /// Box index of the second-row box in column `j < q`.
    pub fn bottom_of_column(self, j: usize) -> usize {
        self.p + j
    }

    /// All shapes with exactly `n` boxes, ordered by `p` ascending.
    pub fn all_with_boxes(n: usize) -> Vec<Shape> {
        (0..=n / 2).rev().map(|q| Shape { p: n - q, q }).collect()
    }

    /// All shapes with `1 ≤ boxes ≤ n`.
    pub fn all_up_to(n: usize) -> Vec<Shape> {
        (1..=n).flat_map(Shape::all_with_boxes).collect()
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Parses `"p,q"` or a bare `"p"`.
impl FromStr for Shape {
    type Err = TableauError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| TableauError::Parse(s.to_string()));
        let mut parts = s.split(',');
        let p = parse(parts.next().unwrap_or(""))?;
        let q = match parts.next() {
            Some(t) => parse(t)?,
            None => 0,
        };
        if parts.next().is_some() {
            return Err(TableauError::Parse(s.to_string()));
        }
        if p < 0 || q < 0 || q > p {
            return Err(TableauError::BadShape { p, q });
        }
        Shape::new(p as usize, q as usize)
    }
}

impl Serialize for Shape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.p, self.q].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Shape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [p, q] = <[usize; 2]>::deserialize(d)?;
        Shape::new(p, q).map_err(serde::de::Error::custom)
    }
}

/// A filling of a shape, entries stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: Shape,
    entries: Vec<Entry>,
}

impl Tableau {
    pub fn new(shape: Shape, entries: Vec<Entry>) -> Result<Tableau, TableauError> {
        if entries.len() != shape.boxes() {
            return Err(TableauError::WrongLength {
                shape,
                expected: shape.boxes(),
                got: entries.len(),
            });
        }
        Ok(Tableau { shape, entries })
    }

    /// Builds from explicit rows; the second row may be empty.
    pub fn from_rows(row1: &[Entry], row2: &[Entry]) -> Result<Tableau, TableauError> {
        let shape = Shape::new(row1.len(), row2.len())?;
        Tableau::new(shape, row1.iter().chain(row2).copied().collect())
    }

    /// A single height-two column `(top, bottom)`.
    pub fn column(top: Entry, bottom: Entry) -> Tableau {
        Tableau {
            shape: Shape { p: 1, q: 1 },
            entries: vec![top, bottom],
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn entry(&self, b: usize) -> Entry {
        self.entries[b]
    }

    pub fn row1(&self) -> &[Entry] {
        &self.entries[..self.shape.p]
    }

    pub fn row2(&self) -> &[Entry] {
        &self.entries[self.shape.p..]
    }

    /// Base-7 number of the entry indices, first box most significant.
    pub fn canonical_index(&self) -> u64 {
        encode_index(&self.entries)
    }

    pub fn from_canonical_index(shape: Shape, index: u64) -> Result<Tableau, TableauError> {
        let total = shape.filling_count().ok_or(TableauError::TooManyBoxes(shape.boxes()))?;
        if index >= total {
            return Err(TableauError::IndexOutOfRange { shape, index });
        }
        Ok(Tableau {
            shape,
            entries: decode_index(index, shape.boxes()),
        })
    }

    pub fn weight(&self) -> Weight {
        weight_of(self)
    }

    pub fn is_semistandard(&self) -> bool {
        is_semistandard(self)
    }

    pub fn is_g2(&self) -> bool {
        is_g2_tableau(self)
    }

    /// One CSV line: symbols comma-separated within a row, rows joined by
    /// `;`. One-row tableaux carry no `;`.
    pub fn to_csv_line(&self) -> String {
        let join = |row: &[Entry]| row.iter().map(|e| e.symbol()).collect::<Vec<_>>().join(",");
        if self.shape.q == 0 {
            join(self.row1())
        } else {
            format!("{};{}", join(self.row1()), join(self.row2()))
        }
    }

    pub fn from_csv_line(line: &str) -> Result<Tableau, TableauError> {
        let parse_row = |row: &str| -> Result<Vec<Entry>, TableauError> {
            if row.trim().is_empty() {
                return Ok(Vec::new());
            }
            row.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<Entry>()
                        .map_err(|e| TableauError::Parse(e.to_string()))
                })
                .collect()
        };
        let mut rows = line.trim_end_matches(['\n', '\r']).split(';');
        let row1 = parse_row(rows.next().unwrap_or(""))?;
        let row2 = match rows.next() {
            Some(r) => parse_row(r)?,
            None => Vec::new(),
        };
        if rows.next().is_some() {
            return Err(TableauError::Parse(line.to_string()));
        }
        Tableau::from_rows(&row1, &row2)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableauJson::from(self)).expect("tableau JSON")
    }

    pub fn from_json(s: &str) -> Result<Tableau, TableauError> {
        let raw: TableauJson = serde_json::from_str(s).map_err(|e| TableauError::Parse(e.to_string()))?;
        Tableau::try_from(raw)
    }
}

pub(crate) fn encode_index(entries: &[Entry]) -> u64 {
    entries.iter().fold(0u64, |acc, e| acc * 7 + e.index() as u64)
}

pub(crate) fn decode_index(mut index: u64, n: usize) -> Vec<Entry> {
    let mut entries = vec![Entry::TwoAlphaBeta; n];
    for slot in entries.iter_mut().rev() {
        *slot = Entry::ALL[(index % 7) as usize];
        index /= 7;
    }
    entries
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv_line())
    }
}

/// Wire form `{"shape":[p,q],"rows":[[...],[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableauJson {
    pub shape: [usize; 2],
    pub rows: Vec<Vec<Entry>>,
}

impl From<&Tableau> for TableauJson {
    fn from(t: &Tableau) -> Self {
        TableauJson {
            shape: [t.shape.p, t.shape.q],
            rows: vec![t.row1().to_vec(), t.row2().to_vec()],
        }
    }
}

impl TryFrom<TableauJson> for Tableau {
    type Error = TableauError;
    fn try_from(raw: TableauJson) -> Result<Self, Self::Error> {
        let [p, q] = raw.shape;
        let shape = Shape::new(p, q)?;
        let (row1, row2): (&[Entry], &[Entry]) = match raw.rows.as_slice() {
            [r1] => (r1, &[]),
            [r1, r2] => (r1, r2),
            _ => return Err(TableauError::Parse("expected one or two rows".into())),
        };
        if row1.len() != p || row2.len() != q {
            return Err(TableauError::Parse(format!(
                "row lengths {}/{} disagree with shape {shape}",
                row1.len(),
                row2.len()
            )));
        }
        Tableau::from_rows(row1, row2)
    }
}

pub fn weight_of(t: &Tableau) -> Weight {
    t.entries.iter().map(|e| e.weight()).sum()
}

/// Rows weakly increase, height-two columns strictly increase downward.
pub fn is_semistandard(t: &Tableau) -> bool {
    let rows_ok = t.row1().windows(2).all(|w| w[0] <= w[1]) && t.row2().windows(2).all(|w| w[0] <= w[1]);
    rows_ok && (0..t.shape.q).all(|j| t.entries[j] < t.entries[t.shape.p + j])
}

/// Semistandard, with the class conditions:
/// no height-two column holds two entries of the same summand; two
/// same-summand entries in different columns weakly increase left to right;
/// `2α+β` and `−2α−β` never both occur.
pub fn is_g2_tableau(t: &Tableau) -> bool {
    if !is_semistandard(t) {
        return false;
    }
    let shape = t.shape;
    for j in 0..shape.q {
        let (top, bottom) = (t.entries[j], t.entries[shape.p + j]);
        if top.class() != VClass::Neither && top.class() == bottom.class() {
            return false;
        }
    }
    let n = shape.boxes();
    for i in 0..n {
        for k in 0..n {
            let (ci, ck) = (shape.column_of(i), shape.column_of(k));
            let (ei, ek) = (t.entries[i], t.entries[k]);
            if ci < ck && ei.class() != VClass::Neither && ei.class() == ek.class() && ei > ek {
                return false;
            }
        }
    }
    let has = |e: Entry| t.entries.contains(&e);
    !(has(Entry::TwoAlphaBeta) && has(Entry::NegTwoAlphaBeta))
}

/// Which fillings an enumeration keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableauFilter {
    All,
    Semistandard,
    G2,
}

impl FromStr for TableauFilter {
    type Err = TableauError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(TableauFilter::All),
            "semistandard" => Ok(TableauFilter::Semistandard),
            "g2" => Ok(TableauFilter::G2),
            _ => Err(TableauError::Parse(s.to_string())),
        }
    }
}

/// All `7^n` fillings in canonical-index order.
pub fn enumerate_fillings(shape: Shape) -> impl Iterator<Item = Tableau> {
    let total = shape
        .filling_count()
        .expect("shape too large to enumerate every filling");
    let n = shape.boxes();
    (0..total).map(move |i| Tableau {
        shape,
        entries: decode_index(i, n),
    })
}

pub fn enumerate_semistandard(shape: Shape) -> TableauStream {
    TableauStream::new(shape, TableauFilter::Semistandard, Entry::ALL.to_vec())
}

pub fn enumerate_g2(shape: Shape) -> TableauStream {
    TableauStream::new(shape, TableauFilter::G2, Entry::ALL.to_vec())
}

/// Backtracking stream over fillings, pruned box by box in row-major
/// order. With the alphabet in entry order the output is in ascending
/// canonical index.
#[derive(Debug, Clone)]
pub struct TableauStream {
    shape: Shape,
    filter: TableauFilter,
    alphabet: Vec<Entry>,
    entries: Vec<Entry>,
    cursor: Vec<usize>,
    depth: usize,
    done: bool,
}

impl TableauStream {
    /// `alphabet` restricts the allowed entries; it is sorted internally.
    pub fn new(shape: Shape, filter: TableauFilter, mut alphabet: Vec<Entry>) -> TableauStream {
        alphabet.sort();
        alphabet.dedup();
        let n = shape.boxes();
        TableauStream {
            shape,
            filter,
            alphabet,
            entries: vec![Entry::TwoAlphaBeta; n],
            cursor: vec![0; n + 1],
            depth: 0,
            done: false,
        }
    }

    fn admissible(&self, pos: usize, e: Entry) -> bool {
        if self.filter == TableauFilter::All {
            return true;
        }
        let shape = self.shape;
        let col = shape.column_of(pos);
        let placed = &self.entries[..pos];
        if shape.row_of(pos) == 0 {
            if col > 0 && placed[pos - 1] > e {
                return false;
            }
        } else {
            if col > 0 && placed[pos - 1] > e {
                return false;
            }
            if placed[col] >= e {
                return false;
            }
        }
        if self.filter == TableauFilter::Semistandard {
            return true;
        }
        if e.class() != VClass::Neither {
            if shape.row_of(pos) == 1 && placed[col].class() == e.class() {
                return false;
            }
            for (k, &other) in placed.iter().enumerate() {
                if other.class() != e.class() {
                    continue;
                }
                let ck = shape.column_of(k);
                if (ck < col && other > e) || (ck > col && e > other) {
                    return false;
                }
            }
        }
        match e {
            Entry::TwoAlphaBeta => !placed.contains(&Entry::NegTwoAlphaBeta),
            Entry::NegTwoAlphaBeta => !placed.contains(&Entry::TwoAlphaBeta),
            _ => true,
        }
    }
}

impl Iterator for TableauStream {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        let n = self.shape.boxes();
        if self.done {
            return None;
        }
        if n == 0 {
            self.done = true;
            return Some(Tableau {
                shape: self.shape,
                entries: Vec::new(),
            });
        }
        loop {
            if self.depth == n {
                self.depth = n - 1;
                return Some(Tableau {
                    shape: self.shape,
                    entries: self.entries.clone(),
                });
            }
            let pos = self.depth;
            let mut placed = false;
            while self.cursor[pos] < self.alphabet.len() {
                let e = self.alphabet[self.cursor[pos]];
                self.cursor[pos] += 1;
                if self.admissible(pos, e) {
                    self.entries[pos] = e;
                    self.depth += 1;
                    self.cursor[self.depth] = 0;
                    placed = true;
                    break;
                }
            }
            if !placed {
                if pos == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
            }
        }
    }
}

/// Dispatches to the enumeration matching `filter`.
pub fn enumerate(shape: Shape, filter: TableauFilter) -> Box<dyn Iterator<Item = Tableau>> {
    match filter {
        TableauFilter::All => Box::new(enumerate_fillings(shape)),
        TableauFilter::Semistandard => Box::new(enumerate_semistandard(shape)),
        TableauFilter::G2 => Box::new(enumerate_g2(shape)),
    }
}
