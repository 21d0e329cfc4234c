//! Restriction of `V_{a,b}` to the long-root `A₂` subgroup: the closed-form
//! multiplicities, a count of highest-weight tableaux, and checks between
//! them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::reptheory::weyl_dim_g2;
use crate::tableau::{Shape, TableauFilter, TableauStream};
use crate::weights::Entry;

fn in_support(a: u32, b: u32, c: u32, d: u32) -> bool {
    c + d <= a + 2 * b && c <= a + b && d <= a + b && b <= c + d
}

/// Multiplicity of `W_{c,d}` in `V_{a,b}`:
/// `min(a+2b−c−d+1, a+b−c+1, a+b−d+1, c+d−b+1, a+1, b+1, c+1, d+1)` on the
/// support, zero elsewhere.
pub fn branch_multiplicity(a: u32, b: u32, c: u32, d: u32) -> u64 {
    if !in_support(a, b, c, d) {
        return 0;
    }
    [
        a + 2 * b - c - d + 1,
        a + b - c + 1,
        a + b - d + 1,
        c + d - b + 1,
        a + 1,
        b + 1,
        c + 1,
        d + 1,
    ]
    .into_iter()
    .min()
    .expect("nonempty") as u64
}

/// The same formula without the `c+1` and `d+1` terms. It overcounts once
/// `a ≥ 2` and `b ≥ 1` (first at `(a,b,c,d) = (2,1,2,0)`); kept so that
/// the discrepancy stays visible and tested.
pub fn six_term_multiplicity(a: u32, b: u32, c: u32, d: u32) -> u64 {
    if !in_support(a, b, c, d) {
        return 0;
    }
    [
        a + 2 * b - c - d + 1,
        a + b - c + 1,
        a + b - d + 1,
        c + d - b + 1,
        a + 1,
        b + 1,
    ]
    .into_iter()
    .min()
    .expect("nonempty") as u64
}

/// Counts fillings of shape `(a+b, b)` by `{2α+β, α+β, 0}` that are
/// semistandard, keep row 2 inside `{α+β, 0}`, put every row-2 `α+β` under a
/// `2α+β`, and never put a row-2 `0` under a row-1 `0`. A tableau with
/// `i` first-row `2α+β`s and `j` `α+β`s overall has `A₂` weight `(i, j)`.
pub fn hw_tableaux_counts(a: u32, b: u32) -> BTreeMap<(u32, u32), u64> {
    let shape = Shape::from_highest_weight(a as usize, b as usize);
    let alphabet = vec![Entry::TwoAlphaBeta, Entry::AlphaBeta, Entry::Zero];
    let mut out = BTreeMap::new();
    for t in TableauStream::new(shape, TableauFilter::Semistandard, alphabet) {
        let (r1, r2) = (t.row1(), t.row2());
        let ok = r2.iter().zip(r1).all(|(&lo, &hi)| match lo {
            Entry::AlphaBeta => hi == Entry::TwoAlphaBeta,
            Entry::Zero => hi != Entry::Zero,
            _ => false,
        });
        if !ok {
            continue;
        }
        let c = r1.iter().filter(|e| **e == Entry::TwoAlphaBeta).count() as u32;
        let d = t.entries().iter().filter(|e| **e == Entry::AlphaBeta).count() as u32;
        *out.entry((c, d)).or_insert(0) += 1;
    }
    out
}

/// Nonzero multiplicities of `V_{a,b}` restricted to `A₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchTable {
    pub a: u32,
    pub b: u32,
    /// `(c, d, multiplicity)`, sorted by `(c, d)`.
    pub entries: Vec<(u32, u32, u64)>,
}

impl BranchTable {
    pub fn get(&self, c: u32, d: u32) -> u64 {
        self.entries
            .binary_search_by_key(&(c, d), |(x, y, _)| (*x, *y))
            .map_or(0, |i| self.entries[i].2)
    }

    /// `Σ m · dim W_{c,d}`, saturating for tables read from untrusted input.
    pub fn dimension_sum(&self) -> u128 {
        self.entries.iter().fold(0u128, |acc, &(c, d, m)| {
            let (c, d) = (c as u128, d as u128);
            let dim = (c + 1) * (d + 1) * (c + d + 2) / 2;
            acc.saturating_add(dim.saturating_mul(m as u128))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }

    /// Parses and checks that entries are sorted, unique and nonzero.
    pub fn from_json(s: &str) -> Result<BranchTable, String> {
        let t: BranchTable = serde_json::from_str(s).map_err(|e| e.to_string())?;
        let sorted = t.entries.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1));
        if !sorted || t.entries.iter().any(|e| e.2 == 0) {
            return Err("entries must be sorted, unique and nonzero".into());
        }
        Ok(t)
    }
}

pub fn branch_table(a: u32, b: u32) -> BranchTable {
    let n = a + b;
    let entries = (0..=n)
        .flat_map(|c| (0..=n).map(move |d| (c, d)))
        .filter_map(|(c, d)| {
            let m = branch_multiplicity(a, b, c, d);
            (m > 0).then_some((c, d, m))
        })
        .collect();
    BranchTable { a, b, entries }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BranchVerification {
    pub formula_vs_tableaux: bool,
    pub dimension_sum: bool,
}

impl BranchVerification {
    pub fn holds(&self) -> bool {
        self.formula_vs_tableaux && self.dimension_sum
    }
}

pub fn verify_branching(a: u32, b: u32) -> BranchVerification {
    let table = branch_table(a, b);
    let counts = hw_tableaux_counts(a, b);
    let from_table: BTreeMap<(u32, u32), u64> = table.entries.iter().map(|(c, d, m)| ((*c, *d), *m)).collect();
    BranchVerification {
        formula_vs_tableaux: counts == from_table,
        dimension_sum: table.dimension_sum() == weyl_dim_g2(a, b) as u128,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reptheory::{dim_gl3, weight_multiplicities};
    use crate::weights::Weight;

    #[test]
    fn multiplicity_examples() {
        assert_eq!(branch_multiplicity(1, 0, 0, 0), 1);
        assert_eq!(branch_multiplicity(1, 0, 1, 1), 0);
        assert_eq!(branch_multiplicity(0, 1, 1, 1), 1);
        assert_eq!(branch_multiplicity(2, 0, 1, 1), 1);
    }

    #[test]
    fn six_term_formula_overcounts() {
        assert_eq!(six_term_multiplicity(2, 1, 2, 0), 2);
        assert_eq!(branch_multiplicity(2, 1, 2, 0), 1);
        assert_eq!(hw_tableaux_counts(2, 1).get(&(2, 0)), Some(&1));
        let six_term_sum: u64 = (0..=3)
            .flat_map(|c| (0..=3).map(move |d| six_term_multiplicity(2, 1, c, d) * dim_gl3(c, d)))
            .sum();
        assert_eq!(six_term_sum, 201);
        assert_eq!(weyl_dim_g2(2, 1), 189);
        for a in 0..=1 {
            for b in 0..=8 {
                for c in 0..=a + b {
                    for d in 0..=a + b {
                        assert_eq!(six_term_multiplicity(a, b, c, d), branch_multiplicity(a, b, c, d));
                    }
                }
            }
        }
    }

    #[test]
    fn hw_tableaux_examples() {
        assert_eq!(hw_tableaux_counts(0, 0), BTreeMap::from([((0, 0), 1)]));
        assert_eq!(
            hw_tableaux_counts(1, 0),
            BTreeMap::from([((1, 0), 1), ((0, 1), 1), ((0, 0), 1)])
        );
        assert_eq!(
            hw_tableaux_counts(0, 1),
            BTreeMap::from([((1, 1), 1), ((1, 0), 1), ((0, 1), 1)])
        );
    }

    #[test]
    fn table_examples() {
        assert_eq!(branch_table(1, 0).entries, vec![(0, 0, 1), (0, 1, 1), (1, 0, 1)]);
        assert_eq!(branch_table(0, 1).entries, vec![(0, 1, 1), (1, 0, 1), (1, 1, 1)]);
        let t = branch_table(2, 0);
        assert_eq!(t.entries.len(), 6);
        assert!(t.entries.iter().all(|e| e.2 == 1));
        assert_eq!(t.dimension_sum(), 27);
    }

    #[test]
    fn verification_examples() {
        for (a, b) in [(1, 0), (0, 1), (5, 5)] {
            assert!(verify_branching(a, b).holds(), "({a},{b})");
        }
    }

    #[test]
    fn formula_symmetric_and_positive() {
        for a in 0..=10 {
            for b in 0..=10 {
                for c in 0..=a + b + 1 {
                    for d in 0..=a + b + 1 {
                        let m = branch_multiplicity(a, b, c, d);
                        assert_eq!(m, branch_multiplicity(a, b, d, c));
                        assert_eq!(m > 0, in_support(a, b, c, d));
                    }
                }
            }
        }
    }

    #[test]
    fn tableau_support_matches_formula_support() {
        for a in 0..=10 {
            for b in 0..=10 {
                let counts = hw_tableaux_counts(a, b);
                let table = branch_table(a, b);
                let s1: Vec<_> = counts.keys().copied().collect();
                let s2: Vec<_> = table.entries.iter().map(|(c, d, _)| (*c, *d)).collect();
                assert_eq!(s1, s2, "({a},{b})");
            }
        }
    }

    #[test]
    fn dimension_sum_identity() {
        for a in 0..=25 {
            for b in 0..=25 {
                assert_eq!(
                    branch_table(a, b).dimension_sum(),
                    weyl_dim_g2(a, b) as u128,
                    "({a},{b})"
                );
            }
        }
    }

    /// Independent oracle: restrict the `G₂` character to the `A₂` torus and
    /// peel off `A₂` characters from the top.
    fn restricted_multiplicities(a: u32, b: u32) -> BTreeMap<(u32, u32), u64> {
        // A₂ simple roots are the long roots β and 3α+β; long coroots pair
        // as (w, γ)/3.
        let a1 = Weight::new(0, 1);
        let a2 = Weight::new(3, 1);
        let coords = |w: Weight| {
            let c = crate::weights::inner(w, a1) / 3;
            let d = crate::weights::inner(w, a2) / 3;
            (c, d)
        };
        let mut remaining: BTreeMap<(i64, i64), i64> = BTreeMap::new();
        for (w, m) in weight_multiplicities(a, b) {
            *remaining.entry(coords(w)).or_insert(0) += m as i64;
        }
        let mut out = BTreeMap::new();
        loop {
            let top = remaining
                .iter()
                .filter(|(_, m)| **m != 0)
                .map(|(k, _)| *k)
                .filter(|(c, d)| *c >= 0 && *d >= 0)
                .max_by_key(|(c, d)| (c + d, *c));
            let Some((c, d)) = top else { break };
            let m = remaining[&(c, d)];
            assert!(m > 0);
            out.insert((c as u32, d as u32), m as u64);
            for ((x, y), k) in gl3_weights(c as u32, d as u32) {
                *remaining.entry((x, y)).or_insert(0) -= m * k as i64;
            }
        }
        assert!(remaining.values().all(|m| *m == 0));
        out
    }

    /// Weights of `W_{c,d}` in fundamental coordinates, via Gelfand–Tsetlin
    /// patterns.
    fn gl3_weights(c: u32, d: u32) -> BTreeMap<(i64, i64), u64> {
        let (l1, l2, l3) = ((c + d) as i64, d as i64, 0i64);
        let mut out = BTreeMap::new();
        for m1 in l2..=l1 {
            for m2 in l3..=l2 {
                for k in m2..=m1 {
                    let w1 = k;
                    let w2 = m1 + m2 - k;
                    let w3 = l1 + l2 + l3 - m1 - m2;
                    *out.entry((w1 - w2, w2 - w3)).or_insert(0) += 1;
                }
            }
        }
        out
    }

    #[test]
    fn gt_oracle_dimensions() {
        for c in 0..5 {
            for d in 0..5 {
                assert_eq!(gl3_weights(c, d).values().sum::<u64>(), dim_gl3(c, d));
            }
        }
    }

    #[test]
    fn formula_matches_character_restriction() {
        for a in 0..=4 {
            for b in 0..=4 {
                let table: BTreeMap<(u32, u32), u64> = branch_table(a, b)
                    .entries
                    .iter()
                    .map(|(c, d, m)| ((*c, *d), *m))
                    .collect();
                assert_eq!(table, restricted_multiplicities(a, b), "({a},{b})");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let t = branch_table(1, 1);
        let s = t.to_json();
        assert!(s.starts_with(r#"{"a":1,"b":1,"entries":[[0,1,1]"#));
        assert_eq!(BranchTable::from_json(&s).unwrap(), t);
        assert!(BranchTable::from_json(r#"{"a":0,"b":0,"entries":[[1,0,1],[0,0,1]]}"#).is_err());
    }
}
