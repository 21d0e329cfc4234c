//! Dimension and weight-multiplicity oracles: Weyl's dimension formula for
//! `G₂` and `GL₃`, Freudenthal's recursion, and weight counts of G2
//! tableaux.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::tableau::{enumerate_g2, Shape};
use crate::weights::{inner, Weight, POSITIVE_ROOTS, RHO};

/// Highest weight `a·λ₁ + b·λ₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HighestWeight {
    pub a: u32,
    pub b: u32,
}

impl HighestWeight {
    pub fn new(a: u32, b: u32) -> Self {
        HighestWeight { a, b }
    }

    pub fn weight(self) -> Weight {
        Weight::from_fundamental(self.a as i64, self.b as i64)
    }

    pub fn shape(self) -> Shape {
        Shape::from_highest_weight(self.a as usize, self.b as usize)
    }

    pub fn from_shape(shape: Shape) -> Self {
        let (a, b) = shape.highest_weight();
        HighestWeight::new(a as u32, b as u32)
    }
}

/// `Π_{γ>0} (λ+ρ, γ) / (ρ, γ)`.
pub fn weyl_dim_g2(a: u32, b: u32) -> u64 {
    let lr = HighestWeight::new(a, b).weight() + RHO;
    let (num, den) = POSITIVE_ROOTS.iter().fold((1i128, 1i128), |(n, d), g| {
        (n * inner(lr, *g) as i128, d * inner(RHO, *g) as i128)
    });
    debug_assert_eq!(num % den, 0);
    (num / den) as u64
}

/// `(a+1)(b+1)(a+b+2)(a+2b+3)(a+3b+4)(2a+3b+5)/120`.
pub fn weyl_dim_g2_closed(a: u32, b: u32) -> u64 {
    let (a, b) = (a as u128, b as u128);
    let n = (a + 1) * (b + 1) * (a + b + 2) * (a + 2 * b + 3) * (a + 3 * b + 4) * (2 * a + 3 * b + 5);
    (n / 120) as u64
}

/// Dimension of the `GL₃` representation with highest weight `c·ϖ₁ + d·ϖ₂`.
pub fn dim_gl3(c: u32, d: u32) -> u64 {
    let (c, d) = (c as u64, d as u64);
    (c + 1) * (d + 1) * (c + d + 2) / 2
}

/// Every nonzero weight multiplicity of `V_{a,b}`, by Freudenthal's
/// recursion over `λ − kα − lβ` in order of increasing depth `k + l`.
pub fn weight_multiplicities(a: u32, b: u32) -> BTreeMap<Weight, u64> {
    let lambda = HighestWeight::new(a, b).weight();
    // the lowest weight is −λ, so depth along α and β is at most 2x and 2y
    let (kmax, lmax) = (2 * lambda.x, 2 * lambda.y);
    let norm = |w: Weight| inner(w + RHO, w + RHO) as i128;
    let top = norm(lambda);
    let mut m: HashMap<Weight, i128> = HashMap::new();
    m.insert(lambda, 1);
    for depth in 1..=kmax + lmax {
        for k in 0..=depth.min(kmax) {
            let l = depth - k;
            if l > lmax {
                continue;
            }
            let mu = lambda - Weight::ALPHA * k - Weight::BETA * l;
            let denom = top - norm(mu);
            if denom == 0 {
                continue;
            }
            let mut num = 0i128;
            for g in POSITIVE_ROOTS {
                let mut j = 1;
                loop {
                    let nu = mu + g * j;
                    if nu.height() > lambda.height() {
                        break;
                    }
                    if let Some(&mn) = m.get(&nu) {
                        num += mn * inner(nu, g) as i128;
                    }
                    j += 1;
                }
            }
            num *= 2;
            assert_eq!(num % denom, 0, "Freudenthal recursion must divide exactly");
            let v = num / denom;
            if v != 0 {
                m.insert(mu, v);
            }
        }
    }
    m.into_iter()
        .map(|(w, v)| {
            assert!(v > 0, "negative multiplicity at {w}");
            (w, v as u64)
        })
        .collect()
}

/// Multiplicity of `μ` in `V_{a,b}`.
pub fn freudenthal(a: u32, b: u32, mu: Weight) -> u64 {
    weight_multiplicities(a, b).get(&mu).copied().unwrap_or(0)
}

/// Number of G2 tableaux of `shape` at each weight.
pub fn character_counts(shape: Shape) -> BTreeMap<Weight, u64> {
    let mut out = BTreeMap::new();
    for t in enumerate_g2(shape) {
        *out.entry(t.weight()).or_insert(0) += 1;
    }
    out
}
