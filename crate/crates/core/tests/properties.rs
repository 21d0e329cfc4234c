//! Cross-checks of the relation engine against a plain dense elimination,
//! plus randomized invariants of the public API.

use std::collections::VecDeque;

use proptest::prelude::*;

use g2tab::action::{apply_generator, generator_matrix, GeneratorLabel};
use g2tab::branching::branch_table;
use g2tab::field::{Field, PrimeField, SECOND_MODULUS};
use g2tab::formal::FormalSum;
use g2tab::relations::{family_generators, relation_space, FamilySet, Quotient, RelationFamily};
use g2tab::reptheory::{freudenthal, weyl_dim_g2};
use g2tab::tableau::{Shape, Tableau};
use g2tab::weights::{Entry, Weight};

const P: u64 = SECOND_MODULUS;

fn shape(p: usize, q: usize) -> Shape {
    Shape::new(p, q).unwrap()
}

fn reduce(m: i64) -> u64 {
    m.rem_euclid(P as i64) as u64
}

fn inv(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, P - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        exp >>= 1;
    }
    acc
}

/// Dense vectors over all fillings, indexed by position in `fillings`.
struct Naive {
    shape: Shape,
    fillings: Vec<Tableau>,
    /// Rows with a leading 1 at `pivots[k]`.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Naive {
    fn new(shape: Shape) -> Naive {
        let n = 7u64.pow(shape.boxes() as u32);
        let fillings = (0..n)
            .map(|i| Tableau::from_canonical_index(shape, i).unwrap())
            .collect();
        Naive {
            shape,
            fillings,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn dense(&self, x: &FormalSum<i64>) -> Vec<u64> {
        let mut v = vec![0; self.fillings.len()];
        for (i, c) in x.terms() {
            v[i as usize] = (v[i as usize] + reduce(*c)) % P;
        }
        v
    }

    /// Reduces `v` against the rows; inserts and returns the remainder if nonzero.
    fn insert(&mut self, mut v: Vec<u64>) -> Option<Vec<u64>> {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + P - c * r % P) % P;
                }
            }
        }
        let piv = v.iter().position(|&x| x != 0)?;
        let s = inv(v[piv]);
        for x in v.iter_mut() {
            *x = *x * s % P;
        }
        self.rows.push(v.clone());
        self.pivots.push(piv);
        Some(v)
    }

    /// Leibniz action of `g` on a dense vector, from the 7×7 matrix only.
    fn act(&self, g: GeneratorLabel, v: &[u64]) -> Vec<u64> {
        let m = generator_matrix(g);
        let mut out = vec![0; v.len()];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let entries = self.fillings[i].entries();
            for b in 0..entries.len() {
                for dst in Entry::ALL {
                    let k = m.get(dst, entries[b]);
                    if k == 0 {
                        continue;
                    }
                    let mut moved = entries.to_vec();
                    moved[b] = dst;
                    let j = Tableau::new(self.shape, moved).unwrap().canonical_index() as usize;
                    out[j] = (out[j] + reduce(k) * c) % P;
                }
            }
        }
        out
    }

    fn rank(shape: Shape, families: FamilySet, close: bool) -> usize {
        let mut naive = Naive::new(shape);
        let mut queue: VecDeque<Vec<u64>> = family_generators(shape, families)
            .unwrap()
            .iter()
            .map(|x| naive.dense(x))
            .collect();
        while let Some(v) = queue.pop_front() {
            if let Some(r) = naive.insert(v) {
                if close {
                    for g in GeneratorLabel::RAISING_LOWERING {
                        queue.push_back(naive.act(g, &r));
                    }
                }
            }
        }
        naive.rows.len()
    }
}

fn family_sets() -> Vec<FamilySet> {
    let fs = RelationFamily::ALL;
    let mut sets = vec![FamilySet::CLASSICAL, FamilySet::G_STABLE, FamilySet::ALL];
    sets.extend(fs.iter().map(|&f| FamilySet::EMPTY.with(f)));
    sets.push(
        [RelationFamily::Alternating, RelationFamily::Orthogonal]
            .into_iter()
            .collect(),
    );
    sets.push(
        [RelationFamily::Exchange, RelationFamily::Pairing]
            .into_iter()
            .collect(),
    );
    sets
}

#[test]
fn engine_rank_matches_dense_elimination() {
    let f = PrimeField::new(P).unwrap();
    for s in [shape(1, 0), shape(2, 0), shape(1, 1), shape(3, 0), shape(2, 1)] {
        for set in family_sets() {
            if family_generators(s, set).unwrap().is_empty() {
                continue;
            }
            for close in [false, true] {
                let engine = relation_space(&f, s, set, close).unwrap().rank();
                let naive = Naive::rank(s, set, close);
                assert_eq!(engine, naive, "{s} {set:?} close={close}");
            }
        }
    }
}

#[test]
fn closure_of_classical_families_is_not_enough() {
    // Closing only the alternating and exchange relations leaves the GL7 module,
    // which is already stable, so the quotient stays larger than the G2 module.
    let f = PrimeField::new(P).unwrap();
    let s = shape(1, 1);
    let open = relation_space(&f, s, FamilySet::CLASSICAL, false).unwrap().rank();
    let closed = relation_space(&f, s, FamilySet::CLASSICAL, true).unwrap().rank();
    assert_eq!(open, closed);
    assert_eq!(49 - closed, 21);
    assert_eq!(
        49 - relation_space(&f, s, FamilySet::G_STABLE, true).unwrap().rank(),
        14
    );
}

fn filling(max_boxes: usize) -> impl Strategy<Value = Tableau> {
    (1..=max_boxes)
        .prop_flat_map(|n| (0..=n / 2).prop_map(move |q| shape(n - q, q)))
        .prop_flat_map(|s| {
            prop::collection::vec(0usize..7, s.boxes()).prop_map(move |ix| {
                Tableau::new(s, ix.into_iter().map(|i| Entry::from_index(i).unwrap()).collect()).unwrap()
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn straightening_stays_in_the_class(t in filling(4)) {
        let f = PrimeField::default();
        let mut q = Quotient::compute(&f, t.shape()).unwrap();
        prop_assert!(q.certify().holds());
        let s = q.straighten(&t).unwrap();
        for (u, _) in s.tableaux() {
            prop_assert!(u.is_g2());
            prop_assert_eq!(u.weight(), t.weight());
        }
        let mut diff = s.scale(&f, &f.from_i64(-1));
        diff.add_tableau(&f, &t, &f.one()).unwrap();
        prop_assert!(q.basis().contains(&diff).unwrap());
        if t.is_g2() {
            prop_assert_eq!(s.len(), 1);
            prop_assert_eq!(s.coefficient(t.canonical_index()), Some(&f.one()));
        }
    }

    #[test]
    fn generators_shift_weight(t in filling(6), k in 0usize..4) {
        let f = PrimeField::default();
        let g = GeneratorLabel::RAISING_LOWERING[k];
        let mut x = FormalSum::zero(t.shape());
        x.add_tableau(&f, &t, &f.one()).unwrap();
        let y = apply_generator(&f, g, &x);
        if !y.is_empty() {
            prop_assert_eq!(y.homogeneous_weight(), Some(t.weight() + g.shift()));
        }
    }

    #[test]
    fn relation_span_is_stable(t in filling(3), k in 0usize..4) {
        let f = PrimeField::default();
        let mut q = Quotient::compute(&f, t.shape()).unwrap();
        q.certify();
        let mut diff = q.straighten(&t).unwrap().scale(&f, &f.from_i64(-1));
        diff.add_tableau(&f, &t, &f.one()).unwrap();
        let g = GeneratorLabel::RAISING_LOWERING[k];
        prop_assert!(q.basis().contains(&apply_generator(&f, g, &diff)).unwrap());
    }

    #[test]
    fn multiplicities_are_weyl_invariant(a in 0u32..5, b in 0u32..5, x in -12i64..12, y in -8i64..8) {
        let mu = Weight::new(x, y);
        let m = freudenthal(a, b, mu);
        // Simple reflections in root coordinates.
        let sa = Weight::new(-x + 3 * y, y);
        let sb = Weight::new(x, x - y);
        prop_assert_eq!(freudenthal(a, b, sa), m);
        prop_assert_eq!(freudenthal(a, b, sb), m);
        prop_assert_eq!(freudenthal(a, b, -mu), m);
    }

    #[test]
    fn branching_sums_to_dimension(a in 0u32..40, b in 0u32..40) {
        let t = branch_table(a, b);
        let sum: u64 = t.entries.iter().map(|&(c, d, m)| m * (c as u64 + 1) * (d as u64 + 1) * (c as u64 + d as u64 + 2) / 2).sum();
        prop_assert_eq!(sum, weyl_dim_g2(a, b));
    }

    #[test]
    fn serial_forms_round_trip(t in filling(8)) {
        prop_assert_eq!(Tableau::from_json(&t.to_json()).unwrap(), t.clone());
        prop_assert_eq!(Tableau::from_csv_line(&t.to_csv_line()).unwrap(), t.clone());
        prop_assert_eq!(Tableau::from_canonical_index(t.shape(), t.canonical_index()).unwrap(), t);
    }
}
