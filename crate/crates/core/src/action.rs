//! The Lie algebra `g₂` acting on the 7-dimensional representation, the
//! invariant symmetric form, and the induced derivation action on
//! formal sums of fillings.
//!
//! Basis vectors are indexed by [`Entry`]. Each raising/lowering generator
//! sends a weight line to at most one other line, so the matrices are
//! stored as per-column images. The structure constants below are integral
//! and satisfy the Chevalley relations together with invariance of the form
//! pairing each weight line with its negative.

use serde::Serialize;

use crate::field::Field;
use crate::formal::FormalSum;
use crate::weights::{coroot_pairing, Entry, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GeneratorLabel {
    EAlpha,
    FAlpha,
    EBeta,
    FBeta,
    HAlpha,
    HBeta,
}

impl GeneratorLabel {
    pub const ALL: [GeneratorLabel; 6] = [
        GeneratorLabel::EAlpha,
        GeneratorLabel::FAlpha,
        GeneratorLabel::EBeta,
        GeneratorLabel::FBeta,
        GeneratorLabel::HAlpha,
        GeneratorLabel::HBeta,
    ];

    /// The four root vectors; stability under these is G-stability.
    pub const RAISING_LOWERING: [GeneratorLabel; 4] = [
        GeneratorLabel::EAlpha,
        GeneratorLabel::FAlpha,
        GeneratorLabel::EBeta,
        GeneratorLabel::FBeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorLabel::EAlpha => "e_alpha",
            GeneratorLabel::FAlpha => "f_alpha",
            GeneratorLabel::EBeta => "e_beta",
            GeneratorLabel::FBeta => "f_beta",
            GeneratorLabel::HAlpha => "h_alpha",
            GeneratorLabel::HBeta => "h_beta",
        }
    }

    /// Weight added by the generator: `±α`, `±β`, or zero for the Cartan part.
    pub fn shift(self) -> Weight {
        match self {
            GeneratorLabel::EAlpha => Weight::ALPHA,
            GeneratorLabel::FAlpha => -Weight::ALPHA,
            GeneratorLabel::EBeta => Weight::BETA,
            GeneratorLabel::FBeta => -Weight::BETA,
            GeneratorLabel::HAlpha | GeneratorLabel::HBeta => Weight::ZERO,
        }
    }
}

use Entry::*;

type Images = [Option<(Entry, i64)>; 7];

// Column images, indexed by source entry.
#[rustfmt::skip]
const F_ALPHA: Images = [
    Some((AlphaBeta, -1)),       // 2a+b
    None,                        // -a
    Some((NegTwoAlphaBeta, 1)),  // -a-b
    None,                        // a+b
    Some((Zero, -1)),            // a
    None,                        // -2a-b
    Some((NegAlpha, 1)),         // 0
];
const E_ALPHA: Images = [
    None,
    Some((Zero, 2)),
    None,
    Some((TwoAlphaBeta, -1)),
    None,
    Some((NegAlphaBeta, 1)),
    Some((Alpha, -2)),
];
const F_BETA: Images = [None, Some((NegAlphaBeta, -1)), None, Some((Alpha, 1)), None, None, None];
const E_BETA: Images = [None, None, Some((NegAlpha, -1)), None, Some((AlphaBeta, 1)), None, None];

/// Image of basis vector `e` under generator `g`: `(target, coefficient)`.
pub fn image(g: GeneratorLabel, e: Entry) -> Option<(Entry, i64)> {
    match g {
        GeneratorLabel::EAlpha => E_ALPHA[e.index()],
        GeneratorLabel::FAlpha => F_ALPHA[e.index()],
        GeneratorLabel::EBeta => E_BETA[e.index()],
        GeneratorLabel::FBeta => F_BETA[e.index()],
        GeneratorLabel::HAlpha => Some((e, coroot_pairing(e.weight(), Weight::ALPHA))).filter(|(_, c)| *c != 0),
        GeneratorLabel::HBeta => Some((e, coroot_pairing(e.weight(), Weight::BETA))).filter(|(_, c)| *c != 0),
    }
}

/// A 7×7 integer matrix; `m[row][col]`, rows and columns indexed by entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepMatrix(pub [[i64; 7]; 7]);

impl RepMatrix {
    pub fn zero() -> Self {
        RepMatrix([[0; 7]; 7])
    }

    pub fn get(&self, row: Entry, col: Entry) -> i64 {
        self.0[row.index()][col.index()]
    }

    pub fn mul(&self, other: &RepMatrix) -> RepMatrix {
        let mut out = RepMatrix::zero();
        for i in 0..7 {
            for j in 0..7 {
                out.0[i][j] = (0..7).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        out
    }

    pub fn add(&self, other: &RepMatrix) -> RepMatrix {
        let mut out = *self;
        for i in 0..7 {
            for j in 0..7 {
                out.0[i][j] += other.0[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &RepMatrix) -> RepMatrix {
        let mut out = *self;
        for i in 0..7 {
            for j in 0..7 {
                out.0[i][j] -= other.0[i][j];
            }
        }
        out
    }

    pub fn transpose(&self) -> RepMatrix {
        let mut out = RepMatrix::zero();
        for i in 0..7 {
            for j in 0..7 {
                out.0[i][j] = self.0[j][i];
            }
        }
        out
    }

    pub fn bracket(&self, other: &RepMatrix) -> RepMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|x| *x == 0)
    }

    /// Rows as exact fraction strings, for the debug dump.
    pub fn to_fraction_rows(&self) -> Vec<Vec<String>> {
        self.0
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

pub fn generator_matrix(g: GeneratorLabel) -> RepMatrix {
    let mut m = RepMatrix::zero();
    for src in Entry::ALL {
        if let Some((dst, c)) = image(g, src) {
            m.0[dst.index()][src.index()] = c;
        }
    }
    m
}

/// `J[e, −e] = 1`, zero elsewhere.
pub fn invariant_form_matrix() -> RepMatrix {
    let mut m = RepMatrix::zero();
    for e in Entry::ALL {
        m.0[e.index()][e.negate().index()] = 1;
    }
    m
}

/// Applies `g` to every box in turn (Leibniz rule), linearly in `x`.
pub fn apply_generator<F: Field>(field: &F, g: GeneratorLabel, x: &FormalSum<F::Elem>) -> FormalSum<F::Elem> {
    let shape = x.shape();
    let mut out = FormalSum::zero(shape);
    apply_to_terms(field, g, shape.boxes(), x.terms(), |index, c| {
        out.add_term(field, index, &c)
    });
    out
}

/// Core of [`apply_generator`] on raw `(index, coefficient)` terms of
/// `n`-box fillings; each image term is handed to `emit` unmerged.
pub(crate) fn apply_to_terms<'a, F: Field>(
    field: &F,
    g: GeneratorLabel,
    n: usize,
    terms: impl IntoIterator<Item = (u64, &'a F::Elem)>,
    mut emit: impl FnMut(u64, F::Elem),
) where
    F::Elem: 'a,
{
    let mut place = 1u64;
    let mut places = vec![0u64; n];
    for b in (0..n).rev() {
        places[b] = place;
        place *= 7;
    }
    for (index, coeff) in terms {
        let mut rest = index;
        for b in (0..n).rev() {
            let digit = rest % 7;
            rest /= 7;
            if let Some((dst, c)) = image(g, Entry::ALL[digit as usize]) {
                let target = index - digit * places[b] + dst.index() as u64 * places[b];
                emit(target, field.mul(&field.from_i64(c), coeff));
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixDump {
    pub basis: Vec<Entry>,
    pub generators: Vec<(GeneratorLabel, Vec<Vec<String>>)>,
    pub form: Vec<Vec<String>>,
}

/// All six generator matrices plus the form, as exact fractions.
pub fn matrix_dump() -> MatrixDump {
    MatrixDump {
        basis: Entry::ALL.to_vec(),
        generators: GeneratorLabel::ALL
            .iter()
            .map(|g| (*g, generator_matrix(*g).to_fraction_rows()))
            .collect(),
        form: invariant_form_matrix().to_fraction_rows(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::tableau::{Shape, Tableau};
    use GeneratorLabel::*;

    fn m(g: GeneratorLabel) -> RepMatrix {
        generator_matrix(g)
    }

    #[test]
    fn bracket_relations() {
        assert_eq!(m(EAlpha).bracket(&m(FAlpha)), m(HAlpha));
        assert_eq!(m(EBeta).bracket(&m(FBeta)), m(HBeta));
        assert!(m(EAlpha).bracket(&m(FBeta)).is_zero());
        assert!(m(EBeta).bracket(&m(FAlpha)).is_zero());
    }

    #[test]
    fn serre_relations() {
        let ad = |x: &RepMatrix, y: &RepMatrix| x.bracket(y);
        let (ea, eb, fa, fb) = (m(EAlpha), m(EBeta), m(FAlpha), m(FBeta));
        assert!(ad(&ea, &ad(&ea, &ad(&ea, &ad(&ea, &eb)))).is_zero());
        assert!(ad(&eb, &ad(&eb, &ea)).is_zero());
        assert!(ad(&fa, &ad(&fa, &ad(&fa, &ad(&fa, &fb)))).is_zero());
        assert!(ad(&fb, &ad(&fb, &fa)).is_zero());
    }

    #[test]
    fn cartan_diagonal_is_coroot_pairing() {
        for e in Entry::ALL {
            assert_eq!(m(HAlpha).get(e, e), coroot_pairing(e.weight(), Weight::ALPHA));
            assert_eq!(m(HBeta).get(e, e), coroot_pairing(e.weight(), Weight::BETA));
        }
        assert_eq!(m(HAlpha).get(Alpha, Alpha), 2);
    }

    #[test]
    fn form_invariance() {
        let j = invariant_form_matrix();
        assert_eq!(j, j.transpose());
        for g in GeneratorLabel::ALL {
            let mm = m(g);
            assert!(mm.transpose().mul(&j).add(&j.mul(&mm)).is_zero(), "{g:?}");
        }
        assert_eq!(j.get(TwoAlphaBeta, NegTwoAlphaBeta), 1);
        assert_eq!(j.get(Zero, Zero), 1);
        assert_eq!(j.get(TwoAlphaBeta, NegAlpha), 0);
    }

    #[test]
    fn generators_shift_weights() {
        for g in GeneratorLabel::ALL {
            for e in Entry::ALL {
                if let Some((dst, _)) = image(g, e) {
                    assert_eq!(dst.weight(), e.weight() + g.shift());
                }
            }
        }
    }

    #[test]
    fn beta_lowering_examples() {
        let fb = m(FBeta);
        assert_ne!(fb.get(NegAlphaBeta, NegAlpha), 0);
        for e in Entry::ALL {
            if e != NegAlphaBeta {
                assert_eq!(fb.get(e, NegAlpha), 0);
            }
            assert_eq!(fb.get(e, TwoAlphaBeta), 0);
        }
    }

    #[test]
    fn single_box_reduces_to_matrix_action() {
        let f = Rationals;
        let t = Tableau::from_rows(&[TwoAlphaBeta], &[]).unwrap();
        let x = FormalSum::from_tableaux(&f, [(&t, f.one())]).unwrap();
        let y = apply_generator(&f, FAlpha, &x);
        let target = Tableau::from_rows(&[AlphaBeta], &[]).unwrap();
        assert_eq!(y.len(), 1);
        assert_eq!(
            y.coefficient(target.canonical_index()),
            Some(&f.from_i64(m(FAlpha).get(AlphaBeta, TwoAlphaBeta)))
        );
    }

    #[test]
    fn orthogonal_invariant_is_annihilated() {
        let f = PrimeField::default();
        for shape in [Shape::new(2, 0).unwrap(), Shape::new(1, 1).unwrap()] {
            let mut x = FormalSum::zero(shape);
            for e in Entry::ALL {
                let t = Tableau::new(shape, vec![e, e.negate()]).unwrap();
                x.add_tableau(&f, &t, &1).unwrap();
            }
            assert_eq!(x.len(), 7);
            for g in GeneratorLabel::ALL {
                assert!(apply_generator(&f, g, &x).is_empty(), "{g:?} on {shape}");
            }
        }
    }

    #[test]
    fn empty_sum_maps_to_empty() {
        let f = PrimeField::default();
        let x = FormalSum::zero(Shape::new(2, 1).unwrap());
        assert!(apply_generator(&f, EAlpha, &x).is_empty());
    }

    #[test]
    fn raising_from_lowest_line_stays_on_weights() {
        let f = Rationals;
        let t = Tableau::from_rows(&[NegTwoAlphaBeta], &[]).unwrap();
        let mut x = FormalSum::from_tableaux(&f, [(&t, f.one())]).unwrap();
        let mut seen = vec![x.homogeneous_weight().unwrap()];
        for _ in 0..3 {
            x = apply_generator(&f, EAlpha, &x);
            if x.is_empty() {
                break;
            }
            seen.push(x.homogeneous_weight().unwrap());
        }
        for w in seen {
            assert!(Entry::with_weight(w).is_some());
        }
    }

    #[test]
    fn homogeneous_weight_shifts() {
        let f = PrimeField::default();
        let shape = Shape::new(2, 1).unwrap();
        let t = Tableau::new(shape, vec![NegAlpha, Zero, Alpha]).unwrap();
        let x = FormalSum::from_tableaux(&f, [(&t, 1u64)]).unwrap();
        for g in GeneratorLabel::RAISING_LOWERING {
            let y = apply_generator(&f, g, &x);
            if !y.is_empty() {
                assert_eq!(y.homogeneous_weight(), Some(t.weight() + g.shift()));
            }
        }
    }
}
