//! Sparse linear combinations of fillings of one shape: vectors in `V_λ`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::Field;
use crate::tableau::{decode_index, Shape, Tableau};
use crate::weights::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormalSumError {
    #[error("formal sum mixes shapes {0} and {1}")]
    MixedShapes(Shape, Shape),
}

/// A vector in `V_λ`, keyed by canonical filling index. Zero coefficients
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum<E> {
    shape: Shape,
    terms: BTreeMap<u64, E>,
}

impl<E: Clone> FormalSum<E> {
    pub fn zero(shape: Shape) -> Self {
        FormalSum {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &E)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, index: u64) -> Option<&E> {
        self.terms.get(&index)
    }

    pub fn tableaux(&self) -> impl Iterator<Item = (Tableau, &E)> + '_ {
        let shape = self.shape;
        self.terms.iter().map(move |(k, v)| {
            (
                Tableau::new(shape, decode_index(*k, shape.boxes())).expect("index matches shape"),
                v,
            )
        })
    }

    /// The common weight of all terms, if there is exactly one.
    pub fn homogeneous_weight(&self) -> Option<Weight> {
        let mut weights = self.tableaux().map(|(t, _)| t.weight());
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, field: &F, index: u64, coeff: &E) {
        if field.is_zero(coeff) {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(c) => {
                let s = field.add(c, coeff);
                if field.is_zero(&s) {
                    self.terms.remove(&index);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(index, coeff.clone());
            }
        }
    }

    pub fn add_tableau<F: Field<Elem = E>>(&mut self, field: &F, t: &Tableau, coeff: &E) -> Result<(), FormalSumError> {
        if t.shape() != self.shape {
            return Err(FormalSumError::MixedShapes(self.shape, t.shape()));
        }
        self.add_term(field, t.canonical_index(), coeff);
        Ok(())
    }

    pub fn from_tableaux<'a, F, I>(field: &F, terms: I) -> Result<Self, FormalSumError>
    where
        F: Field<Elem = E>,
        E: 'a,
        I: IntoIterator<Item = (&'a Tableau, E)>,
    {
        let mut iter = terms.into_iter().peekable();
        let shape = match iter.peek() {
            Some((t, _)) => t.shape(),
            None => Shape::new(0, 0).expect("empty shape"),
        };
        let mut sum = FormalSum::zero(shape);
        for (t, c) in iter {
            sum.add_tableau(field, t, &c)?;
        }
        Ok(sum)
    }

    pub fn add_assign<F: Field<Elem = E>>(&mut self, field: &F, other: &FormalSum<E>) -> Result<(), FormalSumError> {
        if other.shape != self.shape {
            return Err(FormalSumError::MixedShapes(self.shape, other.shape));
        }
        for (k, v) in &other.terms {
            self.add_term(field, *k, v);
        }
        Ok(())
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> FormalSum<E> {
        let mut out = FormalSum::zero(self.shape);
        for (k, v) in &self.terms {
            out.add_term(field, *k, &field.mul(c, v));
        }
        out
    }
}

impl FormalSum<i64> {
    /// Integer accumulation used when building relation generators.
    pub fn add_int(&mut self, index: u64, coeff: i64) {
        let slot = self.terms.entry(index).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&index);
        }
    }

    pub fn to_field<F: Field>(&self, field: &F) -> FormalSum<F::Elem> {
        let mut out = FormalSum::zero(self.shape);
        for (k, v) in &self.terms {
            out.add_term(field, *k, &field.from_i64(*v));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::weights::Entry;

    #[test]
    fn zero_coefficients_are_dropped() {
        let f = PrimeField::default();
        let t = Tableau::column(Entry::TwoAlphaBeta, Entry::NegAlpha);
        let mut s = FormalSum::zero(t.shape());
        s.add_tableau(&f, &t, &1).unwrap();
        s.add_tableau(&f, &t, &f.from_i64(-1)).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn mixed_shapes_rejected() {
        let f = PrimeField::default();
        let col = Tableau::column(Entry::AlphaBeta, Entry::Zero);
        let row = Tableau::from_rows(&[Entry::Alpha], &[]).unwrap();
        let err = FormalSum::from_tableaux(&f, [(&col, 1u64), (&row, 1u64)]).unwrap_err();
        assert_eq!(err, FormalSumError::MixedShapes(col.shape(), row.shape()));
    }

    #[test]
    fn integer_sums_cancel() {
        let mut s = FormalSum::<i64>::zero(Shape::new(2, 0).unwrap());
        s.add_int(3, 1);
        s.add_int(3, -1);
        s.add_int(4, 2);
        assert_eq!(s.len(), 1);
        assert_eq!(s.to_field(&PrimeField::default()).coefficient(4), Some(&2));
    }
}
