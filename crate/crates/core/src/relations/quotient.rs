//! Ranks, graded quotient dimensions, the G2-tableau basis certificate and
//! straightening.

use std::collections::BTreeMap;

use serde::Serialize;

use super::closure::{Echelon, RelationBasis};
use super::families::{family_generators, FamilySet, RelationFamily};
use super::RelationError;
use crate::field::Field;
use crate::formal::FormalSum;
use crate::tableau::{enumerate_g2, Shape, Tableau};
use crate::weights::Weight;

/// The span of the chosen families, optionally closed under `g₂`.
pub fn relation_space<F: Field>(
    field: &F,
    shape: Shape,
    families: FamilySet,
    close: bool,
) -> Result<RelationBasis<F>, RelationError> {
    RelationBasis::build(field, shape, family_generators(shape, families)?, close)
}

/// Smallest `g₂`-stable subspace containing `generators`.
pub fn lie_closure<F: Field>(
    field: &F,
    shape: Shape,
    generators: impl IntoIterator<Item = FormalSum<i64>>,
) -> Result<RelationBasis<F>, RelationError> {
    RelationBasis::build(field, shape, generators, true)
}

/// Rank of `R_λ`.
pub fn relation_rank<F: Field>(field: &F, shape: Shape) -> Result<usize, RelationError> {
    Ok(relation_space(field, shape, FamilySet::G_STABLE, true)?.rank())
}

/// `7^n − rank R_λ`.
pub fn quotient_dimension<F: Field>(field: &F, shape: Shape) -> Result<usize, RelationError> {
    Ok(Quotient::compute(field, shape)?.quotient_dimension())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisCertificate {
    pub shape: Shape,
    pub g2_count: usize,
    pub quotient_dim: usize,
    pub spanning: bool,
    pub independent: bool,
}

impl BasisCertificate {
    pub fn holds(&self) -> bool {
        self.spanning && self.independent
    }
}

/// Per-weight data for expressing quotient classes in G2 tableaux.
#[derive(Debug, Clone)]
struct BlockSolver<E> {
    tableaux: Vec<u64>,
    /// Quotient coordinates of each tableau (one column per tableau).
    columns: Vec<Vec<E>>,
}

/// `S_λ` for one shape: the relation space plus, once certified, the data
/// needed to straighten.
#[derive(Debug, Clone)]
pub struct Quotient<F: Field> {
    basis: RelationBasis<F>,
    certificate: Option<BasisCertificate>,
    solvers: BTreeMap<usize, BlockSolver<F::Elem>>,
}

impl<F: Field> Quotient<F> {
    /// `V_λ / R_λ` with `R_λ` the closure of the `g₂`-consistent families.
    pub fn compute(field: &F, shape: Shape) -> Result<Self, RelationError> {
        Ok(Quotient::from_basis(relation_space(
            field,
            shape,
            FamilySet::G_STABLE,
            true,
        )?))
    }

    pub fn from_basis(basis: RelationBasis<F>) -> Self {
        Quotient {
            basis,
            certificate: None,
            solvers: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> &RelationBasis<F> {
        &self.basis
    }

    pub fn shape(&self) -> Shape {
        self.basis.shape()
    }

    pub fn relation_rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn quotient_dimension(&self) -> usize {
        self.basis.graded_ranks().iter().map(|(_, d, r)| d - r).sum()
    }

    /// Quotient dimension at every weight carried by some filling.
    pub fn weight_graded_dims(&self) -> BTreeMap<Weight, usize> {
        self.basis
            .graded_ranks()
            .into_iter()
            .map(|(w, d, r)| (w, d - r))
            .collect()
    }

    /// Quotient dimension at `w`; zero for weights no filling carries.
    pub fn graded_dim(&self, w: Weight) -> usize {
        self.basis
            .block_of_weight(w)
            .map_or(0, |b| self.basis.quotient_dimension_at(b))
    }

    /// Tests whether the G2 tableaux map to a basis of the quotient and, if
    /// so, keeps what [`Quotient::straighten`] needs.
    pub fn certify(&mut self) -> BasisCertificate {
        let field = self.basis.field().clone();
        let shape = self.shape();
        let mut by_block: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
        let mut g2_count = 0;
        for t in enumerate_g2(shape) {
            let i = t.canonical_index();
            by_block.entry(self.basis.block_of_index(i)).or_default().push(i);
            g2_count += 1;
        }
        let mut spanning = true;
        let mut independent = true;
        let mut solvers = BTreeMap::new();
        for b in 0..self.basis.block_count() {
            let tableaux = by_block.remove(&b).unwrap_or_default();
            let free = self.basis.quotient_dimension_at(b);
            let columns: Vec<Vec<F::Elem>> = tableaux
                .iter()
                .map(|&i| self.basis.quotient_coordinates(b, &[(i, field.one())]))
                .collect();
            let mut ech = Echelon::new(free);
            let rank = columns
                .iter()
                .filter(|c| ech.insert(&field, (*c).clone()).is_some())
                .count();
            independent &= rank == tableaux.len();
            spanning &= rank == free;
            if !tableaux.is_empty() {
                solvers.insert(b, BlockSolver { tableaux, columns });
            }
        }
        let cert = BasisCertificate {
            shape,
            g2_count,
            quotient_dim: self.quotient_dimension(),
            spanning,
            independent,
        };
        self.certificate = Some(cert);
        self.solvers = if cert.holds() { solvers } else { BTreeMap::new() };
        cert
    }

    pub fn certificate(&self) -> Option<BasisCertificate> {
        self.certificate
    }

    /// The unique combination of G2 tableaux congruent to `t` modulo `R_λ`.
    pub fn straighten(&self, t: &Tableau) -> Result<FormalSum<F::Elem>, RelationError> {
        let shape = self.shape();
        if t.shape() != shape {
            return Err(RelationError::MixedShapes(shape, t.shape()));
        }
        match self.certificate {
            None => return Err(RelationError::CertificateMissing(shape)),
            Some(c) if !c.holds() => return Err(RelationError::CertificateFailed(shape)),
            Some(_) => {}
        }
        let field = self.basis.field();
        let i = t.canonical_index();
        let b = self.basis.block_of_index(i);
        let target = self.basis.quotient_coordinates(b, &[(i, field.one())]);
        let mut out = FormalSum::zero(shape);
        if let Some(solver) = self.solvers.get(&b) {
            let coeffs =
                solve(field, &solver.columns, &target).expect("certified tableaux form a basis of each weight space");
            for (idx, c) in solver.tableaux.iter().zip(coeffs) {
                out.add_term(field, *idx, &c);
            }
        }
        Ok(out)
    }
}

/// Solves `Σ c_k · columns[k] = target` for a square invertible system.
fn solve<F: Field>(field: &F, columns: &[Vec<F::Elem>], target: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = columns.len();
    if target.len() != n {
        return None;
    }
    // augmented rows: a[r] = [columns[0][r], ..., columns[n-1][r], target[r]]
    let mut a: Vec<Vec<F::Elem>> = (0..n)
        .map(|r| {
            let mut row: Vec<F::Elem> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !field.is_zero(&a[r][col]))?;
        a.swap(col, pivot);
        let inv = field.inv(&a[col][col])?;
        for x in a[col].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !field.is_zero(&row[col]) {
                let c = row[col].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x = field.sub_mul(x, &c, p);
                }
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().expect("augmented")).collect())
}

/// Whether each family's generators lie in a given relation space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: RelationFamily,
    pub generators: usize,
    pub contained: bool,
}

pub fn family_consistency<F: Field>(
    basis: &RelationBasis<F>,
    families: FamilySet,
) -> Result<Vec<FamilyReport>, RelationError> {
    let field = basis.field();
    let shape = basis.shape();
    families
        .iter()
        .map(|family| {
            let gens = family_generators(shape, FamilySet::EMPTY.with(family))?;
            let mut contained = true;
            for g in &gens {
                if !basis.contains(&g.to_field(field))? {
                    contained = false;
                    break;
                }
            }
            Ok(FamilyReport {
                family,
                generators: gens.len(),
                contained,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::weights::Entry::*;

    fn sh(p: usize, q: usize) -> Shape {
        Shape::new(p, q).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = PrimeField::default();
        assert_eq!(relation_rank(&f, sh(1, 1)).unwrap(), 35);
        assert_eq!(relation_rank(&f, sh(2, 0)).unwrap(), 22);
        assert_eq!(relation_rank(&f, sh(2, 1)).unwrap(), 279);
        assert_eq!(quotient_dimension(&f, sh(1, 0)).unwrap(), 7);
        assert_eq!(quotient_dimension(&f, sh(1, 1)).unwrap(), 14);
    }

    #[test]
    fn closure_examples() {
        let f = PrimeField::default();
        assert_eq!(lie_closure(&f, sh(2, 1), Vec::new()).unwrap().rank(), 0);
        let orth = crate::relations::orthogonal_generators(sh(2, 0)).unwrap();
        assert_eq!(lie_closure(&f, sh(2, 0), orth).unwrap().rank(), 1);

        let alt = relation_space(&f, sh(1, 1), FamilySet::EMPTY.with(RelationFamily::Alternating), true).unwrap();
        let with_pairing = relation_space(
            &f,
            sh(1, 1),
            FamilySet::EMPTY
                .with(RelationFamily::Alternating)
                .with(RelationFamily::Pairing),
            true,
        )
        .unwrap();
        assert_eq!(alt.rank(), 28);
        assert_eq!(with_pairing.rank() - alt.rank(), 7);
    }

    #[test]
    fn graded_examples() {
        let f = PrimeField::default();
        let q = Quotient::compute(&f, sh(1, 1)).unwrap();
        assert_eq!(q.graded_dim(Weight::new(1, 1)), 1);
        assert_eq!(q.graded_dim(Weight::new(0, 0)), 2);
        assert_eq!(q.graded_dim(Weight::new(3, 2)), 1);
        assert_eq!(q.graded_dim(Weight::new(40, 2)), 0);
    }

    #[test]
    fn certificate_examples() {
        let f = PrimeField::default();
        for (s, n) in [(sh(1, 0), 7), (sh(1, 1), 14), (sh(2, 1), 64)] {
            let mut q = Quotient::compute(&f, s).unwrap();
            let c = q.certify();
            assert!(c.spanning && c.independent, "{s}");
            assert_eq!((c.g2_count, c.quotient_dim), (n, n));
        }
    }

    #[test]
    fn straighten_needs_certificate() {
        let f = PrimeField::default();
        let q = Quotient::compute(&f, sh(1, 1)).unwrap();
        let t = Tableau::column(TwoAlphaBeta, NegTwoAlphaBeta);
        assert_eq!(q.straighten(&t), Err(RelationError::CertificateMissing(sh(1, 1))));
    }

    #[test]
    fn straighten_examples() {
        let f = Rationals;
        let mut q = Quotient::compute(&f, sh(1, 1)).unwrap();
        assert!(q.certify().holds());
        let one = f.one();
        let minus = f.from_i64(-1);

        let g2 = Tableau::column(NegAlpha, AlphaBeta);
        assert!(g2.is_g2());
        let s = q.straighten(&g2).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(g2.canonical_index()), Some(&one));

        let s = q.straighten(&Tableau::column(TwoAlphaBeta, NegTwoAlphaBeta)).unwrap();
        let expected = FormalSum::from_tableaux(
            &f,
            [
                (&Tableau::column(NegAlpha, Alpha), minus.clone()),
                (&Tableau::column(NegAlphaBeta, AlphaBeta), minus.clone()),
            ],
        )
        .unwrap();
        assert_eq!(s, expected);

        // Both entries in V1: not zero modulo R, but the weight-(1,1) line.
        let e36 = Tableau::column(AlphaBeta, Zero);
        let s = q.straighten(&Tableau::column(NegAlpha, TwoAlphaBeta)).unwrap();
        assert_eq!(s, FormalSum::from_tableaux(&f, [(&e36, one.clone())]).unwrap());
        let s = q.straighten(&Tableau::column(TwoAlphaBeta, NegAlpha)).unwrap();
        assert_eq!(s, FormalSum::from_tableaux(&f, [(&e36, minus)]).unwrap());
    }

    #[test]
    fn straighten_is_a_projection() {
        let f = PrimeField::default();
        let mut q = Quotient::compute(&f, sh(2, 1)).unwrap();
        assert!(q.certify().holds());
        for t in crate::tableau::enumerate_fillings(sh(2, 1)).step_by(17) {
            let s = q.straighten(&t).unwrap();
            for (u, _) in s.tableaux() {
                let again = q.straighten(&u).unwrap();
                assert_eq!(again.len(), 1);
                assert_eq!(again.coefficient(u.canonical_index()), Some(&1));
            }
        }
    }

    #[test]
    fn consistency_report() {
        let f = PrimeField::default();
        let basis = relation_space(&f, sh(1, 1), FamilySet::G_STABLE, true).unwrap();
        let report = family_consistency(&basis, FamilySet::ALL).unwrap();
        let contained: Vec<_> = report.iter().map(|r| (r.family, r.contained)).collect();
        assert_eq!(
            contained,
            vec![
                (RelationFamily::Alternating, true),
                (RelationFamily::Exchange, true),
                (RelationFamily::Orthogonal, true),
                (RelationFamily::Pairing, true),
                (RelationFamily::Exclusion, false),
                (RelationFamily::Transposition, true),
            ]
        );
    }

    #[test]
    fn stability_after_closure() {
        let f = PrimeField::default();
        let basis = relation_space(&f, sh(2, 1), FamilySet::G_STABLE, true).unwrap();
        assert!(basis.is_stable());
        let open = relation_space(&f, sh(1, 1), FamilySet::EMPTY.with(RelationFamily::Pairing), false).unwrap();
        assert!(!open.is_stable());
    }
}
