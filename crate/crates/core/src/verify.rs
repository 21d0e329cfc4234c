//! The verification suite behind `verify-all`: every consistency check
//! between tableaux, relation quotients and the representation-theoretic
//! oracles, up to a box bound.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::action::{apply_generator, generator_matrix, invariant_form_matrix, GeneratorLabel};
use crate::branching::{branch_table, hw_tableaux_counts, verify_branching};
use crate::field::{Field, PrimeField, Rationals, ScalarMode, DEFAULT_MODULUS, SECOND_MODULUS};
use crate::formal::FormalSum;
use crate::relations::{relation_space, FamilySet, Quotient, RelationError};
use crate::reptheory::{freudenthal, weight_multiplicities, weyl_dim_g2, HighestWeight};
use crate::tableau::{enumerate_g2, Shape, Tableau};
use crate::weights::{coroot_pairing, Entry, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{:>2}] {}: {}", self.id, self.name, self.detail)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub max_boxes: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Dimension of the `GL_n` Schur module of a two-row shape, by the
/// hook-content formula.
pub fn schur_dim(n: i64, shape: Shape) -> u64 {
    let rows = [shape.p(), shape.q()];
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (i, &len) in rows.iter().enumerate() {
        for j in 0..len {
            let content = j as i64 - i as i64;
            let arm = len - j - 1;
            let leg = rows.iter().skip(i + 1).filter(|&&l| l > j).count();
            num *= (n + content) as u128;
            den *= (arm + leg + 1) as u128;
        }
    }
    (num / den) as u64
}

fn shapes_up_to(max_boxes: usize) -> Vec<Shape> {
    Shape::all_up_to(max_boxes)
}

/// Quotient data needed by the per-shape checks.
struct ShapeData {
    shape: Shape,
    quotient_dim: usize,
    g2_count: usize,
    certified: bool,
    graded: BTreeMap<Weight, usize>,
    stable: bool,
}

fn shape_data<F: Field>(field: &F, shape: Shape) -> Result<ShapeData, RelationError> {
    let mut q = Quotient::compute(field, shape)?;
    let cert = q.certify();
    Ok(ShapeData {
        shape,
        quotient_dim: q.quotient_dimension(),
        g2_count: cert.g2_count,
        certified: cert.holds(),
        graded: q.weight_graded_dims().into_iter().filter(|(_, d)| *d > 0).collect(),
        stable: q.basis().is_stable(),
    })
}

fn check(id: u8, name: &'static str, failures: Vec<String>, ok_detail: String) -> CheckResult {
    let passed = failures.is_empty();
    CheckResult {
        id,
        name,
        passed,
        detail: if passed { ok_detail } else { failures.join("; ") },
    }
}

pub fn check_g2_counts(max_p: usize) -> CheckResult {
    let mut failures = Vec::new();
    let mut n = 0;
    for p in 0..=max_p {
        for q in 0..=p {
            let shape = Shape::new(p, q).expect("q <= p");
            let count = enumerate_g2(shape).count() as u64;
            let (a, b) = shape.highest_weight();
            let dim = weyl_dim_g2(a as u32, b as u32);
            if count != dim {
                failures.push(format!("{shape}: {count} tableaux vs dimension {dim}"));
            }
            n += 1;
        }
    }
    check(
        1,
        "g2 tableau count = Weyl dimension",
        failures,
        format!("{n} shapes with p <= {max_p}"),
    )
}

fn quotient_checks(data: &[ShapeData], max_boxes: usize) -> Vec<CheckResult> {
    let mut dims = Vec::new();
    let mut certs = Vec::new();
    let mut graded = Vec::new();
    let mut stable = Vec::new();
    for d in data {
        let hw = HighestWeight::from_shape(d.shape);
        let weyl = weyl_dim_g2(hw.a, hw.b) as usize;
        if d.quotient_dim != weyl {
            dims.push(format!("{}: quotient {} vs {}", d.shape, d.quotient_dim, weyl));
        }
        if !d.certified {
            certs.push(format!(
                "{}: G2 tableaux are not a basis ({} vs {})",
                d.shape, d.g2_count, d.quotient_dim
            ));
        }
        let freud: BTreeMap<Weight, usize> = weight_multiplicities(hw.a, hw.b)
            .into_iter()
            .map(|(w, m)| (w, m as usize))
            .collect();
        let mut counts: BTreeMap<Weight, usize> = BTreeMap::new();
        for t in enumerate_g2(d.shape) {
            *counts.entry(t.weight()).or_insert(0) += 1;
        }
        if d.graded != freud || counts != freud {
            graded.push(format!("{}: graded dimensions disagree", d.shape));
        }
        if !d.stable {
            stable.push(format!("{}: relation span not stable", d.shape));
        }
    }
    let scope = format!("{} shapes with <= {max_boxes} boxes", data.len());
    vec![
        check(2, "quotient dimension = Weyl dimension", dims, scope.clone()),
        check(3, "G2 tableaux form a basis of the quotient", certs, scope.clone()),
        check(
            4,
            "graded quotient = Freudenthal = tableau weights",
            graded,
            scope.clone(),
        ),
        check(9, "relation span is g2-stable", stable, scope),
    ]
}

pub fn check_multiplicity_facts() -> CheckResult {
    let facts = [
        (0, 1, Weight::new(1, 1), 1),
        (1, 1, Weight::new(4, 2), 2),
        (0, 1, Weight::ZERO, 2),
    ];
    let failures = facts
        .iter()
        .filter_map(|&(a, b, mu, want)| {
            let got = freudenthal(a, b, mu);
            (got != want).then(|| format!("V({a},{b}) at {mu}: {got} != {want}"))
        })
        .collect();
    check(5, "weight multiplicities", failures, "3 facts".into())
}

pub fn check_branching() -> CheckResult {
    let mut failures = Vec::new();
    for a in 0..=5 {
        for b in 0..=5 {
            if !verify_branching(a, b).formula_vs_tableaux {
                failures.push(format!("({a},{b}): formula vs tableaux"));
            }
        }
    }
    for a in 0..=25 {
        for b in 0..=25 {
            let t = branch_table(a, b);
            if t.dimension_sum() != weyl_dim_g2(a, b) as u128 {
                failures.push(format!("({a},{b}): dimension sum"));
            }
        }
    }
    let v = branch_table(1, 0);
    if v.entries != vec![(0, 0, 1), (0, 1, 1), (1, 0, 1)] || hw_tableaux_counts(1, 0).len() != 3 {
        failures.push("V does not restrict as 1 + 3 + 3".into());
    }
    check(
        6,
        "branching formula = highest-weight tableaux",
        failures,
        "a,b <= 5; sums a,b <= 25".into(),
    )
}

pub fn check_action() -> CheckResult {
    use GeneratorLabel::*;
    let mut failures = Vec::new();
    let m = generator_matrix;
    for (e, f, h) in [(EAlpha, FAlpha, HAlpha), (EBeta, FBeta, HBeta)] {
        if m(e).bracket(&m(f)) != m(h) {
            failures.push(format!("[{}, {}] != {}", e.name(), f.name(), h.name()));
        }
    }
    if !m(EAlpha).bracket(&m(FBeta)).is_zero() || !m(EBeta).bracket(&m(FAlpha)).is_zero() {
        failures.push("mixed brackets nonzero".into());
    }
    for e in Entry::ALL {
        if m(HAlpha).get(e, e) != coroot_pairing(e.weight(), Weight::ALPHA)
            || m(HBeta).get(e, e) != coroot_pairing(e.weight(), Weight::BETA)
        {
            failures.push(format!("Cartan eigenvalue at {e}"));
        }
    }
    let j = invariant_form_matrix();
    for g in GeneratorLabel::RAISING_LOWERING {
        if !m(g).transpose().mul(&j).add(&j.mul(&m(g))).is_zero() {
            failures.push(format!("form not invariant under {}", g.name()));
        }
    }
    let f = Rationals;
    for shape in [Shape::new(2, 0).expect("valid"), Shape::new(1, 1).expect("valid")] {
        let mut x = FormalSum::zero(shape);
        for e in Entry::ALL {
            let t = Tableau::new(shape, vec![e, e.negate()]).expect("two boxes");
            x.add_tableau(&f, &t, &f.one()).expect("same shape");
        }
        for g in GeneratorLabel::RAISING_LOWERING {
            if !apply_generator(&f, g, &x).is_empty() {
                failures.push(format!("{} moves the orthogonal invariant on {shape}", g.name()));
            }
        }
    }
    check(
        7,
        "g2 action certification",
        failures,
        "brackets, Cartan, form, invariant".into(),
    )
}

pub fn check_classical(max_boxes: usize) -> Result<CheckResult, RelationError> {
    let f = PrimeField::default();
    let mut failures = Vec::new();
    let shapes = shapes_up_to(max_boxes.min(4));
    for &shape in &shapes {
        let basis = relation_space(&f, shape, FamilySet::CLASSICAL, false)?;
        let quotient = shape.filling_count().expect("small") as usize - basis.rank();
        let want = schur_dim(7, shape) as usize;
        if quotient != want {
            failures.push(format!("{shape}: {quotient} vs Schur dimension {want}"));
        }
    }
    Ok(check(
        8,
        "alternating + exchange quotient = GL7 Schur module",
        failures,
        format!("{} shapes", shapes.len()),
    ))
}

fn records_agree(a: &[ShapeData], b: &[ShapeData]) -> Vec<String> {
    a.iter()
        .zip(b)
        .filter(|(x, y)| (x.quotient_dim, x.certified, &x.graded) != (y.quotient_dim, y.certified, &y.graded))
        .map(|(x, _)| format!("{} differs", x.shape))
        .collect()
}

/// Runs every check up to `max_boxes` boxes for the relation-based ones.
pub fn run_suite(max_boxes: usize) -> Result<SuiteReport, RelationError> {
    let shapes = shapes_up_to(max_boxes);
    let primary = PrimeField::new(DEFAULT_MODULUS).expect("prime");
    let second = PrimeField::new(SECOND_MODULUS).expect("prime");
    let data: Vec<ShapeData> = shapes
        .iter()
        .map(|&s| shape_data(&primary, s))
        .collect::<Result<_, _>>()?;
    let data2: Vec<ShapeData> = shapes
        .iter()
        .map(|&s| shape_data(&second, s))
        .collect::<Result<_, _>>()?;
    let small: Vec<Shape> = shapes.iter().copied().filter(|s| s.boxes() <= 4).collect();
    let exact: Vec<ShapeData> = small
        .iter()
        .map(|&s| shape_data(&Rationals, s))
        .collect::<Result<_, _>>()?;

    let mut checks = vec![check_g2_counts(8)];
    let mut q = quotient_checks(&data, max_boxes);
    let stable = q.pop().expect("four quotient checks");
    checks.extend(q);
    checks.push(check_multiplicity_facts());
    checks.push(check_branching());
    checks.push(check_action());
    checks.push(check_classical(max_boxes)?);
    checks.push(stable);
    let mut repro = records_agree(&data, &data2);
    repro.extend(records_agree(&data[..exact.len()], &exact));
    checks.push(check(
        10,
        "reproducible across moduli and exact arithmetic",
        repro,
        format!(
            "{} and {} on {} shapes; exact on {}",
            ScalarMode::Prime(DEFAULT_MODULUS).tag(),
            ScalarMode::Prime(SECOND_MODULUS).tag(),
            data.len(),
            exact.len()
        ),
    ));
    Ok(SuiteReport { max_boxes, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_dimensions() {
        let s = |p, q| Shape::new(p, q).unwrap();
        assert_eq!(schur_dim(7, s(1, 1)), 21);
        assert_eq!(schur_dim(7, s(2, 0)), 28);
        assert_eq!(schur_dim(7, s(2, 1)), 112);
        assert_eq!(schur_dim(7, s(2, 2)), 196);
        assert_eq!(schur_dim(3, s(1, 1)), 3);
    }

    #[test]
    fn small_suite_passes() {
        let report = run_suite(3).unwrap();
        assert_eq!(report.checks.len(), 10);
        let ids: Vec<u8> = report.checks.iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=10).collect::<Vec<_>>());
        for c in &report.checks {
            assert!(c.passed, "{c}");
        }
    }
}
