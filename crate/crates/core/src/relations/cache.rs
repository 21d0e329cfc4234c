//! Certificate records and their on-disk cache.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::quotient::Quotient;
use super::RelationError;
use crate::field::{Field, PrimeField, Rationals, ScalarMode};
use crate::tableau::Shape;
use crate::weights::Weight;

/// Bumped whenever relation forms, action constants or the record layout
/// change; older cache entries are then ignored.
pub const CACHE_VERSION: u32 = 1;

/// Quotient summary for one shape and scalar mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateRecord {
    pub version: u32,
    pub shape: Shape,
    #[serde(with = "modulus_format")]
    pub modulus: ScalarMode,
    pub relation_rank: usize,
    pub quotient_dim: usize,
    pub g2_count: usize,
    /// Nonzero quotient dimensions by weight, sorted by weight.
    pub graded: Vec<(Weight, usize)>,
    pub spanning: bool,
    pub independent: bool,
}

impl CertificateRecord {
    /// Builds the record, certifying the quotient if that has not happened.
    pub fn from_quotient<F: Field>(q: &mut Quotient<F>) -> CertificateRecord {
        let cert = match q.certificate() {
            Some(c) => c,
            None => q.certify(),
        };
        CertificateRecord {
            version: CACHE_VERSION,
            shape: q.shape(),
            modulus: q.basis().field().mode(),
            relation_rank: q.relation_rank(),
            quotient_dim: cert.quotient_dim,
            g2_count: cert.g2_count,
            graded: q.weight_graded_dims().into_iter().filter(|(_, d)| *d > 0).collect(),
            spanning: cert.spanning,
            independent: cert.independent,
        }
    }

    /// Computes and certifies the quotient of `shape` in the given mode.
    pub fn compute(shape: Shape, mode: ScalarMode) -> Result<CertificateRecord, RelationError> {
        match mode {
            ScalarMode::Exact => Ok(Self::from_quotient(&mut Quotient::compute(&Rationals, shape)?)),
            ScalarMode::Prime(p) => {
                let field = PrimeField::new(p).map_err(|_| RelationError::BadModulus(p))?;
                Ok(Self::from_quotient(&mut Quotient::compute(&field, shape)?))
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<CertificateRecord, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn holds(&self) -> bool {
        self.spanning && self.independent
    }
}

mod modulus_format {
    use super::*;

    pub fn serialize<S: Serializer>(m: &ScalarMode, s: S) -> Result<S::Ok, S::Error> {
        match m {
            ScalarMode::Exact => s.serialize_str("exact"),
            ScalarMode::Prime(p) => s.serialize_u64(*p),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Prime(u64),
        Tag(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ScalarMode, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Prime(p) => Ok(ScalarMode::Prime(p)),
            Raw::Tag(t) if t == "exact" => Ok(ScalarMode::Exact),
            Raw::Tag(t) => Err(de::Error::custom(format!("bad modulus {t:?}"))),
        }
    }
}

/// Directory of certificate files keyed by shape and scalar mode.
#[derive(Debug, Clone)]
pub struct CertificateCache {
    dir: PathBuf,
}

impl CertificateCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CertificateCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, shape: Shape, mode: ScalarMode) -> PathBuf {
        self.dir
            .join(format!("v{CACHE_VERSION}"))
            .join(format!("{}_{}_{}.json", shape.p(), shape.q(), mode.tag()))
    }

    /// A cached record, if present, readable and of the current version.
    pub fn load(&self, shape: Shape, mode: ScalarMode) -> Option<CertificateRecord> {
        let text = fs::read_to_string(self.path_for(shape, mode)).ok()?;
        let rec = CertificateRecord::from_json(text.trim_end()).ok()?;
        (rec.version == CACHE_VERSION && rec.shape == shape && rec.modulus == mode).then_some(rec)
    }

    pub fn store(&self, rec: &CertificateRecord) -> io::Result<()> {
        let path = self.path_for(rec.shape, rec.modulus);
        let parent = path.parent().expect("cache path has a parent");
        fs::create_dir_all(parent)?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, rec.to_json() + "\n")?;
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn record_round_trip_and_layout() {
        let f = PrimeField::default();
        let mut q = Quotient::compute(&f, Shape::new(1, 0).unwrap()).unwrap();
        let rec = CertificateRecord::from_quotient(&mut q);
        let json = rec.to_json();
        assert!(json.starts_with(
            r#"{"version":1,"shape":[1,0],"modulus":2305843009213693951,"relation_rank":0,"quotient_dim":7,"#
        ));
        assert_eq!(CertificateRecord::from_json(&json).unwrap(), rec);
        assert_eq!(rec.graded.len(), 7);
    }

    #[test]
    fn exact_modulus_tag() {
        let mut rec = CertificateRecord {
            version: CACHE_VERSION,
            shape: Shape::new(1, 0).unwrap(),
            modulus: ScalarMode::Exact,
            relation_rank: 0,
            quotient_dim: 7,
            g2_count: 7,
            graded: vec![],
            spanning: true,
            independent: true,
        };
        assert!(rec.to_json().contains(r#""modulus":"exact""#));
        assert_eq!(CertificateRecord::from_json(&rec.to_json()).unwrap(), rec);
        rec.modulus = ScalarMode::Prime(7);
        let bad = rec.to_json().replace("7,\"relation", "\"seven\",\"relation");
        assert!(CertificateRecord::from_json(&bad).is_err());
    }

    #[test]
    fn cache_store_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CertificateCache::new(dir.path());
        let f = PrimeField::default();
        let shape = Shape::new(1, 1).unwrap();
        assert!(cache.load(shape, f.mode()).is_none());
        let mut q = Quotient::compute(&f, shape).unwrap();
        let rec = CertificateRecord::from_quotient(&mut q);
        cache.store(&rec).unwrap();
        assert_eq!(cache.load(shape, f.mode()), Some(rec.clone()));
        assert!(cache.load(shape, ScalarMode::Exact).is_none());
        let bytes = fs::read(cache.path_for(shape, f.mode())).unwrap();
        assert_eq!(bytes, (rec.to_json() + "\n").into_bytes());
    }
}
