//! Numerical evidence for and against Koszulity: the inverse-coefficient
//! test, generator series of minimal models, zero-run detection and the
//! per-arity scan that combines them.

mod first_negative;
mod gap;
mod scan;

use crate::error::{precondition, Result};
use crate::operad::{generating_series, EngineConfig, OperadPresentation};
use crate::series::ExactSeries;

pub use first_negative::{
    gk_inverse_test, gk_inverse_test_with, FirstNegativeResult, SearchProgress,
};
pub use gap::{detect_gap, GapReport, ZeroRun, EVIDENCE_ONLY};
pub use scan::{
    conjecture_scan, ConjectureVerdict, ExcludedPair, ScanBounds, ScanEntry, ScanReport,
};

/// `g_P(-g_dual(-t)) - t` to the common order; zero when the pair passes.
pub fn gk_functional_residual(gp: &ExactSeries, gdual: &ExactSeries) -> Result<ExactSeries> {
    if !gp.is_invertible() || !gdual.is_invertible() {
        return precondition("both series need zero constant term and nonzero linear term");
    }
    let composite = gp.compose(&gdual.desuspend())?;
    Ok(&composite - &ExactSeries::identity(composite.order()))
}

/// True iff `g_P(-g_dual(-t)) = t` up to the common truncation order.
pub fn gk_functional_check(gp: &ExactSeries, gdual: &ExactSeries) -> Result<bool> {
    Ok(gk_functional_residual(gp, gdual)?.is_zero())
}

/// Plain compositional inverse of the generating series, to order `⟨max_p⟩`.
///
/// Printed generator lists use this normalization (leading `+t`). The
/// series `g_E` with `g_P(-g_E(t)) = t` is its negation, see
/// [`generator_series_negated`].
pub fn generator_series(
    pres: &OperadPresentation,
    max_p: usize,
    config: &EngineConfig,
) -> Result<ExactSeries> {
    generating_series(pres, max_p, config)?.invert()
}

/// `-f(t)` for the plain inverse `f`, the leading `-t` normalization.
pub fn generator_series_negated(plain: &ExactSeries) -> ExactSeries {
    plain.neg()
}

pub(crate) mod bigint_str {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|t| t.parse().map_err(D::Error::custom))
                .transpose()
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            Vec::<String>::deserialize(d)?
                .into_iter()
                .map(|t| t.parse().map_err(D::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::Family;
    use num_rational::BigRational;

    fn s(order: usize, terms: &[(usize, i64)]) -> ExactSeries {
        ExactSeries::from_int_terms(order, terms)
    }

    #[test]
    fn functional_check_examples() {
        let geometric = s(6, &(1..=6).map(|k| (k, 1)).collect::<Vec<_>>());
        assert!(gk_functional_check(&geometric, &geometric).unwrap());
        assert!(gk_functional_check(&s(5, &[(1, 1)]), &s(5, &[(1, 1)])).unwrap());
        let tri = s(5, &[(1, 1), (2, -1), (3, 1)]);
        let residual = gk_functional_residual(&tri, &tri).unwrap();
        assert!(!gk_functional_check(&tri, &tri).unwrap());
        assert_eq!(residual.coeff(5), &BigRational::from_integer(4.into()));
        assert!(gk_functional_check(&s(5, &[(2, 1)]), &tri).is_err());
    }

    #[test]
    fn binary_generator_series_is_trinomial_inverse() {
        let pres = OperadPresentation::new(Family::Partial, 2, 1).unwrap();
        let e = generator_series(&pres, 6, &EngineConfig::default()).unwrap();
        let direct = s(7, &[(1, 1), (2, -1), (3, 1)]).invert().unwrap();
        assert_eq!(e, direct);
        assert_eq!(
            generator_series_negated(&e).coeff(1),
            &BigRational::from_integer((-1).into())
        );
    }
}
