//! The bent, semi-bent and five-valued families, each paired with the
//! spectrum its defining conditions predict.

pub mod gold;
pub mod kasami;
pub mod lemma1;
pub mod mm;
pub mod niho;
pub mod registry;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2n::{Elem, Field};
use crate::walsh::{classify_values, fwht, ClassTag, Distribution};

pub use gold::*;
pub use kasami::*;
pub use lemma1::*;
pub use mm::*;
pub use niho::*;
pub use registry::*;

/// What the closed form says the spectrum should be.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub class: ClassTag,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub distribution: Option<Distribution>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub balanced: Option<bool>,
}

impl Prediction {
    pub fn class(class: ClassTag) -> Self {
        Prediction {
            class,
            distribution: None,
            balanced: None,
        }
    }

    pub fn bent() -> Self {
        Prediction {
            class: ClassTag::Bent,
            distribution: None,
            balanced: Some(false),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measurement {
    pub class: ClassTag,
    pub distribution: Distribution,
    pub balanced: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub construction: String,
    pub params: Map<String, Value>,
    pub conditions: Vec<u8>,
    pub predicted: Prediction,
    pub measured: Measurement,
    #[serde(rename = "match")]
    pub matches: bool,
    pub degree: u32,
    #[serde(skip_serializing_if = "Map::is_empty", default)]
    pub diagnostics: Map<String, Value>,
}

/// A built function together with everything needed to judge it.
#[derive(Clone, Debug)]
pub struct Construction {
    pub name: &'static str,
    pub params: Map<String, Value>,
    pub conditions: Vec<u8>,
    pub predicted: Prediction,
    pub function: BooleanFunction,
    pub diagnostics: Map<String, Value>,
}

impl Construction {
    pub fn measure(&self) -> Result<Measurement> {
        let s = fwht(&self.function)?;
        Ok(Measurement {
            class: s.classify().tag,
            distribution: s.distribution(),
            balanced: s.at(0) == 0,
        })
    }

    pub fn report(self) -> Result<ConstructionReport> {
        let measured = self.measure()?;
        let matches = prediction_matches(&self.predicted, &measured);
        let degree = self.function.algebraic_degree();
        Ok(ConstructionReport {
            construction: self.name.to_string(),
            params: self.params,
            conditions: self.conditions,
            predicted: self.predicted,
            measured,
            matches,
            degree,
            diagnostics: self.diagnostics,
        })
    }
}

pub fn prediction_matches(p: &Prediction, m: &Measurement) -> bool {
    p.class == m.class
        && p.distribution.as_ref().is_none_or(|d| *d == m.distribution)
        && p.balanced.is_none_or(|b| b == m.balanced)
}

// ---------------------------------------------------------------------------
// distribution tables shared by the triple constructions

fn table(entries: [(i64, i64); 5]) -> Distribution {
    entries
        .into_iter()
        .filter(|&(_, c)| c > 0)
        .map(|(v, c)| (v as i32, c as u64))
        .collect()
}

/// Five-valued table for an odd number of nonzero conditions, `n = 2m`, `m >= 2`.
pub fn table_a(n: u32) -> Distribution {
    let m = n / 2;
    let p = |e: u32| 1i64 << e;
    let big = p(m + 1);
    table([
        // 2^n - 2^(n-1) - 2^(n-3)
        (0, p(n) - p(n - 1) - p(n - 3)),
        (p(m), p(n - 2) + p(m - 1)),
        (-p(m), p(n - 2) - p(m - 1)),
        (big, p(n - 4)),
        (-big, p(n - 4)),
    ])
}

/// Five-valued table for exactly two nonzero conditions, `n = 2m`, `m >= 2`.
pub fn table_b(n: u32) -> Distribution {
    let m = n / 2;
    let p = |e: u32| 1i64 << e;
    let big = p(m + 1);
    table([
        (0, p(n) - p(n - 1) - p(n - 3)),
        (p(m), p(n - 2)),
        (-p(m), p(n - 2)),
        (big, p(n - 4) + p(m - 2)),
        (-big, p(n - 4) - p(m - 2)),
    ])
}

/// Maps `(t1, t2, t3)` to the predicted spectrum of the triple constructions.
pub fn predict_triple(n: u32, t: [u8; 3]) -> Prediction {
    let dist = match t {
        [0, 0, 0] => return Prediction::bent(),
        [0, 0, 1] | [1, 0, 0] | [0, 1, 0] | [1, 1, 1] => table_a(n),
        _ => table_b(n),
    };
    // a table entry that vanishes (table B at n = 4) leaves fewer than five values
    let class = classify_values(n, dist.keys().copied()).tag;
    Prediction {
        class,
        distribution: Some(dist),
        balanced: None,
    }
}

/// The two-factor constructions: bent on 0, semi-bent on 1.
pub fn predict_double(bit: u8, balanced: bool) -> Prediction {
    if bit == 0 {
        Prediction::bent()
    } else {
        Prediction {
            class: ClassTag::SemiBent,
            distribution: None,
            balanced: Some(balanced),
        }
    }
}

/// Nonzero, pairwise distinct, and `u + v + r != 0`.
pub fn validate_triple(u: usize, v: usize, r: usize) -> Result<()> {
    for (name, x) in [("u", u), ("v", v), ("r", r)] {
        if x == 0 {
            return Err(Error::ZeroParameter(name));
        }
    }
    if u == v || v == r || u == r {
        return Err(Error::InvalidTriple("u, v, r must be pairwise distinct".into()));
    }
    if u ^ v ^ r == 0 {
        return Err(Error::InvalidTriple("u + v + r = 0".into()));
    }
    Ok(())
}

pub(crate) fn elem_value(field: &Field, a: Elem) -> Value {
    Value::String(field.format_elem(a))
}

pub(crate) fn params<const N: usize>(entries: [(&str, Value); N]) -> Map<String, Value> {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moments(d: &Distribution) -> (u64, u128) {
        let count = d.values().sum();
        let energy = d
            .iter()
            .map(|(&v, &c)| (v as i128 * v as i128) as u128 * c as u128)
            .sum();
        (count, energy)
    }

    #[test]
    fn tables_at_n8() {
        assert_eq!(
            table_a(8),
            Distribution::from([(0, 96), (16, 72), (-16, 56), (32, 16), (-32, 16)])
        );
        assert_eq!(
            table_b(8),
            Distribution::from([(0, 96), (16, 64), (-16, 64), (32, 20), (-32, 12)])
        );
    }

    #[test]
    fn tables_are_consistent() {
        for m in 2..=12u32 {
            let n = 2 * m;
            for d in [table_a(n), table_b(n)] {
                let (count, energy) = moments(&d);
                assert_eq!(count, 1 << n);
                assert_eq!(energy, 1u128 << (2 * n));
            }
        }
    }

    #[test]
    fn pattern_lookup() {
        assert_eq!(predict_triple(8, [0, 0, 0]).class, ClassTag::Bent);
        for t in [[0, 0, 1], [1, 0, 0], [0, 1, 0], [1, 1, 1]] {
            let p = predict_triple(8, t);
            assert_eq!(p.class, ClassTag::FiveValued);
            assert_eq!(p.distribution, Some(table_a(8)));
        }
        for t in [[1, 1, 0], [1, 0, 1], [0, 1, 1]] {
            assert_eq!(predict_triple(8, t).distribution, Some(table_b(8)));
        }
    }

    #[test]
    fn vanishing_entry_at_n4() {
        let p = predict_triple(4, [1, 1, 0]);
        assert_eq!(
            p.distribution,
            Some(Distribution::from([(0, 6), (4, 4), (-4, 4), (8, 2)]))
        );
        assert_eq!(p.class, ClassTag::Other);
        assert_eq!(predict_triple(4, [1, 0, 0]).class, ClassTag::FiveValued);
    }

    #[test]
    fn triple_validation() {
        assert_eq!(validate_triple(0, 1, 2), Err(Error::ZeroParameter("u")));
        assert_eq!(validate_triple(1, 0, 2), Err(Error::ZeroParameter("v")));
        assert!(matches!(validate_triple(1, 1, 2), Err(Error::InvalidTriple(_))));
        assert!(matches!(validate_triple(1, 2, 3), Err(Error::InvalidTriple(_))));
        assert!(validate_triple(1, 2, 4).is_ok());
    }
}
