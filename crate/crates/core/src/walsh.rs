//! Exact Walsh spectra and spectral classification.
//!
//! `fwht` runs the usual butterfly, which yields `W(b) = sum_x (-1)^(f(x) + b.x)`
//! for the bitwise dot product, then reindexes so that `values[a]` is the
//! trace-form coefficient `sum_x (-1)^(f(x) + Tr(ax))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::boolfun::{BooleanFunction, Domain};
use crate::error::{Error, Result};

/// Largest number of variables the transform accepts.
pub const MAX_VARS: u32 = 24;

/// Multiset of spectral values, `value -> count`.
pub type Distribution = BTreeMap<i32, u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    domain: Domain,
    values: Vec<i32>,
}

pub fn fwht(f: &BooleanFunction) -> Result<WalshSpectrum> {
    let n = f.n_vars();
    if n > MAX_VARS {
        return Err(Error::TooLarge(n));
    }
    let mut w: Vec<i32> = f.bits().map(|b| if b { -1 } else { 1 }).collect();
    butterfly(&mut w);
    let tau = f.domain().dual_index_table();
    let values: Vec<i32> = tau.iter().map(|&b| w[b as usize]).collect();
    let spectrum = WalshSpectrum {
        domain: f.domain().clone(),
        values,
    };
    debug_assert!(spectrum.parseval_holds());
    Ok(spectrum)
}

/// In-place unnormalized Walsh-Hadamard butterfly.
pub fn butterfly(w: &mut [i32]) {
    let len = w.len();
    let mut h = 1;
    while h < len {
        for chunk in w.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Direct evaluation of one coefficient.
pub fn naive_walsh(f: &BooleanFunction, a: usize) -> i64 {
    let d = f.domain();
    (0..f.size())
        .map(|x| if f.get(x) ^ d.inner_product(a, x) { -1 } else { 1 })
        .sum()
}

impl WalshSpectrum {
    /// Wraps precomputed trace-indexed values.
    pub fn from_values(domain: Domain, values: Vec<i32>) -> Result<Self> {
        if values.len() != domain.size() {
            return Err(Error::InvalidParams(format!(
                "{} spectral values for {} variables",
                values.len(),
                domain.n_vars()
            )));
        }
        Ok(WalshSpectrum { domain, values })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn n_vars(&self) -> u32 {
        self.domain.n_vars()
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    #[inline]
    pub fn at(&self, a: usize) -> i32 {
        self.values[a]
    }

    pub fn parseval_holds(&self) -> bool {
        let total: u128 = self.values.iter().map(|&v| (v as i64 * v as i64) as u128).sum();
        total == 1u128 << (2 * self.n_vars())
    }

    pub fn distribution(&self) -> Distribution {
        let mut d = Distribution::new();
        for &v in &self.values {
            *d.entry(v).or_insert(0) += 1;
        }
        d
    }

    pub fn classify(&self) -> SpectrumClass {
        classify_values(self.n_vars(), self.distribution().keys().copied())
    }

    /// `f~(a) = 1` exactly where the coefficient is negative.
    pub fn dual_of_bent(&self) -> Result<BooleanFunction> {
        if self.classify().tag != ClassTag::Bent {
            return Err(Error::NotBent);
        }
        Ok(BooleanFunction::from_fn(self.domain.clone(), |a| self.values[a] < 0))
    }

    pub fn summary(&self) -> SpectrumSummary {
        SpectrumSummary {
            n: self.n_vars(),
            distribution: self.distribution(),
            class: self.classify().tag,
        }
    }

    /// Raw values as little-endian 32-bit integers.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        self.values.iter().flat_map(|v| v.to_le_bytes()).collect()
    }
}

/// `{"n": .., "distribution": {value: count}, "class": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub n: u32,
    pub distribution: Distribution,
    pub class: ClassTag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ClassTag {
    Bent,
    SemiBent,
    FiveValued,
    Plateaued(u32),
    Other,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::Bent => write!(f, "Bent"),
            ClassTag::SemiBent => write!(f, "SemiBent"),
            ClassTag::FiveValued => write!(f, "FiveValued"),
            ClassTag::Plateaued(a) => write!(f, "Plateaued({a})"),
            ClassTag::Other => write!(f, "Other"),
        }
    }
}

impl FromStr for ClassTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "Bent" => Ok(ClassTag::Bent),
            "SemiBent" => Ok(ClassTag::SemiBent),
            "FiveValued" => Ok(ClassTag::FiveValued),
            "Other" => Ok(ClassTag::Other),
            _ => s
                .strip_prefix("Plateaued(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|a| a.parse().ok())
                .map(ClassTag::Plateaued)
                .ok_or_else(|| format!("unknown class {s:?}")),
        }
    }
}

impl From<ClassTag> for String {
    fn from(t: ClassTag) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for ClassTag {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumClass {
    pub tag: ClassTag,
    /// Sorted distinct values.
    pub witness: Vec<i32>,
}

/// Semi-bent amplitude: `2^(n/2 + 1)` for even n, `2^((n+1)/2)` for odd n.
pub fn semibent_amplitude(n: u32) -> i64 {
    if n.is_multiple_of(2) {
        1 << (n / 2 + 1)
    } else {
        1 << n.div_ceil(2)
    }
}

/// Classifies by the set of distinct values alone.
pub fn classify_values(n: u32, values: impl IntoIterator<Item = i32>) -> SpectrumClass {
    let set: BTreeSet<i32> = values.into_iter().collect();
    let witness: Vec<i32> = set.iter().copied().collect();
    let tag = tag_of(n, &set);
    SpectrumClass { tag, witness }
}

fn tag_of(n: u32, set: &BTreeSet<i32>) -> ClassTag {
    let only = |allowed: &[i64]| set.iter().all(|v| allowed.contains(&(*v as i64)));
    let has_zero = set.contains(&0);
    let has_nonzero = set.iter().any(|&v| v != 0);
    if n.is_multiple_of(2) {
        let b = 1i64 << (n / 2);
        if only(&[b, -b]) {
            return ClassTag::Bent;
        }
        let five: BTreeSet<i32> = [0, b, -b, 2 * b, -2 * b].iter().map(|&v| v as i32).collect();
        if *set == five {
            return ClassTag::FiveValued;
        }
    }
    let a = semibent_amplitude(n);
    if has_zero && has_nonzero && only(&[0, a, -a]) {
        return ClassTag::SemiBent;
    }
    let amp = set.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    if amp.is_power_of_two()
        && set.len() == 3
        && set.contains(&0)
        && set.contains(&(amp as i32))
        && set.contains(&-(amp as i32))
    {
        return ClassTag::Plateaued(amp);
    }
    ClassTag::Other
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::{Elem, Field};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn field(n: u32) -> Arc<Field> {
        Arc::new(Field::standard(n).unwrap())
    }

    fn random_fn(domain: Domain, seed: u64) -> BooleanFunction {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let bits: Vec<bool> = (0..domain.size()).map(|_| rng.gen()).collect();
        BooleanFunction::from_bits(domain, &bits).unwrap()
    }

    #[test]
    fn zero_function_spectrum() {
        let d = Domain::Univariate(field(6));
        let s = fwht(&BooleanFunction::zero(d)).unwrap();
        assert_eq!(s.at(0), 64);
        assert!(s.values()[1..].iter().all(|&v| v == 0));
        let dist = s.distribution();
        assert_eq!(dist, Distribution::from([(0, 63), (64, 1)]));
        assert_eq!(s.classify().tag, ClassTag::Other);
    }

    #[test]
    fn linear_function_is_a_delta() {
        let f = field(7);
        let d = Domain::Univariate(f.clone());
        for c in [1usize, 5, 77, 127] {
            let s = fwht(&BooleanFunction::linear(d.clone(), c)).unwrap();
            for a in 0..128 {
                assert_eq!(s.at(a), if a == c { 128 } else { 0 });
            }
        }
    }

    #[test]
    fn kasami_closed_form() {
        for m in [3u32, 4] {
            let f = field(2 * m);
            let lam = f.gen_pow(((1u64 << (2 * m)) - 1) / ((1 << m) - 1));
            let g = BooleanFunction::from_trace_monomial(f.clone(), m, lam, (1 << m) + 1).unwrap();
            let s = fwht(&g).unwrap();
            let inv = f.inv(lam).unwrap();
            for a in f.elements() {
                let arg = f.mul(inv, f.pow(a, (1 << m) + 1));
                let sign = if f.subfield_trace_bit(m, arg).unwrap() { -1 } else { 1 };
                assert_eq!(s.at(a.index()), -(1 << m) * sign);
            }
            assert_eq!(s.classify().tag, ClassTag::Bent);
            assert_eq!(s.at(0), -(1 << m));
        }
    }

    #[test]
    fn fwht_matches_naive_bivariate() {
        let f = field(3);
        let g = BooleanFunction::from_fn_xy(f.clone(), |x, y| f.trace_bit(f.mul(x, f.square(y))) ^ f.trace_bit(y));
        let s = fwht(&g).unwrap();
        for a in 0..64 {
            assert_eq!(s.at(a) as i64, naive_walsh(&g, a));
        }
        assert_eq!(s.classify().tag, ClassTag::Bent);
    }

    #[test]
    fn classification_table() {
        assert_eq!(classify_values(8, [16, -16]).tag, ClassTag::Bent);
        assert_eq!(classify_values(8, [16]).tag, ClassTag::Bent);
        assert_eq!(classify_values(8, [0, 32, -32]).tag, ClassTag::SemiBent);
        assert_eq!(classify_values(8, [0, 32]).tag, ClassTag::SemiBent);
        assert_eq!(classify_values(8, [0, 16, -16, 32, -32]).tag, ClassTag::FiveValued);
        assert_eq!(classify_values(8, [0, 16, -16, 32]).tag, ClassTag::Other);
        assert_eq!(classify_values(8, [0, 16, -16]).tag, ClassTag::Plateaued(16));
        assert_eq!(classify_values(8, [0, 256]).tag, ClassTag::Other);
        assert_eq!(classify_values(7, [0, 16, -16]).tag, ClassTag::SemiBent);
        assert_eq!(classify_values(7, [8, -8]).tag, ClassTag::Other);
        assert_eq!(classify_values(8, [32, 0, -32]).witness, vec![-32, 0, 32]);
    }

    #[test]
    fn tag_strings_round_trip() {
        for t in [
            ClassTag::Bent,
            ClassTag::SemiBent,
            ClassTag::FiveValued,
            ClassTag::Plateaued(64),
            ClassTag::Other,
        ] {
            let json = serde_json::to_string(&t).unwrap();
            assert_eq!(serde_json::from_str::<ClassTag>(&json).unwrap(), t);
        }
        assert!("Plateaued(x)".parse::<ClassTag>().is_err());
    }

    #[test]
    fn summary_json_shape() {
        let d = Domain::Univariate(field(4));
        let s = fwht(&BooleanFunction::zero(d)).unwrap();
        let json = serde_json::to_value(s.summary()).unwrap();
        assert_eq!(json["n"], 4);
        assert_eq!(json["class"], "Other");
        assert_eq!(json["distribution"]["16"], 1);
        assert_eq!(json["distribution"]["0"], 15);
        assert_eq!(s.to_le_bytes().len(), 64);
        assert_eq!(&s.to_le_bytes()[..4], &16i32.to_le_bytes());
    }

    #[test]
    fn dual_requires_bent_and_is_an_involution() {
        let f = field(6);
        let d = Domain::Univariate(f.clone());
        assert_eq!(
            fwht(&BooleanFunction::zero(d)).unwrap().dual_of_bent(),
            Err(Error::NotBent)
        );
        let g = BooleanFunction::from_trace_monomial(f.clone(), 3, Elem::ONE, 9).unwrap();
        let s = fwht(&g).unwrap();
        let dual = s.dual_of_bent().unwrap();
        let s2 = fwht(&dual).unwrap();
        assert_eq!(s2.classify().tag, ClassTag::Bent);
        assert_eq!(s2.dual_of_bent().unwrap(), g);
    }

    #[test]
    fn too_large() {
        let f = Arc::new(Field::without_tables(13, 0x201b).unwrap());
        let g = BooleanFunction::zero(Domain::Bivariate(f));
        assert_eq!(fwht(&g), Err(Error::TooLarge(26)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn fwht_agrees_with_direct_sum(n in 2u32..=8, seed in any::<u64>()) {
            let g = random_fn(Domain::Univariate(field(n)), seed);
            let s = fwht(&g).unwrap();
            for a in 0..g.size() {
                prop_assert_eq!(s.at(a) as i64, naive_walsh(&g, a));
            }
        }

        #[test]
        fn spectral_identities(n in 2u32..=10, seed in any::<u64>()) {
            let g = random_fn(Domain::Univariate(field(n)), seed);
            let s = fwht(&g).unwrap();
            prop_assert!(s.parseval_holds());
            prop_assert_eq!(s.at(0) as i64, (1i64 << n) - 2 * g.weight() as i64);
            prop_assert_eq!(s.distribution().values().sum::<u64>(), 1u64 << n);
            if n % 2 == 1 {
                prop_assert_ne!(s.classify().tag, ClassTag::Bent);
            }
        }
    }
}
