//! Maiorana-McFarland functions `Tr(x pi(y)) + h(y)` on GF(2^m) x GF(2^m).

use std::sync::Arc;

use serde_json::Value;

use super::{params, predict_double, predict_triple, validate_triple, Construction};
use crate::boolfun::{BooleanFunction, Domain};
use crate::constructions::lemma1::{double_combine, lemma1_combine};
use crate::error::{Error, Result};
use crate::gf2n::{gcd_u64, mod_inverse, Elem, Field};

/// A permutation of GF(2^m) with its inverse, both as tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl Permutation {
    pub fn from_table(table: Vec<u32>) -> Result<Self> {
        let len = table.len();
        if !len.is_power_of_two() {
            return Err(Error::NotAPermutation);
        }
        let mut inverse = vec![u32::MAX; len];
        for (x, &y) in table.iter().enumerate() {
            let slot = inverse.get_mut(y as usize).ok_or(Error::NotAPermutation)?;
            if *slot != u32::MAX {
                return Err(Error::NotAPermutation);
            }
            *slot = x as u32;
        }
        Ok(Permutation { table, inverse })
    }

    pub fn identity(field: &Field) -> Self {
        Self::frobenius(field, 0)
    }

    /// `y -> y^(2^j)`.
    pub fn frobenius(field: &Field, j: u32) -> Self {
        Self::from_table(field.elements().map(|y| field.frobenius(y, j).bits()).collect())
            .expect("Frobenius is bijective")
    }

    /// `y -> y^d`, which must be bijective.
    pub fn monomial(field: &Field, d: u64) -> Result<Self> {
        Self::from_table(field.elements().map(|y| field.pow(y, d).bits()).collect())
    }

    #[inline]
    pub fn apply(&self, y: Elem) -> Elem {
        Elem(self.table[y.index()])
    }

    #[inline]
    pub fn apply_inverse(&self, y: Elem) -> Elem {
        Elem(self.inverse[y.index()])
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// `pi(a + b) = pi(a) + pi(b)` for all `a, b`.
    pub fn is_additive(&self) -> bool {
        let len = self.table.len();
        if self.table[0] != 0 {
            return false;
        }
        (1..len).all(|x| {
            let low = x & x.wrapping_neg();
            self.table[x] == self.table[x ^ low] ^ self.table[low]
        })
    }
}

/// `g(x, y) = Tr(x pi(y)) + h(y)`; `h` defaults to zero.
pub fn mm_construct(field: &Arc<Field>, pi: &Permutation, h: Option<&BooleanFunction>) -> Result<BooleanFunction> {
    if pi.table.len() != field.size() {
        return Err(Error::NotAPermutation);
    }
    if let Some(h) = h {
        if h.domain() != &Domain::Univariate(field.clone()) {
            return Err(Error::ShapeMismatch {
                left: field.n(),
                right: h.n_vars(),
            });
        }
    }
    let f = field.clone();
    Ok(BooleanFunction::from_fn_xy(field.clone(), move |x, y| {
        f.trace_bit(f.mul(x, pi.apply(y))) ^ h.is_some_and(|h| h.get(y.index()))
    }))
}

/// Closed-form dual at `(a1, a2)`: `Tr(a2 pi^-1(a1)) + h(pi^-1(a1))`.
pub fn mm_dual(field: &Field, pi: &Permutation, h: Option<&BooleanFunction>, a1: Elem, a2: Elem) -> bool {
    let y = pi.apply_inverse(a1);
    field.trace_bit(field.mul(a2, y)) ^ h.is_some_and(|h| h.get(y.index()))
}

/// `T(A, B) = Tr(A2 pi^-1(B1) + B2 pi^-1(A1))` on packed pairs.
fn pair_bit(d: &Domain, pi: &Permutation, a: usize, b: usize) -> u8 {
    let f = d.field();
    let (a1, a2) = d.unpack(a);
    let (b1, b2) = d.unpack(b);
    let s = f.mul(a2, pi.apply_inverse(b1)) + f.mul(b2, pi.apply_inverse(a1));
    f.trace_bit(s) as u8
}

fn require_linearized(pi: &Permutation) -> Result<()> {
    if !pi.is_additive() {
        return Err(Error::NotLinearized);
    }
    Ok(())
}

pub fn thm6_conditions(field: &Arc<Field>, pi: &Permutation, u: usize, v: usize, r: usize) -> Result<[u8; 3]> {
    require_linearized(pi)?;
    validate_triple(u, v, r)?;
    let d = Domain::Bivariate(field.clone());
    Ok([pair_bit(&d, pi, r, v), pair_bit(&d, pi, r, u), pair_bit(&d, pi, u, v)])
}

pub fn thm7_condition(field: &Arc<Field>, pi: &Permutation, u: usize, v: usize) -> Result<u8> {
    require_linearized(pi)?;
    check_pair(u, v)?;
    Ok(pair_bit(&Domain::Bivariate(field.clone()), pi, u, v))
}

fn check_pair(u: usize, v: usize) -> Result<()> {
    if u == 0 {
        return Err(Error::ZeroParameter("u"));
    }
    if v == 0 {
        return Err(Error::ZeroParameter("v"));
    }
    if u == v {
        return Err(Error::InvalidPair("u and v must be distinct".into()));
    }
    Ok(())
}

fn trace_h(field: &Arc<Field>) -> BooleanFunction {
    BooleanFunction::linear(Domain::Univariate(field.clone()), 1)
}

fn pair_value(field: &Field, d: &Domain, p: usize) -> Value {
    let (a, b) = d.unpack(p);
    serde_json::json!([field.format_elem(a), field.format_elem(b)])
}

/// `Tr(x pi(y)) + Tr(y) + <u,.> <v,.> <r,.>` for a linearized `pi = y^(2^j)`.
pub fn mm_linearized_triple(field: &Arc<Field>, j: u32, u: usize, v: usize, r: usize) -> Result<Construction> {
    let pi = Permutation::frobenius(field, j);
    let conditions = thm6_conditions(field, &pi, u, v, r)?;
    let g = mm_construct(field, &pi, Some(&trace_h(field)))?;
    let function = lemma1_combine(&g, u, v, r)?;
    let d = function.domain().clone();
    Ok(Construction {
        name: "mm-linearized-triple",
        params: params([
            ("k", j.into()),
            ("u", pair_value(field, &d, u)),
            ("v", pair_value(field, &d, v)),
            ("r", pair_value(field, &d, r)),
        ]),
        conditions: conditions.to_vec(),
        predicted: predict_triple(d.n_vars(), conditions),
        function,
        diagnostics: Default::default(),
    })
}

/// `Tr(x pi(y)) + Tr(y) + <u,.> <v,.>` for a linearized `pi = y^(2^j)`.
pub fn mm_linearized_double(field: &Arc<Field>, j: u32, u: usize, v: usize) -> Result<Construction> {
    let pi = Permutation::frobenius(field, j);
    let bit = thm7_condition(field, &pi, u, v)?;
    let g = mm_construct(field, &pi, Some(&trace_h(field)))?;
    let function = double_combine(&g, u, v)?;
    let d = function.domain().clone();
    let mut predicted = predict_double(bit, false);
    if bit == 1 {
        predicted.balanced = None;
    }
    Ok(Construction {
        name: "mm-linearized-double",
        params: params([
            ("k", j.into()),
            ("u", pair_value(field, &d, u)),
            ("v", pair_value(field, &d, v)),
        ]),
        conditions: vec![bit],
        predicted,
        function,
        diagnostics: Default::default(),
    })
}

/// `d` with `d (2^s + 1) = 1 mod 2^m - 1`, for `s | m` and `m / s` odd.
pub fn thm8_exponent(m: u32, s: u32) -> Result<u64> {
    if s == 0 || !m.is_multiple_of(s) || (m / s).is_multiple_of(2) {
        return Err(Error::BadDivisor { s, m });
    }
    let group = (1u64 << m) - 1;
    let e = (1u64 << s) + 1;
    if gcd_u64(e, group) != 1 {
        return Err(Error::NoDInverse { s, m });
    }
    mod_inverse(e % group, group).ok_or(Error::NoDInverse { s, m })
}

pub fn thm8_condition(field: &Arc<Field>, s: u32, u: usize, v: usize) -> Result<u8> {
    let m = field.n();
    thm8_exponent(m, s)?;
    check_pair(u, v)?;
    let d = Domain::Bivariate(field.clone());
    let ((u1, u2), (v1, v2)) = (d.unpack(u), d.unpack(v));
    for (name, a, b) in [("u", u1, u2), ("v", v1, v2)] {
        if !field.in_subfield(s, a) || !field.in_subfield(s, b) {
            return Err(Error::NotInSubfieldPair(name));
        }
    }
    if !(field.mul(u1, v2) + field.mul(v1, u2)).is_zero() {
        return Err(Error::CrossConditionViolated);
    }
    let t = field.mul(field.square(u1), v2) + field.mul(u2, field.square(v1));
    Ok(field.trace_bit(t) as u8)
}

/// `Tr(x y^d) + <u,.> <v,.>`.
pub fn mm_niho_power(field: &Arc<Field>, s: u32, u: usize, v: usize) -> Result<Construction> {
    let bit = thm8_condition(field, s, u, v)?;
    let d = thm8_exponent(field.n(), s)?;
    let pi = Permutation::monomial(field, d)?;
    let g = mm_construct(field, &pi, None)?;
    let function = double_combine(&g, u, v)?;
    let dom = function.domain().clone();
    let mut predicted = predict_double(bit, false);
    if bit == 1 {
        predicted.balanced = None;
    }
    Ok(Construction {
        name: "mm-niho-power",
        params: params([
            ("s", s.into()),
            ("d", d.into()),
            ("u", pair_value(field, &dom, u)),
            ("v", pair_value(field, &dom, v)),
        ]),
        conditions: vec![bit],
        predicted,
        function,
        diagnostics: Default::default(),
    })
}
