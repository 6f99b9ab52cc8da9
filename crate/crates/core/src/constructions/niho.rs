//! Bent functions from Niho exponents and their cubic perturbations.

use std::sync::Arc;

use serde::Serialize;

use super::{elem_value, params, validate_triple, Construction, Prediction};
use crate::boolfun::BooleanFunction;
use crate::constructions::lemma1::lemma1_combine;
use crate::error::{Error, Result};
use crate::gf2n::{gcd_u64, mod_inverse, Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NihoParams {
    pub m: u32,
    pub k: u32,
    /// `(2^m - 1) s_i + 1` for `i = 1 .. 2^(k-1) - 1`.
    pub exponents: Vec<u64>,
    #[serde(skip)]
    pub alpha: Elem,
    /// Inverse of `2^k - 1` modulo `2^m - 1`.
    pub dual_exponent: u64,
}

/// Exponents `(2^m - 1) s_i + 1` with `s_i = i / 2^k` in Z/(2^m + 1).
pub fn niho_exponents(m: u32, k: u32) -> Result<Vec<u64>> {
    if k == 0 || gcd_u64(k as u64, m as u64) != 1 {
        return Err(Error::GcdViolation { k, m });
    }
    let modulus = (1u64 << m) + 1;
    let inv = mod_inverse((1u64 << k) % modulus, modulus).expect("2^k is a unit mod 2^m + 1");
    Ok((1..(1u64 << (k - 1)))
        .map(|i| ((1u64 << m) - 1) * (i * inv % modulus) + 1)
        .collect())
}

pub fn niho_params(field: &Field, k: u32) -> Result<NihoParams> {
    let n = field.n();
    if !n.is_multiple_of(2) {
        return Err(Error::BadFieldDegree(format!("need n = 2m, got n = {n}")));
    }
    let m = n / 2;
    let exponents = niho_exponents(m, k)?;
    let alpha = find_alpha(field, m).ok_or(Error::NoAlphaFound)?;
    let group = (1u64 << m) - 1;
    let dual_exponent = if group == 1 {
        0
    } else {
        mod_inverse(((1u64 << k) - 1) % group, group).ok_or(Error::GcdViolation { k, m })?
    };
    Ok(NihoParams {
        m,
        k,
        exponents,
        alpha,
        dual_exponent,
    })
}

/// First `alpha` in generator-power order with `alpha + alpha^(2^m) = 1`.
pub fn find_alpha(field: &Field, m: u32) -> Option<Elem> {
    all_alphas(field, m).next()
}

pub fn all_alphas(field: &Field, m: u32) -> impl Iterator<Item = Elem> + '_ {
    (0..field.group_order())
        .map(|j| field.gen_pow(j))
        .filter(move |&a| a + field.frobenius(a, m) == Elem::ONE)
}

/// `g = Tr_1^m(x^(2^m+1)) + sum_i Tr(x^(e_i))`.
pub fn niho_bent(field: &Arc<Field>, p: &NihoParams) -> Result<BooleanFunction> {
    let m = p.m;
    let mut g = BooleanFunction::from_trace_monomial(field.clone(), m, Elem::ONE, (1 << m) + 1)?;
    for &e in &p.exponents {
        let t = BooleanFunction::from_trace_monomial(field.clone(), field.n(), Elem::ONE, e)?;
        g = g.xor(&t)?;
    }
    Ok(g)
}

/// Dual of `niho_bent` at `a` in the closed form
/// `Tr_1^m((alpha A + alpha^(2^(n-k)) + a^(2^m)) A^(1/(2^k-1)))`, `A = 1 + a + a^(2^m)`.
pub fn niho_dual(field: &Field, p: &NihoParams, a: Elem) -> Result<bool> {
    niho_dual_with_alpha(field, p, p.alpha, a)
}

pub fn niho_dual_with_alpha(field: &Field, p: &NihoParams, alpha: Elem, a: Elem) -> Result<bool> {
    let (m, n) = (p.m, field.n());
    let am = field.frobenius(a, m);
    let big_a = Elem::ONE + a + am;
    let root = if big_a.is_zero() {
        Elem::ZERO
    } else {
        field.pow(big_a, p.dual_exponent)
    };
    let inner = field.mul(alpha, big_a) + field.frobenius(alpha, n - p.k % n) + am;
    field.subfield_trace_bit(m, field.mul(inner, root))
}

/// `f = niho_bent + Tr(ux) Tr(vx) Tr(rx)` with `u, v, r` in GF(2^m)*.
pub fn niho_triple(field: &Arc<Field>, k: u32, u: Elem, v: Elem, r: Elem) -> Result<Construction> {
    let p = niho_params(field, k)?;
    for (name, x) in [("u", u), ("v", v), ("r", r)] {
        if x.is_zero() {
            return Err(Error::ZeroParameter(name));
        }
        if !field.in_subfield(p.m, x) {
            return Err(Error::NotInSubfield(name));
        }
    }
    validate_triple(u.index(), v.index(), r.index())?;
    let g = niho_bent(field, &p)?;
    let function = lemma1_combine(&g, u.index(), v.index(), r.index())?;
    let mut ps = params([
        ("k", k.into()),
        ("u", elem_value(field, u)),
        ("v", elem_value(field, v)),
        ("r", elem_value(field, r)),
    ]);
    ps.insert("exponents".into(), serde_json::json!(p.exponents));
    Ok(Construction {
        name: "niho-triple",
        params: ps,
        conditions: Vec::new(),
        predicted: Prediction::bent(),
        function,
        diagnostics: Default::default(),
    })
}
