//! Gold-like functions `Tr(lambda x^(2^k+1))` on GF(2^(4k)) with
//! `lambda + lambda^(2^(3k)) = 1`.

use std::sync::Arc;

use super::{elem_value, params, predict_double, predict_triple, validate_triple, Construction};
use crate::boolfun::{cubic_witness, BooleanFunction};
use crate::constructions::lemma1::{double_combine, lemma1_combine};
use crate::error::{Error, Result};
use crate::gf2n::{Elem, Field};

/// `k = n / 4`, requiring `k >= 2`.
pub fn gold_k(field: &Field) -> Result<u32> {
    let n = field.n();
    if !n.is_multiple_of(4) || n < 8 {
        return Err(Error::BadFieldDegree(format!("need n = 4k with k >= 2, got n = {n}")));
    }
    Ok(n / 4)
}

pub fn gold_lambda_valid(field: &Field, lambda: Elem) -> Result<bool> {
    let k = gold_k(field)?;
    Ok(!lambda.is_zero() && lambda + field.frobenius(lambda, 3 * k) == Elem::ONE)
}

/// All valid `lambda`, in generator-power order.
pub fn gold_valid_lambdas(field: &Field) -> Result<Vec<Elem>> {
    gold_k(field)?;
    let mut out = Vec::new();
    for j in 0..field.group_order() {
        let lam = field.gen_pow(j);
        if gold_lambda_valid(field, lam)? {
            out.push(lam);
        }
    }
    Ok(out)
}

/// `l(x) = lambda x + lambda^(2^k) x^(2^(2k))` as a table.
pub fn gold_linear_table(field: &Field, lambda: Elem) -> Result<Vec<u32>> {
    let k = gold_k(field)?;
    let lk = field.frobenius(lambda, k);
    Ok(field
        .elements()
        .map(|x| (field.mul(lambda, x) + field.mul(lk, field.frobenius(x, 2 * k))).bits())
        .collect())
}

pub fn lemma2_is_permutation(field: &Field, lambda: Elem) -> Result<bool> {
    let table = gold_linear_table(field, lambda)?;
    let mut seen = vec![false; table.len()];
    for y in table {
        if std::mem::replace(&mut seen[y as usize], true) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn checked_k(field: &Field, lambda: Elem) -> Result<u32> {
    let k = gold_k(field)?;
    if !gold_lambda_valid(field, lambda)? {
        return Err(Error::InvalidLambda);
    }
    Ok(k)
}

/// `g(x) = Tr(lambda x^(2^k+1))`.
pub fn gold(field: &Arc<Field>, lambda: Elem) -> Result<BooleanFunction> {
    let k = checked_k(field, lambda)?;
    BooleanFunction::from_trace_monomial(field.clone(), field.n(), lambda, (1 << k) + 1)
}

/// Closed-form spectrum `2^(2k) (-1)^(Tr(lambda a^(2^k+1)))`.
pub fn gold_walsh(field: &Field, lambda: Elem, a: Elem) -> Result<i32> {
    let k = checked_k(field, lambda)?;
    let bit = field.trace_bit(field.mul(lambda, field.pow(a, (1 << k) + 1)));
    Ok(if bit { -(1 << (2 * k)) } else { 1 << (2 * k) })
}

/// `Tr(lambda (x^(2^k) y + x y^(2^k)))`.
fn pair_bit(field: &Field, lambda: Elem, k: u32, x: Elem, y: Elem) -> u8 {
    let s = field.mul(field.frobenius(x, k), y) + field.mul(x, field.frobenius(y, k));
    field.trace_bit(field.mul(lambda, s)) as u8
}

pub fn thm3_conditions(field: &Field, lambda: Elem, u: Elem, v: Elem, r: Elem) -> Result<[u8; 3]> {
    let k = checked_k(field, lambda)?;
    validate_triple(u.index(), v.index(), r.index())?;
    Ok([
        pair_bit(field, lambda, k, r, v),
        pair_bit(field, lambda, k, r, u),
        pair_bit(field, lambda, k, u, v),
    ])
}

/// `f = Tr(lambda x^(2^k+1)) + Tr(ux) Tr(vx) Tr(rx)`.
pub fn gold_triple(field: &Arc<Field>, lambda: Elem, u: Elem, v: Elem, r: Elem) -> Result<Construction> {
    let conditions = thm3_conditions(field, lambda, u, v, r)?;
    let g = gold(field, lambda)?;
    let function = lemma1_combine(&g, u.index(), v.index(), r.index())?;
    let mut diagnostics = serde_json::Map::new();
    if let Some((i, j, k)) = cubic_witness(field, u, v, r) {
        diagnostics.insert("cubic_witness".into(), serde_json::json!([i, j, k]));
    }
    Ok(Construction {
        name: "gold-triple",
        params: params([
            ("lambda", elem_value(field, lambda)),
            ("u", elem_value(field, u)),
            ("v", elem_value(field, v)),
            ("r", elem_value(field, r)),
        ]),
        conditions: conditions.to_vec(),
        predicted: predict_triple(field.n(), conditions),
        function,
        diagnostics,
    })
}

pub fn thm4_conditions(field: &Field, lambda: Elem, u: Elem, v: Elem) -> Result<(u8, bool)> {
    let k = checked_k(field, lambda)?;
    super::kasami::check_pair(u, v)?;
    let bit = pair_bit(field, lambda, k, u, v);
    let norm = |x: Elem| field.trace_bit(field.mul(lambda, field.pow(x, (1 << k) + 1)));
    Ok((bit, bit == 1 && (norm(u) || norm(v))))
}

/// `f = Tr(lambda x^(2^k+1)) + Tr(ux) Tr(vx)`.
pub fn gold_double(field: &Arc<Field>, lambda: Elem, u: Elem, v: Elem) -> Result<Construction> {
    let (bit, balanced) = thm4_conditions(field, lambda, u, v)?;
    let g = gold(field, lambda)?;
    let function = double_combine(&g, u.index(), v.index())?;
    Ok(Construction {
        name: "gold-double",
        params: params([
            ("lambda", elem_value(field, lambda)),
            ("u", elem_value(field, u)),
            ("v", elem_value(field, v)),
        ]),
        conditions: vec![bit],
        predicted: predict_double(bit, balanced),
        function,
        diagnostics: Default::default(),
    })
}
