//! The Kasami bent function `Tr_1^m(lambda x^(2^m+1))` on GF(2^(2m)) and its
//! cubic and quadratic perturbations.

use std::sync::Arc;

use super::{elem_value, params, predict_double, predict_triple, validate_triple, Construction};
use crate::boolfun::{cubic_witness, BooleanFunction};
use crate::constructions::lemma1::{double_combine, lemma1_combine};
use crate::error::{Error, Result};
use crate::gf2n::{Elem, Field};

fn half_degree(field: &Field) -> Result<u32> {
    let n = field.n();
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::BadFieldDegree(format!("need n = 2m with m >= 2, got n = {n}")));
    }
    Ok(n / 2)
}

fn check_lambda(field: &Field, lambda: Elem) -> Result<u32> {
    let m = half_degree(field)?;
    if lambda.is_zero() || !field.in_subfield(m, lambda) {
        return Err(Error::LambdaNotInSubfield);
    }
    Ok(m)
}

/// `g(x) = Tr_1^m(lambda x^(2^m+1))` with `lambda` in GF(2^m)*.
pub fn kasami(field: &Arc<Field>, lambda: Elem) -> Result<BooleanFunction> {
    let m = check_lambda(field, lambda)?;
    BooleanFunction::from_trace_monomial(field.clone(), m, lambda, (1 << m) + 1)
}

/// Closed-form spectrum `-2^m (-1)^(Tr_1^m(lambda^-1 a^(2^m+1)))`.
pub fn kasami_walsh(field: &Field, lambda: Elem, a: Elem) -> Result<i32> {
    let m = check_lambda(field, lambda)?;
    let arg = field.mul(field.inv(lambda)?, field.pow(a, (1 << m) + 1));
    let neg = field.subfield_trace_bit(m, arg)?;
    Ok(if neg { 1 << m } else { -(1 << m) })
}

/// Dual of the Kasami function: `Tr_1^m(lambda^-1 a^(2^m+1)) + 1`.
pub fn kasami_dual(field: &Field, lambda: Elem, a: Elem) -> Result<bool> {
    Ok(kasami_walsh(field, lambda, a)? < 0)
}

/// `Tr_1^n(lambda^-1 x^(2^m) y)`.
fn pair_bit(field: &Field, lambda_inv: Elem, m: u32, x: Elem, y: Elem) -> u8 {
    field.trace_bit(field.mul(lambda_inv, field.mul(field.frobenius(x, m), y))) as u8
}

/// `(t1, t2, t3)` built from `(r, v)`, `(r, u)` and `(u, v)`.
pub fn thm1_conditions(field: &Field, lambda: Elem, u: Elem, v: Elem, r: Elem) -> Result<[u8; 3]> {
    let m = check_lambda(field, lambda)?;
    validate_triple(u.index(), v.index(), r.index())?;
    let li = field.inv(lambda)?;
    Ok([
        pair_bit(field, li, m, r, v),
        pair_bit(field, li, m, r, u),
        pair_bit(field, li, m, u, v),
    ])
}

/// The same three traces with the `lambda^-1` factor left out.
pub fn thm1_conditions_without_lambda(field: &Field, u: Elem, v: Elem, r: Elem) -> Result<[u8; 3]> {
    let m = half_degree(field)?;
    Ok([
        pair_bit(field, Elem::ONE, m, r, v),
        pair_bit(field, Elem::ONE, m, r, u),
        pair_bit(field, Elem::ONE, m, u, v),
    ])
}

/// `f = Tr_1^m(lambda x^(2^m+1)) + Tr(ux) Tr(vx) Tr(rx)`.
pub fn kasami_triple(field: &Arc<Field>, lambda: Elem, u: Elem, v: Elem, r: Elem) -> Result<Construction> {
    let conditions = thm1_conditions(field, lambda, u, v, r)?;
    let g = kasami(field, lambda)?;
    let function = lemma1_combine(&g, u.index(), v.index(), r.index())?;
    let mut diagnostics = serde_json::Map::new();
    let plain = thm1_conditions_without_lambda(field, u, v, r)?;
    if plain != conditions {
        diagnostics.insert("conditions_without_lambda_inverse".into(), serde_json::json!(plain));
    }
    if let Some((i, j, k)) = cubic_witness(field, u, v, r) {
        diagnostics.insert("cubic_witness".into(), serde_json::json!([i, j, k]));
    }
    Ok(Construction {
        name: "kasami-triple",
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

/// Condition bit and balance flag of the two-factor Kasami construction.
///
/// `u^(2^m+1)` lies in GF(2^m), so the balance test uses `Tr_1^m` there.
pub fn thm2_conditions(field: &Field, lambda: Elem, u: Elem, v: Elem) -> Result<(u8, bool)> {
    let m = check_lambda(field, lambda)?;
    check_pair(u, v)?;
    let li = field.inv(lambda)?;
    let bit = pair_bit(field, li, m, u, v);
    let norm_bit = |x: Elem| {
        field
            .subfield_trace_bit(m, field.mul(li, field.pow(x, (1 << m) + 1)))
            .expect("norm lies in the subfield")
    };
    let balanced = bit == 1 && (norm_bit(u) || norm_bit(v));
    Ok((bit, balanced))
}

pub(crate) fn check_pair(u: Elem, v: Elem) -> Result<()> {
    if u.is_zero() {
        return Err(Error::ZeroParameter("u"));
    }
    if v.is_zero() {
        return Err(Error::ZeroParameter("v"));
    }
    if u == v {
        return Err(Error::InvalidParams("u and v must be distinct".into()));
    }
    Ok(())
}

/// `f = Tr_1^m(lambda x^(2^m+1)) + Tr(ux) Tr(vx)`.
pub fn kasami_double(field: &Arc<Field>, lambda: Elem, u: Elem, v: Elem) -> Result<Construction> {
    let (bit, balanced) = thm2_conditions(field, lambda, u, v)?;
    let g = kasami(field, lambda)?;
    let function = double_combine(&g, u.index(), v.index())?;
    Ok(Construction {
        name: "kasami-double",
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

/// Number of `(u, v)` in `(GF(2^n)*)^2` whose condition bit is 1.
pub fn semibent_pair_count(field: &Field, lambda: Elem) -> Result<u64> {
    let m = check_lambda(field, lambda)?;
    let li = field.inv(lambda)?;
    let mut count = 0u64;
    for u in field.nonzero_elements() {
        let lu = field.mul(li, field.frobenius(u, m));
        for v in field.nonzero_elements() {
            count += field.trace_bit(field.mul(lu, v)) as u64;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walsh::{fwht, ClassTag};

    fn f(n: u32) -> Arc<Field> {
        Arc::new(Field::standard(n).unwrap())
    }

    #[test]
    fn lambda_checks() {
        let f8 = f(8);
        assert_eq!(kasami(&f8, Elem::ZERO), Err(Error::LambdaNotInSubfield));
        assert_eq!(kasami(&f8, f8.gen_pow(1)), Err(Error::LambdaNotInSubfield));
        assert!(kasami(&f8, f8.gen_pow(17)).is_ok());
        assert!(matches!(kasami(&f(7), Elem::ONE), Err(Error::BadFieldDegree(_))));
    }

    #[test]
    fn closed_form_spectrum_and_dual() {
        for n in [6u32, 8] {
            let fld = f(n);
            let m = n / 2;
            for lam in fld.subfield_elements(m).unwrap().into_iter().skip(1) {
                let g = kasami(&fld, lam).unwrap();
                let s = fwht(&g).unwrap();
                assert_eq!(s.classify().tag, ClassTag::Bent);
                assert_eq!(s.at(0), -(1 << m));
                let dual = s.dual_of_bent().unwrap();
                for a in fld.elements() {
                    assert_eq!(s.at(a.index()), kasami_walsh(&fld, lam, a).unwrap());
                    assert_eq!(dual.get(a.index()), kasami_dual(&fld, lam, a).unwrap());
                }
                assert_eq!(g.algebraic_degree(), 2);
            }
        }
    }

    #[test]
    fn example_one() {
        let fld = f(6);
        let (u, v, r) = (fld.gen_pow(1), fld.gen_pow(9), fld.gen_pow(27));
        let c = kasami_triple(&fld, Elem::ONE, u, v, r).unwrap();
        assert_eq!(c.conditions, vec![0, 0, 0]);
        let rep = c.report().unwrap();
        assert!(rep.matches);
        assert_eq!(rep.measured.class, ClassTag::Bent);
        assert_eq!(rep.degree, 3);
    }

    #[test]
    fn example_two_conditions() {
        let fld = f(8);
        let (lam, u, v, r) = (fld.gen_pow(17), fld.gen_pow(10), fld.gen_pow(9), fld.gen_pow(3));
        assert_eq!(thm1_conditions(&fld, lam, u, v, r).unwrap(), [1, 0, 0]);
        assert_eq!(thm1_conditions_without_lambda(&fld, u, v, r).unwrap(), [1, 1, 1]);
        let rep = kasami_triple(&fld, lam, u, v, r).unwrap().report().unwrap();
        assert!(rep.matches);
        assert!(rep.diagnostics.contains_key("conditions_without_lambda_inverse"));
    }

    #[test]
    fn subfield_triples_are_bent() {
        let fld = f(8);
        let sub: Vec<Elem> = fld.subfield_elements(4).unwrap().into_iter().skip(1).collect();
        let (u, v, r) = (sub[1], sub[4], sub[9]);
        assert_eq!(thm1_conditions(&fld, Elem::ONE, u, v, r).unwrap(), [0, 0, 0]);
    }

    #[test]
    fn double_construction() {
        let fld = f(6);
        let lam = Elem::ONE;
        let mut seen = [false; 2];
        for (u, v) in [(1u64, 2u64), (1, 5), (3, 40), (7, 9), (10, 33), (20, 21)] {
            let (u, v) = (fld.gen_pow(u), fld.gen_pow(v));
            let rep = kasami_double(&fld, lam, u, v).unwrap().report().unwrap();
            assert!(rep.matches, "{rep:?}");
            seen[rep.conditions[0] as usize] = true;
        }
        assert_eq!(seen, [true, true]);
        assert!(matches!(
            kasami_double(&fld, lam, Elem::ONE, Elem::ONE),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn semibent_pair_counts() {
        let fld = f(6);
        assert_eq!(semibent_pair_count(&fld, Elem::ONE).unwrap(), 2016);
        let f4 = f(4);
        assert_eq!(semibent_pair_count(&f4, Elem::ONE).unwrap(), 8 * 15);
    }
}
