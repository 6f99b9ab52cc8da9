//! Adding a product of three linear functions to an arbitrary function.

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::walsh::WalshSpectrum;

/// `f = g + Tr(ux) Tr(vx) Tr(rx)`; points are packed indices of `g`'s domain.
pub fn lemma1_combine(g: &BooleanFunction, u: usize, v: usize, r: usize) -> Result<BooleanFunction> {
    for (name, x) in [("u", u), ("v", v), ("r", r)] {
        if x == 0 {
            return Err(Error::ZeroParameter(name));
        }
    }
    let d = g.domain().clone();
    let prod = BooleanFunction::linear(d.clone(), u)
        .and(&BooleanFunction::linear(d.clone(), v))?
        .and(&BooleanFunction::linear(d, r))?;
    g.xor(&prod)
}

/// `f = g + Tr(ux) Tr(vx)`.
pub fn double_combine(g: &BooleanFunction, u: usize, v: usize) -> Result<BooleanFunction> {
    for (name, x) in [("u", u), ("v", v)] {
        if x == 0 {
            return Err(Error::ZeroParameter(name));
        }
    }
    let d = g.domain().clone();
    let prod = BooleanFunction::linear(d.clone(), u).and(&BooleanFunction::linear(d, v))?;
    g.xor(&prod)
}

/// Spectrum of `lemma1_combine(g, u, v, r)` at `a`, from the spectrum of `g` alone.
pub fn lemma1_predicted_walsh(g: &WalshSpectrum, u: usize, v: usize, r: usize, a: usize) -> Result<i32> {
    let w = |x: usize| g.at(x) as i64;
    let (num, den) = if r == v {
        (w(a) + w(a ^ u) + w(a ^ v) - w(a ^ u ^ v), 2)
    } else {
        (
            3 * w(a) + w(a ^ v) + w(a ^ u) - w(a ^ u ^ v) + w(a ^ r) - w(a ^ r ^ v) - w(a ^ r ^ u) + w(a ^ r ^ u ^ v),
            4,
        )
    };
    if num % den != 0 {
        return Err(Error::NonIntegralResult { point: a });
    }
    Ok((num / den) as i32)
}
