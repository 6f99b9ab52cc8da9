//! Truth-table Boolean functions over GF(2^n) and GF(2^m) x GF(2^m).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2n::{Elem, Field};

/// Where a function lives: the field itself, or pairs over a field.
///
/// Bivariate points `(x, y)` are packed as `x + 2^m y`, so addition of
/// pairs is XOR of packed indices just as in the univariate case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Univariate(Arc<Field>),
    Bivariate(Arc<Field>),
}

impl Domain {
    pub fn field(&self) -> &Arc<Field> {
        match self {
            Domain::Univariate(f) | Domain::Bivariate(f) => f,
        }
    }

    pub fn n_vars(&self) -> u32 {
        match self {
            Domain::Univariate(f) => f.n(),
            Domain::Bivariate(f) => 2 * f.n(),
        }
    }

    pub fn size(&self) -> usize {
        1usize << self.n_vars()
    }

    pub fn is_bivariate(&self) -> bool {
        matches!(self, Domain::Bivariate(_))
    }

    #[inline]
    pub fn pack(&self, x: Elem, y: Elem) -> usize {
        x.index() | (y.index() << self.field().n())
    }

    #[inline]
    pub fn unpack(&self, idx: usize) -> (Elem, Elem) {
        let m = self.field().n();
        (Elem((idx & ((1 << m) - 1)) as u32), Elem((idx >> m) as u32))
    }

    /// The scalar product `Tr(a x)` (or `Tr(a1 x1) + Tr(a2 x2)` on pairs).
    pub fn inner_product(&self, a: usize, x: usize) -> bool {
        match self {
            Domain::Univariate(f) => f.trace_bit(f.mul(Elem(a as u32), Elem(x as u32))),
            Domain::Bivariate(f) => {
                let (a1, a2) = self.unpack(a);
                let (x1, x2) = self.unpack(x);
                f.trace_bit(f.mul(a1, x1)) ^ f.trace_bit(f.mul(a2, x2))
            }
        }
    }

    /// Table sending a point `a` to the bit vector `b` with `b . x = <a, x>`.
    pub fn dual_index_table(&self) -> Vec<u32> {
        let field = self.field();
        let tau = field.trace_dual_map().to_table();
        match self {
            Domain::Univariate(_) => tau,
            Domain::Bivariate(_) => {
                let m = field.n();
                (0..self.size())
                    .map(|idx| {
                        let (a1, a2) = self.unpack(idx);
                        tau[a1.index()] | (tau[a2.index()] << m)
                    })
                    .collect()
            }
        }
    }
}

fn word_count(n_vars: u32) -> usize {
    if n_vars >= 6 {
        1 << (n_vars - 6)
    } else {
        1
    }
}

fn tail_mask(n_vars: u32) -> u64 {
    if n_vars >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n_vars)) - 1
    }
}

/// A Boolean function stored as a packed truth table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanFunction {
    domain: Domain,
    words: Vec<u64>,
}

impl BooleanFunction {
    pub fn zero(domain: Domain) -> Self {
        let words = vec![0; word_count(domain.n_vars())];
        BooleanFunction { domain, words }
    }

    pub fn constant(domain: Domain, bit: bool) -> Self {
        let mut f = Self::zero(domain);
        if bit {
            let mask = tail_mask(f.n_vars());
            f.words.iter_mut().for_each(|w| *w = mask);
        }
        f
    }

    /// Builds the table from a predicate on packed indices.
    pub fn from_fn(domain: Domain, pred: impl Fn(usize) -> bool) -> Self {
        let mut f = Self::zero(domain);
        let size = f.size();
        for (wi, word) in f.words.iter_mut().enumerate() {
            let base = wi << 6;
            let mut w = 0u64;
            for bit in 0..64.min(size) {
                if pred(base + bit) {
                    w |= 1 << bit;
                }
            }
            *word = w;
        }
        f
    }

    /// Builds a bivariate table from a predicate on `(x, y)`.
    pub fn from_fn_xy(field: Arc<Field>, pred: impl Fn(Elem, Elem) -> bool) -> Self {
        let domain = Domain::Bivariate(field);
        let d = domain.clone();
        Self::from_fn(domain, move |idx| {
            let (x, y) = d.unpack(idx);
            pred(x, y)
        })
    }

    pub fn from_bits(domain: Domain, bits: &[bool]) -> Result<Self> {
        if bits.len() != domain.size() {
            return Err(Error::InvalidParams(format!(
                "table of length {} for {} variables",
                bits.len(),
                domain.n_vars()
            )));
        }
        Ok(Self::from_fn(domain, |i| bits[i]))
    }

    /// `x -> Tr_1^k(c x^e)` on the whole field; the argument must lie in GF(2^k).
    pub fn from_trace_monomial(field: Arc<Field>, k: u32, c: Elem, e: u64) -> Result<Self> {
        let mut out = Self::zero(Domain::Univariate(field.clone()));
        if !field.n().is_multiple_of(k) {
            return Err(Error::KNotDivisor { k, n: field.n() });
        }
        for x in field.elements() {
            let arg = field.mul(c, field.pow(x, e));
            if field.subfield_trace_bit(k, arg)? {
                out.set(x.index(), true);
            }
        }
        Ok(out)
    }

    /// `x -> Tr(c x)`, or `(x, y) -> Tr(c1 x + c2 y)` with `c` packed.
    pub fn linear(domain: Domain, c: usize) -> Self {
        let d = domain.clone();
        Self::from_fn(domain, move |x| d.inner_product(c, x))
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn field(&self) -> &Arc<Field> {
        self.domain.field()
    }

    pub fn n_vars(&self) -> u32 {
        self.domain.n_vars()
    }

    pub fn size(&self) -> usize {
        self.domain.size()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, idx: usize) -> bool {
        (self.words[idx >> 6] >> (idx & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, idx: usize, bit: bool) {
        let w = &mut self.words[idx >> 6];
        if bit {
            *w |= 1 << (idx & 63);
        } else {
            *w &= !(1 << (idx & 63));
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.size()).map(|i| self.get(i))
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::ShapeMismatch {
                left: self.n_vars(),
                right: other.n_vars(),
            });
        }
        Ok(())
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.zip_words(other, |a, b| a ^ b))
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.zip_words(other, |a, b| a & b))
    }

    fn zip_words(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        BooleanFunction {
            domain: self.domain.clone(),
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let mask = tail_mask(self.n_vars());
        BooleanFunction {
            domain: self.domain.clone(),
            words: self.words.iter().map(|w| !w & mask).collect(),
        }
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() * 2 == self.size() as u64
    }

    /// Hex dump; index 0 is the least significant bit of the first digit.
    pub fn to_hex(&self) -> String {
        bits_to_hex(self.size(), |i| self.get(i))
    }

    pub fn from_hex(domain: Domain, hex: &str) -> Result<Self> {
        let size = domain.size();
        let digits: Vec<u32> = hex
            .trim()
            .chars()
            .map(|c| c.to_digit(16))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidParams(format!("bad hex table {hex:?}")))?;
        if digits.len() != size.div_ceil(4) {
            return Err(Error::InvalidParams(format!(
                "hex table has {} digits, expected {}",
                digits.len(),
                size.div_ceil(4)
            )));
        }
        Ok(Self::from_fn(domain, |i| (digits[i / 4] >> (i % 4)) & 1 == 1))
    }

    pub fn anf(&self) -> Anf {
        Anf {
            n_vars: self.n_vars(),
            words: moebius(self.n_vars(), self.words.clone()),
        }
    }

    pub fn algebraic_degree(&self) -> u32 {
        self.anf().degree()
    }
}

fn bits_to_hex(size: usize, get: impl Fn(usize) -> bool) -> String {
    let mut s = String::with_capacity(size.div_ceil(4));
    for d in 0..size.div_ceil(4) {
        let mut v = 0u32;
        for b in 0..4 {
            let i = 4 * d + b;
            if i < size && get(i) {
                v |= 1 << b;
            }
        }
        s.push(char::from_digit(v, 16).unwrap());
    }
    s
}

const MOEBIUS_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Binary Moebius transform; its own inverse.
fn moebius(n_vars: u32, mut words: Vec<u64>) -> Vec<u64> {
    for s in 0..n_vars.min(6) {
        let mask = MOEBIUS_MASKS[s as usize];
        for w in words.iter_mut() {
            *w ^= (*w & mask) << (1 << s);
        }
    }
    let mut step = 1;
    while step < words.len() {
        for base in (0..words.len()).step_by(2 * step) {
            for j in base..base + step {
                words[j + step] ^= words[j];
            }
        }
        step *= 2;
    }
    words
}

/// Algebraic normal form: bit `M` is the coefficient of the monomial `prod_{i in M} x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anf {
    n_vars: u32,
    words: Vec<u64>,
}

impl Anf {
    pub fn n_vars(&self) -> u32 {
        self.n_vars
    }

    pub fn coeff(&self, mask: usize) -> bool {
        (self.words[mask >> 6] >> (mask & 63)) & 1 == 1
    }

    pub fn monomials(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some((wi << 6) | b)
            })
        })
    }

    /// Largest monomial weight; 0 for constants, including the zero function.
    pub fn degree(&self) -> u32 {
        self.monomials().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    /// Truth table of the polynomial, over the given domain.
    pub fn to_function(&self, domain: Domain) -> Result<BooleanFunction> {
        if domain.n_vars() != self.n_vars {
            return Err(Error::ShapeMismatch {
                left: domain.n_vars(),
                right: self.n_vars,
            });
        }
        Ok(BooleanFunction {
            domain,
            words: moebius(self.n_vars, self.words.clone()),
        })
    }

    pub fn to_hex(&self) -> String {
        bits_to_hex(1 << self.n_vars, |i| self.coeff(i))
    }
}

/// `sum over permutations (a, b, c) of (i, j, k)` of `u^(2^a) v^(2^b) r^(2^c)`.
///
/// This is the coefficient of `x^(2^i + 2^j + 2^k)` in the univariate
/// expansion of `Tr(ux) Tr(vx) Tr(rx)`.
pub fn cubic_symmetric_sum(field: &Field, u: Elem, v: Elem, r: Elem, i: u32, j: u32, k: u32) -> Result<Elem> {
    let n = field.n();
    if i == j || j == k || i == k || i >= n || j >= n || k >= n {
        return Err(Error::IndicesNotDistinct(i, j, k));
    }
    let perms = [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)];
    let mut acc = Elem::ZERO;
    for (a, b, c) in perms {
        let t = field.mul(
            field.mul(field.frobenius(u, a), field.frobenius(v, b)),
            field.frobenius(r, c),
        );
        acc += t;
    }
    Ok(acc)
}

/// First index triple `i < j < k` with a nonzero symmetric sum, if any.
pub fn cubic_witness(field: &Field, u: Elem, v: Elem, r: Elem) -> Option<(u32, u32, u32)> {
    let n = field.n();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !cubic_symmetric_sum(field, u, v, r, i, j, k).unwrap().is_zero() {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}
