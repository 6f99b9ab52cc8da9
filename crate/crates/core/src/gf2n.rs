//! Arithmetic in GF(2^n) for 2 <= n <= 24.
//!
//! Elements are little-endian coefficient vectors in the polynomial basis
//! `1, x, ..., x^(n-1)`, so the integer value of an element doubles as its
//! truth-table index. Multiplication goes through exp/log tables keyed by a
//! primitive generator; a carry-less multiply path is kept for fields built
//! without tables and as the reference the tables are checked against.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_N: u32 = 24;

/// Log tables are built up to this degree.
pub const LOG_TABLE_MAX_N: u32 = 24;

/// Default defining polynomials, `(n, poly)` with bit `i` the coefficient of `x^i`.
///
/// n = 6, 8 and 9 are the polynomials of the worked examples; the rest are
/// standard primitive polynomials.
pub const DEFAULT_POLYS: &[(u32, u32)] = &[
    (2, 0b111),
    (3, 0b1011),
    (4, 0b10011),
    (5, 0b100101),
    (6, 0b1011011), // x^6 + x^4 + x^3 + x + 1
    (7, 0b10000011),
    (8, 0b100011101),  // x^8 + x^4 + x^3 + x^2 + 1
    (9, 0b1000010001), // x^9 + x^4 + 1
    (10, 0x409),
    (11, 0x805),
    (12, 0x1053),
    (13, 0x201b),
    (14, 0x4443),
    (15, 0x8003),
    (16, 0x1100b),
    (17, 0x20009),
    (18, 0x40081), // x^18 + x^7 + 1
    (19, 0x80027),
    (20, 0x100009),
    (21, 0x200005),
    (22, 0x400003),
    (23, 0x800021),
    (24, 0x1000087),
];

/// Registry lookup for the default polynomial of degree `n`.
pub fn default_poly(n: u32) -> Option<u32> {
    DEFAULT_POLYS.iter().find(|(d, _)| *d == n).map(|(_, p)| *p)
}

/// An element of GF(2^n) as its coefficient bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for Elem {
    type Output = Elem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl AddAssign for Elem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

impl fmt::LowerHex for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

// ---------------------------------------------------------------------------
// GF(2)[x] helpers on u64 (degrees stay below 64 for n <= 24)

#[inline]
fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Carry-less product of two polynomials of degree < 32.
#[inline]
pub(crate) fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

pub(crate) fn poly_rem(mut a: u64, p: u64) -> u64 {
    let dp = degree(p);
    while a != 0 && degree(a) >= dp {
        a ^= p << (degree(a) - dp);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    poly_rem(clmul(a, b), p)
}

/// Irreducibility over GF(2): `gcd(x^(2^i) - x, p) = 1` for `1 <= i <= n/2`.
pub fn is_irreducible(poly: u64) -> bool {
    let n = degree(poly);
    if n < 1 {
        return false;
    }
    let mut xp = 0b10u64; // x^(2^i) mod p
    for _ in 1..=n / 2 {
        xp = mulmod(xp, xp, poly);
        if poly_gcd(poly, xp ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v.is_multiple_of(p) {
            out.push(p);
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

fn pow_mod(base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut b = poly_rem(base, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn has_full_order(g: u64, n: u32, poly: u64) -> bool {
    let group = (1u64 << n) - 1;
    if g == 0 || pow_mod(g, group, poly) != 1 {
        return false;
    }
    prime_factors(group)
        .into_iter()
        .all(|q| pow_mod(g, group / q, poly) != 1)
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Inverse of `a` modulo `modulus`, if it exists.
pub fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    if modulus == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % modulus as i128, modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(modulus as i128) as u64)
}

// ---------------------------------------------------------------------------

/// A GF(2)-linear map on n-bit vectors, stored as the images of the unit vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    images: Vec<u32>,
}

impl LinearMap {
    pub fn from_fn(n: u32, f: impl Fn(u32) -> u32) -> Self {
        LinearMap {
            images: (0..n).map(|i| f(1 << i)).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, mut x: u32) -> u32 {
        let mut acc = 0;
        while x != 0 {
            acc ^= self.images[x.trailing_zeros() as usize];
            x &= x - 1;
        }
        acc
    }

    /// Full evaluation table over all `2^n` inputs.
    pub fn to_table(&self) -> Vec<u32> {
        let size = 1usize << self.images.len();
        let mut table = vec![0u32; size];
        for x in 1..size {
            let low = x.trailing_zeros() as usize;
            table[x] = table[x & (x - 1)] ^ self.images[low];
        }
        table
    }
}

#[derive(Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// GF(2^n) defined by a monic irreducible polynomial.
#[derive(Debug)]
pub struct Field {
    n: u32,
    poly: u32,
    generator: Elem,
    tables: Option<LogTables>,
    trace_mask: u32,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.poly == other.poly && self.generator == other.generator
    }
}

impl Eq for Field {}

impl Field {
    /// Builds the field with `x` as generator; log tables require `x` primitive.
    pub fn new(n: u32, poly: u32) -> Result<Field> {
        Self::with_generator(n, poly, Elem(0b10 & ((1 << n) - 1)))
    }

    /// Default registry field of degree `n`.
    pub fn standard(n: u32) -> Result<Field> {
        let poly = default_poly(n).ok_or(Error::DegreeOutOfRange(n))?;
        Self::new(n, poly)
    }

    pub fn with_generator(n: u32, poly: u32, generator: Elem) -> Result<Field> {
        let mut field = Self::validated(n, poly)?;
        if generator.bits() >> n != 0 {
            return Err(Error::ElementOutOfRange {
                bits: generator.bits() as u64,
                n,
            });
        }
        field.generator = generator;
        if n <= LOG_TABLE_MAX_N {
            if !has_full_order(generator.bits() as u64, n, poly as u64) {
                return Err(Error::RejectsNonPrimitive(format!("{generator:#x}")));
            }
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    /// Field without log tables: every product is a carry-less multiply and reduction.
    pub fn without_tables(n: u32, poly: u32) -> Result<Field> {
        Self::validated(n, poly)
    }

    fn validated(n: u32, poly: u32) -> Result<Field> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        if degree(poly as u64) != n as i32 {
            return Err(Error::NotMonic { n, poly: poly as u64 });
        }
        if !is_irreducible(poly as u64) {
            return Err(Error::RejectsReducible(poly as u64));
        }
        let mut field = Field {
            n,
            poly,
            generator: Elem(0b10),
            tables: None,
            trace_mask: 0,
        };
        field.trace_mask = (0..n)
            .filter(|&i| field.trace(1, Elem(1 << i)).unwrap() == Elem::ONE)
            .fold(0, |acc, i| acc | (1 << i));
        Ok(field)
    }

    fn build_tables(&self) -> LogTables {
        let group = (1usize << self.n) - 1;
        let mut exp = Vec::with_capacity(group);
        let mut log = vec![0u32; group + 1];
        let mut a = Elem::ONE;
        for i in 0..group {
            exp.push(a.bits());
            log[a.index()] = i as u32;
            a = self.clmul_reduce(a, self.generator);
        }
        LogTables { exp, log }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn poly(&self) -> u32 {
        self.poly
    }

    #[inline]
    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// Number of elements, `2^n`.
    #[inline]
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Order of the multiplicative group, `2^n - 1`.
    #[inline]
    pub fn group_order(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn has_log_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size() as u32).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.size() as u32).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        a + b
    }

    #[inline]
    fn clmul_reduce(&self, a: Elem, b: Elem) -> Elem {
        Elem(mulmod(a.bits() as u64, b.bits() as u64, self.poly as u64) as u32)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => {
                if a.is_zero() || b.is_zero() {
                    return Elem::ZERO;
                }
                let group = t.exp.len() as u32;
                let mut idx = t.log[a.index()] + t.log[b.index()];
                if idx >= group {
                    idx -= group;
                }
                Elem(t.exp[idx as usize])
            }
            None => self.clmul_reduce(a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    /// `a^e`. The exponent is reduced modulo `2^n - 1` for nonzero `a`;
    /// `0^e = 0` for `e > 0` and `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if a.is_zero() {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let group = self.group_order();
        let e = e % group;
        match &self.tables {
            Some(t) => {
                let l = t.log[a.index()] as u64;
                Elem(t.exp[((l * e) % group) as usize])
            }
            None => Elem(pow_mod(a.bits() as u64, e, self.poly as u64) as u32),
        }
    }

    /// `a^(2^i)`.
    pub fn frobenius(&self, a: Elem, i: u32) -> Elem {
        let mut x = a;
        for _ in 0..(i % self.n) {
            x = self.square(x);
        }
        x
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.group_order() - 1))
    }

    /// `g^k` for the field generator `g`.
    pub fn gen_pow(&self, k: u64) -> Elem {
        self.pow(self.generator, k)
    }

    /// Discrete log base the generator.
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[a.index()])
    }

    fn check_divisor(&self, k: u32) -> Result<()> {
        if k == 0 || !self.n.is_multiple_of(k) {
            return Err(Error::KNotDivisor { k, n: self.n });
        }
        Ok(())
    }

    /// Relative trace `Tr_k^n(a) = sum_{i < n/k} a^(2^(k i))`.
    pub fn trace(&self, k: u32, a: Elem) -> Result<Elem> {
        self.check_divisor(k)?;
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..self.n / k {
            acc += x;
            x = self.frobenius(x, k);
        }
        Ok(acc)
    }

    /// Absolute trace `Tr_1^n(a)` as a bit.
    #[inline]
    pub fn trace_bit(&self, a: Elem) -> bool {
        (a.bits() & self.trace_mask).count_ones() & 1 == 1
    }

    /// Whether `a` lies in the subfield GF(2^m) (requires `m | n`).
    pub fn in_subfield(&self, m: u32, a: Elem) -> bool {
        self.n.is_multiple_of(m) && self.frobenius(a, m) == a
    }

    /// `Tr_1^k(a)` for `a` in the subfield GF(2^k).
    pub fn subfield_trace_bit(&self, k: u32, a: Elem) -> Result<bool> {
        self.check_divisor(k)?;
        if k == self.n {
            return Ok(self.trace_bit(a));
        }
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..k {
            acc += x;
            x = self.square(x);
        }
        // x is now a^(2^k), which equals a exactly when a is in GF(2^k)
        if x != a {
            return Err(Error::SubfieldViolation { k });
        }
        debug_assert!(acc == Elem::ZERO || acc == Elem::ONE);
        Ok(acc == Elem::ONE)
    }

    /// All `2^m` elements of the subfield GF(2^m), zero first.
    pub fn subfield_elements(&self, m: u32) -> Result<Vec<Elem>> {
        self.check_divisor(m)?;
        if self.tables.is_some() {
            let step = self.group_order() / ((1u64 << m) - 1);
            let mut out = vec![Elem::ZERO];
            out.extend((0..(1u64 << m) - 1).map(|j| self.gen_pow(j * step)));
            Ok(out)
        } else {
            Ok(self.elements().filter(|&a| self.frobenius(a, m) == a).collect())
        }
    }

    /// The map `a -> b` with `b . x = Tr(a x)` for every `x` (bitwise dot product).
    pub fn trace_dual_map(&self) -> LinearMap {
        LinearMap::from_fn(self.n, |a| {
            (0..self.n)
                .filter(|&i| self.trace_bit(self.mul(Elem(a), Elem(1 << i))))
                .fold(0, |acc, i| acc | (1 << i))
        })
    }

    /// Parses `0`, `g`, `g^k`, `0x<hex>` or bare hex.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let t = s.trim();
        let bad = || Error::ElementParse(s.to_string());
        if let Some(rest) = t.strip_prefix('g') {
            let k = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse::<u64>()
                    .map_err(|_| bad())?
            };
            return Ok(self.gen_pow(k));
        }
        let hex = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
        let bits = u64::from_str_radix(hex, 16).map_err(|_| bad())?;
        if bits >> self.n != 0 {
            return Err(Error::ElementOutOfRange { bits, n: self.n });
        }
        Ok(Elem(bits as u32))
    }

    /// `g^k` for nonzero elements, `0` for zero; hex when no log tables exist.
    pub fn format_elem(&self, a: Elem) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        match self.log(a) {
            Some(k) => format!("g^{k}"),
            None => format!("{:#x}", a.bits()),
        }
    }

    pub fn config(&self) -> FieldConfig {
        FieldConfig {
            n: self.n,
            poly_hex: format!("{:#x}", self.poly),
            generator: if self.generator == Elem(0b10) {
                "g".to_string()
            } else {
                format!("{:#x}", self.generator.bits())
            },
        }
    }
}

/// On-disk field description: `{"n": 8, "poly_hex": "0x11d", "generator": "g"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub n: u32,
    pub poly_hex: String,
    #[serde(default = "default_generator")]
    pub generator: String,
}

fn default_generator() -> String {
    "g".to_string()
}

impl FieldConfig {
    pub fn build(&self) -> Result<Field> {
        let hex = self.poly_hex.trim_start_matches("0x").trim_start_matches("0X");
        let poly =
            u32::from_str_radix(hex, 16).map_err(|_| Error::Config(format!("bad poly_hex {:?}", self.poly_hex)))?;
        if self.generator == "g" {
            return Field::new(self.n, poly);
        }
        let g = self.generator.trim_start_matches("0x");
        let bits =
            u32::from_str_radix(g, 16).map_err(|_| Error::Config(format!("bad generator {:?}", self.generator)))?;
        Field::with_generator(self.n, poly, Elem(bits))
    }

    pub fn load(path: &Path) -> Result<FieldConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}
