//! Arithmetic in prime fields `F_p` and extension fields `F_{p^k}`.
//!
//! Elements are carried around as compact integer codes: the coordinate
//! sequence `(c_0, .., c_{k-1})` in the power basis of the modulus root is
//! stored as `c_0 + c_1 p + .. + c_{k-1} p^{k-1}`. Hot loops (elimination,
//! polynomial expansion) work on raw codes through [`FieldSpec`]; the
//! [`FqElement`] wrapper is the ergonomic value type.
//!
//! The canonical enumeration order of field elements is lexicographic
//! ascending on coordinate sequences, i.e. `c_0` is the most significant
//! coordinate. It is used wherever a deterministic "first element" is
//! needed (roots of unity, projective point enumeration).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus {modulus:?} is reducible over F_{p}")]
    ReducibleModulus { p: u32, modulus: Vec<u32> },
    #[error("bad degree: {0}")]
    BadDegree(String),
    #[error("field of size {0} exceeds the supported bound 2^20")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("no element of order {m} in a field of size {q}")]
    NoSuchRoot { m: u64, q: u64 },
    #[error("no canonical modulus for F_{p}^{k}; supply one explicitly")]
    NoCanonicalModulus { p: u32, k: u32 },
    #[error("coordinate {value} out of range for characteristic {p}")]
    BadCoordinate { value: u64, p: u32 },
}

/// Raw element code inside a given field.
pub type Code = u32;

struct FieldData {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a fixed primitive element `g`, `i < q - 1`.
    exp: Vec<Code>,
    /// Discrete log of every nonzero code; `log[0]` is unused.
    log: Vec<u32>,
    /// Full addition table for small odd-characteristic extensions.
    add_table: Option<Vec<Code>>,
}

/// A validated finite field `F_{p^k}`. Cheap to clone; all clones share
/// the same arithmetic tables.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldData>);

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    p: u32,
    k: u32,
    modulus: Vec<u32>,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FieldRepr { p: self.p(), k: self.k(), modulus: self.modulus().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FieldRepr::deserialize(d)?;
        FieldSpec::new(r.p as u64, r.k, &r.modulus).map_err(serde::de::Error::custom)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}{:?}", self.0.p, self.0.k, self.0.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F{}", self.0.p)
        } else {
            write!(f, "F{}", self.0.q)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p`.
/// Coefficients are constant-term first.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    let p64 = p as u64;
    while r.len() > db {
        let lead = r.pop().unwrap() % p64;
        if lead != 0 {
            let shift = r.len() - db;
            for (i, &bc) in b[..db].iter().enumerate() {
                let sub = lead * bc as u64 % p64;
                r[shift + i] = (r[shift + i] + p64 - sub) % p64;
            }
        }
    }
    r.into_iter().map(|c| (c % p64) as u32).collect()
}

/// Canonical moduli: `t` for prime fields, Conway polynomials for the
/// small extensions used by the built-in examples.
pub fn canonical_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    match (p, k) {
        (_, 1) => Some(vec![0, 1]),
        (2, 2) => Some(vec![1, 1, 1]),
        (3, 2) => Some(vec![2, 2, 1]),
        _ => None,
    }
}

impl FieldSpec {
    /// Validates `(p, k, modulus)` and builds the arithmetic tables.
    pub fn new(p: u64, k: u32, modulus: &[u32]) -> Result<Self, GfError> {
        if !is_prime(p) || p > u16::MAX as u64 {
            return Err(GfError::NonPrime(p));
        }
        if k == 0 {
            return Err(GfError::BadDegree("extension degree must be at least 1".into()));
        }
        if modulus.len() != k as usize + 1 {
            return Err(GfError::BadDegree(format!("modulus has {} coefficients, expected {}", modulus.len(), k + 1)));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(GfError::BadDegree("modulus must be monic".into()));
        }
        let p32 = p as u32;
        if let Some(&c) = modulus.iter().find(|&&c| c >= p32) {
            return Err(GfError::BadCoordinate { value: c as u64, p: p32 });
        }
        let q = (p as u128).pow(k);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(GfError::TooLarge(q.min(u64::MAX as u128) as u64));
        }
        let q = q as u32;
        // trial division by every monic polynomial of degree 1..=k/2
        for deg in 1..=k / 2 {
            let count = p32.pow(deg);
            for code in 0..count {
                let mut f = digits(code, p32, deg as usize);
                f.push(1);
                if poly_rem(modulus, &f, p32).iter().all(|&c| c == 0) {
                    return Err(GfError::ReducibleModulus { p: p32, modulus: modulus.to_vec() });
                }
            }
        }
        let mut data =
            FieldData { p: p32, k, q, modulus: modulus.to_vec(), exp: Vec::new(), log: Vec::new(), add_table: None };
        build_tables(&mut data);
        Ok(FieldSpec(Arc::new(data)))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self, GfError> {
        FieldSpec::new(p, 1, &[0, 1])
    }

    /// `F_{p^k}` with the built-in canonical modulus.
    pub fn canonical(p: u64, k: u32) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrime(p));
        }
        let m = canonical_modulus(p as u32, k).ok_or(GfError::NoCanonicalModulus { p: p as u32, k })?;
        FieldSpec::new(p, k, &m)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// Field size `p^k`.
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Code {
        0
    }

    pub fn one(&self) -> Code {
        1
    }

    /// Wraps a raw code. Panics if the code is out of range.
    pub fn element(&self, code: Code) -> FqElement {
        assert!(code < self.0.q, "code {code} out of range for {self}");
        FqElement { field: self.clone(), code }
    }

    /// Element with the given power-basis coordinates (constant first).
    /// Shorter sequences are zero-padded.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElement, GfError> {
        if coeffs.len() > self.0.k as usize {
            return Err(GfError::BadDegree(format!(
                "{} coordinates given for a degree-{} field",
                coeffs.len(),
                self.0.k
            )));
        }
        let mut code = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(GfError::BadCoordinate { value: c as u64, p: self.0.p });
            }
            code = code * self.0.p + c;
        }
        Ok(self.element(code))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Code {
        n.rem_euclid(self.0.p as i64) as Code
    }

    pub fn coeffs(&self, code: Code) -> Vec<u32> {
        digits(code, self.0.p, self.0.k as usize)
    }

    #[inline]
    pub fn add(&self, a: Code, b: Code) -> Code {
        let d = &*self.0;
        if d.k == 1 {
            let s = a + b;
            if s >= d.p {
                s - d.p
            } else {
                s
            }
        } else if d.p == 2 {
            a ^ b
        } else if let Some(t) = &d.add_table {
            t[(a * d.q + b) as usize]
        } else {
            add_digitwise(a, b, d.p, d.k)
        }
    }

    #[inline]
    pub fn neg(&self, a: Code) -> Code {
        let d = &*self.0;
        if d.p == 2 || a == 0 {
            a
        } else if d.k == 1 {
            d.p - a
        } else {
            let mut out = 0;
            let mut place = 1;
            let mut x = a;
            for _ in 0..d.k {
                let c = x % d.p;
                x /= d.p;
                out += ((d.p - c) % d.p) * place;
                place *= d.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Code, b: Code) -> Code {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Code, b: Code) -> Code {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &*self.0;
        if d.k == 1 {
            return ((a as u64 * b as u64) % d.p as u64) as Code;
        }
        let n = d.q - 1;
        let mut e = d.log[a as usize] + d.log[b as usize];
        if e >= n {
            e -= n;
        }
        d.exp[e as usize]
    }

    pub fn inv(&self, a: Code) -> Result<Code, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let d = &*self.0;
        let n = d.q - 1;
        let l = d.log[a as usize];
        Ok(d.exp[((n - l) % n) as usize])
    }

    pub fn div(&self, a: Code, b: Code) -> Result<Code, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Code, e: u64) -> Code {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let d = &*self.0;
        let n = (d.q - 1) as u64;
        let l = d.log[a as usize] as u64;
        d.exp[((l * (e % n)) % n) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Code) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64;
        Ok(n / gcd(l, n))
    }

    /// `dst += s * src`, elementwise.
    pub fn axpy(&self, dst: &mut [Code], s: Code, src: &[Code]) {
        debug_assert_eq!(dst.len(), src.len());
        if s == 0 {
            return;
        }
        let d = &*self.0;
        if d.p == 2 && s == 1 {
            for (x, &y) in dst.iter_mut().zip(src) {
                *x ^= y;
            }
        } else if d.k == 1 {
            let p = d.p as u64;
            let s = s as u64;
            for (x, &y) in dst.iter_mut().zip(src) {
                *x = ((*x as u64 + s * y as u64) % p) as Code;
            }
        } else {
            for (x, &y) in dst.iter_mut().zip(src) {
                if y != 0 {
                    *x = self.add(*x, self.mul(s, y));
                }
            }
        }
    }

    /// Multiplies every entry by `s`.
    pub fn scale(&self, v: &mut [Code], s: Code) {
        if s == 1 {
            return;
        }
        for x in v.iter_mut() {
            *x = self.mul(*x, s);
        }
    }

    /// The `idx`-th element in the canonical enumeration order.
    pub fn canonical_code(&self, idx: u32) -> Code {
        let d = &*self.0;
        let mut x = idx;
        let mut coords = vec![0u32; d.k as usize];
        for i in (0..d.k as usize).rev() {
            coords[i] = x % d.p;
            x /= d.p;
        }
        coords.iter().rev().fold(0, |acc, &c| acc * d.p + c)
    }

    /// All elements in canonical order (zero first).
    pub fn elements(&self) -> impl Iterator<Item = Code> + '_ {
        (0..self.0.q).map(move |i| self.canonical_code(i))
    }

    /// First element of exact multiplicative order `m` in canonical order.
    pub fn root_of_unity(&self, m: u64) -> Result<FqElement, GfError> {
        let n = (self.0.q - 1) as u64;
        if m == 0 || !n.is_multiple_of(m) {
            return Err(GfError::NoSuchRoot { m, q: self.0.q as u64 });
        }
        self.elements()
            .filter(|&c| c != 0)
            .find(|&c| self.order(c) == Ok(m))
            .map(|c| self.element(c))
            .ok_or(GfError::NoSuchRoot { m, q: self.0.q as u64 })
    }

    /// Human-readable rendering; extension elements are written as
    /// polynomials in `a`, the modulus root.
    pub fn format_code(&self, code: Code) -> String {
        if self.0.k == 1 {
            return code.to_string();
        }
        let c = self.coeffs(code);
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let s = match (i, ci) {
                (0, _) => ci.to_string(),
                (1, 1) => "a".to_string(),
                (1, _) => format!("{ci}*a"),
                (_, 1) => format!("a^{i}"),
                _ => format!("{ci}*a^{i}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    pub(crate) fn check_same(&self, other: &FieldSpec) -> Result<(), GfError> {
        if self == other {
            Ok(())
        } else {
            Err(GfError::FieldMismatch(format!("{self:?}"), format!("{other:?}")))
        }
    }
}

fn digits(mut code: u32, p: u32, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(code % p);
        code /= p;
    }
    out
}

fn add_digitwise(mut a: u32, mut b: u32, p: u32, k: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..k {
        let s = (a % p + b % p) % p;
        a /= p;
        b /= p;
        out += s * place;
        place *= p;
    }
    out
}

/// Schoolbook product of two codes modulo the field modulus.
fn mul_slow(a: u32, b: u32, p: u32, k: u32, modulus: &[u32]) -> u32 {
    let da = digits(a, p, k as usize);
    let db = digits(b, p, k as usize);
    let mut prod = vec![0u32; 2 * k as usize - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let r = poly_rem(&prod, modulus, p);
    r.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn pow_slow(a: u32, mut e: u64, p: u32, k: u32, modulus: &[u32]) -> u32 {
    let mut base = a;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(acc, base, p, k, modulus);
        }
        base = mul_slow(base, base, p, k, modulus);
        e >>= 1;
    }
    acc
}

fn build_tables(d: &mut FieldData) {
    let n = (d.q - 1) as u64;
    let factors = prime_factors(n);
    let mut g = 1;
    if n > 1 {
        g = (1..d.q)
            .find(|&c| factors.iter().all(|&l| pow_slow(c, n / l, d.p, d.k, &d.modulus) != 1))
            .expect("multiplicative group of a finite field is cyclic");
    }
    let mut exp = Vec::with_capacity(n as usize);
    let mut log = vec![0u32; d.q as usize];
    let mut x = 1u32;
    for i in 0..n as u32 {
        exp.push(x);
        log[x as usize] = i;
        x = mul_slow(x, g, d.p, d.k, &d.modulus);
    }
    d.exp = exp;
    d.log = log;
    if d.k > 1 && d.p != 2 && d.q <= 256 {
        let q = d.q;
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                t[(a * q + b) as usize] = add_digitwise(a, b, d.p, d.k);
            }
        }
        d.add_table = Some(t);
    }
}

/// A field element together with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FqElement {
    field: FieldSpec,
    code: Code,
}

impl FqElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn code(&self) -> Code {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    pub fn checked_add(&self, other: &FqElement) -> Result<FqElement, GfError> {
        self.field.check_same(&other.field)?;
        Ok(self.with(self.field.add(self.code, other.code)))
    }

    pub fn checked_sub(&self, other: &FqElement) -> Result<FqElement, GfError> {
        self.field.check_same(&other.field)?;
        Ok(self.with(self.field.sub(self.code, other.code)))
    }

    pub fn checked_mul(&self, other: &FqElement) -> Result<FqElement, GfError> {
        self.field.check_same(&other.field)?;
        Ok(self.with(self.field.mul(self.code, other.code)))
    }

    pub fn checked_div(&self, other: &FqElement) -> Result<FqElement, GfError> {
        self.field.check_same(&other.field)?;
        Ok(self.with(self.field.div(self.code, other.code)?))
    }

    pub fn inv(&self) -> Result<FqElement, GfError> {
        Ok(self.with(self.field.inv(self.code)?))
    }

    pub fn pow(&self, e: u64) -> FqElement {
        self.with(self.field.pow(self.code, e))
    }

    /// Multiplicative order; fails on zero.
    pub fn order(&self) -> Result<u64, GfError> {
        self.field.order(self.code)
    }

    fn with(&self, code: Code) -> FqElement {
        FqElement { field: self.field.clone(), code }
    }
}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_code(self.code))
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_code(self.code))
    }
}

// Operator impls panic on a field mismatch; use the `checked_*` methods
// when operands may come from different fields.
impl Add for &FqElement {
    type Output = FqElement;
    fn add(self, rhs: &FqElement) -> FqElement {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FqElement {
    type Output = FqElement;
    fn sub(self, rhs: &FqElement) -> FqElement {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FqElement {
    type Output = FqElement;
    fn mul(self, rhs: &FqElement) -> FqElement {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FqElement {
    type Output = FqElement;
    fn neg(self) -> FqElement {
        self.with(self.field.neg(self.code))
    }
}
