//! Exact arithmetic in the number field Q(i, √2, √3, √5).
//!
//! Every constant appearing in the canonical fixtures (√2, √3, √6, √10, i,
//! halves, ...) lives in this field, so all algebraic computations downstream
//! can be carried out with structural equality instead of tolerances.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use thiserror::Error;

/// Square-free radicands representable as basis radicals, in display order.
pub const SUPPORTED_RADICANDS: [i64; 8] = [1, 2, 3, 5, 6, 10, 15, 30];

const PRIMES: [i64; 3] = [2, 3, 5];

/// Radicand of the basis element with the given prime mask
/// (bit 0 ↔ 2, bit 1 ↔ 3, bit 2 ↔ 5).
fn radicand(mask: usize) -> i64 {
    let mut r = 1;
    for (b, p) in PRIMES.iter().enumerate() {
        if mask & (1 << b) != 0 {
            r *= p;
        }
    }
    r
}

fn mask_of_radicand(m: i64) -> Option<usize> {
    (0..8).find(|&k| radicand(k) == m)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported radical {0}; supported radicands are 2, 3, 5, 6, 10, 15, 30")]
    UnsupportedRadical(i64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A Gaussian rational re + im·i.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_i64(n: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn neg(&self) -> Self {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(GaussRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

/// An element of Q(i, √2, √3, √5), stored as Gaussian-rational coordinates
/// against the eight radical basis elements √1, √2, √3, √5, √6, √10, √15, √30.
///
/// Rationals are kept in lowest terms with positive denominator by
/// construction, so `==` decides equality of field values.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactScalar {
    parts: [GaussRat; 8],
}

impl Default for ExactScalar {
    fn default() -> Self {
        ExactScalar {
            parts: Default::default(),
        }
    }
}

fn mul_parts(a: &[GaussRat], b: &[GaussRat], out: &mut [GaussRat]) {
    for (ma, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (mb, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let common = radicand(ma & mb);
            let target = ma ^ mb;
            let mut term = ca.mul(cb);
            if common != 1 {
                let c = BigRational::from_integer(BigInt::from(common));
                term.re *= &c;
                term.im *= &c;
            }
            out[target] = out[target].add(&term);
        }
    }
}

/// Inverse in the subfield spanned by the first 2^level masks.
/// Level 0 is Q(i); each level adjoins the next prime's square root.
fn inv_parts(a: &[GaussRat], level: usize) -> Option<Vec<GaussRat>> {
    if level == 0 {
        return a[0].inv().map(|g| vec![g]);
    }
    let half = 1 << (level - 1);
    let (lo, hi) = a.split_at(half);
    // a = lo + hi·√p. 1/a = (lo − hi·√p) / (lo² − p·hi²), with the
    // denominator living in the subfield one level down.
    let p = GaussRat::from_i64(PRIMES[level - 1]);
    let mut lo2 = vec![GaussRat::zero(); half];
    let mut hi2 = vec![GaussRat::zero(); half];
    mul_parts(lo, lo, &mut lo2);
    mul_parts(hi, hi, &mut hi2);
    let denom: Vec<GaussRat> = lo2
        .iter()
        .zip(hi2.iter())
        .map(|(l, h)| l.sub(&p.mul(h)))
        .collect();
    let denom_inv = inv_parts(&denom, level - 1)?;
    let mut out = vec![GaussRat::zero(); 2 * half];
    {
        let (out_lo, out_hi) = out.split_at_mut(half);
        mul_parts(lo, &denom_inv, out_lo);
        let hi_neg: Vec<GaussRat> = hi.iter().map(|g| g.neg()).collect();
        mul_parts(&hi_neg, &denom_inv, out_hi);
    }
    Some(out)
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn i() -> Self {
        let mut s = Self::default();
        s.parts[0] = GaussRat::i();
        s
    }

    pub fn from_i64(n: i64) -> Self {
        let mut s = Self::default();
        s.parts[0] = GaussRat::from_i64(n);
        s
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut s = Self::default();
        s.parts[0].re = BigRational::new(BigInt::from(num), BigInt::from(den));
        s
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut s = Self::default();
        s.parts[0].re = r;
        s
    }

    pub fn from_gauss(g: GaussRat) -> Self {
        let mut s = Self::default();
        s.parts[0] = g;
        s
    }

    /// The positive square root of `m`, for square-free m dividing 30 (m > 1).
    pub fn radical(m: i64) -> Result<Self, ScalarError> {
        if m == 1 {
            return Ok(Self::one());
        }
        let mask = mask_of_radicand(m).ok_or(ScalarError::UnsupportedRadical(m))?;
        let mut s = Self::default();
        s.parts[mask] = GaussRat::one();
        Ok(s)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    /// True when the value lies in the Gaussian-rational subfield Q(i).
    pub fn is_gaussian(&self) -> bool {
        self.parts[1..].iter().all(|p| p.is_zero())
    }

    /// The Q(i) value, when no radical component is present.
    pub fn as_gauss(&self) -> Option<&GaussRat> {
        if self.is_gaussian() {
            Some(&self.parts[0])
        } else {
            None
        }
    }

    pub fn gauss_part(&self) -> &GaussRat {
        &self.parts[0]
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (a, b) in s.parts.iter_mut().zip(o.parts.iter()) {
            *a = a.add(b);
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (a, b) in s.parts.iter_mut().zip(o.parts.iter()) {
            *a = a.sub(b);
        }
        s
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for a in s.parts.iter_mut() {
            *a = a.neg();
        }
        s
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::default();
        mul_parts(&self.parts, &o.parts, &mut out.parts);
        out
    }

    /// Complex conjugation: fixes every radical, sends i to −i.
    pub fn conj(&self) -> Self {
        let mut s = self.clone();
        for a in s.parts.iter_mut() {
            *a = a.conj();
        }
        s
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        let v = inv_parts(&self.parts, 3).ok_or(ScalarError::DivisionByZero)?;
        let mut s = Self::default();
        for (dst, src) in s.parts.iter_mut().zip(v.into_iter()) {
            *dst = src;
        }
        Ok(s)
    }

    pub fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(n))
    }

    /// Double-precision evaluation.
    pub fn to_approx(&self) -> ApproxScalar {
        let mut re = 0.0;
        let mut im = 0.0;
        for (mask, c) in self.parts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = (radicand(mask) as f64).sqrt();
            re += rational_to_f64(&c.re) * r;
            im += rational_to_f64(&c.im) * r;
        }
        ApproxScalar { re, im }
    }

    /// Least common multiple of all coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for p in &self.parts {
            for r in [&p.re, &p.im] {
                if !r.is_zero() {
                    l = num::integer::lcm(l, r.denom().clone());
                }
            }
        }
        l
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    // Exact for everything the fixtures produce; falls back to a
    // quotient of approximations for very large operands.
    let num = r.numer();
    let den = r.denom();
    match (num.to_string().parse::<f64>(), den.to_string().parse::<f64>()) {
        (Ok(n), Ok(d)) if d.is_finite() && n.is_finite() => n / d,
        _ => {
            let bits = den.bits().max(num.bits()) as i32;
            let scale = bits.saturating_sub(500);
            let sn = num >> scale;
            let sd = den >> scale;
            sn.to_string().parse::<f64>().unwrap() / sd.to_string().parse::<f64>().unwrap()
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---------------------------------------------------------------------------
// printing and parsing

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// One printed monomial: |coeff| with its tags, plus the extracted sign.
fn monomial(r: &BigRational, imag: bool, mask: usize) -> (bool, String) {
    let negative = r.is_negative();
    let a = r.abs();
    let mut factors: Vec<String> = Vec::new();
    let coeff_is_one = a.is_one();
    if !coeff_is_one || (!imag && mask == 0) {
        factors.push(fmt_rat(&a));
    }
    if imag {
        factors.push("i".to_string());
    }
    if mask != 0 {
        factors.push(format!("r{}", radicand(mask)));
    }
    (negative, factors.join("*"))
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut order: Vec<usize> = (0..8).collect();
        order.sort_by_key(|&m| radicand(m));
        for mask in order {
            let c = &self.parts[mask];
            if !c.re.is_zero() {
                terms.push(monomial(&c.re, false, mask));
            }
            if !c.im.is_zero() {
                terms.push(monomial(&c.im, true, mask));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, (neg, body)) in terms.iter().enumerate() {
            if k == 0 {
                if *neg {
                    out.push('-');
                }
            } else {
                out.push_str(if *neg { " - " } else { " + " });
            }
            out.push_str(body);
        }
        write!(f, "{}", out)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ScalarError> {
        Err(ScalarError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ExactScalar, ScalarError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ExactScalar, ScalarError> {
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ExactScalar, ScalarError> {
        let mut negate = false;
        while let Some(c) = self.peek() {
            match c {
                b'-' => {
                    negate = !negate;
                    self.pos += 1;
                }
                b'+' => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let a = self.atom()?;
        Ok(if negate { a.neg() } else { a })
    }

    fn atom(&mut self) -> Result<ExactScalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(ExactScalar::i())
            }
            Some(b'r') => {
                self.pos += 1;
                let m = self.integer()?;
                ExactScalar::radical(m)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den == 0 {
                        return self.err("zero denominator");
                    }
                    Ok(ExactScalar::from_ratio(num, den))
                } else {
                    Ok(ExactScalar::from_i64(num))
                }
            }
            _ => self.err("expected a rational, 'i', a radical, or '('"),
        }
    }

    fn integer(&mut self) -> Result<i64, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| ScalarError::Parse {
                pos: start,
                msg: "integer literal out of range".to_string(),
            })
    }
}

impl std::str::FromStr for ExactScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return p.err("trailing input");
        }
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// operator sugar

macro_rules! binop {
    ($trait:ident, $method:ident, $f:ident) => {
        impl $trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar::$f(self, rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::neg(self)
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        *self = ExactScalar::add(self, rhs);
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        *self = ExactScalar::sub(self, rhs);
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = ExactScalar::mul(self, rhs);
    }
}

// ---------------------------------------------------------------------------
// the float regime

/// Double-precision complex scalar used by the unitary-factorization routines.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct ApproxScalar {
    pub re: f64,
    pub im: f64,
}

impl ApproxScalar {
    pub fn new(re: f64, im: f64) -> Self {
        ApproxScalar { re, im }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> f64 {
        self.im.atan2(self.re)
    }

    pub fn scale(&self, t: f64) -> Self {
        ApproxScalar::new(self.re * t, self.im * t)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let r = self.abs().sqrt();
        let th = self.arg() / 2.0;
        ApproxScalar::new(r * th.cos(), r * th.sin())
    }
}

/// Common interface of the exact and floating-point coefficient regimes.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Scalar for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        ExactScalar::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        ExactScalar::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        ExactScalar::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        ExactScalar::neg(self)
    }
    fn conj(&self) -> Self {
        ExactScalar::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        ExactScalar::from_i64(n)
    }
    fn inv(&self) -> Option<Self> {
        ExactScalar::inv(self).ok()
    }
}

impl Scalar for ApproxScalar {
    fn zero() -> Self {
        ApproxScalar::default()
    }
    fn one() -> Self {
        ApproxScalar::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        ApproxScalar::new(self.re + rhs.re, self.im + rhs.im)
    }
    fn sub(&self, rhs: &Self) -> Self {
        ApproxScalar::new(self.re - rhs.re, self.im - rhs.im)
    }
    fn mul(&self, rhs: &Self) -> Self {
        ApproxScalar::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
    fn neg(&self) -> Self {
        ApproxScalar::new(-self.re, -self.im)
    }
    fn conj(&self) -> Self {
        ApproxScalar::new(self.re, -self.im)
    }
    fn from_i64(n: i64) -> Self {
        ApproxScalar::new(n as f64, 0.0)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            return None;
        }
        Some(ApproxScalar::new(self.re / n, -self.im / n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    #[test]
    fn radical_products_reduce() {
        let r2 = ExactScalar::radical(2).unwrap();
        let r3 = ExactScalar::radical(3).unwrap();
        let r5 = ExactScalar::radical(5).unwrap();
        let r6 = ExactScalar::radical(6).unwrap();
        let r10 = ExactScalar::radical(10).unwrap();
        assert_eq!(r2.mul(&r2), ExactScalar::from_i64(2));
        assert_eq!(r2.mul(&r3), r6);
        assert_eq!(r2.mul(&r5), r10);
        assert_eq!(r6.mul(&r6), ExactScalar::from_i64(6));
        assert_eq!(r10.mul(&r10), ExactScalar::from_i64(10));
        assert_eq!(
            ExactScalar::radical(15).unwrap().mul(&r6),
            ExactScalar::radical(10).unwrap().scale_i64(3)
        );
    }

    #[test]
    fn unsupported_radical_rejected() {
        assert_eq!(
            ExactScalar::radical(7).unwrap_err(),
            ScalarError::UnsupportedRadical(7)
        );
        assert_eq!(
            ExactScalar::radical(4).unwrap_err(),
            ScalarError::UnsupportedRadical(4)
        );
    }

    #[test]
    fn gaussian_inverse() {
        let x = es("1 + i");
        let expected = es("1/2 - 1/2*i");
        assert_eq!(x.inv().unwrap(), expected);
        assert_eq!(x.inv().unwrap().mul(&x), ExactScalar::one());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(
            ExactScalar::zero().inv().unwrap_err(),
            ScalarError::DivisionByZero
        );
    }

    #[test]
    fn inverse_in_full_tower() {
        let x = es("(1/2 + 3/4*i)*r6 - 2 + r10 - 5*i*r30");
        let inv = x.inv().unwrap();
        assert_eq!(inv.mul(&x), ExactScalar::one());
        let y = es("r2 + r3 + r5");
        assert_eq!(y.inv().unwrap().mul(&y), ExactScalar::one());
    }

    #[test]
    fn approx_values() {
        let half = es("1/2").to_approx();
        assert_eq!(half.re, 0.5);
        assert_eq!(half.im, 0.0);
        let r2 = es("r2").to_approx();
        assert!((r2.re - std::f64::consts::SQRT_2).abs() < 1e-12);
        let ir3 = es("i*r3").to_approx();
        assert!(ir3.re.abs() < 1e-15);
        assert!((ir3.im - 3.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn conjugation_fixes_radicals() {
        let x = es("r6 + 2*i*r10 - 1/3");
        let c = x.conj();
        assert_eq!(c, es("r6 - 2*i*r10 - 1/3"));
        assert_eq!(c.conj(), x);
        // conj(x)·x has no imaginary component anywhere
        let n = c.mul(&x);
        for mask in 0..8 {
            assert!(n.parts[mask].im.is_zero());
        }
    }

    #[test]
    fn parse_spec_example() {
        let x = es("(1/2 + 3/4*i)*r6 - 2");
        let r6 = ExactScalar::radical(6).unwrap();
        let expected = es("1/2")
            .add(&es("3/4").mul(&ExactScalar::i()))
            .mul(&r6)
            .sub(&ExactScalar::from_i64(2));
        assert_eq!(x, expected);
    }

    #[test]
    fn print_parse_round_trip() {
        let cases = [
            "0",
            "1",
            "-1",
            "i",
            "-i",
            "1/2 - 3/4*i",
            "r2",
            "-r30",
            "2/7*i*r15",
            "(1/2 + 3/4*i)*r6 - 2 + r10",
        ];
        for c in cases {
            let x = es(c);
            let printed = format!("{}", x);
            assert_eq!(es(&printed), x, "round trip failed for {c} -> {printed}");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1 +".parse::<ExactScalar>().is_err());
        assert!("r7".parse::<ExactScalar>().is_err());
        assert!("(1".parse::<ExactScalar>().is_err());
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("x".parse::<ExactScalar>().is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_scalar() -> impl Strategy<Value = ExactScalar> {
            // a few masks with small rational coordinates
            proptest::collection::vec((0usize..8, -5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4), 0..4)
                .prop_map(|parts| {
                    let mut s = ExactScalar::zero();
                    for (mask, rn, rd, in_, id) in parts {
                        let mut t = ExactScalar::default();
                        t.parts[mask] = GaussRat::new(
                            BigRational::new(BigInt::from(rn), BigInt::from(rd)),
                            BigRational::new(BigInt::from(in_), BigInt::from(id)),
                        );
                        s = s.add(&t);
                    }
                    s
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn field_axioms((a, b, c) in (arb_scalar(), arb_scalar(), arb_scalar())) {
                prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                if !a.is_zero() {
                    prop_assert_eq!(a.inv().unwrap().mul(&a), ExactScalar::one());
                }
            }

            #[test]
            fn conj_is_ring_automorphism((a, b) in (arb_scalar(), arb_scalar())) {
                prop_assert_eq!(a.conj().conj(), a.clone());
                prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
                prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
                let n = a.conj().mul(&a);
                for mask in 0..8 {
                    prop_assert!(n.parts[mask].im.is_zero());
                }
            }

            #[test]
            fn print_parse_identity(a in arb_scalar()) {
                let printed = format!("{}", a);
                let reparsed: ExactScalar = printed.parse().unwrap();
                prop_assert_eq!(reparsed, a);
            }
        }
    }
}
