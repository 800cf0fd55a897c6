//! Field abstraction shared by every geometric routine.
//!
//! Four concrete fields implement [`Field`]:
//!
//! * [`Rational`]: arbitrary precision rationals,
//! * [`Gaussian`]: rationals adjoined `i`,
//! * [`Fp`]: residues modulo an odd prime below 2^61,
//! * [`C64`]: double precision complex numbers.
//!
//! The three exact fields compare with `==`; in [`C64`] every "is zero"
//! question is answered against a [`Tolerance`].

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use crate::error::{Error, Result};

/// Comparison thresholds for the floating point field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    /// Absolute epsilon for scalar comparisons.
    pub abs: f64,
    /// Bound on the 2x2 minors of two unit-normalized coordinate rows.
    pub proj: f64,
}

impl Tolerance {
    pub fn new(abs: f64, proj: f64) -> Result<Self> {
        if !(abs > 0.0 && proj > 0.0 && proj >= abs) || !abs.is_finite() || !proj.is_finite() {
            return Err(Error::InvalidTolerance);
        }
        Ok(Tolerance { abs, proj })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-10, proj: 1e-8 }
    }
}

/// A field element that knows which field it belongs to.
///
/// Constants are produced from an existing element (`x.zero()`, `x.int(3)`)
/// because the prime field carries its modulus at runtime.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True for the three exact fields.
    const EXACT: bool;

    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn int(&self, n: i64) -> Self;
    /// Exact zero test. Floating point callers should prefer [`Field::is_negligible`].
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// A square root when one exists in the field.
    fn sqrt(&self) -> Option<Self>;
    /// A fixed square root of -1 when the field has one.
    fn imag_unit(&self) -> Option<Self>;
    /// Absolute value for [`C64`]; 0 or 1 for the exact fields.
    fn magnitude(&self) -> f64;
    /// Random element; small height in the rational fields.
    fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Self;

    fn is_negligible(&self, tol: &Tolerance) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() < tol.abs
        }
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|r| self.clone() * r)
    }
}

/// Square root in any field, `None` when no root exists.
pub fn sqrt_in_field<F: Field>(x: &F) -> Option<F> {
    x.sqrt()
}

fn bigint_exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

fn rational_exact_sqrt(x: &BigRational) -> Option<BigRational> {
    let n = bigint_exact_sqrt(x.numer())?;
    let d = bigint_exact_sqrt(x.denom())?;
    Some(BigRational::new(n, d))
}

fn small_rational<R: RngCore + ?Sized>(rng: &mut R) -> BigRational {
    let n: i64 = rng.gen_range(-40..=40);
    let d: i64 = rng.gen_range(1..=12);
    BigRational::new(n.into(), d.into())
}

// ---------------------------------------------------------------------------
// Rationals

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Parses `"n"` or `"n/d"`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(n, d)))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Add for Rational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Rational(self.0 + rhs.0)
    }
}
impl Sub for Rational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Rational(self.0 - rhs.0)
    }
}
impl Mul for Rational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Rational(self.0 * rhs.0)
    }
}
impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn zero(&self) -> Self {
        Rational(BigRational::zero())
    }
    fn one(&self) -> Self {
        Rational(BigRational::one())
    }
    fn int(&self, n: i64) -> Self {
        Rational::from_int(n)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
    fn sqrt(&self) -> Option<Self> {
        rational_exact_sqrt(&self.0).map(Rational)
    }
    fn imag_unit(&self) -> Option<Self> {
        None
    }
    fn magnitude(&self) -> f64 {
        if self.0.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Self {
        Rational(small_rational(rng))
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals

/// An element `re + im*i` of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re: re.0, im: im.0 }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gaussian { re: BigRational::from_integer(re.into()), im: BigRational::from_integer(im.into()) }
    }

    pub fn i() -> Self {
        Gaussian::from_ints(0, 1)
    }

    fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}/{}, {}/{}]", self.re.numer(), self.re.denom(), self.im.numer(), self.im.denom())
    }
}

impl Add for Gaussian {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gaussian { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}
impl Sub for Gaussian {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gaussian { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}
impl Mul for Gaussian {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Gaussian { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}
impl Neg for Gaussian {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian { re: -self.re, im: -self.im }
    }
}

impl Field for Gaussian {
    const EXACT: bool = true;

    fn zero(&self) -> Self {
        Gaussian::from_ints(0, 0)
    }
    fn one(&self) -> Self {
        Gaussian::from_ints(1, 0)
    }
    fn int(&self, n: i64) -> Self {
        Gaussian::from_ints(n, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Gaussian { re: &self.re / &n, im: -(&self.im / &n) })
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        // (x + yi)^2 = re + im*i  =>  x^2 = (re + |z|)/2, y^2 = (|z| - re)/2
        let modulus = rational_exact_sqrt(&self.norm())?;
        let two = BigRational::from_integer(2.into());
        let x = rational_exact_sqrt(&((&self.re + &modulus) / &two))?;
        let mut y = rational_exact_sqrt(&((&modulus - &self.re) / &two))?;
        if (&x * &y * &two) != self.im {
            y = -y;
        }
        let root = Gaussian { re: x, im: y };
        (root.clone() * root.clone() == *self).then_some(root)
    }
    fn imag_unit(&self) -> Option<Self> {
        Some(Gaussian::i())
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Self {
        Gaussian { re: small_rational(rng), im: small_rational(rng) }
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// A validated odd prime modulus below 2^61.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..(1 << 61)).contains(&p) || !is_prime_u64(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> Fp {
        let p = self.p as i128;
        let v = ((n as i128 % p) + p) % p;
        Fp { v: v as u64, p: self.p }
    }

    /// Reduces a rational `num/den`, `None` when `den` vanishes mod p.
    pub fn from_rational(&self, r: &Rational) -> Option<Fp> {
        let p = BigInt::from(self.p);
        let reduce = |x: &BigInt| -> u64 {
            let m = ((x % &p) + &p) % &p;
            use num_traits::ToPrimitive;
            m.to_u64().unwrap_or(0)
        };
        let num = Fp { v: reduce(r.0.numer()), p: self.p };
        let den = Fp { v: reduce(r.0.denom()), p: self.p };
        den.inv().map(|d| num * d)
    }
}

/// Residue modulo the prime carried alongside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, e: u64) -> Fp {
        Fp { v: pow_mod(self.v, e, self.p), p: self.p }
    }

    fn legendre(&self) -> u64 {
        self.pow((self.p - 1) / 2).v
    }

    /// Tonelli-Shanks; returns the smaller of the two roots.
    fn tonelli_shanks(&self) -> Option<Fp> {
        let p = self.p;
        if self.v == 0 {
            return Some(*self);
        }
        if self.legendre() != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2u64;
        while (Fp { v: z, p }).legendre() != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(self.v, q, p);
        let mut r = pow_mod(self.v, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0u32;
            let mut tt = t;
            while tt != 1 {
                tt = mul_mod(tt, tt, p);
                i += 1;
            }
            let b = pow_mod(c, 1u64 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        Some(Fp { v: r.min(p - r), p })
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.v + rhs.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
}
impl Sub for Fp {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let v = if self.v >= rhs.v { self.v - rhs.v } else { self.v + self.p - rhs.v };
        Fp { v, p: self.p }
    }
}
impl Mul for Fp {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { v: mul_mod(self.v, rhs.v, self.p), p: self.p }
    }
}
impl Neg for Fp {
    type Output = Self;
    fn neg(self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

impl Field for Fp {
    const EXACT: bool = true;

    fn zero(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn int(&self, n: i64) -> Self {
        PrimeField { p: self.p }.elem(n)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn inv(&self) -> Option<Self> {
        (self.v != 0).then(|| self.pow(self.p - 2))
    }
    fn sqrt(&self) -> Option<Self> {
        self.tonelli_shanks()
    }
    fn imag_unit(&self) -> Option<Self> {
        (-self.one()).sqrt()
    }
    fn magnitude(&self) -> f64 {
        if self.v == 0 {
            0.0
        } else {
            1.0
        }
    }
    fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Self {
        Fp { v: rng.gen_range(0..self.p), p: self.p }
    }
}

// ---------------------------------------------------------------------------
// Complex floats

/// Double precision complex number.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct C64(pub Complex64);

impl C64 {
    pub const fn new(re: f64, im: f64) -> Self {
        C64(Complex64::new(re, im))
    }

    pub const fn real(re: f64) -> Self {
        C64(Complex64::new(re, 0.0))
    }

    pub const I: C64 = C64::new(0.0, 1.0);

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn conj(&self) -> Self {
        C64(self.0.conj())
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

impl From<Complex64> for C64 {
    fn from(z: Complex64) -> Self {
        C64(z)
    }
}

impl fmt::Display for C64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.0.re, self.0.im)
    }
}

impl Add for C64 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        C64(self.0 + rhs.0)
    }
}
impl Sub for C64 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        C64(self.0 - rhs.0)
    }
}
impl Mul for C64 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        C64(self.0 * rhs.0)
    }
}
impl core::ops::Div for C64 {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        C64(self.0 / rhs.0)
    }
}
impl Neg for C64 {
    type Output = Self;
    fn neg(self) -> Self {
        C64(-self.0)
    }
}

impl Field for C64 {
    const EXACT: bool = false;

    fn zero(&self) -> Self {
        C64::real(0.0)
    }
    fn one(&self) -> Self {
        C64::real(1.0)
    }
    fn int(&self, n: i64) -> Self {
        C64::real(n as f64)
    }
    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| C64(self.0.inv()))
    }
    fn sqrt(&self) -> Option<Self> {
        Some(C64(self.0.sqrt()))
    }
    fn imag_unit(&self) -> Option<Self> {
        Some(C64::I)
    }
    fn magnitude(&self) -> f64 {
        self.0.norm()
    }
    fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Self {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }
}

/// Human-readable serialization used in reports: `"n/d"` for rationals,
/// `[re, im]` for complex values, the residue for prime fields.
pub fn render<F: Field>(x: &F) -> String {
    alloc::format!("{x}")
}

#[cfg(feature = "serde")]
mod serde_impls {
    use super::{Fp, Gaussian, Rational, C64};
    use alloc::string::ToString;
    use serde::ser::{Serialize, SerializeTuple, Serializer};

    impl Serialize for C64 {
        fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
            let mut t = s.serialize_tuple(2)?;
            t.serialize_element(&self.re())?;
            t.serialize_element(&self.im())?;
            t.end()
        }
    }

    impl Serialize for Rational {
        fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
            s.serialize_str(&self.to_string())
        }
    }

    impl Serialize for Gaussian {
        fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
            s.serialize_str(&self.to_string())
        }
    }

    impl Serialize for Fp {
        fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
            s.serialize_u64(self.value())
        }
    }
}
