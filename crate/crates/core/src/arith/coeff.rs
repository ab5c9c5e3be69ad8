//! The coefficient field `Q(i)(r)` with `r^2 = q`.
//!
//! Every non-archimedean quantity (Satake parameters, character values at
//! uniformizers, the Hecke eigenvalue `sqrt(q)(a1 + a2)`, volumes) lives here.
//! An element is `(a + b i) + (c + d i) r`.
//!
//! The residue cardinality `q` is carried as a tag on each element rather than
//! threaded through every call. Elements without an `r` part are tagged `0` and
//! combine freely with anything; mixing two different nonzero tags is a logic
//! error and panics. When `q` is a perfect square, `r` is rational and
//! [`CoeffElem::sqrt_q`] returns it as such, so the algebra stays a field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Element `(a + b i) + (c + d i) r` of `Q(i)(r)`, `r^2 = q`.
///
/// Stored as four integer numerators over one positive denominator, kept in
/// lowest terms, so equality is structural and each operation pays for a
/// single gcd pass.
#[derive(Clone, Debug)]
pub struct CoeffElem {
    num: [BigInt; 4],
    den: BigInt,
    q: u64,
}

fn join_q(q1: u64, q2: u64) -> u64 {
    match (q1, q2) {
        (0, q) | (q, 0) => q,
        (a, b) if a == b => a,
        (a, b) => panic!("mixing coefficient fields with q = {a} and q = {b}"),
    }
}

/// `(x0 + x1 i)(y0 + y1 i)`.
fn gmul(x0: &BigInt, x1: &BigInt, y0: &BigInt, y1: &BigInt) -> (BigInt, BigInt) {
    (x0 * y0 - x1 * y1, x0 * y1 + x1 * y0)
}

impl CoeffElem {
    /// Reduces to lowest terms; `den` must be nonzero.
    fn from_raw(mut num: [BigInt; 4], mut den: BigInt, q: u64) -> Self {
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|x| *x = -&*x);
        }
        if num.iter().all(Zero::is_zero) {
            return CoeffElem {
                num,
                den: BigInt::one(),
                q: 0,
            };
        }
        let mut g = den.clone();
        for x in &num {
            if g.is_one() {
                break;
            }
            if !x.is_zero() {
                g = g.gcd(x);
            }
        }
        if !g.is_one() {
            num.iter_mut().for_each(|x| *x = &*x / &g);
            den = &den / &g;
        }
        let q = if num[2].is_zero() && num[3].is_zero() {
            0
        } else {
            q
        };
        debug_assert!(
            q != 0 || (num[2].is_zero() && num[3].is_zero()),
            "r part without a residue field"
        );
        CoeffElem { num, den, q }
    }

    /// `(a + b i) + (c + d i) r` in the field with `r^2 = q`.
    ///
    /// A perfect-square `q` folds the `r` part into the rational part.
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational, q: u64) -> Self {
        let parts = [a, b, c, d];
        let den = parts.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let mut num = parts.map(|x| x.numer() * (&den / x.denom()));
        if num[2].is_zero() && num[3].is_zero() {
            return Self::from_raw(num, den, 0);
        }
        assert!(q >= 1, "an r part needs q >= 1");
        match exact_sqrt(q) {
            Some(root) => {
                let root = BigInt::from(root);
                let [n0, n1, n2, n3] = &mut num;
                *n0 += &*n2 * &root;
                *n1 += &*n3 * &root;
                *n2 = BigInt::zero();
                *n3 = BigInt::zero();
                Self::from_raw(num, den, 0)
            }
            None => Self::from_raw(num, den, q),
        }
    }

    pub fn rational(x: Rational) -> Self {
        Self::gaussian(x, Rational::zero())
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rat_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(rat(n, d))
    }

    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Self::new(re, im, Rational::zero(), Rational::zero(), 0)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::gaussian(Rational::zero(), Rational::one())
    }

    /// `r = sqrt(q)`.
    pub fn sqrt_q(q: u64) -> Self {
        Self::new(
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            q,
        )
    }

    fn part(&self, k: usize) -> Rational {
        Rational::new_raw(self.num[k].clone(), self.den.clone()).reduced()
    }

    pub fn a(&self) -> Rational {
        self.part(0)
    }
    pub fn b(&self) -> Rational {
        self.part(1)
    }
    pub fn c(&self) -> Rational {
        self.part(2)
    }
    pub fn d(&self) -> Rational {
        self.part(3)
    }

    /// Residue cardinality tag; `0` when the element has no `r` part.
    pub fn q_tag(&self) -> u64 {
        self.q
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let num = self.num.clone().map(|x| x * k.numer());
        Self::from_raw(num, &self.den * k.denom(), self.q)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // With x, y the Gaussian numerators of the two parts:
        // (x + y r)^-1 = den (x - y r) conj(m) / |m|^2, m = x^2 - q y^2
        let [x0, x1, y0, y1] = &self.num;
        let qi = BigInt::from(self.q);
        let (xx0, xx1) = gmul(x0, x1, x0, x1);
        let (yy0, yy1) = gmul(y0, y1, y0, y1);
        let (m0, m1) = (xx0 - &qi * yy0, xx1 - &qi * yy1);
        let norm = &m0 * &m0 + &m1 * &m1;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (c0, c1) = (&m0 * &self.den, -(&m1 * &self.den));
        let (b0, b1) = gmul(x0, x1, &c0, &c1);
        let (s0, s1) = gmul(&-y0, &-y1, &c0, &c1);
        Ok(Self::from_raw([b0, b1, s0, s1], norm, self.q))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = CoeffElem::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        Ok(acc)
    }

    /// Complex conjugation `i -> -i`, fixing `r`.
    pub fn conj_i(&self) -> Self {
        let [a, b, c, d] = &self.num;
        CoeffElem {
            num: [a.clone(), -b, c.clone(), -d],
            den: self.den.clone(),
            q: self.q,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let f = |k: usize| {
            Rational::new_raw(self.num[k].clone(), self.den.clone())
                .to_f64()
                .unwrap_or(f64::NAN)
        };
        let root = (self.q as f64).sqrt();
        Complex64::new(f(0) + f(2) * root, f(1) + f(3) * root)
    }

    fn combine(&self, o: &Self, sign: i8) -> Self {
        let q = join_q(self.q, o.q);
        if self.den == o.den {
            let num = std::array::from_fn(|k| match sign {
                1 => &self.num[k] + &o.num[k],
                _ => &self.num[k] - &o.num[k],
            });
            return Self::from_raw(num, self.den.clone(), q);
        }
        let num = std::array::from_fn(|k| {
            let (x, y) = (&self.num[k] * &o.den, &o.num[k] * &self.den);
            if sign == 1 {
                x + y
            } else {
                x - y
            }
        });
        Self::from_raw(num, &self.den * &o.den, q)
    }
}

fn exact_sqrt(q: u64) -> Option<u64> {
    let s = q.sqrt();
    (s * s == q).then_some(s)
}

impl PartialEq for CoeffElem {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den && (self.q == 0 || self.q == other.q)
    }
}

impl Eq for CoeffElem {}

impl Zero for CoeffElem {
    fn zero() -> Self {
        CoeffElem {
            num: Default::default(),
            den: BigInt::one(),
            q: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
}

impl One for CoeffElem {
    fn one() -> Self {
        Self::int(1)
    }
}

impl<'a> Add<&'a CoeffElem> for &'a CoeffElem {
    type Output = CoeffElem;
    fn add(self, o: &CoeffElem) -> CoeffElem {
        self.combine(o, 1)
    }
}

impl<'a> Sub<&'a CoeffElem> for &'a CoeffElem {
    type Output = CoeffElem;
    fn sub(self, o: &CoeffElem) -> CoeffElem {
        self.combine(o, -1)
    }
}

impl<'a> Mul<&'a CoeffElem> for &'a CoeffElem {
    type Output = CoeffElem;
    fn mul(self, o: &CoeffElem) -> CoeffElem {
        let q = join_q(self.q, o.q);
        let [a0, a1, b0, b1] = &self.num;
        let [c0, c1, d0, d1] = &o.num;
        // (A + B r)(C + D r) = (AC + q BD) + (AD + BC) r
        let (ac0, ac1) = gmul(a0, a1, c0, c1);
        let (mut base0, mut base1) = (ac0, ac1);
        if q != 0 && !(b0.is_zero() && b1.is_zero()) && !(d0.is_zero() && d1.is_zero()) {
            let (bd0, bd1) = gmul(b0, b1, d0, d1);
            let qi = BigInt::from(q);
            base0 += &qi * bd0;
            base1 += &qi * bd1;
        }
        let (ad0, ad1) = gmul(a0, a1, d0, d1);
        let (bc0, bc1) = gmul(b0, b1, c0, c1);
        CoeffElem::from_raw([base0, base1, ad0 + bc0, ad1 + bc1], &self.den * &o.den, q)
    }
}

impl<'a> Div<&'a CoeffElem> for &'a CoeffElem {
    type Output = CoeffElem;
    /// Panics on a zero divisor; use [`CoeffElem::checked_div`] for a `Result`.
    fn div(self, o: &CoeffElem) -> CoeffElem {
        self.checked_div(o).expect("division by zero coefficient")
    }
}

impl Neg for &CoeffElem {
    type Output = CoeffElem;
    fn neg(self) -> CoeffElem {
        CoeffElem {
            num: self.num.clone().map(|x| -x),
            den: self.den.clone(),
            q: self.q,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<CoeffElem> for CoeffElem {
            type Output = CoeffElem;
            fn $m(self, o: CoeffElem) -> CoeffElem { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a CoeffElem> for CoeffElem {
            type Output = CoeffElem;
            fn $m(self, o: &CoeffElem) -> CoeffElem { (&self).$m(o) }
        }
        impl<'a> $tr<CoeffElem> for &'a CoeffElem {
            type Output = CoeffElem;
            fn $m(self, o: CoeffElem) -> CoeffElem { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for CoeffElem {
    type Output = CoeffElem;
    fn neg(self) -> CoeffElem {
        -&self
    }
}

fn fmt_gauss(re: &Rational, im: &Rational) -> String {
    match (re.is_zero(), im.is_zero()) {
        (_, true) => format!("{re}"),
        (true, false) => format!("{im}i"),
        (false, false) => {
            let sign = if im.is_negative() { "-" } else { "+" };
            format!("{re} {sign} {}i", im.abs())
        }
    }
}

impl fmt::Display for CoeffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c, d) = (self.a(), self.b(), self.c(), self.d());
        if c.is_zero() && d.is_zero() {
            return write!(f, "{}", fmt_gauss(&a, &b));
        }
        let surd = if d.is_zero() {
            format!("{c}*r")
        } else {
            format!("({})*r", fmt_gauss(&c, &d))
        };
        if a.is_zero() && b.is_zero() {
            write!(f, "{surd}")
        } else {
            write!(f, "{} + {surd}", fmt_gauss(&a, &b))
        }
    }
}

/// Wire form `{ "a": "p/q", "b": ..., "c": ..., "d": ... }`.
///
/// Decoding needs the ambient `q`, so it goes through [`CoeffJson::to_elem`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    #[serde(default = "zero_str")]
    pub a: String,
    #[serde(default = "zero_str")]
    pub b: String,
    #[serde(default = "zero_str")]
    pub c: String,
    #[serde(default = "zero_str")]
    pub d: String,
}

fn zero_str() -> String {
    "0".to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl CoeffJson {
    pub fn to_elem(&self, q: u64) -> Result<CoeffElem> {
        let c = parse_rational(&self.c)?;
        let d = parse_rational(&self.d)?;
        if (!c.is_zero() || !d.is_zero()) && q == 0 {
            return Err(Error::InvalidInput("r part given without q".into()));
        }
        Ok(CoeffElem::new(
            parse_rational(&self.a)?,
            parse_rational(&self.b)?,
            c,
            d,
            q,
        ))
    }
}

impl From<&CoeffElem> for CoeffJson {
    fn from(x: &CoeffElem) -> Self {
        CoeffJson {
            a: x.a().to_string(),
            b: x.b().to_string(),
            c: x.c().to_string(),
            d: x.d().to_string(),
        }
    }
}

impl Serialize for CoeffElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoeffJson::from(self).serialize(s)
    }
}
