//! Dense univariate polynomials in `X` over [`CoeffElem`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::coeff::CoeffElem;
use crate::error::{Error, Result};

/// Coefficients in ascending degree with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<CoeffElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<CoeffElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(CoeffElem::one())
    }

    pub fn constant(c: CoeffElem) -> Self {
        Self::new(vec![c])
    }

    /// `c X^k`.
    pub fn monomial(c: CoeffElem, k: usize) -> Self {
        let mut v = vec![CoeffElem::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// `X`.
    pub fn x() -> Self {
        Self::monomial(CoeffElem::one(), 1)
    }

    /// `1 - c X^k`, the shape of every local Euler factor.
    pub fn one_minus(c: &CoeffElem, k: usize) -> Self {
        &Self::one() - &Self::monomial(c.clone(), k)
    }

    pub fn coeffs(&self) -> &[CoeffElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> CoeffElem {
        self.coeffs.get(k).cloned().unwrap_or_else(CoeffElem::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&CoeffElem> {
        self.coeffs.last()
    }

    /// Largest `k` with `X^k` dividing `self`; `None` for zero.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &CoeffElem) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![CoeffElem::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Drops the factor `X^k`; the low coefficients must be zero.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dlc_inv = divisor.leading().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![CoeffElem::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &dlc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn eval(&self, x: &CoeffElem) -> CoeffElem {
        self.coeffs
            .iter()
            .rev()
            .fold(CoeffElem::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * x + c.to_complex())
    }

    /// `p(c X^k)`.
    pub fn subst_monomial(&self, c: &CoeffElem, k: usize) -> Self {
        let mut out = vec![CoeffElem::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        let mut pow = CoeffElem::one();
        for (j, a) in self.coeffs.iter().enumerate() {
            out[j * k] = &out[j * k] + &(a * &pow);
            pow = &pow * c;
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![CoeffElem::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})X"),
                _ => format!("({c})X^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        Poly::new(v.iter().map(|&n| CoeffElem::int(n)).collect())
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn div_rem_exact() {
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[2, 2]) * &p(&[3, 1]);
        let b = &p(&[1, 1]) * &p(&[5, 0, 1]);
        assert_eq!(Poly::gcd(&a, &b), p(&[1, 1]));
    }

    #[test]
    fn subst_monomial_doubles_degree() {
        // 1 + X  at 3X^2
        assert_eq!(
            p(&[1, 1]).subst_monomial(&CoeffElem::int(3), 2),
            p(&[1, 0, 3])
        );
    }

    #[test]
    fn division_by_zero_poly() {
        assert!(p(&[1]).div_rem(&Poly::zero()).is_err());
    }
}
