//! Reduced rational functions in `X = q^{-s}`.
//!
//! Factors such as `q^{s+1/2} = r X^{-1}` are ordinary elements here: negative
//! powers of `X` sit in the denominator of the reduced form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::coeff::{CoeffElem, CoeffJson};
use super::poly::Poly;
use super::series::PowerSeries;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Reduce `n / d` to the gcd-free representative with monic denominator.
pub fn ratfunc_reduce(n: Poly, d: Poly) -> Result<RatFunc> {
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if n.is_zero() {
        return Ok(RatFunc::zero());
    }
    let g = Poly::gcd(&n, &d);
    let (n, _) = n.div_rem(&g)?;
    let (d, _) = d.div_rem(&g)?;
    let lc_inv = d.leading().expect("nonzero").inv()?;
    Ok(RatFunc {
        num: n.scale(&lc_inv),
        den: d.scale(&lc_inv),
    })
}

impl RatFunc {
    pub fn new(n: Poly, d: Poly) -> Result<Self> {
        ratfunc_reduce(n, d)
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(CoeffElem::one())
    }

    pub fn constant(c: CoeffElem) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// `c X^k` for any integer `k`.
    pub fn monomial(c: CoeffElem, k: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if k >= 0 {
            Self::from_poly(Poly::monomial(c, k as usize))
        } else {
            RatFunc {
                num: Poly::constant(c),
                den: Poly::monomial(CoeffElem::one(), k.unsigned_abs() as usize),
            }
        }
    }

    /// `1 / (1 - c X^k)`.
    pub fn geometric(c: &CoeffElem, k: usize) -> Self {
        Self::new(Poly::one(), Poly::one_minus(c, k)).expect("1 - cX^k is nonzero")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn scale(&self, c: &CoeffElem) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("denominator unchanged")
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok((0..e.unsigned_abs()).fold(Self::one(), |acc, _| &acc * &base))
    }

    /// `f(c X^k)`, the argument substitution used for shifted L-factors.
    pub fn subst_monomial(&self, c: &CoeffElem, k: usize) -> Result<Self> {
        if c.is_zero() || k == 0 {
            return invalid_subst();
        }
        Self::new(self.num.subst_monomial(c, k), self.den.subst_monomial(c, k))
    }

    pub fn eval(&self, x: &CoeffElem) -> Result<CoeffElem> {
        self.num.eval(x).checked_div(&self.den.eval(x))
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.num.eval_complex(x) / self.den.eval_complex(x)
    }

    /// Laurent expansion at `X = 0`: returns `(v, g)` with
    /// `self = X^v * g(X)` and `g` truncated at order `order`.
    pub fn laurent_expand(&self, order: usize) -> Result<(i32, PowerSeries)> {
        let dv = self.den.x_valuation().expect("denominator nonzero");
        let reduced = RatFunc {
            num: self.num.clone(),
            den: self.den.unshift(dv),
        };
        Ok((-(dv as i32), series_expand(&reduced, order)?))
    }
}

fn invalid_subst<T>() -> Result<T> {
    Err(Error::InvalidInput(
        "substitution X -> cX^k needs c != 0 and k >= 1".into(),
    ))
}

/// Power-series expansion at `X = 0` truncated after `X^order`.
pub fn series_expand(f: &RatFunc, order: usize) -> Result<PowerSeries> {
    let d0 = f.den.coeff(0);
    if d0.is_zero() {
        return Err(Error::PoleAtZero);
    }
    let d0_inv = d0.inv()?;
    let mut g: Vec<CoeffElem> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = f.num.coeff(n);
        let top = n.min(f.den.coeffs().len().saturating_sub(1));
        for k in 1..=top {
            acc = &acc - &(&f.den.coeffs()[k] * &g[n - k]);
        }
        g.push(&acc * &d0_inv);
    }
    Ok(PowerSeries::new(g))
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .expect("product of nonzero denominators")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
            .expect("product of nonzero denominators")
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on a zero divisor; see [`RatFunc::checked_div`].
    fn div(self, o: &RatFunc) -> RatFunc {
        self.checked_div(o)
            .expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}

/// Wire form `{ "num": [coeff...], "den": [coeff...] }`, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: Vec<CoeffJson>,
    pub den: Vec<CoeffJson>,
}

impl From<&RatFunc> for RatFuncJson {
    fn from(f: &RatFunc) -> Self {
        let enc = |p: &Poly| p.coeffs().iter().map(CoeffJson::from).collect();
        RatFuncJson {
            num: enc(&f.num),
            den: enc(&f.den),
        }
    }
}

impl RatFuncJson {
    pub fn to_ratfunc(&self, q: u64) -> Result<RatFunc> {
        let dec = |v: &[CoeffJson]| -> Result<Poly> {
            Ok(Poly::new(
                v.iter().map(|c| c.to_elem(q)).collect::<Result<_>>()?,
            ))
        };
        RatFunc::new(dec(&self.num)?, dec(&self.den)?)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncJson::from(self).serialize(s)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::coeff::rat;

    fn p(v: &[i64]) -> Poly {
        Poly::new(v.iter().map(|&n| CoeffElem::int(n)).collect())
    }

    #[test]
    fn reduce_cancels_common_factor() {
        let f = ratfunc_reduce(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(f.num(), &p(&[1, 1]));
        assert_eq!(f.den(), &p(&[1]));
    }

    #[test]
    fn reduce_zero_numerator() {
        let f = ratfunc_reduce(Poly::zero(), p(&[2, 7])).unwrap();
        assert!(f.num().is_zero());
        assert_eq!(f.den(), &p(&[1]));
    }

    #[test]
    fn reduce_normalizes_scalar_denominator() {
        let f = ratfunc_reduce(p(&[0, 2]), p(&[4])).unwrap();
        assert_eq!(f.num(), &Poly::monomial(CoeffElem::rational(rat(1, 2)), 1));
        assert_eq!(f.den(), &Poly::one());
    }

    #[test]
    fn reduce_rejects_zero_denominator() {
        assert_eq!(
            ratfunc_reduce(p(&[1]), Poly::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn geometric_series() {
        let s = series_expand(&RatFunc::geometric(&CoeffElem::one(), 1), 3).unwrap();
        assert_eq!(s.coeffs(), vec![CoeffElem::one(); 4].as_slice());
    }

    #[test]
    fn truncation_drops_high_terms() {
        let s = series_expand(&RatFunc::from_poly(p(&[0, 0, 1])), 1).unwrap();
        assert!(s.coeffs().iter().all(|c| c.is_zero()));
        assert_eq!(s.order(), 1);
    }

    #[test]
    fn pole_at_zero_is_rejected() {
        let f = RatFunc::monomial(CoeffElem::one(), -1);
        assert_eq!(series_expand(&f, 3), Err(Error::PoleAtZero));
        let (v, g) = f.laurent_expand(3).unwrap();
        assert_eq!(v, -1);
        assert_eq!(g.coeffs()[0], CoeffElem::one());
    }

    #[test]
    fn spherical_shape_expansion() {
        // (q - k x)/(w x^2 - l x + q), q=3, w=1, l=2r, k=r/2
        let r = CoeffElem::sqrt_q(3);
        let kappa = r.scale(&rat(1, 2));
        let num = Poly::new(vec![CoeffElem::int(3), -&kappa]);
        let den = Poly::new(vec![
            CoeffElem::int(3),
            -(r.scale(&rat(2, 1))),
            CoeffElem::one(),
        ]);
        let s = series_expand(&RatFunc::new(num, den).unwrap(), 1).unwrap();
        assert_eq!(s.coeffs(), &[CoeffElem::one(), kappa]);
    }

    #[test]
    fn json_shape() {
        let f = RatFunc::geometric(&CoeffElem::int(2), 1);
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v["den"][0]["a"], "-1/2");
        assert_eq!(v["den"][1]["a"], "1");
        let back: RatFuncJson = serde_json::from_value(v).unwrap();
        assert_eq!(back.to_ratfunc(0).unwrap(), f);
    }
}
