use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::coeff::CoeffElem;
use super::poly::Poly;

/// Power series in `X` truncated after `X^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<CoeffElem>,
}

impl PowerSeries {
    /// The order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<CoeffElem>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least X^0");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![CoeffElem::zero(); order + 1])
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        Self::new((0..=order).map(|k| p.coeff(k)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CoeffElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &CoeffElem {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order + 1).cloned().collect())
    }

    /// `X^k * self`, keeping the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        Self::new(
            (0..=n)
                .map(|j| {
                    if j < k {
                        CoeffElem::zero()
                    } else {
                        self.coeffs[j - k].clone()
                    }
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &CoeffElem) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Index of the first coefficient that differs, if any.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }
}

fn common(a: &PowerSeries, b: &PowerSeries) -> usize {
    a.order().min(b.order())
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, o: &PowerSeries) -> PowerSeries {
        PowerSeries::new(
            (0..=common(self, o))
                .map(|k| &self.coeffs[k] + &o.coeffs[k])
                .collect(),
        )
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, o: &PowerSeries) -> PowerSeries {
        PowerSeries::new(
            (0..=common(self, o))
                .map(|k| &self.coeffs[k] - &o.coeffs[k])
                .collect(),
        )
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, o: &PowerSeries) -> PowerSeries {
        let n = common(self, o);
        let mut out = vec![CoeffElem::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                out[i + j] = &out[i + j] + &(&self.coeffs[i] * &o.coeffs[j]);
            }
        }
        PowerSeries::new(out)
    }
}
