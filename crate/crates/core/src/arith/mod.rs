//! Exact arithmetic: rationals, `Q(i)(r)`, polynomials, rational functions in
//! `X = q^{-s}`, and truncated power series.

pub mod coeff;
pub mod poly;
pub mod ratfunc;
pub mod series;

pub use coeff::{parse_rational, rat, rat_int, CoeffElem, CoeffJson, Rational};
pub use poly::Poly;
pub use ratfunc::{ratfunc_reduce, series_expand, RatFunc, RatFuncJson};
pub use series::PowerSeries;

/// Archimedean quantities are double-precision complex numbers.
pub type ComplexNum = num_complex::Complex64;

/// Default truncation order for series comparisons.
pub const DEFAULT_ORDER: usize = 50;

/// `q^{h/2}` as an element of `Q(i)(r)`.
pub fn q_half_power(q: u64, h: i32) -> CoeffElem {
    let whole = CoeffElem::int(q as i64)
        .pow((h.div_euclid(2)) as i64)
        .expect("q >= 1");
    if h.rem_euclid(2) == 1 {
        &whole * &CoeffElem::sqrt_q(q)
    } else {
        whole
    }
}
