//! Non-archimedean zeta integrals as exact rational functions in `X = q^{-s}`.
//!
//! Each integral comes with a coset-sum evaluation built from volumes, section
//! values and Waldspurger values; the closed forms are checked against it.
//!
//! L-factors are built in their own variable `Y = q^{-s'}` and moved to the
//! argument `s' = k s + h/2` by [`at_shifted_argument`], which substitutes
//! `Y = q^{-h/2} X^k`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{q_half_power, rat, CoeffElem, Poly, PowerSeries, RatFunc, Rational};
use crate::error::{invalid, Error, Result};
use crate::local_data::{
    central_compat_check, waldspurger_exists, CharValues, CosetLabel, InducedPair, Legendre,
    LocalField, LocalSetup, RepData, TorusChar,
};
use crate::waldspurger::{spherical_generating_series, steinberg_table, WaldspurgerTable};

/// Volumes of `T(F) \ T(F) g K'` for the representatives at index `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeTable {
    pub m: u32,
    /// `V_m` for `K`.
    pub k: Rational,
    /// `V_{I,m}`, defined for `m >= 1`.
    pub iwahori: Option<Rational>,
    pub w_iwahori: Rational,
    /// `V_{u0 I,0}`: ramified, `m = 0`.
    pub u0: Option<Rational>,
    /// `V_{u1 I,0} = V_{u2 I,0}`: split, `m = 0`.
    pub u_split: Option<Rational>,
}

impl VolumeTable {
    pub fn get(&self, label: CosetLabel) -> Result<Rational> {
        let missing = || Error::InvalidInput(format!("no volume for {label} at m = {}", self.m));
        match label {
            CosetLabel::DiagPower(_) => self.iwahori.clone().ok_or_else(missing),
            CosetLabel::DiagPowerW(_) | CosetLabel::W => Ok(self.w_iwahori.clone()),
            CosetLabel::U0 => self.u0.clone().ok_or_else(missing),
            CosetLabel::U1 | CosetLabel::U2 => self.u_split.clone().ok_or_else(missing),
        }
    }
}

pub fn volumes(field: &LocalField, m: u32) -> VolumeTable {
    let q = Rational::from_integer(field.q().into());
    let eps = Rational::from_integer(field.legendre().symbol().into());
    let unit = Rational::one() - &eps / &q;
    let qm = q.pow(m as i32);
    let q1 = &q + Rational::one();
    let k = if m == 0 { Rational::one() } else { &unit * &qm };
    let w_iwahori = &unit * &qm * &q / &q1;
    let iwahori = (m >= 1).then(|| &unit * &qm / &q1);
    let at_zero = |l: Legendre| (m == 0 && field.legendre() == l).then(|| Rational::one() / &q1);
    VolumeTable {
        m,
        k,
        iwahori,
        w_iwahori,
        u0: at_zero(Legendre::Ramified),
        u_split: at_zero(Legendre::Split),
    }
}

/// Moves an L-factor in `Y = q^{-s'}` to `s' = k s + h/2`.
pub fn at_shifted_argument(f: &RatFunc, q: u64, k: usize, h: i32) -> Result<RatFunc> {
    f.subst_monomial(&q_half_power(q, -h), k)
}

/// `L(s', ratio)` in `Y = q^{-s'}`; 1 when the character is ramified.
pub fn hecke_l_factor(field: &LocalField, ratio: &TorusChar) -> Result<RatFunc> {
    ratio.expect_legendre(field.legendre(), "the character")?;
    if ratio.conductor() > 0 {
        return Ok(RatFunc::one());
    }
    Ok(match ratio.values() {
        CharValues::Inert { w } => RatFunc::geometric(w, 2),
        CharValues::Ramified { w_l, .. } => RatFunc::geometric(w_l, 1),
        CharValues::Split { w1, w2 } => &RatFunc::geometric(w1, 1) * &RatFunc::geometric(w2, 1),
    })
}

/// `L(s', pi x twist)` in `Y = q^{-s'}`, `twist` an unramified character of `F^x`.
pub fn pi_l_factor(rep: &RepData, twist: &CoeffElem, q: u64) -> Result<RatFunc> {
    if twist.is_zero() {
        return invalid("twist value must be nonzero");
    }
    Ok(match rep {
        RepData::UnramifiedPS { alpha1, alpha2 } => {
            &RatFunc::geometric(&(alpha1 * twist), 1) * &RatFunc::geometric(&(alpha2 * twist), 1)
        }
        RepData::SteinbergTwist { chi } => {
            RatFunc::geometric(&(&(chi * twist) * &q_half_power(q, -1)), 1)
        }
    })
}

/// `Z = (l_num / l_den) * y_factor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalZetaResult {
    pub closed_form: RatFunc,
    pub l_num: RatFunc,
    pub l_den: RatFunc,
    pub y_factor: RatFunc,
}

impl LocalZetaResult {
    fn assemble(l_num: RatFunc, l_den: RatFunc, y_factor: RatFunc) -> Result<Self> {
        let closed_form = &l_num.checked_div(&l_den)? * &y_factor;
        Ok(LocalZetaResult {
            closed_form,
            l_num,
            l_den,
            y_factor,
        })
    }

    /// `closed_form * l_den / l_num == y_factor`.
    pub fn is_consistent(&self) -> bool {
        match (&self.closed_form * &self.l_den).checked_div(&self.l_num) {
            Ok(y) => y == self.y_factor,
            Err(_) => false,
        }
    }
}

/// Truncated Laurent series `X^val * series`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub val: i32,
    pub series: PowerSeries,
}

impl Laurent {
    pub fn of(f: &RatFunc, order: usize) -> Result<Self> {
        let (val, series) = f.laurent_expand(order)?;
        Ok(Laurent { val, series })
    }

    /// Coefficient of `X^e`, `None` past the truncation.
    pub fn coeff(&self, e: i32) -> Option<CoeffElem> {
        if e < self.val {
            return Some(CoeffElem::zero());
        }
        let k = (e - self.val) as usize;
        (k <= self.series.order()).then(|| self.series.coeff(k).clone())
    }

    /// Highest exponent still known.
    pub fn top(&self) -> i32 {
        self.val + self.series.order() as i32
    }

    /// Exponents where both are known and differ.
    pub fn first_mismatch(&self, other: &Laurent) -> Option<i32> {
        let lo = self.val.min(other.val);
        let hi = self.top().min(other.top());
        (lo..=hi).find(|&e| self.coeff(e) != other.coeff(e))
    }
}

/// Accumulates monomials `c X^e` for `e` in `val ..= val + order`.
struct LaurentAcc {
    val: i32,
    coeffs: Vec<CoeffElem>,
}

impl LaurentAcc {
    fn new(val: i32, order: usize) -> Self {
        LaurentAcc {
            val,
            coeffs: vec![CoeffElem::zero(); order + 1],
        }
    }

    fn add(&mut self, c: &CoeffElem, e: i32) {
        let k = e - self.val;
        assert!(k >= 0, "monomial below the accumulator's valuation");
        if let Some(slot) = self.coeffs.get_mut(k as usize) {
            *slot = &*slot + c;
        }
    }

    fn finish(self) -> Laurent {
        Laurent {
            val: self.val,
            series: PowerSeries::new(self.coeffs),
        }
    }
}

fn check_pair(
    field: &LocalField,
    rep: &RepData,
    pair: &InducedPair,
    omega: &TorusChar,
) -> Result<()> {
    pair.omega1.expect_legendre(field.legendre(), "omega1")?;
    omega.expect_legendre(field.legendre(), "omega")?;
    if !pair.central_compatible(rep) {
        return invalid("omega1 omega2 must restrict to the inverse central character of pi");
    }
    if !central_compat_check(rep, omega, field) {
        return invalid("omega does not restrict to the central character of pi");
    }
    if !omega.agrees_with(&pair.waldspurger_character()?) {
        return invalid("omega is not the character determined by omega1, omega2");
    }
    Ok(())
}

fn ratio_char(pair: &InducedPair) -> Result<TorusChar> {
    TorusChar::new(pair.omega1.conductor(), pair.ratio_values()?)
}

/// `L(2s+1/2, pi x Omega1|) / L(2s+1, Omega1 Omega2^{-1})` as `(num, den)` in `X`.
pub fn l_ratio(
    field: &LocalField,
    rep: &RepData,
    pair: &InducedPair,
) -> Result<(RatFunc, RatFunc)> {
    let q = field.q();
    let twist = pair.omega1.at_base_uniformizer();
    let num = at_shifted_argument(&pi_l_factor(rep, &twist, q)?, q, 2, 1)?;
    let den = at_shifted_argument(&hecke_l_factor(field, &ratio_char(pair)?)?, q, 2, 2)?;
    Ok((num, den))
}

fn expect_unramified_ps(rep: &RepData) -> Result<()> {
    match rep {
        RepData::UnramifiedPS { .. } => Ok(()),
        RepData::SteinbergTwist { .. } => invalid("expected an unramified principal series"),
    }
}

fn expect_steinberg(rep: &RepData) -> Result<&CoeffElem> {
    match rep {
        RepData::SteinbergTwist { chi } => Ok(chi),
        RepData::UnramifiedPS { .. } => invalid("expected a Steinberg twist"),
    }
}

/// Spherical section against the spherical vector.
pub fn zeta_unramified(
    field: &LocalField,
    rep: &RepData,
    pair: &InducedPair,
    omega: &TorusChar,
) -> Result<LocalZetaResult> {
    expect_unramified_ps(rep)?;
    if !pair.is_unramified() {
        return Err(Error::Scope(
            "unramified integral needs unramified omega1, omega2".into(),
        ));
    }
    check_pair(field, rep, pair, omega)?;
    let (num, den) = l_ratio(field, rep, pair)?;
    LocalZetaResult::assemble(num, den, RatFunc::one())
}

/// `(1 - e/q) R(Omega1(uniformizer) X^2) + e/q`, summed term by term.
pub fn zeta_unramified_direct(
    field: &LocalField,
    rep: &RepData,
    pair: &InducedPair,
    omega: &TorusChar,
    order: usize,
) -> Result<Laurent> {
    expect_unramified_ps(rep)?;
    if !pair.is_unramified() {
        return Err(Error::Scope(
            "unramified integral needs unramified omega1, omega2".into(),
        ));
    }
    check_pair(field, rep, pair, omega)?;
    let r = spherical_generating_series(field, rep, omega)?;
    let a = crate::arith::series_expand(&r.gen, order / 2)?;
    let eps_q = CoeffElem::frac(field.legendre().symbol(), field.q() as i64);
    let w = pair.omega1.at_base_uniformizer();
    let mut acc = LaurentAcc::new(0, order);
    acc.add(&eps_q, 0);
    let scale = &CoeffElem::one() - &eps_q;
    let mut wm = CoeffElem::one();
    for m in 0..=order / 2 {
        acc.add(&(&(&scale * &wm) * a.coeff(m)), 2 * m as i32);
        wm = &wm * &w;
    }
    Ok(acc.finish())
}

fn newform_prefactor(field: &LocalField) -> CoeffElem {
    let q = field.q() as i64;
    CoeffElem::frac(q - field.legendre().symbol(), q + 1)
}

fn check_newform_scope(pair: &InducedPair) -> Result<()> {
    if pair.omega1.conductor() != 1 || pair.omega2.conductor() != 0 {
        return Err(Error::Scope(
            "newform integral needs c(omega1) = 1, c(omega2) = 0".into(),
        ));
    }
    Ok(())
}

/// `chi St` against the newform section of `I(Omega1, Omega2)`, `c(Omega1) = 1`.
pub fn zeta_steinberg_newform(
    field: &LocalField,
    rep: &RepData,
    pair: &InducedPair,
    omega: &TorusChar,
) -> Result<LocalZetaResult> {
    expect_steinberg(rep)?;
    check_newform_scope(pair)?;
    check_pair(field, rep, pair, omega)?;
    if !waldspurger_exists(field, rep, omega)? {
        return Err(Error::NoModel(
            "chi St has no model for this character".into(),
        ));
    }
    let (num, den) = l_ratio(field, rep, pair)?;
    let y = den.scale(&newform_prefactor(field));
    LocalZetaResult::assemble(num, den, y)
}

/// `sum_{m >= 0} V_{wI,m} f(diag(uniformizer^m, 1) w) B0(diag(uniformizer^m, 1) w)`.
pub fn zeta_steinberg_newform_direct(
    field: &LocalField,
    rep: &RepData,
    pair: &InducedPair,
    omega: &TorusChar,
    order: usize,
) -> Result<Laurent> {
    expect_steinberg(rep)?;
    check_newform_scope(pair)?;
    check_pair(field, rep, pair, omega)?;
    let m_max = (order / 2) as u32;
    let table = steinberg_table(field, rep, omega, m_max.max(1))?;
    let q_inv = field.q_elem().inv()?;
    let w1 = pair.omega1.at_base_uniformizer();
    let mut acc = LaurentAcc::new(0, order);
    // section value Omega1(uniformizer)^m q^{-m} X^{2m}
    let mut sec = CoeffElem::one();
    for m in 0..=m_max {
        let label = if m == 0 {
            CosetLabel::W
        } else {
            CosetLabel::DiagPowerW(m)
        };
        let vol = CoeffElem::rational(volumes(field, m).w_iwahori);
        acc.add(&(&(&vol * &sec) * table.value(label)?), 2 * m as i32);
        sec = &(&sec * &w1) * &q_inv;
    }
    Ok(acc.finish())
}

/// Which displayed case of the old-vector integral applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OldVectorCase {
    Ramified,
    /// Split with `Omega(1, uniformizer) = chi(uniformizer)`.
    SplitZeroW,
    SplitUnitW,
}

fn old_vector_setup(
    field: &LocalField,
    rep: &RepData,
    pair: &InducedPair,
    omega: &TorusChar,
    m_max: u32,
) -> Result<(OldVectorCase, WaldspurgerTable)> {
    expect_steinberg(rep)?;
    if !pair.is_unramified() {
        return Err(Error::Scope(
            "old-vector integral needs unramified omega1, omega2".into(),
        ));
    }
    if field.legendre() == Legendre::Inert {
        return Err(Error::NoModel(
            "chi St has no model for unramified omega when L/F is inert".into(),
        ));
    }
    check_pair(field, rep, pair, omega)?;
    let table = steinberg_table(field, rep, omega, m_max)?;
    let case = match (field.legendre(), table.normalized_at_w()) {
        (Legendre::Ramified, _) => OldVectorCase::Ramified,
        (_, false) => OldVectorCase::SplitZeroW,
        _ => OldVectorCase::SplitUnitW,
    };
    Ok((case, table))
}

/// `q^{s+1/2} = r / X`.
fn q_s_half(q: u64) -> RatFunc {
    RatFunc::monomial(CoeffElem::sqrt_q(q), -1)
}

/// `q^{-s-1/2} = X / r`.
fn q_minus_s_half(q: u64) -> RatFunc {
    RatFunc::monomial(q_half_power(q, -1), 1)
}

/// Section values at the `m = 0` cosets for the old vector: `wI`-type cosets
/// see `Omega2(uniformizer_L)^{-1} q^{-s-1/2}`, `I`-type cosets
/// `Omega1(uniformizer_L)^{-1} q^{s+1/2}`.
fn old_vector_sections(field: &LocalField, pair: &InducedPair) -> Result<(RatFunc, RatFunc)> {
    let q = field.q();
    let i_type = q_s_half(q).scale(&pair.omega1.at_l_uniformizer().inv()?);
    let w_type = q_minus_s_half(q).scale(&pair.omega2.at_l_uniformizer().inv()?);
    Ok((i_type, w_type))
}

/// The `T(F) \ T(F) K` part of the old-vector integral, summed over its Iwahori cosets.
pub fn k_integral_old_vector(
    field: &LocalField,
    rep: &RepData,
    pair: &InducedPair,
    omega: &TorusChar,
) -> Result<RatFunc> {
    let (case, table) = old_vector_setup(field, rep, pair, omega, 1)?;
    let (i_type, w_type) = old_vector_sections(field, pair)?;
    let v0 = volumes(field, 0);
    let term = |vol: Rational, sec: &RatFunc, label: CosetLabel| -> Result<RatFunc> {
        Ok(sec.scale(&table.value(label)?.scale(&vol)))
    };
    let mut total = term(v0.w_iwahori.clone(), &w_type, CosetLabel::W)?;
    match case {
        OldVectorCase::Ramified => {
            total = &total + &term(v0.get(CosetLabel::U0)?, &i_type, CosetLabel::U0)?;
        }
        OldVectorCase::SplitZeroW | OldVectorCase::SplitUnitW => {
            // u1 pairs with the wI-type value, u2 with the I-type value
            total = &total + &term(v0.get(CosetLabel::U1)?, &w_type, CosetLabel::U1)?;
            total = &total + &term(v0.get(CosetLabel::U2)?, &i_type, CosetLabel::U2)?;
        }
    }
    Ok(total)
}

/// `chi St` against the translated spherical section, unramified `Omega1, Omega2`.
pub fn zeta_steinberg_oldvector(
    field: &LocalField,
    rep: &RepData,
    pair: &InducedPair,
    omega: &TorusChar,
) -> Result<(OldVectorCase, LocalZetaResult)> {
    let chi = expect_steinberg(rep)?;
    let (case, _) = old_vector_setup(field, rep, pair, omega, 1)?;
    let q = field.q();
    let q_e = field.q_elem();
    let w1_inv = pair.omega1.at_l_uniformizer().inv()?;
    let factor = match case {
        OldVectorCase::Ramified => &q_e * &w1_inv,
        OldVectorCase::SplitZeroW => w1_inv,
        OldVectorCase::SplitUnitW => {
            let om_1w = match omega.values() {
                CharValues::Split { w2, .. } => w2.clone(),
                _ => unreachable!("split case"),
            };
            let d = &CoeffElem::one() - &om_1w.checked_div(chi)?;
            (&(&q_e - &CoeffElem::one()) * &w1_inv).checked_div(&d)?
        }
    };
    let y = q_s_half(q).scale(&(-factor.checked_div(&(&q_e + &CoeffElem::one()))?));
    let (num, den) = l_ratio(field, rep, pair)?;
    Ok((case, LocalZetaResult::assemble(num, den, y)?))
}

/// K-part plus `sum_{m >= 1}` of the `I` and `wI` coset contributions.
pub fn zeta_steinberg_oldvector_direct(
    field: &LocalField,
    rep: &RepData,
    pair: &InducedPair,
    omega: &TorusChar,
    order: usize,
) -> Result<Laurent> {
    let m_max = (order / 2 + 1) as u32;
    let (_, table) = old_vector_setup(field, rep, pair, omega, m_max)?;
    let q = field.q();
    let q_inv = field.q_elem().inv()?;
    let r = CoeffElem::sqrt_q(q);
    let r_inv = r.inv()?;
    let w1l_inv = pair.omega1.at_l_uniformizer().inv()?;
    let w2l_inv = pair.omega2.at_l_uniformizer().inv()?;
    let base = pair.omega1.at_base_uniformizer();

    let mut acc = LaurentAcc::new(-1, order + 1);
    let k_part = Laurent::of(&k_integral_old_vector(field, rep, pair, omega)?, order + 1)?;
    for e in -1..=order as i32 {
        acc.add(&k_part.coeff(e).expect("expanded far enough"), e);
    }
    // Omega1(uniformizer)^m q^{-m}, the X^{2m} part of both section values
    let mut sec = CoeffElem::one();
    for m in 1..=m_max {
        sec = &(&sec * &base) * &q_inv;
        let vols = volumes(field, m);
        let vi = CoeffElem::rational(vols.iwahori.expect("m >= 1"));
        let vw = CoeffElem::rational(vols.w_iwahori);
        let i_term = &(&(&vi * &sec) * &(&w1l_inv * &r)) * table.value(CosetLabel::DiagPower(m))?;
        let w_term =
            &(&(&vw * &sec) * &(&w2l_inv * &r_inv)) * table.value(CosetLabel::DiagPowerW(m))?;
        acc.add(&i_term, 2 * m as i32 - 1);
        acc.add(&w_term, 2 * m as i32 + 1);
    }
    Ok(acc.finish())
}

/// The spherical section paired with `chi St`: the inner `K`-integral would be
/// a spherical vector in `chi St`, so the integral vanishes identically.
pub fn unramified_section_zero_case() -> RatFunc {
    RatFunc::zero()
}

/// Which integral a [`LocalSetup`] selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaKind {
    Unramified,
    SteinbergNewform,
    SteinbergOldVector(OldVectorCase),
}

/// Closed form for the integral selected by `setup`.
pub fn zeta_for_setup(setup: &LocalSetup) -> Result<(ZetaKind, LocalZetaResult)> {
    let pair = setup.pair()?;
    let omega = setup.effective_omega()?;
    let (f, rep) = (&setup.field, &setup.rep);
    match rep {
        RepData::UnramifiedPS { .. } => {
            Ok((ZetaKind::Unramified, zeta_unramified(f, rep, pair, &omega)?))
        }
        RepData::SteinbergTwist { .. } if pair.omega1.conductor() > 0 => Ok((
            ZetaKind::SteinbergNewform,
            zeta_steinberg_newform(f, rep, pair, &omega)?,
        )),
        RepData::SteinbergTwist { .. } => {
            let (case, z) = zeta_steinberg_oldvector(f, rep, pair, &omega)?;
            Ok((ZetaKind::SteinbergOldVector(case), z))
        }
    }
}

/// Coset-sum evaluation for the integral selected by `setup`.
pub fn direct_for_setup(setup: &LocalSetup, order: usize) -> Result<Laurent> {
    let pair = setup.pair()?;
    let omega = setup.effective_omega()?;
    let (f, rep) = (&setup.field, &setup.rep);
    match rep {
        RepData::UnramifiedPS { .. } => zeta_unramified_direct(f, rep, pair, &omega, order),
        RepData::SteinbergTwist { .. } if pair.omega1.conductor() > 0 => {
            zeta_steinberg_newform_direct(f, rep, pair, &omega, order)
        }
        RepData::SteinbergTwist { .. } => {
            zeta_steinberg_oldvector_direct(f, rep, pair, &omega, order)
        }
    }
}

/// Closed form against coset sum through `X^order`; `None` when they agree.
pub fn oracle_mismatch(setup: &LocalSetup, order: usize) -> Result<Option<i32>> {
    let (_, z) = zeta_for_setup(setup)?;
    let closed = Laurent::of(&z.closed_form, order + 1)?;
    let direct = direct_for_setup(setup, order)?;
    let hi = order as i32;
    Ok(closed.first_mismatch(&direct).filter(|&e| e <= hi))
}

/// `1 - c X^k` helper for tests and callers that build factors by hand.
pub fn euler_factor(c: &CoeffElem, k: usize) -> Poly {
    Poly::one_minus(c, k)
}

/// `(q - e)/(q + 1)` for `e` the Legendre symbol.
pub fn newform_constant(field: &LocalField) -> Rational {
    let q = field.q() as i64;
    rat(q - field.legendre().symbol(), q + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::series_expand;

    fn one() -> CoeffElem {
        CoeffElem::one()
    }

    fn field(q: u64, l: Legendre) -> LocalField {
        LocalField::new(q, l).unwrap()
    }

    fn setup(field: LocalField, rep: RepData, o1: TorusChar, o2: TorusChar) -> LocalSetup {
        LocalSetup {
            field,
            rep,
            omega: None,
            pair: Some(InducedPair::new(o1, o2).unwrap()),
        }
    }

    #[test]
    fn volume_examples() {
        assert_eq!(volumes(&field(3, Legendre::Inert), 1).k, rat(4, 1));
        assert_eq!(volumes(&field(7, Legendre::Split), 0).k, rat(1, 1));
        assert_eq!(
            volumes(&field(5, Legendre::Ramified), 0).u0,
            Some(rat(1, 6))
        );
    }

    #[test]
    fn volumes_partition() {
        for l in Legendre::all() {
            let f = field(5, l);
            let v0 = volumes(&f, 0);
            let units = v0.u0.clone().unwrap_or_default()
                + v0.u_split
                    .clone()
                    .map(|v| v * rat(2, 1))
                    .unwrap_or_default();
            assert_eq!(&v0.w_iwahori + units, v0.k);
            for m in 1..4 {
                let v = volumes(&f, m);
                assert_eq!(v.iwahori.clone().unwrap() + &v.w_iwahori, v.k);
            }
        }
    }

    #[test]
    fn hecke_factor_examples() {
        let split = TorusChar::split(0, one(), one()).unwrap();
        let l = hecke_l_factor(&field(3, Legendre::Split), &split).unwrap();
        assert_eq!(l, RatFunc::geometric(&one(), 1).pow(2).unwrap());
        let inert = TorusChar::inert(0, -one()).unwrap();
        let l = hecke_l_factor(&field(3, Legendre::Inert), &inert).unwrap();
        assert_eq!(
            l,
            RatFunc::new(
                Poly::one(),
                Poly::new(vec![one(), CoeffElem::zero(), one()])
            )
            .unwrap()
        );
        let ram = TorusChar::ramified(0, CoeffElem::i()).unwrap();
        let l = hecke_l_factor(&field(3, Legendre::Ramified), &ram).unwrap();
        assert_eq!(l, RatFunc::geometric(&CoeffElem::i(), 1));
    }

    #[test]
    fn pi_factor_examples() {
        let ps = RepData::unramified(one(), one(), 3).unwrap();
        assert_eq!(
            pi_l_factor(&ps, &one(), 3).unwrap(),
            RatFunc::geometric(&one(), 1).pow(2).unwrap()
        );
        let st = RepData::steinberg(one()).unwrap();
        let want = RatFunc::geometric(&q_half_power(5, -1), 1);
        assert_eq!(pi_l_factor(&st, &one(), 5).unwrap(), want);
        assert!(pi_l_factor(&st, &CoeffElem::zero(), 5).is_err());
    }

    #[test]
    fn shifted_arguments() {
        // 1/(1 - Y) at s' = 2s + 1: Y = X^2 / q
        let g = RatFunc::geometric(&one(), 1);
        let h = at_shifted_argument(&g, 3, 2, 2).unwrap();
        assert_eq!(h, RatFunc::geometric(&CoeffElem::frac(1, 3), 2));
        // s' = 2s + 1/2: Y = X^2 / r
        let h = at_shifted_argument(&g, 3, 2, 1).unwrap();
        assert_eq!(h, RatFunc::geometric(&q_half_power(3, -1), 2));
    }

    #[test]
    fn unramified_constant_term_and_oracle() {
        for l in Legendre::all() {
            let f = field(3, l);
            let rep = RepData::unramified(CoeffElem::int(2), CoeffElem::frac(1, 2), 3).unwrap();
            let t = TorusChar::trivial(l);
            let s = setup(f, rep, t.clone(), t);
            let (kind, z) = zeta_for_setup(&s).unwrap();
            assert_eq!(kind, ZetaKind::Unramified);
            assert_eq!(series_expand(&z.closed_form, 0).unwrap().coeff(0), &one());
            assert_eq!(z.y_factor, RatFunc::one());
            assert!(z.is_consistent());
            assert_eq!(oracle_mismatch(&s, 30).unwrap(), None);
        }
    }

    #[test]
    fn newform_prefactors() {
        assert_eq!(newform_constant(&field(3, Legendre::Ramified)), rat(3, 4));
        assert_eq!(newform_constant(&field(3, Legendre::Split)), rat(1, 2));
    }

    #[test]
    fn newform_oracle_split() {
        let f = field(5, Legendre::Split);
        let rep = RepData::steinberg(CoeffElem::int(2)).unwrap();
        // Omega1 Omega2 at the base uniformizer must be chi^{-2} = 1/4
        let o1 = TorusChar::split(1, CoeffElem::i(), CoeffElem::int(3)).unwrap();
        let o2 = TorusChar::split(0, -CoeffElem::i(), CoeffElem::frac(1, 12)).unwrap();
        let s = setup(f, rep, o1, o2);
        let (kind, z) = zeta_for_setup(&s).unwrap();
        assert_eq!(kind, ZetaKind::SteinbergNewform);
        assert!(z.is_consistent());
        assert_eq!(oracle_mismatch(&s, 30).unwrap(), None);
    }

    #[test]
    fn oldvector_ramified_oracle() {
        let f = field(3, Legendre::Ramified);
        let chi = CoeffElem::int(2);
        let rep = RepData::steinberg(chi.clone()).unwrap();
        let w1 = CoeffElem::i();
        let w2 = -(&chi * &w1).inv().unwrap();
        let s = setup(
            f,
            rep,
            TorusChar::ramified(0, w1).unwrap(),
            TorusChar::ramified(0, w2).unwrap(),
        );
        let (kind, z) = zeta_for_setup(&s).unwrap();
        assert_eq!(kind, ZetaKind::SteinbergOldVector(OldVectorCase::Ramified));
        assert!(z.is_consistent());
        assert_eq!(oracle_mismatch(&s, 30).unwrap(), None);
    }

    #[test]
    fn oldvector_ramified_k_integral_display() {
        let f = field(3, Legendre::Ramified);
        let chi = one();
        let rep = RepData::steinberg(chi.clone()).unwrap();
        let o1 = TorusChar::ramified(0, one()).unwrap();
        let o2 = TorusChar::ramified(0, -one()).unwrap();
        let pair = InducedPair::new(o1, o2).unwrap();
        let omega = pair.waldspurger_character().unwrap();
        let k = k_integral_old_vector(&f, &rep, &pair, &omega).unwrap();
        // -q^{3/2} X^{-1} (1 - v X^2 / q) / (q + 1), v = Omega1/Omega2 (uniformizer_L) = -1
        let pref = RatFunc::monomial(-q_half_power(3, 3).scale(&rat(1, 4)), -1);
        let want = &pref * &RatFunc::from_poly(euler_factor(&CoeffElem::frac(-1, 3), 2));
        assert_eq!(k, want);
    }

    #[test]
    fn oldvector_split_both_branches() {
        let f = field(5, Legendre::Split);
        let chi = CoeffElem::int(2);
        let rep = RepData::steinberg(chi.clone()).unwrap();
        // B0(w) = 0 needs Omega(1, uniformizer) = 1/(Omega1(u,1) Omega2(1,u)) = chi
        let o1 = TorusChar::split(0, CoeffElem::int(3), CoeffElem::i()).unwrap();
        let o2_w2 = (&chi * &CoeffElem::int(3)).inv().unwrap();
        let o2_w1 = (&(&chi * &chi) * &(&CoeffElem::int(3) * &CoeffElem::i()))
            .inv()
            .unwrap()
            .checked_div(&o2_w2)
            .unwrap();
        let s = setup(
            f,
            rep.clone(),
            o1,
            TorusChar::split(0, o2_w1, o2_w2).unwrap(),
        );
        let (kind, z) = zeta_for_setup(&s).unwrap();
        assert_eq!(
            kind,
            ZetaKind::SteinbergOldVector(OldVectorCase::SplitZeroW)
        );
        assert!(z.is_consistent());
        assert_eq!(oracle_mismatch(&s, 30).unwrap(), None);
        // B0(w) = 0 kills every m >= 1 term
        let pair = s.pair().unwrap();
        let omega = s.effective_omega().unwrap();
        assert_eq!(
            k_integral_old_vector(&f, &rep, pair, &omega).unwrap(),
            z.closed_form
        );

        let o1 = TorusChar::split(0, CoeffElem::int(3), CoeffElem::i()).unwrap();
        let o2_w2 = CoeffElem::int(7);
        let o2_w1 = (&(&chi * &chi) * &(&CoeffElem::int(3) * &CoeffElem::i()))
            .inv()
            .unwrap()
            .checked_div(&o2_w2)
            .unwrap();
        let s = setup(f, rep, o1, TorusChar::split(0, o2_w1, o2_w2).unwrap());
        let (kind, z) = zeta_for_setup(&s).unwrap();
        assert_eq!(
            kind,
            ZetaKind::SteinbergOldVector(OldVectorCase::SplitUnitW)
        );
        assert!(z.is_consistent());
        assert_eq!(oracle_mismatch(&s, 30).unwrap(), None);
    }

    #[test]
    fn oldvector_inert_has_no_model() {
        let f = field(3, Legendre::Inert);
        let rep = RepData::steinberg(one()).unwrap();
        let s = setup(
            f,
            rep,
            TorusChar::inert(0, one()).unwrap(),
            TorusChar::inert(0, one()).unwrap(),
        );
        assert!(matches!(zeta_for_setup(&s), Err(Error::NoModel(_))));
    }

    #[test]
    fn zero_case() {
        assert!(unramified_section_zero_case().is_zero());
    }
}
