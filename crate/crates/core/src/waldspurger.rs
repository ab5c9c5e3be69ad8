//! Values of the distinguished vector `B0` in a local Waldspurger model.
//!
//! Unramified principal series: the spherical vector's values on
//! `diag(uniformizer^m, 1)` through their generating function, with the Hecke
//! recurrence kept as an independent path. Steinberg twists: the Iwahori-fixed
//! new form on coset representatives.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{CoeffElem, Poly, RatFunc};
use crate::error::{invalid, Error, Result};
use crate::local_data::{
    central_compat_check, waldspurger_exists, CharValues, CosetLabel, LocalField, RepData,
    TorusChar,
};

fn satake(rep: &RepData) -> Result<(&CoeffElem, &CoeffElem)> {
    match rep {
        RepData::UnramifiedPS { alpha1, alpha2 } => Ok((alpha1, alpha2)),
        RepData::SteinbergTwist { .. } => invalid("expected an unramified principal series"),
    }
}

fn check_compat(field: &LocalField, rep: &RepData, omega: &TorusChar) -> Result<()> {
    omega.expect_legendre(field.legendre(), "omega")?;
    if !central_compat_check(rep, omega, field) {
        return invalid("omega does not restrict to the central character of pi");
    }
    Ok(())
}

/// `lambda = sqrt(q) (alpha1 + alpha2)`.
pub fn hecke_lambda(field: &LocalField, rep: &RepData) -> Result<CoeffElem> {
    let (a1, a2) = satake(rep)?;
    Ok(&field.r() * &(a1 + a2))
}

/// Numerator constant of the spherical generating function.
pub fn kappa(field: &LocalField, rep: &RepData, omega: &TorusChar) -> Result<CoeffElem> {
    check_compat(field, rep, omega)?;
    let lambda = hecke_lambda(field, rep)?;
    if omega.conductor() > 0 {
        return Ok(CoeffElem::zero());
    }
    let q = field.q() as i64;
    Ok(match omega.values() {
        CharValues::Inert { .. } => lambda.scale(&crate::arith::rat(1, q + 1)),
        CharValues::Ramified { w_l, .. } => w_l.clone(),
        CharValues::Split { w1, w2 } => {
            let k = crate::arith::rat(1, q - 1);
            &(-lambda.scale(&k)) + &(w1 + w2).scale(&(k * crate::arith::rat_int(q)))
        }
    })
}

/// `R(x) = sum_{m >= c} B0(diag(uniformizer^m, 1)) x^m`, normalized so the
/// coefficient of `x^c` is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericalSeries {
    pub gen: RatFunc,
    pub conductor: u32,
}

pub fn spherical_generating_series(
    field: &LocalField,
    rep: &RepData,
    omega: &TorusChar,
) -> Result<SphericalSeries> {
    let kap = kappa(field, rep, omega)?;
    let lambda = hecke_lambda(field, rep)?;
    let q = field.q_elem();
    let c = omega.conductor() as usize;
    let num = Poly::new(vec![q.clone(), -kap]).shift(c);
    let den = Poly::new(vec![q, -lambda, rep.omega_pi()]);
    Ok(SphericalSeries {
        gen: RatFunc::new(num, den)?,
        conductor: omega.conductor(),
    })
}

/// `A_0, ..., A_max_m` from the Hecke relation, without the generating function.
pub fn spherical_values_recurrence(
    field: &LocalField,
    rep: &RepData,
    omega: &TorusChar,
    max_m: usize,
) -> Result<Vec<CoeffElem>> {
    check_compat(field, rep, omega)?;
    let lambda = hecke_lambda(field, rep)?;
    let om = rep.omega_pi();
    let q = field.q_elem();
    let q_inv = q.inv()?;
    let c = omega.conductor() as usize;
    let mut a = vec![CoeffElem::zero(); max_m + 1];
    if c > max_m {
        return Ok(a);
    }
    a[c] = CoeffElem::one();
    if c == 0 && max_m >= 1 {
        // g = 1 in the Hecke relation
        let a0 = &a[0];
        a[1] = match omega.values() {
            CharValues::Inert { .. } => (&lambda * a0).checked_div(&(&q + &CoeffElem::one()))?,
            CharValues::Ramified { w_l, .. } => &(&(&lambda - w_l) * a0) * &q_inv,
            CharValues::Split { w1, w2 } => {
                let t = &(&lambda - &(w1 + w2)) * a0;
                t.checked_div(&(&q - &CoeffElem::one()))?
            }
        };
    }
    for m in c.max(1)..max_m {
        a[m + 1] = &(&(&lambda * &a[m]) - &(&om * &a[m - 1])) * &q_inv;
    }
    Ok(a)
}

/// Values of the Steinberg new form on coset representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaldspurgerTable {
    entries: BTreeMap<CosetLabel, CoeffElem>,
    /// `true` when `B0(w) = 1`; `false` when `B0(w) = 0` and `B0(u1) = 1 = -B0(u2)`.
    normalized_at_w: bool,
    max_m: u32,
}

impl WaldspurgerTable {
    pub fn get(&self, label: CosetLabel) -> Option<&CoeffElem> {
        self.entries.get(&label)
    }

    /// Like [`get`](Self::get) but an absent label is an error.
    pub fn value(&self, label: CosetLabel) -> Result<&CoeffElem> {
        self.entries
            .get(&label)
            .ok_or_else(|| Error::InvalidInput(format!("no table entry for {label}")))
    }

    pub fn entries(&self) -> &BTreeMap<CosetLabel, CoeffElem> {
        &self.entries
    }

    pub fn normalized_at_w(&self) -> bool {
        self.normalized_at_w
    }

    pub fn max_m(&self) -> u32 {
        self.max_m
    }

    /// `B0(w)`.
    pub fn w(&self) -> &CoeffElem {
        &self.entries[&CosetLabel::W]
    }
}

impl Serialize for WaldspurgerTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let table: BTreeMap<String, &CoeffElem> = self
            .entries
            .iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        #[derive(Serialize)]
        struct Wire<'a> {
            table: BTreeMap<String, &'a CoeffElem>,
            normalization: &'static str,
        }
        Wire {
            table,
            normalization: if self.normalized_at_w {
                "B0(w)=1"
            } else {
                "B0(u1)=1=-B0(u2)"
            },
        }
        .serialize(s)
    }
}

pub fn steinberg_table(
    field: &LocalField,
    rep: &RepData,
    omega: &TorusChar,
    max_m: u32,
) -> Result<WaldspurgerTable> {
    let chi = match rep {
        RepData::SteinbergTwist { chi } => chi,
        RepData::UnramifiedPS { .. } => return invalid("expected a Steinberg twist"),
    };
    check_compat(field, rep, omega)?;
    if !waldspurger_exists(field, rep, omega)? {
        return Err(Error::NoModel(format!(
            "chi St has no Waldspurger model for this {} character",
            field.legendre()
        )));
    }
    let q = field.q_elem();
    let q_inv = q.inv()?;
    let c = omega.conductor();
    let mut entries = BTreeMap::new();

    let mut b_w = CoeffElem::one();
    let mut normalized_at_w = true;
    match omega.values() {
        CharValues::Inert { .. } => {}
        CharValues::Ramified { .. } => {
            let u0 = if c == 0 { -&q } else { CoeffElem::zero() };
            entries.insert(CosetLabel::U0, u0);
        }
        CharValues::Split { w2, .. } => {
            let (u1, u2) = if c > 0 {
                (CoeffElem::zero(), CoeffElem::zero())
            } else if w2 == chi {
                b_w = CoeffElem::zero();
                normalized_at_w = false;
                (CoeffElem::one(), -CoeffElem::one())
            } else {
                let qm1 = &q - &CoeffElem::one();
                let one = CoeffElem::one();
                (
                    qm1.checked_div(&(&chi.checked_div(w2)? - &one))?,
                    qm1.checked_div(&(&w2.checked_div(chi)? - &one))?,
                )
            };
            entries.insert(CosetLabel::U1, u1);
            entries.insert(CosetLabel::U2, u2);
        }
    }

    // chi^m q^{-m} B0(w)
    let step = chi * &q_inv;
    let mut pw = b_w.clone();
    for m in 1..=max_m {
        pw = &pw * &step;
        entries.insert(CosetLabel::DiagPowerW(m), pw.clone());
        let d = if m >= c {
            -(&pw * &q)
        } else {
            CoeffElem::zero()
        };
        entries.insert(CosetLabel::DiagPower(m), d);
    }
    entries.insert(CosetLabel::W, b_w);
    Ok(WaldspurgerTable {
        entries,
        normalized_at_w,
        max_m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_data::Legendre;

    fn field(q: u64, l: Legendre) -> LocalField {
        LocalField::new(q, l).unwrap()
    }

    fn ps(a1: CoeffElem, a2: CoeffElem, q: u64) -> RepData {
        RepData::unramified(a1, a2, q).unwrap()
    }

    fn one() -> CoeffElem {
        CoeffElem::one()
    }

    #[test]
    fn kappa_cases() {
        let f = field(3, Legendre::Inert);
        let rep = ps(one(), one(), 3);
        let r = CoeffElem::sqrt_q(3);
        assert_eq!(
            kappa(&f, &rep, &TorusChar::inert(0, one()).unwrap()).unwrap(),
            r.scale(&crate::arith::rat(1, 2))
        );
        assert!(kappa(&f, &rep, &TorusChar::inert(3, one()).unwrap())
            .unwrap()
            .is_zero());
        let f = field(3, Legendre::Ramified);
        let om = TorusChar::ramified(0, -one()).unwrap();
        assert_eq!(kappa(&f, &rep, &om).unwrap(), -one());
    }

    #[test]
    fn generating_series_example() {
        let f = field(3, Legendre::Inert);
        let rep = ps(one(), one(), 3);
        let s =
            spherical_generating_series(&f, &rep, &TorusChar::inert(0, one()).unwrap()).unwrap();
        let r = CoeffElem::sqrt_q(3);
        let num = Poly::new(vec![CoeffElem::int(3), -r.scale(&crate::arith::rat(1, 2))]);
        let den = Poly::new(vec![
            CoeffElem::int(3),
            -r.scale(&crate::arith::rat(2, 1)),
            one(),
        ]);
        assert_eq!(s.gen, RatFunc::new(num, den).unwrap());
    }

    #[test]
    fn recurrence_first_terms() {
        let f = field(3, Legendre::Inert);
        let rep = ps(one(), one(), 3);
        let a =
            spherical_values_recurrence(&f, &rep, &TorusChar::inert(0, one()).unwrap(), 3).unwrap();
        assert_eq!(a[0], one());
        assert_eq!(a[1], CoeffElem::sqrt_q(3).scale(&crate::arith::rat(1, 2)));
    }

    #[test]
    fn vanishing_below_conductor() {
        let f = field(5, Legendre::Split);
        let rep = ps(CoeffElem::i(), -CoeffElem::i(), 5);
        let om = TorusChar::split(2, CoeffElem::i(), -CoeffElem::i()).unwrap();
        let a = spherical_values_recurrence(&f, &rep, &om, 10).unwrap();
        assert!(a[0].is_zero() && a[1].is_zero());
        assert_eq!(a[2], one());
        let s = spherical_generating_series(&f, &rep, &om).unwrap();
        let g = crate::arith::series_expand(&s.gen, 10).unwrap();
        assert_eq!(g.coeffs(), a.as_slice());
    }

    #[test]
    fn incompatible_center_rejected() {
        let f = field(3, Legendre::Inert);
        let rep = ps(one(), one(), 3);
        assert!(kappa(&f, &rep, &TorusChar::inert(0, -one()).unwrap()).is_err());
    }

    #[test]
    fn steinberg_diag_example() {
        let f = field(5, Legendre::Inert);
        let rep = RepData::steinberg(one()).unwrap();
        let t = steinberg_table(&f, &rep, &TorusChar::inert(1, one()).unwrap(), 3).unwrap();
        assert_eq!(t.value(CosetLabel::DiagPower(1)).unwrap(), &-one());
        assert_eq!(
            t.value(CosetLabel::DiagPowerW(2)).unwrap(),
            &CoeffElem::frac(1, 25)
        );
        assert!(t.get(CosetLabel::U0).is_none());
    }

    #[test]
    fn steinberg_split_zero_w() {
        let f = field(5, Legendre::Split);
        let chi = CoeffElem::int(2);
        let rep = RepData::steinberg(chi.clone()).unwrap();
        let om = TorusChar::split(0, CoeffElem::int(2), chi).unwrap();
        let t = steinberg_table(&f, &rep, &om, 2).unwrap();
        assert!(t.w().is_zero() && !t.normalized_at_w());
        assert_eq!(t.value(CosetLabel::U1).unwrap(), &one());
        assert_eq!(t.value(CosetLabel::U2).unwrap(), &-one());
        assert!(t.value(CosetLabel::DiagPower(2)).unwrap().is_zero());
    }

    #[test]
    fn steinberg_split_generic_identities() {
        let f = field(7, Legendre::Split);
        let chi = CoeffElem::int(3);
        let rep = RepData::steinberg(chi.clone()).unwrap();
        let om = TorusChar::split(0, CoeffElem::int(9), one()).unwrap();
        let t = steinberg_table(&f, &rep, &om, 2).unwrap();
        let u1 = t.value(CosetLabel::U1).unwrap();
        let u2 = t.value(CosetLabel::U2).unwrap();
        assert_eq!(u1 + u2, CoeffElem::int(-6));
        assert_eq!(u2 * &one(), -(&chi * u1));
    }

    #[test]
    fn steinberg_split_ramified_omega() {
        let f = field(3, Legendre::Split);
        let rep = RepData::steinberg(one()).unwrap();
        let om = TorusChar::split(1, CoeffElem::i(), -CoeffElem::i()).unwrap();
        let t = steinberg_table(&f, &rep, &om, 1).unwrap();
        assert!(t.value(CosetLabel::U1).unwrap().is_zero());
        assert!(t.value(CosetLabel::U2).unwrap().is_zero());
        assert!(t.value(CosetLabel::DiagPower(1)).unwrap() == &-one());
    }

    #[test]
    fn steinberg_ramified_u0() {
        let f = field(3, Legendre::Ramified);
        let rep = RepData::steinberg(one()).unwrap();
        let t = steinberg_table(&f, &rep, &TorusChar::ramified(0, -one()).unwrap(), 1).unwrap();
        assert_eq!(t.value(CosetLabel::U0).unwrap(), &CoeffElem::int(-3));
        let no = steinberg_table(&f, &rep, &TorusChar::ramified(0, one()).unwrap(), 1);
        assert!(matches!(no, Err(Error::NoModel(_))));
    }

    #[test]
    fn table_json() {
        let f = field(3, Legendre::Ramified);
        let rep = RepData::steinberg(one()).unwrap();
        let t = steinberg_table(&f, &rep, &TorusChar::ramified(0, -one()).unwrap(), 1).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["table"]["u0"]["a"], "-3");
        assert_eq!(v["table"]["w"]["a"], "1");
    }
}
