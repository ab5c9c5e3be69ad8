//! Seeded generators of admissible local parameters, shared by the `verify`
//! suite and the acceptance tests.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::{rat, CoeffElem, Poly, RatFunc};
use crate::local_data::{InducedPair, Legendre, LocalField, LocalSetup, RepData, TorusChar};

pub const QS: [u64; 5] = [2, 3, 5, 7, 9];

/// A nonzero element of small height, sometimes with an `r` part.
pub fn coeff<R: Rng>(rng: &mut R, q: u64) -> CoeffElem {
    loop {
        let small = |rng: &mut R| rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let x = match rng.gen_range(0..4) {
            0 => [
                CoeffElem::one(),
                -CoeffElem::one(),
                CoeffElem::i(),
                -CoeffElem::i(),
            ]
            .choose(rng)
            .cloned()
            .expect("nonempty"),
            1 => CoeffElem::rational(small(rng)),
            2 => CoeffElem::gaussian(small(rng), small(rng)),
            _ => {
                let g = CoeffElem::gaussian(small(rng), small(rng));
                &g + &CoeffElem::sqrt_q(q).scale(&small(rng))
            }
        };
        if !x.is_zero() {
            return x;
        }
    }
}

/// Any element, zero included.
pub fn any_coeff<R: Rng>(rng: &mut R, q: u64) -> CoeffElem {
    if rng.gen_ratio(1, 10) {
        CoeffElem::zero()
    } else {
        coeff(rng, q)
    }
}

pub fn legendre<R: Rng>(rng: &mut R) -> Legendre {
    *Legendre::all().choose(rng).expect("nonempty")
}

pub fn field<R: Rng>(rng: &mut R, l: Legendre) -> LocalField {
    LocalField::new(*QS.choose(rng).expect("nonempty"), l).expect("prime powers")
}

fn unramified_rep<R: Rng>(rng: &mut R, q: u64, product: Option<&CoeffElem>) -> RepData {
    loop {
        let a1 = coeff(rng, q);
        let a2 = match product {
            Some(p) => p.checked_div(&a1).expect("nonzero"),
            None => coeff(rng, q),
        };
        if let Ok(rep) = RepData::unramified(a1, a2, q) {
            return rep;
        }
    }
}

/// A torus character of the given type and conductor with prescribed value at
/// the base uniformizer. Ramified-type characters need `conductor > 0`.
pub fn char_with_base_value<R: Rng>(
    rng: &mut R,
    f: &LocalField,
    conductor: u32,
    target: &CoeffElem,
) -> TorusChar {
    let q = f.q();
    match f.legendre() {
        Legendre::Inert => TorusChar::inert(conductor, target.clone()),
        Legendre::Ramified => {
            let w = coeff(rng, q);
            let unit = target.checked_div(&(&w * &w)).expect("nonzero");
            TorusChar::ramified_with_unit(conductor, w, unit)
        }
        Legendre::Split => {
            let w1 = coeff(rng, q);
            TorusChar::split(
                conductor,
                w1.clone(),
                target.checked_div(&w1).expect("nonzero"),
            )
        }
    }
    .expect("valid character")
}

/// Unramified character on a field; ramified-type ones have unit value 1.
pub fn unramified_char<R: Rng>(rng: &mut R, f: &LocalField) -> TorusChar {
    let q = f.q();
    match f.legendre() {
        Legendre::Inert => TorusChar::inert(0, coeff(rng, q)),
        Legendre::Ramified => TorusChar::ramified(0, coeff(rng, q)),
        Legendre::Split => TorusChar::split(0, coeff(rng, q), coeff(rng, q)),
    }
    .expect("valid character")
}

/// `(field, pi, Omega)` for the spherical generating function: `pi`
/// unramified, `Omega` of conductor `c`, centrally compatible.
pub fn spherical<R: Rng>(rng: &mut R, l: Legendre, c: u32) -> (LocalField, RepData, TorusChar) {
    let f = field(rng, l);
    let omega = if c == 0 {
        unramified_char(rng, &f)
    } else {
        let target = coeff(rng, f.q());
        char_with_base_value(rng, &f, c, &target)
    };
    let rep = unramified_rep(rng, f.q(), Some(&omega.at_base_uniformizer()));
    (f, rep, omega)
}

/// Unramified `pi` with unramified `Omega1`, `Omega2`.
pub fn unramified_setup<R: Rng>(rng: &mut R, l: Legendre) -> LocalSetup {
    let f = field(rng, l);
    let o1 = unramified_char(rng, &f);
    let o2 = unramified_char(rng, &f);
    let prod = &o1.at_base_uniformizer() * &o2.at_base_uniformizer();
    let rep = unramified_rep(rng, f.q(), Some(&prod.inv().expect("nonzero")));
    let pair = InducedPair::new(o1, o2).expect("unramified");
    LocalSetup {
        field: f,
        rep,
        omega: None,
        pair: Some(pair),
    }
}

/// Steinberg branches with a model and an oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SteinbergCase {
    /// `c(Omega1) = 1` on a field of the given type.
    Newform(Legendre),
    /// Unramified characters, `L` ramified.
    OldRamified,
    /// Unramified characters, `L` split, `B0(w) = 0`.
    OldSplitZeroW,
    /// Unramified characters, `L` split, `B0(w) = 1`.
    OldSplitUnitW,
}

impl SteinbergCase {
    pub fn all() -> [SteinbergCase; 6] {
        [
            SteinbergCase::Newform(Legendre::Inert),
            SteinbergCase::Newform(Legendre::Ramified),
            SteinbergCase::Newform(Legendre::Split),
            SteinbergCase::OldRamified,
            SteinbergCase::OldSplitZeroW,
            SteinbergCase::OldSplitUnitW,
        ]
    }
}

pub fn steinberg_setup<R: Rng>(rng: &mut R, case: SteinbergCase) -> LocalSetup {
    let l = match case {
        SteinbergCase::Newform(l) => l,
        SteinbergCase::OldRamified => Legendre::Ramified,
        _ => Legendre::Split,
    };
    let f = field(rng, l);
    let q = f.q();
    let chi = coeff(rng, q);
    let rep = RepData::steinberg(chi.clone()).expect("nonzero");
    // Omega1 Omega2 at the base uniformizer must be chi^{-2}
    let target = (&chi * &chi).inv().expect("nonzero");
    let (o1, o2) = match case {
        SteinbergCase::Newform(_) => {
            let o2 = unramified_char(rng, &f);
            let need = target
                .checked_div(&o2.at_base_uniformizer())
                .expect("nonzero");
            (char_with_base_value(rng, &f, 1, &need), o2)
        }
        SteinbergCase::OldRamified => {
            let a = coeff(rng, q);
            let b = -(&chi * &a).inv().expect("nonzero");
            (
                TorusChar::ramified(0, a).expect("valid"),
                TorusChar::ramified(0, b).expect("valid"),
            )
        }
        SteinbergCase::OldSplitZeroW | SteinbergCase::OldSplitUnitW => {
            let (a1, a2) = (coeff(rng, q), coeff(rng, q));
            let zero_w = case == SteinbergCase::OldSplitZeroW;
            // Omega(1, uniformizer) = 1/(a1 b2)
            let b2 = loop {
                let b2 = if zero_w {
                    (&chi * &a1).inv().expect("nonzero")
                } else {
                    coeff(rng, q)
                };
                if zero_w || (&a1 * &b2).inv().expect("nonzero") != chi {
                    break b2;
                }
            };
            let b1 = target.checked_div(&(&(&a1 * &a2) * &b2)).expect("nonzero");
            (
                TorusChar::split(0, a1, a2).expect("valid"),
                TorusChar::split(0, b1, b2).expect("valid"),
            )
        }
    };
    let pair = InducedPair::new(o1, o2).expect("scope");
    LocalSetup {
        field: f,
        rep,
        omega: None,
        pair: Some(pair),
    }
}

/// `(field, chi St, Omega)` with a model: `Omega` of conductor `c` restricting to
/// `chi^2`. `None` for the inert unramified case, which has no model.
pub fn steinberg_table_params<R: Rng>(
    rng: &mut R,
    l: Legendre,
    c: u32,
) -> Option<(LocalField, RepData, TorusChar)> {
    let f = field(rng, l);
    let q = f.q();
    let chi = coeff(rng, q);
    let rep = RepData::steinberg(chi.clone()).expect("nonzero");
    let sq = &chi * &chi;
    let omega = match (l, c) {
        (Legendre::Inert, 0) => return None,
        (Legendre::Ramified, 0) => TorusChar::ramified(0, -chi).expect("valid"),
        (Legendre::Split, 0) if rng.gen_bool(0.5) => {
            TorusChar::split(0, chi.clone(), chi).expect("valid")
        }
        _ => char_with_base_value(rng, &f, c, &sq),
    };
    Some((f, rep, omega))
}

/// `D = 13, N = 6, N' = 2, ell = 2`: 2 is inert with `c(Omega1) = 1`, 3 is split
/// and carries the old vector with `B0(w) = 1`; Satake data at 5 and 7.
pub fn global_fixture_json() -> &'static str {
    r#"{
  "D": 13, "N": 6, "Nprime": 2, "ell": 2,
  "locals": {
    "2": {"q": 2, "legendre": -1, "rep": {"type": "steinberg", "chi": 1},
          "omega1": {"conductor": 1, "w": 1}, "omega2": {"conductor": 0, "w": 1}},
    "3": {"q": 3, "legendre": 1, "rep": {"type": "steinberg", "chi": -1},
          "omega1": {"conductor": 0, "w1": 2, "w2": "1/2"},
          "omega2": {"conductor": 0, "w1": 1, "w2": 1}}
  },
  "satake": {"5": {"alpha1": 2, "alpha2": "1/2"}, "7": {"alpha1": "i", "alpha2": "-i"}},
  "prime_bound": 7,
  "l_values": {"L_half_pi": [1.0, 0.0], "L_one_chi": [1.0, 0.0], "L_half_bc_twist_nonzero": true}
}"#
}

/// A polynomial of degree at most `deg`.
pub fn poly<R: Rng>(rng: &mut R, q: u64, deg: usize) -> Poly {
    Poly::new((0..=deg).map(|_| any_coeff(rng, q)).collect())
}

/// `num/den` with `den(0) = 1`.
pub fn ratfunc_unit_den<R: Rng>(rng: &mut R, q: u64, deg: usize) -> RatFunc {
    let mut d: Vec<CoeffElem> = poly(rng, q, deg).coeffs().to_vec();
    if d.is_empty() {
        d.push(CoeffElem::one());
    }
    d[0] = CoeffElem::one();
    RatFunc::new(poly(rng, q, deg), Poly::new(d)).expect("den(0) = 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_zeta::{zeta_for_setup, OldVectorCase, ZetaKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn steinberg_cases_land_in_their_branch() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for case in SteinbergCase::all() {
            for _ in 0..10 {
                let s = steinberg_setup(&mut rng, case);
                let (kind, _) = zeta_for_setup(&s).unwrap();
                let want = match case {
                    SteinbergCase::Newform(_) => ZetaKind::SteinbergNewform,
                    SteinbergCase::OldRamified => {
                        ZetaKind::SteinbergOldVector(OldVectorCase::Ramified)
                    }
                    SteinbergCase::OldSplitZeroW => {
                        ZetaKind::SteinbergOldVector(OldVectorCase::SplitZeroW)
                    }
                    SteinbergCase::OldSplitUnitW => {
                        ZetaKind::SteinbergOldVector(OldVectorCase::SplitUnitW)
                    }
                };
                assert_eq!(kind, want);
            }
        }
    }

    #[test]
    fn spherical_params_are_compatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for c in 0..4 {
            for l in Legendre::all() {
                let (f, rep, om) = spherical(&mut rng, l, c);
                assert!(crate::local_data::central_compat_check(&rep, &om, &f));
            }
        }
    }
}
