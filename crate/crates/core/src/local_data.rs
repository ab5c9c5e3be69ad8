//! Parameter bundles for a non-archimedean place.
//!
//! Characters are recorded only through their conductor exponent and their
//! values at uniformizers; nothing downstream needs more.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{CoeffElem, CoeffJson};
use crate::error::{invalid, Error, Result};

/// Splitting type of the local quadratic algebra `L/F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Legendre {
    /// Unramified field extension, symbol `-1`.
    Inert,
    /// Ramified field extension, symbol `0`.
    Ramified,
    /// `L = F + F`, symbol `+1`.
    Split,
}

impl Legendre {
    pub fn from_symbol(e: i64) -> Result<Self> {
        match e {
            -1 => Ok(Legendre::Inert),
            0 => Ok(Legendre::Ramified),
            1 => Ok(Legendre::Split),
            _ => invalid(format!("legendre symbol must be -1, 0 or 1, got {e}")),
        }
    }

    pub fn symbol(self) -> i64 {
        match self {
            Legendre::Inert => -1,
            Legendre::Ramified => 0,
            Legendre::Split => 1,
        }
    }

    pub fn all() -> [Legendre; 3] {
        [Legendre::Inert, Legendre::Ramified, Legendre::Split]
    }
}

impl fmt::Display for Legendre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Legendre::Inert => "inert",
            Legendre::Ramified => "ramified",
            Legendre::Split => "split",
        };
        f.write_str(s)
    }
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            while m.is_multiple_of(p) {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalField {
    q: u64,
    legendre: Legendre,
}

impl LocalField {
    pub fn new(q: u64, legendre: Legendre) -> Result<Self> {
        if !is_prime_power(q) {
            return invalid(format!("q = {q} is not a prime power"));
        }
        Ok(LocalField { q, legendre })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn legendre(&self) -> Legendre {
        self.legendre
    }

    /// `q` as a field element.
    pub fn q_elem(&self) -> CoeffElem {
        CoeffElem::int(self.q as i64)
    }

    /// `r = sqrt(q)`.
    pub fn r(&self) -> CoeffElem {
        CoeffElem::sqrt_q(self.q)
    }

    pub fn symbol_elem(&self) -> CoeffElem {
        CoeffElem::int(self.legendre.symbol())
    }
}

/// Representation of `GL(2, F)` at the place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepData {
    /// `chi1 x chi2` with Satake values `alpha_j = chi_j(uniformizer)`.
    UnramifiedPS {
        alpha1: CoeffElem,
        alpha2: CoeffElem,
    },
    /// `chi St` with `chi` unramified, `chi = chi(uniformizer)`.
    SteinbergTwist { chi: CoeffElem },
}

impl RepData {
    pub fn unramified(alpha1: CoeffElem, alpha2: CoeffElem, q: u64) -> Result<Self> {
        if alpha1.is_zero() || alpha2.is_zero() {
            return invalid("Satake values must be nonzero");
        }
        let ratio = alpha1.checked_div(&alpha2)?;
        let qe = CoeffElem::int(q as i64);
        if ratio == qe || ratio == CoeffElem::frac(1, q as i64) {
            return invalid("alpha1/alpha2 = q^{+-1}: the principal series is reducible");
        }
        Ok(RepData::UnramifiedPS { alpha1, alpha2 })
    }

    pub fn steinberg(chi: CoeffElem) -> Result<Self> {
        if chi.is_zero() {
            return invalid("chi(uniformizer) must be nonzero");
        }
        Ok(RepData::SteinbergTwist { chi })
    }

    /// Central character at the uniformizer: `alpha1 alpha2` or `chi^2`.
    pub fn omega_pi(&self) -> CoeffElem {
        match self {
            RepData::UnramifiedPS { alpha1, alpha2 } => alpha1 * alpha2,
            RepData::SteinbergTwist { chi } => chi * chi,
        }
    }

    /// Hecke eigenvalue `sqrt(q)(alpha1 + alpha2)` of the spherical vector.
    pub fn hecke_eigenvalue(&self, q: u64) -> Option<CoeffElem> {
        match self {
            RepData::UnramifiedPS { alpha1, alpha2 } => {
                Some(CoeffElem::sqrt_q(q) * (alpha1 + alpha2))
            }
            RepData::SteinbergTwist { .. } => None,
        }
    }

    /// Contragredient: Satake values (or the twist) inverted.
    pub fn contragredient(&self) -> Result<Self> {
        Ok(match self {
            RepData::UnramifiedPS { alpha1, alpha2 } => RepData::UnramifiedPS {
                alpha1: alpha1.inv()?,
                alpha2: alpha2.inv()?,
            },
            RepData::SteinbergTwist { chi } => RepData::SteinbergTwist { chi: chi.inv()? },
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            RepData::UnramifiedPS { .. } => "unramified",
            RepData::SteinbergTwist { .. } => "steinberg",
        }
    }
}

/// Values of a character of `L^x` at uniformizers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharValues {
    /// `w = Omega(uniformizer)`.
    Inert { w: CoeffElem },
    /// `w_l = Omega(uniformizer of L)`; `unit = Omega(u)` where the base
    /// uniformizer is `w_l^2 u`. The unit factor is 1 for conductor 0.
    Ramified { w_l: CoeffElem, unit: CoeffElem },
    /// `w1 = Omega(uniformizer, 1)`, `w2 = Omega(1, uniformizer)`.
    Split { w1: CoeffElem, w2: CoeffElem },
}

impl CharValues {
    pub fn legendre(&self) -> Legendre {
        match self {
            CharValues::Inert { .. } => Legendre::Inert,
            CharValues::Ramified { .. } => Legendre::Ramified,
            CharValues::Split { .. } => Legendre::Split,
        }
    }

    fn all(&self) -> Vec<&CoeffElem> {
        match self {
            CharValues::Inert { w } => vec![w],
            CharValues::Ramified { w_l, unit } => vec![w_l, unit],
            CharValues::Split { w1, w2 } => vec![w1, w2],
        }
    }
}

/// A character of the torus `T(F) = L^x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusChar {
    conductor: u32,
    values: CharValues,
}

impl TorusChar {
    pub fn new(conductor: u32, values: CharValues) -> Result<Self> {
        if values.all().iter().any(|v| v.is_zero()) {
            return invalid("character values must be nonzero");
        }
        if conductor == 0 {
            if let CharValues::Ramified { unit, .. } = &values {
                if !unit.is_one() {
                    return invalid("an unramified character is trivial on units");
                }
            }
        }
        Ok(TorusChar { conductor, values })
    }

    pub fn inert(conductor: u32, w: CoeffElem) -> Result<Self> {
        Self::new(conductor, CharValues::Inert { w })
    }

    pub fn ramified(conductor: u32, w_l: CoeffElem) -> Result<Self> {
        Self::new(
            conductor,
            CharValues::Ramified {
                w_l,
                unit: CoeffElem::one(),
            },
        )
    }

    pub fn ramified_with_unit(conductor: u32, w_l: CoeffElem, unit: CoeffElem) -> Result<Self> {
        Self::new(conductor, CharValues::Ramified { w_l, unit })
    }

    pub fn split(conductor: u32, w1: CoeffElem, w2: CoeffElem) -> Result<Self> {
        Self::new(conductor, CharValues::Split { w1, w2 })
    }

    /// The trivial character for the given splitting type.
    pub fn trivial(legendre: Legendre) -> Self {
        let one = CoeffElem::one();
        let values = match legendre {
            Legendre::Inert => CharValues::Inert { w: one },
            Legendre::Ramified => CharValues::Ramified {
                w_l: one.clone(),
                unit: one,
            },
            Legendre::Split => CharValues::Split {
                w1: one.clone(),
                w2: one,
            },
        };
        TorusChar {
            conductor: 0,
            values,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn values(&self) -> &CharValues {
        &self.values
    }

    pub fn legendre(&self) -> Legendre {
        self.values.legendre()
    }

    /// Value on the uniformizer of `F`, i.e. of the restriction to `F^x`.
    pub fn at_base_uniformizer(&self) -> CoeffElem {
        match &self.values {
            CharValues::Inert { w } => w.clone(),
            CharValues::Ramified { w_l, unit } => &(w_l * w_l) * unit,
            CharValues::Split { w1, w2 } => w1 * w2,
        }
    }

    /// Value on the chosen uniformizer of `L` (`(uniformizer, 1)` when split).
    pub fn at_l_uniformizer(&self) -> CoeffElem {
        match &self.values {
            CharValues::Inert { w } => w.clone(),
            CharValues::Ramified { w_l, .. } => w_l.clone(),
            CharValues::Split { w1, .. } => w1.clone(),
        }
    }

    /// Equality of the recorded data, except that for ramified `L` and positive
    /// conductor only the restriction to `F` is compared: a character derived
    /// from an induced pair does not know `Omega1(-1)`.
    pub fn agrees_with(&self, other: &TorusChar) -> bool {
        if self.conductor != other.conductor {
            return false;
        }
        match (&self.values, &other.values) {
            (CharValues::Ramified { .. }, CharValues::Ramified { .. }) if self.conductor > 0 => {
                self.at_base_uniformizer() == other.at_base_uniformizer()
            }
            _ => self == other,
        }
    }

    pub fn expect_legendre(&self, legendre: Legendre, what: &str) -> Result<()> {
        if self.legendre() != legendre {
            return invalid(format!(
                "{what} carries {} data but the field is {legendre}",
                self.legendre()
            ));
        }
        Ok(())
    }
}

/// Characters `(Omega1, Omega2)` of the induced representation on `GL(2, L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedPair {
    pub omega1: TorusChar,
    pub omega2: TorusChar,
}

impl InducedPair {
    pub fn new(omega1: TorusChar, omega2: TorusChar) -> Result<Self> {
        if omega1.legendre() != omega2.legendre() {
            return invalid("omega1 and omega2 describe different splitting types");
        }
        if omega1.conductor() > 1 {
            return Err(Error::Scope("c(Omega1) must be 0 or 1".into()));
        }
        if omega2.conductor() != 0 {
            return Err(Error::Scope("Omega2 must be unramified".into()));
        }
        Ok(InducedPair { omega1, omega2 })
    }

    pub fn is_unramified(&self) -> bool {
        self.omega1.conductor() == 0 && self.omega2.conductor() == 0
    }

    /// `(Omega1 Omega2)(uniformizer) * omega_pi(uniformizer) = 1`.
    pub fn central_compatible(&self, rep: &RepData) -> bool {
        let prod = &self.omega1.at_base_uniformizer() * &self.omega2.at_base_uniformizer();
        (&prod * &rep.omega_pi()).is_one()
    }

    /// Values of `Omega1 Omega2^{-1}` at uniformizers.
    pub fn ratio_values(&self) -> Result<CharValues> {
        let q = |a: &CoeffElem, b: &CoeffElem| a.checked_div(b);
        Ok(match (self.omega1.values(), self.omega2.values()) {
            (CharValues::Inert { w: a }, CharValues::Inert { w: b }) => {
                CharValues::Inert { w: q(a, b)? }
            }
            (
                CharValues::Ramified { w_l: a, unit: ua },
                CharValues::Ramified { w_l: b, unit: ub },
            ) => CharValues::Ramified {
                w_l: q(a, b)?,
                unit: q(ua, ub)?,
            },
            (CharValues::Split { w1: a1, w2: a2 }, CharValues::Split { w1: b1, w2: b2 }) => {
                CharValues::Split {
                    w1: q(a1, b1)?,
                    w2: q(a2, b2)?,
                }
            }
            _ => return invalid("omega1 and omega2 describe different splitting types"),
        })
    }

    /// The torus character `Omega(z) = Omega1(conj z)^{-1} Omega2(z)^{-1}`
    /// against which the Waldspurger model is taken.
    ///
    /// Conjugation fixes the inert uniformizer, swaps the split components, and
    /// moves the ramified uniformizer by the unit `-1`, on which `Omega1` is
    /// trivial when unramified. For `c(Omega1) = 1` in the ramified case the
    /// returned `w_l` omits `Omega1(-1)`; it is not consumed there.
    pub fn waldspurger_character(&self) -> Result<TorusChar> {
        let inv = |x: &CoeffElem| x.inv();
        let conductor = self.omega1.conductor().max(self.omega2.conductor());
        let values = match (self.omega1.values(), self.omega2.values()) {
            (CharValues::Inert { w: a }, CharValues::Inert { w: b }) => {
                CharValues::Inert { w: inv(&(a * b))? }
            }
            (CharValues::Ramified { w_l: a, .. }, CharValues::Ramified { w_l: b, .. }) => {
                let w_l = inv(&(a * b))?;
                let at_base = inv(
                    &(&self.omega1.at_base_uniformizer() * &self.omega2.at_base_uniformizer())
                )?;
                let unit = at_base.checked_div(&(&w_l * &w_l))?;
                CharValues::Ramified { w_l, unit }
            }
            (CharValues::Split { w1: a1, w2: a2 }, CharValues::Split { w1: b1, w2: b2 }) => {
                CharValues::Split {
                    w1: inv(&(a2 * b1))?,
                    w2: inv(&(a1 * b2))?,
                }
            }
            _ => return invalid("omega1 and omega2 describe different splitting types"),
        };
        TorusChar::new(conductor, values)
    }
}

/// Representatives of `T(F) \ GL(2, F) / I` (and of `/ K` via `DiagPower`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CosetLabel {
    /// `diag(uniformizer^m, 1)`, `m >= 0`.
    DiagPower(u32),
    /// `diag(uniformizer^m, 1) w`, `m >= 1`.
    DiagPowerW(u32),
    /// The Weyl element `w = [0 1; -1 0]`.
    W,
    /// `[1 0; u0 1]`, ramified `L` only.
    U0,
    /// `[1 0; u1 1]`, split `L` only.
    U1,
    /// `[1 0; u2 1]`, split `L` only.
    U2,
}

impl CosetLabel {
    pub fn valid_for(self, legendre: Legendre) -> bool {
        match self {
            CosetLabel::DiagPowerW(0) => false,
            CosetLabel::U0 => legendre == Legendre::Ramified,
            CosetLabel::U1 | CosetLabel::U2 => legendre == Legendre::Split,
            _ => true,
        }
    }
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosetLabel::DiagPower(m) => write!(f, "diag{m}"),
            CosetLabel::DiagPowerW(m) => write!(f, "diag{m}w"),
            CosetLabel::W => write!(f, "w"),
            CosetLabel::U0 => write!(f, "u0"),
            CosetLabel::U1 => write!(f, "u1"),
            CosetLabel::U2 => write!(f, "u2"),
        }
    }
}

/// Whether the representation has an `(S, Omega)`-Waldspurger model.
///
/// Principal series always do. For `chi St`: split always; a conductor-0
/// `Omega` must avoid `chi o N`. In the inert case `N` maps the uniformizer to
/// its square, so `chi o N` takes the value `chi^2` there and the central
/// condition forces equality; no unramified `Omega` works. In the ramified case
/// `Omega = chi' (chi o N)` with `chi'` trivial or the unramified quadratic
/// character, and only the latter (value `-chi` at the uniformizer of `L`)
/// gives a model. Ramified `Omega` always gives a model.
pub fn waldspurger_exists(field: &LocalField, rep: &RepData, omega: &TorusChar) -> Result<bool> {
    omega.expect_legendre(field.legendre(), "omega")?;
    let chi = match rep {
        RepData::UnramifiedPS { .. } => return Ok(true),
        RepData::SteinbergTwist { chi } => chi,
    };
    if omega.conductor() > 0 {
        return Ok(true);
    }
    Ok(match omega.values() {
        CharValues::Split { .. } => true,
        CharValues::Inert { w } => *w != chi * chi,
        CharValues::Ramified { w_l, .. } => *w_l == -chi,
    })
}

/// Central compatibility `Omega|_{F^x} = omega_pi`, checked at the uniformizer.
pub fn central_compat_check(rep: &RepData, omega: &TorusChar, field: &LocalField) -> bool {
    omega.legendre() == field.legendre() && omega.at_base_uniformizer() == rep.omega_pi()
}

/// Everything known about one non-archimedean place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSetup {
    pub field: LocalField,
    pub rep: RepData,
    pub omega: Option<TorusChar>,
    pub pair: Option<InducedPair>,
}

impl LocalSetup {
    /// `omega` as given, else derived from the induced pair. Both present must agree.
    pub fn effective_omega(&self) -> Result<TorusChar> {
        let derived = self
            .pair
            .as_ref()
            .map(|p| p.waldspurger_character())
            .transpose()?;
        match (&self.omega, derived) {
            (Some(o), Some(d)) => {
                if !o.agrees_with(&d) {
                    return invalid(
                        "omega disagrees with the character derived from omega1, omega2",
                    );
                }
                Ok(o.clone())
            }
            (Some(o), None) => Ok(o.clone()),
            (None, Some(d)) => Ok(d),
            (None, None) => invalid("need omega or the pair omega1/omega2"),
        }
    }

    pub fn pair(&self) -> Result<&InducedPair> {
        self.pair
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("omega1/omega2 required".into()))
    }
}

// ---------------------------------------------------------------------------
// JSON

/// A coefficient on the wire: a rational string, an integer, or `{a,b,c,d}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffInput {
    Int(i64),
    Str(String),
    Obj(CoeffJson),
}

impl CoeffInput {
    pub fn to_elem(&self, q: u64) -> Result<CoeffElem> {
        match self {
            CoeffInput::Int(n) => Ok(CoeffElem::int(*n)),
            CoeffInput::Str(s) => parse_coeff_str(s, q),
            CoeffInput::Obj(o) => o.to_elem(q),
        }
    }
}

impl From<&CoeffElem> for CoeffInput {
    fn from(c: &CoeffElem) -> Self {
        CoeffInput::Obj(CoeffJson::from(c))
    }
}

/// Short string forms: `"p/q"`, `"i"`, `"-i"`, `"r"`, `"-r"`.
fn parse_coeff_str(s: &str, q: u64) -> Result<CoeffElem> {
    match s.trim() {
        "i" => Ok(CoeffElem::i()),
        "-i" => Ok(-CoeffElem::i()),
        "r" => Ok(CoeffElem::sqrt_q(q)),
        "-r" => Ok(-CoeffElem::sqrt_q(q)),
        other => Ok(CoeffElem::rational(crate::arith::parse_rational(other)?)),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RepJson {
    Unramified {
        alpha1: CoeffInput,
        alpha2: CoeffInput,
    },
    Steinberg {
        chi: CoeffInput,
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusCharJson {
    #[serde(default)]
    pub conductor: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<CoeffInput>,
    #[serde(default, rename = "wL", skip_serializing_if = "Option::is_none")]
    pub w_l: Option<CoeffInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<CoeffInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w1: Option<CoeffInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w2: Option<CoeffInput>,
}

impl TorusCharJson {
    pub fn to_char(&self, field: &LocalField) -> Result<TorusChar> {
        let q = field.q();
        let need = |v: &Option<CoeffInput>, name: &str| -> Result<CoeffElem> {
            v.as_ref()
                .ok_or_else(|| {
                    Error::InvalidInput(format!("{} character needs `{name}`", field.legendre()))
                })?
                .to_elem(q)
        };
        match field.legendre() {
            Legendre::Inert => TorusChar::inert(self.conductor, need(&self.w, "w")?),
            Legendre::Ramified => {
                let unit = match &self.unit {
                    Some(u) => u.to_elem(q)?,
                    None => CoeffElem::one(),
                };
                TorusChar::ramified_with_unit(self.conductor, need(&self.w_l, "wL")?, unit)
            }
            Legendre::Split => {
                TorusChar::split(self.conductor, need(&self.w1, "w1")?, need(&self.w2, "w2")?)
            }
        }
    }
}

impl From<&TorusChar> for TorusCharJson {
    fn from(t: &TorusChar) -> Self {
        let c = |x: &CoeffElem| Some(CoeffInput::from(x));
        let mut out = TorusCharJson {
            conductor: t.conductor(),
            ..Default::default()
        };
        match t.values() {
            CharValues::Inert { w } => out.w = c(w),
            CharValues::Ramified { w_l, unit } => {
                out.w_l = c(w_l);
                if !unit.is_one() {
                    out.unit = c(unit);
                }
            }
            CharValues::Split { w1, w2 } => {
                out.w1 = c(w1);
                out.w2 = c(w2);
            }
        }
        out
    }
}

/// `{ "q", "legendre", "rep", "omega"?, "omega1"?, "omega2"? }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalSetupJson {
    pub q: u64,
    pub legendre: i64,
    pub rep: RepJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<TorusCharJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega1: Option<TorusCharJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega2: Option<TorusCharJson>,
}

impl LocalSetupJson {
    pub fn to_setup(&self) -> Result<LocalSetup> {
        let field = LocalField::new(self.q, Legendre::from_symbol(self.legendre)?)?;
        let rep = match &self.rep {
            RepJson::Unramified { alpha1, alpha2 } => {
                RepData::unramified(alpha1.to_elem(self.q)?, alpha2.to_elem(self.q)?, self.q)?
            }
            RepJson::Steinberg { chi } => RepData::steinberg(chi.to_elem(self.q)?)?,
        };
        let omega = self.omega.as_ref().map(|o| o.to_char(&field)).transpose()?;
        let pair = match (&self.omega1, &self.omega2) {
            (Some(a), Some(b)) => Some(InducedPair::new(a.to_char(&field)?, b.to_char(&field)?)?),
            (None, None) => None,
            _ => return invalid("omega1 and omega2 must be given together"),
        };
        Ok(LocalSetup {
            field,
            rep,
            omega,
            pair,
        })
    }
}

impl From<&LocalSetup> for LocalSetupJson {
    fn from(s: &LocalSetup) -> Self {
        let rep = match &s.rep {
            RepData::UnramifiedPS { alpha1, alpha2 } => RepJson::Unramified {
                alpha1: alpha1.into(),
                alpha2: alpha2.into(),
            },
            RepData::SteinbergTwist { chi } => RepJson::Steinberg { chi: chi.into() },
        };
        LocalSetupJson {
            q: s.field.q(),
            legendre: s.field.legendre().symbol(),
            rep,
            omega: s.omega.as_ref().map(TorusCharJson::from),
            omega1: s.pair.as_ref().map(|p| TorusCharJson::from(&p.omega1)),
            omega2: s.pair.as_ref().map(|p| TorusCharJson::from(&p.omega2)),
        }
    }
}
