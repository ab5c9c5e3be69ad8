//! Global assembly over `F = Q`, `L = Q(sqrt D)`: configuration checks, the
//! table of normalized local factors, the truncated global product, and the
//! classical inner-product value.
//!
//! Local data in a [`GlobalConfig`] describes `pi_p` itself. The Waldspurger
//! model used at `p` is that of the contragredient, so every local computation
//! runs on `pi_p~` with the torus character `Omega = Omega1(conj)^{-1} Omega2^{-1}`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::archimedean::{zeta_infinity, ArchParams};
use crate::arith::{rat, ComplexNum, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::local_data::{
    waldspurger_exists, CoeffInput, InducedPair, Legendre, LocalField, LocalSetup, LocalSetupJson,
    RepData, TorusChar, TorusCharJson,
};
use crate::local_zeta::{l_ratio, zeta_for_setup, ZetaKind};

// ---------------------------------------------------------------------------
// Elementary number theory

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Discriminant of a quadratic field (either sign).
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let a = d.unsigned_abs();
    match d.rem_euclid(4) {
        1 => is_squarefree(a),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Kronecker symbol `(D/p)`: the splitting type of `p` in `Q(sqrt D)`.
pub fn legendre_of_prime(d: i64, p: u64) -> Result<Legendre> {
    if !is_fundamental(d) {
        return Err(Error::InvalidInput(format!(
            "{d} is not a fundamental discriminant"
        )));
    }
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(Legendre::Ramified);
    }
    if p == 2 {
        return Ok(match d.rem_euclid(8) {
            1 | 7 => Legendre::Split,
            _ => Legendre::Inert,
        });
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 {
        Legendre::Split
    } else {
        Legendre::Inert
    })
}

/// The matrix `S(D)` defining the torus; determinant `-D/4`.
pub fn s_matrix(d: i64) -> Result<[[Rational; 2]; 2]> {
    if !is_fundamental(d) {
        return Err(Error::InvalidInput(format!(
            "{d} is not a fundamental discriminant"
        )));
    }
    Ok(if d.rem_euclid(4) == 0 {
        [[rat(-d, 4), rat(0, 1)], [rat(0, 1), rat(1, 1)]]
    } else {
        [[rat(1 - d, 4), rat(1, 2)], [rat(1, 2), rat(1, 1)]]
    })
}

/// `vol(Gamma_0(N) \ H) = (pi/3) N prod_{p | N} (1 + 1/p)`.
pub fn volume_gamma0(n: u64) -> f64 {
    prime_factors(n)
        .iter()
        .fold(PI / 3.0 * n as f64, |acc, &p| acc * (1.0 + 1.0 / p as f64))
}

// ---------------------------------------------------------------------------
// Configuration

/// Unramified data at a prime not dividing `N`: Satake values of `pi_p` and
/// optional unramified `Omega1`, `Omega2` (trivial when absent).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoodPrimeJson {
    pub alpha1: CoeffInput,
    pub alpha2: CoeffInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega1: Option<TorusCharJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega2: Option<TorusCharJson>,
}

/// Externally supplied global L-values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LValues {
    #[serde(rename = "L_half_pi")]
    pub l_half_pi: ComplexNum,
    #[serde(rename = "L_one_chi")]
    pub l_one_chi: ComplexNum,
    #[serde(rename = "L_half_bc_twist_nonzero")]
    pub l_half_bc_twist_nonzero: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalConfig {
    #[serde(rename = "D")]
    pub d: i64,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "Nprime")]
    pub nprime: u64,
    pub ell: u32,
    /// Keyed by the primes dividing `N`; `rep` is the Steinberg twist `pi_p`.
    #[serde(default)]
    pub locals: BTreeMap<u64, LocalSetupJson>,
    #[serde(default)]
    pub satake: BTreeMap<u64, GoodPrimeJson>,
    #[serde(default)]
    pub prime_bound: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_values: Option<LValues>,
}

/// Setup for a prime dividing `N`, already passed to the contragredient.
fn bad_prime_setup(cfg: &GlobalConfig, p: u64) -> Result<LocalSetup> {
    let json = cfg
        .locals
        .get(&p)
        .ok_or_else(|| Error::InvalidInput(format!("locals: missing entry for p = {p}")))?;
    let mut setup = json.to_setup()?;
    setup.rep = setup.rep.contragredient()?;
    if setup.omega.is_some() {
        return Err(Error::InvalidInput(format!(
            "locals[{p}]: give omega1/omega2; omega is derived"
        )));
    }
    Ok(setup)
}

/// Setup for a good prime with supplied Satake data, on the contragredient.
fn good_prime_setup(cfg: &GlobalConfig, p: u64) -> Result<LocalSetup> {
    let g = cfg
        .satake
        .get(&p)
        .ok_or_else(|| Error::InvalidInput(format!("satake: missing entry for p = {p}")))?;
    let field = LocalField::new(p, legendre_of_prime(cfg.d, p)?)?;
    let rep =
        RepData::unramified(g.alpha1.to_elem(p)?, g.alpha2.to_elem(p)?, p)?.contragredient()?;
    let ch = |o: &Option<TorusCharJson>| -> Result<TorusChar> {
        match o {
            Some(j) => j.to_char(&field),
            None => Ok(TorusChar::trivial(field.legendre())),
        }
    };
    let pair = InducedPair::new(ch(&g.omega1)?, ch(&g.omega2)?)?;
    if !pair.is_unramified() {
        return Err(Error::InvalidInput(format!(
            "satake[{p}]: omega1, omega2 must be unramified"
        )));
    }
    Ok(LocalSetup {
        field,
        rep,
        omega: None,
        pair: Some(pair),
    })
}

impl GlobalConfig {
    pub fn arch_params(&self) -> ArchParams {
        ArchParams::global(self.ell, self.d.unsigned_abs())
    }

    pub fn bad_primes(&self) -> Vec<u64> {
        prime_factors(self.n)
    }

    /// Every failed invariant, in a fixed order.
    pub fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.d <= 0 || !is_fundamental(self.d) {
            v.push(format!(
                "D = {} must be a positive fundamental discriminant",
                self.d
            ));
        }
        if !is_squarefree(self.n) {
            v.push(format!(
                "N = {} must be a squarefree positive integer",
                self.n
            ));
        }
        if self.nprime == 0 || self.n == 0 || !self.n.is_multiple_of(self.nprime) {
            v.push("Nprime must divide N".into());
        }
        if self.ell == 0 || !self.ell.is_multiple_of(2) {
            v.push(format!(
                "ell = {} must be a positive even integer",
                self.ell
            ));
        }
        for msg in self.arch_params().violations() {
            v.push(format!("archimedean: {msg}"));
        }
        if !v.is_empty() {
            return v;
        }
        let bad = self.bad_primes();
        for &p in self.locals.keys() {
            if !bad.contains(&p) {
                v.push(format!("locals[{p}]: {p} does not divide N"));
            }
        }
        for &p in &bad {
            if let Err(e) = self.check_bad_prime(p) {
                v.push(format!("locals[{p}]: {e}"));
            }
        }
        for &p in self.satake.keys() {
            if !is_prime(p) {
                v.push(format!("satake[{p}]: not a prime"));
            } else if bad.contains(&p) {
                v.push(format!("satake[{p}]: {p} divides N"));
            } else if let Err(e) = self.check_good_prime(p) {
                v.push(format!("satake[{p}]: {e}"));
            }
        }
        v
    }

    fn check_bad_prime(&self, p: u64) -> Result<()> {
        let json = self
            .locals
            .get(&p)
            .ok_or_else(|| Error::InvalidInput("missing".into()))?;
        let want = legendre_of_prime(self.d, p)?;
        if json.q != p {
            return Err(Error::InvalidInput(format!("q = {} must equal p", json.q)));
        }
        if json.legendre != want.symbol() {
            return Err(Error::InvalidInput(format!(
                "legendre = {} but (D/p) = {}",
                json.legendre,
                want.symbol()
            )));
        }
        let setup = bad_prime_setup(self, p)?;
        if !matches!(setup.rep, RepData::SteinbergTwist { .. }) {
            return Err(Error::InvalidInput(
                "rep must be a Steinberg twist for p | N".into(),
            ));
        }
        let pair = setup.pair()?;
        let in_nprime = self.nprime.is_multiple_of(p);
        let c1 = pair.omega1.conductor();
        if in_nprime && c1 != 1 {
            return Err(Error::InvalidInput("p | Nprime needs c(omega1) = 1".into()));
        }
        if !in_nprime && c1 != 0 {
            return Err(Error::InvalidInput(
                "p | N/Nprime needs omega1 unramified".into(),
            ));
        }
        if !in_nprime && want == Legendre::Inert {
            return Err(Error::InvalidInput(
                "p | N/Nprime must be split or ramified in L".into(),
            ));
        }
        if !pair.central_compatible(&setup.rep) {
            return Err(Error::InvalidInput(
                "omega1 omega2 restricted to Q_p must equal omega_pi".into(),
            ));
        }
        let omega = setup.effective_omega()?;
        if !waldspurger_exists(&setup.field, &setup.rep, &omega)? {
            return Err(Error::InvalidInput(
                "no Waldspurger model for this Omega".into(),
            ));
        }
        Ok(())
    }

    fn check_good_prime(&self, p: u64) -> Result<()> {
        let setup = good_prime_setup(self, p)?;
        if !setup.pair()?.central_compatible(&setup.rep) {
            return Err(Error::InvalidInput(
                "omega1 omega2 restricted to Q_p must equal omega_pi".into(),
            ));
        }
        Ok(())
    }

    fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }
}

// ---------------------------------------------------------------------------
// Y table

/// `Y_p` for one prime dividing `N`, with the branch that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct YEntry {
    pub kind: ZetaKind,
    pub y: RatFunc,
    /// `L(2s+1/2, pi~ x Omega1|) / L(2s+1, Omega1 Omega2^{-1})` at `p`.
    pub l_num: RatFunc,
    pub l_den: RatFunc,
}

/// Finite `Y_p` for `p | N`; `Y_p = 1` elsewhere. `Y_inf` is [`y_infinity`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct YTable {
    pub entries: BTreeMap<u64, YEntry>,
}

impl YTable {
    pub fn get(&self, p: u64) -> RatFunc {
        self.entries
            .get(&p)
            .map(|e| e.y.clone())
            .unwrap_or_else(RatFunc::one)
    }
}

pub fn y_table(cfg: &GlobalConfig) -> Result<YTable> {
    cfg.ensure_valid()?;
    let mut entries = BTreeMap::new();
    for p in cfg.bad_primes() {
        let setup = bad_prime_setup(cfg, p)?;
        let (kind, z) = zeta_for_setup(&setup)?;
        entries.insert(
            p,
            YEntry {
                kind,
                y: z.y_factor,
                l_num: z.l_num,
                l_den: z.l_den,
            },
        );
    }
    Ok(YTable { entries })
}

pub fn y_infinity(cfg: &GlobalConfig, s: ComplexNum) -> Result<ComplexNum> {
    zeta_infinity(&cfg.arch_params(), s)
}

/// `X = p^{-s}`.
pub fn x_at(p: u64, s: ComplexNum) -> ComplexNum {
    (-s * (p as f64).ln()).exp()
}

fn eval_at(f: &RatFunc, p: u64, s: ComplexNum) -> Result<ComplexNum> {
    let v = f.eval_complex(x_at(p, s));
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Domain(format!(
            "pole of a local factor at p = {p}, s = {s}"
        )));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Products

/// One factor of the global product, for reporting and cross-checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Factor {
    pub place: String,
    pub value: ComplexNum,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GlobalProduct {
    pub value: ComplexNum,
    pub prime_bound: u64,
    pub factors: Vec<Factor>,
}

/// Primes `p <= prime_bound` with `p` not dividing `N` and no Satake data.
pub fn missing_primes(cfg: &GlobalConfig) -> Vec<u64> {
    (2..=cfg.prime_bound)
        .filter(|&p| is_prime(p) && !cfg.n.is_multiple_of(p) && !cfg.satake.contains_key(&p))
        .collect()
}

fn check_s(cfg: &GlobalConfig, s: ComplexNum) -> Result<()> {
    let zero = s == Complex64::new(0.0, 0.0);
    if (cfg.ell == 2 && zero) || 2.0 * s.re + (cfg.ell / 2) as f64 > 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "need Re(2s + ell/2) > 1 or (ell = 2, s = 0); got s = {s}"
        )))
    }
}

/// Truncated `L`-ratio times all `Y_p` times `Y_inf`, multiplied in ascending
/// prime order with the archimedean factor last.
///
/// The `L`-ratio includes the local factors at every `p | N` and at the good
/// primes up to `prime_bound`; no tail estimate is attempted.
pub fn global_product(cfg: &GlobalConfig, s: ComplexNum) -> Result<GlobalProduct> {
    let table = y_table(cfg)?;
    check_s(cfg, s)?;
    let missing = missing_primes(cfg);
    if !missing.is_empty() {
        return Err(Error::MissingPrimes(missing));
    }
    let y_inf = y_infinity(cfg, s)?;
    let mut factors = Vec::new();
    if y_inf == Complex64::new(0.0, 0.0) {
        return Ok(GlobalProduct {
            value: y_inf,
            prime_bound: cfg.prime_bound,
            factors: vec![Factor {
                place: "inf".into(),
                value: y_inf,
            }],
        });
    }
    let mut primes: Vec<u64> = cfg
        .satake
        .keys()
        .copied()
        .filter(|&p| p <= cfg.prime_bound)
        .collect();
    primes.extend(cfg.bad_primes());
    primes.sort_unstable();
    for p in primes {
        match table.entries.get(&p) {
            Some(e) => {
                let l = eval_at(&e.l_num, p, s)? / eval_at(&e.l_den, p, s)?;
                factors.push(Factor {
                    place: format!("L_{p}"),
                    value: l,
                });
                factors.push(Factor {
                    place: format!("Y_{p}"),
                    value: eval_at(&e.y, p, s)?,
                });
            }
            None => {
                let setup = good_prime_setup(cfg, p)?;
                let (num, den) = l_ratio(&setup.field, &setup.rep, setup.pair()?)?;
                let l = eval_at(&num, p, s)? / eval_at(&den, p, s)?;
                factors.push(Factor {
                    place: format!("L_{p}"),
                    value: l,
                });
            }
        }
    }
    factors.push(Factor {
        place: "inf".into(),
        value: y_inf,
    });
    let value = factors
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, f| acc * f.value);
    Ok(GlobalProduct {
        value,
        prime_bound: cfg.prime_bound,
        factors,
    })
}

/// `i pi D^{-1/2} L(1/2, pi)/L(1, chi) prod_{p | N} Y_p(0)`: the global
/// integral at `s = 0` with supplied `L`-values in place of the Euler product.
pub fn global_z_at_zero(cfg: &GlobalConfig) -> Result<ComplexNum> {
    if cfg.ell != 2 {
        return Err(Error::Scope("the classical formula needs ell = 2".into()));
    }
    let table = y_table(cfg)?;
    let lv = cfg
        .l_values
        .ok_or_else(|| Error::InvalidInput("l_values required".into()))?;
    if lv.l_one_chi == Complex64::new(0.0, 0.0) {
        return Err(Error::DivisionByZero);
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut v = y_infinity(cfg, zero)? * lv.l_half_pi / lv.l_one_chi;
    for (&p, e) in &table.entries {
        v *= eval_at(&e.y, p, zero)?;
    }
    Ok(v)
}

/// The normalized Petersson inner product: global integral at `0` divided by
/// `vol(Gamma_0(N) \ H)`.
pub fn inner_product_value(cfg: &GlobalConfig) -> Result<ComplexNum> {
    Ok(global_z_at_zero(cfg)? / volume_gamma0(cfg.n))
}

/// The inner product is nonzero iff both central values are nonzero.
pub fn nonvanishing(l: &LValues) -> bool {
    l.l_half_pi != Complex64::new(0.0, 0.0) && l.l_half_bc_twist_nonzero
}
