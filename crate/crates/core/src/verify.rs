//! The invariant suite behind `waldzeta verify`.
//!
//! Each check draws from its own `ChaCha8` stream seeded by `(seed, index)`, so
//! adding or reordering checks does not perturb the others.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::archimedean::{
    arch_I, arch_I_quadrature, cartan_z, delta_derivative_fd, lie_action_closed, lie_action_fd,
    lowering_nonsplit_with, lowering_residual_nonsplit, lowering_residual_split,
    lowering_split_with, nonsplit_radial, split_radial_with_derivative, zeta_infinity, ArchParams,
    LieGen,
};
use crate::arith::{ratfunc_reduce, series_expand, CoeffElem, Poly, DEFAULT_ORDER};
use crate::global::{
    global_product, is_fundamental, is_prime, legendre_of_prime, x_at, y_infinity, y_table,
    GlobalConfig,
};
use crate::local_data::{
    central_compat_check, waldspurger_exists, CosetLabel, Legendre, RepData, TorusChar,
};
use crate::local_zeta::{newform_constant, oracle_mismatch, zeta_for_setup, ZetaKind};
use crate::sample::{self, SteinbergCase};
use crate::waldspurger::{
    spherical_generating_series, spherical_values_recurrence, steinberg_table,
};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

type Outcome = std::result::Result<usize, String>;

type Check = (&'static str, &'static str, fn(&mut ChaCha8Rng) -> Outcome);

const CHECKS: &[Check] = &[
    ("core_arith", "field_axioms", field_axioms),
    (
        "core_arith",
        "series_times_denominator",
        series_times_denominator,
    ),
    (
        "core_arith",
        "reduce_idempotent_and_scale_invariant",
        reduce_invariants,
    ),
    ("local_data", "existence_total", existence_total),
    ("local_data", "central_compat_swap", central_compat_swap),
    (
        "waldspurger_values",
        "recurrence_matches_generating_function",
        spherical_oracle,
    ),
    (
        "waldspurger_values",
        "vanishing_below_conductor",
        vanishing_below_conductor,
    ),
    ("waldspurger_values", "split_unit_sum", split_unit_sum),
    ("waldspurger_values", "split_unit_ratio", split_unit_ratio),
    ("waldspurger_values", "diag_power_ratio", diag_power_ratio),
    (
        "local_zeta",
        "closed_form_factorization",
        zeta_factorization,
    ),
    ("local_zeta", "oracle_unramified", oracle_unramified),
    ("local_zeta", "oracle_steinberg", oracle_steinberg),
    (
        "local_zeta",
        "unramified_constant_term",
        unramified_constant_term,
    ),
    ("local_zeta", "newform_prefactors", newform_prefactors),
    ("archimedean", "lowering_residuals", lowering_residuals),
    (
        "archimedean",
        "zeta_infinity_composition",
        zeta_infinity_composition,
    ),
    ("archimedean", "arch_i_quadrature", arch_i_quadrature),
    ("archimedean", "cartan_quadratic", cartan_quadratic),
    (
        "archimedean",
        "lie_action_finite_difference",
        lie_action_fd_check,
    ),
    (
        "global_assembly",
        "y_table_matches_local",
        y_table_matches_local,
    ),
    ("global_assembly", "product_of_factors", product_of_factors),
    ("global_assembly", "higher_weight_zero", higher_weight_zero),
    (
        "global_assembly",
        "kronecker_brute_force",
        kronecker_brute_force,
    ),
    ("cli", "deterministic_json", deterministic_json),
];

pub fn run(seed: u64) -> Report {
    let checks: Vec<CheckResult> = (0..CHECKS.len()).map(|i| run_index(i, seed)).collect();
    let passed = checks.iter().all(|c| c.passed);
    Report {
        seed,
        passed,
        checks,
    }
}

/// Names of all checks, in run order.
pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|c| c.1)
}

/// One check by name, seeded exactly as in [`run`].
pub fn run_one(name: &str, seed: u64) -> Option<CheckResult> {
    CHECKS
        .iter()
        .position(|c| c.1 == name)
        .map(|i| run_index(i, seed))
}

fn run_index(i: usize, seed: u64) -> CheckResult {
    let (module, name, f) = CHECKS[i];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64 + 1) << 32));
    let (passed, cases, detail) = match f(&mut rng) {
        Ok(n) => (true, n, None),
        Err(e) => (false, 0, Some(e)),
    };
    CheckResult {
        module,
        name,
        passed,
        cases,
        detail,
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------------------------------------------------------------------------
// core_arith

fn field_axioms(rng: &mut ChaCha8Rng) -> Outcome {
    let n = 1000;
    for _ in 0..n {
        let q = sample::QS[rng.gen_range(0..sample::QS.len())];
        let (a, b, c) = (
            sample::any_coeff(rng, q),
            sample::any_coeff(rng, q),
            sample::any_coeff(rng, q),
        );
        ensure(&(&a + &b) + &c == &a + &(&b + &c), || {
            format!("+ assoc: {a}, {b}, {c}")
        })?;
        ensure(&(&a * &b) * &c == &a * &(&b * &c), || {
            format!("* assoc: {a}, {b}, {c}")
        })?;
        ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || {
            format!("distrib: {a}, {b}, {c}")
        })?;
        ensure(&a * &b == &b * &a, || format!("commute: {a}, {b}"))?;
        ensure((&a + &(-&a)).is_zero(), || format!("additive inverse: {a}"))?;
        if !a.is_zero() {
            ensure((&a * &a.inv().map_err(err)?).is_one(), || {
                format!("inverse: {a}")
            })?;
        }
    }
    Ok(n)
}

fn series_times_denominator(rng: &mut ChaCha8Rng) -> Outcome {
    let n = 200;
    let t = 20;
    for _ in 0..n {
        let q = sample::QS[rng.gen_range(0..sample::QS.len())];
        let f = sample::ratfunc_unit_den(rng, q, 3);
        let s = series_expand(&f, t).map_err(err)?;
        let prod = &Poly::new(s.coeffs().to_vec()) * f.den();
        for k in 0..=t {
            ensure(prod.coeff(k) == f.num().coeff(k), || {
                format!("{f}: coefficient {k}")
            })?;
        }
    }
    Ok(n)
}

fn reduce_invariants(rng: &mut ChaCha8Rng) -> Outcome {
    let n = 200;
    for _ in 0..n {
        let q = sample::QS[rng.gen_range(0..sample::QS.len())];
        let num = sample::poly(rng, q, 3);
        let mut den = sample::poly(rng, q, 2);
        if den.is_zero() {
            den = Poly::one();
        }
        let common = &sample::poly(rng, q, 1) + &Poly::one();
        let c = sample::coeff(rng, q);
        let f = ratfunc_reduce(num.clone(), den.clone()).map_err(err)?;
        let again = ratfunc_reduce(f.num().clone(), f.den().clone()).map_err(err)?;
        ensure(again == f, || format!("not idempotent: {f}"))?;
        if !common.is_zero() {
            let scaled =
                ratfunc_reduce(&num.scale(&c) * &common, &den.scale(&c) * &common).map_err(err)?;
            ensure(scaled == f, || format!("not scale invariant: {f}"))?;
        }
    }
    Ok(n)
}

// ---------------------------------------------------------------------------
// local_data

fn existence_total(rng: &mut ChaCha8Rng) -> Outcome {
    let n = 300;
    for _ in 0..n {
        let l = sample::legendre(rng);
        let c = rng.gen_range(0..4);
        let (f, omega) = {
            let (f, _, om) = sample::spherical(rng, l, c);
            (f, om)
        };
        let rep = if rng.gen_bool(0.5) {
            RepData::steinberg(sample::coeff(rng, f.q())).map_err(err)?
        } else {
            RepData::unramified(CoeffElem::one(), CoeffElem::i(), f.q()).map_err(err)?
        };
        let a = waldspurger_exists(&f, &rep, &omega).map_err(err)?;
        // same data rebuilt from its uniformizer values
        let again = TorusChar::new(omega.conductor(), omega.values().clone()).map_err(err)?;
        ensure(
            a == waldspurger_exists(&f, &rep, &again).map_err(err)?,
            || "not a function of the values".into(),
        )?;
    }
    Ok(n)
}

fn central_compat_swap(rng: &mut ChaCha8Rng) -> Outcome {
    let n = 300;
    for _ in 0..n {
        let l = sample::legendre(rng);
        let c = rng.gen_range(0..4);
        let (f, rep, om) = sample::spherical(rng, l, c);
        let RepData::UnramifiedPS { alpha1, alpha2 } = &rep else {
            unreachable!()
        };
        let swapped = RepData::unramified(alpha2.clone(), alpha1.clone(), f.q()).map_err(err)?;
        ensure(
            central_compat_check(&rep, &om, &f) == central_compat_check(&swapped, &om, &f),
            || "swap changed the answer".into(),
        )?;
        let other = TorusChar::trivial(l);
        ensure(
            central_compat_check(&rep, &other, &f) == central_compat_check(&swapped, &other, &f),
            || "swap changed the answer".into(),
        )?;
    }
    Ok(n)
}

// ---------------------------------------------------------------------------
// waldspurger_values

/// One randomized generating-function-vs-recurrence comparison through `A_{order-1}`.
pub fn spherical_case(rng: &mut ChaCha8Rng, order: usize) -> std::result::Result<(), String> {
    let l = sample::legendre(rng);
    let c = rng.gen_range(0..4);
    let (f, rep, om) = sample::spherical(rng, l, c);
    let gen = spherical_generating_series(&f, &rep, &om).map_err(err)?;
    let a = series_expand(&gen.gen, order - 1).map_err(err)?;
    let b = spherical_values_recurrence(&f, &rep, &om, order - 1).map_err(err)?;
    ensure(a.coeffs() == b.as_slice(), || {
        format!("q={} {l} c={c}: series and recurrence differ", f.q())
    })
}

fn spherical_oracle(rng: &mut ChaCha8Rng) -> Outcome {
    let n = 200;
    for _ in 0..n {
        spherical_case(rng, DEFAULT_ORDER)?;
    }
    Ok(n)
}

fn vanishing_below_conductor(rng: &mut ChaCha8Rng) -> Outcome {
    let n = 100;
    for _ in 0..n {
        let l = sample::legendre(rng);
        let c = rng.gen_range(1..4);
        let (f, rep, om) = sample::spherical(rng, l, c);
        let gen = spherical_generating_series(&f, &rep, &om).map_err(err)?;
        let a = series_expand(&gen.gen, 5).map_err(err)?;
        let b = spherical_values_recurrence(&f, &rep, &om, 5).map_err(err)?;
        for (m, bm) in b.iter().enumerate().take(c as usize) {
            ensure(a.coeff(m).is_zero() && bm.is_zero(), || {
                format!("A_{m} nonzero with c = {c}")
            })?;
        }
    }
    Ok(n)
}

fn split_tables(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> std::result::Result<
    Vec<(
        CoeffElem,
        CoeffElem,
        crate::waldspurger::WaldspurgerTable,
        CoeffElem,
    )>,
    String,
> {
    let mut out = Vec::new();
    while out.len() < n {
        let Some((f, rep, om)) = sample::steinberg_table_params(rng, Legendre::Split, 0) else {
            continue;
        };
        let RepData::SteinbergTwist { chi } = &rep else {
            unreachable!()
        };
        let t = steinberg_table(&f, &rep, &om, 4).map_err(err)?;
        let crate::local_data::CharValues::Split { w2, .. } = om.values() else {
            unreachable!()
        };
        out.push((f.q_elem(), chi.clone(), t, w2.clone()));
    }
    Ok(out)
}

fn split_unit_sum(rng: &mut ChaCha8Rng) -> Outcome {
    let n = 100;
    let mut used = 0;
    for (q, chi, t, w2) in split_tables(rng, n)? {
        if w2 == chi {
            continue;
        }
        used += 1;
        let lhs = t.value(CosetLabel::U1).map_err(err)? + t.value(CosetLabel::U2).map_err(err)?;
        let rhs = -&(&(&q - &CoeffElem::one()) * t.w());
        ensure(lhs == rhs, || "U1 + U2 != -(q-1) W".into())?;
    }
    Ok(used)
}

fn split_unit_ratio(rng: &mut ChaCha8Rng) -> Outcome {
    let n = 100;
    for (_, chi, t, w2) in split_tables(rng, n)? {
        let lhs = &w2 * t.value(CosetLabel::U2).map_err(err)?;
        let rhs = -&(&chi * t.value(CosetLabel::U1).map_err(err)?);
        ensure(lhs == rhs, || "Omega(1,p) U2 != -chi U1".into())?;
    }
    Ok(n)
}

fn diag_power_ratio(rng: &mut ChaCha8Rng) -> Outcome {
    let mut n = 0;
    while n < 200 {
        let l = sample::legendre(rng);
        let c = rng.gen_range(0..4);
        let Some((f, rep, om)) = sample::steinberg_table_params(rng, l, c) else {
            continue;
        };
        let t = steinberg_table(&f, &rep, &om, 6).map_err(err)?;
        let q = f.q_elem();
        for m in c.max(1)..=6 {
            let d = t.value(CosetLabel::DiagPower(m)).map_err(err)?;
            let dw = t.value(CosetLabel::DiagPowerW(m)).map_err(err)?;
            ensure(*d == -(&q * dw), || format!("{l} c={c} m={m}"))?;
        }
        n += 1;
    }
    Ok(n)
}

// ---------------------------------------------------------------------------
// local_zeta

fn zeta_factorization(rng: &mut ChaCha8Rng) -> Outcome {
    let mut n = 0;
    for l in Legendre::all() {
        for _ in 0..30 {
            let (_, z) = zeta_for_setup(&sample::unramified_setup(rng, l)).map_err(err)?;
            ensure(z.is_consistent(), || format!("unramified {l}"))?;
            n += 1;
        }
    }
    for case in SteinbergCase::all() {
        for _ in 0..30 {
            let (_, z) = zeta_for_setup(&sample::steinberg_setup(rng, case)).map_err(err)?;
            ensure(z.is_consistent(), || format!("{case:?}"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn oracle_unramified(rng: &mut ChaCha8Rng) -> Outcome {
    let per = 100;
    for l in Legendre::all() {
        for _ in 0..per {
            let s = sample::unramified_setup(rng, l);
            if let Some(e) = oracle_mismatch(&s, DEFAULT_ORDER).map_err(err)? {
                return Err(format!(
                    "unramified {l}, q={}: first mismatch at X^{e}",
                    s.field.q()
                ));
            }
        }
    }
    Ok(3 * per)
}

fn oracle_steinberg(rng: &mut ChaCha8Rng) -> Outcome {
    let per = 100;
    for case in SteinbergCase::all() {
        for _ in 0..per {
            let s = sample::steinberg_setup(rng, case);
            if let Some(e) = oracle_mismatch(&s, DEFAULT_ORDER).map_err(err)? {
                return Err(format!(
                    "{case:?}, q={}: first mismatch at X^{e}",
                    s.field.q()
                ));
            }
        }
    }
    Ok(6 * per)
}

fn unramified_constant_term(rng: &mut ChaCha8Rng) -> Outcome {
    let n = 60;
    for i in 0..n {
        let l = Legendre::all()[i % 3];
        let (_, z) = zeta_for_setup(&sample::unramified_setup(rng, l)).map_err(err)?;
        let s = series_expand(&z.closed_form, 0).map_err(err)?;
        ensure(s.coeff(0).is_one(), || {
            format!("{l}: constant term {}", s.coeff(0))
        })?;
    }
    Ok(n)
}

fn newform_prefactors(rng: &mut ChaCha8Rng) -> Outcome {
    let mut n = 0;
    for l in Legendre::all() {
        for _ in 0..20 {
            let s = sample::steinberg_setup(rng, SteinbergCase::Newform(l));
            let (kind, z) = zeta_for_setup(&s).map_err(err)?;
            ensure(kind == ZetaKind::SteinbergNewform, || "wrong branch".into())?;
            let q = s.field.q() as i64;
            let want = match l {
                Legendre::Ramified => crate::arith::rat(q, q + 1),
                Legendre::Split => crate::arith::rat(q - 1, q + 1),
                Legendre::Inert => crate::arith::rat(1, 1),
            };
            ensure(newform_constant(&s.field) == want, || {
                format!("{l}: prefactor")
            })?;
            let expect = z.l_den.scale(&CoeffElem::rational(want));
            ensure(z.y_factor == expect, || format!("{l}: y_factor"))?;
            n += 1;
        }
    }
    Ok(n)
}

// ---------------------------------------------------------------------------
// archimedean

/// `(max residual, min relative negative-control residual)` over the stated grids.
pub fn lowering_grid() -> (f64, f64) {
    let mut worst: f64 = 0.0;
    let mut control = f64::INFINITY;
    for ell in [2u32, 4, 6, 8] {
        let p = ArchParams::global(ell, 1);
        for k in 0..=39 {
            let zeta = 1.1 + 0.1 * k as f64;
            worst = worst.max(lowering_residual_nonsplit(&p, zeta).norm());
            let (f, df) = nonsplit_radial(ell, zeta);
            let pert = lowering_nonsplit_with(ell, zeta, zeta * f, f + zeta * df);
            control = control.min(pert.norm() / (zeta * f).norm());
        }
        for p in [
            ArchParams::global(ell, 1),
            ArchParams::split_model(ell, ell - 1, 1, 1),
        ] {
            for k in 0..=60 {
                let zeta = -3.0 + 0.1 * k as f64;
                worst = worst.max(lowering_residual_split(&p, zeta).norm());
                let (f, df) = split_radial_with_derivative(&p, zeta);
                let e = zeta.exp();
                let pert = lowering_split_with(&p, zeta, e * f, e * (f + df));
                control = control.min(pert.norm() / (e * f).norm());
            }
        }
    }
    (worst, control)
}

fn lowering_residuals(_: &mut ChaCha8Rng) -> Outcome {
    let (worst, control) = lowering_grid();
    ensure(worst < 1e-10, || format!("residual {worst:e}"))?;
    ensure(control > 1e-2, || {
        format!("negative control only {control:e}")
    })?;
    Ok(4 * (40 + 2 * 61))
}

fn zeta_infinity_composition(rng: &mut ChaCha8Rng) -> Outcome {
    let n = 200;
    for _ in 0..n {
        let ell = [2u32, 4, 6, 8][rng.gen_range(0..4)];
        let ell1 = rng.gen_range(1..ell);
        let d = [1u64, 5, 8, 12, 13][rng.gen_range(0..5)];
        let p = ArchParams::split_model(ell, ell1, ell - ell1, d);
        let re_min = (1.0 - (ell / 2) as f64) / 2.0;
        let s = Complex64::new(
            re_min + 0.05 + rng.gen_range(0.0..2.0),
            rng.gen_range(-1.0..1.0),
        );
        let lhs = zeta_infinity(&p, s).map_err(err)?;
        let scale = (2f64).powf((ell1 as f64 - (ell - ell1) as f64) / 2.0)
            * ((-(ell as f64) / 4.0 - s) * (d as f64).ln()).exp();
        let rhs = scale * arch_I(ell / 2, s).map_err(err)?;
        ensure((lhs - rhs).norm() <= 1e-12 * rhs.norm(), || {
            format!("ell={ell} s={s}: {lhs} vs {rhs}")
        })?;
    }
    Ok(n)
}

/// Worst relative error of `arch_I` against quadrature on the stated grid.
pub fn arch_i_grid() -> std::result::Result<f64, String> {
    let mut worst: f64 = 0.0;
    for k in 1..=6 {
        for s in [
            Complex64::new(0.5, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.5, 0.0),
            Complex64::new(1.0, 0.5),
        ] {
            let a = arch_I(k, s).map_err(err)?;
            let b = arch_I_quadrature(k, s, 1e-13).map_err(err)?;
            worst = worst.max((a - b).norm() / a.norm());
        }
    }
    Ok(worst)
}

fn arch_i_quadrature(_: &mut ChaCha8Rng) -> Outcome {
    let worst = arch_i_grid()?;
    ensure(worst < 1e-8, || format!("relative error {worst:e}"))?;
    Ok(24)
}

fn cartan_quadratic(rng: &mut ChaCha8Rng) -> Outcome {
    let n = 500;
    for _ in 0..n {
        let x = rng.gen_range(-3.0..3.0);
        let y: f64 = rng.gen_range(0.3..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        for y in [y, 1.0 / y] {
            let z2 = cartan_z(x, y).map_err(err)?.powi(2);
            let y2 = y * y;
            let r = y2 * z2 * z2 - (1.0 + x * x * y2 + y2 * y2) * z2 + y2;
            ensure(r.abs() < 1e-12 * (1.0 + y2 * z2 * z2), || {
                format!("x={x} y={y}: {r:e}")
            })?;
        }
    }
    Ok(2 * n)
}

fn lie_action_fd_check(_: &mut ChaCha8Rng) -> Outcome {
    let mut n = 0;
    for ell in [2u32, 4, 6] {
        let p = ArchParams::global(ell, 1);
        for zeta in [1.2, 1.7, 2.5, 4.0] {
            for x in [LieGen::D, LieGen::E, LieGen::F] {
                let fd = lie_action_fd(&p, zeta, x, 1e-5).map_err(err)?;
                let cl = lie_action_closed(&p, zeta, x);
                ensure((fd - cl).norm() < 1e-6, || {
                    format!("{x:?} ell={ell} zeta={zeta}")
                })?;
                n += 1;
            }
            let want = zeta * zeta / (1.0 - zeta.powi(4));
            for x in [LieGen::E, LieGen::F] {
                let d = delta_derivative_fd(zeta, x, 1e-6).map_err(err)?;
                ensure((d - want).abs() < 1e-6, || format!("delta' along {x:?}"))?;
                n += 1;
            }
        }
    }
    Ok(n)
}

// ---------------------------------------------------------------------------
// global_assembly

fn fixture() -> std::result::Result<GlobalConfig, String> {
    serde_json::from_str(sample::global_fixture_json()).map_err(err)
}

fn y_table_matches_local(_: &mut ChaCha8Rng) -> Outcome {
    let cfg = fixture()?;
    let t = y_table(&cfg).map_err(err)?;
    for p in cfg.bad_primes() {
        let mut setup = cfg.locals[&p].to_setup().map_err(err)?;
        setup.rep = setup.rep.contragredient().map_err(err)?;
        let (_, z) = zeta_for_setup(&setup).map_err(err)?;
        ensure(t.get(p) == z.y_factor, || {
            format!("Y_{p} differs from the local y_factor")
        })?;
    }
    Ok(cfg.bad_primes().len())
}

fn product_of_factors(rng: &mut ChaCha8Rng) -> Outcome {
    let cfg = fixture()?;
    let n = 20;
    for _ in 0..n {
        let s = Complex64::new(rng.gen_range(0.3..2.0), rng.gen_range(-1.0..1.0));
        let g = global_product(&cfg, s).map_err(err)?;
        let folded = g
            .factors
            .iter()
            .fold(Complex64::new(1.0, 0.0), |a, f| a * f.value);
        let t = y_table(&cfg).map_err(err)?;
        let mut ys = y_infinity(&cfg, s).map_err(err)?;
        for p in cfg.bad_primes() {
            ys *= t.get(p).eval_complex(x_at(p, s));
        }
        let from_factors = g
            .factors
            .iter()
            .filter(|f| f.place.starts_with("Y_") || f.place == "inf")
            .fold(Complex64::new(1.0, 0.0), |a, f| a * f.value);
        ensure((folded - g.value).norm() <= 1e-12 * g.value.norm(), || {
            format!("s={s}: product")
        })?;
        ensure((from_factors - ys).norm() <= 1e-12 * ys.norm(), || {
            format!("s={s}: Y factors")
        })?;
    }
    Ok(n)
}

fn higher_weight_zero(_: &mut ChaCha8Rng) -> Outcome {
    let mut cfg = fixture()?;
    for ell in [4, 6, 8] {
        cfg.ell = ell;
        let g = global_product(&cfg, Complex64::new(0.0, 0.0)).map_err(err)?;
        ensure(g.value == Complex64::new(0.0, 0.0), || {
            format!("ell={ell}: {}", g.value)
        })?;
    }
    Ok(3)
}

fn kronecker_brute_force(_: &mut ChaCha8Rng) -> Outcome {
    let mut n = 0;
    for d in -99i64..100 {
        if !is_fundamental(d) {
            continue;
        }
        for p in (2..100u64).filter(|&p| is_prime(p)) {
            let want = if d.rem_euclid(p as i64) == 0 {
                0
            } else if p == 2 {
                // odd D is a 2-adic square iff D = 1 mod 8
                if (1..8)
                    .step_by(2)
                    .any(|x: i64| (x * x - d).rem_euclid(8) == 0)
                {
                    1
                } else {
                    -1
                }
            } else {
                let r = d.rem_euclid(p as i64) as u64;
                if (1..p).any(|x| x * x % p == r) {
                    1
                } else {
                    -1
                }
            };
            let got = legendre_of_prime(d, p).map_err(err)?.symbol();
            ensure(got == want, || format!("D={d} p={p}: {got} vs {want}"))?;
            n += 1;
        }
    }
    Ok(n)
}

// ---------------------------------------------------------------------------
// cli

fn deterministic_json(rng: &mut ChaCha8Rng) -> Outcome {
    let seed: u64 = rng.gen();
    let render = || -> std::result::Result<String, String> {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let s = sample::steinberg_setup(&mut r, SteinbergCase::OldSplitUnitW);
        let (_, z) = zeta_for_setup(&s).map_err(err)?;
        serde_json::to_string(&z).map_err(err)
    };
    ensure(render()? == render()?, || {
        "serialization differs between runs".into()
    })?;
    Ok(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_checks_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in [
            field_axioms as fn(&mut ChaCha8Rng) -> Outcome,
            kronecker_brute_force,
            lowering_residuals,
            split_unit_sum,
            split_unit_ratio,
            diag_power_ratio,
        ] {
            f(&mut rng).unwrap();
        }
    }
}
