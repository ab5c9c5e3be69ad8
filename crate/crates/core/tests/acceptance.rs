//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so every line is always printed.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use waldzeta::archimedean::{arch_I, arch_I_quadrature, zeta_infinity, ArchParams};
use waldzeta::arith::{CoeffElem, DEFAULT_ORDER};
use waldzeta::global::{
    global_product, legendre_of_prime, nonvanishing, x_at, y_table, GlobalConfig, LValues,
};
use waldzeta::local_data::{CharValues, Legendre, RepData, TorusChar};
use waldzeta::local_zeta::{oracle_mismatch, zeta_for_setup};
use waldzeta::sample::{self, SteinbergCase};
use waldzeta::verify;

const SEED: u64 = 42;

type Verdict = Result<String, String>;

const D5_FIXTURE: &str = r#"{
  "D": 5, "N": 6, "Nprime": 2, "ell": 2,
  "locals": {
    "2": {"q": 2, "legendre": -1, "rep": {"type": "steinberg", "chi": 1},
          "omega1": {"conductor": 1, "w": 1}, "omega2": {"conductor": 0, "w": 1}},
    "3": {"q": 3, "legendre": -1, "rep": {"type": "steinberg", "chi": -1},
          "omega1": {"conductor": 0, "w": 1}, "omega2": {"conductor": 0, "w": 1}}
  },
  "satake": {"7": {"alpha1": 1, "alpha2": 1}},
  "prime_bound": 7,
  "l_values": {"L_half_pi": [1.0, 0.0], "L_one_chi": [1.0, 0.0], "L_half_bc_twist_nonzero": true}
}"#;

fn within(limit: Duration, t: Instant) -> Result<Duration, String> {
    let e = t.elapsed();
    if e < limit {
        Ok(e)
    } else {
        Err(format!(
            "took {:.2}s, limit {:.0}s",
            e.as_secs_f64(),
            limit.as_secs_f64()
        ))
    }
}

fn criterion_1() -> Verdict {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let n = 200;
    for _ in 0..n {
        verify::spherical_case(&mut rng, DEFAULT_ORDER)?;
    }
    let e = within(Duration::from_secs(10), t)?;
    Ok(format!(
        "{n} parameter sets, {DEFAULT_ORDER} coefficients exact, {:.2}s",
        e.as_secs_f64()
    ))
}

fn criterion_2() -> Verdict {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let per = 100;
    for l in Legendre::all() {
        for _ in 0..per {
            let s = sample::unramified_setup(&mut rng, l);
            if let Some(e) = oracle_mismatch(&s, DEFAULT_ORDER).map_err(|e| e.to_string())? {
                return Err(format!("{l}, q={}: first mismatch at X^{e}", s.field.q()));
            }
        }
    }
    let e = within(Duration::from_secs(10), t)?;
    Ok(format!(
        "{per} sets per legendre value, exact to X^{DEFAULT_ORDER}, {:.2}s",
        e.as_secs_f64()
    ))
}

fn criterion_3() -> Verdict {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let per = 50;
    for case in SteinbergCase::all() {
        for _ in 0..per {
            let s = sample::steinberg_setup(&mut rng, case);
            if let Some(e) = oracle_mismatch(&s, DEFAULT_ORDER).map_err(|e| e.to_string())? {
                return Err(format!(
                    "{case:?}, q={}: first mismatch at X^{e}",
                    s.field.q()
                ));
            }
        }
    }
    let e = within(Duration::from_secs(10), t)?;
    Ok(format!(
        "{} branches x {per} sets, exact to X^{DEFAULT_ORDER}, {:.2}s",
        SteinbergCase::all().len(),
        e.as_secs_f64()
    ))
}

fn criterion_4() -> Verdict {
    let t = Instant::now();
    let grid = verify::arch_i_grid()?;
    if grid >= 1e-8 {
        return Err(format!("grid relative error {grid:e}"));
    }
    let i_pi = Complex64::new(0.0, PI);
    let e10 = (arch_I(1, Complex64::new(0.0, 0.0)).map_err(|e| e.to_string())? - i_pi).norm();
    if e10 >= 1e-12 {
        return Err(format!("|I(1,0) - i pi| = {e10:e}"));
    }
    let want = Complex64::new(-PI / 4.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let e21 = (arch_I(2, one).map_err(|e| e.to_string())? - want).norm();
    let q21 = (arch_I_quadrature(2, one, 1e-13).map_err(|e| e.to_string())? - want).norm();
    if e21 >= 1e-10 || q21 >= 1e-10 {
        return Err(format!(
            "I(2,1): closed form off by {e21:e}, quadrature by {q21:e}"
        ));
    }
    let e = within(Duration::from_secs(5), t)?;
    Ok(format!(
        "grid rel err {grid:.1e}, I(1,0) err {e10:.1e}, I(2,1) err {e21:.1e} (quadrature {q21:.1e}), {:.2}s",
        e.as_secs_f64()
    ))
}

fn criterion_5() -> Verdict {
    let mut notes = Vec::new();
    for ell in [4u32, 6, 8] {
        for d in [1u64, 5, 8] {
            let p = ArchParams::global(ell, d);
            let z0 = zeta_infinity(&p, Complex64::new(0.0, 0.0)).map_err(|e| e.to_string())?;
            if z0 != Complex64::new(0.0, 0.0) {
                return Err(format!("ell={ell} D={d}: Z(0) = {z0}"));
            }
            let mags = (2..=6)
                .map(|k| zeta_infinity(&p, Complex64::new(10f64.powi(-k), 0.0)).map(|z| z.norm()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            if !mags.windows(2).all(|w| w[1] < w[0]) {
                return Err(format!("ell={ell} D={d}: not monotone {mags:?}"));
            }
            // a simple zero: four decades of s give about four decades of |Z|
            if mags[4] > 1e-3 * mags[0] {
                return Err(format!("ell={ell} D={d}: not tending to 0 {mags:?}"));
            }
        }
        notes.push(format!("ell={ell}"));
    }
    Ok(format!(
        "Z(0) = 0 exactly and |Z(10^-k)| decreasing for {} (D in 1,5,8)",
        notes.join(", ")
    ))
}

fn criterion_6() -> Verdict {
    let (worst, control) = verify::lowering_grid();
    if worst >= 1e-10 {
        return Err(format!("max residual {worst:e}"));
    }
    if control <= 1e-2 {
        return Err(format!("min negative control {control:e}"));
    }
    Ok(format!(
        "max residual {worst:.1e}, min relative negative control {control:.2e}"
    ))
}

/// `L(2s+1/2, pi~ x Omega1|)` with `pi~` from Satake parameters, by hand.
fn pi_factor(alphas: [Complex64; 2], twist: Complex64, p: u64, s: Complex64) -> Complex64 {
    let y = (-(2.0 * s + 0.5) * (p as f64).ln()).exp();
    alphas.iter().map(|a| 1.0 / (1.0 - twist * y / a)).product()
}

/// `L(2s+1, mu)` for an unramified character `mu` of the torus, by hand.
fn hecke_factor(mu: &TorusChar, p: u64, s: Complex64) -> Complex64 {
    if mu.conductor() > 0 {
        return Complex64::new(1.0, 0.0);
    }
    let y = (-(2.0 * s + 1.0) * (p as f64).ln()).exp();
    match mu.values() {
        CharValues::Inert { w } => 1.0 / (1.0 - w.to_complex() * y * y),
        CharValues::Ramified { w_l, .. } => 1.0 / (1.0 - w_l.to_complex() * y),
        CharValues::Split { w1, w2 } => {
            1.0 / ((1.0 - w1.to_complex() * y) * (1.0 - w2.to_complex() * y))
        }
    }
}

/// The fixture checks: exact `Y_p` against the local module, and the product
/// at `s` against factors evaluated without the global assembly code.
fn global_checks(cfg: &GlobalConfig, s: Complex64) -> Result<(usize, f64), String> {
    let e = |e: waldzeta::Error| e.to_string();
    let table = y_table(cfg).map_err(e)?;
    let mut expected = zeta_infinity(&cfg.arch_params(), s).map_err(e)?;
    for p in cfg.bad_primes() {
        let mut setup = cfg.locals[&p].to_setup().map_err(e)?;
        setup.rep = setup.rep.contragredient().map_err(e)?;
        let (_, z) = zeta_for_setup(&setup).map_err(e)?;
        if table.get(p) != z.y_factor {
            return Err(format!("Y_{p} differs from the local y_factor"));
        }
        let pair = setup.pair().map_err(e)?;
        let chi = match &setup.rep {
            RepData::SteinbergTwist { chi } => chi.to_complex(),
            RepData::UnramifiedPS { .. } => return Err(format!("p={p}: not Steinberg")),
        };
        // L(s', chi St x mu) = (1 - chi mu q^{-1/2} q^{-s'})^{-1}
        let twist = pair.omega1.at_base_uniformizer().to_complex() / (p as f64).sqrt();
        let y = (-(2.0 * s + 0.5) * (p as f64).ln()).exp();
        let ratio = ratio_char(&pair.omega1, &pair.omega2)?;
        expected *= 1.0 / (1.0 - chi * twist * y) / hecke_factor(&ratio, p, s);
        expected *= z.y_factor.eval_complex(x_at(p, s));
    }
    for (&p, sat) in cfg.satake.range(..=cfg.prime_bound) {
        if cfg.n.is_multiple_of(p) {
            continue;
        }
        let a =
            |c: &waldzeta::local_data::CoeffInput| c.to_elem(p).map(|x| x.to_complex()).map_err(e);
        // config holds pi; the integral wants its contragredient, trivial Omega
        let alphas = [1.0 / a(&sat.alpha1)?, 1.0 / a(&sat.alpha2)?];
        let l = legendre_of_prime(cfg.d, p).map_err(e)?;
        expected *= pi_factor(alphas, Complex64::new(1.0, 0.0), p, s)
            / hecke_factor(&TorusChar::trivial(l), p, s);
    }
    let got = global_product(cfg, s).map_err(e)?.value;
    let rel = (got - expected).norm() / expected.norm();
    if rel >= 1e-12 {
        return Err(format!(
            "product {got} vs factors {expected}: rel err {rel:e}"
        ));
    }
    Ok((cfg.bad_primes().len(), rel))
}

/// `Omega1 Omega2^{-1}` for unramified or newform pairs.
fn ratio_char(o1: &TorusChar, o2: &TorusChar) -> Result<TorusChar, String> {
    let inv = |x: &CoeffElem| x.inv().map_err(|e| e.to_string());
    let c = o1.conductor().max(o2.conductor());
    match (o1.values(), o2.values()) {
        (CharValues::Inert { w: a }, CharValues::Inert { w: b }) => {
            TorusChar::inert(c, a * &inv(b)?)
        }
        (CharValues::Ramified { w_l: a, .. }, CharValues::Ramified { w_l: b, .. }) => {
            TorusChar::ramified(c, a * &inv(b)?)
        }
        (CharValues::Split { w1: a1, w2: a2 }, CharValues::Split { w1: b1, w2: b2 }) => {
            TorusChar::split(c, a1 * &inv(b1)?, a2 * &inv(b2)?)
        }
        _ => return Err("characters on different tori".into()),
    }
    .map_err(|e| e.to_string())
}

fn criterion_7() -> Verdict {
    let s = Complex64::new(0.75, 0.0);
    let d13: GlobalConfig =
        serde_json::from_str(sample::global_fixture_json()).map_err(|e| e.to_string())?;
    let d13_note = match (d13.validate().is_empty(), global_checks(&d13, s)) {
        (true, Ok((n, rel))) => {
            format!("D=13 fixture: {n} exact Y_p matches, product rel err {rel:.1e}")
        }
        (false, _) => format!("D=13 fixture invalid: {:?}", d13.validate()),
        (true, Err(e)) => format!("D=13 fixture failed: {e}"),
    };
    let d5: GlobalConfig = serde_json::from_str(D5_FIXTURE).map_err(|e| e.to_string())?;
    let violations = d5.validate();
    if !violations.is_empty() {
        return Err(format!(
            "D=5, N=6, N'=2 admits no valid local data: 3 is inert in Q(sqrt 5) but p | N/N' must be split or ramified ({}); {d13_note}",
            violations.join("; ")
        ));
    }
    let (n, rel) = global_checks(&d5, s)?;
    Ok(format!(
        "D=5: {n} exact Y_p matches, product rel err {rel:.1e}; {d13_note}"
    ))
}

fn criterion_8() -> Verdict {
    let mut rows = Vec::new();
    for (l_half, twist, want) in [
        (0.0, false, false),
        (0.0, true, false),
        (1.0, false, false),
        (1.0, true, true),
    ] {
        let lv = LValues {
            l_half_pi: Complex64::new(l_half, 0.0),
            l_one_chi: Complex64::new(1.0, 0.0),
            l_half_bc_twist_nonzero: twist,
        };
        let got = nonvanishing(&lv);
        if got != want {
            return Err(format!(
                "L(1/2,pi)={l_half}, twist nonzero={twist}: got {got}"
            ));
        }
        rows.push(format!("({l_half},{twist})->{got}"));
    }
    Ok(format!("truth table {}", rows.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Verdict); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        match f() {
            Ok(msg) => println!("criterion {n}: PASS  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL  {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
