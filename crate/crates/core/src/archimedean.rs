//! The real place: weight-`ell` vectors in Waldspurger models of holomorphic
//! discrete series, the lowering-operator checks, and the local integral.
//!
//! Everything here is double precision.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::ComplexNum;
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

// ---------------------------------------------------------------------------
// Gamma

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

fn lanczos(z: Complex64) -> Complex64 {
    // valid for Re z >= 1/2
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * x
}

/// `Gamma(z)`; poles give infinities.
pub fn gamma(z: ComplexNum) -> ComplexNum {
    if is_nonpositive_integer(z) {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    if z.re < 0.5 {
        PI / ((PI * z).sin() * lanczos(1.0 - z))
    } else {
        lanczos(z)
    }
}

/// `1/Gamma(z)`, exactly zero at the poles of `Gamma`.
pub fn rgamma(z: ComplexNum) -> ComplexNum {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        (PI * z).sin() * lanczos(1.0 - z) / PI
    } else {
        1.0 / lanczos(z)
    }
}

fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => I,
        2 => Complex64::new(-1.0, 0.0),
        _ => -I,
    }
}

fn real_pow(base: f64, e: Complex64) -> Complex64 {
    (e * base.ln()).exp()
}

// ---------------------------------------------------------------------------
// Quadrature

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 48;

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

fn adapt<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> Result<(Complex64, f64)> {
    let (v, err) = gk15(f, a, b);
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Quadrature(format!(
            "non-finite integrand on [{a}, {b}]"
        )));
    }
    if err <= tol || (b - a) < 1e-15 {
        return Ok((v, err));
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature(format!(
            "error {err:.3e} above {tol:.3e} on [{a}, {b}]"
        )));
    }
    let m = 0.5 * (a + b);
    let (l, el) = adapt(f, a, m, 0.5 * tol, depth + 1)?;
    let (r, er) = adapt(f, m, b, 0.5 * tol, depth + 1)?;
    Ok((l + r, el + er))
}

/// Adaptive 7/15-point Gauss-Kronrod on `[a, b]`: `(value, error estimate)`.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    adapt(&f, a, b, tol, 0)
}

// ---------------------------------------------------------------------------
// I(k, s)

fn check_convergent(k: u32, s: Complex64) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    if 2.0 * s.re + k as f64 <= 1.0 {
        return Err(Error::Domain(format!("I({k}, {s}) needs Re(2s + k) > 1")));
    }
    Ok(())
}

/// `I(k, s) = int_R (i + x)^k / (1 + x^2)^(k + s) dx` in closed form.
#[allow(non_snake_case)]
pub fn arch_I(k: u32, s: ComplexNum) -> Result<ComplexNum> {
    if k == 1 && s == Complex64::new(0.0, 0.0) {
        return Ok(I * PI);
    }
    check_convergent(k, s)?;
    let kf = k as f64;
    let two_pow = real_pow(2.0, 2.0 - 2.0 * s - kf);
    Ok(i_pow(k as i64) * two_pow * PI * gamma(2.0 * s + kf - 1.0) * rgamma(s) * rgamma(s + kf))
}

/// `I(k, s)` by quadrature after `x = tan u`, folding `u` and `-u` together.
/// At `k = 1, s = 0` the folded integrand is bounded and gives the symmetric
/// principal value.
#[allow(non_snake_case)]
pub fn arch_I_quadrature(k: u32, s: ComplexNum, tol: f64) -> Result<ComplexNum> {
    if !(k == 1 && s == Complex64::new(0.0, 0.0)) {
        check_convergent(k, s)?;
    }
    let kf = k as f64;
    // (i + tan u)^k cos^(2k+2s) u sec^2 u = (sin u + i cos u)^k cos^(k+2s-2) u
    let f = |u: f64| {
        let (sn, cs) = u.sin_cos();
        if cs <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let w = real_pow(cs, kf + 2.0 * s - 2.0);
        (Complex64::new(sn, cs).powu(k) + Complex64::new(-sn, cs).powu(k)) * w
    };
    Ok(integrate(f, 0.0, PI / 2.0, tol)?.0)
}

// ---------------------------------------------------------------------------
// Parameters

/// Data at the real place.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArchParams {
    pub ell: u32,
    pub mu: ComplexNum,
    pub mu1: ComplexNum,
    pub mu2: ComplexNum,
    pub eps1: u8,
    pub eps2: u8,
    /// Non-split torus character `gamma^mu e^{i m delta}`.
    pub m_twist: i64,
    pub ell1: u32,
    pub ell2: u32,
    pub d: u64,
}

impl ArchParams {
    /// The choices of the global setting: `ell1 = ell2 = ell/2`, `mu = 0`.
    pub fn global(ell: u32, d: u64) -> Self {
        Self::split_model(ell, ell / 2, ell - ell / 2, d)
    }

    /// `Omega = |x|^{(ell1-ell2)/2} |y|^{(ell2-ell1)/2}` on the split torus.
    pub fn split_model(ell: u32, ell1: u32, ell2: u32, d: u64) -> Self {
        let half = (ell1 as f64 - ell2 as f64) / 2.0;
        ArchParams {
            ell,
            mu: Complex64::new(0.0, 0.0),
            mu1: Complex64::new(half, 0.0),
            mu2: Complex64::new(-half, 0.0),
            eps1: 0,
            eps2: (ell % 2) as u8,
            m_twist: ell as i64,
            ell1,
            ell2,
            d,
        }
    }

    /// Problems with the parameter set; empty when consistent.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.ell == 0 {
            out.push("ell must be positive".into());
        }
        if self.ell1 == 0 || self.ell2 == 0 || self.ell1 + self.ell2 != self.ell {
            out.push("ell1, ell2 must be positive with ell1 + ell2 = ell".into());
        }
        if self.eps1 > 1 || self.eps2 > 1 || (self.eps1 + self.eps2) as u32 % 2 != self.ell % 2 {
            out.push("eps1 + eps2 must be congruent to ell mod 2".into());
        }
        if (self.mu1 + self.mu2 - self.mu).norm() > 1e-12 {
            out.push("mu1 + mu2 must equal mu".into());
        }
        if self.m_twist.unsigned_abs() != self.ell as u64 {
            out.push("m must be +-ell".into());
        }
        if self.d == 0 {
            out.push("D must be positive".into());
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Cartan decomposition

/// `z >= 1` with `[y x; 0 1/y] = k1 diag(z, 1/z) k2`.
pub fn cartan_z(x: f64, y: f64) -> Result<f64> {
    if y == 0.0 {
        return Err(Error::Domain("y must be nonzero".into()));
    }
    let y2 = y * y;
    let a = 1.0 + x * x * y2 + y2 * y2;
    let disc = (a * a - 4.0 * y2 * y2).max(0.0);
    Ok(((a + disc.sqrt()) / (2.0 * y2)).sqrt())
}

/// `g = diag(gamma, gamma) r(delta) diag(sign zeta, 1/zeta) r(theta)`, with
/// `r(a) = [cos a, sin a; -sin a, cos a]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartanCoords {
    pub gamma: f64,
    pub delta: f64,
    pub zeta: f64,
    pub theta: f64,
    pub sign: i8,
}

pub type Mat2 = [[f64; 2]; 2];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn rot(a: f64) -> Mat2 {
    let (s, c) = a.sin_cos();
    [[c, s], [-s, c]]
}

impl CartanCoords {
    pub fn to_matrix(&self) -> Mat2 {
        let d = [[self.sign as f64 * self.zeta, 0.0], [0.0, 1.0 / self.zeta]];
        let m = mat_mul(&mat_mul(&rot(self.delta), &d), &rot(self.theta));
        [
            [self.gamma * m[0][0], self.gamma * m[0][1]],
            [self.gamma * m[1][0], self.gamma * m[1][1]],
        ]
    }
}

/// Numeric Cartan coordinates of an invertible `g`.
pub fn cartan_decompose(g: &Mat2) -> Result<CartanCoords> {
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if det == 0.0 || !det.is_finite() {
        return Err(Error::Domain("matrix must be invertible".into()));
    }
    // diag(-1, 1) r(d) = r(-d) diag(-1, 1)
    let (sign, g) = if det > 0.0 {
        (1i8, *g)
    } else {
        (-1i8, [[-g[0][0], -g[0][1]], g[1]])
    };
    let gamma = det.abs().sqrt();
    let h = [
        [g[0][0] / gamma, g[0][1] / gamma],
        [g[1][0] / gamma, g[1][1] / gamma],
    ];
    let a = h[0][0] * h[0][0] + h[0][1] * h[0][1];
    let b = h[0][0] * h[1][0] + h[0][1] * h[1][1];
    let c = h[1][0] * h[1][0] + h[1][1] * h[1][1];
    let phi = 0.5 * (2.0 * b).atan2(a - c);
    let half_tr = 0.5 * (a + c);
    let lam = half_tr + (0.25 * (a - c) * (a - c) + b * b).sqrt();
    let zeta = lam.sqrt().max(1.0);
    let delta = -phi;
    let k2 = mat_mul(
        &[[1.0 / zeta, 0.0], [0.0, zeta]],
        &mat_mul(&rot(-delta), &h),
    );
    let theta = k2[0][1].atan2(k2[0][0]);
    let delta = if sign < 0 { -delta } else { delta };
    Ok(CartanCoords {
        gamma,
        delta,
        zeta,
        theta,
        sign,
    })
}

// ---------------------------------------------------------------------------
// Weight vectors

/// Non-split model, `S = +-1`: the weight-`ell` vector at Cartan coordinates.
pub fn weight_vector_nonsplit(c: &CartanCoords, p: &ArchParams) -> ComplexNum {
    let ell = p.ell as i64;
    let supported = (p.m_twist == ell && c.sign > 0) || (p.m_twist == -ell && c.sign < 0);
    if !supported {
        return Complex64::new(0.0, 0.0);
    }
    let radial = (c.zeta / (1.0 + c.zeta * c.zeta)).powi(p.ell as i32);
    real_pow(c.gamma, p.mu) * (I * (p.ell as f64) * (c.delta + c.theta)).exp() * radial
}

/// `g = t t0 [1 zeta; 0 1] r(theta)` with `t0^{-1} t t0 = diag(x+y, x-y)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitCoords {
    pub x_plus_y: f64,
    pub x_minus_y: f64,
    pub zeta: f64,
    pub theta: f64,
}

fn signed_pow(v: f64, eps: u8, mu: Complex64) -> Complex64 {
    let sgn = if v < 0.0 && eps == 1 { -1.0 } else { 1.0 };
    real_pow(v.abs(), mu) * sgn
}

/// Split model, `S = diag(-1, 1)`: the weight-`ell` vector, principal branch.
pub fn weight_vector_split(c: &SplitCoords, p: &ArchParams) -> Result<ComplexNum> {
    if c.x_plus_y == 0.0 || c.x_minus_y == 0.0 {
        return Err(Error::Domain(
            "torus element must have x+y and x-y nonzero".into(),
        ));
    }
    let omega = signed_pow(c.x_plus_y, p.eps1, p.mu1) * signed_pow(c.x_minus_y, p.eps2, p.mu2);
    let phase = (I * (p.ell as f64) * c.theta).exp();
    Ok(omega * phase * split_radial(p, c.zeta))
}

/// `(2i + 2 zeta)^{(mu1 - mu2)/2}`.
fn split_radial(p: &ArchParams, zeta: f64) -> Complex64 {
    let e = (p.mu1 - p.mu2) / 2.0;
    if e == Complex64::new(0.0, 0.0) {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::new(2.0 * zeta, 2.0).powc(e)
}

/// `(1/2)(zeta f' - ell (1 - zeta^2)/(1 + zeta^2) f)` for a supplied `f`, `f'`.
pub fn lowering_nonsplit_with(ell: u32, zeta: f64, f: Complex64, df: Complex64) -> Complex64 {
    let z2 = zeta * zeta;
    0.5 * (zeta * df - (ell as f64) * (1.0 - z2) / (1.0 + z2) * f)
}

/// `(1/2)((mu1 - mu2) f - (2 zeta + 2i) f')` for a supplied `f`, `f'`.
pub fn lowering_split_with(p: &ArchParams, zeta: f64, f: Complex64, df: Complex64) -> Complex64 {
    0.5 * ((p.mu1 - p.mu2) * f - Complex64::new(2.0 * zeta, 2.0) * df)
}

/// `f(zeta) = (zeta/(1+zeta^2))^ell` and its derivative.
pub fn nonsplit_radial(ell: u32, zeta: f64) -> (Complex64, Complex64) {
    let z2 = zeta * zeta;
    let u = zeta / (1.0 + z2);
    let du = (1.0 - z2) / ((1.0 + z2) * (1.0 + z2));
    let l = ell as i32;
    let f = u.powi(l);
    let df = (ell as f64) * u.powi(l - 1) * du;
    (Complex64::new(f, 0.0), Complex64::new(df, 0.0))
}

/// `f(zeta) = (2i + 2 zeta)^{(mu1-mu2)/2}` and its derivative.
pub fn split_radial_with_derivative(p: &ArchParams, zeta: f64) -> (Complex64, Complex64) {
    let e = (p.mu1 - p.mu2) / 2.0;
    let base = Complex64::new(2.0 * zeta, 2.0);
    let f = split_radial(p, zeta);
    // d/dz (2i+2z)^e = 2 e (2i+2z)^{e-1}
    let df = if e == Complex64::new(0.0, 0.0) {
        Complex64::new(0.0, 0.0)
    } else {
        2.0 * e * base.powc(e - 1.0)
    };
    (f, df)
}

/// Lowering operator applied to the non-split weight vector at `diag(zeta, 1/zeta)`.
pub fn lowering_residual_nonsplit(p: &ArchParams, zeta: f64) -> ComplexNum {
    let (f, df) = nonsplit_radial(p.ell, zeta);
    lowering_nonsplit_with(p.ell, zeta, f, df)
}

/// Lowering operator applied to the split weight vector at `t0 [1 zeta; 0 1]`.
pub fn lowering_residual_split(p: &ArchParams, zeta: f64) -> ComplexNum {
    let (f, df) = split_radial_with_derivative(p, zeta);
    lowering_split_with(p, zeta, f, df)
}

/// The non-split weight vector as a function on `GL(2, R)`.
pub fn b0_nonsplit(g: &Mat2, p: &ArchParams) -> Result<ComplexNum> {
    Ok(weight_vector_nonsplit(&cartan_decompose(g)?, p))
}

/// Generators `D`, `E`, `F` of `sl(2, R)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieGen {
    D,
    E,
    F,
}

impl LieGen {
    pub fn exp(self, t: f64) -> Mat2 {
        match self {
            LieGen::D => [[t.exp(), 0.0], [0.0, (-t).exp()]],
            LieGen::E => [[1.0, t], [0.0, 1.0]],
            LieGen::F => [[1.0, 0.0], [t, 1.0]],
        }
    }
}

/// Centered difference of `B0(diag(zeta, 1/zeta) exp(tX))` at `t = 0`.
pub fn lie_action_fd(p: &ArchParams, zeta: f64, x: LieGen, h: f64) -> Result<ComplexNum> {
    let g = [[zeta, 0.0], [0.0, 1.0 / zeta]];
    let plus = b0_nonsplit(&mat_mul(&g, &x.exp(h)), p)?;
    let minus = b0_nonsplit(&mat_mul(&g, &x.exp(-h)), p)?;
    Ok((plus - minus) / (2.0 * h))
}

/// Closed forms of `(X.B0)(diag(zeta, 1/zeta))` for `m = ell`.
///
/// Both flows have `delta'(0) = zeta^2/(1 - zeta^4)`; `theta'(0)` is
/// `-zeta^4/(1 - zeta^4)` along `E` and `-1/(1 - zeta^4)` along `F`.
pub fn lie_action_closed(p: &ArchParams, zeta: f64, x: LieGen) -> ComplexNum {
    let (f, df) = nonsplit_radial(p.ell, zeta);
    let z2 = zeta * zeta;
    let l = p.ell as f64;
    match x {
        LieGen::D => zeta * df,
        LieGen::E => I * l * z2 / (1.0 + z2) * f,
        LieGen::F => -I * l / (1.0 + z2) * f,
    }
}

/// `(1/2)(D - iE - iF).B0` at `diag(zeta, 1/zeta)` from centered differences.
pub fn lowering_fd_nonsplit(p: &ArchParams, zeta: f64, h: f64) -> Result<ComplexNum> {
    let d = lie_action_fd(p, zeta, LieGen::D, h)?;
    let e = lie_action_fd(p, zeta, LieGen::E, h)?;
    let f = lie_action_fd(p, zeta, LieGen::F, h)?;
    Ok(0.5 * (d - I * e - I * f))
}

/// Centered difference of the Cartan angle `delta` along `X` at `diag(zeta, 1/zeta)`.
pub fn delta_derivative_fd(zeta: f64, x: LieGen, h: f64) -> Result<f64> {
    let g = [[zeta, 0.0], [0.0, 1.0 / zeta]];
    let plus = cartan_decompose(&mat_mul(&g, &x.exp(h)))?.delta;
    let minus = cartan_decompose(&mat_mul(&g, &x.exp(-h)))?.delta;
    Ok((plus - minus) / (2.0 * h))
}

// ---------------------------------------------------------------------------
// Z_infinity

/// The split archimedean integral for the weight `(ell1, ell2)` section.
pub fn zeta_infinity(p: &ArchParams, s: ComplexNum) -> Result<ComplexNum> {
    if p.ell == 0 || !p.ell.is_multiple_of(2) {
        return Err(Error::Domain("ell must be a positive even integer".into()));
    }
    if p.ell1 + p.ell2 != p.ell || p.ell1 == 0 || p.ell2 == 0 {
        return Err(Error::Domain(
            "ell1, ell2 must be positive with ell1 + ell2 = ell".into(),
        ));
    }
    if p.d == 0 {
        return Err(Error::Domain("D must be positive".into()));
    }
    let d = p.d as f64;
    if p.ell == 2 && s == Complex64::new(0.0, 0.0) {
        return Ok(I * PI / d.sqrt());
    }
    let half = (p.ell / 2) as f64;
    if 2.0 * s.re + half <= 1.0 {
        return Err(Error::Domain(format!(
            "Z_inf({s}) needs Re(2s + ell/2) > 1"
        )));
    }
    let two = real_pow(2.0, 2.0 - 2.0 * s - p.ell2 as f64);
    let dpow = real_pow(d, -(p.ell as f64) / 4.0 - s);
    Ok(two
        * dpow
        * i_pow((p.ell / 2) as i64)
        * PI
        * gamma(2.0 * s + half - 1.0)
        * rgamma(s)
        * rgamma(s + half))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(c(5.0, 0.0)) - c(24.0, 0.0)).norm() < 1e-10);
        assert!((gamma(c(0.5, 0.0)) - c(PI.sqrt(), 0.0)).norm() < 1e-13);
        assert!((gamma(c(-0.5, 0.0)) - c(-2.0 * PI.sqrt(), 0.0)).norm() < 1e-12);
        assert_eq!(rgamma(c(0.0, 0.0)), c(0.0, 0.0));
        assert_eq!(rgamma(c(-3.0, 0.0)), c(0.0, 0.0));
        // Gamma(1+i) Gamma(1-i) = pi / sinh(pi)
        let p = gamma(c(1.0, 1.0)) * gamma(c(1.0, -1.0));
        assert!((p - c(PI / PI.sinh(), 0.0)).norm() < 1e-13);
    }

    #[test]
    fn arch_i_examples() {
        assert_eq!(arch_I(1, c(0.0, 0.0)).unwrap(), c(0.0, PI));
        assert!((arch_I(2, c(1.0, 0.0)).unwrap() - c(-PI / 4.0, 0.0)).norm() < 1e-12);
        assert_eq!(arch_I(4, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!(arch_I(1, c(-0.5, 0.0)).is_err());
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for &(k, s) in &[
            (2, c(1.0, 0.0)),
            (3, c(0.5, 0.0)),
            (6, c(2.0, 0.0)),
            (1, c(1.0, 0.5)),
        ] {
            let a = arch_I(k, s).unwrap();
            let b = arch_I_quadrature(k, s, 1e-12).unwrap();
            assert!((a - b).norm() / a.norm() < 1e-8, "k={k} s={s}: {a} vs {b}");
        }
    }

    #[test]
    fn quadrature_principal_value() {
        let v = arch_I_quadrature(1, c(0.0, 0.0), 1e-13).unwrap();
        assert!((v - c(0.0, PI)).norm() < 1e-12);
    }

    #[test]
    fn cartan_z_examples() {
        assert!((cartan_z(0.0, 2.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((cartan_z(0.0, 1.0 / 3.0).unwrap() - 3.0).abs() < 1e-13);
        let z = cartan_z(1.0, 1.0).unwrap();
        assert!((z * z - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-13);
        assert!(cartan_z(1.0, 0.0).is_err());
    }

    #[test]
    fn cartan_z_solves_quadratic() {
        for &(x, y) in &[(0.3, 1.7), (-2.0, 0.4), (5.0, -1.1)] {
            let z2 = cartan_z(x, y).unwrap().powi(2);
            let y2: f64 = y * y;
            let r = y2 * z2 * z2 - (1.0 + x * x * y2 + y2 * y2) * z2 + y2;
            assert!(r.abs() < 1e-10 * z2 * z2, "{r}");
        }
    }

    #[test]
    fn cartan_decompose_round_trip() {
        for g in [
            [[2.0, 1.0], [0.5, 3.0]],
            [[-1.0, 2.0], [1.0, 0.5]],
            [[0.3, -4.0], [2.0, 1.0]],
        ] {
            let cc = cartan_decompose(&g).unwrap();
            let back = cc.to_matrix();
            for i in 0..2 {
                for j in 0..2 {
                    assert!((back[i][j] - g[i][j]).abs() < 1e-12, "{g:?} -> {back:?}");
                }
            }
            assert!(cc.zeta >= 1.0);
        }
    }

    #[test]
    fn cartan_decompose_agrees_with_cartan_z() {
        let (x, y) = (0.7, 1.9);
        let cc = cartan_decompose(&[[y, x], [0.0, 1.0 / y]]).unwrap();
        assert!((cc.zeta - cartan_z(x, y).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn nonsplit_examples() {
        let p = ArchParams {
            m_twist: 2,
            ..ArchParams::global(2, 5)
        };
        let cc = CartanCoords {
            gamma: 1.0,
            delta: 0.0,
            zeta: 1.0,
            theta: 0.0,
            sign: 1,
        };
        assert!((weight_vector_nonsplit(&cc, &p) - c(0.25, 0.0)).norm() < 1e-15);
        let wrong = CartanCoords { sign: -1, ..cc };
        assert_eq!(weight_vector_nonsplit(&wrong, &p), c(0.0, 0.0));
        let scaled = CartanCoords { gamma: 2.0, ..cc };
        assert_eq!(
            weight_vector_nonsplit(&scaled, &p),
            weight_vector_nonsplit(&cc, &p)
        );
    }

    #[test]
    fn split_examples() {
        let id = SplitCoords {
            x_plus_y: 1.0,
            x_minus_y: 1.0,
            zeta: 0.0,
            theta: 0.0,
        };
        let p = ArchParams::global(2, 5);
        assert!((weight_vector_split(&id, &p).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let p = ArchParams::split_model(4, 3, 1, 5);
        assert!((weight_vector_split(&id, &p).unwrap() - c(0.0, 2.0)).norm() < 1e-14);
        let turned = SplitCoords { theta: PI, ..id };
        let a = weight_vector_split(&turned, &p).unwrap();
        assert!((a - weight_vector_split(&id, &p).unwrap()).norm() < 1e-12);
        let bad = SplitCoords {
            x_minus_y: 0.0,
            ..id
        };
        assert!(weight_vector_split(&bad, &p).is_err());
    }

    #[test]
    fn lowering_examples() {
        assert!(lowering_residual_nonsplit(&ArchParams::global(2, 1), 2.0).norm() < 1e-12);
        assert!(lowering_residual_nonsplit(&ArchParams::global(8, 1), 1.5).norm() < 1e-12);
        assert!(lowering_residual_split(&ArchParams::global(2, 1), 0.3).norm() < 1e-12);
        assert!(lowering_residual_split(&ArchParams::split_model(6, 5, 1, 1), 0.7).norm() < 1e-12);
        // perturbed: zeta f
        let (f, df) = nonsplit_radial(2, 2.0);
        let r = lowering_nonsplit_with(2, 2.0, 2.0 * f, f + 2.0 * df);
        assert!(r.norm() > 1e-2 * (2.0 * f).norm());
    }

    #[test]
    fn lie_actions_by_finite_difference() {
        let p = ArchParams::global(4, 1);
        for &zeta in &[1.3, 2.0, 3.5] {
            for x in [LieGen::D, LieGen::E, LieGen::F] {
                let fd = lie_action_fd(&p, zeta, x, 1e-5).unwrap();
                let cl = lie_action_closed(&p, zeta, x);
                assert!((fd - cl).norm() < 1e-6, "{x:?} zeta={zeta}: {fd} vs {cl}");
            }
            let expect = zeta * zeta / (1.0 - zeta.powi(4));
            for x in [LieGen::E, LieGen::F] {
                assert!((delta_derivative_fd(zeta, x, 1e-6).unwrap() - expect).abs() < 1e-6);
            }
            let l = lowering_fd_nonsplit(&p, zeta, 1e-5).unwrap();
            assert!((l - lowering_residual_nonsplit(&p, zeta)).norm() < 1e-6);
        }
    }

    #[test]
    fn zeta_infinity_examples() {
        let v = zeta_infinity(&ArchParams::global(2, 5), c(0.0, 0.0)).unwrap();
        assert!((v - c(0.0, PI / 5f64.sqrt())).norm() < 1e-15);
        assert_eq!(
            zeta_infinity(&ArchParams::global(4, 5), c(0.0, 0.0)).unwrap(),
            c(0.0, 0.0)
        );
        let p = ArchParams::global(4, 1);
        let s = c(1.0, 0.0);
        let lhs = zeta_infinity(&p, s).unwrap();
        let rhs = arch_I(2, s).unwrap();
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
    }
}
