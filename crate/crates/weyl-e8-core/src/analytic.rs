//! Floating-point evaluation of the special functions and Jacobi forms:
//! theta series, Eisenstein series, the E8 theta function and the nine
//! basic forms A_m, B_m, used to cross-validate the exact layer numerically.

use crate::jacobi_ring::tables;
use crate::poly::{var, Poly, Rational, Var};
use num::complex::Complex64;
use num::{BigInt, One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticError {
    /// tau must lie in the upper half plane
    InvalidTau,
    /// truncation order must be at least 1
    InvalidOrder,
    /// evaluation point too close to a zero of Delta, E4 or E6
    NearSingular(String),
    UnknownName(String),
}

impl fmt::Display for AnalyticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticError::InvalidTau => write!(f, "tau must have positive imaginary part"),
            AnalyticError::InvalidOrder => write!(f, "truncation order must be at least 1"),
            AnalyticError::NearSingular(what) => {
                write!(f, "near singular point: |{what}| below 1e-12")
            }
            AnalyticError::UnknownName(name) => write!(f, "unknown form or function: {name}"),
        }
    }
}

impl std::error::Error for AnalyticError {}

/// Evaluation point and truncation data shared by the numeric routines.
#[derive(Debug, Clone)]
pub struct NumericContext {
    pub tau: Complex64,
    pub z: [Complex64; 8],
    pub order: u32,
    pub tol: f64,
}

impl NumericContext {
    pub fn new(
        tau: Complex64,
        z: [Complex64; 8],
        order: u32,
        tol: f64,
    ) -> Result<NumericContext, AnalyticError> {
        if tau.im <= 0.0 {
            return Err(AnalyticError::InvalidTau);
        }
        if order < 1 {
            return Err(AnalyticError::InvalidOrder);
        }
        Ok(NumericContext { tau, z, order, tol })
    }

    /// A generic default point: tau = 1.2i, a small non-symmetric z.
    pub fn generic() -> NumericContext {
        let mut z = [Complex64::new(0.0, 0.0); 8];
        z[0] = Complex64::new(0.1, 0.0);
        z[1] = Complex64::new(0.0, 0.07);
        NumericContext::new(Complex64::new(0.0, 1.2), z, 24, 1e-7).unwrap()
    }
}

const TWO_PI: f64 = std::f64::consts::TAU;

fn cis(x: Complex64) -> Complex64 {
    // e^{2 pi i x}
    (Complex64::new(0.0, TWO_PI) * x).exp()
}

/// Summation bound so that omitted theta terms carry q-exponent > order.
fn theta_limit(order: u32) -> i64 {
    ((2.0 * order as f64).sqrt().ceil() as i64) + 2
}

pub fn theta1(z: Complex64, tau: Complex64, order: u32) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for n in -theta_limit(order)..=theta_limit(order) {
        let h = n as f64 - 0.5;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * cis(z * h + tau * (h * h / 2.0));
    }
    Complex64::new(0.0, 1.0) * s
}

pub fn theta2(z: Complex64, tau: Complex64, order: u32) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for n in -theta_limit(order)..=theta_limit(order) {
        let h = n as f64 - 0.5;
        s += cis(z * h + tau * (h * h / 2.0));
    }
    s
}

pub fn theta3(z: Complex64, tau: Complex64, order: u32) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for n in -theta_limit(order)..=theta_limit(order) {
        let h = n as f64;
        s += cis(z * h + tau * (h * h / 2.0));
    }
    s
}

pub fn theta4(z: Complex64, tau: Complex64, order: u32) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for n in -theta_limit(order)..=theta_limit(order) {
        let h = n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * cis(z * h + tau * (h * h / 2.0));
    }
    s
}

fn theta_null(k: usize, tau: Complex64, order: u32) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    match k {
        1 => theta1(zero, tau, order),
        2 => theta2(zero, tau, order),
        3 => theta3(zero, tau, order),
        4 => theta4(zero, tau, order),
        _ => unreachable!(),
    }
}

pub fn eta(tau: Complex64, order: u32) -> Complex64 {
    let q = cis(tau);
    let mut p = cis(tau / 24.0);
    let mut qk = Complex64::new(1.0, 0.0);
    for _ in 1..=order {
        qk *= q;
        p *= Complex64::new(1.0, 0.0) - qk;
    }
    p
}

/// Exact Bernoulli numbers B_0..B_32 from the defining recurrence.
fn bernoulli(k: usize) -> &'static Rational {
    static CACHE: OnceLock<Vec<Rational>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        let top = 32usize;
        let mut b: Vec<Rational> = vec![Rational::one()];
        for m in 1..=top {
            // sum_{j=0}^{m} C(m+1, j) B_j = 0
            let mut acc = Rational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate() {
                acc += Rational::from(binom.clone()) * bj;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-acc / Rational::from(BigInt::from(m + 1)));
        }
        b
    });
    &all[k]
}

/// The Eisenstein series E_{2n}, truncated at q^order.
pub fn eisenstein(n: u32, tau: Complex64, order: u32) -> Complex64 {
    let q = cis(tau);
    let b = bernoulli(2 * n as usize);
    let factor = -4.0 * n as f64 * (b.denom().to_f64().unwrap() / b.numer().to_f64().unwrap());
    let mut s = Complex64::new(0.0, 0.0);
    let mut qk = Complex64::new(1.0, 0.0);
    for k in 1..=order {
        qk *= q;
        s += (k as f64).powi(2 * n as i32 - 1) * qk / (Complex64::new(1.0, 0.0) - qk);
    }
    Complex64::new(1.0, 0.0) + factor * s
}

pub fn e1(tau: Complex64, order: u32) -> Complex64 {
    (theta_null(3, tau, order).powi(4) + theta_null(4, tau, order).powi(4)) / 12.0
}

pub fn e2(tau: Complex64, order: u32) -> Complex64 {
    (theta_null(2, tau, order).powi(4) - theta_null(4, tau, order).powi(4)) / 12.0
}

pub fn e3(tau: Complex64, order: u32) -> Complex64 {
    (-theta_null(2, tau, order).powi(4) - theta_null(3, tau, order).powi(4)) / 12.0
}

pub fn h0(tau: Complex64, order: u32) -> Complex64 {
    theta_null(3, 2.0 * tau, order) * theta_null(3, 6.0 * tau, order)
        + theta_null(2, 2.0 * tau, order) * theta_null(2, 6.0 * tau, order)
}

/// All vectors of the E8 lattice with squared norm at most `bound`:
/// integer or strictly half-integer coordinates with even coordinate sum.
pub fn e8_vectors(bound: f64) -> Vec<[f64; 8]> {
    let mut out = Vec::new();
    for half in [false, true] {
        let offset = if half { 0.5 } else { 0.0 };
        let top = bound.sqrt().floor() as i64 + 1;
        let mut coords = [0.0f64; 8];
        fn rec(
            pos: usize,
            norm_left: f64,
            sum: f64,
            offset: f64,
            top: i64,
            coords: &mut [f64; 8],
            out: &mut Vec<[f64; 8]>,
        ) {
            if pos == 8 {
                if (sum / 2.0 - (sum / 2.0).round()).abs() < 1e-9 {
                    out.push(*coords);
                }
                return;
            }
            for n in -top..=top {
                let x = n as f64 + offset;
                let used = x * x;
                if used > norm_left + 1e-9 {
                    continue;
                }
                coords[pos] = x;
                rec(pos + 1, norm_left - used, sum + x, offset, top, coords, out);
            }
        }
        rec(0, bound, 0.0, offset, top, &mut coords, &mut out);
    }
    out
}

/// The 240 roots (squared norm 2) of the E8 lattice.
pub fn e8_roots() -> &'static Vec<[f64; 8]> {
    static ROOTS: OnceLock<Vec<[f64; 8]>> = OnceLock::new();
    ROOTS.get_or_init(|| {
        e8_vectors(2.0)
            .into_iter()
            .filter(|w| {
                let n2: f64 = w.iter().map(|x| x * x).sum();
                (n2 - 2.0).abs() < 1e-9
            })
            .collect()
    })
}

/// The E8 theta function by the half-sum of four theta products.
pub fn theta_e8(tau: Complex64, z: &[Complex64; 8], order: u32) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for k in 1..=4usize {
        let mut prod = Complex64::new(1.0, 0.0);
        for zj in z {
            prod *= match k {
                1 => theta1(*zj, tau, order),
                2 => theta2(*zj, tau, order),
                3 => theta3(*zj, tau, order),
                4 => theta4(*zj, tau, order),
                _ => unreachable!(),
            };
        }
        total += prod;
    }
    total / 2.0
}

/// The E8 theta function by direct lattice enumeration up to squared
/// norm `bound`; the truncation oracle for `theta_e8`.
pub fn theta_e8_lattice(tau: Complex64, z: &[Complex64; 8], bound: f64) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for w in e8_vectors(bound) {
        let n2: f64 = w.iter().map(|x| x * x).sum();
        let dot: Complex64 = w.iter().zip(z.iter()).map(|(wi, zi)| zi * *wi).sum();
        total += ((Complex64::new(0.0, std::f64::consts::PI) * tau).scale(n2)
            + Complex64::new(0.0, TWO_PI) * dot)
            .exp();
    }
    total
}

fn scale_z(z: &[Complex64; 8], s: f64) -> [Complex64; 8] {
    let mut out = *z;
    for x in &mut out {
        *x *= s;
    }
    out
}

/// The nine basic Jacobi forms A1..A5, B2, B3, B4, B6.
pub fn eval_ab_form(name: &str, ctx: &NumericContext) -> Result<Complex64, AnalyticError> {
    let tau = ctx.tau;
    let z = &ctx.z;
    let n = ctx.order;
    let th = |t: Complex64, zz: &[Complex64; 8]| theta_e8(t, zz, n);
    let value = match name {
        "A1" => th(tau, z),
        "A4" => th(tau, &scale_z(z, 2.0)),
        "A2" | "A3" | "A5" => {
            let m: f64 = name[1..].parse().unwrap();
            let mut s = th(tau * m, &scale_z(z, m));
            for k in 0..m as i64 {
                s += th((tau + k as f64) / m, z) / m.powi(4);
            }
            s * (m.powi(3) / (m.powi(3) + 1.0))
        }
        "B2" => {
            (e1(tau, n) * th(2.0 * tau, &scale_z(z, 2.0))
                + e3(tau, n) / 16.0 * th(tau / 2.0, z)
                + e2(tau, n) / 16.0 * th((tau + 1.0) / 2.0, z))
                * (32.0 / 5.0)
        }
        "B3" => {
            let mut s = h0(tau, n).powi(2) * th(3.0 * tau, &scale_z(z, 3.0));
            for k in 0..3 {
                let t = (tau + k as f64) / 3.0;
                s -= h0(t, n).powi(2) * th(t, z) / 243.0;
            }
            s * (81.0 / 80.0)
        }
        "B4" => {
            let t4 = theta_null(4, 2.0 * tau, n).powi(4);
            let mut s = t4 * th(4.0 * tau, &scale_z(z, 4.0));
            s -= t4 / 16.0 * th(tau + 0.5, &scale_z(z, 2.0));
            for k in 0..4 {
                let t = (tau + k as f64) / 2.0;
                s -= theta_null(2, t, n).powi(4) * th((tau + k as f64) / 4.0, z) / (4.0 * 256.0);
            }
            s * (16.0 / 15.0)
        }
        "B6" => {
            let mut s = h0(tau, n).powi(2) * th(6.0 * tau, &scale_z(z, 6.0));
            for k in 0..2 {
                let tk = tau + k as f64;
                s += h0(tk, n).powi(2) * th(3.0 * tk / 2.0, &scale_z(z, 3.0)) / 16.0;
            }
            for k in 0..3 {
                let tk = tau + k as f64;
                s -= h0(tk / 3.0, n).powi(2) * th(2.0 * tk / 3.0, &scale_z(z, 2.0)) / 243.0;
            }
            for k in 0..6 {
                let tk = tau + k as f64;
                s -= h0(tk / 3.0, n).powi(2) * th(tk / 6.0, z) / 3888.0;
            }
            s * (9.0 / 10.0)
        }
        _ => return Err(AnalyticError::UnknownName(name.to_string())),
    };
    Ok(value)
}

/// Numeric values of the modular-frame variables A1..B6, E4, E6 and 1/Delta
/// at the context point, the substitution environment for the closed-form
/// coefficient tables.
pub fn modular_environment(
    ctx: &NumericContext,
) -> Result<HashMap<Var, Complex64>, AnalyticError> {
    let mut env = HashMap::new();
    for name in ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B6"] {
        env.insert(var(name), eval_ab_form(name, ctx)?);
    }
    let e4 = eisenstein(2, ctx.tau, ctx.order);
    let e6 = eisenstein(3, ctx.tau, ctx.order);
    let delta = (e4.powi(3) - e6.powi(2)) / 1728.0;
    for (what, v) in [("Delta", delta), ("E4", e4), ("E6", e6)] {
        if v.norm() < 1e-12 {
            return Err(AnalyticError::NearSingular(what.to_string()));
        }
    }
    env.insert(var("E4"), e4);
    env.insert(var("E6"), e6);
    env.insert(var("Dinv"), delta.inv());
    Ok(env)
}

fn table_entry(entries: &[(Var, Poly)], v: Var) -> Option<&Poly> {
    entries.iter().find(|(w, _)| *w == v).map(|(_, p)| p)
}

/// Evaluate term by term, also reporting the largest single-term magnitude.
/// The closed forms for the high-index coordinates sum terms of size up to
/// |Delta|^-3 that cancel down to order one, so the term scale is the natural
/// yardstick for float residuals.
fn eval_with_scale(
    p: &Poly,
    env: &HashMap<Var, Complex64>,
) -> Result<(Complex64, f64), AnalyticError> {
    let mut vals = Vec::with_capacity(p.alphabet().len());
    for v in p.alphabet() {
        vals.push(
            *env.get(v)
                .ok_or_else(|| AnalyticError::UnknownName(v.name().to_string()))?,
        );
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    for (mono, coeff) in p.terms() {
        let c = coeff.numer().to_f64().unwrap() / coeff.denom().to_f64().unwrap();
        let mut term = Complex64::new(c, 0.0);
        for (x, e) in vals.iter().zip(mono.0.iter()) {
            if *e != 0 {
                term *= x.powi(*e);
            }
        }
        sum += term;
        scale = scale.max(term.norm());
    }
    Ok((sum, scale))
}

/// Evaluate a named form at the context point: one of A1..A5, B2..B6,
/// E4, E6, Delta, a0..b6, c0..d6, or P165.
pub fn eval_form(name: &str, ctx: &NumericContext) -> Result<Complex64, AnalyticError> {
    match name {
        "A1" | "A2" | "A3" | "A4" | "A5" | "B2" | "B3" | "B4" | "B6" => eval_ab_form(name, ctx),
        "E4" => Ok(eisenstein(2, ctx.tau, ctx.order)),
        "E6" => Ok(eisenstein(3, ctx.tau, ctx.order)),
        "Delta" => {
            let e4 = eisenstein(2, ctx.tau, ctx.order);
            let e6 = eisenstein(3, ctx.tau, ctx.order);
            Ok((e4.powi(3) - e6.powi(2)) / 1728.0)
        }
        "a1" | "d1" => Ok(Complex64::new(0.0, 0.0)),
        "P165" => {
            let env = modular_environment(ctx)?;
            tables::p16_5()
                .eval_complex(&env)
                .map_err(|_| AnalyticError::UnknownName(name.to_string()))
        }
        _ => {
            let v =
                Var::from_name(name).ok_or_else(|| AnalyticError::UnknownName(name.to_string()))?;
            let env = modular_environment(ctx)?;
            let ab = tables::ab_in_modular();
            let cd = tables::cd_in_modular();
            let poly = table_entry(&ab, v)
                .or_else(|| table_entry(&cd, v))
                .ok_or_else(|| AnalyticError::UnknownName(name.to_string()))?;
            poly.eval_complex(&env)
                .map_err(|_| AnalyticError::UnknownName(name.to_string()))
        }
    }
}

/// Values of the full a/b and c/d alphabets at the context point, together
/// with the largest term magnitude met while evaluating the closed forms.
pub fn coordinate_environment_with_scale(
    ctx: &NumericContext,
) -> Result<(HashMap<Var, Complex64>, f64), AnalyticError> {
    let env = modular_environment(ctx)?;
    let mut out = HashMap::new();
    let mut scale = 1.0f64;
    for (v, p) in tables::ab_in_modular().iter().chain(tables::cd_in_modular().iter()) {
        let (value, s) = eval_with_scale(p, &env)?;
        scale = scale.max(s);
        out.insert(*v, value);
    }
    Ok((out, scale))
}

/// Values of the full a/b and c/d alphabets at the context point.
pub fn coordinate_environment(
    ctx: &NumericContext,
) -> Result<HashMap<Var, Complex64>, AnalyticError> {
    Ok(coordinate_environment_with_scale(ctx)?.0)
}

/// One residual line of a numeric verification report.
#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericReport {
    pub check: String,
    pub seed: Option<u64>,
    pub residuals: Vec<Residual>,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

fn finish(check: &str, seed: Option<u64>, residuals: Vec<Residual>, tol: f64) -> NumericReport {
    let max_residual = residuals.iter().map(|r| r.value).fold(0.0, f64::max);
    NumericReport {
        check: check.to_string(),
        seed,
        max_residual,
        tol,
        pass: max_residual < tol,
        residuals,
    }
}

pub const NUMERIC_CHECKS: [&str; 4] =
    ["abincd-numeric", "psi-consistency", "weyl-numeric", "quasi-period"];

/// Run one named numeric cross-check at the context point.
pub fn numeric_suite(check: &str, ctx: &NumericContext) -> Result<NumericReport, AnalyticError> {
    match check {
        // the translation relations between the a/b and c/d coordinates,
        // with both sides evaluated through the closed-form tables; residuals
        // are scaled by the largest term met in those tables, since the
        // high-index closed forms cancel from |Delta|^-3 down to order one
        "abincd-numeric" => {
            let (coords, scale) = coordinate_environment_with_scale(ctx)?;
            let mut residuals = Vec::new();
            for (v, image) in crate::jacobi_ring::ab_to_cd_map() {
                let lhs = coords[&v];
                let rhs = image
                    .eval_complex(&coords)
                    .map_err(|_| AnalyticError::NearSingular("c0".to_string()))?;
                residuals.push(Residual {
                    label: v.name().to_string(),
                    value: (lhs - rhs).norm() / scale,
                });
            }
            Ok(finish(check, None, residuals, ctx.tol))
        }
        // a symbolic member and its c/d rewrite agree numerically
        "psi-consistency" => {
            let (coords, scale) = coordinate_environment_with_scale(ctx)?;
            let mut residuals = Vec::new();
            for src in ["a0*b1", "a0*a2/3", "(12*b0*b2 - 5*b1^2)/90"] {
                let p = crate::poly::parse_poly(src).unwrap();
                let q = crate::jacobi_ring::ab_to_cd(&p);
                let lhs = p.eval_complex(&coords).unwrap();
                let rhs = q.eval_complex(&coords).unwrap();
                residuals.push(Residual {
                    label: src.to_string(),
                    value: (lhs - rhs).norm() / scale,
                });
            }
            Ok(finish(check, None, residuals, ctx.tol))
        }
        // A1 under five random Weyl reflections z -> z - (r.z) r
        "weyl-numeric" => {
            let seed = 97531u64;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let roots = e8_roots();
            let reference = theta_e8(ctx.tau, &ctx.z, ctx.order);
            let mut residuals = Vec::new();
            for _ in 0..5 {
                let r = roots[rng.gen_range(0..roots.len())];
                let dot: Complex64 = r.iter().zip(ctx.z.iter()).map(|(ri, zi)| zi * *ri).sum();
                let mut reflected = ctx.z;
                for (x, ri) in reflected.iter_mut().zip(r.iter()) {
                    *x -= dot * *ri;
                }
                let value = theta_e8(ctx.tau, &reflected, ctx.order);
                residuals.push(Residual {
                    label: format!("{r:?}"),
                    value: (value - reference).norm(),
                });
            }
            Ok(finish(check, Some(seed), residuals, ctx.tol))
        }
        // A1(tau, z + tau alpha) e^{pi i (tau alpha^2 + 2 z.alpha)} = A1(tau, z)
        "quasi-period" => {
            let alpha = [1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
            let mut shifted = ctx.z;
            for (x, ai) in shifted.iter_mut().zip(alpha.iter()) {
                *x += ctx.tau * *ai;
            }
            let alpha2: f64 = alpha.iter().map(|a| a * a).sum();
            let zdot: Complex64 = alpha.iter().zip(ctx.z.iter()).map(|(ai, zi)| zi * *ai).sum();
            let phase =
                (Complex64::new(0.0, std::f64::consts::PI) * (ctx.tau * alpha2 + 2.0 * zdot)).exp();
            let lhs = theta_e8(ctx.tau, &shifted, ctx.order) * phase;
            let rhs = theta_e8(ctx.tau, &ctx.z, ctx.order);
            let residuals = vec![Residual {
                label: "alpha=(1,1,0,...,0)".to_string(),
                value: (lhs - rhs).norm(),
            }];
            Ok(finish(check, None, residuals, ctx.tol))
        }
        _ => Err(AnalyticError::UnknownName(check.to_string())),
    }
}

/// The full numeric cross-validation battery at a context point: the four
/// named checks plus the Eisenstein reductions at z = 0, the index-four
/// doubling identity and the discriminant identities.
pub fn standard_numeric_reports(ctx: &NumericContext) -> Result<Vec<NumericReport>, AnalyticError> {
    let mut reports = Vec::new();
    for check in NUMERIC_CHECKS {
        reports.push(numeric_suite(check, ctx)?);
    }
    let at_zero =
        NumericContext::new(ctx.tau, [Complex64::new(0.0, 0.0); 8], ctx.order, ctx.tol)?;
    let e4 = eisenstein(2, at_zero.tau, at_zero.order);
    let e6 = eisenstein(3, at_zero.tau, at_zero.order);
    let mut residuals = Vec::new();
    for name in ["A1", "A2", "A3", "A4", "A5"] {
        residuals.push(Residual {
            label: format!("{name}(tau,0) - E4"),
            value: (eval_ab_form(name, &at_zero)? - e4).norm(),
        });
    }
    for name in ["B2", "B3", "B4", "B6"] {
        residuals.push(Residual {
            label: format!("{name}(tau,0) - E6"),
            value: (eval_ab_form(name, &at_zero)? - e6).norm(),
        });
    }
    reports.push(finish("eisenstein-reduction", None, residuals, 1e-9));
    let doubled = theta_e8(ctx.tau, &scale_z(&ctx.z, 2.0), ctx.order);
    let residuals = vec![Residual {
        label: "A4(tau,z) - Theta(tau,2z)".to_string(),
        value: (eval_ab_form("A4", ctx)? - doubled).norm(),
    }];
    reports.push(finish("a4-doubling", None, residuals, 1e-9));
    let delta = (e4.powi(3) - e6.powi(2)) / 1728.0;
    let residuals = vec![
        Residual {
            label: "1728 Delta - (E4^3 - E6^2)".to_string(),
            value: (1728.0 * delta - (e4.powi(3) - e6.powi(2))).norm(),
        },
        Residual {
            label: "Delta - eta^24".to_string(),
            value: (delta - eta(ctx.tau, 2 * ctx.order).powi(24)).norm(),
        },
    ];
    reports.push(finish("discriminant", None, residuals, 1e-10));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_z() -> [Complex64; 8] {
        [Complex64::new(0.0, 0.0); 8]
    }

    #[test]
    fn bernoulli_values() {
        let half = Rational::new(BigInt::from(-1), BigInt::from(2));
        assert_eq!(bernoulli(1), &half);
        assert_eq!(bernoulli(6), &Rational::new(BigInt::from(1), BigInt::from(42)));
        assert_eq!(bernoulli(8), &Rational::new(BigInt::from(-1), BigInt::from(30)));
        assert!(bernoulli(3).is_zero());
    }

    #[test]
    fn eisenstein_q_expansion() {
        // E4 = 1 + 240 q + 2160 q^2 + ..., E6 = 1 - 504 q - 16632 q^2 - ...;
        // at tau = 2i the next omitted term is below 1e-11
        let tau = Complex64::new(0.0, 2.0);
        let q = cis(tau).re;
        let e4 = eisenstein(2, tau, 24).re;
        assert!((e4 - (1.0 + 240.0 * q + 2160.0 * q * q)).abs() < 1e-11);
        let e6 = eisenstein(3, tau, 24).re;
        assert!((e6 - (1.0 - 504.0 * q - 16632.0 * q * q)).abs() < 1e-11);
        // E6 vanishes at tau = i
        assert!(eisenstein(3, Complex64::new(0.0, 1.0), 40).norm() < 1e-9);
    }

    #[test]
    fn theta_identities() {
        let tau = Complex64::new(0.3, 1.4);
        let t2 = theta_null(2, tau, 24);
        let t3 = theta_null(3, tau, 24);
        let t4 = theta_null(4, tau, 24);
        assert!((t2.powi(4) + t4.powi(4) - t3.powi(4)).norm() < 1e-10);
        assert!((e1(tau, 24) + e2(tau, 24) + e3(tau, 24)).norm() < 1e-10);
        let zero = Complex64::new(0.0, 0.0);
        assert!(theta1(zero, tau, 24).norm() < 1e-12);
    }

    #[test]
    fn discriminant_identities() {
        for tau in [Complex64::new(0.1, 1.3), Complex64::new(-0.4, 1.8)] {
            let e4 = eisenstein(2, tau, 30);
            let e6 = eisenstein(3, tau, 30);
            let delta = eta(tau, 60).powi(24);
            assert!((e4.powi(3) - e6.powi(2) - 1728.0 * delta).norm() < 1e-10);
        }
    }

    #[test]
    fn e8_root_count_and_lattice_sum() {
        assert_eq!(e8_roots().len(), 240);
        let tau = Complex64::new(0.0, 1.5);
        let mut z = zero_z();
        z[0] = Complex64::new(0.11, 0.0);
        z[3] = Complex64::new(0.0, 0.05);
        let by_products = theta_e8(tau, &z, 24);
        let by_lattice = theta_e8_lattice(tau, &z, 12.0);
        assert!((by_products - by_lattice).norm() < 1e-9);
        // theta shift by the lattice vector (1, 1, 0, ..., 0)
        let mut z2 = z;
        z2[0] += 1.0;
        z2[1] += 1.0;
        assert!((theta_e8(tau, &z2, 24) - by_products).norm() < 1e-9);
    }

    #[test]
    fn forms_reduce_to_eisenstein_at_z_zero() {
        let ctx = NumericContext::new(Complex64::new(0.0, 1.2), zero_z(), 24, 1e-9).unwrap();
        let e4 = eisenstein(2, ctx.tau, ctx.order);
        let e6 = eisenstein(3, ctx.tau, ctx.order);
        for name in ["A1", "A2", "A3", "A4", "A5"] {
            let v = eval_ab_form(name, &ctx).unwrap();
            assert!((v - e4).norm() < 1e-9, "{name}: {}", (v - e4).norm());
        }
        for name in ["B2", "B3", "B4", "B6"] {
            let v = eval_ab_form(name, &ctx).unwrap();
            assert!((v - e6).norm() < 1e-9, "{name}: {}", (v - e6).norm());
        }
    }

    #[test]
    fn a4_is_theta_at_doubled_z() {
        let ctx = NumericContext::generic();
        let direct = theta_e8(ctx.tau, &scale_z(&ctx.z, 2.0), ctx.order);
        let a4 = eval_ab_form("A4", &ctx).unwrap();
        assert!((a4 - direct).norm() < 1e-9);
    }

    #[test]
    fn numeric_checks_pass_at_generic_point() {
        let ctx = NumericContext::generic();
        for check in NUMERIC_CHECKS {
            let report = numeric_suite(check, &ctx).unwrap();
            assert!(report.pass, "{check}: max residual {}", report.max_residual);
        }
    }

    #[test]
    fn context_validation() {
        assert_eq!(
            NumericContext::new(Complex64::new(0.0, -1.0), zero_z(), 24, 1e-9).unwrap_err(),
            AnalyticError::InvalidTau
        );
        assert_eq!(
            NumericContext::new(Complex64::new(0.0, 1.0), zero_z(), 0, 1e-9).unwrap_err(),
            AnalyticError::InvalidOrder
        );
        assert!(matches!(
            eval_form("bogus", &NumericContext::generic()),
            Err(AnalyticError::UnknownName(_))
        ));
    }
}
