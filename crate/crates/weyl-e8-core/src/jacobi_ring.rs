//! The a/b and c/d coordinate rings of Weyl invariant Jacobi forms, the
//! translation maps between them, the trigrading, the intersection
//! membership test, the psi isomorphism onto semiinvariants and the
//! closed-form identity verifiers.

use crate::binary_forms::binom;
use crate::linalg::ExactMatrix;
use crate::poly::{parse_poly, rat_int, var, Poly, Rational, Var};
use crate::semiinvariants::{hat_a, hat_b, random_rational, Semiinvariant};
use num::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum JacobiError {
    NotHomogeneous(String),
    WrongAlphabet(String),
    NotMember(String),
    UnknownIdentity(String),
}

impl fmt::Display for JacobiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JacobiError::NotHomogeneous(m) => write!(f, "not homogeneous: {m}"),
            JacobiError::WrongAlphabet(m) => write!(f, "wrong alphabet: {m}"),
            JacobiError::NotMember(m) => write!(f, "not in J: {m}"),
            JacobiError::UnknownIdentity(m) => write!(f, "unknown identity: {m}"),
        }
    }
}

impl std::error::Error for JacobiError {}

/// Which coordinate ring a polynomial lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Frame {
    AB,
    CD,
}

/// The trigrading (d_a, d_b, m) together with the derived weight and order:
/// k = 4 d_a + 6 d_b - 6m, omega = k + 4m.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct JGrade {
    pub d_a: i64,
    pub d_b: i64,
    pub m: i64,
    pub k: i64,
    pub omega: i64,
}

impl JGrade {
    pub fn new(d_a: i64, d_b: i64, m: i64) -> JGrade {
        let k = 4 * d_a + 6 * d_b - 6 * m;
        JGrade {
            d_a,
            d_b,
            m,
            k,
            omega: k + 4 * m,
        }
    }
}

/// A homogeneous element of R = C[a0,a2,a3,a4,b0..b6] or of
/// R~ = C[c0..c4,d0,d2..d6].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacobiPolynomial {
    pub poly: Poly,
    pub frame: Frame,
    pub grade: Option<JGrade>,
}

pub fn a_var(i: usize) -> Var {
    assert!(matches!(i, 0 | 2 | 3 | 4));
    var(&format!("a{i}"))
}

pub fn b_var(j: usize) -> Var {
    assert!(j <= 6);
    var(&format!("b{j}"))
}

pub fn c_var(i: usize) -> Var {
    assert!(i <= 4);
    var(&format!("c{i}"))
}

pub fn d_var(j: usize) -> Var {
    assert!(matches!(j, 0 | 2..=6));
    var(&format!("d{j}"))
}

/// (frame, quartic-side?, Jacobi index) of a ring variable.
fn var_info(v: Var) -> Option<(Frame, bool, i64)> {
    let name = v.name();
    let mut chars = name.chars();
    let kind = chars.next()?;
    let idx: i64 = chars.as_str().parse().ok()?;
    match kind {
        'a' if name.len() == 2 => Some((Frame::AB, true, idx)),
        'b' if name.len() == 2 => Some((Frame::AB, false, idx)),
        'c' if name.len() == 2 => Some((Frame::CD, true, idx)),
        'd' if name.len() == 2 => Some((Frame::CD, false, idx)),
        _ => None,
    }
}

impl JacobiPolynomial {
    /// Wrap a polynomial, checking the alphabet and reading off the
    /// trigrading. The zero polynomial has no grade.
    pub fn from_poly(poly: Poly, frame: Frame) -> Result<JacobiPolynomial, JacobiError> {
        for v in poly.support() {
            match var_info(v) {
                Some((f, _, _)) if f == frame => {}
                _ => {
                    return Err(JacobiError::WrongAlphabet(format!(
                        "variable {} does not belong to the {:?} frame",
                        v.name(),
                        frame
                    )))
                }
            }
        }
        if poly.is_zero() {
            return Ok(JacobiPolynomial {
                poly,
                frame,
                grade: None,
            });
        }
        let deg = |quartic: bool| {
            poly.homogeneous_degree(|v| match var_info(v) {
                Some((_, q, _)) if q == quartic => 1,
                _ => 0,
            })
        };
        let d_a = deg(true)
            .ok_or_else(|| JacobiError::NotHomogeneous("mixed quartic-side degree".into()))?;
        let d_b = deg(false)
            .ok_or_else(|| JacobiError::NotHomogeneous("mixed sextic-side degree".into()))?;
        let m = poly
            .homogeneous_degree(|v| var_info(v).map(|(_, _, i)| i).unwrap_or(0))
            .ok_or_else(|| JacobiError::NotHomogeneous("mixed index".into()))?;
        Ok(JacobiPolynomial {
            poly,
            frame,
            grade: Some(JGrade::new(d_a, d_b, m)),
        })
    }

    pub fn grade(&self) -> Option<JGrade> {
        self.grade
    }
}

fn translation_center(num_var: Var, n: i64, den_var: Var) -> Poly {
    Poly::variable(num_var)
        .scale(&Rational::new((-1).into(), n.into()))
        .mul(&Poly::monomial(den_var, -1, Rational::one()))
}

fn translated_coefficient(
    n: usize,
    i: usize,
    image_of: impl Fn(usize) -> Option<Poly>,
    center: &Poly,
) -> Poly {
    let mut img = Poly::zero();
    for j in 0..=i {
        let Some(base) = image_of(j) else { continue };
        let term = base
            .scale(&binom((n - j) as i64, (n - i) as i64))
            .mul(&center.pow((i - j) as u32));
        img = img.add(&term);
    }
    img
}

/// Substitution images a_i, b_j -> polynomials in c, d with Laurent c0,
/// centered at -c1/(4 c0). The absent variables a1 and d1 are zero.
pub fn ab_to_cd_map() -> HashMap<Var, Poly> {
    let t = translation_center(var("c1"), 4, var("c0"));
    let mut map = HashMap::new();
    for i in [0usize, 2, 3, 4] {
        map.insert(
            a_var(i),
            translated_coefficient(4, i, |j| Some(Poly::variable(c_var(j))), &t),
        );
    }
    for i in 0..=6usize {
        map.insert(
            b_var(i),
            translated_coefficient(
                6,
                i,
                |j| (j != 1).then(|| Poly::variable(d_var(j))),
                &t,
            ),
        );
    }
    map
}

/// Substitution images c_i, d_j -> polynomials in a, b with Laurent b0,
/// centered at -b1/(6 b0).
pub fn cd_to_ab_map() -> HashMap<Var, Poly> {
    let s = translation_center(var("b1"), 6, var("b0"));
    let mut map = HashMap::new();
    for i in 0..=4usize {
        map.insert(
            c_var(i),
            translated_coefficient(
                4,
                i,
                |j| (j != 1).then(|| Poly::variable(a_var(j))),
                &s,
            ),
        );
    }
    for i in [0usize, 2, 3, 4, 5, 6] {
        map.insert(
            d_var(i),
            translated_coefficient(6, i, |j| Some(Poly::variable(b_var(j))), &s),
        );
    }
    map
}

/// Express an a-frame polynomial in the c/d coordinates (Laurent in c0).
pub fn ab_to_cd(p: &Poly) -> Poly {
    p.substitute(&ab_to_cd_map()).expect("ab -> cd translation")
}

/// Express a c-frame polynomial in the a/b coordinates (Laurent in b0).
pub fn cd_to_ab(p: &Poly) -> Poly {
    p.substitute(&cd_to_ab_map()).expect("cd -> ab translation")
}

/// Membership in the intersection R and R~: translated to the opposite
/// frame, no negative power of the opposite Laurent variable survives.
pub fn is_jacobi_form(p: &JacobiPolynomial) -> Result<bool, JacobiError> {
    if p.poly.is_zero() {
        return Ok(true);
    }
    if p.grade.is_none() {
        return Err(JacobiError::NotHomogeneous("ungraded input".into()));
    }
    let (translated, pole_var) = match p.frame {
        Frame::AB => (ab_to_cd(&p.poly), var("c0")),
        Frame::CD => (cd_to_ab(&p.poly), var("b0")),
    };
    Ok(translated.min_exponent(pole_var).unwrap_or(0) >= 0)
}

fn rename_map(from: impl Fn(usize) -> Var, to: impl Fn(usize) -> Var, idx: &[usize]) -> HashMap<Var, Poly> {
    idx.iter()
        .map(|&i| (from(i), Poly::variable(to(i))))
        .collect()
}

/// The isomorphism J -> semiinvariants: a_i -> hat a_i, b_j -> hat b_j.
/// The image of a member of J is a genuine polynomial in al, be.
pub fn psi_j(p: &JacobiPolynomial) -> Result<Semiinvariant, JacobiError> {
    assert_eq!(p.frame, Frame::AB, "psi_j acts on the a-frame");
    let ha = hat_a();
    let hb = hat_b();
    let mut map = HashMap::new();
    for i in [0usize, 2, 3, 4] {
        map.insert(a_var(i), ha[i].clone());
    }
    for j in 0..=6usize {
        map.insert(b_var(j), hb[j].clone());
    }
    let image = p.poly.substitute(&map).expect("psi substitution");
    if image.min_exponent(var("al0")).unwrap_or(0) < 0 {
        return Err(JacobiError::NotMember(
            "psi image has a residual negative power of al0".into(),
        ));
    }
    let g = p.grade.unwrap_or(JGrade::new(0, 0, 0));
    Ok(Semiinvariant {
        poly: image,
        d_alpha: g.d_a,
        d_beta: g.d_b,
        order: g.omega,
    })
}

/// The inverse isomorphism: rename al_i -> a_i with al1 -> 0, be_j -> b_j.
pub fn psi_j_inverse(s: &Semiinvariant) -> Result<JacobiPolynomial, JacobiError> {
    let mut map = rename_map(
        crate::binary_forms::alpha_var,
        a_var,
        &[0, 2, 3, 4],
    );
    map.insert(crate::binary_forms::alpha_var(1), Poly::zero());
    for j in 0..=6usize {
        map.insert(crate::binary_forms::beta_var(j), Poly::variable(b_var(j)));
    }
    let poly = s.poly.substitute(&map).expect("psi inverse substitution");
    JacobiPolynomial::from_poly(poly, Frame::AB)
}

/// Literal expression tables for the basic meromorphic coefficients and the
/// nine basic holomorphic Jacobi forms, in the canonical text format of the
/// expression parser. `@` stands for the discriminant, which is always
/// expanded in the frame at hand.
pub mod tables {
    use super::*;

    pub const DELTA_AB: &str = "(a0^3 - 27*b0^2)";
    pub const DELTA_CD: &str = "(c0^3 - 27*d0^2)";
    pub const DELTA_E: &str = "((E4^3 - E6^2)/1728)";

    /// a_i, b_j in terms of A1..A5, B2,B3,B4,B6, E4, E6 with Dinv = 1/Delta.
    const AB_IN_MODULAR: [(&str, &str); 10] = [
        ("a0", "E4/12"),
        ("a2", "6*E4^-1*Dinv*(-E4*A2 + A1^2)"),
        (
            "a3",
            "1/9*E4^-2*Dinv^2*(-7*E4^2*E6*A3 - 20*E4^3*B3 - 9*E4*E6*A1*A2 + 30*E4^2*A1*B2 \
             + 6*E6*A1^3)",
        ),
        (
            "a4",
            "1/288*E4^-3*Dinv^3*(576*E4^3*@*A4 + 32256*E4^2*@*A1*A3 - 9*E4^5*A2^2 \
             - 30*E4^3*E6*A2*B2 - 25*E4^4*B2^2 + (60*E4^4 - 12*E4*E6^2)*A1^2*A2 \
             + 80*E4^2*E6*A1^2*B2 + (-70*E4^3 + 6*E6^2)*A1^4)",
        ),
        ("b0", "E6/216"),
        ("b1", "-4*E4^-1*A1"),
        ("b2", "5/6*E4^-2*Dinv*(E4^2*B2 - E6*A1^2)"),
        (
            "b3",
            "1/108*E4^-3*Dinv^2*(-7*E4^5*A3 - 20*E4^3*E6*B3 - 9*E4^4*A1*A2 \
             + 30*E4^2*E6*A1*B2 + (16*E4^3 - 10*E6^2)*A1^3)",
        ),
        (
            "b4",
            "1/1728*E4^-4*Dinv^3*(-8640*E4^4*@*B4 + 138240*E4^3*@*A1*B3 + 9*E4^5*E6*A2^2 \
             + 30*E4^6*A2*B2 + 25*E4^4*E6*B2^2 - 48*E4^4*E6*A1^2*A2 \
             + (-140*E4^5 + 60*E4^2*E6^2)*A1^2*B2 + (74*E4^3*E6 - 10*E6^3)*A1^4)",
        ),
        (
            "b5",
            "1/72*E4^-5*Dinv^3*(-36288*E4^4*@*A5 - 294*E4^6*A2*A3 - 770*E4^4*E6*B2*A3 \
             - 840*E4^4*E6*A2*B3 - 2200*E4^5*B2*B3 + 168*E4^5*A1^2*A3 + 480*E4^3*E6*A1^2*B3 \
             - 621*E4^5*A1*A2^2 + 3525*E4^4*A1*B2^2 + 1224*E4^4*A1^3*A2 \
             - 240*E4^2*E6*A1^3*B2 + (-456*E4^3 + 24*E6^2)*A1^5)",
        ),
    ];

    const B6_IN_MODULAR: (&str, &str) = (
        "b6",
        "1/4478976*E4^-6*Dinv^5*(-19906560*E4^6*@^2*B6 - 188116992*E4^4*E6*@^2*A1*A5 \
         - 5184*E4^7*E6*@*A2*A4 - 8640*E4^8*@*B2*A4 - 103680*E4^8*@*A2*B4 \
         - 172800*E4^6*E6*@*B2*B4 + 12672*E4^6*E6*@*A1^2*A4 \
         + 17280*(5*E4^7 + 9*E4^4*E6^2)*@*A1^2*B4 + 112896*E4^7*E6*@*A3^2 \
         + 645120*E4^8*@*A3*B3 + 921600*E4^6*E6*@*B3^2 - 1717632*E4^6*E6*@*A1*A2*A3 \
         - 362880*(4*E4^7 + 11*E4^4*E6^2)*@*A1*B2*A3 \
         + 483840*(4*E4^7 - 9*E4^4*E6^2)*@*A1*A2*B3 - 11404800*E4^5*E6*@*A1*B2*B3 \
         + 1161216*E4^5*E6*@*A1^3*A3 - 92160*(37*E4^6 - 9*E4^3*E6^2)*@*A1^3*B3 \
         + (135*E4^9*E6 + 54*E4^6*E6^3)*A2^3 + (405*E4^10 + 540*E4^7*E6^2)*A2^2*B2 \
         + 1575*E4^8*E6*A2*B2^2 + (375*E4^9 + 500*E4^6*E6^2)*B2^3 \
         + (-3159*E4^8*E6 + 1701*E4^5*E6^3)*A1^2*A2^2 \
         + (-3060*E4^9 - 1800*E4^6*E6^2)*A1^2*A2*B2 \
         + (6975*E4^7*E6 - 11025*E4^4*E6^3)*A1^2*B2^2 \
         + (6768*E4^7*E6 - 3024*E4^4*E6^3)*A1^4*A2 \
         + (4260*E4^8 + 1800*E4^5*E6^2 + 180*E4^2*E6^4)*A1^4*B2 \
         + (-3692*E4^6*E6 + 504*E4^3*E6^3 - 12*E6^5)*A1^6)",
    );

    /// c_i, d_j in terms of the same modular alphabet.
    const CD_IN_MODULAR: [(&str, &str); 9] = [
        ("c0", "E4/12"),
        ("c1", "48*E6^-1*A1"),
        ("c2", "6*E6^-2*Dinv*(-E6^2*A2 + E4^2*A1^2)"),
        (
            "c3",
            "1/9*E6^-3*Dinv^2*(-7*E6^4*A3 - 20*E4*E6^3*B3 - 9*E4^2*E6^2*A1*A2 \
             + 30*E6^3*A1*B2 + (3*E4^4 + 3*E4*E6^2)*A1^3)",
        ),
        (
            "c4",
            "1/288*E6^-4*Dinv^3*(576*E6^4*@*A4 - 92160*E6^3*@*A1*B3 - 9*E4^2*E6^4*A2^2 \
             - 30*E6^5*A2*B2 - 25*E4*E6^4*B2^2 + (-12*E4^4*E6^2 + 60*E4*E6^4)*A1^2*A2 \
             + 80*E4^2*E6^3*A1^2*B2 + (2*E4^6 + 6*E4^3*E6^2 - 72*E6^4)*A1^4)",
        ),
        ("d0", "E6/216"),
        ("d2", "5/6*E6^-1*Dinv*(E6*B2 - E4*A1^2)"),
        (
            "d3",
            "1/108*E6^-2*Dinv^2*(-7*E4^2*E6^2*A3 - 20*E6^3*B3 - 9*E4*E6^2*A1*A2 \
             + 30*E4^2*E6*A1*B2 + (-20*E4^3 + 26*E6^2)*A1^3)",
        ),
        (
            "d4",
            "1/1728*E6^-3*Dinv^3*(-8640*E6^3*@*B4 - 48384*E4*E6^2*@*A1*A3 + 9*E4*E6^4*A2^2 \
             + 30*E4^2*E6^3*A2*B2 + 25*E6^4*B2^2 + (-36*E4^3*E6^2 - 12*E6^4)*A1^2*A2 \
             + (60*E4^4*E6 - 140*E4*E6^3)*A1^2*B2 + (-30*E4^5 + 94*E4^2*E6^2)*A1^4)",
        ),
    ];

    const D5_IN_MODULAR: (&str, &str) = (
        "d5",
        "1/72*E6^-4*Dinv^3*(-21*E4^2*E6^4*A5 - 60*E4^2*E6^3*A1*B4 - 294*E4*E6^4*A2*A3 \
         - 2200*E6^4*B2*B3 + (-168*E4^3*E6^2 + 336*E6^4)*A1^2*A3 + 480*E4*E6^3*A1^2*B3 \
         - 513*E6^4*A1*A2^2 + 360*E4*E6^3*A1*A2*B2 - 216*E4^2*E6^2*A1^3*A2 \
         + (240*E4^3*E6 - 1440*E6^3)*A1^3*B2 + (-96*E4^4 + 432*E4*E6^2)*A1^5) \
         + 1/72*Dinv^3*E4^-1*(864*A1^3*A2 + 3825*A1*B2^2 - 770*E6*A3*B2 - 840*E6*A2*B3 \
         + 60*E6*A1*B4 + 21*E6^2*A5)",
    );

    const D6_IN_MODULAR: (&str, &str) = (
        "d6",
        "1/13436928*E6^-5*Dinv^5*(-59719680*E6^5*@^2*B6 - 564350976*E4*E6^4*@^2*A1*A5 \
         - 15552*E4*E6^6*@*A2*A4 - 25920*E4^2*E6^5*@*B2*A4 - 311040*E4^2*E6^5*@*A2*B4 \
         - 518400*E6^6*@*B2*B4 + 38016*E6^6*@*A1^2*A4 \
         - 51840*(9*E4^4*E6^3 - 23*E4*E6^5)*@*A1^2*B4 + 338688*E4*E6^6*@*A3^2 \
         + 1935360*E4^2*E6^5*@*A3*B3 + 2764800*E6^6*@*B3^2 \
         - 72576*(63*E4^3*E6^4 + 8*E6^6)*@*A1*A2*A3 - 16329600*E4*E6^5*@*A1*B2*A3 \
         - 7257600*E4*E6^5*@*A1*A2*B3 - 34214400*E4^2*E6^4*@*A1*B2*B3 \
         - 870912*(E4^5*E6^2 - 5*E4^2*E6^4)*@*A1^3*A3 \
         + 552960*(9*E4^3*E6^3 - 23*E6^5)*@*A1^3*B3 + (405*E4^3*E6^6 + 162*E6^8)*A2^3 \
         + (1215*E4^4*E6^5 + 1620*E4*E6^7)*A2^2*B2 + 4725*E4^2*E6^6*A2*B2^2 \
         + (1125*E4^3*E6^5 + 1500*E6^7)*B2^3 + (-5103*E4^5*E6^4 + 729*E4^2*E6^6)*A1^2*A2^2 \
         + (1620*E4^6*E6^3 - 12420*E4^3*E6^5 - 3780*E6^7)*A1^2*A2*B2 \
         + (33075*E4^4*E6^4 - 45225*E4*E6^6)*A1^2*B2^2 \
         + (-648*E4^7*E6^2 + 10368*E4^4*E6^4 + 1512*E4*E6^6)*A1^4*A2 \
         + (540*E4^8*E6 - 7560*E4^5*E6^3 + 25740*E4^2*E6^5)*A1^4*B2 \
         + (-180*E4^9 + 1512*E4^6*E6^2 - 3924*E4^3*E6^4 - 7008*E6^6)*A1^6)",
    );

    /// A_i, B_j as polynomials in a, b; the discriminant is a0^3 - 27 b0^2.
    const MODULAR_IN_AB: [(&str, &str); 9] = [
        ("A1", "-3*a0*b1"),
        ("A2", "(9*a0*b1^2 - 2*@*a2)/12"),
        ("A3", "(-21*a0*b1^3 - 12*@*a0*b3 - 6*@*a2*b1 + 18*@*a3*b0)/112"),
        (
            "A4",
            "1/64*(4*@*a0^2*a2^2 + 3*a0*b1^4 - 96*@*a0*b1*b3 + 48*@*a0*b2^2 \
             - 144*@*a2*b0*b2 + 36*@*a2*b1^2 + 144*@*a3*b0*b1 + 32*@^2*a4)",
        ),
        (
            "A5",
            "1/5376*(36*@*a0^2*a2^2*b1 - 63*a0*b1^5 + 216*@*a0*b1^2*b3 - 144*@*a0*b1*b2^2 \
             - 432*@*a2*b0*b1*b2 - 100*@*a2*b1^3 + 1980*@*a3*b0*b1^2 - 128*@^2*a0*b5 \
             - 112*@^2*a2*b3 + 176*@^2*a3*b2)",
        ),
        ("B2", "(135*b0*b1^2 + 12*@*b2)/10"),
        ("B3", "(-3*@*a0^2*a3 - 270*b0*b1^3 + 54*@*b0*b3 - 36*@*b1*b2)/80"),
        (
            "B4",
            "1/160*(-16*@*a0^2*a2*b2 + 24*@*a0^2*a3*b1 + 12*@*a0*a2^2*b0 + 135*b0*b1^4 \
             - 432*@*b0*b1*b3 + 144*@*b0*b2^2 + 24*@*b1^2*b2 - 32*@^2*b4)",
        ),
        (
            "B6",
            "1/2560*(48*@*a0^3*b1^2*b4 + 48*@*a0^2*a2*b1^2*b2 - 144*@*a0^2*a3*b1^3 \
             - 144*@*a0^2*a4*b0*b1^2 - 108*@*a0*a2^2*b0*b1^2 + 135*b0*b1^6 \
             - 64*@^2*a0^2*a2*b4 + 48*@^2*a0^2*a3*b3 - 96*@^2*a0^2*a4*b2 - 8*@^2*a0*a2^2*b2 \
             + 16*@^2*a0*a2*a3*b1 + 144*@^2*a0*a2*a4*b0 - 36*@^2*a0*a3^2*b0 + 12*@^2*a2^3*b0 \
             + 1296*@*b0^2*b1^2*b4 - 216*@*b0*b1^3*b3 + 36*@*b1^4*b2 - 2592*@^2*b0*b1*b5 \
             + 1152*@^2*b0*b2*b4 - 432*@^2*b0*b3^2 - 576*@^3*b6)",
        ),
    ];

    /// A_i, B_j as polynomials in c, d; the discriminant is c0^3 - 27 d0^2.
    const MODULAR_IN_CD: [(&str, &str); 9] = [
        ("A1", "9/2*c1*d0"),
        ("A2", "(3*c0^2*c1^2 - 8*@*c2)/48"),
        ("A3", "(21*c0*c1^3*d0 - 96*@*c0*d3 + 96*@*c1*d2 + 144*@*c3*d0)/896"),
        (
            "A4",
            "1/1024*(9*c1^4*d0^2 - 128*@*c0^2*c1*c3 + 64*@*c0^2*c2^2 - 16*@*c0*c1^2*c2 \
             + 3*@*c1^4 + 768*@*c0*d2^2 + 2304*@*c1*d0*d3 - 2304*@*c2*d0*d2 + 512*@^2*c4)",
        ),
        (
            "A5",
            "1/172032*(21*c0^2*c1^5*d0 + 576*@*c0^2*c1^2*d3 + 768*@*c0^2*c1*c2*d2 \
             - 384*@*c0*c1^3*d2 + 5280*@*c0*c1^2*c3*d0 - 1728*@*c0*c1*c2^2*d0 \
             - 224*@*c1^3*c2*d0 + 6912*@*c1*d0*d2^2 - 4096*@^2*c0*d5 + 2048*@^2*c1*d4 \
             - 3584*@^2*c2*d3 + 5632*@^2*c3*d2)",
        ),
        ("B2", "(45*c0*c1^2*d0 + 48*@*d2)/40"),
        (
            "B3",
            "(270*c1^3*d0^2 - 24*@*c0^2*c3 + 12*@*c0*c1*c2 - 3*@*c1^3 + 432*@*d0*d3)/640",
        ),
        (
            "B4",
            "1/2560*(15*c0^2*c1^4*d0 + 384*@*c0^2*c1*d3 - 256*@*c0^2*c2*d2 - 96*@*c0*c1^2*d2 \
             - 576*@*c0*c1*c3*d0 + 192*@*c0*c2^2*d0 - 96*@*c1^2*c2*d0 + 2304*@*d0*d2^2 \
             - 512*@^2*d4)",
        ),
        (
            "B6",
            "1/163840*(135*c1^6*d0^3 + 48*@*c0^2*c1^4*d2 + 1344*@*c0^2*c1^3*c3*d0 \
             - 576*@*c0^2*c1^2*c2^2*d0 + 48*@*c0*c1^4*c2*d0 - 3*@*c1^6*d0 \
             + 13824*@*c0*c1^2*d0^2*d4 - 8640*@*c1^3*d0^2*d3 + 6912*@*c1^2*c2*d0^2*d2 \
             - 20736*@*c1^2*c4*d0^3 + 9216*@^2*c0^2*c1*d5 - 4096*@^2*c0^2*c2*d4 \
             + 3072*@^2*c0^2*c3*d3 - 6144*@^2*c0^2*c4*d2 - 768*@^2*c0*c1^2*d4 \
             + 1536*@^2*c0*c1*c2*d3 - 1536*@^2*c0*c1*c3*d2 - 512*@^2*c0*c2^2*d2 \
             + 9216*@^2*c0*c2*c4*d0 - 2304*@^2*c0*c3^2*d0 - 192*@^2*c1^3*d3 \
             - 9216*@^2*c1^2*c4*d0 - 1536*@^2*c1*c2*c3*d0 + 768*@^2*c2^3*d0 \
             + 73728*@^2*d0*d2*d4 - 27648*@^2*d0*d3^2 - 36864*@^3*d6)",
        ),
    ];

    /// The distinguished weight 16, index 5 holomorphic form.
    pub const P16_5: &str = "864*A1^3*A2 + 3825*A1*B2^2 - 770*E6*A3*B2 - 840*E6*A2*B3 \
        + 60*E6*A1*B4 + 21*E6^2*A5";

    /// P_{16,5}/E4 as a polynomial in c, d (discriminant c0^3 - 27 d0^2).
    pub const P16_5_OVER_E4_CD: &str = "-27/128*d0*(-7110*c0*c1^5*d0^2 + 140*@*c0^2*c1^3*c2 \
        - 21*@*c0*c1^5 - 1344*@*c0^2*c1*d2^2 - 9648*@*c0*c1^2*d0*d3 \
        + 576*@*c0*c1*c2*d0*d2 - 6864*@*c1^3*d0*d2 + 648*@*c1^2*c3*d0^2 \
        + 2160*@*c1*c2^2*d0^2 + 448*@^2*c0*c2*c3 - 168*@^2*c1^2*c3 - 224*@^2*c1*c2^2 \
        + 9216*@^2*d0*d5 - 8448*@^2*d2*d3)";

    fn parse_table(entries: &[(&str, &str)], delta: &str) -> Vec<(Var, Poly)> {
        entries
            .iter()
            .map(|(name, expr)| {
                let p = parse_poly(&expr.replace('@', delta))
                    .unwrap_or_else(|e| panic!("bad table entry {name}: {e}"));
                (var(name), p)
            })
            .collect()
    }

    /// All eleven a-frame coefficients in the modular alphabet (a1 absent).
    pub fn ab_in_modular() -> Vec<(Var, Poly)> {
        let mut v = parse_table(&AB_IN_MODULAR, DELTA_E);
        v.extend(parse_table(&[B6_IN_MODULAR], DELTA_E));
        v
    }

    /// All eleven c-frame coefficients in the modular alphabet (d1 absent).
    pub fn cd_in_modular() -> Vec<(Var, Poly)> {
        let mut v = parse_table(&CD_IN_MODULAR, DELTA_E);
        v.extend(parse_table(&[D5_IN_MODULAR, D6_IN_MODULAR], DELTA_E));
        v
    }

    pub fn modular_in_ab() -> Vec<(Var, Poly)> {
        parse_table(&MODULAR_IN_AB, DELTA_AB)
    }

    pub fn modular_in_cd() -> Vec<(Var, Poly)> {
        parse_table(&MODULAR_IN_CD, DELTA_CD)
    }

    pub fn p16_5() -> Poly {
        parse_poly(P16_5).unwrap()
    }

    pub fn p16_5_over_e4_cd() -> Poly {
        parse_poly(&P16_5_OVER_E4_CD.replace('@', DELTA_CD)).unwrap()
    }

    pub fn delta_e() -> Poly {
        parse_poly(DELTA_E).unwrap()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

pub const IDENTITY_NAMES: [&str; 5] = [
    "ab-roundtrip",
    "cd-roundtrip",
    "delta-frames",
    "p165-cd",
    "jacobian-AB",
];

fn first_term_string(p: &Poly) -> String {
    match p.terms().next() {
        Some((m, c)) => {
            let names: Vec<String> = p
                .alphabet()
                .iter()
                .zip(m.0.iter())
                .filter(|&(_, e)| *e != 0)
                .map(|(v, e)| format!("{}^{}", v.name(), e))
                .collect();
            format!("{} * {}", crate::poly::rat_to_str(c), names.join("*"))
        }
        None => "0".into(),
    }
}

fn report(id: &str, pass: bool, detail: Option<String>) -> IdentityReport {
    IdentityReport {
        id: id.to_string(),
        pass,
        detail,
    }
}

fn roundtrip_check(
    id: &str,
    outer: Vec<(Var, Poly)>,
    inner: Vec<(Var, Poly)>,
) -> IdentityReport {
    let map: HashMap<Var, Poly> = inner.into_iter().collect();
    let delta = tables::delta_e();
    for (name, expr) in outer {
        let substituted = expr.substitute(&map).expect("roundtrip substitution");
        let (cleared, n) = substituted.eliminate_inverse(var("Dinv"), &delta);
        let expected = Poly::variable(name).mul(&delta.pow(n));
        if cleared != expected {
            let diff = cleared.sub(&expected);
            return report(
                id,
                false,
                Some(format!(
                    "{} fails; first differing term {}",
                    name.name(),
                    first_term_string(&diff)
                )),
            );
        }
    }
    report(id, true, None)
}

fn delta_frames_check() -> IdentityReport {
    let id = "delta-frames";
    let d_ab = parse_poly(tables::DELTA_AB).unwrap();
    let d_cd = parse_poly(tables::DELTA_CD).unwrap();
    if ab_to_cd(&d_ab) != d_cd {
        return report(id, false, Some("translated a-frame discriminant".into()));
    }
    let e_sub = |p: &Poly, v0: Var, v0img: &str, w0: Var, w0img: &str| {
        let map = HashMap::from([
            (v0, parse_poly(v0img).unwrap()),
            (w0, parse_poly(w0img).unwrap()),
        ]);
        p.substitute(&map).unwrap()
    };
    let delta = tables::delta_e();
    if e_sub(&d_ab, var("a0"), "E4/12", var("b0"), "E6/216") != delta {
        return report(id, false, Some("a-frame Eisenstein specialization".into()));
    }
    if e_sub(&d_cd, var("c0"), "E4/12", var("d0"), "E6/216") != delta {
        return report(id, false, Some("c-frame Eisenstein specialization".into()));
    }
    report(id, true, None)
}

fn p165_cd_check() -> IdentityReport {
    let id = "p165-cd";
    let lhs = Poly::variable(var("c0"))
        .scale(&rat_int(12))
        .mul(&tables::p16_5_over_e4_cd());
    let mut map: HashMap<Var, Poly> = tables::modular_in_cd().into_iter().collect();
    map.insert(var("E6"), parse_poly("216*d0").unwrap());
    let rhs = tables::p16_5().substitute(&map).expect("p16,5 substitution");
    if lhs != rhs {
        let diff = lhs.sub(&rhs);
        return report(
            id,
            false,
            Some(format!(
                "first differing term {}",
                first_term_string(&diff)
            )),
        );
    }
    report(id, true, None)
}

fn pow_rat(base: &Rational, e: u32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e {
        r *= base;
    }
    r
}

/// The 9x9 Jacobian of (a2,a3,a4,b1..b6) with respect to
/// (A1,A2,B2,A3,B3,A4,B4,A5,B6), evaluated exactly at random rational
/// points; its value is 2^15 5^4 7^2 / (9 Delta^14 E4^2).
fn jacobian_check(points: usize, seed: u64) -> IdentityReport {
    let id = "jacobian-AB";
    let rows_order = ["a2", "a3", "a4", "b1", "b2", "b3", "b4", "b5", "b6"];
    let cols_order = ["A1", "A2", "B2", "A3", "B3", "A4", "B4", "A5", "B6"];
    let table: HashMap<Var, Poly> = tables::ab_in_modular().into_iter().collect();
    // Precompute symbolic partials; Dinv depends only on E4, E6, so the
    // derivative with respect to any A, B passes through it.
    let partials: Vec<Vec<Poly>> = rows_order
        .iter()
        .map(|r| {
            let p = &table[&var(r)];
            cols_order.iter().map(|c| p.derivative(var(c))).collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < points {
        let mut values = HashMap::new();
        for c in cols_order {
            values.insert(var(c), random_rational(&mut rng, false));
        }
        let e4 = random_rational(&mut rng, true);
        let e6 = random_rational(&mut rng, true);
        let delta = (pow_rat(&e4, 3) - pow_rat(&e6, 2)) / rat_int(1728);
        if delta.is_zero() {
            continue;
        }
        values.insert(var("E4"), e4.clone());
        values.insert(var("E6"), e6);
        values.insert(var("Dinv"), delta.recip());
        let mut m = ExactMatrix::zeros(9, 9);
        for (i, row) in partials.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                m.set(i, j, p.eval_rational(&values).expect("jacobian evaluation"));
            }
        }
        let det = m.det();
        let expected = rat_int(32768 * 625 * 49)
            / (rat_int(9) * pow_rat(&delta, 14) * pow_rat(&e4, 2));
        if det != expected {
            return report(
                id,
                false,
                Some(format!(
                    "point {done}: determinant {} != {}",
                    crate::poly::rat_to_str(&det),
                    crate::poly::rat_to_str(&expected)
                )),
            );
        }
        done += 1;
    }
    report(id, true, None)
}

/// Verify one of the named closed-form identities exactly.
pub fn verify_identity(id: &str) -> Result<IdentityReport, JacobiError> {
    match id {
        "ab-roundtrip" => Ok(roundtrip_check(
            id,
            tables::modular_in_ab(),
            tables::ab_in_modular(),
        )),
        "cd-roundtrip" => Ok(roundtrip_check(
            id,
            tables::modular_in_cd(),
            tables::cd_in_modular(),
        )),
        "delta-frames" => Ok(delta_frames_check()),
        "p165-cd" => Ok(p165_cd_check()),
        "jacobian-AB" => Ok(jacobian_check(3, 271828)),
        other => Err(JacobiError::UnknownIdentity(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn jp(s: &str) -> JacobiPolynomial {
        JacobiPolynomial::from_poly(parse_poly(s).unwrap(), Frame::AB).unwrap()
    }

    #[test]
    fn translation_examples() {
        assert_eq!(ab_to_cd(&parse_poly("a0").unwrap()), parse_poly("c0").unwrap());
        assert_eq!(
            ab_to_cd(&parse_poly("a0*b1").unwrap()),
            parse_poly("-3/2*c1*d0").unwrap()
        );
        assert_eq!(
            ab_to_cd(&parse_poly("a2").unwrap()),
            parse_poly("c2 - 3/8*c1^2*c0^-1").unwrap()
        );
        assert_eq!(cd_to_ab(&parse_poly("c0").unwrap()), parse_poly("a0").unwrap());
        assert_eq!(cd_to_ab(&parse_poly("d0").unwrap()), parse_poly("b0").unwrap());
    }

    #[test]
    fn translation_roundtrip_random_monomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let ab: Vec<Var> = [0usize, 2, 3, 4]
            .iter()
            .map(|&i| a_var(i))
            .chain((0..=6).map(b_var))
            .collect();
        for _ in 0..20 {
            // keep total degree small: the translated image of a monomial is
            // a product of multi-term sums, one per degree unit
            let mut mono = Poly::one();
            for _ in 0..3 {
                let v = ab[rng.gen_range(0..ab.len())];
                mono = mono.mul(&Poly::monomial(v, 1, Rational::one()));
            }
            assert_eq!(cd_to_ab(&ab_to_cd(&mono)), mono);
        }
    }

    #[test]
    fn grades() {
        let p = jp("a0*b1");
        assert_eq!(
            p.grade().unwrap(),
            JGrade {
                d_a: 1,
                d_b: 1,
                m: 1,
                k: 4,
                omega: 8
            }
        );
        // omega consistency: k + 4m = 4 d_a + 6 d_b - 2m
        let q = jp("b0*b2^2");
        let g = q.grade().unwrap();
        assert_eq!(g.k + 4 * g.m, 4 * g.d_a + 6 * g.d_b - 2 * g.m);
    }

    #[test]
    fn membership() {
        assert!(is_jacobi_form(&jp("a0*b1")).unwrap());
        assert!(!is_jacobi_form(&jp("a2")).unwrap());
        assert!(is_jacobi_form(&jp("b0")).unwrap());
        // mixed grades rejected
        let bad = JacobiPolynomial::from_poly(parse_poly("a0 + b0").unwrap(), Frame::AB);
        assert!(matches!(bad, Err(JacobiError::NotHomogeneous(_))));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_j(&jp("a0")).unwrap().poly, parse_poly("al0").unwrap());
        assert_eq!(
            psi_j(&jp("a0*b1")).unwrap().poly,
            parse_poly("al0*be1 - 3/2*al1*be0").unwrap()
        );
        assert_eq!(
            psi_j(&jp("a0*a2/3")).unwrap().poly,
            parse_poly("al0*al2/3 - al1^2/8").unwrap()
        );
    }

    #[test]
    fn psi_inverse_and_roundtrip() {
        let s = Semiinvariant {
            poly: parse_poly("(12*be0*be2 - 5*be1^2)/90").unwrap(),
            d_alpha: 0,
            d_beta: 2,
            order: 8,
        };
        let p = psi_j_inverse(&s).unwrap();
        assert_eq!(p.poly, parse_poly("(12*b0*b2 - 5*b1^2)/90").unwrap());
        let g = p.grade().unwrap();
        assert_eq!((g.d_a, g.d_b, g.m, g.k, g.omega), (0, 2, 2, 0, 8));
        // psi_j_inverse . psi_j = identity on members
        for src in ["a0*b1", "b0", "a0*a2/3", "(12*b0*b2 - 5*b1^2)/90"] {
            let p = jp(src);
            assert!(is_jacobi_form(&p).unwrap(), "{src}");
            let back = psi_j_inverse(&psi_j(&p).unwrap()).unwrap();
            assert_eq!(back.poly, p.poly, "{src}");
        }
    }

    #[test]
    fn psi_is_ring_homomorphism() {
        let p = jp("a0*b1");
        let q = jp("b0");
        let prod = jp("a0*b0*b1");
        assert_eq!(
            psi_j(&prod).unwrap().poly,
            psi_j(&p).unwrap().poly.mul(&psi_j(&q).unwrap().poly)
        );
    }

    #[test]
    fn delta_frames_identity() {
        let r = verify_identity("delta-frames").unwrap();
        assert!(r.pass, "{:?}", r.detail);
    }

    #[test]
    fn p165_identity() {
        let r = verify_identity("p165-cd").unwrap();
        assert!(r.pass, "{:?}", r.detail);
    }

    #[test]
    fn jacobian_identity() {
        let r = verify_identity("jacobian-AB").unwrap();
        assert!(r.pass, "{:?}", r.detail);
    }

    #[test]
    fn ab_roundtrip_restricted_to_a1() {
        // -3 (E4/12)(-4 A1/E4) = A1
        let map: HashMap<Var, Poly> = tables::ab_in_modular().into_iter().collect();
        let a1 = parse_poly("-3*a0*b1").unwrap().substitute(&map).unwrap();
        assert_eq!(a1, parse_poly("A1").unwrap());
    }

    #[test]
    fn unknown_identity_rejected() {
        assert!(matches!(
            verify_identity("nope"),
            Err(JacobiError::UnknownIdentity(_))
        ));
    }
}
