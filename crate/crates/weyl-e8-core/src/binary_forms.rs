//! Binary forms, the transvectant operator and covariant grade bookkeeping.
//!
//! The quartic `f` and sextic `g` are carried with formal coefficients
//! `al0..al4` and `be0..be6`; explicit test forms simply use rational
//! coefficients in the same representation, so oracles and production share
//! one code path.

use crate::poly::{rat_int, var, Poly, Rational, Var};
use num::bigint::BigInt;
use num::{One, Zero};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CovariantError {
    NotBinaryForm(String),
    ZeroCovariant,
    NotUnimodular,
    GradeMismatch(String),
}

impl fmt::Display for CovariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CovariantError::NotBinaryForm(m) => write!(f, "not a binary form: {m}"),
            CovariantError::ZeroCovariant => write!(f, "grades undefined for zero covariant"),
            CovariantError::NotUnimodular => write!(f, "not unimodular"),
            CovariantError::GradeMismatch(m) => write!(f, "grade mismatch: {m}"),
        }
    }
}

impl std::error::Error for CovariantError {}

/// (degree in al's, degree in be's, order in (u, v)).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Grade {
    pub d_alpha: i64,
    pub d_beta: i64,
    pub order: i64,
}

/// A joint covariant of the quartic and sextic: a polynomial in
/// `al0..al4, be0..be6, u, v` homogeneous in each grading.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Covariant {
    pub poly: Poly,
    grade: Option<Grade>,
}

pub fn alpha_var(i: usize) -> Var {
    var(&format!("al{i}"))
}

pub fn beta_var(j: usize) -> Var {
    var(&format!("be{j}"))
}

fn alpha_degree(v: Var) -> i64 {
    (22..=26).contains(&v.0).into()
}

fn beta_degree(v: Var) -> i64 {
    (27..=33).contains(&v.0).into()
}

fn uv_degree(v: Var) -> i64 {
    (v == var("u") || v == var("v")).into()
}

impl Covariant {
    pub fn zero() -> Covariant {
        Covariant {
            poly: Poly::zero(),
            grade: None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Wrap a polynomial, reading off the grades by exponent inspection.
    pub fn from_poly(poly: Poly) -> Result<Covariant, CovariantError> {
        if poly.is_zero() {
            return Ok(Covariant::zero());
        }
        let d_alpha = poly
            .homogeneous_degree(alpha_degree)
            .ok_or_else(|| CovariantError::NotBinaryForm("mixed degree in al".into()))?;
        let d_beta = poly
            .homogeneous_degree(beta_degree)
            .ok_or_else(|| CovariantError::NotBinaryForm("mixed degree in be".into()))?;
        let order = poly
            .homogeneous_degree(uv_degree)
            .ok_or_else(|| CovariantError::NotBinaryForm("not homogeneous in (u, v)".into()))?;
        if order < 0 || poly.min_exponent(var("u")).unwrap_or(0) < 0 {
            return Err(CovariantError::NotBinaryForm("negative power of u".into()));
        }
        Ok(Covariant {
            poly,
            grade: Some(Grade {
                d_alpha,
                d_beta,
                order,
            }),
        })
    }

    pub fn grade(&self) -> Result<Grade, CovariantError> {
        self.grade.ok_or(CovariantError::ZeroCovariant)
    }

    pub fn order(&self) -> Result<i64, CovariantError> {
        Ok(self.grade()?.order)
    }

    pub fn mul(&self, other: &Covariant) -> Covariant {
        Covariant::from_poly(self.poly.mul(&other.poly)).expect("product of covariants")
    }

    pub fn pow(&self, n: u32) -> Covariant {
        Covariant::from_poly(self.poly.pow(n)).expect("power of covariant")
    }
}

/// The generic binary quartic f = sum al_i u^{4-i} v^i.
pub fn quartic() -> Covariant {
    generic_form(4, alpha_var)
}

/// The generic binary sextic g = sum be_j u^{6-j} v^j.
pub fn sextic() -> Covariant {
    generic_form(6, beta_var)
}

fn generic_form(n: usize, coeff: fn(usize) -> Var) -> Covariant {
    let u = Poly::variable(var("u"));
    let v = Poly::variable(var("v"));
    let mut p = Poly::zero();
    for i in 0..=n {
        let term = Poly::variable(coeff(i))
            .mul(&u.pow((n - i) as u32))
            .mul(&v.pow(i as u32));
        p = p.add(&term);
    }
    Covariant::from_poly(p).unwrap()
}

/// A binary form with explicit rational coefficients (for test oracles).
pub fn explicit_form(coeffs: &[Rational]) -> Covariant {
    let n = coeffs.len() - 1;
    let u = Poly::variable(var("u"));
    let v = Poly::variable(var("v"));
    let mut p = Poly::zero();
    for (i, c) in coeffs.iter().enumerate() {
        let term = Poly::constant(c.clone())
            .mul(&u.pow((n - i) as u32))
            .mul(&v.pow(i as u32));
        p = p.add(&term);
    }
    Covariant::from_poly(p).unwrap()
}

fn factorial(n: i64) -> BigInt {
    let mut r = BigInt::one();
    for k in 2..=n {
        r *= k;
    }
    r
}

fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || k > n {
        return Rational::zero();
    }
    Rational::from(factorial(n) / (factorial(k) * factorial(n - k)))
}

/// Rational binomial coefficient C(n, k) for integer n, k >= 0.
pub fn binom(n: i64, k: i64) -> Rational {
    binomial(n, k)
}

/// The i-th transvectant of two covariants:
/// ((n1-i)!(n2-i)!/(n1!n2!)) * sum_j (-1)^j C(i,j)
///   d^i f1/du^{i-j}dv^j * d^i f2/du^j dv^{i-j}.
/// Returns the zero covariant when `i` exceeds either order.
pub fn transvectant(f1: &Covariant, f2: &Covariant, i: u32) -> Result<Covariant, CovariantError> {
    if f1.is_zero() || f2.is_zero() {
        return Ok(Covariant::zero());
    }
    let n1 = f1.order()?;
    let n2 = f2.order()?;
    let i = i as i64;
    if i > n1 || i > n2 {
        return Ok(Covariant::zero());
    }
    let prefactor = Rational::new(
        factorial(n1 - i) * factorial(n2 - i),
        factorial(n1) * factorial(n2),
    );
    let u = var("u");
    let v = var("v");
    // Precompute mixed partials d^i / du^{i-j} dv^j for both arguments.
    let partials = |p: &Poly| -> Vec<Poly> {
        let mut by_u = p.clone();
        let mut list = Vec::with_capacity(i as usize + 1);
        // list[j] = d^i p / du^{i-j} dv^j
        for _ in 0..i {
            by_u = by_u.derivative(u);
        }
        list.push(by_u);
        for j in 1..=i {
            // one step back in u, one forward in v
            let mut p_j = p.clone();
            for _ in 0..(i - j) {
                p_j = p_j.derivative(u);
            }
            for _ in 0..j {
                p_j = p_j.derivative(v);
            }
            list.push(p_j);
        }
        list
    };
    let d1 = partials(&f1.poly);
    let d2 = partials(&f2.poly);
    let mut sum = Poly::zero();
    for j in 0..=i {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let coeff = binomial(i, j) * rat_int(sign);
        let term = d1[j as usize].mul(&d2[(i - j) as usize]).scale(&coeff);
        sum = sum.add(&term);
    }
    Covariant::from_poly(sum.scale(&prefactor))
}

/// Grades of a nonzero covariant as the (d_alpha, d_beta, order) triple.
pub fn covariant_grades(c: &Covariant) -> Result<(i64, i64, i64), CovariantError> {
    let g = c.grade()?;
    Ok((g.d_alpha, g.d_beta, g.order))
}

/// Coefficient transformation induced by T acting on (u, v): expands
/// f(t11 u + t12 v, t21 u + t22 v) and reads off the primed coefficients.
pub fn sl2_coefficient_map(t: &[[Rational; 2]; 2]) -> HashMap<Var, Poly> {
    let mut map = HashMap::new();
    let u = var("u");
    let v = var("v");
    for (n, coeff) in [(4usize, alpha_var as fn(usize) -> Var), (6, beta_var)] {
        let form = generic_form(n, coeff);
        let image = form
            .poly
            .substitute(&uv_substitution(t))
            .expect("linear substitution");
        for i in 0..=n {
            let c = image
                .coefficient_of(u, (n - i) as i32)
                .coefficient_of(v, i as i32);
            map.insert(coeff(i), c);
        }
    }
    map
}

/// Substitution (u, v) -> (t11 u + t12 v, t21 u + t22 v).
pub fn uv_substitution(t: &[[Rational; 2]; 2]) -> HashMap<Var, Poly> {
    let u = Poly::variable(var("u"));
    let v = Poly::variable(var("v"));
    HashMap::from([
        (
            var("u"),
            u.scale(&t[0][0]).add(&v.scale(&t[0][1])),
        ),
        (
            var("v"),
            u.scale(&t[1][0]).add(&v.scale(&t[1][1])),
        ),
    ])
}

pub fn det2(t: &[[Rational; 2]; 2]) -> Rational {
    &t[0][0] * &t[1][1] - &t[0][1] * &t[1][0]
}

/// Apply the induced action of a unimodular T to the coefficient variables.
pub fn sl2_transform(
    c: &Covariant,
    t: &[[Rational; 2]; 2],
) -> Result<Covariant, CovariantError> {
    if det2(t) != Rational::one() {
        return Err(CovariantError::NotUnimodular);
    }
    let map = sl2_coefficient_map(t);
    let poly = c.poly.substitute(&map).expect("coefficient substitution");
    Covariant::from_poly(poly)
}

/// Definition of equivariance: Psi(al'; u, v) = Psi(al; u', v').
pub fn is_equivariant(c: &Covariant, t: &[[Rational; 2]; 2]) -> Result<bool, CovariantError> {
    let lhs = sl2_transform(c, t)?;
    let rhs = c
        .poly
        .substitute(&uv_substitution(t))
        .expect("uv substitution");
    Ok(lhs.poly == rhs)
}

/// The same identity checked at a rational point in exact arithmetic.
/// The large catalog generators are far too big for the full symbolic
/// substitution, so equivariance is tested pointwise there.
pub fn is_equivariant_at(
    c: &Covariant,
    t: &[[Rational; 2]; 2],
    point: &HashMap<Var, Rational>,
) -> Result<bool, CovariantError> {
    if det2(t) != Rational::one() {
        return Err(CovariantError::NotUnimodular);
    }
    let mut lhs_env = point.clone();
    for (v, image) in sl2_coefficient_map(t) {
        lhs_env.insert(v, image.eval_rational(point).expect("linear image"));
    }
    let mut rhs_env = point.clone();
    for (v, image) in uv_substitution(t) {
        rhs_env.insert(v, image.eval_rational(point).expect("linear image"));
    }
    let lhs = c.poly.eval_rational(&lhs_env).expect("point covers alphabet");
    let rhs = c.poly.eval_rational(&rhs_env).expect("point covers alphabet");
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat};

    #[test]
    fn zeroth_transvectant_is_product() {
        let f = quartic();
        let g = sextic();
        let t = transvectant(&f, &g, 0).unwrap();
        assert_eq!(t.poly, f.poly.mul(&g.poly));
        assert_eq!(covariant_grades(&t).unwrap(), (1, 1, 10));
    }

    #[test]
    fn second_transvectant_sources() {
        let f = quartic();
        let g = sextic();
        let s = |c: &Covariant| {
            let map = HashMap::from([
                (var("u"), Poly::one()),
                (var("v"), Poly::zero()),
            ]);
            c.poly.substitute(&map).unwrap()
        };
        let ff2 = transvectant(&f, &f, 2).unwrap();
        assert_eq!(s(&ff2), parse_poly("al0*al2/3 - al1^2/8").unwrap());
        let gg2 = transvectant(&g, &g, 2).unwrap();
        assert_eq!(
            s(&gg2),
            parse_poly("(12*be0*be2 - 5*be1^2)/90").unwrap()
        );
        let fg2 = transvectant(&f, &g, 2).unwrap();
        assert_eq!(
            s(&fg2),
            parse_poly("(2*al0*be2 - 5/2*al1*be1 + 5*al2*be0)/30").unwrap()
        );
    }

    #[test]
    fn explicit_form_example() {
        // <u^4, u^5 v>^1 = u^8/6 by direct differentiation
        let f1 = Covariant::from_poly(parse_poly("u^4").unwrap()).unwrap();
        let f2 = Covariant::from_poly(parse_poly("u^5*v").unwrap()).unwrap();
        let t = transvectant(&f1, &f2, 1).unwrap();
        assert_eq!(t.poly, parse_poly("u^8/6").unwrap());
    }

    #[test]
    fn swap_symmetry_and_order_arithmetic() {
        let f = quartic();
        let g = sextic();
        for i in 0..=4u32 {
            let a = transvectant(&f, &g, i).unwrap();
            let b = transvectant(&g, &f, i).unwrap();
            let expect = if i % 2 == 0 { a.poly.clone() } else { a.poly.neg() };
            assert_eq!(b.poly, expect, "swap symmetry at i={i}");
            if !a.is_zero() {
                assert_eq!(a.order().unwrap(), 10 - 2 * i as i64);
            }
        }
    }

    #[test]
    fn overshoot_returns_zero() {
        let f = quartic();
        assert!(transvectant(&f, &f, 5).unwrap().is_zero());
    }

    #[test]
    fn grades_of_basic_covariants() {
        assert_eq!(covariant_grades(&quartic()).unwrap(), (1, 0, 4));
        let fg1 = transvectant(&quartic(), &sextic(), 1).unwrap();
        assert_eq!(covariant_grades(&fg1).unwrap(), (1, 1, 8));
    }

    #[test]
    fn identity_transform_is_noop() {
        let one = Rational::one();
        let zero = Rational::zero();
        let t = [[one.clone(), zero.clone()], [zero, one]];
        let c = transvectant(&quartic(), &sextic(), 2).unwrap();
        assert_eq!(sl2_transform(&c, &t).unwrap().poly, c.poly);
    }

    #[test]
    fn unipotent_transform_of_quartic() {
        // T = [[1,1],[0,1]]: al'_i are read off from f(u+v, v); in
        // particular al'_0 = al0 and al'_4 = f(1,1) pattern al0+al1+al2+al3+al4.
        let t = [
            [rat(1, 1), rat(1, 1)],
            [rat(0, 1), rat(1, 1)],
        ];
        let map = sl2_coefficient_map(&t);
        assert_eq!(map[&alpha_var(0)], parse_poly("al0").unwrap());
        assert_eq!(
            map[&alpha_var(4)],
            parse_poly("al0+al1+al2+al3+al4").unwrap()
        );
    }

    #[test]
    fn transvectant_equivariance_random_t() {
        // <f,g>^2 transforms covariantly under a random unimodular T.
        let t = [
            [rat(2, 3), rat(1, 4)],
            [rat(-2, 1), rat(3, 4)],
        ];
        assert_eq!(det2(&t), Rational::one());
        let c = transvectant(&quartic(), &sextic(), 2).unwrap();
        assert!(is_equivariant(&c, &t).unwrap());
        // and the transform of the transvectant equals the transvectant of
        // the transforms
        let tf = sl2_transform(&quartic(), &t).unwrap();
        let tg = sl2_transform(&sextic(), &t).unwrap();
        let lhs = sl2_transform(&c, &t).unwrap();
        // f', g' have (u,v)-dependence via the original variables; comparing
        // sources is done through the defining property instead:
        let direct = transvectant(&tf, &tg, 2).unwrap();
        assert_eq!(lhs.poly, direct.poly);
    }

    #[test]
    fn non_unimodular_rejected() {
        let t = [
            [rat(2, 1), rat(0, 1)],
            [rat(0, 1), rat(1, 1)],
        ];
        assert_eq!(
            sl2_transform(&quartic(), &t),
            Err(CovariantError::NotUnimodular)
        );
    }
}
