//! The Roberts correspondence between covariants and semiinvariants,
//! hatted/shifted coefficient maps and semiinvariance property checks.

use crate::binary_forms::{alpha_var, beta_var, binom, Covariant, CovariantError};
use crate::poly::{var, Poly, Rational, Var};
use num::{BigInt, One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;

/// A joint semiinvariant of the quartic and sextic, with its declared order.
/// The order is stored rather than inferred: the lift back to a covariant
/// needs it as input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Semiinvariant {
    pub poly: Poly,
    pub d_alpha: i64,
    pub d_beta: i64,
    pub order: i64,
}

/// Leading (u^order) coefficient of a covariant, i.e. its value at
/// (u, v) = (1, 0).
pub fn source(c: &Covariant) -> Result<Semiinvariant, CovariantError> {
    let g = c.grade()?;
    let map = HashMap::from([(var("u"), Poly::one()), (var("v"), Poly::zero())]);
    let poly = c.poly.substitute(&map).expect("source substitution");
    Ok(Semiinvariant {
        poly,
        d_alpha: g.d_alpha,
        d_beta: g.d_beta,
        order: g.order,
    })
}

/// Substitution al_i -> sum_{j>=i} al_j C(j,i) (v/u)^{j-i} (and likewise for
/// be), used by the inverse Roberts map.
fn roberts_hat_map() -> HashMap<Var, Poly> {
    let v_over_u = Poly::variable(var("v"))
        .mul(&Poly::monomial(var("u"), -1, Rational::one()));
    let mut map = HashMap::new();
    for (n, coeff) in [(4usize, alpha_var as fn(usize) -> Var), (6, beta_var)] {
        for i in 0..=n {
            let mut img = Poly::zero();
            for j in i..=n {
                let term = Poly::variable(coeff(j))
                    .scale(&binom(j as i64, i as i64))
                    .mul(&v_over_u.pow((j - i) as u32));
                img = img.add(&term);
            }
            map.insert(coeff(i), img);
        }
    }
    map
}

/// Recover the covariant of a semiinvariant: Psi = u^order * s(hat coords).
pub fn roberts_lift(s: &Semiinvariant) -> Result<Covariant, CovariantError> {
    let lifted = s
        .poly
        .substitute(&roberts_hat_map())
        .expect("roberts substitution");
    let scaled = lifted.mul(&Poly::monomial(
        var("u"),
        s.order as i32,
        Rational::one(),
    ));
    if !scaled.is_zero() && scaled.min_exponent(var("u")).unwrap() < 0 {
        return Err(CovariantError::GradeMismatch(format!(
            "not a semiinvariant of order {}",
            s.order
        )));
    }
    Covariant::from_poly(scaled)
}

/// Pointwise Roberts roundtrip: u^order * s(hat coords) agrees with the
/// covariant at random rational points, in exact arithmetic. The symbolic
/// hat substitution blows up on the large catalog generators, so those are
/// checked at points instead.
pub fn roberts_roundtrip_at(
    c: &Covariant,
    trials: usize,
    seed: u64,
) -> Result<bool, CovariantError> {
    let s = source(c)?;
    let hat = roberts_hat_map();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut point: HashMap<Var, Rational> = HashMap::new();
        for i in 0..=4 {
            point.insert(alpha_var(i), random_integer(&mut rng, false));
        }
        for j in 0..=6 {
            point.insert(beta_var(j), random_integer(&mut rng, false));
        }
        point.insert(var("u"), random_integer(&mut rng, true));
        point.insert(var("v"), random_integer(&mut rng, false));
        let mut env = point.clone();
        for (v, image) in &hat {
            env.insert(*v, image.eval_rational(&point).expect("hat image"));
        }
        let u_val = point[&var("u")].clone();
        let lhs = s.poly.eval_rational(&env).expect("point covers alphabet")
            * power(&u_val, s.order);
        let rhs = c.poly.eval_rational(&point).expect("point covers alphabet");
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// gamma_i of a degree-n form with coefficient images `coeffs`, centered at
/// `center` (the translation amount -x_{m,1}/(n_m x_{m,0})):
/// gamma_i = sum_{j<=i} coeffs[j] C(n-j, n-i) center^{i-j}.
pub fn shifted_coefficients(n: usize, coeffs: &[Poly], center: &Poly) -> Vec<Poly> {
    assert_eq!(coeffs.len(), n + 1);
    (0..=n)
        .map(|i| {
            let mut acc = Poly::zero();
            for j in 0..=i {
                let term = coeffs[j]
                    .scale(&binom((n - j) as i64, (n - i) as i64))
                    .mul(&center.pow((i - j) as u32));
                acc = acc.add(&term);
            }
            acc
        })
        .collect()
}

fn alpha_polys() -> Vec<Poly> {
    (0..=4).map(|i| Poly::variable(alpha_var(i))).collect()
}

fn beta_polys() -> Vec<Poly> {
    (0..=6).map(|j| Poly::variable(beta_var(j))).collect()
}

/// Center -al1/(4 al0) used by the hatted a/b coefficients.
pub fn quartic_center() -> Poly {
    Poly::variable(alpha_var(1))
        .scale(&crate::poly::rat(-1, 4))
        .mul(&Poly::monomial(alpha_var(0), -1, Rational::one()))
}

/// Center -be1/(6 be0) used by the hatted c/d coefficients.
pub fn sextic_center() -> Poly {
    Poly::variable(beta_var(1))
        .scale(&crate::poly::rat(-1, 6))
        .mul(&Poly::monomial(beta_var(0), -1, Rational::one()))
}

/// hat a_i (quartic recentered at its own subleading coefficient).
pub fn hat_a() -> Vec<Poly> {
    shifted_coefficients(4, &alpha_polys(), &quartic_center())
}

/// hat b_i (sextic recentered at the quartic's subleading coefficient).
pub fn hat_b() -> Vec<Poly> {
    shifted_coefficients(6, &beta_polys(), &quartic_center())
}

/// hat c_i (quartic recentered at the sextic's subleading coefficient).
pub fn hat_c() -> Vec<Poly> {
    shifted_coefficients(4, &alpha_polys(), &sextic_center())
}

/// hat d_i (sextic recentered at its own subleading coefficient).
pub fn hat_d() -> Vec<Poly> {
    shifted_coefficients(6, &beta_polys(), &sextic_center())
}

/// Coefficient transformation of the unipotent action (u, v) -> (u + k v, v):
/// al'_i = sum_{j<=i} al_j C(n-j, n-i) k^{i-j}.
pub fn unipotent_map(kappa: &Rational) -> HashMap<Var, Poly> {
    let center = Poly::constant(kappa.clone());
    let mut map = HashMap::new();
    for (i, img) in shifted_coefficients(4, &alpha_polys(), &center)
        .into_iter()
        .enumerate()
    {
        map.insert(alpha_var(i), img);
    }
    for (j, img) in shifted_coefficients(6, &beta_polys(), &center)
        .into_iter()
        .enumerate()
    {
        map.insert(beta_var(j), img);
    }
    map
}

/// Coefficient transformation of the diagonal action
/// (u, v) -> (l u, l^{-1} v): al'_i = l^{n-2i} al_i.
pub fn diagonal_map(lambda: &Rational) -> HashMap<Var, Poly> {
    assert!(!lambda.is_zero());
    let pow = |e: i64| -> Rational {
        let base = if e >= 0 { lambda.clone() } else { lambda.recip() };
        let mut r = Rational::one();
        for _ in 0..e.unsigned_abs() {
            r *= &base;
        }
        r
    };
    let mut map = HashMap::new();
    for i in 0..=4i64 {
        map.insert(
            alpha_var(i as usize),
            Poly::variable(alpha_var(i as usize)).scale(&pow(4 - 2 * i)),
        );
    }
    for j in 0..=6i64 {
        map.insert(
            beta_var(j as usize),
            Poly::variable(beta_var(j as usize)).scale(&pow(6 - 2 * j)),
        );
    }
    map
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiTrial {
    pub axiom: String,
    pub trial: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiReport {
    pub seed: u64,
    pub trials: Vec<SemiTrial>,
}

impl SemiReport {
    pub fn all_pass(&self) -> bool {
        self.trials.iter().all(|t| t.pass)
    }
}

/// Random rational with numerator and denominator in [-9, 9].
pub fn random_rational(rng: &mut impl Rng, nonzero: bool) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=9);
        let r = Rational::new(n.into(), d.into());
        if !nonzero || !r.is_zero() {
            return r;
        }
    }
}

/// Random small integer as a rational. The pointwise checks on the large
/// catalog generators use integer points: rational points make every term
/// evaluation pay for a bignum gcd.
pub fn random_integer(rng: &mut impl Rng, nonzero: bool) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        if !nonzero || n != 0 {
            return Rational::from(BigInt::from(n));
        }
    }
}

/// Random rational 2x2 matrix with determinant one.
pub fn random_unimodular(rng: &mut impl Rng) -> [[Rational; 2]; 2] {
    let a = random_rational(rng, true);
    let b = random_rational(rng, false);
    let c = random_rational(rng, false);
    let d = (Rational::one() + &b * &c) / &a;
    [[a, b], [c, d]]
}

fn power(base: &Rational, order: i64) -> Rational {
    let mut scale = Rational::one();
    let base = if order >= 0 { base.clone() } else { base.recip() };
    for _ in 0..order.unsigned_abs() {
        scale *= &base;
    }
    scale
}

/// The semiinvariance axioms checked at random rational coefficient values
/// in exact arithmetic. The sources of the large catalog generators are too
/// big for the symbolic substitution, so they are tested pointwise.
pub fn check_semiinvariance_at(s: &Semiinvariant, trials: usize, seed: u64) -> SemiReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all_vars: Vec<Var> = (0..=4)
        .map(crate::binary_forms::alpha_var)
        .chain((0..=6).map(crate::binary_forms::beta_var))
        .collect();
    let mut out = Vec::new();
    for trial in 0..trials {
        let point: HashMap<Var, Rational> = all_vars
            .iter()
            .map(|v| (*v, random_integer(&mut rng, false)))
            .collect();
        let kappa = random_rational(&mut rng, false);
        let mut env = point.clone();
        for (v, image) in unipotent_map(&kappa) {
            env.insert(v, image.eval_rational(&point).unwrap());
        }
        let transformed = s.poly.eval_rational(&env).unwrap();
        let reference = s.poly.eval_rational(&point).unwrap();
        let pass = transformed == reference;
        out.push(SemiTrial {
            axiom: "unipotent-point".into(),
            trial,
            pass,
            witness: (!pass).then(|| {
                serde_json::json!({ "kappa": crate::poly::rat_to_str(&kappa) })
            }),
        });
        let lambda = random_rational(&mut rng, true);
        let mut env = point.clone();
        for (v, image) in diagonal_map(&lambda) {
            env.insert(v, image.eval_rational(&point).unwrap());
        }
        let transformed = s.poly.eval_rational(&env).unwrap();
        let expected = reference * power(&lambda, s.order);
        let pass = transformed == expected;
        out.push(SemiTrial {
            axiom: "diagonal-point".into(),
            trial,
            pass,
            witness: (!pass).then(|| {
                serde_json::json!({ "lambda": crate::poly::rat_to_str(&lambda) })
            }),
        });
    }
    SemiReport { seed, trials: out }
}

/// Check the unipotent and diagonal semiinvariance axioms at `trials`
/// random rational parameters each. Failures are reported, not thrown.
pub fn check_semiinvariance(s: &Semiinvariant, trials: usize, seed: u64) -> SemiReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for trial in 0..trials {
        let kappa = random_rational(&mut rng, false);
        let transformed = s.poly.substitute(&unipotent_map(&kappa)).unwrap();
        let pass = transformed == s.poly;
        out.push(SemiTrial {
            axiom: "unipotent".into(),
            trial,
            pass,
            witness: (!pass).then(|| {
                serde_json::json!({
                    "kappa": crate::poly::rat_to_str(&kappa),
                    "transformed": transformed.to_json(),
                })
            }),
        });
    }
    for trial in 0..trials {
        let lambda = random_rational(&mut rng, true);
        let transformed = s.poly.substitute(&diagonal_map(&lambda)).unwrap();
        let expected = s.poly.scale(&power(&lambda, s.order));
        let pass = transformed == expected;
        out.push(SemiTrial {
            axiom: "diagonal".into(),
            trial,
            pass,
            witness: (!pass).then(|| {
                serde_json::json!({
                    "lambda": crate::poly::rat_to_str(&lambda),
                    "transformed": transformed.to_json(),
                    "expected": expected.to_json(),
                })
            }),
        });
    }
    SemiReport {
        seed,
        trials: out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary_forms::{quartic, sextic, transvectant};
    use crate::poly::parse_poly;

    #[test]
    fn source_examples() {
        assert_eq!(source(&quartic()).unwrap().poly, parse_poly("al0").unwrap());
        let g2 = sextic().mul(&sextic());
        assert_eq!(source(&g2).unwrap().poly, parse_poly("be0^2").unwrap());
        let fg2 = transvectant(&quartic(), &sextic(), 2).unwrap();
        assert_eq!(
            source(&fg2).unwrap().poly,
            parse_poly("(2*al0*be2 - 5/2*al1*be1 + 5*al2*be0)/30").unwrap()
        );
    }

    #[test]
    fn roberts_lift_of_al0_is_f() {
        let s = Semiinvariant {
            poly: parse_poly("al0").unwrap(),
            d_alpha: 1,
            d_beta: 0,
            order: 4,
        };
        assert_eq!(roberts_lift(&s).unwrap().poly, quartic().poly);
    }

    #[test]
    fn roberts_roundtrip_on_transvectants() {
        for (c, _) in [
            (transvectant(&quartic(), &sextic(), 1).unwrap(), "fg1"),
            (transvectant(&quartic(), &quartic(), 2).unwrap(), "ff2"),
            (transvectant(&sextic(), &sextic(), 2).unwrap(), "gg2"),
        ] {
            let lifted = roberts_lift(&source(&c).unwrap()).unwrap();
            assert_eq!(lifted.poly, c.poly);
        }
    }

    #[test]
    fn order_zero_lift_is_identity() {
        let inv = source(&transvectant(&quartic(), &quartic(), 4).unwrap()).unwrap();
        assert_eq!(inv.order, 0);
        assert_eq!(roberts_lift(&inv).unwrap().poly, inv.poly);
    }

    #[test]
    fn hatted_identities() {
        assert!(hat_a()[1].is_zero(), "hat a_1 = 0");
        assert!(hat_d()[1].is_zero(), "hat d_1 = 0");
        assert_eq!(hat_b()[0], parse_poly("be0").unwrap());
        // hat c_1 at al1 = 0 is -(2/3) al0 be1 / be0
        let c1 = hat_c()[1]
            .substitute(&HashMap::from([(alpha_var(1), Poly::zero())]))
            .unwrap();
        assert_eq!(c1, parse_poly("-2/3*al0*be1*be0^-1").unwrap());
    }

    #[test]
    fn semiinvariance_pass_and_fail() {
        let al0 = Semiinvariant {
            poly: parse_poly("al0").unwrap(),
            d_alpha: 1,
            d_beta: 0,
            order: 4,
        };
        assert!(check_semiinvariance(&al0, 4, 11).all_pass());
        // al1 fails the unipotent axiom: al1' = al1 + 4 k al0
        let al1 = Semiinvariant {
            poly: parse_poly("al1").unwrap(),
            d_alpha: 1,
            d_beta: 0,
            order: 2,
        };
        let report = check_semiinvariance(&al1, 4, 11);
        assert!(report
            .trials
            .iter()
            .any(|t| t.axiom == "unipotent" && !t.pass));
        // the pointwise variant agrees on both
        assert!(check_semiinvariance_at(&al0, 4, 11).all_pass());
        let report = check_semiinvariance_at(&al1, 4, 11);
        assert!(report
            .trials
            .iter()
            .any(|t| t.axiom == "unipotent-point" && !t.pass));
    }

    #[test]
    fn random_unimodular_has_det_one() {
        use crate::binary_forms::det2;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            assert_eq!(det2(&random_unimodular(&mut rng)), Rational::one());
        }
    }

    #[test]
    fn gamma_semiinvariants_of_proposition() {
        // al0^{i-1} hat a_i and al0^i hat b_i are semiinvariants, as are
        // be0^i hat c_i and be0^{i-1} hat d_i.
        for (i, h) in hat_a().into_iter().enumerate().skip(2) {
            let p = h.mul(&Poly::monomial(alpha_var(0), (i as i32) - 1, Rational::one()));
            // order: hat a_i carries 4-2i, al0^{i-1} carries 4(i-1)
            let s = Semiinvariant {
                poly: p,
                d_alpha: i as i64,
                d_beta: 0,
                order: 2 * i as i64,
            };
            assert!(check_semiinvariance(&s, 3, 5).all_pass(), "hat a_{i}");
        }
        for (i, h) in hat_b().into_iter().enumerate().skip(1) {
            let p = h.mul(&Poly::monomial(alpha_var(0), i as i32, Rational::one()));
            // order: hat b_i carries 6-2i, al0^i carries 4i
            let s = Semiinvariant {
                poly: p,
                d_alpha: i as i64,
                d_beta: 1,
                order: 6 + 2 * i as i64,
            };
            assert!(check_semiinvariance(&s, 3, 5).all_pass(), "hat b_{i}");
        }
    }

    #[test]
    fn source_is_multiplicative() {
        let c1 = transvectant(&quartic(), &sextic(), 1).unwrap();
        let c2 = transvectant(&sextic(), &sextic(), 2).unwrap();
        let prod = c1.mul(&c2);
        assert_eq!(
            source(&prod).unwrap().poly,
            source(&c1).unwrap().poly.mul(&source(&c2).unwrap().poly)
        );
    }
}
