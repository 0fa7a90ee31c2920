//! Generators for the example surfaces, the automorphisms `H_t` and the
//! infinitesimal automorphism `X` of the `M_{m,T}` family.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rat, GaussianRational, Rational};
use crate::series::{uni_compose, uni_function, FormalMap, HoloSeries2, Series3, UniFunction, UniSeries};
use crate::surface::{GraphSurface, VectorField};

/// A named example family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum FamilySpec {
    Quadric,
    /// `u (|z|^2 + C/4 |z|^4 + D/36 |z|^6)`
    Cd {
        #[serde(rename = "C", with = "crate::scalar::rational_string")]
        c: Rational,
        #[serde(rename = "D", with = "crate::scalar::rational_string")]
        d: Rational,
    },
    Mm {
        m: u32,
    },
    Mmt {
        m: u32,
        #[serde(rename = "T", with = "crate::scalar::rational_string")]
        t: Rational,
    },
}

impl FamilySpec {
    pub fn generate(&self, order: u32) -> Result<GraphSurface> {
        match self {
            FamilySpec::Quadric => gen_quadric(order),
            FamilySpec::Cd { c, d } => gen_cd(c, d, order),
            FamilySpec::Mm { m } => gen_mm(*m, order),
            FamilySpec::Mmt { m, t } => gen_mmt(*m, t, order),
        }
    }
}

fn need_order(order: u32, needed: u32, what: &'static str) -> Result<()> {
    if order < needed {
        return Err(Error::OrderTooSmall { order, needed, what });
    }
    Ok(())
}

fn need_m(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be a positive integer".into()));
    }
    Ok(())
}

/// `u * F(|z|^2)` for a series `F(x) = sum F_j x^j`; every `F_j` must be real.
fn radial(order: u32, f: &UniSeries) -> Result<GraphSurface> {
    let mut phi = Series3::zero(order);
    for j in 1..=f.order() {
        if 2 * j + 1 > order {
            break;
        }
        let c = f.coeff(j);
        if !c.is_real() {
            return Err(Error::GeneratorSanity(format!("coefficient of |z|^{} u is {c}, not real", 2 * j)));
        }
        phi.add_term((j, j, 1), &c);
    }
    GraphSurface::new(phi)
}

/// Largest `j` with `|z|^(2j) u` inside the truncation.
fn radial_len(order: u32) -> u32 {
    (order - 1) / 2
}

pub fn gen_quadric(order: u32) -> Result<GraphSurface> {
    need_order(order, 3, "the quadric")?;
    GraphSurface::new(Series3::monomial(order, (1, 1, 1), GaussianRational::one()))
}

pub fn gen_cd(c: &Rational, d: &Rational, order: u32) -> Result<GraphSurface> {
    need_order(order, 7, "the C/D family")?;
    let f = UniSeries::from_coeffs(
        radial_len(order),
        vec![
            GaussianRational::zero(),
            GaussianRational::one(),
            GaussianRational::real(c / rat(4, 1)),
            GaussianRational::real(d / rat(36, 1)),
        ],
    );
    radial(order, &f)
}

/// `phi = i u (1 - q(2m x)) / (1 + q(2m x))`, `q(x) = exp((i/m) arcsin x)`,
/// `x = |z|^2`.
pub fn gen_mm(m: u32, order: u32) -> Result<GraphSurface> {
    need_m(m)?;
    need_order(order, 7, "M_m")?;
    let j = radial_len(order);
    let im = GaussianRational::new(Rational::zero(), rat(1, i64::from(m)));
    let theta = uni_function(&UniFunction::Arcsin, j).scale(&im);
    let q = uni_compose(&uni_function(&UniFunction::Exp, j), &theta)?;
    let one = UniSeries::one(j);
    let h = one.sub(&q).mul(&one.add(&q).inverse()?).scale(&GaussianRational::i());
    radial(order, &h.rescale_variable(&GaussianRational::from_int(2 * i64::from(m))))
}

/// `r(y) = tan y / (1 + T tan y)`.
fn qt_rhs(t: &Rational, order: u32) -> Result<UniSeries> {
    let tan = uni_function(&UniFunction::Tan, order);
    let den = UniSeries::one(order).add(&tan.scale(&GaussianRational::real(t.clone())));
    Ok(tan.mul(&den.inverse()?))
}

/// The series solution `q = u + ...` of `u q' = tan q / (1 + T tan q)`.
///
/// At `u^n` the equation reads `n q_n = q_n + S_n`, where `S_n` only involves
/// `q_1 .. q_(n-1)`, so `q_n = S_n / (n - 1)`.
pub fn solve_qt(t: &Rational, order: u32) -> Result<UniSeries> {
    if order < 2 {
        return Err(Error::InvalidParameter("solve_qt needs order >= 2".into()));
    }
    let r = qt_rhs(t, order)?;
    let mut q = UniSeries::x(order);
    for n in 2..=order {
        let s = uni_compose(&r, &q)?.coeff(n);
        q.set_coeff(n, s.scale(&rat(1, i64::from(n) - 1)));
    }
    Ok(q)
}

/// `u q' - tan q / (1 + T tan q)`; zero for the solution of [`solve_qt`].
pub fn qt_residual(t: &Rational, q: &UniSeries) -> Result<UniSeries> {
    let n = q.order();
    let mut uq = UniSeries::zero(n);
    for i in 1..=n {
        uq.set_coeff(i, q.coeff(i).scale(&rat(i64::from(i), 1)));
    }
    Ok(uq.sub(&uni_compose(&qt_rhs(t, n)?, q)?))
}

/// `phi = u tan(q_T(m x) / m)`, `x = |z|^2`.
pub fn gen_mmt(m: u32, t: &Rational, order: u32) -> Result<GraphSurface> {
    need_m(m)?;
    need_order(order, 7, "M_{m,T}")?;
    let j = radial_len(order);
    let q = solve_qt(t, j.max(2))?;
    let mm = GaussianRational::from_int(i64::from(m));
    let inner = q.rescale_variable(&mm).scale(&GaussianRational::real(rat(1, i64::from(m))));
    let f = uni_compose(&uni_function(&UniFunction::Tan, j.max(2)), &inner)?;
    radial(order, &UniSeries::from_coeffs(j, f.coeffs().to_vec()))
}

/// `H_t(z, w) = (z (1 - t w^(2m))^(-1/2), w (1 - t w^(2m))^(-1/(2m)))`.
pub fn gen_ht(m: u32, t: &Rational, order: u32) -> Result<FormalMap> {
    need_m(m)?;
    need_order(order, 2 * m + 1, "H_t")?;
    let two_m = 2 * m;
    let jmax = order / two_m;
    // (1 + y)^r at y = -t w^(2m), times the given monomial, minus that monomial
    let expand = |r: Rational, lk: (u32, u32)| {
        let p = uni_function(&UniFunction::PowRational(r), jmax);
        let mut h = HoloSeries2::zero(order);
        let mt = GaussianRational::real(-t.clone());
        for j in 1..=jmax {
            let c = &p.coeff(j) * &mt.pow(j);
            h.add_term((lk.0, lk.1 + two_m * j), &c);
        }
        h
    };
    let f = expand(rat(-1, 2), (1, 0));
    let g = expand(rat(-1, 2 * i64::from(m)), (0, 1));
    FormalMap::new(f, g)
}

/// `X = (m/2)(1 - i T) z w^m d/dz + w^(m+1) d/dw`, tangent to `M_{m,T}`.
pub fn gen_x(m: u32, t: &Rational, order: u32) -> Result<VectorField> {
    need_m(m)?;
    let half_m = rat(i64::from(m), 2);
    x_field(m, GaussianRational::new(half_m.clone(), -(half_m * t)), order)
}

/// The field with the `d/dz` coefficient `(1/m)(1/2 + i T)` as usually
/// printed. It agrees with [`gen_x`] only for `m = 1, T = 0` and is not
/// tangent to `M_{m,T}` otherwise.
pub fn gen_x_displayed(m: u32, t: &Rational, order: u32) -> Result<VectorField> {
    need_m(m)?;
    x_field(m, GaussianRational::new(rat(1, 2 * i64::from(m)), t / rat(i64::from(m), 1)), order)
}

fn x_field(m: u32, c: GaussianRational, order: u32) -> Result<VectorField> {
    VectorField::new(
        HoloSeries2::monomial(order, (1, m), c),
        HoloSeries2::monomial(order, (0, m + 1), GaussianRational::one()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonance::char_poly;
    use crate::series::invert_map;
    use crate::surface::{infinitesimal_defect, jet7, map_defect};
    use std::collections::BTreeSet;

    fn r(n: i64) -> Rational {
        rat(n, 1)
    }

    fn g(a: i64, b: i64) -> GaussianRational {
        GaussianRational::real(rat(a, b))
    }

    #[test]
    fn quadric_and_cd() {
        let q = gen_quadric(6).unwrap();
        assert_eq!(q.phi().len(), 1);
        assert_eq!(gen_cd(&r(0), &r(0), 9).unwrap(), gen_quadric(9).unwrap());
        let cd = gen_cd(&r(1), &r(5), 9).unwrap();
        assert_eq!(cd.phi().coeff((2, 2, 1)), g(1, 4));
        assert_eq!(cd.phi().coeff((3, 3, 1)), g(5, 36));
        assert!(gen_cd(&r(1), &r(1), 6).is_err());
    }

    #[test]
    fn mm_coefficients() {
        for m in 1..=3i64 {
            let s = gen_mm(m as u32, 9).unwrap();
            assert_eq!(s.phi().coeff((1, 1, 1)), g(1, 1));
            assert!(s.phi().coeff((2, 2, 1)).is_zero());
            assert_eq!(s.phi().coeff((3, 3, 1)), g(2 * m * m + 1, 3));
        }
    }

    #[test]
    fn mm_is_tan_of_half_angle() {
        // i(1 - e^(i t))/(1 + e^(i t)) = tan(t/2), so phi = u tan(arcsin(2 m x)/(2 m))
        let m = 2;
        let j = 6;
        let inner = uni_function(&UniFunction::Arcsin, j)
            .rescale_variable(&GaussianRational::from_int(2 * m))
            .scale(&g(1, 2 * m));
        let f = uni_compose(&uni_function(&UniFunction::Tan, j), &inner).unwrap();
        let s = gen_mm(m as u32, 13).unwrap();
        for i in 1..=j {
            assert_eq!(s.phi().coeff((i, i, 1)), f.coeff(i));
        }
    }

    #[test]
    fn qt_solution() {
        for t in [r(0), r(1), rat(-3, 2)] {
            let q = solve_qt(&t, 9).unwrap();
            assert!(qt_residual(&t, &q).unwrap().is_zero());
            assert_eq!(q.coeff(1), g(1, 1));
            assert!(q.coeff(0).is_zero());
        }
        // T = 0: u q' = tan q has the solution q = arctan-free form q_2 = 0
        assert!(solve_qt(&r(0), 5).unwrap().coeff(2).is_zero());
        assert_eq!(solve_qt(&r(1), 5).unwrap().coeff(2), g(-1, 1));
    }

    #[test]
    fn mmt_coefficients() {
        for (m, t) in [(1i64, 1i64), (2, 1), (3, 2)] {
            let s = gen_mmt(m as u32, &r(t), 9).unwrap();
            assert_eq!(s.phi().coeff((1, 1, 1)), g(1, 1));
            assert_eq!(s.phi().coeff((2, 2, 1)), g(-m * t, 1));
            assert_eq!(s.phi().coeff((3, 3, 1)), g(2 + m * m * (9 * t * t + 1), 6));
        }
    }

    #[test]
    fn mm_and_cd_share_the_jet() {
        for m in 1..=3i64 {
            let a = gen_mm(m as u32, 9).unwrap();
            let b = gen_cd(&r(0), &r(24 * m * m + 12), 9).unwrap();
            assert_eq!(jet7(&a).unwrap(), jet7(&b).unwrap());
            let res = char_poly(&jet7(&a).unwrap()).unwrap().resonances;
            assert_eq!(res, BTreeSet::from([m + 1, 2 * m + 1]));
        }
    }

    #[test]
    fn ht_map() {
        assert!(gen_ht(1, &r(0), 7).unwrap().is_identity());
        let h = gen_ht(2, &r(3), 9).unwrap();
        assert_eq!(h.f().coeff((1, 4)), g(3, 2));
        assert_eq!(h.g().coeff((0, 5)), g(3, 4));
        // H_s o H_t = H_(s+t)
        let n = 9;
        let a = gen_ht(1, &r(1), n).unwrap();
        let b = gen_ht(1, &r(-2), n).unwrap();
        let ab = crate::series::compose_maps(&a, &b).unwrap();
        assert_eq!(ab, gen_ht(1, &r(-1), n).unwrap());
        assert_eq!(invert_map(&a).unwrap(), gen_ht(1, &r(-1), n).unwrap());
        let mm = gen_mm(1, n).unwrap();
        assert!(map_defect(&mm, &a, &mm).unwrap().is_zero());
    }

    #[test]
    fn x_field() {
        let x = gen_x(1, &r(0), 5).unwrap();
        assert_eq!(x.xz().coeff((1, 1)), g(1, 2));
        assert_eq!(x.xw().coeff((0, 2)), g(1, 1));
        assert_eq!(gen_x(3, &r(2), 5).unwrap().xz().coeff((1, 3)), GaussianRational::new(rat(3, 2), r(-3)));
        let shown = gen_x_displayed(2, &r(1), 5).unwrap();
        assert_eq!(shown.xz().coeff((1, 2)), GaussianRational::new(rat(1, 4), rat(1, 2)));
        assert_eq!(gen_x_displayed(1, &r(0), 5).unwrap(), gen_x(1, &r(0), 5).unwrap());
    }

    #[test]
    fn x_is_tangent_to_mmt() {
        let n = 11;
        for (m, t) in [(1, 1), (2, 1), (3, 2)] {
            let s = gen_mmt(m, &r(t), n).unwrap();
            assert!(infinitesimal_defect(&s, &gen_x(m, &r(t), n).unwrap()).unwrap().is_zero());
            assert!(!infinitesimal_defect(&s, &gen_x(m, &r(t + 1), n).unwrap()).unwrap().is_zero());
            assert!(!infinitesimal_defect(&s, &gen_x_displayed(m, &r(t), n).unwrap()).unwrap().is_zero());
        }
        let s = gen_mmt(1, &r(0), n).unwrap();
        assert!(infinitesimal_defect(&s, &gen_x_displayed(1, &r(0), n).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn family_spec_round_trip() {
        let spec = FamilySpec::Mmt { m: 2, t: rat(1, 3) };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"name":"mmt","m":2,"T":"1/3"}"#);
        assert_eq!(serde_json::from_str::<FamilySpec>(&json).unwrap(), spec);
        assert_eq!(spec.generate(9).unwrap(), gen_mmt(2, &rat(1, 3), 9).unwrap());
    }
}
