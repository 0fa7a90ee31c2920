//! Seeded random jets, surfaces and maps for property tests and the
//! self-test.

use rand::Rng;

use crate::error::Result;
use crate::scalar::{rat, GaussianRational, Rational};
use crate::series::{FormalMap, HoloSeries2, Series3};
use crate::surface::{GraphSurface, Jet7};

/// Small rational with numerator in `-bound..=bound`, denominator in `1..=3`.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=3))
}

pub fn small_gaussian<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    GaussianRational::new(small_rational(rng, bound), small_rational(rng, bound))
}

pub fn random_jet<R: Rng>(rng: &mut R) -> Jet7 {
    Jet7 {
        phi22: GaussianRational::real(small_rational(rng, 5)),
        phi32: small_gaussian(rng, 5),
        phi33: GaussianRational::real(small_rational(rng, 5)),
        phi42: small_gaussian(rng, 5),
        phi43: small_gaussian(rng, 5),
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceShape {
    pub order: u32,
    /// Probability of each admissible monomial pair being present.
    pub density: f64,
    /// Keep the u-linear part exactly `|z|^2`.
    pub quadric_u_linear: bool,
}

/// A random class surface with `phi11 = 1`, prenormalized at u-level 1
/// (`phi_{l11} = 0` for `l >= 2`) and with real `phi_{aa c}`.
pub fn random_class_surface<R: Rng>(rng: &mut R, shape: &SurfaceShape) -> Result<GraphSurface> {
    let n = shape.order;
    let mut phi = Series3::monomial(n, (1, 1, 1), GaussianRational::from_int(1));
    for c in 1..n {
        for a in 1..n {
            for b in 1..=a {
                if a + b + c > n || (a, b, c) == (1, 1, 1) {
                    continue;
                }
                if c == 1 && (shape.quadric_u_linear || b == 1) {
                    continue;
                }
                if !rng.gen_bool(shape.density) {
                    continue;
                }
                if a == b {
                    phi.add_term((a, a, c), &GaussianRational::real(small_rational(rng, 4)));
                } else {
                    let v = small_gaussian(rng, 4);
                    phi.add_term((b, a, c), &v.conj());
                    phi.add_term((a, b, c), &v);
                }
            }
        }
    }
    GraphSurface::new(phi)
}

/// A random formal map whose terms have total degree at least 2.
pub fn random_map<R: Rng>(rng: &mut R, order: u32, density: f64) -> Result<FormalMap> {
    let mut f = HoloSeries2::zero(order);
    let mut g = HoloSeries2::zero(order);
    for d in 2..=order {
        for l in 0..=d {
            let lk = (l, d - l);
            if rng.gen_bool(density) {
                f.add_term(lk, &small_gaussian(rng, 3));
            }
            if rng.gen_bool(density) {
                g.add_term(lk, &small_gaussian(rng, 3));
            }
        }
    }
    FormalMap::new(f, g)
}

/// A random real (Hermitian) series without constant term.
pub fn random_hermitian<R: Rng>(rng: &mut R, order: u32, density: f64) -> Series3 {
    let mut s = Series3::zero(order);
    for c in 0..=order {
        for a in 0..=order {
            for b in 0..=a {
                if a + b + c > order || a + b + c == 0 || !rng.gen_bool(density) {
                    continue;
                }
                if a == b {
                    s.add_term((a, a, c), &GaussianRational::real(small_rational(rng, 4)));
                } else {
                    let v = small_gaussian(rng, 4);
                    s.add_term((b, a, c), &v.conj());
                    s.add_term((a, b, c), &v);
                }
            }
        }
    }
    s
}
