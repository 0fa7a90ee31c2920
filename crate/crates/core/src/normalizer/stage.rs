use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{rank, reduce, RowReduction};
use crate::scalar::{GaussianRational, Rational};
use crate::series::{FormalMap, HoloSeries2, Series3};
use crate::surface::{transform, GraphSurface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Part {
    Re,
    Im,
}

impl Part {
    fn of(self, c: &GaussianRational) -> Rational {
        match self {
            Part::Re => c.re.clone(),
            Part::Im => c.im.clone(),
        }
    }

    fn unit(self) -> GaussianRational {
        match self {
            Part::Re => GaussianRational::from_int(1),
            Part::Im => GaussianRational::i(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Component {
    F,
    G,
}

/// A real unknown: `Re` or `Im` of the coefficient of `z^l w^power` in `f` or `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unknown {
    pub component: Component,
    pub l: u32,
    pub power: u32,
    pub part: Part,
}

impl Unknown {
    pub fn f(l: u32, power: u32, part: Part) -> Self {
        Self { component: Component::F, l, power, part }
    }

    pub fn g(l: u32, power: u32, part: Part) -> Self {
        Self { component: Component::G, l, power, part }
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.component {
            Component::F => "f",
            Component::G => "g",
        };
        write!(f, "{:?} {}_{{{},{}}}", self.part, name, self.l, self.power)
    }
}

impl Serialize for Unknown {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A real condition: `Re` or `Im` of `phi_abc` must vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Condition {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub part: Part,
}

impl Condition {
    pub fn new(a: u32, b: u32, c: u32, part: Part) -> Self {
        Self { a, b, c, part }
    }

    pub fn value(&self, m: &GraphSurface) -> Rational {
        self.part.of(&m.phi().coeff((self.a, self.b, self.c)))
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} phi_{{{},{},{}}}", self.part, self.a, self.b, self.c)
    }
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The affine system at one u-level: `matrix * x = rhs` makes every
/// condition vanish, `x` being the real unknowns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageSystem {
    pub k: u32,
    pub order: u32,
    pub unknowns: Vec<Unknown>,
    pub conditions: Vec<Condition>,
    /// `matrix[i][j]`: change of condition `i` per unit of unknown `j`.
    #[serde(skip)]
    pub matrix: Vec<Vec<Rational>>,
    /// Minus the current values of the conditions.
    #[serde(skip)]
    pub rhs: Vec<Rational>,
    /// Indices of the distinguished unknowns, in matrix-A column order.
    pub tagged_unknowns: Vec<usize>,
    /// Indices of the distinguished conditions, in matrix-A row order.
    pub tagged_conditions: Vec<usize>,
}

impl StageSystem {
    /// The square sub-block on the tagged conditions and unknowns.
    pub fn tagged_block(&self) -> Vec<Vec<Rational>> {
        self.tagged_conditions
            .iter()
            .map(|&r| self.tagged_unknowns.iter().map(|&c| self.matrix[r][c].clone()).collect())
            .collect()
    }

    pub fn block_is_singular(&self) -> bool {
        let n = self.tagged_unknowns.len();
        n > 0 && rank(&self.tagged_block()) < n
    }

    pub fn is_singular(&self) -> bool {
        rank(&self.matrix) < self.unknowns.len()
    }

    /// The map realizing the values `x` of the unknowns.
    pub fn map_for(&self, x: &[Rational]) -> Result<FormalMap> {
        build_map(self.order, &self.unknowns, x)
    }
}

fn build_map(n: u32, unknowns: &[Unknown], x: &[Rational]) -> Result<FormalMap> {
    let mut f = HoloSeries2::zero(n);
    let mut g = HoloSeries2::zero(n);
    for (u, v) in unknowns.iter().zip(x) {
        if v.is_zero() {
            continue;
        }
        let c = u.part.unit().scale(v);
        match u.component {
            Component::F => f.add_term((u.l, u.power), &c),
            Component::G => g.add_term((u.l, u.power), &c),
        }
    }
    FormalMap::new(f, g)
}

/// Largest stage index with all the conditions inside the truncation.
pub fn max_stage(order: u32) -> u32 {
    order.saturating_sub(6)
}

/// Probes the exact stage-`k` system of `m`: one transform per real unknown.
///
/// Unknowns are `f_{l,k-1}` for `l <= N-1-k` and `g_{l,k}` for `l <= N-k`
/// (real and imaginary parts, `f` first); conditions are `phi_{a0k}`
/// (`a <= N-k`), `phi_11k`, `phi_21k`, `phi_{l1k}` (`3 <= l <= N-1-k`), and
/// then `phi_22k`, `phi_32k`, `phi_33k`.
pub fn stage_system(m: &GraphSurface, k: u32) -> Result<StageSystem> {
    stage_system_with(m, k, Probe::default())
}

pub fn stage_system_with(m: &GraphSurface, k: u32, method: Probe) -> Result<StageSystem> {
    let n = m.order();
    if k < 2 || k > max_stage(n) {
        return Err(Error::StageOutOfRange { k, max: max_stage(n) });
    }
    let (lf, lg) = (n - 1 - k, n - k);
    let mut unknowns = Vec::new();
    for l in 0..=lf {
        unknowns.push(Unknown::f(l, k - 1, Part::Re));
        unknowns.push(Unknown::f(l, k - 1, Part::Im));
    }
    for l in 0..=lg {
        unknowns.push(Unknown::g(l, k, Part::Re));
        unknowns.push(Unknown::g(l, k, Part::Im));
    }
    let mut conditions = vec![Condition::new(0, 0, k, Part::Re)];
    for a in 1..=lg {
        conditions.push(Condition::new(a, 0, k, Part::Re));
        conditions.push(Condition::new(a, 0, k, Part::Im));
    }
    conditions.push(Condition::new(1, 1, k, Part::Re));
    conditions.push(Condition::new(2, 1, k, Part::Re));
    conditions.push(Condition::new(2, 1, k, Part::Im));
    for l in 3..=lf {
        conditions.push(Condition::new(l, 1, k, Part::Re));
        conditions.push(Condition::new(l, 1, k, Part::Im));
    }
    conditions.push(Condition::new(2, 2, k, Part::Re));
    conditions.push(Condition::new(3, 2, k, Part::Re));
    conditions.push(Condition::new(3, 2, k, Part::Im));
    conditions.push(Condition::new(3, 3, k, Part::Re));

    let find_u = |u: Unknown| unknowns.iter().position(|x| *x == u).expect("tagged unknown");
    let tagged_unknowns = vec![
        find_u(Unknown::g(1, k, Part::Re)),
        find_u(Unknown::g(1, k, Part::Im)),
        find_u(Unknown::f(0, k - 1, Part::Re)),
        find_u(Unknown::f(0, k - 1, Part::Im)),
        find_u(Unknown::g(0, k, Part::Re)),
        find_u(Unknown::f(1, k - 1, Part::Re)),
        find_u(Unknown::f(1, k - 1, Part::Im)),
        find_u(Unknown::f(2, k - 1, Part::Re)),
        find_u(Unknown::f(2, k - 1, Part::Im)),
    ];
    let find_c = |a, b, p| conditions.iter().position(|x| *x == Condition::new(a, b, k, p)).expect("tagged condition");
    let tagged_conditions = vec![
        find_c(1, 0, Part::Re),
        find_c(1, 0, Part::Im),
        find_c(1, 1, Part::Re),
        find_c(2, 1, Part::Re),
        find_c(2, 1, Part::Im),
        find_c(2, 2, Part::Re),
        find_c(3, 2, Part::Re),
        find_c(3, 2, Part::Im),
        find_c(3, 3, Part::Re),
    ];
    let (matrix, rhs) = probe(m, &unknowns, &conditions, method)?;
    Ok(StageSystem { k, order: n, unknowns, conditions, matrix, rhs, tagged_unknowns, tagged_conditions })
}

/// The system restoring normal coordinates at level `c` beyond the last
/// stage: `phi_{a0c} = 0` and `phi_{l1c} = 0` for `l >= 3`, solved with
/// `Im g_0c`, `g_{ac}` (`a >= 1`) and `f_{l,c-1}` (`l >= 3`).
pub fn tail_system(m: &GraphSurface, c: u32) -> Result<StageSystem> {
    tail_system_with(m, c, Probe::default())
}

pub fn tail_system_with(m: &GraphSurface, c: u32, method: Probe) -> Result<StageSystem> {
    let n = m.order();
    if c < 2 || c > n {
        return Err(Error::StageOutOfRange { k: c, max: n });
    }
    let mut unknowns = vec![Unknown::g(0, c, Part::Im)];
    let mut conditions = vec![Condition::new(0, 0, c, Part::Re)];
    for a in 1..=n - c {
        for p in [Part::Re, Part::Im] {
            unknowns.push(Unknown::g(a, c, p));
            conditions.push(Condition::new(a, 0, c, p));
        }
    }
    for l in 3..n.saturating_sub(c) {
        for p in [Part::Re, Part::Im] {
            unknowns.push(Unknown::f(l, c - 1, p));
            conditions.push(Condition::new(l, 1, c, p));
        }
    }
    let (matrix, rhs) = probe(m, &unknowns, &conditions, method)?;
    Ok(StageSystem {
        k: c,
        order: n,
        unknowns,
        conditions,
        matrix,
        rhs,
        tagged_unknowns: vec![],
        tagged_conditions: vec![],
    })
}

/// How the columns of a level system are obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Probe {
    /// Level-`k` part of the first-order change
    /// `Im g - 2 Re(phi_z f) - phi_u Re g` along `w = u + i phi`. Every
    /// higher-order term of a stage-`k` unknown lands above level `k`, so the
    /// columns are exact.
    #[default]
    Linearized,
    /// Transform by identity plus one unit unknown and subtract the source.
    Transform,
}

fn probe(
    m: &GraphSurface,
    unknowns: &[Unknown],
    conditions: &[Condition],
    method: Probe,
) -> Result<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let n = m.order();
    let base: Vec<Rational> = conditions.iter().map(|c| c.value(m)).collect();
    let mut matrix = vec![vec![Rational::zero(); unknowns.len()]; conditions.len()];
    let columns: Vec<Series3> = match method {
        Probe::Linearized => linearized_columns(m, unknowns),
        Probe::Transform => {
            let mut cols = Vec::with_capacity(unknowns.len());
            for j in 0..unknowns.len() {
                let mut x = vec![Rational::zero(); unknowns.len()];
                x[j] = Rational::one();
                cols.push(transform(m, &build_map(n, unknowns, &x)?)?.phi().sub(m.phi()));
            }
            cols
        }
    };
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in conditions.iter().enumerate() {
            matrix[i][j] = c.part.of(&col.coeff((c.a, c.b, c.c)));
        }
    }
    let rhs = base.into_iter().map(|v| -v).collect();
    Ok((matrix, rhs))
}

fn linearized_columns(m: &GraphSurface, unknowns: &[Unknown]) -> Vec<Series3> {
    let n = m.order();
    let phi = m.phi();
    let phi_z = phi.partial_z();
    let phi_u = phi.partial_u();
    let w = Series3::u(n).add(&phi.scale(&GaussianRational::i()));
    let max_power = unknowns.iter().map(|u| u.power).max().unwrap_or(0);
    let mut w_pows = vec![Series3::one(n)];
    for p in 1..=max_power as usize {
        let next = w_pows[p - 1].mul(&w);
        w_pows.push(next);
    }
    unknowns
        .iter()
        .map(|u| {
            let h = Series3::monomial(n, (u.l, 0, 0), u.part.unit()).mul(&w_pows[u.power as usize]);
            match u.component {
                Component::F => phi_z.mul(&h).twice_real_part().neg(),
                Component::G => {
                    let (re, im) = h.split_real_imag();
                    im.sub(&phi_u.mul(&re))
                }
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    Strict,
    GaugeZero,
}

/// Solution of one stage system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageSolution {
    pub values: Vec<Rational>,
    pub map: FormalMap,
    pub singular: bool,
    /// Conditions dropped as inconsistent.
    pub dropped: Vec<Condition>,
    /// Unknowns left free and set to zero.
    pub gauge: Vec<Unknown>,
    pub reduction: RowReduction,
}

pub fn solve_stage(sys: &StageSystem, policy: Policy) -> Result<StageSolution> {
    let r = reduce(&sys.matrix, &sys.rhs);
    let singular = r.rank() < sys.unknowns.len();
    if singular && policy == Policy::Strict {
        return Err(Error::Resonant { k: sys.k });
    }
    let map = sys.map_for(&r.solution)?;
    Ok(StageSolution {
        values: r.solution.clone(),
        map,
        singular,
        dropped: r.inconsistent.iter().map(|&i| sys.conditions[i]).collect(),
        gauge: r.free.iter().map(|&j| sys.unknowns[j]).collect(),
        reduction: r,
    })
}
