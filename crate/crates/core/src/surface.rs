//! Parametrized surfaces and the dimension of their ideals in each degree.
//!
//! `h⁰(I_S(k))` is computed as the kernel dimension of the matrix whose rows
//! evaluate every degree-`k` monomial of the ambient coordinates at random
//! points of `S`. Finitely many points can only enlarge the kernel, so a zero
//! kernel proves that `S` lies on no hypersurface of degree `k`.

use std::collections::HashMap;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Num, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::binom;
use crate::classical::scroll_h0;
use crate::error::{invalid, Error, Result};
use crate::linalg::{rational_reconstruct, Echelon, Fp};
use crate::{int, Int, Rat};

/// Parameter coordinates are drawn from `[-PARAM_RANGE, PARAM_RANGE]`.
pub const PARAM_RANGE: i64 = 50;
/// Projection entries are drawn from `[-PROJECTION_RANGE, PROJECTION_RANGE]`.
pub const PROJECTION_RANGE: i64 = 100;
const MAX_BATCHES: usize = 16;
const MAX_PROJECTION_DRAWS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SurfaceKind {
    /// The 2-uple embedding of P² in P⁵.
    Veronese2,
    /// The 3-uple embedding of P² in P⁹.
    Veronese3,
    /// The rational normal scroll `S(a, b)` in `P^{a+b+1}`, `1 <= a <= b`.
    Scroll { a: usize, b: usize },
}

impl SurfaceKind {
    pub fn scroll(a: usize, b: usize) -> Result<Self> {
        if a < 1 || a > b {
            return Err(invalid(format!("scroll needs 1 <= a <= b, got a = {a}, b = {b}")));
        }
        Ok(SurfaceKind::Scroll { a, b })
    }

    /// Dimension of the linear span of the unprojected surface.
    pub fn span_dim(self) -> usize {
        match self {
            SurfaceKind::Veronese2 => 5,
            SurfaceKind::Veronese3 => 9,
            SurfaceKind::Scroll { a, b } => a + b + 1,
        }
    }

    fn parameter_count(self) -> usize {
        match self {
            SurfaceKind::Veronese2 | SurfaceKind::Veronese3 => 3,
            SurfaceKind::Scroll { .. } => 4,
        }
    }

    /// `h⁰(S, O_S(k))`.
    pub fn h0_structure_sheaf(self, k: usize) -> Result<Int> {
        match self {
            SurfaceKind::Veronese2 => binom(&int(2 * k + 2), &int(2)),
            SurfaceKind::Veronese3 => binom(&int(3 * k + 2), &int(2)),
            SurfaceKind::Scroll { a, b } => scroll_h0(a + b, k),
        }
    }

    pub fn describe(self) -> String {
        match self {
            SurfaceKind::Veronese2 => "Veronese surface in P5".to_string(),
            SurfaceKind::Veronese3 => "3-uple Veronese surface in P9".to_string(),
            SurfaceKind::Scroll { a, b } => format!("scroll S({a},{b}) in P{}", a + b + 1),
        }
    }
}

/// A surface with an optional linear projection applied to its span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSurface {
    pub kind: SurfaceKind,
    /// `(target + 1) × (span + 1)` integer matrix of full row rank.
    pub projection: Option<Vec<Vec<Int>>>,
}

impl ParamSurface {
    pub fn new(kind: SurfaceKind) -> Self {
        ParamSurface { kind, projection: None }
    }

    pub fn ambient_dim(&self) -> usize {
        match &self.projection {
            Some(m) => m.len() - 1,
            None => self.kind.span_dim(),
        }
    }

    /// Coordinates of the parametrization as polynomials in the parameters.
    fn coordinate_polys(&self) -> Vec<Poly> {
        let single = |e: Vec<u32>| -> Poly { [(e, Int::one())].into_iter().collect() };
        let base: Vec<Poly> = match self.kind {
            SurfaceKind::Veronese2 | SurfaceKind::Veronese3 => {
                let deg = if self.kind == SurfaceKind::Veronese2 { 2 } else { 3 };
                monomials(3, deg)
                    .into_iter()
                    .map(|e| single(e.into_iter().map(|x| x as u32).collect()))
                    .collect()
            }
            SurfaceKind::Scroll { a, b } => {
                let line = |n: usize, slot: usize| {
                    (0..=n).map(move |j| {
                        let mut e = vec![(n - j) as u32, j as u32, 0, 0];
                        e[slot] = 1;
                        e
                    })
                };
                line(a, 2).chain(line(b, 3)).map(single).collect()
            }
        };
        match &self.projection {
            None => base,
            Some(m) => m
                .iter()
                .map(|row| {
                    let mut out = Poly::new();
                    for (c, p) in row.iter().zip(&base) {
                        for (e, v) in p {
                            *out.entry(e.clone()).or_insert_with(Int::zero) += c * v;
                        }
                    }
                    out.retain(|_, c| !c.is_zero());
                    out
                })
                .collect(),
        }
    }

    /// Image of a parameter point: `(x:y:z)` for Veronese surfaces,
    /// `(u, v, x, y)` for scrolls. Errors when every coordinate vanishes.
    pub fn parametrize<T>(&self, p: &[T]) -> Result<Vec<T>>
    where
        T: Num + Clone + From<Int>,
    {
        if p.len() != self.kind.parameter_count() {
            return Err(invalid(format!(
                "{} takes {} parameters, got {}",
                self.kind.describe(),
                self.kind.parameter_count(),
                p.len()
            )));
        }
        let point = match self.kind {
            SurfaceKind::Veronese2 => monomials(3, 2).iter().map(|e| eval_monomial(e, p)).collect(),
            SurfaceKind::Veronese3 => monomials(3, 3).iter().map(|e| eval_monomial(e, p)).collect(),
            SurfaceKind::Scroll { a, b } => {
                let (u, v, x, y) = (&p[0], &p[1], &p[2], &p[3]);
                let line =
                    |n: usize, c: &T| -> Vec<T> { (0..=n).map(|j| c.clone() * pow(u, n - j) * pow(v, j)).collect() };
                let mut coords = line(a, x);
                coords.extend(line(b, y));
                coords
            }
        };
        let point: Vec<T> = match &self.projection {
            Some(m) => m
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&point)
                        .fold(T::zero(), |acc, (c, x)| acc + T::from(c.clone()) * x.clone())
                })
                .collect(),
            None => point,
        };
        if point.iter().all(Zero::is_zero) {
            return Err(Error::IndeterminacyLocus);
        }
        Ok(point)
    }
}

fn pow<T: Num + Clone>(x: &T, e: usize) -> T {
    num_traits::pow(x.clone(), e)
}

fn eval_monomial<T: Num + Clone>(exps: &[usize], p: &[T]) -> T {
    exps.iter().zip(p).fold(T::one(), |acc, (&e, x)| acc * pow(x, e))
}

/// `table[j][e] = x_j^e` for `e <= k`.
fn power_table<T: Clone + std::ops::Mul<Output = T> + One>(point: &[T], k: usize) -> Vec<Vec<T>> {
    point
        .iter()
        .map(|x| {
            let mut row = Vec::with_capacity(k + 1);
            row.push(T::one());
            for e in 1..=k {
                row.push(row[e - 1].clone() * x.clone());
            }
            row
        })
        .collect()
}

fn monomial_row<T: Clone + std::ops::Mul<Output = T> + One>(monos: &[Vec<usize>], table: &[Vec<T>]) -> Vec<T> {
    monos
        .iter()
        .map(|exps| {
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(T::one(), |acc, (j, &e)| acc * table[j][e].clone())
        })
        .collect()
}

/// Exponent vectors of the degree-`k` monomials in `n` variables, in graded
/// lexicographic order (`x0^k` first).
pub fn monomials(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            rec(n - 1, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, k, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Which field the rank is computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    /// Fraction-free elimination over the integers.
    Exact,
    /// Elimination over the rationals.
    Rational,
    /// Elimination modulo `2^61 - 1`. The rank mod p never exceeds the rank
    /// over Q, so a zero kernel is still a proof.
    Modular,
    /// `Modular`, then every kernel vector is lifted to an integer form
    /// and checked to vanish on `S` by substituting the parametrization.
    /// The lifted forms bound the kernel over Q from below, so the count is
    /// exact. Falls back to `Exact` when a lift fails.
    Auto,
}

impl FromStr for Arithmetic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Arithmetic::Exact),
            "rational" => Ok(Arithmetic::Rational),
            "modular" => Ok(Arithmetic::Modular),
            "auto" => Ok(Arithmetic::Auto),
            other => Err(Error::Parse(format!(
                "unknown arithmetic {other:?} (expected exact, rational, modular or auto)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Result {
    pub k: usize,
    pub monomials: usize,
    pub kernel_dim: usize,
    pub samples_used: usize,
    pub stabilized: bool,
    pub seed: u64,
    pub arithmetic: Arithmetic,
    /// Kernel dimension after each batch; never increases.
    pub history: Vec<usize>,
    /// Parameter points rejected because they hit the indeterminacy locus.
    pub resamples: usize,
}

enum Basis {
    Exact(Echelon<Int>),
    Rational(Echelon<Rat>),
    Modular(Echelon<Fp>),
}

impl Basis {
    fn new(arithmetic: Arithmetic, width: usize) -> Self {
        match arithmetic {
            Arithmetic::Rational => Basis::Rational(Echelon::new(width)),
            Arithmetic::Modular => Basis::Modular(Echelon::new(width)),
            _ => Basis::Exact(Echelon::new(width)),
        }
    }

    /// Adds the row of degree-`k` monomials evaluated at `point`.
    fn insert_point(&mut self, monos: &[Vec<usize>], k: usize, point: &[Int]) {
        match self {
            Basis::Exact(e) => {
                e.insert(monomial_row(monos, &power_table(point, k)));
            }
            Basis::Rational(e) => {
                let row = monomial_row(monos, &power_table(point, k));
                e.insert(row.into_iter().map(Rat::from_integer).collect());
            }
            Basis::Modular(e) => {
                let reduced: Vec<Fp> = point.iter().map(Fp::from_int).collect();
                e.insert(monomial_row(monos, &power_table(&reduced, k)));
            }
        }
    }

    fn rank(&self) -> usize {
        match self {
            Basis::Exact(e) => e.rank(),
            Basis::Rational(e) => e.rank(),
            Basis::Modular(e) => e.rank(),
        }
    }
}

fn random_point(surface: &ParamSurface, rng: &mut ChaCha8Rng, resamples: &mut usize) -> Vec<Int> {
    loop {
        let params: Vec<Int> = (0..surface.kind.parameter_count())
            .map(|_| int(rng.random_range(-PARAM_RANGE..=PARAM_RANGE)))
            .collect();
        match surface.parametrize(&params) {
            Ok(point) => return point,
            Err(_) => *resamples += 1,
        }
    }
}

/// `h⁰(I_S(k))` from evaluations at seeded random points.
///
/// Batches of `M` rows (`M` = number of monomials) are added until the
/// kernel reaches zero or stays unchanged over two consecutive batches.
pub fn h0_ideal(surface: &ParamSurface, k: usize, seed: u64, arithmetic: Arithmetic) -> Result<H0Result> {
    if k < 1 {
        return Err(invalid("degree k must be >= 1"));
    }
    let monos = monomials(surface.ambient_dim() + 1, k);
    if arithmetic != Arithmetic::Auto {
        return Ok(eliminate(surface, &monos, k, seed, arithmetic)?.1);
    }
    let (basis, mut result) = eliminate(surface, &monos, k, seed, Arithmetic::Modular)?;
    result.arithmetic = Arithmetic::Auto;
    if result.kernel_dim == 0 {
        return Ok(result);
    }
    let Basis::Modular(echelon) = &basis else {
        unreachable!("modular elimination")
    };
    match lift_kernel(&echelon.kernel()) {
        Some(forms) if forms_vanish(surface, &monos, k, &forms) => Ok(result),
        _ => Ok(eliminate(surface, &monos, k, seed, Arithmetic::Exact)?.1),
    }
}

fn eliminate(
    surface: &ParamSurface,
    monos: &[Vec<usize>],
    k: usize,
    seed: u64,
    arithmetic: Arithmetic,
) -> Result<(Basis, H0Result)> {
    let m = monos.len();
    let mut basis = Basis::new(arithmetic, m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut history = Vec::new();
    let mut resamples = 0;
    let mut samples = 0;

    for _ in 0..MAX_BATCHES {
        for _ in 0..m {
            let point = random_point(surface, &mut rng, &mut resamples);
            basis.insert_point(monos, k, &point);
        }
        samples += m;
        let kernel = m - basis.rank();
        history.push(kernel);
        let n = history.len();
        let stable = kernel == 0 || (n >= 3 && history[n - 2] == kernel && history[n - 3] == kernel);
        if stable {
            let result = H0Result {
                k,
                monomials: m,
                kernel_dim: kernel,
                samples_used: samples,
                stabilized: true,
                seed,
                arithmetic,
                history,
                resamples,
            };
            return Ok((basis, result));
        }
    }
    Err(Error::Inconclusive {
        samples,
        kernel_dim: *history.last().expect("at least one batch"),
    })
}

/// Sparse polynomial in the parameters, keyed by exponent vector.
type Poly = HashMap<Vec<u32>, Int>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Int::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Integer forms whose reductions mod p are the given kernel vectors.
fn lift_kernel(kernel: &[Vec<Fp>]) -> Option<Vec<Vec<Int>>> {
    kernel
        .iter()
        .map(|v| {
            let fracs: Vec<Rat> = v.iter().map(|&x| rational_reconstruct(x)).collect::<Option<_>>()?;
            let lcm = fracs.iter().fold(Int::one(), |l, q| l.lcm(q.denom()));
            Some(fracs.iter().map(|q| q.numer() * (&lcm / q.denom())).collect())
        })
        .collect()
}

/// Whether every form vanishes identically on the parametrization.
fn forms_vanish(surface: &ParamSurface, monos: &[Vec<usize>], k: usize, forms: &[Vec<Int>]) -> bool {
    let coords = surface.coordinate_polys();
    let unit: Poly = [(vec![0; surface.kind.parameter_count()], Int::one())]
        .into_iter()
        .collect();
    let powers: Vec<Vec<Poly>> = coords
        .iter()
        .map(|c| {
            let mut row = vec![unit.clone()];
            for e in 1..=k {
                row.push(poly_mul(&row[e - 1], c));
            }
            row
        })
        .collect();
    let mut cache: Vec<Option<Poly>> = vec![None; monos.len()];
    forms.iter().all(|form| {
        let mut sum = Poly::new();
        for (i, c) in form.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let term = cache[i].get_or_insert_with(|| {
                monos[i]
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(unit.clone(), |acc, (j, &e)| poly_mul(&acc, &powers[j][e]))
            });
            for (e, v) in term.iter() {
                *sum.entry(e.clone()).or_insert_with(Int::zero) += c * v;
            }
        }
        sum.values().all(Zero::is_zero)
    })
}

/// Composes `surface` with a seeded random integer projection to `P^target`
/// of full row rank. Returns the surface and the number of rank-deficient
/// draws that were rejected.
pub fn generic_projection(surface: &ParamSurface, target_dim: usize, seed: u64) -> Result<(ParamSurface, usize)> {
    let source = surface.ambient_dim();
    if target_dim >= source {
        return Err(invalid(format!(
            "target dimension {target_dim} must be below the ambient dimension {source}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for rejected in 0..MAX_PROJECTION_DRAWS {
        let matrix: Vec<Vec<Int>> = (0..=target_dim)
            .map(|_| {
                (0..=source)
                    .map(|_| int(rng.random_range(-PROJECTION_RANGE..=PROJECTION_RANGE)))
                    .collect()
            })
            .collect();
        if crate::linalg::rank(&matrix) < target_dim + 1 {
            continue;
        }
        let composed = match &surface.projection {
            Some(old) => multiply(&matrix, old),
            None => matrix,
        };
        return Ok((
            ParamSurface {
                kind: surface.kind,
                projection: Some(composed),
            },
            rejected,
        ));
    }
    Err(invalid("no full-rank projection found"))
}

fn multiply(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// `max{0, binom(r+k, k) - h⁰(O_S(k))}`: the ideal dimension when
/// restriction of degree-`k` forms to `S` has maximal rank.
pub fn maximal_rank_expectation(surface: &ParamSurface, k: usize) -> Result<Int> {
    let r = surface.ambient_dim();
    let forms = binom(&int(r + k), &int(k))?;
    Ok((forms - surface.kind.h0_structure_sheaf(k)?).max(Int::zero()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    /// `S` lies on no hypersurface of degree `k`.
    pub certified: bool,
    pub kernel_dim: usize,
    pub h0: H0Result,
}

pub fn certify_not_on_hypersurface(
    surface: &ParamSurface,
    k: usize,
    seed: u64,
    arithmetic: Arithmetic,
) -> Result<Certification> {
    let h0 = h0_ideal(surface, k, seed, arithmetic)?;
    Ok(Certification {
        certified: h0.kernel_dim == 0,
        kernel_dim: h0.kernel_dim,
        h0,
    })
}

/// Result of certifying a general projection, with the retries it took.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionCertificate {
    pub kind: SurfaceKind,
    pub target_dim: usize,
    pub k: usize,
    pub seed: u64,
    /// Seed of the projection that was finally used.
    pub projection_seed: u64,
    /// Projections discarded because they landed on a hypersurface.
    pub retries: usize,
    pub surface: ParamSurface,
    pub certification: Certification,
}

/// Projects `kind` to `P^target` and certifies the image lies on no
/// hypersurface of degree `k`, redrawing the projection (seed + attempt)
/// up to `max_attempts` times when a draw is not general enough.
pub fn certify_general_projection(
    kind: SurfaceKind,
    target_dim: usize,
    k: usize,
    seed: u64,
    max_attempts: usize,
    arithmetic: Arithmetic,
) -> Result<ProjectionCertificate> {
    let base = ParamSurface::new(kind);
    let mut last = None;
    for attempt in 0..max_attempts.max(1) {
        let projection_seed = seed.wrapping_add(attempt as u64);
        let (surface, _) = generic_projection(&base, target_dim, projection_seed)?;
        let certification = certify_not_on_hypersurface(&surface, k, projection_seed, arithmetic)?;
        let done = certification.certified;
        last = Some(ProjectionCertificate {
            kind,
            target_dim,
            k,
            seed,
            projection_seed,
            retries: attempt,
            surface,
            certification,
        });
        if done {
            break;
        }
    }
    Ok(last.expect("at least one attempt"))
}

/// Structured surface descriptor:
/// `{"kind": "scroll", "a": 3, "b": 3, "target_dim": 5, "seed": 7}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub kind: String,
    #[serde(default)]
    pub a: Option<usize>,
    #[serde(default)]
    pub b: Option<usize>,
    #[serde(default)]
    pub target_dim: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl SurfaceSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn surface_kind(&self) -> Result<SurfaceKind> {
        match self.kind.to_ascii_lowercase().as_str() {
            "veronese2" => Ok(SurfaceKind::Veronese2),
            "veronese3" => Ok(SurfaceKind::Veronese3),
            "scroll" => match (self.a, self.b) {
                (Some(a), Some(b)) => SurfaceKind::scroll(a, b),
                _ => Err(Error::Parse("scroll needs both a and b".to_string())),
            },
            other => Err(Error::Parse(format!(
                "unknown surface kind {other:?} (expected veronese2, veronese3 or scroll)"
            ))),
        }
    }

    /// Builds the surface, projecting with `seed` (the descriptor's own seed
    /// wins) when a target dimension is given.
    pub fn build(&self, seed: u64) -> Result<ParamSurface> {
        let surface = ParamSurface::new(self.surface_kind()?);
        match self.target_dim {
            Some(t) => Ok(generic_projection(&surface, t, self.seed.unwrap_or(seed))?.0),
            None => Ok(surface),
        }
    }
}
