//! Incremental row echelon forms for exact rank computations.
//!
//! Rows are reduced one at a time against the current basis with the
//! fraction-free update `v ← b[p]·v - v[p]·b`, so the same code serves
//! integers, rationals and a prime field.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

/// Scalars an [`Echelon`] can work over.
pub trait EchelonScalar: Clone {
    fn is_zero(&self) -> bool;
    /// `a·x - b·y`.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Self;
    /// Rescales a freshly reduced row to keep entries small.
    fn normalize(_row: &mut [Self]) {}
}

impl EchelonScalar for Int {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Self {
        a * x - b * y
    }

    fn normalize(row: &mut [Self]) {
        let content = row.iter().fold(Int::zero(), |g, v| g.gcd(v));
        if content > Int::one() {
            for v in row.iter_mut() {
                *v = &*v / &content;
            }
        }
        if row.iter().find(|v| !Zero::is_zero(*v)).is_some_and(|v| v.is_negative()) {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
    }
}

impl EchelonScalar for Rat {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Self {
        a * x - b * y
    }

    fn normalize(row: &mut [Self]) {
        if let Some(lead) = row.iter().find(|v| !Zero::is_zero(*v)).cloned() {
            for v in row.iter_mut() {
                *v = &*v / &lead;
            }
        }
    }
}

/// Residues modulo the Mersenne prime `2^61 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp(u64);

impl Fp {
    pub const MODULUS: u64 = (1 << 61) - 1;

    pub fn new(v: u64) -> Self {
        let folded = (v & Self::MODULUS) + (v >> 61);
        Fp(if folded >= Self::MODULUS {
            folded - Self::MODULUS
        } else {
            folded
        })
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn from_int(v: &Int) -> Self {
        let m = Int::from(Self::MODULUS);
        let r = v.mod_floor(&m);
        Fp(u64::try_from(&r).expect("residue fits in u64"))
    }

    fn mul(self, other: Fp) -> Fp {
        // 2^61 ≡ 1, so fold the high bits onto the low ones
        let x = u128::from(self.0) * u128::from(other.0);
        let folded = (x as u64 & Self::MODULUS) + (x >> 61) as u64;
        Fp::new(folded)
    }

    fn sub(self, other: Fp) -> Fp {
        if self.0 >= other.0 {
            Fp(self.0 - other.0)
        } else {
            Fp(self.0 + Self::MODULUS - other.0)
        }
    }

    fn pow(self, mut e: u64) -> Fp {
        let (mut base, mut acc) = (self, Fp(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Fp> {
        (self.0 != 0).then(|| self.pow(Self::MODULUS - 2))
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;

    fn mul(self, other: Fp) -> Fp {
        Fp::mul(self, other)
    }
}

impl num_traits::One for Fp {
    fn one() -> Self {
        Fp(1)
    }
}

impl EchelonScalar for Fp {
    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Self {
        a.mul(*x).sub(b.mul(*y))
    }

    fn normalize(row: &mut [Self]) {
        if let Some(inv) = row.iter().find(|v| v.0 != 0).and_then(|v| v.inverse()) {
            for v in row.iter_mut() {
                *v = v.mul(inv);
            }
        }
    }
}

/// A basis in row echelon form, grown one row at a time.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    width: usize,
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: EchelonScalar> Echelon<T> {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `row` against the basis; returns `true` when it was
    /// independent and has been added.
    pub fn insert(&mut self, mut row: Vec<T>) -> bool {
        assert_eq!(row.len(), self.width, "row width mismatch");
        if self.rows.len() == self.width {
            return false;
        }
        for (p, basis) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let (lead, coef) = (basis[*p].clone(), row[*p].clone());
            for (v, b) in row.iter_mut().zip(basis) {
                *v = T::cross(&lead, v, &coef, b);
            }
            T::normalize(&mut row);
        }
        match row.iter().position(|v| !v.is_zero()) {
            Some(p) => {
                T::normalize(&mut row);
                self.rows.push((p, row));
                true
            }
            None => false,
        }
    }
}

impl Echelon<Fp> {
    /// Basis of the right kernel in reduced form: one vector per free
    /// column, with a 1 there and zeros on the other free columns.
    pub fn kernel(&self) -> Vec<Vec<Fp>> {
        let mut rows = self.rows.clone();
        for j in (0..rows.len()).rev() {
            let (pj, rj) = rows[j].clone();
            for (_, ri) in rows.iter_mut().take(j) {
                let c = ri[pj];
                if c.0 != 0 {
                    for (v, b) in ri.iter_mut().zip(&rj) {
                        *v = v.sub(c.mul(*b));
                    }
                }
            }
        }
        let mut pivot = vec![None; self.width];
        for (i, (p, _)) in rows.iter().enumerate() {
            pivot[*p] = Some(i);
        }
        (0..self.width)
            .filter(|&f| pivot[f].is_none())
            .map(|f| {
                let mut v = vec![Fp(0); self.width];
                v[f] = Fp(1);
                for (p, row) in &rows {
                    v[*p] = Fp(0).sub(row[f]);
                }
                v
            })
            .collect()
    }
}

/// The fraction `n/d` with `|n|, |d| < 2^30` congruent to `a`, if any.
pub fn rational_reconstruct(a: Fp) -> Option<Rat> {
    const BOUND: i128 = 1 << 30;
    let (mut r0, mut r1) = (i128::from(Fp::MODULUS), i128::from(a.0));
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 >= BOUND {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() >= BOUND {
        return None;
    }
    Some(Rat::new(Int::from(r1), Int::from(t1)))
}

/// Rank of a matrix given by rows.
pub fn rank<T: EchelonScalar>(rows: &[Vec<T>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut e = Echelon::new(first.len());
    for row in rows {
        e.insert(row.clone());
    }
    e.rank()
}
