//! Exact integer and rational helpers shared by every bound formula.
//!
//! Everything here is generic over the integer type so the same code runs on
//! machine integers (`i64`, `i128`) and on [`crate::Int`].

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Integer types the generic kernels accept.
pub trait ExactInt: num_integer::Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display {}

impl<T> ExactInt for T where T: num_integer::Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display {}

fn small<T: ExactInt>(v: u32) -> T {
    T::from_u32(v).expect("small constant fits every integer type")
}

/// Binomial coefficient `n choose k` for `n, k >= 0`; zero when `k > n`.
pub fn binom<T: ExactInt>(n: &T, k: &T) -> Result<T> {
    if n.is_negative() || k.is_negative() {
        return Err(invalid(format!("binom({n}, {k}) needs n >= 0 and k >= 0")));
    }
    if k > n {
        return Ok(T::zero());
    }
    let complement = n.clone() - k.clone();
    let k = if &complement < k { complement } else { k.clone() };
    let mut acc = T::one();
    let mut i = T::zero();
    while i < k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc * (n.clone() - i.clone());
        i = i + T::one();
        acc = acc / i.clone();
    }
    Ok(acc)
}

/// The split `d - 1 = m·s + ε` with `0 <= ε <= s - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition<T> {
    /// The divisor `s`.
    pub divisor: T,
    /// The quotient `m`.
    pub quotient: T,
    /// The remainder `ε`.
    pub remainder: T,
}

impl<T: ExactInt> Decomposition<T> {
    /// Recovers `d = m·s + ε + 1`.
    pub fn degree(&self) -> T {
        self.quotient.clone() * self.divisor.clone() + self.remainder.clone() + T::one()
    }
}

/// Divides `d - 1` by `s`. Requires `d >= s + 1 >= 3`.
pub fn decompose<T: ExactInt>(d: &T, s: &T) -> Result<Decomposition<T>> {
    if s < &small(2) || d <= s {
        return Err(Error::DegenerateDegree {
            degree: d.to_string(),
            divisor: s.to_string(),
        });
    }
    let (quotient, remainder) = (d.clone() - T::one()).div_rem(s);
    Ok(Decomposition {
        divisor: s.clone(),
        quotient,
        remainder,
    })
}

/// Harmonic number `H_n = 1 + 1/2 + ... + 1/n` as an exact rational.
pub fn harmonic<T: ExactInt>(n: u32) -> Ratio<T> {
    (1..=n).fold(Ratio::zero(), |acc, i| acc + Ratio::new(T::one(), small(i)))
}

fn pow<T: ExactInt>(base: &T, exp: usize) -> T {
    num_traits::pow(base.clone(), exp)
}

/// Smallest integer `n` with `n >= c · base^exp`.
///
/// With `exp = p/q` the comparison is made as `n^q · den(c)^q >= num(c)^q · base^p`,
/// so no root is ever approximated.
pub fn ceil_power_product<T: ExactInt>(c: &Ratio<T>, base: &T, exp: &Ratio<T>) -> Result<T> {
    if !c.is_positive() || base < &T::one() || exp.is_negative() {
        return Err(invalid(format!(
            "ceil_power_product needs c > 0, base >= 1, exp >= 0 (got {c}, {base}, {exp})"
        )));
    }
    let p = exp
        .numer()
        .to_usize()
        .ok_or_else(|| invalid(format!("exponent numerator {} too large", exp.numer())))?;
    let q = exp
        .denom()
        .to_usize()
        .ok_or_else(|| invalid(format!("exponent denominator {} too large", exp.denom())))?;

    let target = pow(c.numer(), q) * pow(base, p);
    let den_q = pow(c.denom(), q);
    let reaches = |n: &T| pow(n, q) * den_q.clone() >= target;

    let two: T = small(2);
    let mut hi = T::one();
    while !reaches(&hi) {
        hi = hi * two.clone();
    }
    // invariant: lo fails (or is zero), hi reaches
    let mut lo = hi.clone() / two.clone();
    if lo.is_zero() {
        return Ok(hi);
    }
    while hi.clone() - lo.clone() > T::one() {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if reaches(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Returns the integer value of `r`, or an error naming `context` when `r`
/// has a nontrivial denominator.
pub fn to_integer<T: ExactInt>(r: &Ratio<T>, context: &str) -> Result<T> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegral {
            context: context.to_string(),
            value: r.to_string(),
        })
    }
}

/// `floor(r)` for exact rationals.
pub fn floor<T: ExactInt>(r: &Ratio<T>) -> T {
    r.floor().to_integer()
}

/// `ceil(r)` for exact rationals.
pub fn ceil<T: ExactInt>(r: &Ratio<T>) -> T {
    r.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat, Int, Rat};
    use proptest::prelude::*;

    #[test]
    fn binom_examples() {
        assert_eq!(binom(&int(36), &int(2)).unwrap(), int(630));
        // 36·35/2 by direct multiplication
        assert_eq!(binom(&int(36), &int(2)).unwrap(), int(36 * 35 / 2));
        assert_eq!(binom(&int(3), &int(4)).unwrap(), int(0));
        for n in 0..20 {
            assert_eq!(binom(&int(n), &int(0)).unwrap(), int(1));
        }
        assert_eq!(binom(&10i64, &3i64).unwrap(), 120);
    }

    #[test]
    fn binom_rejects_negative_arguments() {
        assert!(binom(&int(-1), &int(2)).is_err());
        assert!(binom(&int(5), &int(-2)).is_err());
    }

    #[test]
    fn binom_pascal_rule() {
        for n in 1..=60i64 {
            for k in 1..=n {
                let lhs: Int = binom(&int(n), &int(k)).unwrap();
                let rhs = binom(&int(n - 1), &int(k - 1)).unwrap() + binom(&int(n - 1), &int(k)).unwrap();
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let dec = decompose(&int(24), &int(5)).unwrap();
        assert_eq!((dec.quotient.clone(), dec.remainder.clone()), (int(4), int(3)));
        let dec = decompose(&int(217), &int(6)).unwrap();
        assert_eq!((dec.quotient, dec.remainder), (int(36), int(0)));
        let dec = decompose(&144i64, &5i64).unwrap();
        assert_eq!((dec.quotient, dec.remainder), (28, 3));
    }

    #[test]
    fn decompose_rejects_degenerate_degree() {
        assert!(matches!(
            decompose(&int(5), &int(5)),
            Err(Error::DegenerateDegree { .. })
        ));
        assert!(decompose(&int(10), &int(1)).is_err());
    }

    #[test]
    fn ceil_power_product_examples() {
        // 5·30^{3/2} ≈ 821.58: 821² · 1 < 25 · 30³ <= 822²
        assert_eq!(ceil_power_product(&rat(5, 1), &int(30), &rat(3, 2)).unwrap(), int(822));
        assert_eq!(ceil_power_product(&rat(1, 1), &int(8), &rat(1, 3)).unwrap(), int(2));
        assert_eq!(ceil_power_product(&rat(7, 2), &int(1), &rat(5, 7)).unwrap(), int(4));
        assert_eq!(ceil_power_product(&rat(1, 3), &int(1), &rat(0, 1)).unwrap(), int(1));
    }

    #[test]
    fn ceil_power_product_rejects_bad_input() {
        assert!(ceil_power_product(&rat(0, 1), &int(2), &rat(1, 2)).is_err());
        assert!(ceil_power_product(&rat(1, 1), &int(0), &rat(1, 2)).is_err());
        assert!(ceil_power_product(&rat(1, 1), &int(2), &rat(-1, 2)).is_err());
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic::<Int>(1), rat(1, 1));
        assert_eq!(harmonic::<Int>(2), rat(3, 2));
        assert_eq!(harmonic::<i64>(4), Ratio::new(25, 12));
    }

    #[test]
    fn integrality_is_asserted() {
        assert_eq!(to_integer(&rat(10, 2), "x").unwrap(), int(5));
        assert!(matches!(to_integer(&rat(1, 2), "x"), Err(Error::NonIntegral { .. })));
    }

    proptest! {
        #[test]
        fn decompose_recomposes(d in 3i64..100_000, s in 2i64..200) {
            prop_assume!(d > s);
            let dec = decompose(&int(d), &int(s)).unwrap();
            prop_assert_eq!(dec.degree(), int(d));
            prop_assert!(dec.remainder >= int(0) && dec.remainder < int(s));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ceil_power_product_brackets(
            cn in 1i64..200, cd in 1i64..50, base in 1i64..500, p in 0i64..12, q in 1i64..6,
        ) {
            let c: Rat = rat(cn, cd);
            let n = ceil_power_product(&c, &int(base), &rat(p, q)).unwrap();
            // n - 1 < c·base^{p/q} <= n, compared after raising to the q-th power
            let q = q as usize;
            let rhs = num_traits::pow(int(cn), q) * num_traits::pow(int(base), p as usize);
            let den = num_traits::pow(int(cd), q);
            prop_assert!(num_traits::pow(n.clone(), q) * den.clone() >= rhs);
            let below = n - 1;
            prop_assert!(below < int(0) || num_traits::pow(below, q) * den < rhs);
        }
    }
}
