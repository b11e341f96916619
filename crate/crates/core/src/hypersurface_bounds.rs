//! Genus bounds for curves avoiding quadric (and cubic) hypersurfaces.
//!
//! Curves in P⁴ and P⁵ of large degree not lying on quadrics, plus the
//! Castelnuovo–Halphen intervals for curves in P^r not on quadrics or cubics
//! once the degree of the minimal surface has been pinned down.

use serde::{Deserialize, Serialize};

use crate::arith::{binom, decompose, to_integer};
use crate::classical::{castelnuovo, threshold_d1, Validity};
use crate::error::{invalid, Error, Result};
use crate::hilbert::HilbertProfile;
use crate::{int, Int, Rat};

/// A point value or a half-open interval for the genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundValue {
    Integer(Int),
    /// A non-integral rational bound; the genus is at most its floor.
    Rational(Rat),
    Interval {
        lo: Rat,
        hi: Rat,
        lo_open: bool,
        hi_open: bool,
    },
}

impl BoundValue {
    /// Upper end of the bound as a rational.
    pub fn upper(&self) -> Rat {
        match self {
            BoundValue::Integer(v) => Rat::from_integer(v.clone()),
            BoundValue::Rational(v) => v.clone(),
            BoundValue::Interval { hi, .. } => hi.clone(),
        }
    }

    pub fn as_integer(&self) -> Option<&Int> {
        match self {
            BoundValue::Integer(v) => Some(v),
            _ => None,
        }
    }
}

impl std::fmt::Display for BoundValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundValue::Integer(v) => write!(f, "{v}"),
            BoundValue::Rational(v) => write!(f, "{v}"),
            BoundValue::Interval {
                lo,
                hi,
                lo_open,
                hi_open,
            } => write!(
                f,
                "{}{lo}, {hi}{}",
                if *lo_open { "(" } else { "[" },
                if *hi_open { ")" } else { "]" }
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusBound {
    pub value: BoundValue,
    /// The genus is strictly below the stated value.
    pub strict: bool,
    pub validity: Validity,
    pub attained_by: Option<String>,
    pub notes: Vec<String>,
}

/// Genus bookkeeping of a curve with one singular point obtained from the
/// cone over an elliptic quintic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalConstruction {
    pub m: Int,
    pub epsilon: Int,
    pub mu: Int,
    pub a: Int,
    pub cone_multiplicity: Int,
    pub normalization_genus: Int,
    pub delta_p: Int,
    pub total_genus: Int,
}

/// `d(d-6)/8 + 1` for curves in P⁴ of degree `d > 16` on no quadric.
///
/// Integral exactly for even `d`; for odd `d` the rational value is kept and
/// the bound is flagged strict.
pub fn p4_no_quadric_bound(d: impl Into<Int>) -> Result<GenusBound> {
    let d = d.into();
    if d < int(1) {
        return Err(invalid(format!("degree must be >= 1, got {d}")));
    }
    let value = Rat::new(&d * (&d - 6), int(8)) + Rat::from_integer(int(1));
    let even = value.is_integer();
    let (value, notes) = if even {
        (BoundValue::Integer(value.to_integer()), vec!["d even".to_string()])
    } else {
        (
            BoundValue::Rational(value),
            vec!["d odd: the value is not an integer, so the genus is below it".to_string()],
        )
    };
    Ok(GenusBound {
        value,
        strict: !even,
        validity: Validity::above(16, "d > 16, curve integral and not on a quadric"),
        attained_by: even.then(|| {
            "isomorphic projection in P4 of the Veronese surface (curve = image of a plane curve of degree d/2)"
                .to_string()
        }),
        notes,
    })
}

/// `d²/10 - d/2 - (ε-4)(ε+1)/10 + binom(ε,4) + 1` with `d - 1 = 5m + ε`:
/// the bound for odd `d`, or when the curve is not arithmetically
/// Cohen–Macaulay.
pub fn p4_odd_or_acm_bound(d: impl Into<Int>) -> Result<GenusBound> {
    let d = d.into();
    if d < int(6) {
        return Err(invalid(format!("degree must be >= 6, got {d}")));
    }
    let dec = decompose(&d, &int(5))?;
    let eps = dec.remainder;
    let dr = Rat::from_integer(d.clone());
    let value = &dr * &dr / Rat::from_integer(int(10))
        - dr / Rat::from_integer(int(2))
        - Rat::new((&eps - 4) * (&eps + 1), int(10))
        + Rat::from_integer(binom(&eps, &int(4))? + 1);
    let value = to_integer(&value, "odd degree P4 bound")?;
    Ok(GenusBound {
        value: BoundValue::Integer(value),
        strict: false,
        validity: Validity::above(143, "d > 143, d odd or curve not arithmetically Cohen-Macaulay"),
        attained_by: Some("curves on a cone over an elliptic quintic, via linkage".to_string()),
        notes: vec![],
    })
}

fn quintic_parts(d: i64, pi: i64) -> Result<(i64, i64)> {
    if d < 7 {
        return Err(invalid(format!("quintic profiles need d >= 7, got {d}")));
    }
    if pi != 0 && pi != 1 {
        return Err(invalid(format!("sectional genus must be 0 or 1, got {pi}")));
    }
    let dec = decompose(&d, &5)?;
    Ok((dec.quotient, dec.remainder))
}

/// Hilbert function `h_{d,π}` of a general hyperplane section of a curve of
/// degree `d` on a quintic surface with sectional genus `π`:
/// `h(i) = 1 - π + 5i - max{0, 3 - π - i} - μ(i)` for `1 <= i <= m`, then `d`,
/// where `μ(2) = 1` when `π = 0` and zero otherwise. When `π = 1` and `ε = 4`
/// the value at `m + 1` is `d - 1`.
pub fn quintic_section_profile(d: i64, pi: i64) -> Result<HilbertProfile> {
    let (m, eps) = quintic_parts(d, pi)?;
    let mut values = vec![1];
    for i in 1..=m {
        let mu = i64::from(pi == 0 && i == 2);
        values.push(1 - pi + 5 * i - 0.max(3 - pi - i) - mu);
    }
    if pi == 1 && eps == 4 {
        values.push(d - 1);
    }
    values.push(d);
    Ok(HilbertProfile { d, values })
}

/// `G_{d,π} = Σ_{i>=1} (d - h_{d,π}(i))`.
pub fn quintic_profile_genus(d: i64, pi: i64) -> Result<i64> {
    Ok(quintic_section_profile(d, pi)?.genus_sum())
}

/// Closed forms `5·binom(m,2) + mε + 4` (π = 0) and
/// `5·binom(m,2) + m(ε+1) + 1 + binom(ε,4)` (π = 1), valid for `m >= 2`.
pub fn quintic_profile_genus_closed(d: impl Into<Int>, pi: i64) -> Result<Int> {
    let d = d.into();
    if d < int(11) {
        return Err(invalid(format!("closed form needs d >= 11, got {d}")));
    }
    let dec = decompose(&d, &int(5))?;
    let (m, eps) = (dec.quotient, dec.remainder);
    let base = binom(&m, &int(2))? * 5;
    match pi {
        0 => Ok(base + &m * &eps + 4),
        1 => Ok(base + &m * (&eps + 1) + 1 + binom(&eps, &int(4))?),
        _ => Err(invalid(format!("sectional genus must be 0 or 1, got {pi}"))),
    }
}

/// `6·binom(m,2) + mε` with `d - 1 = 6m + ε`: curves in P⁵ of degree
/// `d > 215` on no quadric. Coincides with Castelnuovo's bound in P⁷.
pub fn p5_no_quadric_bound(d: impl Into<Int>) -> Result<GenusBound> {
    let d = d.into();
    if d < int(8) {
        return Err(invalid(format!("degree must be >= 8, got {d}")));
    }
    let dec = decompose(&d, &int(6))?;
    let value = binom(&dec.quotient, &int(2))? * 6 + &dec.quotient * &dec.remainder;
    Ok(GenusBound {
        value: BoundValue::Integer(value),
        strict: false,
        validity: Validity::above(215, "d > 215, curve integral and not on a quadric"),
        attained_by: None,
        notes: vec![
            format!("equals Castelnuovo's bound in P7: {}", castelnuovo(7, d)?),
            "projecting a sextic scroll from P7 does not show sharpness: every such projection lies on a rank 4 quadric"
                .to_string(),
        ],
    })
}

/// Degree `s` of the minimal surface for curves in P^r on no quadric:
/// with `binom(r+2, 2) = 3h + k`, `s = h - 1` when `k = 0` and `s = h`
/// when `k = 2`.
pub fn quadric_scroll_degree(r: impl Into<Int>) -> Result<Int> {
    let r = r.into();
    if r < int(7) {
        return Err(invalid(format!("r must be >= 7, got {r}")));
    }
    let b = binom(&(&r + 2), &int(2))?;
    let (h, k) = (&b / 3, &b % 3);
    if k == int(0) {
        Ok(h - 1)
    } else if k == int(2) {
        Ok(h)
    } else {
        Err(Error::DivisibleByThree { r: r.to_string() })
    }
}

/// `s = (binom(r+3, 3) - 4) / 6` for curves in P^r on no cubic; defined
/// when the division is exact.
pub fn cubic_scroll_degree(r: impl Into<Int>) -> Result<Int> {
    let r = r.into();
    if r < int(9) {
        return Err(invalid(format!("r must be >= 9, got {r}")));
    }
    let b = binom(&(&r + 3), &int(3))? - 4;
    if &b % 6 != int(0) {
        return Err(Error::OutsideCubicClasses { r: r.to_string() });
    }
    Ok(b / 6)
}

/// `(d²/2s + (d/2s)(2π - 2 - s), ... + s³/(r-2)]`: the genus range for
/// curves of degree `d > d1(r, s)` on a surface of degree `s` with sectional
/// genus `π`. The lower end is open.
pub fn sectional_bound_interval(
    r: impl Into<Int>,
    d: impl Into<Int>,
    s: impl Into<Int>,
    pi: i64,
) -> Result<GenusBound> {
    let (r, d, s) = (r.into(), d.into(), s.into());
    if r < int(3) || s < int(2) {
        return Err(invalid(format!("need r >= 3 and s >= 2, got r = {r}, s = {s}")));
    }
    let two_s = Rat::from_integer(int(2) * &s);
    let dr = Rat::from_integer(d);
    let lo = &dr * &dr / &two_s + &dr / &two_s * Rat::from_integer(int(2 * pi - 2) - &s);
    let hi = &lo + Rat::new(s.pow(3), &r - 2);
    let d1 = threshold_d1(r.clone(), s.clone())?;
    Ok(GenusBound {
        value: BoundValue::Interval {
            lo,
            hi,
            lo_open: true,
            hi_open: false,
        },
        strict: false,
        validity: Validity::above(d1, "d > d1(r, s)"),
        attained_by: None,
        notes: vec![],
    })
}

/// Sectional genus zero case of [`sectional_bound_interval`]:
/// `(d²/2s - d(s+2)/2s, d²/2s - d(s+2)/2s + s³/(r-2)]`.
pub fn scroll_bound_interval(r: impl Into<Int>, d: impl Into<Int>, s: impl Into<Int>) -> Result<GenusBound> {
    let (r, s) = (r.into(), s.into());
    let mut bound = sectional_bound_interval(r.clone(), d, s.clone(), 0)?;
    bound.attained_by = Some(format!("curves on a rational normal scroll of degree {s}"));
    if r == int(6) && s == int(9) {
        bound
            .notes
            .push("radius 729/4; the constant is usually quoted as 182, and sharpness here is conditional".to_string());
    }
    Ok(bound)
}

/// Genus of the curve built on the cone over an elliptic quintic with vertex
/// multiplicity `k = 5μ + ε + 1`, for `d = 5m + ε + 1`.
pub fn extremal_cone_genus(m: impl Into<Int>, eps: impl Into<Int>, mu: impl Into<Int>) -> Result<ExtremalConstruction> {
    let (m, eps, mu) = (m.into(), eps.into(), mu.into());
    if mu < int(3) || m < mu || eps < int(0) || eps > int(4) {
        return Err(invalid(format!(
            "need m >= mu >= 3 and 0 <= eps <= 4, got m = {m}, eps = {eps}, mu = {mu}"
        )));
    }
    let a = -(&mu) - int(1);
    let k = int(5) * &mu + &eps + 1;
    let ar = Rat::from_integer(a.clone());
    let normalization = Rat::from_integer(binom(&m, &int(2))? * 5 + &m * (&eps + 1) + 1)
        - Rat::new(int(5), int(2)) * &ar * &ar
        + &ar * (Rat::from_integer(eps.clone()) - Rat::new(int(3), int(2)));
    let normalization_genus = to_integer(&normalization, "normalization genus")?;
    let singular_genus = binom(&mu, &int(2))? * 5 + &mu * (&eps + 1) + 1 + binom(&eps, &int(4))?;
    let delta_p = singular_genus - (int(1) - &k);
    let total_genus = &normalization_genus + &delta_p;
    Ok(ExtremalConstruction {
        m,
        epsilon: eps,
        mu,
        a,
        cone_multiplicity: k,
        normalization_genus,
        delta_p,
        total_genus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::castelnuovo_closed_form;
    use crate::rat;

    #[test]
    fn p4_general_examples() {
        assert_eq!(p4_no_quadric_bound(24).unwrap().value, BoundValue::Integer(int(55)));
        // plane curve of degree 12
        assert_eq!(int(11 * 10 / 2), int(55));
        assert_eq!(p4_no_quadric_bound(18).unwrap().value, BoundValue::Integer(int(28)));
        assert_eq!(p4_no_quadric_bound(30).unwrap().value, BoundValue::Integer(int(91)));
        let odd = p4_no_quadric_bound(17).unwrap();
        assert_eq!(odd.value, BoundValue::Rational(rat(195, 8)));
        assert!(odd.strict && odd.attained_by.is_none());
        assert!(p4_no_quadric_bound(0).is_err());
    }

    #[test]
    fn p4_odd_examples() {
        let v = |d: i64| p4_odd_or_acm_bound(d).unwrap().value.as_integer().unwrap().clone();
        assert_eq!(v(144), int(2003));
        assert_eq!(int(5 * 378 + 28 * 4 + 1), int(2003));
        assert_eq!(v(24), int(47));
        for d in 11..=600 {
            assert_eq!(v(d), quintic_profile_genus_closed(d, 1).unwrap(), "d={d}");
            assert_eq!(v(d), int(quintic_profile_genus(d, 1).unwrap()), "d={d}");
        }
        for d in (144..=1000).step_by(2) {
            assert!(Rat::from_integer(v(d)) < p4_no_quadric_bound(d).unwrap().value.upper());
        }
    }

    #[test]
    fn quintic_profiles() {
        assert_eq!(
            quintic_section_profile(24, 0).unwrap().values,
            vec![1, 4, 9, 16, 21, 24]
        );
        assert_eq!(
            quintic_section_profile(24, 1).unwrap().values,
            vec![1, 4, 10, 15, 20, 24]
        );
        // d = 25: m = 4, ε = 4
        let p = quintic_section_profile(25, 1).unwrap();
        assert_eq!(p.values, vec![1, 4, 10, 15, 20, 24, 25]);
        assert_eq!(quintic_profile_genus(24, 0).unwrap(), 20 + 15 + 8 + 3);
        assert_eq!(quintic_profile_genus(24, 1).unwrap(), 20 + 14 + 9 + 4);
        assert!(quintic_section_profile(6, 0).is_err());
        assert!(quintic_section_profile(20, 2).is_err());
    }

    #[test]
    fn quintic_genus_closed_forms() {
        for d in 20..=500 {
            for pi in [0, 1] {
                let sum = quintic_profile_genus(d, pi).unwrap();
                assert_eq!(int(sum), quintic_profile_genus_closed(d, pi).unwrap(), "d={d} pi={pi}");
                quintic_section_profile(d, pi).unwrap().check_invariants(3).unwrap();
            }
            assert!(quintic_profile_genus(d, 0).unwrap() < quintic_profile_genus(d, 1).unwrap());
        }
    }

    #[test]
    fn p5_bound_is_castelnuovo_in_p7() {
        assert_eq!(p5_no_quadric_bound(217).unwrap().value, BoundValue::Integer(int(3780)));
        for d in 216..=1000 {
            let v = p5_no_quadric_bound(d).unwrap().value;
            assert_eq!(v, BoundValue::Integer(castelnuovo(7, d).unwrap()));
        }
        for d in 180..=5000i64 {
            let lhs = rat(d * d, 14) - rat(3 * d, 14) + rat(115, 1);
            let rhs = p5_no_quadric_bound(d).unwrap().value.upper();
            assert!(lhs < rhs, "d={d}");
        }
    }

    #[test]
    fn quadric_scroll_degrees() {
        assert_eq!(quadric_scroll_degree(7).unwrap(), int(11));
        assert_eq!(quadric_scroll_degree(8).unwrap(), int(14));
        assert_eq!(quadric_scroll_degree(10).unwrap(), int(21));
        assert!(matches!(quadric_scroll_degree(9), Err(Error::DivisibleByThree { .. })));
        assert!(quadric_scroll_degree(6).is_err());
        for r in 7..300i64 {
            let b = int((r + 2) * (r + 1) / 2);
            match quadric_scroll_degree(r) {
                Ok(s) => {
                    assert!(&b - int(3) * (&s + 1) <= int(0) && int(0) < &b - int(3) * &s, "r={r}");
                }
                Err(_) => assert_eq!(r % 3, 0),
            }
        }
    }

    #[test]
    fn cubic_scroll_degrees() {
        for (r, s) in [(9, 36), (10, 47), (11, 60), (18, 221), (19, 256)] {
            assert_eq!(cubic_scroll_degree(r).unwrap(), int(s));
        }
        assert_eq!((int(451) % 6), int(1));
        assert!(matches!(
            cubic_scroll_degree(12),
            Err(Error::OutsideCubicClasses { .. })
        ));
        let classes = [1, 2, 9, 10, 11, 18, 19, 27, 29];
        for r in 9..=300i64 {
            let ok = cubic_scroll_degree(r);
            assert_eq!(ok.is_ok(), classes.contains(&(r % 36)), "r={r}");
            if let Ok(s) = ok {
                assert_eq!(int(6) * s + 4, binom(&int(r + 3), &int(3)).unwrap());
            }
        }
    }

    #[test]
    fn interval_bounds() {
        let b = scroll_bound_interval(7, 10_000, 11).unwrap();
        let BoundValue::Interval {
            lo,
            hi,
            lo_open,
            hi_open,
        } = b.value
        else {
            panic!("expected interval");
        };
        assert_eq!(&hi - &lo, rat(1331, 5));
        assert!(lo_open && !hi_open);
        for d in [200i64, 10_000, 123_457] {
            // lower end = closed form minus its ε-term
            let dec = decompose(&int(d), &int(11)).unwrap();
            let eps = dec.remainder;
            let eps_term = Rat::new((&eps + 1) * (int(12) - &eps), int(22));
            let expected = castelnuovo_closed_form(12, d).unwrap() - eps_term;
            let b = scroll_bound_interval(7, d, 11).unwrap();
            let BoundValue::Interval { lo, .. } = b.value else {
                unreachable!()
            };
            assert_eq!(lo, expected);
        }
        let r6 = scroll_bound_interval(6, 1000, 9).unwrap();
        let BoundValue::Interval { lo, hi, .. } = r6.value else {
            unreachable!()
        };
        assert_eq!(hi - lo, rat(729, 4));
        assert!(r6.notes[0].contains("182"));
        let one = sectional_bound_interval(6, 1000, 9, 1).unwrap();
        let BoundValue::Interval { lo: lo1, .. } = one.value else {
            unreachable!()
        };
        let zero = sectional_bound_interval(6, 1000, 9, 0).unwrap();
        let BoundValue::Interval { lo: lo0, .. } = zero.value else {
            unreachable!()
        };
        assert_eq!(lo1 - lo0, rat(1000, 9));
    }

    #[test]
    fn cone_construction() {
        let e = extremal_cone_genus(6, 0, 3).unwrap();
        assert_eq!(e.normalization_genus, int(48));
        assert_eq!(e.delta_p, int(34));
        assert_eq!(e.total_genus, int(82));
        assert_eq!(e.a, int(-4));
        assert_eq!(e.cone_multiplicity, int(16));
        assert_eq!(e.total_genus, quintic_profile_genus_closed(31, 1).unwrap());
        let with_four = extremal_cone_genus(10, 4, 3).unwrap();
        let without = binom(&int(3), &int(2)).unwrap() * 5 + int(3 * 5) + 1 - (int(1) - int(20));
        assert_eq!(with_four.delta_p, without + 1);
        assert!(extremal_cone_genus(3, 5, 3).is_err());
        assert!(extremal_cone_genus(3, 0, 4).is_err());
    }

    #[test]
    fn cone_genus_identity() {
        for m in 4..=60i64 {
            for eps in 0..=4i64 {
                for mu in 3..m {
                    let e = extremal_cone_genus(m, eps, mu).unwrap();
                    assert_eq!(e.a, int(-mu - 1));
                    assert_eq!(e.cone_multiplicity, int(5 * mu + eps + 1));
                    assert_eq!(&e.normalization_genus + &e.delta_p, e.total_genus);
                    let d = 5 * m + eps + 1;
                    assert_eq!(
                        e.total_genus,
                        int(quintic_profile_genus(d, 1).unwrap()),
                        "m={m} eps={eps} mu={mu}"
                    );
                }
            }
        }
    }
}
