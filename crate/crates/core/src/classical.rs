//! Classical genus bounds and the dimension counts they rest on.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binom, ceil, ceil_power_product, decompose, floor, harmonic, to_integer};
use crate::error::{invalid, Result};
use crate::{int, Int, Rat};

/// Range of degrees for which a formula is asserted. Values outside the
/// range are still computed; callers attach the note.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validity {
    /// The formula is asserted for `d > above`; `None` means every degree.
    pub above: Option<Int>,
    pub note: String,
}

impl Validity {
    pub fn always(note: impl Into<String>) -> Self {
        Validity {
            above: None,
            note: note.into(),
        }
    }

    pub fn above(bound: impl Into<Int>, note: impl Into<String>) -> Self {
        Validity {
            above: Some(bound.into()),
            note: note.into(),
        }
    }

    pub fn holds_for(&self, d: &Int) -> bool {
        self.above.as_ref().is_none_or(|b| d > b)
    }
}

/// Castelnuovo–Halphen estimate `G(r; d, s) = center + R` with `|R| <= radius`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalphenEstimate {
    pub center: Rat,
    pub radius: Rat,
    pub lower: Rat,
    pub upper: Rat,
    pub validity: Validity,
}

/// Degree thresholds attached to a pair `(r, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub d0: Int,
    pub d1: Int,
    pub sigma: Int,
}

/// Lower bound on the sectional genus π used to split the dimension counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PiClass {
    /// π >= 0
    NonNegative,
    /// π >= 1
    AtLeastOne,
    /// π >= 2
    AtLeastTwo,
}

impl PiClass {
    fn shift(self) -> i64 {
        match self {
            PiClass::NonNegative => 1,
            PiClass::AtLeastOne => 0,
            PiClass::AtLeastTwo => -1,
        }
    }
}

/// Castelnuovo's bound `G(N; d) = binom(m,2)·s + m·ε` for nondegenerate
/// integral curves of degree `d` in `P^N`, where `s = N - 1` and
/// `d - 1 = m·s + ε`.
pub fn castelnuovo(ambient_dim: impl Into<Int>, d: impl Into<Int>) -> Result<Int> {
    let (n, d) = (ambient_dim.into(), d.into());
    if n < int(3) {
        return Err(invalid(format!("castelnuovo needs ambient dimension >= 3, got {n}")));
    }
    let dec = decompose(&d, &(n - 1))?;
    Ok(binom(&dec.quotient, &int(2))? * &dec.divisor + &dec.quotient * &dec.remainder)
}

/// The same bound written as `d²/2s - d(s+2)/2s + (1+ε)(s+1-ε)/2s`.
pub fn castelnuovo_closed_form(ambient_dim: impl Into<Int>, d: impl Into<Int>) -> Result<Rat> {
    let (n, d) = (ambient_dim.into(), d.into());
    if n < int(3) {
        return Err(invalid(format!("castelnuovo needs ambient dimension >= 3, got {n}")));
    }
    let dec = decompose(&d, &(n - 1))?;
    let s = dec.divisor.clone();
    let eps = dec.remainder.clone();
    let two_s = Rat::from_integer(int(2) * &s);
    let dr = Rat::from_integer(d.clone());
    let quad = &dr * &dr / &two_s;
    let lin = &dr / &two_s * Rat::from_integer(-(s.clone()) - 2);
    let tail = Rat::from_integer(int(1) + &eps) / &two_s * Rat::from_integer(&s + 1 - &eps);
    Ok(quad + lin + tail)
}

/// `G(r-1; s)`: Castelnuovo's bound one dimension down, with the plane
/// curve genus when `r - 1 = 2`.
fn castelnuovo_one_down(r: &Int, s: &Int) -> Result<Int> {
    if r == &int(3) {
        binom(&(s - 1), &int(2))
    } else {
        castelnuovo(r - 1, s.clone())
    }
}

fn check_rs(r: &Int, s: &Int) -> Result<()> {
    if r < &int(3) || s < &(r - 1) {
        return Err(invalid(format!("need s >= r - 1 >= 2, got r = {r}, s = {s}")));
    }
    Ok(())
}

/// The Castelnuovo–Halphen estimate for curves in `P^r` of degree `d` not
/// on surfaces of degree `< s`. The interval is closed.
pub fn halphen_interval(r: impl Into<Int>, d: impl Into<Int>, s: impl Into<Int>) -> Result<HalphenEstimate> {
    let (r, d, s) = (r.into(), d.into(), s.into());
    check_rs(&r, &s)?;
    let g = castelnuovo_one_down(&r, &s)?;
    let two_s = Rat::from_integer(int(2) * &s);
    let dr = Rat::from_integer(d.clone());
    let center = &dr * &dr / &two_s + &dr / &two_s * Rat::from_integer(int(2) * g - 2 - &s);
    let radius = Rat::new(s.pow(3), &r - 2);
    let validity = if r == int(4) && s == int(6) {
        Validity::above(143, "asserted for d > 143 when r = 4, s = 6")
    } else if r == int(5) && s == int(7) {
        Validity::above(179, "asserted for d > 179 when r = 5, s = 7")
    } else {
        Validity::above(threshold_d0(r.clone(), s.clone())?, "asserted for d > d0(r, s)")
    };
    Ok(HalphenEstimate {
        lower: &center - &radius,
        upper: &center + &radius,
        center,
        radius,
        validity,
    })
}

/// `d0(r, s) = ceil((2s/(r-2)) · [(r-1)!·s]^{H_{r-2}})`.
///
/// The product of roots `∏_{i=1}^{r-2} B^{1/(r-1-i)}` telescopes to
/// `B^{H_{r-2}}`, so a single exact comparison decides the ceiling.
pub fn threshold_d0(r: impl Into<Int>, s: impl Into<Int>) -> Result<Int> {
    let (r, s) = (r.into(), s.into());
    check_rs(&r, &s)?;
    let r_small = u32::try_from(&r).map_err(|_| invalid(format!("r = {r} too large")))?;
    let factorial: Int = (1..r_small).map(Int::from).product();
    let coefficient = Rat::new(int(2) * &s, &r - 2);
    let exponent = harmonic::<Int>(r_small - 2);
    ceil_power_product(&coefficient, &(factorial * &s), &exponent)
}

/// `d1(r, s) = max{d0(r, s), ceil(4s(s+1)³/(r-2))}`.
pub fn threshold_d1(r: impl Into<Int>, s: impl Into<Int>) -> Result<Int> {
    let (r, s) = (r.into(), s.into());
    let d0 = threshold_d0(r.clone(), s.clone())?;
    let other = ceil(&Rat::new(int(4) * &s * (&s + int(1)).pow(3u32), &r - 2));
    Ok(d0.max(other))
}

/// Integer part of `(s - r + 2)(s²/(2(r-2)) + 1) + 1`.
pub fn sigma(r: impl Into<Int>, s: impl Into<Int>) -> Result<Int> {
    let (r, s) = (r.into(), s.into());
    if r < int(3) {
        return Err(invalid(format!("sigma needs r >= 3, got {r}")));
    }
    let value = Rat::from_integer(&s - &r + 2) * (Rat::new(&s * &s, int(2) * (&r - 2)) + Rat::one()) + Rat::one();
    Ok(floor(&value))
}

pub fn thresholds(r: impl Into<Int>, s: impl Into<Int>) -> Result<Thresholds> {
    let (r, s) = (r.into(), s.into());
    Ok(Thresholds {
        d0: threshold_d0(r.clone(), s.clone())?,
        d1: threshold_d1(r.clone(), s.clone())?,
        sigma: sigma(r, s)?,
    })
}

/// Bound for curves in P⁴ of degree `d` on no surface of degree `< 5`:
/// `d²/10 - 3d/10 + 1/5 + v/10 - v²/10 + w` with `d - 1 = 5n + v`,
/// `w = max{0, floor(v/2)}`. Integrality is checked, not assumed.
pub fn eh_pi2_bound(d: impl Into<Int>) -> Result<Int> {
    let d = d.into();
    if d < int(6) {
        return Err(invalid(format!("eh_pi2_bound needs d >= 6, got {d}")));
    }
    let v = (&d - int(1)) % int(5);
    let w = (&v / int(2)).max(Int::zero());
    let ten = int(10);
    let value = Rat::new(&d * &d, ten.clone()) - Rat::new(int(3) * &d, ten.clone())
        + Rat::new(int(1), int(5))
        + Rat::new(v.clone(), ten.clone())
        - Rat::new(&v * &v, ten)
        + Rat::from_integer(w);
    to_integer(&value, "eh_pi2_bound")
}

/// Upper bound on `h⁰(Σ, O_Σ(i))` for an integral curve Σ of degree `s`:
/// `1 + is`, `is` or `-1 + is` according to the sectional genus class.
pub fn section_h0_upper(s: impl Into<Int>, i: impl Into<Int>, pi: PiClass) -> Int {
    let (s, i) = (s.into(), i.into());
    i * s + pi.shift()
}

/// Lower bound on `h⁰(P^r, I_S(i))` for an integral surface of degree `s`
/// in `P^r`. Negative values mean no hypersurface is forced.
pub fn surface_ideal_lower_bound(r: impl Into<Int>, s: impl Into<Int>, i: impl Into<Int>, pi: PiClass) -> Result<Int> {
    let (r, s, i) = (r.into(), s.into(), i.into());
    if i < Int::one() {
        return Err(invalid(format!("surface_ideal_lower_bound needs i >= 1, got {i}")));
    }
    let ambient = binom(&(&r + &i), &i)?;
    let base = binom(&(&i + 1), &int(2))? * &s;
    let term = match pi {
        PiClass::NonNegative => &i + 1 + base,
        PiClass::AtLeastOne => base + 1,
        PiClass::AtLeastTwo => int(1) - &i + base,
    };
    Ok(ambient - term)
}

/// `h⁰(S, O_S(k)) = k + 1 + binom(k+1, 2)·s` for a rational normal scroll of degree `s`.
pub fn scroll_h0(s: impl Into<Int>, k: impl Into<Int>) -> Result<Int> {
    let (s, k) = (s.into(), k.into());
    if s < int(2) || k < Int::one() {
        return Err(invalid(format!(
            "scroll_h0 needs s >= 2 and k >= 1, got s = {s}, k = {k}"
        )));
    }
    Ok(&k + 1 + binom(&(&k + 1), &int(2))? * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    /// Σ_{i>=1} (d - min{d, i(N-1)+1}), the genus of the Castelnuovo profile.
    fn castelnuovo_sum(n: i64, d: i64) -> i64 {
        (1..=d).map(|i| d - d.min(i * (n - 1) + 1)).sum()
    }

    #[test]
    fn castelnuovo_examples() {
        assert_eq!(castelnuovo_sum(3, 5), 2);
        assert_eq!(castelnuovo(3, 5).unwrap(), int(2));
        assert_eq!(castelnuovo_sum(7, 217), 3780);
        assert_eq!(castelnuovo(7, 217).unwrap(), int(3780));
        assert_eq!(castelnuovo_sum(6, 8), 2);
        assert_eq!(castelnuovo(6, 8).unwrap(), int(2));
    }

    #[test]
    fn castelnuovo_errors() {
        assert!(castelnuovo(2, 10).is_err());
        assert!(castelnuovo(5, 4).is_err());
    }

    #[test]
    fn closed_form_agrees() {
        assert_eq!(castelnuovo_closed_form(3, 5).unwrap(), rat(2, 1));
        assert_eq!(castelnuovo_closed_form(7, 217).unwrap(), rat(3780, 1));
        for n in 3..=8i64 {
            for d in n..=200 {
                let closed = castelnuovo_closed_form(n, d).unwrap();
                assert_eq!(closed, Rat::from_integer(castelnuovo(n, d).unwrap()));
                assert_eq!(castelnuovo(n, d).unwrap(), int(castelnuovo_sum(n, d)));
                // the cap d²/(2(N-1))
                assert!(closed <= rat(d * d, 2 * (n - 1)));
            }
        }
    }

    #[test]
    fn halphen_examples() {
        assert_eq!(castelnuovo(3, 6).unwrap(), int(4));
        let est = halphen_interval(4, 144, 6).unwrap();
        assert_eq!(est.center, rat(1728, 1));
        assert!(est.upper <= rat(144 * 144, 12) + rat(108, 1));
        assert_eq!(est.validity.above, Some(int(143)));
        for d in 180..400i64 {
            let est = halphen_interval(5, d, 7).unwrap();
            assert!(est.upper <= rat(d * d, 14) - rat(3 * d, 14) + rat(115, 1));
        }
        assert_eq!(halphen_interval(7, 10_000, 11).unwrap().radius, rat(1331, 5));
        let est = halphen_interval(7, 10_000, 11).unwrap();
        assert_eq!(&est.upper - &est.lower, rat(2662, 5));
    }

    #[test]
    fn halphen_rejects_small_s() {
        assert!(halphen_interval(5, 100, 3).is_err());
    }

    #[test]
    fn halphen_plane_section_case() {
        // r = 3: G(2; s) is the plane curve genus binom(s-1, 2)
        let est = halphen_interval(3, 100, 4).unwrap();
        let g = 3; // binom(3, 2)
        let expected = rat(100 * 100, 8) + rat(100, 8) * rat(2 * g - 2 - 4, 1);
        assert_eq!(est.center, expected);
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold_d0(4, 5).unwrap(), int(822));
        assert_eq!(threshold_d1(4, 5).unwrap(), int(2160));
        assert_eq!(threshold_d0(3, 2).unwrap(), int(16));
        let t = thresholds(4, 5).unwrap();
        assert!(t.d1 >= t.d0);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(5, 6).unwrap(), int(22));
        // 3·(25/4 + 1) + 1 = 91/4
        assert_eq!(rat(3, 1) * (rat(25, 4) + rat(1, 1)) + rat(1, 1), rat(91, 4));
        assert_eq!(sigma(4, 5).unwrap(), int(22));
        for r in 3..10 {
            assert_eq!(sigma(r, r - 2).unwrap(), int(1));
        }
    }

    #[test]
    fn eh_pi2_examples() {
        assert_eq!(eh_pi2_bound(19).unwrap(), int(31));
        assert_eq!(eh_pi2_bound(144).unwrap(), int(2031));
        assert!(eh_pi2_bound(5).is_err());
        for d in 6..=2000i64 {
            let g = eh_pi2_bound(d).unwrap();
            if d > 18 {
                assert!(Rat::from_integer(g) < rat(d * (d - 6), 8) + rat(1, 1), "d = {d}");
            }
        }
    }

    #[test]
    fn section_bounds() {
        assert_eq!(section_h0_upper(5, 2, PiClass::NonNegative), int(11));
        assert_eq!(section_h0_upper(6, 3, PiClass::AtLeastOne), int(18));
        assert_eq!(section_h0_upper(5, 1, PiClass::AtLeastTwo), int(4));
    }

    #[test]
    fn surface_ideal_examples() {
        assert_eq!(
            surface_ideal_lower_bound(4, 3, 2, PiClass::NonNegative).unwrap(),
            int(3)
        );
        assert_eq!(
            surface_ideal_lower_bound(5, 5, 2, PiClass::NonNegative).unwrap(),
            int(3)
        );
        assert_eq!(
            surface_ideal_lower_bound(7, 11, 2, PiClass::NonNegative).unwrap(),
            int(0)
        );
        assert!(surface_ideal_lower_bound(4, 3, 0, PiClass::NonNegative).is_err());
    }

    #[test]
    fn surface_ideal_strictly_decreasing_in_degree() {
        for r in 4..12i64 {
            for i in 1..5i64 {
                for s in 2..40i64 {
                    let a = surface_ideal_lower_bound(r, s, i, PiClass::NonNegative).unwrap();
                    let b = surface_ideal_lower_bound(r, s + 1, i, PiClass::NonNegative).unwrap();
                    assert!(b < a);
                }
            }
        }
    }

    #[test]
    fn scroll_h0_examples() {
        assert_eq!(scroll_h0(6, 2).unwrap(), int(21));
        assert_eq!(scroll_h0(6, 3).unwrap(), int(40));
        for s in 2..30 {
            assert_eq!(scroll_h0(s, 1).unwrap(), int(s + 2));
            assert_eq!(scroll_h0(s, 2).unwrap(), int(3 * (1 + s)));
            assert_eq!(scroll_h0(s, 3).unwrap(), int(4 + 6 * s));
        }
    }

    #[test]
    fn curves_beyond_d1_prefer_the_smaller_surface() {
        // G(r; d, s+1) < G(s+1; d) beyond d1(r, s)
        for (r, s) in [(7i64, 11i64), (8, 14), (10, 21)] {
            let d1 = threshold_d1(r, s).unwrap();
            for step in 0..20i64 {
                let d: Int = &d1 + 1 + int(step) * int(97_531) * (&d1 / int(1000) + 1);
                let upper = halphen_interval(r, d.clone(), s + 1).unwrap().upper;
                let cast = castelnuovo(s + 1, d.clone()).unwrap();
                assert!(upper < Rat::from_integer(cast), "r={r} s={s} d={d}");
            }
        }
    }
}
