//! Hilbert functions of point sets in projective space.
//!
//! A [`ConstraintSet`] collects what is known about the Hilbert function `h`
//! of a set of `d` points in `P^N` coming from a general hyperplane section of
//! an integral curve: fixed values, lower bounds and decay rules. The growth
//! laws
//!
//! * `h(i + j) >= min{d, h(i) + h(j) - 1}`
//! * `h(i) >= min{d, i·N + 1}`
//! * `h` nondecreasing
//!
//! are monotone lower-bound operators, so the pointwise least profile
//! satisfying all of them exists and is computed by Kleene iteration. The
//! genus of the curve is then at most `Σ_{i>=1} (d - h(i))`.

pub mod cases;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// `Δh(i+1) <= max{0, Δh(i) - drop}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayRule {
    #[serde(rename = "i")]
    pub index: usize,
    pub drop: i64,
}

/// Constraints on the Hilbert function of `d` points in `P^N`.
///
/// Serialized as the constraint-file format read by `curvegenus search`:
///
/// ```json
/// { "d": 30, "N": 3, "fixed": {"1": 4, "2": 9}, "lower": {"3": 14, "4": 19},
///   "decay": [{"i": 3, "drop": 2}], "strict": true, "label": "case II" }
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSet {
    pub d: i64,
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(default)]
    pub fixed: BTreeMap<usize, i64>,
    #[serde(default)]
    pub lower: BTreeMap<usize, i64>,
    #[serde(default)]
    pub decay: Vec<DecayRule>,
    /// The curve is known not to be arithmetically Cohen–Macaulay, so the
    /// genus is strictly below the sum.
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub label: String,
}

impl ConstraintSet {
    pub fn new(d: i64, n: i64) -> Self {
        ConstraintSet {
            d,
            n,
            fixed: BTreeMap::new(),
            lower: BTreeMap::new(),
            decay: Vec::new(),
            strict: false,
            label: String::new(),
        }
    }

    pub fn fix(mut self, index: usize, value: i64) -> Self {
        self.fixed.insert(index, value);
        self
    }

    /// Adds `h(index) >= value`, keeping the stronger of two bounds.
    pub fn at_least(mut self, index: usize, value: i64) -> Self {
        let slot = self.lower.entry(index).or_insert(value);
        *slot = (*slot).max(value);
        self
    }

    pub fn with_decay(mut self, index: usize, drop: i64) -> Self {
        self.decay.push(DecayRule { index, drop });
        self
    }

    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let set: ConstraintSet = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        set.validate()?;
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("constraint sets always serialize")
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(invalid(format!("N must be >= 1, got {}", self.n)));
        }
        if self.d < 2 {
            return Err(invalid(format!("d must be >= 2, got {}", self.d)));
        }
        for (kind, map) in [("fixed", &self.fixed), ("lower", &self.lower)] {
            for (&i, &v) in map {
                if i == 0 {
                    return Err(invalid(format!("{kind} constraint at index 0; indices start at 1")));
                }
                if v > self.d || v < 1 {
                    return Err(invalid(format!("{kind} h({i}) = {v} must lie in [1, d = {}]", self.d)));
                }
            }
        }
        for rule in &self.decay {
            if rule.index < 2 {
                return Err(invalid(format!("decay rule at index {} needs i >= 2", rule.index)));
            }
            if rule.drop < 0 {
                return Err(invalid(format!("decay drop must be >= 0, got {}", rule.drop)));
            }
        }
        Ok(())
    }

    fn envelope(&self, i: usize) -> i64 {
        self.d.min(i as i64 * self.n + 1)
    }

    /// Largest index that can differ from `d` in the least profile.
    fn horizon_cap(&self) -> usize {
        let by_envelope = ((self.d - 1 + self.n - 1) / self.n) as usize;
        let by_keys = self
            .fixed
            .keys()
            .chain(self.lower.keys())
            .chain(self.decay.iter().map(|r| &r.index))
            .copied()
            .max()
            .unwrap_or(0);
        by_envelope.max(by_keys + 1).max(1)
    }

    /// Whether `values` (with `values[0] = h(0)`, extended by `d`) meets
    /// every lower-bound operator of this set, treating fixed values as lower
    /// bounds.
    pub fn admits(&self, values: &[i64]) -> bool {
        let len = values.len().max(self.horizon_cap() + 1);
        let h = |i: usize| values.get(i).copied().unwrap_or(self.d);
        if h(0) != 1 {
            return false;
        }
        for i in 1..len {
            let mut floor = self.envelope(i).max(h(i - 1));
            if let Some(&v) = self.lower.get(&i) {
                floor = floor.max(v);
            }
            if let Some(&v) = self.fixed.get(&i) {
                floor = floor.max(v);
            }
            for j in 1..i {
                floor = floor.max(self.d.min(h(j) + h(i - j) - 1));
            }
            if h(i) < floor || h(i) > self.d {
                return false;
            }
        }
        true
    }
}

/// A finite Hilbert function `h(0), ..., h(H)` with `h(H) = d`; values past
/// the horizon are `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProfile {
    pub d: i64,
    pub values: Vec<i64>,
}

impl HilbertProfile {
    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, i: usize) -> i64 {
        self.values.get(i).copied().unwrap_or(self.d)
    }

    /// `Σ_{i>=1} (d - h(i))`.
    pub fn genus_sum(&self) -> i64 {
        self.values.iter().skip(1).map(|h| self.d - h).sum()
    }

    /// Checks the structural laws of a hyperplane-section Hilbert function
    /// of an integral curve in `P^{n+1}`.
    pub fn check_invariants(&self, n: i64) -> std::result::Result<(), String> {
        let h = &self.values;
        if h.first() != Some(&1) {
            return Err("h(0) must be 1".into());
        }
        if h.last() != Some(&self.d) {
            return Err(format!("profile must end at d = {}", self.d));
        }
        for i in 1..h.len() {
            if h[i] < h[i - 1] {
                return Err(format!("h decreases at {i}"));
            }
            if h[i] > self.d {
                return Err(format!("h({i}) exceeds d"));
            }
            if h[i] < self.d.min(i as i64 * n + 1) {
                return Err(format!("h({i}) below the linear envelope"));
            }
            for j in 1..i {
                if h[i] < self.d.min(h[j] + h[i - j] - 1) {
                    return Err(format!("h({i}) < min(d, h({j}) + h({}) - 1)", i - j));
                }
            }
        }
        Ok(())
    }
}

/// Genus bound read off a closed profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusEstimate {
    pub bound: i64,
    /// The genus is strictly below `bound`.
    pub strict: bool,
    pub profile: HilbertProfile,
}

impl GenusEstimate {
    /// Largest genus compatible with the estimate.
    pub fn max_genus(&self) -> i64 {
        self.bound - i64::from(self.strict)
    }
}

/// Pointwise least profile satisfying every lower-bound operator of `c`.
///
/// Fixed values enter the closure as lower bounds and are checked for
/// equality afterwards; decay rules are ignored here (see [`expand_branches`]).
pub fn minimal_profile(c: &ConstraintSet) -> Result<HilbertProfile> {
    c.validate()?;
    let d = c.d;
    let cap = c.horizon_cap();
    let mut h = vec![0i64; cap + 1];
    h[0] = 1;
    for (i, slot) in h.iter_mut().enumerate().skip(1) {
        let lower = c.lower.get(&i).copied().unwrap_or(0);
        let fixed = c.fixed.get(&i).copied().unwrap_or(0);
        *slot = c.envelope(i).max(lower).max(fixed);
    }

    let mut sweeps = 0;
    loop {
        let mut changed = false;
        for i in 1..=cap {
            let mut v = h[i].max(h[i - 1]);
            for j in 1..=i / 2 {
                v = v.max(d.min(h[j] + h[i - j] - 1));
            }
            if v != h[i] {
                h[i] = v;
                changed = true;
            }
        }
        sweeps += 1;
        if !changed {
            break;
        }
        // every sweep fixes at least the lowest unsettled index
        assert!(sweeps <= cap + 1, "closure failed to converge");
    }

    for (&i, &v) in &c.fixed {
        if h[i] > v {
            return Err(Error::Infeasible {
                index: i,
                fixed: v,
                closed: h[i],
            });
        }
    }
    let horizon = h
        .iter()
        .position(|&x| x == d)
        .expect("the envelope reaches d within the cap");
    h.truncate(horizon + 1);
    Ok(HilbertProfile { d, values: h })
}

/// Splits `c` along the rule `Δh(i+1) <= max{0, Δh(i) - drop}`:
///
/// * (a) `Δh(i+1) <= 0`, which forces `h(i) = d`;
/// * (b) `Δh(i+1) <= Δh(i) - drop`, encoded as the least lower bound `v` on
///   `h(i)` for which the closure still satisfies the inequality.
///
/// Infeasible branches are dropped. A split at an index already saturated
/// returns `c` unchanged.
pub fn decay_split(c: &ConstraintSet, index: usize, drop: i64) -> Result<Vec<ConstraintSet>> {
    if index < 2 {
        return Err(invalid(format!("decay split needs i >= 2, got {index}")));
    }
    let base = minimal_profile(c)?;
    let current = base.value(index);
    if current == c.d {
        return Ok(vec![c.clone()]);
    }

    let mut branches = Vec::new();
    let mut first_error = None;

    let saturated = c
        .clone()
        .at_least(index, c.d)
        .labeled(format!("{} | h({index}) = d", c.label));
    match minimal_profile(&saturated) {
        Ok(_) => branches.push(saturated),
        Err(e) => first_error = Some(e),
    }

    let previous = base.value(index - 1);
    for v in current..c.d {
        let candidate = c.clone().at_least(index, v);
        let Ok(profile) = minimal_profile(&candidate) else {
            continue;
        };
        let step_here = profile.value(index) - previous;
        let step_next = profile.value(index + 1) - profile.value(index);
        if step_next <= step_here - drop {
            branches.push(candidate.labeled(format!("{} | h({index}) >= {v}", c.label)));
            break;
        }
    }

    match (branches.is_empty(), first_error) {
        (true, Some(e)) => Err(e),
        (true, None) => Err(invalid("decay split produced no feasible branch")),
        _ => Ok(branches),
    }
}

/// Resolves every decay rule of `c` into plain constraint sets.
pub fn expand_branches(c: &ConstraintSet) -> Result<Vec<ConstraintSet>> {
    let Some((rule, rest)) = c.decay.split_first() else {
        return Ok(vec![c.clone()]);
    };
    let mut head = c.clone();
    head.decay = Vec::new();
    let mut out = Vec::new();
    for mut branch in decay_split(&head, rule.index, rule.drop)? {
        branch.decay = rest.to_vec();
        out.extend(expand_branches(&branch)?);
    }
    Ok(out)
}

/// `Σ (d - h(i))` over the least profile; the maximum over decay branches
/// when `c` carries decay rules.
pub fn genus_upper_bound(c: &ConstraintSet) -> Result<GenusEstimate> {
    let mut best: Option<GenusEstimate> = None;
    for branch in expand_branches(c)? {
        let profile = minimal_profile(&branch)?;
        let estimate = GenusEstimate {
            bound: profile.genus_sum(),
            strict: c.strict,
            profile,
        };
        if best.as_ref().is_none_or(|b| estimate.bound > b.bound) {
            best = Some(estimate);
        }
    }
    Ok(best.expect("expand_branches returns at least one branch"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::castelnuovo;
    use crate::int;

    fn case_two(d: i64) -> ConstraintSet {
        ConstraintSet::new(d, 3)
            .fix(1, 4)
            .fix(2, 9)
            .at_least(3, 14)
            .at_least(4, 19)
    }

    #[test]
    fn unconstrained_is_the_castelnuovo_profile() {
        let p = minimal_profile(&ConstraintSet::new(21, 3)).unwrap();
        assert_eq!(p.values, vec![1, 4, 7, 10, 13, 16, 19, 21]);
        assert_eq!(p.genus_sum(), 57);
        assert_eq!(int(57), castelnuovo(4, 21).unwrap());
    }

    #[test]
    fn case_two_closure() {
        let p = minimal_profile(&case_two(30)).unwrap();
        assert_eq!(p.values, vec![1, 4, 9, 14, 19, 22, 27, 30]);
        assert_eq!(p.genus_sum(), 4 * 30 - 35);
    }

    #[test]
    fn case_four_closure() {
        let p = minimal_profile(&ConstraintSet::new(30, 3).fix(2, 10)).unwrap();
        assert_eq!(p.values, vec![1, 4, 10, 13, 19, 22, 28, 30]);
        assert_eq!(p.genus_sum(), 84);
    }

    #[test]
    fn case_three_closure() {
        let c = ConstraintSet::new(21, 3).fix(1, 4).fix(2, 9).fix(3, 16).strict(true);
        let est = genus_upper_bound(&c).unwrap();
        assert_eq!(est.profile.values, vec![1, 4, 9, 16, 19, 21]);
        assert_eq!(est.bound, 17 + 12 + 5 + 2);
        assert!(est.strict);
        assert_eq!(est.max_genus(), 35);
    }

    #[test]
    fn fixed_below_closure_is_infeasible() {
        let err = minimal_profile(&ConstraintSet::new(21, 3).fix(2, 6)).unwrap_err();
        assert_eq!(
            err,
            Error::Infeasible {
                index: 2,
                fixed: 6,
                closed: 7
            }
        );
        // 8 sits above the superadditive floor 7 and is feasible
        assert!(minimal_profile(&ConstraintSet::new(21, 3).fix(2, 8)).is_ok());
    }

    #[test]
    fn validation_rejects_bad_sets() {
        assert!(minimal_profile(&ConstraintSet::new(10, 3).at_least(2, 11)).is_err());
        assert!(minimal_profile(&ConstraintSet::new(10, 0)).is_err());
        assert!(minimal_profile(&ConstraintSet::new(10, 3).fix(0, 1)).is_err());
        assert!(ConstraintSet::from_json(r#"{"d": 10, "N": 3, "bogus": 1}"#).is_err());
    }

    #[test]
    fn constraint_file_parses() {
        let text = r#"{"d": 30, "N": 3, "fixed": {"1": 4, "2": 9}, "lower": {"3": 14, "4": 19},
                       "decay": [], "strict": true, "label": "case II"}"#;
        let c = ConstraintSet::from_json(text).unwrap();
        assert_eq!(c, case_two(30).strict(true).labeled("case II"));
        assert_eq!(ConstraintSet::from_json(&c.to_json()).unwrap(), c);
        let minimal = ConstraintSet::from_json(r#"{"d": 21, "N": 3}"#).unwrap();
        assert_eq!(genus_upper_bound(&minimal).unwrap().bound, 57);
    }

    #[test]
    fn decay_split_at_seventeen() {
        let c = ConstraintSet::new(17, 3).fix(1, 4).fix(2, 9).strict(true);
        let branches = decay_split(&c, 3, 2).unwrap();
        assert_eq!(branches.len(), 2);
        assert_eq!(branches[0].lower.get(&3), Some(&17));
        assert_eq!(branches[1].lower.get(&3), Some(&14));
        let sums: Vec<i64> = branches
            .iter()
            .map(|b| minimal_profile(b).unwrap().genus_sum())
            .collect();
        assert_eq!(sums, vec![13 + 8, 13 + 8 + 3]);
        let est = genus_upper_bound(&c.with_decay(3, 2)).unwrap();
        assert_eq!(est.bound, 24);
    }

    #[test]
    fn decay_split_degenerate_cases() {
        // a huge drop leaves only the saturated branch
        let c = ConstraintSet::new(17, 3).fix(1, 4).fix(2, 9);
        let branches = decay_split(&c, 3, 100).unwrap();
        assert_eq!(branches.len(), 1);
        assert_eq!(branches[0].lower.get(&3), Some(&17));
        // split at a saturated index is a no-op
        let sat = ConstraintSet::new(10, 3).fix(1, 4).fix(2, 9);
        assert_eq!(minimal_profile(&sat).unwrap().value(3), 10);
        assert_eq!(decay_split(&sat, 3, 2).unwrap(), vec![sat.clone()]);
        assert!(decay_split(&sat, 1, 2).is_err());
    }

    #[test]
    fn closure_is_least() {
        for d in 5..=40 {
            for n in 2..=4 {
                let sets = [
                    ConstraintSet::new(d, n),
                    ConstraintSet::new(d, n).at_least(2, d.min(2 * n + 3)),
                    ConstraintSet::new(d, n)
                        .at_least(3, d.min(3 * n + 4))
                        .at_least(1, d.min(n + 2)),
                ];
                for c in sets {
                    let p = minimal_profile(&c).unwrap();
                    p.check_invariants(n).unwrap();
                    assert!(c.admits(&p.values));
                    for i in 1..p.horizon() {
                        let mut probe = p.values.clone();
                        probe[i] -= 1;
                        assert!(!c.admits(&probe), "d={d} n={n} i={i} {:?}", p.values);
                    }
                }
            }
        }
    }
}
