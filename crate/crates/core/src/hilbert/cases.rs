//! Replay of the low-degree case analysis for curves in P⁴ not on quadrics.
//!
//! For `17 <= d <= 143` the hyperplane section Γ ⊂ P³ of the curve is split
//! according to the quadrics and cubics through it:
//!
//! * Case I: `h⁰(I_Γ(2)) >= 2`. Excluded by a monodromy argument; never
//!   computed.
//! * Case II: one quadric, and Γ lies on an integral curve `X` of degree 5
//!   or 6 cut out by cubics.
//! * Case III: one quadric, exactly four cubics, `h_Γ(3) = 16`.
//! * Case IV: no quadric, `h_Γ(2) = 10`.
//!
//! The Bezout-type bounds `h_Γ(i) >= h_X(i)` are tabulated per degree range.
//! Some ranges also carry a closed expression in `d` for the genus bound;
//! those expressions come from freezing every non-head term of the sum at
//! the top of the range (see [`frozen_tail_sum`]).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{expand_branches, genus_upper_bound, minimal_profile, ConstraintSet, GenusEstimate};
use crate::error::{invalid, Result};
use crate::{rat, Rat};

pub const FIRST_DEGREE: i64 = 17;
pub const LAST_DEGREE: i64 = 143;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    /// Γ on two or more quadrics.
    I,
    /// Γ on one quadric and on an integral curve of degree 5.
    IIQuintic,
    /// Γ on one quadric and on an integral curve of degree 6.
    IISextic,
    III,
    IV,
}

impl CaseId {
    pub const ALL: [CaseId; 5] = [CaseId::I, CaseId::IIQuintic, CaseId::IISextic, CaseId::III, CaseId::IV];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::I => "I",
            CaseId::IIQuintic => "II (deg X = 5)",
            CaseId::IISextic => "II (deg X = 6)",
            CaseId::III => "III",
            CaseId::IV => "IV",
        }
    }

    /// Name usable inside check identifiers.
    pub fn slug(self) -> &'static str {
        match self {
            CaseId::I => "i",
            CaseId::IIQuintic => "ii-5",
            CaseId::IISextic => "ii-6",
            CaseId::III => "iii",
            CaseId::IV => "iv",
        }
    }
}

/// `slope·d + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearExpr {
    pub slope: i64,
    pub offset: i64,
}

impl LinearExpr {
    pub const fn new(slope: i64, offset: i64) -> Self {
        LinearExpr { slope, offset }
    }

    pub fn eval(&self, d: i64) -> i64 {
        self.slope * d + self.offset
    }
}

impl std::fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.offset {
            0 => write!(f, "{}d", self.slope),
            o if o < 0 => write!(f, "{}d-{}", self.slope, -o),
            o => write!(f, "{}d+{}", self.slope, o),
        }
    }
}

/// One tabulated constraint family over an inclusive degree range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub case: CaseId,
    pub lo: i64,
    pub hi: i64,
    pub label: String,
    pub fixed: Vec<(usize, i64)>,
    /// `(i, v)` means `h(i) >= v`.
    pub lower: Vec<(usize, i64)>,
    /// `(i, v)` means `h(i) >= min{d, v}`.
    pub capped: Vec<(usize, i64)>,
    pub decay: Vec<(usize, i64)>,
    pub strict: bool,
    pub expression: Option<LinearExpr>,
}

impl Template {
    fn new(case: CaseId, lo: i64, hi: i64, label: &str) -> Self {
        Template {
            case,
            lo,
            hi,
            label: label.to_string(),
            fixed: vec![(1, 4)],
            lower: vec![],
            capped: vec![],
            decay: vec![],
            strict: !matches!(case, CaseId::IV),
            expression: None,
        }
    }

    fn fixed(mut self, pairs: &[(usize, i64)]) -> Self {
        self.fixed.extend_from_slice(pairs);
        self
    }

    fn lower(mut self, pairs: &[(usize, i64)]) -> Self {
        self.lower.extend_from_slice(pairs);
        self
    }

    fn capped(mut self, pairs: &[(usize, i64)]) -> Self {
        self.capped.extend_from_slice(pairs);
        self
    }

    fn decay(mut self, i: usize, drop: i64) -> Self {
        self.decay.push((i, drop));
        self
    }

    fn expr(mut self, slope: i64, offset: i64) -> Self {
        self.expression = Some(LinearExpr::new(slope, offset));
        self
    }

    pub fn covers(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    /// Indices whose terms keep their dependence on `d` in the closed
    /// expression: fixed values and uncapped lower bounds.
    pub fn head(&self) -> Vec<usize> {
        let mut head: Vec<usize> = self.fixed.iter().chain(&self.lower).map(|p| p.0).collect();
        head.sort_unstable();
        head.dedup();
        head
    }

    /// The constraint set at degree `d` (points in P³).
    pub fn instantiate(&self, d: i64) -> ConstraintSet {
        let mut c =
            ConstraintSet::new(d, 3)
                .strict(self.strict)
                .labeled(format!("{} [{}]", self.case.name(), self.label));
        for &(i, v) in &self.fixed {
            c = c.fix(i, v);
        }
        for &(i, v) in &self.lower {
            c = c.at_least(i, v);
        }
        for &(i, v) in &self.capped {
            c = c.at_least(i, v.min(d));
        }
        for &(i, drop) in &self.decay {
            c = c.with_decay(i, drop);
        }
        c
    }
}

/// The tabulated constraint families. Case I has no template.
pub fn templates() -> Vec<Template> {
    use CaseId::*;
    let quintic = |lo, hi| {
        Template::new(IIQuintic, lo, hi, "h(3) >= 14, h(4) >= 19")
            .fixed(&[(2, 9)])
            .lower(&[(3, 14), (4, 19)])
            .capped(&[(5, 22), (6, 27)])
    };
    let sextic_high = |lo, hi| {
        Template::new(IISextic, lo, hi, "h(3) >= 15, h(4) >= 21")
            .fixed(&[(2, 9)])
            .lower(&[(3, 15), (4, 21)])
            .capped(&[(5, 23), (6, 29)])
    };
    let three = |lo, hi| {
        Template::new(III, lo, hi, "h(3) = 16")
            .fixed(&[(2, 9), (3, 16)])
            .capped(&[(4, 19), (5, 24)])
    };
    vec![
        Template::new(IIQuintic, 17, 20, "h(3) >= 14, h(4) >= 17")
            .fixed(&[(2, 9)])
            .lower(&[(3, 14), (4, 17)]),
        quintic(21, 23).expr(4, -45),
        quintic(24, 27).expr(4, -41),
        quintic(28, 30).expr(4, -35),
        quintic(31, LAST_DEGREE),
        Template::new(IISextic, 17, 17, "h(3) = h_X(3) >= 15")
            .fixed(&[(2, 9)])
            .lower(&[(3, 15), (4, 17)]),
        Template::new(IISextic, 17, 17, "Δh(4) <= max{0, Δh(3) - 2}")
            .fixed(&[(2, 9)])
            .decay(3, 2),
        Template::new(IISextic, 18, 18, "h(3) >= 14 from the Koszul complex")
            .fixed(&[(2, 9)])
            .lower(&[(3, 14), (4, 17)]),
        Template::new(IISextic, 19, 24, "h(3) >= 15, h(4) >= 18")
            .fixed(&[(2, 9)])
            .lower(&[(3, 15), (4, 18)])
            .capped(&[(5, 23)])
            .expr(4, -45),
        sextic_high(25, 30).expr(4, -42),
        sextic_high(31, LAST_DEGREE),
        three(17, 20).expr(3, -28),
        three(21, 25).expr(3, -22),
        three(26, 30).expr(3, -12),
        three(31, LAST_DEGREE),
        Template::new(IV, FIRST_DEGREE, LAST_DEGREE, "h(2) = 10").fixed(&[(2, 10)]),
    ]
}

/// `Σ_{i in head} (d - h_d(i)) + Σ_{i not in head} (top - h_top(i))`, where
/// `h_d` is the closure at `d` and `h_top` the closure at the top of the
/// range. This is the reading under which the tabulated expressions are
/// exact for every `d` in their range.
pub fn frozen_tail_sum(t: &Template, d: i64) -> Result<i64> {
    let here = minimal_profile(&t.instantiate(d))?;
    let top = minimal_profile(&t.instantiate(t.hi))?;
    let head = t.head();
    let width = here.horizon().max(top.horizon());
    Ok((1..=width)
        .map(|i| {
            if head.contains(&i) {
                d - here.value(i)
            } else {
                t.hi - top.value(i)
            }
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchReport {
    pub label: String,
    pub constraints: ConstraintSet,
    pub estimate: GenusEstimate,
    pub expression: Option<LinearExpr>,
    /// Value of the tabulated expression at `d`.
    pub tabulated: Option<i64>,
    /// [`frozen_tail_sum`] at `d`, when an expression is tabulated.
    pub frozen_tail: Option<i64>,
    /// The bound the verdict uses: the tabulated value when present,
    /// otherwise the engine sum.
    pub applied: i64,
    pub strict: bool,
}

impl BranchReport {
    /// Largest genus this branch allows.
    pub fn max_genus(&self) -> i64 {
        self.applied - i64::from(self.strict)
    }

    /// Whether the strict flag is what puts this branch below `reference`.
    pub fn needs_strictness(&self, reference: &Rat) -> bool {
        rat(self.applied, 1) >= *reference && rat(self.max_genus(), 1) < *reference
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Excluded {
        reason: String,
    },
    /// Every branch forces `p_a <= max_genus < reference`.
    Below {
        max_genus: i64,
    },
    NotBelow {
        max_genus: i64,
    },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::NotBelow { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: CaseId,
    pub d: i64,
    /// The inclusive degree range of the templates used.
    pub range: Option<(i64, i64)>,
    pub branches: Vec<BranchReport>,
    /// `d(d-6)/8 + 1`.
    pub reference: Rat,
    pub verdict: Verdict,
}

impl CaseReport {
    pub fn used_strictness(&self) -> bool {
        self.branches.iter().any(|b| b.needs_strictness(&self.reference))
    }
}

fn reference_bound(d: i64) -> Rat {
    rat(d * (d - 6), 8) + rat(1, 1)
}

fn branch_reports(t: &Template, d: i64) -> Result<Vec<BranchReport>> {
    let set = t.instantiate(d);
    let tabulated = t.expression.map(|e| e.eval(d));
    let frozen_tail = match t.expression {
        Some(_) => Some(frozen_tail_sum(t, d)?),
        None => None,
    };
    let mut out = Vec::new();
    for branch in expand_branches(&set)? {
        let estimate = genus_upper_bound(&branch)?;
        out.push(BranchReport {
            label: branch.label.clone(),
            applied: tabulated.unwrap_or(estimate.bound),
            strict: branch.strict,
            constraints: branch,
            estimate,
            expression: t.expression,
            tabulated,
            frozen_tail,
        });
    }
    Ok(out)
}

/// Builds every case for degree `d` and compares each with `d(d-6)/8 + 1`.
pub fn appendix_replay(d: i64) -> Result<Vec<CaseReport>> {
    if !(FIRST_DEGREE..=LAST_DEGREE).contains(&d) {
        return Err(invalid(format!(
            "the case replay covers {FIRST_DEGREE} <= d <= {LAST_DEGREE}, got {d}"
        )));
    }
    let reference = reference_bound(d);
    let all = templates();
    let mut reports = Vec::new();
    for case in CaseId::ALL {
        if case == CaseId::I {
            reports.push(CaseReport {
                case,
                d,
                range: None,
                branches: vec![],
                reference: reference.clone(),
                verdict: Verdict::Excluded {
                    reason: "two quadrics through Γ would put C on an integral curve of degree <= 4 by uniform position; excluded by monodromy".to_string(),
                },
            });
            continue;
        }
        let mut branches = Vec::new();
        let mut range: Option<(i64, i64)> = None;
        for t in all.iter().filter(|t| t.case == case && t.covers(d)) {
            branches.extend(branch_reports(t, d)?);
            range = Some(match range {
                Some((lo, hi)) => (lo.min(t.lo), hi.max(t.hi)),
                None => (t.lo, t.hi),
            });
        }
        let max_genus = branches
            .iter()
            .map(BranchReport::max_genus)
            .max()
            .expect("every case has a template for each degree");
        let verdict = if rat(max_genus, 1) < reference {
            Verdict::Below { max_genus }
        } else {
            Verdict::NotBelow { max_genus }
        };
        reports.push(CaseReport {
            case,
            d,
            range,
            branches,
            reference: reference.clone(),
            verdict,
        });
    }
    Ok(reports)
}

/// Runs [`appendix_replay`] over every degree, in parallel.
pub fn replay_all() -> Result<BTreeMap<i64, Vec<CaseReport>>> {
    (FIRST_DEGREE..=LAST_DEGREE)
        .into_par_iter()
        .map(|d| appendix_replay(d).map(|r| (d, r)))
        .collect()
}

/// Degrees at which a branch of `case` needs the strict flag.
pub fn strictness_degrees(all: &BTreeMap<i64, Vec<CaseReport>>, case: CaseId) -> Vec<i64> {
    all.iter()
        .filter(|(_, reports)| reports.iter().any(|r| r.case == case && r.used_strictness()))
        .map(|(&d, _)| d)
        .collect()
}
