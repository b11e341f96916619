//! Rows printed by `curvegenus bound`.

use anyhow::{bail, Context, Result};
use curvegenus::classical::{castelnuovo, eh_pi2_bound, halphen_interval, Validity};
use curvegenus::hypersurface_bounds::{
    cubic_scroll_degree, p4_no_quadric_bound, p4_odd_or_acm_bound, p5_no_quadric_bound, quadric_scroll_degree,
    scroll_bound_interval, sectional_bound_interval, GenusBound,
};
use curvegenus::Int;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Castelnuovo,
    Halphen,
    NoQuadrics,
    NoCubics,
    EhPi2,
}

/// Parameters shared by every row of a sweep.
#[derive(Debug, Clone, Default)]
pub struct Params {
    pub r: Option<Int>,
    pub s: Option<Int>,
    pub ambient: Option<Int>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub family: String,
    pub r: String,
    pub d: String,
    pub s: Option<String>,
    pub value: String,
    /// The genus is strictly below `value`.
    pub strict: bool,
    pub validity: String,
    pub in_range: bool,
    pub attained_by: Option<String>,
    pub notes: Vec<String>,
}

const OUTSIDE: &str = "outside the validity range of this bound";

fn validity_text(v: &Validity) -> String {
    match &v.above {
        Some(b) if v.note.starts_with(&format!("d > {b}")) => v.note.clone(),
        Some(b) => format!("d > {b} ({})", v.note),
        None => v.note.clone(),
    }
}

fn from_bound(family: &str, r: &Int, d: &Int, s: Option<&Int>, b: GenusBound) -> BoundRow {
    let in_range = b.validity.holds_for(d);
    let mut notes = b.notes;
    if !in_range {
        notes.insert(0, OUTSIDE.to_string());
    }
    BoundRow {
        family: family.to_string(),
        r: r.to_string(),
        d: d.to_string(),
        s: s.map(Int::to_string),
        value: b.value.to_string(),
        strict: b.strict,
        validity: validity_text(&b.validity),
        in_range,
        attained_by: b.attained_by,
        notes,
    }
}

fn need<'a>(v: &'a Option<Int>, flag: &str, family: Family) -> Result<&'a Int> {
    v.as_ref()
        .with_context(|| format!("`bound {}` needs {flag}", family_name(family)))
}

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::Castelnuovo => "castelnuovo",
        Family::Halphen => "halphen",
        Family::NoQuadrics => "no-quadrics",
        Family::NoCubics => "no-cubics",
        Family::EhPi2 => "eh-pi2",
    }
}

/// All rows for one degree.
pub fn rows(family: Family, p: &Params, d: &Int) -> Result<Vec<BoundRow>> {
    let name = family_name(family);
    match family {
        Family::Castelnuovo => {
            let n = p
                .ambient
                .as_ref()
                .or(p.r.as_ref())
                .context("`bound castelnuovo` needs --ambient")?;
            Ok(vec![BoundRow {
                family: name.to_string(),
                r: n.to_string(),
                d: d.to_string(),
                s: None,
                value: castelnuovo(n.clone(), d.clone())?.to_string(),
                strict: false,
                validity: "every d >= N + 1".to_string(),
                in_range: true,
                attained_by: Some("Castelnuovo curves".to_string()),
                notes: vec![],
            }])
        }
        Family::Halphen => {
            let (r, s) = (need(&p.r, "--r", family)?, need(&p.s, "--s", family)?);
            let h = halphen_interval(r.clone(), d.clone(), s.clone())?;
            let in_range = h.validity.holds_for(d);
            let mut notes = vec![format!("center {}, radius {}", h.center, h.radius)];
            if !in_range {
                notes.insert(0, OUTSIDE.to_string());
            }
            Ok(vec![BoundRow {
                family: name.to_string(),
                r: r.to_string(),
                d: d.to_string(),
                s: Some(s.to_string()),
                value: format!("[{}, {}]", h.lower, h.upper),
                strict: false,
                validity: validity_text(&h.validity),
                in_range,
                attained_by: None,
                notes,
            }])
        }
        Family::EhPi2 => Ok(vec![BoundRow {
            family: name.to_string(),
            r: "4".to_string(),
            d: d.to_string(),
            s: None,
            value: eh_pi2_bound(d.clone())?.to_string(),
            strict: false,
            validity: "curves in P4 on no surface of degree < 5".to_string(),
            in_range: true,
            attained_by: None,
            notes: vec![],
        }]),
        Family::NoQuadrics => {
            let r = need(&p.r, "--r", family)?;
            let small = u32::try_from(r).ok();
            match small {
                Some(4) => Ok(vec![
                    from_bound(name, r, d, None, p4_no_quadric_bound(d.clone())?),
                    from_bound(name, r, d, None, p4_odd_or_acm_bound(d.clone())?),
                ]),
                Some(5) => Ok(vec![from_bound(name, r, d, None, p5_no_quadric_bound(d.clone())?)]),
                Some(6) => {
                    let s = Int::from(9);
                    let mut b = sectional_bound_interval(6, d.clone(), s.clone(), 1)?;
                    b.attained_by =
                        Some("conditional: curves on a surface of degree 9 with sectional genus 1".to_string());
                    b.notes
                        .push("radius s^3/(r-2) = 729/4; the constant is usually quoted as 182".to_string());
                    Ok(vec![from_bound(name, r, d, Some(&s), b)])
                }
                Some(0..=3) => bail!("no-quadrics needs r >= 4, got {r}"),
                _ => {
                    let s = quadric_scroll_degree(r.clone())?;
                    let b = scroll_bound_interval(r.clone(), d.clone(), s.clone())?;
                    Ok(vec![from_bound(name, r, d, Some(&s), b)])
                }
            }
        }
        Family::NoCubics => {
            let r = need(&p.r, "--r", family)?;
            let s = cubic_scroll_degree(r.clone())?;
            let b = scroll_bound_interval(r.clone(), d.clone(), s.clone())?;
            Ok(vec![from_bound(name, r, d, Some(&s), b)])
        }
    }
}

/// Fixed-width table with notes beneath each row.
pub fn render(rows: &[BoundRow]) -> String {
    let mut out = format!(
        "{:<12} {:>4} {:>8} {:>5}  {:<28} {:<6} {}\n",
        "family", "r", "d", "s", "value", "strict", "validity"
    );
    for row in rows {
        out.push_str(&format!(
            "{:<12} {:>4} {:>8} {:>5}  {:<28} {:<6} {}\n",
            row.family,
            row.r,
            row.d,
            row.s.as_deref().unwrap_or("-"),
            row.value,
            if row.strict { "yes" } else { "no" },
            row.validity
        ));
        if let Some(a) = &row.attained_by {
            out.push_str(&format!("    attained by {a}\n"));
        }
        for note in &row.notes {
            out.push_str(&format!("    note: {note}\n"));
        }
    }
    out
}

/// Parses `A..B` (inclusive).
pub fn parse_range(text: &str) -> Result<(Int, Int)> {
    let Some((a, b)) = text.split_once("..") else {
        bail!("expected a range A..B, got {text:?}");
    };
    let a: Int = a
        .trim()
        .parse()
        .with_context(|| format!("bad range start in {text:?}"))?;
    let b: Int = b
        .trim_start_matches('=')
        .trim()
        .parse()
        .with_context(|| format!("bad range end in {text:?}"))?;
    if a > b {
        bail!("empty range {text:?}");
    }
    Ok((a, b))
}
