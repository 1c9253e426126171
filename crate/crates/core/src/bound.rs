//! Assembly of the upper bounds on #W2(Q).

use crate::curve::CurveModP;
use crate::dlocus::DLocus;
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::picard::W2Set;
use crate::wedge::{CaseOneKind, CaseTag};
use serde::Serialize;
use std::collections::BTreeMap;

/// Points of the residue disk over a class with multiplicity bound `m`:
/// `floor((p-1)/(p-2) m) + 1 = m + 1 + floor(m/(p-2))`. Needs `m < p`.
pub fn disk_bound(m: u32, p: u64) -> Result<u64> {
    if m as u64 >= p {
        return Err(Error::MultiplicityTooLarge { m, p });
    }
    Ok(m as u64 + 1 + m as u64 / (p - 2))
}

/// `ceil(sqrt(n))` in integers.
fn ceil_sqrt(n: u64) -> u64 {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// `#W2(F_p) + 2p + ceil(12 sqrt p) + 7`, valid for primes p >= 11.
pub fn uniform_bound(p: u64, w2: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 11 {
        return Err(Error::PrimeTooSmall(p));
    }
    Ok(w2 + 2 * p + ceil_sqrt(144 * p) + 7)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub curve_points: u64,
    pub w2: u64,
    pub d: u64,
    pub sing_d: u64,
    pub n: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub p: u64,
    pub counts: Counts,
    /// m(x) for each class of D(F_p); all other classes of W2 have m = 0.
    pub m_table: BTreeMap<String, u32>,
    pub disk_bounds: BTreeMap<String, u64>,
    pub refined_bound: u64,
    pub closed_form_bound: u64,
    /// Alternative closed forms from the case analysis, by name.
    pub closed_form_variants: BTreeMap<String, u64>,
    pub uniform_bound: Option<u64>,
    pub warnings: Vec<String>,
}

/// Combines W2(F_p) and D into the refined, closed-form and uniform bounds.
pub fn compute_bound(curve: &CurveModP, w2: &W2Set, d: &DLocus) -> Result<BoundReport> {
    let p = curve.p();
    let curve_points = curve.points(1)?.len() as u64;
    let counts = Counts {
        curve_points,
        w2: w2.len() as u64,
        d: d.len() as u64,
        sing_d: d.singular_count() as u64,
        n: d.n.map(u64::from),
    };
    for class in d.points.keys() {
        if !w2.contains(class) {
            return Err(Error::Internal(format!("{class} lies on D but not on W2")));
        }
    }
    let mut m_table = BTreeMap::new();
    let mut disk_bounds = BTreeMap::new();
    for (class, pt) in &d.points {
        m_table.insert(class.key(), pt.m);
        disk_bounds.insert(class.key(), disk_bound(pt.m, p)?);
    }
    let refined_bound = disk_bounds.values().sum::<u64>() + (counts.w2 - counts.d);

    let statement = counts.w2 + 2 * curve_points + 4;
    let mut closed_form_variants = BTreeMap::new();
    let closed_form_bound = match &d.case {
        CaseTag::CaseI { kind, .. } => {
            if *kind != CaseOneKind::Weierstrass {
                closed_form_variants.insert("non_weierstrass".to_string(), counts.w2 + 2 * curve_points + 2);
            }
            statement
        }
        CaseTag::CaseII { .. } => {
            let via_d = counts.w2 + 2 * counts.d + 2;
            closed_form_variants.insert("statement".to_string(), statement);
            closed_form_variants.insert("via_d".to_string(), via_d);
            statement.min(via_d)
        }
        CaseTag::CaseIII => {
            let printed = counts.w2 + counts.d + counts.sing_d + counts.n.unwrap_or(0);
            // Both rational points over a diagonal root carry the half term.
            let per_point = printed + u64::from(d.n_diagonal.unwrap_or(0));
            closed_form_variants.insert("diagonal_per_point".to_string(), per_point);
            printed
        }
    };

    let mut warnings = Vec::new();
    let uniform_bound = match uniform_bound(p, counts.w2) {
        Ok(b) => Some(b),
        Err(Error::PrimeTooSmall(_)) => {
            warnings.push(format!("uniform bound needs p >= 11, got p = {p}"));
            None
        }
        Err(e) => return Err(e),
    };
    if p >= 11 {
        if refined_bound > closed_form_bound {
            warnings.push(format!("refined bound {refined_bound} exceeds closed form {closed_form_bound}"));
        }
        if let Some(t) = uniform_bound {
            if closed_form_bound > t {
                return Err(Error::Internal(format!("closed form {closed_form_bound} exceeds uniform bound {t}")));
            }
        }
    }
    Ok(BoundReport {
        p,
        counts,
        m_table,
        disk_bounds,
        refined_bound,
        closed_form_bound,
        closed_form_variants,
        uniform_bound,
        warnings,
    })
}
