//! Independent cross-checks of a session, each computed by a route that does
//! not share the code path it checks.

use crate::curve::CurveModP;
use crate::dlocus::{d_locus, d_locus_brute_force, DLocus};
use crate::error::{Error, Result};
use crate::job::Session;
use crate::picard::{enumerate_jacobian, enumerate_w2, scalar_mul, W2Set};
use crate::disks::criterion_det;
use crate::wedge::{case_split, permutes_weierstrass, CaseTag};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, passed: bool, detail: String) -> OracleOutcome {
    OracleOutcome { name: name.to_string(), passed, detail }
}

/// #W2(F_p) by counting: 0_J, the classes [P - inf], unordered rational
/// pairs not swapped by the involution, and Frobenius-conjugate pairs not
/// swapped by the involution.
pub fn w2_count_formula(curve: &CurveModP) -> Result<u64> {
    let c1 = curve.points(1)?.len() as u64;
    let a1 = c1 - 1;
    let a2 = curve.points(2)?.len() as u64 - 1;
    let w = curve.points(1)?.iter().filter(|q| !q.is_infinity() && curve.is_weierstrass(q)).count() as u64;
    let nonsquare = curve.gf1().elements().filter(|&x| curve.gf1().chi(curve.f_at(x)) == -1).count() as u64;
    let rational_pairs = a1 * (a1 + 1) / 2 - (a1 - w) / 2 - w;
    let conjugate_pairs = (a2 - a1) / 2 - nonsquare;
    Ok(1 + a1 + rational_pairs + conjugate_pairs)
}

/// The criterion determinant vanishes exactly on the classes of D.
pub fn determinant_equivalence(curve: &CurveModP, w2: &W2Set, d: &DLocus, session: &Session) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for (class, (p1, p2)) in w2.iter() {
        if class.is_zero() {
            continue;
        }
        let det = criterion_det(curve, p1, p2, &session.ann)?;
        if det.is_zero() != d.contains(class) {
            failures.push(class.key());
        }
    }
    Ok(failures)
}

pub fn verify(session: &Session) -> Result<Vec<OracleOutcome>> {
    let curve = &session.curve;
    let mut out = Vec::new();

    let w2 = enumerate_w2(curve)?;
    let formula = w2_count_formula(curve)?;
    out.push(outcome("w2_count", w2.len() as u64 == formula, format!("enumerated {}, counted {formula}", w2.len())));

    let zeta = curve.zeta()?;
    let n = zeta.jacobian_order;
    let killed = w2.classes.keys().all(|g| scalar_mul(curve, n, g).is_zero());
    let mut detail = format!("#J = {n}; kills every class of W2: {killed}");
    let mut passed = killed;
    if curve.p() <= 7 {
        let full = enumerate_jacobian(curve).len() as u64;
        passed &= full == n;
        detail.push_str(&format!("; full enumeration {full}"));
    }
    out.push(outcome("jacobian_order", passed, detail));

    let consistent = session.ann.wedge()? == session.wedge;
    out.push(outcome("wedge_matches_annihilator", consistent, format!("beta = {:?}", session.wedge.beta())));

    if !session.wedge.is_case_one() {
        let split = case_split(curve, &session.wedge);
        let reducible = matches!(split, Ok(CaseTag::CaseII { .. }) | Err(Error::EllipticObstruction { .. }));
        let permutes = permutes_weierstrass(curve, &session.wedge);
        out.push(outcome(
            "reducibility",
            reducible == permutes,
            format!("proportionality {reducible}, root permutation {permutes}"),
        ));
    }

    let d = match d_locus(curve, &session.wedge) {
        Ok(d) => d,
        Err(Error::EllipticObstruction { .. }) => {
            out.push(outcome("d_locus", true, "elliptic obstruction; no locus".into()));
            return Ok(out);
        }
        Err(e) => return Err(e),
    };

    if !matches!(d.case, CaseTag::CaseI { .. }) {
        let brute = d_locus_brute_force(curve, &session.wedge)?;
        let fast: Vec<_> = d.points.keys().cloned().collect();
        out.push(outcome("d_locus", brute == fast, format!("{} classes, brute force {}", fast.len(), brute.len())));
    }

    let failures = determinant_equivalence(curve, &w2, &d, session)?;
    out.push(outcome(
        "determinant_vanishes_on_d",
        failures.is_empty(),
        if failures.is_empty() { "all classes agree".into() } else { format!("disagree at {}", failures.join(", ")) },
    ));

    let cap = if matches!(d.case, CaseTag::CaseII { .. }) { 4 } else { 6 };
    out.push(outcome("multiplicity_cap", d.max_m() <= cap, format!("max m = {}, cap {cap}", d.max_m())));

    if let Some(z) = &d.z {
        let k = curve.gf2();
        let product = z.s_poly.mul(&z.g) == z.big_f;
        let diag_divides = z.big_f.rem(&z.diag)?.is_zero();
        let parity = z
            .diag_roots
            .iter()
            .filter(|(xi, _)| !curve.f_at(*xi).is_zero())
            .all(|(xi, _)| z.big_f.ord_at(k, *xi).map(|o| o % 2 == 1).unwrap_or(false));
        out.push(outcome(
            "factorization",
            product && diag_divides && parity,
            format!("F = S*G: {product}; diagonal divides F: {diag_divides}; odd orders: {parity}"),
        ));
    }
    Ok(out)
}
