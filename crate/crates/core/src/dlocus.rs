//! The locus D in W2 where the pulled-back differentials vanish, and the
//! per-point multiplicity bounds m(x).

use crate::curve::{CurveModP, CurvePoint};
use crate::error::{Error, Result};
use crate::field::{pow_mod, Fe};
use crate::picard::{class_of_pair, DivisorClass};
use crate::wedge::{case_split, z_analysis, CaseOneKind, CaseTag, WedgeForm, ZAnalysis};
use std::collections::BTreeMap;

/// How a point of D(F_p) arises from pairs of points on C.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Origin,
    /// `[P1 + P2 - 2 inf]` with `x(P1) != x(P2)`.
    Pair(CurvePoint, CurvePoint),
    /// `[2P - 2 inf]`.
    Diagonal(CurvePoint),
    /// `[P - inf]`.
    WithInfinity(CurvePoint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPoint {
    pub class: DivisorClass,
    pub provenance: Provenance,
    pub singular: bool,
    /// The vanishing indicator for off-diagonal affine pairs (case III).
    pub delta: Option<bool>,
    pub m: u32,
}

#[derive(Clone, Debug)]
pub struct DLocus {
    pub case: CaseTag,
    pub points: BTreeMap<DivisorClass, DPoint>,
    pub z: Option<ZAnalysis>,
    /// The correction term N of the case III bound.
    pub n: Option<u32>,
    /// The diagonal half-sum inside N.
    pub n_diagonal: Option<u32>,
}

impl DLocus {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn singular_count(&self) -> usize {
        self.points.values().filter(|d| d.singular).count()
    }

    pub fn contains(&self, d: &DivisorClass) -> bool {
        self.points.contains_key(d)
    }

    pub fn m(&self, d: &DivisorClass) -> u32 {
        self.points.get(d).map(|x| x.m).unwrap_or(0)
    }

    pub fn max_m(&self) -> u32 {
        self.points.values().map(|d| d.m).max().unwrap_or(0)
    }
}

/// Case-I points `[R + P - 2 inf]` for R in C(F_p).
fn case_one_points(curve: &CurveModP, point: &CurvePoint, kind: CaseOneKind) -> Result<Vec<(DivisorClass, Provenance)>> {
    let mut out = vec![(DivisorClass::zero(curve.p()), Provenance::Origin)];
    let bases: Vec<CurvePoint> = match kind {
        CaseOneKind::IrrationalPoint => return Ok(out),
        CaseOneKind::Weierstrass => vec![*point],
        CaseOneKind::RationalPoint => vec![*point, curve.involution(point)],
    };
    for base in &bases {
        for r in curve.points(1)? {
            let class = class_of_pair(curve, &r, base)?;
            let prov = if class.is_zero() {
                Provenance::Origin
            } else if r == *base {
                Provenance::Diagonal(r)
            } else if r.is_infinity() {
                Provenance::WithInfinity(*base)
            } else if base.is_infinity() {
                Provenance::WithInfinity(r)
            } else {
                Provenance::Pair(r, *base)
            };
            out.push((class, prov));
        }
    }
    Ok(out)
}

/// Galois-stable points of Z off the involution, mapped to classes.
fn z_points(curve: &CurveModP, w: &WedgeForm) -> Result<Vec<(DivisorClass, Provenance)>> {
    let mut out = vec![(DivisorClass::zero(curve.p()), Provenance::Origin)];
    let rational = curve.points(1)?;
    for p1 in rational.iter().filter(|q| !q.is_infinity()) {
        match w.mobius(curve, p1.x()) {
            None => out.push((class_of_pair(curve, p1, &CurvePoint::Infinity)?, Provenance::WithInfinity(*p1))),
            Some(x2) if x2.is_base() => {
                for p2 in rational.iter().filter(|q| q.x() == Some(x2)) {
                    if *p2 == curve.involution(p1) {
                        continue;
                    }
                    let prov = if p1 == p2 { Provenance::Diagonal(*p1) } else { Provenance::Pair(*p1, *p2) };
                    out.push((class_of_pair(curve, p1, p2)?, prov));
                }
            }
            Some(_) => {}
        }
    }
    for p1 in curve.points(2)? {
        if p1.is_infinity() || p1.is_rational() {
            continue;
        }
        let p2 = curve.frobenius(&p1);
        if p2 == curve.involution(&p1) || w.mobius(curve, p1.x()) != p2.x() {
            continue;
        }
        out.push((class_of_pair(curve, &p1, &p2)?, Provenance::Pair(p1, p2)));
    }
    Ok(out)
}

fn delta_indicator(curve: &CurveModP, w: &WedgeForm, p1: &CurvePoint, p2: &CurvePoint) -> bool {
    let k = curve.gf2();
    let (b1, a2, b2) = (p1.y().unwrap(), p2.x().unwrap(), p2.y().unwrap());
    let lin = k.add(k.scale(a2, w.b12()), Fe::base(w.b02()));
    let d2 = pow_mod(w.delta(), 2, curve.p());
    let lhs = k.mul(k.pow(lin, 4), b1);
    lhs == k.scale(b2, d2)
}

/// Enumerates D(F_p) with multiplicity bounds. Fails with
/// `EllipticObstruction` when the form cuts out an elliptic component.
pub fn d_locus(curve: &CurveModP, w: &WedgeForm) -> Result<DLocus> {
    let case = case_split(curve, w)?;
    let mut points = BTreeMap::new();
    let mut z = None;
    let mut n = None;
    let mut n_diagonal = None;
    match &case {
        CaseTag::CaseI { point, kind, .. } => {
            for (class, prov) in case_one_points(curve, point, *kind)? {
                let m = match (kind, prov) {
                    (CaseOneKind::Weierstrass, Provenance::Origin) => 6,
                    (CaseOneKind::Weierstrass, _) => 2,
                    (_, Provenance::Origin) => 4,
                    (_, Provenance::Diagonal(_)) => 2,
                    _ => 1,
                };
                let singular = matches!(prov, Provenance::Origin) && *kind != CaseOneKind::Weierstrass;
                points.entry(class.clone()).or_insert(DPoint { class, provenance: prov, singular, delta: None, m });
            }
        }
        CaseTag::CaseII { .. } => {
            for (class, prov) in z_points(curve, w)? {
                let origin = matches!(prov, Provenance::Origin);
                let m = if origin { 4 } else { 2 };
                points.entry(class.clone()).or_insert(DPoint { class, provenance: prov, singular: origin, delta: None, m });
            }
        }
        CaseTag::CaseIII => {
            let za = z_analysis(curve, w)?;
            let k = curve.gf2();
            let ord_f = |x: Fe| za.big_f.ord_at(k, x);
            let ord_g = |x: Fe| za.g.ord_at(k, x);
            let mut n_sum: u32 = 0;
            for (class, prov) in z_points(curve, w)? {
                if points.contains_key(&class) {
                    continue;
                }
                let weier = |q: &CurvePoint| curve.is_weierstrass(q);
                let (m, singular, delta) = match prov {
                    Provenance::Origin => (2, true, None),
                    Provenance::Pair(p1, p2) => {
                        let a1 = p1.x().unwrap();
                        let d = delta_indicator(curve, w, &p1, &p2);
                        if d {
                            n_sum += ord_g(a1)?;
                        }
                        if weier(&p1) && weier(&p2) {
                            (ord_f(a1)? - 1 + 2, true, Some(d))
                        } else {
                            (u32::from(d) * ord_f(a1)? + 1, false, Some(d))
                        }
                    }
                    Provenance::Diagonal(p1) => {
                        let o = ord_f(p1.x().unwrap())?;
                        if o % 2 == 0 {
                            return Err(Error::Internal(format!("even order {o} of F at a diagonal root")));
                        }
                        ((o - 1) / 2 + 1, false, None)
                    }
                    Provenance::WithInfinity(p1) => {
                        if weier(&p1) {
                            (ord_f(p1.x().unwrap())? - 1 + 2, true, None)
                        } else {
                            (1, false, None)
                        }
                    }
                };
                if m > 6 {
                    return Err(Error::Internal(format!("multiplicity bound {m} exceeds 6 at {class}")));
                }
                points.insert(class.clone(), DPoint { class, provenance: prov, singular, delta, m });
            }
            if za.eta {
                n_sum += ord_g(Fe::base(w.pole().unwrap()))? - 1;
            }
            let mut half = 0;
            for &(xi, rational) in &za.diag_roots {
                if rational {
                    half += ord_g(xi)? - 1;
                }
            }
            if half % 2 != 0 {
                return Err(Error::Internal("odd diagonal contribution to N".into()));
            }
            n = Some(n_sum + half / 2);
            n_diagonal = Some(half / 2);
            z = Some(za);
        }
    }
    Ok(DLocus { case, points, z, n, n_diagonal })
}

/// Brute-force D(F_p) for cases II and III: every Galois-stable pair of
/// points (rational pairs, conjugate pairs, pairs with infinity) on which the
/// homogenized form vanishes, off the involution.
pub fn d_locus_brute_force(curve: &CurveModP, w: &WedgeForm) -> Result<Vec<DivisorClass>> {
    let k = curve.gf2();
    let on_z = |a: &CurvePoint, b: &CurvePoint| match (a.x(), b.x()) {
        (Some(x1), Some(x2)) => w.eval(curve, x1, x2).is_zero(),
        (Some(x), None) | (None, Some(x)) => k.add(Fe::base(w.b02()), k.scale(x, w.b12())).is_zero(),
        (None, None) => w.b12() == 0,
    };
    let mut out = vec![DivisorClass::zero(curve.p())];
    let rational = curve.points(1)?;
    for (i, a) in rational.iter().enumerate() {
        for b in &rational[i..] {
            if on_z(a, b) && *b != curve.involution(a) {
                out.push(class_of_pair(curve, a, b)?);
            }
        }
    }
    for a in curve.points(2)?.iter().filter(|q| !q.is_rational()) {
        let b = curve.frobenius(a);
        if on_z(a, &b) && b != curve.involution(a) {
            out.push(class_of_pair(curve, a, &b)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    const CURVE1: [i64; 8] = [64, -16, 1, 0, 0, 49, -14, 1];
    const CURVE2: [i64; 8] = [10, 11, -3, 19, 5, 9, -7, 1];
    const CURVE3: [i64; 8] = [0, -24, -80, -74, -20, -13, 0, 1];

    #[test]
    fn case1_curve_locus() {
        let c = CurveModP::reduce(&CURVE1, 7).unwrap();
        let d = d_locus(&c, &WedgeForm::new([0, 0, 1], 7).unwrap()).unwrap();
        let npts = c.points(1).unwrap().len();
        assert_eq!(d.len(), 2 * npts - 1);
        assert_eq!(d.m(&DivisorClass::zero(7)), 4);
        let twice = class_of_pair(&c, &CurvePoint::base(0, 1), &CurvePoint::base(0, 1)).unwrap();
        assert_eq!(d.m(&twice), 2);
    }

    #[test]
    fn case2_curve_locus() {
        let c = CurveModP::reduce(&CURVE2, 5).unwrap();
        let d = d_locus(&c, &WedgeForm::new([1, 1, 4], 5).unwrap()).unwrap();
        assert!(matches!(d.case, CaseTag::CaseII { .. }));
        assert_eq!(d.m(&DivisorClass::zero(5)), 4);
        assert!(d.points.values().all(|x| x.class.is_zero() || x.m == 2));
        assert_eq!(d.singular_count(), 1);
    }

    #[test]
    fn case3_curve_locus() {
        let c = CurveModP::reduce(&CURVE3, 5).unwrap();
        let d = d_locus(&c, &WedgeForm::new([3, 2, 4], 5).unwrap()).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.singular_count(), 2);
        let w01 = DivisorClass::new(&c, Poly::new(5, vec![0, 4, 1]), Poly::zero(5)).unwrap();
        assert!(d.contains(&w01));
        assert_eq!(d.m(&w01), 2);
        for v in [2, 3] {
            let conj = DivisorClass::new(&c, Poly::new(5, vec![1, 1, 1]), Poly::constant(5, v)).unwrap();
            assert_eq!(d.points[&conj].delta, Some(true));
            assert_eq!(d.m(&conj), 3);
        }
        assert_eq!(d.n, Some(4));
    }

    #[test]
    fn enumeration_agrees_with_brute_force_on_fixture_curves() {
        for (coeffs, p) in [(CURVE2, 5), (CURVE3, 5), (CURVE1, 7)] {
            let c = CurveModP::reduce(&coeffs, p).unwrap();
            for w in WedgeForm::all(p).into_iter().filter(|w| !w.is_case_one()) {
                let Ok(d) = d_locus(&c, &w) else { continue };
                let fast: Vec<DivisorClass> = d.points.keys().cloned().collect();
                assert_eq!(fast, d_locus_brute_force(&c, &w).unwrap(), "beta {:?}", w.beta());
            }
        }
    }
}
