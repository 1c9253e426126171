//! Mumford representation of J(F_p) and Cantor's algorithm.

use crate::curve::{CurveModP, CurvePoint};
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::poly::Poly;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A reduced Mumford pair `(u, v)`: `u` monic of degree at most 3,
/// `deg v < deg u` and `u | v^2 - f`. The zero class is `(1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    u: Poly,
    v: Poly,
}

impl DivisorClass {
    pub fn zero(p: u64) -> DivisorClass {
        DivisorClass { u: Poly::one(p), v: Poly::zero(p) }
    }

    /// Builds a class and checks the Mumford conditions.
    pub fn new(curve: &CurveModP, u: Poly, v: Poly) -> Result<DivisorClass> {
        let d = DivisorClass { u, v };
        if !d.is_valid(curve) {
            return Err(Error::Malformed(format!("({}, {}) is not a reduced Mumford pair", d.u, d.v)));
        }
        Ok(d)
    }

    pub fn u(&self) -> &Poly {
        &self.u
    }

    pub fn v(&self) -> &Poly {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.deg() == 0
    }

    pub fn is_valid(&self, curve: &CurveModP) -> bool {
        let u_deg = self.u.deg();
        self.u.is_monic()
            && (0..=3).contains(&u_deg)
            && self.v.deg() < u_deg
            && self.v.mul(&self.v).sub(curve.f()).rem(&self.u).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Report key `u=...;v=...` with coefficients in `[0, p)`.
    pub fn key(&self) -> String {
        format!("u={};v={}", self.u, self.v)
    }

    pub fn neg(&self) -> DivisorClass {
        DivisorClass { u: self.u.clone(), v: self.v.neg() }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Cantor composition followed by reduction.
pub fn add(curve: &CurveModP, a: &DivisorClass, b: &DivisorClass) -> DivisorClass {
    let f = curve.f();
    let (d1, e1, e2) = a.u.xgcd(&b.u);
    let (d, c1, c2) = d1.xgcd(&a.v.add(&b.v));
    let s1 = c1.mul(&e1);
    let s2 = c1.mul(&e2);
    let s3 = c2;
    let u = a.u.mul(&b.u).div_exact(&d.mul(&d)).expect("d^2 divides u1 u2");
    let num = s1
        .mul(&a.u)
        .mul(&b.v)
        .add(&s2.mul(&b.u).mul(&a.v))
        .add(&s3.mul(&a.v.mul(&b.v).add(f)));
    let v = num.div_exact(&d).expect("d divides the composed v").rem(&u).expect("u nonzero");
    reduce(curve, u, v)
}

fn reduce(curve: &CurveModP, mut u: Poly, mut v: Poly) -> DivisorClass {
    let f = curve.f();
    while u.deg() > 3 {
        let u2 = f.sub(&v.mul(&v)).div_exact(&u).expect("u divides f - v^2").monic();
        v = v.neg().rem(&u2).expect("u nonzero");
        u = u2;
    }
    let u = u.monic();
    let v = v.rem(&u).expect("u nonzero");
    DivisorClass { u, v }
}

pub fn neg(a: &DivisorClass) -> DivisorClass {
    a.neg()
}

pub fn sub(curve: &CurveModP, a: &DivisorClass, b: &DivisorClass) -> DivisorClass {
    add(curve, a, &b.neg())
}

pub fn scalar_mul(curve: &CurveModP, n: u64, a: &DivisorClass) -> DivisorClass {
    let mut r = DivisorClass::zero(curve.p());
    let mut b = a.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            r = add(curve, &r, &b);
        }
        b = add(curve, &b, &b);
        n >>= 1;
    }
    r
}

fn base_poly(curve: &CurveModP, coeffs: &[Fe]) -> Result<Poly> {
    let vals: Option<Vec<u64>> = coeffs.iter().map(|c| c.base_value()).collect();
    vals.map(|c| Poly::new(curve.p(), c)).ok_or(Error::NotRational)
}

/// The class `[P1 + P2 - 2*inf]` for points over GF(p^2); fails with
/// `NotRational` when the resulting Mumford pair is not over GF(p).
pub fn class_of_pair(curve: &CurveModP, p1: &CurvePoint, p2: &CurvePoint) -> Result<DivisorClass> {
    let k = curve.gf2();
    if !curve.contains(p1) || !curve.contains(p2) {
        return Err(Error::NotOnCurve);
    }
    let (p1, p2) = match (p1, p2) {
        (CurvePoint::Infinity, CurvePoint::Infinity) => return Ok(DivisorClass::zero(curve.p())),
        (CurvePoint::Infinity, q) | (q, CurvePoint::Infinity) => {
            let (x, y) = (q.x().unwrap(), q.y().unwrap());
            let u = base_poly(curve, &[k.neg(x), k.one()])?;
            let v = base_poly(curve, &[y])?;
            return Ok(DivisorClass { u, v });
        }
        (a, b) => (a, b),
    };
    if *p2 == curve.involution(p1) {
        return Ok(DivisorClass::zero(curve.p()));
    }
    let (x1, y1) = (p1.x().unwrap(), p1.y().unwrap());
    let (x2, y2) = (p2.x().unwrap(), p2.y().unwrap());
    if p1 == p2 {
        // Tangent: u = (x - a)^2, v = b + f'(a)/(2b) (x - a).
        let fp = curve.f().derivative().eval_ext(k, x1);
        let slope = k.div(fp, k.add(y1, y1))?;
        let u = base_poly(curve, &[k.square(x1), k.neg(k.add(x1, x1)), k.one()])?;
        let v = base_poly(curve, &[k.sub(y1, k.mul(slope, x1)), slope])?;
        return Ok(DivisorClass { u, v });
    }
    let u = base_poly(curve, &[k.mul(x1, x2), k.neg(k.add(x1, x2)), k.one()])?;
    let slope = k.div(k.sub(y2, y1), k.sub(x2, x1))?;
    let v = base_poly(curve, &[k.sub(y1, k.mul(slope, x1)), slope])?;
    Ok(DivisorClass { u, v })
}

/// The rational points of W2 with one representing pair of points each.
#[derive(Clone, Debug)]
pub struct W2Set {
    pub classes: BTreeMap<DivisorClass, (CurvePoint, CurvePoint)>,
}

impl W2Set {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, d: &DivisorClass) -> bool {
        self.classes.contains_key(d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DivisorClass, &(CurvePoint, CurvePoint))> {
        self.classes.iter()
    }
}

/// Enumerates W2(F_p): 0_J, the classes [P - inf], rational pairs and
/// Frobenius-conjugate pairs, skipping pairs swapped by the involution.
pub fn enumerate_w2(curve: &CurveModP) -> Result<W2Set> {
    let mut classes = BTreeMap::new();
    classes.insert(DivisorClass::zero(curve.p()), (CurvePoint::Infinity, CurvePoint::Infinity));
    let rational = curve.points(1)?;
    let affine: Vec<CurvePoint> = rational.iter().copied().filter(|q| !q.is_infinity()).collect();
    for q in &affine {
        classes.entry(class_of_pair(curve, q, &CurvePoint::Infinity)?).or_insert((*q, CurvePoint::Infinity));
    }
    for (i, a) in affine.iter().enumerate() {
        for b in &affine[i..] {
            if *b == curve.involution(a) {
                continue;
            }
            classes.entry(class_of_pair(curve, a, b)?).or_insert((*a, *b));
        }
    }
    for q in curve.points(2)? {
        if q.is_rational() {
            continue;
        }
        let s = curve.frobenius(&q);
        if s == curve.involution(&q) || s < q {
            continue;
        }
        classes.entry(class_of_pair(curve, &q, &s)?).or_insert((q, s));
    }
    Ok(W2Set { classes })
}

/// All reduced Mumford pairs over F_p; only sensible for small p.
pub fn enumerate_jacobian(curve: &CurveModP) -> Vec<DivisorClass> {
    let p = curve.p();
    let mut out = Vec::new();
    for du in 0..=3u32 {
        let count_u = p.pow(du);
        for iu in 0..count_u {
            let mut uc: Vec<u64> = (0..du).map(|k| iu / p.pow(k) % p).collect();
            uc.push(1);
            let u = Poly::new(p, uc);
            let fu = curve.f().rem(&u).expect("u monic");
            for iv in 0..count_u {
                let v = Poly::new(p, (0..du).map(|k| iv / p.pow(k) % p).collect());
                if v.mul(&v).sub(&fu).rem(&u).expect("u monic").is_zero() {
                    out.push(DivisorClass { u: u.clone(), v });
                }
            }
        }
    }
    out
}

/// Closure of `gens` under addition, capped at `limit` elements.
pub fn subgroup(curve: &CurveModP, gens: &[DivisorClass], limit: usize) -> Result<BTreeSet<DivisorClass>> {
    let mut seen = BTreeSet::new();
    let zero = DivisorClass::zero(curve.p());
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = add(curve, &x, g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Err(Error::SubgroupTooLarge(limit));
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CURVE1: [i64; 8] = [64, -16, 1, 0, 0, 49, -14, 1];

    fn ex1() -> CurveModP {
        CurveModP::reduce(&CURVE1, 7).unwrap()
    }

    #[test]
    fn tangent_class_matches_search() {
        let c = ex1();
        let pt = CurvePoint::base(0, 1);
        let d = class_of_pair(&c, &pt, &pt).unwrap();
        assert_eq!(d.u(), &Poly::new(7, vec![0, 0, 1]));
        // The unique v with v(0) = 1 and v^2 = f mod x^2.
        let found: Vec<u64> = (0..7)
            .filter(|&v1| {
                let v = Poly::new(7, vec![1, v1]);
                v.mul(&v).sub(c.f()).rem(&Poly::new(7, vec![0, 0, 1])).unwrap().is_zero()
            })
            .collect();
        assert_eq!(found.len(), 1);
        assert_eq!(d.v(), &Poly::new(7, vec![1, found[0]]));
        assert!(d.is_valid(&c));
    }

    #[test]
    fn involution_pair_is_zero() {
        let c = ex1();
        let a = CurvePoint::base(1, 1);
        let d = class_of_pair(&c, &a, &c.involution(&a)).unwrap();
        assert!(d.is_zero());
        let w = CurvePoint::base(3, 0);
        assert!(class_of_pair(&c, &w, &w).unwrap().is_zero());
    }

    #[test]
    fn group_laws_on_small_jacobian() {
        let c = ex1();
        let w2 = enumerate_w2(&c).unwrap();
        let xs: Vec<&DivisorClass> = w2.classes.keys().take(8).collect();
        for a in &xs {
            assert!(add(&c, a, &a.neg()).is_zero());
            for b in &xs {
                assert_eq!(add(&c, a, b), add(&c, b, a));
                for d in xs.iter().take(3) {
                    assert_eq!(add(&c, &add(&c, a, b), d), add(&c, a, &add(&c, b, d)));
                }
            }
        }
    }

    #[test]
    fn jacobian_size_matches_l_of_one() {
        let c = ex1();
        let n = c.zeta().unwrap().jacobian_order;
        assert_eq!(enumerate_jacobian(&c).len() as u64, n);
    }

    #[test]
    fn rational_divisor_of_conjugate_pair() {
        let c = ex1();
        let w2 = enumerate_w2(&c).unwrap();
        for (d, (a, b)) in w2.iter() {
            assert!(d.is_valid(&c), "{d} from {a:?} {b:?}");
        }
    }
}
