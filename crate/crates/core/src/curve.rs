//! Genus 3 odd-degree hyperelliptic curves y^2 = f(x) reduced mod p.

use crate::error::{Error, Result};
use crate::field::{check_prime, ExtField, Fe};
use crate::poly::Poly;
use serde::Serialize;

/// A point of C over GF(p^d). `Infinity` sorts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Fe, y: Fe },
}

impl CurvePoint {
    pub fn affine(x: Fe, y: Fe) -> CurvePoint {
        CurvePoint::Affine { x, y }
    }

    pub fn base(x: u64, y: u64) -> CurvePoint {
        CurvePoint::Affine { x: Fe::base(x), y: Fe::base(y) }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn is_rational(&self) -> bool {
        match self {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => x.is_base() && y.is_base(),
        }
    }

    pub fn x(&self) -> Option<Fe> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, .. } => Some(*x),
        }
    }

    pub fn y(&self) -> Option<Fe> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { y, .. } => Some(*y),
        }
    }
}

/// Frobenius-side data: point counts over GF(p^i) and the L-polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaData {
    pub counts: [u64; 3],
    /// Coefficients of L(T), constant term first (degree 6).
    pub l_poly: [i64; 7],
    pub jacobian_order: u64,
}

#[derive(Clone, Debug)]
pub struct CurveModP {
    p: u64,
    f: Poly,
    gf1: ExtField,
    gf2: ExtField,
}

impl CurveModP {
    /// Reduces an integral model (8 coefficients, constant first) mod p.
    pub fn reduce(coeffs: &[i64], p: u64) -> Result<CurveModP> {
        check_prime(p)?;
        if coeffs.len() != 8 {
            return Err(Error::Malformed(format!("expected 8 coefficients, got {}", coeffs.len())));
        }
        let f = Poly::from_i64(p, coeffs);
        CurveModP::from_poly(f)
    }

    pub fn from_poly(f: Poly) -> Result<CurveModP> {
        let p = f.p();
        check_prime(p)?;
        if f.deg() != 7 {
            return Err(Error::BadReduction { p, reason: "leading coefficient vanishes".into() });
        }
        if f.resultant(&f.derivative()) == 0 {
            return Err(Error::BadReduction { p, reason: "f has a repeated root".into() });
        }
        Ok(CurveModP { p, f, gf1: ExtField::new(p, 1)?, gf2: ExtField::new(p, 2)? })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn a7(&self) -> u64 {
        self.f.lc()
    }

    pub fn gf1(&self) -> &ExtField {
        &self.gf1
    }

    /// GF(p^2); every computation with points is done here, with GF(p)
    /// values embedded.
    pub fn gf2(&self) -> &ExtField {
        &self.gf2
    }

    pub fn f_at(&self, x: Fe) -> Fe {
        self.f.eval_ext(&self.gf2, x)
    }

    pub fn contains(&self, pt: &CurvePoint) -> bool {
        match pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.gf2.square(*y) == self.f_at(*x),
        }
    }

    pub fn involution(&self, pt: &CurvePoint) -> CurvePoint {
        match pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: *x, y: self.gf2.neg(*y) },
        }
    }

    pub fn frobenius(&self, pt: &CurvePoint) -> CurvePoint {
        match pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                CurvePoint::Affine { x: self.gf2.frobenius(*x), y: self.gf2.frobenius(*y) }
            }
        }
    }

    pub fn is_weierstrass(&self, pt: &CurvePoint) -> bool {
        match pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { y, .. } => y.is_zero(),
        }
    }

    /// Points over GF(p^d) for d in {1, 2}: infinity first, then affine
    /// points ascending by (x, y).
    pub fn points(&self, d: usize) -> Result<Vec<CurvePoint>> {
        let field = match d {
            1 => &self.gf1,
            2 => &self.gf2,
            _ => return Err(Error::UnsupportedDegree(d)),
        };
        let mut out = vec![CurvePoint::Infinity];
        for x in field.elements() {
            let fx = self.f_at(x);
            if let Some(r) = self.gf2.sqrt(fx) {
                if !(r.is_base() || d == 2) {
                    continue;
                }
                out.push(CurvePoint::affine(x, r));
                if !r.is_zero() {
                    out.push(CurvePoint::affine(x, self.gf2.neg(r)));
                }
            }
        }
        out[1..].sort();
        Ok(out)
    }

    /// Point counts over GF(p), GF(p^2), GF(p^3) by character sums, and the
    /// L-polynomial they determine.
    pub fn zeta(&self) -> Result<ZetaData> {
        let p = self.p as i64;
        let mut counts = [0u64; 3];
        for d in 1..=3 {
            let field = ExtField::new(self.p, d)?;
            let s: i64 = field.elements().map(|x| field.chi(self.f.eval_ext(&field, x))).sum();
            counts[d - 1] = (p.pow(d as u32) + 1 + s) as u64;
        }
        let s: Vec<i64> =
            (1..=3).map(|k| p.pow(k as u32) + 1 - counts[k as usize - 1] as i64).collect();
        let e1 = s[0];
        let e2 = (e1 * s[0] - s[1]) / 2;
        let e3 = (e2 * s[0] - e1 * s[1] + s[2]) / 3;
        let l_poly = [1, -e1, e2, -e3, p * e2, -p * p * e1, p * p * p];
        let j: i64 = l_poly.iter().sum();
        if j <= 0 {
            return Err(Error::Internal(format!("L(1) = {j} is not positive")));
        }
        Ok(ZetaData { counts, l_poly, jacobian_order: j as u64 })
    }
}
