//! Residue-disk criteria in terms of local expansions of the annihilating
//! differentials w_i = (a_i0 + a_i1 x + a_i2 x^2) dx/y.

use crate::curve::{CurveModP, CurvePoint};
use crate::error::{Error, Result};
use crate::field::{reduce_i64, Fe};
use crate::picard::{class_of_pair, W2Set};
use crate::wedge::WedgeForm;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnnihilatorModP {
    p: u64,
    w: [[u64; 3]; 2],
}

impl AnnihilatorModP {
    pub fn new(a1: [i64; 3], a2: [i64; 3], p: u64) -> Result<AnnihilatorModP> {
        let ann = AnnihilatorModP { p, w: [a1.map(|a| reduce_i64(a, p)), a2.map(|a| reduce_i64(a, p))] };
        ann.wedge()?;
        Ok(ann)
    }

    /// A basis of the plane with the given Plucker coordinates: the plane is
    /// the orthogonal complement of `(b12, -b02, b01)`.
    pub fn from_wedge(w: &WedgeForm) -> AnnihilatorModP {
        let p = w.p() as i64;
        let [b01, b02, b12] = w.beta().map(|b| b as i64);
        let (a1, a2) = if b01 != 0 {
            ([b01, 0, -b12], [0, b01, b02])
        } else if b02 != 0 {
            ([b02, b12, 0], [0, 0, 1])
        } else {
            ([0, 1, 0], [0, 0, 1])
        };
        let ann = AnnihilatorModP::new(a1.map(|a| a.rem_euclid(p)), a2.map(|a| a.rem_euclid(p)), w.p())
            .expect("independent basis");
        debug_assert_eq!(ann.wedge().unwrap(), *w);
        ann
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn alpha(&self) -> [[u64; 3]; 2] {
        self.w
    }

    pub fn wedge(&self) -> Result<WedgeForm> {
        let [a1, a2] = self.w.map(|a| a.map(|x| x as i64));
        WedgeForm::from_alpha(a1, a2, self.p)
    }
}

/// `(c0 + c1 x + c2 x^2) dx/y` divided by `dt` for the standard uniformizer
/// at `pt`: `x - a` at non-Weierstrass points, `y` at affine Weierstrass
/// points and `x^3/y` at infinity. Returns the value and first derivative at
/// `pt` (the derivative is 0 at Weierstrass points, where the expansion is
/// even in `t`).
pub fn local_expansion(curve: &CurveModP, w: [u64; 3], pt: &CurvePoint) -> Result<(Fe, Fe)> {
    let k = curve.gf2();
    let h = crate::poly::Poly::new(curve.p(), w.to_vec());
    match pt {
        CurvePoint::Infinity => {
            // x^2 dx/y = -2 dt + O(t^2 dt); dx/y and x dx/y vanish there.
            Ok((k.neg(Fe::base(2 * w[2] % curve.p())), Fe::ZERO))
        }
        CurvePoint::Affine { x, y } => {
            let fp = curve.f().derivative().eval_ext(k, *x);
            let ha = h.eval_ext(k, *x);
            if y.is_zero() {
                let two = Fe::base(2);
                return Ok((k.div(k.mul(two, ha), fp)?, Fe::ZERO));
            }
            let hp = h.derivative().eval_ext(k, *x);
            let yp = k.div(fp, k.add(*y, *y))?;
            let value = k.div(ha, *y)?;
            let deriv = k.sub(k.div(hp, *y)?, k.div(k.mul(ha, yp), k.square(*y))?);
            Ok((value, deriv))
        }
    }
}

/// The 2x2 determinant of the criterion: rows are the two points for
/// distinct points, and value/derivative for a repeated point.
pub fn criterion_det(curve: &CurveModP, p1: &CurvePoint, p2: &CurvePoint, ann: &AnnihilatorModP) -> Result<Fe> {
    let k = curve.gf2();
    let [w1, w2] = ann.alpha();
    let m = if p1 == p2 {
        let (v1, d1) = local_expansion(curve, w1, p1)?;
        let (v2, d2) = local_expansion(curve, w2, p1)?;
        [[v1, d1], [v2, d2]]
    } else {
        let (a, _) = local_expansion(curve, w1, p1)?;
        let (b, _) = local_expansion(curve, w2, p1)?;
        let (c, _) = local_expansion(curve, w1, p2)?;
        let (d, _) = local_expansion(curve, w2, p2)?;
        [[a, b], [c, d]]
    };
    Ok(k.sub(k.mul(m[0][0], m[1][1]), k.mul(m[0][1], m[1][0])))
}

/// True when some annihilating differential is nonzero at `pt`: the disk of
/// 0_J then holds only the rational point itself.
pub fn zero_disk_check(curve: &CurveModP, pt: &CurvePoint, ann: &AnnihilatorModP) -> Result<bool> {
    let [w1, w2] = ann.alpha();
    Ok(!local_expansion(curve, w1, pt)?.0.is_zero() || !local_expansion(curve, w2, pt)?.0.is_zero())
}

/// Outcome of the criterion for one class of W2(F_p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiskVerdict {
    /// The class is 0_J (or a pair swapped by the involution); use the zero-disk check.
    ZeroDisk,
    /// Nonzero determinant: at most one point of W2(Q) in the disk.
    AtMostOne,
    /// Vanishing determinant: the class lies on D.
    Vanishes,
}

pub fn disk_verdicts(curve: &CurveModP, w2: &W2Set, ann: &AnnihilatorModP) -> Result<BTreeMap<String, DiskVerdict>> {
    let mut out = BTreeMap::new();
    for (class, (p1, p2)) in w2.iter() {
        if class.is_zero() {
            out.insert(class.key(), DiskVerdict::ZeroDisk);
            continue;
        }
        if class_of_pair(curve, p1, p2)? != *class {
            return Err(Error::Internal(format!("representative pair does not give {class}")));
        }
        let det = criterion_det(curve, p1, p2, ann)?;
        out.insert(class.key(), if det.is_zero() { DiskVerdict::Vanishes } else { DiskVerdict::AtMostOne });
    }
    Ok(out)
}
