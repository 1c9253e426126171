//! The wedge form beta(x1, x2) = b01 (x2 - x1) + b02 (x2^2 - x1^2) + b12 x1 x2 (x2 - x1)
//! divided by (x2 - x1), and the case split it induces.

use crate::curve::{CurveModP, CurvePoint};
use crate::error::{Error, Result};
use crate::field::{inv_mod, mul_mod, neg_mod, pow_mod, sub_mod, Fe};
use crate::poly::Poly;
use serde::Serialize;

/// Projective class of `(b01, b02, b12)`, normalized so that the first
/// nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WedgeForm {
    p: u64,
    beta: [u64; 3],
}

impl WedgeForm {
    pub fn new(beta: [i64; 3], p: u64) -> Result<WedgeForm> {
        let b = beta.map(|x| crate::field::reduce_i64(x, p));
        let Some(&lead) = b.iter().find(|&&x| x != 0) else {
            return Err(Error::ZeroWedge);
        };
        let inv = inv_mod(lead, p)?;
        Ok(WedgeForm { p, beta: b.map(|x| mul_mod(x, inv, p)) })
    }

    /// The 2x2 minors of the annihilating pair:
    /// `b_nm = a1n a2m - a1m a2n`.
    pub fn from_alpha(a1: [i64; 3], a2: [i64; 3], p: u64) -> Result<WedgeForm> {
        let minor = |n: usize, m: usize| a1[n] as i128 * a2[m] as i128 - a1[m] as i128 * a2[n] as i128;
        let reduce = |x: i128| x.rem_euclid(p as i128) as i64;
        WedgeForm::new([reduce(minor(0, 1)), reduce(minor(0, 2)), reduce(minor(1, 2))], p)
    }

    /// Every normalized form over GF(p), in ascending order.
    pub fn all(p: u64) -> Vec<WedgeForm> {
        let mut out = Vec::new();
        for b02 in 0..p {
            for b12 in 0..p {
                out.push(WedgeForm { p, beta: [1, b02, b12] });
            }
        }
        for b12 in 0..p {
            out.push(WedgeForm { p, beta: [0, 1, b12] });
        }
        out.push(WedgeForm { p, beta: [0, 0, 1] });
        out.sort();
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn beta(&self) -> [u64; 3] {
        self.beta
    }

    pub fn b01(&self) -> u64 {
        self.beta[0]
    }

    pub fn b02(&self) -> u64 {
        self.beta[1]
    }

    pub fn b12(&self) -> u64 {
        self.beta[2]
    }

    /// `b02^2 - b01 b12`.
    pub fn delta(&self) -> u64 {
        let p = self.p;
        sub_mod(mul_mod(self.b02(), self.b02(), p), mul_mod(self.b01(), self.b12(), p), p)
    }

    pub fn is_case_one(&self) -> bool {
        self.delta() == 0
    }

    /// `b12 x^2 + 2 b02 x + b01`, vanishing on the diagonal of Z.
    pub fn diag_quadratic(&self) -> Poly {
        Poly::new(self.p, vec![self.b01(), 2 * self.b02(), self.b12()])
    }

    /// `-b02 / b12`, the pole of the Mobius map.
    pub fn pole(&self) -> Option<u64> {
        (self.b12() != 0).then(|| mul_mod(neg_mod(self.b02(), self.p), inv_mod(self.b12(), self.p).unwrap(), self.p))
    }

    /// Value of the form at `(x1, x2)`.
    pub fn eval(&self, curve: &CurveModP, x1: Fe, x2: Fe) -> Fe {
        let k = curve.gf2();
        let s = k.scale(k.add(x1, x2), self.b02());
        let pr = k.scale(k.mul(x1, x2), self.b12());
        k.add(k.add(Fe::base(self.b01()), s), pr)
    }

    /// `mu(x) = -(b02 x + b01) / (b12 x + b02)`; `None` stands for infinity.
    pub fn mobius(&self, curve: &CurveModP, x: Option<Fe>) -> Option<Fe> {
        let k = curve.gf2();
        let Some(x) = x else {
            return self.pole().map(Fe::base);
        };
        let num = k.neg(k.add(k.scale(x, self.b02()), Fe::base(self.b01())));
        let den = k.add(k.scale(x, self.b12()), Fe::base(self.b02()));
        if den.is_zero() {
            return None;
        }
        Some(k.div(num, den).expect("nonzero denominator"))
    }

    pub fn mobius_numerator(&self, g: &Poly, weight: usize) -> Result<Poly> {
        g.mobius_numerator(self.beta, weight)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseOneKind {
    /// P is a Weierstrass point (including P = infinity): D = 2 C_P.
    Weierstrass,
    /// P is a rational non-Weierstrass point.
    RationalPoint,
    /// f(x0) is a non-square, so D(F_p) = {0_J}.
    IrrationalPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// beta factors as (a + b x1)(a + b x2); `point` is P = (-a/b, sqrt f(-a/b)).
    CaseI { a: Fe, b: Fe, point: CurvePoint, kind: CaseOneKind },
    /// Z splits into two curves isomorphic to C; `f = gamma * M`.
    CaseII { gamma: u64, sqrt_gamma: Fe },
    CaseIII,
}

impl CaseTag {
    pub fn label(&self) -> &'static str {
        match self {
            CaseTag::CaseI { .. } => "I",
            CaseTag::CaseII { .. } => "II",
            CaseTag::CaseIII => "III",
        }
    }
}

/// Classifies the form. Reducibility of Z is decided by proportionality of
/// `M = mobius_numerator(f, 8)` with `f`.
pub fn case_split(curve: &CurveModP, w: &WedgeForm) -> Result<CaseTag> {
    let k = curve.gf2();
    let p = curve.p();
    if w.is_case_one() {
        let (a, b, point) = if w.b12() != 0 {
            let b = k.sqrt(Fe::base(w.b12())).expect("every element of GF(p) is a square in GF(p^2)");
            let a = k.div(Fe::base(w.b02()), b)?;
            let x0 = Fe::base(w.pole().unwrap());
            let y0 = k.sqrt(curve.f_at(x0)).expect("square in GF(p^2)");
            (a, b, CurvePoint::affine(x0, y0))
        } else {
            let a = k.sqrt(Fe::base(w.b01())).expect("square in GF(p^2)");
            (a, Fe::ZERO, CurvePoint::Infinity)
        };
        let kind = match point {
            CurvePoint::Infinity => CaseOneKind::Weierstrass,
            CurvePoint::Affine { y, .. } if y.is_zero() => CaseOneKind::Weierstrass,
            CurvePoint::Affine { y, .. } if y.is_base() => CaseOneKind::RationalPoint,
            _ => CaseOneKind::IrrationalPoint,
        };
        return Ok(CaseTag::CaseI { a, b, point, kind });
    }
    let f = curve.f();
    let m = w.mobius_numerator(f, 8)?;
    if m.deg() == 7 {
        let gamma = mul_mod(f.lc(), inv_mod(m.lc(), p)?, p);
        if m.scale(gamma) == *f {
            if let Some(r) = w.pole() {
                let d = w.delta();
                let fp = f.derivative().eval(r);
                if fp == mul_mod(curve.a7(), pow_mod(d, 3, p), p) {
                    return Err(Error::EllipticObstruction { beta: w.beta() });
                }
            }
            let sqrt_gamma = k.sqrt(Fe::base(gamma)).expect("square in GF(p^2)");
            return Ok(CaseTag::CaseII { gamma, sqrt_gamma });
        }
    }
    Ok(CaseTag::CaseIII)
}

/// Independent reducibility test: does mu permute the x-coordinates of the
/// Weierstrass points (infinity included)? Checked by evaluating in
/// GF(p)[X]/(h) with h the finite part of the orbit.
pub fn permutes_weierstrass(curve: &CurveModP, w: &WedgeForm) -> bool {
    let p = curve.p();
    let f = curve.f();
    let h = match w.pole() {
        Some(r) => {
            if f.eval(r) != 0 {
                return false;
            }
            f.div_exact(&Poly::linear(p, r)).expect("r is a root")
        }
        None => f.clone(),
    };
    let num = Poly::new(p, vec![w.b01(), w.b02()]).neg();
    let den = Poly::new(p, vec![w.b02(), w.b12()]);
    let (g, s, _) = den.xgcd(&h);
    if g.deg() != 0 {
        return false;
    }
    let t = num.mul(&s).rem(&h).expect("h nonzero");
    let mut acc = Poly::zero(p);
    for &c in h.coeffs().iter().rev() {
        acc = acc.mul(&t).add(&Poly::constant(p, c)).rem(&h).expect("h nonzero");
    }
    acc.is_zero()
}

/// Singular-point and ramification data of Z for a non-Case-I form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZAnalysis {
    /// F = M - Delta^4 f.
    pub big_f: Poly,
    /// prod over xi in S of (x - xi): roots of f whose image under mu is
    /// again a root of f.
    pub s_poly: Poly,
    /// F / s_poly.
    pub g: Poly,
    pub eta: bool,
    pub diag: Poly,
    /// Roots of the diagonal quadratic in GF(p^2), each with the indicator
    /// that the diagonal point over it is F_p-rational.
    pub diag_roots: Vec<(Fe, bool)>,
    /// Singular points of Z with coordinates in GF(p^2) (ordered pairs).
    pub sing_z: Vec<(CurvePoint, CurvePoint)>,
    /// Number of singular points of Z over the algebraic closure.
    pub sing_z_count: usize,
}

pub fn z_analysis(curve: &CurveModP, w: &WedgeForm) -> Result<ZAnalysis> {
    if w.is_case_one() {
        return Err(Error::Internal("Z analysis needs a form outside case I".into()));
    }
    let p = curve.p();
    let k = curve.gf2();
    let f = curve.f();
    let m = w.mobius_numerator(f, 8)?;
    let d4 = pow_mod(w.delta(), 4, p);
    let big_f = m.sub(&f.scale(d4));
    let r = w.pole();
    let eta = r.map(|r| f.eval(r) == 0).unwrap_or(false);
    let mut s_poly = f.gcd(&m);
    if eta {
        s_poly = s_poly.div_exact(&Poly::linear(p, r.unwrap()))?;
    }
    let g = if big_f.is_zero() { big_f.clone() } else { big_f.div_exact(&s_poly)? };
    let diag = w.diag_quadratic();
    let diag_roots = diag
        .roots(k)?
        .into_iter()
        .map(|(xi, _)| {
            let fx = curve.f_at(xi);
            let rational = xi.is_base() && !fx.is_zero() && curve.gf1().is_square(fx);
            (xi, rational)
        })
        .collect();
    let mut sing_z = Vec::new();
    for (xi, _) in s_poly.roots(k)? {
        let image = w.mobius(curve, Some(xi)).expect("xi is not the pole");
        sing_z.push((CurvePoint::affine(xi, Fe::ZERO), CurvePoint::affine(image, Fe::ZERO)));
    }
    let mut sing_z_count = s_poly.deg() as usize;
    if w.b12() == 0 {
        sing_z.push((CurvePoint::Infinity, CurvePoint::Infinity));
        sing_z_count += 1;
    }
    if eta {
        let rp = CurvePoint::affine(Fe::base(r.unwrap()), Fe::ZERO);
        sing_z.push((rp, CurvePoint::Infinity));
        sing_z.push((CurvePoint::Infinity, rp));
        sing_z_count += 2;
    }
    sing_z.sort();
    Ok(ZAnalysis { big_f, s_poly, g, eta, diag, diag_roots, sing_z, sing_z_count })
}
