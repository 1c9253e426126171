//! Job descriptions: the curve, the prime, the annihilating differentials
//! and optionally known rational divisor classes.

use crate::curve::{CurveModP, CurvePoint};
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::picard::{class_of_pair, DivisorClass};
use crate::poly::Poly;
use crate::disks::AnnihilatorModP;
use crate::wedge::WedgeForm;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    /// Integral coefficients of f, constant term first (8 entries).
    pub curve: Vec<i64>,
    pub p: u64,
    /// Two annihilating differentials `(a0 + a1 x + a2 x^2) dx/y`, mod p.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<[[i64; 3]; 2]>,
    /// Wedge coordinates `(b01, b02, b12)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<[i64; 3]>,
    /// Rational divisor classes known to lie in J(Q).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub known_points: Vec<KnownClass>,
    #[serde(default)]
    pub flags: JobFlags,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFlags {
    /// Run the determinant criterion on every class of W2(F_p).
    #[serde(default = "yes")]
    pub disk_checks: bool,
}

fn yes() -> bool {
    true
}

impl Default for JobFlags {
    fn default() -> Self {
        JobFlags { disk_checks: true }
    }
}

/// A class over Q: either `[P - inf]` for an affine point, or a Mumford
/// pair with rational coefficients (constant term first, `u` monic).
/// Rationals are written as `"a"` or `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KnownClass {
    Point { point: [String; 2] },
    Mumford { u: Vec<String>, v: Vec<String> },
}

fn reduce_rational(s: &str, p: u64) -> Result<u64> {
    let r: Ratio<i64> = s.trim().parse().map_err(|_| Error::Malformed(format!("not a rational number: {s:?}")))?;
    let den = r.denom().rem_euclid(p as i64) as u64;
    if den == 0 {
        return Err(Error::Malformed(format!("{s} has p in its denominator")));
    }
    let num = r.numer().rem_euclid(p as i64) as u64;
    Ok(num * crate::field::inv_mod(den, p)? % p)
}

impl KnownClass {
    pub fn reduce(&self, curve: &CurveModP) -> Result<DivisorClass> {
        let p = curve.p();
        match self {
            KnownClass::Point { point } => {
                let x = reduce_rational(&point[0], p)?;
                let y = reduce_rational(&point[1], p)?;
                let pt = CurvePoint::affine(Fe::base(x), Fe::base(y));
                if !curve.contains(&pt) {
                    return Err(Error::Malformed(format!("({}, {}) does not reduce to a point", point[0], point[1])));
                }
                class_of_pair(curve, &pt, &CurvePoint::Infinity)
            }
            KnownClass::Mumford { u, v } => {
                let parse = |c: &[String]| -> Result<Poly> {
                    Ok(Poly::new(p, c.iter().map(|s| reduce_rational(s, p)).collect::<Result<_>>()?))
                };
                let (u, v) = (parse(u)?, parse(v)?);
                if !u.is_monic() {
                    return Err(Error::Malformed(format!("u = {u} is not monic mod p")));
                }
                DivisorClass::new(curve, u, v)
            }
        }
    }
}

impl JobSpec {
    pub fn validate(&self) -> Result<()> {
        if self.curve.len() != 8 {
            return Err(Error::Malformed(format!("curve needs 8 coefficients, got {}", self.curve.len())));
        }
        match (&self.alpha, &self.beta) {
            (Some(_), Some(_)) => Err(Error::Malformed("give alpha or beta, not both".into())),
            (None, None) => Err(Error::Malformed("one of alpha or beta is required".into())),
            _ => Ok(()),
        }
    }
}

/// Everything a run needs, reduced mod p.
#[derive(Clone, Debug)]
pub struct Session {
    pub curve: CurveModP,
    pub wedge: WedgeForm,
    pub ann: AnnihilatorModP,
    pub known: Vec<DivisorClass>,
    pub flags: JobFlags,
}

impl Session {
    pub fn from_job(job: &JobSpec) -> Result<Session> {
        job.validate()?;
        let curve = CurveModP::reduce(&job.curve, job.p)?;
        let (wedge, ann) = match (&job.alpha, &job.beta) {
            (Some([a1, a2]), None) => {
                let ann = AnnihilatorModP::new(*a1, *a2, job.p)?;
                (ann.wedge()?, ann)
            }
            (None, Some(b)) => {
                let w = WedgeForm::new(*b, job.p)?;
                (w, AnnihilatorModP::from_wedge(&w))
            }
            _ => unreachable!("validated"),
        };
        let known = job.known_points.iter().map(|k| k.reduce(&curve)).collect::<Result<_>>()?;
        Ok(Session { curve, wedge, ann, known, flags: job.flags.clone() })
    }
}
