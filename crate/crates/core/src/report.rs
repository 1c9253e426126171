//! The end-to-end run and its serializable report.

use crate::bound::{compute_bound, BoundReport};
use crate::curve::{CurveModP, CurvePoint};
use crate::dlocus::d_locus;
use crate::error::Result;
use crate::job::Session;
use crate::picard::{enumerate_w2, subgroup};
use crate::disks::{disk_verdicts, zero_disk_check, DiskVerdict};
use crate::wedge::{CaseOneKind, CaseTag};
use serde::Serialize;
use std::collections::BTreeMap;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum CaseReport {
    I { a: String, b: String, point: String, kind: CaseOneKind },
    II { gamma: u64, sqrt_gamma: String },
    III,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZReport {
    #[serde(rename = "F")]
    pub big_f: String,
    #[serde(rename = "S")]
    pub s_poly: String,
    #[serde(rename = "G")]
    pub g: String,
    pub eta: bool,
    pub diag_quadratic: String,
    pub sing_z_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiskReport {
    pub verdicts: BTreeMap<String, String>,
    /// For each rational point P: whether the pair (P, iota P) is alone in
    /// the disk of 0_J.
    pub zero_disk: BTreeMap<String, bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownReport {
    pub generators: Vec<String>,
    pub subgroup_size: usize,
    pub w2_intersection: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub curve: String,
    pub beta: [u64; 3],
    pub alpha: [[u64; 3]; 2],
    pub case: CaseReport,
    pub jacobian_order: u64,
    pub l_polynomial: [i64; 7],
    #[serde(flatten)]
    pub bound: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<ZReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disk_checks: Option<DiskReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub known: Option<KnownReport>,
}

pub fn fmt_point(curve: &CurveModP, pt: &CurvePoint) -> String {
    match pt {
        CurvePoint::Infinity => "inf".to_string(),
        CurvePoint::Affine { x, y } => format!("({},{})", curve.gf2().fmt_elem(*x), curve.gf2().fmt_elem(*y)),
    }
}

pub fn run(session: &Session) -> Result<Report> {
    let curve = &session.curve;
    let k = curve.gf2();
    let zeta = curve.zeta()?;
    let w2 = enumerate_w2(curve)?;
    let d = d_locus(curve, &session.wedge)?;
    let bound = compute_bound(curve, &w2, &d)?;
    let case = match &d.case {
        CaseTag::CaseI { a, b, point, kind } => CaseReport::I {
            a: k.fmt_elem(*a),
            b: k.fmt_elem(*b),
            point: fmt_point(curve, point),
            kind: *kind,
        },
        CaseTag::CaseII { gamma, sqrt_gamma } => CaseReport::II { gamma: *gamma, sqrt_gamma: k.fmt_elem(*sqrt_gamma) },
        CaseTag::CaseIII => CaseReport::III,
    };
    let z = d.z.as_ref().map(|za| ZReport {
        big_f: za.big_f.to_string(),
        s_poly: za.s_poly.to_string(),
        g: za.g.to_string(),
        eta: za.eta,
        diag_quadratic: za.diag.to_string(),
        sing_z_count: za.sing_z_count,
    });
    let disk_checks = if session.flags.disk_checks {
        let verdicts = disk_verdicts(curve, &w2, &session.ann)?
            .into_iter()
            .map(|(key, v)| {
                let label = match v {
                    DiskVerdict::ZeroDisk => "zero_disk",
                    DiskVerdict::AtMostOne => "at_most_one",
                    DiskVerdict::Vanishes => "vanishes",
                };
                (key, label.to_string())
            })
            .collect();
        let mut zero_disk = BTreeMap::new();
        for pt in curve.points(1)? {
            zero_disk.insert(fmt_point(curve, &pt), zero_disk_check(curve, &pt, &session.ann)?);
        }
        Some(DiskReport { verdicts, zero_disk })
    } else {
        None
    };
    let known = if session.known.is_empty() {
        None
    } else {
        let h = subgroup(curve, &session.known, zeta.jacobian_order as usize)?;
        Some(KnownReport {
            generators: session.known.iter().map(|g| g.key()).collect(),
            subgroup_size: h.len(),
            w2_intersection: h.iter().filter(|x| w2.contains(x)).map(|x| x.key()).collect(),
        })
    };
    Ok(Report {
        schema: SCHEMA,
        curve: curve.f().to_string(),
        beta: session.wedge.beta(),
        alpha: session.ann.alpha(),
        case,
        jacobian_order: zeta.jacobian_order,
        l_polynomial: zeta.l_poly,
        bound,
        z,
        disk_checks,
        known,
    })
}
