//! Newton polygons of truncated p-adic power series with integral
//! coefficients, and the resulting bound on zeros in pZ_p.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One coefficient `p^valuation * unit + O(p^precision)`.
///
/// `valuation = None` means the coefficient vanishes to the stated
/// precision; with `precision = None` as well it is exactly zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(Option<u32>, u64, Option<u32>)", into = "(Option<u32>, u64, Option<u32>)")]
pub struct Coefficient {
    pub valuation: Option<u32>,
    pub unit: u64,
    pub precision: Option<u32>,
}

impl From<(Option<u32>, u64, Option<u32>)> for Coefficient {
    fn from((valuation, unit, precision): (Option<u32>, u64, Option<u32>)) -> Self {
        Coefficient { valuation, unit, precision }
    }
}

impl From<Coefficient> for (Option<u32>, u64, Option<u32>) {
    fn from(c: Coefficient) -> Self {
        (c.valuation, c.unit, c.precision)
    }
}

impl Coefficient {
    pub fn exact(valuation: u32, unit: u64) -> Coefficient {
        Coefficient { valuation: Some(valuation), unit, precision: None }
    }

    pub fn zero() -> Coefficient {
        Coefficient { valuation: None, unit: 0, precision: None }
    }

    pub fn known(valuation: u32, unit: u64, precision: u32) -> Coefficient {
        Coefficient { valuation: Some(valuation), unit, precision: Some(precision) }
    }

    pub fn unknown(precision: u32) -> Coefficient {
        Coefficient { valuation: None, unit: 0, precision: Some(precision) }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.valuation.is_none() && self.precision.is_none()
    }

    /// Valuation is not pinned down: the coefficient is zero mod p^precision.
    pub fn is_indeterminate(&self) -> bool {
        self.valuation.is_none() && self.precision.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    pub p: u64,
    pub coeffs: Vec<Coefficient>,
}

impl TruncatedSeries {
    pub fn new(p: u64, coeffs: Vec<Coefficient>) -> Result<TruncatedSeries> {
        let s = TruncatedSeries { p, coeffs };
        s.validate()?;
        Ok(s)
    }

    /// Exact integer coefficients, constant term first.
    pub fn from_integers(p: u64, coeffs: &[i128]) -> TruncatedSeries {
        let coeffs = coeffs
            .iter()
            .map(|&c| {
                if c == 0 {
                    return Coefficient::zero();
                }
                let mut v = 0;
                let mut c = c;
                while c % p as i128 == 0 {
                    c /= p as i128;
                    v += 1;
                }
                Coefficient::exact(v, c.rem_euclid(p as i128) as u64)
            })
            .collect();
        TruncatedSeries { p, coeffs }
    }

    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.coeffs.iter().enumerate() {
            if let Some(v) = c.valuation {
                if c.unit % self.p == 0 {
                    return Err(Error::Malformed(format!("coefficient {i}: unit {} is divisible by p", c.unit)));
                }
                if c.precision.is_some_and(|prec| v >= prec) {
                    return Err(Error::Malformed(format!("coefficient {i}: valuation {v} is not below its precision")));
                }
            }
        }
        Ok(())
    }
}

/// A segment of the lower convex hull of the points `(i, v(c_i))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    /// Slope as a reduced fraction `num/den` with `den > 0`.
    pub slope_num: i64,
    pub slope_den: i64,
    /// False when an imprecise coefficient could lie on or below it.
    pub determinate: bool,
}

impl Segment {
    pub fn length(&self) -> usize {
        self.end - self.start
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Lower convex hull of the known coefficients with index at most
/// `max_index`, starting from the first nonzero coefficient.
pub fn newton_polygon(s: &TruncatedSeries, max_index: usize) -> Vec<Segment> {
    let pts: Vec<(i64, i64)> = s
        .coeffs
        .iter()
        .enumerate()
        .take(max_index + 1)
        .filter_map(|(i, c)| c.valuation.map(|v| (i as i64, v as i64)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Drop b when it lies on or above the chord from a to pt.
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let loose: Vec<(i64, i64)> = s
        .coeffs
        .iter()
        .enumerate()
        .take(max_index + 1)
        .filter(|(_, c)| c.is_indeterminate())
        .map(|(i, c)| (i as i64, c.precision.unwrap() as i64))
        .collect();
    hull.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let (num, den) = (b.1 - a.1, b.0 - a.0);
            let g = gcd(num, den);
            let determinate = !loose.iter().any(|&(i, lb)| {
                i > a.0 && i < b.0 && (lb - a.1) * den <= num * (i - a.0)
            });
            Segment {
                start: a.0 as usize,
                end: b.0 as usize,
                slope_num: num / g,
                slope_den: den / g,
                determinate,
            }
        })
        .collect()
}

/// Upper bound on the zeros in pZ_p (with multiplicity) of a series with
/// integral coefficients: the largest index n up to the first unit
/// coefficient for which `v(c_n) + n` can attain its minimum. Equivalently,
/// the total length of Newton polygon segments of slope at most -1, plus the
/// leading zero coefficients.
pub fn roots_in_pzp_upper(s: &TruncatedSeries) -> Result<usize> {
    s.validate()?;
    let n_unit = s
        .coeffs
        .iter()
        .position(|c| c.valuation == Some(0))
        .ok_or_else(|| Error::Inconclusive("no unit coefficient within precision".into()))?;
    let head = &s.coeffs[..=n_unit];
    let best = head
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation.map(|v| v as usize + i))
        .min()
        .expect("the unit coefficient is known");
    let bound = head
        .iter()
        .enumerate()
        .filter(|(i, c)| match (c.valuation, c.precision) {
            (Some(v), _) => v as usize + i <= best,
            (None, Some(prec)) => prec as usize + i <= best,
            (None, None) => false,
        })
        .map(|(i, _)| i)
        .max()
        .expect("the minimizing index qualifies");
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case1_curve_h_series() {
        let s = TruncatedSeries::new(
            7,
            vec![Coefficient::zero(), Coefficient::known(1, 5, 3), Coefficient::known(0, 2, 3), Coefficient::known(0, 1, 3)],
        )
        .unwrap();
        assert_eq!(roots_in_pzp_upper(&s).unwrap(), 2);
    }

    #[test]
    fn case1_curve_g_series() {
        let s = TruncatedSeries::new(
            7,
            vec![Coefficient::zero(), Coefficient::known(2, 1, 3), Coefficient::known(2, 4, 3), Coefficient::known(0, 6, 3)],
        )
        .unwrap();
        assert_eq!(roots_in_pzp_upper(&s).unwrap(), 3);
        let np = newton_polygon(&s, 3);
        assert_eq!(np.len(), 1);
        assert_eq!((np[0].slope_num, np[0].slope_den, np[0].length()), (-1, 1, 2));
    }

    #[test]
    fn no_unit_is_inconclusive() {
        let s = TruncatedSeries::new(5, vec![Coefficient::known(1, 1, 4), Coefficient::unknown(4)]).unwrap();
        assert!(matches!(roots_in_pzp_upper(&s), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn imprecise_coefficient_flags_segment() {
        let s = TruncatedSeries::new(
            5,
            vec![Coefficient::exact(4, 1), Coefficient::unknown(2), Coefficient::exact(0, 1)],
        )
        .unwrap();
        let np = newton_polygon(&s, 2);
        assert_eq!(np.len(), 1);
        assert!(!np[0].determinate);
        assert_eq!(roots_in_pzp_upper(&s).unwrap(), 2);
    }

    #[test]
    fn triples_round_trip_through_json() {
        let s = TruncatedSeries::new(7, vec![Coefficient::known(1, 5, 3), Coefficient::zero()]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"p":7,"coeffs":[[1,5,3],[null,0,null]]}"#);
        assert_eq!(serde_json::from_str::<TruncatedSeries>(&text).unwrap(), s);
    }
}
