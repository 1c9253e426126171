//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use w2bound_core::curve::{CurveModP, CurvePoint};
use w2bound_core::field::{legendre, ExtField, Fe};
use w2bound_core::job::{JobFlags, JobSpec, KnownClass, Session};
use w2bound_core::picard::{add, class_of_pair, scalar_mul, DivisorClass};

pub const CURVE1: [i64; 8] = [64, -16, 1, 0, 0, 49, -14, 1];
pub const CURVE2: [i64; 8] = [10, 11, -3, 19, 5, 9, -7, 1];
pub const CURVE3: [i64; 8] = [0, -24, -80, -74, -20, -13, 0, 1];

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn mumford(u: &[&str], v: &[&str]) -> KnownClass {
    KnownClass::Mumford { u: strings(u), v: strings(v) }
}

pub fn job_case1() -> JobSpec {
    JobSpec {
        curve: CURVE1.to_vec(),
        p: 7,
        alpha: Some([[0, 1, 0], [0, 0, 1]]),
        beta: None,
        known_points: vec![KnownClass::Point { point: ["7".into(), "1".into()] }],
        flags: JobFlags::default(),
    }
}

pub fn job_case2() -> JobSpec {
    JobSpec {
        curve: CURVE2.to_vec(),
        p: 5,
        alpha: Some([[2, 3, 0], [3, 0, 3]]),
        beta: None,
        known_points: vec![mumford(&["1", "0", "1"], &["5"]), mumford(&["-5", "-3", "-2", "1"], &[])],
        flags: JobFlags::default(),
    }
}

pub fn job_case3() -> JobSpec {
    JobSpec {
        curve: CURVE3.to_vec(),
        p: 5,
        alpha: Some([[4, 3, 0], [4, 0, 3]]),
        beta: None,
        known_points: vec![
            mumford(&["25/9", "26/9", "1"], &["-7385/486", "-7045/486"]),
            mumford(&["4", "0", "1"], &[]),
            mumford(&["2", "4", "1"], &[]),
            mumford(&["-3", "-4", "1"], &[]),
        ],
        flags: JobFlags::default(),
    }
}

pub fn session(job: &JobSpec) -> Session {
    Session::from_job(job).expect("fixture job is valid")
}

/// A random monic septic with good reduction at p.
pub fn random_curve<R: Rng>(rng: &mut R, p: u64) -> CurveModP {
    loop {
        let mut c: Vec<i64> = (0..7).map(|_| rng.gen_range(0..p as i64)).collect();
        c.push(1);
        if let Ok(curve) = CurveModP::reduce(&c, p) {
            return curve;
        }
    }
}

/// #W2(F_p) from character sums alone: 0_J, the classes [P - inf], rational
/// pairs {P, Q} with Q != iota P, and conjugate pairs {P, Frob P} with
/// Frob P != iota P.
pub fn w2_count_oracle(curve: &CurveModP) -> u64 {
    let p = curve.p();
    let k2 = ExtField::new(p, 2).unwrap();
    let mut a1 = 0u64;
    let mut w = 0u64;
    let mut nonsquare = 0u64;
    for x in 0..p {
        let fx = curve.f().eval(x);
        match legendre(fx, p) {
            0 => {
                a1 += 1;
                w += 1;
            }
            1 => a1 += 2,
            _ => nonsquare += 1,
        }
    }
    let a2: u64 = k2
        .elements()
        .map(|x| match k2.chi(curve.f().eval_ext(&k2, x)) {
            0 => 1,
            1 => 2,
            _ => 0,
        })
        .sum();
    // Unordered pairs of affine rational points minus those swapped by iota
    // (a point with itself when Weierstrass, {P, iota P} otherwise).
    let rational_pairs = a1 * (a1 + 1) / 2 - w - (a1 - w) / 2;
    // Conjugate pairs: points of degree 2 up to Frobenius, minus those whose
    // conjugate is iota P, which happens exactly when f(x) is a non-square.
    let conjugate_pairs = (a2 - a1) / 2 - nonsquare;
    1 + a1 + rational_pairs + conjugate_pairs
}

/// A random element of J(F_p): a random combination of classes [P + Q - 2inf]
/// with P, Q rational or conjugate.
pub fn random_class<R: Rng>(rng: &mut R, curve: &CurveModP, pts1: &[CurvePoint], pts2: &[CurvePoint]) -> DivisorClass {
    let mut acc = DivisorClass::zero(curve.p());
    for _ in 0..3 {
        let g = if rng.gen_bool(0.5) {
            let a = &pts1[rng.gen_range(0..pts1.len())];
            let b = &pts1[rng.gen_range(0..pts1.len())];
            class_of_pair(curve, a, b).unwrap()
        } else {
            let a = &pts2[rng.gen_range(0..pts2.len())];
            class_of_pair(curve, a, &curve.frobenius(a)).unwrap()
        };
        acc = add(curve, &acc, &scalar_mul(curve, rng.gen_range(1..50), &g));
    }
    acc
}

/// #J(F_p) from the counts N1, N2, N3 alone: the first three power sums of
/// the Frobenius roots give L(T) by Newton's identities and the functional
/// equation; #J = L(1).
pub fn jacobian_order_oracle(curve: &CurveModP) -> u64 {
    let p = curve.p() as i64;
    let mut n = [0i64; 3];
    for (d, slot) in n.iter_mut().enumerate() {
        let k = ExtField::new(p as u64, d + 1).unwrap();
        let affine: i64 = k
            .elements()
            .map(|x| match k.chi(curve.f().eval_ext(&k, x)) {
                0 => 1,
                1 => 2,
                _ => 0,
            })
            .sum();
        *slot = affine + 1;
    }
    // s_i = sum alpha^i = q^i + 1 - N_i; e_i from Newton.
    let q = [p, p * p, p * p * p];
    let s: Vec<i64> = (0..3).map(|i| q[i] + 1 - n[i]).collect();
    let e1 = s[0];
    let e2 = (e1 * s[0] - s[1]) / 2;
    let e3 = (e2 * s[0] - e1 * s[1] + s[2]) / 3;
    // L(T) = 1 - e1 T + e2 T^2 - e3 T^3 + p e2 T^4 - p^2 e1 T^5 + p^3 T^6.
    let l1 = 1 - e1 + e2 - e3 + p * e2 - p * p * e1 + p * p * p;
    l1 as u64
}

pub fn fe(a: u64) -> Fe {
    Fe::base(a)
}

/// Roots of an integer polynomial in pZ_p with multiplicity, by walking the
/// residue tree: a simple root of the reduction lifts uniquely (Hensel), a
/// repeated one is refined until `depth` levels, where its multiplicity is
/// taken as is. The result is an upper bound on the true count.
pub fn tree_roots_in_pzp(coeffs: &[i128], p: i128, depth: u32) -> usize {
    if coeffs.iter().all(|&c| c == 0) {
        return usize::MAX;
    }
    // x = p z with z in Z_p.
    let scaled: Vec<i128> = coeffs.iter().enumerate().map(|(i, &c)| c.checked_mul(p.pow(i as u32)).unwrap()).collect();
    count_in_zp(&scaled, p, depth)
}

fn strip_content(c: &mut [i128], p: i128) {
    while c.iter().all(|&a| a % p == 0) {
        for a in c.iter_mut() {
            *a /= p;
        }
    }
}

/// Taylor shift `Q(r + p z)`.
fn shift(c: &[i128], r: i128, p: i128) -> Vec<i128> {
    let n = c.len();
    let mut out = c.to_vec();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            out[j] = out[j].checked_add(out[j + 1].checked_mul(r).unwrap()).unwrap();
        }
    }
    for (i, a) in out.iter_mut().enumerate() {
        *a = a.checked_mul(p.pow(i as u32)).unwrap();
    }
    out
}

fn residue_multiplicity(c: &[i128], r: i128, p: i128) -> usize {
    let mut cur: Vec<i128> = c.iter().map(|a| a.rem_euclid(p)).collect();
    let mut m = 0;
    loop {
        // Synthetic division by (z - r) mod p.
        let n = cur.len();
        if n == 0 || cur.iter().all(|&a| a == 0) {
            return m;
        }
        let mut q = vec![0i128; n.saturating_sub(1)];
        let mut acc = 0i128;
        for i in (0..n).rev() {
            acc = (acc * r + cur[i]).rem_euclid(p);
            if i > 0 {
                q[i - 1] = acc;
            }
        }
        if acc != 0 {
            return m;
        }
        m += 1;
        cur = q;
    }
}

fn count_in_zp(c: &[i128], p: i128, depth: u32) -> usize {
    let mut c = c.to_vec();
    strip_content(&mut c, p);
    let mut total = 0;
    for r in 0..p {
        let m = residue_multiplicity(&c, r, p);
        total += match m {
            0 => 0,
            1 => 1,
            _ if depth == 0 => m,
            _ => count_in_zp(&shift(&c, r, p), p, depth - 1),
        };
    }
    total
}
