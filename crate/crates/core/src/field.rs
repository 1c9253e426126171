//! Prime fields and their extensions of degree 2 and 3.
//!
//! Elements of GF(p^d) are stored as coefficient triples `[c0, c1, c2]` in
//! the power basis of a fixed generator, with unused slots zero. An element
//! of GF(p) embeds as `[a, 0, 0]`, so base values compare and hash the same
//! way in every extension.

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// Largest supported characteristic; keeps every product inside a `u64`.
pub const MAX_PRIME: u64 = 1 << 16;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rejects anything that is not a prime in `[5, MAX_PRIME)`.
pub fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::PrimeTooSmall(p));
    }
    if p >= MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    Ok(())
}

pub fn reduce_i64(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn neg_mod(a: u64, p: u64) -> u64 {
    (p - a) % p
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> Result<u64> {
    if a.is_multiple_of(p) {
        return Err(Error::DivisionByZero);
    }
    Ok(pow_mod(a, p - 2, p))
}

/// Legendre symbol as -1, 0 or 1.
pub fn legendre(a: u64, p: u64) -> i64 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// An element of GF(p^d), `d <= 3`, in the power basis of the field generator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fe(pub [u64; 3]);

impl Fe {
    pub const ZERO: Fe = Fe([0, 0, 0]);

    pub fn base(a: u64) -> Fe {
        Fe([a, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn is_base(&self) -> bool {
        self.0[1] == 0 && self.0[2] == 0
    }

    pub fn base_value(&self) -> Option<u64> {
        self.is_base().then_some(self.0[0])
    }
}

/// GF(p^d) for `d` in 1..=3 with a deterministic defining polynomial:
/// `s^2 - n` for the smallest non-residue `n`, and `s^3 - m` for the smallest
/// non-cube `m`, falling back to the first irreducible `s^3 + a s + b` in
/// lexicographic order of `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    p: u64,
    degree: usize,
    /// Low coefficients of the monic defining polynomial.
    modulus: [u64; 3],
    order: u64,
}

impl ExtField {
    pub fn new(p: u64, degree: usize) -> Result<ExtField> {
        check_prime(p)?;
        let modulus = match degree {
            1 => [0, 0, 0],
            2 => {
                let n = (2..p).find(|&n| legendre(n, p) == -1).expect("non-residue");
                [neg_mod(n, p), 0, 0]
            }
            3 => Self::cubic_modulus(p),
            d => return Err(Error::UnsupportedDegree(d)),
        };
        Ok(ExtField { p, degree, modulus, order: p.pow(degree as u32) })
    }

    fn cubic_modulus(p: u64) -> [u64; 3] {
        let has_root = |a: u64, b: u64| {
            (0..p).any(|x| (x * x % p * x + a * x + b).is_multiple_of(p))
        };
        for m in 1..p {
            let b = neg_mod(m, p);
            if !has_root(0, b) {
                return [b, 0, 0];
            }
        }
        for a in 1..p {
            for b in 0..p {
                if !has_root(a, b) {
                    return [b, a, 0];
                }
            }
        }
        unreachable!("an irreducible cubic exists over every prime field")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Defining polynomial, constant term first and monic.
    pub fn defining_poly(&self) -> Vec<u64> {
        let mut c = self.modulus[..self.degree].to_vec();
        c.push(1);
        c
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::base(1)
    }

    pub fn from_base(&self, a: u64) -> Fe {
        Fe::base(a % self.p)
    }

    pub fn from_i64(&self, a: i64) -> Fe {
        Fe::base(reduce_i64(a, self.p))
    }

    /// The generator `s` of the extension (for `d = 1` this is just 0).
    pub fn generator(&self) -> Fe {
        if self.degree == 1 {
            Fe::ZERO
        } else {
            Fe([0, 1, 0])
        }
    }

    /// The `i`-th element in canonical order: `i = c0 + c1 p + c2 p^2`.
    pub fn element(&self, i: u64) -> Fe {
        let p = self.p;
        Fe([i % p, (i / p) % p, (i / (p * p)) % p])
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p;
        Fe([(a.0[0] + b.0[0]) % p, (a.0[1] + b.0[1]) % p, (a.0[2] + b.0[2]) % p])
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.p;
        Fe([neg_mod(a.0[0], p), neg_mod(a.0[1], p), neg_mod(a.0[2], p)])
    }

    pub fn scale(&self, a: Fe, k: u64) -> Fe {
        let p = self.p;
        let k = k % p;
        Fe([a.0[0] * k % p, a.0[1] * k % p, a.0[2] * k % p])
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p;
        let d = self.degree;
        let mut prod = [0u64; 5];
        for i in 0..d {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + a.0[i] * b.0[j]) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..d {
                let t = c * self.modulus[i] % p;
                prod[k - d + i] = sub_mod(prod[k - d + i], t, p);
            }
        }
        Fe([prod[0], prod[1], prod[2]])
    }

    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut r = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.square(b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p)
    }

    /// Quadratic character: -1, 0 or 1.
    pub fn chi(&self, a: Fe) -> i64 {
        if a.is_zero() {
            return 0;
        }
        if self.pow(a, (self.order - 1) / 2) == self.one() {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, a: Fe) -> bool {
        self.chi(a) >= 0
    }

    /// Square root by Tonelli-Shanks, normalized to the smaller of `r` and
    /// `-r` in canonical order. `None` when `a` is not a square.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(Fe::ZERO);
        }
        if self.chi(a) != 1 {
            return None;
        }
        let q = self.order;
        let mut s = 0;
        let mut t = q - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z = self.elements().find(|&z| self.chi(z) == -1).expect("non-residue");
        let mut m = s;
        let mut c = self.pow(z, t);
        let mut x = self.pow(a, t.div_ceil(2));
        let mut b = self.pow(a, t);
        let one = self.one();
        while b != one {
            let mut i = 0;
            let mut bb = b;
            while bb != one {
                bb = self.square(bb);
                i += 1;
            }
            let mut g = c;
            for _ in 0..(m - i - 1) {
                g = self.square(g);
            }
            x = self.mul(x, g);
            c = self.square(g);
            b = self.mul(b, c);
            m = i;
        }
        let nx = self.neg(x);
        Some(x.min(nx))
    }

    pub fn fmt_elem(&self, a: Fe) -> String {
        FeDisplay { field: self, value: a }.to_string()
    }
}

struct FeDisplay<'a> {
    field: &'a ExtField,
    value: Fe,
}

impl fmt::Display for FeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.value.0;
        if self.value.is_base() {
            return write!(f, "{}", c[0]);
        }
        let mut parts = Vec::new();
        for i in (0..self.field.degree).rev() {
            if c[i] == 0 {
                continue;
            }
            parts.push(match (i, c[i]) {
                (0, k) => k.to_string(),
                (1, 1) => "s".to_string(),
                (1, k) => format!("{k}s"),
                (_, 1) => format!("s^{i}"),
                (_, k) => format!("{k}s^{i}"),
            });
        }
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf5_quadratic_uses_smallest_nonresidue() {
        let f = ExtField::new(5, 2).unwrap();
        assert_eq!(f.defining_poly(), vec![3, 0, 1]);
        let s = f.generator();
        assert_eq!(f.square(s), f.from_base(2));
    }

    #[test]
    fn cubic_modulus_is_irreducible() {
        for p in [5u64, 7, 11, 13, 31] {
            let f = ExtField::new(p, 3).unwrap();
            let m = f.defining_poly();
            for x in 0..p {
                let v = (x * x % p * x + m[2] * x % p * x + m[1] * x + m[0]) % p;
                assert_ne!(v, 0, "p = {p} root {x}");
            }
        }
    }

    #[test]
    fn sqrt_of_three_in_gf25_by_search() {
        let f = ExtField::new(5, 2).unwrap();
        let a = f.from_base(3);
        let r = f.sqrt(a).unwrap();
        let roots: Vec<Fe> = f.elements().filter(|&x| f.square(x) == a).collect();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&r));
        assert_eq!(r, *roots.iter().min().unwrap());
    }

    #[test]
    fn nonsquare_has_no_root() {
        let f = ExtField::new(7, 1).unwrap();
        assert_eq!(f.sqrt(f.from_base(3)), None);
        assert_eq!(f.sqrt(f.from_base(2)), Some(f.from_base(3)));
    }

    #[test]
    fn inverse_round_trip_in_gf343() {
        let f = ExtField::new(7, 3).unwrap();
        for x in f.elements().skip(1) {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
    }

    #[test]
    fn frobenius_fixes_base_field_only() {
        let f = ExtField::new(5, 2).unwrap();
        let fixed = f.elements().filter(|&x| f.frobenius(x) == x).count();
        assert_eq!(fixed, 5);
    }

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(check_prime(9), Err(Error::NotPrime(9)));
        assert_eq!(check_prime(3), Err(Error::PrimeTooSmall(3)));
        assert!(check_prime(65537).is_err());
    }
}
