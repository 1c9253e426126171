//! Dense univariate polynomials over GF(p), constant term first.

use crate::error::{Error, Result};
use crate::field::{add_mod, inv_mod, mul_mod, neg_mod, reduce_i64, sub_mod, ExtField, Fe};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    p: u64,
    c: Vec<u64>,
}

impl Poly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Poly {
        let mut c: Vec<u64> = coeffs.into_iter().map(|a| a % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, c }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Poly {
        Poly::new(p, coeffs.iter().map(|&a| reduce_i64(a, p)).collect())
    }

    pub fn zero(p: u64) -> Poly {
        Poly { p, c: Vec::new() }
    }

    pub fn constant(p: u64, a: u64) -> Poly {
        Poly::new(p, vec![a])
    }

    pub fn one(p: u64) -> Poly {
        Poly::constant(p, 1)
    }

    /// `x - a`.
    pub fn linear(p: u64, a: u64) -> Poly {
        Poly::new(p, vec![neg_mod(a % p, p), 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with -1 standing in for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new(self.p, (0..n).map(|i| add_mod(self.coeff(i), o.coeff(i), self.p)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new(self.p, (0..n).map(|i| sub_mod(self.coeff(i), o.coeff(i), self.p)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.p, self.c.iter().map(|&a| neg_mod(a, self.p)).collect())
    }

    pub fn scale(&self, k: u64) -> Poly {
        Poly::new(self.p, self.c.iter().map(|&a| mul_mod(a, k % self.p, self.p)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.p);
        }
        let p = self.p;
        let mut r = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = (r[i + j] + a * b) % p;
            }
        }
        Poly::new(p, r)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut r = Poly::one(self.p);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Poly { p: self.p, c }
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p;
        let dd = d.c.len() - 1;
        let inv = inv_mod(d.lc(), p)?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(p), self.clone()));
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k] * inv % p;
            q[k - dd] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[k - dd + j] = sub_mod(r[k - dd + j], c * b % p, p);
            }
        }
        r.truncate(dd);
        Ok((Poly::new(p, q), Poly::new(p, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.p).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(d, s, t)` with `d = s*self + t*o` and `d` monic (or zero).
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(p), Poly::zero(p));
        let (mut t0, mut t1) = (Poly::zero(p), Poly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.lc(), p).expect("nonzero leading coefficient");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Poly {
        let p = self.p;
        Poly::new(
            p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| a * (i as u64 % p) % p).collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        let x = x % p;
        self.c.iter().rev().fold(0, |acc, &a| (acc * x + a) % p)
    }

    pub fn eval_ext(&self, field: &ExtField, x: Fe) -> Fe {
        self.c
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &a| field.add(field.mul(acc, x), Fe::base(a)))
    }

    /// Resultant by the Euclidean recursion.
    pub fn resultant(&self, o: &Poly) -> u64 {
        let p = self.p;
        if self.is_zero() || o.is_zero() {
            return 0;
        }
        let (da, db) = (self.deg() as u64, o.deg() as u64);
        if db == 0 {
            return crate::field::pow_mod(o.lc(), da, p);
        }
        let r = self.rem(o).expect("nonzero divisor");
        if r.is_zero() {
            return 0;
        }
        let dr = r.deg() as u64;
        let sign = if da % 2 == 1 && db % 2 == 1 { p - 1 } else { 1 };
        let lead = crate::field::pow_mod(o.lc(), da - dr, p);
        mul_mod(mul_mod(sign, lead, p), o.resultant(&r), p)
    }

    /// Multiplicity of `a` as a root: 0 when `g(a) != 0`.
    pub fn ord_at(&self, field: &ExtField, a: Fe) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut c: Vec<Fe> = self.c.iter().map(|&x| Fe::base(x)).collect();
        let mut ord = 0;
        loop {
            // Synthetic division by (x - a); the final entry is the remainder.
            let n = c.len();
            let mut q = vec![Fe::ZERO; n];
            q[n - 1] = c[n - 1];
            for k in (0..n - 1).rev() {
                q[k] = field.add(c[k], field.mul(q[k + 1], a));
            }
            if !q[0].is_zero() || n == 1 {
                return Ok(ord);
            }
            ord += 1;
            c = q[1..].to_vec();
        }
    }

    /// Roots in `field` with multiplicity, ascending in canonical order.
    pub fn roots(&self, field: &ExtField) -> Result<Vec<(Fe, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        for x in field.elements() {
            if self.eval_ext(field, x).is_zero() {
                out.push((x, self.ord_at(field, x)?));
            }
        }
        Ok(out)
    }

    /// Degree-`w` homogenized substitution
    /// `sum g_i N(x)^i D(x)^(w-i)` with `N = -(b02 x + b01)`, `D = b12 x + b02`.
    pub fn mobius_numerator(&self, beta: [u64; 3], weight: usize) -> Result<Poly> {
        let p = self.p;
        let [b01, b02, b12] = beta.map(|b| b % p);
        if b12 == 0 && b02 == 0 {
            return Err(Error::InvalidMobius("b12 and b02 both vanish".into()));
        }
        if let Some(d) = self.degree() {
            if d > weight {
                return Err(Error::WeightTooSmall { weight, degree: d });
            }
        }
        let num = Poly::new(p, vec![b01, b02]).neg();
        let den = Poly::new(p, vec![b02, b12]);
        let Some(d) = self.degree() else {
            return Ok(Poly::zero(p));
        };
        // Homogeneous Horner: acc = (..(g_d N + g_{d-1} D) N + ..) + g_0 D^d.
        let mut acc = Poly::constant(p, self.c[d]);
        let mut dpow = Poly::one(p);
        for i in (0..d).rev() {
            dpow = dpow.mul(&den);
            acc = acc.mul(&num).add(&dpow.scale(self.c[i]));
        }
        let out = acc.mul(&den.pow((weight - d) as u32));
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.c.len()).rev() {
            let a = self.c[i];
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}
