//! Finite residue fields F_q (q = p^f) and their quadratic extensions.
//!
//! The modulus polynomial is chosen deterministically: the monic irreducible
//! of degree f over ℤ/p whose non-leading coefficient vector (c_0, …, c_{f−1})
//! encodes to the smallest integer Σ c_i p^i.  A fixed generator of the cyclic
//! group F_q^× (the element of full order with smallest encoding) is stored
//! together with a discrete-log table, so roots of unity can be matched with
//! complex roots of unity reproducibly.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// An element of F_{p^f}: coefficients (c_0, …, c_{f−1}) in ℤ/p of the class
/// of c_0 + c_1 x + … modulo the field's fixed irreducible polynomial.
pub type ResidueElt = Vec<u64>;

/// F_{p^f} with fixed modulus, generator and dlog table.
#[derive(Debug)]
pub struct ResidueField {
    pub p: u64,
    pub f: usize,
    pub q: u64,
    /// Non-leading coefficients of the monic degree-f modulus.
    pub modulus: Vec<u64>,
    /// Fixed generator of F_q^×.
    pub generator: ResidueElt,
    /// dlog[encode(x)] = k with generator^k = x, for x ≠ 0.
    dlog: Vec<Option<u32>>,
}

impl PartialEq for ResidueField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f
    }
}

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    // modulus holds the non-leading coefficients of a monic degree-f poly.
    let f = modulus.len();
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // Reduce: x^f ≡ −(c_0 + … + c_{f−1} x^{f−1}).
    for k in (f..prod.len()).rev() {
        let coef = prod[k];
        if coef == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &mi) in modulus.iter().enumerate() {
            let sub = (coef * mi) % p;
            prod[k - f + i] = (prod[k - f + i] + p * p - sub) % p % p;
        }
    }
    prod.truncate(f.max(1));
    prod.resize(f.max(1), 0);
    prod
}

fn poly_pow_mod(base: &[u64], mut e: u128, modulus: &[u64], p: u64) -> Vec<u64> {
    let f = modulus.len().max(1);
    let mut result = vec![0u64; f];
    result[0] = 1;
    let mut b = base.to_vec();
    b.resize(f, 0);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        e >>= 1;
    }
    result
}

/// gcd of dense polynomials over ℤ/p (used by the irreducibility test).
fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    poly_trim(&mut a);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    let db = bb.len() - 1;
    let lead_inv = mod_inv(bb[db], p);
    while a.len() > db && !(a.len() == 1 && a[0] == 0) {
        let da = a.len() - 1;
        let c = (a[da] * lead_inv) % p;
        if c != 0 {
            for i in 0..=db {
                let t = (c * bb[i]) % p;
                a[da - db + i] = (a[da - db + i] + p - t) % p;
            }
        }
        poly_trim(&mut a);
        if a.len() - 1 < db || (a.len() == 1 && a[0] == 0) {
            break;
        }
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a ≠ 0 mod p.
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
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

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let f = modulus.len();
    // Full poly for gcd computations: c_0 + … + c_{f−1} x^{f−1} + x^f.
    let mut full = modulus.to_vec();
    full.push(1);
    let x = {
        let mut v = vec![0u64; f.max(2)];
        if f >= 2 {
            v[1] = 1;
        } else {
            // f = 1: x reduces to the constant −c_0.
            v = vec![(p - modulus[0] % p) % p, 0];
            v.truncate(1);
        }
        v
    };
    if f == 1 {
        return true; // every monic linear polynomial is irreducible
    }
    // x^{p^f} ≡ x (mod modulus)
    let xpf = poly_pow_mod(&x, (p as u128).pow(f as u32), modulus, p);
    let mut xv = vec![0u64; f];
    xv[1] = 1;
    if xpf != xv {
        return false;
    }
    // gcd(x^{p^{f/ℓ}} − x, modulus) = 1 for each prime ℓ | f
    for l in prime_divisors(f as u64) {
        let e = (p as u128).pow((f as u64 / l) as u32);
        let mut diff = poly_pow_mod(&x, e, modulus, p);
        // subtract x
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(&full, &diff, p);
        if !(g.len() == 1 && g[0] != 0) {
            return false;
        }
    }
    true
}

impl ResidueField {
    pub fn new(p: u64, f: usize) -> Result<Arc<ResidueField>> {
        if !is_prime(p) || p == 2 {
            return Err(Error::InvalidConfig(format!(
                "residue characteristic must be an odd prime, got {p}"
            )));
        }
        if f == 0 || (p as f64).powi(f as i32) > 1_000_000.0 {
            return Err(Error::InvalidConfig(format!(
                "residue field F_{{{p}^{f}}} out of supported range"
            )));
        }
        let q = p.pow(f as u32);
        // Smallest-encoding monic irreducible of degree f.
        let mut modulus = None;
        for enc in 0..q {
            let mut coeffs = Vec::with_capacity(f);
            let mut e = enc;
            for _ in 0..f {
                coeffs.push(e % p);
                e /= p;
            }
            if is_irreducible(&coeffs, p) {
                modulus = Some(coeffs);
                break;
            }
        }
        let modulus = modulus.ok_or_else(|| {
            Error::InvalidConfig(format!("no irreducible modulus found for p={p}, f={f}"))
        })?;

        let mut field = ResidueField {
            p,
            f,
            q,
            modulus,
            generator: vec![0; f],
            dlog: Vec::new(),
        };
        // Smallest-encoding generator of F_q^×.
        let divisors = prime_divisors(q - 1);
        'search: for enc in 1..q {
            let cand = field.decode(enc);
            for &l in &divisors {
                if field.pow(&cand, ((q - 1) / l) as i64) == field.one() {
                    continue 'search;
                }
            }
            field.generator = cand;
            break;
        }
        // dlog table
        let mut dlog = vec![None; q as usize];
        let mut cur = field.one();
        for k in 0..(q - 1) {
            dlog[field.encode(&cur) as usize] = Some(k as u32);
            cur = field.mul(&cur, &field.generator);
        }
        field.dlog = dlog;
        Ok(Arc::new(field))
    }

    pub fn zero(&self) -> ResidueElt {
        vec![0; self.f]
    }

    pub fn one(&self) -> ResidueElt {
        let mut v = vec![0; self.f];
        v[0] = 1;
        v
    }

    pub fn from_u64(&self, n: u64) -> ResidueElt {
        let mut v = vec![0; self.f];
        v[0] = n % self.p;
        v
    }

    pub fn is_zero(&self, a: &ResidueElt) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn encode(&self, a: &ResidueElt) -> u64 {
        let mut e = 0u64;
        for &c in a.iter().rev() {
            e = e * self.p + c;
        }
        e
    }

    pub fn decode(&self, mut enc: u64) -> ResidueElt {
        let mut v = Vec::with_capacity(self.f);
        for _ in 0..self.f {
            v.push(enc % self.p);
            enc /= self.p;
        }
        v
    }

    pub fn add(&self, a: &ResidueElt, b: &ResidueElt) -> ResidueElt {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &ResidueElt, b: &ResidueElt) -> ResidueElt {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect()
    }

    pub fn neg(&self, a: &ResidueElt) -> ResidueElt {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn scalar_mul(&self, c: u64, a: &ResidueElt) -> ResidueElt {
        a.iter().map(|&x| (c % self.p) * x % self.p).collect()
    }

    pub fn mul(&self, a: &ResidueElt, b: &ResidueElt) -> ResidueElt {
        poly_mul_mod(a, b, &self.modulus, self.p)
    }

    pub fn pow(&self, a: &ResidueElt, k: i64) -> ResidueElt {
        let e = k.rem_euclid(self.q as i64 - 1) as u128;
        if self.is_zero(a) {
            return self.zero();
        }
        poly_pow_mod(a, e, &self.modulus, self.p)
    }

    pub fn inv(&self, a: &ResidueElt) -> Result<ResidueElt> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as i64 - 2))
    }

    /// Discrete log with respect to the stored generator.
    pub fn dlog(&self, a: &ResidueElt) -> Result<i64> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.dlog[self.encode(a) as usize].expect("dlog table covers all nonzero elements")
            as i64)
    }

    /// Frobenius x ↦ x^p.
    pub fn frobenius(&self, a: &ResidueElt) -> ResidueElt {
        self.pow(a, self.p as i64)
    }

    /// Absolute trace Tr_{F_q / F_p} as an element of ℤ/p.
    pub fn trace_to_prime(&self, a: &ResidueElt) -> u64 {
        let mut acc = self.zero();
        let mut cur = a.clone();
        for _ in 0..self.f {
            acc = self.add(&acc, &cur);
            cur = self.frobenius(&cur);
        }
        debug_assert!(acc[1..].iter().all(|&c| c == 0), "trace lands in ℤ/p");
        acc[0]
    }

    /// Iterator over all field elements in encoding order.
    pub fn all_elements(&self) -> impl Iterator<Item = ResidueElt> + '_ {
        (0..self.q).map(|e| self.decode(e))
    }
}

/// Serializable descriptor (p, f) from which a `ResidueField` is rebuilt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueDesc {
    pub p: u64,
    pub f: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_basics() {
        let k = ResidueField::new(3, 1).unwrap();
        // F₃: 2+2 → 1
        assert_eq!(k.add(&k.from_u64(2), &k.from_u64(2)), k.from_u64(1));
        assert_eq!(k.generator, k.from_u64(2));
        assert_eq!(k.pow(&k.generator, 2), k.one());
    }

    #[test]
    fn f9_modulus_is_x2_plus_1() {
        // Lexicographically smallest monic irreducible of degree 2 over ℤ/3.
        let k = ResidueField::new(3, 2).unwrap();
        assert_eq!(k.modulus, vec![1, 0]); // x² + 1
        // (x)·(x) → −1 ≡ 2, by polynomial reduction
        let x = k.decode(3); // the class of x
        assert_eq!(k.mul(&x, &x), k.from_u64(2));
    }

    #[test]
    fn f9_generator_order() {
        let k = ResidueField::new(3, 2).unwrap();
        // g^8 → 1 and no smaller power hits 1
        assert_eq!(k.pow(&k.generator, 8), k.one());
        for e in 1..8 {
            assert_ne!(k.pow(&k.generator, e), k.one(), "order divides {e}");
        }
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let k = ResidueField::new(5, 2).unwrap();
        for n in 0..5 {
            let a = k.from_u64(n);
            assert_eq!(k.frobenius(&a), a);
        }
    }

    #[test]
    fn trace_is_additive() {
        let k = ResidueField::new(3, 2).unwrap();
        for a in k.all_elements() {
            for b in k.all_elements() {
                let lhs = k.trace_to_prime(&k.add(&a, &b));
                let rhs = (k.trace_to_prime(&a) + k.trace_to_prime(&b)) % 3;
                assert_eq!(lhs, rhs);
            }
        }
    }
}
