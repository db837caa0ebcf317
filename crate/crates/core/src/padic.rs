//! Truncated p-adic arithmetic for the base field F.
//!
//! F is the unramified extension of ℚ_p with residue field F_q (q = p^f),
//! uniformizer ϖ = p, computed at a fixed truncation depth N: the ring
//! O_F/p^N is (ℤ/p^N)[x]/(f̃) where f̃ is the monic lift of the residue
//! modulus.  Elements of F^× are stored multiplicatively as ϖ^v·u with the
//! unit u carried to an explicit precision, so a subtraction that cancels
//! digits reports precision loss instead of silently truncating.

use crate::error::{Error, Result};
use crate::residue::{ResidueElt, ResidueField};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// An element of O_F/p^M: coefficients in ℤ/p^M against the power basis of
/// the modulus lift.  The ambient precision M travels with the operations,
/// not the element.
pub type RingElt = Vec<u64>;

/// The base p-adic field at working precision.
#[derive(Debug)]
pub struct PAdicField {
    pub p: u64,
    pub f: usize,
    pub q: u64,
    /// Truncation depth: units are known mod p^precision.
    pub precision: usize,
    pub residue: Arc<ResidueField>,
    /// p^precision.
    pub pn: u64,
    /// Teichmüller lift of the residue generator; the canonical non-square
    /// unit ε used to present quadratic extensions.
    pub epsilon: RingElt,
    /// teich_table[k] = τ(generator^k) for k = 0, …, q−2 (multiplicative, so
    /// one lift and q−2 ring products fill the table).
    teich_table: Vec<RingElt>,
}

impl PartialEq for PAdicField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.precision == other.precision
    }
}

/// Serializable descriptor from which a `PAdicField` is rebuilt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAdicDesc {
    pub p: u64,
    pub f: usize,
    pub precision: usize,
}

impl PAdicDesc {
    pub fn build(&self) -> Result<Arc<PAdicField>> {
        PAdicField::new(self.p, self.f, self.precision)
    }
}

impl PAdicField {
    pub fn new(p: u64, f: usize, precision: usize) -> Result<Arc<PAdicField>> {
        if precision == 0 {
            return Err(Error::InvalidConfig("precision must be ≥ 1".into()));
        }
        let residue = ResidueField::new(p, f)?;
        let pn = (p as u128).checked_pow(precision as u32).and_then(|v| {
            if v < (1u128 << 62) {
                Some(v as u64)
            } else {
                None
            }
        });
        let pn = pn.ok_or_else(|| {
            Error::InvalidConfig(format!("p^precision = {p}^{precision} too large"))
        })?;
        let mut field = PAdicField {
            p,
            f,
            q: residue.q,
            precision,
            residue,
            pn,
            epsilon: vec![0; f],
            teich_table: Vec::new(),
        };
        let g = field.residue.generator.clone();
        let mut tau_g: RingElt = g.clone();
        for _ in 0..field.precision {
            tau_g = field.ring_pow(&tau_g, field.q);
        }
        let mut table = Vec::with_capacity((field.q - 1) as usize);
        table.push(field.one());
        for k in 1..(field.q - 1) as usize {
            let next = field.ring_mul(&table[k - 1], &tau_g);
            table.push(next);
        }
        field.teich_table = table;
        field.epsilon = field.teich_table[1.min(field.teich_table.len() - 1)].clone();
        Ok(Arc::new(field))
    }

    pub fn desc(&self) -> PAdicDesc {
        PAdicDesc {
            p: self.p,
            f: self.f,
            precision: self.precision,
        }
    }

    // ---- ring arithmetic in O_F/p^precision ----

    pub fn zero(&self) -> RingElt {
        vec![0; self.f]
    }

    pub fn one(&self) -> RingElt {
        let mut v = vec![0; self.f];
        v[0] = 1;
        v
    }

    pub fn ring_from_i64(&self, n: i64) -> RingElt {
        let mut v = vec![0; self.f];
        v[0] = n.rem_euclid(self.pn as i64) as u64;
        v
    }

    pub fn ring_add(&self, a: &RingElt, b: &RingElt) -> RingElt {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| ((x as u128 + y as u128) % self.pn as u128) as u64)
            .collect()
    }

    pub fn ring_sub(&self, a: &RingElt, b: &RingElt) -> RingElt {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                ((x as u128 + self.pn as u128 - y as u128) % self.pn as u128) as u64
            })
            .collect()
    }

    pub fn ring_neg(&self, a: &RingElt) -> RingElt {
        a.iter()
            .map(|&x| ((self.pn as u128 - x as u128) % self.pn as u128) as u64)
            .collect()
    }

    pub fn ring_mul(&self, a: &RingElt, b: &RingElt) -> RingElt {
        let f = self.f;
        let m = self.pn as u128;
        let mut prod = vec![0u128; 2 * f];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u128 * bj as u128) % m;
            }
        }
        // x^f ≡ −(modulus non-leading coefficients); the residue modulus
        // lifts with coefficients in {0, …, p−1}.
        for k in (f..2 * f).rev() {
            let coef = prod[k];
            if coef == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &mi) in self.residue.modulus.iter().enumerate() {
                let sub = coef * mi as u128 % m;
                prod[k - f + i] = (prod[k - f + i] + m - sub) % m;
            }
        }
        prod[..f].iter().map(|&x| x as u64).collect()
    }

    pub fn ring_scalar_mul(&self, c: u64, a: &RingElt) -> RingElt {
        a.iter()
            .map(|&x| (x as u128 * c as u128 % self.pn as u128) as u64)
            .collect()
    }

    pub fn ring_pow(&self, a: &RingElt, mut e: u64) -> RingElt {
        let mut result = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.ring_mul(&result, &b);
            }
            b = self.ring_mul(&b, &b);
            e >>= 1;
        }
        result
    }

    /// Reduction to the residue field.
    pub fn reduce(&self, a: &RingElt) -> ResidueElt {
        a.iter().map(|&x| x % self.p).collect()
    }

    pub fn is_unit(&self, a: &RingElt) -> bool {
        !self.residue.is_zero(&self.reduce(a))
    }

    /// ϖ-adic valuation of a ring element, capped at the precision.  Returns
    /// `None` when the element is indistinguishable from 0 at this depth.
    pub fn ring_val(&self, a: &RingElt) -> Option<usize> {
        let mut pk = 1u64;
        for k in 0..self.precision {
            if a.iter().any(|&c| !(c / pk).is_multiple_of(self.p)) {
                return Some(k);
            }
            pk *= self.p;
        }
        None
    }

    /// Exact division by p^k (every coefficient must be divisible).
    pub fn ring_div_pk(&self, a: &RingElt, k: usize) -> RingElt {
        let pk = self.p.pow(k as u32);
        a.iter().map(|&c| c / pk).collect()
    }

    /// Multiplicative inverse of a unit, by Hensel lifting the residue inverse.
    pub fn ring_inv(&self, a: &RingElt) -> Result<RingElt> {
        self.ring_inv_digits(a, self.precision)
    }

    /// Inverse correct mod p^digits (Newton doubles the valid digits).
    pub fn ring_inv_digits(&self, a: &RingElt, digits: usize) -> Result<RingElt> {
        let r = self.reduce(a);
        let rinv = self.residue.inv(&r)?;
        let mut z: RingElt = rinv.clone();
        let two = self.ring_from_i64(2);
        let mut have = 1usize;
        while have < digits.min(self.precision) {
            let t = self.ring_sub(&two, &self.ring_mul(a, &z));
            z = self.ring_mul(&z, &t);
            have *= 2;
        }
        Ok(z)
    }

    /// Teichmüller lift: the unique root of unity congruent to c mod p
    /// (table lookup through the discrete log).
    pub fn teichmuller(&self, c: &ResidueElt) -> RingElt {
        if self.residue.is_zero(c) {
            return self.zero();
        }
        let k = self.residue.dlog(c).expect("nonzero residue");
        self.teich_table[k as usize].clone()
    }

    /// Inverse Teichmüller lift τ(c)^{−1} = τ(c^{−1}), also a table lookup.
    pub fn teichmuller_inv(&self, c: &ResidueElt) -> Result<RingElt> {
        if self.residue.is_zero(c) {
            return Err(Error::DivisionByZero);
        }
        let k = self.residue.dlog(c)?;
        let m = self.q as i64 - 1;
        Ok(self.teich_table[((m - k) % m) as usize].clone())
    }

    /// log of a one-unit u ≡ 1 mod p, truncated for additive pairings of
    /// conductor ≤ m: the series stops at j = ⌊m/d₀⌋ < p and the first
    /// omitted p-divisible term x^p/p has valuation p·d₀ − 1 ≥ m + 1.
    pub fn log_one_unit(&self, u: &RingElt, m: usize) -> Result<RingElt> {
        let x = self.ring_sub(u, &self.one());
        let d0 = match self.ring_val(&x) {
            None => return Ok(self.zero()),
            Some(0) => {
                return Err(Error::DomainMismatch("log needs a one-unit".into()));
            }
            Some(d) => d,
        };
        if (self.p as usize) * d0 < m + 2 {
            return Err(Error::Precision(format!(
                "log truncation not exact for conductor {m} at tail depth {d0} (p = {})",
                self.p
            )));
        }
        let jmax = (m / d0).max(1);
        let mut term = self.one();
        let mut acc = self.zero();
        for j in 1..=jmax {
            term = self.ring_mul(&term, &x);
            let jinv = self.ring_inv(&self.ring_from_i64(j as i64))?;
            let mut c = self.ring_mul(&term, &jinv);
            if j % 2 == 0 {
                c = self.ring_neg(&c);
            }
            acc = self.ring_add(&acc, &c);
        }
        Ok(acc)
    }

    /// Trace of the multiplication-by-a matrix over ℤ/p^M, M ≤ precision.
    /// This is Tr_{F/ℚ_p}(a) reduced mod p^M.
    pub fn trace_to_zp(&self, a: &RingElt, modulus: u64) -> u64 {
        let mut total = 0u128;
        let mut col = a.clone(); // a·x^0
        for i in 0..self.f {
            total = (total + col[i] as u128) % modulus as u128;
            // multiply by x
            let mut next = vec![0u64; self.f];
            let lead = col[self.f - 1];
            for j in (1..self.f).rev() {
                next[j] = col[j - 1];
            }
            next[0] = 0;
            if lead != 0 {
                for (j, &mj) in self.residue.modulus.iter().enumerate() {
                    let sub = lead as u128 * mj as u128 % self.pn as u128;
                    next[j] =
                        ((next[j] as u128 + self.pn as u128 - sub) % self.pn as u128) as u64;
                }
            }
            col = next;
        }
        (total % modulus as u128) as u64
    }

    // ---- multiplicative F^× elements ----

    pub fn elt_one(&self) -> FElt {
        FElt {
            val: 0,
            unit: self.one(),
            prec: self.precision,
        }
    }

    /// Embed a nonzero integer.
    pub fn elt_from_i64(&self, n: i64) -> Result<FElt> {
        if n == 0 {
            return Err(Error::InvalidConfig(
                "zero is not an element of the multiplicative group".into(),
            ));
        }
        let mut v = 0i64;
        let mut m = n;
        while m % self.p as i64 == 0 {
            m /= self.p as i64;
            v += 1;
        }
        Ok(FElt {
            val: v,
            unit: self.ring_from_i64(m),
            prec: self.precision,
        })
    }

    /// ϖ^k.
    pub fn elt_uniformizer_pow(&self, k: i64) -> FElt {
        FElt {
            val: k,
            unit: self.one(),
            prec: self.precision,
        }
    }

    /// Teichmüller representative of generator^k, as a unit of F^×.
    pub fn elt_teich(&self, k: i64) -> FElt {
        let c = self.residue.pow(&self.residue.generator.clone(), k);
        FElt {
            val: 0,
            unit: self.teichmuller(&c),
            prec: self.precision,
        }
    }

    /// A unit from an explicit unit ring element.
    pub fn elt_from_unit(&self, unit: RingElt, val: i64) -> Result<FElt> {
        if !self.is_unit(&unit) {
            return Err(Error::InvalidConfig(
                "unit part of a multiplicative element must be a unit".into(),
            ));
        }
        Ok(FElt {
            val,
            unit,
            prec: self.precision,
        })
    }

    pub fn elt_mul(&self, a: &FElt, b: &FElt) -> FElt {
        FElt {
            val: a.val + b.val,
            unit: self.ring_mul(&a.unit, &b.unit),
            prec: a.prec.min(b.prec),
        }
    }

    pub fn elt_inv(&self, a: &FElt) -> Result<FElt> {
        Ok(FElt {
            val: -a.val,
            unit: self.ring_inv(&a.unit)?,
            prec: a.prec,
        })
    }

    pub fn elt_pow(&self, a: &FElt, k: i64) -> Result<FElt> {
        if k >= 0 {
            Ok(FElt {
                val: a.val * k,
                unit: self.ring_pow(&a.unit, k as u64),
                prec: a.prec,
            })
        } else {
            let inv = self.elt_inv(a)?;
            self.elt_pow(&inv, -k)
        }
    }

    /// a − b as a multiplicative element; errors when the difference cannot
    /// be distinguished from zero at the working precision.
    pub fn elt_sub(&self, a: &FElt, b: &FElt) -> Result<FElt> {
        let v0 = a.val.min(b.val);
        let prec = a.prec.min(b.prec);
        let shift_a = (a.val - v0) as usize;
        let shift_b = (b.val - v0) as usize;
        if shift_a >= prec && shift_b >= prec {
            return Err(Error::Precision(
                "difference vanishes to working precision".into(),
            ));
        }
        let pa = self.ring_scalar_mul(self.p.pow(shift_a.min(self.precision) as u32), &a.unit);
        let pb = self.ring_scalar_mul(self.p.pow(shift_b.min(self.precision) as u32), &b.unit);
        let d = self.ring_sub(&pa, &pb);
        match self.ring_val(&d) {
            Some(k) if k < prec => Ok(FElt {
                val: v0 + k as i64,
                unit: self.ring_div_pk(&d, k),
                prec: prec - k,
            }),
            _ => Err(Error::Precision(
                "difference vanishes to working precision".into(),
            )),
        }
    }

    pub fn elt_eq(&self, a: &FElt, b: &FElt) -> bool {
        if a.val != b.val {
            return false;
        }
        let prec = a.prec.min(b.prec);
        let pk = self.p.pow(prec.min(63) as u32);
        a.unit
            .iter()
            .zip(&b.unit)
            .all(|(&x, &y)| x % pk == y % pk)
    }

    /// Residue of the unit part.
    pub fn elt_residue(&self, a: &FElt) -> ResidueElt {
        self.reduce(&a.unit)
    }

    /// Exponent k with unit ≡ generator^k mod p.
    pub fn elt_teich_exponent(&self, a: &FElt) -> i64 {
        self.residue
            .dlog(&self.elt_residue(a))
            .expect("unit part has nonzero residue")
    }

    /// The one-unit tail unit/τ(residue), congruent to 1 mod p.
    pub fn elt_one_unit_part(&self, a: &FElt) -> Result<FElt> {
        let t = self.teichmuller(&self.elt_residue(a));
        let tinv = self.ring_inv(&t)?;
        Ok(FElt {
            val: 0,
            unit: self.ring_mul(&a.unit, &tinv),
            prec: a.prec,
        })
    }
}

/// An element of F^×: ϖ^val · unit with the unit known mod p^prec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FElt {
    pub val: i64,
    pub unit: RingElt,
    pub prec: usize,
}

impl FElt {
    pub fn ord(&self) -> i64 {
        self.val
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Arc<PAdicField> {
        PAdicField::new(3, 1, 6).unwrap()
    }

    #[test]
    fn integer_model_q3() {
        // f = 1: the ring is plain ℤ/3^6; check against i64 arithmetic.
        let fld = f3();
        let a = fld.ring_from_i64(124);
        let b = fld.ring_from_i64(455);
        assert_eq!(fld.ring_mul(&a, &b)[0], (124 * 455) % 729);
        assert_eq!(fld.ring_add(&a, &b)[0], (124 + 455));
        let ainv = fld.ring_inv(&a).unwrap();
        assert_eq!(fld.ring_mul(&a, &ainv), fld.one());
    }

    #[test]
    fn teichmuller_is_root_of_unity() {
        let fld = f3();
        let t = fld.teichmuller(&fld.residue.from_u64(2));
        assert_eq!(fld.ring_pow(&t, 2), fld.one()); // τ(2) = −1 in ℤ/729
        assert_eq!(t[0], 728);

        let fld9 = PAdicField::new(3, 2, 4).unwrap();
        let g = fld9.residue.generator.clone();
        let t = fld9.teichmuller(&g);
        assert_eq!(fld9.ring_pow(&t, 8), fld9.one());
        assert_eq!(fld9.reduce(&t), g);
    }

    #[test]
    fn ord_is_additive() {
        let fld = f3();
        let a = fld.elt_from_i64(6).unwrap(); // ord 1
        let b = fld.elt_from_i64(9).unwrap(); // ord 2
        assert_eq!(a.ord(), 1);
        assert_eq!(b.ord(), 2);
        assert_eq!(fld.elt_mul(&a, &b).ord(), 3);
    }

    #[test]
    fn subtraction_tracks_precision() {
        let fld = f3();
        let one = fld.elt_one();
        let a = fld.elt_from_i64(1 + 9).unwrap();
        let d = fld.elt_sub(&a, &one).unwrap(); // 9 = ϖ²
        assert_eq!(d.ord(), 2);
        assert_eq!(d.prec, 4);
        // 1 − 1 is indistinguishable from zero
        assert!(fld.elt_sub(&one, &one).is_err());
    }

    #[test]
    fn trace_form_f1_is_identity() {
        let fld = f3();
        let a = fld.ring_from_i64(17);
        assert_eq!(fld.trace_to_zp(&a, 27), 17);
    }

    #[test]
    fn trace_form_f2_matches_frobenius_sum() {
        let fld = PAdicField::new(3, 2, 3).unwrap();
        // For a Teichmüller lift τ(c): Tr(τ(c)) ≡ c + c^q mod p.
        let g = fld.residue.generator.clone();
        let t = fld.teichmuller(&g);
        let tr = fld.trace_to_zp(&t, 3);
        let expected = {
            let fr = fld.residue.frobenius(&g);
            let s = fld.residue.add(&g, &fr);
            assert!(s[1] == 0);
            s[0]
        };
        assert_eq!(tr % 3, expected);
    }
}
