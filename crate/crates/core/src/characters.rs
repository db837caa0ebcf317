//! Quasi-characters of F^× and E^× in the three field regimes.
//!
//! Complex: χ(z) = [z]^l |z|_ℂ^t with [z] = z/|z|.  Real: the pair (i, t)
//! with i ∈ {±1} gives a ↦ sgn(a)^{(1−i)/2}|a|^t on GL₁(ℝ), and the Weil
//! character z ↦ |z|^t, j ↦ i on ℂ^× ∪ jℂ^×.  p-adic: a character of
//! ϖ^ℤ × μ_{q−1} × (1 + p) stored as (Teichmüller exponent, value at the
//! fixed uniformizer, one-unit functional); unitary values are exact
//! rational phases, so products and integer powers are exact in parameters.

use crate::error::{Error, Result};
use crate::padic::{FElt, PAdicField, RingElt};
use crate::phase::Phase;
use crate::quadext::{QuadExt, QuadExtElement};
use crate::residue::ResidueElt;
use num_complex::Complex64;
use std::sync::Arc;

/// χ(z) = [z]^l |z|_ℂ^t on ℂ^×.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexChar {
    pub l: i64,
    pub t: Complex64,
}

/// The quasi-character of ℝ^× (and of W_ℝ) with parameter (sign, t).
#[derive(Debug, Clone, PartialEq)]
pub struct RealChar {
    /// +1 or −1.
    pub sign: i8,
    pub t: Complex64,
}

/// Domain of a p-adic quasi-character: F^× itself or E_α^×.
#[derive(Debug, Clone)]
pub enum PAdicDomain {
    Base(Arc<PAdicField>),
    Ext(Arc<QuadExt>),
}

impl PAdicDomain {
    pub fn base(&self) -> &Arc<PAdicField> {
        match self {
            PAdicDomain::Base(f) => f,
            PAdicDomain::Ext(e) => &e.base,
        }
    }

    /// Residue cardinality of the domain.
    pub fn q_dom(&self) -> u64 {
        match self {
            PAdicDomain::Base(f) => f.q,
            PAdicDomain::Ext(e) => e.q_e,
        }
    }

    pub fn same_as(&self, other: &PAdicDomain) -> bool {
        match (self, other) {
            (PAdicDomain::Base(a), PAdicDomain::Base(b)) => **a == **b,
            (PAdicDomain::Ext(a), PAdicDomain::Ext(b)) => **a == **b,
            _ => false,
        }
    }
}

/// One-unit data of a p-adic character: an additive functional on the
/// filtration of 1 + p, trivial beyond its conductor.
#[derive(Debug, Clone, PartialEq)]
pub enum OneUnitData {
    Trivial,
    /// Domain F or unramified E: ψ(u) = e^{2πi·Tr_{D/ℚ_p}(β·log u)/p^{m+1}}
    /// with β = (coeff_a + coeff_b·y) a unit mod p (conductor exactly m).
    Unramified {
        conductor: usize,
        coeff_a: RingElt,
        coeff_b: RingElt,
    },
    /// Ramified E: digit functionals c_d ∈ k_F against the coordinate of
    /// y^d, d = 1, 2.  (Beyond depth 2 the digit coordinates no longer split
    /// the one-unit filtration; such conductors are out of scope.)
    RamifiedDigits(Vec<ResidueElt>),
}

/// A p-adic quasi-character, unitary by construction.
#[derive(Debug, Clone)]
pub struct PAdicChar {
    pub domain: PAdicDomain,
    /// Exponent against the fixed residue generator, mod q_dom − 1.
    pub teich: i64,
    /// Value at the fixed uniformizer of the domain.
    pub unif: Phase,
    pub one_unit: OneUnitData,
}

/// A quasi-character in one of the three regimes.
#[derive(Debug, Clone)]
pub enum QuasiCharacter {
    Complex(ComplexChar),
    Real(RealChar),
    PAdic(PAdicChar),
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

impl PAdicChar {
    pub fn trivial(domain: PAdicDomain) -> PAdicChar {
        PAdicChar {
            domain,
            teich: 0,
            unif: Phase::ONE,
            one_unit: OneUnitData::Trivial,
        }
    }

    /// Depth-zero character with the given Teichmüller exponent and
    /// uniformizer value.
    pub fn depth_zero(domain: PAdicDomain, teich: i64, unif: Phase) -> PAdicChar {
        let q_dom = domain.q_dom();
        PAdicChar {
            domain,
            teich: teich.rem_euclid(q_dom as i64 - 1),
            unif,
            one_unit: OneUnitData::Trivial,
        }
    }

    /// Attach an unramified-type one-unit functional (domain F^× or the
    /// unramified E^×).  The conductor is capped at p − 2 so truncated-log
    /// pairings stay exact on depth-1 tails.
    pub fn with_unramified_functional(
        mut self,
        conductor: usize,
        coeff_a: RingElt,
        coeff_b: RingElt,
    ) -> Result<PAdicChar> {
        let f = self.domain.base().clone();
        if matches!(&self.domain, PAdicDomain::Ext(e) if e.ramified) {
            return Err(Error::InvalidConfig(
                "ramified domains use digit functionals".into(),
            ));
        }
        if conductor == 0 {
            self.one_unit = OneUnitData::Trivial;
            return Ok(self);
        }
        if conductor + 1 > f.precision || conductor > (f.p as usize).saturating_sub(2) {
            return Err(Error::InvalidConfig(format!(
                "conductor {conductor} exceeds the exact-pairing range for p = {}",
                f.p
            )));
        }
        let unit_ok = f.is_unit(&coeff_a)
            || (matches!(&self.domain, PAdicDomain::Ext(_)) && f.is_unit(&coeff_b));
        if !unit_ok {
            return Err(Error::InvalidConfig(
                "functional coefficient must be a unit (conductor would drop)".into(),
            ));
        }
        self.one_unit = OneUnitData::Unramified {
            conductor,
            coeff_a,
            coeff_b,
        };
        Ok(self)
    }

    /// Attach ramified digit functionals (c₁[, c₂]).
    pub fn with_ramified_digits(mut self, digits: Vec<ResidueElt>) -> Result<PAdicChar> {
        let PAdicDomain::Ext(e) = &self.domain else {
            return Err(Error::InvalidConfig(
                "digit functionals live on ramified extensions".into(),
            ));
        };
        if !e.ramified {
            return Err(Error::InvalidConfig(
                "digit functionals live on ramified extensions".into(),
            ));
        }
        if digits.len() > 2 {
            return Err(Error::InvalidConfig(
                "ramified functionals supported to depth 2 only".into(),
            ));
        }
        let k = &e.base.residue;
        let mut digits = digits;
        while digits.last().map(|d| k.is_zero(d)) == Some(true) {
            digits.pop();
        }
        self.one_unit = if digits.is_empty() {
            OneUnitData::Trivial
        } else {
            OneUnitData::RamifiedDigits(digits)
        };
        Ok(self)
    }

    pub fn is_trivial(&self) -> bool {
        self.teich == 0 && self.unif.is_one() && matches!(self.one_unit, OneUnitData::Trivial)
    }
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

impl ComplexChar {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z == Complex64::new(0.0, 0.0) {
            return Err(Error::DomainMismatch("character of ℂ^× at 0".into()));
        }
        let unit = z / z.norm();
        let modsq = z.norm_sqr();
        Ok(unit.powi(self.l as i32) * Complex64::new(modsq, 0.0).powc(self.t))
    }

    pub fn is_unitary(&self) -> bool {
        self.t.re == 0.0
    }
}

impl RealChar {
    pub fn eval(&self, a: f64) -> Result<Complex64> {
        if a == 0.0 {
            return Err(Error::DomainMismatch("character of ℝ^× at 0".into()));
        }
        let sign_part = if self.sign == -1 && a < 0.0 { -1.0 } else { 1.0 };
        Ok(Complex64::new(sign_part, 0.0) * Complex64::new(a.abs(), 0.0).powc(self.t))
    }

    /// Value on the Weil group: z ∈ ℂ^× ↦ |z|^t.
    pub fn eval_weil_z(&self, z: Complex64) -> Result<Complex64> {
        if z == Complex64::new(0.0, 0.0) {
            return Err(Error::DomainMismatch("Weil character at 0".into()));
        }
        Ok(Complex64::new(z.norm(), 0.0).powc(self.t))
    }

    /// Value at the element j.
    pub fn eval_weil_j(&self) -> Complex64 {
        Complex64::new(self.sign as f64, 0.0)
    }

    pub fn is_unitary(&self) -> bool {
        self.t.re == 0.0
    }
}

impl PAdicChar {
    /// Exact phase of the character at an element of the base field F^×.
    pub fn eval_base_phase(&self, x: &FElt) -> Result<Phase> {
        let PAdicDomain::Base(f) = &self.domain else {
            return Err(Error::DomainMismatch(
                "character of E^× applied to an element of F^× without embedding".into(),
            ));
        };
        let q = f.q as i64;
        let mut acc = self.unif.pow(x.ord());
        let k_elt = f.elt_teich_exponent(x);
        acc = acc.mul(&Phase::root_of_unity(self.teich * k_elt, q - 1));
        match &self.one_unit {
            OneUnitData::Trivial => {}
            OneUnitData::Unramified {
                conductor,
                coeff_a,
                coeff_b: _,
            } => {
                let u1 = f.ring_mul(&x.unit, &f.teichmuller_inv(&f.elt_residue(x))?);
                let lg = f.log_one_unit(&u1, *conductor)?;
                let pm1 = f.p.pow(*conductor as u32 + 1);
                let t = f.trace_to_zp(&f.ring_mul(coeff_a, &lg), pm1);
                acc = acc.mul(&Phase::new(t as i64, pm1 as i64));
            }
            OneUnitData::RamifiedDigits(_) => unreachable!("base-field functionals are unramified type"),
        }
        Ok(acc)
    }

    /// Exact phase at an element of the extension E^×.
    pub fn eval_ext_phase(&self, x: &QuadExtElement) -> Result<Phase> {
        let PAdicDomain::Ext(e) = &self.domain else {
            return Err(Error::DomainMismatch(
                "character of F^× applied to an element of E^×".into(),
            ));
        };
        let q_e = e.q_e as i64;
        let v = e.ord_e(x)?;
        let mut acc = self.unif.pow(v);
        let k_elt = e.teich_exponent(x)?;
        acc = acc.mul(&Phase::root_of_unity(self.teich * k_elt, q_e - 1));
        match &self.one_unit {
            OneUnitData::Trivial => {}
            OneUnitData::Unramified {
                conductor,
                coeff_a,
                coeff_b,
            } => {
                let u1 = e.one_unit_part(x)?;
                let (la, lb) = e.log_one_unit(&u1, *conductor)?;
                let f = &e.base;
                // Tr_{E/ℚ_p}(β·log u) = Tr_{F/ℚ_p}(2·(β·log u)_a)
                let prod_a = f.ring_add(
                    &f.ring_mul(coeff_a, &la),
                    &f.ring_mul(&e.alpha_ring, &f.ring_mul(coeff_b, &lb)),
                );
                let pm1 = f.p.pow(*conductor as u32 + 1);
                let t = f.trace_to_zp(&f.ring_scalar_mul(2, &prod_a), pm1);
                acc = acc.mul(&Phase::new(t as i64, pm1 as i64));
            }
            OneUnitData::RamifiedDigits(digits) => {
                if digits.len() > 1 && !e.base.residue.is_zero(&digits[1]) {
                    return Err(Error::Precision(
                        "depth-2 ramified functionals are symbolic only".into(),
                    ));
                }
                let u1 = e.one_unit_part(x)?;
                let (d1, _) = e.one_unit_digit1(&u1)?;
                let k = &e.base.residue;
                let t = k.trace_to_prime(&k.mul(&digits[0], &d1));
                acc = acc.mul(&Phase::new(t as i64, e.base.p as i64));
            }
        }
        Ok(acc)
    }

    pub fn eval_base(&self, x: &FElt) -> Result<Complex64> {
        Ok(self.eval_base_phase(x)?.value())
    }

    pub fn eval_ext(&self, x: &QuadExtElement) -> Result<Complex64> {
        Ok(self.eval_ext_phase(x)?.value())
    }
}

// ---------------------------------------------------------------------------
// character algebra
// ---------------------------------------------------------------------------

fn mul_one_unit(
    domain: &PAdicDomain,
    a: &OneUnitData,
    b: &OneUnitData,
) -> Result<OneUnitData> {
    let f = domain.base().clone();
    Ok(match (a, b) {
        (OneUnitData::Trivial, x) | (x, OneUnitData::Trivial) => x.clone(),
        (
            OneUnitData::Unramified {
                conductor: m1,
                coeff_a: a1,
                coeff_b: b1,
            },
            OneUnitData::Unramified {
                conductor: m2,
                coeff_a: a2,
                coeff_b: b2,
            },
        ) => {
            // lift both to the larger conductor and add coefficients
            let m = *m1.max(m2);
            let lift = |c: &RingElt, from: usize| f.ring_scalar_mul(f.p.pow((m - from) as u32), c);
            let ca = f.ring_add(&lift(a1, *m1), &lift(a2, *m2));
            let cb = f.ring_add(&lift(b1, *m1), &lift(b2, *m2));
            normalize_unram(&f, m, ca, cb)
        }
        (OneUnitData::RamifiedDigits(d1), OneUnitData::RamifiedDigits(d2)) => {
            let k = &f.residue;
            let len = d1.len().max(d2.len());
            let mut out = Vec::with_capacity(len);
            for i in 0..len {
                let x = d1.get(i).cloned().unwrap_or_else(|| k.zero());
                let y = d2.get(i).cloned().unwrap_or_else(|| k.zero());
                out.push(k.add(&x, &y));
            }
            normalize_ram(&f, out)
        }
        _ => {
            return Err(Error::DomainMismatch(
                "cannot combine unramified and ramified functionals".into(),
            ))
        }
    })
}

fn normalize_unram(f: &PAdicField, m: usize, ca: RingElt, cb: RingElt) -> OneUnitData {
    // conductor drops by the valuation of the combined coefficient
    let va = f.ring_val(&ca).unwrap_or(f.precision);
    let vb = f.ring_val(&cb).unwrap_or(f.precision);
    let drop = va.min(vb);
    if drop >= m {
        return OneUnitData::Trivial;
    }
    OneUnitData::Unramified {
        conductor: m - drop,
        coeff_a: f.ring_div_pk(&ca, drop),
        coeff_b: f.ring_div_pk(&cb, drop),
    }
}

fn normalize_ram(f: &PAdicField, mut digits: Vec<ResidueElt>) -> OneUnitData {
    let k = &f.residue;
    while digits.last().map(|d| k.is_zero(d)) == Some(true) {
        digits.pop();
    }
    if digits.is_empty() {
        OneUnitData::Trivial
    } else {
        OneUnitData::RamifiedDigits(digits)
    }
}

fn pow_one_unit(domain: &PAdicDomain, a: &OneUnitData, n: i64) -> OneUnitData {
    let f = domain.base().clone();
    match a {
        OneUnitData::Trivial => OneUnitData::Trivial,
        OneUnitData::Unramified {
            conductor,
            coeff_a,
            coeff_b,
        } => {
            let scale = n.rem_euclid(f.pn as i64) as u64;
            normalize_unram(
                &f,
                *conductor,
                f.ring_scalar_mul(scale, coeff_a),
                f.ring_scalar_mul(scale, coeff_b),
            )
        }
        OneUnitData::RamifiedDigits(digits) => {
            let k = &f.residue;
            let scale = n.rem_euclid(f.p as i64) as u64;
            normalize_ram(&f, digits.iter().map(|d| k.scalar_mul(scale, d)).collect())
        }
    }
}

/// χψ: pointwise product, exact in parameters.
pub fn char_mul(chi: &QuasiCharacter, psi: &QuasiCharacter) -> Result<QuasiCharacter> {
    match (chi, psi) {
        (QuasiCharacter::Complex(a), QuasiCharacter::Complex(b)) => {
            Ok(QuasiCharacter::Complex(ComplexChar {
                l: a.l + b.l,
                t: a.t + b.t,
            }))
        }
        (QuasiCharacter::Real(a), QuasiCharacter::Real(b)) => Ok(QuasiCharacter::Real(RealChar {
            sign: a.sign * b.sign,
            t: a.t + b.t,
        })),
        (QuasiCharacter::PAdic(a), QuasiCharacter::PAdic(b)) => {
            if !a.domain.same_as(&b.domain) {
                return Err(Error::DomainMismatch(
                    "characters live on different groups".into(),
                ));
            }
            let q_dom = a.domain.q_dom() as i64;
            Ok(QuasiCharacter::PAdic(PAdicChar {
                domain: a.domain.clone(),
                teich: (a.teich + b.teich).rem_euclid(q_dom - 1),
                unif: a.unif.mul(&b.unif),
                one_unit: mul_one_unit(&a.domain, &a.one_unit, &b.one_unit)?,
            }))
        }
        _ => Err(Error::DomainMismatch("characters of different regimes".into())),
    }
}

/// χ^n, exact in parameters.
pub fn char_pow(chi: &QuasiCharacter, n: i64) -> QuasiCharacter {
    match chi {
        QuasiCharacter::Complex(a) => QuasiCharacter::Complex(ComplexChar {
            l: a.l * n,
            t: a.t * n as f64,
        }),
        QuasiCharacter::Real(a) => QuasiCharacter::Real(RealChar {
            sign: if n % 2 == 0 { 1 } else { a.sign },
            t: a.t * n as f64,
        }),
        QuasiCharacter::PAdic(a) => {
            let q_dom = a.domain.q_dom() as i64;
            QuasiCharacter::PAdic(PAdicChar {
                domain: a.domain.clone(),
                teich: (a.teich * n).rem_euclid(q_dom - 1),
                unif: a.unif.pow(n),
                one_unit: pow_one_unit(&a.domain, &a.one_unit, n),
            })
        }
    }
}

/// θ^λ(x) = θ(x^σ) for a character of E^×.
pub fn char_galois_conj(theta: &PAdicChar) -> Result<PAdicChar> {
    let PAdicDomain::Ext(e) = &theta.domain else {
        return Err(Error::DomainMismatch("Galois twist needs a character of E^×".into()));
    };
    let q = e.base.q as i64;
    if e.ramified {
        // σ(ϖ_E) = −ϖ_E: value picks up θ(−1) = (−1)^teich
        let minus_one = Phase::root_of_unity(theta.teich, 2);
        let one_unit = match &theta.one_unit {
            OneUnitData::RamifiedDigits(d) => {
                let k = &e.base.residue;
                let flipped: Vec<_> = d
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i % 2 == 0 { k.neg(c) } else { c.clone() })
                    .collect();
                normalize_ram(&e.base, flipped)
            }
            other => other.clone(),
        };
        Ok(PAdicChar {
            domain: theta.domain.clone(),
            teich: theta.teich,
            unif: theta.unif.mul(&minus_one),
            one_unit,
        })
    } else {
        // Frobenius: Teichmüller exponent k ↦ kq; β ↦ σ(β)
        let one_unit = match &theta.one_unit {
            OneUnitData::Unramified {
                conductor,
                coeff_a,
                coeff_b,
            } => OneUnitData::Unramified {
                conductor: *conductor,
                coeff_a: coeff_a.clone(),
                coeff_b: e.base.ring_neg(coeff_b),
            },
            other => other.clone(),
        };
        Ok(PAdicChar {
            domain: theta.domain.clone(),
            teich: (theta.teich * q).rem_euclid(e.q_e as i64 - 1),
            unif: theta.unif,
            one_unit,
        })
    }
}

/// Restriction of θ along F^× ⊂ E^×.
pub fn char_restrict_f(theta: &PAdicChar) -> Result<PAdicChar> {
    let PAdicDomain::Ext(e) = &theta.domain else {
        return Err(Error::DomainMismatch("restriction needs a character of E^×".into()));
    };
    let f = e.base.clone();
    let q = f.q as i64;
    // value at ϖ: evaluate at the embedded uniformizer (exact phase)
    let w = e.embed_base(&f.elt_uniformizer_pow(1));
    let unif = theta.eval_ext_phase(&w)?;
    // Teichmüller exponent restricts along μ_{q−1} ⊂ μ_{q_E−1}: the
    // generator conventions make both cases a reduction mod q − 1
    let teich = theta.teich.rem_euclid(q - 1);
    let one_unit = match &theta.one_unit {
        OneUnitData::Trivial => OneUnitData::Trivial,
        OneUnitData::Unramified {
            conductor,
            coeff_a,
            coeff_b: _,
        } => {
            // Tr_{E/ℚ_p}(β·x) = Tr_{F/ℚ_p}(Tr_{E/F}(β)·x) for x ∈ F
            normalize_unram(&f, *conductor, f.ring_scalar_mul(2, coeff_a), f.zero())
        }
        OneUnitData::RamifiedDigits(digits) => {
            // 1 + p_F ⊂ 1 + p_E²: only the y²-digit pairs; ϖ = u^{−1}y² gives
            // digit₂(x) = x₁·ū^{−1} for x = x₁ϖ + …, so the restricted
            // coefficient is c₂·ū^{−1}.
            if digits.len() < 2 {
                OneUnitData::Trivial
            } else {
                let k = &f.residue;
                let ubar = f.reduce(&e.alpha_unit_ring());
                let coeff = k.mul(&digits[1], &k.inv(&ubar)?);
                if k.is_zero(&coeff) {
                    OneUnitData::Trivial
                } else {
                    OneUnitData::Unramified {
                        conductor: 1,
                        coeff_a: f.teichmuller(&coeff),
                        coeff_b: f.zero(),
                    }
                }
            }
        }
    };
    Ok(PAdicChar {
        domain: PAdicDomain::Base(f),
        teich,
        unif,
        one_unit,
    })
}

/// ξ∘N_{E/F}: pull a character of F^× back along the norm.
pub fn char_pullback_norm(xi: &PAdicChar, ext: &Arc<QuadExt>) -> Result<PAdicChar> {
    let PAdicDomain::Base(f) = &xi.domain else {
        return Err(Error::DomainMismatch("norm pullback starts from F^×".into()));
    };
    if **f != *ext.base {
        return Err(Error::DomainMismatch("extension lies over a different base".into()));
    }
    let f = f.clone();
    let q = f.q as i64;
    // value at ϖ_E: ξ(N(ϖ_E))
    let n_unif = ext.norm(&ext.uniformizer());
    let unif = xi.eval_base_phase(&n_unif)?;
    let teich = if ext.ramified {
        // N on μ_{q−1} is squaring
        (2 * xi.teich).rem_euclid(q - 1)
    } else {
        // θ'(g_E) = ξ(N g_E) = ξ(g_F): exponent k·(q+1) against g_E
        (xi.teich * (q + 1)).rem_euclid(ext.q_e as i64 - 1)
    };
    let one_unit = match &xi.one_unit {
        OneUnitData::Trivial => OneUnitData::Trivial,
        OneUnitData::Unramified {
            conductor,
            coeff_a,
            coeff_b: _,
        } => {
            if ext.ramified {
                // ℓ(Tr_{E/F} x): x = c₁y + c₂y² ↦ 2c₂α = 2c₂uϖ, pairing digit
                // 2ū·b̄ against the y²-coordinate
                let k = &f.residue;
                let b_bar = f.reduce(coeff_a);
                let u_bar = f.reduce(&ext.alpha_unit_ring());
                let c2 = k.scalar_mul(2, &k.mul(&b_bar, &u_bar));
                normalize_ram(&f, vec![k.zero(), c2])
            } else {
                OneUnitData::Unramified {
                    conductor: *conductor,
                    coeff_a: coeff_a.clone(),
                    coeff_b: f.zero(),
                }
            }
        }
        OneUnitData::RamifiedDigits(_) => unreachable!("base functionals are unramified type"),
    };
    Ok(PAdicChar {
        domain: PAdicDomain::Ext(ext.clone()),
        teich,
        unif,
        one_unit,
    })
}

/// The order-2 character of F^× with kernel N_{E/F}(E^×).
pub fn sgn_ef(ext: &Arc<QuadExt>) -> Result<PAdicChar> {
    if !ext.alpha.is_field() {
        return Err(Error::Unsupported("sgn is trivial for the split algebra".into()));
    }
    let f = ext.base.clone();
    let q = f.q as i64;
    if !ext.ramified {
        // unramified quadratic character: −1 at ϖ, trivial on units
        Ok(PAdicChar {
            domain: PAdicDomain::Base(f),
            teich: 0,
            unif: Phase::new(1, 2),
            one_unit: OneUnitData::Trivial,
        })
    } else {
        // kernel contains N(ϖ_E) = −α = −uϖ and the unit squares:
        // χ(ζ) = −1, χ(ϖ) = χ(−u)
        let k = &f.residue;
        let minus_u = k.neg(&f.reduce(&ext.alpha_unit_ring()));
        let parity = k.dlog(&minus_u)?.rem_euclid(2);
        Ok(PAdicChar {
            domain: PAdicDomain::Base(f),
            teich: (q - 1) / 2,
            unif: Phase::new(parity, 2),
            one_unit: OneUnitData::Trivial,
        })
    }
}

/// Admissibility of the pair (E/F, θ): θ does not factor through the norm,
/// and (ramified case) θ and θ^λ differ on 1 + p_E.
pub fn is_admissible(ext: &Arc<QuadExt>, theta: &PAdicChar) -> Result<bool> {
    let PAdicDomain::Ext(e) = &theta.domain else {
        return Err(Error::DomainMismatch("admissibility concerns characters of E^×".into()));
    };
    if **e != **ext {
        return Err(Error::DomainMismatch("character lives on a different extension".into()));
    }
    if !ext.alpha.is_field() {
        return Err(Error::Unsupported("admissibility needs a field extension".into()));
    }
    let f = &ext.base;
    let q = f.q as i64;
    if !ext.ramified {
        // θ factors through N ⟺ trivial on ker N ⟺ (q+1) | teich and the
        // functional kills the trace-zero part (coefficient σ-invariant).
        let teich_on_kernel = theta.teich.rem_euclid(q + 1) != 0;
        let functional_asym = match &theta.one_unit {
            OneUnitData::Trivial => false,
            OneUnitData::Unramified {
                conductor, coeff_b, ..
            } => {
                // σ-invariance of β = a + by ⟺ b ≡ 0 mod p^conductor
                match f.ring_val(coeff_b) {
                    Some(v) => v < *conductor,
                    None => false,
                }
            }
            OneUnitData::RamifiedDigits(_) => unreachable!(),
        };
        Ok(teich_on_kernel || functional_asym)
    } else {
        // admissible ⟺ θ ≠ θ^λ on 1 + p_E ⟺ an odd digit functional is
        // nonzero (σ negates odd digit coordinates)
        let k = &f.residue;
        Ok(match &theta.one_unit {
            OneUnitData::Trivial => false,
            OneUnitData::RamifiedDigits(d) => d.first().map(|c| !k.is_zero(c)).unwrap_or(false),
            OneUnitData::Unramified { .. } => unreachable!(),
        })
    }
}

/// Depth of a p-adic character: 0 iff trivial on 1 + p, the functional's
/// conductor otherwise (in ϖ_E-units).
pub fn char_depth(theta: &PAdicChar) -> num_rational::Rational64 {
    use num_rational::Rational64;
    match &theta.one_unit {
        OneUnitData::Trivial => Rational64::from_integer(0),
        OneUnitData::Unramified { conductor, .. } => Rational64::from_integer(*conductor as i64),
        OneUnitData::RamifiedDigits(d) => Rational64::from_integer(d.len() as i64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadext::AlphaTag;
    use approx::assert_relative_eq;

    fn base3() -> Arc<PAdicField> {
        PAdicField::new(3, 1, 6).unwrap()
    }

    fn unram3() -> Arc<QuadExt> {
        QuadExt::new(base3(), AlphaTag::Eps).unwrap()
    }

    #[test]
    fn complex_char_values() {
        // (l=1, t=0) at i → i
        let chi = ComplexChar {
            l: 1,
            t: Complex64::new(0.0, 0.0),
        };
        let v = chi.eval(Complex64::new(0.0, 1.0)).unwrap();
        assert_relative_eq!(v.re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(v.im, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn real_sign_char() {
        // (i=−1, t=0) at −2 → −1
        let chi = RealChar {
            sign: -1,
            t: Complex64::new(0.0, 0.0),
        };
        assert_relative_eq!(chi.eval(-2.0).unwrap().re, -1.0);
        assert_relative_eq!(chi.eval(2.0).unwrap().re, 1.0);
    }

    #[test]
    fn padic_depth_zero_value() {
        // q=3 unramified, k=1, at ζ (μ₈ generator) → e^{2πi/8}
        let e = unram3();
        let theta = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 1, Phase::ONE);
        let zeta = e.elt_teich(1);
        let ph = theta.eval_ext_phase(&zeta).unwrap();
        assert_eq!(ph, Phase::new(1, 8));
    }

    #[test]
    fn restriction_to_base_hits_minus_one() {
        // θ teich k=1 over q=3: −1 = ζ⁴ ∈ μ₈, so θ(−1) = e^{2πi·4/8} = −1
        let e = unram3();
        let theta = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 1, Phase::ONE);
        let res = char_restrict_f(&theta).unwrap();
        let m1 = e.base.elt_from_i64(-1).unwrap();
        assert_eq!(res.eval_base_phase(&m1).unwrap(), Phase::new(1, 2));
        // directly: θ at embedded −1 agrees
        let m1e = e.embed_base(&m1);
        assert_eq!(theta.eval_ext_phase(&m1e).unwrap(), Phase::new(1, 2));
    }

    #[test]
    fn ramified_restriction_at_pi_is_c_squared() {
        // E = F(√ϖ), θ(ϖ_E) = c: the image of ϖ is (√ϖ)², so the restricted
        // value at ϖ is c² (element arithmetic is the oracle here).
        let e = QuadExt::new(base3(), AlphaTag::Pi).unwrap();
        let c = Phase::new(1, 8);
        let theta = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 1, c);
        let res = char_restrict_f(&theta).unwrap();
        let w = e.base.elt_uniformizer_pow(1);
        let got = res.eval_base_phase(&w).unwrap();
        // oracle: evaluate θ at the embedded element
        let we = e.embed_base(&w);
        assert_eq!(got, theta.eval_ext_phase(&we).unwrap());
        assert_eq!(got, c.pow(2));
    }

    #[test]
    fn pullback_evaluates_through_norm() {
        let e = unram3();
        let f = e.base.clone();
        let xi = PAdicChar::depth_zero(PAdicDomain::Base(f.clone()), 1, Phase::new(1, 4));
        let theta = char_pullback_norm(&xi, &e).unwrap();
        for k in 0..8 {
            let x = e.elt_teich(k);
            let lhs = theta.eval_ext_phase(&x).unwrap();
            let rhs = xi.eval_base_phase(&e.norm(&x)).unwrap();
            assert_eq!(lhs, rhs, "pullback at teich {k}");
        }
        let y = e.uniformizer();
        assert_eq!(
            theta.eval_ext_phase(&y).unwrap(),
            xi.eval_base_phase(&e.norm(&y)).unwrap()
        );
    }

    #[test]
    fn sgn_unramified() {
        let e = unram3();
        let s = sgn_ef(&e).unwrap();
        let w = e.base.elt_uniformizer_pow(1);
        assert_eq!(s.eval_base_phase(&w).unwrap(), Phase::new(1, 2));
        // trivial exactly on norms
        for k in 0..8 {
            let x = e.elt_teich(k);
            let n = e.norm(&x);
            assert!(s.eval_base_phase(&n).unwrap().is_one());
        }
        let n_pi = e.norm(&e.uniformizer());
        assert!(s.eval_base_phase(&n_pi).unwrap().is_one());
        // sgn² trivial, sgn nontrivial
        let sq = char_pow(&QuasiCharacter::PAdic(s.clone()), 2);
        if let QuasiCharacter::PAdic(sq) = sq {
            assert!(sq.is_trivial());
        }
        assert!(!s.is_trivial());
    }

    #[test]
    fn sgn_ramified_kills_norms() {
        for alpha in [AlphaTag::Pi, AlphaTag::EpsPi] {
            let e = QuadExt::new(base3(), alpha).unwrap();
            let s = sgn_ef(&e).unwrap();
            // N(ϖ_E) = −α
            let n = e.norm(&e.uniformizer());
            assert!(s.eval_base_phase(&n).unwrap().is_one(), "{alpha:?}");
            // norms of Teichmüller units are squares: trivial
            for k in 0..2 {
                let x = e.elt_teich(k);
                let n = e.norm(&x);
                assert!(s.eval_base_phase(&n).unwrap().is_one());
            }
            // nontrivial at ε
            let eps = e.base.elt_teich(1);
            assert_eq!(s.eval_base_phase(&eps).unwrap(), Phase::new(1, 2));
        }
    }

    #[test]
    fn admissibility_depth_zero_unramified() {
        let e = unram3();
        // k=1: admissible (θ(ζ²) = i ≠ 1 on ker N = ⟨ζ^{q−1}⟩ = ⟨ζ²⟩)
        let t1 = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 1, Phase::ONE);
        assert!(is_admissible(&e, &t1).unwrap());
        // k=4: (q+1) | 4 → not admissible
        let t4 = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 4, Phase::ONE);
        assert!(!is_admissible(&e, &t4).unwrap());
        // norm pullbacks are never admissible
        let xi = PAdicChar::depth_zero(PAdicDomain::Base(e.base.clone()), 1, Phase::new(3, 7));
        let pull = char_pullback_norm(&xi, &e).unwrap();
        assert!(!is_admissible(&e, &pull).unwrap());
    }

    #[test]
    fn admissibility_ramified_needs_depth() {
        let e = QuadExt::new(base3(), AlphaTag::Pi).unwrap();
        let t0 = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 1, Phase::new(1, 8));
        assert!(!is_admissible(&e, &t0).unwrap());
        let k = &e.base.residue;
        let t1 = t0.clone().with_ramified_digits(vec![k.from_u64(1)]).unwrap();
        assert!(is_admissible(&e, &t1).unwrap());
        // ramified norm pullback of a conductor-1 ξ: conductor 2, not admissible
        let f = e.base.clone();
        let xi = PAdicChar::depth_zero(PAdicDomain::Base(f.clone()), 0, Phase::ONE)
            .with_unramified_functional(1, f.one(), f.zero())
            .unwrap();
        let pull = char_pullback_norm(&xi, &e).unwrap();
        assert_eq!(char_depth(&pull), num_rational::Rational64::from_integer(2));
        assert!(!is_admissible(&e, &pull).unwrap());
    }

    #[test]
    fn multiplicativity_with_functionals() {
        let e = unram3();
        let f = e.base.clone();
        let theta = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 3, Phase::new(2, 5))
            .with_unramified_functional(1, f.one(), f.ring_from_i64(2))
            .unwrap();
        // sample elements with tails
        let mk = |k: i64, tail: i64| {
            let t = e.elt_teich(k);
            let one_plus = e
                .elt_from_pair(f.ring_from_i64(1 + 3 * tail), f.ring_from_i64(3))
                .unwrap();
            e.mul(&t, &one_plus)
        };
        let x = mk(2, 1);
        let y = mk(5, 2);
        let lhs = theta.eval_ext_phase(&e.mul(&x, &y)).unwrap();
        let rhs = theta
            .eval_ext_phase(&x)
            .unwrap()
            .mul(&theta.eval_ext_phase(&y).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn galois_conj_teich_exponent() {
        let e = unram3();
        let theta = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 1, Phase::ONE);
        let conj = char_galois_conj(&theta).unwrap();
        assert_eq!(conj.teich, 3);
        // θ^λ(x) = θ(x^σ) pointwise
        for k in 0..8 {
            let x = e.elt_teich(k);
            let lhs = conj.eval_ext_phase(&x).unwrap();
            let rhs = theta.eval_ext_phase(&e.galois_conj(&x)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn char_pow_parameters() {
        // char_pow(PAdicChar(k=3), 5) over q_E = 9 → k = 15 mod 8 = 7
        let e = unram3();
        let theta = QuasiCharacter::PAdic(PAdicChar::depth_zero(
            PAdicDomain::Ext(e.clone()),
            3,
            Phase::ONE,
        ));
        let p5 = char_pow(&theta, 5);
        match p5 {
            QuasiCharacter::PAdic(c) => assert_eq!(c.teich, 7),
            _ => panic!(),
        }
        // real: (−1, it)² = (+1, 2it)
        let r = QuasiCharacter::Real(RealChar {
            sign: -1,
            t: Complex64::new(0.0, 0.7),
        });
        match char_pow(&r, 2) {
            QuasiCharacter::Real(c) => {
                assert_eq!(c.sign, 1);
                assert_relative_eq!(c.t.im, 1.4);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn depth_preserved_under_coprime_power() {
        let e = unram3();
        let f = e.base.clone();
        let theta = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 1, Phase::ONE)
            .with_unramified_functional(1, f.ring_from_i64(2), f.one())
            .unwrap();
        let q = QuasiCharacter::PAdic(theta);
        for n in [5, 7, 11, 25] {
            let pn = char_pow(&q, n);
            if let QuasiCharacter::PAdic(c) = pn {
                assert_eq!(char_depth(&c), num_rational::Rational64::from_integer(1));
            }
        }
        // p | n collapses the functional
        if let QuasiCharacter::PAdic(c) = char_pow(&q, 3) {
            assert_eq!(char_depth(&c), num_rational::Rational64::from_integer(0));
        }
    }
}
