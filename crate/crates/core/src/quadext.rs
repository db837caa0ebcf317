//! Quadratic étale algebras E_α = F[y]/(y² − α) for α ∈ Q_F = {1, ε, ϖ, εϖ}.
//!
//! ε is the Teichmüller lift of the residue generator (a non-square unit), so
//! α = ε gives the unramified quadratic field, α ∈ {ϖ, εϖ} the two ramified
//! ones, and α = 1 the split algebra F×F.  Field elements are stored as
//! ϖ_E^v·(a + b·y) with a unit pair (a, b) over O_F/p^N; the split algebra is
//! a pair of F^×-elements with the swap as Galois involution.

use crate::error::{Error, Result};
use crate::padic::{FElt, PAdicDesc, PAdicField, RingElt};
use crate::residue::ResidueElt;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Which α ∈ Q_F presents the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaTag {
    /// α = 1: the split algebra F×F.
    Split,
    /// α = ε: the unramified quadratic field.
    Eps,
    /// α = ϖ.
    Pi,
    /// α = εϖ.
    EpsPi,
}

impl AlphaTag {
    pub fn is_field(&self) -> bool {
        !matches!(self, AlphaTag::Split)
    }

    pub fn is_ramified(&self) -> bool {
        matches!(self, AlphaTag::Pi | AlphaTag::EpsPi)
    }
}

/// Residue-field data of the unramified quadratic extension k_E = k_F(√ε̄):
/// elements are pairs (a, b) ≙ a + b·s with s² = ε̄.
#[derive(Debug)]
pub struct QuadResidueCtx {
    /// Generator of k_E^× chosen with N(g_E) = g_E^{q+1} = g_F (smallest
    /// encoding among those), so Teichmüller exponents restrict compatibly.
    pub generator: (ResidueElt, ResidueElt),
    dlog: Vec<Option<u32>>,
}

/// A quadratic étale algebra over the base field, with cached residue data.
#[derive(Debug)]
pub struct QuadExt {
    pub base: Arc<PAdicField>,
    pub alpha: AlphaTag,
    pub ramified: bool,
    /// Residue cardinality of E: q² unramified, q ramified or split.
    pub q_e: u64,
    /// α as a ring element (field cases).
    pub alpha_ring: RingElt,
    /// ϖ-valuation of α: 0 for ε, 1 for ϖ and εϖ.
    alpha_val: i64,
    /// Unit u with α = u·ϖ in the ramified cases (1 or ε).
    alpha_unit: RingElt,
    pub k_e: Option<QuadResidueCtx>,
    /// Teichmüller lifts of generator^k as (a, b) pairs (unramified only;
    /// ramified extensions use the base-field table).
    teich_table: Vec<(RingElt, RingElt)>,
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        *self.base == *other.base && self.alpha == other.alpha
    }
}

/// Serializable descriptor (base, α).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadExtDesc {
    pub base: PAdicDesc,
    pub alpha: AlphaTag,
}

impl QuadExtDesc {
    pub fn build(&self) -> Result<Arc<QuadExt>> {
        QuadExt::new(self.base.build()?, self.alpha)
    }
}

/// An element of E_α^×.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum QuadExtElement {
    /// ϖ_E^val · (a + b·y), with (a + b·y) a unit of O_E.
    Field {
        val: i64,
        a: RingElt,
        b: RingElt,
        prec: usize,
    },
    /// An element of F^× × F^×.
    Split { x: FElt, y: FElt },
}

impl QuadExt {
    pub fn new(base: Arc<PAdicField>, alpha: AlphaTag) -> Result<Arc<QuadExt>> {
        let q = base.q;
        let (ramified, q_e) = match alpha {
            AlphaTag::Split => (false, q),
            AlphaTag::Eps => (false, q * q),
            AlphaTag::Pi | AlphaTag::EpsPi => (true, q),
        };
        let eps = base.epsilon.clone();
        let (alpha_ring, alpha_val, alpha_unit) = match alpha {
            AlphaTag::Split => (base.one(), 0, base.one()),
            AlphaTag::Eps => (eps.clone(), 0, eps.clone()),
            AlphaTag::Pi => (base.ring_scalar_mul(base.p, &base.one()), 1, base.one()),
            AlphaTag::EpsPi => (base.ring_scalar_mul(base.p, &eps), 1, eps.clone()),
        };
        let k_e = if alpha == AlphaTag::Eps {
            Some(Self::build_k_e(&base)?)
        } else {
            None
        };
        let mut ext = QuadExt {
            base,
            alpha,
            ramified,
            q_e,
            alpha_ring,
            alpha_val,
            alpha_unit,
            k_e,
            teich_table: Vec::new(),
        };
        if alpha == AlphaTag::Eps {
            // one Frobenius-stabilized lift of the generator, then products
            let g = ext.k_e.as_ref().unwrap().generator.clone();
            let mut tau = QuadExtElement::Field {
                val: 0,
                a: g.0.clone(),
                b: g.1.clone(),
                prec: ext.base.precision,
            };
            for _ in 0..ext.base.precision {
                tau = ext.pow(&tau, ext.q_e as i64)?;
            }
            let QuadExtElement::Field { a: ta, b: tb, .. } = tau else { unreachable!() };
            let mut table = Vec::with_capacity((ext.q_e - 1) as usize);
            table.push((ext.base.one(), ext.base.zero()));
            for k in 1..(ext.q_e - 1) as usize {
                let prev = table[k - 1].clone();
                table.push(ext.unit_mul(&prev.0, &prev.1, &ta, &tb));
            }
            ext.teich_table = table;
        }
        Ok(Arc::new(ext))
    }

    pub fn desc(&self) -> QuadExtDesc {
        QuadExtDesc {
            base: self.base.desc(),
            alpha: self.alpha,
        }
    }

    // ---- residue field of the unramified extension ----

    fn kres_mul(
        base: &PAdicField,
        a: &(ResidueElt, ResidueElt),
        b: &(ResidueElt, ResidueElt),
    ) -> (ResidueElt, ResidueElt) {
        let k = &base.residue;
        let eps = &k.generator;
        // (a0 + a1 s)(b0 + b1 s) with s² = ε̄
        let re = k.add(&k.mul(&a.0, &b.0), &k.mul(eps, &k.mul(&a.1, &b.1)));
        let im = k.add(&k.mul(&a.0, &b.1), &k.mul(&a.1, &b.0));
        (re, im)
    }

    fn kres_pow(
        base: &PAdicField,
        a: &(ResidueElt, ResidueElt),
        mut e: u64,
    ) -> (ResidueElt, ResidueElt) {
        let k = &base.residue;
        let mut result = (k.one(), k.zero());
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = Self::kres_mul(base, &result, &b);
            }
            b = Self::kres_mul(base, &b, &b);
            e >>= 1;
        }
        result
    }

    fn kres_encode(base: &PAdicField, a: &(ResidueElt, ResidueElt)) -> u64 {
        let k = &base.residue;
        k.encode(&a.1) * k.q + k.encode(&a.0)
    }

    fn build_k_e(base: &Arc<PAdicField>) -> Result<QuadResidueCtx> {
        let k = &base.residue;
        let q = k.q;
        let order = q * q - 1;
        let mut divisors = Vec::new();
        let mut n = order;
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                divisors.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            divisors.push(n);
        }
        let gf = k.generator.clone();
        let mut generator = None;
        'outer: for enc in 1..q * q {
            let cand = (k.decode(enc % q), k.decode(enc / q));
            // full order
            for &l in &divisors {
                let p = Self::kres_pow(base, &cand, order / l);
                if p == (k.one(), k.zero()) {
                    continue 'outer;
                }
            }
            // norm condition g^{q+1} = g_F
            let nrm = Self::kres_pow(base, &cand, q + 1);
            if nrm != (gf.clone(), k.zero()) {
                continue;
            }
            generator = Some(cand);
            break;
        }
        let generator = generator.ok_or_else(|| {
            Error::InvalidConfig("no norm-compatible generator of k_E found".into())
        })?;
        let mut dlog = vec![None; (q * q) as usize];
        let mut cur = (k.one(), k.zero());
        for e in 0..order {
            dlog[Self::kres_encode(base, &cur) as usize] = Some(e as u32);
            cur = Self::kres_mul(base, &cur, &generator);
        }
        Ok(QuadResidueCtx { generator, dlog })
    }

    /// dlog in k_E^× against the stored generator (unramified only).
    pub fn kres_dlog(&self, a: &(ResidueElt, ResidueElt)) -> Result<i64> {
        let ctx = self
            .k_e
            .as_ref()
            .ok_or_else(|| Error::Unsupported("k_E data only exists unramified".into()))?;
        let enc = Self::kres_encode(&self.base, a) as usize;
        ctx.dlog[enc]
            .map(|k| k as i64)
            .ok_or(Error::DivisionByZero)
    }

    // ---- elements ----

    pub fn one(&self) -> QuadExtElement {
        match self.alpha {
            AlphaTag::Split => QuadExtElement::Split {
                x: self.base.elt_one(),
                y: self.base.elt_one(),
            },
            _ => QuadExtElement::Field {
                val: 0,
                a: self.base.one(),
                b: self.base.zero(),
                prec: self.base.precision,
            },
        }
    }

    /// ϖ_E: p for the unramified field, y = √α ramified.
    pub fn uniformizer(&self) -> QuadExtElement {
        assert!(self.alpha.is_field(), "split algebra has no uniformizer");
        QuadExtElement::Field {
            val: 1,
            a: self.base.one(),
            b: self.base.zero(),
            prec: self.base.precision,
        }
    }

    /// √α itself: y as an element (ramified: ϖ_E; unramified: the unit s).
    pub fn sqrt_alpha(&self) -> QuadExtElement {
        assert!(self.alpha.is_field());
        if self.ramified {
            self.uniformizer()
        } else {
            QuadExtElement::Field {
                val: 0,
                a: self.base.zero(),
                b: self.base.one(),
                prec: self.base.precision,
            }
        }
    }

    /// Embed x ∈ F^× into E^×.
    pub fn embed_base(&self, x: &FElt) -> QuadExtElement {
        match self.alpha {
            AlphaTag::Split => QuadExtElement::Split {
                x: x.clone(),
                y: x.clone(),
            },
            AlphaTag::Eps => QuadExtElement::Field {
                val: x.val,
                a: x.unit.clone(),
                b: self.base.zero(),
                prec: x.prec,
            },
            // ϖ = y²·u^{−1} with α = u·ϖ, so ϖ^v·w ↦ y^{2v}·(w·u^{−v}).
            AlphaTag::Pi | AlphaTag::EpsPi => {
                let uinv = self
                    .base
                    .ring_inv(&self.alpha_unit)
                    .expect("α-unit is invertible");
                let mut unit = x.unit.clone();
                let vv = x.val;
                let factor = if vv >= 0 {
                    self.base.ring_pow(&uinv, vv as u64)
                } else {
                    self.base.ring_pow(&self.alpha_unit, (-vv) as u64)
                };
                unit = self.base.ring_mul(&unit, &factor);
                QuadExtElement::Field {
                    val: 2 * vv,
                    a: unit,
                    b: self.base.zero(),
                    prec: x.prec,
                }
            }
        }
    }

    /// Build a unit element from an explicit (a, b) pair (the matrix-torus
    /// presentation a + b√α); fails if a + b·y is not a unit of O_E.
    pub fn elt_from_pair(&self, a: RingElt, b: RingElt) -> Result<QuadExtElement> {
        assert!(self.alpha.is_field());
        let unit_ok = if self.ramified {
            self.base.is_unit(&a)
        } else {
            self.base.is_unit(&a) || self.base.is_unit(&b)
        };
        if !unit_ok {
            return Err(Error::InvalidConfig(
                "pair does not define a unit of O_E; scale by a power of ϖ_E first".into(),
            ));
        }
        Ok(QuadExtElement::Field {
            val: 0,
            a,
            b,
            prec: self.base.precision,
        })
    }

    /// Teichmüller representative of generator^k in E^× (unramified: the k_E
    /// generator; ramified: the base-field generator).
    pub fn elt_teich(&self, k: i64) -> QuadExtElement {
        assert!(self.alpha.is_field());
        if self.ramified {
            let t = self.base.elt_teich(k);
            self.embed_base(&t)
        } else {
            let m = self.q_e as i64 - 1;
            let (a, b) = self.teich_table[k.rem_euclid(m) as usize].clone();
            QuadExtElement::Field {
                val: 0,
                a,
                b,
                prec: self.base.precision,
            }
        }
    }

    fn unit_mul(&self, a: &RingElt, b: &RingElt, c: &RingElt, d: &RingElt) -> (RingElt, RingElt) {
        // (a + b y)(c + d y) = (ac + α bd) + (ad + bc) y
        let f = &self.base;
        let re = f.ring_add(&f.ring_mul(a, c), &f.ring_mul(&self.alpha_ring, &f.ring_mul(b, d)));
        let im = f.ring_add(&f.ring_mul(a, d), &f.ring_mul(b, c));
        (re, im)
    }

    pub fn mul(&self, x: &QuadExtElement, y: &QuadExtElement) -> QuadExtElement {
        match (x, y) {
            (
                QuadExtElement::Field { val: v1, a, b, prec: p1 },
                QuadExtElement::Field { val: v2, a: c, b: d, prec: p2 },
            ) => {
                // (a+by)(c+dy) of two units stays a unit, so the pair product
                // is already in normal form.
                let (re, im) = self.unit_mul(a, b, c, d);
                QuadExtElement::Field {
                    val: v1 + v2,
                    a: re,
                    b: im,
                    prec: (*p1).min(*p2),
                }
            }
            (QuadExtElement::Split { x: x1, y: y1 }, QuadExtElement::Split { x: x2, y: y2 }) => {
                QuadExtElement::Split {
                    x: self.base.elt_mul(x1, x2),
                    y: self.base.elt_mul(y1, y2),
                }
            }
            _ => panic!("mixed split/field quadratic elements"),
        }
    }

    pub fn inv(&self, x: &QuadExtElement) -> Result<QuadExtElement> {
        match x {
            QuadExtElement::Field { val, a, b, prec } => {
                // 1/(a + by) = (a − by)/(a² − α b²)
                let f = &self.base;
                let nrm = f.ring_sub(
                    &f.ring_mul(a, a),
                    &f.ring_mul(&self.alpha_ring, &f.ring_mul(b, b)),
                );
                let ninv = f.ring_inv(&nrm)?;
                Ok(QuadExtElement::Field {
                    val: -val,
                    a: f.ring_mul(a, &ninv),
                    b: f.ring_neg(&f.ring_mul(b, &ninv)),
                    prec: *prec,
                })
            }
            QuadExtElement::Split { x, y } => Ok(QuadExtElement::Split {
                x: self.base.elt_inv(x)?,
                y: self.base.elt_inv(y)?,
            }),
        }
    }

    pub fn pow(&self, x: &QuadExtElement, k: i64) -> Result<QuadExtElement> {
        if k < 0 {
            let i = self.inv(x)?;
            return self.pow(&i, -k);
        }
        let mut result = self.one();
        let mut b = x.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        Ok(result)
    }

    /// The Galois involution λ: y ↦ −y (swap on the split algebra).
    pub fn galois_conj(&self, x: &QuadExtElement) -> QuadExtElement {
        match x {
            QuadExtElement::Field { val, a, b, prec } => {
                // σ(y^v (a + by)) = (−1)^v·y^v·(a − by) in the ramified case;
                // unramified ϖ_E = p is fixed.
                let mut a2 = a.clone();
                let b2 = self.base.ring_neg(b);
                if self.ramified && val.rem_euclid(2) == 1 {
                    a2 = self.base.ring_neg(&a2);
                    return QuadExtElement::Field {
                        val: *val,
                        a: a2,
                        b: self.base.ring_neg(&b2),
                        prec: *prec,
                    };
                }
                QuadExtElement::Field {
                    val: *val,
                    a: a2,
                    b: b2,
                    prec: *prec,
                }
            }
            QuadExtElement::Split { x, y } => QuadExtElement::Split {
                x: y.clone(),
                y: x.clone(),
            },
        }
    }

    /// N_{E/F}(x) = x·x^σ as an element of F^×.
    pub fn norm(&self, x: &QuadExtElement) -> FElt {
        match x {
            QuadExtElement::Field { val, a, b, prec } => {
                let f = &self.base;
                let nrm_unit = f.ring_sub(
                    &f.ring_mul(a, a),
                    &f.ring_mul(&self.alpha_ring, &f.ring_mul(b, b)),
                );
                if self.ramified {
                    // N(y) = −α = −u·ϖ
                    let neg_u = f.ring_neg(&self.alpha_unit);
                    let mut unit = nrm_unit;
                    let vv = *val;
                    let factor = if vv >= 0 {
                        f.ring_pow(&neg_u, vv as u64)
                    } else {
                        f.ring_pow(&f.ring_inv(&neg_u).unwrap(), (-vv) as u64)
                    };
                    unit = f.ring_mul(&unit, &factor);
                    FElt {
                        val: vv,
                        unit,
                        prec: *prec,
                    }
                } else {
                    FElt {
                        val: 2 * val,
                        unit: nrm_unit,
                        prec: *prec,
                    }
                }
            }
            QuadExtElement::Split { x, y } => self.base.elt_mul(x, y),
        }
    }

    /// Tr_{E/F}(x) = x + x^σ; errors when the trace vanishes to precision.
    pub fn trace(&self, x: &QuadExtElement) -> Result<FElt> {
        match x {
            QuadExtElement::Field { val, a, b: _, prec } => {
                let f = &self.base;
                let two_a = f.ring_scalar_mul(2, a);
                // element is y^v(a+by): trace = y^v a + σ(y^v a…) …
                // For v even = 2w: y^{2w} = α^w ∈ F: Tr = α^w·2a.
                // For v odd the F-part of y^v(a+by) is y^{v+1}b-side; handle
                // by rewriting y^{v}(a+by) = y^{v}a + y^{v+1}b.
                if !self.ramified {
                    if f.ring_val(&two_a).is_none() {
                        return Err(Error::Precision("trace vanishes to precision".into()));
                    }
                    let k = f.ring_val(&two_a).unwrap();
                    return Ok(FElt {
                        val: val + k as i64,
                        unit: f.ring_div_pk(&two_a, k),
                        prec: prec - k,
                    });
                }
                // ramified: Tr(y^{2w}(a+by)) = 2·α^w·a ; Tr(y^{2w+1}(a+by)) = 2·α^{w+1}·b
                let (w, xf) = if val.rem_euclid(2) == 0 {
                    (val.div_euclid(2), two_a)
                } else {
                    let QuadExtElement::Field { b, .. } = x else { unreachable!() };
                    ((val + 1).div_euclid(2), f.ring_scalar_mul(2, b))
                };
                let k = f
                    .ring_val(&xf)
                    .ok_or_else(|| Error::Precision("trace vanishes to precision".into()))?;
                let alpha_f = FElt {
                    val: self.alpha_val,
                    unit: self.alpha_unit.clone(),
                    prec: *prec,
                };
                let apow = self.base.elt_pow(&alpha_f, w)?;
                let main = FElt {
                    val: k as i64,
                    unit: f.ring_div_pk(&xf, k),
                    prec: prec - k,
                };
                Ok(self.base.elt_mul(&apow, &main))
            }
            QuadExtElement::Split { x, y } => {
                // componentwise sum
                let f = &self.base;
                f.elt_sub(x, &f.elt_mul(y, &f.elt_from_i64(-1).unwrap()))
            }
        }
    }

    /// Valuation in ϖ_E-units.
    pub fn ord_e(&self, x: &QuadExtElement) -> Result<i64> {
        match x {
            QuadExtElement::Field { val, .. } => Ok(*val),
            QuadExtElement::Split { .. } => Err(Error::Unsupported(
                "split algebra has componentwise valuations".into(),
            )),
        }
    }

    /// Ramification index e(E/F): 2 ramified, 1 otherwise.
    pub fn ram_index(&self) -> i64 {
        if self.ramified {
            2
        } else {
            1
        }
    }

    /// ord_E(x − y), for elements of equal valuation; errors when the
    /// difference is indistinguishable from zero at working precision.
    pub fn sub_ord(&self, x: &QuadExtElement, y: &QuadExtElement) -> Result<i64> {
        match (x, y) {
            (
                QuadExtElement::Field { val: v1, a, b, prec: p1 },
                QuadExtElement::Field { val: v2, a: c, b: d, prec: p2 },
            ) => {
                if v1 != v2 {
                    return Ok(*v1.min(v2));
                }
                let f = &self.base;
                let da = f.ring_sub(a, c);
                let db = f.ring_sub(b, d);
                let prec = (*p1).min(*p2);
                let va = f.ring_val(&da).filter(|&k| k < prec);
                let vb = f.ring_val(&db).filter(|&k| k < prec);
                let pair_ord = match (va, vb) {
                    (None, None) => {
                        return Err(Error::Precision(
                            "difference vanishes to working precision".into(),
                        ))
                    }
                    (Some(ka), None) => self.pair_ord_parts(Some(ka), None),
                    (None, Some(kb)) => self.pair_ord_parts(None, Some(kb)),
                    (Some(ka), Some(kb)) => self.pair_ord_parts(Some(ka), Some(kb)),
                };
                Ok(v1 + pair_ord)
            }
            (QuadExtElement::Split { x: x1, y: y1 }, QuadExtElement::Split { x: x2, y: y2 }) => {
                let ox = self.base.elt_sub(x1, x2).map(|d| d.ord())?;
                let oy = self.base.elt_sub(y1, y2).map(|d| d.ord())?;
                Ok(ox.min(oy))
            }
            _ => panic!("mixed split/field quadratic elements"),
        }
    }

    /// ϖ_E-valuation of a pair a + b·y given the ϖ-valuations of a and b.
    fn pair_ord_parts(&self, va: Option<usize>, vb: Option<usize>) -> i64 {
        if self.ramified {
            let oa = va.map(|k| 2 * k as i64).unwrap_or(i64::MAX);
            let ob = vb.map(|k| 2 * k as i64 + 1).unwrap_or(i64::MAX);
            oa.min(ob)
        } else {
            let oa = va.map(|k| k as i64).unwrap_or(i64::MAX);
            let ob = vb.map(|k| k as i64).unwrap_or(i64::MAX);
            oa.min(ob)
        }
    }

    pub fn elt_eq(&self, x: &QuadExtElement, y: &QuadExtElement) -> bool {
        match (x, y) {
            (
                QuadExtElement::Field { val: v1, a, b, prec: p1 },
                QuadExtElement::Field { val: v2, a: c, b: d, prec: p2 },
            ) => {
                if v1 != v2 {
                    return false;
                }
                let prec = (*p1).min(*p2);
                let pk = self.base.p.pow(prec as u32);
                a.iter().zip(c).all(|(&x, &y)| x % pk == y % pk)
                    && b.iter().zip(d).all(|(&x, &y)| x % pk == y % pk)
            }
            (QuadExtElement::Split { x: x1, y: y1 }, QuadExtElement::Split { x: x2, y: y2 }) => {
                self.base.elt_eq(x1, x2) && self.base.elt_eq(y1, y2)
            }
            _ => false,
        }
    }

    /// Residue of the unit part in k_E, as a pair over k_F (unramified) or a
    /// base residue element (ramified: second coordinate is the y-digit).
    pub fn residue_pair(&self, x: &QuadExtElement) -> (ResidueElt, ResidueElt) {
        match x {
            QuadExtElement::Field { a, b, .. } => (self.base.reduce(a), self.base.reduce(b)),
            QuadExtElement::Split { .. } => panic!("split algebra has componentwise residues"),
        }
    }

    /// Teichmüller exponent of the unit part against the stored generator of
    /// the residue field of E.
    pub fn teich_exponent(&self, x: &QuadExtElement) -> Result<i64> {
        match x {
            QuadExtElement::Field { a, b, .. } => {
                if self.ramified {
                    self.base.residue.dlog(&self.base.reduce(a))
                } else {
                    let pair = (self.base.reduce(a), self.base.reduce(b));
                    self.kres_dlog(&pair)
                }
            }
            QuadExtElement::Split { .. } => Err(Error::Unsupported(
                "Teichmüller exponent is per-component on the split algebra".into(),
            )),
        }
    }

    /// The one-unit part u₁ = x / (ϖ_E^v · τ(x̄)) ≡ 1 mod p_E, via the
    /// inverse Teichmüller table (τ(c)^{−1} = τ(c^{−1})).
    pub fn one_unit_part(&self, x: &QuadExtElement) -> Result<QuadExtElement> {
        let QuadExtElement::Field { a, b, prec, .. } = x else {
            return Err(Error::Unsupported("one-unit part on the split algebra".into()));
        };
        let f = &self.base;
        let k = self.teich_exponent(x)?;
        let tinv = if self.ramified {
            let c = f.residue.pow(&f.residue.generator.clone(), k);
            QuadExtElement::Field {
                val: 0,
                a: f.teichmuller_inv(&c)?,
                b: f.zero(),
                prec: *prec,
            }
        } else {
            let m = self.q_e as i64 - 1;
            let (ta, tb) = self.teich_table[((m - k.rem_euclid(m)) % m) as usize].clone();
            QuadExtElement::Field {
                val: 0,
                a: ta,
                b: tb,
                prec: *prec,
            }
        };
        let unit = QuadExtElement::Field {
            val: 0,
            a: a.clone(),
            b: b.clone(),
            prec: *prec,
        };
        Ok(self.mul(&unit, &tinv))
    }

    /// log of a one-unit of the unramified extension, as a ring pair (A, B),
    /// valid for additive character pairings of conductor ≤ m.  The series is
    /// truncated at j = ⌊m/d₀⌋ < p; the first omitted p-divisible term x^p/p
    /// has valuation p·d₀ − 1, so exactness to depth m needs p·d₀ ≥ m + 2.
    pub fn log_one_unit(&self, u: &QuadExtElement, m: usize) -> Result<(RingElt, RingElt)> {
        let QuadExtElement::Field { val, a, b, prec } = u else {
            return Err(Error::Unsupported("log on the split algebra".into()));
        };
        if self.ramified {
            return Err(Error::Unsupported(
                "ramified one-unit pairings use the leading-digit coordinate".into(),
            ));
        }
        if *val != 0 {
            return Err(Error::DomainMismatch("log needs a unit".into()));
        }
        let f = &self.base;
        let p = f.p as usize;
        // x = u − 1
        let xa = f.ring_sub(a, &f.one());
        let xb = b.clone();
        let d0 = self.pair_ord_parts(
            f.ring_val(&xa).filter(|&k| k < *prec),
            f.ring_val(&xb).filter(|&k| k < *prec),
        );
        if d0 == i64::MAX {
            return Ok((f.zero(), f.zero())); // trivial one-unit
        }
        let d0 = d0.max(1) as usize;
        if p * d0 < m + 2 {
            return Err(Error::Precision(format!(
                "log truncation not exact for conductor {m} at tail depth {d0} (p = {p})"
            )));
        }
        let jmax = (m / d0).max(1);
        let mut term_a = f.one();
        let mut term_b = f.zero();
        let mut acc_a = f.zero();
        let mut acc_b = f.zero();
        for j in 1..=jmax {
            let (ta, tb) = self.unit_mul(&term_a, &term_b, &xa, &xb);
            term_a = ta;
            term_b = tb;
            // ± x^j / j
            let jinv = f.ring_inv(&f.ring_from_i64(j as i64))?;
            let mut ca = f.ring_mul(&term_a, &jinv);
            let mut cb = f.ring_mul(&term_b, &jinv);
            if j % 2 == 0 {
                ca = f.ring_neg(&ca);
                cb = f.ring_neg(&cb);
            }
            acc_a = f.ring_add(&acc_a, &ca);
            acc_b = f.ring_add(&acc_b, &cb);
        }
        Ok((acc_a, acc_b))
    }

    /// Leading one-unit digit: for u ≡ 1 mod p_E, the class of u − 1 in
    /// p_E/p_E² ≅ k_E.  Additive in u (carries only move upward), so it is
    /// the conductor-1 pairing coordinate in both the unramified and the
    /// ramified case.
    pub fn one_unit_digit1(&self, u: &QuadExtElement) -> Result<(ResidueElt, ResidueElt)> {
        let QuadExtElement::Field { val, a, b, prec: _ } = u else {
            return Err(Error::Unsupported("digit extraction on the split algebra".into()));
        };
        if *val != 0 {
            return Err(Error::DomainMismatch("one-unit digit needs a unit".into()));
        }
        let f = &self.base;
        let xa = f.ring_sub(a, &f.one());
        if self.ramified {
            // u − 1 = b·y + O(p_E²): digit is the residue of b
            if !f.residue.is_zero(&f.reduce(&xa)) {
                return Err(Error::DomainMismatch("element is not a one-unit".into()));
            }
            Ok((f.reduce(b), f.residue.zero()))
        } else {
            // u − 1 = p·w + O(p²): digit is the residue pair of w
            if !f.residue.is_zero(&f.reduce(&xa)) || !f.residue.is_zero(&f.reduce(b)) {
                return Err(Error::DomainMismatch("element is not a one-unit".into()));
            }
            Ok((f.reduce(&f.ring_div_pk(&xa, 1)), f.reduce(&f.ring_div_pk(b, 1))))
        }
    }

    /// The unit u with α = u·ϖ in the ramified cases (1 for α = ϖ, ε for εϖ).
    pub fn alpha_unit_ring(&self) -> RingElt {
        self.alpha_unit.clone()
    }

    /// λ_E := −α, the fixed value of θ∘a_E at the class-field element used by
    /// the induced-parameter matrix presentation.
    pub fn lambda_e(&self) -> QuadExtElement {
        assert!(self.alpha.is_field());
        if self.ramified {
            // −α = −y²: valuation 2, unit −1
            QuadExtElement::Field {
                val: 2,
                a: self.base.ring_from_i64(-1),
                b: self.base.zero(),
                prec: self.base.precision,
            }
        } else {
            QuadExtElement::Field {
                val: 0,
                a: self.base.ring_neg(&self.base.epsilon),
                b: self.base.zero(),
                prec: self.base.precision,
            }
        }
    }

    /// λ_E as an element of F^× (−α lies in the base field).
    pub fn lambda_e_base(&self) -> FElt {
        if self.ramified {
            FElt {
                val: self.alpha_val,
                unit: self.base.ring_neg(&self.alpha_unit),
                prec: self.base.precision,
            }
        } else {
            FElt {
                val: 0,
                unit: self.base.ring_neg(&self.base.epsilon),
                prec: self.base.precision,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base3() -> Arc<PAdicField> {
        PAdicField::new(3, 1, 6).unwrap()
    }

    #[test]
    fn norm_of_sqrt_pi_is_minus_pi() {
        let e = QuadExt::new(base3(), AlphaTag::Pi).unwrap();
        let y = e.sqrt_alpha();
        let n = e.norm(&y);
        // N(√ϖ) = −ϖ
        let expected = e
            .base
            .elt_mul(&e.base.elt_from_i64(-1).unwrap(), &e.base.elt_uniformizer_pow(1));
        assert!(e.base.elt_eq(&n, &expected));
        assert_eq!(e.ord_e(&y).unwrap(), 1);
    }

    #[test]
    fn ord_of_pi_in_base_and_extension() {
        let f = base3();
        assert_eq!(f.elt_uniformizer_pow(1).ord(), 1);
        let e = QuadExt::new(f, AlphaTag::Pi).unwrap();
        assert_eq!(e.ord_e(&e.uniformizer()).unwrap(), 1);
        // ϖ embeds with ord_E = 2
        let w = e.embed_base(&e.base.elt_uniformizer_pow(1));
        assert_eq!(e.ord_e(&w).unwrap(), 2);
    }

    #[test]
    fn galois_conj_is_frobenius_on_teichmuller() {
        // q = 3 unramified: ζ a generator of μ₈; σ(ζ) = ζ³ (brute force in F₉).
        let e = QuadExt::new(base3(), AlphaTag::Eps).unwrap();
        let zeta = e.elt_teich(1);
        let conj = e.galois_conj(&zeta);
        let res = e.residue_pair(&conj);
        let expect = {
            let g = e.k_e.as_ref().unwrap().generator.clone();
            QuadExt::kres_pow(&e.base, &g, 3)
        };
        assert_eq!(res, expect);
        assert!(e.elt_eq(&conj, &e.elt_teich(3)));
    }

    #[test]
    fn norm_is_x_times_conj() {
        let e = QuadExt::new(base3(), AlphaTag::Eps).unwrap();
        for k in 1..8 {
            let x = e.elt_teich(k);
            let n1 = e.norm(&x);
            let prod = e.mul(&x, &e.galois_conj(&x));
            let n2 = e.norm(&prod); // prod lies in F: norm = square
            let emb = e.embed_base(&n1);
            assert!(e.elt_eq(&prod, &emb), "x·σx = N(x) for k = {k}");
            let sq = e.base.elt_mul(&n1, &n1);
            assert!(e.base.elt_eq(&n2, &sq));
        }
    }

    #[test]
    fn generator_norm_compatibility() {
        // g_E^{q+1} = g_F: Teichmüller exponents restrict along μ_{q−1} ⊂ μ_{q²−1}.
        let e = QuadExt::new(base3(), AlphaTag::Eps).unwrap();
        let g = e.elt_teich(1);
        let n = e.norm(&g);
        let gf = e.base.elt_teich(1);
        assert!(e.base.elt_eq(&n, &gf));
    }

    #[test]
    fn split_algebra_swap() {
        let f = base3();
        let e = QuadExt::new(f.clone(), AlphaTag::Split).unwrap();
        let x = QuadExtElement::Split {
            x: f.elt_from_i64(2).unwrap(),
            y: f.elt_from_i64(5).unwrap(),
        };
        let c = e.galois_conj(&x);
        let n = e.norm(&x);
        assert!(f.elt_eq(&n, &f.elt_from_i64(10).unwrap()));
        let n2 = e.norm(&c);
        assert!(f.elt_eq(&n2, &n));
    }

    #[test]
    fn unramified_elliptic_difference_is_unit() {
        // λ = ζ (μ₈ generator, q = 3): λ − λ³ is a unit in F₉
        let e = QuadExt::new(base3(), AlphaTag::Eps).unwrap();
        let l = e.elt_teich(1);
        let c = e.galois_conj(&l);
        assert_eq!(e.sub_ord(&l, &c).unwrap(), 0);
    }

    #[test]
    fn ramified_one_unit_leading_digit() {
        let e = QuadExt::new(base3(), AlphaTag::Pi).unwrap();
        // u = 1 + 2y: leading digit 2, and digits add under multiplication
        let u = e
            .elt_from_pair(e.base.one(), e.base.ring_from_i64(2))
            .unwrap();
        let (d, _) = e.one_unit_digit1(&u).unwrap();
        assert_eq!(d[0], 2);
        let v = e
            .elt_from_pair(e.base.one(), e.base.ring_from_i64(2))
            .unwrap();
        let (d2, _) = e.one_unit_digit1(&e.mul(&u, &v)).unwrap();
        assert_eq!(d2[0], (2 + 2) % 3);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let e = QuadExt::new(base3(), AlphaTag::EpsPi).unwrap();
        let x = e
            .elt_from_pair(e.base.ring_from_i64(2), e.base.ring_from_i64(1))
            .unwrap();
        let mut acc = e.one();
        for _ in 0..5 {
            acc = e.mul(&acc, &x);
        }
        let p = e.pow(&x, 5).unwrap();
        assert!(e.elt_eq(&acc, &p));
    }
}
