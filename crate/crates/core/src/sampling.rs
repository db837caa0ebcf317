//! Seeded samplers for characters and torus elements.
//!
//! Every check owns an independent ChaCha stream derived from (seed, check
//! name), so concurrent execution and check reordering cannot change any
//! drawn value.  Regular elements are re-drawn until eigenvalue gaps clear
//! 1e−6 in the float regimes; p-adic draws are exact.

use crate::characters::{ComplexChar, PAdicChar, PAdicDomain, QuasiCharacter, RealChar};
use crate::padic::{FElt, PAdicField};
use crate::phase::Phase;
use crate::quadext::{QuadExt, QuadExtElement};
use crate::torus::{SplitCoords, TorusElement};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

const MIN_GAP: f64 = 1e-6;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Stream seed derived from the suite seed and the check name.
pub fn stream_seed(seed: u64, name: &str) -> u64 {
    let mut acc = splitmix64(seed);
    for &b in name.as_bytes() {
        acc = splitmix64(acc ^ b as u64);
    }
    acc
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn for_check(seed: u64, name: &str) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(stream_seed(seed, name)),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    // ---- characters ----

    pub fn complex_char_unitary(&mut self) -> QuasiCharacter {
        QuasiCharacter::Complex(ComplexChar {
            l: self.rng.gen_range(-4..=4),
            t: Complex64::new(0.0, self.rng.gen_range(-1.0..1.0)),
        })
    }

    pub fn real_char_unitary(&mut self) -> QuasiCharacter {
        QuasiCharacter::Real(RealChar {
            sign: if self.rng.gen::<bool>() { 1 } else { -1 },
            t: Complex64::new(0.0, self.rng.gen_range(-1.0..1.0)),
        })
    }

    /// Depth ≤ 1 unitary character of F^×.
    pub fn padic_char_base(&mut self, field: &Arc<PAdicField>) -> QuasiCharacter {
        let q = field.q as i64;
        let teich = self.rng.gen_range(0..q - 1);
        let unif = Phase::new(self.rng.gen_range(0..120), 120);
        let mut chi = PAdicChar::depth_zero(PAdicDomain::Base(field.clone()), teich, unif);
        if self.rng.gen::<bool>() && field.p >= 3 {
            let coeff = field.teichmuller(
                &field
                    .residue
                    .decode(self.rng.gen_range(1..field.residue.q)),
            );
            chi = chi
                .with_unramified_functional(1, coeff, field.zero())
                .expect("conductor 1 is always representable");
        }
        QuasiCharacter::PAdic(chi)
    }

    /// Depth ≤ 1 character of E^×.
    pub fn padic_char_ext(&mut self, ext: &Arc<QuadExt>) -> PAdicChar {
        let q_e = ext.q_e as i64;
        let teich = self.rng.gen_range(0..q_e - 1);
        let unif = Phase::new(self.rng.gen_range(0..120), 120);
        let chi = PAdicChar::depth_zero(PAdicDomain::Ext(ext.clone()), teich, unif);
        if !self.rng.gen::<bool>() {
            return chi;
        }
        if ext.ramified {
            let k = &ext.base.residue;
            let d1 = k.decode(self.rng.gen_range(0..k.q));
            chi.with_ramified_digits(vec![d1]).expect("depth ≤ 1 digits")
        } else {
            let f = &ext.base;
            let enc_a = self.rng.gen_range(0..f.residue.q);
            let enc_b = self.rng.gen_range(0..f.residue.q);
            if enc_a == 0 && enc_b == 0 {
                return chi;
            }
            let ca = f.teichmuller(&f.residue.decode(enc_a));
            let cb = f.teichmuller(&f.residue.decode(enc_b));
            chi.with_unramified_functional(1, ca, cb)
                .expect("conductor 1 is always representable")
        }
    }

    // ---- field elements ----

    pub fn complex_coord(&mut self) -> Complex64 {
        let r = self.rng.gen_range(0.5..1.8);
        let th = self.rng.gen_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(r, th)
    }

    pub fn real_coord(&mut self) -> f64 {
        let mag = self.rng.gen_range(0.3..3.0);
        if self.rng.gen::<bool>() {
            mag
        } else {
            -mag
        }
    }

    /// A unit of F^× with a random Teichmüller part and a one-unit tail
    /// filled to full working depth.
    pub fn padic_unit(&mut self, field: &Arc<PAdicField>) -> FElt {
        let teich = field.elt_teich(self.rng.gen_range(0..field.q as i64 - 1));
        let mut tail = field.one();
        for d in 1..field.precision {
            let mut digit = vec![0u64; field.f];
            for c in digit.iter_mut() {
                *c = self.rng.gen_range(0..field.p) * field.p.pow(d as u32);
            }
            tail = field.ring_add(&tail, &digit);
        }
        let one_unit = field.elt_from_unit(tail, 0).expect("tail is a unit");
        field.elt_mul(&teich, &one_unit)
    }

    /// A unit of E^× (regular as a torus element is the caller's concern).
    pub fn quadext_unit(&mut self, ext: &Arc<QuadExt>) -> QuadExtElement {
        let f = &ext.base;
        loop {
            let a: Vec<u64> = (0..f.f).map(|_| self.rng.gen_range(0..f.pn)).collect();
            let b: Vec<u64> = (0..f.f).map(|_| self.rng.gen_range(0..f.pn)).collect();
            if let Ok(u) = ext.elt_from_pair(a, b) {
                return u;
            }
        }
    }

    /// Regular unramified/ramified elliptic torus element (a unit).
    pub fn padic_elliptic(&mut self, ext: &Arc<QuadExt>) -> TorusElement {
        loop {
            let lambda = self.quadext_unit(ext);
            let g = TorusElement::PAdicElliptic {
                ext: ext.clone(),
                lambda,
            };
            if g.is_regular() {
                return g;
            }
        }
    }

    /// Regular split coordinates of the requested regime and length.
    pub fn split_coords_complex(&mut self, len: usize) -> SplitCoords {
        loop {
            let v: Vec<Complex64> = (0..len).map(|_| self.complex_coord()).collect();
            let c = SplitCoords::Complex(v);
            if TorusElement::Split(c.clone()).is_regular() && self.gaps_ok(&c) {
                return c;
            }
        }
    }

    pub fn split_coords_real(&mut self, len: usize) -> SplitCoords {
        loop {
            let v: Vec<f64> = (0..len).map(|_| self.real_coord()).collect();
            let c = SplitCoords::Real(v);
            if TorusElement::Split(c.clone()).is_regular() && self.gaps_ok(&c) {
                return c;
            }
        }
    }

    pub fn split_coords_padic(&mut self, field: &Arc<PAdicField>, len: usize) -> SplitCoords {
        loop {
            let v: Vec<FElt> = (0..len).map(|_| self.padic_unit(field)).collect();
            let c = SplitCoords::PAdic {
                field: field.clone(),
                coords: v,
            };
            if TorusElement::Split(c.clone()).is_regular() {
                return c;
            }
        }
    }

    fn gaps_ok(&self, c: &SplitCoords) -> bool {
        match c {
            SplitCoords::Complex(v) => {
                for i in 0..v.len() {
                    for j in (i + 1)..v.len() {
                        if (v[i] - v[j]).norm() < MIN_GAP {
                            return false;
                        }
                    }
                }
                true
            }
            SplitCoords::Real(v) => {
                for i in 0..v.len() {
                    for j in (i + 1)..v.len() {
                        if (v[i] - v[j]).abs() < MIN_GAP {
                            return false;
                        }
                    }
                }
                true
            }
            SplitCoords::PAdic { .. } => true,
        }
    }

    /// Rotation element away from the singular angles.
    pub fn rotation(&mut self) -> TorusElement {
        loop {
            let theta = self.rng.gen_range(0.05..std::f64::consts::PI - 0.05);
            let scalar = self.real_coord();
            let g = TorusElement::RealRotation { theta, scalar };
            if g.is_regular() {
                return g;
            }
        }
    }

    /// Positive-split real element z·(±a(α)).
    pub fn real_split(&mut self) -> TorusElement {
        TorusElement::RealSplit {
            alpha: self.rng.gen_range(0.1..2.0),
            sign: if self.rng.gen::<bool>() { 1 } else { -1 },
            scalar: self.real_coord(),
        }
    }
}
