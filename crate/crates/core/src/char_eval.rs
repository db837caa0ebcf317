//! Normalized distribution characters D^{1/2}·tr on torus coordinates.
//!
//! Principal series characters are Weyl-group sums over split coordinates and
//! vanish on elliptic classes (a measure-zero convention, not an error).  The
//! real discrete-series table is: (±1)^l(−2e^{−lα}) on z·(±a(α)),
//! −(e^{ilθ} − e^{−ilθ}) on z·s(θ), zero off positive determinant, with the
//! central character ((−1)^l, 2t) carrying the scalar.  The depth-zero
//! supercuspidal core evaluates θ(γ̄) + θ^λ(γ̄) on reductions of unramified
//! elliptic units and vanishes elsewhere.

use crate::characters::{char_depth, char_galois_conj, is_admissible, PAdicChar, QuasiCharacter};
use crate::error::{Error, Result};
use crate::padic::{FElt, PAdicField};
use crate::params::{Gl2RepDescriptor, LeviRep};
use crate::quadext::QuadExt;
use crate::torus::{SplitCoords, TorusElement};
use itertools::Itertools;
use num_complex::Complex64;
use std::sync::Arc;

/// Scalar value of a field, tagged by regime (det of a torus element, GL₁
/// arguments, kernel point coordinates).
#[derive(Debug, Clone)]
pub enum ScalarValue {
    Complex(Complex64),
    Real(f64),
    PAdic {
        field: Arc<PAdicField>,
        value: FElt,
    },
}

/// Evaluate a character of F^× / GL₁ at a scalar.
pub fn eval_scalar(chi: &QuasiCharacter, v: &ScalarValue) -> Result<Complex64> {
    match (chi, v) {
        (QuasiCharacter::Complex(c), ScalarValue::Complex(z)) => c.eval(*z),
        (QuasiCharacter::Real(c), ScalarValue::Real(a)) => c.eval(*a),
        (QuasiCharacter::PAdic(c), ScalarValue::PAdic { value, .. }) => c.eval_base(value),
        _ => Err(Error::DomainMismatch(
            "scalar regime does not match the character".into(),
        )),
    }
}

/// det γ as a scalar value.
pub fn det_scalar(gamma: &TorusElement) -> Result<ScalarValue> {
    match gamma {
        TorusElement::Split(SplitCoords::Complex(v)) => {
            Ok(ScalarValue::Complex(v.iter().product()))
        }
        TorusElement::Split(SplitCoords::Real(v)) => Ok(ScalarValue::Real(v.iter().product())),
        TorusElement::Split(SplitCoords::PAdic { field, coords }) => {
            let mut acc = field.elt_one();
            for c in coords {
                acc = field.elt_mul(&acc, c);
            }
            Ok(ScalarValue::PAdic {
                field: field.clone(),
                value: acc,
            })
        }
        TorusElement::RealRotation { scalar, .. } => Ok(ScalarValue::Real(scalar * scalar)),
        TorusElement::RealSplit { scalar, .. } => Ok(ScalarValue::Real(scalar * scalar)),
        TorusElement::PAdicElliptic { ext, lambda } => Ok(ScalarValue::PAdic {
            field: ext.base.clone(),
            value: ext.norm(lambda),
        }),
    }
}

/// Weighted coordinate product Π_k T_{perm(k)}^{exps(k)} of a split element.
pub fn weighted_product(t: &SplitCoords, perm: &[usize], exps: &[i64]) -> Result<ScalarValue> {
    match t {
        SplitCoords::Complex(v) => {
            let mut acc = Complex64::new(1.0, 0.0);
            for (&i, &e) in perm.iter().zip(exps) {
                acc *= v[i].powi(e as i32);
            }
            Ok(ScalarValue::Complex(acc))
        }
        SplitCoords::Real(v) => {
            let mut acc = 1.0f64;
            for (&i, &e) in perm.iter().zip(exps) {
                acc *= v[i].powi(e as i32);
            }
            Ok(ScalarValue::Real(acc))
        }
        SplitCoords::PAdic { field, coords } => {
            let mut acc = field.elt_one();
            for (&i, &e) in perm.iter().zip(exps) {
                acc = field.elt_mul(&acc, &field.elt_pow(&coords[i], e)?);
            }
            Ok(ScalarValue::PAdic {
                field: field.clone(),
                value: acc,
            })
        }
    }
}

/// Build a split GL₂ torus element from two scalar coordinates of the same
/// regime.
pub fn split_gl2_from_scalars(a: &ScalarValue, b: &ScalarValue) -> Result<TorusElement> {
    match (a, b) {
        (ScalarValue::Complex(x), ScalarValue::Complex(y)) => {
            Ok(TorusElement::Split(SplitCoords::Complex(vec![*x, *y])))
        }
        (ScalarValue::Real(x), ScalarValue::Real(y)) => {
            Ok(TorusElement::Split(SplitCoords::Real(vec![*x, *y])))
        }
        (
            ScalarValue::PAdic { field, value: x },
            ScalarValue::PAdic { value: y, .. },
        ) => Ok(TorusElement::Split(SplitCoords::PAdic {
            field: field.clone(),
            coords: vec![x.clone(), y.clone()],
        })),
        _ => Err(Error::DomainMismatch("mixed-regime coordinates".into())),
    }
}

// ---------------------------------------------------------------------------
// principal series
// ---------------------------------------------------------------------------

/// D^{1/2}tr of Ind(χ₁, χ₂) at a torus element: the two-term Weyl sum on
/// split classes, 0 on elliptic classes.
pub fn principal_char_gl2(
    chi1: &QuasiCharacter,
    chi2: &QuasiCharacter,
    t: &TorusElement,
) -> Result<Complex64> {
    if !t.is_regular() {
        return Err(Error::NonRegular("principal series character".into()));
    }
    let coords: SplitCoords = match t {
        TorusElement::Split(c) => {
            if c.len() != 2 {
                return Err(Error::DomainMismatch("GL₂ takes two coordinates".into()));
            }
            c.clone()
        }
        TorusElement::RealSplit { alpha, sign, scalar } => {
            let s = *sign as f64;
            SplitCoords::Real(vec![
                s * scalar * alpha.exp(),
                s * scalar * (-alpha).exp(),
            ])
        }
        TorusElement::RealRotation { .. } | TorusElement::PAdicElliptic { .. } => {
            return Ok(Complex64::new(0.0, 0.0));
        }
    };
    let t1 = weighted_product(&coords, &[0], &[1])?;
    let t2 = weighted_product(&coords, &[1], &[1])?;
    Ok(eval_scalar(chi1, &t1)? * eval_scalar(chi2, &t2)?
        + eval_scalar(chi1, &t2)? * eval_scalar(chi2, &t1)?)
}

/// Full S_{n+1} Weyl sum Σ_s Π_k χ_k(T_{s(k)}) for a list of n+1 characters.
pub fn principal_char_gln(
    chars: &[QuasiCharacter],
    t: &SplitCoords,
    allow_large: bool,
) -> Result<Complex64> {
    let m = chars.len();
    if t.len() != m {
        return Err(Error::DomainMismatch(
            "character list and coordinates must have equal length".into(),
        ));
    }
    if m > 10 && !allow_large {
        return Err(Error::FactorialGuard(m));
    }
    let reg = TorusElement::Split(t.clone());
    if !reg.is_regular() {
        return Err(Error::NonRegular("GL_{n+1} principal character".into()));
    }
    // character values at the coordinates, evaluated once
    let mut vals = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for (k, chi) in chars.iter().enumerate() {
        for (i, slot) in vals[k].iter_mut().enumerate().take(m) {
            let v = weighted_product(t, &[i], &[1])?;
            *slot = eval_scalar(chi, &v)?;
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for perm in (0..m).permutations(m) {
        let mut term = Complex64::new(1.0, 0.0);
        for (k, &i) in perm.iter().enumerate() {
            term *= vals[k][i];
        }
        acc += term;
    }
    Ok(acc)
}

/// The same sum in product form for the Sym^n list:
/// Σ_s χ₁(Π_k T_{s(k)}^{n+1−k}) χ₂(Π_k T_{s(k)}^{k−1}).
pub fn principal_char_gln_sym_form(
    chi1: &QuasiCharacter,
    chi2: &QuasiCharacter,
    n: usize,
    t: &SplitCoords,
    allow_large: bool,
) -> Result<Complex64> {
    let m = n + 1;
    if t.len() != m {
        return Err(Error::DomainMismatch(
            "need n+1 coordinates for the Sym^n product form".into(),
        ));
    }
    if m > 10 && !allow_large {
        return Err(Error::FactorialGuard(m));
    }
    let exps1: Vec<i64> = (0..m).map(|k| (m - 1 - k) as i64).collect();
    let exps2: Vec<i64> = (0..m).map(|k| k as i64).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for perm in (0..m).permutations(m) {
        let a = weighted_product(t, &perm, &exps1)?;
        let b = weighted_product(t, &perm, &exps2)?;
        acc += eval_scalar(chi1, &a)? * eval_scalar(chi2, &b)?;
    }
    Ok(acc)
}

/// The Sym^n character list (χ₁^n, χ₁^{n−1}χ₂, …, χ₂^n).
pub fn sym_char_list(
    chi1: &QuasiCharacter,
    chi2: &QuasiCharacter,
    n: usize,
) -> Result<Vec<QuasiCharacter>> {
    use crate::characters::{char_mul, char_pow};
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        out.push(char_mul(
            &char_pow(chi1, (n - k) as i64),
            &char_pow(chi2, k as i64),
        )?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// real discrete series
// ---------------------------------------------------------------------------

/// D^{1/2}tr of π_{(l,t)} = D_l ⊗ |det|^t at a real torus element.
pub fn discrete_char(l: i64, t: Complex64, gamma: &TorusElement) -> Result<Complex64> {
    if !gamma.is_regular() {
        return Err(Error::NonRegular("discrete series character".into()));
    }
    let central = |z: f64| -> Complex64 {
        // ((−1)^l, 2t) at z
        let sign = if l % 2 != 0 && z < 0.0 { -1.0 } else { 1.0 };
        Complex64::new(sign, 0.0) * Complex64::new(z.abs(), 0.0).powc(2.0 * t)
    };
    match gamma {
        TorusElement::RealSplit { alpha, sign, scalar } => {
            let sgn_part = if l % 2 != 0 { *sign as f64 } else { 1.0 };
            Ok(central(*scalar)
                * Complex64::new(sgn_part * (-2.0) * (-l as f64 * alpha).exp(), 0.0))
        }
        TorusElement::RealRotation { theta, scalar } => {
            let lt = l as f64 * theta;
            // −(e^{ilθ} − e^{−ilθ}) = −2i sin(lθ)
            Ok(central(*scalar) * Complex64::new(0.0, -2.0 * lt.sin()))
        }
        TorusElement::Split(SplitCoords::Real(v)) => {
            if v.len() != 2 {
                return Err(Error::DomainMismatch("GL₂ takes two coordinates".into()));
            }
            let det = v[0] * v[1];
            if det < 0.0 {
                return Ok(Complex64::new(0.0, 0.0)); // negative determinant: trace zero
            }
            let z = det.sqrt();
            let s = if v[0] > 0.0 { 1.0 } else { -1.0 };
            let alpha = 0.5 * (v[0] / v[1]).abs().ln().abs();
            let sgn_part = if l % 2 != 0 { s } else { 1.0 };
            Ok(central(z) * Complex64::new(sgn_part * (-2.0) * (-(l as f64) * alpha).exp(), 0.0))
        }
        _ => Err(Error::DomainMismatch(
            "discrete series live over the reals".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// depth-zero supercuspidal core
// ---------------------------------------------------------------------------

/// The core matrix-coefficient function χ̇ of a depth-zero supercuspidal:
/// θ(γ̄) + θ^λ(γ̄) on unramified elliptic units, 0 elsewhere.
pub fn depth_zero_cusp_core(
    ext: &Arc<QuadExt>,
    theta: &PAdicChar,
    gamma: &TorusElement,
) -> Result<Complex64> {
    if ext.ramified || !ext.alpha.is_field() {
        return Err(Error::Unsupported(
            "depth-zero supercuspidals live on the unramified extension".into(),
        ));
    }
    if char_depth(theta) != num_rational::Rational64::from_integer(0) {
        return Err(Error::Unsupported(
            "positive-depth characters have no depth-zero core".into(),
        ));
    }
    if !is_admissible(ext, theta)? {
        return Err(Error::Unsupported(
            "character is not admissible for this extension".into(),
        ));
    }
    if !gamma.is_regular() {
        return Err(Error::NonRegular("cuspidal core".into()));
    }
    match gamma {
        TorusElement::PAdicElliptic { ext: e, lambda } => {
            if **e != **ext {
                return Ok(Complex64::new(0.0, 0.0));
            }
            if ext.ord_e(lambda)? != 0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            // γ̄ = Teichmüller reduction mod (GL₂)_{x₀,0⁺}
            let k_gamma = ext.teich_exponent(lambda)?;
            let conj = char_galois_conj(theta)?;
            let q2 = ext.q_e as i64;
            let v1 = crate::phase::Phase::root_of_unity(theta.teich * k_gamma, q2 - 1);
            let v2 = crate::phase::Phase::root_of_unity(conj.teich * k_gamma, q2 - 1);
            Ok(v1.value() + v2.value())
        }
        TorusElement::Split(SplitCoords::PAdic { .. }) => Ok(Complex64::new(0.0, 0.0)),
        _ => Err(Error::DomainMismatch(
            "cuspidal core is a p-adic function".into(),
        )),
    }
}

/// Dimension of the depth-zero cuspidal inducing representation: q − 1,
/// independent of θ.
pub fn dim_rho_depth0(q: u64) -> Result<u64> {
    // q must be an odd prime power
    let mut n = q;
    let mut p = 0;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            p = d;
            while n.is_multiple_of(d) {
                n /= d;
            }
            break;
        }
        d += 1;
    }
    if n > 1 && p == 0 {
        p = n;
        n = 1;
    }
    if n != 1 || p == 2 || p == 0 {
        return Err(Error::InvalidConfig(format!(
            "{q} is not an odd prime power"
        )));
    }
    Ok(q - 1)
}

// ---------------------------------------------------------------------------
// evaluator objects
// ---------------------------------------------------------------------------

/// Where a normalized character is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportClass {
    SplitSupport,
    EllipticSupport,
    FullSupport,
}

/// A normalized GL₂ distribution character D^{1/2}·tr as an evaluator, tagged
/// with the descriptor it came from.
#[derive(Debug, Clone)]
pub enum NormalizedChar {
    Principal {
        chi1: QuasiCharacter,
        chi2: QuasiCharacter,
    },
    Discrete {
        l: i64,
        t: Complex64,
    },
    DepthZeroCusp {
        ext: Arc<QuadExt>,
        theta: PAdicChar,
    },
}

impl NormalizedChar {
    pub fn support(&self) -> SupportClass {
        match self {
            NormalizedChar::Principal { .. } => SupportClass::SplitSupport,
            NormalizedChar::Discrete { .. } => SupportClass::FullSupport,
            NormalizedChar::DepthZeroCusp { .. } => SupportClass::EllipticSupport,
        }
    }

    pub fn eval(&self, gamma: &TorusElement) -> Result<Complex64> {
        match self {
            NormalizedChar::Principal { chi1, chi2 } => principal_char_gl2(chi1, chi2, gamma),
            NormalizedChar::Discrete { l, t } => discrete_char(*l, *t, gamma),
            NormalizedChar::DepthZeroCusp { ext, theta } => {
                depth_zero_cusp_core(ext, theta, gamma)
            }
        }
    }

    /// The evaluator of the GL₂ representation attached to a parameter.
    pub fn from_parameter(phi: &crate::params::LParameter) -> Result<NormalizedChar> {
        use crate::params::LParameter;
        match phi {
            LParameter::Principal { chi1, chi2 } => Ok(NormalizedChar::Principal {
                chi1: chi1.clone(),
                chi2: chi2.clone(),
            }),
            LParameter::RealDiscrete { l, t } => Ok(NormalizedChar::Discrete { l: *l, t: *t }),
            LParameter::PAdicInduced { ext, theta } => Ok(NormalizedChar::DepthZeroCusp {
                ext: ext.clone(),
                theta: theta.clone(),
            }),
            LParameter::SteinbergTwist { .. } => Err(Error::Unsupported(
                "no transfer kernels for twisted Steinberg".into(),
            )),
        }
    }
}

// ---------------------------------------------------------------------------
// Levi tensor characters
// ---------------------------------------------------------------------------

/// The normalized character of a GL₂ block descriptor.
pub fn block_char(desc: &Gl2RepDescriptor, gamma: &TorusElement) -> Result<Complex64> {
    match desc {
        Gl2RepDescriptor::PrincipalSeries(chi1, chi2) => principal_char_gl2(chi1, chi2, gamma),
        Gl2RepDescriptor::DiscreteSeries { l, t } => discrete_char(*l, *t, gamma),
        Gl2RepDescriptor::Supercuspidal { ext, theta } => {
            if char_depth(theta) != num_rational::Rational64::from_integer(0) {
                return Err(Error::Unsupported(
                    "positive-depth supercuspidal characters are not evaluated numerically".into(),
                ));
            }
            depth_zero_cusp_core(ext, theta, gamma)
        }
    }
}

/// D^{1/2}_M tr of the Levi tensor product at block arguments (gl1 scalar in
/// even degree): Π_k twist_k(det g_k)·Θ_k(g_k) × gl1 character.
pub fn levi_tensor_char(
    rep: &LeviRep,
    blocks: &[TorusElement],
    gl1_arg: Option<&ScalarValue>,
) -> Result<Complex64> {
    if blocks.len() != rep.blocks.len() {
        return Err(Error::DomainMismatch(format!(
            "expected {} block arguments, got {}",
            rep.blocks.len(),
            blocks.len()
        )));
    }
    if rep.gl1.is_some() != gl1_arg.is_some() {
        return Err(Error::DomainMismatch(
            "GL₁ argument presence must match the representation".into(),
        ));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for ((twist, desc), g) in rep.blocks.iter().zip(blocks) {
        let d = det_scalar(g)?;
        acc *= eval_scalar(twist, &d)?;
        acc *= block_char(desc, g)?;
    }
    if let (Some(chi), Some(a)) = (&rep.gl1, gl1_arg) {
        acc *= eval_scalar(chi, a)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{ComplexChar, PAdicDomain, RealChar};
    use crate::params::{levi_rep, LParameter};
    use crate::phase::Phase;
    use crate::quadext::AlphaTag;
    use approx::assert_relative_eq;

    fn trivial_real() -> QuasiCharacter {
        QuasiCharacter::Real(RealChar {
            sign: 1,
            t: Complex64::new(0.0, 0.0),
        })
    }

    #[test]
    fn gl2_weyl_sum_trivial() {
        // χ₁ = χ₂ = 1 at diag(2,3) → 2
        let t = TorusElement::Split(SplitCoords::Real(vec![2.0, 3.0]));
        let v = principal_char_gl2(&trivial_real(), &trivial_real(), &t).unwrap();
        assert_relative_eq!(v.re, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn gl2_complex_example() {
        // χ₁ = (l=1, t=0), χ₂ = 1 at (i, 1) → i + 1
        let chi1 = QuasiCharacter::Complex(ComplexChar {
            l: 1,
            t: Complex64::new(0.0, 0.0),
        });
        let chi2 = QuasiCharacter::Complex(ComplexChar {
            l: 0,
            t: Complex64::new(0.0, 0.0),
        });
        let t = TorusElement::Split(SplitCoords::Complex(vec![
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, 0.0),
        ]));
        let v = principal_char_gl2(&chi1, &chi2, &t).unwrap();
        assert_relative_eq!(v.re, 1.0, epsilon = 1e-14);
        assert_relative_eq!(v.im, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn gl2_elliptic_support_zero() {
        let t = TorusElement::RealRotation {
            theta: 0.9,
            scalar: 1.0,
        };
        let v = principal_char_gl2(&trivial_real(), &trivial_real(), &t).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn gln_trivial_weyl_sum_counts_permutations() {
        let chars = vec![trivial_real(), trivial_real(), trivial_real()];
        let t = SplitCoords::Real(vec![2.0, 3.0, 5.0]);
        let v = principal_char_gln(&chars, &t, false).unwrap();
        assert_relative_eq!(v.re, 6.0, epsilon = 1e-13);
    }

    #[test]
    fn gln_two_forms_agree() {
        // n = 3, nontrivial unitary characters: both displayed forms agree
        let chi1 = QuasiCharacter::Complex(ComplexChar {
            l: 2,
            t: Complex64::new(0.0, 0.35),
        });
        let chi2 = QuasiCharacter::Complex(ComplexChar {
            l: -1,
            t: Complex64::new(0.0, -0.6),
        });
        let n = 3;
        let t = SplitCoords::Complex(vec![
            Complex64::from_polar(1.1, 0.3),
            Complex64::from_polar(0.8, 1.9),
            Complex64::from_polar(1.4, -0.7),
            Complex64::from_polar(0.6, 2.4),
        ]);
        let list = sym_char_list(&chi1, &chi2, n).unwrap();
        let a = principal_char_gln(&list, &t, false).unwrap();
        let b = principal_char_gln_sym_form(&chi1, &chi2, n, &t, false).unwrap();
        assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()), "{a} vs {b}");
    }

    #[test]
    fn gln_factorial_guard() {
        let chars: Vec<_> = (0..11).map(|_| trivial_real()).collect();
        let t = SplitCoords::Real((1..=11).map(|k| k as f64).collect());
        assert!(matches!(
            principal_char_gln(&chars, &t, false),
            Err(Error::FactorialGuard(11))
        ));
    }

    #[test]
    fn weyl_symmetry_gl2() {
        let chi1 = QuasiCharacter::Real(RealChar {
            sign: -1,
            t: Complex64::new(0.0, 0.8),
        });
        let chi2 = QuasiCharacter::Real(RealChar {
            sign: 1,
            t: Complex64::new(0.0, -0.3),
        });
        let t12 = TorusElement::Split(SplitCoords::Real(vec![2.0, -3.0]));
        let t21 = TorusElement::Split(SplitCoords::Real(vec![-3.0, 2.0]));
        let a = principal_char_gl2(&chi1, &chi2, &t12).unwrap();
        let b = principal_char_gl2(&chi1, &chi2, &t21).unwrap();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn discrete_series_table() {
        // l=1, t=0 at s(π/2): −(i − (−i)) = −2i
        let g = TorusElement::RealRotation {
            theta: std::f64::consts::FRAC_PI_2,
            scalar: 1.0,
        };
        let v = discrete_char(1, Complex64::new(0.0, 0.0), &g).unwrap();
        assert_relative_eq!(v.re, 0.0, epsilon = 1e-14);
        assert_relative_eq!(v.im, -2.0, epsilon = 1e-14);
        // l=2, t=0 at −a(α): (−1)²(−2e^{−2α})
        let alpha = 0.7;
        let g = TorusElement::RealSplit {
            alpha,
            sign: -1,
            scalar: 1.0,
        };
        let v = discrete_char(2, Complex64::new(0.0, 0.0), &g).unwrap();
        assert_relative_eq!(v.re, -2.0 * (-2.0 * alpha).exp(), epsilon = 1e-14);
        // negative determinant: zero
        let g = TorusElement::Split(SplitCoords::Real(vec![2.0, -1.0]));
        let v = discrete_char(3, Complex64::new(0.0, 0.5), &g).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn discrete_split_diag_matches_real_split_form() {
        let l = 3;
        let t = Complex64::new(0.0, 0.4);
        let (alpha, z, s) = (0.9, 1.7, -1i8);
        let g1 = TorusElement::RealSplit {
            alpha,
            sign: s,
            scalar: z,
        };
        let coords = vec![
            (s as f64) * z * alpha.exp(),
            (s as f64) * z * (-alpha).exp(),
        ];
        let g2 = TorusElement::Split(SplitCoords::Real(coords));
        let a = discrete_char(l, t, &g1).unwrap();
        let b = discrete_char(l, t, &g2).unwrap();
        assert!((a - b).norm() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn cusp_core_values() {
        let f = PAdicField::new(3, 1, 6).unwrap();
        let e = QuadExt::new(f, AlphaTag::Eps).unwrap();
        let theta = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 1, Phase::ONE);
        // γ̄ = ζ: e^{2πi/8} + e^{2πi·3/8}
        let g = TorusElement::PAdicElliptic {
            ext: e.clone(),
            lambda: e.elt_teich(1),
        };
        let v = depth_zero_cusp_core(&e, &theta, &g).unwrap();
        let expect = Phase::new(1, 8).value() + Phase::new(3, 8).value();
        assert!((v - expect).norm() < 1e-15);
        // γ̄ = ζ⁴ = −1 ∈ F^×: Galois-fixed, value 2θ(−1) = −2
        let g4 = TorusElement::PAdicElliptic {
            ext: e.clone(),
            lambda: e.mul(
                &e.elt_teich(4),
                &e.elt_from_pair(e.base.ring_from_i64(1 + 3), e.base.ring_from_i64(3))
                    .unwrap(),
            ),
        };
        let v = depth_zero_cusp_core(&e, &theta, &g4).unwrap();
        assert!((v - Complex64::new(-2.0, 0.0)).norm() < 1e-14);
        // split reduction → 0
        let gs = TorusElement::Split(SplitCoords::PAdic {
            field: e.base.clone(),
            coords: vec![e.base.elt_one(), e.base.elt_teich(1)],
        });
        assert_eq!(
            depth_zero_cusp_core(&e, &theta, &gs).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn cusp_core_power_identity_exhaustive_q3() {
        // χ̇_θ(γ^n) = χ̇_{θ^n}(γ) over all unit reductions, gcd(n, 24) = 1
        use crate::characters::char_pow;
        let f = PAdicField::new(3, 1, 6).unwrap();
        let e = QuadExt::new(f, AlphaTag::Eps).unwrap();
        for k_theta in [1i64, 2, 3, 5, 6, 7] {
            let theta =
                PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), k_theta, Phase::new(1, 4));
            if !is_admissible(&e, &theta).unwrap() {
                continue;
            }
            for n in [1i64, 5, 7, 11, 13, 17, 19, 23, 25] {
                let theta_n = match char_pow(&QuasiCharacter::PAdic(theta.clone()), n) {
                    QuasiCharacter::PAdic(c) => c,
                    _ => unreachable!(),
                };
                for kg in 0..8 {
                    let g = TorusElement::PAdicElliptic {
                        ext: e.clone(),
                        lambda: e.elt_teich(kg),
                    };
                    let gn = g.power(n).unwrap();
                    let lhs = depth_zero_cusp_core(&e, &theta, &gn);
                    let rhs = depth_zero_cusp_core(&e, &theta_n, &g);
                    match (lhs, rhs) {
                        (Ok(a), Ok(b)) => assert!(
                            (a - b).norm() < 1e-12,
                            "kθ={k_theta} n={n} kγ={kg}: {a} vs {b}"
                        ),
                        // non-regular reductions are skipped on both sides
                        (Err(_), Err(_)) => {}
                        (a, b) => panic!("asymmetric failure kθ={k_theta} n={n} kγ={kg}: {a:?} {b:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn dim_rho_values() {
        assert_eq!(dim_rho_depth0(3).unwrap(), 2);
        assert_eq!(dim_rho_depth0(5).unwrap(), 4);
        assert_eq!(dim_rho_depth0(9).unwrap(), 8);
        assert!(dim_rho_depth0(6).is_err());
        assert!(dim_rho_depth0(8).is_err());
    }

    #[test]
    fn levi_tensor_product_of_blocks() {
        // n = 3 principal lift at a pair of split elements
        let chi1 = QuasiCharacter::Real(RealChar {
            sign: 1,
            t: Complex64::new(0.0, 0.45),
        });
        let chi2 = QuasiCharacter::Real(RealChar {
            sign: -1,
            t: Complex64::new(0.0, -0.15),
        });
        let phi = LParameter::Principal {
            chi1: chi1.clone(),
            chi2: chi2.clone(),
        };
        let rep = levi_rep(&phi, 3).unwrap();
        let g1 = TorusElement::Split(SplitCoords::Real(vec![2.0, 0.5]));
        let g2 = TorusElement::Split(SplitCoords::Real(vec![-1.5, 3.0]));
        let v = levi_tensor_char(&rep, &[g1.clone(), g2.clone()], None).unwrap();
        // hand expansion: twist₁ = χ₁χ₂ at det g₁, blocks Ind(χᵢ) and Ind(χᵢ³)
        use crate::characters::{char_mul, char_pow};
        let omega = char_mul(&chi1, &chi2).unwrap();
        let b1 = principal_char_gl2(&chi1, &chi2, &g1).unwrap();
        let b2 = principal_char_gl2(&char_pow(&chi1, 3), &char_pow(&chi2, 3), &g2).unwrap();
        let tw = eval_scalar(&omega, &det_scalar(&g1).unwrap()).unwrap();
        assert!((v - tw * b1 * b2).norm() < 1e-12);
        // non-regular block argument rejected
        let bad = TorusElement::Split(SplitCoords::Real(vec![2.0, 2.0]));
        assert!(levi_tensor_char(&rep, &[g1, bad], None).is_err());
    }
}
