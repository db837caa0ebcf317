//! Stable transfer-factor kernels: finite weighted sums of delta masses on
//! torus coordinates, paired against normalized GL₂ characters.
//!
//! The Sym^n kernel places masses at the two weighted coordinate products of
//! each permutation of the GL_{n+1} torus entry; the diagonal kernels Θ^{Δ_m}
//! are instantiated per tempered class (a split-supported kernel for
//! principal series, a sign-vector kernel on rotations for discrete series
//! with an odd number of factors).  The determinant-twist reductions Θ^{M}
//! feed powered, det-scaled block arguments to the diagonal pairing, and the
//! group-level kernel sums Θ^{M} over the relative Weyl set.  A negative
//! probe documents that the split kernel does not transfer discrete-series
//! characters, so no universal diagonal kernel is claimed.

use crate::char_eval::{
    det_scalar, split_gl2_from_scalars, weighted_product, NormalizedChar,
    ScalarValue, SupportClass,
};
use crate::error::{Error, Result};
use crate::torus::{SplitCoords, TorusElement};
use itertools::Itertools;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Which tempered class a kernel instantiation is valid for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelClass {
    Principal,
    Discrete,
    DepthZeroCusp,
}

/// A finite weighted sum of delta masses at GL₂ torus points.
#[derive(Debug, Clone)]
pub struct DeltaKernel {
    pub class: KernelClass,
    pub terms: Vec<(Complex64, TorusElement)>,
    /// Kernel points that failed regularity and were assigned mass at a
    /// support-zero point (callers re-draw samples when this is nonzero).
    pub degenerate_terms: usize,
}

impl DeltaKernel {
    /// Pair the kernel against a conjugation-invariant function.
    pub fn pair(&self, f: &NormalizedChar) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, point) in &self.terms {
            acc += w * f.eval(point)?;
        }
        Ok(acc)
    }
}

/// Result of a kernel pairing: the value plus a degeneracy count.
#[derive(Debug, Clone)]
pub struct PairValue {
    pub value: Complex64,
    pub degenerate_terms: usize,
}

/// Two-sided comparison record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairingReport {
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub degenerate_terms: usize,
    pub inputs: String,
}

impl PairingReport {
    pub fn new(
        lhs: Complex64,
        rhs: Complex64,
        tol: f64,
        degenerate_terms: usize,
        inputs: String,
    ) -> PairingReport {
        let abs_err = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        let rel_err = if scale > 0.0 { abs_err / scale } else { abs_err };
        PairingReport {
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            abs_err,
            rel_err,
            tol,
            pass: abs_err <= tol,
            degenerate_terms,
            inputs,
        }
    }
}

// ---------------------------------------------------------------------------
// the Sym^n kernel
// ---------------------------------------------------------------------------

/// Materialize the Sym^n kernel at a GL_{n+1} split element T:
/// (1/2) Σ_{w∈S_{n+1}} δ at (Π_k T_{w(k)}^{n+1−k}, Π_k T_{w(k)}^{k−1}).
pub fn sym_theta_kernel(
    t: &SplitCoords,
    n: usize,
    allow_large: bool,
) -> Result<DeltaKernel> {
    let m = n + 1;
    if t.len() != m {
        return Err(Error::DomainMismatch(format!(
            "Sym^{n} kernel needs {m} coordinates"
        )));
    }
    if m > 10 && !allow_large {
        return Err(Error::FactorialGuard(m));
    }
    // power tables T_i^e for e = 0, …, m−1, computed once
    let mut pows: Vec<Vec<ScalarValue>> = Vec::with_capacity(m);
    for i in 0..m {
        let base = weighted_product(t, &[i], &[1])?;
        let mut row = Vec::with_capacity(m);
        row.push(weighted_product(t, &[], &[])?); // 1
        for e in 1..m {
            let prev = row[e - 1].clone();
            row.push(scalar_mul(&prev, &base)?);
        }
        pows.push(row);
    }
    let half = Complex64::new(0.5, 0.0);
    let mut terms = Vec::new();
    let mut degenerate = 0usize;
    for perm in (0..m).permutations(m) {
        let mut a = pows[perm[0]][m - 1].clone();
        let mut b = pows[perm[m - 1]][m - 1].clone();
        for (k, &i) in perm.iter().enumerate() {
            if k > 0 && m - 1 - k > 0 {
                a = scalar_mul(&a, &pows[i][m - 1 - k])?;
            }
            if k < m - 1 && k > 0 {
                b = scalar_mul(&b, &pows[i][k])?;
            }
        }
        let point = split_gl2_from_scalars(&a, &b)?;
        if !point.is_regular() {
            degenerate += 1;
            continue;
        }
        terms.push((half, point));
    }
    Ok(DeltaKernel {
        class: KernelClass::Principal,
        terms,
        degenerate_terms: degenerate,
    })
}

/// Pair the Sym^n kernel at T against f.
pub fn sym_theta_pair(
    t: &SplitCoords,
    f: &NormalizedChar,
    n: usize,
    allow_large: bool,
) -> Result<PairValue> {
    let kernel = sym_theta_kernel(t, n, allow_large)?;
    Ok(PairValue {
        value: kernel.pair(f)?,
        degenerate_terms: kernel.degenerate_terms,
    })
}

// ---------------------------------------------------------------------------
// diagonal kernels
// ---------------------------------------------------------------------------

/// Split coordinates of a GL₂ element of split type.
fn gl2_split_scalars(g: &TorusElement) -> Result<[ScalarValue; 2]> {
    match g {
        TorusElement::Split(c) if c.len() == 2 => Ok([
            weighted_product(c, &[0], &[1])?,
            weighted_product(c, &[1], &[1])?,
        ]),
        TorusElement::RealSplit { alpha, sign, scalar } => {
            let s = *sign as f64;
            Ok([
                ScalarValue::Real(s * scalar * alpha.exp()),
                ScalarValue::Real(s * scalar * (-alpha).exp()),
            ])
        }
        _ => Err(Error::DomainMismatch(
            "diagonal split kernel needs split GL₂ points".into(),
        )),
    }
}

/// The split-supported diagonal kernel at m split GL₂ points:
/// (1/2) Σ_{w⃗∈S₂^m} δ at (Π_i t^{(i)}_{w_i(1)}, Π_i t^{(i)}_{w_i(2)}).
pub fn delta_split_kernel(points: &[TorusElement]) -> Result<DeltaKernel> {
    let m = points.len();
    if m == 0 || m > 20 {
        return Err(Error::InvalidConfig(
            "split diagonal kernel takes 1 to 20 points".into(),
        ));
    }
    for p in points {
        if !p.is_regular() {
            return Err(Error::NonRegular("split diagonal kernel point".into()));
        }
    }
    let coords: Vec<[ScalarValue; 2]> = points
        .iter()
        .map(gl2_split_scalars)
        .collect::<Result<_>>()?;
    let half = Complex64::new(0.5, 0.0);
    let mut terms = Vec::new();
    let mut degenerate = 0usize;
    for mask in 0..(1u32 << m) {
        let first: Vec<&ScalarValue> = (0..m)
            .map(|i| &coords[i][((mask >> i) & 1) as usize])
            .collect();
        let second: Vec<&ScalarValue> = (0..m)
            .map(|i| &coords[i][1 - ((mask >> i) & 1) as usize])
            .collect();
        let a = scalar_product(&first)?;
        let b = scalar_product(&second)?;
        let point = split_gl2_from_scalars(&a, &b)?;
        if !point.is_regular() {
            degenerate += 1;
            continue;
        }
        terms.push((half, point));
    }
    Ok(DeltaKernel {
        class: KernelClass::Principal,
        terms,
        degenerate_terms: degenerate,
    })
}

fn scalar_product(vals: &[&ScalarValue]) -> Result<ScalarValue> {
    let mut iter = vals.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::InvalidConfig("empty product".into()))?;
    let mut acc = (*first).clone();
    for v in iter {
        acc = scalar_mul(&acc, v)?;
    }
    Ok(acc)
}

pub fn scalar_mul(a: &ScalarValue, b: &ScalarValue) -> Result<ScalarValue> {
    Ok(match (a, b) {
        (ScalarValue::Complex(x), ScalarValue::Complex(y)) => ScalarValue::Complex(x * y),
        (ScalarValue::Real(x), ScalarValue::Real(y)) => ScalarValue::Real(x * y),
        (
            ScalarValue::PAdic { field, value: x },
            ScalarValue::PAdic { value: y, .. },
        ) => ScalarValue::PAdic {
            field: field.clone(),
            value: field.elt_mul(x, y),
        },
        _ => return Err(Error::DomainMismatch("mixed-regime scalars".into())),
    })
}

pub fn scalar_pow(a: &ScalarValue, k: i64) -> Result<ScalarValue> {
    Ok(match a {
        ScalarValue::Complex(x) => ScalarValue::Complex(x.powi(k as i32)),
        ScalarValue::Real(x) => ScalarValue::Real(x.powi(k as i32)),
        ScalarValue::PAdic { field, value } => ScalarValue::PAdic {
            field: field.clone(),
            value: field.elt_pow(value, k)?,
        },
    })
}

/// Pair the split diagonal kernel against f.
pub fn delta_split_pair(points: &[TorusElement], f: &NormalizedChar) -> Result<PairValue> {
    let kernel = delta_split_kernel(points)?;
    Ok(PairValue {
        value: kernel.pair(f)?,
        degenerate_terms: kernel.degenerate_terms,
    })
}

/// The elliptic sign-vector kernel at an odd number of rotation points:
/// Σ_{ε∈{±1}^m/±1} sgn(ε) δ at s(Σ_i ε_i θ_i) scaled by Π z_i.
pub fn delta_elliptic_kernel(points: &[TorusElement]) -> Result<DeltaKernel> {
    let m = points.len();
    if m > 21 {
        return Err(Error::InvalidConfig(
            "sign-vector kernel takes at most 21 points".into(),
        ));
    }
    if m.is_multiple_of(2) {
        return Err(Error::Unsupported(
            "the sign-vector kernel exists for an odd number of factors".into(),
        ));
    }
    let mut thetas = Vec::with_capacity(m);
    let mut zprod = 1.0f64;
    for p in points {
        match p {
            TorusElement::RealRotation { theta, scalar } => {
                if !p.is_regular() {
                    return Err(Error::NonRegular("elliptic kernel point".into()));
                }
                thetas.push(*theta);
                zprod *= scalar;
            }
            _ => {
                return Err(Error::DomainMismatch(
                    "elliptic kernel needs rotation points".into(),
                ))
            }
        }
    }
    let mut terms = Vec::new();
    let mut degenerate = 0usize;
    // representatives with ε₁ = +1; sgn(ε)·(−1)^{m+1} = sgn(ε) for odd m
    for mask in 0..(1u32 << (m - 1)) {
        let mut angle = thetas[0];
        let mut sgn = 1.0f64;
        for (i, &th) in thetas.iter().enumerate().skip(1) {
            if (mask >> (i - 1)) & 1 == 1 {
                angle -= th;
                sgn = -sgn;
            } else {
                angle += th;
            }
        }
        let point = TorusElement::RealRotation {
            theta: angle,
            scalar: zprod,
        };
        if !point.is_regular() {
            degenerate += 1;
            continue;
        }
        terms.push((Complex64::new(sgn, 0.0), point));
    }
    Ok(DeltaKernel {
        class: KernelClass::Discrete,
        terms,
        degenerate_terms: degenerate,
    })
}

/// Pair the elliptic kernel against a discrete-class evaluator.
pub fn delta_elliptic_pair(points: &[TorusElement], f: &NormalizedChar) -> Result<PairValue> {
    let kernel = delta_elliptic_kernel(points)?;
    Ok(PairValue {
        value: kernel.pair(f)?,
        degenerate_terms: kernel.degenerate_terms,
    })
}

// ---------------------------------------------------------------------------
// determinant-twist reductions Θ^{M_{n+1}}
// ---------------------------------------------------------------------------

/// Multiply a GL₂ torus element by a central scalar.
pub fn scalar_mul_torus(g: &TorusElement, s: &ScalarValue) -> Result<TorusElement> {
    Ok(match (g, s) {
        (TorusElement::Split(SplitCoords::Complex(v)), ScalarValue::Complex(z)) => {
            TorusElement::Split(SplitCoords::Complex(v.iter().map(|x| x * z).collect()))
        }
        (TorusElement::Split(SplitCoords::Real(v)), ScalarValue::Real(z)) => {
            TorusElement::Split(SplitCoords::Real(v.iter().map(|x| x * z).collect()))
        }
        (ter @ TorusElement::Split(SplitCoords::PAdic { .. }), ScalarValue::PAdic { value, .. }) => {
            let TorusElement::Split(SplitCoords::PAdic { field, coords }) = ter else {
                unreachable!()
            };
            TorusElement::Split(SplitCoords::PAdic {
                field: field.clone(),
                coords: coords.iter().map(|c| field.elt_mul(c, value)).collect(),
            })
        }
        (TorusElement::RealRotation { theta, scalar }, ScalarValue::Real(z)) => {
            TorusElement::RealRotation {
                theta: *theta,
                scalar: scalar * z,
            }
        }
        (TorusElement::RealSplit { alpha, sign, scalar }, ScalarValue::Real(z)) => {
            TorusElement::RealSplit {
                alpha: *alpha,
                sign: *sign,
                scalar: scalar * z,
            }
        }
        (TorusElement::PAdicElliptic { ext, lambda }, ScalarValue::PAdic { value, .. }) => {
            TorusElement::PAdicElliptic {
                ext: ext.clone(),
                lambda: ext.mul(lambda, &ext.embed_base(value)),
            }
        }
        _ => return Err(Error::DomainMismatch("scalar regime mismatch".into())),
    })
}

/// The block arguments of the odd-degree reduction: det(g_k)^{(n−2k+1)/2}
/// times g_k^{2k−1}, k = 1, …, (n+1)/2.
fn theta_m_arguments(n: usize, blocks: &[TorusElement]) -> Result<Vec<TorusElement>> {
    let m = n.div_ceil(2);
    if blocks.len() != m {
        return Err(Error::DomainMismatch(format!(
            "degree {n} needs {m} block arguments"
        )));
    }
    let mut out = Vec::with_capacity(m);
    for (idx, g) in blocks.iter().enumerate() {
        let k = idx as i64 + 1;
        let twist_exp = (n as i64 - 2 * k + 1) / 2;
        let det = det_scalar(g)?;
        let scaled = scalar_mul_torus(&g.power(2 * k - 1)?, &scalar_pow(&det, twist_exp)?)?;
        out.push(scaled);
    }
    Ok(out)
}

/// Evaluate the diagonal pairing ⟨Θ^{Δ_m}(x, ·), f⟩ for the given class:
/// through the instantiated kernel when one exists for the class and point
/// type, and by the defining diagonal value Π_k f(x_k) otherwise.
fn diagonal_pair(points: &[TorusElement], f: &NormalizedChar, class: KernelClass) -> Result<PairValue> {
    match class {
        KernelClass::Principal => delta_split_pair(points, f),
        KernelClass::Discrete => {
            let all_rotations = points
                .iter()
                .all(|p| matches!(p, TorusElement::RealRotation { .. }));
            if all_rotations && points.len() % 2 == 1 {
                delta_elliptic_pair(points, f)
            } else {
                // the diagonal transfer value itself; no kernel instantiation
                // exists for this class and point type
                let mut acc = Complex64::new(1.0, 0.0);
                for p in points {
                    acc *= f.eval(p)?;
                }
                Ok(PairValue {
                    value: acc,
                    degenerate_terms: 0,
                })
            }
        }
        KernelClass::DepthZeroCusp => Err(Error::Unsupported(
            "no diagonal kernel is instantiated for the cuspidal class".into(),
        )),
    }
}

/// Θ^{M_{n+1}} pairing for odd n: determinant twists, odd element powers,
/// then the diagonal pairing.  Agrees with the Levi tensor character.
pub fn theta_m_pair(
    n: usize,
    blocks: &[TorusElement],
    f: &NormalizedChar,
    class: KernelClass,
) -> Result<PairValue> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidConfig(
            "theta_m_pair handles odd degree; use theta_m_even_pair".into(),
        ));
    }
    check_support(blocks, f, class)?;
    let args = theta_m_arguments(n, blocks)?;
    diagonal_pair(&args, f, class)
}

/// Θ^{M_{n+1}} pairing for even n: arguments a·det(g_k)^{(n−2k)/2}·g_k^{2k}
/// with the GL₁ scalar a multiplied into every slot; for the discrete class
/// the pairing carries the extra factor Π_k (sgn(det g_k)+1)/2.
pub fn theta_m_even_pair(
    n: usize,
    blocks: &[TorusElement],
    gl1: &ScalarValue,
    f: &NormalizedChar,
    class: KernelClass,
) -> Result<PairValue> {
    if n % 2 == 1 {
        return Err(Error::InvalidConfig(
            "theta_m_even_pair handles even degree".into(),
        ));
    }
    let m = n / 2;
    if blocks.len() != m {
        return Err(Error::DomainMismatch(format!(
            "degree {n} needs {m} block arguments"
        )));
    }
    check_support(blocks, f, class)?;
    let mut args = Vec::with_capacity(m);
    let mut disc_factor = 1.0f64;
    for (idx, g) in blocks.iter().enumerate() {
        let k = idx as i64 + 1;
        let twist_exp = (n as i64 - 2 * k) / 2;
        let det = det_scalar(g)?;
        if class == KernelClass::Discrete {
            if let ScalarValue::Real(d) = det {
                disc_factor *= (d.signum() + 1.0) / 2.0;
            }
        }
        let scaled = scalar_mul_torus(
            &scalar_mul_torus(&g.power(2 * k)?, &scalar_pow(&det, twist_exp)?)?,
            gl1,
        )?;
        args.push(scaled);
    }
    let pv = diagonal_pair(&args, f, class)?;
    Ok(PairValue {
        value: pv.value * disc_factor,
        degenerate_terms: pv.degenerate_terms,
    })
}

fn check_support(blocks: &[TorusElement], f: &NormalizedChar, class: KernelClass) -> Result<()> {
    let f_class = match f.support() {
        SupportClass::SplitSupport => KernelClass::Principal,
        SupportClass::FullSupport => KernelClass::Discrete,
        SupportClass::EllipticSupport => KernelClass::DepthZeroCusp,
    };
    if f_class != class {
        return Err(Error::DomainMismatch(
            "evaluator class does not match the requested kernel class".into(),
        ));
    }
    for b in blocks {
        if !b.is_regular() {
            return Err(Error::NonRegular("block argument".into()));
        }
        let split_like = matches!(
            b,
            TorusElement::Split(_) | TorusElement::RealSplit { .. }
        );
        match class {
            KernelClass::Principal if !split_like => {
                return Err(Error::DomainMismatch(
                    "principal-class pairing takes split block arguments".into(),
                ))
            }
            _ => {}
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// parabolic induction to the group (relative Weyl sum)
// ---------------------------------------------------------------------------

/// Θ^ρ(m, ·) = Σ_{s ∈ W(A_M, A_m)} Θ^{M}(sm, ·) for a split element of
/// GL_{n+1}: the relative Weyl set is realized as S_{n+1} modulo the
/// within-block coordinate swaps, so the full permutation sum is divided by
/// 2^{#blocks}.
pub fn induce_kernel_pair(
    n: usize,
    coords: &SplitCoords,
    f: &NormalizedChar,
    class: KernelClass,
    allow_large: bool,
) -> Result<PairValue> {
    let msize = n + 1;
    if coords.len() != msize {
        return Err(Error::DomainMismatch(format!(
            "need {msize} coordinates in GL_{msize}"
        )));
    }
    if msize > 10 && !allow_large {
        return Err(Error::FactorialGuard(msize));
    }
    if !TorusElement::Split(coords.clone()).is_regular() {
        return Err(Error::NonRegular("induction argument".into()));
    }
    let pair_count = msize / 2;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut degenerate = 0usize;
    for perm in (0..msize).permutations(msize) {
        let mut blocks = Vec::with_capacity(pair_count);
        for b in 0..pair_count {
            let a = weighted_product(coords, &[perm[2 * b]], &[1])?;
            let c = weighted_product(coords, &[perm[2 * b + 1]], &[1])?;
            blocks.push(split_gl2_from_scalars(&a, &c)?);
        }
        let pv = if n % 2 == 1 {
            theta_m_pair(n, &blocks, f, class)?
        } else {
            let a = weighted_product(coords, &[perm[msize - 1]], &[1])?;
            theta_m_even_pair(n, &blocks, &a, f, class)?
        };
        acc += pv.value;
        degenerate += pv.degenerate_terms;
    }
    let stab = 2f64.powi(pair_count as i32);
    Ok(PairValue {
        value: acc / stab,
        degenerate_terms: degenerate,
    })
}

// ---------------------------------------------------------------------------
// negative probe
// ---------------------------------------------------------------------------

/// Pair the split kernel against a discrete-series evaluator at positive
/// split points and compare with the product of characters.  The mismatch
/// documents that the split kernel is not a diagonal transfer factor for the
/// discrete class.
pub fn negative_probe_split_kernel_discrete(
    l: i64,
    alphas: &[f64],
    tol: f64,
) -> Result<PairingReport> {
    if alphas.len().is_multiple_of(2) || alphas.is_empty() {
        return Err(Error::InvalidConfig("probe uses an odd number of factors ≥ 1".into()));
    }
    let f = NormalizedChar::Discrete {
        l,
        t: Complex64::new(0.0, 0.0),
    };
    let points: Vec<TorusElement> = alphas
        .iter()
        .map(|&alpha| TorusElement::RealSplit {
            alpha,
            sign: 1,
            scalar: 1.0,
        })
        .collect();
    let kernel_side = delta_split_pair(&points, &f)?;
    let mut product = Complex64::new(1.0, 0.0);
    for p in &points {
        product *= f.eval(p)?;
    }
    Ok(PairingReport::new(
        kernel_side.value,
        product,
        tol,
        kernel_side.degenerate_terms,
        format!("split kernel vs product, l={l}, alphas={alphas:?}"),
    ))
}
