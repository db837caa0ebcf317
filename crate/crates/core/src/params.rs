//! Tempered GL(2) parameters and their symmetric-power decompositions.
//!
//! A parameter is a principal sum of two characters, an irreducible real
//! parameter φ_{(l,t)}, an induced parameter from a quadratic extension, or a
//! unitary twist of the standard SL₂-factor representation.  Sym^n of a
//! parameter splits into twisted two-dimensional pieces plus a character in
//! even degree; the same data reorganizes into a representation of the
//! (2,…,2[,1])-block Levi.  A matrix oracle (explicit 2×2 models composed
//! with the symmetric-power functor on the monomial basis) cross-checks every
//! decomposition trace.

use crate::characters::{
    char_galois_conj, char_mul, char_pow, char_restrict_f, sgn_ef, PAdicChar,
    PAdicDomain, QuasiCharacter, RealChar,
};
use crate::error::{Error, Result};
use crate::padic::FElt;
use crate::quadext::{QuadExt, QuadExtElement};
use num_complex::Complex64;
use std::sync::Arc;

/// A tempered L-parameter of GL₂ over one of the three field regimes.
#[derive(Debug, Clone)]
pub enum LParameter {
    /// χ₁ ⊕ χ₂ (any regime; tempered when both unitary).
    Principal {
        chi1: QuasiCharacter,
        chi2: QuasiCharacter,
    },
    /// The irreducible real parameter with data (l, t), l ≥ 1.
    RealDiscrete { l: i64, t: Complex64 },
    /// Induced from the quadratic extension E with character θ of E^×.
    PAdicInduced {
        ext: Arc<QuadExt>,
        theta: PAdicChar,
    },
    /// χ ⊗ std (p-adic twisted Steinberg class).
    SteinbergTwist { chi: QuasiCharacter },
}

/// A direct summand of Sym^n of a parameter.
#[derive(Debug, Clone)]
pub enum Summand {
    OneDim(QuasiCharacter),
    TwoDim(LParameter),
    SteinbergBlock { chi: QuasiCharacter, size: usize },
}

impl Summand {
    pub fn dim(&self) -> usize {
        match self {
            Summand::OneDim(_) => 1,
            Summand::TwoDim(_) => 2,
            Summand::SteinbergBlock { size, .. } => *size,
        }
    }
}

/// GL₂ block descriptors of the Levi representation.
#[derive(Debug, Clone)]
pub enum Gl2RepDescriptor {
    PrincipalSeries(QuasiCharacter, QuasiCharacter),
    DiscreteSeries { l: i64, t: Complex64 },
    Supercuspidal {
        ext: Arc<QuadExt>,
        theta: PAdicChar,
    },
}

/// The representation ⊗_k (twist_k ∘ det) ⊗ π_k of the block Levi, with the
/// trailing GL₁ character in even degree.
#[derive(Debug, Clone)]
pub struct LeviRep {
    pub blocks: Vec<(QuasiCharacter, Gl2RepDescriptor)>,
    pub gl1: Option<QuasiCharacter>,
}

impl LeviRep {
    /// Total size 2·#blocks (+1 with a GL₁ part) = n + 1.
    pub fn total_size(&self) -> usize {
        2 * self.blocks.len() + usize::from(self.gl1.is_some())
    }
}

/// Evaluation points for the matrix models: elements of the Weil group
/// presented the only way the models consume them.
#[derive(Debug, Clone)]
pub enum GroupToken {
    /// z ∈ ℂ^× = W_ℂ.
    ComplexZ(Complex64),
    /// z ∈ ℂ^× ⊂ W_ℝ.
    RealZ(Complex64),
    /// The element j with j² = −1.
    RealJ,
    /// x ∈ F^× (p-adic principal parameters).
    PAdicBase(FElt),
    /// w ∈ W_E via its class a_E(w) ∈ E^×.
    PAdicWeil(QuadExtElement),
    /// The fixed coset representative λ̃ with λ̃² = λ_E.
    PAdicLambdaTilde,
}

// ---------------------------------------------------------------------------
// parameter checks and character helpers
// ---------------------------------------------------------------------------

impl LParameter {
    /// Tempered: unitary characters / t ∈ iℝ / admissibility is the caller's
    /// concern (non-admissible induced data is allowed for the reduction to
    /// principal series).
    pub fn is_tempered(&self) -> bool {
        match self {
            LParameter::Principal { chi1, chi2 } => {
                quasichar_unitary(chi1) && quasichar_unitary(chi2)
            }
            LParameter::RealDiscrete { l, t } => *l >= 1 && t.re == 0.0,
            LParameter::PAdicInduced { .. } => true,
            LParameter::SteinbergTwist { chi } => quasichar_unitary(chi),
        }
    }
}

fn quasichar_unitary(chi: &QuasiCharacter) -> bool {
    match chi {
        QuasiCharacter::Complex(c) => c.is_unitary(),
        QuasiCharacter::Real(c) => c.is_unitary(),
        QuasiCharacter::PAdic(_) => true,
    }
}

/// Parameter-level equality of quasi-characters (exact on the stored data).
pub fn quasichar_eq(a: &QuasiCharacter, b: &QuasiCharacter) -> bool {
    match (a, b) {
        (QuasiCharacter::Complex(x), QuasiCharacter::Complex(y)) => x == y,
        (QuasiCharacter::Real(x), QuasiCharacter::Real(y)) => x == y,
        (QuasiCharacter::PAdic(x), QuasiCharacter::PAdic(y)) => {
            x.domain.same_as(&y.domain)
                && x.teich == y.teich
                && x.unif == y.unif
                && x.one_unit == y.one_unit
        }
        _ => false,
    }
}

fn trivial_like(chi: &QuasiCharacter) -> QuasiCharacter {
    char_pow(chi, 0)
}

// ---------------------------------------------------------------------------
// Sym^n decomposition
// ---------------------------------------------------------------------------

/// Decompose Sym^n ∘ φ into summands.  Twists are absorbed into the
/// two-dimensional parameters (for induced parameters via the norm pullback
/// of the restriction, which is exact in parameters).
pub fn sym_decompose(phi: &LParameter, n: usize) -> Result<Vec<Summand>> {
    if n == 0 {
        let chi = match phi {
            LParameter::Principal { chi1, .. } => trivial_like(chi1),
            LParameter::RealDiscrete { .. } => QuasiCharacter::Real(RealChar {
                sign: 1,
                t: Complex64::new(0.0, 0.0),
            }),
            LParameter::PAdicInduced { ext, .. } => QuasiCharacter::PAdic(PAdicChar::trivial(
                PAdicDomain::Base(ext.base.clone()),
            )),
            LParameter::SteinbergTwist { chi } => trivial_like(chi),
        };
        return Ok(vec![Summand::OneDim(chi)]);
    }
    let ni = n as i64;
    match phi {
        LParameter::SteinbergTwist { chi } => Ok(vec![Summand::SteinbergBlock {
            chi: char_pow(chi, ni),
            size: n + 1,
        }]),
        LParameter::Principal { chi1, chi2 } => {
            let omega = char_mul(chi1, chi2)?;
            let mut out = Vec::new();
            if n % 2 == 1 {
                for k in 1..=n.div_ceil(2) {
                    let m = (ni - 2 * k as i64 + 1) / 2;
                    let tw = char_pow(&omega, m);
                    out.push(Summand::TwoDim(LParameter::Principal {
                        chi1: char_mul(&char_pow(chi1, 2 * k as i64 - 1), &tw)?,
                        chi2: char_mul(&char_pow(chi2, 2 * k as i64 - 1), &tw)?,
                    }));
                }
            } else {
                for k in 1..=n / 2 {
                    let m = (ni - 2 * k as i64) / 2;
                    let tw = char_pow(&omega, m);
                    out.push(Summand::TwoDim(LParameter::Principal {
                        chi1: char_mul(&char_pow(chi1, 2 * k as i64), &tw)?,
                        chi2: char_mul(&char_pow(chi2, 2 * k as i64), &tw)?,
                    }));
                }
                out.push(Summand::OneDim(char_pow(&omega, ni / 2)));
            }
            Ok(out)
        }
        LParameter::RealDiscrete { l, t } => {
            let mut out = Vec::new();
            if n % 2 == 1 {
                for k in 1..=n.div_ceil(2) {
                    out.push(Summand::TwoDim(LParameter::RealDiscrete {
                        l: (2 * k as i64 - 1) * l,
                        t: *t * ni as f64,
                    }));
                }
            } else {
                for k in 1..=n / 2 {
                    out.push(Summand::TwoDim(LParameter::RealDiscrete {
                        l: 2 * k as i64 * l,
                        t: *t * ni as f64,
                    }));
                }
                let sign = if (ni * l / 2) % 2 == 0 { 1 } else { -1 };
                out.push(Summand::OneDim(QuasiCharacter::Real(RealChar {
                    sign,
                    t: *t * ni as f64,
                })));
            }
            Ok(out)
        }
        LParameter::PAdicInduced { ext, theta } => {
            let q = QuasiCharacter::PAdic(theta.clone());
            let conj = QuasiCharacter::PAdic(char_galois_conj(theta)?);
            let norm_char = char_mul(&q, &conj)?; // θ·θ^λ = (θ|_{F^×})∘N
            let mut out = Vec::new();
            let push_block = |out: &mut Vec<Summand>, exp: i64, m: i64| -> Result<()> {
                let tw = char_pow(&norm_char, m);
                let th = char_mul(&char_pow(&q, exp), &tw)?;
                let QuasiCharacter::PAdic(th) = th else { unreachable!() };
                out.push(Summand::TwoDim(LParameter::PAdicInduced {
                    ext: ext.clone(),
                    theta: th,
                }));
                Ok(())
            };
            if n % 2 == 1 {
                for k in 1..=n.div_ceil(2) {
                    push_block(&mut out, 2 * k as i64 - 1, (ni - 2 * k as i64 + 1) / 2)?;
                }
            } else {
                for k in 1..=n / 2 {
                    push_block(&mut out, 2 * k as i64, (ni - 2 * k as i64) / 2)?;
                }
                let half = char_pow(&q, ni / 2);
                let QuasiCharacter::PAdic(half) = half else { unreachable!() };
                out.push(Summand::OneDim(QuasiCharacter::PAdic(char_restrict_f(
                    &half,
                )?)));
            }
            Ok(out)
        }
    }
}

/// Split principal two-dimensional summands into their characters.
pub fn flatten_summands(summands: &[Summand]) -> Vec<Summand> {
    let mut out = Vec::new();
    for s in summands {
        match s {
            Summand::TwoDim(LParameter::Principal { chi1, chi2 }) => {
                out.push(Summand::OneDim(chi1.clone()));
                out.push(Summand::OneDim(chi2.clone()));
            }
            other => out.push(other.clone()),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Levi form
// ---------------------------------------------------------------------------

/// The block-Levi representation whose parabolic induction realizes Sym^n of
/// the parameter.  Twisted Steinberg parameters are excluded.
pub fn levi_rep(phi: &LParameter, n: usize) -> Result<LeviRep> {
    if n == 0 {
        return Err(Error::InvalidConfig("Levi form needs n ≥ 1".into()));
    }
    let ni = n as i64;
    match phi {
        LParameter::SteinbergTwist { .. } => Err(Error::Unsupported(
            "twisted Steinberg lifts are not parabolically induced from the block Levi".into(),
        )),
        LParameter::Principal { chi1, chi2 } => {
            let omega = char_mul(chi1, chi2)?;
            let mut blocks = Vec::new();
            if n % 2 == 1 {
                for k in 1..=n.div_ceil(2) {
                    let m = (ni - 2 * k as i64 + 1) / 2;
                    blocks.push((
                        char_pow(&omega, m),
                        Gl2RepDescriptor::PrincipalSeries(
                            char_pow(chi1, 2 * k as i64 - 1),
                            char_pow(chi2, 2 * k as i64 - 1),
                        ),
                    ));
                }
                Ok(LeviRep { blocks, gl1: None })
            } else {
                for k in 1..=n / 2 {
                    let m = (ni - 2 * k as i64) / 2;
                    blocks.push((
                        char_pow(&omega, m),
                        Gl2RepDescriptor::PrincipalSeries(
                            char_pow(chi1, 2 * k as i64),
                            char_pow(chi2, 2 * k as i64),
                        ),
                    ));
                }
                Ok(LeviRep {
                    blocks,
                    gl1: Some(char_pow(&omega, ni / 2)),
                })
            }
        }
        LParameter::RealDiscrete { l, t } => {
            let mut blocks = Vec::new();
            if n % 2 == 1 {
                for k in 1..=n.div_ceil(2) {
                    let m = (ni - 2 * k as i64 + 1) / 2;
                    let sign = if (l * m) % 2 == 0 { 1 } else { -1 };
                    blocks.push((
                        QuasiCharacter::Real(RealChar {
                            sign,
                            t: *t * (ni - 2 * k as i64 + 1) as f64,
                        }),
                        Gl2RepDescriptor::DiscreteSeries {
                            l: (2 * k as i64 - 1) * l,
                            t: *t * (2 * k as i64 - 1) as f64,
                        },
                    ));
                }
                Ok(LeviRep { blocks, gl1: None })
            } else {
                for k in 1..=n / 2 {
                    let m = ni / 2 - k as i64;
                    let sign = if (l * m) % 2 == 0 { 1 } else { -1 };
                    blocks.push((
                        QuasiCharacter::Real(RealChar {
                            sign,
                            t: *t * (ni - 2 * k as i64) as f64,
                        }),
                        Gl2RepDescriptor::DiscreteSeries {
                            l: 2 * k as i64 * l,
                            t: *t * 2.0 * k as f64,
                        },
                    ));
                }
                let sign = if (ni * l / 2) % 2 == 0 { 1 } else { -1 };
                Ok(LeviRep {
                    blocks,
                    gl1: Some(QuasiCharacter::Real(RealChar {
                        sign,
                        t: *t * ni as f64,
                    })),
                })
            }
        }
        LParameter::PAdicInduced { ext, theta } => {
            let q = QuasiCharacter::PAdic(theta.clone());
            let pow_th = |e: i64| -> Result<PAdicChar> {
                match char_pow(&q, e) {
                    QuasiCharacter::PAdic(c) => Ok(c),
                    _ => unreachable!(),
                }
            };
            let mut blocks = Vec::new();
            if n % 2 == 1 {
                for k in 1..=n.div_ceil(2) {
                    let m = (ni - 2 * k as i64 + 1) / 2;
                    blocks.push((
                        QuasiCharacter::PAdic(char_restrict_f(&pow_th(m)?)?),
                        Gl2RepDescriptor::Supercuspidal {
                            ext: ext.clone(),
                            theta: pow_th(2 * k as i64 - 1)?,
                        },
                    ));
                }
                Ok(LeviRep { blocks, gl1: None })
            } else {
                for k in 1..=n / 2 {
                    let m = (ni - 2 * k as i64) / 2;
                    blocks.push((
                        QuasiCharacter::PAdic(char_restrict_f(&pow_th(m)?)?),
                        Gl2RepDescriptor::Supercuspidal {
                            ext: ext.clone(),
                            theta: pow_th(2 * k as i64)?,
                        },
                    ));
                }
                Ok(LeviRep {
                    blocks,
                    gl1: Some(QuasiCharacter::PAdic(char_restrict_f(&pow_th(ni / 2)?)?)),
                })
            }
        }
    }
}

/// The non-admissible reduction: Ind θ for θ = ξ∘N decomposes as
/// ξ ⊕ ξ·sgn_{E/F}.
pub fn nonadmissible_reduction(ext: &Arc<QuadExt>, xi: &PAdicChar) -> Result<LParameter> {
    if !ext.alpha.is_field() {
        return Err(Error::Unsupported("reduction needs a field extension".into()));
    }
    let sgn = sgn_ef(ext)?;
    let chi1 = QuasiCharacter::PAdic(xi.clone());
    let chi2 = char_mul(&chi1, &QuasiCharacter::PAdic(sgn))?;
    Ok(LParameter::Principal { chi1, chi2 })
}

// ---------------------------------------------------------------------------
// matrix models and the symmetric-power oracle
// ---------------------------------------------------------------------------

/// A dense square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zero(n: usize) -> ComplexMatrix {
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn diag(entries: &[Complex64]) -> ComplexMatrix {
        let n = entries.len();
        let mut m = ComplexMatrix::zero(n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    /// antidiag(a₁, …, a_n): entries M[i][n+1−i] top-right to bottom-left.
    pub fn antidiag(entries: &[Complex64]) -> ComplexMatrix {
        let n = entries.len();
        let mut m = ComplexMatrix::zero(n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + (n - 1 - i)] = e;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, other.n);
        let mut out = ComplexMatrix::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..self.n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Sym^n of a 2×2 matrix on the monomial basis x^{n−k}y^k of binary n-forms.
pub fn sym_power_matrix(m: &ComplexMatrix, n: usize) -> ComplexMatrix {
    assert_eq!(m.n, 2, "symmetric powers of 2×2 matrices only");
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let size = n + 1;
    let mut out = ComplexMatrix::zero(size);
    // column j: coefficients of (a x + c y)^{n−j} (b x + d y)^j
    for j in 0..size {
        let p1 = binomial_expand(a, c, n - j);
        let p2 = binomial_expand(b, d, j);
        // convolve: coefficient of x^{n−i} y^i
        for (i1, &c1) in p1.iter().enumerate() {
            for (i2, &c2) in p2.iter().enumerate() {
                let i = i1 + i2; // power of y
                let v = out.get(i, j) + c1 * c2;
                out.set(i, j, v);
            }
        }
    }
    out
}

/// Coefficients of (u·x + v·y)^k against y-powers 0..k.
fn binomial_expand(u: Complex64, v: Complex64, k: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(k + 1);
    let mut binom = 1f64;
    for i in 0..=k {
        if i > 0 {
            binom = binom * (k - i + 1) as f64 / i as f64;
        }
        let term = Complex64::new(binom, 0.0) * u.powi((k - i) as i32) * v.powi(i as i32);
        out.push(term);
    }
    out
}

/// The 2×2 matrix model of a parameter at a group token.
pub fn matrix_model(phi: &LParameter, token: &GroupToken) -> Result<ComplexMatrix> {
    let zero = Complex64::new(0.0, 0.0);
    match (phi, token) {
        (LParameter::Principal { chi1, chi2 }, tok) => {
            let (v1, v2) = (one_dim_token_value_raw(chi1, tok, None)?, {
                one_dim_token_value_raw(chi2, tok, None)?
            });
            Ok(ComplexMatrix::diag(&[v1, v2]))
        }
        (LParameter::RealDiscrete { l, t }, GroupToken::RealZ(z)) => {
            if *z == zero {
                return Err(Error::DomainMismatch("token must be nonzero".into()));
            }
            let modulus = Complex64::new(z.norm(), 0.0).powc(*t);
            let unit = z / z.norm();
            Ok(ComplexMatrix::diag(&[
                modulus * unit.powi(*l as i32),
                modulus * unit.powi(-*l as i32),
            ]))
        }
        (LParameter::RealDiscrete { l, .. }, GroupToken::RealJ) => {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            Ok(ComplexMatrix::antidiag(&[
                Complex64::new(sign, 0.0),
                Complex64::new(1.0, 0.0),
            ]))
        }
        (LParameter::PAdicInduced { ext: _, theta }, GroupToken::PAdicWeil(w)) => {
            let conj = char_galois_conj(theta)?;
            Ok(ComplexMatrix::diag(&[
                theta.eval_ext(w)?,
                conj.eval_ext(w)?,
            ]))
        }
        (LParameter::PAdicInduced { ext, theta }, GroupToken::PAdicLambdaTilde) => {
            let lam = ext.lambda_e();
            Ok(ComplexMatrix::antidiag(&[
                theta.eval_ext(&lam)?,
                Complex64::new(1.0, 0.0),
            ]))
        }
        (LParameter::SteinbergTwist { .. }, _) => Err(Error::Unsupported(
            "twisted Steinberg has no two-dimensional Weil-token model here".into(),
        )),
        _ => Err(Error::DomainMismatch(
            "token regime does not match the parameter".into(),
        )),
    }
}

/// Value of a one-dimensional summand (a character of F^× / GL₁) at a group
/// token; Weil tokens evaluate through the norm, λ̃ at the fixed λ_E ∈ F^×.
fn one_dim_token_value_raw(
    chi: &QuasiCharacter,
    token: &GroupToken,
    ext: Option<&Arc<QuadExt>>,
) -> Result<Complex64> {
    match (chi, token) {
        (QuasiCharacter::Complex(c), GroupToken::ComplexZ(z)) => c.eval(*z),
        (QuasiCharacter::Real(c), GroupToken::RealZ(z)) => c.eval_weil_z(*z),
        (QuasiCharacter::Real(c), GroupToken::RealJ) => Ok(c.eval_weil_j()),
        (QuasiCharacter::PAdic(c), GroupToken::PAdicBase(x)) => c.eval_base(x),
        (QuasiCharacter::PAdic(c), GroupToken::PAdicWeil(w)) => {
            let e = ext.ok_or_else(|| {
                Error::DomainMismatch("Weil token needs the ambient extension".into())
            })?;
            c.eval_base(&e.norm(w))
        }
        (QuasiCharacter::PAdic(c), GroupToken::PAdicLambdaTilde) => {
            let e = ext.ok_or_else(|| {
                Error::DomainMismatch("λ̃ token needs the ambient extension".into())
            })?;
            c.eval_base(&e.lambda_e_base())
        }
        _ => Err(Error::DomainMismatch(
            "token regime does not match the character".into(),
        )),
    }
}

/// One sample of the decomposition trace check.
#[derive(Debug, Clone)]
pub struct TraceCheckSample {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
}

/// Compare trace(Sym^n(model(φ, g))) against the sum of summand traces, per
/// token.  Mismatches are reported, never thrown.
pub fn decomposition_trace_check(
    phi: &LParameter,
    n: usize,
    tokens: &[GroupToken],
) -> Result<Vec<TraceCheckSample>> {
    if matches!(phi, LParameter::SteinbergTwist { .. }) {
        return Err(Error::Unsupported(
            "trace check excludes twisted Steinberg parameters".into(),
        ));
    }
    let ext = match phi {
        LParameter::PAdicInduced { ext, .. } => Some(ext),
        _ => None,
    };
    let summands = sym_decompose(phi, n)?;
    let mut out = Vec::with_capacity(tokens.len());
    for token in tokens {
        let lhs = sym_power_matrix(&matrix_model(phi, token)?, n).trace();
        let mut rhs = Complex64::new(0.0, 0.0);
        for s in &summands {
            rhs += match s {
                Summand::OneDim(chi) => one_dim_token_value_raw(chi, token, ext)?,
                Summand::TwoDim(psi) => matrix_model(psi, token)?.trace(),
                Summand::SteinbergBlock { .. } => unreachable!(),
            };
        }
        out.push(TraceCheckSample {
            lhs,
            rhs,
            abs_err: (lhs - rhs).norm(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::ComplexChar;
    use crate::padic::PAdicField;
    use crate::phase::Phase;
    use crate::quadext::AlphaTag;
    use approx::assert_relative_eq;

    fn trivial_real() -> QuasiCharacter {
        QuasiCharacter::Real(RealChar {
            sign: 1,
            t: Complex64::new(0.0, 0.0),
        })
    }

    fn unram3() -> Arc<QuadExt> {
        QuadExt::new(PAdicField::new(3, 1, 6).unwrap(), AlphaTag::Eps).unwrap()
    }

    #[test]
    fn dimension_counts() {
        let phi_p = LParameter::Principal {
            chi1: QuasiCharacter::Complex(ComplexChar {
                l: 1,
                t: Complex64::new(0.0, 0.0),
            }),
            chi2: QuasiCharacter::Complex(ComplexChar {
                l: -2,
                t: Complex64::new(0.0, 0.3),
            }),
        };
        let phi_d = LParameter::RealDiscrete {
            l: 2,
            t: Complex64::new(0.0, 0.1),
        };
        let e = unram3();
        let phi_c = LParameter::PAdicInduced {
            ext: e.clone(),
            theta: PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 1, Phase::new(1, 8)),
        };
        let phi_s = LParameter::SteinbergTwist {
            chi: trivial_real(),
        };
        for n in 0..=12 {
            for phi in [&phi_p, &phi_d, &phi_c, &phi_s] {
                let total: usize = sym_decompose(phi, n)
                    .unwrap()
                    .iter()
                    .map(|s| s.dim())
                    .sum();
                assert_eq!(total, n + 1, "dims at n = {n}");
            }
        }
    }

    #[test]
    fn principal_trivial_n2_flattens_to_three() {
        let one = trivial_real();
        let phi = LParameter::Principal {
            chi1: one.clone(),
            chi2: one,
        };
        let dec = sym_decompose(&phi, 2).unwrap();
        assert_eq!(dec.len(), 2);
        let flat = flatten_summands(&dec);
        assert_eq!(flat.len(), 3);
        for s in &flat {
            match s {
                Summand::OneDim(QuasiCharacter::Real(c)) => {
                    assert_eq!(c.sign, 1);
                    assert_eq!(c.t, Complex64::new(0.0, 0.0));
                }
                _ => panic!("expected trivial one-dimensional pieces"),
            }
        }
    }

    #[test]
    fn sym1_identities() {
        // irreducible: Sym¹ = [TwoDim(φ)]
        let phi = LParameter::RealDiscrete {
            l: 3,
            t: Complex64::new(0.0, 0.0),
        };
        let dec = sym_decompose(&phi, 1).unwrap();
        assert_eq!(dec.len(), 1);
        match &dec[0] {
            Summand::TwoDim(LParameter::RealDiscrete { l, .. }) => assert_eq!(*l, 3),
            _ => panic!(),
        }
        // principal: flattens to [χ₁, χ₂]
        let chi1 = QuasiCharacter::Real(RealChar {
            sign: -1,
            t: Complex64::new(0.0, 0.5),
        });
        let chi2 = trivial_real();
        let pp = LParameter::Principal {
            chi1: chi1.clone(),
            chi2: chi2.clone(),
        };
        let flat = flatten_summands(&sym_decompose(&pp, 1).unwrap());
        assert_eq!(flat.len(), 2);
        match (&flat[0], &flat[1]) {
            (Summand::OneDim(a), Summand::OneDim(b)) => {
                assert!(quasichar_eq(a, &chi1));
                assert!(quasichar_eq(b, &chi2));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn steinberg_block() {
        let e = unram3();
        let chi = QuasiCharacter::PAdic(PAdicChar::depth_zero(
            PAdicDomain::Base(e.base.clone()),
            1,
            Phase::new(1, 4),
        ));
        let phi = LParameter::SteinbergTwist { chi: chi.clone() };
        let dec = sym_decompose(&phi, 3).unwrap();
        assert_eq!(dec.len(), 1);
        match &dec[0] {
            Summand::SteinbergBlock { chi: c, size } => {
                assert_eq!(*size, 4);
                assert!(quasichar_eq(c, &char_pow(&chi, 3)));
            }
            _ => panic!(),
        }
        assert!(levi_rep(&phi, 3).is_err());
    }

    #[test]
    fn levi_twists_are_central_character_powers() {
        // Principal, n odd: k-th twist equals (χ₁χ₂)^{(n−2k+1)/2} in parameters
        let chi1 = QuasiCharacter::Complex(ComplexChar {
            l: 2,
            t: Complex64::new(0.0, 0.4),
        });
        let chi2 = QuasiCharacter::Complex(ComplexChar {
            l: -1,
            t: Complex64::new(0.0, -0.2),
        });
        let phi = LParameter::Principal {
            chi1: chi1.clone(),
            chi2: chi2.clone(),
        };
        let n = 5;
        let rep = levi_rep(&phi, n).unwrap();
        let omega = char_mul(&chi1, &chi2).unwrap();
        assert_eq!(rep.total_size(), n + 1);
        for (k, (twist, _)) in rep.blocks.iter().enumerate() {
            let m = (n as i64 - 2 * (k as i64 + 1) + 1) / 2;
            assert!(quasichar_eq(twist, &char_pow(&omega, m)), "twist k={k}");
        }
    }

    #[test]
    fn levi_padic_n3_shape() {
        let e = unram3();
        let theta = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 1, Phase::new(1, 8));
        let phi = LParameter::PAdicInduced {
            ext: e.clone(),
            theta: theta.clone(),
        };
        let rep = levi_rep(&phi, 3).unwrap();
        assert_eq!(rep.blocks.len(), 2);
        assert!(rep.gl1.is_none());
        // twists: θ|_{F^×} and trivial; blocks: π_θ and π_{θ³}
        match &rep.blocks[0].1 {
            Gl2RepDescriptor::Supercuspidal { theta: t, .. } => assert_eq!(t.teich, 1),
            _ => panic!(),
        }
        match &rep.blocks[1].1 {
            Gl2RepDescriptor::Supercuspidal { theta: t, .. } => assert_eq!(t.teich, 3),
            _ => panic!(),
        }
        if let QuasiCharacter::PAdic(tw) = &rep.blocks[1].0 {
            assert!(tw.is_trivial());
        } else {
            panic!()
        }
    }

    #[test]
    fn sym_power_matrix_oracle() {
        let a = Complex64::new(1.3, 0.2);
        let b = Complex64::new(0.4, -0.1);
        let m = ComplexMatrix::diag(&[a, b]);
        // trace Sym²(diag(a,b)) = a² + ab + b²
        let s2 = sym_power_matrix(&m, 2);
        let expect = a * a + a * b + b * b;
        assert_relative_eq!(s2.trace().re, expect.re, epsilon = 1e-12);
        assert_relative_eq!(s2.trace().im, expect.im, epsilon = 1e-12);
        // Sym¹ = id
        let any = {
            let mut mm = ComplexMatrix::zero(2);
            mm.set(0, 0, Complex64::new(0.3, 0.1));
            mm.set(0, 1, Complex64::new(-1.0, 0.5));
            mm.set(1, 0, Complex64::new(0.7, 0.0));
            mm.set(1, 1, Complex64::new(0.2, -0.4));
            mm
        };
        assert_eq!(sym_power_matrix(&any, 1), any);
        // antidiag(c, 1): trace of Sym^n is c^{n/2} for even n, 0 for odd
        let c = Complex64::new(0.8, 0.3);
        let anti = ComplexMatrix::antidiag(&[c, Complex64::new(1.0, 0.0)]);
        for n in 1..=8usize {
            let tr = sym_power_matrix(&anti, n).trace();
            if n % 2 == 1 {
                assert!(tr.norm() < 1e-12, "odd n = {n}");
            } else {
                let expect = c.powi((n / 2) as i32);
                assert!((tr - expect).norm() < 1e-12, "even n = {n}");
            }
        }
    }

    #[test]
    fn sym_power_is_multiplicative() {
        // Sym^n(MN) = Sym^n(M)·Sym^n(N)
        let mut m = ComplexMatrix::zero(2);
        m.set(0, 0, Complex64::new(0.6, 0.1));
        m.set(0, 1, Complex64::new(-0.3, 0.2));
        m.set(1, 0, Complex64::new(0.9, -0.5));
        m.set(1, 1, Complex64::new(0.1, 0.4));
        let mut nmat = ComplexMatrix::zero(2);
        nmat.set(0, 0, Complex64::new(-0.2, 0.7));
        nmat.set(0, 1, Complex64::new(0.5, 0.0));
        nmat.set(1, 0, Complex64::new(0.3, 0.3));
        nmat.set(1, 1, Complex64::new(1.1, -0.2));
        for n in 1..=4usize {
            let lhs = sym_power_matrix(&m.mul(&nmat), n);
            let rhs = sym_power_matrix(&m, n).mul(&sym_power_matrix(&nmat, n));
            for (x, y) in lhs.data.iter().zip(&rhs.data) {
                assert!((x - y).norm() < 1e-10, "n = {n}");
            }
        }
    }

    #[test]
    fn trace_check_real_discrete() {
        let phi = LParameter::RealDiscrete {
            l: 1,
            t: Complex64::new(0.0, 0.0),
        };
        // g = j, n = 3: both sides vanish
        let r = decomposition_trace_check(&phi, 3, &[GroupToken::RealJ]).unwrap();
        assert!(r[0].lhs.norm() < 1e-12);
        assert!(r[0].abs_err < 1e-12);
        // generic z tokens, several n
        let z = Complex64::new(0.3, 1.1);
        for n in 1..=8 {
            let r = decomposition_trace_check(
                &phi,
                n,
                &[GroupToken::RealZ(z), GroupToken::RealJ],
            )
            .unwrap();
            for s in &r {
                assert!(s.abs_err < 1e-9, "n = {n}, err = {}", s.abs_err);
            }
        }
    }

    #[test]
    fn trace_check_padic_induced() {
        let e = unram3();
        let theta = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 1, Phase::new(3, 8));
        let phi = LParameter::PAdicInduced {
            ext: e.clone(),
            theta,
        };
        let tokens = vec![
            GroupToken::PAdicWeil(e.elt_teich(1)),
            GroupToken::PAdicWeil(e.mul(&e.elt_teich(5), &e.uniformizer())),
            GroupToken::PAdicLambdaTilde,
        ];
        for n in 1..=8 {
            let r = decomposition_trace_check(&phi, n, &tokens).unwrap();
            for s in &r {
                assert!(s.abs_err < 1e-12, "n = {n}, err = {}", s.abs_err);
            }
        }
    }

    #[test]
    fn trace_check_ramified_induced() {
        let base = PAdicField::new(3, 1, 6).unwrap();
        let e = QuadExt::new(base, AlphaTag::Pi).unwrap();
        let k = e.base.residue.clone();
        let theta = PAdicChar::depth_zero(PAdicDomain::Ext(e.clone()), 1, Phase::new(1, 12))
            .with_ramified_digits(vec![k.from_u64(2)])
            .unwrap();
        let phi = LParameter::PAdicInduced {
            ext: e.clone(),
            theta,
        };
        let lam = e
            .elt_from_pair(e.base.ring_from_i64(2), e.base.ring_from_i64(4))
            .unwrap();
        let tokens = vec![
            GroupToken::PAdicWeil(lam),
            GroupToken::PAdicWeil(e.sqrt_alpha()),
            GroupToken::PAdicLambdaTilde,
        ];
        for n in 1..=6 {
            let r = decomposition_trace_check(&phi, n, &tokens).unwrap();
            for s in &r {
                assert!(s.abs_err < 1e-12, "n = {n}, err = {}", s.abs_err);
            }
        }
    }

    #[test]
    fn nonadmissible_reduction_consistency() {
        let e = unram3();
        let xi = PAdicChar::depth_zero(PAdicDomain::Base(e.base.clone()), 1, Phase::new(2, 7));
        let phi = nonadmissible_reduction(&e, &xi).unwrap();
        // Sym¹ flattens to [ξ, ξ·sgn]
        let flat = flatten_summands(&sym_decompose(&phi, 1).unwrap());
        assert_eq!(flat.len(), 2);
        // consistency of values: characters agree with ξ and ξ·sgn at ϖ
        let w = e.base.elt_uniformizer_pow(1);
        match (&flat[0], &flat[1]) {
            (Summand::OneDim(QuasiCharacter::PAdic(a)), Summand::OneDim(QuasiCharacter::PAdic(b))) => {
                let va = a.eval_base_phase(&w).unwrap();
                let vb = b.eval_base_phase(&w).unwrap();
                assert_eq!(va, xi.eval_base_phase(&w).unwrap());
                // sgn(ϖ) = −1 unramified
                assert_eq!(vb, va.mul(&Phase::new(1, 2)));
            }
            _ => panic!(),
        }
    }
}
