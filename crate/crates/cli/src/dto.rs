//! JSON wire types for parameters, characters and torus elements, with
//! conversions to the core types.  Every emitted document carries
//! `"schema": 1`; readers accept exactly what the writers produce.

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use symlift_core::characters::{OneUnitData, PAdicChar, PAdicDomain, QuasiCharacter};
use symlift_core::characters::{ComplexChar, RealChar};
use symlift_core::padic::{FElt, PAdicDesc, PAdicField};
use symlift_core::params::{Gl2RepDescriptor, LParameter, LeviRep, Summand};
use symlift_core::phase::Phase;
use symlift_core::quadext::{AlphaTag, QuadExt, QuadExtDesc};
use symlift_core::torus::{SplitCoords, TorusElement};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum CharacterJson {
    Complex {
        l: i64,
        t_re: f64,
        t_im: f64,
    },
    Real {
        sign: i8,
        t_re: f64,
        t_im: f64,
    },
    Padic {
        p: u64,
        f: usize,
        precision: usize,
        /// None: a character of F^×; Some: of E_α^×.
        ext: Option<AlphaTag>,
        teich: i64,
        unif_num: i64,
        unif_den: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        functional: Option<FunctionalJson>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionalJson {
    Unramified {
        conductor: usize,
        coeff_a: Vec<u64>,
        coeff_b: Vec<u64>,
    },
    RamifiedDigits {
        digits: Vec<Vec<u64>>,
    },
}

impl CharacterJson {
    pub fn to_core(&self) -> Result<QuasiCharacter> {
        Ok(match self {
            CharacterJson::Complex { l, t_re, t_im } => QuasiCharacter::Complex(ComplexChar {
                l: *l,
                t: Complex64::new(*t_re, *t_im),
            }),
            CharacterJson::Real { sign, t_re, t_im } => {
                if *sign != 1 && *sign != -1 {
                    bail!("sign must be ±1");
                }
                QuasiCharacter::Real(RealChar {
                    sign: *sign,
                    t: Complex64::new(*t_re, *t_im),
                })
            }
            CharacterJson::Padic {
                p,
                f,
                precision,
                ext,
                teich,
                unif_num,
                unif_den,
                functional,
            } => {
                if *unif_den == 0 {
                    bail!("unif_den must be nonzero");
                }
                let field = PAdicDesc {
                    p: *p,
                    f: *f,
                    precision: *precision,
                }
                .build()
                .map_err(|e| anyhow!("{e}"))?;
                let flen = field.f;
                let domain = match ext {
                    None => PAdicDomain::Base(field),
                    Some(alpha) => PAdicDomain::Ext(
                        QuadExt::new(field, *alpha).map_err(|e| anyhow!("{e}"))?,
                    ),
                };
                let mut chi =
                    PAdicChar::depth_zero(domain, *teich, Phase::new(*unif_num, *unif_den));
                if let Some(func) = functional {
                    chi = match func {
                        FunctionalJson::Unramified {
                            conductor,
                            coeff_a,
                            coeff_b,
                        } => {
                            check_coeff_len(coeff_a, flen)?;
                            check_coeff_len(coeff_b, flen)?;
                            chi.with_unramified_functional(
                                *conductor,
                                coeff_a.clone(),
                                coeff_b.clone(),
                            )
                            .map_err(|e| anyhow!("{e}"))?
                        }
                        FunctionalJson::RamifiedDigits { digits } => {
                            for d in digits {
                                check_coeff_len(d, flen)?;
                            }
                            chi.with_ramified_digits(digits.clone())
                                .map_err(|e| anyhow!("{e}"))?
                        }
                    };
                }
                QuasiCharacter::PAdic(chi)
            }
        })
    }

    pub fn from_core(chi: &QuasiCharacter) -> CharacterJson {
        match chi {
            QuasiCharacter::Complex(c) => CharacterJson::Complex {
                l: c.l,
                t_re: c.t.re,
                t_im: c.t.im,
            },
            QuasiCharacter::Real(c) => CharacterJson::Real {
                sign: c.sign,
                t_re: c.t.re,
                t_im: c.t.im,
            },
            QuasiCharacter::PAdic(c) => {
                let (desc, ext) = match &c.domain {
                    PAdicDomain::Base(f) => (f.desc(), None),
                    PAdicDomain::Ext(e) => (e.base.desc(), Some(e.alpha)),
                };
                let functional = match &c.one_unit {
                    OneUnitData::Trivial => None,
                    OneUnitData::Unramified {
                        conductor,
                        coeff_a,
                        coeff_b,
                    } => Some(FunctionalJson::Unramified {
                        conductor: *conductor,
                        coeff_a: coeff_a.clone(),
                        coeff_b: coeff_b.clone(),
                    }),
                    OneUnitData::RamifiedDigits(d) => Some(FunctionalJson::RamifiedDigits {
                        digits: d.clone(),
                    }),
                };
                CharacterJson::Padic {
                    p: desc.p,
                    f: desc.f,
                    precision: desc.precision,
                    ext,
                    teich: c.teich,
                    unif_num: c.unif.numer(),
                    unif_den: c.unif.denom(),
                    functional,
                }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum ParamJson {
    Principal {
        chi1: CharacterJson,
        chi2: CharacterJson,
    },
    RealDiscrete {
        l: i64,
        t_re: f64,
        t_im: f64,
    },
    PadicInduced {
        theta: CharacterJson,
    },
    SteinbergTwist {
        chi: CharacterJson,
    },
}

impl ParamJson {
    pub fn to_core(&self) -> Result<LParameter> {
        Ok(match self {
            ParamJson::Principal { chi1, chi2 } => LParameter::Principal {
                chi1: chi1.to_core()?,
                chi2: chi2.to_core()?,
            },
            ParamJson::RealDiscrete { l, t_re, t_im } => {
                if *l < 1 {
                    bail!("discrete parameter needs l ≥ 1");
                }
                LParameter::RealDiscrete {
                    l: *l,
                    t: Complex64::new(*t_re, *t_im),
                }
            }
            ParamJson::PadicInduced { theta } => {
                let QuasiCharacter::PAdic(theta) = theta.to_core()? else {
                    bail!("induced parameters take a p-adic character");
                };
                let PAdicDomain::Ext(ext) = theta.domain.clone() else {
                    bail!("the inducing character must live on a quadratic extension (set `ext`)");
                };
                if !ext.alpha.is_field() {
                    bail!("the inducing extension must be a field (ext ≠ split)");
                }
                LParameter::PAdicInduced { ext, theta }
            }
            ParamJson::SteinbergTwist { chi } => LParameter::SteinbergTwist {
                chi: chi.to_core()?,
            },
        })
    }

    pub fn from_core(phi: &LParameter) -> ParamJson {
        match phi {
            LParameter::Principal { chi1, chi2 } => ParamJson::Principal {
                chi1: CharacterJson::from_core(chi1),
                chi2: CharacterJson::from_core(chi2),
            },
            LParameter::RealDiscrete { l, t } => ParamJson::RealDiscrete {
                l: *l,
                t_re: t.re,
                t_im: t.im,
            },
            LParameter::PAdicInduced { theta, .. } => ParamJson::PadicInduced {
                theta: CharacterJson::from_core(&QuasiCharacter::PAdic(theta.clone())),
            },
            LParameter::SteinbergTwist { chi } => ParamJson::SteinbergTwist {
                chi: CharacterJson::from_core(chi),
            },
        }
    }
}

fn check_coeff_len(v: &[u64], f: usize) -> Result<()> {
    if v.len() != f {
        bail!("coefficient vector must have length {f} (one entry per power-basis coordinate)");
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FEltJson {
    pub val: i64,
    pub unit: Vec<u64>,
}

impl FEltJson {
    pub fn to_core(&self, field: &Arc<PAdicField>) -> Result<FElt> {
        check_coeff_len(&self.unit, field.f)?;
        field
            .elt_from_unit(self.unit.clone(), self.val)
            .map_err(|e| anyhow!("{e}"))
    }

}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TorusJson {
    SplitComplex {
        coords: Vec<(f64, f64)>,
    },
    SplitReal {
        coords: Vec<f64>,
    },
    SplitPadic {
        p: u64,
        f: usize,
        precision: usize,
        coords: Vec<FEltJson>,
    },
    Rotation {
        theta: f64,
        scalar: f64,
    },
    RealSplit {
        alpha: f64,
        sign: i8,
        scalar: f64,
    },
    PadicElliptic {
        p: u64,
        f: usize,
        precision: usize,
        ext: AlphaTag,
        val: i64,
        a: Vec<u64>,
        b: Vec<u64>,
    },
}

impl TorusJson {
    pub fn to_core(&self) -> Result<TorusElement> {
        Ok(match self {
            TorusJson::SplitComplex { coords } => TorusElement::Split(SplitCoords::Complex(
                coords.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
            )),
            TorusJson::SplitReal { coords } => {
                TorusElement::Split(SplitCoords::Real(coords.clone()))
            }
            TorusJson::SplitPadic {
                p,
                f,
                precision,
                coords,
            } => {
                let field = PAdicDesc {
                    p: *p,
                    f: *f,
                    precision: *precision,
                }
                .build()
                .map_err(|e| anyhow!("{e}"))?;
                let coords = coords
                    .iter()
                    .map(|c| c.to_core(&field))
                    .collect::<Result<Vec<_>>>()?;
                TorusElement::Split(SplitCoords::PAdic { field, coords })
            }
            TorusJson::Rotation { theta, scalar } => TorusElement::RealRotation {
                theta: *theta,
                scalar: *scalar,
            },
            TorusJson::RealSplit {
                alpha,
                sign,
                scalar,
            } => TorusElement::RealSplit {
                alpha: *alpha,
                sign: *sign,
                scalar: *scalar,
            },
            TorusJson::PadicElliptic {
                p,
                f,
                precision,
                ext,
                val,
                a,
                b,
            } => {
                let ext = QuadExtDesc {
                    base: PAdicDesc {
                        p: *p,
                        f: *f,
                        precision: *precision,
                    },
                    alpha: *ext,
                }
                .build()
                .map_err(|e| anyhow!("{e}"))?;
                check_coeff_len(a, ext.base.f)?;
                check_coeff_len(b, ext.base.f)?;
                let mut lambda = ext
                    .elt_from_pair(a.clone(), b.clone())
                    .map_err(|e| anyhow!("{e}"))?;
                if *val != 0 {
                    lambda = ext.mul(
                        &lambda,
                        &ext.pow(&ext.uniformizer(), *val).map_err(|e| anyhow!("{e}"))?,
                    );
                }
                TorusElement::PAdicElliptic { ext, lambda }
            }
        })
    }

}

/// A field element a character can be evaluated at.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ElementJson {
    Complex {
        re: f64,
        im: f64,
    },
    Real {
        value: f64,
    },
    Padic {
        val: i64,
        unit: Vec<u64>,
    },
    PadicExt {
        val: i64,
        a: Vec<u64>,
        b: Vec<u64>,
    },
}

// ---- decomposition output ----

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SummandJson {
    OneDim { chi: CharacterJson },
    TwoDim { param: ParamJson },
    Steinberg { chi: CharacterJson, size: usize },
}

impl SummandJson {
    pub fn from_core(s: &Summand) -> SummandJson {
        match s {
            Summand::OneDim(chi) => SummandJson::OneDim {
                chi: CharacterJson::from_core(chi),
            },
            Summand::TwoDim(p) => SummandJson::TwoDim {
                param: ParamJson::from_core(p),
            },
            Summand::SteinbergBlock { chi, size } => SummandJson::Steinberg {
                chi: CharacterJson::from_core(chi),
                size: *size,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "block", rename_all = "snake_case")]
pub enum BlockJson {
    PrincipalSeries {
        chi1: CharacterJson,
        chi2: CharacterJson,
    },
    DiscreteSeries {
        l: i64,
        t_re: f64,
        t_im: f64,
    },
    Supercuspidal {
        theta: CharacterJson,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct LeviBlockJson {
    pub twist: CharacterJson,
    /// The twist is this power of the central character of the base
    /// representation.
    pub central_character_power: i64,
    #[serde(flatten)]
    pub block: BlockJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct LeviJson {
    pub blocks: Vec<LeviBlockJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gl1: Option<CharacterJson>,
}

impl LeviJson {
    pub fn from_core(rep: &LeviRep, n: usize) -> LeviJson {
        let blocks = rep
            .blocks
            .iter()
            .enumerate()
            .map(|(idx, (twist, desc))| {
                let k = idx as i64 + 1;
                let power = if n % 2 == 1 {
                    (n as i64 - 2 * k + 1) / 2
                } else {
                    (n as i64 - 2 * k) / 2
                };
                let block = match desc {
                    Gl2RepDescriptor::PrincipalSeries(c1, c2) => BlockJson::PrincipalSeries {
                        chi1: CharacterJson::from_core(c1),
                        chi2: CharacterJson::from_core(c2),
                    },
                    Gl2RepDescriptor::DiscreteSeries { l, t } => BlockJson::DiscreteSeries {
                        l: *l,
                        t_re: t.re,
                        t_im: t.im,
                    },
                    Gl2RepDescriptor::Supercuspidal { theta, .. } => BlockJson::Supercuspidal {
                        theta: CharacterJson::from_core(&QuasiCharacter::PAdic(theta.clone())),
                    },
                };
                LeviBlockJson {
                    twist: CharacterJson::from_core(twist),
                    central_character_power: power,
                    block,
                }
            })
            .collect();
        LeviJson {
            blocks,
            gl1: rep.gl1.as_ref().map(CharacterJson::from_core),
        }
    }
}

pub fn read_json_input(path_or_inline: &str) -> Result<String> {
    if path_or_inline.trim_start().starts_with('{') {
        Ok(path_or_inline.to_string())
    } else if path_or_inline == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path_or_inline)
            .with_context(|| format!("reading {path_or_inline}"))
    }
}
