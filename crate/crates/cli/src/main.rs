//! Command-line front end: decompose symmetric-power lifts, evaluate
//! characters, pair delta kernels against normalized characters, and run the
//! seeded verification suites.
//!
//! Exit codes: 0 on success (all non-expected-failure checks pass for
//! `verify`), 1 when a verification suite reports failures, 2 on usage or
//! malformed input.

mod dto;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dto::{
    read_json_input, CharacterJson, ElementJson, LeviJson, ParamJson, SummandJson, TorusJson,
};
use serde::Serialize;
use serde_json::json;
use symlift_core::char_eval::{principal_char_gln, sym_char_list, NormalizedChar};
use symlift_core::characters::{PAdicDomain, QuasiCharacter};
use symlift_core::params::{flatten_summands, levi_rep, sym_decompose, LParameter};
use symlift_core::torus::TorusElement;
use symlift_core::transfer::{
    induce_kernel_pair, negative_probe_split_kernel_discrete, sym_theta_pair, KernelClass,
    PairingReport,
};
use symlift_core::verify::{run_suite, SuiteConfig, SuiteKind, SuiteReport, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "symlift",
    about = "Symmetric-power lifts of GL(2) parameters: decompositions, characters, transfer kernels, verification",
    version
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Expected field regime of the input (validated against the JSON).
    #[arg(long, global = true)]
    field: Option<FieldArg>,
    /// Residue cardinality filter for `verify` (replaces the q list).
    #[arg(long, global = true)]
    q: Option<u64>,
    /// p-adic truncation depth for `verify`.
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,
    /// Comparison tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for all sampled checks (printed in every report).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    out: OutFormat,
    /// Allow permutation sums with n+1 > 10.
    #[arg(long, global = true)]
    override_factorial_guard: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Complex,
    Real,
    Padic,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Sym^n decomposition and the block-Levi form side by side.
    Decompose {
        /// Degree of the symmetric power.
        #[arg(long)]
        n: usize,
        /// Parameter JSON (inline, a file path, or `-` for stdin).
        param: String,
    },
    /// Print the block-Levi form of the Sym^n lift.
    Levi {
        #[arg(long)]
        n: usize,
        param: String,
    },
    /// Evaluate a quasi-character at a field element.
    CharEval {
        /// {"character": …, "element": …} (inline, file, or `-`).
        input: String,
    },
    /// Pair the Sym^n delta kernel at a split element against a parameter's
    /// normalized character and compare with the GL_{n+1} Weyl sum.
    Pair {
        #[arg(long)]
        n: usize,
        /// {"param": …, "torus": …} (inline, file, or `-`).
        input: String,
    },
    /// Run the split-kernel/discrete-class negative probe.
    Probe {
        #[arg(long, default_value_t = 1)]
        l: i64,
        /// Comma-separated split parameters (odd count).
        #[arg(long, default_value = "1.0,1.0,1.0")]
        alphas: String,
    },
    /// Run a verification suite; exit 0 iff every check passes.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 7)]
        k_max: i64,
        #[arg(long, default_value_t = 6)]
        l_max: i64,
        /// Comma-separated residue cardinalities.
        #[arg(long, default_value = "3,5,7")]
        q_list: String,
        /// Attach wall-clock timings (reports stop being byte-reproducible).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Thm13,
    Sym,
    Transfer,
    Padic,
}

impl From<SuiteArg> for SuiteKind {
    fn from(s: SuiteArg) -> SuiteKind {
        match s {
            SuiteArg::All => SuiteKind::All,
            SuiteArg::Thm13 => SuiteKind::Thm13,
            SuiteArg::Sym => SuiteKind::Sym,
            SuiteArg::Transfer => SuiteKind::Transfer,
            SuiteArg::Padic => SuiteKind::PAdic,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn regime_of_param(p: &ParamJson) -> FieldArg {
    fn of_char(c: &CharacterJson) -> FieldArg {
        match c {
            CharacterJson::Complex { .. } => FieldArg::Complex,
            CharacterJson::Real { .. } => FieldArg::Real,
            CharacterJson::Padic { .. } => FieldArg::Padic,
        }
    }
    match p {
        ParamJson::Principal { chi1, .. } => of_char(chi1),
        ParamJson::RealDiscrete { .. } => FieldArg::Real,
        ParamJson::PadicInduced { .. } => FieldArg::Padic,
        ParamJson::SteinbergTwist { chi } => of_char(chi),
    }
}

fn check_field(expected: Option<FieldArg>, got: FieldArg) -> Result<()> {
    if let Some(e) = expected {
        if e != got {
            bail!("--field does not match the regime of the input");
        }
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<i32> {
    let g = &cli.global;
    match cli.command {
        Command::Decompose { n, param } => {
            let pj: ParamJson = serde_json::from_str(&read_json_input(&param)?)
                .context("malformed parameter JSON")?;
            check_field(g.field, regime_of_param(&pj))?;
            let phi = pj.to_core()?;
            // character pieces of principal summands are listed individually
            let summands = flatten_summands(&sym_decompose(&phi, n).map_err(|e| anyhow!("{e}"))?);
            let levi = levi_rep(&phi, n).ok().map(|rep| LeviJson::from_core(&rep, n));
            let doc = json!({
                "schema": 1,
                "n": n,
                "total_dim": summands.iter().map(|s| s.dim()).sum::<usize>(),
                "summands": summands.iter().map(SummandJson::from_core).collect::<Vec<_>>(),
                "levi": levi,
            });
            emit_decompose(g.out, &doc)?;
            Ok(0)
        }
        Command::Levi { n, param } => {
            let pj: ParamJson = serde_json::from_str(&read_json_input(&param)?)
                .context("malformed parameter JSON")?;
            check_field(g.field, regime_of_param(&pj))?;
            let phi = pj.to_core()?;
            let rep = levi_rep(&phi, n).map_err(|e| anyhow!("{e}"))?;
            let doc = json!({
                "schema": 1,
                "n": n,
                "levi": LeviJson::from_core(&rep, n),
            });
            emit_decompose(g.out, &doc)?;
            Ok(0)
        }
        Command::CharEval { input } => {
            #[derive(serde::Deserialize)]
            struct In {
                character: CharacterJson,
                element: ElementJson,
            }
            let input: In =
                serde_json::from_str(&read_json_input(&input)?).context("malformed input JSON")?;
            let chi = input.character.to_core()?;
            let value = eval_char_at(&chi, &input.element)?;
            let doc = json!({
                "schema": 1,
                "value_re": value.re,
                "value_im": value.im,
            });
            emit_value(g.out, &doc, &[("value_re", value.re), ("value_im", value.im)])?;
            Ok(0)
        }
        Command::Pair { n, input } => {
            #[derive(serde::Deserialize)]
            struct In {
                param: ParamJson,
                torus: TorusJson,
            }
            let input: In =
                serde_json::from_str(&read_json_input(&input)?).context("malformed input JSON")?;
            check_field(g.field, regime_of_param(&input.param))?;
            let phi = input.param.to_core()?;
            let LParameter::Principal { chi1, chi2 } = &phi else {
                bail!("pair compares against the GL_{{n+1}} Weyl sum; use a principal parameter");
            };
            let TorusElement::Split(coords) = input.torus.to_core()? else {
                bail!("pair needs a split torus element with n+1 coordinates");
            };
            let f = NormalizedChar::from_parameter(&phi).map_err(|e| anyhow!("{e}"))?;
            let lhs = sym_theta_pair(&coords, &f, n, g.override_factorial_guard)
                .map_err(|e| anyhow!("{e}"))?;
            let list = sym_char_list(chi1, chi2, n).map_err(|e| anyhow!("{e}"))?;
            let rhs = principal_char_gln(&list, &coords, g.override_factorial_guard)
                .map_err(|e| anyhow!("{e}"))?;
            let induced = induce_kernel_pair(
                n,
                &coords,
                &f,
                KernelClass::Principal,
                g.override_factorial_guard,
            )
            .map_err(|e| anyhow!("{e}"))?;
            let report = PairingReport::new(
                lhs.value,
                rhs,
                g.tol,
                lhs.degenerate_terms,
                format!("sym kernel vs GL_{} Weyl sum, n={n}", n + 1),
            );
            let doc = json!({
                "schema": 1,
                "report": report,
                "induced_re": induced.value.re,
                "induced_im": induced.value.im,
            });
            emit_pairing(g.out, &doc, &report)?;
            Ok(0)
        }
        Command::Probe { l, alphas } => {
            let alphas: Vec<f64> = alphas
                .split(',')
                .map(|s| s.trim().parse::<f64>().context("bad alpha"))
                .collect::<Result<_>>()?;
            let report = negative_probe_split_kernel_discrete(l, &alphas, g.tol)
                .map_err(|e| anyhow!("{e}"))?;
            let doc = json!({"schema": 1, "report": report});
            emit_pairing(g.out, &doc, &report)?;
            Ok(0)
        }
        Command::Verify {
            suite,
            samples,
            n_max,
            k_max,
            l_max,
            q_list,
            timings,
        } => {
            let q_list: Vec<u64> = match g.q {
                Some(q) => vec![q],
                None => q_list
                    .split(',')
                    .map(|s| s.trim().parse::<u64>().context("bad q"))
                    .collect::<Result<_>>()?,
            };
            let cfg = SuiteConfig {
                seed: g.seed,
                tol: g.tol,
                samples,
                q_list,
                n_max,
                k_max,
                l_max,
                precision: g.precision,
                allow_large: g.override_factorial_guard,
                timings,
            };
            let report = run_suite(&cfg, suite.into());
            emit_suite(g.out, &report)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn eval_char_at(chi: &QuasiCharacter, elt: &ElementJson) -> Result<num_complex::Complex64> {
    use num_complex::Complex64;
    Ok(match (chi, elt) {
        (QuasiCharacter::Complex(c), ElementJson::Complex { re, im }) => c
            .eval(Complex64::new(*re, *im))
            .map_err(|e| anyhow!("{e}"))?,
        (QuasiCharacter::Real(c), ElementJson::Real { value }) => {
            c.eval(*value).map_err(|e| anyhow!("{e}"))?
        }
        (QuasiCharacter::PAdic(c), ElementJson::Padic { val, unit }) => {
            let PAdicDomain::Base(field) = &c.domain else {
                bail!("character lives on E^×; provide a padic_ext element");
            };
            if unit.len() != field.f {
                bail!("unit vector must have length {}", field.f);
            }
            let x = field
                .elt_from_unit(unit.clone(), *val)
                .map_err(|e| anyhow!("{e}"))?;
            c.eval_base(&x).map_err(|e| anyhow!("{e}"))?
        }
        (QuasiCharacter::PAdic(c), ElementJson::PadicExt { val, a, b }) => {
            let PAdicDomain::Ext(ext) = &c.domain else {
                bail!("character lives on F^×; provide a padic element");
            };
            if a.len() != ext.base.f || b.len() != ext.base.f {
                bail!("coordinate vectors must have length {}", ext.base.f);
            }
            let mut x = ext
                .elt_from_pair(a.clone(), b.clone())
                .map_err(|e| anyhow!("{e}"))?;
            if *val != 0 {
                x = ext.mul(
                    &x,
                    &ext.pow(&ext.uniformizer(), *val).map_err(|e| anyhow!("{e}"))?,
                );
            }
            c.eval_ext(&x).map_err(|e| anyhow!("{e}"))?
        }
        _ => bail!("element kind does not match the character's domain"),
    })
}

// ---------------------------------------------------------------------------
// output
// ---------------------------------------------------------------------------

fn emit_json<T: Serialize>(doc: &T) -> Result<()> {
    println!("{}", serde_json::to_string(doc)?);
    Ok(())
}

fn emit_decompose(out: OutFormat, doc: &serde_json::Value) -> Result<()> {
    match out {
        OutFormat::Json => emit_json(doc),
        OutFormat::Text => {
            println!("Sym^{} lift (total dimension {})", doc["n"], doc["total_dim"]);
            if let Some(summands) = doc["summands"].as_array() {
                for (i, s) in summands.iter().enumerate() {
                    println!("  summand {}: {}", i + 1, serde_json::to_string(s)?);
                }
            }
            if !doc["levi"].is_null() {
                println!("Levi form:");
                if let Some(blocks) = doc["levi"]["blocks"].as_array() {
                    for (i, b) in blocks.iter().enumerate() {
                        println!(
                            "  block {} (twist = central character^{}): {}",
                            i + 1,
                            b["central_character_power"],
                            serde_json::to_string(b)?
                        );
                    }
                }
                if !doc["levi"]["gl1"].is_null() {
                    println!("  gl1: {}", serde_json::to_string(&doc["levi"]["gl1"])?);
                }
            }
            Ok(())
        }
        OutFormat::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(["index", "type", "data"])?;
            if let Some(summands) = doc["summands"].as_array() {
                for (i, s) in summands.iter().enumerate() {
                    w.write_record([
                        (i + 1).to_string(),
                        s["type"].as_str().unwrap_or("").to_string(),
                        serde_json::to_string(s)?,
                    ])?;
                }
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn emit_value(out: OutFormat, doc: &serde_json::Value, fields: &[(&str, f64)]) -> Result<()> {
    match out {
        OutFormat::Json => emit_json(doc),
        OutFormat::Text => {
            for (k, v) in fields {
                println!("{k} = {v}");
            }
            Ok(())
        }
        OutFormat::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(fields.iter().map(|(k, _)| *k))?;
            w.write_record(fields.iter().map(|(_, v)| v.to_string()))?;
            w.flush()?;
            Ok(())
        }
    }
}

fn emit_pairing(out: OutFormat, doc: &serde_json::Value, r: &PairingReport) -> Result<()> {
    match out {
        OutFormat::Json => emit_json(doc),
        OutFormat::Text => {
            println!("lhs = {} + {}i", r.lhs_re, r.lhs_im);
            println!("rhs = {} + {}i", r.rhs_re, r.rhs_im);
            println!(
                "abs_err = {}, rel_err = {}, pass = {}, degenerate = {}",
                r.abs_err, r.rel_err, r.pass, r.degenerate_terms
            );
            println!("inputs: {}", r.inputs);
            Ok(())
        }
        OutFormat::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record([
                "lhs_re",
                "lhs_im",
                "rhs_re",
                "rhs_im",
                "abs_err",
                "rel_err",
                "tol",
                "pass",
                "degenerate_terms",
                "inputs",
            ])?;
            w.write_record([
                r.lhs_re.to_string(),
                r.lhs_im.to_string(),
                r.rhs_re.to_string(),
                r.rhs_im.to_string(),
                r.abs_err.to_string(),
                r.rel_err.to_string(),
                r.tol.to_string(),
                r.pass.to_string(),
                r.degenerate_terms.to_string(),
                r.inputs.clone(),
            ])?;
            w.flush()?;
            Ok(())
        }
    }
}

fn emit_suite(out: OutFormat, report: &SuiteReport) -> Result<()> {
    match out {
        OutFormat::Json => emit_json(report),
        OutFormat::Text => {
            println!(
                "suite {} (seed {}): {}",
                report.suite,
                report.seed,
                if report.passed() { "PASS" } else { "FAIL" }
            );
            for c in &report.checks {
                let status = if c.failures == 0 {
                    if c.expected_mismatch {
                        "expected mismatch demonstrated"
                    } else {
                        "ok"
                    }
                } else {
                    "FAILED"
                };
                println!(
                    "  {:<45} samples={:<6} failures={:<4} worst={:<12.3e} [{}]  — {}",
                    c.name, c.samples, c.failures, c.worst_error, status, c.anchor
                );
            }
            Ok(())
        }
        OutFormat::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record([
                "suite",
                "seed",
                "name",
                "anchor",
                "samples",
                "failures",
                "worst_error",
                "expected_mismatch",
                "millis",
            ])?;
            for c in &report.checks {
                w.write_record([
                    report.suite.clone(),
                    report.seed.to_string(),
                    c.name.clone(),
                    c.anchor.clone(),
                    c.samples.to_string(),
                    c.failures.to_string(),
                    c.worst_error.to_string(),
                    c.expected_mismatch.to_string(),
                    c.millis.map(|m| m.to_string()).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}
