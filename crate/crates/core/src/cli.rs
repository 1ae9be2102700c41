//! The `atomlen` command line front end.
//!
//! Every subcommand prints a text report (or JSON with `--json`) and returns
//! an exit code: `0` when the computation finished and every predicted check
//! held, `1` when a predicted check failed, `2` on invalid input.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::affine_classical::{
    large_rank_threshold, norm_universality_scan, scan_delta_c, AffineLatticeSpec, AffineType,
    ThresholdReport,
};
use crate::affine_permutations::AffinePermutation;
use crate::cores_abaci::{
    granville_ono_scan, is_ns_core, ns_core_of, phi, refined_go_polynomial, scan_refined_go,
    scan_truncated_weight, LAbacus, MultiPartition, WeightSpec,
};
use crate::finite_weyl::{self, b_bound, saturation_check, FiniteType, Series};
use crate::quadratic_forms::{
    scan_targets, universality_scan, ConstrainedDomain, Form, ScanOptions, UniversalityReport, S15,
    S290,
};
use crate::sumsets::{self, hall_decompose, verify_sumset_equality, Family};
use crate::util::{format_csv, parse_csv};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Overrides the enumeration budgets of `sumset` and `finite`.
pub const BUDGET_ENV: &str = "ATOMLEN_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "atomlen",
    version,
    about = "Entropy, atomic length and related universality checks"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanForm {
    #[value(name = "rho")]
    Rho,
    #[value(name = "Q-delta")]
    QDelta,
    #[value(name = "q-free")]
    QFree,
    #[value(name = "Ps")]
    Ps,
    #[value(name = "trunc")]
    Trunc,
    #[value(name = "refined-go")]
    RefinedGo,
    #[value(name = "refined-go-p")]
    RefinedGoP,
    #[value(name = "go")]
    Go,
    #[value(name = "deltaC")]
    DeltaC,
    #[value(name = "lattice")]
    Lattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Checklist {
    #[value(name = "15")]
    S15,
    #[value(name = "290")]
    S290,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entropy and ρ-atomic length of an affine permutation.
    Entropy {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Universality scan of a form on its domain.
    Scan {
        #[arg(long)]
        form: ScanForm,
        /// Affine type for `lattice`.
        #[arg(long = "type")]
        ty: Option<AffineType>,
        #[arg(long)]
        ell: Option<usize>,
        /// Weight `s` for `Ps`, weakly increasing in `[0, n)`.
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long = "max-k", default_value_t = 100)]
        max_k: i64,
        #[arg(long, default_value_t = 30)]
        radius: u32,
        /// Scan a checklist instead of `⟦0, N⟧` (`q-free` only).
        #[arg(long)]
        checklist: Option<Checklist>,
    },
    /// Hall decomposition `b − a = d` of a zero-sum vector.
    Hall {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Compare an orbit's difference set with its predicted value.
    Sumset {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// The bijection φ and the `(n, s)`-core of a charged multipartition.
    Core {
        #[arg(long)]
        npartition: String,
        #[arg(long, allow_hyphen_values = true)]
        charges: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        render: bool,
    },
    /// Truncated-ρ atomic length on a finite Weyl group.
    Finite {
        #[arg(long = "type")]
        ty: Series,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(
            long,
            conflicts_with = "saturate",
            required_unless_present = "saturate"
        )]
        bound: bool,
        #[arg(long)]
        saturate: bool,
    },
    /// Large-rank threshold for one affine type, or all of them.
    Threshold {
        #[arg(long = "type")]
        ty: Option<AffineType>,
    },
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn done(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            ok: true,
        }
    }
}

/// Parse `argv` (including the program name), run, print to stdout/stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok(o) => {
            let _ = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).unwrap())
            } else {
                write!(out, "{}", o.text)
            };
            if o.ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::SearchFailed(_) => EXIT_FAILED,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn budget(default: u128) -> Result<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{BUDGET_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(default),
    }
}

fn dispatch(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Entropy { n, window } => entropy(n, &window),
        Command::Scan {
            form,
            ty,
            ell,
            s,
            n,
            max_k,
            radius,
            checklist,
        } => {
            if max_k < 0 {
                return Err(Error::Invalid("--max-k must be nonnegative".into()));
            }
            let (report, predicted) =
                scan(form, ty, ell, s.as_deref(), n, max_k, radius, checklist)?;
            let mut json = report.to_json();
            json["predicted_universal"] = json!(predicted);
            Ok(Output {
                text: report.to_text(),
                json,
                ok: !predicted || report.all_witnessed(),
            })
        }
        Command::Hall { modulus, d } => hall(modulus, &d),
        Command::Sumset { family, n, modulus } => sumset(family, n, modulus),
        Command::Core {
            npartition,
            charges,
            n,
            render,
        } => core(&npartition, &charges, n, render),
        Command::Finite {
            ty,
            n,
            ell,
            bound,
            saturate: _,
        } => finite(ty, n, ell, bound),
        Command::Threshold { ty } => threshold(ty),
    }
}

fn entropy(n: usize, window: &str) -> Result<Output> {
    let w = parse_csv(window)?;
    let a = AffinePermutation::new(n, w.clone())?;
    let e = a.entropy();
    let l = a.atomic_length_rho();
    Ok(Output {
        text: format!("{e}\n"),
        json: json!({ "n": n, "window": w, "entropy": e, "atomic_length": l }),
        ok: e == l,
    })
}

#[allow(clippy::too_many_arguments)]
fn scan(
    form: ScanForm,
    ty: Option<AffineType>,
    ell: Option<usize>,
    s: Option<&str>,
    n: usize,
    max_k: i64,
    radius: u32,
    checklist: Option<Checklist>,
) -> Result<(UniversalityReport, bool)> {
    if n == 0 {
        return Err(Error::Invalid("--n must be positive".into()));
    }
    if checklist.is_some() && form != ScanForm::QFree {
        return Err(Error::Invalid("--checklist applies to q-free only".into()));
    }
    let need_ell = || ell.ok_or_else(|| Error::Invalid("--ell is required".into()));
    let opts = ScanOptions::default();
    Ok(match form {
        ScanForm::Rho => (
            universality_scan(
                &Form::p(n),
                &ConstrainedDomain::Windows { n },
                max_k,
                radius,
                &opts,
            ),
            n >= 5,
        ),
        ScanForm::QDelta => (
            universality_scan(
                &Form::half_norm(n),
                &ConstrainedDomain::Delta { n },
                max_k,
                radius,
                &opts,
            ),
            n >= 5,
        ),
        ScanForm::QFree => {
            if n < 2 {
                return Err(Error::Invalid("q-free needs n >= 2".into()));
            }
            let dim = n - 1;
            let form = Form::lower_q(dim);
            let domain = ConstrainedDomain::Free { dim };
            let report = match checklist {
                None => universality_scan(&form, &domain, max_k, radius, &opts),
                Some(c) => {
                    let (name, list): (&str, &[i64]) = match c {
                        Checklist::S15 => ("S15", &S15),
                        Checklist::S290 => ("S290", &S290),
                    };
                    let targets: Vec<Ratio<i64>> =
                        list.iter().map(|&k| Ratio::from_integer(k)).collect();
                    let opts = ScanOptions {
                        checklist: Some(name.into()),
                        ..opts
                    };
                    scan_targets(
                        &form,
                        &domain,
                        &targets,
                        *list.last().unwrap(),
                        radius,
                        &opts,
                    )
                }
            };
            (report, dim >= 4)
        }
        ScanForm::Ps => {
            let spec = match s {
                Some(s) => WeightSpec::new(n, parse_csv(s)?)?,
                None => WeightSpec::truncated(n, need_ell()?)?,
            };
            let form = Form::separable(
                format!("P_s(s={})", format_csv(spec.s())),
                spec.polynomial(),
            );
            (
                universality_scan(&form, &spec.domain(), max_k, radius, &opts),
                false,
            )
        }
        ScanForm::Trunc => {
            let ell = need_ell()?;
            (
                scan_truncated_weight(n, ell, max_k, radius)?,
                ell >= 2 && n >= 5,
            )
        }
        ScanForm::RefinedGo => (scan_refined_go(n, max_k, radius), n >= 6),
        ScanForm::RefinedGoP => (
            universality_scan(
                &Form::separable("P_s", refined_go_polynomial(n)),
                &ConstrainedDomain::Os { n },
                max_k,
                radius,
                &opts,
            ),
            false,
        ),
        ScanForm::Go => (granville_ono_scan(n, max_k, radius), n >= 4),
        ScanForm::DeltaC => (scan_delta_c(n, max_k, radius), n >= 5),
        ScanForm::Lattice => {
            let ty = ty.ok_or_else(|| Error::Invalid("--type is required for lattice".into()))?;
            (
                norm_universality_scan(&AffineLatticeSpec::new(ty, n), max_k, radius),
                n >= 4,
            )
        }
    })
}

fn hall(modulus: u64, d: &str) -> Result<Output> {
    if modulus == 0 {
        return Err(Error::Invalid("--mod must be positive".into()));
    }
    let d = parse_csv(d)?;
    let (a, b) = hall_decompose(modulus, &d)?;
    let fmt = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    Ok(Output::done(
        format!("a = {}\nb = {}\n", fmt(&a), fmt(&b)),
        json!({ "mod": modulus, "d": d, "a": a, "b": b }),
    ))
}

fn sumset(family: Family, n: usize, modulus: Option<u64>) -> Result<Output> {
    if n == 0 {
        return Err(Error::Invalid("--n must be positive".into()));
    }
    let budget = budget(sumsets::DEFAULT_PAIR_BUDGET)?;
    let cert = verify_sumset_equality(family, n, modulus, budget)?;
    let predicted = family == Family::A || cert.modulus == family.default_modulus(n);
    let mut text = format!(
        "family {:?}, n={}, mod {}: {}\n",
        cert.family,
        cert.n,
        cert.modulus,
        if cert.equal { "equal" } else { "not equal" }
    );
    for m in &cert.missing {
        let v: Vec<String> = m.iter().map(u64::to_string).collect();
        text.push_str(&format!("missing {}\n", v.join(",")));
    }
    Ok(Output {
        text,
        json: serde_json::to_value(&cert).expect("serializable"),
        ok: cert.equal || !predicted,
    })
}

fn core(npartition: &str, charges: &str, n: usize, render: bool) -> Result<Output> {
    if n == 0 {
        return Err(Error::Invalid("--n must be positive".into()));
    }
    let lambda: MultiPartition = npartition.parse()?;
    let charges = parse_csv(charges)?;
    if charges.len() != lambda.level() {
        return Err(Error::BadLength {
            expected: lambda.level(),
            found: charges.len(),
        });
    }
    let (quotient, sn) = phi(&lambda, &charges, n);
    let c = ns_core_of(&lambda, &charges, n);
    let is_core = is_ns_core(&lambda, &charges, n);
    let tuple = |v: &[i64]| format!("({})", format_csv(v));
    let mut text = format!(
        "quotient {} multicharge {}\ncore {} charges {}\nmulticharge {}\nis core: {}\n",
        quotient,
        tuple(&sn),
        c.core,
        tuple(&c.charges),
        tuple(&c.core_multicharge),
        is_core
    );
    let mut json = json!({
        "n": n,
        "npartition": lambda.to_string(),
        "charges": charges,
        "quotient": quotient.to_string(),
        "quotient_multicharge": sn,
        "core": c.core.to_string(),
        "core_charges": c.charges,
        "core_multicharge": c.core_multicharge,
        "is_core": is_core,
    });
    if render {
        let input = LAbacus::from_multipartition(&lambda, &charges).render();
        let core = LAbacus::from_multipartition(&c.core, &c.charges).render();
        text.push_str(&format!("\nabacus\n{input}\ncore abacus\n{core}"));
        json["abacus"] = json!(input);
        json["core_abacus"] = json!(core);
    }
    Ok(Output::done(text, json))
}

fn finite(series: Series, n: usize, ell: usize, bound: bool) -> Result<Output> {
    let ty = FiniteType::new(series, n)?;
    if bound {
        let b = b_bound(ty, ell)?;
        return Ok(Output::done(
            format!("{b}\n"),
            json!({ "type": ty.to_string(), "n": n, "ell": ell, "b": b }),
        ));
    }
    let r = saturation_check(ty, ell, budget(finite_weyl::DEFAULT_BUDGET)?)?;
    let mut text = format!(
        "{} ell={}: b={}, image [{}, {}], {}\n",
        r.ty,
        r.ell,
        r.b,
        r.image_min,
        r.image_max,
        if r.is_interval {
            "interval"
        } else {
            "not an interval"
        }
    );
    if !r.missing.is_empty() {
        text.push_str(&format!("missing {}\n", format_csv(&r.missing)));
    }
    text.push_str(&format!(
        "predicted {}\n",
        if r.predicted {
            "interval"
        } else {
            "not an interval"
        }
    ));
    Ok(Output {
        text,
        ok: r.is_interval == r.predicted,
        json: serde_json::to_value(&r).expect("serializable"),
    })
}

fn threshold(ty: Option<AffineType>) -> Result<Output> {
    let types = ty.map_or_else(|| AffineType::ALL.to_vec(), |t| vec![t]);
    let reports: Vec<ThresholdReport> = types.into_iter().map(large_rank_threshold).collect();
    let text = reports
        .iter()
        .map(|r| {
            format!(
                "{}: n0 = {} (checked on [{}, {}])\n",
                r.ty, r.n0, r.check_range.0, r.check_range.1
            )
        })
        .collect();
    let items: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "type": r.ty.to_string(), "n0": r.n0, "check_range": [r.check_range.0, r.check_range.1] }))
        .collect();
    let json = if items.len() == 1 {
        items[0].clone()
    } else {
        Value::Array(items)
    };
    Ok(Output {
        text,
        json,
        ok: reports.iter().all(|r| r.fails_below),
    })
}
