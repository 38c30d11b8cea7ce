//! Command-line front end for the `polydet` library.
//!
//! Exit codes: `0` success, `1` verification failure, `2` usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use polydet::bench::{run_bench, to_csv, BenchConfig};
use polydet::chiral::{
    axial_pair, axial_phase_law, build_generators, check_invariance, chiral_transform,
    lagrangian_value, verify_field_expansion, Couplings, FieldConfiguration, FieldExpansionReport,
    FieldPolynomial, SingletConvention, LAGRANGIAN_FLAVORS,
};
use polydet::properties::{
    default_evaluator, run_property_suite, threads_from_env, Evaluator, SuiteConfig,
};
use polydet::random::{MatrixKind, Sampler};
use polydet::symbolic::{expand_polydet, render, RenderFormat};
use polydet::{io, polydet_named, Complex, ComplexTuple, Engine, Error};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "polydet",
    version,
    about = "Polydeterminants of complex matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate eps(A_1, .., A_N) for N matrix files.
    Compute {
        files: Vec<PathBuf>,
        #[arg(long)]
        engine: Option<String>,
    },
    /// Print the trace-monomial expansion.
    Expand {
        #[arg(long)]
        n: usize,
        /// One label per slot; defaults to A, B, C, ..
        labels: Vec<String>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run the property suite.
    Verify(VerifyArgs),
    /// Time the engines and print CSV.
    Bench {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "2..6")]
        n: String,
        /// Comma-separated engine names; all engines by default.
        #[arg(long)]
        engine: Option<String>,
        #[arg(long, default_value_t = 10)]
        repetitions: usize,
        #[arg(long, default_value_t = 2)]
        warmup: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetry and anomaly checks on a field configuration.
    Anomaly {
        fields: PathBuf,
        couplings: Option<PathBuf>,
        #[arg(long, default_value_t = 0.3)]
        theta: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value = "2..5")]
    pub n: String,
    #[arg(long)]
    pub json: bool,
}

/// Parses `3`, `2..5`, `2..=5` or `2-5` as an inclusive range.
pub fn parse_range(s: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Parse(format!("bad range `{s}`"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..").or_else(|| s.split_once('-')) {
        (num(a)?, num(b)?)
    } else {
        let v = num(s)?;
        (v, v)
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure(EXIT_USAGE, e.to_string()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    run_command(&cli.command, &default_evaluator, out, err)
}

/// Runs a parsed command; `verify` uses `eval` as the engine under test.
pub fn run_command(
    cmd: &Command,
    eval: &Evaluator,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let result = match cmd {
        Command::Compute { files, engine } => compute(files, engine.as_deref(), out),
        Command::Expand { n, labels, format } => expand(*n, labels, format, out),
        Command::Verify(args) => verify(args, eval, out),
        Command::Bench {
            seed,
            n,
            engine,
            repetitions,
            warmup,
            out: path,
        } => bench(
            *seed,
            n,
            engine.as_deref(),
            *repetitions,
            *warmup,
            path.as_deref(),
            out,
        ),
        Command::Anomaly {
            fields,
            couplings,
            theta,
            seed,
            json,
        } => anomaly(fields, couplings.as_deref(), *theta, *seed, *json, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn compute(files: &[PathBuf], engine: Option<&str>, out: &mut dyn Write) -> Result<i32, Failure> {
    if files.is_empty() {
        return Err(Failure(EXIT_USAGE, "no matrix files given".into()));
    }
    let matrices = files
        .iter()
        .map(|p| {
            io::parse_matrix(&read(p)?)
                .map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", p.display())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let r = polydet_named(&ComplexTuple::new(matrices)?, engine)?;
    let doc = json!({"re": r.value.re, "im": r.value.im, "engine": r.engine.name()});
    write_out(out, &format!("{doc}\n"))?;
    Ok(EXIT_OK)
}

fn expand(n: usize, labels: &[String], format: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let format: RenderFormat = format.parse()?;
    let labels: Vec<String> = if labels.is_empty() {
        (0..n)
            .map(|i| char::from(b'A' + (i % 26) as u8).to_string())
            .collect()
    } else {
        labels.to_vec()
    };
    let e = expand_polydet(n, &labels)?;
    write_out(out, &format!("{}\n", render(&e, format)))?;
    Ok(EXIT_OK)
}

fn verify(args: &VerifyArgs, eval: &Evaluator, out: &mut dyn Write) -> Result<i32, Failure> {
    let (n_min, n_max) = parse_range(&args.n)?;
    let cfg = SuiteConfig {
        seed: args.seed,
        trials: args.trials,
        n_min,
        n_max,
        tolerance: polydet::REL_TOL,
        threads: threads_from_env(),
    };
    let report = run_property_suite(&cfg, eval)?;
    let text = if args.json {
        format!("{}\n", report.to_json())
    } else {
        report.to_text()
    };
    write_out(out, &text)?;
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn bench(
    seed: u64,
    n: &str,
    engines: Option<&str>,
    repetitions: usize,
    warmup: usize,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let (n_min, n_max) = parse_range(n)?;
    let engines = match engines {
        None => Engine::ALL.to_vec(),
        Some(list) => list
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<Vec<Engine>, Error>>()?,
    };
    let csv = to_csv(&run_bench(&BenchConfig {
        seed,
        n_min,
        n_max,
        engines,
        repetitions,
        warmup,
    })?);
    match path {
        Some(p) => {
            fs::write(p, csv).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", p.display())))?
        }
        None => write_out(out, &csv)?,
    }
    Ok(EXIT_OK)
}

const PHASE_TOL: f64 = 1e-9;

fn complex_json(z: Complex) -> serde_json::Value {
    json!([z.re, z.im])
}

fn anomaly(
    fields: &Path,
    couplings: Option<&Path>,
    theta: f64,
    seed: u64,
    as_json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let cfg = FieldConfiguration::from_json(&read(fields)?)?;
    if cfg.multiplets.is_empty() {
        return Err(Failure(
            EXIT_USAGE,
            "configuration has no multiplets".into(),
        ));
    }
    let couplings = match couplings {
        Some(p) => Couplings::from_json(&read(p)?)?,
        None => Couplings::zero(),
    };
    let n = cfg.n;
    let basis = build_generators(n)?;
    let matrices = cfg
        .multiplets
        .iter()
        .map(|m| polydet::chiral::assemble_field_matrix(&basis, &m.s, &m.p))
        .collect::<Result<Vec<_>, _>>()?;
    // slot i takes multiplet floor(i * m / n): (A1, A1, A2) for n = 3 with two multiplets
    let m = matrices.len();
    let tuple = ComplexTuple::new((0..n).map(|i| matrices[i * m / n].clone()).collect())?;

    let mut sampler = Sampler::new(seed);
    let ul = sampler.matrix(n, MatrixKind::SpecialUnitary);
    let ur = sampler.matrix(n, MatrixKind::SpecialUnitary);
    let su = check_invariance(&tuple, &ul, &ur);
    let (al, ar) = axial_pair(n, theta);
    let predicted = axial_phase_law(n, theta, n);
    let axial = check_invariance(&tuple, &al, &ar);
    // the transformed matrices themselves also carry the single-matrix phase
    let single = axial_phase_law(n, theta, 1);
    let single_dev = matrices
        .iter()
        .map(|a| Ok(chiral_transform(a, &al, &ar)?.max_abs_diff(&a.scale(&single))))
        .collect::<Result<Vec<f64>, Error>>()?
        .into_iter()
        .fold(0.0, f64::max);

    let expansion: Option<(FieldExpansionReport, FieldExpansionReport)> = if n == 3 {
        let poly = FieldPolynomial::restored();
        Some((
            verify_field_expansion(&poly, SingletConvention::Standard, seed, 200)?,
            verify_field_expansion(&poly, SingletConvention::Lambda0, seed, 200)?,
        ))
    } else {
        None
    };
    let lagrangian = if n == LAGRANGIAN_FLAVORS && m == 2 {
        Some((
            lagrangian_value(&cfg, &couplings, false)?,
            lagrangian_value(&cfg, &couplings, true)?,
        ))
    } else {
        None
    };

    let mut failed = single_dev > PHASE_TOL;
    let mut ratio_entry = |r: &Result<polydet::chiral::InvarianceReport, Error>,
                           expect: Complex| match r {
        Ok(rep) => {
            let deviation = (rep.ratio - expect).norm();
            failed |= deviation > PHASE_TOL;
            json!({"ratio": complex_json(rep.ratio), "expected": complex_json(expect), "deviation": deviation})
        }
        Err(Error::IndeterminateRatio { modulus }) => {
            json!({"indeterminate": true, "modulus": modulus})
        }
        Err(e) => json!({"error": e.to_string()}),
    };
    let su_entry = ratio_entry(&su, Complex::new(1.0, 0.0));
    let axial_entry = ratio_entry(&axial, predicted);
    if let Err(e) = su.as_ref().and(axial.as_ref()) {
        if !matches!(e, Error::IndeterminateRatio { .. }) {
            return Err(e.clone().into());
        }
    }

    let doc = json!({
        "n": n,
        "theta": theta,
        "su_invariance": su_entry,
        "axial": axial_entry,
        "axial_single_matrix_deviation": single_dev,
        "field_expansion": expansion.map(|(std, l0)| json!({
            "kappa": complex_json(std.kappa),
            "max_residual": std.max_residual,
            "lambda0_kappa": complex_json(l0.kappa),
            "lambda0_max_residual": l0.max_residual,
        })),
        "lagrangian": lagrangian.map(|(plain, shifted)| json!({"unshifted": plain, "shifted": shifted})),
        "passed": !failed,
    });
    let text = if as_json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&doc).expect("plain data serialises")
        )
    } else {
        anomaly_text(&doc)
    };
    write_out(out, &text)?;
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}

fn anomaly_text(doc: &serde_json::Value) -> String {
    let z = |v: &serde_json::Value| {
        format!(
            "{:+.12e}{:+.12e}i",
            v[0].as_f64().unwrap_or(0.0),
            v[1].as_f64().unwrap_or(0.0)
        )
    };
    let ratio_line = |name: &str, v: &serde_json::Value| {
        if v.get("indeterminate").is_some() {
            format!(
                "{name}: indeterminate (|eps| = {:.3e})\n",
                v["modulus"].as_f64().unwrap_or(0.0)
            )
        } else if let Some(e) = v.get("error") {
            format!("{name}: error {e}\n")
        } else {
            format!(
                "{name}: ratio {} expected {} deviation {:.3e}\n",
                z(&v["ratio"]),
                z(&v["expected"]),
                v["deviation"].as_f64().unwrap_or(f64::NAN)
            )
        }
    };
    let mut s = format!("n = {}, theta = {}\n", doc["n"], doc["theta"]);
    s += &ratio_line("su(n) x su(n) invariance", &doc["su_invariance"]);
    s += &ratio_line("axial phase", &doc["axial"]);
    s += &format!(
        "single-matrix axial deviation: {:.3e}\n",
        doc["axial_single_matrix_deviation"].as_f64().unwrap_or(0.0)
    );
    match doc["field_expansion"].as_object() {
        Some(f) => {
            s += &format!(
                "field expansion: kappa {} max residual {:.3e}\n",
                z(&f["kappa"]),
                f["max_residual"].as_f64().unwrap_or(f64::NAN)
            );
            s += &format!(
                "field expansion (singlet 2t^0): kappa {} max residual {:.3e}\n",
                z(&f["lambda0_kappa"]),
                f["lambda0_max_residual"].as_f64().unwrap_or(f64::NAN)
            );
        }
        None => s += "field expansion: n/a (n != 3)\n",
    }
    match doc["lagrangian"].as_object() {
        Some(l) => {
            s += &format!(
                "lagrangian: unshifted {:+.12e} shifted {:+.12e}\n",
                l["unshifted"].as_f64().unwrap_or(f64::NAN),
                l["shifted"].as_f64().unwrap_or(f64::NAN)
            );
        }
        None => s += "lagrangian: n/a (needs n = 3 and two multiplets)\n",
    }
    s += if doc["passed"].as_bool() == Some(true) {
        "phases: PASS\n"
    } else {
        "phases: FAIL\n"
    };
    s
}
