//! Command-line surface for the quantum-symmetry Gröbner engine.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsym_core::algebra::{parse_polynomial, Polynomial, Size};
use qsym_core::groebner::{
    buchberger, check_basis, normal_form, parse_certificate, verify_certificate, write_certificate,
    Basis, CheckConfig, CompletionConfig, CompletionStatus,
};
use qsym_core::params::{parse_identity, verify_parametric_identity};
use qsym_core::relations::{
    lemma_reduction_suite, make_relation, named_set, reduced_generating_set, word_problem, Family,
    NamedSet,
};
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

const EXIT_USAGE: u8 = 2;
const EXIT_MATH: u8 = 3;
const EXIT_CAPPED: u8 = 4;

#[derive(Parser)]
#[command(name = "qsym", about = "Gröbner engine for the ideal of quantum symmetries", version)]
struct Cli {
    /// Number of worker threads for overlap checking (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetName {
    #[value(name = "Fpp", alias = "fpp")]
    Fpp,
    #[value(name = "Fp", alias = "fp")]
    Fp,
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "G", alias = "g")]
    G,
}

impl From<SetName> for NamedSet {
    fn from(s: SetName) -> NamedSet {
        match s {
            SetName::Fpp => NamedSet::Fpp,
            SetName::Fp => NamedSet::Fp,
            SetName::F => NamedSet::F,
            SetName::B => NamedSet::B,
            SetName::G => NamedSet::G,
        }
    }
}

/// A basis source: a named set or a file with one polynomial per line.
#[derive(Clone)]
enum BasisSpec {
    Named(NamedSet),
    File(PathBuf),
}

impl FromStr for BasisSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(set) = s.parse::<NamedSet>() {
            return Ok(BasisSpec::Named(set));
        }
        Ok(BasisSpec::File(PathBuf::from(s)))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the relations of a named set, or one relation family instance
    Gens(GensArgs),
    /// Compute the normal form of a polynomial modulo a basis
    Nf(NfArgs),
    /// Check whether a basis is a Gröbner basis
    CheckGb(CheckGbArgs),
    /// Run Buchberger completion on a generating set
    Buchberger(BuchbergerArgs),
    /// Decide equality of two polynomials modulo the ideal of quantum symmetries
    Wordproblem(WordproblemArgs),
    /// Re-verify a reduction certificate
    VerifyCert(VerifyCertArgs),
    /// Verify an n-parametric identity file
    ParamCheck(ParamCheckArgs),
    /// Run the verification battery at one size
    Suite(SuiteArgs),
}

#[derive(Args)]
struct GensArgs {
    #[arg(long)]
    n: u16,
    #[arg(long, value_enum)]
    set: Option<SetName>,
    #[arg(long)]
    family: Option<String>,
    /// Comma-separated indices for --family
    #[arg(long, value_delimiter = ',')]
    indices: Vec<u16>,
}

#[derive(Args)]
struct NfArgs {
    #[arg(long)]
    n: u16,
    #[arg(long)]
    poly: String,
    /// Named set (Fpp|Fp|F|B|G) or basis file
    #[arg(long, default_value = "G")]
    basis: BasisSpec,
    /// Write a verifiable reduction certificate to this file
    #[arg(long)]
    certificate: Option<PathBuf>,
}

#[derive(Args)]
struct CheckGbArgs {
    #[arg(long)]
    n: u16,
    #[arg(long, default_value = "G")]
    basis: BasisSpec,
    /// Also require concatenation ambiguities to reduce (they always do)
    #[arg(long)]
    strict_concat: bool,
}

#[derive(Args)]
struct BuchbergerArgs {
    #[arg(long)]
    n: u16,
    /// Named set (Fpp|Fp|F|B|G) or basis file
    #[arg(long)]
    input: BasisSpec,
    #[arg(long)]
    max_deg: Option<usize>,
    #[arg(long)]
    max_rounds: Option<usize>,
}

#[derive(Args)]
struct WordproblemArgs {
    #[arg(long)]
    n: u16,
    #[arg(long)]
    lhs: String,
    #[arg(long)]
    rhs: String,
}

#[derive(Args)]
struct VerifyCertArgs {
    #[arg(long)]
    n: u16,
    #[arg(long, default_value = "G")]
    basis: BasisSpec,
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Args)]
struct ParamCheckArgs {
    #[arg(long)]
    identity: PathBuf,
    /// Sample sizes as a range `4..9` or a comma list `4,5,6`
    #[arg(long, default_value = "4..7")]
    samples: String,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    n: u16,
    /// Include the expensive completion cross-check
    #[arg(long)]
    extended: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Math(String),
    Capped(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Math(m) | CliError::Capped(m) => f.write_str(m),
        }
    }
}

fn usage<E: fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn size(n: u16) -> Result<Size, CliError> {
    Size::new(n).map_err(usage)
}

fn load_basis(spec: &BasisSpec, n: Size) -> Result<Basis, CliError> {
    match spec {
        BasisSpec::Named(set) => named_set(*set, n).map_err(usage),
        BasisSpec::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let mut polys = Vec::new();
            for (ln, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let p = parse_polynomial(line, n)
                    .map_err(|e| usage(format!("{}:{}: {e}", path.display(), ln + 1)))?;
                if !p.is_zero() {
                    polys.push(p);
                }
            }
            Ok(Basis::new(n, polys))
        }
    }
}

fn parse_samples(text: &str) -> Result<Vec<u16>, CliError> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let lo: u16 = a.trim().parse().map_err(usage)?;
        let hi: u16 = b.trim().parse().map_err(usage)?;
        if lo > hi {
            return Err(usage("empty sample range"));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|v| v.trim().parse().map_err(usage))
        .collect()
}

fn cmd_gens(args: &GensArgs) -> Result<(), CliError> {
    let n = size(args.n)?;
    match (&args.set, &args.family) {
        (Some(_), Some(_)) | (None, None) => {
            Err(usage("pass exactly one of --set or --family"))
        }
        (Some(set), None) => {
            let basis = named_set((*set).into(), n).map_err(usage)?;
            for p in basis.elements() {
                println!("{p}");
            }
            Ok(())
        }
        (None, Some(name)) => {
            let family: Family = name.parse().map_err(usage)?;
            let rel = make_relation(family, &args.indices, n).map_err(usage)?;
            println!("{rel}");
            Ok(())
        }
    }
}

fn cmd_nf(args: &NfArgs) -> Result<(), CliError> {
    let n = size(args.n)?;
    let basis = load_basis(&args.basis, n)?;
    let poly = parse_polynomial(&args.poly, n).map_err(usage)?;
    let (nf, cert) = normal_form(&poly, &basis, args.certificate.is_some());
    println!("{nf}");
    if let Some(path) = &args.certificate {
        let cert = cert.expect("requested certificate");
        if !verify_certificate(&cert, &basis) {
            return Err(CliError::Math("internal: certificate failed verification".into()));
        }
        std::fs::write(path, write_certificate(&cert))
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_check_gb(args: &CheckGbArgs) -> Result<(), CliError> {
    let n = size(args.n)?;
    let basis = load_basis(&args.basis, n)?;
    let config = CheckConfig {
        strict_concat: args.strict_concat,
        verify_certificates: true,
    };
    let report = check_basis(&basis, &config);
    if report.failures.is_empty() && report.certificate_failures == 0 {
        println!(
            "PASS ({} overlap relations checked, {} certificates verified)",
            report.tasks_checked, report.certificates_verified
        );
        Ok(())
    } else {
        println!("FAIL ({} failing overlap relations)", report.failures.len());
        for task in report.failures.iter().take(20) {
            println!(
                "  witness: elements {} and {} overlap at word {}",
                task.f_index,
                task.g_index,
                Polynomial::monomial(n, task.overlap_word(&basis))
            );
        }
        Err(CliError::Math("not a Gröbner basis".into()))
    }
}

fn cmd_buchberger(args: &BuchbergerArgs) -> Result<(), CliError> {
    let n = size(args.n)?;
    let input = load_basis(&args.input, n)?;
    let config = CompletionConfig {
        max_degree: args.max_deg,
        max_rounds: args.max_rounds,
        ..CompletionConfig::default()
    };
    let (basis, status) = buchberger(&input, &config);
    for p in basis.elements() {
        println!("{p}");
    }
    match status {
        CompletionStatus::Completed => {
            println!("# completed: {} elements", basis.len());
            Ok(())
        }
        CompletionStatus::Capped => {
            println!("# capped: {} elements, completion not reached", basis.len());
            Err(CliError::Capped("completion capped".into()))
        }
    }
}

fn cmd_wordproblem(args: &WordproblemArgs) -> Result<(), CliError> {
    let n = size(args.n)?;
    let lhs = parse_polynomial(&args.lhs, n).map_err(usage)?;
    let rhs = parse_polynomial(&args.rhs, n).map_err(usage)?;
    let result = word_problem(&lhs, &rhs, n).map_err(usage)?;
    println!("{}", if result.equivalent { "EQUIVALENT" } else { "DISTINCT" });
    println!("lhs normal form: {}", result.lhs_nf);
    println!("rhs normal form: {}", result.rhs_nf);
    Ok(())
}

fn cmd_verify_cert(args: &VerifyCertArgs) -> Result<(), CliError> {
    let n = size(args.n)?;
    let basis = load_basis(&args.basis, n)?;
    let text = std::fs::read_to_string(&args.cert)
        .map_err(|e| usage(format!("{}: {e}", args.cert.display())))?;
    let cert = parse_certificate(&text, n).map_err(usage)?;
    if verify_certificate(&cert, &basis) {
        println!("PASS");
        Ok(())
    } else {
        println!("FAIL");
        Err(CliError::Math("certificate does not verify".into()))
    }
}

fn cmd_param_check(args: &ParamCheckArgs) -> Result<(), CliError> {
    let samples = parse_samples(&args.samples)?;
    let text = std::fs::read_to_string(&args.identity)
        .map_err(|e| usage(format!("{}: {e}", args.identity.display())))?;
    let identity = parse_identity(&text).map_err(usage)?;
    let report = verify_parametric_identity(&identity, &samples).map_err(usage)?;
    if report.ok() {
        println!(
            "PASS {} ({} grades compared, {} expansions checked)",
            identity.name, report.grades_compared, report.expansions_compared
        );
        Ok(())
    } else {
        println!("FAIL {}", identity.name);
        for f in &report.failures {
            println!("  {f}");
        }
        Err(CliError::Math("identity does not hold".into()))
    }
}

fn cmd_suite(args: &SuiteArgs) -> Result<(), CliError> {
    let n = size(args.n)?;
    let mut failed = false;
    let mut step = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
        failed |= !ok;
    };

    let g = named_set(NamedSet::G, n).map_err(usage)?;
    let m = i64::from(n.get());
    step(
        "cardinality |G_n| = 4n^3 - 15n^2 + 16n - 2",
        g.len() as i64 == 4 * m.pow(3) - 15 * m.pow(2) + 16 * m - 2,
    );
    let report = check_basis(&g, &CheckConfig::default());
    step(
        "G_n is a Gröbner basis (all overlap relations reduce to zero)",
        report.failures.is_empty() && report.certificate_failures == 0,
    );
    let f = reduced_generating_set(n).map_err(usage)?;
    let rwel23 = make_relation(Family::Rwel, &[2, 3], n).map_err(usage)?;
    step("rwel_23 reduces to zero modulo F_n", normal_form(&rwel23, &f, false).0.is_zero());
    let lemmas = lemma_reduction_suite(n).map_err(usage)?;
    step(
        &format!(
            "overlap lemma battery ({} reductions, {} certificates)",
            lemmas.reductions_checked, lemmas.certificates_verified
        ),
        lemmas.ok(),
    );
    let comm = word_problem(
        &parse_polynomial("u[2,2]*u[3,3]", n).map_err(usage)?,
        &parse_polynomial("u[3,3]*u[2,2]", n).map_err(usage)?,
        n,
    )
    .map_err(usage)?;
    step("u[2,2]u[3,3] and u[3,3]u[2,2] are distinct modulo I_n", !comm.equivalent);
    for build in [
        qsym_core::params::rwel23_combination_identity,
        qsym_core::params::row_column_sum_identity,
    ] {
        let identity = build().map_err(usage)?;
        let report = verify_parametric_identity(&identity, &[4, 5, 6, n.get()]).map_err(usage)?;
        step(&format!("parametric identity {}", identity.name), report.ok());
    }
    if args.extended {
        let fpp = named_set(NamedSet::Fpp, n).map_err(usage)?;
        let (completed, status) = buchberger(&fpp, &CompletionConfig::default());
        let same = status == CompletionStatus::Completed
            && completed.len() == g.len()
            && completed
                .elements()
                .iter()
                .zip(g.elements())
                .all(|(a, b)| a == b);
        step("Buchberger completion of F''_n reproduces G_n", same);
    }
    if failed {
        Err(CliError::Math("suite failed".into()))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = match &cli.command {
        Command::Gens(a) => cmd_gens(a),
        Command::Nf(a) => cmd_nf(a),
        Command::CheckGb(a) => cmd_check_gb(a),
        Command::Buchberger(a) => cmd_buchberger(a),
        Command::Wordproblem(a) => cmd_wordproblem(a),
        Command::VerifyCert(a) => cmd_verify_cert(a),
        Command::ParamCheck(a) => cmd_param_check(a),
        Command::Suite(a) => cmd_suite(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Math(_) => EXIT_MATH,
                CliError::Capped(_) => EXIT_CAPPED,
            })
        }
    }
}
