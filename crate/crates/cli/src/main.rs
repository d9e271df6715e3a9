use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use verify_cli::{parse_exponents, parse_rat_flag, Overrides, Profile, SCENARIOS};
use verify_core::report::Status;

/// Batch verification runner: exact algebraic identity checks and numeric
/// integral checks with machine-readable reports.
#[derive(Parser, Debug)]
#[command(name = "verify", version, after_help = scenario_help())]
struct Args {
    /// Scenario name (see the list below), or "all".
    scenario: Vec<String>,

    /// Space dimension n (scenario-dependent; usually 2 or 4).
    #[arg(long)]
    n: Option<usize>,

    /// Signature plus-count p (with --q overrides the default signature).
    #[arg(long)]
    p: Option<usize>,

    /// Signature minus-count q.
    #[arg(long)]
    q: Option<usize>,

    /// Spectral parameter u as a rational "p/q".
    #[arg(long, value_parser = parse_rat_flag, allow_hyphen_values = true)]
    u: Option<verify_core::Rational>,

    /// Spectral parameter v as a rational "p/q".
    #[arg(long, value_parser = parse_rat_flag, allow_hyphen_values = true)]
    v: Option<verify_core::Rational>,

    /// Conformal dimension Delta as a rational "p/q".
    #[arg(long, value_parser = parse_rat_flag, allow_hyphen_values = true)]
    delta: Option<verify_core::Rational>,

    /// Spin label l as a rational "p/q".
    #[arg(long, value_parser = parse_rat_flag, allow_hyphen_values = true)]
    ell: Option<verify_core::Rational>,

    /// Dotted spin label l-dot as a rational "p/q".
    #[arg(long, value_parser = parse_rat_flag, allow_hyphen_values = true)]
    elldot: Option<verify_core::Rational>,

    /// Integer parameter m (intertwiner gap, spinorial numerator power).
    #[arg(long)]
    m: Option<u32>,

    /// Row index k for the sl(N) intertwiner.
    #[arg(long)]
    k: Option<usize>,

    /// Integer exponents, comma separated ("a,b" or "m1,m2,m3,m4").
    #[arg(long, value_parser = parse_exponents, allow_hyphen_values = true)]
    exponents: Option<Vec<i64>>,

    /// Real exponent alpha (numeric checks).
    #[arg(long)]
    alpha: Option<f64>,

    /// Real exponent beta (numeric checks).
    #[arg(long)]
    beta: Option<f64>,

    /// Real exponent gamma (numeric checks).
    #[arg(long)]
    gamma: Option<f64>,

    /// Spinorial exponent a.
    #[arg(long)]
    a: Option<f64>,

    /// Spinorial exponent b.
    #[arg(long)]
    b: Option<f64>,

    /// Spinorial exponent c.
    #[arg(long)]
    c: Option<f64>,

    /// Representation for the RLL scenario: defining|scalar|diff-y|spin-yang.
    #[arg(long)]
    rep: Option<String>,

    /// Form for the star-triangle scenario:
    /// operator|scalar-integral|spin-integral.
    #[arg(long)]
    form: Option<String>,

    /// Monte-Carlo sample budget.
    #[arg(long)]
    samples: Option<u64>,

    /// Base seed; identical seed and configuration reproduce the report
    /// bodies bit for bit (timings excluded).
    #[arg(long, default_value_t = 12345)]
    seed: u64,

    /// Relative tolerance override for numeric checks.
    #[arg(long)]
    tol: Option<f64>,

    /// Scenario profile for "all": quick|full.
    #[arg(long, default_value = "quick")]
    profile: String,

    /// Concurrent scenario workers.
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Per-scenario wall-clock budget in seconds.
    #[arg(long, default_value_t = 900)]
    budget: u64,

    /// Write the JSON report bundle to this path.
    #[arg(long)]
    report: Option<std::path::PathBuf>,
}

fn scenario_help() -> String {
    let mut s = String::from("Scenarios:\n");
    for sc in SCENARIOS {
        s.push_str(&format!("  {:<20} {}\n", sc.name, sc.about));
    }
    s.push_str("  all                  run the quick or full suite (--profile)\n");
    s
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.scenario.is_empty() {
        eprintln!("error: no scenario given; try `verify all` or `verify --help`");
        return ExitCode::from(2);
    }
    let profile = match args.profile.as_str() {
        "quick" => Profile::Quick,
        "full" => Profile::Full,
        other => {
            eprintln!("error: unknown profile '{other}' (expected quick|full)");
            return ExitCode::from(2);
        }
    };
    let ov = Overrides {
        n: args.n,
        p: args.p,
        q: args.q,
        u: args.u,
        v: args.v,
        delta: args.delta,
        ell: args.ell,
        elldot: args.elldot,
        m: args.m,
        k: args.k,
        exponents: args.exponents,
        alpha: args.alpha,
        beta: args.beta,
        gamma: args.gamma,
        a: args.a,
        b: args.b,
        c: args.c,
        rep: args.rep,
        form: args.form,
        samples: args.samples,
        seed: args.seed,
        tol: args.tol,
        profile,
    };
    let (bundle, exit) = verify_cli::run(&args.scenario, &ov, args.jobs, args.budget);
    for r in &bundle.reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let detail = match &r.residual {
            verify_core::report::Residual::Exact { zero: true, .. } => "residual 0 (exact)".to_string(),
            verify_core::report::Residual::Exact { zero: false, detail } => {
                detail.clone().unwrap_or_default()
            }
            verify_core::report::Residual::Numeric { rel_error, std_error, tolerance } => {
                format!("rel {rel_error:.2e} (std err {std_error:.2e}, tol {tolerance})")
            }
        };
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("{:<20} [{}] {} ({:.2}s) {}", r.name, params.join(" "), status, r.seconds, detail);
    }
    if let Some(path) = &args.report {
        match serde_json::to_string_pretty(&bundle) {
            Ok(json) => {
                if let Err(e) = std::fs::File::create(path).and_then(|mut f| f.write_all(json.as_bytes())) {
                    eprintln!("error: cannot write report: {e}");
                    return ExitCode::from(3);
                }
            }
            Err(e) => {
                eprintln!("error: cannot serialize report: {e}");
                return ExitCode::from(3);
            }
        }
    }
    ExitCode::from(exit as u8)
}
