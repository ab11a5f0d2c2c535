use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use vtschur::flag_oracle::Guards;
use vtschur::galois::{descent_suite, equivariance_check};
use vtschur::hecke::{hecke_mul, hecke_oracle, quadratic_rs, verify_hecke, HeckeElt};
use vtschur::jparity::{verify_hat_relations, verify_tilde_relations};
use vtschur::report::{Check, Report};
use vtschur::schur::{leading_term_check, oracle_compare, verify_s_relations, SchurElt};
use vtschur::stab::{stab_catalog_suite, stab_suite, stabilization_check, ShiftMode, WeightWindow};
use vtschur::tensor::{
    centralizer_dim, check_specialization, commute_check, coproduct_suite, hecke_operator_checks, product_via_operators,
    surjectivity_rank, Side,
};
use vtschur::uvt::{exponent_identity_check, hopf_checks, t1_specialization_check, verify_star_relations, verify_u_relations};
use vtschur::Error;

const RAISE_VAR: &str = "VTSCHUR_RAISE_GUARDS";
const ACK_VAR: &str = "VTSCHUR_ACK_SLOW";
const ACK_PHRASE: &str = "i-accept-long-runs";

#[derive(Parser)]
#[command(name = "vtschur", version, about = "Exact checks for two-parameter quantum gl_n, q-Schur and Hecke algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    cfg: Config,
}

#[derive(clap::Args, Clone)]
struct Config {
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    #[arg(long, global = true, default_value_t = 2)]
    d: usize,
    /// Cut index for the parity idempotents.
    #[arg(long, global = true, default_value_t = 1)]
    m: usize,
    /// Comma-separated primes (oracle) or shifts (stabilization).
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Half-width of the weight window.
    #[arg(long, global = true, default_value_t = 4)]
    window: i64,
    /// Generic specialization `v0,t0` for rank computations.
    #[arg(long, global = true, default_value = "2,3")]
    spec: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Multiply two elements read from JSON files.
    Mult {
        #[arg(value_enum)]
        algebra: Algebra,
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Compare the Chevalley product formulas against finite-field orbit counts.
    OracleCompare,
    /// Fit shifted products to a single pattern; the catalog when no pair is given.
    StabFit {
        /// JSON file `{"a1": [[..]], "a2": [[..]], "mode": "i" | "two_i" | {"two_i_prime": m}}`.
        #[arg(long)]
        pair: Option<PathBuf>,
    },
    /// Descent to the fixed field, with the Hecke quadratic certificates.
    Descend,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Schur,
    Hecke,
    Duality,
    Uvt,
    Star,
    Stab,
    JparityTilde,
    JparityHat,
    Descend,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algebra {
    Schur,
    Hecke,
}

#[derive(Deserialize)]
struct PairFile {
    a1: vtschur::IntMatrix,
    a2: vtschur::IntMatrix,
    #[serde(default = "default_mode")]
    mode: ShiftMode,
}

fn default_mode() -> ShiftMode {
    ShiftMode::I
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

enum Output {
    Report(Report, Value),
    Element(Value),
}

fn guards() -> Run<Guards> {
    match std::env::var(RAISE_VAR) {
        Err(_) => Ok(Guards::default()),
        Ok(v) if v.is_empty() || v == "0" => Ok(Guards::default()),
        Ok(_) => {
            if std::env::var(ACK_VAR).as_deref() == Ok(ACK_PHRASE) {
                Ok(Guards::raised())
            } else {
                Err(Failure::Usage(format!("{RAISE_VAR} needs {ACK_VAR}={ACK_PHRASE}")))
            }
        }
    }
}

fn check_size(cfg: &Config, g: &Guards) -> Run<()> {
    if cfg.n == 0 || cfg.n > g.max_n {
        return Err(Failure::Usage(format!("--n {} outside 1..={} (see {RAISE_VAR})", cfg.n, g.max_n)));
    }
    if cfg.d == 0 || cfg.d > g.max_d {
        return Err(Failure::Usage(format!("--d {} outside 1..={} (see {RAISE_VAR})", cfg.d, g.max_d)));
    }
    Ok(())
}

fn parse_spec(s: &str) -> Run<(BigRational, BigRational)> {
    let bad = || Failure::Usage(format!("--spec expects v0,t0 with rational entries, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let v0: BigRational = a.trim().parse().map_err(|_| bad())?;
    let t0: BigRational = b.trim().parse().map_err(|_| bad())?;
    check_specialization(&v0, &t0)?;
    Ok((v0, t0))
}

fn primes_or(cfg: &Config, default: &[u64]) -> Vec<u64> {
    cfg.primes.clone().unwrap_or_else(|| default.to_vec())
}

fn shifts(cfg: &Config) -> Vec<i64> {
    primes_or(cfg, &[3, 4, 5]).into_iter().map(|p| p as i64).collect()
}

fn window(cfg: &Config) -> Run<WeightWindow> {
    if cfg.window > 8 {
        return Err(Failure::Usage(format!("--window {} above 8", cfg.window)));
    }
    Ok(WeightWindow::new(cfg.window, 2.min(cfg.window))?)
}

fn combine(suite: &str, cfg: &Config, parts: Vec<Report>) -> Report {
    let mut rep = Report::new(suite).param("n", cfg.n).param("d", cfg.d);
    for p in parts {
        rep.extend(p);
    }
    rep
}

fn dim_check(name: String, got: usize, want: usize) -> Check {
    Check::from_witness(name, (got != want).then(|| format!("got {got}, want {want}")))
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn duality(cfg: &Config) -> Run<Report> {
    let (n, d) = (cfg.n, cfg.d);
    let (v0, t0) = parse_spec(&cfg.spec)?;
    let mut rep = combine("duality", cfg, vec![commute_check(n, d)?]);
    if d >= 2 {
        rep.extend(hecke_operator_checks(n, d)?);
    }
    rep = rep.param("spec", cfg.spec.clone());
    if n >= d {
        let want = binom(n * n + d - 1, d);
        let fact: usize = (1..=d).product();
        rep.push(dim_check("commutant of the Hecke action".into(), centralizer_dim(Side::Hecke, n, d, &v0, &t0)?, want));
        rep.push(dim_check("commutant of the quantum action".into(), centralizer_dim(Side::Quantum, n, d, &v0, &t0)?, fact));
        rep.push(dim_check("image rank of generator words".into(), surjectivity_rank(n, d, &v0, &t0)?, want));
    } else {
        rep.push(Check::skip("double centralizer", "needs n >= d"));
    }
    Ok(rep)
}

fn verify(suite: Suite, cfg: &Config, g: &Guards) -> Run<Report> {
    check_size(cfg, g)?;
    let (n, d, m) = (cfg.n, cfg.d, cfg.m);
    let rep = match suite {
        Suite::Schur => {
            let mut rep = combine("schur", cfg, vec![verify_s_relations(n, d)?]);
            rep.push(leading_term_check(n, d)?);
            rep
        }
        Suite::Hecke => combine("hecke", cfg, vec![verify_hecke(d)?]),
        Suite::Duality => duality(cfg)?,
        Suite::Uvt => {
            let mut parts = vec![verify_u_relations(n, d)?, hopf_checks(n, d)?];
            if n >= 2 {
                parts.push(coproduct_suite(n, d)?);
            }
            combine("uvt", cfg, parts)
        }
        Suite::Star => {
            let mut rep = combine("star", cfg, vec![verify_star_relations(n, d)?, t1_specialization_check(n)?]);
            rep.push(exponent_identity_check(n));
            rep
        }
        Suite::Stab => stab_suite(n, window(cfg)?, &shifts(cfg))?,
        Suite::JparityTilde => combine("jparity-tilde", cfg, vec![verify_tilde_relations(n, d, m)?]).param("m", m),
        Suite::JparityHat => combine("jparity-hat", cfg, vec![verify_hat_relations(n, d, m)?]).param("m", m),
        Suite::Descend => combine("descend", cfg, vec![equivariance_check(n, d)?, descent_suite(n, d)?]),
        Suite::Oracle => oracle(cfg, g)?,
    };
    Ok(rep)
}

fn oracle(cfg: &Config, g: &Guards) -> Run<Report> {
    let primes = primes_or(cfg, &[3, 5, 7]);
    let mut rep = combine("oracle", cfg, vec![oracle_compare(cfg.n, cfg.d, &primes, g)?]);
    if cfg.d >= 2 {
        rep.extend(hecke_oracle(cfg.d, &primes, g)?);
    }
    Ok(rep.param("primes", primes))
}

fn read_json(path: &PathBuf) -> Run<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Core(Error::Schema(format!("{}: {e}", path.display()))))
}

fn mult(algebra: Algebra, lhs: &PathBuf, rhs: &PathBuf) -> Run<Value> {
    let (x, y) = (read_json(lhs)?, read_json(rhs)?);
    let out = match algebra {
        Algebra::Schur => {
            let (x, y) = (SchurElt::from_json(&x)?, SchurElt::from_json(&y)?);
            product_via_operators(&x, &y)?.to_json()?
        }
        Algebra::Hecke => {
            let (x, y) = (HeckeElt::from_json(&x)?, HeckeElt::from_json(&y)?);
            if x.d() != y.d() {
                return Err(Failure::Core(Error::Incompatible(format!("d = {} and d = {}", x.d(), y.d()))));
            }
            hecke_mul(&x, &y)?.to_json()?
        }
    };
    Ok(out)
}

fn stab_fit(pair: Option<&PathBuf>, cfg: &Config) -> Run<Report> {
    let p_list = shifts(cfg);
    match pair {
        None => Ok(stab_catalog_suite(&p_list)),
        Some(path) => {
            let p: PairFile = serde_json::from_value(read_json(path)?)
                .map_err(|e| Failure::Core(Error::Schema(format!("{}: {e}", path.display()))))?;
            Ok(stabilization_check(&p.a1, &p.a2, &p_list, p.mode)?)
        }
    }
}

fn descend(cfg: &Config, g: &Guards) -> Run<(Report, Value)> {
    check_size(cfg, g)?;
    let rep = combine("descend", cfg, vec![equivariance_check(cfg.n, cfg.d)?, descent_suite(cfg.n, cfg.d)?]);
    let mut certs = Vec::new();
    for i in 1..cfg.d {
        let c = quadratic_rs(cfg.d, i)?;
        let rs: Vec<String> = c.rs_coeffs.iter().map(|p| p.to_string()).collect();
        certs.push(json!({
            "generator": i,
            "relation": format!("T{i}^2 + ({})T{i} + ({}) = 0", rs[1], rs[2]),
            "rs_coeffs": rs,
            "product_is_zero": c.product.is_zero(),
        }));
    }
    Ok((rep, json!({ "hecke_certificates": certs })))
}

fn run(cli: &Cli) -> Run<Output> {
    let g = guards()?;
    let cfg = &cli.cfg;
    Ok(match &cli.cmd {
        Cmd::Verify { suite } => Output::Report(verify(*suite, cfg, &g)?, Value::Null),
        Cmd::Mult { algebra, lhs, rhs } => Output::Element(mult(*algebra, lhs, rhs)?),
        Cmd::OracleCompare => {
            check_size(cfg, &g)?;
            Output::Report(oracle(cfg, &g)?, Value::Null)
        }
        Cmd::StabFit { pair } => Output::Report(stab_fit(pair.as_ref(), cfg)?, Value::Null),
        Cmd::Descend => {
            let (rep, extra) = descend(cfg, &g)?;
            Output::Report(rep, extra)
        }
    })
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(1));
    }
    v
}

fn render(out: &Output, format: Format, elapsed: std::time::Duration) -> (String, bool) {
    match out {
        Output::Report(rep, extra) => {
            let ok = rep.all_pass();
            let text = match format {
                Format::Json => {
                    let mut v: Value = serde_json::from_str(&rep.to_json()).expect("report json");
                    if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
                        map.extend(more.clone());
                    }
                    serde_json::to_string_pretty(&v).expect("json")
                }
                Format::Text => {
                    let mut s = format!("{rep}\n");
                    if let Value::Object(more) = extra {
                        for (k, v) in more {
                            s.push_str(&format!("{k}: {}\n", serde_json::to_string_pretty(v).expect("json")));
                        }
                    }
                    s.push_str(&format!("{} in {:.2?}", if ok { "PASS" } else { "FAIL" }, elapsed));
                    s
                }
            };
            (text, ok)
        }
        Output::Element(v) => {
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&with_schema(v.clone())).expect("json"),
                Format::Text => serde_json::to_string(v).expect("json"),
            };
            (text, true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let (text, ok) = render(&out, cli.cfg.format, start.elapsed());
    match &cli.cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
