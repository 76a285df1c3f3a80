use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eulerian_core::checks::{
    check_bijections, check_colored, check_matrices, check_oracle, check_refined_interlacing,
    Report,
};
use eulerian_core::colored::{a_tilde_parts, colored_count, ATildeParts};
use eulerian_core::perms::{alpha_recurrence, Alpha};
use eulerian_core::realroot::is_real_rooted;
use eulerian_core::recurrence::{
    binomial_eulerian, counterexample_check, factorization_checks, refined_polys,
};
use eulerian_core::subdivision::{h_delta_esd, h_sections};
use eulerian_core::{Error, IntPoly, SVec};
use serde::Serialize;
use serde_json::{json, Value};

mod render;

use render::{write_csv, Row};

#[derive(Parser)]
#[command(
    name = "eulerian",
    version,
    about = "Binomial Eulerian polynomials, exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one family member.
    Compute {
        family: Family,
        #[command(flatten)]
        params: Params,
    },
    /// Check a property and exit 1 if it fails.
    Verify {
        what: Verification,
        /// Family for `real-rooted`.
        #[arg(long)]
        family: Option<Family>,
        #[command(flatten)]
        params: Params,
        #[arg(long, env = "EULERIAN_SEED", default_value_t = 0)]
        seed: u64,
        /// Random transforms tried by `matrices`.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Tabulate a family for n = 1..=n-max.
    Table {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Args, Clone)]
struct Params {
    /// Comma-separated positive integers, e.g. 2,3,4.
    #[arg(long, value_delimiter = ',')]
    s: Option<Vec<usize>>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// 0, 1 or 1+z; only for the eulerian family.
    #[arg(long)]
    alpha: Option<Alpha>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest exhaustive enumeration allowed.
    #[arg(long, env = "EULERIAN_ORACLE_CAP", default_value_t = 1_000_000)]
    oracle_cap: u64,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Family {
    BinomialEulerianS,
    Refined,
    Eulerian,
    Derangement,
    BinomialEulerian,
    Colored,
    ColoredParts,
    HEsd,
    HSections,
}

impl Family {
    fn name(self) -> String {
        self.to_possible_value().unwrap().get_name().to_string()
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Verification {
    Interlacing,
    RealRooted,
    Oracle,
    Bijections,
    Matrices,
    Decomposition,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Format {
    Json,
    Csv,
    Text,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("write failed: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(format!("write failed: {e}"))
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

impl Params {
    fn s(&self) -> Outcome<SVec> {
        match &self.s {
            Some(v) => Ok(SVec::new(v.clone())?),
            None => usage("this family needs --s"),
        }
    }

    fn n(&self) -> Outcome<usize> {
        self.n
            .ok_or_else(|| Failure::Usage("this family needs --n".into()))
    }

    fn r(&self) -> Outcome<usize> {
        match self.r {
            Some(0) => usage("--r must be positive"),
            Some(r) => Ok(r),
            None => usage("this family needs --r"),
        }
    }
}

enum Computed {
    Single(IntPoly),
    /// Polynomials with their row labels.
    List(Vec<(String, IntPoly)>),
    Parts(ATildeParts),
}

impl Computed {
    fn polys(&self) -> Vec<(Option<String>, &IntPoly)> {
        match self {
            Computed::Single(p) => vec![(None, p)],
            Computed::List(ps) => ps.iter().map(|(l, p)| (Some(l.clone()), p)).collect(),
            Computed::Parts(parts) => vec![
                (Some("part=plus".into()), &parts.plus),
                (Some("part=minus".into()), &parts.minus),
                (Some("part=total".into()), &parts.total),
            ],
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Computed::Single(p) => json!(p),
            Computed::List(ps) => json!(ps.iter().map(|(_, p)| p).collect::<Vec<_>>()),
            Computed::Parts(parts) => json!(parts),
        }
    }
}

fn alpha_for(family: Family, params: &Params) -> Outcome<Alpha> {
    match (family, params.alpha) {
        (Family::Eulerian, a) => Ok(a.unwrap_or(Alpha::One)),
        (_, Some(_)) => usage("--alpha only applies to the eulerian family"),
        (Family::Derangement, None) => Ok(Alpha::Zero),
        (_, None) => Ok(Alpha::OnePlusZ),
    }
}

fn compute(family: Family, params: &Params) -> Outcome<Computed> {
    let single = |p| Ok(Computed::Single(p));
    match family {
        Family::BinomialEulerianS => single(binomial_eulerian(&params.s()?)),
        Family::Refined => {
            let polys = refined_polys(&params.s()?)?.polys;
            Ok(Computed::List(
                polys
                    .into_iter()
                    .enumerate()
                    .map(|(k, p)| (format!("k={k}"), p))
                    .collect(),
            ))
        }
        Family::Eulerian | Family::Derangement | Family::BinomialEulerian => {
            let alpha = alpha_for(family, params)?;
            single(alpha_recurrence(params.n()? + 1, alpha)?.swap_remove(0))
        }
        Family::Colored | Family::ColoredParts => {
            let (n, r) = (params.n()?, params.r()?);
            if n == 0 {
                return usage("colored families need --n >= 1");
            }
            let parts = a_tilde_parts(n, r, params.oracle_cap)?;
            if family == Family::Colored {
                single(parts.total)
            } else {
                Ok(Computed::Parts(parts))
            }
        }
        Family::HEsd => single(h_delta_esd(params.n()?, params.r()?, params.oracle_cap)?),
        Family::HSections => {
            let secs = h_sections(params.n()?, params.r()?)?;
            let top = secs.len() - 1;
            Ok(Computed::List(
                secs.into_iter()
                    .enumerate()
                    .map(|(i, p)| (format!("j={}", top - i), p))
                    .collect(),
            ))
        }
    }
}

fn uses_s(family: Family) -> bool {
    matches!(family, Family::BinomialEulerianS | Family::Refined)
}

fn uses_r(family: Family) -> bool {
    matches!(
        family,
        Family::Colored | Family::ColoredParts | Family::HEsd | Family::HSections
    )
}

/// `key=value` pairs joined by `;`, e.g. `n=3;r=2`.
fn param_string(family: Family, params: &Params, n: Option<usize>) -> String {
    let mut parts = Vec::new();
    if let (true, Some(s)) = (uses_s(family), &params.s) {
        let s: Vec<String> = s.iter().map(usize::to_string).collect();
        parts.push(format!("s={}", s.join(",")));
    }
    if let Some(n) = n {
        parts.push(format!("n={n}"));
    }
    if let (true, Some(r)) = (uses_r(family), params.r) {
        parts.push(format!("r={r}"));
    }
    if let (Family::Eulerian, Some(a)) = (family, params.alpha) {
        parts.push(format!("alpha={a}"));
    }
    parts.join(";")
}

fn run_compute(family: Family, params: &Params, out: &mut impl Write) -> Outcome<()> {
    let computed = compute(family, params)?;
    let base = param_string(family, params, if uses_s(family) { None } else { params.n });
    match params.format {
        Format::Json => writeln!(out, "{}", computed.to_json())?,
        Format::Text => {
            for (label, p) in computed.polys() {
                match label {
                    Some(l) => writeln!(out, "{l}: {p}")?,
                    None => writeln!(out, "{p}")?,
                }
            }
        }
        Format::Csv => {
            let rows = computed.polys().into_iter().map(|(label, p)| Row {
                family: family.name(),
                params: [Some(base.clone()), label]
                    .into_iter()
                    .flatten()
                    .filter(|x| !x.is_empty())
                    .collect::<Vec<_>>()
                    .join(";"),
                poly: p.clone(),
            });
            write_csv(out, rows)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    r: Option<usize>,
    coeffs: Vec<String>,
}

fn run_table(family: Family, n_max: usize, params: &Params, out: &mut impl Write) -> Outcome<()> {
    let mut rows = Vec::new();
    match family {
        Family::BinomialEulerianS => {
            let s = params.s()?;
            if n_max > s.len() {
                return usage(format!(
                    "--n-max {n_max} exceeds the length of --s ({})",
                    s.len()
                ));
            }
            for n in 1..=n_max {
                let prefix = SVec::new(s.entries()[..n].to_vec())?;
                rows.push((n, None, binomial_eulerian(&prefix)));
            }
        }
        Family::Eulerian | Family::Derangement | Family::BinomialEulerian => {
            let alpha = alpha_for(family, params)?;
            let levels =
                (1..=n_max).map(|n| alpha_recurrence(n + 1, alpha).map(|mut v| v.swap_remove(0)));
            for (n, p) in (1..=n_max).zip(levels) {
                rows.push((n, None, p?));
            }
        }
        Family::Colored | Family::HEsd => {
            let r = params.r()?;
            for n in 1..=n_max {
                let p = if family == Family::Colored {
                    a_tilde_parts(n, r, params.oracle_cap)?.total
                } else {
                    h_delta_esd(n, r, params.oracle_cap)?
                };
                rows.push((n, Some(r), p));
            }
        }
        _ => {
            return usage(format!(
                "table supports single-polynomial families, not {}",
                family.name()
            ))
        }
    }

    match params.format {
        Format::Json => {
            let mut p = serde_json::Map::new();
            if family == Family::BinomialEulerianS {
                p.insert("s".into(), json!(params.s()?.entries()));
            }
            if let Some(r) = rows.first().and_then(|row| row.1) {
                p.insert("r".into(), json!(r));
            }
            if family == Family::Eulerian {
                p.insert(
                    "alpha".into(),
                    json!(alpha_for(family, params)?.to_string()),
                );
            }
            let rows: Vec<TableRow> = rows
                .into_iter()
                .map(|(n, r, poly)| TableRow {
                    n,
                    r,
                    coeffs: poly.coeffs().iter().map(ToString::to_string).collect(),
                })
                .collect();
            let doc = json!({"family": family.name(), "params": p, "rows": rows});
            writeln!(out, "{doc}")?;
        }
        Format::Text => {
            for (n, _, p) in &rows {
                writeln!(out, "{}: {p}", param_string(family, params, Some(*n)))?;
            }
        }
        Format::Csv => {
            let rows = rows.into_iter().map(|(n, _, poly)| Row {
                family: family.name(),
                params: param_string(family, params, Some(n)),
                poly,
            });
            write_csv(out, rows)?;
        }
    }
    Ok(())
}

fn guard(what: &str, size: Option<u64>, cap: u64) -> Outcome<()> {
    match size {
        Some(c) if c <= cap => Ok(()),
        _ => usage(format!(
            "{what} needs {} enumerated objects, above the cap of {cap}; raise --oracle-cap or EULERIAN_ORACLE_CAP",
            size.map_or("too many".to_string(), |c| c.to_string())
        )),
    }
}

fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, i| acc.checked_mul(i))
}

fn run_verify(
    what: Verification,
    family: Option<Family>,
    params: &Params,
    seed: u64,
    trials: usize,
    out: &mut impl Write,
) -> Outcome<bool> {
    let cap = params.oracle_cap;
    let mut extra = serde_json::Map::new();
    let reports: Vec<Report> = match what {
        Verification::Interlacing => vec![check_refined_interlacing(&[params.s()?])],
        Verification::Oracle => {
            let s = params.s()?;
            guard("the oracle", s.count(), cap)?;
            vec![check_oracle(&[s], cap)]
        }
        Verification::RealRooted => {
            let Some(family) = family else {
                return usage("verify real-rooted needs --family");
            };
            let computed = compute(family, params)?;
            let mut rep = Report::new(format!("{} real-rooted", family.name()));
            for (label, p) in computed.polys() {
                rep.check(is_real_rooted(p), || {
                    format!("{} {p} is not real-rooted", label.unwrap_or_default())
                });
            }
            vec![rep]
        }
        Verification::Bijections => {
            let n = params.n.unwrap_or(5);
            let r = params.r.unwrap_or(2);
            if r == 0 {
                return usage("--r must be positive");
            }
            guard("the Lehmer-code check", factorial(n), cap)?;
            guard("the colored check", colored_count(n, r), cap)?;
            let mut corpus = vec![SVec::staircase(n)];
            if n > 0 {
                corpus.push(SVec::colored(n, r)?);
            }
            vec![check_bijections(n, n, r, &corpus, cap)]
        }
        Verification::Matrices => {
            let fact = factorization_checks();
            let ce = counterexample_check();
            extra.insert("factorizations".into(), json!(fact));
            extra.insert("counterexamples".into(), json!(ce));
            vec![check_matrices(seed, trials)]
        }
        Verification::Decomposition => {
            let (n, r) = (params.n()?, params.r()?);
            guard("the decomposition routes", colored_count(n, r), cap)?;
            vec![check_colored(n, &[r], n, r)]
        }
    };
    let holds = reports.iter().all(Report::holds);
    let name = what.to_possible_value().unwrap().get_name().to_string();
    match params.format {
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("verify".into(), json!(name));
            doc.insert("holds".into(), json!(holds));
            if what == Verification::Matrices {
                doc.insert("seed".into(), json!(seed));
            }
            doc.insert("reports".into(), json!(reports));
            doc.extend(extra);
            writeln!(out, "{}", Value::Object(doc))?;
        }
        Format::Text => {
            if what == Verification::Matrices {
                let fact = factorization_checks();
                for c in &fact.identities {
                    let ok = c.product_matches && c.preserves_samples;
                    writeln!(
                        out,
                        "{} {} = {}",
                        if ok { "ok  " } else { "FAIL" },
                        c.matrix,
                        c.factors
                    )?;
                }
                for c in &counterexample_check().cases {
                    let status = if c.confirmed() { "ok  " } else { "FAIL" };
                    writeln!(
                        out,
                        "{status} {} maps ({}, {}) to ({}, {}): {}",
                        c.matrix,
                        c.input[0],
                        c.input[1],
                        c.output[0],
                        c.output[1],
                        c.output_verdict.reason
                    )?;
                }
                writeln!(out, "seed {seed}")?;
            }
            for rep in &reports {
                writeln!(out, "{rep}")?;
                for f in &rep.failures {
                    writeln!(out, "  {f}")?;
                }
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["check", "checks", "failures"])?;
            for rep in &reports {
                w.write_record([
                    rep.name.clone(),
                    rep.checks.to_string(),
                    rep.failures.len().to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(holds)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Compute { family, params } => run_compute(*family, params, &mut out).map(|_| true),
        Command::Table {
            family,
            n_max,
            params,
        } => run_table(*family, *n_max, params, &mut out).map(|_| true),
        Command::Verify {
            what,
            family,
            params,
            seed,
            trials,
        } => run_verify(*what, *family, params, *seed, *trials, &mut out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
