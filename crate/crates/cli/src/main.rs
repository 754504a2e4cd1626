//! `k3corr`: runs the verification suites, lattice reports and point-count scans.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use k3corr_core::arith::Rational;
use k3corr_core::catalog::{build_catalog, verify_items, verify_lattice, Catalog, Mode, SuiteReport};
use k3corr_core::counting::{trace_identity_scan, ScanReport};
use k3corr_core::report::Verdict;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "k3corr", version, about = "Exact verification workbench for the X_t / Kummer correspondence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
struct Opts {
    /// Parameter: `generic` or an exact rational `n/d`.
    #[arg(long = "t", global = true, default_value = "generic", allow_hyphen_values = true)]
    t: String,
    /// Smallest prime of a count scan.
    #[arg(long, global = true, default_value_t = 3)]
    pmin: u64,
    /// Largest prime of a count scan.
    #[arg(long, global = true, default_value_t = 200)]
    pmax: u64,
    /// Suite item: an exact name, or a substring of several.
    #[arg(long, global = true)]
    item: Option<String>,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads.
    #[arg(long, global = true, env = "K3CORR_JOBS")]
    jobs: Option<usize>,
    /// Treat FLAGGED items as success.
    #[arg(long, global = true)]
    allow_flagged: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the symbolic and lattice suite items.
    Verify,
    /// Run only the lattice items.
    Lattice,
    /// Scan the point-count trace identity over a prime range.
    Count,
    /// Inspect catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// List every entry with its kind.
    List,
    /// Print one entry as a text manifest.
    Show { name: String },
}

/// A usage error: bad flags or a parameter outside a command's contract.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.opts.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(USAGE);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool is set once");
    }
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Usage> {
    let o = &cli.opts;
    let mode = Mode::parse(&o.t)?;
    match &cli.command {
        Command::Verify => {
            let cat = build_catalog(&mode)?;
            let rep = verify_items(&cat, o.item.as_deref())?;
            Ok(suite_output(&rep, o))
        }
        Command::Lattice => {
            let cat = build_catalog(&mode)?;
            let rep = verify_lattice(&cat, o.item.as_deref())?;
            Ok(suite_output(&rep, o))
        }
        Command::Count => {
            let Mode::At(t) = mode else {
                return Err(Usage("count needs a specific rational --t".into()));
            };
            if o.pmin < 3 || o.pmin > o.pmax {
                return Err(Usage(format!("need 3 <= pmin <= pmax, got [{}, {}]", o.pmin, o.pmax)));
            }
            let scan = trace_identity_scan(&t, o.pmin, o.pmax)?;
            Ok(count_output(&t, &scan, o.json))
        }
        Command::Catalog { action } => {
            let cat = build_catalog(&mode)?;
            Ok((catalog_output(&cat, action, o.json)?, 0))
        }
    }
}

fn exit_code(v: Verdict, allow_flagged: bool) -> u8 {
    match v {
        Verdict::Pass => 0,
        Verdict::Flagged if allow_flagged => 0,
        _ => 1,
    }
}

fn suite_output(rep: &SuiteReport, o: &Opts) -> (String, u8) {
    let code = exit_code(rep.verdict, o.allow_flagged);
    if o.json {
        return (to_json(rep), code);
    }
    let mut s = format!("t = {}\n", rep.mode);
    for item in &rep.items {
        let _ = writeln!(s, "{:<24} {}", item.name, item.verdict);
        for r in &item.reports {
            let _ = writeln!(s, "    {}: {}", r.claim, r.verdict);
            let _ = writeln!(s, "        computed: {}", r.computed);
            if !r.is_pass() || r.computed != r.expected {
                let _ = writeln!(s, "        expected: {}", r.expected);
            }
        }
    }
    let _ = writeln!(s, "overall: {}", rep.verdict);
    (s, code)
}

fn count_output(t: &Rational, scan: &ScanReport, json: bool) -> (String, u8) {
    let code = u8::from(!scan.consistent);
    if json {
        return (to_json(scan), code);
    }
    let mut s = format!("t = {t}: residual = N0 - p^2 - chi (ap^2 - p), fitted a p + b with (a, b) = ({}, {})\n", scan.a, scan.b);
    let _ = writeln!(s, "{:>6} {:>10} {:>6} {:>4} {:>9} {:>9}  pass", "p", "N0", "ap", "chi", "residual", "a*p+b");
    for r in &scan.rows {
        let c = &r.count;
        let _ = writeln!(
            s,
            "{:>6} {:>10} {:>6} {:>4} {:>9} {:>9}  {}",
            c.p,
            c.n0,
            c.ap,
            c.chi,
            c.residual,
            r.fitted,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    for (p, why) in &scan.skipped {
        let _ = writeln!(s, "skipped p = {p}: {why}");
    }
    let _ = writeln!(s, "{}", if scan.consistent { "consistent: PASS".to_string() } else { format!("violations at {:?}: FAIL", scan.violations) });
    (s, code)
}

fn catalog_output(cat: &Catalog, action: &CatalogAction, json: bool) -> Result<String, Usage> {
    Ok(match (action, json) {
        (CatalogAction::List, false) => cat.list(),
        (CatalogAction::List, true) => {
            let rows: Vec<_> = cat.entries().iter().map(|(n, e)| json!({ "name": n, "kind": e.kind() })).collect();
            to_json(&rows)
        }
        (CatalogAction::Show { name }, false) => cat.show(name)?,
        (CatalogAction::Show { name }, true) => {
            let e = cat.get(name)?;
            to_json(&json!({ "name": name, "kind": e.kind(), "manifest": e.show(name) }))
        }
    })
}

fn to_json<T: serde::Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}
