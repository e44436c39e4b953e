//! Command dispatch. [`run`] never touches the process environment, so the
//! binary and the tests share one code path.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use dea_facets_core::oracle::{binomial, brute_force_facets, dual_cone_facets, DEFAULT_SUBSET_CAP};
use dea_facets_core::{
    classify, negative_ideal, validate, BigInt, Dataset, Error, SearchConfig, Violation,
};

use crate::error::InputError;
use crate::report;
use crate::table::{parse_dataset, parse_rational};

/// Largest `m + s` for which `verify` also runs the dual cone route.
pub const VERIFY_DUAL_CONE_DIM: usize = 6;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "dea-facets",
    version,
    about = "Exact facet enumeration for CCR DEA technologies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Efficiency status, extremity and super-efficiency feasibility per DMU.
    Analyze(Common),
    /// Weak and strong defining hyperplanes.
    Facets(Common),
    /// Cross-check the facet search against the independent oracles.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// CSV file with a `dmu` column and `in_*` / `out_*` columns.
    path: PathBuf,
    /// Input perturbation for virtual DMUs (decimal or p/q).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    alpha: String,
    /// Output perturbation for virtual DMUs (decimal or p/q).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    gamma: String,
    /// Also write a JSON report to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// List the candidate sets that produced each facet.
    #[arg(long)]
    witnesses: bool,
}

enum Failure {
    Input(String),
    Inconsistent(String),
    Disagree,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Core(core) => core.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) => Failure::Inconsistent(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Runs the tool with `args` (including the program name) and returns the
/// exit code. Standard output is written once, after the command completes.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut out = String::new();
    let mut warnings = String::new();
    let result = match &cli.command {
        Command::Analyze(c) => analyze(c, &mut out, &mut warnings),
        Command::Facets(c) => facets(c, &mut out, &mut warnings),
        Command::Verify(c) => verify(c, &mut out, &mut warnings),
    };
    let _ = stderr.write_all(warnings.as_bytes());
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Inconsistent(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INCONSISTENT
        }
        Err(Failure::Disagree) => {
            let _ = writeln!(stderr, "error: oracles disagree");
            EXIT_DISAGREE
        }
    }
}

fn config(c: &Common) -> Result<SearchConfig, Failure> {
    let parse = |name: &str, text: &str| {
        parse_rational(text).ok_or_else(|| {
            Failure::Input(format!("{name}: `{text}` is not a decimal or p/q rational"))
        })
    };
    Ok(SearchConfig::new(
        parse("alpha", &c.alpha)?,
        parse("gamma", &c.gamma)?,
    )?)
}

fn load(path: &Path, warnings: &mut String) -> Result<Dataset, Failure> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let d = parse_dataset(&text)?;
    for v in validate(&d) {
        if let Violation::ProportionalPair { first, second } = v {
            warnings.push_str(&format!(
                "warning: DMUs {first} and {second} are proportional\n"
            ));
        }
    }
    Ok(d)
}

fn write_json(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|source| {
        InputError::Write {
            path: path.to_path_buf(),
            source,
        }
        .into()
    })
}

fn analyze(c: &Common, out: &mut String, warnings: &mut String) -> Result<(), Failure> {
    config(c)?;
    let d = load(&c.path, warnings)?;
    let classification = classify(&d)?;
    let w = negative_ideal(&d)?;
    out.push_str(&report::analyze_text(&d, &classification, &w));
    if let Some(path) = &c.json {
        write_json(path, &report::analyze_json(&d, &classification))?;
    }
    Ok(())
}

fn facets(c: &Common, out: &mut String, warnings: &mut String) -> Result<(), Failure> {
    let cfg = config(c)?;
    let d = load(&c.path, warnings)?;
    let facet_report = dea_facets_core::find_facets(&d, &cfg)?;
    out.push_str(&report::facets_text(&d, &facet_report, c.witnesses));
    if let Some(path) = &c.json {
        write_json(path, &report::facets_json(&d, &facet_report, c.witnesses))?;
    }
    Ok(())
}

fn differences(
    out: &mut String,
    name: &str,
    ours: &BTreeSet<String>,
    theirs: &BTreeSet<String>,
) -> bool {
    if ours == theirs {
        return true;
    }
    out.push_str(&format!("{name} disagrees with find_facets\n"));
    for v in ours.difference(theirs) {
        out.push_str(&format!("  only in find_facets: {v}\n"));
    }
    for v in theirs.difference(ours) {
        out.push_str(&format!("  only in {name}: {v}\n"));
    }
    false
}

fn verify(c: &Common, out: &mut String, warnings: &mut String) -> Result<(), Failure> {
    let cfg = config(c)?;
    let d = load(&c.path, warnings)?;
    // The brute-force route carries the scale guard, so it runs first.
    let size = d.m() + d.s() - 1;
    let brute = brute_force_facets(&d, &cfg, DEFAULT_SUBSET_CAP)?;
    let found = dea_facets_core::find_facets(&d, &cfg)?;
    let labelled = |r: &dea_facets_core::FacetReport| -> BTreeSet<String> {
        r.facets
            .iter()
            .map(|f| {
                format!(
                    "{} {}",
                    report::vector(&f.coefficients),
                    report::kind_name(f.kind)
                )
            })
            .collect()
    };
    let ours = labelled(&found);
    out.push_str(&format!("find_facets: {} facets\n", ours.len()));
    out.push_str(&format!(
        "brute force: {} facets from C({}, {size}) = {} subsets\n",
        brute.facets.len(),
        brute.pool.len(),
        binomial(brute.pool.len(), size)
    ));
    let mut agree = differences(out, "brute force", &ours, &labelled(&brute));

    if d.m() + d.s() <= VERIFY_DUAL_CONE_DIM {
        let cone: BTreeSet<String> = dual_cone_facets(&d, &found.classification)?
            .iter()
            .map(|v: &Vec<BigInt>| report::vector(v))
            .collect();
        out.push_str(&format!("dual cone: {} facets\n", cone.len()));
        let unlabelled: BTreeSet<String> = found
            .facets
            .iter()
            .map(|f| report::vector(&f.coefficients))
            .collect();
        agree &= differences(out, "dual cone", &unlabelled, &cone);
    } else {
        out.push_str(&format!(
            "dual cone: skipped (m + s = {} > {VERIFY_DUAL_CONE_DIM})\n",
            d.m() + d.s()
        ));
    }

    if let Some(path) = &c.json {
        write_json(path, &report::facets_json(&d, &found, c.witnesses))?;
    }
    if agree {
        out.push_str(&format!("all oracles agree ({} facets)\n", ours.len()));
        Ok(())
    } else {
        Err(Failure::Disagree)
    }
}
