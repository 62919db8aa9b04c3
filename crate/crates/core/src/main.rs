use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sigma_forge::algebra::{CoefficientValuation, LaurentPolynomial};
use sigma_forge::puiseux::{homothety_scan, puiseux_expand};
use sigma_forge::report::{
    emit, parse_poly, run_report, Format, PrimeSelection, PuiseuxView, ReportOptions, RigidityView, SigmaView,
    TropicalView,
};
use sigma_forge::tropical::{corner_locus, sigma_complement};
use sigma_forge::Error;

#[derive(Parser)]
#[command(name = "sigma-forge", version, about = "Sigma invariants and self-similarity checks for Z[Z^s]/(f) ⋊ Z^s")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct Input {
    /// Laurent polynomial, e.g. "y - x - 1" or "x^-1*y + 2"
    poly: Option<String>,
    /// Comma-separated variable names; their number is the rank s
    #[arg(long, default_value = "x,y")]
    vars: String,
    /// Use the zero ideal instead of a polynomial (only `0` is accepted)
    #[arg(long, value_name = "0")]
    ideal: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Complement of the invariant on the character sphere
    Sigma(Input),
    /// Corner locus for a single coefficient valuation
    Tropical {
        #[command(flatten)]
        input: Input,
        /// `zero`, `p=<prime>` (p-adic) or `residue=<prime>`
        #[arg(long, default_value = "zero")]
        valuation: String,
    },
    /// Branch expansions of the curve f = 0 at x = 0
    Puiseux {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Triples (n, c1, c2) for which x^n -> x^c1, y^n -> y^c2 is a ring map
    Rigidity {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// All hypothesis checks and the resulting verdict
    Report {
        #[command(flatten)]
        input: Input,
        /// Also scan homotheties up to this bound
        #[arg(long, num_args = 0..=1, default_missing_value = "3", value_name = "BOUND")]
        rigidity: Option<u32>,
        /// `auto` or a comma-separated list of primes
        #[arg(long, default_value = "auto")]
        primes: String,
    },
}

enum Failure {
    Usage(String),
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ExtensionRequired(_)
            | Error::InsufficientPrecision { .. }
            | Error::FactorizationIncomplete(_)
            | Error::IrreducibilityUndetermined
            | Error::TooLarge { .. }
            | Error::CoefficientTooLarge(_) => Failure::Limit(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl Input {
    fn vars(&self) -> Vec<String> {
        self.vars.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect()
    }

    fn format(&self) -> Format {
        match self.format {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        }
    }

    fn polynomial(&self) -> Result<LaurentPolynomial, Failure> {
        let vars = self.vars();
        if vars.is_empty() {
            return Err(Failure::Usage("no variables given".into()));
        }
        match (&self.ideal, &self.poly) {
            (Some(z), None) if z.trim() == "0" => Ok(LaurentPolynomial::zero(vars.len())),
            (Some(_), None) => Err(Failure::Usage("--ideal only accepts 0".into())),
            (None, Some(text)) => Ok(parse_poly(text, &vars)?),
            (Some(_), Some(_)) => Err(Failure::Usage("give either a polynomial or --ideal 0".into())),
            (None, None) => Err(Failure::Usage("missing polynomial".into())),
        }
    }

    fn text(&self, f: &LaurentPolynomial) -> String {
        let vars = self.vars();
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        f.to_text(&names)
    }
}

fn parse_valuation(s: &str) -> Result<CoefficientValuation, Failure> {
    let prime = |v: &str| v.parse::<u64>().map_err(|_| Failure::Usage(format!("bad prime '{v}'")));
    Ok(match s.split_once('=') {
        None if s == "zero" => CoefficientValuation::Zero,
        Some(("p", v)) => CoefficientValuation::padic(prime(v)?)?,
        Some(("residue", v)) => CoefficientValuation::residue(prime(v)?)?,
        _ => return Err(Failure::Usage(format!("unknown valuation '{s}'"))),
    })
}

fn parse_primes(s: &str) -> Result<PrimeSelection, Failure> {
    if s == "auto" {
        return Ok(PrimeSelection::Auto);
    }
    let primes = s
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("bad prime '{p}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PrimeSelection::List(primes))
}

fn show(text: String) {
    let mut out = std::io::stdout().lock();
    let text = if text.ends_with('\n') { text } else { text + "\n" };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

/// Prints the stage output; returns whether an internal limit was hit.
fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Sigma(input) => {
            let f = input.polynomial()?;
            let report = sigma_complement(&f)?;
            let view = SigmaView { input: input.text(&f), vars: input.vars(), report: &report };
            show(emit(&view, input.format()));
            Ok(false)
        }
        Command::Tropical { input, valuation } => {
            let f = input.polynomial()?;
            let complex = corner_locus(&f, parse_valuation(&valuation)?)?;
            let view = TropicalView { input: input.text(&f), vars: input.vars(), complex: &complex };
            show(emit(&view, input.format()));
            Ok(false)
        }
        Command::Puiseux { input, terms } => {
            let f = input.polynomial()?;
            let branches = puiseux_expand(&f, terms)?;
            let view = PuiseuxView { input: input.text(&f), vars: input.vars(), branches: &branches };
            show(emit(&view, input.format()));
            Ok(false)
        }
        Command::Rigidity { input, bound } => {
            let f = input.polynomial()?;
            let scan = homothety_scan(&f, bound)?;
            let view = RigidityView { input: input.text(&f), vars: input.vars(), bound, scan: &scan };
            show(emit(&view, input.format()));
            Ok(!scan.undetermined.is_empty())
        }
        Command::Report { input, rigidity, primes } => {
            let f = input.polynomial()?;
            let options = ReportOptions { primes: parse_primes(&primes)?, rigidity };
            let report = run_report(&f, &input.vars(), &options);
            show(emit(&report, input.format()));
            Ok(report.has_undetermined())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("limit: {msg}");
            ExitCode::from(2)
        }
    }
}
