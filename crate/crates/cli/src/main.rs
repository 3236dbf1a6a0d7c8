mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sapphire_core::coefficients::{parse_coefficient, CoefficientModule};
use sapphire_core::verify::VerifyOptions;
use sapphire_core::GroupParams;

#[derive(Parser)]
#[command(name = "sapphire", version, about = "Cohomology and cup products of sapphire groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology and homology in degrees 0..3 with generator representatives.
    Compute(GroupArgs),
    /// Cup products of cohomology generators over two coefficient modules.
    Products(GroupArgs),
    /// Run the built-in verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// Gluing parameters, e.g. `1,2,-1,-1`.
    #[arg(long, value_name = "R,S,T,U", allow_hyphen_values = true)]
    params: String,
    /// Coefficient module: `Z`, `Zeta:a1,b1,a2`, `Zp:p` or `tensor(c1,c2)`.
    #[arg(long = "coeff", value_name = "EXPR", num_args = 1, action = clap::ArgAction::Append)]
    coeffs: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for the sampled properties.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random samples per sampled property.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Negate one entry of d2 before checking (negative control).
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

struct InputError(String);

fn parse_params(text: &str) -> Result<GroupParams, InputError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(InputError(format!("--params expects four comma-separated integers, got {text:?}")));
    }
    let mut v = [0i64; 4];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| InputError(format!("--params: {p:?} is not an integer")))?;
    }
    GroupParams::new(v[0], v[1], v[2], v[3]).map_err(|e| InputError(e.to_string()))
}

fn parse_coeffs(exprs: &[String], params: &GroupParams) -> Result<Vec<CoefficientModule>, InputError> {
    if exprs.len() > 2 {
        return Err(InputError(format!("at most two --coeff values are accepted, got {}", exprs.len())));
    }
    exprs
        .iter()
        .map(|e| parse_coefficient(e, params).map_err(|err| InputError(format!("--coeff {e:?}: {err}"))))
        .collect()
}

fn run(cli: Cli) -> Result<bool, InputError> {
    match cli.command {
        Command::Compute(args) => {
            let params = parse_params(&args.params)?;
            let mut modules = parse_coeffs(&args.coeffs, &params)?;
            if modules.is_empty() {
                modules.push(CoefficientModule::trivial_z(&params));
            }
            print!("{}", report::compute(&params, &modules, args.format));
            Ok(true)
        }
        Command::Products(args) => {
            let params = parse_params(&args.params)?;
            let modules = parse_coeffs(&args.coeffs, &params)?;
            let (left, right) = match modules.as_slice() {
                [a] => (a.clone(), a.clone()),
                [a, b] => (a.clone(), b.clone()),
                _ => return Err(InputError("products needs one or two --coeff values".into())),
            };
            print!("{}", report::products(&params, &left, &right, args.format));
            Ok(true)
        }
        Command::Verify(args) => {
            let opts = VerifyOptions { seed: args.seed, samples: args.samples, inject_fault: args.inject_fault };
            let (text, ok) = report::verify(&opts, args.format);
            print!("{text}");
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
