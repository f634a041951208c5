use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::surgery::Policy;

use super::{
    cmd_cf, cmd_convert, cmd_count, cmd_homology, cmd_invariants, cmd_slope, cmd_verify, CliError,
    CmdOutput, ConvertOptions, EXIT_INVALID, EXIT_OK,
};

/// Contact surgery diagrams to certified contact (±1)-surgeries.
#[derive(Debug, Parser)]
#[command(name = "legsurg", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print tb, rot, writhe and cusp counts of every component.
    Invariants {
        /// Diagram file.
        path: PathBuf,
        /// Machine-readable JSON output.
        #[arg(long)]
        json: bool,
    },
    /// Convert a diagram to contact (±1)-surgeries.
    Convert {
        /// Diagram file.
        path: PathBuf,
        /// all-negative, all-positive or tuple=r1,r2,...
        #[arg(long)]
        policy: Option<Policy>,
        /// Emit every admissible choice of rotation numbers.
        #[arg(long)]
        enumerate: bool,
        /// One JSON result object per line.
        #[arg(long)]
        json: bool,
        /// Write result files into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shorthand for `convert --enumerate`.
    Enumerate {
        /// Diagram file.
        path: PathBuf,
        /// One JSON result object per line.
        #[arg(long)]
        json: bool,
        /// Write result files into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Negative continued fraction of a coefficient.
    Cf {
        /// Coefficient `p/q`, an integer or `inf`.
        #[arg(allow_hyphen_values = true)]
        r: String,
    },
    /// Boundary slope of the (-1)-chain for a coefficient.
    Slope {
        /// Coefficient `p/q`, an integer or `inf`.
        #[arg(allow_hyphen_values = true)]
        r: String,
    },
    /// Number of (±1)-presentations of a contact r-surgery.
    Count {
        /// Coefficient `p/q`, an integer or `inf`.
        #[arg(allow_hyphen_values = true)]
        r: String,
    },
    /// First homology of the surgered manifold.
    Homology {
        /// Diagram file.
        path: PathBuf,
        /// Machine-readable JSON output.
        #[arg(long)]
        json: bool,
    },
    /// Re-derive every certificate clause of a result file.
    Verify {
        /// Result file written by `convert --json` or `--out`.
        path: PathBuf,
        /// Machine-readable JSON output.
        #[arg(long)]
        json: bool,
    },
}

impl Command {
    pub fn execute(self) -> Result<CmdOutput, CliError> {
        match self {
            Command::Invariants { path, json } => cmd_invariants(&path, json),
            Command::Convert {
                path,
                policy,
                enumerate,
                json,
                out,
            } => cmd_convert(
                &path,
                &ConvertOptions {
                    policy,
                    enumerate,
                    json,
                    out,
                },
            ),
            Command::Enumerate { path, json, out } => cmd_convert(
                &path,
                &ConvertOptions {
                    policy: None,
                    enumerate: true,
                    json,
                    out,
                },
            ),
            Command::Cf { r } => cmd_cf(&r),
            Command::Slope { r } => cmd_slope(&r),
            Command::Count { r } => cmd_count(&r),
            Command::Homology { path, json } => cmd_homology(&path, json),
            Command::Verify { path, json } => cmd_verify(&path, json),
        }
    }
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    match cli.command.execute() {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_negative_coefficients_and_policies() {
        let cli = Cli::try_parse_from(["legsurg", "cf", "-7/5"]).unwrap();
        assert!(matches!(cli.command, Command::Cf { ref r } if r == "-7/5"));
        let cli = Cli::try_parse_from(["legsurg", "convert", "d.json", "--policy", "tuple=1,-1"])
            .unwrap();
        match cli.command {
            Command::Convert { policy, .. } => assert_eq!(policy, Some(Policy::Tuple(vec![1, -1]))),
            other => panic!("unexpected {other:?}"),
        }
        assert!(
            Cli::try_parse_from(["legsurg", "convert", "d.json", "--policy", "sideways"]).is_err()
        );
    }
}
