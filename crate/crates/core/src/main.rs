use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stacky::cli::{
    cmd_group_info, cmd_motive_bh, cmd_motive_curve, cmd_motive_gerbe, cmd_motive_quotient,
    cmd_verify, parse_orders, Check, CliError, InputDocument, OutputDocument,
};

#[derive(Parser)]
#[command(
    name = "stacky",
    version,
    about = "Exact motivic invariants of finite quotient stacks"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Characteristic of the ground field; overrides the document.
    #[arg(long, global = true)]
    characteristic: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Class data of the document's group.
    Group {
        #[arg(long)]
        input: PathBuf,
        /// Include the character table.
        #[arg(long)]
        chars: bool,
    },
    /// Motive computations.
    #[command(subcommand)]
    Motive(MotiveCommand),
    /// Run verification checks.
    Verify {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = CheckArg::All)]
        check: CheckArg,
        /// Seed of the randomized suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum MotiveCommand {
    /// h_chi of the classifying stack of the group.
    Bh {
        #[arg(long)]
        input: PathBuf,
    },
    /// h_chi of the quotient of the model by the group.
    Quotient {
        #[arg(long)]
        input: PathBuf,
    },
    /// h_chi of a gerbe banded by the group.
    Gerbe {
        #[arg(long)]
        input: PathBuf,
    },
    /// h_chi of an orbifold curve, from flags or from the document.
    Curve {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        genus: Option<u32>,
        /// Comma-separated cone point orders, e.g. 3,3.
        #[arg(long)]
        orders: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    InertiaDim,
    DirectFactor,
    Kunneth,
    RepRing,
    Splitting,
    All,
    Suite,
}

impl From<CheckArg> for Check {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::InertiaDim => Check::InertiaDim,
            CheckArg::DirectFactor => Check::DirectFactor,
            CheckArg::Kunneth => Check::Kunneth,
            CheckArg::RepRing => Check::RepRing,
            CheckArg::Splitting => Check::Splitting,
            CheckArg::All => Check::All,
            CheckArg::Suite => Check::Suite,
        }
    }
}

fn load(path: &PathBuf) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    InputDocument::parse(&text)
}

fn load_opt(path: &Option<PathBuf>) -> Result<InputDocument, CliError> {
    path.as_ref()
        .map_or_else(|| Ok(InputDocument::default()), load)
}

fn run(cli: &Cli) -> Result<OutputDocument, CliError> {
    let char_of = |doc: &InputDocument| cli.characteristic.unwrap_or(doc.characteristic);
    match &cli.command {
        Command::Group { input, chars } => {
            let doc = load(input)?;
            cmd_group_info(&doc, char_of(&doc), *chars)
        }
        Command::Motive(MotiveCommand::Bh { input }) => {
            let doc = load(input)?;
            cmd_motive_bh(&doc, char_of(&doc))
        }
        Command::Motive(MotiveCommand::Quotient { input }) => {
            let doc = load(input)?;
            cmd_motive_quotient(&doc, char_of(&doc))
        }
        Command::Motive(MotiveCommand::Gerbe { input }) => {
            let doc = load(input)?;
            cmd_motive_gerbe(&doc, char_of(&doc))
        }
        Command::Motive(MotiveCommand::Curve {
            input,
            genus,
            orders,
        }) => {
            let doc = load_opt(input)?;
            let from_doc = doc.curve.clone();
            let genus = genus
                .or(from_doc.as_ref().map(|c| c.genus))
                .ok_or_else(|| {
                    CliError::Validation(
                        "curve.genus: missing (pass --genus or a curve document)".into(),
                    )
                })?;
            let orders = match orders {
                Some(s) => parse_orders(s)?,
                None => from_doc.map(|c| c.orders).unwrap_or_default(),
            };
            cmd_motive_curve(genus, &orders)
        }
        Command::Verify { input, check, seed } => {
            let check = Check::from(*check);
            let doc = if check == Check::Suite {
                load_opt(input)?
            } else {
                let path = input.as_ref().ok_or_else(|| {
                    CliError::Validation("--input is required for this check".into())
                })?;
                load(path)?
            };
            cmd_verify(&doc, char_of(&doc), check, *seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => out.to_json(),
                Format::Text => out.to_text(),
            };
            print!("{text}");
            if out.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("stacky: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
