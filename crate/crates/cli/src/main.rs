use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fermison::clifford::{act_on_state, exponential_gate, GeneratorLabel};
use fermison::dense::{jw_creation_matrix, jw_generator_matrix, jw_ladder_matrix};
use fermison::ladder::{annihilate, create, local_ladder, number, verify_car};
use fermison::scalar::format_complex;
use fermison::sq::{exchange, inner_product, signed_swap, swap_defect};
use fermison::verify::{compare_models, DEFAULT_RANDOM_STATES};
use fermison::{CliffordElement, Error, GeneratorSet, IndexLabel, IndexSet, Ladder, SState};

#[derive(Parser)]
#[command(name = "fermison", version, about = "Super-indexed fermionic qubits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the anticommutation relations on every basis ket of m modes.
    CarCheck {
        #[arg(long)]
        m: usize,
    },
    /// Apply one operator to a state file.
    ///
    /// OP is one of create:a, annihilate:a, local-create:a,
    /// local-annihilate:a, number:a, e:a, e':a, swap:a,b, exchange:a,b,
    /// defect:a,b.
    Apply {
        #[arg(long)]
        op: String,
        #[arg(long)]
        state: PathBuf,
    },
    /// Inner product <lhs|rhs> of two state files.
    Inner {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Apply exp(-i_l h tau) for the multivector h in SPEC to a state file.
    Gate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        tau: f64,
        #[arg(long)]
        state: PathBuf,
    },
    /// Run the state models against each other and the dense matrices.
    CompareModels {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RANDOM_STATES)]
        states: usize,
    },
    /// Dump a Jordan-Wigner matrix: e:j, e':j, a:j or adag:j.
    Matrix {
        #[arg(long)]
        op: String,
        #[arg(long)]
        m: usize,
    },
    /// Print a state file in canonical order with exchange signs absorbed.
    Canon {
        #[arg(long)]
        state: PathBuf,
    },
}

enum Failure {
    /// A check ran and failed.
    Verification,
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_state(path: &Path) -> Result<SState, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    SState::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_state(psi: &SState) {
    if psi.is_zero() {
        println!("0");
    } else {
        print!("{psi}");
    }
}

fn label(text: &str) -> Result<IndexLabel, Failure> {
    Ok(IndexLabel::new(text.trim())?)
}

fn label_pair(text: &str) -> Result<(IndexLabel, IndexLabel), Failure> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| Failure::Input(format!("expected two labels `a,b`, found `{text}`")))?;
    Ok((label(a)?, label(b)?))
}

fn apply(op: &str, psi: &SState) -> Result<SState, Failure> {
    let (name, arg) = op
        .split_once(':')
        .ok_or_else(|| Failure::Input(format!("expected `<op>:<label>`, found `{op}`")))?;
    let generator = |primed: bool| -> Result<SState, Failure> {
        let gens = GeneratorSet::doubled(psi.index_set())?;
        let index = label(arg)?;
        psi.index_set().require(&index)?;
        let g = GeneratorLabel { index, primed };
        Ok(act_on_state(&CliffordElement::generator(&gens, &g)?, psi)?)
    };
    Ok(match name {
        "create" => create(&label(arg)?, psi)?,
        "annihilate" => annihilate(&label(arg)?, psi)?,
        "local-create" => local_ladder(&label(arg)?, Ladder::Create, psi)?,
        "local-annihilate" => local_ladder(&label(arg)?, Ladder::Annihilate, psi)?,
        "number" => number(&label(arg)?, psi)?,
        "e" => generator(false)?,
        "e'" => generator(true)?,
        "swap" | "exchange" | "defect" => {
            let (a, b) = label_pair(arg)?;
            match name {
                "swap" => signed_swap(psi, &a, &b)?,
                "exchange" => exchange(psi, &a, &b)?,
                _ => swap_defect(psi, &a, &b)?,
            }
        }
        other => return Err(Failure::Input(format!("unknown operator `{other}`"))),
    })
}

fn matrix(op: &str, m: usize) -> Result<String, Failure> {
    let (name, arg) = op
        .split_once(':')
        .ok_or_else(|| Failure::Input(format!("expected `<op>:<position>`, found `{op}`")))?;
    let j: usize = arg
        .trim()
        .parse()
        .map_err(|_| Failure::Input(format!("position must be a number, found `{arg}`")))?;
    let mat = match name {
        "e" => jw_generator_matrix(j, false, m)?,
        "e'" => jw_generator_matrix(j, true, m)?,
        "a" => jw_ladder_matrix(j, m)?,
        "adag" => jw_creation_matrix(j, m)?,
        other => return Err(Failure::Input(format!("unknown matrix `{other}`"))),
    };
    Ok(mat.to_string())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::CarCheck { m } => {
            let report = verify_car(&IndexSet::numbered(m)?);
            print!("{report}");
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Apply { op, state } => print_state(&apply(&op, &read_state(&state)?)?),
        Command::Inner { lhs, rhs } => {
            let value = inner_product(&read_state(&lhs)?, &read_state(&rhs)?)?;
            println!("{}", format_complex(value));
        }
        Command::Gate { spec, tau, state } => {
            let psi = read_state(&state)?;
            let gens = GeneratorSet::doubled(psi.index_set())?;
            let text = fs::read_to_string(&spec)
                .map_err(|e| Failure::Input(format!("{}: {e}", spec.display())))?;
            let h = CliffordElement::parse(&text, &gens)
                .map_err(|e| Failure::Input(format!("{}: {e}", spec.display())))?;
            print_state(&act_on_state(&exponential_gate(&h, tau)?, &psi)?);
        }
        Command::CompareModels { m, seed, states } => {
            let report = compare_models(m, seed, states)?;
            print!("{report}");
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Matrix { op, m } => print!("{}", matrix(&op, m)?),
        Command::Canon { state } => print_state(&read_state(&state)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
