//! `qudit`: build gates and circuits, evolve basis inputs, classify the
//! entanglement of the results, and verify the generator counting formulas.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 on success,
//! 1 on verification failure, 2 on usage or parse errors.

use clap::{Parser, Subcommand, ValueEnum};
use qudit_core::{
    analyze, enumerate_circuit_forms, enumerate_generator_sets, verify_commutativity,
    verify_counts_with, Circuit, DigitString, GateParams, GateSpec, GeneratorSpec, OperatorMatrix,
    QuditState, Tolerance, VerifyFailure, VerifyOptions,
};
use serde::Serialize;
use std::io::{self, Read, Write};
use std::process::ExitCode;

/// Highest radix verified without --max-radix-override.
const VERIFY_RADIX_CAP: usize = 6;

#[derive(Parser)]
#[command(
    name = "qudit",
    version,
    about = "Radix-r qudit entanglement generator toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum GateKind {
    Chrestenson,
    Modadd,
    Cmodadd,
}

#[derive(Subcommand)]
enum Command {
    /// Print a single operator matrix.
    Gate {
        #[arg(value_enum)]
        kind: GateKind,
        #[arg(short, long, value_parser = clap::value_parser!(u8).range(2..=36))]
        radix: u8,
        /// Control value for cmodadd.
        #[arg(long)]
        h: Option<usize>,
        /// Addend for modadd and cmodadd.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Evolve a basis input through a circuit file.
    Run {
        /// Circuit JSON path, or "-" for stdin.
        #[arg(long)]
        circuit: String,
        /// Two-digit basis label, e.g. "00".
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Evolve every basis input of a circuit, in lexicographic order.
    Table {
        #[arg(long)]
        circuit: String,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Run a basis input and report the entanglement analysis as JSON.
    Classify {
        #[arg(long)]
        circuit: String,
        #[arg(long)]
        input: String,
    },
    /// List full entanglement generator specs (or every gate ordering).
    Enumerate {
        #[arg(short, long, value_parser = clap::value_parser!(u8).range(2..=36))]
        radix: u8,
        /// List every circuit form instead of the unordered specs.
        #[arg(long)]
        forms: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check the generator counting formulas and gate commutativity.
    Verify {
        #[arg(short, long, value_parser = clap::value_parser!(u8).range(2..=36))]
        radix: u8,
        /// Brute-force radices above the default cap of 6.
        #[arg(long)]
        max_radix_override: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Gate {
            kind,
            radix,
            h,
            k,
            format,
        } => cmd_gate(kind, radix as usize, h, k, format),
        Command::Run {
            circuit,
            input,
            format,
        } => cmd_run(&circuit, &input, format),
        Command::Table { circuit, format } => cmd_table(&circuit, format),
        Command::Classify { circuit, input } => cmd_classify(&circuit, &input),
        Command::Enumerate {
            radix,
            forms,
            format,
        } => cmd_enumerate(radix as usize, forms, format),
        Command::Verify {
            radix,
            max_radix_override,
        } => cmd_verify(radix as usize, max_radix_override),
    }
}

fn reject_tsv(format: Format, command: &str) -> Result<(), String> {
    if format == Format::Tsv {
        Err(format!(
            "--format tsv is only supported by `table`, not `{command}`"
        ))
    } else {
        Ok(())
    }
}

/// Writes command output to stdout; a closed pipe (e.g. `| head`) counts
/// as success.
fn emit(write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), String> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match write(&mut out).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(format!("writing stdout: {e}")),
    }
}

fn cmd_gate(
    kind: GateKind,
    radix: usize,
    h: Option<usize>,
    k: Option<usize>,
    format: Format,
) -> Result<ExitCode, String> {
    reject_tsv(format, "gate")?;
    let check_range = |name: &str, value: usize| {
        if value >= radix {
            Err(format!(
                "--{name} must be less than --radix (got {value}, radix {radix})"
            ))
        } else {
            Ok(value)
        }
    };
    let matrix = match kind {
        GateKind::Chrestenson => {
            if h.is_some() {
                return Err("--h does not apply to gate kind `chrestenson`".into());
            }
            if k.is_some() {
                return Err("--k does not apply to gate kind `chrestenson`".into());
            }
            OperatorMatrix::chrestenson(radix).map_err(|e| e.to_string())?
        }
        GateKind::Modadd => {
            if h.is_some() {
                return Err("--h does not apply to gate kind `modadd`".into());
            }
            let k = check_range("k", k.ok_or("gate kind `modadd` requires --k")?)?;
            OperatorMatrix::mod_add(radix, k).map_err(|e| e.to_string())?
        }
        GateKind::Cmodadd => {
            let h = check_range("h", h.ok_or("gate kind `cmodadd` requires --h")?)?;
            let k = check_range("k", k.ok_or("gate kind `cmodadd` requires --k")?)?;
            OperatorMatrix::controlled_mod_add(radix, GateParams::new(h, k))
                .map_err(|e| e.to_string())?
        }
    };
    emit(|out| match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&matrix).expect("serializes")
        ),
        _ => write!(out, "{}", matrix.pretty(radix)),
    })?;
    Ok(ExitCode::SUCCESS)
}

fn read_circuit(path: &str) -> Result<Circuit, String> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?
    };
    Circuit::from_json(&text).map_err(|e| e.to_string())
}

fn parse_input(circuit: &Circuit, input: &str) -> Result<QuditState, String> {
    let digits = DigitString::parse(circuit.radix(), input).map_err(|e| e.to_string())?;
    if digits.wires() != circuit.wires() {
        return Err(format!(
            "--input must have exactly {} digits, got {}",
            circuit.wires(),
            digits.wires()
        ));
    }
    QuditState::basis(&digits).map_err(|e| e.to_string())
}

fn cmd_run(circuit_path: &str, input: &str, format: Format) -> Result<ExitCode, String> {
    reject_tsv(format, "run")?;
    let circuit = read_circuit(circuit_path)?;
    let state = parse_input(&circuit, input)?;
    let output = circuit.run(&state).map_err(|e| e.to_string())?;
    emit(|out| match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&output).expect("serializes")
        ),
        _ => writeln!(out, "{output}"),
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TableRow {
    input: String,
    output: QuditState,
}

fn cmd_table(circuit_path: &str, format: Format) -> Result<ExitCode, String> {
    let circuit = read_circuit(circuit_path)?;
    let rows = circuit.table_outputs();
    emit(|out| match format {
        Format::Json => {
            let rows: Vec<TableRow> = rows
                .into_iter()
                .map(|(label, output)| TableRow {
                    input: label.to_string(),
                    output,
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string(&rows).expect("serializes"))
        }
        Format::Tsv => {
            for (label, output) in &rows {
                writeln!(out, "{label}\t{output}")?;
            }
            Ok(())
        }
        Format::Pretty => {
            for (label, output) in &rows {
                writeln!(out, "|{label}>  {output}")?;
            }
            Ok(())
        }
    })?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(circuit_path: &str, input: &str) -> Result<ExitCode, String> {
    let circuit = read_circuit(circuit_path)?;
    let state = parse_input(&circuit, input)?;
    let output = circuit.run(&state).map_err(|e| e.to_string())?;
    let report = analyze(&output, Tolerance::default()).map_err(|e| e.to_string())?;
    emit(|out| {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("serializes")
        )
    })?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(radix: usize, forms: bool, format: Format) -> Result<ExitCode, String> {
    reject_tsv(format, "enumerate")?;
    if forms {
        let circuits = enumerate_circuit_forms(radix).map_err(|e| e.to_string())?;
        emit(|out| match format {
            Format::Json => {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&circuits).expect("serializes")
                )
            }
            _ => {
                for circuit in &circuits {
                    writeln!(out, "{}", describe_gates(circuit))?;
                }
                Ok(())
            }
        })?;
    } else {
        let sets = enumerate_generator_sets(radix).map_err(|e| e.to_string())?;
        emit(|out| match format {
            Format::Json => {
                writeln!(out, "{}", serde_json::to_string(&sets).expect("serializes"))
            }
            _ => {
                for set in &sets {
                    writeln!(out, "{}", describe_pairs(set))?;
                }
                Ok(())
            }
        })?;
    }
    Ok(ExitCode::SUCCESS)
}

fn describe_pairs(set: &GeneratorSpec) -> String {
    set.pairs()
        .iter()
        .map(|p| format!("A({},{})", p.h, p.k))
        .collect::<Vec<_>>()
        .join(" ")
}

fn describe_gates(circuit: &Circuit) -> String {
    circuit
        .gates()
        .iter()
        .map(|g| match *g {
            GateSpec::Chrestenson { wire } => format!("C[{wire}]"),
            GateSpec::ControlledModAdd { h, k } => format!("A({h},{k})"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_verify(radix: usize, max_radix_override: bool) -> Result<ExitCode, String> {
    if radix > VERIFY_RADIX_CAP && !max_radix_override {
        return Err(format!(
            "radix {radix} exceeds the default verification cap of {VERIFY_RADIX_CAP}; \
             pass --max-radix-override to force the brute-force check"
        ));
    }
    let options = VerifyOptions {
        brute_force_limit: if max_radix_override {
            radix
        } else {
            VERIFY_RADIX_CAP
        },
    };
    let mut report =
        verify_counts_with(radix, Tolerance::default(), options).map_err(|e| e.to_string())?;
    if !verify_commutativity(radix).map_err(|e| e.to_string())? {
        let (first, second) = qudit_core::commutativity_witness(radix)
            .map_err(|e| e.to_string())?
            .expect("witness exists when commutativity fails");
        report
            .failures
            .push(VerifyFailure::Noncommutative { first, second });
    }
    let passed = report.passed();
    emit(|out| {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("serializes")
        )
    })?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
