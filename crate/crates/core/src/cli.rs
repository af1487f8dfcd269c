//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain error (e.g. not normalized, not
//! unitary, complex coefficients), 2 usage or malformed input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::circuit::{measure, parse_circuit, run_circuit, trace_geometry};
use crate::error::Error;
use crate::formats;
use crate::geometry::{sample_mesh, GridSpec, MeshFormatRegistry};
use crate::mpoly::state_to_poly;
use crate::numerics::{c, norm, Complex, Mat2};
use crate::qstate::{bell_state, check_normalized, BellIndex, QubitState};
use crate::separability::classify;
use crate::teleport::{teleport_general, teleport_poly, Correction, EntangledBasis};

/// Normalization slack accepted for `--gamma` before renormalizing.
pub const GAMMA_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "qpoly",
    version,
    about = "Qubit states as multilinear polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Determinant test and factorization of a two-qubit state file.
    Separable {
        /// State file: {"n": 2, "amplitudes": [[re, im], ...]}
        state: PathBuf,
    },
    /// Write a Bell state as a state file, polynomial file or mesh.
    Bell {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4))]
        index: u64,
        #[arg(long, value_enum)]
        emit: Emit,
        #[arg(long)]
        out: PathBuf,
        /// Mesh format when emitting a mesh.
        #[arg(long, default_value = "obj", value_parser = ["obj", "csv"])]
        format: String,
    },
    /// Teleportation branch table for a single-qubit input.
    #[command(group(ArgGroup::new("resource").required(true).args(["basis", "bell"])))]
    Teleport {
        /// Input amplitudes as "re,im re,im".
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// Resource basis file: {"T": 4×4 array of [re, im]}
        #[arg(long)]
        basis: Option<PathBuf>,
        /// Use the Bell basis as the resource.
        #[arg(long)]
        bell: bool,
        /// Which basis state is shared (1..=4).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=4))]
        resource_index: u64,
    },
    /// Circuit tools.
    Circuit {
        #[command(subcommand)]
        action: CircuitAction,
    },
    /// Sample a real bilinear polynomial on a grid and export the surface.
    Mesh {
        /// Polynomial file: {"nvars": 2, "coeffs": [[re, im], ...]}
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
        min: f64,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        max: f64,
        /// Samples per axis.
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(2..=100_000))]
        n: u64,
        #[arg(long, default_value = "obj", value_parser = ["obj", "csv"])]
        format: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum CircuitAction {
    /// Simulate a circuit file from |0…0⟩.
    Run {
        #[arg(long)]
        file: PathBuf,
        /// Sample this many measurement shots of the final state.
        #[arg(long)]
        shots: Option<NonZeroUsize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write slice_<k>.poly (and slice_<k>.obj for real two-qubit
        /// slices) into this directory.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    State,
    Poly,
    Mesh,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Format(_) | Error::Parse { .. } | Error::InvalidGrid(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

pub fn fmt_complex(z: Complex) -> String {
    format!(
        "{}{}{}i",
        z.re,
        if z.im.is_sign_negative() { "-" } else { "+" },
        z.im.abs()
    )
}

fn fmt_mat(m: &Mat2) -> String {
    let e = m.entries();
    format!(
        "[[{}, {}], [{}, {}]]",
        fmt_complex(e[0][0]),
        fmt_complex(e[0][1]),
        fmt_complex(e[1][0]),
        fmt_complex(e[1][1])
    )
}

fn fmt_qubit(s: &QubitState) -> String {
    let a = s.amplitudes();
    format!("({})|0> + ({})|1>", fmt_complex(a[0]), fmt_complex(a[1]))
}

/// Parses `"re,im re,im"`.
pub fn parse_gamma(text: &str) -> Option<[Complex; 2]> {
    let parts: Vec<Complex> = text
        .split_whitespace()
        .map(|pair| {
            let (r, i) = pair.split_once(',')?;
            Some(c(r.trim().parse().ok()?, i.trim().parse().ok()?))
        })
        .collect::<Option<_>>()?;
    let gamma: [Complex; 2] = parts.try_into().ok()?;
    gamma
        .iter()
        .all(|z| z.re.is_finite() && z.im.is_finite())
        .then_some(gamma)
}

fn cmd_separable(state: &Path, out: &mut String) -> CliResult<()> {
    let s = formats::parse_state(&read(state)?)?;
    let v = classify(&s)?;
    let _ = writeln!(out, "det A = {}", fmt_complex(v.det));
    let _ = writeln!(out, "|det A| = {}", v.det.norm());
    match &v.factors {
        None => {
            let _ = writeln!(out, "verdict: entangled");
        }
        Some((left, right)) => {
            let _ = writeln!(out, "verdict: separable");
            let _ = writeln!(out, "left factor:  {}", fmt_qubit(left));
            let _ = writeln!(out, "right factor: {}", fmt_qubit(right));
        }
    }
    Ok(())
}

fn cmd_bell(index: u64, emit: Emit, path: &Path, format: &str, out: &mut String) -> CliResult<()> {
    let s = bell_state(BellIndex::new(index as usize)?);
    let bytes = match emit {
        Emit::State => formats::write_state(&s).into_bytes(),
        Emit::Poly => formats::write_poly(&state_to_poly(&s)).into_bytes(),
        Emit::Mesh => {
            let mesh = sample_mesh(&state_to_poly(&s), &GridSpec::default())?;
            MeshFormatRegistry::standard().get(format)?.write(&mesh)
        }
    };
    write_file(path, &bytes)?;
    let _ = writeln!(out, "P_{index} = {}", state_to_poly(&s));
    let _ = writeln!(out, "wrote {}", path.display());
    Ok(())
}

fn cmd_teleport(
    gamma: &str,
    basis: Option<&Path>,
    resource: usize,
    out: &mut String,
) -> CliResult<()> {
    let gamma = parse_gamma(gamma).ok_or_else(|| {
        CliError::Usage(format!("--gamma expects \"re,im re,im\", got '{gamma}'"))
    })?;
    let n = norm(&gamma);
    let deficit = (1.0 - n * n).abs();
    if deficit > GAMMA_TOL {
        return Err(Error::NotNormalized { deficit }.into());
    }
    let gamma = gamma.map(|z| z / n);
    check_normalized(&gamma)?;

    let b = match basis {
        Some(path) => formats::parse_basis(&read(path)?)?,
        None => EntangledBasis::bell(),
    };
    let branches = teleport_general(gamma, &b, resource)?;
    let poly = teleport_poly(gamma, &b, resource)?;

    let _ = writeln!(
        out,
        "input: ({}, {})  resource: V_{resource}{}",
        fmt_complex(gamma[0]),
        fmt_complex(gamma[1]),
        if basis.is_none() { " (Bell)" } else { "" }
    );
    let _ = writeln!(out, "k\tresidual\tprobability\tcorrection");
    let mut agreement = 0.0f64;
    for (br, (alpha, beta)) in branches.iter().zip(poly) {
        let corr = match br.correction {
            Correction::Gate(m) => fmt_mat(&m),
            Correction::ZeroProbability => "singular".to_string(),
            Correction::NotInvertible => "not invertible".to_string(),
        };
        let _ = writeln!(
            out,
            "{}\t({}, {})\t{}\t{}",
            br.outcome,
            fmt_complex(br.residual[0]),
            fmt_complex(br.residual[1]),
            br.probability(),
            corr
        );
        agreement = agreement
            .max((alpha - br.residual[0]).norm())
            .max((beta - br.residual[1]).norm());
    }
    let _ = writeln!(
        out,
        "state/polynomial agreement: max deviation {agreement:e}"
    );
    Ok(())
}

fn cmd_circuit_run(
    file: &Path,
    shots: Option<NonZeroUsize>,
    seed: u64,
    trace: Option<&Path>,
    out: &mut String,
) -> CliResult<()> {
    let circuit = parse_circuit(&read(file)?)?;
    let result = run_circuit(&circuit, &QubitState::zero(circuit.nqubits())?)?;
    let width = circuit.nqubits();
    for (j, z) in result.final_state.amplitudes().iter().enumerate() {
        let _ = writeln!(out, "|{j:0width$b}> {}", fmt_complex(*z));
    }
    if let Some(shots) = shots {
        let rec = measure(&result.final_state, shots, seed);
        let _ = writeln!(out, "counts ({} shots, seed {}):", rec.shots, rec.seed);
        for (bits, n) in &rec.counts {
            let _ = writeln!(out, "{bits}: {n}");
        }
    }
    if let Some(dir) = trace {
        fs::create_dir_all(dir).map_err(|e| CliError::Domain(format!("{}: {e}", dir.display())))?;
        let obj = MeshFormatRegistry::standard().get("obj")?;
        for slice in trace_geometry(&circuit)? {
            let poly_path = dir.join(format!("{}.poly", slice.label));
            write_file(&poly_path, formats::write_poly(&slice.poly).as_bytes())?;
            let _ = writeln!(
                out,
                "{} after {} gate(s): {}",
                slice.label, slice.position, slice.poly
            );
            if let Some(mesh) = &slice.mesh {
                let mesh_path = dir.join(format!("{}.{}", slice.label, obj.extension()));
                write_file(&mesh_path, &obj.write(mesh))?;
            }
        }
    }
    Ok(())
}

fn cmd_mesh(
    poly: &Path,
    grid: (f64, f64, u64),
    format: &str,
    path: &Path,
    out: &mut String,
) -> CliResult<()> {
    let (min, max, n) = grid;
    let grid = GridSpec::new(min, max, n as usize)?;
    let p = formats::parse_poly(&read(poly)?)?;
    let mesh = sample_mesh(&p, &grid)?;
    let bytes = MeshFormatRegistry::standard().get(format)?.write(&mesh);
    write_file(path, &bytes)?;
    let _ = writeln!(
        out,
        "wrote {} ({} vertices, {} triangles)",
        path.display(),
        mesh.vertex_count(),
        mesh.triangle_count()
    );
    Ok(())
}

fn dispatch(cli: Cli, out: &mut String) -> CliResult<()> {
    match cli.command {
        Command::Separable { state } => cmd_separable(&state, out),
        Command::Bell {
            index,
            emit,
            out: path,
            format,
        } => cmd_bell(index, emit, &path, &format, out),
        Command::Teleport {
            gamma,
            basis,
            bell: _,
            resource_index,
        } => cmd_teleport(&gamma, basis.as_deref(), resource_index as usize, out),
        Command::Circuit {
            action:
                CircuitAction::Run {
                    file,
                    shots,
                    seed,
                    trace,
                },
        } => cmd_circuit_run(&file, shots, seed, trace.as_deref(), out),
        Command::Mesh {
            poly,
            min,
            max,
            n,
            format,
            out: path,
        } => cmd_mesh(&poly, (min, max, n), &format, &path, out),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut out = String::new();
    let result = dispatch(cli, &mut out);
    let _ = stdout.write_all(out.as_bytes());
    match result {
        Ok(()) => 0,
        Err(e) => {
            let (CliError::Usage(msg) | CliError::Domain(msg)) = &e;
            let _ = writeln!(stderr, "error: {msg}");
            e.code()
        }
    }
}
