//! The `lspec` command line.
//!
//! Every subcommand reads JSON from `--input` (default stdin) and writes to
//! `--output` (default stdout), so subcommands compose through pipes:
//!
//! ```text
//! lspec braid --word "s1 s2^-1" --strands 3 | lspec charpoly | lspec scan --grid 1024
//! ```
//!
//! Exit codes: 0 success, 1 usage, 2 input/parse, 3 precondition, 4 numeric.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::braid::{gassner, parse_braid, reduced_burau};
use crate::charvariety::{
    gap_certificate, rho_scan, specialize_matrix, spectrum, spread_condition, Character,
    ScanOptions, SpectralObject, SpectrumReport, Tolerances,
};
use crate::error::{Error, ErrorKind};
use crate::fiberpoly::{dilatation, divides_up_to_unit, teichmuller, validate_theta};
use crate::json::{self, Object};
use crate::lpmat::{char_poly, primitivity, uniform_spread_exponent, LaurentMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "lspec", version, about = "Spectral data of Laurent polynomial matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Io {
    /// Input JSON file; `-` or omitted reads stdin.
    #[arg(short, long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output file; omitted writes stdout.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TolArgs {
    /// Root residual tolerance relative to 1 + max|c_i|.
    #[arg(long, default_value_t = 1e-10)]
    root_tol: f64,
    /// Relative agreement required between root and power spectral radii.
    #[arg(long, default_value_t = 1e-6)]
    cross_tol: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Result<Tolerances, Error> {
        for (name, v) in [("--root-tol", self.root_tol), ("--cross-tol", self.cross_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Argument(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Tolerances { root_residual: self.root_tol, cross_check: self.cross_tol })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Perron–Frobenius (primitivity) test of a positive-coefficient matrix.
    PfCheck {
        #[command(flatten)]
        io: Io,
        /// Also find the least power with spread >= 1 in this variable (0-based).
        #[arg(long, value_name = "VAR")]
        spread_var: Option<usize>,
    },
    /// Exact characteristic polynomial det(u I - M).
    Charpoly {
        #[command(flatten)]
        io: Io,
    },
    /// Specialize a matrix or u-polynomial at a character.
    Specialize {
        #[command(flatten)]
        io: Io,
        /// Comma-separated turns, e.g. "1/3,0" or "0.618".
        #[arg(long = "char", value_name = "TURNS")]
        character: String,
    },
    /// Eigenvalues, spectral radius and top gap at a character.
    Spectrum {
        #[command(flatten)]
        io: Io,
        #[arg(long = "char", value_name = "TURNS")]
        character: String,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Spectral radius over the torsion grid k/g; CSV to the output.
    Scan {
        #[command(flatten)]
        io: Io,
        /// Points per dimension.
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Exclusion radius (turns, sup circular distance) of the neighborhood of the trivial character.
        #[arg(long, default_value_t = 0.0)]
        exclude: f64,
        /// Worker threads (default: all cores). Output does not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
        /// Summary JSON file; omitted writes the summary to stderr.
        #[arg(long, value_name = "FILE")]
        summary: Option<PathBuf>,
        /// Write PREFIX.dat and a gnuplot script PREFIX.gp.
        #[arg(long, value_name = "PREFIX")]
        plot: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Contraction constant C with rho(chi(M)) <= C rho(M at trivial character).
    GapCert {
        #[command(flatten)]
        io: Io,
        #[arg(long = "char", value_name = "TURNS")]
        character: String,
        /// Certify M^k instead of M.
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Raise M to its uniform-spread exponent in this variable first (overrides --power).
        #[arg(long, value_name = "VAR")]
        spread_var: Option<usize>,
    },
    /// Reduced Burau (or Gassner) matrix of a braid word.
    Braid {
        /// Whitespace-separated letters s<k> and s<k>^-1, applied left to right.
        #[arg(long)]
        word: String,
        #[arg(long)]
        strands: usize,
        /// Gassner representation of a pure braid instead of Burau.
        #[arg(long)]
        gassner: bool,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Teichmüller polynomial char(P_E) / char(P_V).
    Teich {
        #[arg(long, value_name = "FILE")]
        pe: PathBuf,
        #[arg(long, value_name = "FILE")]
        pv: PathBuf,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Whether A divides T up to a unit, with random torsion corroboration.
    Divides {
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        t: PathBuf,
        /// Seed for the sampled torsion characters.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Largest real root of a u-polynomial at t_j = exp(xi_j).
    Dilatation {
        #[command(flatten)]
        io: Io,
        /// Comma-separated real direction, one entry per variable.
        #[arg(long, value_name = "XI", allow_hyphen_values = true)]
        xi: String,
    },
}

/// Failure of a subcommand, already mapped to an exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Usage => EXIT_USAGE,
            ErrorKind::Parse => EXIT_INPUT,
            ErrorKind::Precondition => EXIT_PRECONDITION,
            ErrorKind::Numeric => EXIT_NUMERIC,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) }
}

/// Standard streams, injectable for tests.
pub struct Streams<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

impl Streams<'_> {
    fn read_input(&mut self, path: Option<&Path>) -> Result<String, Failure> {
        match path {
            Some(p) if p != Path::new("-") => fs::read_to_string(p).map_err(|e| io_failure(p, e)),
            _ => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| io_failure(Path::new("<stdin>"), e))?;
                Ok(s)
            }
        }
    }

    fn write_output(&mut self, path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
        match path {
            Some(p) if p != Path::new("-") => fs::write(p, bytes).map_err(|e| io_failure(p, e)),
            _ => self.stdout.write_all(bytes).map_err(|e| io_failure(Path::new("<stdout>"), e)),
        }
    }

    fn write_json(&mut self, path: Option<&Path>, v: &Value) -> Result<(), Failure> {
        let mut text = serde_json::to_string_pretty(v).expect("JSON values serialize");
        text.push('\n');
        self.write_output(path, text.as_bytes())
    }

    fn read_object(&mut self, path: Option<&Path>) -> Result<Object, Failure> {
        let text = self.read_input(path)?;
        Ok(json::object_from_json(&json::parse_value(&text)?)?)
    }

    fn read_matrix(&mut self, path: Option<&Path>) -> Result<(LaurentMatrix, Vec<String>), Failure> {
        match self.read_object(path)? {
            Object::Matrix { matrix, variables } => Ok((matrix, variables)),
            Object::UPoly { .. } => Err(Error::Input("expected a matrix, got a u-polynomial".into()).into()),
        }
    }
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn spectral_object(obj: Object) -> Result<SpectralObject, Error> {
    match obj {
        Object::Matrix { matrix, .. } => SpectralObject::from_matrix(matrix),
        Object::UPoly { poly, .. } => SpectralObject::from_upoly(poly),
    }
}

fn spectrum_json(r: &SpectrumReport) -> Value {
    json!({
        "character": json::character_to_json(&r.character),
        "eigenvalues": r.eigenvalues.iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
        "eigenvalue_moduli": r.eigenvalue_moduli,
        "rho": r.rho,
        "gamma": r.gamma,
    })
}

fn parse_xi(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Input(format!("invalid real direction entry `{x}`")))
        })
        .collect()
}

fn execute(cmd: Command, s: &mut Streams<'_>) -> Result<(), Failure> {
    match cmd {
        Command::PfCheck { io, spread_var } => {
            let (m, _) = s.read_matrix(io.input.as_deref())?;
            let r = primitivity(&m)?;
            let mut out = json!({
                "primitive": r.primitive,
                "exponent": r.exponent,
                "failure_witness": r.failure_witness.map(|(i, j)| [i, j]),
                "wielandt_bound": crate::lpmat::wielandt_bound(m.dim()),
            });
            if let Some(var) = spread_var {
                out["uniform_spread_exponent"] = json!(uniform_spread_exponent(&m, var)?);
            }
            s.write_json(io.output.as_deref(), &out)
        }
        Command::Charpoly { io } => {
            let (m, names) = s.read_matrix(io.input.as_deref())?;
            let cp = char_poly(&m)?;
            s.write_json(io.output.as_deref(), &json::upoly_to_json(&cp, &names))
        }
        Command::Specialize { io, character } => {
            let chi = Character::parse(&character)?;
            let out = match s.read_object(io.input.as_deref())? {
                Object::Matrix { matrix, .. } => {
                    let cm = specialize_matrix(&matrix, &chi)?;
                    let n = cm.dim();
                    let rows: Vec<Value> = (0..n)
                        .map(|i| Value::Array((0..n).map(|j| complex_json(cm.get(i, j))).collect()))
                        .collect();
                    json!({"character": json::character_to_json(&chi), "dim": n, "entries": rows})
                }
                Object::UPoly { poly, .. } => {
                    let coeffs = poly.specialize(&chi)?;
                    json!({
                        "character": json::character_to_json(&chi),
                        "u_coeffs": coeffs.into_iter().map(complex_json).collect::<Vec<_>>(),
                    })
                }
            };
            s.write_json(io.output.as_deref(), &out)
        }
        Command::Spectrum { io, character, tol } => {
            let tol = tol.tolerances()?;
            let chi = Character::parse(&character)?;
            let obj = spectral_object(s.read_object(io.input.as_deref())?)?;
            let r = spectrum(&obj, &chi, &tol)?;
            s.write_json(io.output.as_deref(), &spectrum_json(&r))
        }
        Command::Scan { io, grid, exclude, jobs, summary, plot, tol } => {
            let opts = ScanOptions { grid, exclusion_radius: exclude, tolerances: tol.tolerances()?, jobs };
            opts.validate()?;
            let obj = spectral_object(s.read_object(io.input.as_deref())?)?;
            let report = rho_scan(&obj, &opts)?;
            let mut csv = Vec::new();
            report.write_csv(&mut csv).expect("writing to memory");
            s.write_output(io.output.as_deref(), &csv)?;
            let summary_json = report.summary_json();
            match summary {
                Some(p) => {
                    let text = serde_json::to_string_pretty(&summary_json).expect("serializable") + "\n";
                    fs::write(&p, text).map_err(|e| io_failure(&p, e))?;
                }
                None => {
                    let _ = writeln!(s.stderr, "{summary_json}");
                }
            }
            if let Some(prefix) = plot {
                report.write_plot(&prefix).map_err(|e| io_failure(&prefix, e))?;
            }
            for f in &report.failed_points {
                let _ = writeln!(s.stderr, "warning: point {} ({}) failed: {}", f.index, f.character, f.error);
            }
            Ok(())
        }
        Command::GapCert { io, character, power, spread_var } => {
            let chi = Character::parse(&character)?;
            let (m, _) = s.read_matrix(io.input.as_deref())?;
            let k = match spread_var {
                Some(var) => uniform_spread_exponent(&m, var)? as u32,
                None => power,
            };
            let mk = m.mat_pow(k)?;
            let c = gap_certificate(&mk, &chi)?;
            let trivial = Character::trivial(mk.num_vars());
            let rho_trivial = specialize_matrix(&mk, &trivial)?.spectral_radius();
            let rho_chi = specialize_matrix(&mk, &chi)?.spectral_radius();
            let out = json!({
                "character": json::character_to_json(&chi),
                "power": k,
                "C": c,
                "rho_trivial": rho_trivial,
                "rho_character": rho_chi,
                "bound": c * rho_trivial,
                "spread_condition": spread_condition(&mk, &chi),
            });
            s.write_json(io.output.as_deref(), &out)
        }
        Command::Braid { word, strands, gassner: use_gassner, output } => {
            let w = parse_braid(&word, strands)?;
            let m = if use_gassner { gassner(&w)? } else { reduced_burau(&w)? };
            s.write_json(output.as_deref(), &json::matrix_to_json(&m, &[]))
        }
        Command::Teich { pe, pv, output } => {
            let (p_e, names) = s.read_matrix(Some(&pe))?;
            let (p_v, _) = s.read_matrix(Some(&pv))?;
            let theta = teichmuller(&p_e, &p_v)?;
            for d in validate_theta(&theta)? {
                if !d.dependent {
                    let name = names.get(d.var).cloned().unwrap_or_else(|| d.var.to_string());
                    let _ = writeln!(s.stderr, "warning: theta is independent of variable {name}");
                }
            }
            s.write_json(output.as_deref(), &json::upoly_to_json(&theta, &names))
        }
        Command::Divides { a, t, seed, output } => {
            let read_upoly = |s: &mut Streams<'_>, p: &Path| -> Result<_, Failure> {
                match s.read_object(Some(p))? {
                    Object::UPoly { poly, variables } => Ok((poly, variables)),
                    Object::Matrix { .. } => Err(Error::Input(format!("{}: expected a u-polynomial", p.display())).into()),
                }
            };
            let (pa, names) = read_upoly(s, &a)?;
            let (pt, _) = read_upoly(s, &t)?;
            let r = divides_up_to_unit(&pa, &pt, seed)?;
            let samples: Vec<Value> = r
                .samples
                .iter()
                .map(|x| {
                    json!({
                        "character": json::character_to_json(&x.character),
                        "worst_residual": x.worst_residual,
                        "passed": x.passed,
                    })
                })
                .collect();
            let out = json!({
                "divides": r.divides,
                "quotient": r.quotient.as_ref().map(|q| json::upoly_to_json(q, &names)),
                "diagnostic": r.diagnostic,
                "seed": seed,
                "corroborated": r.corroborated(),
                "samples": samples,
            });
            s.write_json(output.as_deref(), &out)?;
            if r.divides && !r.corroborated() {
                return Err(Failure {
                    code: EXIT_NUMERIC,
                    message: "exact division holds but a specialization check failed".into(),
                });
            }
            Ok(())
        }
        Command::Dilatation { io, xi } => {
            let xi = parse_xi(&xi)?;
            let poly = match s.read_object(io.input.as_deref())? {
                Object::UPoly { poly, .. } => poly,
                Object::Matrix { matrix, .. } => char_poly(&matrix)?,
            };
            let k = dilatation(&poly, &xi)?;
            s.write_json(io.output.as_deref(), &json!({"xi": xi, "dilatation": k}))
        }
    }
}

/// Runs the CLI on `argv` (including the program name) against the given
/// streams and returns the exit code.
pub fn run_with<I, T>(argv: I, streams: &mut Streams<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            let text = e.render().to_string();
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion => {
                    let _ = write!(streams.stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(streams.stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, streams) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(streams.stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut stdin = stdin.lock();
    let mut stdout = stdout.lock();
    let mut stderr = stderr.lock();
    let code = run_with(
        argv,
        &mut Streams { stdin: &mut stdin, stdout: &mut stdout, stderr: &mut stderr },
    );
    let _ = stdout.flush();
    code
}
