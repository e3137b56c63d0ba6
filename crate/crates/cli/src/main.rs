//! `hwx`: exact Hurwitz numbers, symmetric-group character tables, Schur
//! expansions, the cut-and-join operator, and operator-identity checks.
//!
//! Exit codes: 0 success (and exact identity for verify commands), 1 for a
//! verified mismatch, 2 for usage or parse errors, 3 for capacity errors.
//! Identical invocations produce byte-identical output; `--timings` adds a
//! wall-clock field and is therefore opt-in.

mod fixtures;
mod matrices;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hurwitz_core::characters::{character_table_with_cap, DEFAULT_DEGREE_CAP};
use hurwitz_core::hurwitz::{
    hurwitz_character, hurwitz_permutation_oracle, BranchingData, SurfaceBase,
};
use hurwitz_core::matrix::{seeded_ac_pair, ExactMatrix};
use hurwitz_core::symfunc::{
    cut_and_join_apply, cut_and_join_eigenvalue, powersum_monomial, schur_in_powersums,
    PowerSumPoly,
};
use hurwitz_core::weyl::{
    verify_commutator, verify_lemma_l1, verify_mmn_eigen, verify_schur_pairing, verify_star,
    verify_three_point, BSide, CostCaps, VerifyReport,
};
use hurwitz_core::{Error, Partition};

use matrices::parse_matrix;

/// Errors carrying their process exit code.
#[derive(Debug)]
pub struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl ToString) -> Self {
        CliError {
            message: message.to_string(),
            code: 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity(_) => 3,
            _ => 2,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "hwx",
    version,
    about = "Exact Hurwitz numbers, symmetric-group characters and oscillator-operator identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hurwitz numbers of branched coverings.
    Hurwitz {
        #[command(subcommand)]
        cmd: HurwitzCmd,
    },
    /// Symmetric-group character tables.
    Char {
        #[command(subcommand)]
        cmd: CharCmd,
    },
    /// Schur functions in the power-sum basis.
    Schur {
        #[command(subcommand)]
        cmd: SchurCmd,
    },
    /// The cut-and-join operator.
    Cutjoin {
        #[command(subcommand)]
        cmd: CutjoinCmd,
    },
    /// Exact verification of the operator identities.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Golden fixture files.
    Fixtures {
        #[command(subcommand)]
        cmd: FixturesCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Args)]
struct BaseArgs {
    /// Euler characteristic of the base surface (at most 2).
    #[arg(long, allow_hyphen_values = true)]
    euler: Option<i64>,
    /// Handles of the base surface (with --crosscaps).
    #[arg(long)]
    handles: Option<u32>,
    /// Cross-caps of the base surface (with --handles).
    #[arg(long)]
    crosscaps: Option<u32>,
}

impl BaseArgs {
    fn resolve(&self) -> Result<SurfaceBase, CliError> {
        match (self.euler, self.handles, self.crosscaps) {
            (Some(e), None, None) => Ok(SurfaceBase::Euler(e)),
            (None, h, m) if h.is_some() || m.is_some() => Ok(SurfaceBase::HandlesCrosscaps {
                handles: h.unwrap_or(0),
                crosscaps: m.unwrap_or(0),
            }),
            (None, None, None) => Err(CliError::usage(
                "specify the base surface: --euler E or --handles H --crosscaps M",
            )),
            _ => Err(CliError::usage(
                "--euler conflicts with --handles/--crosscaps",
            )),
        }
    }
}

#[derive(Subcommand)]
enum HurwitzCmd {
    /// Character-formula evaluation.
    Char {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        degree: u32,
        /// "|"-separated partition literals, e.g. "[3]|[3]".
        #[arg(long)]
        profiles: Option<String>,
    },
    /// Brute-force permutation-tuple count.
    Brute {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        profiles: Option<String>,
    },
}

#[derive(Subcommand)]
enum CharCmd {
    /// Emit the complete character table of one degree.
    Table {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
        /// Raise the degree cap (default 12) at your own risk.
        #[arg(long)]
        cap: Option<u32>,
    },
}

#[derive(Subcommand)]
enum SchurCmd {
    /// Expand s_lambda in power sums.
    Expand {
        #[arg(long)]
        partition: String,
        /// Raise the weight cap (default 12) at your own risk.
        #[arg(long)]
        cap: Option<u32>,
    },
}

#[derive(Subcommand)]
enum CutjoinCmd {
    /// Apply the operator to a power-sum monomial or a Schur function.
    Apply {
        /// Partition of the power-sum monomial p_Delta.
        #[arg(long, conflicts_with = "schur")]
        monomial: Option<String>,
        /// Partition of the Schur function s_lambda (reports the eigenvalue).
        #[arg(long)]
        schur: Option<String>,
        /// Raise the weight cap (default 12) at your own risk.
        #[arg(long)]
        cap: Option<u32>,
    },
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
    /// Include wall-clock elapsed_ms in the report (breaks byte-for-byte
    /// reproducibility, hence opt-in).
    #[arg(long)]
    timings: bool,
    /// Cap on the matrix size accepted by the operator builders.
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    /// Cap on the operator weight accepted by the builders.
    #[arg(long, default_value_t = 4)]
    max_weight: u32,
}

impl ReportArgs {
    fn caps(&self) -> CostCaps {
        CostCaps {
            max_size: self.max_size,
            max_weight: self.max_weight,
        }
    }
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Commutator of two Hamiltonians on all monomials up to a degree.
    Commute {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        dmax: u32,
        /// Matrix inside the right Hamiltonian.
        #[arg(long, default_value = "seeded")]
        matrix: String,
        /// Matrix inside the left Hamiltonian: identity, a (same as
        /// --matrix), or seeded (independent, expected to fail).
        #[arg(long, default_value = "a")]
        b: String,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Two-profile pairing against the three-point sphere kernel.
    L1 {
        #[arg(long)]
        mu1: String,
        #[arg(long)]
        mu2: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sources for F and C; seeded uses --seed and --seed + 1.
        #[arg(long, default_value = "seeded")]
        matrix_f: String,
        #[arg(long, default_value = "seeded")]
        matrix_c: String,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Schur-Schur pairing orthogonality.
    SchurPair {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "seeded")]
        matrix_c: String,
        #[arg(long, default_value = "seeded")]
        matrix_f: String,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Normalized three-point action of a Hamiltonian on p_nu(ZC).
    ThreePoint {
        #[arg(long)]
        delta: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "seeded")]
        matrix_a: String,
        #[arg(long, default_value = "seeded")]
        matrix_c: String,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Eigenvalue equation on s_lambda(ZC) under AC = C.
    Mmn {
        #[arg(long)]
        delta: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rank of the generated C (defaults to the length of lambda);
        /// ignored with --identity.
        #[arg(long)]
        rank: Option<usize>,
        /// Use A = C = I instead of a seeded AC = C pair.
        #[arg(long)]
        identity: bool,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Multi-leg star identity with per-leg AC = C pairs.
    Star {
        #[arg(long)]
        lambda: String,
        /// "|"-separated leg partitions, e.g. "[2]|[1,1]".
        #[arg(long)]
        mus: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// identity, or seeded AC = C pairs (leg i uses --seed + i).
        #[arg(long, default_value = "identity")]
        matrix: String,
        /// Rank of the generated C matrices (defaults to length of lambda).
        #[arg(long)]
        rank: Option<usize>,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// Write one JSON file per pinned value and report the match summary.
    Emit {
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_partition(s: &str) -> Result<Partition, CliError> {
    s.parse::<Partition>().map_err(CliError::from)
}

fn check_weight_cap(p: &Partition, cap: Option<u32>) -> Result<(), CliError> {
    let cap = cap.unwrap_or(DEFAULT_DEGREE_CAP);
    if p.weight() > cap {
        return Err(CliError::from(Error::Capacity(format!(
            "partition weight {} exceeds cap {cap} (raise with --cap)",
            p.weight()
        ))));
    }
    Ok(())
}

fn parse_profiles(spec: &Option<String>) -> Result<Vec<Partition>, CliError> {
    match spec {
        None => Ok(Vec::new()),
        Some(s) if s.trim().is_empty() => Ok(Vec::new()),
        Some(s) => s.split('|').map(|t| parse_partition(t.trim())).collect(),
    }
}

fn print_json<T: Serialize>(value: &T) {
    let body = serde_json::to_string_pretty(value).expect("serializable");
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{body}");
}

#[derive(Serialize)]
struct HurwitzOutput {
    value: String,
    degree: u32,
    euler: i64,
    profiles: Vec<String>,
}

#[derive(Serialize)]
struct ExpansionTerm {
    monomial: String,
    coeff: String,
}

fn expansion_terms(f: &PowerSumPoly) -> Vec<ExpansionTerm> {
    f.terms()
        .map(|(delta, coeff)| ExpansionTerm {
            monomial: delta.to_string(),
            coeff: coeff.to_string(),
        })
        .collect()
}

#[derive(Serialize)]
struct CutjoinOutput {
    input: String,
    input_kind: String,
    image: Vec<ExpansionTerm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvalue: Option<String>,
}

#[derive(Serialize)]
struct CharTableJson {
    degree: u32,
    classes: Vec<String>,
    rows: Vec<CharTableRow>,
}

#[derive(Serialize)]
struct CharTableRow {
    lambda: String,
    dimension: String,
    values: Vec<i64>,
}

#[derive(Serialize)]
struct CliReport {
    #[serde(flatten)]
    report: VerifyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

fn finish_report(
    report: VerifyReport,
    args: &ReportArgs,
    started: Instant,
) -> Result<ExitCode, CliError> {
    let exact = report.is_exact();
    let wrapped = CliReport {
        report,
        elapsed_ms: args.timings.then(|| started.elapsed().as_millis()),
    };
    match args.format {
        ReportFormat::Json => print_json(&wrapped),
        ReportFormat::Text => {
            let r = &wrapped.report;
            println!("identity: {}", r.identity);
            for (k, v) in &r.parameters {
                println!("  {k} = {v}");
            }
            println!("status: {}", r.status);
            for line in &r.residual_terms {
                println!("  residual: {line}");
            }
            for (k, v) in &r.details {
                println!("  {k}: {v}");
            }
            if let Some(ms) = wrapped.elapsed_ms {
                println!("elapsed_ms: {ms}");
            }
        }
    }
    Ok(if exact {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Hurwitz { cmd } => {
            let (base, degree, profiles, brute) = match cmd {
                HurwitzCmd::Char {
                    base,
                    degree,
                    profiles,
                } => (base.resolve()?, degree, profiles, false),
                HurwitzCmd::Brute {
                    base,
                    degree,
                    profiles,
                } => (base.resolve()?, degree, profiles, true),
            };
            let profiles = parse_profiles(&profiles)?;
            let data = BranchingData::new(degree, profiles, base)?;
            let value = if brute {
                hurwitz_permutation_oracle(&data)?
            } else {
                hurwitz_character(&data)?
            };
            print_json(&HurwitzOutput {
                value: value.to_string(),
                degree,
                euler: data.base().euler(),
                profiles: data.profiles().iter().map(|q| q.to_string()).collect(),
            });
            Ok(ExitCode::SUCCESS)
        }

        Command::Char {
            cmd:
                CharCmd::Table {
                    degree,
                    format,
                    cap,
                },
        } => {
            let table = character_table_with_cap(degree, cap.unwrap_or(DEFAULT_DEGREE_CAP))?;
            let classes: Vec<String> = table.partitions().iter().map(|q| q.to_string()).collect();
            match format {
                TableFormat::Json => {
                    let rows = table
                        .partitions()
                        .iter()
                        .enumerate()
                        .map(|(li, lam)| CharTableRow {
                            lambda: lam.to_string(),
                            dimension: table.dim_at(li).to_string(),
                            values: (0..table.partitions().len())
                                .map(|di| table.chi_at(li, di))
                                .collect(),
                        })
                        .collect();
                    print_json(&CharTableJson {
                        degree,
                        classes,
                        rows,
                    });
                }
                TableFormat::Csv => {
                    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
                    let mut header = vec!["lambda".to_string()];
                    header.extend(classes.iter().cloned());
                    w.write_record(&header).map_err(CliError::usage)?;
                    for (li, lam) in table.partitions().iter().enumerate() {
                        let mut record = vec![lam.to_string()];
                        for di in 0..table.partitions().len() {
                            record.push(table.chi_at(li, di).to_string());
                        }
                        w.write_record(&record).map_err(CliError::usage)?;
                    }
                    w.flush().map_err(CliError::usage)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Schur {
            cmd: SchurCmd::Expand { partition, cap },
        } => {
            let lambda = parse_partition(&partition)?;
            check_weight_cap(&lambda, cap)?;
            print_json(&expansion_terms(&schur_in_powersums(&lambda)));
            Ok(ExitCode::SUCCESS)
        }

        Command::Cutjoin {
            cmd:
                CutjoinCmd::Apply {
                    monomial,
                    schur,
                    cap,
                },
        } => {
            let (input, kind, poly, eigen) = match (monomial, schur) {
                (Some(m), None) => {
                    let delta = parse_partition(&m)?;
                    check_weight_cap(&delta, cap)?;
                    (m, "powersum-monomial", powersum_monomial(&delta), None)
                }
                (None, Some(s)) => {
                    let lambda = parse_partition(&s)?;
                    check_weight_cap(&lambda, cap)?;
                    let eig = cut_and_join_eigenvalue(&lambda).to_string();
                    (s, "schur", schur_in_powersums(&lambda), Some(eig))
                }
                _ => return Err(CliError::usage("pass exactly one of --monomial or --schur")),
            };
            print_json(&CutjoinOutput {
                input,
                input_kind: kind.to_string(),
                image: expansion_terms(&cut_and_join_apply(&poly)),
                eigenvalue: eigen,
            });
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { cmd } => run_verify(cmd),

        Command::Fixtures {
            cmd: FixturesCmd::Emit { out },
        } => {
            let summary = fixtures::emit(&out)?;
            let ok = summary.all_match;
            print_json(&summary);
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn run_verify(cmd: VerifyCmd) -> Result<ExitCode, CliError> {
    let started = Instant::now();
    match cmd {
        VerifyCmd::Commute {
            mu,
            nu,
            size,
            seed,
            dmax,
            matrix,
            b,
            report,
        } => {
            let mu = parse_partition(&mu)?;
            let nu = parse_partition(&nu)?;
            let a = parse_matrix(&matrix, size, seed)?;
            let b_matrix;
            let b_side = match b.as_str() {
                "identity" => BSide::Identity,
                "a" => BSide::SameAsA,
                "seeded" => {
                    b_matrix = parse_matrix("seeded", size, seed.wrapping_add(1))?;
                    BSide::Matrix(&b_matrix)
                }
                other => {
                    return Err(CliError::usage(format!(
                        "unknown --b {other:?}; expected identity, a or seeded"
                    )))
                }
            };
            let r = verify_commutator(&mu, &nu, &a, b_side, dmax, &report.caps())?;
            finish_report(r, &report, started)
        }
        VerifyCmd::L1 {
            mu1,
            mu2,
            size,
            seed,
            matrix_f,
            matrix_c,
            report,
        } => {
            let mu1 = parse_partition(&mu1)?;
            let mu2 = parse_partition(&mu2)?;
            let f = parse_matrix(&matrix_f, size, seed)?;
            let c = parse_matrix(&matrix_c, size, seed.wrapping_add(1))?;
            let r = verify_lemma_l1(&mu1, &mu2, &f, &c, &report.caps())?;
            finish_report(r, &report, started)
        }
        VerifyCmd::SchurPair {
            lambda,
            mu,
            size,
            seed,
            matrix_c,
            matrix_f,
            report,
        } => {
            let lambda = parse_partition(&lambda)?;
            let mu = parse_partition(&mu)?;
            let c = parse_matrix(&matrix_c, size, seed)?;
            let f = parse_matrix(&matrix_f, size, seed.wrapping_add(1))?;
            let r = verify_schur_pairing(&lambda, &mu, &c, &f, &report.caps())?;
            finish_report(r, &report, started)
        }
        VerifyCmd::ThreePoint {
            delta,
            nu,
            size,
            seed,
            matrix_a,
            matrix_c,
            report,
        } => {
            let delta = parse_partition(&delta)?;
            let nu = parse_partition(&nu)?;
            let a = parse_matrix(&matrix_a, size, seed)?;
            let c = parse_matrix(&matrix_c, size, seed.wrapping_add(1))?;
            let r = verify_three_point(&delta, &nu, &a, &c, &report.caps())?;
            finish_report(r, &report, started)
        }
        VerifyCmd::Mmn {
            delta,
            lambda,
            size,
            seed,
            rank,
            identity,
            report,
        } => {
            let delta = parse_partition(&delta)?;
            let lambda = parse_partition(&lambda)?;
            let (a, c) = if identity {
                (ExactMatrix::identity(size), ExactMatrix::identity(size))
            } else {
                let rank = rank.unwrap_or_else(|| lambda.len().max(1));
                if rank == 0 || rank > size {
                    return Err(CliError::usage(format!("--rank must be in 1..={size}")));
                }
                seeded_ac_pair(size, rank, seed)
            };
            let r = verify_mmn_eigen(&delta, &lambda, &a, &c, &report.caps())?;
            finish_report(r, &report, started)
        }
        VerifyCmd::Star {
            lambda,
            mus,
            size,
            seed,
            matrix,
            rank,
            report,
        } => {
            let lambda = parse_partition(&lambda)?;
            let mus: Vec<Partition> = mus
                .split('|')
                .map(|t| parse_partition(t.trim()))
                .collect::<Result<_, _>>()?;
            let legs = mus.len();
            let (a_mats, c_mats): (Vec<_>, Vec<_>) = match matrix.as_str() {
                "identity" => {
                    let id = ExactMatrix::identity(size);
                    (vec![id.clone(); legs], vec![id; legs])
                }
                "seeded" => {
                    let rank = rank.unwrap_or_else(|| lambda.len().max(1));
                    if rank == 0 || rank > size {
                        return Err(CliError::usage(format!("--rank must be in 1..={size}")));
                    }
                    (0..legs)
                        .map(|i| seeded_ac_pair(size, rank, seed.wrapping_add(i as u64)))
                        .unzip()
                }
                other => {
                    return Err(CliError::usage(format!(
                        "unknown --matrix {other:?}; expected identity or seeded"
                    )))
                }
            };
            let r = verify_star(&lambda, &mus, &a_mats, &c_mats, &report.caps())?;
            finish_report(r, &report, started)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
