//! Command-line front end: group-spec parsing, subcommand dispatch, JSON output and the
//! exit-code contract (0 success, 1 failed check, 2 invalid input, 3 resource cap).

mod commands;
mod render;
pub mod spec;

pub use spec::{parse_group_spec, GroupSpec, SpecError};

use clap::{Args, Parser, Subcommand, ValueEnum};
use schurcover_core::report::CheckResult;
use schurcover_core::DEFAULT_SEED;
use serde::Serialize;
use serde_json::Value;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Default cap on the group order for bar complexes.
pub const BAR_CAP: usize = 24;
/// Default cap on the group order for table-based operations.
pub const TABLE_CAP: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "schurcover", version, about = "Schur multipliers, representation groups and projective representations")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub(crate) struct GlobalOpts {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest group order to accept (default 24 for bar complexes, 64 for tables).
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// Pretty JSON, or one `key value` line per leaf with PASS/FAIL lines for checks.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add the wall time to the output (which then varies between runs).
    #[arg(long, global = true)]
    timing: bool,
}

impl GlobalOpts {
    pub(crate) fn bar_cap(&self) -> usize {
        self.max_order.unwrap_or(BAR_CAP)
    }

    pub(crate) fn table_cap(&self) -> usize {
        self.max_order.unwrap_or(TABLE_CAP)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Method {
    Bar,
    Bruteforce,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Schur multiplier H_2(G, Z) by the best available method.
    Multiplier {
        /// Group spec: fab:[n1,...], mc:m,n,r, heis:[d1,...];N or table:@file.json.
        /// Group spec: fab:[n1,...], mc:m,n,r, heis:[d1,...];N or table:@file.json.
        group: String,
    },
    /// H_2 of a finite group from the bar complex and/or by solving the cocycle equations.
    H2 {
        /// Group spec: fab:[n1,...], mc:m,n,r, heis:[d1,...];N or table:@file.json.
        group: String,
        /// bar: SNF of the bar complex; bruteforce: cochain equations (order <= 16); both: compare.
        #[arg(long, value_enum, default_value_t = Method::Bar)]
        method: Method,
        /// Also print the splitting tables t_i.
        #[arg(long)]
        xi: bool,
    },
    /// Representation group of a finite group, or the cover G(mt, 0, r) of G(m, 0, r).
    Repgroup {
        /// Group spec: fab:[n1,...], mc:m,n,r, heis:[d1,...];N or table:@file.json.
        group: String,
        /// Run the verification checks (associativity, centrality, A in [G~, G~], transgression).
        #[arg(long)]
        verify: bool,
        /// Print the full multiplication table.
        #[arg(long)]
        table: bool,
    },
    /// A representative 2-cocycle: from H_2 coordinates on finite groups, closed forms otherwise.
    Cocycle {
        /// Group spec: fab:[n1,...], mc:m,n,r, heis:[d1,...];N or table:@file.json.
        group: String,
        /// Exponents of the class, one per invariant factor of H_2; trivial class when omitted.
        #[arg(long, value_delimiter = ',')]
        class: Vec<u64>,
        /// Exponent of lambda: a root of unity of order t = gcd(m, r - 1) for G(m,0,r), of order n for heis:[1];n.
        #[arg(long, default_value_t = 0)]
        lambda: u64,
        /// Exponent of mu = exp(2 pi i mu / n) for heis:[1];n.
        #[arg(long, default_value_t = 0)]
        mu: u64,
        /// Print a coboundary witness (finite groups) or the inflation witness (G(m,0,r)).
        #[arg(long)]
        witness: bool,
    },
    /// Irreducible alpha-representations counted from the twisted group algebra.
    Irr {
        /// Group spec: fab:[n1,...], mc:m,n,r, heis:[d1,...];N or table:@file.json.
        group: String,
        /// Exponents of the class, one per invariant factor of H_2; trivial class when omitted.
        #[arg(long, value_delimiter = ',')]
        class: Vec<u64>,
    },
    /// Representation induced from a one-dimensional alpha-representation of a subgroup.
    Induce {
        /// Group spec: fab:[n1,...], mc:m,n,r, heis:[d1,...];N or table:@file.json.
        group: String,
        /// Exponents of the class, one per invariant factor of H_2; trivial class when omitted.
        #[arg(long, value_delimiter = ',')]
        class: Vec<u64>,
        /// Subgroup as element indices; defaults to the trivial subgroup.
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<usize>,
        /// Which one-dimensional alpha-representation of the subgroup to induce.
        #[arg(long, default_value_t = 0)]
        psi: usize,
        /// Also print complex matrices.
        #[arg(long)]
        dense: bool,
    },
    /// Lift an induced alpha-representation to the representation group and check the
    /// monomial correspondence.
    Lift {
        /// Group spec: fab:[n1,...], mc:m,n,r, heis:[d1,...];N or table:@file.json.
        group: String,
        /// Exponents of the class, one per invariant factor of H_2; trivial class when omitted.
        #[arg(long, value_delimiter = ',')]
        class: Vec<u64>,
        /// Subgroup as element indices; defaults to the trivial subgroup.
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<usize>,
        /// Which one-dimensional alpha-representation of the subgroup to induce.
        #[arg(long, default_value_t = 0)]
        psi: usize,
    },
    /// Finiteness of irreducible projective representations.
    AlphaFinite {
        /// m,n,r with mn = 0.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        metacyclic: Option<Vec<u64>>,
        /// n for the group (Z/n x Z) x| Z.
        #[arg(long)]
        heisenberg: Option<u64>,
        /// Exponent of lambda, as for `cocycle`.
        #[arg(long, default_value_t = 0)]
        lambda: u64,
        /// Exponent of mu, as for `cocycle`.
        #[arg(long, default_value_t = 0)]
        mu: u64,
        /// Run the shift-window demo instead.
        #[arg(long)]
        shift_demo: bool,
    },
    /// Window check of the shift representation of Z^2 x| Z.
    ShiftDemo {
        /// Keep the indices |h| < window.
        #[arg(long, default_value_t = 8)]
        window: i64,
        /// Row-major 2x2 matrix a,b,c,d.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        phi: Option<Vec<i64>>,
        /// Use lambda = exp(2 pi i k / N) instead of a transcendental lambda: N,k.
        #[arg(long, value_delimiter = ',')]
        lambda_root: Option<Vec<u64>>,
    },
    /// Verify every module on the built-in corpus.
    Selftest {
        /// Largest corpus group order.
        #[arg(long, default_value_t = 16)]
        up_to: usize,
    },
}

/// Captured process result.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Payload of a successful command before it is wrapped.
pub(crate) struct Payload {
    pub input: Value,
    pub result: Value,
    pub checks: Vec<CheckResult>,
}

#[derive(Serialize)]
struct CommandResult<'a> {
    command: &'a str,
    input: Value,
    result: Value,
    checks: Vec<CheckResult>,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<f64>,
}

/// A failure mapped onto the exit-code contract.
#[derive(Debug)]
pub(crate) struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
    pub detail: Value,
}

impl From<schurcover_core::Error> for Failure {
    fn from(e: schurcover_core::Error) -> Self {
        use schurcover_core::Error as E;
        let (code, kind) = match &e {
            E::Invalid(_) | E::Infinite(_) | E::Dimension { .. } => (EXIT_INVALID, "invalid-input"),
            E::CapExceeded { .. } => (EXIT_CAP, "cap-exceeded"),
            E::CheckFailed(_) => (EXIT_CHECK_FAILED, "check-failed"),
            E::Numerical(_) => (EXIT_CHECK_FAILED, "numerical"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
            detail: Value::Null,
        }
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        let detail = match &e {
            SpecError::Syntax { offset, .. } => serde_json::json!({ "offset": offset }),
            SpecError::Semantic { rule, .. } => serde_json::json!({ "rule": rule }),
        };
        Failure {
            code: EXIT_INVALID,
            kind: "invalid-input",
            message: e.to_string(),
            detail,
        }
    }
}

impl Failure {
    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            kind: "invalid-input",
            message: message.into(),
            detail: Value::Null,
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Multiplier { .. } => "multiplier",
        Command::H2 { .. } => "h2",
        Command::Repgroup { .. } => "repgroup",
        Command::Cocycle { .. } => "cocycle",
        Command::Irr { .. } => "irr",
        Command::Induce { .. } => "induce",
        Command::Lift { .. } => "lift",
        Command::AlphaFinite { .. } => "alpha-finite",
        Command::ShiftDemo { .. } => "shift-demo",
        Command::Selftest { .. } => "selftest",
    }
}

fn dispatch(cmd: &Command, g: &GlobalOpts) -> Result<Payload, Failure> {
    use commands::*;
    match cmd {
        Command::Multiplier { group } => multiplier(group, g),
        Command::H2 { group, method, xi } => h2(group, *method, *xi, g),
        Command::Repgroup { group, verify, table } => repgroup(group, *verify, *table, g),
        Command::Cocycle {
            group,
            class,
            lambda,
            mu,
            witness,
        } => cocycle(group, class, *lambda, *mu, *witness, g),
        Command::Irr { group, class } => irr(group, class, g),
        Command::Induce {
            group,
            class,
            subgroup,
            psi,
            dense,
        } => induce(group, class, subgroup, *psi, *dense, g),
        Command::Lift {
            group,
            class,
            subgroup,
            psi,
        } => lift(group, class, subgroup, *psi, g),
        Command::AlphaFinite {
            metacyclic,
            heisenberg,
            lambda,
            mu,
            shift_demo,
        } => alpha_finite(metacyclic.as_deref(), *heisenberg, *lambda, *mu, *shift_demo, g),
        Command::ShiftDemo {
            window,
            phi,
            lambda_root,
        } => shift_demo(*window, phi.as_deref(), lambda_root.as_deref(), g),
        Command::Selftest { up_to } => selftest(*up_to, g),
    }
}

/// Parses `argv` (including the program name), runs one subcommand and returns the exit code
/// together with what would be written to stdout and stderr.
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let args: Vec<&str> = argv.iter().map(|s| s.as_ref()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text.trim_end().to_string(),
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text.trim_end().to_string(),
                },
            };
        }
    };
    let name = command_name(&cli.command);
    let g = &cli.global;
    let start = Instant::now();
    let outcome = dispatch(&cli.command, g);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let as_text = |v: &Value| match g.format {
        Format::Json => serde_json::to_string_pretty(v).expect("JSON values serialize"),
        Format::Table => render::table(v),
    };
    match outcome {
        Ok(p) => {
            let failed: Vec<&CheckResult> = p.checks.iter().filter(|c| !c.passed).collect();
            let code = if failed.is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED };
            let stderr = failed
                .iter()
                .map(|c| format!("check failed: {}: {}", c.name, c.witness.as_deref().unwrap_or("")))
                .collect::<Vec<_>>()
                .join("\n");
            let out = CommandResult {
                command: name,
                input: p.input,
                result: p.result,
                checks: p.checks,
                seed: g.seed,
                wall_time_ms: g.timing.then_some(elapsed),
            };
            Outcome {
                code,
                stdout: as_text(&serde_json::to_value(&out).expect("serializable")),
                stderr,
            }
        }
        Err(f) => {
            let mut err = serde_json::json!({ "kind": f.kind, "message": f.message });
            if let Value::Object(extra) = f.detail {
                err.as_object_mut().unwrap().extend(extra);
            }
            let v = serde_json::json!({ "command": name, "error": err, "seed": g.seed });
            Outcome {
                code: f.code,
                stdout: as_text(&v),
                stderr: format!("error: {}", f.message),
            }
        }
    }
}
