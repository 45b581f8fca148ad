//! The `thompson` command line.
//!
//! Exit codes: 0 success, 1 validation failure, 2 domain error, 3 parse or
//! usage error. Elements are always written in the interchange format so
//! the output of one command can be fed to the next.

use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::centralizer::{self, CentralizerError};
use crate::conjugacy::{self, ConjugacyError};
use crate::dyadic::{Dyadic, DyadicParseError};
use crate::dynamics::{
    estimate_rotation_number, orbit_of_zero, order_of, OrbitOutcome, DEFAULT_CAP,
};
use crate::element::{random_element, CircleElement, JsonError};
use crate::ktheory::{self, KTheoryError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "thompson",
    version,
    about = "Exact computations in Thompson's group T"
)]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Element arithmetic.
    #[command(subcommand)]
    El(El),
    /// Rotation numbers and orders.
    #[command(subcommand)]
    Dyn(Dyn),
    /// Conjugators between finite cyclic subgroups.
    #[command(subcommand)]
    Conj(Conj),
    /// Centralizers of finite cyclic subgroups.
    #[command(subcommand)]
    Cent(Cent),
    /// K-theory rank arithmetic.
    #[command(subcommand)]
    Kth(Kth),
}

#[derive(Subcommand, Debug)]
enum El {
    /// The pseudo-rotation of order Q.
    Gamma {
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// A ∘ B.
    Compose {
        a: String,
        b: String,
    },
    Inv {
        a: String,
    },
    Pow {
        a: String,
        #[arg(allow_negative_numbers = true)]
        m: i64,
    },
    /// A(X) on the circle.
    Eval {
        a: String,
        #[arg(allow_negative_numbers = true)]
        x: String,
    },
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        complexity: u32,
    },
    Eq {
        a: String,
        b: String,
    },
}

#[derive(Subcommand, Debug)]
enum Dyn {
    /// Exact rotation number, or a certified estimate with --estimate.
    Rot {
        a: String,
        #[arg(long)]
        estimate: Option<u64>,
    },
    Order {
        a: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Conj {
    /// h with h g' h⁻¹ = γ_q for the generator g' of ⟨A⟩ with rotation 1/q.
    ToGamma { a: String },
    /// w with w ⟨A⟩ w⁻¹ = ⟨B⟩.
    Subgroups { a: String, b: String },
}

#[derive(Subcommand, Debug)]
enum Cent {
    Ctx {
        g: String,
    },
    /// Whether H commutes with G.
    Check {
        g: String,
        h: String,
    },
    /// The projection π(H).
    Pi {
        g: String,
        h: String,
    },
    /// The section σ(H0).
    Lift {
        g: String,
        h0: String,
    },
    /// k with σ(H1 H2) = σ(H1) σ(H2) G^k.
    Defect {
        g: String,
        h1: String,
        h2: String,
    },
}

#[derive(Subcommand, Debug)]
enum Kth {
    Wh {
        k: u64,
    },
    Theta {
        k: u64,
        t: u64,
    },
    Fj {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        kmax: u64,
    },
    Growth {
        j: u32,
    },
    Morphisms {
        k: u64,
        l: u64,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }
}

impl From<DyadicParseError> for Failure {
    fn from(e: DyadicParseError) -> Self {
        match e {
            DyadicParseError::NotDyadic(_) => Failure::validation(e.to_string()),
            DyadicParseError::Malformed(_) => Failure::usage(e.to_string()),
        }
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        match e {
            JsonError::Syntax(_) => Failure::usage(e.to_string()),
            JsonError::Coordinate(inner) => inner.into(),
            JsonError::Invalid(_) => Failure::validation(e.to_string()),
        }
    }
}

impl From<KTheoryError> for Failure {
    fn from(e: KTheoryError) -> Self {
        Failure::validation(e.to_string())
    }
}

impl From<ConjugacyError> for Failure {
    fn from(e: ConjugacyError) -> Self {
        Failure::domain(e.to_string())
    }
}

impl From<CentralizerError> for Failure {
    fn from(e: CentralizerError) -> Self {
        Failure::domain(e.to_string())
    }
}

struct Session<'a> {
    json: bool,
    color: bool,
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Session<'_> {
    fn element(&mut self, source: &str) -> Result<CircleElement, Failure> {
        let text = if source == "-" {
            if self.stdin_used {
                return Err(Failure::usage("standard input can only be read once"));
            }
            self.stdin_used = true;
            let mut buf = String::new();
            self.stdin
                .read_to_string(&mut buf)
                .map_err(|e| Failure::usage(format!("reading standard input: {e}")))?;
            buf
        } else {
            fs::read_to_string(source).map_err(|e| Failure::usage(format!("{source}: {e}")))?
        };
        Ok(CircleElement::from_json(text.trim())?)
    }

    fn label(&self, name: &str) -> String {
        if self.color {
            format!("\x1b[1m{name}\x1b[0m")
        } else {
            name.to_string()
        }
    }

    /// A single scalar result, bare or as `{"key": value}`.
    fn scalar(&self, key: &str, value: serde_json::Value) -> String {
        if self.json {
            json!({ key: value }).to_string()
        } else {
            match value {
                serde_json::Value::String(s) => s,
                other => other.to_string(),
            }
        }
    }

    fn record(&self, fields: &[(&str, serde_json::Value)]) -> String {
        if self.json {
            let map: serde_json::Map<String, serde_json::Value> = fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            serde_json::Value::Object(map).to_string()
        } else {
            fields
                .iter()
                .map(|(k, v)| {
                    let v = match v {
                        serde_json::Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    format!("{} {v}", self.label(&format!("{k}:")))
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
    }

    fn torsion(&mut self, source: &str) -> Result<crate::dynamics::TorsionCertificate, Failure> {
        let g = self.element(source)?;
        match orbit_of_zero(&g, DEFAULT_CAP) {
            OrbitOutcome::Torsion(cert) => Ok(cert),
            OrbitOutcome::Infinite => Err(Failure::domain("element has infinite order")),
            OrbitOutcome::NoTorsionUpTo(cap) => Err(Failure::domain(format!(
                "no finite order found within {cap} steps"
            ))),
        }
    }
}

fn color_enabled() -> bool {
    std::env::var("THOMPSON_CLI_COLOR")
        .map(|v| !matches!(v.as_str(), "" | "0" | "false" | "never" | "off"))
        .unwrap_or(false)
}

fn dispatch(cli: Cli, s: &mut Session<'_>) -> Result<String, Failure> {
    Ok(match cli.command {
        Command::El(cmd) => match cmd {
            El::Gamma { q } => CircleElement::pseudo_rotation(q)
                .map_err(|e| Failure::validation(e.to_string()))?
                .to_json(),
            El::Compose { a, b } => {
                let a = s.element(&a)?;
                a.compose(&s.element(&b)?).to_json()
            }
            El::Inv { a } => s.element(&a)?.inverse().to_json(),
            El::Pow { a, m } => s.element(&a)?.power(m).to_json(),
            El::Eval { a, x } => {
                let g = s.element(&a)?;
                let x: Dyadic = x.parse()?;
                s.scalar("value", g.evaluate(&x).to_string().into())
            }
            El::Random { seed, complexity } => random_element(seed, complexity).to_json(),
            El::Eq { a, b } => {
                let a = s.element(&a)?;
                let equal = a == s.element(&b)?;
                s.scalar("equal", equal.into())
            }
        },
        Command::Dyn(cmd) => match cmd {
            Dyn::Rot { a, estimate: None } => {
                let cert = s.torsion(&a)?;
                s.scalar("rotation", cert.rotation().to_string().into())
            }
            Dyn::Rot {
                a,
                estimate: Some(n),
            } => {
                if n == 0 {
                    return Err(Failure::validation("estimate needs at least one iterate"));
                }
                let e = estimate_rotation_number(&s.element(&a)?, n);
                s.record(&[
                    ("estimate", e.estimate.to_string().into()),
                    ("bound", e.bound.to_string().into()),
                ])
            }
            Dyn::Order { a, cap } => {
                let order = order_of(&s.element(&a)?, cap);
                s.scalar("order", order.to_string().into())
            }
        },
        Command::Conj(cmd) => match cmd {
            Conj::ToGamma { a } => {
                let cert = s.torsion(&a)?;
                conjugacy::conjugator_to_pseudo_rotation(&cert)?.to_json()
            }
            Conj::Subgroups { a, b } => {
                let first = s.torsion(&a)?;
                let second = s.torsion(&b)?;
                conjugacy::subgroup_conjugator(&first, &second)?.to_json()
            }
        },
        Command::Cent(cmd) => match cmd {
            Cent::Ctx { g } => {
                let ctx = centralizer::make_context(&s.torsion(&g)?)?;
                s.record(&[
                    ("p", ctx.p().into()),
                    ("q", ctx.q().into()),
                    ("s", ctx.s().into()),
                    ("a", ctx.a().to_string().into()),
                ])
            }
            Cent::Check { g, h } => {
                let ctx = centralizer::make_context(&s.torsion(&g)?)?;
                let h = s.element(&h)?;
                s.scalar(
                    "centralizes",
                    centralizer::is_in_centralizer(&ctx, &h).into(),
                )
            }
            Cent::Pi { g, h } => {
                let ctx = centralizer::make_context(&s.torsion(&g)?)?;
                let h = s.element(&h)?;
                centralizer::project(&ctx, &h)?.to_json()
            }
            Cent::Lift { g, h0 } => {
                let ctx = centralizer::make_context(&s.torsion(&g)?)?;
                let h0 = s.element(&h0)?;
                centralizer::section(&ctx, &h0).to_json()
            }
            Cent::Defect { g, h1, h2 } => {
                let ctx = centralizer::make_context(&s.torsion(&g)?)?;
                let h1 = s.element(&h1)?;
                let h2 = s.element(&h2)?;
                s.scalar("k", centralizer::section_defect(&ctx, &h1, &h2).into())
            }
        },
        Command::Kth(cmd) => match cmd {
            Kth::Wh { k } => s.scalar("wh_rank", ktheory::wh_rank(k)?.into()),
            Kth::Theta { k, t } => s.scalar("theta_dim", ktheory::theta_dim(k, t)?.into()),
            Kth::Fj { n, kmax } => {
                let table = ktheory::fj_source_table(n, kmax)?;
                if s.json {
                    table.to_json()
                } else {
                    let mut lines = vec![format!(
                        "{:>4} {:>4} {:>4} {:>6}",
                        s.label("k"),
                        s.label("s"),
                        s.label("t"),
                        s.label("dim")
                    )];
                    for r in &table.rows {
                        lines.push(format!("{:>4} {:>4} {:>4} {:>6}", r.k, r.s, r.t, r.dim));
                    }
                    lines.push(format!("{} {}", s.label("total:"), table.total));
                    lines.join("\n")
                }
            }
            Kth::Growth { j } => {
                let chain = ktheory::wh_growth_chain(j)?;
                if s.json {
                    json!({ "chain": chain }).to_string()
                } else {
                    chain
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            }
            Kth::Morphisms { k, l } => {
                s.scalar("morphisms", ktheory::subfin_morphism_count(k, l)?.into())
            }
        },
    })
}

/// Runs one invocation; `args[0]` is the program name. Returns the exit code.
pub fn run(
    args: &[String],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(stdout, "{rendered}")
            } else {
                write!(stderr, "{rendered}")
            };
            return code;
        }
    };
    let mut session = Session {
        json: cli.json,
        color: color_enabled() && !cli.json,
        stdin,
        stdin_used: false,
    };
    match dispatch(cli, &mut session) {
        Ok(out) => {
            let _ = writeln!(stdout, "{out}");
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
