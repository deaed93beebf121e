//! Command dispatch for the `wdrep` binary.
//!
//! Exit codes: 0 success, 1 a well-formed negative answer, 2 malformed input
//! or an axiom violation, 3 an eigenvalue outside the supported class.

pub mod gen;

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::Error;
use crate::irred::ConstituentMultiset;
use crate::structure::{decompose, isomorphic, peel, reconstruct, twist_equivalence, TwistOutcome};
use crate::wdrep::WDRep;
use crate::wire;

pub use gen::{gen_pure, GenParams, Generated, SplitMix64};

#[derive(Parser, Debug)]
#[command(name = "wdrep", about = "Exact computations with tamely ramified Weil-Deligne representations")]
struct Cli {
    /// Human-readable report instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Input document; `-` reads standard input.
    #[arg(default_value = "-")]
    file: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms.
    Validate(Input),
    /// Monodromy filtration and graded actions.
    Filtration(Input),
    /// Purity report.
    Purity(Input),
    /// Frobenius-semisimplification.
    Frss(Input),
    /// Special-block decomposition.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Apply frss before decomposing.
        #[arg(long)]
        frss_first: bool,
    },
    /// Irreducible constituents of the semisimplification.
    Constituents(Input),
    /// Trace panel tr(S^a F^b), 0 <= a < n, 0 <= b <= B.
    Trace {
        #[command(flatten)]
        input: Input,
        /// Panel bound B (default: the dimension).
        #[arg(long)]
        panel: Option<u64>,
    },
    /// Normalized trace panel of a pure representation.
    Ntrace {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        panel: Option<u64>,
    },
    /// Split one special block off a constituent multiset.
    Peel(Input),
    /// Frobenius-semisimple pure representation with given constituents.
    Reconstruct(Input),
    /// Isomorphism test for two Frobenius-semisimple representations.
    Isom { a: String, b: String },
    /// Twist-equivalence certificate for two pure representations.
    TwistEquiv { a: String, b: String },
    /// Seeded random pure representation.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Order of the roots of unity in the coefficient field.
    #[arg(long = "N", default_value_t = 1)]
    order: u64,
    #[arg(long, default_value_t = 1)]
    n: u64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    w: i64,
    #[arg(long, default_value_t = 3)]
    max_blocks: usize,
    #[arg(long, default_value_t = 3)]
    max_t: usize,
    #[arg(long, default_value_t = 4)]
    max_orbit: usize,
    #[arg(long, default_value_t = 12)]
    max_dim: usize,
    #[arg(long)]
    conjugate: bool,
    #[arg(long)]
    unipotent_frobenius: bool,
    #[arg(long)]
    duplicate_block: bool,
}

impl From<&GenArgs> for GenParams {
    fn from(a: &GenArgs) -> Self {
        GenParams {
            seed: a.seed,
            q: a.q,
            order: a.order,
            n: a.n,
            w: a.w,
            max_blocks: a.max_blocks,
            max_t: a.max_t,
            max_orbit: a.max_orbit,
            max_dim: a.max_dim,
            conjugate: a.conjugate,
            unipotent_frobenius: a.unipotent_frobenius,
            duplicate_block: a.duplicate_block,
        }
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotPure | Error::NotFrobeniusSemisimple | Error::InconsistentPureTrace(_) => 1,
        Error::EigenvalueOutsideClass => 3,
        _ => 2,
    }
}

/// Result of a command: a payload (or text) and an exit code.
struct Reply {
    payload: Value,
    text: String,
    code: i32,
}

impl Reply {
    fn ok(payload: Value, text: String) -> Reply {
        Reply { payload, text, code: 0 }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<Value, Error> {
        let text = if path == "-" {
            if self.stdin_used {
                return Err(Error::Wire("standard input can only be read once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| Error::Wire(e.to_string()))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| Error::Wire(format!("{path}: {e}")))?
        };
        wire::parse_document(&text)
    }

    fn rep(&mut self, path: &str) -> Result<WDRep, Error> {
        let rep = wire::rep_from_json(&self.read(path)?)?;
        rep.check()?;
        Ok(rep)
    }

    fn constituents(&mut self, path: &str) -> Result<ConstituentMultiset, Error> {
        wire::constituents_from_json(&self.read(path)?)
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let out: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let mut io = Io { stdin, stdin_used: false };
    match dispatch(&cli.command, &mut io) {
        Ok(reply) => {
            let out = if cli.pretty { reply.text } else { wire::to_text(&wire::envelope(reply.payload)) };
            let _ = stdout.write_all(out.as_bytes());
            reply.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn rep_text(rep: &WDRep) -> String {
    format!(
        "field Q(zeta_{}, sqrt {}), n = {}, dim = {}\nS =\n{}\nF =\n{}\nN =\n{}\n",
        rep.ctx().order(),
        rep.ctx().q(),
        rep.n(),
        rep.dim(),
        rep.tame(),
        rep.frobenius(),
        rep.monodromy()
    )
}

fn constituents_text(cs: &ConstituentMultiset) -> String {
    let mut s = String::new();
    for (ir, m) in cs.iter() {
        let weight = ir.weight().map_or("-".to_string(), |u| u.to_string());
        let _ = writeln!(s, "orbit {:?}  alpha = {}  weight {}  x{}", ir.orbit(), ir.alpha(), weight, m);
    }
    s
}

fn dispatch(cmd: &Command, io: &mut Io) -> Result<Reply, Error> {
    match cmd {
        Command::Validate(i) => {
            let rep = wire::rep_from_json(&io.read(&i.file)?)?;
            let bad = rep.validate();
            let text = if bad.is_empty() {
                "valid\n".to_string()
            } else {
                bad.iter().map(|b| format!("violated: {b}\n")).collect()
            };
            let code = if bad.is_empty() { 0 } else { 2 };
            Ok(Reply { payload: json!({ "valid": bad.is_empty(), "violations": bad }), text, code })
        }
        Command::Filtration(i) => {
            let fil = io.rep(&i.file)?.monodromy_filtration()?;
            let mut text = String::new();
            for k in fil.range() {
                let _ = writeln!(text, "dim M_{k} = {}", fil.step(k).dim());
            }
            for g in &fil.gradings {
                let _ = writeln!(text, "gr_{}: F =\n{}", g.k, g.frobenius);
            }
            Ok(Reply::ok(wire::filtration_to_json(&fil), text))
        }
        Command::Purity(i) => {
            let p = io.rep(&i.file)?.purity()?;
            let mut text = match p.weight {
                Some(w) => format!("pure of weight {w}\n"),
                None => "not pure\n".to_string(),
            };
            for v in &p.violations {
                let _ = writeln!(text, "gr_{}: alpha = {} has weight {}", v.grading, v.eigenvalue, v.observed_weight);
            }
            let code = if p.is_pure { 0 } else { 1 };
            Ok(Reply { payload: wire::purity_to_json(&p), text, code })
        }
        Command::Frss(i) => {
            let out = io.rep(&i.file)?.frss()?;
            Ok(Reply::ok(wire::rep_to_json(&out), rep_text(&out)))
        }
        Command::Decompose { input, frss_first } => {
            let rep = io.rep(&input.file)?;
            let dec = decompose(&rep, *frss_first)?;
            let mut text = String::new();
            for b in &dec.blocks {
                let _ = writeln!(text, "Sp_{}(orbit {:?}, alpha = {})", b.t, b.base.orbit(), b.base.alpha());
            }
            let _ = writeln!(text, "change of basis =\n{}", dec.basis);
            Ok(Reply::ok(wire::decomposition_to_json(&rep, &dec), text))
        }
        Command::Constituents(i) => {
            let cs = io.rep(&i.file)?.constituents()?;
            Ok(Reply::ok(wire::constituents_to_json(&cs), constituents_text(&cs)))
        }
        Command::Trace { input, panel } | Command::Ntrace { input, panel } => {
            let rep = io.rep(&input.file)?;
            let bound = panel.unwrap_or(rep.dim() as u64);
            let entries = if matches!(cmd, Command::Trace { .. }) {
                rep.trace_panel(bound)?
            } else {
                rep.normalized_trace_panel(bound)?
            };
            let text = entries.iter().map(|e| format!("tr(S^{} F^{}) = {}\n", e.a, e.b, e.value)).collect();
            Ok(Reply::ok(wire::panel_to_json(bound, &entries), text))
        }
        Command::Peel(i) => {
            let cs = io.constituents(&i.file)?;
            let (block, rest) = peel(&cs)?;
            let text = format!(
                "Sp_{}(orbit {:?}, alpha = {})\nremaining:\n{}",
                block.t,
                block.base.orbit(),
                block.base.alpha(),
                constituents_text(&rest)
            );
            let payload = json!({ "block": wire::block_to_json(&block), "rest": wire::constituents_to_json(&rest) });
            Ok(Reply::ok(payload, text))
        }
        Command::Reconstruct(i) => {
            let rep = reconstruct(&io.constituents(&i.file)?)?;
            Ok(Reply::ok(wire::rep_to_json(&rep), rep_text(&rep)))
        }
        Command::Isom { a, b } => {
            let (ra, rb) = (io.rep(a)?, io.rep(b)?);
            Ok(match isomorphic(&ra, &rb)? {
                Some(t) => Reply::ok(
                    json!({ "isomorphic": true, "intertwiner": wire::matrix_to_json(&t) }),
                    format!("isomorphic; T =\n{t}\n"),
                ),
                None => Reply { payload: json!({ "isomorphic": false }), text: "not isomorphic\n".into(), code: 1 },
            })
        }
        Command::TwistEquiv { a, b } => {
            let (ra, rb) = (io.rep(a)?, io.rep(b)?);
            Ok(match twist_equivalence(&ra, &rb)? {
                TwistOutcome::Equivalent(c) => {
                    let text = format!("equivalent with w = {}; T =\n{}\n", c.w, c.intertwiner);
                    Reply::ok(wire::certificate_to_json(&c), text)
                }
                TwistOutcome::NotEquivalent(reason) => Reply {
                    payload: json!({ "equivalent": false, "reason": reason.to_string() }),
                    text: format!("not equivalent: {reason}\n"),
                    code: 1,
                },
            })
        }
        Command::Gen(args) => {
            let g = gen_pure(&GenParams::from(args))?;
            Ok(Reply::ok(wire::rep_to_json(&g.rep), rep_text(&g.rep)))
        }
    }
}
