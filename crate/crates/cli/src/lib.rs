//! Command-line front end: argument parsing, file loading and result rendering.

use std::fs;
use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand};
use rvk_core::analyses::{
    build_opacity_hardness_instance, build_property_formula, check_monitorability, check_opacity,
    check_p_diagnosable_direct, classify_prefix, model_check, CheckResult, PrefixClass, PropertyKind, Witness,
};
use rvk_core::format::{load_machine, load_nfa, load_system, parse_obs_trace, print_machine, print_system};
use rvk_core::logic::{parse_formula, Formula};
use rvk_core::monitor::{diagnoser_machine, synthesize_diagnoser, synthesize_monitor, RuntimeMonitor, Verdict};
use rvk_core::vocab::{AgentId, Vocabulary};
use rvk_core::{Error, Limits, System};
use serde_json::{json, Value};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "rvk", version, about = "Epistemic model checking, diagnosis, opacity and runtime monitoring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// System file.
    #[arg(long)]
    system: String,
    /// Render the result as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Model check a formula at the first position of every execution.
    Check {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        formula: String,
    },
    /// Bounded or unbounded diagnosability of an error proposition.
    Diagnosable {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        agent: String,
        #[arg(long)]
        error: String,
        #[arg(long, conflicts_with = "unbounded", required_unless_present = "unbounded")]
        delay: Option<u32>,
        #[arg(long)]
        unbounded: bool,
        /// Check the negative variant.
        #[arg(long, conflicts_with_all = ["unbounded", "direct"])]
        negative: bool,
        /// Use the twin-plant search instead of model checking.
        #[arg(long, conflicts_with = "unbounded")]
        direct: bool,
    },
    /// Decentralized diagnosability: some agent must diagnose the error.
    Codiagnosable {
        #[command(flatten)]
        sys: SystemArgs,
        /// Agents, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        agents: Vec<String>,
        #[arg(long)]
        error: String,
        #[arg(long)]
        delay: u32,
        #[arg(long)]
        negative: bool,
    },
    /// Whether the agent can never know that the secret occurred.
    Opaque {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        agent: String,
        #[arg(long)]
        secret: String,
        /// Also require that the agent never knows the secret did not occur.
        #[arg(long)]
        two_sided: bool,
    },
    /// Whether every feasible observation prefix can still reach a verdict.
    Monitorable {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        agent: String,
        #[arg(long)]
        formula: String,
    },
    /// Classify an observation prefix as good, bad, ugly or inconclusive.
    Classify {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        agent: String,
        #[arg(long)]
        formula: String,
        /// Trace file; standard input when absent.
        #[arg(long)]
        trace: Option<String>,
    },
    /// Write a monitor (or diagnoser) machine file.
    Synth {
        #[arg(long)]
        system: String,
        #[arg(long)]
        agent: String,
        #[arg(long, required_unless_present = "diagnoser", conflicts_with = "diagnoser")]
        formula: Option<String>,
        /// Build a diagnoser for this error proposition instead.
        #[arg(long)]
        diagnoser: Option<String>,
        /// Output file; standard output when absent.
        #[arg(long)]
        output: Option<String>,
    },
    /// Run a machine file over a trace, printing one verdict per event.
    Run {
        #[arg(long)]
        monitor: String,
        /// Trace file; standard input when absent.
        #[arg(long)]
        trace: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Generate the opacity instance of an NFA universality problem.
    GenOpacityHard {
        #[arg(long)]
        nfa: String,
        #[arg(long)]
        output: Option<String>,
    },
}

/// What a command produced: an exit code plus text for standard output.
struct Report {
    code: i32,
    text: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource { .. } => EXIT_INFEASIBLE,
        _ => EXIT_USAGE,
    }
}

fn read(path: &str) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}")))
}

fn write_out(path: &Option<String>, text: String) -> Result<Report, Error> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| Error::Input(format!("{p}: {e}")))?;
            Ok(Report {
                code: EXIT_HOLDS,
                text: String::new(),
            })
        }
        None => Ok(Report { code: EXIT_HOLDS, text }),
    }
}

fn load(path: &str) -> Result<System, Error> {
    load_system(&read(path)?)
}

fn witness_json(vocab: &Vocabulary, w: &Witness) -> Value {
    match w {
        Witness::Lasso { lasso, position } => json!({
            "stem": lasso.stem.iter().map(|&e| vocab.format_event(e)).collect::<Vec<_>>(),
            "loop": lasso.cycle.iter().map(|&e| vocab.format_event(e)).collect::<Vec<_>>(),
            "position": position,
        }),
        Witness::Observation(obs) => json!({
            "stem": obs.iter().map(|o| vocab.format_bits(o.bits())).collect::<Vec<_>>(),
            "loop": Vec::<String>::new(),
            "position": obs.len(),
        }),
    }
}

fn witness_text(vocab: &Vocabulary, w: &Witness) -> String {
    match w {
        Witness::Lasso { lasso, position } => format!(
            "witness: {} ({})^w\nposition: {position}\n",
            vocab.format_word(&lasso.stem),
            vocab.format_word(&lasso.cycle)
        ),
        Witness::Observation(obs) => {
            let word: String = obs.iter().map(|o| vocab.format_bits(o.bits())).collect();
            format!("witness: {word}\nposition: {}\n", obs.len())
        }
    }
}

fn render(vocab: &Vocabulary, r: &CheckResult, as_json: bool) -> Report {
    let text = if as_json {
        let mut v = json!({ "result": r.holds });
        if let Some(w) = &r.witness {
            v["witness"] = witness_json(vocab, w);
        }
        format!("{v}\n")
    } else {
        let mut t = String::from(if r.holds { "holds\n" } else { "fails\n" });
        if let Some(w) = &r.witness {
            t.push_str(&witness_text(vocab, w));
        }
        t
    };
    Report {
        code: if r.holds { EXIT_HOLDS } else { EXIT_FAILS },
        text,
    }
}

fn agent_of(s: &System, name: &str) -> Result<AgentId, Error> {
    s.vocab.agent_id(name)
}

fn formula(text: &str) -> Result<Formula, Error> {
    parse_formula(text)
}

fn trace_text(path: &Option<String>, stdin: &mut dyn BufRead) -> Result<String, Error> {
    match path {
        Some(p) => read(p),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Input(format!("standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::False => EXIT_FAILS,
        Verdict::Infeasible => EXIT_INFEASIBLE,
        Verdict::True | Verdict::Unknown => EXIT_HOLDS,
    }
}

/// Streams verdicts line by line, flushing after each event.
fn run_stream(m: &RuntimeMonitor, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, Error> {
    let io = |e: std::io::Error| Error::Input(e.to_string());
    let mut session = m.session();
    let mut last = None;
    let mut line = String::new();
    let mut number = 0;
    loop {
        line.clear();
        if input.read_line(&mut line).map_err(io)? == 0 {
            break;
        }
        number += 1;
        let text = line.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let e = m.vocab.parse_event(text).map_err(|e| Error::Format {
            line: number,
            msg: e.to_string(),
        })?;
        let v = session.step(m.vocab.obs_event(m.agent, e))?;
        writeln!(out, "{v}").map_err(io)?;
        out.flush().map_err(io)?;
        last = Some(v);
    }
    Ok(last.map_or(EXIT_HOLDS, verdict_code))
}

fn execute(cmd: Command, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<Report, Error> {
    let limits = Limits::from_env()?;
    match cmd {
        Command::Check { sys, formula: f } => {
            let s = load(&sys.system)?;
            let r = model_check(&s, &formula(&f)?, &limits)?;
            Ok(render(&s.vocab, &r, sys.json))
        }
        Command::Diagnosable {
            sys,
            agent,
            error,
            delay,
            unbounded,
            negative,
            direct,
        } => {
            let s = load(&sys.system)?;
            let a = agent_of(&s, &agent)?;
            s.vocab.prop_index(&error)?;
            let r = if direct {
                check_p_diagnosable_direct(&s, a, &error, delay.unwrap_or(0), &limits)?
            } else {
                let kind = match (unbounded, negative, delay) {
                    (true, _, _) => PropertyKind::UnboundedPDiagnosable { agent, error },
                    (false, false, Some(delay)) => PropertyKind::PDiagnosable { delay, agent, error },
                    (false, true, Some(delay)) => PropertyKind::NDiagnosable { delay, agent, error },
                    (false, _, None) => return Err(Error::Input("either --delay or --unbounded is required".into())),
                };
                model_check(&s, &build_property_formula(&kind), &limits)?
            };
            Ok(render(&s.vocab, &r, sys.json))
        }
        Command::Codiagnosable {
            sys,
            agents,
            error,
            delay,
            negative,
        } => {
            let s = load(&sys.system)?;
            for a in &agents {
                agent_of(&s, a)?;
            }
            s.vocab.prop_index(&error)?;
            let kind = if negative {
                PropertyKind::NCodiagnosable { delay, agents, error }
            } else {
                PropertyKind::PCodiagnosable { delay, agents, error }
            };
            let r = model_check(&s, &build_property_formula(&kind), &limits)?;
            Ok(render(&s.vocab, &r, sys.json))
        }
        Command::Opaque {
            sys,
            agent,
            secret,
            two_sided,
        } => {
            let s = load(&sys.system)?;
            let a = agent_of(&s, &agent)?;
            let r = check_opacity(&s, a, &secret, two_sided, &limits)?;
            Ok(render(&s.vocab, &r, sys.json))
        }
        Command::Monitorable { sys, agent, formula: f } => {
            let s = load(&sys.system)?;
            let a = agent_of(&s, &agent)?;
            let r = check_monitorability(&s, a, &formula(&f)?, &limits)?;
            Ok(render(&s.vocab, &r, sys.json))
        }
        Command::Classify {
            sys,
            agent,
            formula: f,
            trace,
        } => {
            let s = load(&sys.system)?;
            let a = agent_of(&s, &agent)?;
            let u = parse_obs_trace(&s.vocab, a, &trace_text(&trace, stdin)?)?;
            let class = classify_prefix(&s, a, &formula(&f)?, &u, &limits)?;
            let code = match class {
                PrefixClass::Bad => EXIT_FAILS,
                PrefixClass::Infeasible => EXIT_INFEASIBLE,
                PrefixClass::Good | PrefixClass::Ugly | PrefixClass::Inconclusive => EXIT_HOLDS,
            };
            let text = if sys.json {
                format!("{}\n", json!({ "result": class == PrefixClass::Good, "class": class.to_string() }))
            } else {
                format!("{class}\n")
            };
            Ok(Report { code, text })
        }
        Command::Synth {
            system,
            agent,
            formula: f,
            diagnoser,
            output,
        } => {
            let s = load(&system)?;
            let a = agent_of(&s, &agent)?;
            let m = match (f, diagnoser) {
                (_, Some(e)) => diagnoser_machine(&s, &synthesize_diagnoser(&s, a, &e, &limits)?, &e),
                (Some(f), None) => synthesize_monitor(&s, a, &formula(&f)?, &limits)?,
                (None, None) => return Err(Error::Input("either --formula or --diagnoser is required".into())),
            };
            write_out(&output, print_machine(&m))
        }
        Command::Run { monitor, trace, json: as_json } => {
            let m = load_machine(&read(&monitor)?)?;
            if as_json {
                let text = trace_text(&trace, stdin)?;
                let obs = parse_obs_trace(&m.vocab, m.agent, &text)?;
                let verdicts = m.run(&obs)?;
                let last = verdicts.last().copied();
                let v = json!({
                    "result": last.map_or(true, |v| v == Verdict::True),
                    "verdicts": verdicts.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                });
                return Ok(Report {
                    code: last.map_or(EXIT_HOLDS, verdict_code),
                    text: format!("{v}\n"),
                });
            }
            let code = match &trace {
                Some(p) => {
                    let text = read(p)?;
                    run_stream(&m, &mut text.as_bytes(), stdout)?
                }
                None => run_stream(&m, stdin, stdout)?,
            };
            Ok(Report { code, text: String::new() })
        }
        Command::GenOpacityHard { nfa, output } => {
            let n = load_nfa(&read(&nfa)?)?;
            write_out(&output, print_system(&build_opacity_hardness_instance(&n)?))
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn dispatch<S: AsRef<str>>(args: &[S], stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args.iter().map(|a| a.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_HOLDS };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, stdin, stdout) {
        Ok(r) => {
            let _ = stdout.write_all(r.text.as_bytes());
            r.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
