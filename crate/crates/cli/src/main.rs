use std::collections::HashSet;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use garside::braid::{
    parse_element, random_word, simple_to_string, word_from_element, BraidGroup, Permutation,
};
use garside::oracle::{self, DEFAULT_SIMPLE_LIMIT};
use garside::sliding::{cyclic_sliding, minimal_sss_conjugator, slide_to_first_repetition};
use garside::{Element, GarsideContext, GarsideError, RunStats, Solver};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

type Ctx = Arc<GarsideContext<BraidGroup>>;
type Braid = Element<BraidGroup>;

/// Normal forms, cyclic sliding and conjugacy in braid groups.
///
/// Words are whitespace-separated generator indices, negative for inverses,
/// optionally led by `D` or `D^k` for a power of the half twist. Parentheses
/// and `.` may be used to group factors and are otherwise ignored.
#[derive(Parser)]
#[command(name = "garside", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Left normal form.
    Nf(Single),
    /// Apply cyclic sliding.
    Slide {
        #[command(flatten)]
        input: Single,
        /// Number of slidings to apply.
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// The sliding circuit reached from the input.
    Circuit(Single),
    /// All elements of the set of sliding circuits.
    Sc(Single),
    /// The sliding circuits graph.
    Scg {
        #[command(flatten)]
        input: Single,
        /// Emit the graph in DOT format.
        #[arg(long)]
        dot: bool,
    },
    /// Decide conjugacy and print a conjugating element.
    Conj {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Cross-check against the exhaustive reference solver.
        #[arg(long)]
        oracle: bool,
    },
    /// Instrumentation counters of a full graph computation.
    Stats(Single),
    /// Compare arrows and sliding circuits against brute force.
    OracleCheck(Single),
}

#[derive(Args)]
struct Common {
    /// Number of strands.
    #[arg(short = 'n')]
    strands: usize,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Single {
    #[command(flatten)]
    common: Common,
    /// Input word; a random word is generated when omitted.
    #[arg(allow_hyphen_values = true)]
    word: Option<String>,
    /// Seed for the random word.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Length of the random word.
    #[arg(long, default_value_t = 10)]
    length: usize,
}

#[derive(Default, Serialize)]
struct Stats {
    #[serde(rename = "T")]
    t: usize,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "R_max")]
    r_max: usize,
    sc_size: usize,
    contract_calls: u64,
}

impl Stats {
    fn from_run(s: &RunStats) -> Self {
        Stats {
            t: s.trajectory_entry,
            n: s.circuit_length,
            r_max: s.transport_repetition,
            sc_size: s.sc_size,
            contract_calls: s.contract_calls,
        }
    }
}

#[derive(Serialize)]
struct Report {
    input: Vec<String>,
    n: usize,
    result: Value,
    witness: Option<String>,
    stats: Stats,
}

struct Outcome {
    report: Report,
    text: String,
    json: bool,
    exit: u8,
}

fn load(single: &Single) -> garside::Result<(Ctx, String, Braid)> {
    let ctx = BraidGroup::context(single.common.strands)?;
    let text = match &single.word {
        Some(w) => w.clone(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(single.seed);
            let word = random_word(&mut rng, single.common.strands, single.length);
            word.letters
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        }
    };
    let x = parse_element(&ctx, &text)?;
    Ok((ctx, text, x))
}

fn words(xs: &[Braid]) -> Vec<String> {
    xs.iter().map(word_from_element).collect()
}

fn outcome(common: &Common, input: Vec<String>, result: Value, text: String) -> Outcome {
    Outcome {
        report: Report {
            input,
            n: common.strands,
            result,
            witness: None,
            stats: Stats::default(),
        },
        text,
        json: common.json,
        exit: 0,
    }
}

fn run(command: &Command) -> garside::Result<Outcome> {
    match command {
        Command::Nf(single) => {
            let (ctx, input, x) = load(single)?;
            let nf = word_from_element(&x);
            let mut out = outcome(&single.common, vec![input], json!(nf), nf);
            out.report.stats.contract_calls = ctx.contract_calls();
            Ok(out)
        }
        Command::Slide {
            input: single,
            steps,
        } => {
            let (ctx, input, x) = load(single)?;
            let mut trail = vec![x];
            for _ in 0..*steps {
                trail.push(cyclic_sliding(trail.last().expect("nonempty")));
            }
            let trail = words(&trail);
            let text = trail.join("\n");
            let last = trail.last().cloned().unwrap_or_default();
            let mut out = outcome(&single.common, vec![input], json!(last), text);
            out.report.stats.contract_calls = ctx.contract_calls();
            Ok(out)
        }
        Command::Circuit(single) => {
            let (ctx, input, x) = load(single)?;
            let t = slide_to_first_repetition(&x);
            let circuit = words(&t.elements()[t.entry_index()..]);
            let text = format!(
                "entry {}\nperiod {}\n{}",
                t.entry_index(),
                t.period(),
                circuit.join("\n")
            );
            let result =
                json!({ "entry": t.entry_index(), "period": t.period(), "circuit": circuit });
            let mut out = outcome(&single.common, vec![input], result, text);
            out.report.stats.t = t.entry_index();
            out.report.stats.n = t.period();
            out.report.stats.contract_calls = ctx.contract_calls();
            Ok(out)
        }
        Command::Sc(single) => {
            let (ctx, input, x) = load(single)?;
            let (graph, stats) = Solver::new(&ctx).enumerate_sc(&x)?;
            let vertices = words(graph.vertices());
            let text = vertices.join("\n");
            let mut out = outcome(&single.common, vec![input], json!(vertices), text);
            out.report.stats = Stats::from_run(&stats);
            Ok(out)
        }
        Command::Scg { input: single, dot } => {
            let (ctx, input, x) = load(single)?;
            let (graph, stats) = Solver::new(&ctx).enumerate_sc(&x)?;
            let vertices = words(graph.vertices());
            let arrows: Vec<Value> = graph
                .arrows()
                .iter()
                .map(|a| {
                    json!({
                        "source": a.source,
                        "target": a.target,
                        "label": simple_to_string(&ctx, &a.label),
                    })
                })
                .collect();
            let text = if *dot {
                graph_dot(&ctx, &vertices, graph.arrows())
            } else {
                graph_text(&ctx, &vertices, graph.arrows())
            };
            let result = json!({ "vertices": vertices, "arrows": arrows });
            let mut out = outcome(&single.common, vec![input], result, text);
            out.report.stats = Stats::from_run(&stats);
            Ok(out)
        }
        Command::Conj {
            common,
            x,
            y,
            oracle,
        } => {
            let ctx = BraidGroup::context(common.strands)?;
            let xe = parse_element(&ctx, x)?;
            let ye = parse_element(&ctx, y)?;
            let solver = Solver::new(&ctx);
            let r = solver.solve_conjugacy(&xe, &ye)?;
            if *oracle {
                let reference = solver.naive_solve(&xe, &ye)?;
                if reference.conjugate != r.conjugate {
                    return Err(GarsideError::InternalInvariant(
                        "reference solver disagrees".into(),
                    ));
                }
            }
            let witness = r.witness.as_ref().map(word_from_element);
            let text = match &witness {
                Some(w) => format!("conjugate\nwitness {w}"),
                None => "not conjugate".to_string(),
            };
            let mut out = outcome(common, vec![x.clone(), y.clone()], json!(r.conjugate), text);
            out.report.witness = witness;
            out.report.stats = Stats::from_run(&r.stats);
            out.exit = if r.conjugate { 0 } else { 1 };
            Ok(out)
        }
        Command::Stats(single) => {
            let (ctx, input, x) = load(single)?;
            let (_, s) = Solver::new(&ctx).enumerate_sc(&x)?;
            let result = json!({
                "trajectory_entry": s.trajectory_entry,
                "circuit_length": s.circuit_length,
                "transport_repetition": s.transport_repetition,
                "pullback_repetition": s.pullback_repetition,
                "sc_size": s.sc_size,
                "arrows": s.arrows,
                "contract_calls": s.contract_calls,
            });
            let text = format!(
                "T {}\nN {}\nR_max {}\npullback repetition {}\nsc size {}\narrows {}\ncontract calls {}",
                s.trajectory_entry,
                s.circuit_length,
                s.transport_repetition,
                s.pullback_repetition,
                s.sc_size,
                s.arrows,
                s.contract_calls
            );
            let mut out = outcome(&single.common, vec![input], result, text);
            out.report.stats = Stats::from_run(&s);
            Ok(out)
        }
        Command::OracleCheck(single) => {
            let (ctx, input, x) = load(single)?;
            let (vertices, arrows) = oracle_check(&ctx, &x)?;
            let text = format!("ok: {vertices} vertices, {arrows} arrows match brute force");
            let result = json!({ "vertices": vertices, "arrows": arrows });
            let mut out = outcome(&single.common, vec![input], result, text);
            out.report.stats.sc_size = vertices;
            out.report.stats.contract_calls = ctx.contract_calls();
            Ok(out)
        }
    }
}

fn oracle_check(ctx: &Ctx, x: &Braid) -> garside::Result<(usize, usize)> {
    let simples = oracle::enumerate_simples(ctx, DEFAULT_SIMPLE_LIMIT)?;
    let solver = Solver::new(ctx);
    let (graph, _) = solver.enumerate_sc(x)?;
    let fast: HashSet<&Braid> = graph.vertices().iter().collect();
    let naive = solver.naive_enumerate_sc(x)?;
    if fast != naive.iter().collect::<HashSet<_>>() {
        return Err(GarsideError::InternalInvariant(
            "sliding circuits differ from brute force".into(),
        ));
    }
    let mut arrows = 0;
    for v in graph.vertices() {
        let circuit = solver.circuit(v)?;
        let mine: HashSet<Permutation> = solver.arrows_at(&circuit)?.into_iter().collect();
        let brute: HashSet<Permutation> = oracle::arrows(&simples, v).into_iter().collect();
        if mine != brute {
            return Err(GarsideError::InternalInvariant(format!(
                "arrows at {} differ from brute force",
                word_from_element(v)
            )));
        }
        arrows += mine.len();
    }
    let entry = slide_to_first_repetition(x).entry().clone();
    let rho = minimal_sss_conjugator(x, entry.inf(), entry.sup(), None)?;
    if let Ok(m) = oracle::minimal_simple_conjugator(&simples, x, entry.inf(), entry.sup()) {
        if rho != Element::from_simple(ctx, &m) {
            return Err(GarsideError::InternalInvariant(
                "minimal super summit conjugator differs from brute force".into(),
            ));
        }
    }
    Ok((graph.len(), arrows))
}

fn graph_text(
    ctx: &Ctx,
    vertices: &[String],
    arrows: &[garside::conjugacy::Arrow<Permutation>],
) -> String {
    let mut out = String::new();
    for (i, v) in vertices.iter().enumerate() {
        writeln!(out, "v{i}: {v}").expect("write to string");
    }
    for a in arrows {
        writeln!(
            out,
            "v{} -> v{} by ({})",
            a.source,
            a.target,
            simple_to_string(ctx, &a.label)
        )
        .expect("write to string");
    }
    out.trim_end().to_string()
}

fn graph_dot(
    ctx: &Ctx,
    vertices: &[String],
    arrows: &[garside::conjugacy::Arrow<Permutation>],
) -> String {
    let mut out = String::from("digraph scg {\n");
    for (i, v) in vertices.iter().enumerate() {
        writeln!(out, "  {i} [label=\"{v}\"];").expect("write to string");
    }
    for a in arrows {
        writeln!(
            out,
            "  {} -> {} [label=\"{}\"];",
            a.source,
            a.target,
            simple_to_string(ctx, &a.label)
        )
        .expect("write to string");
    }
    out.push('}');
    out
}

fn exit_code(e: &GarsideError) -> u8 {
    match e {
        GarsideError::InternalInvariant(_) | GarsideError::ContextMismatch => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if out.json {
                println!(
                    "{}",
                    serde_json::to_string(&out.report).expect("report serializes")
                );
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
