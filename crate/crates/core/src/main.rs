use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use polydecomp::appendix_comb::{classify_conclusion, enumerate_systems, rh_identity_check};
use polydecomp::chebyshev::chebyshev;
use polydecomp::decompose::{complete_decomposition, Decomposition};
use polydecomp::enumerate::{all_classes, corpus, CORPUS_SEED, CORPUS_SIZE};
use polydecomp::forms::{detect_cyclic, detect_dihedral, detect_twist_inner, detect_twist_outer, FormReport};
use polydecomp::io_cli::{format_poly, parse_poly, ToJson};
use polydecomp::iterates::{iterates_bound_check, precise_iterates_check, DEFAULT_SIZE_CAP};
use polydecomp::ritt::{classify_ritt, ritt_neighbors_of_pair};
use polydecomp::{Error, Poly, Result};

/// Functional decomposition of polynomials over the rationals.
///
/// Expressions use `+ - * ^`, `T(n)` for Chebyshev polynomials and a
/// whitespace-delimited `o` for composition, e.g. "T(3) o (2*T(2))".
#[derive(Parser)]
#[command(name = "polydecomp", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for commands that generate a corpus.
    #[arg(long, global = true, default_value_t = CORPUS_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand an expression to its coefficients.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// One complete decomposition.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Every equivalence class of complete decompositions.
    Classes {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Cyclic, dihedral or twisted normal form, first match wins.
    Recognize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Classify a solution of a∘b = c∘d.
    Ritt2 {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Pairs (c, d) with c∘d = u∘v and the degrees swapped.
    Neighbors {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Check the splits of the iterates f^(2) .. f^(e).
    IterateCheck {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long = "e")]
        e: usize,
        /// Largest iterate degree the check may build.
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
    },
    /// Coefficients of the Chebyshev polynomial T_n.
    Cheb { n: usize },
    /// Enumerate and classify multiset systems for coprime m, n.
    LemmaA { m: usize, n: usize, k_max: usize },
    /// Print the seeded corpus of random composites.
    Corpus {
        #[arg(long, default_value_t = CORPUS_SIZE)]
        count: usize,
    },
}

/// Command output in both renderings.
struct Output {
    text: String,
    json: Vec<Value>,
}

impl Output {
    fn one(text: String, json: Value) -> Self {
        Output { text, json: vec![json] }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command, cli.seed) {
        Ok(out) => {
            if cli.json {
                for v in out.json {
                    println!("{v}");
                }
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                println!("{}", e.to_json());
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: &Command, seed: u64) -> Result<Output> {
    match cmd {
        Command::Eval { expr } => {
            let f = parse_poly(expr)?;
            Ok(Output::one(format_poly(&f), f.to_json()))
        }
        Command::Decompose { expr } => {
            let d = complete_decomposition(&parse_poly(expr)?)?;
            Ok(Output::one(render_decomposition(&d), d.to_json()))
        }
        Command::Classes { expr } => {
            let cs = all_classes(&parse_poly(expr)?)?;
            let text = cs.iter().map(render_decomposition).collect::<Vec<_>>().join("\n");
            Ok(Output::one(text, cs.to_json()))
        }
        Command::Recognize { expr } => {
            let r = recognize(&parse_poly(expr)?)?;
            Ok(Output::one(render_form(&r), r.to_json()))
        }
        Command::Ritt2 { a, b, c, d } => {
            let [a, b, c, d] = [a, b, c, d].map(|s| parse_poly(s));
            let r = classify_ritt(&a?, &b?, &c?, &d?)?;
            let text = format!(
                "{}{}\nouter: {}\ninner: {}",
                r.kind_name(),
                if r.swapped { " (swapped)" } else { "" },
                r.outer,
                r.inner
            );
            Ok(Output::one(text, r.to_json()))
        }
        Command::Neighbors { u, v } => {
            let ns = ritt_neighbors_of_pair(&parse_poly(u)?, &parse_poly(v)?)?;
            let text = ns.iter().map(|(c, d)| format!("({c}) o ({d})")).collect::<Vec<_>>().join("\n");
            let json = ns.iter().map(|(c, d)| json!({ "c": c.to_json(), "d": d.to_json() })).collect();
            Ok(Output::one(text, Value::Array(json)))
        }
        Command::IterateCheck { expr, e, cap } => {
            let f = parse_poly(expr)?;
            let bound = iterates_bound_check(&f, *e, *cap)?;
            let precise = precise_iterates_check(&f, *e, *cap)?;
            let text = format!(
                "splits checked: {}\nmax k: {}\nbound holds: {}\nprecise clauses hold: {}{}",
                bound.splits_checked,
                bound.max_k,
                bound.holds(),
                precise.holds(),
                precise.violations().iter().map(|v| format!("\n  violation: {v}")).collect::<String>()
            );
            let json = json!({ "bound": bound.to_json(), "precise": precise.to_json() });
            Ok(Output::one(text, json))
        }
        Command::Cheb { n } => {
            let t = chebyshev(*n);
            Ok(Output::one(format_poly(&t), t.to_json()))
        }
        Command::LemmaA { m, n, k_max } => lemma_a(*m, *n, *k_max),
        Command::Corpus { count } => {
            let chains = corpus(seed, *count)?;
            let text = chains.iter().map(|c| render_chain(c)).collect::<Vec<_>>().join("\n");
            let json = chains.iter().map(|c| c.to_json()).collect();
            Ok(Output { text, json })
        }
    }
}

/// Cyclic, then dihedral, then inner twist, then outer twist for each
/// exponent up to the degree.
fn recognize(f: &Poly) -> Result<FormReport> {
    if f.deg() < 2 {
        return Err(Error::degree("recognition needs degree at least 2"));
    }
    let r = detect_cyclic(f);
    if !r.is_none() {
        return Ok(r);
    }
    for r in [detect_dihedral(f)?, detect_twist_inner(f)?] {
        if !r.is_none() {
            return Ok(r);
        }
    }
    for n in 2..=f.deg() {
        let r = detect_twist_outer(f, n)?;
        if !r.is_none() {
            return Ok(r);
        }
    }
    Ok(FormReport::None)
}

fn lemma_a(m: usize, n: usize, k_max: usize) -> Result<Output> {
    let systems = enumerate_systems(m, n, k_max)?;
    let mut json = Vec::with_capacity(systems.len());
    let mut counts = [0usize; 4];
    let mut rh_failures = 0;
    for sys in &systems {
        let tag = classify_conclusion(sys)?;
        let rh = rh_identity_check(sys);
        counts[tag.tag as usize] += 1;
        rh_failures += usize::from(!rh);
        json.push(json!({ "system": sys.to_json(), "conclusion": tag.to_json(), "rh_identity": rh }));
    }
    let text = format!(
        "systems: {}\nC1: {}\nC2: {}\nC3: {}\nviolations: {}\nidentity failures: {}",
        systems.len(),
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        rh_failures
    );
    Ok(Output { text, json })
}

fn render_chain(chain: &[Poly]) -> String {
    chain.iter().map(|p| format!("({p})")).collect::<Vec<_>>().join(" o ")
}

fn render_decomposition(d: &Decomposition) -> String {
    let mut parts = vec![d.leading.to_poly()];
    parts.extend(d.factors.iter().cloned());
    render_chain(&parts)
}

fn render_form(r: &FormReport) -> String {
    match r {
        FormReport::Cyclic { n, witness: w } => {
            format!("cyclic n={n}: {} * (X - {})^{n} + {}", w.c, w.beta, w.v)
        }
        FormReport::Dihedral { n, witness: w } => format!(
            "dihedral n={n}: beta={} alpha^2={} p*alpha^(n mod 2)={} q={}",
            w.beta, w.alpha_sq, w.p_alpha, w.q
        ),
        FormReport::TwistInner { s, n, witness: w } => {
            format!("twist_inner s={s} n={n}: h = {}", w.h)
        }
        FormReport::TwistOuter { s, n, witness: w } => format!(
            "twist_outer s={s} n={n}: f - {} = {} * (X - {})^{s} * ({})^{n}",
            w.c0, w.scale, w.beta, w.h
        ),
        FormReport::None => "none".to_string(),
    }
}
