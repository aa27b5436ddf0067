use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use equidist::bounds::best_bound;
use equidist::codes::{q_intersection_doubled, Code, Equidistance, Word};
use equidist::constructions::{
    kernel_sunflower_code, projective_plane_family, simplex_linear_code, sunflower_code,
};
use equidist::delta::{detect_delta_q, deza_q_threshold, find_kernel, psi_family};
use equidist::embeddings::{gram_exact, theta_embed};
use equidist::search::{max_equidistant, max_equidistant_canonical, DEFAULT_BUDGET};

const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "equidist",
    version,
    about = "Equidistant codes in q-ary Hamming space: construct, verify, bound, search, embed, delta",
    after_help = "JSON goes to stdout, a human summary to stderr. Exit codes: 0 ok, 2 invalid input, 3 budget exhausted, 4 internal inconsistency."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a named code family and print it as a JSON code file
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Alphabet size (a prime power where the kind needs a field)
        #[arg(long)]
        q: u32,
        /// Dimension, for --kind simplex
        #[arg(long)]
        k: Option<u32>,
        /// Length, for the sunflower kinds
        #[arg(long)]
        n: Option<usize>,
        /// Distance, for the sunflower kinds
        #[arg(long)]
        d: Option<usize>,
    },
    /// Read a JSON code file and report its distance structure
    Verify { file: PathBuf },
    /// Evaluate every size bound at (n, q, d)
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value = "json")]
        output: OutputFormat,
    },
    /// Branch-and-bound maximum equidistant code at (n, q, d)
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        d: usize,
        /// Node budget; on exhaustion the incumbent is reported and the exit code is 3
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Return the lexicographically least optimal witness
        #[arg(long)]
        canonical: bool,
        /// Write the witness code to this JSON file
        #[arg(long, value_name = "FILE")]
        emit_witness: Option<PathBuf>,
    },
    /// Exact Gram matrix of the unit-sphere embedding of a code file
    Embed {
        file: PathBuf,
        /// Also emit floating-point coordinates
        #[arg(long)]
        points: bool,
    },
    /// Sunflower structure report for a constant-weight code file (a zero word, if present, is dropped first)
    Delta { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Simplex,
    Sunflower,
    KernelSunflower,
    PgPlane,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

fn fail(exit: u8, msg: impl Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(exit)
}

fn read_code(path: &Path) -> Result<Code, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Code::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Construct { kind, q, k, n, d } => cmd_construct(kind, q, k, n, d),
        Cmd::Verify { file } => cmd_verify(&file),
        Cmd::Bound { n, q, d, output } => cmd_bound(n, q, d, output),
        Cmd::Search { n, q, d, budget, canonical, emit_witness } => {
            cmd_search(n, q, d, budget, canonical, emit_witness.as_deref())
        }
        Cmd::Embed { file, points } => cmd_embed(&file, points),
        Cmd::Delta { file } => cmd_delta(&file),
    }
}

fn cmd_construct(kind: Kind, q: u32, k: Option<u32>, n: Option<usize>, d: Option<usize>) -> ExitCode {
    let (code, expected, label) = match kind {
        Kind::Simplex => {
            let Some(k) = k else {
                return fail(EXIT_INVALID, "--k is required for --kind simplex");
            };
            match simplex_linear_code(q, k) {
                Ok(c) => {
                    let d = (q as u64).pow(k.saturating_sub(1)) as usize;
                    (c, d, format!("simplex q={q} k={k}"))
                }
                Err(e) => return fail(EXIT_INVALID, e),
            }
        }
        Kind::Sunflower | Kind::KernelSunflower => {
            let (Some(n), Some(d)) = (n, d) else {
                return fail(EXIT_INVALID, "--n and --d are required for the sunflower kinds");
            };
            let built = match kind {
                Kind::Sunflower => sunflower_code(n, d, q).map(|c| (c, "sunflower")),
                _ => kernel_sunflower_code(n, d, q).map(|c| (c, "kernel-sunflower")),
            };
            match built {
                Ok((c, name)) => (c, d, format!("{name} n={n} d={d} q={q}")),
                Err(e) => return fail(EXIT_INVALID, e),
            }
        }
        Kind::PgPlane => match projective_plane_family(q) {
            Ok(fam) => {
                let ground = fam.ground_size();
                let words: Vec<Word> = fam
                    .sets()
                    .iter()
                    .map(|s| {
                        let mut sym = vec![0u32; ground];
                        for &p in s {
                            sym[p - 1] = 1;
                        }
                        Word::new(2, sym).unwrap()
                    })
                    .collect();
                match Code::new(2, ground, words) {
                    Ok(c) => (c, 2 * q as usize, format!("pg-plane q={q}")),
                    Err(e) => return fail(EXIT_INTERNAL, e),
                }
            }
            Err(e) => return fail(EXIT_INVALID, e),
        },
    };
    if code.is_equidistant().distance() != Some(expected) {
        return fail(EXIT_INTERNAL, format!("{label}: failed self-verification at d={expected}"));
    }
    println!("{}", code.to_json());
    eprintln!("{label}: n={}, {} words, equidistant d={expected}", code.n(), code.size());
    ExitCode::SUCCESS
}

fn cmd_verify(file: &Path) -> ExitCode {
    let code = match read_code(file) {
        Ok(c) => c,
        Err(m) => return fail(EXIT_INVALID, m),
    };
    let eq = code.is_equidistant();
    let profile = code.distance_profile();
    let payload = json!({
        "q": code.q(),
        "n": code.n(),
        "size": code.size(),
        "equidistant": !matches!(eq, Equidistance::Not),
        "degenerate": matches!(eq, Equidistance::Degenerate),
        "distance": eq.distance(),
        "distances": profile.distances(),
        "s": profile.s(),
    });
    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    match eq {
        Equidistance::Equidistant(d) => {
            eprintln!("{} words of length {}: equidistant d={d}", code.size(), code.n())
        }
        Equidistance::Degenerate => {
            eprintln!("{} words of length {}: degenerate (no pairs)", code.size(), code.n())
        }
        Equidistance::Not => eprintln!(
            "{} words of length {}: not equidistant, {} distinct distances {:?}",
            code.size(),
            code.n(),
            profile.s(),
            profile.distances()
        ),
    }
    ExitCode::SUCCESS
}

fn cmd_bound(n: u64, q: u32, d: u64, output: OutputFormat) -> ExitCode {
    let best = match best_bound(n, q, d) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    match output {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&best).unwrap()),
        OutputFormat::Csv => {
            println!("name,value,applicable,condition");
            for r in &best.reports {
                println!(
                    "{},{},{},\"{}\"",
                    r.name,
                    r.value,
                    r.applicable,
                    r.condition.replace('"', "\"\"")
                );
            }
        }
    }
    eprintln!("minimum {} at n={n} q={q} d={d}", best.minimum);
    ExitCode::SUCCESS
}

fn cmd_search(
    n: usize,
    q: u32,
    d: usize,
    budget: u64,
    canonical: bool,
    emit_witness: Option<&Path>,
) -> ExitCode {
    let run = if canonical {
        max_equidistant_canonical(n, q, d, budget)
    } else {
        max_equidistant(n, q, d, budget)
    };
    let r = match run {
        Ok(r) => r,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    if let Some(path) = emit_witness {
        if let Err(e) = std::fs::write(path, r.witness.to_json() + "\n") {
            return fail(EXIT_INVALID, format!("{}: {e}", path.display()));
        }
    }
    let payload = json!({
        "n": n,
        "q": q,
        "d": d,
        "optimum": r.optimum,
        "witness_size": r.witness.size(),
        "explored_nodes": r.explored_nodes,
        "proven_optimal": r.proven_optimal,
        "budget_exhausted": r.budget_exhausted,
        "canonical": canonical,
    });
    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    if r.proven_optimal {
        eprintln!("optimum {} ({} nodes, proven)", r.optimum, r.explored_nodes);
        ExitCode::SUCCESS
    } else {
        eprintln!(
            "incumbent {} ({} nodes, budget {budget} exhausted)",
            r.optimum, r.explored_nodes
        );
        ExitCode::from(EXIT_BUDGET)
    }
}

fn cmd_embed(file: &Path, points: bool) -> ExitCode {
    let code = match read_code(file) {
        Ok(c) => c,
        Err(m) => return fail(EXIT_INVALID, m),
    };
    let gram = gram_exact(&code);
    let m = code.size();
    let entries: Vec<Vec<String>> =
        (0..m).map(|i| (0..m).map(|j| gram.get(i, j).to_string()).collect()).collect();
    let mut payload = json!({ "m": m, "gram": entries });
    let mut note = format!("gram {m}x{m}, exact entries");
    if points {
        match theta_embed(&code) {
            Ok(s) => {
                note.push_str(&format!(", points in dimension {}", s.dim()));
                payload["dim"] = json!(s.dim());
                payload["points"] = json!(s.points());
            }
            Err(e) => return fail(EXIT_INVALID, e),
        }
    }
    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    eprintln!("{note}");
    ExitCode::SUCCESS
}

fn cmd_delta(file: &Path) -> ExitCode {
    let mut code = match read_code(file) {
        Ok(c) => c,
        Err(m) => return fail(EXIT_INVALID, m),
    };
    let zero = Word::zero(code.q(), code.n()).unwrap();
    if code.contains(&zero) {
        let rest: Vec<Word> =
            code.words().iter().filter(|w| w.weight() > 0).cloned().collect();
        code = Code::new(code.q(), code.n(), rest).unwrap();
    }
    if code.size() < 2 {
        return fail(EXIT_INVALID, "need at least two words to read off (k, l2) parameters");
    }
    let cert = match detect_delta_q(&code) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    let words = code.words();
    let k = words[0].weight();
    let l2 = q_intersection_doubled(&words[0], &words[1]).unwrap();
    let threshold = match deza_q_threshold(k, l2, code.q()) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    let binary_kernel = find_kernel(&psi_family(&code)).map(|c| c.kernel);
    let qary_kernel = cert.as_ref().map(|c| c.kernel().to_vec());
    let payload = json!({
        "family": { "k": k, "l2": l2 },
        "binary_kernel": binary_kernel,
        "qary_kernel": qary_kernel,
        "is_delta_q": cert.is_some(),
        "threshold": threshold,
    });
    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    eprintln!(
        "{} words, k={k}, l2={l2}: {}; certification threshold {threshold}",
        code.size(),
        if cert.is_some() { "q-ary sunflower" } else { "not a q-ary sunflower" }
    );
    ExitCode::SUCCESS
}
