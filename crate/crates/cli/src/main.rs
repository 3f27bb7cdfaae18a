//! symtope: exact invariants of symmetric (co)homology polytopes.
//!
//! Subcommands: analyze, compare, corpus, sweep-subcomplexes. Exit codes:
//! 0 success, 1 usage or input error, 2 a requested field hit a size guard.

mod report;

use std::process::ExitCode;

use serde::Deserialize;
use symtope_core::complex::{build_complex, SimplicialComplex};
use symtope_core::fixtures;

use report::{Limits, Requests};

const USAGE: &str = "\
symtope — exact invariants of symmetric (co)homology polytopes

USAGE:
  symtope analyze <file|builtin:NAME> [--which homology|cohomology|both]
                  (--which defaults to homology)
                  [--hstar] [--hilbert] [--groebner] [--triangulate] [--facets]
                  [--dump-boundary] [--json|--table] [--seed N]
                  [--max-minors N] [--max-points N] [--max-cells N]
  symtope compare <file|builtin:NAME> <file|builtin:NAME> [--json|--table]
  symtope corpus list
  symtope sweep-subcomplexes <file|builtin:NAME> [--json|--table]

Complexes load from JSON files {\"name\": string, \"facets\": [[int,...],...]}
or from the built-in corpus via builtin:NAME (see `symtope corpus list`).
Env: SYMTOPE_THREADS caps enumeration parallelism.";

#[derive(Deserialize)]
struct ComplexFile {
    name: String,
    facets: Vec<Vec<i64>>,
}

fn load_complex(spec: &str) -> Result<(String, SimplicialComplex), String> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let c = fixtures::by_name(name)
            .ok_or_else(|| format!("unknown builtin `{name}` (try `symtope corpus list`)"))?;
        return Ok((name.to_string(), c));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))?;
    let file: ComplexFile =
        serde_json::from_str(&text).map_err(|e| format!("malformed JSON in {spec}: {e}"))?;
    let c = build_complex(&file.facets).map_err(|e| format!("invalid complex in {spec}: {e}"))?;
    Ok((file.name, c))
}

struct Args {
    positional: Vec<String>,
    which: String,
    req: Requests,
    json: bool,
    limits: Limits,
}

fn parse_args(argv: &[String]) -> Result<Args, String> {
    let mut args = Args {
        positional: Vec::new(),
        which: "homology".into(),
        req: Requests {
            hstar: false,
            hilbert: false,
            groebner: false,
            triangulate: false,
            facets: false,
            dump_boundary: false,
        },
        json: false,
        limits: Limits::default(),
    };
    let mut it = argv.iter().peekable();
    while let Some(a) = it.next() {
        match a.as_str() {
            "--which" => {
                let v = it.next().ok_or("--which needs a value")?;
                if !["homology", "cohomology", "both"].contains(&v.as_str()) {
                    return Err(format!("bad --which value `{v}`"));
                }
                args.which = v.clone();
            }
            "--hstar" => args.req.hstar = true,
            "--hilbert" => args.req.hilbert = true,
            "--groebner" => args.req.groebner = true,
            "--triangulate" => args.req.triangulate = true,
            "--facets" => args.req.facets = true,
            "--dump-boundary" => args.req.dump_boundary = true,
            "--json" => args.json = true,
            "--table" => args.json = false,
            "--seed" => {
                args.limits.seed =
                    it.next().ok_or("--seed needs a value")?.parse().map_err(|_| "bad --seed")?;
            }
            "--max-minors" => {
                args.limits.max_minors = it
                    .next()
                    .ok_or("--max-minors needs a value")?
                    .parse()
                    .map_err(|_| "bad --max-minors")?;
            }
            "--max-points" => {
                args.limits.max_points = it
                    .next()
                    .ok_or("--max-points needs a value")?
                    .parse()
                    .map_err(|_| "bad --max-points")?;
            }
            "--max-cells" => {
                args.limits.max_cells = it
                    .next()
                    .ok_or("--max-cells needs a value")?
                    .parse()
                    .map_err(|_| "bad --max-cells")?;
            }
            other if other.starts_with("--") => return Err(format!("unknown flag `{other}`")),
            other => args.positional.push(other.to_string()),
        }
    }
    Ok(args)
}

/// Writes to stdout, treating a closed pipe as a clean exit.
fn print_out(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn emit(v: &serde_json::Value, json: bool) {
    if json {
        print_out(&serde_json::to_string_pretty(v).expect("serializable report"));
        print_out("\n");
    } else {
        print_out(&report::render_table(v));
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let Some(cmd) = argv.first() else {
        eprintln!("{USAGE}");
        return ExitCode::from(1);
    };
    let rest: Vec<String> = argv[1..].to_vec();
    match cmd.as_str() {
        "analyze" => {
            let args = match parse_args(&rest) {
                Ok(a) => a,
                Err(e) => {
                    eprintln!("error: {e}\n\n{USAGE}");
                    return ExitCode::from(1);
                }
            };
            if args.positional.len() != 1 {
                eprintln!("error: analyze takes exactly one complex\n\n{USAGE}");
                return ExitCode::from(1);
            }
            let (name, delta) = match load_complex(&args.positional[0]) {
                Ok(x) => x,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let mut requested_skips = Vec::new();
            let rep = report::analyze(
                &name,
                &delta,
                &args.which,
                args.req,
                &args.limits,
                &mut requested_skips,
            );
            emit(&rep, args.json);
            if requested_skips.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("guard exceeded on requested fields: {}", requested_skips.join(", "));
                ExitCode::from(2)
            }
        }
        "compare" => {
            let args = match parse_args(&rest) {
                Ok(a) => a,
                Err(e) => {
                    eprintln!("error: {e}\n\n{USAGE}");
                    return ExitCode::from(1);
                }
            };
            if args.positional.len() != 2 {
                eprintln!("error: compare takes exactly two complexes\n\n{USAGE}");
                return ExitCode::from(1);
            }
            let (na, a) = match load_complex(&args.positional[0]) {
                Ok(x) => x,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let (nb, b) = match load_complex(&args.positional[1]) {
                Ok(x) => x,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let rep = report::compare(&na, &a, &nb, &b);
            emit(&rep, args.json);
            ExitCode::SUCCESS
        }
        "corpus" => {
            if rest.first().map(String::as_str) != Some("list") {
                eprintln!("error: the corpus subcommand is `corpus list`\n\n{USAGE}");
                return ExitCode::from(1);
            }
            for (name, c) in fixtures::corpus() {
                print_out(&format!("{:<26} dim {}  f-vector {:?}\n", name, c.dim(), c.f_vector()));
            }
            ExitCode::SUCCESS
        }
        "sweep-subcomplexes" => {
            let args = match parse_args(&rest) {
                Ok(a) => a,
                Err(e) => {
                    eprintln!("error: {e}\n\n{USAGE}");
                    return ExitCode::from(1);
                }
            };
            if args.positional.len() != 1 {
                eprintln!("error: sweep-subcomplexes takes exactly one complex\n\n{USAGE}");
                return ExitCode::from(1);
            }
            let (name, delta) = match load_complex(&args.positional[0]) {
                Ok(x) => x,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            match report::sweep_subcomplexes(&name, &delta) {
                Ok(rep) => {
                    emit(&rep, args.json);
                    ExitCode::SUCCESS
                }
                Err(symtope_core::Error::Guard { guard, detail }) => {
                    eprintln!("guard `{guard}` exceeded: {detail}");
                    ExitCode::from(2)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        "--help" | "-h" | "help" => {
            print_out(USAGE);
            print_out("\n");
            ExitCode::SUCCESS
        }
        other => {
            eprintln!("error: unknown subcommand `{other}`\n\n{USAGE}");
            ExitCode::from(1)
        }
    }
}
