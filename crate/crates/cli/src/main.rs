use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use ssu_core::analysis::{analyze, fixed_points};
use ssu_core::notation::{eval_algebra_expr, eval_semigroup_expr};
use ssu_core::{fixtures, report, Bounds, Document, Error, Status, System};

#[derive(Parser)]
#[command(name = "ssu", version, about = "Self-similar ultragraph toolkit")]
struct Cli {
    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct DocArgs {
    /// Instance document: a file, `-` for stdin, or `example:NAME`.
    doc: String,
    /// Bound overrides, e.g. `max_path_len=4,state_bound=128`.
    #[arg(long, default_value = "")]
    bounds: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check the document and the self-similarity axioms.
    Validate {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run every checker and report minimality, effectiveness and simplicity.
    Analyze {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        json: bool,
        /// Include wall-clock time in the JSON report.
        #[arg(long)]
        timing: bool,
    },
    /// Evaluate products of semigroup terms.
    Semigroup {
        #[command(subcommand)]
        op: EvalOp,
    },
    /// Evaluate rational combinations of terms, with `delta[g]` tags.
    Algebra {
        #[command(subcommand)]
        op: EvalOp,
    },
    /// Apply θ_s to a tight filter.
    Theta {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        elem: String,
        /// `lasso:prefix/cycle` or `finite:path/UP(set)` or `finite:path/END(family,+|-)`.
        #[arg(long)]
        filter: String,
    },
    /// List fixed points of θ_s.
    Fixed {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long)]
        elem: String,
    },
    /// Print a bundled example document.
    Example {
        /// One of ex5.1, ex5.2, ex5.3-trivial or ex5.3(t0,t1).
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum EvalOp {
    Eval {
        #[command(flatten)]
        doc: DocArgs,
        expr: String,
    },
}

fn load(doc: &DocArgs) -> Result<(System, Bounds), Error> {
    let text = if let Some(name) = doc.doc.strip_prefix("example:") {
        fixtures::example_text(name)?
    } else if doc.doc == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(&doc.doc).map_err(|e| Error::Parse(format!("{}: {e}", doc.doc)))?
    };
    let sys = Document::from_json(&text)?.build()?;
    let bounds = Bounds::default().with_overrides(&doc.bounds)?;
    Ok((sys, bounds))
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Holds => 0,
        Status::Fails => 2,
        Status::Unknown => 3,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Validate { doc, json } => {
            let (sys, bounds) = load(&doc)?;
            let v = sys.validate(bounds.group_ball_radius);
            if json {
                print!(
                    "{}",
                    report::render(&report::validation_report(&sys, &bounds, &v, None))
                );
            } else {
                println!("{}: {}", sys.name(), v.status);
                for w in &v.witnesses {
                    println!(
                        "  {}",
                        serde_json::to_string(w).expect("evidence serializes")
                    );
                }
            }
            Ok(status_code(v.status))
        }
        Command::Analyze { doc, json, timing } => {
            let (sys, bounds) = load(&doc)?;
            let start = Instant::now();
            let a = analyze(&sys, &bounds);
            let elapsed = timing.then(|| start.elapsed());
            if json {
                print!(
                    "{}",
                    report::render(&report::analysis_report(&sys, &bounds, &a, elapsed))
                );
            } else {
                print!("{}", report::render_text(&sys, &a));
            }
            Ok(a.exit_code() as u8)
        }
        Command::Semigroup {
            op: EvalOp::Eval { doc, expr },
        } => {
            let (sys, _) = load(&doc)?;
            println!("{}", sys.format_elem(&eval_semigroup_expr(&sys, &expr)?));
            Ok(0)
        }
        Command::Algebra {
            op: EvalOp::Eval { doc, expr },
        } => {
            let (sys, _) = load(&doc)?;
            println!("{}", sys.format_algebra(&eval_algebra_expr(&sys, &expr)?));
            Ok(0)
        }
        Command::Theta { doc, elem, filter } => {
            let (sys, bounds) = load(&doc)?;
            let s = eval_semigroup_expr(&sys, &elem)?;
            let f = sys.parse_filter(&filter)?;
            match sys.theta_apply(&s, &f, bounds.state_bound)? {
                Some(img) => {
                    println!("{}", sys.format_filter(&img));
                    Ok(0)
                }
                None => {
                    println!("unknown (state_bound {} exhausted)", bounds.state_bound);
                    Ok(3)
                }
            }
        }
        Command::Fixed { doc, elem } => {
            let (sys, bounds) = load(&doc)?;
            let s = eval_semigroup_expr(&sys, &elem)?;
            let fp = fixed_points(&sys, &s, &bounds)?;
            for (f, class) in &fp.points {
                println!(
                    "{} {}",
                    sys.format_filter(f),
                    serde_json::to_string(class).expect("class serializes")
                );
            }
            if fp.complete {
                Ok(0)
            } else {
                println!("search incomplete within bounds");
                Ok(3)
            }
        }
        Command::Example { name, output } => {
            let text = fixtures::example_text(&name)?;
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn configure_threads(n: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads(cli.threads);
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
