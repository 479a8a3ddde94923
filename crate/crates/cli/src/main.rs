use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mbt_cli::{cmd_synth, cmd_translate, cmd_validate, load, measure_latency, run_corpus, Repl, EXIT_NETWORK};
use mbt_core::Direction;

#[derive(Parser)]
#[command(name = "mbt", version, about = "Memory-based Korean/English dialog translator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate one sentence: `translate [NETWORK] SENTENCE`.
    Translate {
        #[arg(long, value_name = "PATH")]
        network: Option<PathBuf>,
        #[arg(long = "dir", value_name = "ko-en|en-ko")]
        direction: Direction,
        /// Print marker events to stderr.
        #[arg(long)]
        trace: bool,
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<String>,
    },
    /// Interactive translation loop.
    Repl {
        #[arg(long, value_name = "PATH")]
        network: Option<PathBuf>,
        #[arg(long = "dir", value_name = "ko-en|en-ko")]
        direction: Direction,
        #[arg(long)]
        trace: bool,
        /// Report after every sentence whether the marker state was cleared.
        #[arg(long)]
        debug: bool,
        path: Option<PathBuf>,
    },
    /// Check a network for invariant violations.
    Validate {
        #[arg(long, value_name = "PATH")]
        network: Option<PathBuf>,
        path: Option<PathBuf>,
    },
    /// Run a corpus of expected translations: `corpus [NETWORK] CORPUS`.
    Corpus {
        #[arg(long, value_name = "PATH")]
        network: Option<PathBuf>,
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<PathBuf>,
    },
    /// Print a synthetic network of the given size.
    Synth {
        lexical_pairs: usize,
        cs_pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also translate this many sampled sentences and report latency on stderr.
        #[arg(long, value_name = "N")]
        report: Option<usize>,
    },
}

fn network_path(flag: Option<PathBuf>, positional: Option<PathBuf>) -> Result<PathBuf, String> {
    match (flag, positional) {
        (Some(_), Some(_)) => Err("network given twice".into()),
        (Some(p), None) | (None, Some(p)) => Ok(p),
        (None, None) => Err("no network given".into()),
    }
}

fn run(cli: Cli) -> io::Result<i32> {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();

    macro_rules! network {
        ($flag:expr, $pos:expr) => {
            match network_path($flag, $pos).map_err(mbt_cli::LoadError).and_then(|p| load(&p)) {
                Ok(net) => net,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(EXIT_NETWORK);
                }
            }
        };
    }

    match cli.command {
        Command::Translate {
            network,
            direction,
            trace,
            mut args,
        } => {
            let sentence = args.pop().expect("clap requires a sentence");
            let net = network!(network, args.pop().map(PathBuf::from));
            cmd_translate(&net, &sentence, direction, trace, &mut out, &mut err)
        }
        Command::Repl {
            network,
            direction,
            trace,
            debug,
            path,
        } => {
            let net = network!(network, path);
            let mut repl = Repl::new(&net, direction);
            repl.set_trace(trace);
            repl.set_debug(debug);
            repl.run(io::stdin().lock(), &mut out)?;
            Ok(0)
        }
        Command::Validate { network, path } => {
            let net = network!(network, path);
            cmd_validate(&net, &mut out)
        }
        Command::Corpus { network, mut args } => {
            let corpus = args.pop().expect("clap requires a corpus");
            let net = network!(network, args.pop());
            let text = match std::fs::read_to_string(&corpus) {
                Ok(t) => t,
                Err(e) => {
                    writeln!(err, "error: {}: {e}", corpus.display())?;
                    return Ok(EXIT_NETWORK);
                }
            };
            let report = run_corpus(&net, &text);
            for l in &report.lines {
                writeln!(out, "{l}")?;
            }
            writeln!(out, "{}", report.summary())?;
            Ok(report.exit_code())
        }
        Command::Synth {
            lexical_pairs,
            cs_pairs,
            seed,
            report,
        } => {
            if lexical_pairs == 0 || cs_pairs == 0 {
                writeln!(err, "error: counts must be at least 1")?;
                return Ok(2);
            }
            let (net, source) = cmd_synth(lexical_pairs, cs_pairs, seed);
            out.write_all(source.as_bytes())?;
            if let Some(n) = report {
                let r = measure_latency(&net, n, seed);
                writeln!(
                    err,
                    "{} sentences, {} translated, mean {:.3} ms",
                    r.sentences,
                    r.succeeded,
                    r.mean().as_secs_f64() * 1000.0
                )?;
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_NETWORK as u8)
        }
    }
}
