//! Subcommands. Each returns the process exit code and writes its report
//! to `out`; errors bubble up and become exit code 2 in `main`.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use nlc2_core::bipartitive::{bijoin_tree, cosplit_tree, split_tree};
use nlc2_core::canonical::{canonical_encoding, canonical_tree};
use nlc2_core::expression::{random_expression, Nlc2Expression};
use nlc2_core::isomorphism::{iso, IsoOutcome};
use nlc2_core::modular::{has_monocoloured_module, modular_decomposition};
use nlc2_core::oracles::{brute_iso, brute_nlc2, OracleBudget};
use nlc2_core::recognition::{recognize, recognize_prime, Recognition};
use nlc2_core::{Error, Graph, Label, LabelledGraph};

use crate::dot;
use crate::format::{read_graph, render_graph};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_NOT_NLC2: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "nlc2", version, about = "NLC-2 recognition, isomorphism and decompositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide NLC-2 membership. Exit 0 for YES, 1 for NO.
    Recognize {
        path: PathBuf,
        /// Print the certificate expression.
        #[arg(long)]
        expr: bool,
        /// Evaluate the certificate and compare edge sets.
        #[arg(long)]
        verify: bool,
        /// Cross-check against the brute-force oracle (small inputs only).
        #[arg(long)]
        oracle: bool,
    },
    /// Test isomorphism. Exit 0, 1, or 3 when an input is not NLC-2.
    Iso {
        first: PathBuf,
        second: PathBuf,
        /// Cross-check against the brute-force oracle (small inputs only).
        #[arg(long)]
        oracle: bool,
    },
    /// Print a decomposition tree.
    Decompose {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Modular)]
        kind: Kind,
        #[arg(long)]
        dot: bool,
        /// Comma-separated labels for `--kind nlc2`, e.g. `2,1,1,2`.
        #[arg(long)]
        labels: Option<String>,
    },
    /// Write a random graph built from an NLC-k expression.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Graph file destination; standard output when absent.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// Expression destination; otherwise the expression goes in a
        /// comment at the top of the graph file.
        #[arg(long)]
        expr_out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Modular,
    Split,
    Cosplit,
    Bijoin,
    Nlc2,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Recognize { path, expr, verify, oracle } => cmd_recognize(&read_graph(&path)?, expr, verify, oracle, out),
        Command::Iso { first, second, oracle } => cmd_iso(&read_graph(&first)?, &read_graph(&second)?, oracle, out),
        Command::Decompose { path, kind, dot, labels } => {
            cmd_decompose(&read_graph(&path)?, kind, dot, labels.as_deref(), out)
        }
        Command::Gen { n, k, seed, graph_out, expr_out } => cmd_gen(n, k, seed, graph_out, expr_out, out),
    }
}

pub fn cmd_recognize(g: &Graph, show_expr: bool, verify: bool, oracle: bool, out: &mut dyn Write) -> Result<i32> {
    let verdict = recognize(g)?;
    if oracle {
        let want = brute_nlc2(g, OracleBudget::NLC2).context("oracle cross-check")?;
        ensure!(want == verdict.is_nlc2(), "oracle disagrees: brute force says {want}");
    }
    match verdict {
        Recognition::Nlc2(e) => {
            writeln!(out, "YES")?;
            if show_expr {
                writeln!(out, "{e}")?;
            }
            if verify {
                let back = e.evaluate()?;
                ensure!(back.graph == *g, "certificate does not evaluate to the input");
                writeln!(out, "verified")?;
            }
            Ok(EXIT_YES)
        }
        Recognition::NotNlc2 { module } => {
            writeln!(out, "NO")?;
            writeln!(out, "prime quotient of module {module:?} is not NLC-2")?;
            Ok(EXIT_NO)
        }
    }
}

pub fn cmd_iso(g: &Graph, h: &Graph, oracle: bool, out: &mut dyn Write) -> Result<i32> {
    let outcome = iso(g, h)?;
    if oracle && outcome != IsoOutcome::NotNlc2 {
        let want = brute_iso(g, h, None, OracleBudget::ISO).context("oracle cross-check")?;
        ensure!(want == (outcome == IsoOutcome::Isomorphic), "oracle disagrees: brute force says {want}");
    }
    let (text, code) = match outcome {
        IsoOutcome::Isomorphic => ("ISOMORPHIC", EXIT_YES),
        IsoOutcome::NotIsomorphic => ("NOT-ISOMORPHIC", EXIT_NO),
        IsoOutcome::NotNlc2 => ("NOT-NLC2", EXIT_NOT_NLC2),
    };
    writeln!(out, "{text}")?;
    Ok(code)
}

pub fn parse_labels(text: &str, n: usize) -> Result<Vec<Label>> {
    let labels = text
        .split(',')
        .map(|f| {
            let f = f.trim();
            f.parse::<u8>().ok().and_then(Label::from_u8).with_context(|| format!("label `{f}` is not 1 or 2"))
        })
        .collect::<Result<Vec<_>>>()?;
    ensure!(labels.len() == n, "{} labels given for {n} vertices", labels.len());
    Ok(labels)
}

pub fn cmd_decompose(g: &Graph, kind: Kind, as_dot: bool, labels: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    ensure!(g.n() > 0, "empty graph");
    if labels.is_some() && kind != Kind::Nlc2 {
        bail!("--labels only applies to --kind nlc2");
    }
    let text = match kind {
        Kind::Modular => {
            let md = modular_decomposition(g);
            if as_dot { dot::modular_dot(&md) } else { dot::modular_text(&md) }
        }
        Kind::Split | Kind::Cosplit | Kind::Bijoin => {
            let (tree, name) = match kind {
                Kind::Split => (split_tree(g), "split"),
                Kind::Cosplit => (cosplit_tree(g), "cosplit"),
                _ => (bijoin_tree(g), "bijoin"),
            };
            if as_dot { dot::representative_dot(&tree, name) } else { dot::representative_text(&tree) }
        }
        Kind::Nlc2 => {
            let lg = match labels {
                Some(text) => LabelledGraph::new(g.clone(), parse_labels(text, g.n())?)?,
                None => match recognize_prime(g) {
                    Ok(Some(cert)) => LabelledGraph::new(g.clone(), cert.labelling)?,
                    Ok(None) => {
                        writeln!(out, "NOT-NLC2")?;
                        return Ok(EXIT_NO);
                    }
                    Err(Error::Misuse(_)) => bail!("automatic labelling needs a prime graph; pass --labels"),
                    Err(e) => return Err(e.into()),
                },
            };
            if has_monocoloured_module(&lg) {
                bail!("labelling has a mono-coloured module with at least 2 vertices");
            }
            let Some(tree) = canonical_tree(&lg)? else {
                writeln!(out, "NOT-RHO-FREE")?;
                return Ok(EXIT_NO);
            };
            if as_dot {
                dot::rho_free_dot(&tree)
            } else {
                format!("{}encoding {}\n", dot::rho_free_text(&tree), canonical_encoding(&tree))
            }
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(EXIT_YES)
}

pub fn generate(n: usize, k: u8, seed: u64) -> Result<(Graph, Nlc2Expression)> {
    ensure!(n >= 1, "n must be at least 1");
    ensure!(k == 1 || k == 2, "k must be 1 or 2");
    let e = random_expression(n, k, seed);
    let g = e.evaluate()?.graph;
    Ok((g, e))
}

pub fn cmd_gen(
    n: usize,
    k: u8,
    seed: u64,
    graph_out: Option<PathBuf>,
    expr_out: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let (g, e) = generate(n, k, seed)?;
    let mut graph_text = String::new();
    match &expr_out {
        Some(path) => std::fs::write(path, format!("{e}\n")).with_context(|| format!("cannot write {}", path.display()))?,
        None => graph_text.push_str(&format!("# {e}\n")),
    }
    graph_text.push_str(&render_graph(&g));
    match graph_out {
        Some(path) => std::fs::write(&path, graph_text).with_context(|| format!("cannot write {}", path.display()))?,
        None => out.write_all(graph_text.as_bytes())?,
    }
    Ok(EXIT_YES)
}
