//! The `tangle` command line. Exit codes: 0 when the command succeeds or the
//! checked property holds, 1 when the property fails, 2 on bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::direct::build_direct;
use crate::error::{Error, Result};
use crate::io::{read_tangle_file, write_tangle};
use crate::marking::{candidate_sets, enumerate_recs};
use crate::oracle::{balanced_marking_bruteforce, min_corners};
use crate::perfect::build_perfect;
use crate::perm::{ElementClass, Permutation};
use crate::recognize::{
    build_graph, census, recognize, CensusPredicate, Verdict, DEFAULT_CENSUS_BOUND,
};
use crate::svg::{to_svg, RenderOptions};
use crate::tangle::Tangle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tangle",
    version,
    about = "Perfect and direct tangles for permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PermArg {
    /// Permutation in one-line notation, e.g. "3 1 2" or 3,1,2
    #[arg(required = true, num_args = 1.., value_name = "PERM")]
    perm: Vec<String>,
}

impl PermArg {
    fn parse(&self) -> Result<Permutation> {
        let text = self.perm.join(" ").replace(['[', ']'], " ");
        Permutation::parse(&text)
    }
}

#[derive(Debug, Args)]
struct Outputs {
    /// Write the tangle as JSON to this file instead of standard output
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Also draw the tangle as SVG
    #[arg(long, value_name = "FILE")]
    svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Expect {
    Simple,
    Direct,
    Perfect,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PredicateArg {
    Perfect,
    Direct,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inversions, element classes, 321 test, recs and the perfect verdict
    Analyze(PermArg),
    /// Build a direct tangle (321-avoiding permutations only)
    Direct {
        #[command(flatten)]
        perm: PermArg,
        #[command(flatten)]
        out: Outputs,
    },
    /// Build a perfect tangle
    Perfect {
        #[command(flatten)]
        perm: PermArg,
        #[command(flatten)]
        out: Outputs,
    },
    /// Decide whether the permutation is perfect
    Recognize {
        #[command(flatten)]
        perm: PermArg,
        /// Print the balanced marking found
        #[arg(long)]
        marking: bool,
        /// Write the matching graph as JSON
        #[arg(long, value_name = "FILE")]
        dump_graph: Option<PathBuf>,
    },
    /// Check a tangle stored as JSON
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Brute-force oracles
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Count perfect and 321-avoiding permutations of size N
    Census {
        n: usize,
        #[arg(long, value_enum, default_value = "perfect")]
        predicate: PredicateArg,
        /// List the permutations that are not perfect
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_CENSUS_BOUND)]
        bound: usize,
    },
    /// Draw a stored tangle as SVG
    Render {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        svg: PathBuf,
        #[arg(long)]
        rounded: bool,
        #[arg(long)]
        color: bool,
        #[arg(long, default_value_t = 24)]
        unit: u32,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Least corner count over all tangles (n <= 6)
    MinCorners {
        #[command(flatten)]
        perm: PermArg,
        /// Only consider simple tangles
        #[arg(long)]
        simple: bool,
    },
    /// First balanced marking by exhaustive search
    Marking(PermArg),
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn joined(items: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "-".to_string()
    } else {
        v.join(" ")
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::SchemaViolation(format!("{}: {e}", path.display())))
}

fn emit_tangle(t: &Tangle, outputs: &Outputs, out: &mut dyn Write) -> Result<()> {
    let json = write_tangle(t)?;
    match &outputs.json {
        Some(path) => write_file(path, &json)?,
        None => writeln!(out, "{json}").unwrap(),
    }
    if let Some(path) = &outputs.svg {
        write_file(path, &to_svg(t, &RenderOptions::default())?)?;
    }
    Ok(())
}

fn analyze(p: &Permutation, out: &mut dyn Write) -> Result<i32> {
    let classes = p.classify();
    let of = |k: ElementClass| classes.iter().filter(move |(_, &c)| c == k).map(|(e, _)| e);
    writeln!(out, "permutation: {p}").unwrap();
    writeln!(out, "inversions: {}", p.inversion_number()).unwrap();
    writeln!(
        out,
        "right straights: {}",
        joined(of(ElementClass::RightStraight))
    )
    .unwrap();
    writeln!(
        out,
        "left straights: {}",
        joined(of(ElementClass::LeftStraight))
    )
    .unwrap();
    writeln!(out, "switchbacks: {}", joined(of(ElementClass::Switchback))).unwrap();
    writeln!(out, "fixed: {}", joined(of(ElementClass::Neither))).unwrap();
    match p.find_321() {
        None => writeln!(out, "321-avoiding: yes").unwrap(),
        Some(pos) => writeln!(
            out,
            "321-avoiding: no (values {} at positions {})",
            joined(pos.map(|i| p.at(i))),
            joined(pos)
        )
        .unwrap(),
    }
    let recs = enumerate_recs(p);
    let regular = recs.iter().filter(|r| r.regular).count();
    writeln!(out, "recs: {} ({regular} regular)", recs.len()).unwrap();
    match recognize(p)? {
        Verdict::Perfect(_) => writeln!(out, "perfect: yes").unwrap(),
        Verdict::NotPerfect(why) => writeln!(out, "perfect: no ({why})").unwrap(),
    }
    Ok(EXIT_OK)
}

fn verify(t: &Tangle, expect: Option<Expect>, out: &mut dyn Write) -> Result<i32> {
    let solves = t.solves(&t.start);
    let simple = solves && t.is_simple()?;
    let direct = t.is_direct();
    let perfect = solves && t.is_perfect()?;
    writeln!(out, "solves: {}", yes_no(solves)).unwrap();
    writeln!(out, "crossings: {}", t.crossing_count()).unwrap();
    writeln!(out, "corners: {}", t.corner_count().total).unwrap();
    writeln!(out, "simple: {}", yes_no(simple)).unwrap();
    writeln!(out, "direct: {}", yes_no(direct)).unwrap();
    writeln!(out, "perfect: {}", yes_no(perfect)).unwrap();
    let holds = match expect {
        None => true,
        Some(Expect::Simple) => simple,
        Some(Expect::Direct) => direct,
        Some(Expect::Perfect) => perfect,
    };
    Ok(if holds { EXIT_OK } else { EXIT_FAILS })
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Analyze(perm) => analyze(&perm.parse()?, out),
        Command::Direct { perm, out: outputs } => {
            let p = perm.parse()?;
            match build_direct(&p) {
                Ok(t) => {
                    emit_tangle(&t, &outputs, out)?;
                    Ok(EXIT_OK)
                }
                Err(e @ Error::Contains321 { .. }) => {
                    writeln!(out, "not direct: {e}").unwrap();
                    Ok(EXIT_FAILS)
                }
                Err(e) => Err(e),
            }
        }
        Command::Perfect { perm, out: outputs } => {
            let p = perm.parse()?;
            match build_perfect(&p) {
                Ok(t) => {
                    emit_tangle(&t.tangle, &outputs, out)?;
                    Ok(EXIT_OK)
                }
                Err(Error::NotPerfect(why)) => {
                    writeln!(out, "not perfect: {why}").unwrap();
                    Ok(EXIT_FAILS)
                }
                Err(e) => Err(e),
            }
        }
        Command::Recognize {
            perm,
            marking,
            dump_graph,
        } => {
            let p = perm.parse()?;
            if let Some(path) = dump_graph {
                let g = build_graph(&candidate_sets(&p));
                write_file(&path, &g.to_json().to_string())?;
            }
            match recognize(&p)? {
                Verdict::Perfect(m) => {
                    writeln!(out, "perfect").unwrap();
                    if marking {
                        write!(out, "{m}").unwrap();
                    }
                    Ok(EXIT_OK)
                }
                Verdict::NotPerfect(why) => {
                    writeln!(out, "not perfect: {why}").unwrap();
                    Ok(EXIT_FAILS)
                }
            }
        }
        Command::Verify { file, expect } => verify(&read_tangle_file(&file)?, expect, out),
        Command::Oracle { which } => match which {
            OracleCommand::MinCorners { perm, simple } => {
                writeln!(out, "{}", min_corners(&perm.parse()?, simple)?).unwrap();
                Ok(EXIT_OK)
            }
            OracleCommand::Marking(perm) => match balanced_marking_bruteforce(&perm.parse()?)? {
                Some(m) => {
                    write!(out, "{m}").unwrap();
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "none").unwrap();
                    Ok(EXIT_FAILS)
                }
            },
        },
        Command::Census {
            n,
            predicate,
            list,
            bound,
        } => {
            let predicate = match predicate {
                PredicateArg::Perfect => CensusPredicate::Perfect,
                PredicateArg::Direct => CensusPredicate::Direct,
                PredicateArg::Both => CensusPredicate::Both,
            };
            let c = census(n, predicate, bound)?;
            if let Some(k) = c.perfect {
                writeln!(out, "perfect: {k}/{}", c.total).unwrap();
            }
            if let Some(k) = c.direct {
                writeln!(out, "direct: {k}/{}", c.total).unwrap();
            }
            if list {
                for p in &c.non_perfect {
                    writeln!(out, "{p}").unwrap();
                }
            }
            Ok(EXIT_OK)
        }
        Command::Render {
            file,
            svg,
            rounded,
            color,
            unit,
        } => {
            let t = read_tangle_file(&file)?;
            let opts = RenderOptions {
                unit,
                rounded,
                colored: color,
                ..RenderOptions::default()
            };
            write_file(&svg, &to_svg(&t, &opts)?)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                write!(err, "{text}").unwrap();
            } else {
                write!(out, "{text}").unwrap();
            }
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            writeln!(err, "error: {e}").unwrap();
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("tangle").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn analyze_reports_the_figure_permutation() {
        let (code, out, _) = run_str(&["analyze", "3 6 1 4 7 2 5"]);
        assert_eq!(code, 0);
        assert!(out.contains("inversions: 9"));
        assert!(out.contains("switchbacks: 4\n"));
        assert!(out.contains("321-avoiding: no"));
        assert!(out.contains("perfect: no"));
    }

    #[test]
    fn perm_tokens_may_be_split() {
        let (code, out, _) = run_str(&["recognize", "2", "1"]);
        assert_eq!((code, out.as_str()), (0, "perfect\n"));
        let (code, _, _) = run_str(&["recognize", "[2,1]"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn direct_rejects_321() {
        let (code, out, _) = run_str(&["direct", "3 6 1 4 7 2 5"]);
        assert_eq!(code, 1);
        assert!(out.contains("321"));
    }

    #[test]
    fn bad_input_exits_2() {
        assert_eq!(run_str(&["recognize", "1 1"]).0, 2);
        assert_eq!(run_str(&["recognize", "x"]).0, 2);
        assert_eq!(run_str(&["nonsense"]).0, 2);
        assert_eq!(run_str(&["census", "9"]).0, 2);
        assert_eq!(run_str(&["oracle", "min-corners", "1 2 3 4 5 6 7"]).0, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("census"));
    }
}
