//! The `distlat` command line.

pub mod verify;

use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::expansion::CuttingRegistry;
use crate::expansion::{decompose, expand_poset};
use crate::families::{self, fibonacci_cube, lucas_cube};
use crate::invariants::InvariantReport;
use crate::io::{export_dot, parse_poset, write_poset, Highlight};
use crate::lattice::{DistLattice, IntervalRef};
use crate::poset::{Poset, DEFAULT_FILTER_CAP};

use verify::{SuiteConfig, SuiteRegistry};

#[derive(Parser, Debug)]
#[command(name = "distlat", version, about = "Posets, distributive lattices and convex expansions")]
struct Cli {
    /// Largest filter lattice to build.
    #[arg(long, global = true, default_value_t = DEFAULT_FILTER_CAP)]
    cap: usize,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the filters of a poset as bitstrings.
    Filters { file: String },
    /// Print the filter lattice: each element with its height and upper covers.
    Lattice { file: String },
    /// Print the meet-irreducibles of the filter lattice as a poset.
    Mi { file: String },
    /// Decide whether an interval of the filter lattice is a cutting.
    Cutting {
        file: String,
        #[arg(long)]
        bottom: String,
        #[arg(long)]
        top: String,
        /// One registered method; all of them when omitted.
        #[arg(long)]
        method: Option<String>,
    },
    /// Expand the filter lattice at a cutting and print the new poset.
    Expand {
        file: String,
        #[arg(long)]
        bottom: String,
        #[arg(long)]
        top: String,
        /// Label for the new element.
        #[arg(long)]
        label: Option<String>,
    },
    /// Split F(P) at an element into F(P-x) and F(P*x).
    Decompose {
        file: String,
        #[arg(long)]
        element: String,
    },
    /// Invariants of the filter lattice as JSON.
    Stats {
        #[arg(default_value = "-")]
        file: String,
    },
    /// Print a standard poset.
    Family { kind: FamilyKind, size: usize },
    /// Print a cube graph as an edge list.
    Cube { kind: CubeKind, size: usize },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Hasse diagram of the filter lattice in DOT.
    ExportDot {
        file: String,
        /// Interval to highlight, as BOTTOM,TOP bitstrings.
        #[arg(long)]
        highlight: Option<String>,
        /// Draw the expansion at the highlighted interval with both copies marked.
        #[arg(long, requires = "highlight")]
        expand: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyKind {
    Fence,
    Crown,
    Chain,
    Antichain,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CubeKind {
    Fibonacci,
    Lucas,
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type CmdResult = std::result::Result<(String, bool), Failure>;

/// Runs the command line `args` (program name first) with `stdin` as standard input.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let out_path = cli.out.clone();
    let (mut outcome, text) = match execute(&cli, stdin) {
        Ok((text, ok)) => (
            Outcome {
                code: if ok { 0 } else { 1 },
                stdout: String::new(),
                stderr: String::new(),
            },
            text,
        ),
        Err(Failure::Usage(m)) => {
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") }
        }
        Err(Failure::Input(e)) => {
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    };
    match out_path {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                outcome.code = 2;
                outcome.stderr = format!("error: cannot write {path}: {e}\n");
            }
        }
        None => outcome.stdout = text,
    }
    outcome
}

fn read_source(path: &str, stdin: &mut dyn Read) -> std::result::Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
    }
}

fn load(path: &str, stdin: &mut dyn Read) -> std::result::Result<Poset, Failure> {
    Ok(parse_poset(&read_source(path, stdin)?)?)
}

fn lattice_of(p: Poset, cap: usize) -> Result<DistLattice> {
    DistLattice::with_cap(p, cap)
}

fn interval(l: &DistLattice, bottom: &str, top: &str) -> Result<IntervalRef> {
    let k = IntervalRef::new(l.index_of_bitstring(bottom)?, l.index_of_bitstring(top)?);
    l.interval_mask(k)?;
    Ok(k)
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> CmdResult {
    let cap = cli.cap;
    let mut out = String::new();
    match &cli.command {
        Command::Filters { file } => {
            let p = load(file, stdin)?;
            for f in p.filters_capped(cap)? {
                let _ = writeln!(out, "{}", p.bitstring(f.bits()));
            }
        }
        Command::Lattice { file } => {
            let l = lattice_of(load(file, stdin)?, cap)?;
            let _ = writeln!(out, "# {} elements, height {}", l.len(), l.height(l.top()));
            for a in 0..l.len() {
                let ups: Vec<String> = l.upper_covers(a).iter().map(|&b| l.bitstring(b)).collect();
                let _ = writeln!(out, "{} h={} up={}", l.bitstring(a), l.height(a), ups.join(","));
            }
        }
        Command::Mi { file } => {
            let p = load(file, stdin)?;
            let l = lattice_of(p.clone(), cap)?;
            let mi = l.meet_irreducibles();
            let _ = writeln!(out, "# isomorphic to input: {}", mi.is_isomorphic(&p));
            out.push_str(&write_poset(&mi));
        }
        Command::Cutting { file, bottom, top, method } => {
            let l = lattice_of(load(file, stdin)?, cap)?;
            let k = interval(&l, bottom, top)?;
            let registry = CuttingRegistry::default();
            match method {
                Some(m) => {
                    let v = registry.get(m)?.is_cutting(&l, k)?;
                    let _ = writeln!(out, "cutting: {v} ({m})");
                }
                None => {
                    let verdicts = registry.evaluate(&l, k)?;
                    let names: Vec<&str> = verdicts.iter().map(|v| v.0).collect();
                    if verdicts.iter().all(|v| v.1 == verdicts[0].1) {
                        let _ = writeln!(out, "cutting: {} ({} agree)", verdicts[0].1, names.join(","));
                    } else {
                        let each: Vec<String> = verdicts.iter().map(|(n, v)| format!("{n}={v}")).collect();
                        let _ = writeln!(out, "cutting: methods disagree ({})", each.join(","));
                        return Ok((out, false));
                    }
                }
            }
        }
        Command::Expand { file, bottom, top, label } => {
            let l = lattice_of(load(file, stdin)?, cap)?;
            let k = interval(&l, bottom, top)?;
            let e = expand_poset(&l, k, label.as_deref())?;
            let ksize = l.interval_elements(k)?.len();
            let _ = writeln!(
                out,
                "# |L⊞K| = {} = {} + {}, new element {}",
                e.lattice.len(),
                l.len(),
                ksize,
                e.new_element
            );
            out.push_str(&write_poset(&e.poset));
            return Ok((out, e.lattice.len() == l.len() + ksize));
        }
        Command::Decompose { file, element } => {
            let p = load(file, stdin)?;
            let d = decompose(&p, element)?;
            let _ = writeln!(out, "# |F(P)| = {} = {} + {}", d.size, d.minus_size, d.star_size);
            let _ = writeln!(out, "# cutting: {}, holds: {}", d.is_cutting, d.holds());
            out.push_str("# P - x\n");
            out.push_str(&write_poset(&d.minus));
            out.push_str("# P * x\n");
            out.push_str(&write_poset(&d.star));
            return Ok((out, d.holds()));
        }
        Command::Stats { file } => {
            let l = lattice_of(load(file, stdin)?, cap)?;
            let report = InvariantReport::compute(&l);
            out.push_str(&report.to_json());
            out.push('\n');
            return Ok((out, report.euler_ok && report.euler_derivative_ok));
        }
        Command::Family { kind, size } => {
            let p = match kind {
                FamilyKind::Fence => families::fence(*size),
                FamilyKind::Crown => families::crown(*size)?,
                FamilyKind::Chain => families::chain(*size),
                FamilyKind::Antichain => families::antichain(*size),
            };
            out.push_str(&write_poset(&p));
        }
        Command::Cube { kind, size } => {
            let g = match kind {
                CubeKind::Fibonacci => fibonacci_cube(*size),
                CubeKind::Lucas => lucas_cube(*size)?,
            };
            let _ = writeln!(out, "# {} vertices, {} edges", g.vertex_count(), g.edge_count());
            out.push_str(&g.to_edge_list());
        }
        Command::Verify { suite, seed, trials, max_size, max } => {
            let registry = SuiteRegistry::default();
            let Some(s) = registry.get(suite) else {
                return Err(Failure::Usage(format!(
                    "unknown suite `{suite}`; expected one of {}",
                    registry.names().join(", ")
                )));
            };
            let cfg = SuiteConfig {
                seed: *seed,
                trials: *trials,
                max_size: *max_size,
                max: *max,
            };
            let report = s.run(&cfg)?;
            let _ = writeln!(out, "# suite {} seed {}", s.name(), seed);
            let _ = write!(out, "{report}");
            return Ok((out, report.passed()));
        }
        Command::ExportDot { file, highlight, expand } => {
            let l = lattice_of(load(file, stdin)?, cap)?;
            let k = match highlight {
                None => None,
                Some(pair) => {
                    let Some((b, t)) = pair.split_once(',') else {
                        return Err(Failure::Usage(format!("--highlight takes BOTTOM,TOP, got `{pair}`")));
                    };
                    Some(interval(&l, b.trim(), t.trim())?)
                }
            };
            let dot = match (k, expand) {
                (Some(k), true) => {
                    let e = expand_poset(&l, k, None)?;
                    export_dot(
                        &e.lattice,
                        Some(Highlight::Expansion {
                            original: e.original_interval,
                            copy: e.copy_interval,
                        }),
                    )?
                }
                (Some(k), false) => export_dot(&l, Some(Highlight::Interval(k)))?,
                (None, _) => export_dot(&l, None)?,
            };
            out.push_str(&dot);
        }
    }
    Ok((out, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_with(args: &[&str], input: &str) -> Outcome {
        let mut argv = vec!["distlat"];
        argv.extend_from_slice(args);
        run(argv, &mut input.as_bytes())
    }

    const Z3: &str = "element a b c\ncover b a\ncover b c\n";

    #[test]
    fn family_into_stats() {
        let fence = run_with(&["family", "fence", "3"], "");
        assert_eq!(fence.code, 0);
        let stats = run_with(&["stats"], &fence.stdout);
        assert_eq!(stats.code, 0, "{}", stats.stderr);
        assert!(stats.stdout.contains("\"size\":5"));
        assert!(stats.stdout.contains("\"q\":[5,5,1]"));
        assert!(stats.stdout.contains("\"euler_ok\":true"));
    }

    #[test]
    fn cutting_from_stdin() {
        let o = run_with(&["cutting", "-", "--bottom", "101", "--top", "000"], Z3);
        assert_eq!(o.stdout, "cutting: true (chains,union,order,star agree)\n");
        let o = run_with(&["cutting", "-", "--bottom", "100", "--top", "100", "--method", "order"], Z3);
        assert_eq!(o.stdout, "cutting: false (order)\n");
        let o = run_with(&["cutting", "-", "--bottom", "101", "--top", "000", "--method", "magic"], Z3);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("magic"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_with(&["frobnicate"], "").code, 2);
        assert_eq!(run_with(&["family", "crown", "5"], "").code, 2);
        assert_eq!(run_with(&["stats"], "cover a b\n").code, 2);
        assert_eq!(run_with(&["verify", "nothing"], "").code, 2);
        let o = run_with(&["export-dot", "-", "--highlight", "101"], Z3);
        assert_eq!(o.code, 2);
        let o = run_with(&["filters", "/nonexistent/file.poset"], "");
        assert_eq!(o.code, 2);
        assert!(run_with(&["--help"], "").stdout.contains("Usage"));
        assert_eq!(run_with(&["--help"], "").code, 0);
    }

    #[test]
    fn filters_lattice_and_mi() {
        let o = run_with(&["filters", "-"], Z3);
        assert_eq!(o.stdout, "000\n100\n001\n101\n111\n");
        let o = run_with(&["lattice", "-"], Z3);
        assert!(o.stdout.starts_with("# 5 elements, height 3\n111 h=0 up=101\n"));
        let o = run_with(&["mi", "-"], Z3);
        assert!(o.stdout.starts_with("# isomorphic to input: true\n"));
        assert_eq!(run_with(&["filters", "-", "--cap", "3"], Z3).code, 2);
    }

    #[test]
    fn expand_and_decompose() {
        let o = run_with(&["expand", "-", "--bottom", "101", "--top", "000"], Z3);
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("# |L⊞K| = 9 = 5 + 4"));
        let d = run_with(&["decompose", "-", "--element", "x@1"], &o.stdout);
        assert_eq!(d.code, 0, "{}", d.stderr);
        assert!(d.stdout.starts_with("# |F(P)| = 9 = 5 + 4\n"));
        let bad = run_with(&["expand", "-", "--bottom", "100", "--top", "100"], Z3);
        assert_eq!(bad.code, 2);
    }

    #[test]
    fn cubes_and_dot() {
        let o = run_with(&["cube", "fibonacci", "2"], "");
        assert_eq!(o.stdout, "# 3 vertices, 2 edges\n00 01\n00 10\n");
        let dot = run_with(&["export-dot", "-", "--highlight", "101,000", "--expand"], Z3);
        assert_eq!(dot.code, 0);
        assert!(dot.stdout.contains("cluster_K_copy"));
    }

    #[test]
    fn verify_prints_lines() {
        let o = run_with(&["verify", "fibonacci", "--max", "3"], "");
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert!(o.stdout.contains("m=2,n=2,ok\n"));
        assert!(o.stdout.contains("m=3,n=2,ok\n"));
        let o = run_with(&["verify", "random", "--trials", "5", "--max-size", "4", "--seed", "9"], "");
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert!(o.stdout.starts_with("# suite random seed 9\n"));
    }

    #[test]
    fn out_flag_writes_file() {
        let dir = std::env::temp_dir().join(format!("distlat-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("fence.poset");
        let o = run_with(&["family", "fence", "4", "--out", path.to_str().unwrap()], "");
        assert_eq!(o.code, 0);
        assert!(o.stdout.is_empty());
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("element 1 2 3 4\n"));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
