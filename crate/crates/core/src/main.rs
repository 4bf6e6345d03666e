//! Command-line front end: catalog browsing, series and measure
//! computation, the verification suite, decomposition runs, and report
//! emission.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error
//! (unknown graph, bad parameters), 3 internal inconsistency.

use ade_spectra::algebra::RationalFunction;
use ade_spectra::cyclotomic::{build_system, decompose_graph_with_period, DecompositionProblem};
use ade_spectra::display::point_weights;
use ade_spectra::error::Error;
use ade_spectra::graphs::{
    build_graph, loop_counts_upto, standard_catalog, symbolic_catalog, GraphName,
};
use ade_spectra::measures::{catalog_measure, CatalogMeasure};
use ade_spectra::recursion;
use ade_spectra::report::{
    build_report, decomposition_json, emit_json, report_has_failure, Report,
};
use ade_spectra::series::{bundle, factored_display, graph_t_series};
use ade_spectra::verify::{self, check_graph, run_all_checks, NegativeControl};
use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "ade-spectra",
    version,
    about = "Exact spectral measures and Jones series of ADE graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Poincare,
    Theta,
    T,
}

#[derive(Clone, Copy, ValueEnum)]
enum ControlArg {
    Measure,
    Theta,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// List the graph catalog with the attached measure formulas
    Catalog,
    /// Print loop(0), loop(2), ..., loop(2K) for a finite graph
    Loops {
        graph: String,
        #[arg(long, default_value_t = 20)]
        max_k: usize,
    },
    /// Print a series as a factored closed form plus its truncation
    Series {
        graph: String,
        #[arg(long, value_enum, default_value_t = SeriesKind::T)]
        kind: SeriesKind,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Print the catalog spectral measure of a graph
    Measure {
        graph: String,
        /// Also print decimal weights at each root-of-unity point
        #[arg(long)]
        weights: bool,
        #[arg(long, default_value_t = 20)]
        digits: usize,
    },
    /// Run verification checks for one graph or the whole suite
    Verify {
        graph: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 20)]
        max_k: usize,
        /// Deliberately corrupt an input to confirm the checks can fail
        #[arg(long, value_enum)]
        negative_control: Option<ControlArg>,
    },
    /// Decide whether the spectral measure is cyclotomic
    Decompose {
        graph: String,
        /// Override the inferred period
        #[arg(long)]
        period: Option<u32>,
    },
    /// Compute a tail family from one of the named proof seeds
    Family {
        /// Seed name; pass "list" to enumerate them
        seed: String,
        /// Members to print, k = 0..=K
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
    /// Emit the full per-graph report
    Report {
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        #[arg(long, default_value_t = 20)]
        max_k: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn parse_graph(s: &str) -> Result<GraphName, Error> {
    s.parse()
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Catalog => {
            print_catalog();
            Ok(ExitCode::SUCCESS)
        }
        Command::Loops { graph, max_k } => {
            let name = parse_graph(&graph)?;
            let g = build_graph(&name)?;
            let loops = loop_counts_upto(&g, max_k);
            let rendered: Vec<String> = loops.iter().map(|b| b.to_string()).collect();
            println!("{}", rendered.join(", "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Series { graph, kind, order } => {
            let name = parse_graph(&graph)?;
            let g = build_graph(&name)?;
            let b = bundle(&g, order.max(1));
            let (label, f): (&str, &RationalFunction) = match kind {
                SeriesKind::Poincare => ("f(z)", &b.poincare),
                SeriesKind::Theta => ("Theta(q)", &b.theta),
                SeriesKind::T => ("T(q)", &b.t_series),
            };
            println!("{label} = {}", factored_display(f));
            let series = f.expand(order)?;
            let coeffs: Vec<String> = series.coeffs().iter().map(|c| c.to_string()).collect();
            println!("coefficients 0..{order}: {}", coeffs.join(", "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Measure {
            graph,
            weights,
            digits,
        } => {
            let name = parse_graph(&graph)?;
            let entry = catalog_measure(&name)?;
            match entry.measure {
                CatalogMeasure::Cyclotomic(m) => {
                    println!("{name}: {m}");
                    if weights {
                        let (points, continuous) = point_weights(&m, digits);
                        if let Some(c) = continuous {
                            println!("continuous part: {c}");
                        }
                        for p in points {
                            println!("{}: {}", p.label, p.decimal);
                        }
                    }
                }
                CatalogMeasure::NonCyclotomic { t_series } => {
                    println!("{name}: non-cyclotomic (T-series only)");
                    println!("T(q) = {}", factored_display(&t_series));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            graph,
            all,
            max_k,
            negative_control,
        } => {
            let control = negative_control.map(|c| match c {
                ControlArg::Measure => NegativeControl::Measure,
                ControlArg::Theta => NegativeControl::Theta,
            });
            let start = Instant::now();
            let outcomes = if all || graph.is_none() {
                if control.is_some() {
                    return Err(Error::InvalidParameter(
                        "--negative-control needs a specific graph".into(),
                    ));
                }
                run_all_checks(max_k)
            } else {
                let name = parse_graph(graph.as_deref().expect("graph present"))?;
                // Surface bad parameters as usage errors before checking.
                if !name.is_symbolic() {
                    build_graph(&name)?;
                }
                check_graph(&name, max_k, control)
            };
            let mut failed = false;
            for outcome in &outcomes {
                if outcome.passed {
                    println!("PASS {}", outcome.name);
                } else {
                    failed = true;
                    println!("FAIL {} ({})", outcome.name, outcome.detail);
                }
            }
            println!("{} checks in {:.2?}", outcomes.len(), start.elapsed());
            Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Decompose { graph, period } => {
            let name = parse_graph(&graph)?;
            let result = decompose_graph_with_period(&name, period)?;
            let sys = build_system(&DecompositionProblem {
                target_t: graph_t_series(&build_graph(&name)?),
                period: result.period,
            })?;
            let labels: Vec<String> = sys.labels.iter().map(|l| l.to_string()).collect();
            if result.decomposition.is_feasible() {
                println!("{name}: feasible (period {})", result.period);
            } else {
                println!("{name}: infeasible (period {})", result.period);
            }
            let json = decomposition_json(&result, Some((&labels, &sys.rows, &sys.rhs)));
            println!(
                "{}",
                serde_json::to_string_pretty(&json).expect("serializes")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Family { seed, max_k } => {
            let families = verify::proof_families();
            if seed == "list" {
                for (fname, _, _, _) in &families {
                    println!("{fname}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let Some((fname, l0, kind, builder)) = families
                .into_iter()
                .find(|(fname, _, _, _)| fname.eq_ignore_ascii_case(&seed))
            else {
                return Err(Error::InvalidParameter(format!(
                    "unknown seed {seed}; pass \"list\" to enumerate"
                )));
            };
            let fam = recursion::tail_family(&l0, kind)?;
            println!("seed {fname} ({:?})", fam.kind);
            println!("P0 = {}", fam.p0);
            println!("P1 = {}", fam.p1);
            println!("P  = {}", fam.p);
            for k in 0..=max_k {
                let g = builder(k);
                println!(
                    "k = {k}: T = {} ({} vertices)",
                    factored_display(&recursion::family_t(&fam, k)),
                    g.vertex_count()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { all, format, max_k } => {
            if !all {
                return Err(Error::InvalidParameter(
                    "report runs over the whole catalog: pass --all".into(),
                ));
            }
            let report = build_report(&standard_catalog(), max_k)?;
            match format {
                FormatArg::Json => println!("{}", emit_json(&report)),
                FormatArg::Table => print_table(&report),
            }
            Ok(if report_has_failure(&report) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

fn print_catalog() {
    println!("finite families (measure on the unit circle):");
    println!("  A(n), n >= 1        alpha*d_(n+1)");
    println!("  D(n), n >= 3        alpha*d'_(n-1) = 2*alpha*d_(2n-2) - alpha*d_(n-1)");
    println!("  E6                  alpha*d_12 + (d_12 - d_6 - d_4 + d_3)/2");
    println!("  E7                  non-cyclotomic (T-series only)");
    println!("  E8                  non-cyclotomic (T-series only)");
    println!("  A1ext(2n), n >= 2   d_n");
    println!("  D1ext(n), n >= 4    (d'_1 + d_(n-2))/2");
    println!("  E6ext               alpha*d_3 + (d_2 - d_3)/2");
    println!("  E7ext               alpha*d_4 + (d_3 - d_4)/2");
    println!("  E8ext               alpha*d_6 + (d_5 - d_6)/2");
    println!("  F(a,b,c)            triple point with tails a, b, c (no catalog measure)");
    println!("symbolic entries (finite truncations only):");
    println!("  AInf                alpha*d");
    println!("  DInf                (d'_1 + d)/2");
    println!("  AZZ                 d");
    println!();
    println!(
        "standard instantiation: {} finite graphs, {} symbolic",
        standard_catalog().len(),
        symbolic_catalog().len()
    );
}

fn print_table(report: &Report) {
    println!(
        "{:<12} {:<10} {:<52} {:<8} measure",
        "graph", "verified", "t-series", "ms"
    );
    for g in &report.graphs {
        let ok = g.verified.iter().all(|c| c.passed);
        println!(
            "{:<12} {:<10} {:<52} {:<8} {}",
            g.graph,
            if ok { "ok" } else { "FAIL" },
            g.t_series,
            g.elapsed_ms,
            serde_json::to_string(&g.measure).expect("serializes"),
        );
    }
}
