//! Batch front-end: parse curve/monoid/order/class files, dispatch to the
//! library, and emit human-readable reports, CSV and SVG. Exit codes: 0 on
//! success, 1 on malformed input, 2 on precondition failures (the certificate
//! is printed).

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use tropjac::cells::{quasistable_cells, verify_tiling, CellParams};
use tropjac::curve::TropicalCurve;
use tropjac::monodromy::{self, MonodromyHom};
use tropjac::ordmonoid::ValuationOrder;
use tropjac::rat::{format_rational, parse_rational, Q};
use tropjac::{io as tio, picard, Error, Parallelism};

#[derive(Parser)]
#[command(
    name = "tropjac",
    about = "Exact arithmetic for tropical curves, Jacobians and quasistable cells",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a curve file: components, genus, pairing matrix, diagnostics
    Info { curve: PathBuf },
    /// Print the intersection pairing matrix on the cycle basis
    Pairing { curve: PathBuf },
    /// Decide bounded monodromy and print the witnesses
    Bounded {
        curve: PathBuf,
        hom: PathBuf,
        /// Additionally test random small cycle combinations (debug soundness)
        #[arg(long)]
        debug_samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Subdivide the curve and produce an integer cochain with the given
    /// coboundary, under a valuation order
    Trivialize {
        curve: PathBuf,
        order: PathBuf,
        hom: PathBuf,
        /// Write the subdivided curve and cochain as JSON
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduce a monodromy homomorphism to a box-bounded representative
    Normalize {
        curve: PathBuf,
        order: PathBuf,
        hom: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Test equality of two monodromy homomorphisms in the Jacobian
    JacEqual {
        curve: PathBuf,
        hom1: PathBuf,
        hom2: PathBuf,
    },
    /// Test equality of two Picard classes
    ClassEqual {
        curve: PathBuf,
        class1: PathBuf,
        class2: PathBuf,
        /// Gauge-fixing base vertex (name); defaults to the first vertex
        #[arg(long)]
        base: Option<String>,
    },
    /// Enumerate quasistable cells (rank-1 lengths)
    Cells(CellArgs),
    /// Enumerate cells and verify that they tile the fundamental domain
    Tiling {
        #[command(flatten)]
        cells: CellArgs,
        /// Sample points per axis for the coverage check
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Test membership of a pair of functionals in the prorepresenting cone
    Tau {
        curve: PathBuf,
        /// Functional on the value lattice, comma-separated rationals
        #[arg(long)]
        u: String,
        /// Functional on homology, comma-separated rationals
        #[arg(long)]
        v: String,
    },
}

#[derive(Args)]
struct CellArgs {
    curve: PathBuf,
    /// Degree label for the run
    #[arg(short, long, default_value_t = 0)]
    degree: i64,
    /// Slopes are searched in [-slope-bound, slope-bound]
    #[arg(long, default_value_t = 2)]
    slope_bound: i64,
    /// Per-vertex divisor ranges, e.g. "v1=0:2,v2=-2:0"; unlisted vertices
    /// are pinned to 0
    #[arg(long)]
    divisor_box: Option<String>,
    /// Override the curve's edge lengths with comma-separated rationals
    #[arg(long)]
    lengths: Option<String>,
    /// Write the cell list as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write an SVG of the decomposition (genus 2 only)
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Disable worker parallelism
    #[arg(long)]
    sequential: bool,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {:#}", e);
            match e.downcast_ref::<Error>() {
                Some(Error::Parse(_)) | None => 1,
                Some(_) => 2,
            }
        }
    });
}

fn read_file(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| anyhow!(Error::Parse(format!("cannot read {}: {}", path.display(), e))))
}

fn load_curve(path: &Path) -> anyhow::Result<TropicalCurve> {
    let file: tio::CurveFile = tio::from_json_str(&read_file(path)?)?;
    Ok(tio::curve_from_file(&file)?)
}

fn load_order(path: &Path) -> anyhow::Result<ValuationOrder> {
    let file: tio::OrderFile = tio::from_json_str(&read_file(path)?)?;
    Ok(tio::order_from_file(&file)?)
}

fn load_hom(path: &Path) -> anyhow::Result<MonodromyHom> {
    let file: tio::HomFile = tio::from_json_str(&read_file(path)?)?;
    Ok(tio::hom_from_file(&file)?)
}

fn write_artifact(path: &Path, contents: &str) -> anyhow::Result<()> {
    std::fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn parse_q_list(s: &str) -> anyhow::Result<Vec<Q>> {
    s.split(',')
        .map(|t| {
            parse_rational(t.trim())
                .ok_or_else(|| anyhow!(Error::Parse(format!("bad rational {:?}", t))))
        })
        .collect()
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Info { curve } => {
            let c = load_curve(&curve)?;
            println!("vertices: {}", c.num_vertices());
            println!("edges: {}", c.num_edges());
            let (b0, b1) = c.betti()?;
            println!("b0: {}", b0);
            println!("b1: {}", b1);
            if c.is_compact() && b0 == 1 {
                print_pairing(&c)?;
            }
            let issues = c.validate();
            if issues.is_empty() {
                println!("validation: ok");
            } else {
                for issue in issues {
                    println!("validation: {}", issue);
                }
            }
        }
        Command::Pairing { curve } => {
            let c = load_curve(&curve)?;
            print_pairing(&c)?;
        }
        Command::Bounded { curve, hom, debug_samples, seed } => {
            let c = load_curve(&curve)?;
            let mu = load_hom(&hom)?;
            let report = monodromy::is_bounded(&c, &mu)?;
            let basis = c.cycle_basis()?;
            for (i, w) in report.witnesses.iter().enumerate() {
                match w {
                    Some((m, n)) => {
                        println!("cycle {} {:?}: witnesses ({}, {})", i, basis.cycles[i], m, n)
                    }
                    None => println!("cycle {} {:?}: unbounded", i, basis.cycles[i]),
                }
            }
            if !report.bounded() {
                return Err(anyhow!(Error::NotBounded));
            }
            if let Some(samples) = debug_samples {
                match monodromy::is_bounded_sampled(&c, &mu, samples, seed)? {
                    None => println!("sampled {} combinations: all bounded", samples),
                    Some(combo) => {
                        println!("unbounded on sampled combination {:?}", combo);
                        return Err(anyhow!(Error::NotBounded));
                    }
                }
            }
            println!("bounded: true");
        }
        Command::Trivialize { curve, order, hom, output } => {
            let c = load_curve(&curve)?;
            let v = load_order(&order)?;
            let mu = load_hom(&hom)?;
            let t = monodromy::trivialize(&c, &v, &mu)?;
            println!(
                "model edges: {} ({} subdivision points)",
                t.curve.num_edges(),
                t.curve.num_edges() - c.num_edges()
            );
            println!(
                "cochain: [{}]",
                t.cochain.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
            );
            let text = tio::to_json_string(&tio::trivialization_to_file(&t));
            match output {
                Some(path) => write_artifact(&path, &text)?,
                None => print!("{}", text),
            }
        }
        Command::Normalize { curve, order, hom, output } => {
            let c = load_curve(&curve)?;
            let v = load_order(&order)?;
            let mu = load_hom(&hom)?;
            let (zeta, gamma) = monodromy::normalize(&c, &v, &mu)?;
            for (i, z) in zeta.values.iter().enumerate() {
                println!("zeta[{}] = {}", i, z);
            }
            println!(
                "gamma = [{}]",
                gamma.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
            );
            let text = tio::to_json_string(&tio::normalization_to_file(&zeta, &gamma));
            match output {
                Some(path) => write_artifact(&path, &text)?,
                None => print!("{}", text),
            }
        }
        Command::JacEqual { curve, hom1, hom2 } => {
            let c = load_curve(&curve)?;
            let a = load_hom(&hom1)?;
            let b = load_hom(&hom2)?;
            match picard::jac_equal(&c, &a, &b)? {
                Some(gamma) => {
                    println!(
                        "equal: true (gamma = [{}])",
                        gamma.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
                    );
                }
                None => println!("equal: false"),
            }
        }
        Command::ClassEqual { curve, class1, class2, base } => {
            let c = load_curve(&curve)?;
            let f1: tio::ClassFile = tio::from_json_str(&read_file(&class1)?)?;
            let f2: tio::ClassFile = tio::from_json_str(&read_file(&class2)?)?;
            let c1 = tio::class_from_file(&c, &f1)?;
            let c2 = tio::class_from_file(&c, &f2)?;
            let base_idx = match &base {
                None => 0,
                Some(name) => c.vertex_index(name).ok_or_else(|| {
                    anyhow!(Error::Parse(format!("unknown base vertex {:?}", name)))
                })?,
            };
            if picard::degree(&c1) != picard::degree(&c2) {
                println!(
                    "equal: false (degrees {} and {})",
                    picard::degree(&c1),
                    picard::degree(&c2)
                );
                return Ok(());
            }
            let a = picard::canonicalize(&c, &c1, base_idx)?;
            let b = picard::canonicalize(&c, &c2, base_idx)?;
            match picard::jac_equal(&c, &a.mu, &b.mu)? {
                Some(_) => println!("equal: true"),
                None => println!("equal: false"),
            }
        }
        Command::Cells(args) => {
            let (c, params, par) = prepare_cells(&args)?;
            let cells = quasistable_cells(&c, &params, par)?;
            println!("cells: {}", cells.len());
            emit_cell_artifacts(&c, &cells, &args)?;
        }
        Command::Tiling { cells: args, samples } => {
            let (c, params, par) = prepare_cells(&args)?;
            let cells = quasistable_cells(&c, &params, par)?;
            println!("cells: {}", cells.len());
            emit_cell_artifacts(&c, &cells, &args)?;
            let report = verify_tiling(&c, &cells, samples, par)?;
            println!("genus: {}", report.genus);
            println!(
                "area: {} / {}",
                format_rational(&report.covered),
                format_rational(&report.expected)
            );
            println!("overlaps: {}", report.overlaps.len());
            for (i, j) in &report.overlaps {
                println!("  cells {} and {} share interior", i, j);
            }
            println!(
                "uncovered samples: {} / {}",
                report.uncovered.len(),
                report.samples
            );
            for p in report.uncovered.iter().take(10) {
                println!(
                    "  ({})",
                    p.iter().map(format_rational).collect::<Vec<_>>().join(", ")
                );
            }
            println!("tiles: {}", report.tiles());
        }
        Command::Tau { curve, u, v } => {
            let c = load_curve(&curve)?;
            let uf = parse_q_list(&u)?;
            let vf = parse_q_list(&v)?;
            println!("contains: {}", picard::tau_contains(&c, &uf, &vf)?);
        }
    }
    Ok(())
}

fn print_pairing(c: &TropicalCurve) -> anyhow::Result<()> {
    let basis = c.cycle_basis()?;
    let a = c.intersection_matrix(&basis);
    for (i, cyc) in basis.cycles.iter().enumerate() {
        println!("cycle {}: {:?}", i, cyc);
    }
    for row in &a {
        println!(
            "[ {} ]",
            row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("  ")
        );
    }
    Ok(())
}

fn prepare_cells(args: &CellArgs) -> anyhow::Result<(TropicalCurve, CellParams, Parallelism)> {
    let mut c = load_curve(&args.curve)?;
    if let Some(lengths) = &args.lengths {
        c = override_lengths(&c, &parse_q_list(lengths)?)?;
    }
    let divisor_box = match &args.divisor_box {
        None => vec![(0, 0); c.num_vertices()],
        Some(spec) => parse_divisor_box(&c, spec)?,
    };
    let params = CellParams {
        degree: args.degree,
        slope_bound: args.slope_bound,
        divisor_box,
    };
    let par = if args.sequential {
        Parallelism::Sequential
    } else {
        Parallelism::default()
    };
    Ok((c, params, par))
}

fn emit_cell_artifacts(
    c: &TropicalCurve,
    cells: &[tropjac::cells::Cell],
    args: &CellArgs,
) -> anyhow::Result<()> {
    if let Some(path) = &args.csv {
        write_artifact(path, &tio::cells_to_csv(cells))?;
    }
    if let Some(path) = &args.svg {
        write_artifact(path, &tropjac::svg::render_cells(c, cells)?)?;
    }
    Ok(())
}

fn override_lengths(c: &TropicalCurve, lengths: &[Q]) -> anyhow::Result<TropicalCurve> {
    if c.monoid().ambient_rank() != 1 {
        return Err(anyhow!(Error::RankNotOne));
    }
    if lengths.len() != c.num_edges() {
        return Err(anyhow!(Error::Parse(format!(
            "expected {} lengths, got {}",
            c.num_edges(),
            lengths.len()
        ))));
    }
    let edges = c
        .edges()
        .iter()
        .zip(lengths)
        .map(|(e, l)| tropjac::curve::Edge {
            tail: e.tail,
            head: e.head,
            length: tropjac::LatVec::new(vec![l.clone()]),
        })
        .collect();
    Ok(TropicalCurve::new(
        c.monoid().clone(),
        c.vertex_names().to_vec(),
        edges,
        c.pinned_basis().map(|b| b.to_vec()),
    )?)
}

fn parse_divisor_box(c: &TropicalCurve, spec: &str) -> anyhow::Result<Vec<(i64, i64)>> {
    let mut boxes = vec![(0i64, 0i64); c.num_vertices()];
    for part in spec.split(',') {
        let (name, range) = part
            .split_once('=')
            .ok_or_else(|| anyhow!(Error::Parse(format!("bad divisor box entry {:?}", part))))?;
        let v = c.vertex_index(name.trim()).ok_or_else(|| {
            anyhow!(Error::Parse(format!("unknown vertex {:?} in divisor box", name)))
        })?;
        let (lo, hi) = range
            .split_once(':')
            .ok_or_else(|| anyhow!(Error::Parse(format!("bad range {:?} (want lo:hi)", range))))?;
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|_| anyhow!(Error::Parse(format!("bad integer {:?}", lo))))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .map_err(|_| anyhow!(Error::Parse(format!("bad integer {:?}", hi))))?;
        if lo > hi {
            return Err(anyhow!(Error::Parse(format!("empty range {}:{}", lo, hi))));
        }
        boxes[v] = (lo, hi);
    }
    Ok(boxes)
}
