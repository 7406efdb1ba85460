use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stacklayout::constructive::{
    monotone::order_monotone_with, outerpath::order_outerpath_with, single_source::order_single_source_with,
    stacks_single_source_for, up3tree::order_up3tree_with, AnnotatedOrder, ConstructError, ConstructOptions,
};
use stacklayout::generators::{generate, Family};
use stacklayout::graph::parse_graph;
use stacklayout::layout::{parse_layout, validate_layout, StackLayout};
use stacklayout::pages::greedy_first_fit;
use stacklayout::recognition::{augment_outerplanar, classify, find_base, peel_3tree, OdagClass};
use stacklayout::sat::{
    parse_dimacs, solve_cnf, stack_number, stack_number_fixed_order, verify_at_least, write_model, Backend,
    SolveError, SolverConfig, StackNumber, Verdict,
};
use stacklayout::search::{search_witness, ClassFilter, SearchConfig};
use stacklayout::{max_twist, Dag, LinearOrder};

#[derive(Parser)]
#[command(name = "stacklayout", version, about = "Stack layouts of directed acyclic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a graph and report its classes; with --order, its max twist.
    Analyze {
        graph: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Build a vertex order with a bounded twist.
    Layout {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ClassArg::Auto)]
        class: ClassArg,
        /// Emit pages: the 4-stack construction for single-source graphs, first-fit otherwise.
        #[arg(long)]
        stacks: bool,
        #[arg(long)]
        parts: bool,
        #[arg(long)]
        check_frames: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact stack number by SAT.
    Exact {
        graph: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_k: usize,
        #[arg(long)]
        fixed_order: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Generate a graph of a family.
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, conflicts_with = "corpus")]
        out: Option<PathBuf>,
        /// Write to `<dir>/<family>/n<N>_s<seed>.dag`.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Search small graphs of a class for one with stack number at least K.
    Search {
        #[arg(long)]
        class: ClassFilter,
        #[arg(long)]
        target_k: usize,
        #[arg(long)]
        n_max: usize,
        /// Maximum number of class members checked.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Certify stack number at least K (unsatisfiable with K-1 pages).
    Verify {
        graph: PathBuf,
        #[arg(long)]
        at_least: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    #[command(hide = true)]
    SolveDimacs { cnf: PathBuf },
}

#[derive(clap::Args)]
struct SolverArgs {
    /// `builtin` or `external:<command>`.
    #[arg(long, env = "STACKLAYOUT_SOLVER", default_value = "builtin")]
    solver: String,
    #[arg(long)]
    dimacs_out: Option<PathBuf>,
    /// Conflict budget per built-in solver call.
    #[arg(long)]
    conflicts: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Auto,
    SingleSource,
    Monotone,
    Outerpath,
    Up3tree,
}

enum Failure {
    False(String),
    Input(String),
    Class(String),
    Solver(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::False(_) => 1,
            Failure::Input(_) => 2,
            Failure::Class(_) => 3,
            Failure::Solver(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::False(m) | Failure::Input(m) | Failure::Class(m) | Failure::Solver(m) => m,
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        Failure::Solver(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Command) -> Res<()> {
    match cmd {
        Command::Analyze { graph, order } => analyze(&graph, order.as_deref()),
        Command::Layout {
            graph,
            class,
            stacks,
            parts,
            check_frames,
            out,
        } => layout(&graph, class, stacks, parts, check_frames, out.as_deref()),
        Command::Exact {
            graph,
            max_k,
            fixed_order,
            solver,
        } => exact(&graph, max_k, fixed_order.as_deref(), &solver),
        Command::Generate {
            family,
            n,
            seed,
            out,
            corpus,
        } => {
            let g = generate(family, n, seed).map_err(|e| Failure::Input(e.to_string()))?;
            let path = corpus.map(|dir| dir.join(family.name()).join(format!("n{n}_s{seed}.dag")));
            emit(&g.to_text(), path.as_deref().or(out.as_deref()))
        }
        Command::Search {
            class,
            target_k,
            n_max,
            budget,
            seed,
            out,
            solver,
        } => {
            let mut cfg = SearchConfig::new(class, n_max, target_k);
            cfg.budget = budget;
            cfg.seed = seed;
            cfg.solver = solver_config(&solver)?;
            let res = search_witness(&cfg).map_err(|e| match e {
                stacklayout::search::SearchError::Solve(s) => Failure::Solver(s.to_string()),
                other => Failure::Input(other.to_string()),
            })?;
            eprintln!("examined {} class members", res.examined);
            match res.witness {
                Some(w) => emit(&w.graph.to_text(), out.as_deref()),
                None if res.budget_exhausted => Err(Failure::False("budget exhausted without a witness".into())),
                None => Err(Failure::False(format!("no witness with n <= {n_max}"))),
            }
        }
        Command::Verify {
            graph,
            at_least,
            solver,
        } => {
            let g = read_graph(&graph)?;
            match verify_at_least(&g, at_least, &solver_config(&solver)?)? {
                Verdict::AtLeast { witness } => {
                    println!("# stack number >= {at_least}");
                    if let Some(l) = witness {
                        print!("{}", l.to_text(&g));
                    }
                    Ok(())
                }
                Verdict::Refuted(l) => {
                    print!("{}", l.to_text(&g));
                    Err(Failure::False(format!("layout with {} pages exists", l.k)))
                }
            }
        }
        Command::SolveDimacs { cnf } => {
            let file = fs::File::open(&cnf)?;
            let (n, clauses) = parse_dimacs(BufReader::new(file)).map_err(|e| Failure::Input(e.to_string()))?;
            write_model(&solve_cnf(n, &clauses, None), io::stdout().lock())?;
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> Res<Dag> {
    let file = fs::File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_graph(BufReader::new(file)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_order(path: &Path, g: &Dag) -> Res<LinearOrder> {
    let file = fs::File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_layout(BufReader::new(file), g)
        .map(|l| l.order)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, path: Option<&Path>) -> Res<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, text)?;
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn solver_config(args: &SolverArgs) -> Res<SolverConfig> {
    let backend = match args.solver.as_str() {
        "builtin" => Backend::Builtin,
        s => match s.strip_prefix("external:") {
            Some(cmd) if !cmd.trim().is_empty() => Backend::External(cmd.to_string()),
            _ => return Err(Failure::Input(format!("unknown solver {s:?}"))),
        },
    };
    if let Some(dir) = &args.dimacs_out {
        fs::create_dir_all(dir)?;
    }
    Ok(SolverConfig {
        backend,
        budget: args.conflicts,
        dimacs_out: args.dimacs_out.clone(),
        ..SolverConfig::default()
    })
}

fn analyze(path: &Path, order: Option<&Path>) -> Res<()> {
    let g = read_graph(path)?;
    println!("valid dag: n = {}, m = {}", g.n(), g.m());
    println!("sources: {}", g.sources().len());
    println!("sinks: {}", g.sinks().len());
    let names = classify(&g).names();
    println!("classes: {}", if names.is_empty() { "none".into() } else { names.join(" ") });
    if let Some(p) = order {
        let o = read_order(p, &g)?;
        let t = max_twist(&g, &o).map_err(|e| Failure::Input(e.to_string()))?;
        println!("max twist: {}", t.k());
        let cert: Vec<String> = t.edges.iter().map(|e| format!("{}->{}", e.source, e.target)).collect();
        println!("certificate: {}", cert.join(" "));
    }
    Ok(())
}

/// An order for `g` or for a supergraph of `g` whose first `g.m()` edges are
/// those of `g`.
struct Built {
    ann: AnnotatedOrder,
    stacks: Option<StackLayout>,
    reversed: bool,
}

fn build(g: &Dag, class: ClassArg, stacks: bool, opts: &ConstructOptions) -> Res<Built> {
    let construct = |e: ConstructError| match e {
        ConstructError::InvariantViolated { .. } | ConstructError::EmptinessViolated { .. } => {
            Failure::False(e.to_string())
        }
        _ => Failure::Class(e.to_string()),
    };
    let odag = |host: &Dag, c: OdagClass, allow_augment: bool| -> Res<(Dag, _)> {
        if let Some(seq) = find_base(host, c) {
            return Ok((host.clone(), seq));
        }
        if !allow_augment {
            return Err(Failure::Class(format!("no base edge yields a {c:?} construction sequence")));
        }
        augment_outerplanar(host, c).map_err(|e| Failure::Class(format!("augmentation: {e}")))
    };
    let single_source = |host: &Dag, reversed: bool| -> Res<Built> {
        let (aug, seq) = odag(host, OdagClass::SingleSource, true)?;
        let ann = order_single_source_with(&seq, opts).map_err(construct)?;
        let st = if stacks {
            Some(stacks_single_source_for(&aug, &seq).map_err(construct)?)
        } else {
            None
        };
        Ok(Built {
            ann,
            stacks: st,
            reversed,
        })
    };
    let plain = |ann: AnnotatedOrder, _host: Dag| Built {
        ann,
        stacks: None,
        reversed: false,
    };
    match class {
        ClassArg::SingleSource => {
            if g.sources().len() == 1 {
                single_source(g, false)
            } else if g.sinks().len() == 1 {
                single_source(&g.reverse(), true)
            } else {
                Err(Failure::Class(format!("{} sources and {} sinks", g.sources().len(), g.sinks().len())))
            }
        }
        ClassArg::Monotone => {
            let (h, seq) = odag(g, OdagClass::Monotone, false)?;
            Ok(plain(order_monotone_with(&seq, opts).map_err(construct)?, h))
        }
        ClassArg::Outerpath => {
            let (h, seq) = odag(g, OdagClass::Outerpath, true)?;
            Ok(plain(order_outerpath_with(&seq, opts).map_err(construct)?, h))
        }
        ClassArg::Up3tree => {
            let dec = peel_3tree(g).map_err(|e| Failure::Class(format!("3-tree peeling: {e}")))?;
            Ok(plain(order_up3tree_with(&dec, opts).map_err(construct)?, g.clone()))
        }
        ClassArg::Auto => {
            let mut last = None;
            for c in [
                ClassArg::SingleSource,
                ClassArg::Monotone,
                ClassArg::Outerpath,
                ClassArg::Up3tree,
            ] {
                match build(g, c, stacks, opts) {
                    Err(Failure::Class(m)) => last = Some(m),
                    other => return other,
                }
            }
            Err(Failure::Class(format!(
                "no construction applies (last: {})",
                last.unwrap_or_default()
            )))
        }
    }
}

fn layout(
    path: &Path,
    class: ClassArg,
    stacks: bool,
    parts: bool,
    check_frames: bool,
    out: Option<&Path>,
) -> Res<()> {
    let g = read_graph(path)?;
    let opts = ConstructOptions { check_frames };
    let b = build(&g, class, stacks, &opts)?;
    let mut order = b.ann.order.order().clone();
    if b.reversed {
        order = order.reversed();
    }
    let twist = max_twist(&g, &order).map_err(|e| Failure::False(e.to_string()))?;
    eprintln!(
        "class: {}{}  twist: {}  bound: {}",
        b.ann.class,
        if b.reversed { " (reversed)" } else { "" },
        twist.k(),
        b.ann.bound
    );
    if twist.k() > b.ann.bound {
        return Err(Failure::False(format!("twist {} exceeds bound {}", twist.k(), b.ann.bound)));
    }
    let mut text = if stacks {
        let l = match b.stacks {
            Some(l) => StackLayout::new(order.clone(), l.page_of[..g.m()].to_vec()),
            None => greedy_first_fit(&g, &order).map_err(|e| Failure::False(e.to_string()))?,
        };
        validate_layout(&g, &l).map_err(|e| Failure::False(format!("layout invalid: {e}")))?;
        l.to_text(&g)
    } else {
        format!("{order}\n")
    };
    if parts {
        // Part labels describe the order of the reversed graph.
        if b.reversed {
            text.push_str("# reversed ");
        }
        text.push_str(&b.ann.order.parts_line());
        text.push('\n');
    }
    emit(&text, out)
}

fn exact(path: &Path, max_k: usize, fixed: Option<&Path>, solver: &SolverArgs) -> Res<()> {
    let g = read_graph(path)?;
    let cfg = solver_config(solver)?;
    let res = match fixed {
        Some(p) => {
            let o = read_order(p, &g)?;
            if !stacklayout::order::is_linear_extension(&g, &o).map_err(|e| Failure::Input(e.to_string()))? {
                return Err(Failure::Input("fixed order is not a linear extension".into()));
            }
            stack_number_fixed_order(&g, &o, max_k, &cfg)?
        }
        None => stack_number(&g, max_k, &cfg)?,
    };
    match res {
        StackNumber::Exact { k, layout } => {
            println!("{k}");
            print!("{}", layout.to_text(&g));
        }
        StackNumber::Exceeds(k) => println!(">{k}"),
    }
    Ok(())
}
