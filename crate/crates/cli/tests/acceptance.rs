use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stacklayout::constructive::{
    order_monotone, order_outerpath, order_single_source, order_up3tree, stacks_single_source_for,
    up3tree::order_up3tree_with, ConstructOptions,
};
use stacklayout::extensions::count_linear_extensions;
use stacklayout::generators::{
    gen_monotone_odag, gen_outerpath, gen_single_source_odag, gen_twist_gadget, gen_up3tree, random_dag,
    random_dag_with_edges, Family,
};
use stacklayout::layout::validate_layout;
use stacklayout::order::is_linear_extension;
use stacklayout::recognition::{find_base, peel_3tree, st_upward_check, OdagClass};
use stacklayout::sat::{brute_force_stack_number, stack_number, SolverConfig, StackNumber};
use stacklayout::search::{mop_topologies, sample_orientations, search_witness, ClassFilter, SearchConfig};
use stacklayout::{max_twist, max_twist_bruteforce, Dag, LinearOrder};

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

const SEEDS: u64 = 100;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stacklayout"))
}

fn cli_exit(args: &[&str]) -> Result<i32, String> {
    let out = cli().args(args).output().map_err(|e| e.to_string())?;
    out.status.code().ok_or_else(|| "killed by signal".to_string())
}

fn write_graph(dir: &Path, name: &str, g: &Dag) -> String {
    let p = dir.join(name);
    std::fs::write(&p, g.to_text()).unwrap();
    p.to_string_lossy().into_owned()
}

fn exact_k(g: &Dag, k_max: usize) -> Result<Option<usize>, String> {
    match stack_number(g, k_max, &SolverConfig::default()).map_err(|e| e.to_string())? {
        StackNumber::Exact { k, layout } => {
            validate_layout(g, &layout).map_err(|e| e.to_string())?;
            Ok(Some(k))
        }
        StackNumber::Exceeds(_) => Ok(None),
    }
}

fn single_source_twist() -> Outcome {
    let mut worst = 0;
    for n in [10, 50, 200] {
        for seed in 0..SEEDS {
            let g = gen_single_source_odag(n, seed).map_err(|e| e.to_string())?;
            let seq = find_base(&g, OdagClass::SingleSource).ok_or(format!("n={n} seed={seed}: no base"))?;
            let a = order_single_source(&seq).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
            let o = a.order.order();
            ensure(is_linear_extension(&g, o).unwrap(), || format!("n={n} seed={seed}: not an extension"))?;
            let t = max_twist(&g, o).unwrap().k();
            ensure(t <= 3, || format!("n={n} seed={seed}: twist {t}"))?;
            worst = worst.max(t);
        }
    }
    Ok(format!("300 graphs, max twist {worst}"))
}

fn single_source_stacks() -> Outcome {
    let mut worst = 0;
    for n in [10, 50, 200] {
        for seed in 0..SEEDS {
            let g = gen_single_source_odag(n, seed).map_err(|e| e.to_string())?;
            let seq = find_base(&g, OdagClass::SingleSource).ok_or(format!("n={n} seed={seed}: no base"))?;
            let a = order_single_source(&seq).map_err(|e| e.to_string())?;
            let l = stacks_single_source_for(&g, &seq).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
            validate_layout(&g, &l).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
            ensure(l.k <= 4, || format!("n={n} seed={seed}: {} pages", l.k))?;
            ensure(&l.order == a.order.order(), || format!("n={n} seed={seed}: order differs"))?;
            worst = worst.max(l.k);
        }
    }
    Ok(format!("300 graphs, max pages {worst}"))
}

fn monotone_outerpath_twist() -> Outcome {
    let (mut wm, mut wo) = (0, 0);
    for n in [10, 50, 200] {
        for seed in 0..SEEDS {
            let g = gen_monotone_odag(n, seed).map_err(|e| e.to_string())?;
            let seq = find_base(&g, OdagClass::Monotone).ok_or(format!("monotone n={n} seed={seed}: no base"))?;
            let a = order_monotone(&seq).map_err(|e| format!("monotone n={n} seed={seed}: {e}"))?;
            let t = max_twist(&g, a.order.order()).map_err(|e| e.to_string())?.k();
            ensure(t <= 4, || format!("monotone n={n} seed={seed}: twist {t}"))?;
            wm = wm.max(t);

            let g = gen_outerpath(n, seed).map_err(|e| e.to_string())?;
            let seq = find_base(&g, OdagClass::Outerpath).ok_or(format!("outerpath n={n} seed={seed}: no base"))?;
            let a = order_outerpath(&seq).map_err(|e| format!("outerpath n={n} seed={seed}: {e}"))?;
            let t = max_twist(&g, a.order.order()).map_err(|e| e.to_string())?.k();
            ensure(t <= 4, || format!("outerpath n={n} seed={seed}: twist {t}"))?;
            wo = wo.max(t);
        }
    }
    Ok(format!("max twist monotone {wm}, outerpath {wo}"))
}

fn up3tree_twist() -> Outcome {
    let mut worst = 0;
    for n in [10, 50, 300] {
        for seed in 0..SEEDS {
            let g = gen_up3tree(n, seed).map_err(|e| e.to_string())?;
            let dec = peel_3tree(&g).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
            let a = if n == 10 {
                order_up3tree_with(&dec, &ConstructOptions::checked())
            } else {
                order_up3tree(&dec)
            }
            .map_err(|e| format!("n={n} seed={seed}: {e}"))?;
            let t = max_twist(&g, a.order.order()).map_err(|e| e.to_string())?.k();
            ensure(t <= 5, || format!("n={n} seed={seed}: twist {t}"))?;
            worst = worst.max(t);
        }
    }
    Ok(format!("max twist {worst}, frame invariants hold at n=10"))
}

fn sat_matches_brute_force() -> Outcome {
    let mut graphs = Vec::new();
    for n in 2..=6 {
        for (i, t) in mop_topologies(n).iter().enumerate() {
            graphs.extend(sample_orientations(n, t, 200, (n * 100 + i) as u64));
        }
    }
    let mop_count = graphs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..500 {
        let n = rng.random_range(1..=7);
        let p = rng.random_range(0.1..0.7);
        graphs.push(random_dag(n, p, seed));
    }
    let mut hist = [0usize; 8];
    for g in &graphs {
        let brute = brute_force_stack_number(g);
        let sat = exact_k(g, 7)?.ok_or("stack number above 7")?;
        ensure(sat == brute, || format!("sat {sat} vs brute {brute} on\n{}", g.to_text()))?;
        hist[sat] += 1;
    }
    Ok(format!(
        "{} oriented topologies + 500 random DAGs agree; stack numbers 0..4: {:?}",
        mop_count,
        &hist[..5]
    ))
}

fn twist_gadget() -> Outcome {
    for k in 2..=4 {
        let g = gen_twist_gadget(k).map_err(|e| e.to_string())?;
        let s = exact_k(&g, k)?;
        ensure(s == Some(k), || format!("gadget({k}) stack number {s:?}"))?;
    }
    for k in 1..=5 {
        let g = gen_twist_gadget(k).map_err(|e| e.to_string())?;
        let c = count_linear_extensions(&g, 2);
        ensure(c == 1, || format!("gadget({k}) has {c} linear extensions"))?;
    }
    Ok("stack number k for k = 2..4, unique extension for k <= 5".into())
}

fn single_source_sink_witness(dir: &Path) -> Outcome {
    let out = search_witness(&SearchConfig::new(ClassFilter::SsSinkUpwardOdag, 6, 3)).map_err(|e| e.to_string())?;
    let w = out.witness.ok_or("no witness found")?.graph;
    let ext = count_linear_extensions(&w, 10);
    ensure(ext == 2, || format!("witness has {ext} linear extensions"))?;
    ensure(st_upward_check(&w) == Ok(true), || "witness fails the upward check".into())?;
    let brute = brute_force_stack_number(&w);
    ensure(brute == 3, || format!("brute-force stack number {brute}"))?;
    let path = write_graph(dir, "witness.dag", &w);
    let code = cli_exit(&["verify", &path, "--at-least", "3"])?;
    ensure(code == 0, || format!("verify exited {code}"))?;
    Ok(format!("n = {}, m = {}, {} candidates examined", w.n(), w.m(), out.examined))
}

fn verify_certifies(dir: &Path) -> Outcome {
    for k in 2..=4 {
        let path = write_graph(dir, &format!("gadget{k}.dag"), &gen_twist_gadget(k).unwrap());
        let at = cli_exit(&["verify", &path, "--at-least", &k.to_string()])?;
        let above = cli_exit(&["verify", &path, "--at-least", &(k + 1).to_string()])?;
        ensure(at == 0 && above == 1, || format!("gadget({k}): exits {at} and {above}"))?;
    }
    let mut checked = 0;
    for seed in 0..40 {
        let g = random_dag(6, 0.6, 1000 + seed);
        let s = brute_force_stack_number(&g);
        let path = write_graph(dir, &format!("user{seed}.dag"), &g);
        for k in 1..=s + 1 {
            let code = cli_exit(&["verify", &path, "--at-least", &k.to_string()])?;
            let want = if k <= s { 0 } else { 1 };
            ensure(code == want, || format!("seed {seed} k {k}: exit {code}, stack number {s}"))?;
            checked += 1;
        }
    }
    Ok(format!("gadgets k = 2..4 and {checked} verify calls on user graphs"))
}

fn random_extension(g: &Dag, rng: &mut ChaCha8Rng) -> LinearOrder {
    let mut indeg: Vec<usize> = (0..g.n()).map(|v| g.in_neighbors(v).len()).collect();
    let mut ready: Vec<usize> = (0..g.n()).filter(|&v| indeg[v] == 0).collect();
    let mut seq = Vec::with_capacity(g.n());
    while !ready.is_empty() {
        let v = ready.swap_remove(rng.random_range(0..ready.len()));
        seq.push(v);
        for &w in g.out_neighbors(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(w);
            }
        }
    }
    LinearOrder::from_sequence(seq).unwrap()
}

fn twist_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0;
    for seed in 0..1000 {
        let n = rng.random_range(2..=14);
        let m = rng.random_range(0..=20.min(n * (n - 1) / 2));
        let g = random_dag_with_edges(n, m, seed);
        let mut o = random_extension(&g, &mut rng);
        if rng.random_bool(0.1) {
            let mut seq = o.sequence().to_vec();
            seq.shuffle(&mut rng);
            let shuffled = LinearOrder::from_sequence(seq).unwrap();
            if is_linear_extension(&g, &shuffled).unwrap() {
                o = shuffled;
            }
        }
        let fast = max_twist(&g, &o).map_err(|e| e.to_string())?;
        let brute = max_twist_bruteforce(&g, &o).map_err(|e| e.to_string())?;
        ensure(fast.k() == brute.k(), || format!("seed {seed}: {} vs {}", fast.k(), brute.k()))?;
        ensure(fast.is_valid(&o), || format!("seed {seed}: invalid certificate"))?;
        worst = worst.max(fast.k());
    }
    Ok(format!("1000 pairs agree, largest twist {worst}"))
}

fn determinism(dir: &Path) -> Outcome {
    let mut files = 0;
    let run = |args: &[&str]| -> Result<Vec<u8>, String> {
        let out = cli().args(args).output().map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr))
        })?;
        Ok(out.stdout)
    };
    for family in Family::ALL {
        for (n, seed) in [(8, 1), (30, 7)] {
            let n = if family == Family::TwistGadget { n / 4 } else { n };
            let mut outputs = Vec::new();
            for rep in 0..2 {
                let root = dir.join(format!("run{rep}"));
                let root = root.to_string_lossy();
                run(&[
                    "generate",
                    "--family",
                    family.name(),
                    "--n",
                    &n.to_string(),
                    "--seed",
                    &seed.to_string(),
                    "--corpus",
                    &root,
                ])?;
                let graph = format!("{root}/{}/n{n}_s{seed}.dag", family.name());
                let g = std::fs::read(&graph).map_err(|e| e.to_string())?;
                let lay = format!("{graph}.layout");
                let code = cli_exit(&["layout", &graph, "--stacks", "--parts", "--out", &lay])?;
                let l = if code == 0 { std::fs::read(&lay).map_err(|e| e.to_string())? } else { Vec::new() };
                let ex = if n <= 8 { run(&["exact", &graph])? } else { Vec::new() };
                outputs.push((g, code, l, ex));
            }
            ensure(outputs[0] == outputs[1], || format!("{} n={n} seed={seed} differs", family.name()))?;
            files += 1;
        }
    }
    let a = run(&["search", "--class", "face-consistent-3tree", "--target-k", "2", "--n-max", "6"])?;
    let b = run(&["search", "--class", "face-consistent-3tree", "--target-k", "2", "--n-max", "6"])?;
    ensure(a == b, || "search output differs".into())?;
    Ok(format!("{files} generator/layout/exact runs and a search repeated byte-identically"))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<(&str, Check)> = vec![
        ("single-source orders have twist <= 3", Box::new(single_source_twist)),
        ("single-source 4-stack layouts are valid", Box::new(single_source_stacks)),
        ("monotone and outerpath orders have twist <= 4", Box::new(monotone_outerpath_twist)),
        ("face-consistent 3-tree orders have twist <= 5", Box::new(up3tree_twist)),
        ("SAT stack number equals brute force", Box::new(sat_matches_brute_force)),
        ("twist gadget has stack number k", Box::new(twist_gadget)),
        ("3-stack single-source single-sink witness", Box::new(|| single_source_sink_witness(dir.path()))),
        ("verify certifies lower bounds", Box::new(|| verify_certifies(dir.path()))),
        ("max twist equals brute force", Box::new(twist_oracle)),
        ("generators and layouts are deterministic", Box::new(|| determinism(dir.path()))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = Duration::as_secs_f64(&start.elapsed());
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
