use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use tutte_core::antimatroid::{
    a_table, beta_sum, convex_family, family_identities, tutte_via_convex, unique_interior_sets,
    unique_interior_sum, Family,
};
use tutte_core::fixtures::{registry, run_fixtures};
use tutte_core::identities::{
    brylawski_check, brylawski_clauses, i_k_trace, verify_affine_poly, BrylawskiReport,
};
use tutte_core::io::{load_file, rank_table_json, BasisSpec, Loaded};
use tutte_core::realizability::{find_matroids_with_tutte, is_greedoid_basis_family, SearchBudget};
use tutte_core::tutte::compute;
use tutte_core::{BiPoly, PivotOrder, RankedSet, MAX_N};

/// Generalized Tutte polynomials of ranked sets, greedoids and antimatroids.
#[derive(Parser)]
#[command(name = "tutte", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also run the deletion-contraction recursion and compare.
    #[arg(long, global = true)]
    cross_check: bool,
    /// Seed for the pivot order used by --cross-check.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Node limit for the exhaustive searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tutte polynomial of a structure.
    Compute {
        file: PathBuf,
        /// Also print the corank-nullity polynomial S(u, v).
        #[arg(long)]
        emit_s_poly: bool,
        /// Also print the compiled rank table.
        #[arg(long)]
        emit_rank_table: bool,
    },
    /// Which axioms a structure satisfies, with witnesses.
    Classify { file: PathBuf },
    /// The affine relations I_0..I_n.
    Identities {
        file: PathBuf,
        /// Evaluate the matroid basis clauses.
        #[arg(long)]
        brylawski: bool,
        /// Recompute every I_k as a matrix trace.
        #[arg(long)]
        trace_check: bool,
    },
    /// Convex sets of an antimatroid.
    Convex(ConvexArgs),
    /// Apply minors and constructions left to right:
    /// --delete L, --contract L, --dual, --truncate, --extend L, --coextend L.
    Minors {
        file: PathBuf,
        #[arg(
            trailing_var_arg = true,
            allow_hyphen_values = true,
            value_name = "OPS"
        )]
        ops: Vec<String>,
    },
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Run the built-in fixture registry.
    Fixtures {
        /// Only fixtures whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Args)]
struct ConvexArgs {
    file: PathBuf,
    /// Print the table of convex sets by size and interior size.
    #[arg(long)]
    a_table: bool,
    /// Check the low-order relations and the family prediction.
    #[arg(long)]
    identities: bool,
    /// List the convex sets whose interior is exactly this element.
    #[arg(long, value_name = "ELEM")]
    unique_interior: Option<String>,
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Is there a greedoid with exactly these bases?
    BasisRealizable { file: PathBuf },
    /// Matroids with the same Tutte polynomial as the input.
    MatroidEqual {
        file: PathBuf,
        /// Ground-set size, when the file holds a bare polynomial.
        #[arg(long)]
        n: Option<usize>,
    },
}

struct Report {
    text: String,
    json: Value,
    pass: bool,
}

fn max_n() -> Result<usize> {
    match std::env::var("TUTTE_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("TUTTE_MAX_N must be an integer, got `{v}`")),
        Err(_) => Ok(MAX_N),
    }
}

fn load(path: &Path) -> Result<Loaded> {
    Ok(load_file(path, max_n()?)?)
}

fn load_ranked(path: &Path) -> Result<(RankedSet, Option<Family>)> {
    match load(path)? {
        Loaded::Ranked { g, family } => Ok((g, family)),
        Loaded::Polynomial { .. } => bail!("this command needs a structure, not a polynomial"),
    }
}

fn budget(cli: &Cli) -> SearchBudget {
    match cli.budget {
        Some(n) => SearchBudget::with_node_limit(n),
        None => SearchBudget::default(),
    }
}

fn pivot_order(seed: Option<u64>, n: usize) -> PivotOrder {
    match seed {
        None => PivotOrder::Lowest,
        Some(s) => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
            PivotOrder::Priority(order)
        }
    }
}

fn poly_json(p: &BiPoly) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn table_json(g: &RankedSet) -> Value {
    serde_json::from_str(&rank_table_json(g)).expect("rank table JSON parses")
}

fn cmd_compute(cli: &Cli, file: &Path, emit_s: bool, emit_table: bool) -> Result<Report> {
    let (g, p) = match load(file)? {
        Loaded::Ranked { g, .. } => {
            let order = pivot_order(cli.seed, g.n());
            let res = compute(&g, cli.cross_check, &order)?;
            (Some(g), (res.tutte, Some(res.s_poly)))
        }
        Loaded::Polynomial { p, .. } => (None, (p, None)),
    };
    let (t, s) = p;
    let mut text = format!("T(x, y) = {t}\n");
    let mut out = json!({ "tutte": poly_json(&t), "text": t.to_string() });
    if cli.cross_check && g.is_some() {
        text.push_str("expansion and recursion agree\n");
        out["cross_checked"] = json!(true);
    }
    if emit_s {
        if let Some(s) = &s {
            text.push_str(&format!("S(u, v) = {}\n", s.render("u", "v")));
            out["s_poly"] = poly_json(s);
        }
    }
    if emit_table {
        if let Some(g) = &g {
            text.push_str(&format!("rank table: {}\n", g.table_ref()));
            out["rank_table"] = table_json(g);
        }
    }
    Ok(Report {
        text,
        json: out,
        pass: true,
    })
}

fn cmd_classify(file: &Path) -> Result<Report> {
    let (g, _) = load_ranked(file)?;
    let ground = g.ground();
    let greedoid = g.greedoid_violation();
    let matroid = g.matroid_violation();
    let antimatroid = g.antimatroid_violation();
    let isthmuses: Vec<&str> = g.isthmuses().into_iter().map(|p| ground.label(p)).collect();
    let verdict = |name: &str, w: &Option<tutte_core::Witness>| match w {
        None => (format!("{name}: yes\n"), Value::Null),
        Some(w) => {
            let d = w.describe(ground);
            (format!("{name}: no ({d})\n"), json!(d))
        }
    };
    let (gt, gw) = verdict("greedoid", &greedoid);
    let (mt, mw) = verdict("matroid", &matroid);
    let (at, aw) = verdict("antimatroid", &antimatroid);
    let mut text = format!("n = {}, r(S) = {}\nranked set: yes\n", g.n(), g.full_rank());
    text.push_str(&gt);
    text.push_str(&mt);
    text.push_str(&at);
    if isthmuses.is_empty() {
        text.push_str("isthmus-free: yes\n");
    } else {
        text.push_str(&format!("isthmus-free: no ({})\n", isthmuses.join(", ")));
    }
    let json = json!({
        "n": g.n(),
        "r": g.full_rank(),
        "ranked": true,
        "greedoid": greedoid.is_none(),
        "matroid": matroid.is_none(),
        "antimatroid": antimatroid.is_none(),
        "isthmus_free": isthmuses.is_empty(),
        "witnesses": { "greedoid": gw, "matroid": mw, "antimatroid": aw },
        "isthmuses": isthmuses,
    });
    Ok(Report {
        text,
        json,
        pass: true,
    })
}

fn clauses_text(b: &BrylawskiReport) -> String {
    let mut s = format!(
        "basis clauses (isthmus-free: {}, loopless: {}, simple: {})\n",
        b.isthmus_free, b.loopless, b.simple
    );
    if !b.isthmus_free {
        s.push_str("  warning: the clauses assume no isthmuses\n");
    }
    for c in &b.clauses {
        s.push_str(&format!(
            "  ({}) {}",
            c.clause,
            if c.pass { "pass" } else { "FAIL" }
        ));
        for w in c.failures.iter().take(4) {
            s.push_str(&format!(
                "  {}_{{{},{}}} = {} expected {}",
                w.what, w.i, w.j, w.got, w.expected
            ));
        }
        s.push('\n');
    }
    s
}

fn cmd_identities(file: &Path, brylawski: bool, trace_check: bool) -> Result<Report> {
    let (p, n, r, matroid, structure) = match load(file)? {
        Loaded::Ranked { g, .. } => {
            let t = compute(&g, false, &PivotOrder::Lowest)?.tutte;
            let m = g.is_matroid().then(|| g.clone());
            (t, g.n(), g.full_rank() as usize, m, true)
        }
        Loaded::Polynomial { p, n, r } => {
            let n = n.ok_or_else(|| anyhow!("a polynomial input needs `n` for identities"))?;
            let r = r.ok_or_else(|| anyhow!("a polynomial input needs `r` for identities"))?;
            (p, n, r, None, false)
        }
    };
    let mut report = verify_affine_poly(&p, n, r as i64);
    if brylawski {
        report.brylawski = Some(match &matroid {
            Some(m) => brylawski_check(m)?,
            None => {
                let clauses = brylawski_clauses(&p, n, r);
                let pass = clauses.iter().all(|c| c.pass);
                BrylawskiReport {
                    isthmus_free: true,
                    loopless: true,
                    simple: true,
                    clauses,
                    pass,
                }
            }
        });
    }
    let mut pass = report.pass;
    let mut text = format!("n = {n}, r = {r}\n k  I_k  expected\n");
    for (k, (got, want)) in report.i_values.iter().zip(&report.expected).enumerate() {
        let mark = if got == want { "" } else { "  <-" };
        text.push_str(&format!("{k:>2}  {got:>3}  {want:>3}{mark}\n"));
    }
    let mut json = serde_json::to_value(&report)?;
    if let Some(b) = &report.brylawski {
        if matroid.is_none() {
            text.push_str(if structure {
                "note: not a matroid, clauses evaluated on its polynomial\n"
            } else {
                "note: clauses evaluated on the polynomial as given\n"
            });
        }
        text.push_str(&clauses_text(b));
        pass &= b.pass;
    }
    if trace_check {
        let mut bad = Vec::new();
        for k in 0..=n {
            match i_k_trace(&p, k, n, r) {
                Ok(v) if v == p.i_k(k) => {}
                Ok(v) => bad.push(format!("k={k}: trace {v}, sum {}", p.i_k(k))),
                Err(e) => bad.push(format!("k={k}: {e}")),
            }
        }
        text.push_str(&if bad.is_empty() {
            "trace form agrees for every k\n".to_string()
        } else {
            format!("trace form disagrees: {}\n", bad.join("; "))
        });
        json["trace_check"] = json!({ "pass": bad.is_empty(), "failures": bad });
        pass &= bad.is_empty();
    }
    text.push_str(if pass { "PASS\n" } else { "FAIL\n" });
    Ok(Report { text, json, pass })
}

fn cmd_convex(args: &ConvexArgs) -> Result<Report> {
    let (g, family) = load_ranked(&args.file)?;
    let cf = convex_family(&g)?;
    let ground = g.ground();
    let n = g.n();
    let at = a_table(&cf);
    let f: Vec<u64> = at.f.clone();
    let mut text = format!("{} convex sets on {n} elements\nf = {:?}\n", cf.len(), f);
    let mut json = json!({ "n": n, "convex_sets": cf.len(), "f": f });
    let mut pass = true;
    if args.a_table {
        text.push_str("a[i][j] (i = size, j = interior size)\n");
        for (i, row) in at.a.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>4}")).collect();
            text.push_str(&format!("{i:>2} {}\n", cells.join("")));
        }
        json["a"] = json!(at.a);
    }
    if args.identities {
        let t = compute(&g, false, &PivotOrder::Lowest)?.tutte;
        let via = tutte_via_convex(&cf) == t;
        let ids = family_identities(&at, n);
        let beta = beta_sum(&at);
        let uis = unique_interior_sum(&cf);
        text.push_str(&format!(
            "convex-set sum equals T: {via}\nEuler sum {}\nk = 1: {} and {}\nk = 2: {}\n",
            ids.euler, ids.k1.0, ids.k1.1, ids.k2
        ));
        text.push_str(&format!(
            "alternating sum of i f_i: {beta}\nunique-interior sum: {uis}\n"
        ));
        pass &= via && ids.pass;
        json["identities"] = serde_json::to_value(&ids)?;
        json["convex_sum_matches"] = json!(via);
        json["beta_sum"] = json!(beta);
        json["unique_interior_sum"] = json!(uis);
        if let Some(fam) = &family {
            let pred = fam.predict();
            let ok = n < 2 || (pred.beta == beta && pred.unique_interior == uis);
            text.push_str(&format!(
                "{} ({}: {}) predicts {} and {}: {}\n",
                fam.name(),
                pred.invariant,
                pred.value,
                pred.beta,
                pred.unique_interior,
                if ok { "match" } else { "MISMATCH" }
            ));
            pass &= ok;
            json["prediction"] = serde_json::to_value(&pred)?;
            json["prediction_matches"] = json!(ok);
        }
    }
    if let Some(label) = &args.unique_interior {
        let p = ground.index_of(label)?;
        let sets = unique_interior_sets(&cf, p);
        let shown: Vec<String> = sets.iter().map(|&c| ground.show(c)).collect();
        text.push_str(&format!(
            "convex sets with interior {{{label}}}: {}\n",
            if shown.is_empty() {
                "none".to_string()
            } else {
                shown.join(" ")
            }
        ));
        json["unique_interior"] = json!({ "element": label, "sets": shown });
    }
    if args.identities {
        text.push_str(if pass { "PASS\n" } else { "FAIL\n" });
    }
    Ok(Report { text, json, pass })
}

enum Op {
    Delete(String),
    Contract(String),
    Dual,
    Truncate,
    Extend(String),
    Coextend(String),
}

fn parse_ops(raw: &[String]) -> Result<Vec<Op>> {
    let mut ops = Vec::new();
    let mut it = raw.iter();
    while let Some(flag) = it.next() {
        let mut label = || {
            it.next()
                .cloned()
                .ok_or_else(|| anyhow!("{flag} needs an element label"))
        };
        ops.push(match flag.as_str() {
            "--delete" => Op::Delete(label()?),
            "--contract" => Op::Contract(label()?),
            "--dual" => Op::Dual,
            "--truncate" => Op::Truncate,
            "--extend" => Op::Extend(label()?),
            "--coextend" => Op::Coextend(label()?),
            other => bail!("unknown minor operation `{other}`"),
        });
    }
    Ok(ops)
}

fn cmd_minors(file: &Path, raw: &[String]) -> Result<Report> {
    let ops = parse_ops(raw)?;
    let (mut g, _) = load_ranked(file)?;
    let mut steps = Vec::new();
    for op in &ops {
        let (name, next) = match op {
            Op::Delete(l) => (
                format!("delete {l}"),
                RankedSet::from_table(g.delete_label(l)?)?,
            ),
            Op::Contract(l) => (
                format!("contract {l}"),
                RankedSet::from_table(g.contract_label(l)?)?,
            ),
            Op::Dual => ("dual".to_string(), g.dual()),
            Op::Truncate => ("truncate".to_string(), g.truncate()?),
            Op::Extend(l) => (format!("extend {l}"), g.free_extension(l)?),
            Op::Coextend(l) => (format!("coextend {l}"), g.free_coextension(l)?),
        };
        steps.push(name);
        g = next;
    }
    let text = format!(
        "{}\nn = {}, r(S) = {}\n{}\n",
        if steps.is_empty() {
            "no operations".to_string()
        } else {
            steps.join(", then ")
        },
        g.n(),
        g.full_rank(),
        g.table_ref()
    );
    Ok(Report {
        text,
        json: json!({ "operations": steps, "result": table_json(&g) }),
        pass: true,
    })
}

fn cmd_search(cli: &Cli, cmd: &SearchCommand) -> Result<Report> {
    let budget = budget(cli);
    match cmd {
        SearchCommand::BasisRealizable { file } => {
            let text = std::fs::read_to_string(file)
                .with_context(|| format!("reading {}", file.display()))?;
            let (ground, bases) = BasisSpec::from_json(&text)?.compile()?;
            let res = is_greedoid_basis_family(&ground, &bases, &budget)?;
            let mut out = if res.realizable {
                format!(
                    "realizable: feasible family {}\n",
                    res.witness_sets.clone().unwrap_or_default().join(" ")
                )
            } else {
                "NOT realizable\n".to_string()
            };
            for line in &res.refutation {
                out.push_str(&format!("  {line}\n"));
            }
            out.push_str(&format!("{} search nodes\n", res.nodes));
            Ok(Report {
                text: out,
                json: serde_json::to_value(&res)?,
                pass: true,
            })
        }
        SearchCommand::MatroidEqual { file, n } => {
            let (p, size) = match load(file)? {
                Loaded::Ranked { g, .. } => {
                    let t = compute(&g, false, &PivotOrder::Lowest)?.tutte;
                    (t, n.unwrap_or(g.n()))
                }
                Loaded::Polynomial { p, n: file_n, .. } => {
                    let size = n
                        .or(file_n)
                        .ok_or_else(|| anyhow!("give the ground-set size with --n"))?;
                    (p, size)
                }
            };
            let found = find_matroids_with_tutte(&p, size, &budget)?;
            let mut text = format!("{} matroids on {size} elements with T = {p}\n", found.len());
            for m in &found {
                text.push_str(&format!("  {}\n", m.table_ref()));
            }
            let tables: Vec<Value> = found.iter().map(table_json).collect();
            Ok(Report {
                text,
                json: json!({ "n": size, "tutte": poly_json(&p), "count": found.len(), "matroids": tables }),
                pass: true,
            })
        }
    }
}

fn cmd_fixtures(filter: Option<&str>) -> Result<Report> {
    let outcomes = run_fixtures(&registry(), filter);
    if outcomes.is_empty() {
        bail!("no fixture matches the filter");
    }
    let mut text = String::new();
    for o in &outcomes {
        text.push_str(&format!(
            "{} {:<20} {}\n",
            if o.pass { "PASS" } else { "FAIL" },
            o.name,
            o.about
        ));
        for c in o.checks.iter().filter(|c| !c.pass) {
            text.push_str(&format!("       {}: {}\n", c.name, c.detail));
        }
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    text.push_str(&format!("{passed}/{} fixtures pass\n", outcomes.len()));
    Ok(Report {
        text,
        json: serde_json::to_value(&outcomes)?,
        pass: passed == outcomes.len(),
    })
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Compute {
            file,
            emit_s_poly,
            emit_rank_table,
        } => cmd_compute(cli, file, *emit_s_poly, *emit_rank_table),
        Command::Classify { file } => cmd_classify(file),
        Command::Identities {
            file,
            brylawski,
            trace_check,
        } => cmd_identities(file, *brylawski, *trace_check),
        Command::Convex(args) => cmd_convex(args),
        Command::Minors { file, ops } => cmd_minors(file, ops),
        Command::Search(cmd) => cmd_search(cli, cmd),
        Command::Fixtures { filter } => cmd_fixtures(filter.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("reports serialize")
                );
            } else {
                print!("{}", report.text);
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
