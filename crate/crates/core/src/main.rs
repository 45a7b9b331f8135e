use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use clexp::chartab::CharacterTable;
use clexp::classalg::{coset_structure, AuditPredicate};
use clexp::named::{named_table, sha256_hex, table_names};
use clexp::verify::{run_check, run_suite, SuiteOptions, SuiteReport, Tier};
use clexp::{ClassPartition, Error, Group, GroupSpec, NormalSubset};

#[derive(Debug, Parser)]
#[command(name = "clexp", version, about = "Conjugacy-class expansion toolkit and verification harness")]
struct Cli {
    /// TOML file with `enumeration_cap`, `search_budget` and `seed` defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Largest group order that may be enumerated.
    #[arg(long, global = true)]
    cap: Option<u128>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the conjugacy classes.
    Classes(GroupArgs),
    /// Print the rational closure D_K of a union of classes.
    Dk {
        #[command(flatten)]
        group: GroupArgs,
        /// Comma-separated class names.
        #[arg(long, value_delimiter = ',', required = true)]
        classes: Vec<String>,
    },
    /// Print K² and the expansion verdict, or the structure of a coset yL.
    Square {
        #[command(flatten)]
        group: GroupArgs,
        /// Comma-separated class names forming K.
        #[arg(long, value_delimiter = ',', conflicts_with = "coset_of", required_unless_present = "coset_of")]
        classes: Vec<String>,
        /// Spec of a normal subgroup L; y is the first generator outside L.
        #[arg(long)]
        coset_of: Option<String>,
    },
    /// Audit every union of odd-order classes against a predicate.
    Audit {
        #[command(flatten)]
        group: GroupArgs,
        /// expansion | square-set | power-union:n | p-power:p
        #[arg(long, default_value = "expansion")]
        predicate: String,
        /// Largest number of odd-order classes to search over.
        #[arg(long, default_value_t = 24)]
        bound: usize,
    },
    /// Character table tools.
    Ctbl {
        #[command(subcommand)]
        action: CtblCommand,
    },
    /// Run the registered verification checks.
    PaperSuite {
        /// fast | full | slow; each tier includes the ones below it.
        #[arg(long, default_value = "fast")]
        tier: Tier,
        /// Seed for the randomized checks.
        #[arg(long)]
        seed: Option<u64>,
        /// Product budget for the slow-tier wreath search.
        #[arg(long)]
        budget: Option<u64>,
        /// Run only the check with this id.
        #[arg(long)]
        check: Option<String>,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Keep elapsed times in the JSON report, which then differs between runs.
        #[arg(long)]
        timings: bool,
    },
    /// For an odd-order class C: whether C² has an even-order element, and
    /// involutions t with tC meeting order 4.
    Probe {
        #[command(flatten)]
        group: GroupArgs,
        /// Name of an odd-order class, e.g. `7A`.
        #[arg(long)]
        class: String,
    },
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Group spec, e.g. `alt:5`, `psl2:7`, `wreath(sym:3,2)`, `name:M11`.
    spec: String,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum CtblCommand {
    /// Validate a table file (or `table:NAME` for a packaged table).
    Check {
        /// Table JSON file, or `table:NAME`.
        file: String,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Class multiplication coefficient for classes i, j, k.
    Triple { file: String, i: String, j: String, k: String },
    /// Whether C_a C_b = C_c by the character criterion.
    Hj { file: String, a: String, b: String, c: String },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    enumeration_cap: Option<u128>,
    search_budget: Option<u64>,
    seed: Option<u64>,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Spec(_)
            | Error::UnknownClassName(_)
            | Error::UnknownGroup(_)
            | Error::InvalidParameters(_)
            | Error::InvalidClass(_)
            | Error::NotOddClass(_)
            | Error::UnsupportedField { .. }
            | Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

type CliResult = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<Config, Failure> {
    let Some(path) = path else { return Ok(Config::default()) };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> CliResult {
    let config = load_config(cli.config.as_deref())?;
    let cap = cli.cap.or(config.enumeration_cap).unwrap_or(clexp::DEFAULT_ENUMERATION_CAP);
    match cli.command {
        Command::Classes(g) => classes(&g, cap),
        Command::Dk { group, classes } => dk(&group, &classes, cap),
        Command::Square { group, classes, coset_of } => match coset_of {
            Some(l) => square_coset(&group, &l),
            None => square(&group, &classes, cap),
        },
        Command::Audit { group, predicate, bound } => audit(&group, &predicate, bound, cap),
        Command::Ctbl { action } => ctbl(action),
        Command::PaperSuite { tier, seed, budget, check, json, timings } => {
            let mut options = SuiteOptions::default();
            options.seed = seed.or(config.seed).unwrap_or(options.seed);
            options.search_budget = budget.or(config.search_budget).unwrap_or(options.search_budget);
            paper_suite(tier, &options, check.as_deref(), json.as_deref(), timings)
        }
        Command::Probe { group, class } => probe(&group, &class, cap),
    }
}

fn build(spec: &str) -> Result<Group, Failure> {
    Ok(spec.parse::<GroupSpec>()?.build()?)
}

fn partition(g: &GroupArgs, cap: u128) -> Result<ClassPartition, Failure> {
    Ok(ClassPartition::with_cap(&build(&g.spec)?, cap)?)
}

fn envelope(command: &str, spec: &str, result: serde_json::Value) -> serde_json::Value {
    json!({ "command": command, "spec": spec, "version": clexp::VERSION, "result": result })
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn subset(p: &ClassPartition, names: &[String]) -> Result<NormalSubset, Failure> {
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(p.subset(&names)?)
}

fn classes(g: &GroupArgs, cap: u128) -> CliResult {
    let p = partition(g, cap)?;
    if g.json {
        let rows: Vec<_> = p
            .classes()
            .iter()
            .map(|c| json!({"name": c.name, "size": c.size, "order": c.order, "representative": c.representative.to_string()}))
            .collect();
        print_json(&envelope("classes", &g.spec, json!({"order": p.group().order().to_string(), "classes": rows})));
        return Ok(true);
    }
    println!("{}  order {}  {} classes", g.spec, p.group().order(), p.len());
    println!("{:<8} {:>10} {:>6}  representative", "class", "size", "order");
    for c in p.classes() {
        println!("{:<8} {:>10} {:>6}  {}", c.name, c.size, c.order, c.representative);
    }
    Ok(true)
}

fn dk(g: &GroupArgs, names: &[String], cap: u128) -> CliResult {
    let p = partition(g, cap)?;
    let k = subset(&p, names)?;
    let d = p.rational_closure(&k);
    if g.json {
        print_json(&envelope("dk", &g.spec, json!({"K": p.names(&k), "D_K": p.names(&d), "size": p.element_count(&d).to_string()})));
    } else {
        println!("K   = {}", p.names(&k).join(" "));
        println!("D_K = {}  ({} elements)", p.names(&d).join(" "), p.element_count(&d));
    }
    Ok(true)
}

fn square(g: &GroupArgs, names: &[String], cap: u128) -> CliResult {
    let p = partition(g, cap)?;
    let k = subset(&p, names)?;
    let v = p.expansion_check(&k);
    let violating = v.violating_class.map(|c| p.classes()[c].name.clone());
    if g.json {
        print_json(&envelope(
            "square",
            &g.spec,
            json!({"K": p.names(&k), "K^2": p.names(&v.square), "D_K": p.names(&v.closure), "expansion": v.holds, "violating_class": violating}),
        ));
    } else {
        println!("K   = {}", p.names(&k).join(" "));
        println!("K^2 = {}", p.names(&v.square).join(" "));
        println!("D_K = {}", p.names(&v.closure).join(" "));
        match violating {
            None => println!("K^2 ⊆ D_K: yes"),
            Some(c) => println!("K^2 ⊆ D_K: no, {c} is outside D_K"),
        }
    }
    Ok(true)
}

fn square_coset(g: &GroupArgs, l_spec: &str) -> CliResult {
    let big = build(&g.spec)?;
    let l = build(l_spec)?;
    let y = big
        .generators()
        .iter()
        .find(|x| !l.is_member(x).unwrap_or(true))
        .cloned()
        .ok_or_else(|| Failure::Usage(format!("every generator of {} lies in {l_spec}", g.spec)))?;
    let view = coset_structure(&big, &l, &y)?;
    let p = &view.partition;
    let orders: Vec<u64> = view.orders.iter().copied().collect();
    if g.json {
        print_json(&envelope(
            "square",
            &g.spec,
            json!({
                "L": l_spec,
                "y": y.to_string(),
                "yL": p.names(&view.coset),
                "(yL)^2": p.names(&view.square),
                "y^2L": p.names(&view.square_coset),
                "D": p.names(&view.closure),
                "square_is_y2L": view.square_is_y2_coset(),
                "D_is_G_minus_L": view.closure_is_complement(),
                "orders": orders,
            }),
        ));
    } else {
        println!("y        = {y}");
        println!("yL       = {}", p.names(&view.coset).join(" "));
        println!("(yL)^2   = {}", p.names(&view.square).join(" "));
        println!("y^2 L    = {}", p.names(&view.square_coset).join(" "));
        println!("D_yL     = {}", p.names(&view.closure).join(" "));
        println!("(yL)^2 = y^2 L: {}", view.square_is_y2_coset());
        println!("D_yL = G \\ L:   {}", view.closure_is_complement());
        println!("orders in yL:   {orders:?}");
    }
    Ok(true)
}

fn audit(g: &GroupArgs, predicate: &str, bound: usize, cap: u128) -> CliResult {
    let predicate: AuditPredicate = predicate.parse()?;
    let p = partition(g, cap)?;
    let mut report = p.odd_subset_audit(predicate, bound)?;
    report.group = g.spec.clone();
    if g.json {
        print_json(&envelope("audit", &g.spec, serde_json::to_value(&report).expect("serializable")));
    } else {
        println!("{}  order {}  predicate {}", g.spec, report.order, report.predicate);
        println!("odd classes: {}", report.odd_classes.join(" "));
        println!("subsets examined: {}", report.subsets_examined);
        for e in &report.satisfying_subsets {
            let k = if e.classes.is_empty() { "∅".to_string() } else { e.classes.join(" ") };
            println!("  K = {{{k}}}  |<K>| = {}  soluble = {}", e.span_order, e.soluble);
        }
        println!("violations: {}", report.violations.len());
    }
    Ok(report.violations.is_empty())
}

fn load_table(file: &str) -> Result<(CharacterTable, String), Failure> {
    if let Some(name) = file.strip_prefix("table:") {
        let source = clexp::named::table_source(name)?;
        return Ok((named_table(name)?, sha256_hex(source.as_bytes())));
    }
    let text = std::fs::read_to_string(file).map_err(|e| {
        let known: Vec<&str> = table_names().collect();
        Failure::Usage(format!("{file}: {e} (packaged tables: table:{})", known.join(", table:")))
    })?;
    Ok((CharacterTable::from_json(&text)?, sha256_hex(text.as_bytes())))
}

fn table_class(t: &CharacterTable, name: &str) -> Result<usize, Failure> {
    Ok(t.class_index(name)?)
}

fn ctbl(action: CtblCommand) -> CliResult {
    match action {
        CtblCommand::Check { file, json } => {
            let (t, sha) = match load_table(&file) {
                Ok(x) => x,
                Err(Failure::Check(msg)) => {
                    println!("{file}: invalid: {msg}");
                    return Ok(false);
                }
                Err(e) => return Err(e),
            };
            let degrees: Vec<String> = t.degrees().iter().map(|d| d.to_string()).collect();
            if json {
                print_json(&json!({
                    "command": "ctbl check",
                    "version": clexp::VERSION,
                    "checksums": [{"file": file, "sha256": sha}],
                    "result": {"name": t.name, "order": t.order.to_string(), "classes": t.num_classes(), "conductor": t.conductor, "degrees": degrees, "valid": true},
                }));
            } else {
                println!("{}: valid  order {}  {} classes  conductor {}", t.name, t.order, t.num_classes(), t.conductor);
                println!("degrees: {}", degrees.join(" "));
                println!("sha256 {sha}");
            }
            Ok(true)
        }
        CtblCommand::Triple { file, i, j, k } => {
            let (t, _) = load_table(&file)?;
            let (a, b, c) = (table_class(&t, &i)?, table_class(&t, &j)?, table_class(&t, &k)?);
            println!("{}", t.class_mult_coefficient(a, b, c)?);
            Ok(true)
        }
        CtblCommand::Hj { file, a, b, c } => {
            let (t, _) = load_table(&file)?;
            let (x, y, z) = (table_class(&t, &a)?, table_class(&t, &b)?, table_class(&t, &c)?);
            println!("{}", t.hj_test(x, y, z)?);
            Ok(true)
        }
    }
}

fn paper_suite(tier: Tier, options: &SuiteOptions, check: Option<&str>, out: Option<&Path>, timings: bool) -> CliResult {
    let checks = match check {
        Some(id) => vec![run_check(id, options)?],
        None => run_suite(tier, options),
    };
    for c in &checks {
        let reason = c.reason.as_deref().map(|r| format!("  ({r})")).unwrap_or_default();
        println!("{:<13} {:<26} {:>8} ms{reason}", c.status.to_string().to_uppercase(), c.id, c.elapsed_ms);
    }
    let mut report = SuiteReport::new(tier, options.seed, checks);
    if !timings {
        report = report.without_timings();
    }
    let failed = report.any_failed();
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&report).expect("serializable");
        std::fs::write(path, text + "\n").map_err(|e| Failure::Check(format!("{}: {e}", path.display())))?;
    }
    println!("{}", if failed { "FAILED" } else { "ok" });
    Ok(!failed)
}

fn probe(g: &GroupArgs, class: &str, cap: u128) -> CliResult {
    let p = partition(g, cap)?;
    let c = p.class_index(class)?;
    let r = p.involution_coset_probe(c)?;
    if g.json {
        print_json(&envelope("probe", &g.spec, serde_json::to_value(&r).expect("serializable")));
    } else {
        println!("class {}: C^2 has even order: {} ({})", r.class, r.square_has_even, r.even_class.as_deref().unwrap_or("-"));
        for t in &r.involution_classes {
            match r.witnesses.iter().find(|w| &w.involution_class == t) {
                Some(w) => println!("  {t}: t = {}  d = {}  (td of order 4)", w.involution, w.element),
                None => println!("  {t}: no d in C with td of order 4"),
            }
        }
    }
    Ok(r.square_has_even && !r.witnesses.is_empty())
}
