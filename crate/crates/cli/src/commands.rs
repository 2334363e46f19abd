use crate::record::{emit, payload, ExperimentRecord};
use crate::{
    BoundArgs, CaptureArgs, Cli, Command, DistanceArgs, FamilyArgs, Format, GenArgs, GenTreeArgs,
    GridArgs,
};
use crate::{SimulateArgs, TesterKind, TransformArgs};
use anyhow::{anyhow, bail, Context, Result};
use monolab::capture::{analyze, indistinguishable_exact, query_lower_bound, QuerySet};
use monolab::distance::{
    distance_to_monotone, CertificateJson, DistanceCertificate, FunctionTable,
};
use monolab::experiment::{greedy_sweep, pair_sweep, tree_sweep, write_sweep_csv};
use monolab::family::{lift_to_hypergrid, sample, support};
use monolab::rational::{format_rational, parse_rational, to_f64};
use monolab::testers::{derive_non_adaptive, exact_error, random_tree, ComparisonTree};
use monolab::{DomainParams, Epsilon, FamilyParams, HardFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt;
use std::path::Path;
use std::time::Instant;

/// A certificate or result that failed its own verification.
#[derive(Debug)]
pub struct SelfCheckFailed(pub String);

impl fmt::Display for SelfCheckFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "self-check failed: {}", self.0)
    }
}

impl std::error::Error for SelfCheckFailed {}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<SelfCheckFailed>() {
            return 3;
        }
        if let Some(monolab::Error::Capacity { .. }) = cause.downcast_ref::<monolab::Error>() {
            return 2;
        }
    }
    1
}

pub fn run(cli: &Cli) -> Result<()> {
    let started = Instant::now();
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Gen(args) => gen(args, cli.format.unwrap_or(Format::Json), out, started),
        Command::GenTree(args) => gen_tree(args, cli.format.unwrap_or(Format::Json), out, started),
        Command::Distance(args) => distance(args, cli.format.unwrap_or(Format::Json), out, started),
        Command::Capture(args) => capture(args, cli.format.unwrap_or(Format::Json), out, started),
        Command::Simulate(args) => simulate(args, cli.format.unwrap_or(Format::Csv), out, started),
        Command::Bound(args) => bound(args, cli.format, out, started),
        Command::Transform(args) => {
            transform(args, cli.format.unwrap_or(Format::Json), out, started)
        }
    }
}

/// Parses epsilon, rounding values that are not a power of 1/2 down to one.
fn parse_epsilon(s: &str) -> Result<(Epsilon, bool)> {
    if let Ok(eps) = s.parse::<Epsilon>() {
        return Ok((eps, false));
    }
    let value = match parse_rational(s) {
        Ok(r) => to_f64(&r),
        Err(_) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| anyhow!("cannot read epsilon {s:?}"))?,
    };
    let eps = Epsilon::round_down(value)?;
    eprintln!("warning: epsilon {s} is not a power of 1/2; using {eps}");
    Ok((eps, true))
}

fn grid(args: &GridArgs) -> Result<Option<DomainParams>> {
    match (args.n, args.d) {
        (Some(n), Some(d)) => Ok(Some(DomainParams::new(n, d)?)),
        _ => Ok(None),
    }
}

fn family(args: &FamilyArgs, grid: Option<&DomainParams>) -> Result<(FamilyParams, bool)> {
    let m = match (args.m, grid) {
        (Some(m), Some(g)) if m != g.m() => bail!("--m {m} disagrees with d*log2(n) = {}", g.m()),
        (Some(m), _) => m,
        (None, Some(g)) => g.m(),
        (None, None) => bail!("--m is required (or --n and --d)"),
    };
    let (eps, rounded) = parse_epsilon(&args.epsilon)?;
    let p = FamilyParams::new(m, eps)?;
    Ok((p, rounded))
}

/// The arguments as given, plus the epsilon actually used.
fn config(
    args: &impl Serialize,
    format: Option<Format>,
    p: Option<&FamilyParams>,
    rounded: bool,
) -> Result<Value> {
    let mut v = serde_json::to_value(args)?;
    if let Value::Object(map) = &mut v {
        map.insert("format".into(), serde_json::to_value(format)?);
        if let Some(p) = p {
            map.insert("m".into(), json!(p.m()));
            map.insert("epsilonUsed".into(), json!(p.epsilon().exponent_form()));
            map.insert("epsilonRounded".into(), json!(rounded));
        }
    }
    Ok(v)
}

fn write_record(
    out: Option<&Path>,
    command: &'static str,
    config: Value,
    results: impl Serialize,
    started: Instant,
) -> Result<()> {
    let record = ExperimentRecord::new(command, config, results, started)?;
    emit(out, record.to_pretty()?.as_bytes())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json(path: &Path) -> Result<Value> {
    let text = read(path)?;
    let doc: Value = serde_json::from_str(&text)
        .with_context(|| format!("{} is not valid JSON", path.display()))?;
    Ok(payload(doc))
}

fn parse_function(choice: &str, p: FamilyParams) -> Result<HardFunction> {
    if choice.trim() == "base" {
        return Ok(HardFunction::base(p));
    }
    let (j, k) = choice
        .split_once(',')
        .ok_or_else(|| anyhow!("--function must be `base` or `j,k`, got {choice:?}"))?;
    let j = j
        .trim()
        .parse()
        .with_context(|| format!("bad j in {choice:?}"))?;
    let k = k
        .trim()
        .parse()
        .with_context(|| format!("bad k in {choice:?}"))?;
    Ok(HardFunction::perturbed(p, j, k)?)
}

fn table_for(h: &HardFunction, grid: Option<&DomainParams>) -> Result<FunctionTable> {
    Ok(match grid {
        Some(g) => FunctionTable::from_lifted(&lift_to_hypergrid(h, g)?)?,
        None => FunctionTable::from_hard(h)?,
    })
}

fn gen(args: &GenArgs, format: Format, out: Option<&Path>, started: Instant) -> Result<()> {
    let grid = grid(&args.grid)?;
    let (p, rounded) = family(&args.family, grid.as_ref())?;
    let functions: Vec<HardFunction> = if args.all {
        support(&p).iter().map(|(f, _)| *f).collect()
    } else if let Some(seed) = args.seed {
        vec![sample(&p, &mut ChaCha8Rng::seed_from_u64(seed))]
    } else if let Some(choice) = &args.function {
        vec![parse_function(choice, p)?]
    } else {
        bail!("choose one of --all, --seed or --function");
    };
    match format {
        Format::Json => {
            let cfg = config(args, Some(format), Some(&p), rounded)?;
            write_record(out, "gen", cfg, json!({ "functions": functions }), started)
        }
        Format::Csv => {
            let [h] = functions.as_slice() else {
                bail!("CSV output holds one table; use --seed or --function instead of --all");
            };
            let mut buf = Vec::new();
            table_for(h, grid.as_ref())?.write_csv(&mut buf)?;
            emit(out, &buf)
        }
    }
}

fn gen_tree(
    args: &GenTreeArgs,
    format: Format,
    out: Option<&Path>,
    started: Instant,
) -> Result<()> {
    if format == Format::Csv {
        bail!("gen-tree writes JSON only");
    }
    if !(0.0..=1.0).contains(&args.leaf_prob) {
        bail!("--leaf-prob must lie in [0, 1]");
    }
    DomainParams::hypercube(args.m)?;
    let tree = random_tree(
        args.m,
        args.depth,
        args.leaf_prob,
        &mut ChaCha8Rng::seed_from_u64(args.seed),
    )?;
    let results = json!({ "tree": tree, "depth": tree.depth(), "nodeCount": tree.node_count() });
    write_record(
        out,
        "gen-tree",
        config(args, Some(format), None, false)?,
        results,
        started,
    )
}

/// Tables named in a CSV file or a JSON list of descriptors.
fn load_tables(path: &Path, grid: Option<&DomainParams>) -> Result<Vec<(String, FunctionTable)>> {
    let text = read(path)?;
    let trimmed = text.trim_start();
    if !(trimmed.starts_with('{') || trimmed.starts_with('[')) {
        if grid.is_some() {
            bail!("--n/--d apply to function descriptors, not to value tables");
        }
        let table = FunctionTable::read_csv(text.as_bytes())
            .with_context(|| format!("reading table {}", path.display()))?;
        return Ok(vec![("table".into(), table)]);
    }
    let doc = read_json(path)?;
    let list = match doc {
        Value::Object(mut map) if map.contains_key("functions") => {
            map.remove("functions").unwrap_or_default()
        }
        Value::Array(_) => doc,
        other => Value::Array(vec![other]),
    };
    let functions: Vec<HardFunction> = serde_json::from_value(list)
        .with_context(|| format!("{} does not hold function descriptors", path.display()))?;
    if functions.is_empty() {
        bail!("{} lists no functions", path.display());
    }
    functions
        .iter()
        .map(|h| Ok((h.label(), table_for(h, grid)?)))
        .collect()
}

fn distance(
    args: &DistanceArgs,
    format: Format,
    out: Option<&Path>,
    started: Instant,
) -> Result<()> {
    let grid = grid(&args.grid)?;
    let tables = load_tables(&args.input, grid.as_ref())?;
    let cfg = config(args, Some(format), None, false)?;

    if let Some(check) = &args.check {
        let [(name, table)] = tables.as_slice() else {
            bail!("--check needs a single function, {} given", tables.len());
        };
        let doc = read_json(check)?;
        let doc = match doc
            .get("certificates")
            .and_then(|c| c.get(0))
            .and_then(|c| c.get("certificate"))
        {
            Some(inner) => inner.clone(),
            None => doc,
        };
        let verdict = serde_json::from_value::<CertificateJson>(doc)
            .map_err(|e| e.to_string())
            .and_then(|json| DistanceCertificate::from_json(&json).map_err(|e| e.to_string()))
            .and_then(|cert| cert.verify(table).map(|()| cert).map_err(|e| e.to_string()));
        let cert = verdict.map_err(|e| SelfCheckFailed(format!("{}: {e}", check.display())))?;
        let results =
            json!({ "function": name, "valid": true, "distance": format_rational(&cert.distance) });
        return match format {
            Format::Json => write_record(out, "distance", cfg, results, started),
            Format::Csv => emit(
                out,
                format!(
                    "function,valid,distance\n{name},true,{}\n",
                    format_rational(&cert.distance)
                )
                .as_bytes(),
            ),
        };
    }

    let mut certificates = Vec::with_capacity(tables.len());
    for (name, table) in &tables {
        let cert = distance_to_monotone(table)?;
        cert.verify(table)
            .map_err(|e| SelfCheckFailed(format!("{name}: {e}")))?;
        certificates.push((name, cert));
    }
    match format {
        Format::Json => {
            let list: Vec<Value> = certificates
                .iter()
                .map(|(name, c)| json!({ "function": name, "certificate": c.to_json() }))
                .collect();
            write_record(
                out,
                "distance",
                cfg,
                json!({ "certificates": list }),
                started,
            )
        }
        Format::Csv => {
            let mut s = String::from("function,distance,coverSize,matchingSize,tight\n");
            for (name, c) in &certificates {
                s += &format!(
                    "{name},{},{},{},{}\n",
                    format_rational(&c.distance),
                    c.cover.len(),
                    c.matching.len(),
                    c.is_tight()
                );
            }
            emit(out, s.as_bytes())
        }
    }
}

fn capture(args: &CaptureArgs, format: Format, out: Option<&Path>, started: Instant) -> Result<()> {
    let (p, rounded) = family(&args.family, None)?;
    let x = QuerySet::parse(&read(&args.input)?, p.m())
        .with_context(|| format!("reading {}", args.input.display()))?;
    let report = analyze(&x, &p)?;
    match format {
        Format::Json => {
            let mut results = serde_json::to_value(&report)?;
            if args.exact {
                let exact: Vec<Value> = indistinguishable_exact(&x, &p)?
                    .into_iter()
                    .map(|(j, k)| json!({ "j": j, "k": k }))
                    .collect();
                results["indistinguishableExact"] = Value::Array(exact);
            }
            write_record(
                out,
                "capture",
                config(args, Some(format), Some(&p), rounded)?,
                results,
                started,
            )
        }
        Format::Csv => {
            let mut s = String::from("k,queriesInBlock,capturedCoords\n");
            for b in &report.per_block {
                let coords: Vec<String> = b.captured_coords.iter().map(|c| c.to_string()).collect();
                s += &format!("{},{},{}\n", b.k, b.queries_in_block, coords.join(";"));
            }
            emit(out, s.as_bytes())
        }
    }
}

fn simulate(
    args: &SimulateArgs,
    format: Format,
    out: Option<&Path>,
    started: Instant,
) -> Result<()> {
    let grid = grid(&args.grid)?;
    let (p, rounded) = family(&args.family, grid.as_ref())?;
    let budgets: Vec<usize> = match (&args.budgets, args.budget) {
        (Some(list), _) => list.clone(),
        (None, Some(max)) => (1..=max).collect(),
        (None, None) => bail!("give --budget or --budgets"),
    };
    let rows = match args.tester {
        TesterKind::Greedy => greedy_sweep(&p, &budgets, args.trials, args.seed)?,
        TesterKind::Tree => {
            let path = args
                .tree
                .as_deref()
                .context("--tester tree needs --tree FILE")?;
            let tree = load_tree(path)?;
            tree_sweep(&tree, &p, &budgets, args.trials, args.seed)?
        }
        TesterKind::Pair => {
            let grid = grid.context("--tester pair needs --n and --d")?;
            pair_sweep(&grid, &p, &budgets, args.trials, args.seed)?
        }
    };
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_sweep_csv(&rows, &mut buf)?;
            emit(out, &buf)
        }
        Format::Json => {
            let cfg = config(args, Some(format), Some(&p), rounded)?;
            write_record(out, "simulate", cfg, json!({ "rows": rows }), started)
        }
    }
}

fn load_tree(path: &Path) -> Result<ComparisonTree> {
    let doc = read_json(path)?;
    let doc = match doc {
        Value::Object(mut map) if map.contains_key("tree") => {
            map.remove("tree").unwrap_or_default()
        }
        other => other,
    };
    serde_json::from_value(doc)
        .with_context(|| format!("{} does not hold a comparison tree", path.display()))
}

fn bound(
    args: &BoundArgs,
    format: Option<Format>,
    out: Option<&Path>,
    started: Instant,
) -> Result<()> {
    let (eps, rounded) = parse_epsilon(&args.epsilon)?;
    let b = query_lower_bound(args.n, args.d, eps)?;
    let (display, threshold, gap) = (
        format_rational(&b.display_bound),
        format_rational(&b.threshold),
        format_rational(&b.gap),
    );
    match format {
        None => {
            let plain = |r: &monolab::Rational| if r.is_integer() { r.to_integer().to_string() } else { format_rational(r) };
            let (display, threshold, gap) = (plain(&b.display_bound), plain(&b.threshold), plain(&b.gap));
            let text = format!(
                "n = {}, d = {}, epsilon = {}\n\
                 m = d log2 n = {}, m' = m + 1 - log2(1/epsilon) = {}\n\
                 (d log2 n - log2(1/epsilon)) / (8 epsilon) = {display}\n\
                 m' / (8 epsilon) = {threshold}\n\
                 the second exceeds the first by 1/(8 epsilon) = {gap}: fewer than m'/(8 epsilon) queries err with probability at least 1/8\n",
                b.n, b.d, b.epsilon, b.m, b.m_prime
            );
            emit(out, text.as_bytes())
        }
        Some(Format::Csv) => emit(
            out,
            format!(
                "n,d,epsilon,m,mPrime,displayBound,threshold,gap\n{},{},{},{},{},{display},{threshold},{gap}\n",
                b.n, b.d, b.epsilon, b.m, b.m_prime
            )
            .as_bytes(),
        ),
        Some(Format::Json) => {
            let mut cfg = config(args, format, None, false)?;
            cfg["epsilonUsed"] = json!(eps.exponent_form());
            cfg["epsilonRounded"] = json!(rounded);
            write_record(out, "bound", cfg, &b, started)
        }
    }
}

fn transform(
    args: &TransformArgs,
    format: Format,
    out: Option<&Path>,
    started: Instant,
) -> Result<()> {
    if format == Format::Csv {
        bail!("transform writes JSON only");
    }
    let (p, rounded) = family(&args.family, None)?;
    let tree = load_tree(&args.input)?;
    tree.validate(p.m(), None)?;
    let derived = derive_non_adaptive(&tree, &p)?;
    let tree_error = exact_error(&tree, &p)?;
    let derived_error = exact_error(&derived, &p)?;
    let results = json!({
        "distinguisher": derived,
        "treeDepth": tree.depth(),
        "queryCount": derived.queries.len(),
        "treeError": format_rational(&tree_error),
        "derivedError": format_rational(&derived_error),
    });
    write_record(
        out,
        "transform",
        config(args, Some(format), Some(&p), rounded)?,
        results,
        started,
    )
}
