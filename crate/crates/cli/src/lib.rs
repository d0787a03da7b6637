//! The `covergraph` command line.
//!
//! Every subcommand takes a presentation, either inline (`"<a,b | a^2>"`)
//! or as a catalog shorthand (`@surface:2`, `@knot:2,3`, ...). Output is
//! plain text unless `--json` is given.
//!
//! Exit codes: 0 success, 1 bad input, 2 enumeration or search budget
//! exhausted, 3 a relator acts nontrivially on a supplied action.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use covergraph::{
    abelianization, cayley_complex, cayley_graph, coset_enumerate, covering_morphisms, deck_group, free_subgroup_rank,
    group_order, is_normal, low_index_coverings, orbit_category, orbits, parse_presentation, parse_word_list,
    sections, standard, CosetTable, CoveringError, EnumerationError, EnumerationLimits, MonodromyAction,
    Presentation, SearchBudget, Standard,
};

#[derive(Debug, Parser)]
#[command(name = "covergraph", version, about = "Coverings of presentation complexes via coset tables")]
struct Cli {
    /// Emit the whole payload as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[arg(long, global = true, env = "COVERGRAPH_MAX_COSETS", default_value_t = EnumerationLimits::default().max_cosets)]
    max_cosets: usize,

    #[arg(long, global = true, env = "COVERGRAPH_MAX_DEFINITIONS", default_value_t = EnumerationLimits::default().max_definitions)]
    max_definitions: usize,

    /// Node budget for the low-index search.
    #[arg(long, global = true, env = "COVERGRAPH_MAX_NODES", default_value_t = SearchBudget::default().max_nodes)]
    max_nodes: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SubgroupArgs {
    /// Presentation, inline or `@catalog` shorthand.
    presentation: String,
    /// Comma-separated subgroup generators.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    subgroup: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Index and coset table of a subgroup.
    Enumerate(SubgroupArgs),
    /// Cayley graph (or complex) of the covering, as DOT or JSON.
    Cayley {
        #[command(flatten)]
        target: SubgroupArgs,
        #[arg(long)]
        dot: bool,
        /// Include the 2-cells.
        #[arg(long)]
        complex: bool,
    },
    /// Deck transformation group and normality.
    Deck(SubgroupArgs),
    /// Covering maps between two connected coverings.
    Hom {
        presentation: String,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Connected coverings up to a given degree.
    Covers {
        presentation: String,
        #[arg(long)]
        max_degree: usize,
        /// Also print hom-set sizes between the coverings.
        #[arg(long)]
        orbit_category: bool,
    },
    /// Abelian invariants of the group.
    Abel { presentation: String },
    /// Order of the group, if enumeration finishes.
    Order { presentation: String },
    /// Fixed points of a permutation action.
    Sections {
        presentation: String,
        /// JSON permutations (list, name map, or table JSON), inline or a file path.
        #[arg(long)]
        action: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure { code: 1, message: message.to_string() }
    }
}

impl From<EnumerationError> for Failure {
    fn from(e: EnumerationError) -> Self {
        let code = match e {
            EnumerationError::LimitExceeded(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<CoveringError> for Failure {
    fn from(e: CoveringError) -> Self {
        let code = match e {
            CoveringError::BudgetExceeded(_) => 2,
            CoveringError::RelatorViolation { .. } => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Runs one command line (`argv[0]` is the program name) and returns the
/// process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                1
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    let mut out = String::new();
    let status = execute(&cli, &mut out);
    if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return 1;
    }
    match status {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn load_presentation(text: &str) -> Result<Arc<Presentation>, Failure> {
    let p = if text.trim_start().starts_with('@') {
        let name: Standard = text.trim().parse().map_err(Failure::input)?;
        standard(name).map_err(Failure::input)?
    } else {
        parse_presentation(text).map_err(Failure::input)?
    };
    Ok(Arc::new(p))
}

fn limits(cli: &Cli) -> Result<EnumerationLimits, Failure> {
    Ok(EnumerationLimits::new(cli.max_cosets, cli.max_definitions)?)
}

fn enumerate(cli: &Cli, p: &Arc<Presentation>, subgroup: &str) -> Result<CosetTable, Failure> {
    let h = parse_word_list(subgroup, p).map_err(Failure::input)?;
    Ok(coset_enumerate(p, &h, &limits(cli)?)?)
}

fn emit_json(out: &mut String, v: &Value) {
    out.push_str(&serde_json::to_string_pretty(v).expect("JSON values serialize"));
    out.push('\n');
}

fn perm_text(p: &[usize]) -> String {
    let items: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn subgroup_text(t: &CosetTable) -> String {
    let names = t.presentation().generator_names();
    let gens: Vec<String> = t.subgroup_generators().iter().map(|w| w.display(names).to_string()).collect();
    format!("< {} >", gens.join(", "))
}

fn table_text(out: &mut String, t: &CosetTable) {
    let names = t.presentation().generator_names();
    let mut headers = Vec::new();
    for n in names {
        headers.push(n.clone());
        headers.push(format!("{n}^-1"));
    }
    let width = headers.iter().map(|h| h.len()).max().unwrap_or(1).max(t.num_cosets().to_string().len());
    let _ = write!(out, "{:>width$}", "");
    for h in &headers {
        let _ = write!(out, " {h:>width$}");
    }
    out.push('\n');
    for c in 0..t.num_cosets() {
        let _ = write!(out, "{c:>width$}");
        for &d in t.row(c) {
            let _ = write!(out, " {d:>width$}");
        }
        out.push('\n');
    }
}

fn execute(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    match &cli.command {
        Command::Enumerate(args) => {
            let p = load_presentation(&args.presentation)?;
            let t = enumerate(cli, &p, &args.subgroup)?;
            let rank = free_subgroup_rank(&t).ok();
            if cli.json {
                emit_json(out, &json!({ "index": t.num_cosets(), "subgroup_rank": rank, "table": t.to_json() }));
            } else {
                let _ = writeln!(out, "index: {}", t.num_cosets());
                if let Some(r) = rank {
                    let _ = writeln!(out, "subgroup rank: {r}");
                }
                table_text(out, &t);
            }
        }
        Command::Cayley { target, dot, complex } => {
            if *dot == cli.json {
                return Err(Failure::input("cayley needs exactly one of --dot or --json"));
            }
            let p = load_presentation(&target.presentation)?;
            let t = enumerate(cli, &p, &target.subgroup)?;
            let k = if *complex { cayley_complex(&t) } else { cayley_graph(&t) };
            if *dot {
                out.push_str(&k.to_dot());
            } else {
                let mut v = k.to_json();
                v["euler_characteristic"] = json!(k.euler_characteristic());
                emit_json(out, &v);
            }
        }
        Command::Deck(args) => {
            let p = load_presentation(&args.presentation)?;
            let t = enumerate(cli, &p, &args.subgroup)?;
            let d = deck_group(&t);
            let normal = is_normal(&t);
            if cli.json {
                let mut v = d.to_json();
                v["index"] = json!(t.num_cosets());
                v["normal"] = json!(normal);
                v["abelian"] = json!(d.is_abelian());
                emit_json(out, &v);
            } else {
                let _ = writeln!(out, "index: {}", t.num_cosets());
                let _ = writeln!(out, "order: {}", d.order());
                let _ = writeln!(out, "normal: {normal}");
                let _ = writeln!(out, "abelian: {}", d.is_abelian());
                for e in d.elements() {
                    let _ = writeln!(out, "  {}", perm_text(e));
                }
            }
        }
        Command::Hom { presentation, from, to } => {
            let p = load_presentation(presentation)?;
            let a = enumerate(cli, &p, from)?;
            let b = enumerate(cli, &p, to)?;
            let maps = covering_morphisms(&a, &b);
            if cli.json {
                emit_json(
                    out,
                    &json!({
                        "from_degree": a.num_cosets(),
                        "to_degree": b.num_cosets(),
                        "count": maps.len(),
                        "maps": maps,
                    }),
                );
            } else {
                let _ = writeln!(out, "morphisms: {} (degree {} -> degree {})", maps.len(), a.num_cosets(), b.num_cosets());
                for m in &maps {
                    let _ = writeln!(out, "  {}", perm_text(m));
                }
            }
        }
        Command::Covers { presentation, max_degree, orbit_category: with_homs } => {
            let p = load_presentation(presentation)?;
            let budget = SearchBudget { max_nodes: cli.max_nodes };
            let (covers, homs) = if *with_homs {
                let oc = orbit_category(&p, *max_degree, &budget)?;
                let homs = oc.homs.clone();
                (oc.coverings, Some(homs))
            } else {
                (low_index_coverings(&p, *max_degree, &budget)?, None)
            };
            if cli.json {
                let list: Vec<Value> = covers
                    .iter()
                    .map(|t| json!({ "degree": t.num_cosets(), "normal": is_normal(t), "table": t.to_json() }))
                    .collect();
                let mut v = json!({ "coverings": list });
                if let Some(h) = &homs {
                    v["orbit_category"] = json!({
                        "degrees": covers.iter().map(|t| t.num_cosets()).collect::<Vec<_>>(),
                        "homs": h,
                    });
                }
                emit_json(out, &v);
            } else {
                let _ = writeln!(out, "coverings: {}", covers.len());
                for (i, t) in covers.iter().enumerate() {
                    let kind = if is_normal(t) { "normal" } else { "not normal" };
                    let _ = writeln!(out, "  #{i} degree {} {kind} H = {}", t.num_cosets(), subgroup_text(t));
                }
                if let Some(h) = &homs {
                    let _ = writeln!(out, "hom-set sizes (row = source, column = target):");
                    for row in h {
                        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                        let _ = writeln!(out, "  {}", cells.join(" "));
                    }
                }
            }
        }
        Command::Abel { presentation } => {
            let p = load_presentation(presentation)?;
            let inv = abelianization(&p);
            if cli.json {
                emit_json(out, &inv.to_json());
            } else {
                let _ = writeln!(out, "{inv}");
            }
        }
        Command::Order { presentation } => {
            let p = load_presentation(presentation)?;
            match group_order(&p, &limits(cli)?) {
                Ok(n) => {
                    if cli.json {
                        emit_json(out, &json!({ "order": n }));
                    } else {
                        let _ = writeln!(out, "{n}");
                    }
                }
                Err(e @ EnumerationError::LimitExceeded(_)) => {
                    if cli.json {
                        emit_json(out, &json!({ "order": null, "verdict": "not shown finite within budget" }));
                    } else {
                        let _ = writeln!(out, "not shown finite within budget");
                    }
                    return Err(e.into());
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Sections { presentation, action } => {
            let p = load_presentation(presentation)?;
            let images = parse_action(action, &p)?;
            let m = MonodromyAction::new(p, images)?;
            let fixed = sections(&m);
            let components: Vec<usize> = orbits(&m).iter().map(|t| t.num_cosets()).collect();
            if cli.json {
                emit_json(out, &json!({ "degree": m.degree(), "sections": fixed, "components": components }));
            } else {
                let _ = writeln!(out, "sections: {}", perm_text(&fixed));
                let _ = writeln!(out, "component degrees: {}", perm_text(&components));
            }
        }
    }
    Ok(())
}

/// Accepts a list of image arrays in generator order, an object keyed by
/// generator name, or table JSON with an `action` object.
fn parse_action(source: &str, p: &Presentation) -> Result<Vec<Vec<usize>>, Failure> {
    let text = if !source.trim_start().starts_with(['[', '{']) && Path::new(source).is_file() {
        std::fs::read_to_string(source).map_err(|e| Failure::input(format!("{source}: {e}")))?
    } else {
        source.to_string()
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::input(format!("action JSON: {e}")))?;
    let v = match v.get("action") {
        Some(inner) => inner.clone(),
        None => v,
    };
    let perm = |v: &Value| -> Result<Vec<usize>, Failure> {
        serde_json::from_value(v.clone()).map_err(|_| Failure::input("each permutation must be an array of point indices"))
    };
    match &v {
        Value::Array(items) => items.iter().map(perm).collect(),
        Value::Object(map) => p
            .generator_names()
            .iter()
            .map(|n| map.get(n).ok_or_else(|| Failure::input(format!("action has no entry for generator {n}"))).and_then(perm))
            .collect(),
        _ => Err(Failure::input("action must be a JSON array or object")),
    }
}
