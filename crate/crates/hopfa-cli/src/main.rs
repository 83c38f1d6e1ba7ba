//! Command-line front end: parse JSON inputs, dispatch library
//! computations, and emit reports.
//!
//! JSON is the single wire format; the text renderer derives its output
//! from the JSON report, so both views always agree. All randomness is
//! seed-controlled and every report is byte-identical for identical
//! inputs and seed. Exit codes: 0 success (or verified true), 1 verified
//! false or non-isomorphic, 2 input error, 3 degree budget exceeded.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde_json::{json, Value};

use hopfa::braided::{mainsystem1_check, verify_degree1, verify_mainreverse, ReverseMode};
use hopfa::datum::CartanDatum;
use hopfa::group::GroupAlgebraElement;
use hopfa::iso::{automorphism_group, hopf_isomorphisms, iso_classes};
use hopfa::params::{
    check_conditions, coproduct_check, normalize, sigma_action, u_elements, ParamFamily,
};
use hopfa::sampling::{minimal_datum, random_datum, random_r2_family};
use hopfa::wire::{load_datum, load_family, root_key, save_datum, save_family, save_verdict};

#[derive(Parser)]
#[command(
    name = "hopfa",
    version,
    about = "Exact arithmetic for rank-n data of finite abelian groups: \
             parameter families, u-elements, braided verification suites, \
             and Hopf isomorphism decisions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format; JSON is canonical, text is derived from it.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json, env = "HOPFA_OUTPUT")]
    output: OutputFormat,
    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 1, env = "HOPFA_SEED")]
    seed: u64,
    /// Degree bound for rewrite-engine verification.
    #[arg(long, global = true, default_value_t = 9, env = "HOPFA_DEGREE_BUDGET")]
    degree_budget: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// N-th powers of reverse root vectors against their expansion.
    Mainreverse,
    /// Straight-mark projections of reverse root vectors.
    Degree1,
    /// The substitution identity for u-elements across the twist.
    Mainsystem,
    /// The coproduct characterization of u-elements.
    Coproduct,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    /// Run both routes wherever the budget allows the rewrite engine.
    Both,
    /// Rewrite engine only, on every root, regardless of budget.
    Rewrite,
    /// Skew-projection oracle only.
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Check a datum file and echo the derived braiding data.
    Validate {
        /// Datum file: {"group":{"factors":[..]},"g":[..],"chi":[..]}.
        datum: PathBuf,
    },
    /// Compute the u-elements of a parameter family.
    U {
        datum: PathBuf,
        /// Family file: {"entries":{"i,j":"<scalar>"}}; missing roots are 0.
        mu: PathBuf,
    },
    /// Replace a family by the unique torsion-respecting one with the
    /// same u-elements.
    Normalize { datum: PathBuf, mu: PathBuf },
    /// Apply the diagram action; the image lives over the twisted datum,
    /// which is emitted alongside it.
    Sigma { datum: PathBuf, mu: PathBuf },
    /// Run a verification suite over seeded data.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Restrict to one rank (2 to 4); default runs the grid.
        #[arg(long)]
        n: Option<usize>,
        /// Restrict to one q-order (3 or 5); default runs the grid.
        #[arg(long, visible_alias = "N")]
        order: Option<u64>,
        /// Seeded instances per shape.
        #[arg(long, default_value_t = 3)]
        instances: usize,
        /// Verification route for the reverse-power suite.
        #[arg(long, value_enum, default_value_t = VerifyMode::Both)]
        mode: VerifyMode,
    },
    /// Decide whether u(B) and u(A) are isomorphic; witnesses map
    /// u(B) to u(A). Files hold {"datum":..,"mu":..} instances.
    Iso {
        /// Target instance A.
        a: PathBuf,
        /// Source instance B.
        b: PathBuf,
    },
    /// Report the automorphism class group of one instance.
    Aut {
        /// Instance file {"datum":..,"mu":..}.
        instance: PathBuf,
    },
    /// Partition families over one datum into isomorphism classes.
    Classify {
        datum: PathBuf,
        /// Family files, one class member per file.
        mus: Vec<PathBuf>,
    },
}

/// Failure carrying its process exit code: 2 input, 3 budget.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<hopfa::Error> for Failure {
    fn from(e: hopfa::Error) -> Failure {
        let code = match e {
            hopfa::Error::BudgetExceeded(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| input_error(format!("{} is not valid JSON: {e}", path.display())))
}

fn datum_from_value(v: &Value, what: &str) -> Result<CartanDatum, Failure> {
    let wire = serde_json::from_value(v.clone())
        .map_err(|e| input_error(format!("{what} is not a datum object: {e}")))?;
    Ok(load_datum(&wire)?)
}

fn family_from_value(d: &CartanDatum, v: &Value, what: &str) -> Result<ParamFamily, Failure> {
    let wire = serde_json::from_value(v.clone())
        .map_err(|e| input_error(format!("{what} is not a family object: {e}")))?;
    Ok(load_family(d, &wire)?)
}

fn load_datum_file(path: &Path) -> Result<CartanDatum, Failure> {
    datum_from_value(&read_json(path)?, &path.display().to_string())
}

fn load_family_file(d: &CartanDatum, path: &Path) -> Result<ParamFamily, Failure> {
    family_from_value(d, &read_json(path)?, &path.display().to_string())
}

fn load_instance_file(path: &Path) -> Result<(CartanDatum, ParamFamily), Failure> {
    let v = read_json(path)?;
    let name = path.display();
    let d = datum_from_value(
        v.get("datum")
            .ok_or_else(|| input_error(format!("{name} has no \"datum\" field")))?,
        &format!("{name} datum"),
    )?;
    let mu = family_from_value(
        &d,
        v.get("mu")
            .ok_or_else(|| input_error(format!("{name} has no \"mu\" field")))?,
        &format!("{name} mu"),
    )?;
    Ok((d, mu))
}

fn algebra_to_value(u: &GroupAlgebraElement) -> Value {
    let terms: Vec<Value> = u
        .terms()
        .map(|(g, c)| {
            json!({
                "exp": g.exps().iter().map(|&e| e as i64).collect::<Vec<i64>>(),
                "coeff": c.to_string(),
            })
        })
        .collect();
    json!({ "terms": terms })
}

/// The (rank, q-order) shapes the seeded suites draw from.
const GRID: [(usize, u64); 6] = [(2, 3), (3, 3), (4, 3), (2, 5), (3, 5), (4, 5)];

fn select_shapes(n: Option<usize>, order: Option<u64>) -> Result<Vec<(usize, u64)>, Failure> {
    let picked: Vec<(usize, u64)> = GRID
        .iter()
        .copied()
        .filter(|(a, b)| n.is_none_or(|x| x == *a) && order.is_none_or(|x| x == *b))
        .collect();
    if picked.is_empty() {
        return Err(input_error(format!(
            "no supported shape matches n={n:?}, order={order:?}; \
             ranks 2..=4 with q-order 3 or 5"
        )));
    }
    Ok(picked)
}

fn run_verify(
    suite: Suite,
    shapes: &[(usize, u64)],
    instances: usize,
    mode: VerifyMode,
    seed: u64,
    degree_budget: usize,
) -> Result<(bool, Value), Failure> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut cases: Vec<Value> = Vec::new();
    let mut all = true;
    for &(n, order) in shapes {
        for k in 0..instances.max(1) {
            // The first instance per shape is the fixed minimal datum;
            // later ones are seeded random data.
            let d = if k == 0 {
                minimal_datum(n, order)
            } else {
                random_datum(&mut rng, n, order)
            };
            match suite {
                Suite::Mainreverse => {
                    for r in d.positive_roots() {
                        let needed = (order as usize) * r.height();
                        let rewrite = match mode {
                            VerifyMode::Oracle => None,
                            VerifyMode::Rewrite => Some(verify_mainreverse(
                                &d,
                                r,
                                ReverseMode::Rewrite,
                                degree_budget,
                            )?),
                            VerifyMode::Both if needed <= degree_budget => Some(
                                verify_mainreverse(&d, r, ReverseMode::Rewrite, degree_budget)?,
                            ),
                            VerifyMode::Both => None,
                        };
                        let oracle = if mode == VerifyMode::Rewrite {
                            None
                        } else {
                            Some(verify_mainreverse(&d, r, ReverseMode::SkewOracle, 0)?)
                        };
                        let ok = oracle.unwrap_or(true)
                            && rewrite.unwrap_or(true)
                            && (oracle.is_some() || rewrite.is_some());
                        all &= ok;
                        cases.push(json!({
                            "n": n, "N": order, "instance": k, "root": root_key(r),
                            "oracle": oracle, "rewrite": rewrite, "verified": ok,
                        }));
                    }
                }
                Suite::Degree1 => {
                    for r in d.positive_roots() {
                        let ok = verify_degree1(&d, r, degree_budget)?;
                        all &= ok;
                        cases.push(json!({
                            "n": n, "N": order, "instance": k, "root": root_key(r),
                            "verified": ok,
                        }));
                    }
                }
                Suite::Mainsystem => {
                    let mu = random_r2_family(&mut rng, &d);
                    let mut ok = true;
                    for r in d.positive_roots() {
                        ok &= mainsystem1_check(&d, &mu, r)?;
                    }
                    all &= ok;
                    cases.push(json!({
                        "n": n, "N": order, "instance": k,
                        "support": mu.entries().count(), "verified": ok,
                    }));
                }
                Suite::Coproduct => {
                    let mu = random_r2_family(&mut rng, &d);
                    let ok = coproduct_check(&d, &u_elements(&d, &mu));
                    all &= ok;
                    cases.push(json!({
                        "n": n, "N": order, "instance": k,
                        "support": mu.entries().count(), "verified": ok,
                    }));
                }
            }
        }
    }
    let name = match suite {
        Suite::Mainreverse => "mainreverse",
        Suite::Degree1 => "degree1",
        Suite::Mainsystem => "mainsystem",
        Suite::Coproduct => "coproduct",
    };
    let report = json!({
        "suite": name,
        "seed": seed,
        "cases": cases,
        "verified": all,
    });
    Ok((all, report))
}

fn conditions_value(d: &CartanDatum, mu: &ParamFamily) -> Value {
    let rep = check_conditions(d, mu);
    json!({ "r1": rep.r1, "r2": rep.r2, "r3": rep.r3 })
}

fn run(cli: &Cli) -> Result<(u8, Value), Failure> {
    match &cli.command {
        Command::Validate { datum } => {
            let d = load_datum_file(datum)?;
            let n = d.n();
            let q_table: Vec<Vec<String>> = (1..=n)
                .map(|i| (1..=n).map(|j| d.q_ij(i, j).to_string()).collect())
                .collect();
            let report = json!({
                "valid": true,
                "n": n,
                "N": d.order_n(),
                "conductor": d.context().conductor(),
                "q": d.q().to_string(),
                "q_table": q_table,
                "roots": d.positive_roots().iter().map(|r| root_key(*r)).collect::<Vec<_>>(),
            });
            Ok((0, report))
        }
        Command::U { datum, mu } => {
            let d = load_datum_file(datum)?;
            let mu = load_family_file(&d, mu)?;
            let u = u_elements(&d, &mu);
            let table: BTreeMap<String, Value> = u
                .iter()
                .map(|(r, el)| (root_key(*r), algebra_to_value(el)))
                .collect();
            let report = json!({
                "conditions": conditions_value(&d, &mu),
                "u": table,
            });
            Ok((0, report))
        }
        Command::Normalize { datum, mu } => {
            let d = load_datum_file(datum)?;
            let mu = load_family_file(&d, mu)?;
            let nu = normalize(&d, &mu)?;
            let report = json!({
                "mu": serde_json::to_value(save_family(&nu)).expect("family serializes"),
                "conditions": conditions_value(&d, &nu),
            });
            Ok((0, report))
        }
        Command::Sigma { datum, mu } => {
            let d = load_datum_file(datum)?;
            let mu = load_family_file(&d, mu)?;
            let image = sigma_action(&d, &mu)?;
            let twist = d.twist();
            let report = json!({
                "datum": serde_json::to_value(save_datum(&twist)).expect("datum serializes"),
                "mu": serde_json::to_value(save_family(&image)).expect("family serializes"),
                "conditions": conditions_value(&twist, &image),
            });
            Ok((0, report))
        }
        Command::Verify {
            suite,
            n,
            order,
            instances,
            mode,
        } => {
            let shapes = select_shapes(*n, *order)?;
            let (ok, report) =
                run_verify(*suite, &shapes, *instances, *mode, cli.seed, cli.degree_budget)?;
            Ok((if ok { 0 } else { 1 }, report))
        }
        Command::Iso { a, b } => {
            let (da, mua) = load_instance_file(a)?;
            let (db, mub) = load_instance_file(b)?;
            let witnesses = hopf_isomorphisms(&da, &mua, &db, &mub)?;
            let verdict = save_verdict(&witnesses);
            let code = if verdict.isomorphic { 0 } else { 1 };
            Ok((
                code,
                serde_json::to_value(verdict).expect("verdict serializes"),
            ))
        }
        Command::Aut { instance } => {
            let (d, mu) = load_instance_file(instance)?;
            let report = automorphism_group(&d, &mu)?;
            let value = json!({
                "finite": report.is_finite(),
                "free_rank": report.free_rank,
                "witnesses": report.witnesses.len(),
                "scaling_torsion": report.scaling_torsion.to_string(),
                "order": report.order().map(|o| o.to_string()),
            });
            Ok((0, value))
        }
        Command::Classify { datum, mus } => {
            let d = load_datum_file(datum)?;
            if mus.is_empty() {
                return Err(input_error("classify needs at least one family file".into()));
            }
            let mut families = Vec::with_capacity(mus.len());
            for path in mus {
                families.push(load_family_file(&d, path)?);
            }
            let classes = iso_classes(&d, &families)?;
            let report = json!({
                "families": families.len(),
                "classes": classes,
            });
            Ok((0, report))
        }
    }
}

/// Renders the JSON report as indented text, one key or item per line.
fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) if !is_short(val) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_short(item) {
                    out.push_str(&format!("{pad}- {}\n", inline(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

/// A value small enough to print on one line.
fn is_short(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_object() && !i.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn emit(format: OutputFormat, report: &Value) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            render_text(report, 0, &mut s);
            s
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((code, report)) => {
            print!("{}", emit(cli.output, &report));
            ExitCode::from(code)
        }
        Err(f) => {
            let report = json!({ "error": f.message, "code": f.code });
            eprint!("{}", emit(cli.output, &report));
            ExitCode::from(f.code)
        }
    }
}
