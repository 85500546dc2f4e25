use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use motzkin_tamari::bijection::{self, BijectionError, BinaryTree};
use motzkin_tamari::gf;
use motzkin_tamari::path::{
    self, class_of, contacts, ds_statistic, is_primitive, type_of, valleys, PathError, PathSummary,
    PathWord,
};
use motzkin_tamari::poly::UPoly;
use motzkin_tamari::poset::{
    self, build_poset_with, connected_components, motzkin_covers, refined_interval_polynomial,
    Budget, IntervalFamily, PosetError,
};
use motzkin_tamari::series::SeriesError;
use motzkin_tamari::verify::{self, VerifyConfig};

mod error;

use error::CliError;

#[derive(Parser)]
#[command(name = "motzkin-tamari", version, about = "Tamari-like order on Motzkin and Schröder paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the paths of a family in canonical order, with statistics.
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Statistics of a single path.
    Stats {
        #[arg(long)]
        path: String,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Valleys and covering paths of a single path.
    Covers {
        #[arg(long)]
        path: String,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Export the Hasse diagram of a family.
    Hasse {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Group nodes by connected component.
        #[arg(long)]
        cluster: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Connected components and their classes.
    Components {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Count intervals of size n (Motzkin: n steps; Schröder: length 2n).
    Intervals {
        #[arg(long, value_enum)]
        family: SeriesFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Print the polynomial in u (u marks diagonal steps).
        #[arg(long)]
        u_refined: bool,
        #[arg(long)]
        budget_override: bool,
    },
    /// Apply φ, φ⁻¹ to a path word, or a tree encoding to a tree.
    Bijection {
        #[arg(long, value_enum)]
        dir: Direction,
        #[arg(long, conflicts_with = "tree")]
        path: Option<String>,
        /// Tree in the form `.` (empty) or `(L R)`.
        #[arg(long)]
        tree: Option<String>,
    },
    /// Print generating-function coefficients.
    Series {
        #[arg(long, value_enum)]
        family: SeriesFamily,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        u_refined: bool,
        /// Keep the contact variable x (Motzkin only).
        #[arg(long)]
        catalytic: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Run the cross-verification suite.
    Verify {
        #[command(flatten)]
        sizes: VerifySizes,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
        /// Report per-check timings on standard error.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Path length in steps (Schröder: weighted length, diagonals count 2).
    #[arg(long)]
    n: usize,
    #[arg(long)]
    budget_override: bool,
}

#[derive(Args)]
struct VerifySizes {
    #[arg(long, default_value_t = 9)]
    motzkin_max: usize,
    #[arg(long, default_value_t = 6)]
    schroder_max: usize,
    #[arg(long, default_value_t = gf::DEFAULT_MOTZKIN_ORDER)]
    order: usize,
    #[arg(long, default_value_t = 8)]
    isomorphism_max: usize,
    #[arg(long, default_value_t = 12)]
    components_max: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Family {
    Dyck,
    Motzkin,
    Schroder,
    MotzkinWords,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SeriesFamily {
    Motzkin,
    Schroder,
}

impl From<SeriesFamily> for IntervalFamily {
    fn from(f: SeriesFamily) -> Self {
        match f {
            SeriesFamily::Motzkin => IntervalFamily::Motzkin,
            SeriesFamily::Schroder => IntervalFamily::Schroder,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Fe,
    Algebraic,
    All,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Direction {
    Phi,
    PhiInv,
    Delta1,
    Delta2,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ListFormat {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(cli.command, &mut out) {
        Ok(()) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            print!("{out}");
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command, out: &mut String) -> Result<(), CliError> {
    match command {
        Command::Enumerate { family, format } => cmd_enumerate(&family, format, out),
        Command::Stats { path, format } => cmd_stats(&path, format, out),
        Command::Covers { path, format } => cmd_covers(&path, format, out),
        Command::Hasse {
            family,
            format,
            cluster,
            parallel,
        } => cmd_hasse(&family, format, cluster, parallel, out),
        Command::Components { family, format } => cmd_components(&family, format, out),
        Command::Intervals {
            family,
            n,
            method,
            u_refined,
            budget_override,
        } => cmd_intervals(family.into(), n, method, u_refined, budget_override, out),
        Command::Bijection { dir, path, tree } => cmd_bijection(dir, path, tree, out),
        Command::Series {
            family,
            order,
            u_refined,
            catalytic,
            format,
        } => cmd_series(family.into(), order, u_refined, catalytic, format, out),
        Command::Verify {
            sizes,
            format,
            timings,
        } => cmd_verify(&sizes, format, timings, out),
    }
}

fn budget(overridden: bool) -> Budget {
    Budget {
        overridden,
        ..Budget::default()
    }
}

fn family_paths(args: &FamilyArgs) -> Result<Vec<PathWord>, CliError> {
    let b = budget(args.budget_override);
    let n = args.n;
    let paths = match args.family {
        Family::Motzkin => {
            b.check_motzkin(n)?;
            path::enumerate_motzkin(n)?
        }
        Family::Dyck => {
            b.check_tamari(n)?;
            path::enumerate_dyck(n)?
        }
        Family::Schroder => {
            b.check_schroder(n)?;
            path::enumerate_schroder(n)?
        }
        Family::MotzkinWords => {
            b.check_tamari(n)?;
            path::enumerate_motzkin_word_paths(n)?
        }
    };
    Ok(paths)
}

fn cmd_enumerate(args: &FamilyArgs, format: ListFormat, out: &mut String) -> Result<(), CliError> {
    let paths = family_paths(args)?;
    match format {
        ListFormat::Text => {
            for p in &paths {
                let s = PathSummary::of(p);
                let _ = writeln!(
                    out,
                    "{}\tclass={}\tcontacts={}\td_steps={}\tprimitive={}",
                    s.word, s.class, s.contacts, s.d_steps, s.primitive
                );
            }
        }
        ListFormat::Json => {
            let rows: Vec<PathSummary> = paths.iter().map(PathSummary::of).collect();
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializable"));
        }
        ListFormat::Csv => {
            out.push_str("word,class,contacts,d_steps,primitive\n");
            for p in &paths {
                let s = PathSummary::of(p);
                let _ = writeln!(
                    out,
                    "{},\"{}\",{},{},{}",
                    s.word, s.class, s.contacts, s.d_steps, s.primitive
                );
            }
        }
    }
    Ok(())
}

fn cmd_stats(word: &str, format: TextOrJson, out: &mut String) -> Result<(), CliError> {
    let p = path::parse_path(word)?;
    let summary = PathSummary::of(&p);
    let dyck = if p.is_dyck() {
        Some((type_of(&p)?, ds_statistic(&p)?))
    } else {
        None
    };
    match format {
        TextOrJson::Json => {
            let mut v = serde_json::to_value(&summary).expect("serializable");
            if let Some((ty, ds)) = &dyck {
                v["type"] = json!(ty.to_string());
                v["ds"] = json!(ds);
                v["avoids_nnn"] = json!(!p.contains_nnn());
            }
            let _ = writeln!(out, "{v}");
        }
        TextOrJson::Text => {
            let _ = writeln!(out, "word: {}", summary.word);
            let _ = writeln!(out, "length: {}", p.len());
            let _ = writeln!(out, "class: {}", summary.class);
            let _ = writeln!(out, "contacts: {}", summary.contacts);
            let _ = writeln!(out, "d_steps: {}", summary.d_steps);
            let _ = writeln!(out, "primitive: {}", summary.primitive);
            if let Some((ty, ds)) = &dyck {
                let _ = writeln!(out, "type: {ty}");
                let _ = writeln!(out, "ds: {ds}");
                let _ = writeln!(out, "avoids_nnn: {}", !p.contains_nnn());
            }
        }
    }
    Ok(())
}

fn cmd_covers(word: &str, format: TextOrJson, out: &mut String) -> Result<(), CliError> {
    let p = path::parse_path(word)?;
    let covers = motzkin_covers(&p);
    let vs = valleys(&p);
    match format {
        TextOrJson::Json => {
            let v = json!({
                "word": p.to_string(),
                "valleys": vs,
                "covers": covers.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            let _ = writeln!(out, "{v}");
        }
        TextOrJson::Text => {
            for c in &covers {
                let _ = writeln!(out, "{c}");
            }
        }
    }
    Ok(())
}

fn family_poset(args: &FamilyArgs, parallel: bool) -> Result<poset::HasseDiagram, CliError> {
    let paths = family_paths(args)?;
    Ok(build_poset_with(paths, motzkin_covers, parallel)?)
}

fn cmd_hasse(
    args: &FamilyArgs,
    format: GraphFormat,
    cluster: bool,
    parallel: bool,
    out: &mut String,
) -> Result<(), CliError> {
    let h = family_poset(args, parallel)?;
    let parts = if cluster || format == GraphFormat::Json {
        Some(connected_components(&h)?)
    } else {
        None
    };
    match format {
        GraphFormat::Dot => out.push_str(&h.to_dot(parts.as_ref().filter(|_| cluster))),
        GraphFormat::Json => {
            let _ = writeln!(out, "{}", h.to_json(args.n, parts.as_ref()));
        }
    }
    eprintln!("nodes: {}, edges: {}", h.len(), h.covers().len());
    Ok(())
}

fn cmd_components(args: &FamilyArgs, format: TextOrJson, out: &mut String) -> Result<(), CliError> {
    let h = family_poset(args, false)?;
    let parts = connected_components(&h)?;
    let members = parts.members();
    match format {
        TextOrJson::Text => {
            for (c, m) in members.iter().enumerate() {
                let _ = writeln!(out, "{}\tsize={}\tmin={}", parts.classes[c], m.len(), h.elements()[m[0]]);
            }
            let _ = writeln!(out, "components: {}", parts.count());
        }
        TextOrJson::Json => {
            let rows: Vec<_> = members
                .iter()
                .zip(&parts.classes)
                .map(|(m, class)| {
                    json!({
                        "class": class,
                        "size": m.len(),
                        "members": m.iter().map(|&i| h.elements()[i].to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let _ = writeln!(out, "{}", json!({ "n": args.n, "count": parts.count(), "components": rows }));
        }
    }
    Ok(())
}

/// Computes the interval polynomial of size `n` by one method.
fn interval_polynomial(
    family: IntervalFamily,
    n: usize,
    method: Method,
    budget: &Budget,
) -> Result<UPoly, CliError> {
    let poly = match (method, family) {
        (Method::Brute, _) => refined_interval_polynomial(n, family, budget)?,
        (Method::Fe, IntervalFamily::Motzkin) => {
            gf::f1_via_functional_equation(n + 1)?.coefficient(n)?.clone()
        }
        (Method::Fe, IntervalFamily::Schroder) => {
            let f1 = gf::f1_via_functional_equation(2 * n + 1)?;
            gf::g_from_f1(&f1, n + 1)?.coefficient(n)?.clone()
        }
        (Method::Algebraic, IntervalFamily::Motzkin) => gf::compute_f1(n + 1)?.coefficient(n)?.clone(),
        (Method::Algebraic, IntervalFamily::Schroder) => gf::compute_g(n + 1)?.coefficient(n)?.clone(),
        (Method::All, _) => unreachable!("expanded by the caller"),
    };
    Ok(poly)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Brute => "brute",
        Method::Fe => "fe",
        Method::Algebraic => "algebraic",
        Method::All => "all",
    }
}

fn cmd_intervals(
    family: IntervalFamily,
    n: usize,
    method: Method,
    u_refined: bool,
    budget_override: bool,
    out: &mut String,
) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::BadFlags("--n must be positive".into()));
    }
    let b = budget(budget_override);
    let methods: Vec<Method> = if method == Method::All {
        let brute_fits = match family {
            IntervalFamily::Motzkin => b.check_motzkin(n).is_ok(),
            IntervalFamily::Schroder => b.check_schroder(2 * n).is_ok(),
        };
        if !brute_fits {
            eprintln!("note: brute force skipped (over budget; use --budget-override)");
        }
        [Method::Brute, Method::Fe, Method::Algebraic]
            .into_iter()
            .filter(|&m| m != Method::Brute || brute_fits)
            .collect()
    } else {
        vec![method]
    };
    let mut results = Vec::new();
    for m in methods {
        results.push((m, interval_polynomial(family, n, m, &b)?));
    }
    let (first_method, first) = &results[0];
    for (m, p) in &results[1..] {
        if p != first {
            let degree = (0..)
                .find(|&d| p.coeff(d) != first.coeff(d))
                .expect("unequal polynomials differ somewhere");
            return Err(CliError::Disagreement(format!(
                "coefficient of u^{degree}: {} gives {}, {} gives {}",
                method_name(*first_method),
                first.coeff(degree),
                method_name(*m),
                p.coeff(degree)
            )));
        }
    }
    if u_refined {
        let _ = writeln!(out, "{first}");
    } else {
        let _ = writeln!(out, "{}", first.eval_at_one());
    }
    Ok(())
}

fn cmd_bijection(
    dir: Direction,
    word: Option<String>,
    tree: Option<String>,
    out: &mut String,
) -> Result<(), CliError> {
    match dir {
        Direction::Phi | Direction::PhiInv => {
            let word = word.ok_or_else(|| CliError::BadFlags("--path is required".into()))?;
            let p = path::parse_path(&word)?;
            let (dyck, motzkin) = if dir == Direction::Phi {
                (p.clone(), bijection::phi(&p)?)
            } else {
                (bijection::phi_inv(&p), p.clone())
            };
            let image = if dir == Direction::Phi { &motzkin } else { &dyck };
            let _ = writeln!(out, "{image}");
            let _ = writeln!(out, "type: {}", type_of(&dyck)?);
            let _ = writeln!(out, "class: {}", class_of(&motzkin));
            let _ = writeln!(out, "ds: {}", ds_statistic(&dyck)?);
            let _ = writeln!(out, "d_steps: {}", motzkin.d_step_count());
            let _ = writeln!(out, "primitive: {}", is_primitive(&motzkin));
            let _ = writeln!(out, "contacts: {}", contacts(&dyck));
        }
        Direction::Delta1 | Direction::Delta2 => {
            let text = tree.ok_or_else(|| CliError::BadFlags("--tree is required".into()))?;
            let t: BinaryTree = text.parse()?;
            let steps = if dir == Direction::Delta1 {
                bijection::delta1(&t)
            } else {
                bijection::delta2(&t)
            };
            let word: String = steps.iter().map(|s| s.as_char()).collect();
            let _ = writeln!(out, "{word}");
        }
    }
    Ok(())
}

fn cmd_series(
    family: IntervalFamily,
    order: usize,
    u_refined: bool,
    catalytic: bool,
    format: TableFormat,
    out: &mut String,
) -> Result<(), CliError> {
    if catalytic && family != IntervalFamily::Motzkin {
        return Err(CliError::BadFlags("--catalytic applies to the motzkin family only".into()));
    }
    let rows: Vec<String> = if catalytic {
        let f = gf::iterate_f_circ(order)?;
        f.coeffs()
            .iter()
            .map(|p| {
                if u_refined {
                    p.to_string()
                } else {
                    p.eval_u_at_one().render_in('x')
                }
            })
            .collect()
    } else {
        let s = match family {
            IntervalFamily::Motzkin => gf::compute_f1(order)?,
            IntervalFamily::Schroder => gf::compute_g(order)?,
        };
        s.coeffs()
            .iter()
            .map(|p| {
                if u_refined {
                    p.to_string()
                } else {
                    p.eval_at_one().to_string()
                }
            })
            .collect()
    };
    match format {
        TableFormat::Csv => {
            out.push_str("n,coefficient\n");
            for (n, c) in rows.iter().enumerate() {
                let _ = writeln!(out, "{n},{c}");
            }
        }
        TableFormat::Json => {
            let v: Vec<_> = rows
                .iter()
                .enumerate()
                .map(|(n, c)| json!({ "n": n, "coefficient": c }))
                .collect();
            let _ = writeln!(out, "{}", serde_json::Value::Array(v));
        }
    }
    Ok(())
}

fn cmd_verify(
    sizes: &VerifySizes,
    format: TextOrJson,
    timings: bool,
    out: &mut String,
) -> Result<(), CliError> {
    let config = VerifyConfig {
        motzkin_brute_max: sizes.motzkin_max,
        schroder_brute_max: sizes.schroder_max,
        motzkin_order: sizes.order,
        isomorphism_max: sizes.isomorphism_max,
        motzkin_components_max: sizes.components_max,
        ..VerifyConfig::default()
    };
    let report = verify::run(&config);
    match format {
        TextOrJson::Text => out.push_str(&report.render_text(false)),
        TextOrJson::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
    }
    if timings {
        for c in &report.checks {
            eprintln!("{}: {:.3}s", c.name, c.elapsed.as_secs_f64());
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Disagreement("verification failed".into()))
    }
}

impl From<PathError> for CliError {
    fn from(e: PathError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<BijectionError> for CliError {
    fn from(e: BijectionError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Disagreement(e.to_string())
    }
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            PosetError::Path(p) => p.into(),
            other => CliError::Disagreement(other.to_string()),
        }
    }
}
