//! Command-line front end. The `spets` binary is a thin wrapper around [`run`].

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::arith::format::{format_cyclo, format_laurent, format_phi_factored};
use crate::blocktable::{BlockContext, PartialTable};
use crate::group::{default_catalog, load_group, Catalog, ReflectionGroup};
use crate::report::RunReport;
use crate::torus::{os_fit, Torus};
use crate::unipotent::almost::{almost_scalar, polynomiality_check, PolyFit};
use crate::unipotent::{fake_degrees, g24, UnipotentError};

#[derive(Parser, Debug)]
#[command(name = "spets", version, about = "Exact principal-block tables and conjecture checks for ℤ_ℓ-spetses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Group name, e.g. G333, G(5,5,2), mu3, A1, G24.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// The prime ℓ; must not divide |W|.
    #[arg(long, global = true)]
    pub ell: Option<u64>,
    /// Torus level: T = (ℤ/ℓ^a)^rank.
    #[arg(long, global = true)]
    pub a: Option<u32>,
    /// Integer value of q for evaluation (ℓ^a + 1 when omitted).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub q: Option<i64>,
    /// Write the table or the JSON run report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Group catalog JSON, or the G24 bundle for `g24` commands.
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for the character-table splitting retries.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect the group catalog.
    Group {
        #[command(subcommand)]
        what: GroupCmd,
    },
    /// Partial character table of the principal block.
    Table,
    /// Run one conjecture check.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// The G24 unipotent character table on 2-elements.
    G24 {
        #[command(subcommand)]
        what: G24Cmd,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum GroupCmd {
    Info,
    List,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum CheckCmd {
    Orthogonality,
    Frobenius,
    Restriction,
    AlmostIntegrality,
    OsFit,
    Polynomiality,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum G24Cmd {
    /// Symbolic table compared with the published one, or numeric values with --q.
    Table {
        #[arg(long)]
        symbolic: bool,
    },
    Frobenius,
}

/// Usage or input problems (exit 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Res<T> = Result<T, UsageError>;

fn need<T: Copy>(v: Option<T>, flag: &str) -> Res<T> {
    v.ok_or_else(|| UsageError(format!("--{flag} is required")))
}

/// Parse arguments, run, print, and return the exit code: 0 pass, 1 a check failed, 2 usage.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.common.jobs {
        // A pool may already exist when run() is called twice in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match execute(&cli) {
        Ok(Outcome { stdout, report }) => {
            print!("{stdout}");
            match report {
                Some(r) => {
                    if let Some(path) = &cli.common.out {
                        if let Err(e) = std::fs::write(path, r.to_json()) {
                            eprintln!("error: {e}");
                            return 2;
                        }
                    }
                    eprintln!("{} checks in {:.2?}", r.checks.len(), r.elapsed);
                    if r.passed() {
                        0
                    } else {
                        1
                    }
                }
                None => 0,
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

/// What a command produced: text for stdout and, for checks, a report.
pub struct Outcome {
    pub stdout: String,
    pub report: Option<RunReport>,
}

fn catalog(c: &Common) -> Res<Catalog> {
    match &c.data {
        Some(p) => Ok(Catalog::from_json(&std::fs::read_to_string(p)?)?),
        None => Ok(default_catalog()),
    }
}

fn group(c: &Common) -> Res<ReflectionGroup> {
    let name = c.group.as_deref().ok_or_else(|| UsageError("--group is required".into()))?;
    let cat = catalog(c)?;
    Ok(load_group(name, Some(&cat), c.seed)?)
}

fn report_for(cmd: &str, c: &Common, g: Option<&ReflectionGroup>) -> RunReport {
    let mut r = RunReport::new(cmd, c.seed);
    r.group = g.map(|g| g.name().to_string());
    r.ell = c.ell;
    r.a = c.a;
    r.q = c.q;
    r
}

fn record_roots(r: &mut RunReport, t: &Torus<'_>) {
    let e = t.embedding();
    if let Some(w) = e.primitive_root {
        r.roots.insert(format!("primitive root mod {}", e.modulus), w.to_string());
    }
    r.roots.insert(format!("zeta_{}", e.modulus), format!("exp(2 pi i/{})", e.modulus));
    let f = t.group().field();
    if let Some(z) = e.zeta(f) {
        r.roots.insert(format!("zeta_{f} mod {}", e.modulus), z.to_string());
    }
}

pub fn execute(cli: &Cli) -> Res<Outcome> {
    let c = &cli.common;
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Group { what } => group_cmd(*what, c)?,
        Command::Table => table_cmd(c)?,
        Command::Check { what } => check_cmd(*what, c)?,
        Command::G24 { what } => g24_cmd(*what, c)?,
    };
    if let Some(r) = out.report.as_mut() {
        r.elapsed = start.elapsed();
        out.stdout.push_str(&r.human());
    }
    Ok(out)
}

fn group_cmd(what: GroupCmd, c: &Common) -> Res<Outcome> {
    let mut s = String::new();
    match what {
        GroupCmd::List => {
            for e in &catalog(c)?.groups {
                s.push_str(&format!("{}\trank {}\tQ(zeta_{})\n", e.name, e.rank, e.cyclo_order));
            }
        }
        GroupCmd::Info => {
            let g = group(c)?;
            let fakes = fake_degrees(&g)?;
            let info = json!({
                "name": g.name(),
                "order": g.order(),
                "rank": g.rank(),
                "field": g.field(),
                "degrees": g.degrees(),
                "reflections": g.num_reflections(),
                "classes": g.num_classes(),
                "character_degrees": g.char_table().degrees(),
                "fake_degrees": fakes.iter().map(|f| format_laurent(f, "x")).collect::<Vec<_>>(),
            });
            s = serde_json::to_string_pretty(&info).expect("json") + "\n";
        }
    }
    Ok(Outcome { stdout: s, report: None })
}

fn table_cmd(c: &Common) -> Res<Outcome> {
    let g = group(c)?;
    let ctx = BlockContext::new(&g, need(c.ell, "ell")?, need(c.a, "a")?)?;
    let t = ctx.table()?;
    let text = match c.format {
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json() + "\n",
    };
    match &c.out {
        Some(p) => {
            std::fs::write(p, &text)?;
            Ok(Outcome { stdout: format!("{} rows, {} columns written to {}\n", t.rows.len(), t.cols.len(), p.display()), report: None })
        }
        None => Ok(Outcome { stdout: text, report: None }),
    }
}

fn default_q(c: &Common) -> Res<i64> {
    match c.q {
        Some(q) => Ok(q),
        None => {
            let (ell, a) = (need(c.ell, "ell")?, need(c.a, "a")?);
            Ok(ell.pow(a) as i64 + 1)
        }
    }
}

fn check_cmd(what: CheckCmd, c: &Common) -> Res<Outcome> {
    let g = group(c)?;
    let (ell, a) = (need(c.ell, "ell")?, need(c.a, "a")?);
    let name = format!("check {what:?}").to_lowercase();
    let mut r = report_for(&name, c, Some(&g));
    match what {
        CheckCmd::Orthogonality | CheckCmd::Frobenius | CheckCmd::Restriction => {
            let ctx = BlockContext::new(&g, ell, a)?;
            record_roots(&mut r, ctx.torus());
            let t = ctx.table()?;
            block_checks(what, c, &ctx, &t, &mut r)?;
        }
        CheckCmd::OsFit => {
            let fit = os_fit(&g, ell, a)?;
            for row in &fit.rows {
                r.push(
                    format!("os-fit |W0|={} dim Fix={}", row.order, row.fix_dim),
                    row.b().is_some(),
                    serde_json::to_value(row).expect("json"),
                );
            }
        }
        CheckCmd::AlmostIntegrality => {
            let torus = Torus::new(&g, ell, a)?;
            record_roots(&mut r, &torus);
            let q = default_q(c)?;
            r.q = Some(q);
            let qr = BigRational::from_integer(BigInt::from(q));
            for (i, phi) in g.char_table().values.iter().enumerate() {
                for orbit in torus.dual_orbits() {
                    let s = almost_scalar(&torus, phi, orbit[0], &qr)?;
                    r.push(
                        format!("<R_phi{i}, psi{}>", coords(&torus, orbit[0])),
                        s.integral,
                        json!(format_cyclo(&s.value)),
                    );
                }
            }
        }
        CheckCmd::Polynomiality => {
            let torus = Torus::new(&g, ell, a)?;
            record_roots(&mut r, &torus);
            for i in 0..g.char_table().num_irr() {
                for orbit in torus.dual_orbits() {
                    let fit = fit_widening(&torus, i, orbit[0])?;
                    r.push(
                        format!("polynomial in ell^b: phi{i}, psi{}", coords(&torus, orbit[0])),
                        fit.passed(),
                        serde_json::to_value(&fit).expect("json"),
                    );
                }
            }
        }
    }
    Ok(Outcome { stdout: String::new(), report: Some(r) })
}

/// Sample levels a, a+1, ... widening until a held-out level confirms the fit.
fn fit_widening(torus: &Torus<'_>, phi: usize, psi: u32) -> Res<PolyFit> {
    let a = torus.a();
    for extra in 3..=3 + 4 * torus.rank() as u32 {
        let bs: Vec<u32> = (a..=a + extra).collect();
        match polynomiality_check(torus, phi, psi, &bs, true) {
            Err(UnipotentError::InterpolationUnderdetermined { .. }) => continue,
            r => return Ok(r?),
        }
    }
    Err(UsageError(format!("no polynomial fit for phi{phi} within the sampled levels")))
}

fn coords(t: &Torus<'_>, p: u32) -> String {
    format!("({})", t.coords(p).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
}

fn block_checks(what: CheckCmd, c: &Common, ctx: &BlockContext<'_>, t: &PartialTable, r: &mut RunReport) -> Res<()> {
    match what {
        CheckCmd::Orthogonality => {
            let x1 = ctx.specialise_x1_check(t)?;
            r.push("specialisation at x=1", x1.mismatches.is_empty(), json!({"checked": x1.checked, "mismatches": x1.mismatches}));
            for o in ctx.orthogonality_all(t)? {
                let name = format!("orthogonality {} {}", o.t, o.t2);
                r.push(name, o.pass && o.forms_agree, serde_json::to_value(&o).expect("json"));
            }
        }
        CheckCmd::Frobenius => {
            let q = default_q(c)?;
            r.q = Some(q);
            let f = ctx.frobenius_check(t, q)?;
            for row in &f.rows {
                r.push(
                    format!("frobenius {}", row.label),
                    row.pass,
                    json!({"sum": row.sum, "valuation": row.valuation, "required": f.required}),
                );
            }
        }
        CheckCmd::Restriction => {
            let q = default_q(c)?;
            r.q = Some(q);
            let rep = ctx.restriction_check(t, q)?;
            for row in &rep.rows {
                r.push(format!("restriction {}", row.label), row.integral, json!({"psi": rep.psi, "coefficients": row.coefficients}));
            }
        }
        _ => unreachable!("handled by check_cmd"),
    }
    Ok(())
}

fn g24_cmd(what: G24Cmd, c: &Common) -> Res<Outcome> {
    let bundle = g24::read_bundle(c.data.as_deref())?;
    let d = g24::load(bundle, c.seed)?;
    let mut r = report_for(&format!("g24 {what:?}").to_lowercase(), c, Some(&d.group));
    r.roots.insert("sqrt(-7)".into(), d.bundle.conventions.sqrt_minus7_branch.clone());
    for (k, v) in &d.bundle.conventions.phi7_split {
        r.roots.insert(k.clone(), v.clone());
    }
    let mut stdout = String::new();
    match what {
        G24Cmd::Table { symbolic } => {
            if let (Some(q), false) = (c.q, symbolic) {
                let vals = g24::g24_table_numeric(&d, &BigRational::from_integer(BigInt::from(q)))?;
                for (ch, row) in d.characters.iter().zip(&vals) {
                    let cells: Vec<String> = row.iter().map(format_cyclo).collect();
                    stdout.push_str(&format!("{}\t{}\n", ch.label, cells.join("\t")));
                }
                return Ok(Outcome { stdout, report: None });
            }
            let t = g24::g24_table(&d)?;
            stdout.push_str(&format!("character\t{}\n", t.cols.join("\t")));
            for (label, row) in t.rows.iter().zip(&t.values) {
                let cells: Vec<String> = row.iter().map(|p| format_phi_factored(p, "q")).collect();
                stdout.push_str(&format!("{label}\t{}\n", cells.join("\t")));
            }
            let diffs = g24::compare_published(&d, &t);
            let cells = t.rows.len() * t.cols.len();
            r.push(
                format!("table matches published values ({} of {cells} entries differ)", diffs.len()),
                diffs.is_empty(),
                serde_json::to_value(&diffs).expect("json"),
            );
        }
        G24Cmd::Frobenius => {
            let q = need(c.q, "q")?;
            let f = g24::g24_frobenius(&d, q)?;
            for row in &f.rows {
                r.push(
                    format!("frobenius q={q} {}", row.label),
                    row.pass,
                    json!({"l": f.l, "required": f.required, "valuation": row.valuation, "valuation_x_prime": row.valuation_x_prime, "sum": row.sum}),
                );
            }
        }
    }
    Ok(Outcome { stdout, report: Some(r) })
}
