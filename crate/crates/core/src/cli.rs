//! Command-line front end. Parsing is done with clap; [`run`] returns the
//! process exit code: 0 when every requested check passes, 1 on a failed
//! check, 2 on a usage or I/O error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::census::{
    self, census_report, formula_report, CensusOptions, CensusReport, CheckRecord, Suite,
};
use crate::error::{Error, Result};
use crate::gfield::{ExtCtx, FieldCtx, Fq, MonicCubic};
use crate::mat3::Mat3;
use crate::menichetti::enumerate_s_parametric;
use crate::rankcode::MrdTriple;
use crate::semifield::{SemifieldClass, SemifieldView};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mrd3",
    version,
    about = "Exact census of [3x3;3]-MRD codes over small finite fields"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Worker threads for the parallel sweeps (default: all cores)
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report every check duration as 0, for byte-identical output
    #[arg(long, global = true)]
    pub no_timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// brute force and parametrization, cross-checked
    All,
    Brute,
    Parametric,
    Formula,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full census report per q
    Census {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        /// Enable the long-running checks
        #[arg(long)]
        long: bool,
    },
    /// List every normalized MRD triple with its class
    Enumerate {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Mode::Parametric)]
        mode: Mode,
    },
    /// Run named verification suites
    Verify {
        /// Suite name, or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
    },
    /// List the monic irreducible cubics
    Irreducibles {
        #[arg(long)]
        q: u64,
    },
    /// Report on one triple (I, C_f, Z)
    Inspect {
        #[arg(long)]
        q: u64,
        /// `a,b,c` for f = x^3 - c x^2 - b x - a, as element indices
        #[arg(long)]
        f: String,
        /// Columns of Z separated by `;`, entries by `,`; either all three
        /// columns (the first must be 0,0,1) or only the last two
        #[arg(long)]
        z: String,
    },
    /// Closed-form counts and proportion for any prime power q
    Formula {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
    },
}

/// Parse arguments and run; clap errors exit with its own code (2 for usage).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            code
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    if let Some(n) = cli.common.workers {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
        {
            Ok(pool) => return pool.install(|| dispatch(&cli)),
            Err(e) => {
                eprintln!("error: cannot start {n} workers: {e}");
                return EXIT_USAGE;
            }
        }
    }
    dispatch(&cli)
}

fn dispatch(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok((text, pass)) => {
            if let Err(e) = emit(&cli.common, &text) {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            if pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(common: &CommonArgs, text: &str) -> std::io::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

/// Rendered output and whether all requested checks passed.
fn execute(cli: &Cli) -> Result<(String, bool)> {
    let common = &cli.common;
    match &cli.command {
        Command::Census { q, mode, long } => {
            let mut reports = Vec::new();
            for &qv in q {
                validate_field_q(qv)?;
                let report = match mode {
                    Mode::Formula => formula_report(qv)?,
                    _ => census_report(
                        qv,
                        CensusOptions {
                            brute: matches!(mode, Mode::All | Mode::Brute),
                            parametric: matches!(mode, Mode::All | Mode::Parametric),
                            long: *long,
                            seed: common.seed,
                        },
                    )?,
                };
                reports.push(report);
            }
            Ok(render_reports(common, reports))
        }
        Command::Formula { q } => {
            let reports = q
                .iter()
                .map(|&qv| formula_report(qv))
                .collect::<Result<Vec<_>>>()?;
            Ok(render_reports(common, reports))
        }
        Command::Verify { suite, q } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let mut records = Vec::new();
            let mut skipped = Vec::new();
            for &qv in q {
                validate_field_q(qv)?;
                for &s in &suites {
                    if !s.supports(qv) {
                        if suite == "all" {
                            skipped.push(format!("{s}[q={qv}]"));
                            continue;
                        }
                        return Err(Error::Unsupported {
                            q: qv,
                            reason: format!("suite '{s}' does not run at this q"),
                        });
                    }
                    records.extend(census::run_suite(s, qv, common.seed)?);
                }
            }
            strip_timings(common, &mut records);
            let pass = records.iter().all(|r| r.pass);
            Ok((render_checks(common.format, &records, &skipped), pass))
        }
        Command::Irreducibles { q } => {
            let field = FieldCtx::new(*q)?;
            Ok((render_irreducibles(common.format, &field), true))
        }
        Command::Enumerate { q, mode } => {
            let triples = enumerate(*q, *mode)?;
            let field = FieldCtx::new(*q)?;
            Ok((render_enumeration(common.format, &field, &triples)?, true))
        }
        Command::Inspect { q, f, z } => {
            let field = FieldCtx::new(*q)?;
            let ext = ExtCtx::new(field.clone());
            let triple = parse_triple(&field, f, z)?;
            Ok((render_inspection(common.format, &ext, &triple)?, true))
        }
    }
}

fn validate_field_q(q: u64) -> Result<()> {
    FieldCtx::new(q).map(|_| ())
}

fn enumerate(q: u64, mode: Mode) -> Result<Vec<MrdTriple>> {
    let field = FieldCtx::new(q)?;
    match mode {
        Mode::Brute => Ok(census::brute_force_s(&field)?.triples),
        Mode::Parametric | Mode::All => {
            if q > census::PARAMETRIC_MAX_Q {
                return Err(Error::Unsupported {
                    q,
                    reason: format!("enumeration needs q <= {}", census::PARAMETRIC_MAX_Q),
                });
            }
            Ok(enumerate_s_parametric(&ExtCtx::new(field)))
        }
        Mode::Formula => Err(Error::Parse(
            "enumerate needs --mode brute or parametric".into(),
        )),
    }
}

fn strip_timings(common: &CommonArgs, records: &mut [CheckRecord]) {
    if common.no_timings {
        for r in records {
            r.millis = 0;
        }
    }
}

fn opt_str(x: &Option<num_bigint::BigInt>) -> Value {
    x.as_ref()
        .map_or(Value::Null, |v| Value::String(v.to_string()))
}

pub fn report_json(report: &CensusReport) -> Value {
    let classes: serde_json::Map<String, Value> = report
        .class_counts
        .iter()
        .map(|(k, v)| (k.label().to_string(), Value::String(v.to_string())))
        .collect();
    json!({
        "q": report.q,
        "counts": {
            "s_brute": opt_str(&report.s_brute),
            "s_parametric": opt_str(&report.s_parametric),
            "s_formula": report.s_formula.to_string(),
            "s_prime": report.s_prime.to_string(),
            "s_dblprime": report.s_dblprime.to_string(),
            "t_hat": report.t_hat.to_string(),
            "t_total": report.t_total.to_string(),
        },
        "proportion": {
            "num": report.proportion.numer().to_string(),
            "den": report.proportion.denom().to_string(),
        },
        "classes": classes,
        "class_source": report.class_source,
        "checks": report.checks,
    })
}

fn render_reports(common: &CommonArgs, mut reports: Vec<CensusReport>) -> (String, bool) {
    for r in &mut reports {
        strip_timings(common, &mut r.checks);
    }
    let pass = reports.iter().all(|r| r.all_pass());
    let text = match common.format {
        Format::Json => {
            let v = if reports.len() == 1 {
                report_json(&reports[0])
            } else {
                Value::Array(reports.iter().map(report_json).collect())
            };
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Csv => {
            let mut s = String::from(
                "q,s_brute,s_parametric,s_formula,s_prime,s_dblprime,t_hat,t_total,proportion_num,proportion_den,field,commutative_nonassociative,proper_noncommutative,pass\n",
            );
            for r in &reports {
                let o = |x: &Option<num_bigint::BigInt>| {
                    x.as_ref().map_or(String::new(), |v| v.to_string())
                };
                let c = |k| {
                    r.class_counts
                        .get(&k)
                        .map_or(String::new(), |v| v.to_string())
                };
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    r.q,
                    o(&r.s_brute),
                    o(&r.s_parametric),
                    r.s_formula,
                    r.s_prime,
                    r.s_dblprime,
                    r.t_hat,
                    r.t_total,
                    r.proportion.numer(),
                    r.proportion.denom(),
                    c(SemifieldClass::Field),
                    c(SemifieldClass::CommutativeNonassociative),
                    c(SemifieldClass::ProperNoncommutative),
                    r.all_pass()
                );
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for r in &reports {
                let o = |x: &Option<num_bigint::BigInt>| {
                    x.as_ref().map_or("-".to_string(), |v| v.to_string())
                };
                let _ = writeln!(s, "q = {}", r.q);
                let _ = writeln!(
                    s,
                    "  |S|        brute {}  parametric {}  formula {}",
                    o(&r.s_brute),
                    o(&r.s_parametric),
                    r.s_formula
                );
                let _ = writeln!(s, "  |S'|       {}", r.s_prime);
                let _ = writeln!(s, "  |S''|      {}", r.s_dblprime);
                let _ = writeln!(s, "  t_hat      {}", r.t_hat);
                let _ = writeln!(s, "  t_total    {}", r.t_total);
                let _ = writeln!(s, "  proportion {}", r.proportion);
                for (k, v) in &r.class_counts {
                    let _ = writeln!(s, "  {:<28}{} ({})", k.label(), v, r.class_source);
                }
                s.push_str(&check_lines(&r.checks));
            }
            s
        }
    };
    (text, pass)
}

fn check_lines(records: &[CheckRecord]) -> String {
    let mut s = String::new();
    for c in records {
        let _ = write!(
            s,
            "  [{}] {} ({} ms)",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.millis
        );
        if let Some(d) = &c.detail {
            let _ = write!(s, ": {d}");
        }
        s.push('\n');
    }
    s
}

fn render_checks(format: Format, records: &[CheckRecord], skipped: &[String]) -> String {
    match format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({ "checks": records, "skipped": skipped }))
                .expect("json")
                + "\n"
        }
        Format::Csv => {
            let mut s = String::from("name,pass,millis\n");
            for r in records {
                let _ = writeln!(
                    s,
                    "\"{}\",{},{}",
                    r.name.replace('"', "\"\""),
                    r.pass,
                    r.millis
                );
            }
            s
        }
        Format::Table => {
            let mut s = check_lines(records);
            for k in skipped {
                let _ = writeln!(s, "  [SKIP] {k}");
            }
            s
        }
    }
}

fn modulus_label(field: &FieldCtx) -> String {
    match field.modulus() {
        Some(m) => format!(
            "F_{} = F_{}[t]/(m), m coefficients low to high {:?}; element index = sum c_i {}^i",
            field.q(),
            field.characteristic(),
            m,
            field.characteristic()
        ),
        None => format!("F_{} = integers mod {}", field.q(), field.q()),
    }
}

fn render_irreducibles(format: Format, field: &FieldCtx) -> String {
    let cubics = field.irreducible_cubics();
    match format {
        Format::Json => {
            let list: Vec<Value> = cubics
                .iter()
                .map(|f| json!({"poly": f.display(field).to_string(), "a": f.a.0, "b": f.b.0, "c": f.c.0}))
                .collect();
            serde_json::to_string_pretty(
                &json!({"q": field.q(), "field": modulus_label(field), "cubics": list}),
            )
            .expect("json")
                + "\n"
        }
        Format::Csv => {
            let mut s = format!("# {}\npoly,a,b,c\n", modulus_label(field));
            for f in &cubics {
                let _ = writeln!(s, "{},{},{},{}", f.display(field), f.a.0, f.b.0, f.c.0);
            }
            s
        }
        Format::Table => {
            let mut s = format!(
                "{} monic irreducible cubics over F_{}\n",
                cubics.len(),
                field.q()
            );
            for f in &cubics {
                let _ = writeln!(
                    s,
                    "  {:<28} (a,b,c) = ({},{},{})",
                    f.display(field).to_string(),
                    f.a.0,
                    f.b.0,
                    f.c.0
                );
            }
            s
        }
    }
}

fn triple_row(field: &FieldCtx, t: &MrdTriple) -> Result<(Vec<u8>, SemifieldClass)> {
    let v = SemifieldView::normalized(field, t.clone())?;
    let class = v.classify(field)?;
    let [a, b, c] = v.f_coeffs()?;
    let z = &t.a3;
    let row = vec![
        a.0,
        b.0,
        c.0,
        z.z(1, 2).0,
        z.z(1, 3).0,
        z.z(2, 2).0,
        z.z(2, 3).0,
        z.z(3, 2).0,
        z.z(3, 3).0,
    ];
    Ok((row, class))
}

fn render_enumeration(format: Format, field: &FieldCtx, triples: &[MrdTriple]) -> Result<String> {
    let rows = triples
        .iter()
        .map(|t| triple_row(field, t))
        .collect::<Result<Vec<_>>>()?;
    const COLS: [&str; 9] = ["a", "b", "c", "z12", "z13", "z22", "z23", "z32", "z33"];
    Ok(match format {
        Format::Csv => {
            let mut s = format!(
                "# q={} {}\n# Z first column is (0,0,1)\n",
                field.q(),
                modulus_label(field)
            );
            s.push_str(&COLS.join(","));
            s.push_str(",class\n");
            for (row, class) in &rows {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "{},{}", cells.join(","), class);
            }
            s
        }
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|(row, class)| {
                    let mut m: serde_json::Map<String, Value> = COLS
                        .iter()
                        .zip(row)
                        .map(|(k, v)| (k.to_string(), json!(v)))
                        .collect();
                    m.insert("class".into(), json!(class.label()));
                    Value::Object(m)
                })
                .collect();
            serde_json::to_string_pretty(
                &json!({"q": field.q(), "field": modulus_label(field), "triples": list}),
            )
            .expect("json")
                + "\n"
        }
        Format::Table => {
            let mut counts: BTreeMap<SemifieldClass, usize> = BTreeMap::new();
            let mut s = String::new();
            for (row, class) in &rows {
                *counts.entry(*class).or_default() += 1;
                let f = MonicCubic::new(Fq(row[0]), Fq(row[1]), Fq(row[2]));
                let _ = writeln!(
                    s,
                    "{:<26} Z = [0 {} {}; 0 {} {}; 1 {} {}]  {}",
                    f.display(field).to_string(),
                    row[3],
                    row[4],
                    row[5],
                    row[6],
                    row[7],
                    row[8],
                    class
                );
            }
            let _ = writeln!(s, "{} triples", rows.len());
            for (k, v) in counts {
                let _ = writeln!(s, "  {k}: {v}");
            }
            s
        }
    })
}

fn parse_elems(field: &FieldCtx, text: &str) -> Result<Vec<Fq>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            let n: u64 = t
                .parse()
                .map_err(|_| Error::Parse(format!("'{t}' is not an element index")))?;
            field.element(n)
        })
        .collect()
}

fn parse_vec3(field: &FieldCtx, text: &str) -> Result<[Fq; 3]> {
    let v = parse_elems(field, text)?;
    v.try_into()
        .map_err(|v: Vec<Fq>| Error::Parse(format!("expected 3 entries, got {}", v.len())))
}

/// `f` as `a,b,c`; `Z` as two or three `;`-separated columns.
pub fn parse_triple(field: &FieldCtx, f: &str, z: &str) -> Result<MrdTriple> {
    let [a, b, c] = parse_vec3(field, f)?;
    let cols = z
        .split(';')
        .map(|c| parse_vec3(field, c))
        .collect::<Result<Vec<_>>>()?;
    let e3 = [Fq::ZERO, Fq::ZERO, Fq::ONE];
    let (z2, z3) = match cols.as_slice() {
        [z2, z3] => (*z2, *z3),
        [z1, z2, z3] if *z1 == e3 => (*z2, *z3),
        [_, _, _] => return Err(Error::Parse("first column of Z must be 0,0,1".into())),
        _ => {
            return Err(Error::Parse(format!(
                "Z needs 2 or 3 columns, got {}",
                cols.len()
            )))
        }
    };
    Ok(MrdTriple::normalized(
        &MonicCubic::new(a, b, c),
        Mat3::from_columns(e3, z2, z3),
    ))
}

fn render_inspection(format: Format, ext: &ExtCtx, triple: &MrdTriple) -> Result<String> {
    let field = ext.base();
    let f = triple.companion_cubic().expect("companion shape");
    let irreducible = f.is_irreducible(field);
    let mrd = triple.is_mrd(field);
    let distance = triple.rank_distance(field).ok();
    let (class, dual, self_dual) = if irreducible && mrd {
        let v = SemifieldView::normalized(field, triple.clone())?;
        let d = v.dual_triple(field)?;
        let self_dual = d == v;
        (Some(v.classify(field)?), Some(d), Some(self_dual))
    } else {
        (None, None, None)
    };
    let dual_desc = dual.as_ref().map(|d| {
        let g = d.triple().companion_cubic().expect("companion shape");
        (g.display(field).to_string(), d.triple().a3.to_string())
    });
    Ok(match format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "q": field.q(),
                "f": f.display(field).to_string(),
                "f_irreducible": irreducible,
                "z": triple.a3.to_string(),
                "mrd": mrd,
                "rank_distance": distance,
                "class": class.map(|c| c.label()),
                "dual": dual_desc.as_ref().map(|(g, z)| json!({"g": g, "z": z})),
                "self_dual": self_dual,
            }))
            .expect("json")
                + "\n"
        }
        Format::Csv | Format::Table => {
            let yes = |b: bool| if b { "yes" } else { "no" };
            let mut s = format!("f = {}  Z = {}\n", f.display(field), triple.a3);
            let mut summary = vec![format!("MRD: {}", yes(mrd))];
            if !irreducible {
                summary.push("f reducible".into());
            }
            if let Some(d) = distance {
                summary.push(format!("rank distance: {d}"));
            }
            if let Some(c) = class {
                summary.push(format!("class: {c}"));
            }
            match self_dual {
                Some(true) => summary.push("self-dual".into()),
                Some(false) => {
                    let (g, z) = dual_desc.as_ref().expect("dual");
                    summary.push(format!("dual: g = {g}, Z = {z}"));
                }
                None => {}
            }
            s.push_str(&summary.join("; "));
            s.push('\n');
            s
        }
    })
}
