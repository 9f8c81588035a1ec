mod args;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::{
    Cli, Command, Common, DistanceArgs, FieldArgs, Format, NormArgs, RegionArgs, RegionKindArg,
    ScanArgs, VerifyArgs,
};
use soperator::analysis::scan::MIN_FIT_QS;
use soperator::analysis::{
    distance_experiment, fit_growth, region_contains, rows_to_csv, run_verify, scan, ExponentPair,
    Family, RegionSpec, ScanConfig, Suite, VerifyConfig,
};
use soperator::{
    s_apply_radial, s_norm_ratio, CharTable, Error, Exponent, Field, FieldSpec, GridFunction,
    RadialFunction,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

type Result<T> = std::result::Result<T, Error>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// `Ok(false)` when a check failed.
fn run(command: Command) -> Result<bool> {
    let common = match &command {
        Command::Verify(a) => &a.common,
        Command::Scan(a) => &a.common,
        Command::Norm(a) => &a.common,
        Command::Region(a) => &a.common,
        Command::Distance(a) => &a.common,
    };
    let pool = thread_pool(common)?;
    pool.install(|| match command {
        Command::Verify(a) => cmd_verify(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Norm(a) => cmd_norm(a),
        Command::Region(a) => cmd_region(a),
        Command::Distance(a) => cmd_distance(a),
    })
}

fn thread_pool(common: &Common) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = common.threads {
        if n == 0 {
            return usage("--threads must be positive");
        }
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::Usage(format!("cannot start thread pool: {e}")))
}

fn field_spec(args: &FieldArgs) -> Result<FieldSpec> {
    let spec = match &args.modulus {
        Some(m) => FieldSpec::with_modulus(args.q, m.clone())?,
        None => FieldSpec::for_order(args.q)?,
    };
    if let Some(a) = args.alpha {
        if a != spec.alpha() {
            return usage(format!("--alpha {a} does not match q = {}", args.q));
        }
    }
    Ok(spec)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| Error::Usage(format!("cannot write to stdout: {e}")))
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn cmd_verify(a: VerifyArgs) -> Result<bool> {
    let cfg = VerifyConfig {
        field: field_spec(&a.field)?,
        d: a.d,
        suites: Suite::parse_list(&a.suite)?,
        n: a.n,
        trials: a.trials,
        seed: a.common.seed,
    };
    let report = run_verify(&cfg)?;
    write_output(a.common.out.as_deref(), &pretty(&report))?;
    Ok(report.pass)
}

fn fit_path(a: &ScanArgs) -> Option<PathBuf> {
    a.fit_out
        .clone()
        .or_else(|| a.common.out.as_ref().map(|p| p.with_extension("fits.json")))
}

fn cmd_scan(a: ScanArgs) -> Result<bool> {
    let mut distinct = a.qs.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if a.fit && distinct.len() < MIN_FIT_QS {
        return usage(format!(
            "--fit needs at least {MIN_FIT_QS} distinct q, got {}",
            distinct.len()
        ));
    }
    let cfg = ScanConfig {
        d: a.d,
        fields: a
            .qs
            .iter()
            .map(|&q| FieldSpec::for_order(q))
            .collect::<Result<_>>()?,
        grid: a.grid,
        families: Family::parse_list(&a.families, a.d)?,
        trials: a.trials,
        seed: a.common.seed,
    };
    let rows = scan(&cfg)?;
    let fits = if a.fit {
        Some(fit_growth(&rows)?)
    } else {
        None
    };
    let out = a.common.out.as_deref();
    match a.format {
        Format::Json => {
            let mut doc = json!({ "d": a.d, "qs": a.qs, "grid": a.grid, "seed": a.common.seed, "rows": rows });
            if let Some(f) = &fits {
                doc["fits"] = serde_json::to_value(f).expect("fits serialize");
            }
            write_output(out, &pretty(&doc))?;
        }
        Format::Csv => {
            let csv = rows_to_csv(&rows);
            match (&fits, fit_path(&a)) {
                (Some(f), Some(path)) => {
                    write_output(out, &csv)?;
                    write_output(Some(&path), &pretty(f))?;
                }
                (Some(f), None) => write_output(None, &format!("{csv}\n{}", pretty(f)))?,
                (None, _) => write_output(out, &csv)?,
            }
        }
    }
    Ok(true)
}

fn read_input(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Largest lifted space for which the dense cross-check of a radial input runs.
const DENSE_CHECK_LIMIT: usize = 1 << 22;

fn cmd_norm(a: NormArgs) -> Result<bool> {
    let text = read_input(&a.input)?;
    let value: Value = serde_json::from_str(&text)?;
    let p: Exponent = a.p.parse()?;
    let s: Exponent = a.s.parse()?;
    let mut doc = json!({ "p": p.to_string(), "s": s.to_string() });
    let space = if value.get("radial").is_some() {
        let rf = RadialFunction::from_json(&text)?;
        if rf.is_zero() {
            return usage("the zero function has no norm ratio");
        }
        let table = CharTable::new(rf.space().field());
        let image = s_apply_radial(&table, &rf)?;
        let sizes = rf.space().sphere_sizes();
        let (gp, ss) = (rf.lp_norm(p), image.lp_norm(s, &sizes));
        doc["kind"] = json!("radial");
        doc["norm_g_p"] = json!(gp);
        doc["norm_sg_s"] = json!(ss);
        doc["ratio"] = json!(ss / gp);
        if rf.space().lifted().size() <= DENSE_CHECK_LIMIT {
            doc["dense_ratio"] = json!(s_norm_ratio(&table, &rf.expand(), p, s)?);
        }
        rf.space().clone()
    } else {
        let g = GridFunction::from_json(&text)?;
        if g.is_zero() {
            return usage("the zero function has no norm ratio");
        }
        let table = CharTable::new(g.space().field());
        let sg = soperator::s_apply(&table, &g)?;
        let (gp, ss) = (g.lp_norm(p), sg.lp_norm(s));
        doc["kind"] = json!("dense");
        doc["norm_g_p"] = json!(gp);
        doc["norm_sg_s"] = json!(ss);
        doc["ratio"] = json!(ss / gp);
        g.space().clone()
    };
    if a.q.is_some_and(|q| q != space.field().q()) {
        return usage(format!(
            "input is over F_{}, not F_{}",
            space.field().q(),
            a.q.unwrap()
        ));
    }
    if a.d.is_some_and(|d| d != space.dim()) {
        return usage(format!(
            "input has dimension {}, not {}",
            space.dim(),
            a.d.unwrap()
        ));
    }
    doc["q"] = json!(space.field().q());
    doc["d"] = json!(space.dim());
    write_output(a.common.out.as_deref(), &pretty(&doc))?;
    Ok(true)
}

fn cmd_region(a: RegionArgs) -> Result<bool> {
    let region = match a.kind {
        RegionKindArg::General => RegionSpec::general(),
        RegionKindArg::Radial => RegionSpec::radial(a.d)?,
    };
    let mut doc = serde_json::to_value(&region).expect("region serializes");
    if let Some(text) = &a.point {
        let e: ExponentPair = text.parse()?;
        doc["point"] = serde_json::to_value(e).expect("point serializes");
        doc["contains"] = json!(region_contains(&region, e));
    }
    write_output(a.common.out.as_deref(), &pretty(&doc))?;
    Ok(true)
}

fn cmd_distance(a: DistanceArgs) -> Result<bool> {
    let field = Field::new(field_spec(&a.field)?);
    let report = distance_experiment(&field, a.d, a.size, a.trials, a.common.seed)?;
    write_output(a.common.out.as_deref(), &pretty(&report))?;
    Ok(report.implication_holds)
}
