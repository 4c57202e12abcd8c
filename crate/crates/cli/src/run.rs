use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use num_bigint::BigUint;
use partmult::analysis::bounds_table_limit;
use partmult::engine::EngineError;
use partmult::{
    be_condition, bounds_from_table, enumerate_partitions, growth_exponents, iterated_witness_search,
    monotonicity_scan, schur_ratio, superpoly_witnesses, verify_power_uniqueness, AnalysisError,
    BoundsReport, ConstructionError, CountTable, Engine, SetDescriptor, SetKind, StaircaseSequence,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Command, EngineChoice, Format, RunConfig};

/// Tables above this length are refused on the brute-force path.
const ORACLE_MAX_LIMIT: usize = 120;

/// Rows tabulated by construct-f when --n-max is absent.
const CONSTRUCT_DEFAULT_ROWS: u64 = 1_000_000;

pub struct Outcome {
    pub body: String,
    /// A verification check failed; the report is still written.
    pub failed: bool,
}

/// Operational errors that came from the budget rather than bad input.
pub fn is_budget_error(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        matches!(cause.downcast_ref::<EngineError>(), Some(EngineError::BudgetExceeded { .. }))
            || matches!(
                cause.downcast_ref::<AnalysisError>(),
                Some(AnalysisError::Engine(EngineError::BudgetExceeded { .. }))
            )
            || matches!(
                cause.downcast_ref::<ConstructionError>(),
                Some(ConstructionError::Engine(EngineError::BudgetExceeded { .. }))
            )
    })
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    let engine = Engine::new().with_work_ceiling(config.budget);
    let (result, csv, failed) = match config.command {
        Command::Count => count(config, &engine)?,
        Command::Oracle => oracle(config)?,
        Command::VerifyAm => verify_am(config, &engine)?,
        Command::Growth => growth(config, &engine)?,
        Command::Bounds => bounds(config, &engine)?,
        Command::Iterate => iterate(config, &engine)?,
        Command::Schur => schur(config, &engine)?,
        Command::ConstructF => construct_f(config)?,
        Command::BeCheck => be_check(config)?,
        Command::Monotone => monotone(config, &engine)?,
    };
    let body = match config.format {
        Format::Csv => csv,
        Format::Json => {
            let mut report = serde_json::Map::new();
            report.insert("config".into(), serde_json::to_value(config)?);
            if !config.deterministic {
                let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                report.insert("generated_at".into(), json!(secs));
            }
            report.insert("result".into(), result);
            let mut text = serde_json::to_string_pretty(&Value::Object(report))?;
            text.push('\n');
            text
        }
    };
    Ok(Outcome { body, failed })
}

type Rendered = (Value, String, bool);

fn sets(config: &RunConfig) -> (&SetDescriptor, &SetDescriptor) {
    (config.set_a.as_ref().expect("validated"), config.set_m.as_ref().expect("validated"))
}

fn build_table(config: &RunConfig, engine: &Engine, limit: usize) -> Result<CountTable> {
    let (parts, mults) = sets(config);
    let table = match config.engine {
        EngineChoice::Auto => engine.count(parts, mults, limit)?,
        EngineChoice::Generic => engine.count_generic(parts, mults, limit)?,
        EngineChoice::Ap => engine.count_ap_optimized(parts, mults, limit)?,
        EngineChoice::Oracle => {
            if limit > ORACLE_MAX_LIMIT {
                bail!("--engine oracle is limited to n <= {ORACLE_MAX_LIMIT}, asked for {limit}");
            }
            engine.count_oracle(parts, mults, limit)
        }
    };
    Ok(table)
}

fn count(config: &RunConfig, engine: &Engine) -> Result<Rendered> {
    let table = build_table(config, engine, config.n_max.expect("validated"))?;
    Ok((serde_json::to_value(&table)?, table.to_csv(), false))
}

fn oracle(config: &RunConfig) -> Result<Rendered> {
    let (parts, mults) = sets(config);
    let n = config.n.expect("validated");
    let cap = config.cap.expect("validated");
    let listing = enumerate_partitions(parts, mults, n, cap);
    let mut csv = String::from("index,partition\n");
    for (i, w) in listing.witnesses.iter().enumerate() {
        csv.push_str(&format!("{i},\"{w}\"\n"));
    }
    let result = json!({
        "n": n,
        "count": listing.witnesses.len(),
        "truncated": listing.truncated,
        "partitions": listing.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    });
    Ok((result, csv, false))
}

fn verify_am(config: &RunConfig, engine: &Engine) -> Result<Rendered> {
    let base = config.base.expect("validated");
    let n_max = config.n_max.expect("validated");
    let (report, _) = verify_power_uniqueness(engine, base, n_max)?;
    let mut csv = String::from("power,p,unique\n");
    for (power, p) in &report.powers {
        csv.push_str(&format!("{power},{p},{}\n", p == "1"));
    }
    let passed = report.passed();
    let mut result = serde_json::to_value(&report)?;
    result["passed"] = json!(passed);
    Ok((result, csv, !passed))
}

fn growth(config: &RunConfig, engine: &Engine) -> Result<Rendered> {
    let table = build_table(config, engine, config.n_max.expect("validated"))?;
    let report = growth_exponents(&table);
    let mut result = serde_json::to_value(&report)?;
    if let Some(k) = config.k {
        result["superpoly_k"] = json!(k);
        result["superpoly_witnesses"] = json!(superpoly_witnesses(&table, k));
    }
    Ok((result, report.to_csv(), false))
}

fn bounds(config: &RunConfig, engine: &Engine) -> Result<Rendered> {
    let (parts, _) = sets(config);
    let limits = config
        .x_list
        .iter()
        .map(|&x| Ok(bounds_table_limit(parts, x)?.1))
        .collect::<Result<Vec<_>, AnalysisError>>()?;

    let reports: Vec<BoundsReport> = if config.jobs > 1 && config.x_list.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .context("could not start worker threads")?;
        pool.install(|| {
            config
                .x_list
                .par_iter()
                .zip(&limits)
                .map(|(&x, &limit)| {
                    let table = build_table(config, engine, limit)?;
                    Ok(bounds_from_table(&table, x)?)
                })
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        let limit = limits.iter().copied().max().expect("x_list is nonempty");
        let table = build_table(config, engine, limit)?;
        config.x_list.iter().map(|&x| bounds_from_table(&table, x)).collect::<Result<Vec<_>, _>>()?
    };

    let failed = reports.iter().any(|r| !(r.upper_holds() && r.lower_holds() && r.averaging_holds()));
    let mut csv = BoundsReport::csv_header().to_string();
    let mut rows = Vec::new();
    for r in &reports {
        csv.push_str(&r.csv_row());
        let mut row = serde_json::to_value(r)?;
        row["upper_holds"] = json!(r.upper_holds());
        row["lower_holds"] = json!(r.lower_holds());
        row["averaging_holds"] = json!(r.averaging_holds());
        rows.push(row);
    }
    Ok((json!({ "reports": rows }), csv, failed))
}

fn iterate(config: &RunConfig, engine: &Engine) -> Result<Rendered> {
    let (parts, mults) = sets(config);
    let k = config.k.expect("validated");
    let rounds = config.rounds.expect("validated");
    let search = iterated_witness_search(engine, parts, mults, k, rounds);
    eprintln!("{}", search.summary());
    let mut csv = String::from("round,x,n,p,bound\n");
    for (i, r) in search.rounds.iter().enumerate() {
        csv.push_str(&format!("{},{},{},{},{}\n", i + 1, r.x, r.n, r.p, r.bound));
    }
    let mut result = serde_json::to_value(&search)?;
    result["summary"] = json!(search.summary());
    Ok((result, csv, false))
}

fn schur(config: &RunConfig, engine: &Engine) -> Result<Rendered> {
    let (parts, _) = sets(config);
    let SetKind::Finite { elements } = parts.kind() else {
        bail!("schur needs a finite part set, got {parts}");
    };
    let elements = elements.clone();
    let table = build_table(config, engine, config.n_max.expect("validated"))?;
    let points = schur_ratio(&table, &elements)?;
    let mut csv = String::from("n,ratio\n");
    let mut rows = Vec::new();
    for point in &points {
        let decimal = point.to_decimal(12);
        csv.push_str(&format!("{},{decimal}\n", point.n));
        rows.push(json!({ "n": point.n, "ratio": point.ratio.to_string(), "decimal": decimal }));
    }
    Ok((json!({ "parts": elements, "points": rows }), csv, false))
}

fn construct_f(config: &RunConfig) -> Result<Rendered> {
    let seq = StaircaseSequence::minimal(config.terms.expect("validated"))?;
    let domain_end = seq.last() - 1u32;
    let n_max = match config.n_max {
        Some(n) => BigUint::from(n),
        None => domain_end.clone().min(BigUint::from(CONSTRUCT_DEFAULT_ROWS)),
    };
    if n_max > domain_end {
        bail!("--n-max {n_max} exceeds the domain end {domain_end}");
    }
    let n_max: u64 = n_max.try_into().context("--n-max too large")?;

    let mut csv = String::from("n,f\n");
    let mut increasing = true;
    let mut prev: Option<BigUint> = None;
    for n in 1..=n_max {
        let f = seq.eval_u64(n)?;
        if prev.as_ref().is_some_and(|p| *p >= f) {
            increasing = false;
        }
        csv.push_str(&format!("{n},{f}\n"));
        prev = Some(f);
    }
    let mut anchors_ok = true;
    let mut anchors = Vec::new();
    for (i, t) in seq.terms().iter().enumerate() {
        if *t > BigUint::from(n_max) {
            break;
        }
        let f = seq.eval(t)?;
        let expected = t.pow(i as u32 + 1);
        anchors_ok &= f == expected;
        anchors.push(json!({ "n": t.to_string(), "f": f.to_string() }));
    }
    let passed = increasing && anchors_ok;
    let result = json!({
        "terms": seq.terms().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "n_max": n_max,
        "strictly_increasing": increasing,
        "anchors": anchors,
        "passed": passed,
    });
    Ok((result, csv, !passed))
}

fn be_check(config: &RunConfig) -> Result<Rendered> {
    let parts = config.set_a.as_ref().expect("validated");
    let verdict = be_condition(parts, config.bound.expect("validated"))?;
    let mut csv = String::from("excluded,gcd,coprime\n");
    for (a, g) in &verdict.certificate {
        csv.push_str(&format!("{a},{g},{}\n", *g == 1));
    }
    Ok((serde_json::to_value(&verdict)?, csv, false))
}

fn monotone(config: &RunConfig, engine: &Engine) -> Result<Rendered> {
    let table = build_table(config, engine, config.n_max.expect("validated"))?;
    let from = config.from.expect("validated");
    let failure = monotonicity_scan(&table, from, config.strict);
    let csv = format!(
        "from,n_max,strict,first_failure\n{from},{},{},{}\n",
        table.limit,
        config.strict,
        failure.map(|n| n.to_string()).unwrap_or_default()
    );
    let result = json!({
        "from": from,
        "n_max": table.limit,
        "strict": config.strict,
        "first_failure": failure,
    });
    Ok((result, csv, false))
}
