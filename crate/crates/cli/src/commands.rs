use std::str::FromStr;

use magicpoly::arith::fmt_rational;
use magicpoly::pipeline::vertex_table;
use magicpoly::{
    build_constraints, enumerate_vertices, reconstruct, Error, Result, SampleCache, Sampler,
    SquareClass, VertexOptions,
};
use serde_json::json;

use crate::RunConfig;

fn parse_class(s: &str) -> Result<SquareClass> {
    SquareClass::from_str(s)
}

fn sampler(run: &RunConfig) -> Result<Sampler> {
    let cache = if run.no_cache {
        SampleCache::in_memory()
    } else {
        SampleCache::open(&run.cache)?
    };
    Ok(Sampler::new(cache).with_budget(run.budget))
}

fn options(run: &RunConfig) -> VertexOptions {
    VertexOptions {
        allow_large: run.allow_large,
    }
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json values always serialize")
    );
}

pub fn count(run: &RunConfig, class: &str, t: u64, strict: bool) -> Result<bool> {
    let class = parse_class(class)?;
    let n = sampler(run)?.count(&class, t, strict)?;
    if run.json {
        print_json(&json!({
            "class": class.kind().name(),
            "n": class.n(),
            "d": class.d(),
            "t": t,
            "strict": strict,
            "count": n.to_string(),
        }));
    } else {
        println!("{n}");
    }
    Ok(true)
}

pub fn vertices(run: &RunConfig, class: &str) -> Result<bool> {
    let class = parse_class(class)?;
    let vs = enumerate_vertices(&build_constraints(&class), options(run))?;
    if run.json {
        print_json(&vs.to_json());
        return Ok(true);
    }
    println!("{} vertices, lcm {}", vs.len(), vs.period_bound);
    for v in &vs.vertices {
        let parts: Vec<String> = v.iter().map(fmt_rational).collect();
        println!("({})", parts.join(", "));
    }
    Ok(true)
}

pub fn formula(run: &RunConfig, class: &str) -> Result<bool> {
    let class = parse_class(class)?;
    let r = reconstruct(&class, &sampler(run)?, options(run))?;
    if run.json {
        print_json(&r.quasi.to_json(&class));
    } else if run.csv {
        print!("{}", r.quasi.to_csv());
    } else {
        println!("{}(t) = {}", class.label(), r.quasi.to_human());
        println!("degree {}, period {}", r.quasi.degree(), r.quasi.period());
    }
    Ok(true)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn verify(run: &RunConfig, class: &str, range: Option<u64>) -> Result<bool> {
    let class = parse_class(class)?;
    let sampler = sampler(run)?;
    // a degree mismatch surfaces as an error from reconstruct
    let r = match reconstruct(&class, &sampler, options(run)) {
        Err(Error::DegreeMismatch {
            computed, expected, ..
        }) => {
            println!("FAIL degree {computed}, expected {expected}");
            return Ok(false);
        }
        other => other?,
    };
    let t_max = range.unwrap_or_else(|| r.default_range());
    let report = r.verify(t_max, r.default_interior_range(), &sampler)?;
    let n = class.n();
    let sign = if report.sign > 0 { "+" } else { "-" };
    let degree = r.quasi.degree();

    if run.json {
        print_json(&json!({
            "class": class.kind().name(),
            "n": n,
            "d": class.d(),
            "degree": degree,
            "expected_degree": r.profile.expected_degree,
            "symmetry": report.symmetry_pass(),
            "forced_zeros": report.zeros_pass(),
            "interior": report.interior_pass(),
            "pass": report.pass,
        }));
        return Ok(report.pass);
    }

    println!(
        "{} degree {degree}, expected {}",
        verdict(true),
        r.profile.expected_degree
    );
    let bad: Vec<String> = report
        .symmetry
        .iter()
        .filter(|c| !c.1)
        .map(|c| c.0.to_string())
        .collect();
    println!(
        "{} Q(-{n}-t) = {sign}Q(t) for t = 0..={t_max}{}",
        verdict(report.symmetry_pass()),
        failures(&bad)
    );
    if report.zero_checks.is_empty() {
        println!("PASS no forced zeros");
    } else {
        let at: Vec<String> = report.zero_checks.iter().map(|c| c.0.to_string()).collect();
        let bad: Vec<String> = report
            .zero_checks
            .iter()
            .filter(|c| !c.1)
            .map(|c| c.0.to_string())
            .collect();
        println!(
            "{} Q = 0 at {}{}",
            verdict(report.zeros_pass()),
            at.join(", "),
            failures(&bad)
        );
    }
    let last = report.interior_checks.last().map_or(0, |c| c.0);
    let bad: Vec<String> = report
        .interior_checks
        .iter()
        .filter(|c| !c.1)
        .map(|c| c.0.to_string())
        .collect();
    println!(
        "{} Q(-t) = (-1)^{degree} interior(t) for t = 1..={last}{}",
        verdict(report.interior_pass()),
        failures(&bad)
    );
    println!("{}", verdict(report.pass));
    Ok(report.pass)
}

fn failures(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!(" (fails at t = {})", bad.join(", "))
    }
}

pub fn table(run: &RunConfig) -> Result<bool> {
    let rows = vertex_table()?;
    if run.json {
        let rows: Vec<_> = rows
            .iter()
            .map(|r| json!({"polytope": r.label, "vertices": r.vertices, "lcm": r.lcm}))
            .collect();
        print_json(&serde_json::Value::Array(rows));
    } else if run.csv {
        println!("polytope,vertices,lcm");
        for r in &rows {
            println!("{},{},{}", r.label, r.vertices, r.lcm);
        }
    } else {
        println!("{:<9}{:>9}{:>6}", "polytope", "vertices", "lcm");
        for r in &rows {
            println!("{:<9}{:>9}{:>6}", r.label, r.vertices, r.lcm);
        }
    }
    Ok(true)
}
