use std::path::Path;
use std::process::ExitCode;

use serde_json::{json, Value};
use symquandle::config::{Config, Instance};
use symquandle::gaussian::SampleConfig;
use symquandle::harness::{self, HarnessOptions, Verdict, CHECK_NAMES};
use symquandle::symplectic::nontriviality_witness;
use symquandle::{enumerate_good_involutions, with_threads, Error, Result};

use crate::{CheckName, Common, Output};

fn load(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    Config::parse(&text)?.load()
}

fn emit(value: &Value, output: Output) {
    match output {
        Output::Json => println!("{}", serde_json::to_string_pretty(value).expect("json")),
        Output::Text => print!("{}", render_fields(value)),
    }
}

/// `key: value` lines for a flat object; nested values stay as compact JSON.
fn render_fields(value: &Value) -> String {
    let Some(obj) = value.as_object() else {
        return format!("{value}\n");
    };
    let width = obj.keys().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in obj {
        match v {
            Value::Array(items) if items.iter().all(Value::is_string) && k == "involutions" => {
                out.push_str(&format!("{k}\n"));
                for item in items {
                    out.push_str(&format!("  {}\n", item.as_str().unwrap_or_default()));
                }
            }
            Value::String(s) => out.push_str(&format!("{k:<width$}  {s}\n")),
            other => out.push_str(&format!("{k:<width$}  {other}\n")),
        }
    }
    out
}

pub fn info(path: &Path, common: &Common) -> Result<ExitCode> {
    let instance = load(path)?;
    let report = with_threads(common.threads.unwrap_or(1), || info_json(&instance));
    emit(&report, common.output);
    Ok(ExitCode::SUCCESS)
}

fn info_json(instance: &Instance) -> Value {
    let q = instance.quandle();
    let mut out = json!({
        "quandle_size": q.size(),
        "kei": q.is_kei(),
        "trivial": q.is_trivial(),
    });
    if let Instance::Symplectic(sq) = instance {
        let form = sq.form();
        let ring = form.ring();
        let module = form.module();
        let pair = form
            .find_hyperbolic_pair()
            .map(|(e, f)| json!([module.format(&e), module.format(&f)]));
        let witness = nontriviality_witness(form).map(|(x, y)| json!([module.format(&x), module.format(&y)]));
        let extra = json!({
            "ring": ring.descriptor(),
            "ring_name": ring.descriptor().name(),
            "ring_order": ring.order(),
            "characteristic": ring.characteristic(),
            "integral_domain": ring.is_integral_domain(),
            "rank": form.rank(),
            "determinant": ring.format(form.determinant()),
            "nondegenerate": form.is_nondegenerate(),
            "unimodular": form.is_unimodular(),
            "hyperbolic_pair": pair,
            "nontriviality_witness": witness,
        });
        if let (Value::Object(o), Value::Object(e)) = (&mut out, extra) {
            o.extend(e);
        }
    }
    out
}

pub fn enumerate(path: &Path, common: &Common) -> Result<ExitCode> {
    let instance = load(path)?;
    let q = instance.quandle();
    let found = with_threads(common.threads.unwrap_or(1), || enumerate_good_involutions(q, common.limit));
    let list: Vec<String> = found.involutions.iter().map(|p| p.cycle_notation(q.labels())).collect();
    let report = json!({
        "quandle_size": q.size(),
        "count": list.len(),
        "complete": found.complete,
        "involutions": list,
    });
    emit(&report, common.output);
    Ok(ExitCode::SUCCESS)
}

pub fn verify(name: CheckName, sampling: SampleConfig, timing: bool, common: &Common) -> Result<ExitCode> {
    let opts = HarnessOptions { gaussian: sampling, limit: common.limit, timing, ..HarnessOptions::default() };
    let names: Vec<&str> = match name {
        CheckName::All => CHECK_NAMES.to_vec(),
        CheckName::Theorem1 => vec!["theorem1"],
        CheckName::Theorem2 => vec!["theorem2"],
        CheckName::Theorem3 => vec!["theorem3"],
        CheckName::ExampleZ9 => vec!["example-z9"],
        CheckName::Gaussian => vec!["gaussian"],
        CheckName::DegenerateRemark => vec!["degenerate-remark"],
    };
    let reports = with_threads(common.threads.unwrap_or(1), || {
        names
            .iter()
            .map(|n| harness::run_check(n, &opts).expect("known check"))
            .collect::<Result<Vec<_>>>()
    })?;
    match common.output {
        Output::Json => {
            let value = Value::Array(reports.iter().map(|r| r.to_json()).collect());
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
        Output::Text => print!("{}", harness::render_text(&reports)),
    }
    if reports.iter().any(|r| r.verdict == Verdict::ContradictsPaper) {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
