//! Text and JSON rendering of command results.

use std::fmt::Write;

use sapphire_core::coefficients::CoefficientModule;
use sapphire_core::homology::{AbelianInvariants, Subquotient};
use sapphire_core::products::{product_table, ModuleData};
use sapphire_core::resolution::Resolution;
use sapphire_core::verify::{run, CheckResult, VerifyOptions, PARAMETER_MATRIX};
use sapphire_core::{GroupParams, Int};
use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

#[derive(Serialize)]
struct Generator {
    /// `0` for infinite order.
    order: Value,
    representative: Vec<Value>,
}

#[derive(Serialize)]
struct Group {
    degree: usize,
    group: AbelianInvariants,
    generators: Vec<Generator>,
}

#[derive(Serialize)]
struct ModuleReport {
    coefficient: String,
    cohomology: Vec<Group>,
    homology: Vec<Group>,
}

/// Integers become JSON numbers when they fit in `i64`, strings otherwise.
fn number(x: &Int) -> Value {
    i64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::from(x.to_string()))
}

fn params_json((r, s, t, u): (i64, i64, i64, i64)) -> Value {
    json!({ "r": r, "s": s, "t": t, "u": u })
}

fn wrap(params: &GroupParams, results: impl Serialize) -> String {
    let doc = json!({ "params": params_json(params.as_tuple()), "results": results });
    serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
}

fn groups(list: &[Subquotient]) -> Vec<Group> {
    list.iter()
        .enumerate()
        .map(|(degree, h)| Group {
            degree,
            group: h.invariants(),
            generators: h
                .generators()
                .iter()
                .zip(h.generator_orders())
                .map(|(g, o)| Generator { order: number(&o), representative: g.iter().map(number).collect() })
                .collect(),
        })
        .collect()
}

fn render_vec(v: &[Value]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn render_order(order: &Value) -> String {
    if order.as_i64() == Some(0) {
        "infinite order".to_string()
    } else {
        format!("order {order}")
    }
}

pub fn compute(params: &GroupParams, modules: &[CoefficientModule], format: Format) -> String {
    let res = Resolution::new(params.clone());
    let reports: Vec<ModuleReport> = modules
        .iter()
        .map(|m| {
            let data = ModuleData::new(&res, m.clone());
            ModuleReport {
                coefficient: m.name().to_string(),
                cohomology: groups(&data.cohomology),
                homology: groups(&data.homology),
            }
        })
        .collect();
    if format == Format::Json {
        return wrap(params, reports);
    }
    let mut out = String::new();
    for r in &reports {
        writeln!(out, "G = K{params}, coefficients {}", r.coefficient).unwrap();
        for (label, list) in [("H^", &r.cohomology), ("H_", &r.homology)] {
            for g in list {
                writeln!(out, "  {label}{} = {}", g.degree, g.group).unwrap();
                for gen in &g.generators {
                    writeln!(out, "      {}  ({})", render_vec(&gen.representative), render_order(&gen.order)).unwrap();
                }
            }
        }
    }
    out
}

pub fn products(params: &GroupParams, left: &CoefficientModule, right: &CoefficientModule, format: Format) -> String {
    let res = Resolution::new(params.clone());
    let table = product_table(&res, left, right);
    if format == Format::Json {
        return wrap(params, &table);
    }
    let mut out = String::new();
    writeln!(out, "G = K{params}, {} x {} -> {}", table.left_module, table.right_module, table.target_module).unwrap();
    writeln!(out, "generators:").unwrap();
    for g in &table.generators {
        let order = if g.order == 0 { "infinite order".to_string() } else { format!("order {}", g.order) };
        writeln!(out, "  {:<9} {:?}  ({order})", g.id, g.cocycle).unwrap();
    }
    writeln!(out, "products:").unwrap();
    if table.entries.is_empty() {
        writeln!(out, "  (none)").unwrap();
    }
    for e in &table.entries {
        writeln!(out, "  ({},{})  {} * {} = {:?}", e.bidegree[0], e.bidegree[1], e.left, e.right, e.result).unwrap();
    }
    out
}

/// The report and whether every check passed.
pub fn verify(opts: &VerifyOptions, format: Format) -> (String, bool) {
    let results: Vec<CheckResult> = run(opts);
    let passed = results.iter().filter(|r| r.passed).count();
    let ok = passed == results.len();
    if format == Format::Json {
        let matrix: Vec<Value> = PARAMETER_MATRIX.iter().copied().map(params_json).collect();
        let summary = json!({ "seed": opts.seed, "samples": opts.samples, "passed": passed, "total": results.len(), "checks": results });
        let doc = json!({ "params": matrix, "results": summary });
        return (serde_json::to_string_pretty(&doc).expect("report serializes") + "\n", ok);
    }
    let mut out = String::new();
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        if r.detail.is_empty() {
            writeln!(out, "{status} {}", r.name).unwrap();
        } else {
            writeln!(out, "{status} {}  [{}]", r.name, r.detail).unwrap();
        }
    }
    writeln!(out, "{passed}/{} checks passed", results.len()).unwrap();
    (out, ok)
}
