//! Browser bindings: evaluate `_nG_n`, tabulate it over `F_p`, and run one
//! identity check over one field. Every export returns JSON.

use ffhyper::cli::{parse_elem, parse_ratios};
use ffhyper::gseries::{default_precision, GEvaluator, GParams};
use ffhyper::theorems::{verify, Meta, Report, Session, SessionOptions, TheoremId};
use ffhyper::FieldCtx;
use serde_json::json;
use wasm_bindgen::prelude::*;

type Out = Result<String, String>;

fn params(a: &str, b: &str) -> Result<GParams, String> {
    let a = parse_ratios(a).map_err(|e| e.to_string())?;
    let b = if b.trim().is_empty() {
        vec![0.into(); a.len()]
    } else {
        parse_ratios(b).map_err(|e| e.to_string())?
    };
    GParams::new(a, b).map_err(|e| e.to_string())
}

fn precision(ctx: &FieldCtx, n: u32) -> u32 {
    if n == 0 {
        default_precision(ctx)
    } else {
        n
    }
}

pub fn evaluate_g_json(p: u32, r: u32, a: &str, b: &str, t: &str, n: u32) -> Out {
    let ctx = FieldCtx::new(p as u64, r).map_err(|e| e.to_string())?;
    let params = params(a, b)?;
    let t = parse_elem(&ctx, t).map_err(|e| e.to_string())?;
    let n = precision(&ctx, n);
    let g = GEvaluator::new(&ctx, &params, n)
        .and_then(|ev| ev.eval(&ctx, t))
        .map_err(|e| e.to_string())?;
    Ok(json!({
        "function": params.to_string(),
        "field": format!("F_{}", ctx.q()),
        "modulus": ctx.format_modulus(),
        "precision": n,
        "value": g.to_string(),
        "integer": g.to_integer().map(|v| v.to_string()),
        "valuation": g.valuation(),
    })
    .to_string())
}

/// Balanced integer value at every `t ∈ F_p^×`.
pub fn g_series_json(p: u32, a: &str, b: &str, n: u32) -> Out {
    let ctx = FieldCtx::new(p as u64, 1).map_err(|e| e.to_string())?;
    let params = params(a, b)?;
    let n = precision(&ctx, n);
    let ev = GEvaluator::new(&ctx, &params, n).map_err(|e| e.to_string())?;
    let mut points = Vec::new();
    for t in ctx.units() {
        let g = ev.eval(&ctx, t).map_err(|e| e.to_string())?;
        points.push(json!({ "t": ctx.format(t), "value": g.to_integer().map(|v| v as i64) }));
    }
    Ok(
        json!({ "function": params.to_string(), "p": p, "precision": n, "points": points })
            .to_string(),
    )
}

pub fn verify_json(id: &str, p: u32, r: u32) -> Out {
    let id: TheoremId = id.parse().map_err(|e: ffhyper::Error| e.to_string())?;
    let s = Session::new(p as u64, r, SessionOptions::default()).map_err(|e| e.to_string())?;
    let meta = Meta {
        tool: "ffhyper-web".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        primes: p.to_string(),
        degrees: vec![r],
        ids: vec![id],
        precision: s.precision().to_string(),
        gauss_max_q: s.options().gauss_max_q,
        seed: None,
    };
    Ok(Report::new(meta, verify(&s, id, None)).to_json())
}

pub fn theorem_ids_json() -> String {
    serde_json::to_string(&TheoremId::ALL).expect("serializes")
}

#[wasm_bindgen]
pub fn evaluate_g(
    p: u32,
    r: u32,
    a: &str,
    b: &str,
    t: &str,
    precision: u32,
) -> Result<String, JsValue> {
    evaluate_g_json(p, r, a, b, t, precision).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn g_series(p: u32, a: &str, b: &str, precision: u32) -> Result<String, JsValue> {
    g_series_json(p, a, b, precision).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify_identity(id: &str, p: u32, r: u32) -> Result<String, JsValue> {
    verify_json(id, p, r).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn theorem_ids() -> String {
    theorem_ids_json()
}
