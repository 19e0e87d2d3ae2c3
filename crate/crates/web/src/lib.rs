//! Browser bindings for the static demo page in `www/`.
//!
//! Each export takes a complex document as JSON text and returns the report
//! the command-line tool would print.

use toricface::complex::{veronese, MonoidalComplex};
use toricface::document::ComplexDocument;
use toricface::ideal::{presentation_ideal, render_list, TermOrder};
use toricface::koszul::{self, BettiOptions, Verdict};
use wasm_bindgen::prelude::*;

const EXAMPLES: [(&str, &str); 5] = [
    ("nonkoszul", include_str!("../../core/data/nonkoszul.json")),
    ("quadrants", include_str!("../../core/data/quadrants.json")),
    ("midpoints", include_str!("../../core/data/midpoints.json")),
    ("two_rays", include_str!("../../core/data/two_rays.json")),
    ("simplex", include_str!("../../core/data/simplex.json")),
];

/// Largest homological degree the page lets a visitor request.
const MAX_I: usize = 5;

fn parse(doc: &str) -> Result<MonoidalComplex, String> {
    let d = ComplexDocument::parse(doc).map_err(|e| e.to_string())?;
    d.build().map_err(|e| e.to_string())
}

pub fn example_text(name: &str) -> Option<&'static str> {
    EXAMPLES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn betti_report(doc: &str, max_i: usize) -> Result<String, String> {
    if max_i == 0 || max_i > MAX_I {
        return Err(format!("homological degree must be between 1 and {MAX_I}"));
    }
    let cx = parse(doc)?;
    let opts = BettiOptions { interval_cap: Some(400), ..BettiOptions::new(max_i) };
    let t = koszul::betti_table(&cx, opts).map_err(|e| e.to_string())?;
    let mut out = t.render_m2();
    out.push('\n');
    out.push_str(&koszul::koszul_verdict(&t).render_text());
    Ok(out)
}

pub fn ideal_report(doc: &str, order: &str) -> Result<String, String> {
    let cx = parse(doc)?;
    let order = TermOrder::parse(order, cx.n()).map_err(|e| e.to_string())?;
    let pres = presentation_ideal(&cx);
    let mut out = format!("monomial part: {}\n", render_list(&pres.monomial_part));
    out.push_str(&format!("minimal generators: {}\n", render_list(&pres.minimal_generators())));
    out.push_str(&koszul::g_quadratic_of(&pres, &order).render_text());
    Ok(out)
}

pub fn scan_report(doc: &str) -> Result<String, String> {
    let cx = parse(doc)?;
    let opts = BettiOptions { interval_cap: Some(400), ..BettiOptions::new(3) };
    let r = koszul::scan(&cx, opts).map_err(|e| e.to_string())?;
    let mut out = r.render_text();
    let v: Verdict = koszul::strongly_koszul(&cx).map_err(|e| e.to_string())?;
    out.push_str(&v.render_text());
    Ok(out)
}

pub fn veronese_document(doc: &str, m: usize) -> Result<String, String> {
    let cx = parse(doc)?;
    let v = veronese(&cx, m).map_err(|e| e.to_string())?;
    Ok(ComplexDocument::from_complex(&v, Some(format!("veronese {m}"))).render())
}

#[wasm_bindgen]
pub fn example(name: &str) -> Result<String, JsValue> {
    example_text(name).map(str::to_string).ok_or_else(|| JsValue::from_str("unknown example"))
}

#[wasm_bindgen]
pub fn betti(doc: &str, max_i: usize) -> Result<String, JsValue> {
    betti_report(doc, max_i).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ideal(doc: &str, order: &str) -> Result<String, JsValue> {
    ideal_report(doc, order).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn scan(doc: &str) -> Result<String, JsValue> {
    scan_report(doc).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn construct_veronese(doc: &str, m: usize) -> Result<String, JsValue> {
    veronese_document(doc, m).map_err(|e| JsValue::from_str(&e))
}
