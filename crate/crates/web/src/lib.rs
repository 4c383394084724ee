//! Browser bindings for three operations: Schur products, Yamanouchi domino
//! tableaux drawn as SVG, and the `c_1` ranges of the Horn cones of every
//! splitting of a four-term spectrum.
//!
//! The plain functions return JSON strings so they can be tested natively;
//! the `#[wasm_bindgen]` wrappers only convert errors.

use std::fmt::Write;

use lrhorn::domino::{enumerate_ydt, reading_word, DominoTableau, Orientation};
use lrhorn::horn::{c1_interval, splittings};
use lrhorn::ineq::parse_rationals;
use lrhorn::lr;
use lrhorn::partitions::{interlace_split, Partition};
use num_rational::BigRational;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const CELL: usize = 28;
// enumeration beyond this many cells gets slow enough to freeze the page
const MAX_CELLS: usize = 40;

fn parse_partition(name: &str, s: &str) -> Result<Partition, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    s.parse().map_err(|e| format!("{name}: {e}"))
}

/// `{"terms":[{"nu":[..],"c":k}, ..]}` in decreasing order of `nu`.
pub fn schur_product_json(lambda: &str, mu: &str) -> Result<String, String> {
    let l = parse_partition("lambda", lambda)?;
    let m = parse_partition("mu", mu)?;
    if l.weight() + m.weight() > MAX_CELLS {
        return Err(format!("|lambda| + |mu| is limited to {MAX_CELLS} here"));
    }
    let e = lr::schur_product(&l, &m);
    let terms: Vec<Value> = e.terms_desc().map(|(nu, c)| json!({ "nu": nu, "c": c })).collect();
    Ok(json!({ "terms": terms }).to_string())
}

fn palette(label: usize) -> &'static str {
    const COLORS: [&str; 8] = ["#fde2a7", "#b8e0d2", "#d6c1f0", "#f7b2a7", "#a7c7f7", "#e3f0a7", "#f0c1dc", "#c9c9c9"];
    COLORS[(label - 1) % COLORS.len()]
}

/// One tableau as an SVG picture: a rectangle per domino carrying its label.
pub fn tableau_svg(t: &DominoTableau) -> String {
    let rows = t.shape.len();
    let cols = t.shape.parts().first().copied().unwrap_or(0);
    let (w, h) = (cols * CELL + 2, rows * CELL + 2);
    let mut svg = format!(r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    for d in &t.dominoes {
        let (dw, dh) = match d.orientation {
            Orientation::Horizontal => (2 * CELL, CELL),
            Orientation::Vertical => (CELL, 2 * CELL),
        };
        let (x, y) = ((d.col - 1) * CELL + 1, (d.row - 1) * CELL + 1);
        let _ = write!(
            svg,
            r##"<rect x="{x}" y="{y}" width="{dw}" height="{dh}" fill="{}" stroke="#333"/><text x="{}" y="{}" text-anchor="middle" dominant-baseline="central" font-family="sans-serif" font-size="14">{}</text>"##,
            palette(d.label),
            x + dw / 2,
            y + dh / 2,
            d.label
        );
    }
    svg.push_str("</svg>");
    svg
}

/// `{"count":n,"tableaux":[{"word":"12112","weight":[3,2],"svg":"<svg..>"}, ..]}`
/// for the Yamanouchi domino tableaux of `shape`, optionally of one weight.
pub fn domino_tableaux_json(shape: &str, weight: &str) -> Result<String, String> {
    let shape = parse_partition("shape", shape)?;
    if shape.weight() > MAX_CELLS {
        return Err(format!("shapes are limited to {MAX_CELLS} cells here"));
    }
    let weight = if weight.trim().is_empty() { None } else { Some(parse_partition("weight", weight)?) };
    let list = enumerate_ydt(&shape, weight.as_ref());
    let tableaux: Vec<Value> = list
        .iter()
        .map(|t| {
            let word: Vec<String> = reading_word(t).iter().map(ToString::to_string).collect();
            json!({ "word": word.join(" "), "weight": t.content(), "svg": tableau_svg(t) })
        })
        .collect();
    Ok(json!({ "count": list.len(), "tableaux": tableaux }).to_string())
}

/// For a weakly decreasing `gamma` of length 4, every splitting into two
/// 2-term halves `(a, b)` with the exact range of `c_1` over `H(a; b)`:
/// `[{"a":[..],"b":[..],"lo":"5","hi":"7","interlaced":true}, ..]`.
pub fn cone_intervals_json(gamma: &str) -> Result<String, String> {
    let g = parse_rationals(gamma).ok_or("gamma: expected comma-separated numbers")?;
    if g.len() != 4 {
        return Err("gamma needs exactly 4 entries".into());
    }
    let top = interlace_split(&g).map_err(|e| e.to_string())?;
    let show = |v: &[BigRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let mut out = Vec::new();
    for (a, b) in splittings(&g).map_err(|e| e.to_string())? {
        let iv = c1_interval(&a, &b).map_err(|e| e.to_string())?;
        let end = |x: Option<BigRational>| x.map(|v| v.to_string());
        let (lo, hi) = iv.map_or((None, None), |iv| (end(iv.lo), end(iv.hi)));
        let interlaced = (&a, &b) == (&top.0, &top.1);
        out.push(json!({ "a": show(&a), "b": show(&b), "lo": lo, "hi": hi, "interlaced": interlaced }));
    }
    Ok(Value::Array(out).to_string())
}

#[wasm_bindgen]
pub fn schur_product(lambda: &str, mu: &str) -> Result<String, JsValue> {
    schur_product_json(lambda, mu).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn domino_tableaux(shape: &str, weight: &str) -> Result<String, JsValue> {
    domino_tableaux_json(shape, weight).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn cone_intervals(gamma: &str) -> Result<String, JsValue> {
    cone_intervals_json(gamma).map_err(|e| JsValue::from_str(&e))
}
