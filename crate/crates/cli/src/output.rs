use std::collections::BTreeMap;

use rasp_core::properties::{PropertyReport, Witness};
use rasp_core::reducts::HeadChoice;
use rasp_core::semantics::WorldView;
use rasp_core::wellsupport::WsWitness;
use rasp_core::{EpistemicModel, Interpretation};
use serde_json::{json, Value};

pub fn atoms(i: &Interpretation) -> Vec<String> {
    let mut v: Vec<String> = i.iter().map(|a| a.to_string()).collect();
    v.sort();
    v
}

pub fn sets<'a>(items: impl IntoIterator<Item = &'a Interpretation>) -> Vec<Vec<String>> {
    let mut v: Vec<Vec<String>> = items.into_iter().map(atoms).collect();
    v.sort();
    v
}

pub fn model(m: &EpistemicModel) -> Vec<Vec<String>> {
    sets(m.iter())
}

pub fn world_view(w: &WorldView) -> Value {
    let mut phi: Vec<String> = w.phi.iter().map(|f| f.to_string()).collect();
    phi.sort();
    json!({ "phi": phi, "models": model(&w.model) })
}

pub fn witness(w: &WsWitness) -> Value {
    let mut order: Vec<[String; 2]> = w
        .order
        .pairs
        .iter()
        .map(|(q, p)| [q.to_string(), p.to_string()])
        .collect();
    order.sort();
    let mut head_order: Vec<[String; 2]> = w
        .head_order
        .pairs
        .iter()
        .map(|(f, h)| [f.to_string(), h.to_string()])
        .collect();
    head_order.sort();
    let mut out = json!({ "order": order, "head_order": head_order });
    if let Some(sel) = &w.selection {
        let sel: BTreeMap<String, Value> = sel
            .iter()
            .map(|(id, c)| {
                let v = match c {
                    HeadChoice::Index(k) => json!(k),
                    HeadChoice::Bot => Value::Null,
                };
                (id.to_string(), v)
            })
            .collect();
        out["selection"] = json!(sel);
    }
    out
}

pub fn witness_text(w: &WsWitness) -> String {
    let mut order: Vec<String> = w
        .order
        .pairs
        .iter()
        .map(|(q, p)| format!("{q} < {p}"))
        .collect();
    order.sort();
    let mut s = format!("  order: {}", order.join(", "));
    if let Some(sel) = &w.selection {
        let parts: Vec<String> = sel
            .iter()
            .map(|(id, c)| match c {
                HeadChoice::Index(k) => format!("{id}:{k}"),
                HeadChoice::Bot => format!("{id}:bot"),
            })
            .collect();
        s.push_str(&format!("\n  selection: {}", parts.join(" ")));
    }
    s
}

fn property_witness(w: &Witness) -> Value {
    match w {
        Witness::NotMinimal {
            answer_set,
            smaller,
        } => json!({ "answer_set": atoms(answer_set), "smaller_model": atoms(smaller) }),
        Witness::Unfounded { answer_set, x } => {
            let mut x: Vec<String> = x.iter().map(|a| a.to_string()).collect();
            x.sort();
            json!({ "answer_set": atoms(answer_set), "unfounded": x })
        }
        Witness::UnfoundedView { view, pairs } => {
            let pairs: Vec<Value> = pairs
                .iter()
                .map(|pr| {
                    let mut x: Vec<String> = pr.x.iter().map(|a| a.to_string()).collect();
                    x.sort();
                    json!({ "x": x, "i": atoms(&pr.i) })
                })
                .collect();
            json!({ "world_view": model(view), "pairs": pairs })
        }
        Witness::AnswerSet(i) => json!({ "answer_set": atoms(i) }),
        Witness::WorldView(m) => json!({ "world_view": model(m) }),
    }
}

pub fn report(r: &PropertyReport) -> Value {
    json!({
        "property": r.property.to_string(),
        "holds": r.holds,
        "witness": r.witness.as_ref().map(property_witness),
    })
}

pub fn report_text(r: &PropertyReport) -> String {
    let verdict = if r.holds { "holds" } else { "violated" };
    let mut s = format!("{}: {verdict}", r.property);
    if let Some(w) = &r.witness {
        s.push_str(&format!("\n  witness: {}", property_witness(w)));
    }
    s
}
