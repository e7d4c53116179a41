//! Every single sign flip in a builtin data file must make that scenario fail,
//! either at load with the offending item named or at run with a named diff.

use pcx_core::polyalg::{parse_poly, Chart, Polynomial};
use pcx_core::scenarios::{builtin_names, builtin_source, parse_scenario, run_scenario};
use serde_json::Value;

/// Labels and metadata carry no signs. Dynamics is covered by its own suite
/// and dominates the runtime, so it is dropped from the swept files.
fn skipped(path: &[String]) -> bool {
    let p: Vec<&str> = path.iter().map(String::as_str).collect();
    matches!(
        p.as_slice(),
        ["schema" | "name" | "description" | "checks" | "params", ..]
    ) || p.last() == Some(&"name")
}

fn without_dynamics(mut doc: Value) -> Value {
    doc["checks"].as_array_mut().unwrap().retain(|c| c != "dynamics");
    doc["expected"].as_object_mut().unwrap().remove("dynamics");
    doc
}

/// Items whose meaning survives multiplication by -1: integrals, Casimir bases,
/// zero-residuals and relations, and master-symmetry seeds. Returns the path
/// of the whole item.
fn projective_item(path: &[String]) -> Option<&[String]> {
    let p: Vec<&str> = path.iter().map(String::as_str).collect();
    match p.as_slice() {
        ["integrals", _, "poly"]
        | ["expected", "casimirs", "basis", _]
        | ["expected", "canonoid", _, "residuals", _]
        | ["expected", "integral_relations", _, "relation"]
        | ["expected", "master_generator", _, "t"] => Some(path),
        ["expected", "master_symmetry", _, "xi", _] => Some(&path[..4]),
        _ => None,
    }
}

fn polys(v: &Value) -> Vec<Polynomial> {
    let texts: Vec<&str> = match v {
        Value::Array(a) => a.iter().map(|c| c.as_str().unwrap()).collect(),
        _ => vec![v.as_str().unwrap()],
    };
    let mut names: Vec<String> = texts
        .iter()
        .flat_map(|t| t.split(|c: char| !c.is_ascii_alphanumeric() && c != '_'))
        .filter(|w| w.starts_with(|c: char| c.is_ascii_alphabetic()))
        .map(str::to_string)
        .collect();
    names.sort();
    names.dedup();
    let chart = Chart::new(if names.is_empty() { vec!["x".to_string()] } else { names }).unwrap();
    texts.iter().map(|t| parse_poly(t, &chart).unwrap()).collect()
}

/// The flip only negated a whole projective item.
fn is_whole_negation(original: &Value, flipped: &Value, path: &[String]) -> bool {
    let Some(item) = projective_item(path) else {
        return false;
    };
    let before = polys(original.pointer(&pointer(item)).unwrap());
    let after = polys(flipped.pointer(&pointer(item)).unwrap());
    before.len() == after.len() && before.iter().zip(&after).all(|(b, a)| *a == -b)
}

/// One-sign variants of a leaf: toggle the sign of the first term, and swap
/// each binary `+`/`-` in a polynomial string.
fn flips(v: &Value) -> Vec<Value> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(0) => vec![],
            Some(i) => vec![Value::from(-i)],
            None => vec![Value::from(-n.as_f64().unwrap())],
        },
        Value::String(s) => {
            let t = s.trim();
            if t == "0" || t.is_empty() {
                return vec![];
            }
            let mut out = vec![Value::String(match t.strip_prefix("-1*") {
                Some(rest) => rest.to_string(),
                None => match t.strip_prefix('-') {
                    Some(rest) => rest.to_string(),
                    None => format!("-1*{t}"),
                },
            })];
            for (i, _) in t.match_indices(" + ").chain(t.match_indices(" - ")) {
                let swapped = if &t[i..i + 3] == " + " { " - " } else { " + " };
                out.push(Value::String(format!("{}{}{}", &t[..i], swapped, &t[i + 3..])));
            }
            out
        }
        _ => vec![],
    }
}

fn leaves(v: &Value, path: &mut Vec<String>, out: &mut Vec<(Vec<String>, Value)>) {
    match v {
        Value::Object(m) => {
            for (k, c) in m {
                path.push(k.clone());
                leaves(c, path, out);
                path.pop();
            }
        }
        Value::Array(a) => {
            for (i, c) in a.iter().enumerate() {
                path.push(i.to_string());
                leaves(c, path, out);
                path.pop();
            }
        }
        _ => out.push((path.clone(), v.clone())),
    }
}

fn pointer(path: &[String]) -> String {
    path.iter().map(|p| format!("/{p}")).collect()
}

/// `Some(reason)` when the flipped file is rejected or its run fails with a named item.
fn failure(text: &str) -> Option<String> {
    match parse_scenario(text) {
        Err(e) => Some(format!("load: {e}")),
        Ok(s) => {
            let r = run_scenario(&s);
            let f = r.failures().next()?;
            let named = f.error.is_some() || f.mismatches.iter().all(|m| !m.field.is_empty());
            named.then(|| format!("{}/{}", f.check, f.item))
        }
    }
}

#[test]
fn every_single_sign_flip_fails() {
    let mut survivors = Vec::new();
    let mut total = 0;
    let mut exempt = 0;
    for name in builtin_names() {
        let original = without_dynamics(serde_json::from_str(builtin_source(name).unwrap()).unwrap());
        assert!(failure(&original.to_string()).is_none(), "{name} fails unflipped");
        let mut all = Vec::new();
        leaves(&original, &mut Vec::new(), &mut all);
        for (path, leaf) in all {
            if skipped(&path) {
                continue;
            }
            for flipped in flips(&leaf) {
                let mut doc = original.clone();
                *doc.pointer_mut(&pointer(&path)).unwrap() = flipped.clone();
                total += 1;
                if is_whole_negation(&original, &doc, &path) {
                    exempt += 1;
                    continue;
                }
                if failure(&doc.to_string()).is_none() {
                    survivors.push(format!("{name}{} = {flipped}", pointer(&path)));
                }
            }
        }
    }
    assert!(total > 500, "only {total} flips");
    assert!(exempt * 10 < total, "{exempt} of {total} flips exempt");
    assert!(
        survivors.is_empty(),
        "{} of {total} flips pass:\n{}",
        survivors.len(),
        survivors.join("\n")
    );
}
