use serde_json::{json, Value};

use super::{Adjacency, Dir, Edge, RawXTree};
use crate::error::Error;
use crate::words::Alphabet;

pub fn to_json(t: &RawXTree, alphabet: &Alphabet) -> Value {
    json!({
        "vertices": (0..t.vertex_count()).collect::<Vec<_>>(),
        "edges": t.edges().iter().map(|e| json!({
            "from": e.from,
            "label": alphabet.name(e.label),
            "to": e.to,
        })).collect::<Vec<_>>(),
        "start": t.start(),
        "end": t.end(),
    })
}

/// Accepts arbitrary vertex ids (numbers or strings); unknown labels are
/// interned into `alphabet`.
pub fn raw_from_json(value: &Value, alphabet: &mut Alphabet) -> Result<RawXTree, Error> {
    let bad = |m: &str| Error::Json(m.to_string());
    let vertices = value["vertices"].as_array().ok_or_else(|| bad("missing `vertices` array"))?;
    let index = |id: &Value| vertices.iter().position(|v| v == id).ok_or_else(|| bad(&format!("unknown vertex {id}")));
    let edges = value["edges"]
        .as_array()
        .ok_or_else(|| bad("missing `edges` array"))?
        .iter()
        .map(|e| {
            let label = e["label"].as_str().ok_or_else(|| bad("edge label must be a string"))?;
            Ok(Edge { from: index(&e["from"])?, label: alphabet.intern(label)?, to: index(&e["to"])? })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    RawXTree::new(vertices.len(), edges, index(&value["start"])?, index(&value["end"])?)
}

/// Graphviz rendering; the start is drawn as a box and the end doubly circled.
pub fn to_dot(t: &RawXTree, alphabet: &Alphabet) -> String {
    let mut out = String::from("digraph xtree {\n");
    for v in 0..t.vertex_count() {
        let mut attrs = Vec::new();
        if v == t.start() {
            attrs.push("shape=box".to_string());
        }
        if v == t.end() {
            attrs.push("peripheries=2".to_string());
        }
        let role = match (v == t.start(), v == t.end()) {
            (true, true) => " (start, end)",
            (true, false) => " (start)",
            (false, true) => " (end)",
            _ => "",
        };
        attrs.push(format!("label=\"{v}{role}\""));
        out.push_str(&format!("  {v} [{}];\n", attrs.join(", ")));
    }
    for e in t.edges() {
        out.push_str(&format!("  {} -> {} [label=\"{}\"];\n", e.from, e.to, alphabet.name(e.label)));
    }
    out.push_str("}\n");
    out
}

/// A term over `^+` and `^*` that evaluates to `t`: each vertex contributes
/// `(l E)^+` per outgoing branch and `(E l)^*` per incoming one, and the
/// trunk letters are written in order between the trunk vertices.
pub fn to_term(t: &RawXTree, alphabet: &Alphabet) -> String {
    let adj = t.adjacency();
    let trunk = t.trunk_path().expect("valid tree");
    let mut parts = Vec::new();
    for (i, &v) in trunk.iter().enumerate() {
        let prev = if i == 0 { usize::MAX } else { trunk[i - 1] };
        let next = trunk.get(i + 1).copied().unwrap_or(usize::MAX);
        branches(&adj, v, &[prev, next], alphabet, &mut parts);
        if next != usize::MAX {
            let &(_, l, _) = adj[v].iter().find(|&&(w, _, d)| w == next && d == Dir::Out).unwrap();
            parts.push(alphabet.name(l).to_string());
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

fn branches(adj: &Adjacency, v: usize, skip: &[usize], alphabet: &Alphabet, out: &mut Vec<String>) {
    for &(w, l, d) in &adj[v] {
        if skip.contains(&w) {
            continue;
        }
        let mut inner = Vec::new();
        branches(adj, w, &[v], alphabet, &mut inner);
        let name = alphabet.name(l).to_string();
        out.push(match d {
            Dir::Out => format!("({})^+", [vec![name], inner].concat().join(" ")),
            Dir::In => format!("({})^*", [inner, vec![name]].concat().join(" ")),
        });
    }
}
