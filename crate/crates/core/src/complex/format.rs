//! Line-based text format:
//!
//! ```text
//! # comment
//! vertex a 1
//! vertex b 3
//! simplex a b
//! weight a b = 3
//! ```
//!
//! `simplex` lines list maximal simplices; `weight` lines are only needed for
//! simplices whose weight is not the lcm of their vertex weights.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{ComplexError, Simplex, VertexId, WeightedComplex};

pub fn parse_complex(text: &str) -> Result<WeightedComplex, ComplexError> {
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    let mut weights = Vec::new();
    let mut maximal = Vec::new();
    let mut explicit: HashMap<Simplex, u64> = HashMap::new();
    let mut explicit_lines = HashMap::new();

    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let err = |message: String| ComplexError::Parse { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let keyword = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        let lookup = |name: &str| {
            ids.get(name)
                .copied()
                .ok_or_else(|| err(format!("unknown vertex `{name}`")))
        };
        match keyword {
            "vertex" => {
                let [name, w] = rest[..] else {
                    return Err(err("expected `vertex <name> <weight>`".into()));
                };
                let w: u64 = w
                    .parse()
                    .ok()
                    .filter(|&w| w >= 1)
                    .ok_or_else(|| err(format!("invalid weight `{w}`")))?;
                if ids.contains_key(name) {
                    return Err(err(format!("duplicate vertex `{name}`")));
                }
                ids.insert(name.to_string(), names.len());
                names.push(name.to_string());
                weights.push(w);
            }
            "simplex" => {
                if rest.is_empty() {
                    return Err(err("empty simplex".into()));
                }
                let vs = rest.iter().map(|n| lookup(n)).collect::<Result<Vec<_>, _>>()?;
                if Simplex::new(vs.clone()).is_none() {
                    return Err(err("repeated vertex in simplex".into()));
                }
                maximal.push(vs);
            }
            "weight" => {
                let eq = rest
                    .iter()
                    .position(|&t| t == "=")
                    .ok_or_else(|| err("expected `weight <names> = <int>`".into()))?;
                if eq == 0 || eq + 2 != rest.len() {
                    return Err(err("expected `weight <names> = <int>`".into()));
                }
                let vs = rest[..eq].iter().map(|n| lookup(n)).collect::<Result<Vec<_>, _>>()?;
                let s = Simplex::new(vs).ok_or_else(|| err("repeated vertex in simplex".into()))?;
                let w: u64 = rest[eq + 1]
                    .parse()
                    .ok()
                    .filter(|&w| w >= 1)
                    .ok_or_else(|| err(format!("invalid weight `{}`", rest[eq + 1])))?;
                explicit_lines.insert(s.clone(), line);
                explicit.insert(s, w);
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    if names.is_empty() {
        return Err(ComplexError::Parse {
            line: text.lines().count().max(1),
            message: "no vertices declared".into(),
        });
    }
    let explicit = (!explicit.is_empty()).then_some(&explicit);
    match WeightedComplex::build_named(names, &weights, &maximal, explicit) {
        Err(ComplexError::SimplexNotInComplex(s)) => {
            let line = explicit_lines.values().copied().max().unwrap_or(1);
            Err(ComplexError::Parse {
                line,
                message: format!("weight given for {s}, which is not in the complex"),
            })
        }
        r => r,
    }
}

/// Writes `k` so that [`parse_complex`] reproduces it exactly.
pub fn write_complex(k: &WeightedComplex) -> String {
    let mut out = String::new();
    for v in 0..k.num_vertices() {
        let _ = writeln!(out, "vertex {} {}", k.name(v), k.vertex_weight(v));
    }
    for s in k.maximal_simplices() {
        if s.dim() == 0 {
            continue;
        }
        let _ = writeln!(out, "simplex {}", join_names(k, &s));
    }
    for (s, w) in k.iter() {
        if s.dim() == 0 {
            continue;
        }
        let derived = super::chain_max(s, k.vertex_weights());
        if derived != Some(w) {
            let _ = writeln!(out, "weight {} = {}", join_names(k, s), w);
        }
    }
    out
}

fn join_names(k: &WeightedComplex, s: &Simplex) -> String {
    s.vertices().iter().map(|&v| k.name(v)).collect::<Vec<_>>().join(" ")
}
