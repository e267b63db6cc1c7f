//! Result documents: serde structs plus the plain-text rendering with its
//! key/value block.

use std::fmt::Write as _;

use orbihom::chains::ChainComplexData;
use orbihom::complex::WeightedComplex;
use orbihom::homology::HomologyProfile;
use orbihom::{BigInt, ComplexError};
use serde::{Deserialize, Serialize};

pub const BLOCK_BEGIN: &str = "--- begin orbihom ---";
pub const BLOCK_END: &str = "--- end orbihom ---";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum InputDescriptor {
    File(String),
    Example(String),
}

impl InputDescriptor {
    fn kind(&self) -> &'static str {
        match self {
            InputDescriptor::File(_) => "file",
            InputDescriptor::Example(_) => "example",
        }
    }

    fn value(&self) -> &str {
        match self {
            InputDescriptor::File(v) | InputDescriptor::Example(v) => v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEntry {
    pub dimension: usize,
    pub rank: usize,
    /// Invariant factors, ascending, as decimal strings.
    pub torsion: Vec<String>,
    /// `Z^r + Z/d1 + ...`, or `0`.
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: String,
    pub simplex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    /// Order of the generator; `None` for a free generator.
    pub order: Option<String>,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSet {
    pub dimension: usize,
    pub generators: Vec<Generator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub face_divisibility: bool,
    pub divisibly_weighted: bool,
    /// Per dimension: regular, semi-regular and singular simplex counts.
    pub regular: Vec<usize>,
    pub semi_regular: Vec<usize>,
    pub singular: Vec<usize>,
    pub error: Option<String>,
}

impl ValidationReport {
    pub fn of(k: &WeightedComplex) -> Self {
        let c = k.class_counts();
        ValidationReport {
            ok: true,
            face_divisibility: true,
            divisibly_weighted: k.is_divisibly_weighted(),
            regular: c.regular,
            semi_regular: c.semi_regular,
            singular: c.singular,
            error: None,
        }
    }

    pub fn failed(error: &ComplexError) -> Self {
        ValidationReport {
            ok: false,
            face_divisibility: !matches!(error, ComplexError::FaceDivisibilityViolation { .. }),
            divisibly_weighted: false,
            regular: Vec::new(),
            semi_regular: Vec::new(),
            singular: Vec::new(),
            error: Some(error.to_string()),
        }
    }

    fn lines(&self, out: &mut String) {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(out, "valid: {}", yes(self.ok));
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
            return;
        }
        let _ = writeln!(out, "face divisibility: {}", yes(self.face_divisibility));
        let _ = writeln!(out, "divisibly weighted: {}", yes(self.divisibly_weighted));
        for d in 0..self.regular.len() {
            let _ = writeln!(
                out,
                "dim {d}: {} regular, {} semi-regular, {} singular",
                self.regular[d], self.semi_regular[d], self.singular[d]
            );
        }
    }

    fn block(&self, out: &mut String) {
        let _ = writeln!(out, "valid={}", self.ok);
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error={e}");
            return;
        }
        let _ = writeln!(out, "face_divisibility={}", self.face_divisibility);
        let _ = writeln!(out, "divisibly_weighted={}", self.divisibly_weighted);
        for d in 0..self.regular.len() {
            let _ = writeln!(
                out,
                "counts.{d}={},{},{}",
                self.regular[d], self.semi_regular[d], self.singular[d]
            );
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub input: InputDescriptor,
    pub theory: String,
    pub coefficients: String,
    pub groups: Vec<GroupEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessSet>>,
    /// Wall-clock time in microseconds; only recorded on request so that
    /// documents are reproducible by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u64>,
    pub validation: ValidationReport,
}

impl ResultDocument {
    pub fn new(input: InputDescriptor, k: &WeightedComplex, profile: &HomologyProfile, cc: Option<&ChainComplexData>) -> Self {
        let groups = profile
            .groups
            .iter()
            .enumerate()
            .map(|(dimension, g)| GroupEntry {
                dimension,
                rank: g.rank,
                torsion: g.torsion.iter().map(|d| d.to_string()).collect(),
                text: g.to_string(),
            })
            .collect();
        let witnesses = match (&profile.witnesses, cc) {
            (Some(w), Some(cc)) => Some(
                w.iter()
                    .enumerate()
                    .map(|(dimension, gens)| {
                        let torsion = &profile.groups[dimension].torsion;
                        WitnessSet {
                            dimension,
                            generators: gens
                                .iter()
                                .enumerate()
                                .map(|(i, v)| Generator {
                                    order: torsion.get(i).map(|d| d.to_string()),
                                    terms: v
                                        .iter()
                                        .enumerate()
                                        .filter(|(_, c)| **c != BigInt::default())
                                        .map(|(j, c)| Term {
                                            coefficient: c.to_string(),
                                            simplex: k.describe(&cc.basis[dimension][j]),
                                        })
                                        .collect(),
                                })
                                .collect(),
                        }
                    })
                    .collect(),
            ),
            _ => None,
        };
        ResultDocument {
            input,
            theory: profile.theory.canonical().to_string(),
            coefficients: profile.coefficients.to_string(),
            groups,
            witnesses,
            timing_us: None,
            validation: ValidationReport::of(k),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input: {} {}", self.input.kind(), self.input.value());
        let _ = writeln!(out, "theory: {}", self.theory);
        let _ = writeln!(out, "coefficients: {}", self.coefficients);
        for g in &self.groups {
            let _ = writeln!(out, "h_{} = {}", g.dimension, g.text);
        }
        if let Some(ws) = &self.witnesses {
            for w in ws {
                for (i, g) in w.generators.iter().enumerate() {
                    let order = g.order.as_deref().map_or("free".to_string(), |d| format!("order {d}"));
                    let _ = writeln!(out, "witness h_{} #{i} ({order}): {}", w.dimension, linear_combination(&g.terms));
                }
            }
        }
        if let Some(t) = self.timing_us {
            let _ = writeln!(out, "time: {t} us");
        }
        self.validation.lines(&mut out);
        let _ = writeln!(out, "{BLOCK_BEGIN}");
        let _ = writeln!(out, "input.kind={}", self.input.kind());
        let _ = writeln!(out, "input.value={}", self.input.value());
        let _ = writeln!(out, "theory={}", self.theory);
        let _ = writeln!(out, "coefficients={}", self.coefficients);
        let _ = writeln!(out, "dims={}", self.groups.len());
        for g in &self.groups {
            let _ = writeln!(out, "h.{}.rank={}", g.dimension, g.rank);
            let _ = writeln!(out, "h.{}.torsion={}", g.dimension, g.torsion.join(","));
        }
        if let Some(t) = self.timing_us {
            let _ = writeln!(out, "time_us={t}");
        }
        self.validation.block(&mut out);
        let _ = writeln!(out, "{BLOCK_END}");
        out
    }
}

/// `3*[a,b] - 2*[b,c]`.
fn linear_combination(terms: &[Term]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let (neg, abs) = match t.coefficient.strip_prefix('-') {
            Some(a) => (true, a),
            None => (false, t.coefficient.as_str()),
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let _ = write!(out, "{abs}*{}", t.simplex);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Text report for `validate`.
pub fn validation_text(input: &InputDescriptor, report: &ValidationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input: {} {}", input.kind(), input.value());
    report.lines(&mut out);
    let _ = writeln!(out, "{BLOCK_BEGIN}");
    let _ = writeln!(out, "input.kind={}", input.kind());
    let _ = writeln!(out, "input.value={}", input.value());
    report.block(&mut out);
    let _ = writeln!(out, "{BLOCK_END}");
    out
}

/// Key/value pairs from the block of a text document.
pub fn parse_block(text: &str) -> Vec<(String, String)> {
    text.lines()
        .skip_while(|l| *l != BLOCK_BEGIN)
        .skip(1)
        .take_while(|l| *l != BLOCK_END)
        .filter_map(|l| l.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())))
        .collect()
}
