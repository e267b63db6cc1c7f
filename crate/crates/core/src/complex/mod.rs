//! Weighted simplicial complexes: construction, validation, classification
//! of simplices, singular and n-stage subcomplexes, and products.

mod format;
mod simplex;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

pub use format::{parse_complex, write_complex};
pub use simplex::{Simplex, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex weights of {simplex} admit no divisibility chain")]
    NonDivisibleChain { simplex: String },
    #[error("weight of face {face} does not divide weight of {coface}")]
    FaceDivisibilityViolation { face: String, coface: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("invalid weight {weight} on {simplex}")]
    InvalidWeight { simplex: String, weight: u64 },
    #[error("simplex {0} is not in the complex")]
    SimplexNotInComplex(String),
    #[error("complex is not divisibly weighted")]
    NotDivisiblyWeighted,
    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),
    #[error("weight overflow")]
    WeightOverflow,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimplexClass {
    Regular,
    SemiRegular,
    Singular,
}

/// Threshold `n` of an n-stage subcomplex; `Infinite` keeps all of `ΣK`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Finite(u64),
    Infinite,
}

impl Stage {
    pub fn admits(self, weight: u64) -> bool {
        match self {
            Stage::Finite(n) => weight <= n,
            Stage::Infinite => true,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Finite(n) => write!(f, "{n}"),
            Stage::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" => Ok(Stage::Infinite),
            t => t
                .parse()
                .map(Stage::Finite)
                .map_err(|_| format!("invalid stage `{s}`")),
        }
    }
}

/// Per-class simplex counts, indexed by dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub regular: Vec<usize>,
    pub semi_regular: Vec<usize>,
    pub singular: Vec<usize>,
}

/// A finite simplicial complex with a positive weight on every simplex such
/// that face weights divide coface weights. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedComplex {
    names: Vec<String>,
    name_index: HashMap<String, VertexId>,
    vertex_weights: Vec<u64>,
    simplices: Vec<Vec<Simplex>>,
    weights: Vec<Vec<u64>>,
    index: HashMap<Simplex, usize>,
    divisibly_weighted: bool,
}

/// Vertex weights of `s` sorted ascending, if they form a divisibility chain.
fn chain_max(s: &Simplex, vertex_weights: &[u64]) -> Option<u64> {
    let mut w: Vec<u64> = s.vertices().iter().map(|&v| vertex_weights[v]).collect();
    w.sort_unstable();
    w.windows(2)
        .all(|p| p[1] % p[0] == 0)
        .then(|| *w.last().unwrap())
}

impl WeightedComplex {
    pub fn empty() -> WeightedComplex {
        WeightedComplex {
            names: Vec::new(),
            name_index: HashMap::new(),
            vertex_weights: Vec::new(),
            simplices: Vec::new(),
            weights: Vec::new(),
            index: HashMap::new(),
            divisibly_weighted: true,
        }
    }

    /// Builds the face closure of `maximal` on vertices `0..vertex_weights.len()`
    /// named `v0, v1, …`. See [`WeightedComplex::build_named`].
    pub fn build(
        vertex_weights: &[u64],
        maximal: &[Vec<VertexId>],
        explicit: Option<&HashMap<Simplex, u64>>,
    ) -> Result<WeightedComplex, ComplexError> {
        let names = (0..vertex_weights.len()).map(|i| format!("v{i}")).collect();
        Self::build_named(names, vertex_weights, maximal, explicit)
    }

    /// Every declared vertex is a 0-simplex even if no maximal simplex uses
    /// it. Without explicit weights `w(σ)` is the lcm of the vertex weights,
    /// which must be attained by one of them. Explicit weights override that
    /// rule; simplices they omit fall back to it.
    pub fn build_named(
        names: Vec<String>,
        vertex_weights: &[u64],
        maximal: &[Vec<VertexId>],
        explicit: Option<&HashMap<Simplex, u64>>,
    ) -> Result<WeightedComplex, ComplexError> {
        assert_eq!(names.len(), vertex_weights.len(), "one name per vertex");
        let mut name_index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if name_index.insert(n.clone(), i).is_some() {
                return Err(ComplexError::DuplicateVertex(n.clone()));
            }
        }
        for (v, &w) in vertex_weights.iter().enumerate() {
            if w == 0 {
                return Err(ComplexError::InvalidWeight {
                    simplex: format!("[{}]", names[v]),
                    weight: w,
                });
            }
        }

        let mut by_dim: Vec<BTreeSet<Simplex>> = vec![(0..names.len()).map(Simplex::vertex).collect()];
        for m in maximal {
            if let Some(&v) = m.iter().find(|&&v| v >= names.len()) {
                return Err(ComplexError::UnknownVertex(v.to_string()));
            }
            let s = Simplex::new(m.clone()).ok_or_else(|| {
                ComplexError::DuplicateVertex(format!("{m:?}"))
            })?;
            for f in s.all_faces() {
                let d = f.dim();
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(f);
            }
        }
        if names.is_empty() {
            by_dim.clear();
        }
        let simplices: Vec<Vec<Simplex>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut index = HashMap::new();
        for layer in &simplices {
            for (i, s) in layer.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }

        let describe = |s: &Simplex| describe_with(&names, s);
        if let Some(ex) = explicit {
            for (s, &w) in ex {
                if !index.contains_key(s) {
                    return Err(ComplexError::SimplexNotInComplex(describe(s)));
                }
                if w == 0 || (s.dim() == 0 && w != vertex_weights[s.vertices()[0]]) {
                    return Err(ComplexError::InvalidWeight {
                        simplex: describe(s),
                        weight: w,
                    });
                }
            }
        }

        let mut divisibly_weighted = true;
        let mut weights = Vec::with_capacity(simplices.len());
        for layer in &simplices {
            let mut lw = Vec::with_capacity(layer.len());
            for s in layer {
                let derived = chain_max(s, vertex_weights);
                let w = match (explicit.and_then(|e| e.get(s)), derived) {
                    (Some(&w), d) => {
                        divisibly_weighted &= d == Some(w);
                        w
                    }
                    (None, Some(w)) => w,
                    (None, None) => {
                        return Err(ComplexError::NonDivisibleChain { simplex: describe(s) })
                    }
                };
                lw.push(w);
            }
            weights.push(lw);
        }

        for d in 1..simplices.len() {
            for (s, &w) in simplices[d].iter().zip(&weights[d]) {
                for f in s.boundary_faces() {
                    let fw = weights[d - 1][index[&f]];
                    if w % fw != 0 {
                        return Err(ComplexError::FaceDivisibilityViolation {
                            face: describe(&f),
                            coface: describe(s),
                        });
                    }
                }
            }
        }

        Ok(WeightedComplex {
            names,
            name_index,
            vertex_weights: vertex_weights.to_vec(),
            simplices,
            weights,
            index,
            divisibly_weighted,
        })
    }

    /// Same simplices, vertex weights replaced and simplex weights re-derived.
    pub fn with_vertex_weights(&self, vertex_weights: &[u64]) -> Result<WeightedComplex, ComplexError> {
        Self::build_named(self.names.clone(), vertex_weights, &self.maximal_vertex_lists(), None)
    }

    /// The underlying simplicial complex with every weight 1.
    pub fn unweighted(&self) -> WeightedComplex {
        let mut k = self.clone();
        k.vertex_weights.iter_mut().for_each(|w| *w = 1);
        k.weights.iter_mut().flatten().for_each(|w| *w = 1);
        k.divisibly_weighted = true;
        k
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// Number of dimensions carrying simplices (`dim + 1`, or 0 when empty).
    pub fn num_dims(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.simplices.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn weights(&self, dim: usize) -> &[u64] {
        self.weights.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, u64)> {
        self.simplices
            .iter()
            .zip(&self.weights)
            .flat_map(|(s, w)| s.iter().zip(w.iter().copied()))
    }

    /// Position of `s` within its dimension's canonical list.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    pub fn weight(&self, s: &Simplex) -> Option<u64> {
        self.index_of(s).map(|i| self.weights[s.dim()][i])
    }

    pub fn vertex_weight(&self, v: VertexId) -> u64 {
        self.vertex_weights[v]
    }

    pub fn vertex_weights(&self) -> &[u64] {
        &self.vertex_weights
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.name_index.get(name).copied()
    }

    pub fn is_divisibly_weighted(&self) -> bool {
        self.divisibly_weighted
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().flatten().copied().max().unwrap_or(1)
    }

    pub fn describe(&self, s: &Simplex) -> String {
        describe_with(&self.names, s)
    }

    pub fn classify(&self, s: &Simplex) -> Result<SimplexClass, ComplexError> {
        let w = self
            .weight(s)
            .ok_or_else(|| ComplexError::SimplexNotInComplex(self.describe(s)))?;
        Ok(self.class_of(s, w))
    }

    fn class_of(&self, s: &Simplex, w: u64) -> SimplexClass {
        // vertex weights divide every face weight, so vertices decide singularity
        if w == 1 {
            SimplexClass::Regular
        } else if s.vertices().iter().all(|&v| self.vertex_weights[v] >= 2) {
            SimplexClass::Singular
        } else {
            SimplexClass::SemiRegular
        }
    }

    pub fn class_counts(&self) -> ClassCounts {
        let n = self.num_dims();
        let mut c = ClassCounts {
            regular: vec![0; n],
            semi_regular: vec![0; n],
            singular: vec![0; n],
        };
        for (s, w) in self.iter() {
            match self.class_of(s, w) {
                SimplexClass::Regular => c.regular[s.dim()] += 1,
                SimplexClass::SemiRegular => c.semi_regular[s.dim()] += 1,
                SimplexClass::Singular => c.singular[s.dim()] += 1,
            }
        }
        c
    }

    /// Membership mask over the canonical simplex lists.
    pub fn mask(&self, keep: impl Fn(&Simplex, u64) -> bool) -> Vec<Vec<bool>> {
        self.simplices
            .iter()
            .zip(&self.weights)
            .map(|(l, w)| l.iter().zip(w).map(|(s, &w)| keep(s, w)).collect())
            .collect()
    }

    pub fn singular_mask(&self) -> Vec<Vec<bool>> {
        self.mask(|s, w| self.class_of(s, w) == SimplexClass::Singular)
    }

    pub fn stage_mask(&self, stage: Stage) -> Vec<Vec<bool>> {
        self.mask(|s, w| stage.admits(w) && self.class_of(s, w) == SimplexClass::Singular)
    }

    pub fn singular_subcomplex(&self) -> WeightedComplex {
        self.restrict(&self.singular_mask())
    }

    /// `Σⁿ K`: singular simplices of weight at most `n`. Face-closed because
    /// face weights divide coface weights.
    pub fn n_stage_subcomplex(&self, stage: Stage) -> WeightedComplex {
        self.restrict(&self.stage_mask(stage))
    }

    /// The subcomplex on the masked simplices (which must be face-closed),
    /// vertices renumbered in increasing order, names and weights kept.
    pub fn restrict(&self, mask: &[Vec<bool>]) -> WeightedComplex {
        let mut new_id = vec![usize::MAX; self.num_vertices()];
        let mut names = Vec::new();
        let mut vertex_weights = Vec::new();
        for v in 0..self.num_vertices() {
            if mask.first().is_some_and(|m| m[v]) {
                new_id[v] = names.len();
                names.push(self.names[v].clone());
                vertex_weights.push(self.vertex_weights[v]);
            }
        }
        let mut simplices = Vec::new();
        let mut weights = Vec::new();
        let mut index = HashMap::new();
        let mut divisibly_weighted = true;
        for (d, layer) in self.simplices.iter().enumerate() {
            let mut ls = Vec::new();
            let mut lw = Vec::new();
            for (i, s) in layer.iter().enumerate() {
                if !mask[d][i] {
                    continue;
                }
                let t = Simplex::from_sorted(s.vertices().iter().map(|&v| new_id[v]).collect());
                debug_assert!(t.vertices().iter().all(|&v| v != usize::MAX), "mask is face-closed");
                divisibly_weighted &= chain_max(&t, &vertex_weights) == Some(self.weights[d][i]);
                index.insert(t.clone(), ls.len());
                ls.push(t);
                lw.push(self.weights[d][i]);
            }
            if ls.is_empty() {
                break;
            }
            simplices.push(ls);
            weights.push(lw);
        }
        WeightedComplex {
            name_index: names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect(),
            names,
            vertex_weights,
            simplices,
            weights,
            index,
            divisibly_weighted,
        }
    }

    /// Mask of the simplices of `sub` inside `self`, matching vertices by name.
    pub fn embedding_mask(&self, sub: &WeightedComplex) -> Result<Vec<Vec<bool>>, ComplexError> {
        let mut vmap = Vec::with_capacity(sub.num_vertices());
        for (v, n) in sub.names.iter().enumerate() {
            let u = self
                .vertex_by_name(n)
                .ok_or_else(|| ComplexError::NotASubcomplex(format!("vertex {n} missing")))?;
            if self.vertex_weights[u] != sub.vertex_weights[v] {
                return Err(ComplexError::NotASubcomplex(format!("weight of {n} differs")));
            }
            vmap.push(u);
        }
        let mut mask = self.mask(|_, _| false);
        for (s, w) in sub.iter() {
            let t = Simplex::new(s.vertices().iter().map(|&v| vmap[v]).collect())
                .expect("injective vertex map");
            match self.index_of(&t) {
                Some(i) if self.weights[t.dim()][i] == w => mask[t.dim()][i] = true,
                Some(_) => {
                    return Err(ComplexError::NotASubcomplex(format!(
                        "weight of {} differs",
                        sub.describe(s)
                    )))
                }
                None => {
                    return Err(ComplexError::NotASubcomplex(format!(
                        "{} missing",
                        sub.describe(s)
                    )))
                }
            }
        }
        Ok(mask)
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: Vec<Vec<bool>> = self.simplices.iter().map(|l| vec![false; l.len()]).collect();
        for d in 1..self.simplices.len() {
            for s in &self.simplices[d] {
                for f in s.boundary_faces() {
                    covered[d - 1][self.index[&f]] = true;
                }
            }
        }
        let mut out = Vec::new();
        for (d, layer) in self.simplices.iter().enumerate() {
            out.extend(layer.iter().zip(&covered[d]).filter(|(_, &c)| !c).map(|(s, _)| s.clone()));
        }
        out
    }

    fn maximal_vertex_lists(&self) -> Vec<Vec<VertexId>> {
        self.maximal_simplices().into_iter().map(|s| s.vertices().to_vec()).collect()
    }

    /// Vertices sorted by `(weight, id)`; the total order used by products
    /// and by the projection of a subdivision.
    pub fn weight_order(&self) -> Vec<VertexId> {
        let mut order: Vec<VertexId> = (0..self.num_vertices()).collect();
        order.sort_by_key(|&v| (self.vertex_weights[v], v));
        order
    }

    /// Staircase triangulation of `self × other`. Product vertex `(a, b)` has
    /// weight `w(a)·w'(b)`; a product simplex is a chain of vertex pairs
    /// non-decreasing in both factors' weight orders.
    pub fn cartesian_product(&self, other: &WeightedComplex) -> Result<WeightedComplex, ComplexError> {
        if !self.divisibly_weighted || !other.divisibly_weighted {
            return Err(ComplexError::NotDivisiblyWeighted);
        }
        let (n1, n2) = (self.num_vertices(), other.num_vertices());
        let mut names = Vec::with_capacity(n1 * n2);
        let mut weights = Vec::with_capacity(n1 * n2);
        for a in 0..n1 {
            for b in 0..n2 {
                names.push(format!("({},{})", self.names[a], other.names[b]));
                weights.push(
                    self.vertex_weights[a]
                        .checked_mul(other.vertex_weights[b])
                        .ok_or(ComplexError::WeightOverflow)?,
                );
            }
        }
        let rank1 = order_rank(&self.weight_order());
        let rank2 = order_rank(&other.weight_order());
        let mut maximal = Vec::new();
        for s in self.maximal_simplices() {
            let mut a: Vec<VertexId> = s.vertices().to_vec();
            a.sort_by_key(|&v| rank1[v]);
            for t in other.maximal_simplices() {
                let mut b: Vec<VertexId> = t.vertices().to_vec();
                b.sort_by_key(|&v| rank2[v]);
                staircases(&a, &b, |path| {
                    maximal.push(path.iter().map(|&(x, y)| x * n2 + y).collect());
                });
            }
        }
        Self::build_named(names, &weights, &maximal, None)
    }
}

fn order_rank(order: &[VertexId]) -> Vec<usize> {
    let mut rank = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    rank
}

/// Calls `emit` for every monotone lattice path from `(a_0, b_0)` to
/// `(a_p, b_q)`.
fn staircases(a: &[VertexId], b: &[VertexId], mut emit: impl FnMut(&[(VertexId, VertexId)])) {
    fn walk(
        a: &[VertexId],
        b: &[VertexId],
        i: usize,
        j: usize,
        path: &mut Vec<(VertexId, VertexId)>,
        emit: &mut dyn FnMut(&[(VertexId, VertexId)]),
    ) {
        path.push((a[i], b[j]));
        if i + 1 == a.len() && j + 1 == b.len() {
            emit(path);
        }
        if i + 1 < a.len() {
            walk(a, b, i + 1, j, path, emit);
        }
        if j + 1 < b.len() {
            walk(a, b, i, j + 1, path, emit);
        }
        path.pop();
    }
    walk(a, b, 0, 0, &mut Vec::new(), &mut emit);
}

fn describe_with(names: &[String], s: &Simplex) -> String {
    let parts: Vec<&str> = s.vertices().iter().map(|&v| names[v].as_str()).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Debug for WeightedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedComplex")
            .field("vertices", &self.names.iter().zip(&self.vertex_weights).collect::<Vec<_>>())
            .field("counts", &self.simplices.iter().map(Vec::len).collect::<Vec<_>>())
            .field("divisibly_weighted", &self.divisibly_weighted)
            .finish()
    }
}

/// Least common multiple of a weight list, `None` on overflow.
pub fn lcm_of(weights: impl IntoIterator<Item = u64>) -> Option<u64> {
    weights.into_iter().try_fold(1u64, |acc, w| {
        let g = acc.gcd(&w);
        (acc / g).checked_mul(w)
    })
}
