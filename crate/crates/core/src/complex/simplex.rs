use std::fmt;

/// Dense vertex index, `0..V` within one complex.
pub type VertexId = usize;

/// A simplex as its strictly increasing vertex list. The ascending order is
/// the canonical orientation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Sorts `vertices`; `None` if empty or if a vertex repeats.
    pub fn new(mut vertices: Vec<VertexId>) -> Option<Simplex> {
        if vertices.is_empty() {
            return None;
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Simplex(vertices))
    }

    pub fn vertex(v: VertexId) -> Simplex {
        Simplex(vec![v])
    }

    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Simplex {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    /// Canonicalises an ordered vertex tuple. Returns the simplex and the
    /// sign of the sorting permutation, or `None` if a vertex repeats.
    pub fn oriented(vertices: &[VertexId]) -> Option<(Simplex, i8)> {
        let mut v = vertices.to_vec();
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.is_empty() || v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Simplex(v), sign))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The codimension-one face `σ_(i)` omitting the `i`-th vertex.
    pub fn face(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    /// Codimension-one faces in order `σ_(0), σ_(1), …`; empty for a vertex.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(|i| self.face(i))
    }

    /// All nonempty faces, including the simplex itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let k = self.0.len();
        (1u32..(1 << k))
            .map(|mask| {
                Simplex(
                    (0..k)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
