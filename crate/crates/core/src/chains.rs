//! Weighted chain complexes: boundary matrices of `∂^w` on absolute and
//! relative chains, and chain maps induced by simplicial maps.
//!
//! `∂^w(σ) = Σ_i (−1)^i (w(σ)/w(σ_(i))) σ_(i)` over the ascending vertex order.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::{Simplex, VertexId, WeightedComplex};
use crate::exactalg::{AlgebraError, IntMatrix, SparseIntMatrix};
use crate::Error;

/// Column of `∂^w σ` as `(face, coefficient)` pairs.
fn boundary_terms(k: &WeightedComplex, s: &Simplex, w: u64) -> Vec<(Simplex, i64)> {
    s.boundary_faces()
        .enumerate()
        .map(|(i, f)| {
            let fw = k.weight(&f).expect("face-closed");
            let c = (w / fw) as i64;
            (f, if i % 2 == 0 { c } else { -c })
        })
        .collect()
}

/// `∂^w_n` over the canonical bases, `c_{n-1} × c_n`.
pub fn weighted_boundary(k: &WeightedComplex, n: usize) -> IntMatrix {
    let cc = ChainComplexData::absolute(k);
    cc.boundary(n).to_dense()
}

/// `∂̄^w_n` on `C_*(K)/C_*(A)`: the rows and columns of simplices of `A` removed.
pub fn relative_weighted_boundary(
    k: &WeightedComplex,
    a: &WeightedComplex,
    n: usize,
) -> Result<IntMatrix, Error> {
    let cc = ChainComplexData::relative(k, a)?;
    Ok(cc.boundary(n).to_dense())
}

/// Builds the chain complex of `k`, relative to `rel` when given.
pub fn chain_complex(k: &WeightedComplex, rel: Option<&WeightedComplex>) -> Result<ChainComplexData, Error> {
    let cc = match rel {
        None => ChainComplexData::absolute(k),
        Some(a) => ChainComplexData::relative(k, a)?,
    };
    cc.check_square_zero()?;
    Ok(cc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainKind {
    Absolute,
    /// Relative to the subcomplex with the given vertex names' description.
    Relative { label: String },
}

/// Per-dimension bases and sparse boundary matrices `∂_n : C_n → C_{n-1}`.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    pub basis: Vec<Vec<Simplex>>,
    pub kind: ChainKind,
    lookup: HashMap<Simplex, usize>,
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplexData {
    pub fn absolute(k: &WeightedComplex) -> ChainComplexData {
        Self::masked(k, &k.mask(|_, _| false), ChainKind::Absolute)
    }

    pub fn relative(k: &WeightedComplex, a: &WeightedComplex) -> Result<ChainComplexData, Error> {
        let mask = k.embedding_mask(a)?;
        let label = format!("{} simplices", mask.iter().flatten().filter(|&&b| b).count());
        Ok(Self::masked(k, &mask, ChainKind::Relative { label }))
    }

    /// Chains of `k` modulo the masked subcomplex.
    pub fn masked(k: &WeightedComplex, excluded: &[Vec<bool>], kind: ChainKind) -> ChainComplexData {
        let mut basis = Vec::with_capacity(k.num_dims());
        let mut lookup = HashMap::new();
        for d in 0..k.num_dims() {
            let layer: Vec<Simplex> = k
                .simplices(d)
                .iter()
                .zip(&excluded[d])
                .filter(|(_, &x)| !x)
                .map(|(s, _)| s.clone())
                .collect();
            for (i, s) in layer.iter().enumerate() {
                lookup.insert(s.clone(), i);
            }
            basis.push(layer);
        }
        let mut boundaries = Vec::with_capacity(basis.len());
        for d in 0..basis.len() {
            let rows = if d == 0 { 0 } else { basis[d - 1].len() };
            let cols = basis[d]
                .iter()
                .map(|s| {
                    if d == 0 {
                        return Vec::new();
                    }
                    boundary_terms(k, s, k.weight(s).unwrap())
                        .into_iter()
                        .filter_map(|(f, c)| lookup.get(&f).map(|&i| (i, BigInt::from(c))))
                        .collect()
                })
                .collect();
            boundaries.push(SparseIntMatrix::from_columns(rows, cols));
        }
        ChainComplexData {
            basis,
            kind,
            lookup,
            boundaries,
        }
    }

    /// Number of dimensions with a (possibly empty) basis list.
    pub fn num_dims(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.basis.get(n).map_or(0, Vec::len)
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    /// `∂_n`, shape `rank(n-1) × rank(n)`; zero-sized outside the stored range.
    pub fn boundary(&self, n: usize) -> SparseIntMatrix {
        match self.boundaries.get(n) {
            Some(b) => b.clone(),
            None => SparseIntMatrix::zeros(self.rank(n.wrapping_sub(1)), 0),
        }
    }

    pub fn boundary_ref(&self, n: usize) -> Option<&SparseIntMatrix> {
        self.boundaries.get(n)
    }

    /// Positions of the dimension-`n` basis elements in `k`'s canonical list.
    pub fn positions_in(&self, k: &WeightedComplex, n: usize) -> Vec<usize> {
        self.basis
            .get(n)
            .map_or(&[][..], Vec::as_slice)
            .iter()
            .map(|s| k.index_of(s).expect("basis simplex lies in the complex"))
            .collect()
    }

    pub fn check_square_zero(&self) -> Result<(), Error> {
        for n in 2..self.boundaries.len() {
            if !self.boundaries[n - 1].checked_mul(&self.boundaries[n])?.is_zero() {
                return Err(AlgebraError::CompositionNotZero.into());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// `w'(ρσ) = w(σ)` for every simplex.
    WeightPreserving,
    /// `w'(ρσ) | w(σ)` for every simplex.
    Morphism,
}

/// A vertex map between two weighted complexes that sends simplices to
/// simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub vertex_map: Vec<VertexId>,
    pub kind: MapKind,
}

impl SimplicialMap {
    pub fn identity(n: usize) -> SimplicialMap {
        SimplicialMap {
            vertex_map: (0..n).collect(),
            kind: MapKind::WeightPreserving,
        }
    }

    /// Image simplex of `s` (repeated vertices merged).
    pub fn image(&self, s: &Simplex) -> Simplex {
        let mut v: Vec<VertexId> = s.vertices().iter().map(|&x| self.vertex_map[x]).collect();
        v.sort_unstable();
        v.dedup();
        Simplex::new(v).expect("nonempty")
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SimplicialMap) -> SimplicialMap {
        let kind = if self.kind == MapKind::WeightPreserving && g.kind == MapKind::WeightPreserving {
            MapKind::WeightPreserving
        } else {
            MapKind::Morphism
        };
        SimplicialMap {
            vertex_map: self.vertex_map.iter().map(|&v| g.vertex_map[v]).collect(),
            kind,
        }
    }

    pub fn validate(&self, src: &WeightedComplex, dst: &WeightedComplex) -> Result<(), Error> {
        if self.vertex_map.len() != src.num_vertices() {
            return Err(Error::InvalidMap(format!(
                "vertex map has {} entries for {} vertices",
                self.vertex_map.len(),
                src.num_vertices()
            )));
        }
        if let Some(&v) = self.vertex_map.iter().find(|&&v| v >= dst.num_vertices()) {
            return Err(Error::InvalidMap(format!("target vertex {v} out of range")));
        }
        for (s, w) in src.iter() {
            let t = self.image(s);
            let Some(tw) = dst.weight(&t) else {
                return Err(Error::InvalidMap(format!(
                    "image of {} is not a simplex",
                    src.describe(s)
                )));
            };
            let ok = match self.kind {
                MapKind::WeightPreserving => tw == w,
                MapKind::Morphism => w % tw == 0,
            };
            if !ok {
                return Err(Error::InvalidMap(format!(
                    "weight {} of {} is incompatible with weight {} of its image",
                    w,
                    src.describe(s),
                    tw
                )));
            }
        }
        Ok(())
    }

    /// `ρ_#` in dimension `n` between two chain complexes built on `src`
    /// and `dst`. A simplex maps to `± (w(σ)/w'(ρσ)) ρσ`, the sign being the
    /// parity of sorting the image vertices; collapsed simplices and images
    /// inside the target's excluded subcomplex map to zero. In the relative
    /// case the source's excluded simplices must land in the target's.
    pub fn chain_map(
        &self,
        src: &WeightedComplex,
        src_cc: &ChainComplexData,
        dst: &WeightedComplex,
        dst_cc: &ChainComplexData,
        n: usize,
    ) -> Result<SparseIntMatrix, Error> {
        self.validate(src, dst)?;
        for (s, _) in src.iter().filter(|(s, _)| s.dim() == n && src_cc.index_of(s).is_none()) {
            let t = self.image(s);
            if t.dim() == n && dst_cc.index_of(&t).is_some() {
                return Err(Error::InvalidMap(format!(
                    "{} lies in the excluded subcomplex but its image does not",
                    src.describe(s)
                )));
            }
        }
        let cols = src_cc
            .basis
            .get(n)
            .map_or(&[][..], Vec::as_slice)
            .iter()
            .map(|s| {
                let image: Vec<VertexId> = s.vertices().iter().map(|&v| self.vertex_map[v]).collect();
                let Some((t, sign)) = Simplex::oriented(&image) else {
                    return Vec::new();
                };
                let Some(row) = dst_cc.index_of(&t) else {
                    return Vec::new();
                };
                let factor = src.weight(s).unwrap() / dst.weight(&t).unwrap();
                vec![(row, BigInt::from(factor) * i64::from(sign))]
            })
            .collect();
        Ok(SparseIntMatrix::from_columns(dst_cc.rank(n), cols))
    }
}

/// Dense `ρ_#` on absolute chains in dimension `n`.
pub fn induced_chain_map(
    f: &SimplicialMap,
    src: &WeightedComplex,
    dst: &WeightedComplex,
    n: usize,
) -> Result<IntMatrix, Error> {
    let a = ChainComplexData::absolute(src);
    let b = ChainComplexData::absolute(dst);
    Ok(f.chain_map(src, &a, dst, &b, n)?.to_dense())
}

/// True when `∂' f_n = f_{n-1} ∂` for every `n`.
pub fn is_chain_map(
    src: &ChainComplexData,
    dst: &ChainComplexData,
    maps: &[SparseIntMatrix],
) -> Result<bool, AlgebraError> {
    for n in 1..maps.len() {
        let left = dst.boundary(n).checked_mul(&maps[n])?;
        let right = maps[n - 1].checked_mul(&src.boundary(n))?;
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Integer vector of a chain given as `(simplex, coefficient)` terms.
pub fn chain_vector(cc: &ChainComplexData, n: usize, terms: &[(Simplex, BigInt)]) -> Option<Vec<BigInt>> {
    let mut v = vec![BigInt::zero(); cc.rank(n)];
    for (s, c) in terms {
        v[cc.index_of(s)?] += c;
    }
    Some(v)
}
