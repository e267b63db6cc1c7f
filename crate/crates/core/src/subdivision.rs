//! Barycentric subdivision with the induced weight `w(b_σ) = min_{v ∈ σ} w(v)`,
//! the subdivision chain map `Sd^w_#` and the projection `π^w`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chains::{is_chain_map, ChainComplexData, MapKind, SimplicialMap};
use crate::complex::{ComplexError, Simplex, VertexId, WeightedComplex};
use crate::exactalg::{IntMatrix, SparseIntMatrix};
use crate::homology::{homology, map_on_presentations, presentations, Theory};
use crate::Error;

/// `Sd(K)` together with the data relating it to `K`.
#[derive(Clone, Debug)]
pub struct SubdivisionRecord {
    pub result: WeightedComplex,
    /// Simplex of the source whose barycenter each result vertex is.
    pub barycenter_of: Vec<Simplex>,
    /// `Sd^w_#` per dimension, on absolute chains in canonical bases.
    pub chain_maps: Vec<SparseIntMatrix>,
    /// `π^w : Sd(K) → K`.
    pub projection: SimplicialMap,
}

type Chain = BTreeMap<Simplex, BigInt>;

fn barycenter_name(k: &WeightedComplex, s: &Simplex) -> String {
    if s.dim() == 0 {
        return k.name(s.vertices()[0]).to_string();
    }
    let parts: Vec<&str> = s.vertices().iter().map(|&v| k.name(v)).collect();
    format!("b({})", parts.join(","))
}

/// All full flags `{v_0} ⊂ {v_0,v_1} ⊂ …` of `s`, as lists of faces.
fn flags(s: &Simplex, emit: &mut impl FnMut(&[Simplex])) {
    fn go(remaining: &mut Vec<VertexId>, chosen: &mut Vec<VertexId>, acc: &mut Vec<Simplex>, emit: &mut dyn FnMut(&[Simplex])) {
        if remaining.is_empty() {
            emit(acc);
            return;
        }
        for i in 0..remaining.len() {
            let v = remaining.remove(i);
            chosen.push(v);
            acc.push(Simplex::new(chosen.clone()).unwrap());
            go(remaining, chosen, acc, emit);
            acc.pop();
            chosen.pop();
            remaining.insert(i, v);
        }
    }
    go(&mut s.vertices().to_vec(), &mut Vec::new(), &mut Vec::new(), emit);
}

pub fn barycentric_subdivide(k: &WeightedComplex) -> Result<SubdivisionRecord, Error> {
    if !k.is_divisibly_weighted() {
        return Err(ComplexError::NotDivisiblyWeighted.into());
    }
    // barycenters in canonical order, so the vertices of K keep their ids
    let barycenter_of: Vec<Simplex> = (0..k.num_dims()).flat_map(|d| k.simplices(d).iter().cloned()).collect();
    let bary_id: HashMap<&Simplex, VertexId> = barycenter_of.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let names: Vec<String> = barycenter_of.iter().map(|s| barycenter_name(k, s)).collect();
    let weights: Vec<u64> = barycenter_of
        .iter()
        .map(|s| s.vertices().iter().map(|&v| k.vertex_weight(v)).min().unwrap())
        .collect();

    let mut maximal = Vec::new();
    for s in k.maximal_simplices() {
        flags(&s, &mut |faces| maximal.push(faces.iter().map(|f| bary_id[f]).collect()));
    }
    let result = WeightedComplex::build_named(names, &weights, &maximal, None)?;

    let projection = SimplicialMap {
        vertex_map: barycenter_of
            .iter()
            .map(|s| {
                *s.vertices()
                    .iter()
                    .min_by_key(|&&v| (k.vertex_weight(v), v))
                    .unwrap()
            })
            .collect(),
        kind: MapKind::WeightPreserving,
    };

    let chain_maps = subdivision_chain_maps(k, &result, &bary_id);
    let src = ChainComplexData::absolute(k);
    let dst = ChainComplexData::absolute(&result);
    assert!(
        is_chain_map(&src, &dst, &chain_maps).expect("shapes agree"),
        "subdivision chain map must commute with the weighted boundary"
    );

    Ok(SubdivisionRecord {
        result,
        barycenter_of,
        chain_maps,
        projection,
    })
}

/// `Sd(v) = v`, `Sd(σ) = b_σ · Sd(∂^w σ)` where `b · [u_0 … u_k] = [b, u_0, …, u_k]`.
fn subdivision_chain_maps(
    k: &WeightedComplex,
    sd: &WeightedComplex,
    bary_id: &HashMap<&Simplex, VertexId>,
) -> Vec<SparseIntMatrix> {
    let mut memo: Vec<Vec<Chain>> = Vec::with_capacity(k.num_dims());
    let mut maps = Vec::with_capacity(k.num_dims());
    for d in 0..k.num_dims() {
        let mut layer = Vec::with_capacity(k.count(d));
        for (s, &w) in k.simplices(d).iter().zip(k.weights(d)) {
            let b = bary_id[s];
            if d == 0 {
                layer.push(Chain::from([(Simplex::vertex(b), BigInt::from(1))]));
                continue;
            }
            let mut chain = Chain::new();
            for (i, f) in s.boundary_faces().enumerate() {
                let ratio = BigInt::from(w / k.weight(&f).unwrap());
                let c = if i % 2 == 0 { ratio } else { -ratio };
                for (t, x) in &memo[d - 1][k.index_of(&f).unwrap()] {
                    let mut cone = vec![b];
                    cone.extend_from_slice(t.vertices());
                    let (u, sign) = Simplex::oriented(&cone).expect("barycenter is new");
                    let e = chain.entry(u).or_insert_with(BigInt::zero);
                    *e += &c * x * i64::from(sign);
                }
            }
            chain.retain(|_, x| !x.is_zero());
            layer.push(chain);
        }
        let cols = layer
            .iter()
            .map(|chain| {
                chain
                    .iter()
                    .map(|(t, x)| (sd.index_of(t).expect("flag simplex"), x.clone()))
                    .collect()
            })
            .collect();
        maps.push(SparseIntMatrix::from_columns(sd.count(d), cols));
        memo.push(layer);
    }
    maps
}

/// `Sd^w_#` in dimension `n` as a dense matrix.
pub fn sd_chain_map(rec: &SubdivisionRecord, n: usize) -> IntMatrix {
    rec.chain_maps[n].to_dense()
}

pub fn pi_projection(rec: &SubdivisionRecord) -> SimplicialMap {
    rec.projection.clone()
}

/// Restricts a map of absolute chains to the bases of two relative complexes.
pub fn restrict_map(
    map: &SparseIntMatrix,
    src: &WeightedComplex,
    src_cc: &ChainComplexData,
    dst: &WeightedComplex,
    dst_cc: &ChainComplexData,
    n: usize,
) -> SparseIntMatrix {
    map.select(&dst_cc.positions_in(dst, n), &src_cc.positions_in(src, n))
}

/// Outcome of comparing `K` and `Sd(K)` in one theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub groups_equal: bool,
    /// `π^w_# ∘ Sd^w_# = id` on the theory's chains of `K`.
    pub chain_identity: bool,
    /// The same composite is the identity on homology generators of `K`.
    pub homology_identity: bool,
}

impl InvarianceReport {
    pub fn ok(&self) -> bool {
        self.groups_equal && self.chain_identity && self.homology_identity
    }
}

pub fn subdivision_report(k: &WeightedComplex, rec: &SubdivisionRecord, theory: Theory) -> Result<InvarianceReport, Error> {
    let sd = &rec.result;
    let groups_equal = homology(k, theory)?.same_groups(&homology(sd, theory)?);

    let abs_sd = ChainComplexData::absolute(sd);
    let abs_k = ChainComplexData::absolute(k);
    let rel_k = theory.chain_complex(k);
    let rel_sd = theory.chain_complex(sd);
    let pres = presentations(&rel_k)?;
    let mut chain_identity = true;
    let mut homology_identity = true;
    for n in 0..k.num_dims() {
        let pi = rec.projection.chain_map(sd, &abs_sd, k, &abs_k, n)?;
        let composite = pi.checked_mul(&rec.chain_maps[n])?;
        chain_identity &= composite.is_identity();
        let s_rel = restrict_map(&rec.chain_maps[n], k, &rel_k, sd, &rel_sd, n);
        let p_rel = rec.projection.chain_map(sd, &rel_sd, k, &rel_k, n)?;
        let on_chains = p_rel.checked_mul(&s_rel)?.to_dense();
        let p = &pres[n];
        homology_identity &= map_on_presentations(&on_chains, Some(p), Some(p)).is_identity();
    }
    Ok(InvarianceReport {
        groups_equal,
        chain_identity,
        homology_identity,
    })
}

/// Groups agree across `Sd` and `π^w_* ∘ Sd^w_* = id`.
pub fn verify_subdivision_invariance(k: &WeightedComplex, theory: Theory) -> Result<bool, Error> {
    let rec = barycentric_subdivide(k)?;
    Ok(subdivision_report(k, &rec, theory)?.ok())
}

/// `Sd^m(K)` as a chain of records, `m ≥ 1`.
pub fn iterated_subdivision(k: &WeightedComplex, m: usize) -> Result<Vec<SubdivisionRecord>, Error> {
    let mut out: Vec<SubdivisionRecord> = Vec::with_capacity(m);
    for _ in 0..m {
        let next = barycentric_subdivide(out.last().map_or(k, |r| &r.result))?;
        out.push(next);
    }
    Ok(out)
}
